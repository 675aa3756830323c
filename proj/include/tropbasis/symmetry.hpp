#pragma once

// Coordinate permutation groups acting on R^N, fundamental domains, and orbits of
// vectors and cones.
//
// Action convention: (sigma . v)[sigma[k]] = v[k]. Matrix coordinate (i, j) of a
// d x n matrix is index i*n + j.

#include "tropbasis/cone.hpp"
#include "tropbasis/errors.hpp"
#include "tropbasis/fan.hpp"
#include "tropbasis/rational.hpp"
#include "tropbasis/refinement.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace tropbasis {

using Permutation = std::vector<std::size_t>;

inline Permutation identity_permutation(std::size_t n) {
    Permutation p(n);
    std::iota(p.begin(), p.end(), 0);
    return p;
}

/// (a * b)[k] = a[b[k]]: apply b first, then a.
inline Permutation compose(const Permutation& a, const Permutation& b) {
    Permutation c(b.size());
    for (std::size_t k = 0; k < b.size(); ++k) c[k] = a[b[k]];
    return c;
}

inline Permutation invert(const Permutation& p) {
    Permutation q(p.size());
    for (std::size_t k = 0; k < p.size(); ++k) q[p[k]] = k;
    return q;
}

inline Vector act(const Permutation& sigma, const Vector& v) {
    Vector r(v.size());
    for (std::size_t k = 0; k < v.size(); ++k) r[sigma[k]] = v[k];
    return r;
}

inline constexpr std::size_t kMaxGroupOrder = 1000000;

class CoordPermGroup {
public:
    CoordPermGroup() = default;

    CoordPermGroup(std::size_t degree, std::vector<Permutation> generators)
        : degree_(degree), generators_(std::move(generators)) {
        for (const auto& g : generators_) {
            if (g.size() != degree_) throw ArgumentError("generator has the wrong degree");
            std::vector<bool> hit(degree_, false);
            for (auto x : g) {
                if (x >= degree_ || hit[x]) throw ArgumentError("generator is not a permutation");
                hit[x] = true;
            }
        }
    }

    std::size_t degree() const { return degree_; }
    const std::vector<Permutation>& generators() const { return generators_; }

    /// Every element, identity first; closure under the generators by breadth-first
    /// search on first use. Safe to call from several threads.
    const std::vector<Permutation>& elements() const {
        std::call_once(cache_->once, [this] { materialize(); });
        return cache_->elements;
    }

    std::size_t order() const { return elements().size(); }

    /// inverses()[i] is the inverse of elements()[i].
    const std::vector<Permutation>& inverses() const {
        elements();
        return cache_->inverses;
    }

private:
    struct Cache {
        std::once_flag once;
        std::vector<Permutation> elements;
        std::vector<Permutation> inverses;
    };

    void materialize() const {
        auto& el = cache_->elements;
        std::set<Permutation> seen;
        Permutation id = identity_permutation(degree_);
        el.push_back(id);
        seen.insert(id);
        for (std::size_t q = 0; q < el.size(); ++q) {
            for (const auto& g : generators_) {
                Permutation h = compose(g, el[q]);
                if (seen.insert(h).second) {
                    el.push_back(std::move(h));
                    if (el.size() > kMaxGroupOrder) throw ArgumentError("group too large to materialize");
                }
            }
        }
        for (const auto& a : el) {
            Permutation inv = invert(a);
            if (!seen.count(inv)) throw InternalInvariantError("materialized group is not closed");
            cache_->inverses.push_back(std::move(inv));
        }
    }

    std::size_t degree_ = 0;
    std::vector<Permutation> generators_;
    std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

namespace detail {

// Coordinate permutation of R^(d*n) induced by permuting rows by r and columns by c.
inline Permutation matrix_coordinate_perm(std::size_t d, std::size_t n, const Permutation& r, const Permutation& c,
                                          std::size_t extra) {
    Permutation p = identity_permutation(d * n + extra);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < n; ++j) p[i * n + j] = r[i] * n + c[j];
    return p;
}

inline Permutation matrix_transpose_perm(std::size_t n, std::size_t extra) {
    Permutation p = identity_permutation(n * n + extra);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) p[i * n + j] = j * n + i;
    return p;
}

}  // namespace detail

/// Row permutations within `rows`, column permutations within `cols`, and the
/// transpose when the matrix is square and rows == cols. `extra` trailing
/// coordinates are fixed (for homogenized spaces).
inline CoordPermGroup block_symmetry_group(std::size_t d, std::size_t n, const std::vector<std::size_t>& rows,
                                           const std::vector<std::size_t>& cols, std::size_t extra = 0) {
    if (d == 0 || n == 0) throw ArgumentError("matrix group needs positive dimensions");
    std::vector<Permutation> gens;
    for (std::size_t a = 0; a + 1 < rows.size(); ++a) {
        Permutation r = identity_permutation(d);
        std::swap(r[rows[a]], r[rows[a + 1]]);
        gens.push_back(detail::matrix_coordinate_perm(d, n, r, identity_permutation(n), extra));
    }
    for (std::size_t a = 0; a + 1 < cols.size(); ++a) {
        Permutation c = identity_permutation(n);
        std::swap(c[cols[a]], c[cols[a + 1]]);
        gens.push_back(detail::matrix_coordinate_perm(d, n, identity_permutation(d), c, extra));
    }
    if (d == n && rows == cols) gens.push_back(detail::matrix_transpose_perm(n, extra));
    return CoordPermGroup(d * n + extra, std::move(gens));
}

/// Row interchanges, column interchanges, and transposition when d = n.
inline CoordPermGroup matrix_symmetry_group(std::size_t d, std::size_t n, std::size_t extra = 0) {
    return block_symmetry_group(d, n, identity_permutation(d), identity_permutation(n), extra);
}

inline std::set<Vector, decltype(&lex_less)> orbit(const Vector& v, const CoordPermGroup& g) {
    if (v.size() != g.degree()) throw ArgumentError("vector length does not match group degree");
    std::set<Vector, decltype(&lex_less)> out(&lex_less);
    for (const auto& s : g.elements()) out.insert(act(s, v));
    return out;
}

inline std::size_t orbit_size(const Vector& v, const CoordPermGroup& g) { return orbit(v, g).size(); }

/// Index of a group element whose image of v is lexicographically smallest.
/// Images are compared entry by entry without being built: (sigma . v)[m] = v[sigma^-1(m)].
inline std::size_t lexmin_element(const Vector& v, const CoordPermGroup& g) {
    if (v.size() != g.degree()) throw ArgumentError("vector length does not match group degree");
    const auto& inv = g.inverses();
    std::size_t best = 0;
    for (std::size_t e = 1; e < inv.size(); ++e) {
        for (std::size_t m = 0; m < v.size(); ++m) {
            int c = cmp(v[inv[e][m]], v[inv[best][m]]);
            if (c < 0) best = e;
            if (c != 0) break;
        }
    }
    return best;
}

/// Lexicographically smallest image.
inline Vector canonical_rep(const Vector& v, const CoordPermGroup& g) {
    return act(g.elements()[lexmin_element(v, g)], v);
}

inline std::vector<Permutation> stabilizer(const Vector& v, const CoordPermGroup& g) {
    std::vector<Permutation> out;
    for (const auto& s : g.elements())
        if (act(s, v) == v) out.push_back(s);
    return out;
}

// ---------------------------------------------------------------------------
// Fundamental domain

/// Halfspaces <a, omega> <= 0 whose intersection meets every orbit.
struct FundamentalDomain {
    std::size_t ambient_dim = 0;
    std::vector<Vector> halfspaces;

    bool contains(const Vector& w) const {
        for (const auto& a : halfspaces)
            if (sgn(dot(a, w)) > 0) return false;
        return true;
    }

    /// Closed cone {<a, omega> <= 0}, irredundant.
    Cone as_cone() const {
        std::vector<Vector> ineqs;
        for (const auto& a : halfspaces) ineqs.push_back(Rational(-1) * a);
        return Cone(ambient_dim, {}, std::move(ineqs));
    }
};

/// For sigma != id with smallest moved index j: omega_j <= omega_{sigma^-1(j)}.
/// The lexicographically least point of each orbit satisfies all of them.
inline FundamentalDomain fundamental_domain(const CoordPermGroup& g) {
    FundamentalDomain fd;
    fd.ambient_dim = g.degree();
    std::set<std::pair<std::size_t, std::size_t>> pairs;
    for (const auto& s : g.elements()) {
        std::size_t j = 0;
        while (j < s.size() && s[j] == j) ++j;
        if (j == s.size()) continue;
        Permutation inv = invert(s);
        pairs.insert({j, inv[j]});
    }
    for (const auto& [j, k] : pairs) {
        Vector a = zero_vector(g.degree());
        a[j] = 1;
        a[k] = -1;
        fd.halfspaces.push_back(std::move(a));
    }
    return fd;
}

/// Drops halfspaces implied by the others.
inline FundamentalDomain remove_redundant(const FundamentalDomain& fd) {
    Cone c = fd.as_cone();
    FundamentalDomain out;
    out.ambient_dim = fd.ambient_dim;
    for (const auto& e : c.equalities()) {
        out.halfspaces.push_back(e);
        out.halfspaces.push_back(Rational(-1) * e);
    }
    for (const auto& a : c.inequalities()) out.halfspaces.push_back(Rational(-1) * a);
    return out;
}

/// A group element mapping w into the domain: the one giving the lexicographically
/// least image. Returns nothing only if the domain does not come from this group.
inline std::optional<Permutation> move_into_domain(const Vector& w, const FundamentalDomain& fd,
                                                   const CoordPermGroup& g) {
    const Permutation& s = g.elements()[lexmin_element(w, g)];
    if (fd.contains(act(s, w))) return s;
    for (const auto& t : g.elements())
        if (fd.contains(act(t, w))) return t;
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Cone orbits

inline Cone act(const Permutation& sigma, const Cone& c) { return c.permuted(sigma); }

struct ConeOrbit {
    Cone representative;
    std::vector<std::size_t> members;  // indices into the input list
    std::size_t full_orbit_size = 0;   // number of distinct images under the group
};

/// Partition of the input cones into classes under the group action.
inline std::vector<ConeOrbit> cone_orbits(const std::vector<Cone>& cones, const CoordPermGroup& g) {
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < cones.size(); ++i) {
        if (cones[i].ambient_dim() != g.degree()) throw ArgumentError("cone dimension does not match group degree");
        index.emplace(cones[i].key(), i);
    }
    std::vector<bool> assigned(cones.size(), false);
    std::vector<ConeOrbit> out;
    for (std::size_t i = 0; i < cones.size(); ++i) {
        if (assigned[i]) continue;
        ConeOrbit orb{cones[i], {}, 0};
        std::set<std::string> images;
        for (const auto& s : g.elements()) {
            Cone img = cones[i].permuted(s);
            if (!images.insert(img.key()).second) continue;
            auto it = index.find(img.key());
            if (it != index.end() && !assigned[it->second]) {
                assigned[it->second] = true;
                orb.members.push_back(it->second);
            }
        }
        orb.full_orbit_size = images.size();
        std::sort(orb.members.begin(), orb.members.end());
        out.push_back(std::move(orb));
    }
    return out;
}

/// Common refinement of a G-invariant collection of fans computed inside the
/// fundamental domain, then expanded. Only the top cells of the reduced search
/// are kept: each is mapped to the full cell carrying its interior point, orbits
/// are unfolded, and faces come from the fan closure. A generic point of any
/// maximal full cell has an image inside the domain lying in such a top cell.
inline Fan symmetric_refinement(const std::vector<Fan>& fans, const CoordPermGroup& g, std::size_t threads = 1) {
    if (fans.empty()) throw ArgumentError("refinement of no fans");
    Cone domain = fundamental_domain(g).as_cone();
    std::map<std::string, Cone> carriers;
    for (const auto& c : refinement_cells(fans, domain, threads)) {
        auto full = carrier_cone(fans, c.relative_interior_point());
        if (!full) throw InternalInvariantError("reduced cell left the support");
        carriers.emplace(full->key(), std::move(*full));
    }
    std::map<std::string, Cone> cells;
    for (const auto& [key, full] : carriers) {
        for (const auto& s : g.elements()) {
            Cone img = full.permuted(s);
            cells.emplace(img.key(), std::move(img));
        }
    }
    std::vector<Cone> gens;
    for (auto& [k, c] : cells) gens.push_back(std::move(c));
    return Fan::from_generators(fans.front().ambient_dim(), gens);
}

}  // namespace tropbasis
