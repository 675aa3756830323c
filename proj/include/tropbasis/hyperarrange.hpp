#pragma once

// Tropical hyperplanes in TP^(d-1): types of points, hyperplanes through point
// sets, coordinate hyperplanes, stable intersections of hyperplane pairs, the
// rank-3 certification of 5 x n matrices, and tropical convex hull complexes.
//
// Indices are 0-based in the API and 1-based in every printed form.

#include "tropbasis/cone.hpp"
#include "tropbasis/errors.hpp"
#include "tropbasis/hypersurface.hpp"
#include "tropbasis/linalg.hpp"
#include "tropbasis/lp.hpp"
#include "tropbasis/refinement.hpp"
#include "tropbasis/trop_core.hpp"

#include <algorithm>
#include <array>
#include <cstddef>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace tropbasis {

/// min_i (h_i + x_i), up to adding a constant to h.
struct Hyperplane {
    Vector coeffs;

    std::size_t dim() const { return coeffs.size(); }

    friend bool operator==(const Hyperplane& a, const Hyperplane& b) {
        if (a.coeffs.size() != b.coeffs.size()) return false;
        if (a.coeffs.empty()) return true;
        Rational shift = a.coeffs[0] - b.coeffs[0];
        for (std::size_t i = 1; i < a.coeffs.size(); ++i)
            if (a.coeffs[i] - b.coeffs[i] != shift) return false;
        return true;
    }
};

/// Sorted set of coordinate indices.
using TypeSet = std::vector<std::size_t>;

inline std::string format_type(const TypeSet& t) {
    std::string s = "{";
    for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + std::to_string(t[i] + 1);
    return s + "}";
}

/// Indices attaining min_i (h_i + w_i).
inline TypeSet type_of(const Vector& w, const Hyperplane& h) {
    if (w.size() != h.dim()) throw ArgumentError("point and hyperplane dimensions differ");
    if (w.empty()) throw ArgumentError("empty point");
    TypeSet t{0};
    Rational best = h.coeffs[0] + w[0];
    for (std::size_t i = 1; i < w.size(); ++i) {
        Rational v = h.coeffs[i] + w[i];
        if (v < best) {
            best = v;
            t = {i};
        } else if (v == best) {
            t.push_back(i);
        }
    }
    return t;
}

inline bool on_hyperplane(const Vector& w, const Hyperplane& h) { return type_of(w, h).size() >= 2; }

// ---------------------------------------------------------------------------
// Hyperplanes through points

namespace detail {

// Closed cell {h : h_a + w_a = h_b + w_b <= h_c + w_c} in homogenized variables (h, s).
inline void add_pair_cell(HalfOpenCone& c, const Vector& w, std::size_t a, std::size_t b) {
    const std::size_t d = w.size();
    Vector eq = zero_vector(d + 1);
    eq[a] = 1;
    eq[b] = -1;
    eq[d] = w[a] - w[b];
    c.equalities.push_back(std::move(eq));
    for (std::size_t k = 0; k < d; ++k) {
        if (k == a || k == b) continue;
        Vector r = zero_vector(d + 1);
        r[k] = 1;
        r[a] = -1;
        r[d] = w[k] - w[a];
        c.weak_ineqs.push_back(std::move(r));
    }
}

inline HalfOpenCone affine_root(std::size_t d) {
    HalfOpenCone c(d + 1);
    c.strict_ineqs.push_back(unit_vector(d + 1, d));
    c.equalities.push_back(unit_vector(d + 1, 0));
    return c;
}

inline std::vector<std::pair<std::size_t, std::size_t>> all_pairs(std::size_t d) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = a + 1; b < d; ++b) out.push_back({a, b});
    return out;
}

// Vertex of the closed cell minimizing the total slack of the non-minimal terms.
inline Hyperplane least_slack_point(const std::vector<Vector>& pts,
                                    const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
    const std::size_t d = pts.front().size();
    LinearProgram lp;
    lp.num_vars = d;
    lp.nonnegative.assign(d, false);
    lp.objective = zero_vector(d);
    lp.constraints.push_back({unit_vector(d, 0), Relation::eq, 0});
    for (std::size_t p = 0; p < pts.size(); ++p) {
        const auto& w = pts[p];
        auto [a, b] = pairs[p];
        Vector eq = zero_vector(d);
        eq[a] = 1;
        eq[b] = -1;
        lp.constraints.push_back({std::move(eq), Relation::eq, w[b] - w[a]});
        for (std::size_t k = 0; k < d; ++k) {
            if (k == a || k == b) continue;
            Vector r = zero_vector(d);
            r[k] = 1;
            r[a] = -1;
            lp.constraints.push_back({r, Relation::ge, w[a] - w[k]});
            lp.objective = lp.objective - r;  // maximize the negated slack
        }
    }
    LpSolution sol = solve_lp(lp);
    if (sol.status != LpStatus::optimal) throw InternalInvariantError("feasible hyperplane cell has no optimum");
    return Hyperplane{sol.x};
}

}  // namespace detail

inline constexpr std::size_t kMaxHyperplaneDim = 5;
inline constexpr std::size_t kMaxHyperplanePoints = 64;

/// Some h with every point on the hyperplane, or nothing when no such h exists.
/// Depth-first search over the minimizing pair of each point with exact LP pruning.
inline std::optional<Hyperplane> hyperplane_through_points(const std::vector<Vector>& points) {
    if (points.empty()) throw ArgumentError("no points");
    const std::size_t d = points.front().size();
    if (d < 2 || d > kMaxHyperplaneDim) throw ArgumentError("hyperplane search supports 2 <= d <= 5");
    if (points.size() > kMaxHyperplanePoints) throw ArgumentError("hyperplane search supports at most 64 points");
    for (const auto& p : points)
        if (p.size() != d) throw ArgumentError("points of different dimensions");

    std::vector<std::size_t> order(points.size());
    std::iota(order.begin(), order.end(), 0);
    auto spread = [&](std::size_t i) {
        auto [lo, hi] = std::minmax_element(points[i].begin(), points[i].end());
        return Rational(*hi - *lo);
    };
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return spread(a) > spread(b); });

    const auto pairs = detail::all_pairs(d);
    std::vector<std::pair<std::size_t, std::size_t>> chosen;
    std::vector<HalfOpenCone> stack{detail::affine_root(d)};
    std::vector<std::size_t> next{0};
    while (!next.empty()) {
        const std::size_t level = chosen.size();
        if (level == order.size()) {
            std::vector<Vector> pts;
            for (auto i : order) pts.push_back(points[i]);
            return detail::least_slack_point(pts, chosen);
        }
        if (next.back() == pairs.size()) {
            next.pop_back();
            stack.pop_back();
            if (!chosen.empty()) chosen.pop_back();
            continue;
        }
        auto pr = pairs[next.back()++];
        HalfOpenCone c = stack.back();
        detail::add_pair_cell(c, points[order[level]], pr.first, pr.second);
        if (!lp_feasible(c)) continue;
        chosen.push_back(pr);
        stack.push_back(std::move(c));
        next.push_back(0);
    }
    return std::nullopt;
}

inline std::vector<Vector> matrix_columns(const TropicalMatrix& a) { return a.columns(); }

/// Hyperplane with coefficient N at position i through all columns, with i in no
/// column's type.
inline Hyperplane coordinate_hyperplane(std::size_t i, const TropicalMatrix& w) {
    if (i >= w.rows()) throw ArgumentError("coordinate index out of range");
    if (w.rows() < 3) throw ArgumentError("coordinate hyperplanes need at least 3 coordinates");
    TropicalMatrix deleted = w.without_row(i);
    auto h = hyperplane_through_points(deleted.columns());
    if (!h) {
        auto sub = nonsingular_submatrix(deleted, deleted.rows());
        std::string msg = "matrix without row " + std::to_string(i + 1) + " has full tropical rank";
        if (sub) {
            msg += "; nonsingular submatrix rows";
            for (auto r : sub->first) msg += " " + std::to_string(r < i ? r + 1 : r + 2);
            msg += " cols";
            for (auto c : sub->second) msg += " " + std::to_string(c + 1);
        }
        throw PreconditionError(msg);
    }
    Rational worst;
    for (std::size_t j = 0; j < w.cols(); ++j) {
        std::optional<Rational> m;
        for (std::size_t r = 0, k = 0; r < w.rows(); ++r) {
            if (r == i) continue;
            Rational v = h->coeffs[k++] + w(r, j);
            if (!m || v < *m) m = v;
        }
        Rational gap = *m - w(i, j);
        if (j == 0 || gap > worst) worst = gap;
    }
    Vector coeffs;
    for (std::size_t r = 0, k = 0; r < w.rows(); ++r) coeffs.push_back(r == i ? worst + 1 : h->coeffs[k++]);
    return Hyperplane{coeffs};
}

// ---------------------------------------------------------------------------
// Stable intersection of two hyperplanes

/// A point of both hyperplanes is outside their stable intersection exactly when
/// both types agree and have two elements.
inline bool stable_membership(const Vector& w, const Hyperplane& h, const Hyperplane& h2) {
    TypeSet t = type_of(w, h), t2 = type_of(w, h2);
    if (t.size() < 2 || t2.size() < 2) throw PreconditionError("point does not lie on both hyperplanes");
    return !(t == t2 && t.size() == 2);
}

struct Witness {
    std::size_t point = 0;
    TypeSet type;
};

inline std::vector<Witness> witnesses(const std::vector<Vector>& points, const Hyperplane& h, const Hyperplane& h2) {
    std::vector<Witness> out;
    for (std::size_t p = 0; p < points.size(); ++p)
        if (!stable_membership(points[p], h, h2)) out.push_back({p, type_of(points[p], h)});
    return out;
}

/// Cells of the refinement of two hyperplanes, in homogenized coordinates (x, u)
/// with u > 0 on the relative interior, that lie in the stable intersection.
struct StableIntersection {
    Hyperplane first, second;
    std::vector<Cone> cells;

    bool contains(const Vector& w) const {
        Vector x = w;
        x.push_back(1);
        for (const auto& c : cells)
            if (c.contains(x)) return true;
        return false;
    }
};

inline StableIntersection stable_intersection_set(const Hyperplane& h, const Hyperplane& h2) {
    const std::size_t d = h.dim();
    if (d != h2.dim()) throw ArgumentError("hyperplanes of different dimensions");
    if (d < 2 || d > kMaxHyperplaneDim) throw ArgumentError("stable intersection supports 2 <= d <= 5");
    std::vector<Fan> fans{homogenized_hypersurface_fan(linear_form(h.coeffs)),
                          homogenized_hypersurface_fan(linear_form(h2.coeffs))};
    Cone upper(d + 1, {}, {unit_vector(d + 1, d)});
    Fan r = common_refinement(fans, upper);
    StableIntersection out{h, h2, {}};
    for (const auto& c : r.cones()) {
        Vector p = c.relative_interior_point();
        if (sgn(p[d]) <= 0) continue;
        Vector w(d);
        for (std::size_t i = 0; i < d; ++i) w[i] = p[i] / p[d];
        if (stable_membership(w, h, h2)) out.cells.push_back(c);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Certification of Kapranov rank at most 3 for 5 x n matrices

struct Certificate {
    std::array<Hyperplane, 5> hyperplanes;
    std::pair<std::size_t, std::size_t> stable_pair{0, 1};
    std::vector<std::array<TypeSet, 2>> types;  // per column: types for the two stable hyperplanes

    /// Re-checks every claim against A using only types and stable membership.
    /// Returns the failed checks; empty means valid.
    std::vector<std::string> verify(const TropicalMatrix& a) const {
        std::vector<std::string> bad;
        if (a.rows() != 5) {
            bad.push_back("matrix does not have 5 rows");
            return bad;
        }
        auto cols = a.columns();
        auto [i, j] = stable_pair;
        if (i >= 5 || j >= 5 || i >= j) bad.push_back("stable pair out of range");
        for (std::size_t k = 0; k < 5; ++k) {
            if (hyperplanes[k].dim() != 5) {
                bad.push_back("hyperplane " + std::to_string(k + 1) + " has wrong length");
                return bad;
            }
        }
        if (!bad.empty()) return bad;
        if (types.size() != cols.size()) bad.push_back("type list length differs from column count");
        for (std::size_t c = 0; c < cols.size(); ++c) {
            for (std::size_t k = 0; k < 5; ++k) {
                TypeSet t = type_of(cols[c], hyperplanes[k]);
                if (t.size() < 2)
                    bad.push_back("column " + std::to_string(c + 1) + " is off hyperplane " + std::to_string(k + 1));
                if (std::find(t.begin(), t.end(), k) != t.end())
                    bad.push_back("column " + std::to_string(c + 1) + " has coordinate " + std::to_string(k + 1) +
                                  " in its type for hyperplane " + std::to_string(k + 1));
            }
            if (c < types.size()) {
                if (types[c][0] != type_of(cols[c], hyperplanes[i]) || types[c][1] != type_of(cols[c], hyperplanes[j]))
                    bad.push_back("recorded types of column " + std::to_string(c + 1) + " are wrong");
            }
            if (on_hyperplane(cols[c], hyperplanes[i]) && on_hyperplane(cols[c], hyperplanes[j]) &&
                !stable_membership(cols[c], hyperplanes[i], hyperplanes[j]))
                bad.push_back("column " + std::to_string(c + 1) + " witnesses a nonstable intersection");
        }
        return bad;
    }
};

struct PairScan {
    std::pair<std::size_t, std::size_t> pair;
    std::vector<Witness> witnesses;
};

/// Coordinate hyperplanes H_1..H_5 and the witness lists of all 10 pairs in
/// lexicographic order.
inline std::vector<PairScan> scan_pairs(const std::array<Hyperplane, 5>& hs, const std::vector<Vector>& cols) {
    std::vector<PairScan> out;
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = i + 1; j < 5; ++j) out.push_back({{i, j}, witnesses(cols, hs[i], hs[j])});
    return out;
}

inline Certificate kapranov3_certify(const TropicalMatrix& a) {
    if (a.rows() != 5) throw ArgumentError("certification needs a 5 x n matrix");
    if (a.cols() >= 4) {
        if (auto sub = nonsingular_submatrix(a, 4)) {
            std::string msg = "tropical rank exceeds 3; nonsingular submatrix rows";
            for (auto r : sub->first) msg += " " + std::to_string(r + 1);
            msg += " cols";
            for (auto c : sub->second) msg += " " + std::to_string(c + 1);
            throw PreconditionError(msg);
        }
    }
    Certificate cert;
    for (std::size_t i = 0; i < 5; ++i) cert.hyperplanes[i] = coordinate_hyperplane(i, a);
    auto cols = a.columns();
    for (const auto& scan : scan_pairs(cert.hyperplanes, cols)) {
        if (!scan.witnesses.empty()) continue;
        cert.stable_pair = scan.pair;
        for (const auto& c : cols)
            cert.types.push_back({type_of(c, cert.hyperplanes[scan.pair.first]),
                                  type_of(c, cert.hyperplanes[scan.pair.second])});
        auto bad = cert.verify(a);
        if (!bad.empty()) throw InternalInvariantError("certificate failed self-verification: " + bad.front());
        return cert;
    }
    throw InternalInvariantError("theorem violated: every pair of coordinate hyperplanes has a witness");
}

// ---------------------------------------------------------------------------
// Tropical convex hull complexes

/// Relatively open cell of the type decomposition of TP^(d-1) by n generators.
/// types[i] is the bitmask of argmin_j (v_ij - x_j).
struct HullCell {
    std::vector<unsigned> types;
    std::size_t dim = 0;
    Vector point;  // a point of the cell with x_0 = 0
};

struct TropicalPolytopeComplex {
    std::vector<HullCell> cells;                   // bounded cells of the type decomposition
    std::vector<std::size_t> fine_f_vector;        // counts by dimension of `cells`
    std::vector<std::size_t> f_vector;             // after merging coplanar neighbours
    std::vector<std::vector<std::size_t>> coarse;  // groups of indices into `cells`, one per coarse cell
};

namespace detail {

inline bool face_of(const HullCell& f, const HullCell& c) {
    for (std::size_t i = 0; i < f.types.size(); ++i)
        if ((f.types[i] & c.types[i]) != c.types[i]) return false;
    return true;
}

// Rows over (x_0..x_{d-1}, 1) describing the closure of a cell: equalities and
// inequalities that are >= 0.
struct AffineRep {
    std::vector<Vector> eqs;
    std::vector<Vector> ineqs;
};

inline AffineRep closed_cell_rep(const TropicalMatrix& v, const std::vector<unsigned>& types) {
    const std::size_t d = v.rows();
    AffineRep rep;
    Vector x0 = zero_vector(d + 1);
    x0[0] = 1;
    rep.eqs.push_back(x0);
    for (std::size_t i = 0; i < types.size(); ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            if (!(types[i] >> j & 1u)) continue;
            for (std::size_t l = 0; l < d; ++l) {
                if (l == j) continue;
                // (v_il - x_l) - (v_ij - x_j)
                Vector r = zero_vector(d + 1);
                r[l] = -1;
                r[j] = 1;
                r[d] = v(l, i) - v(j, i);
                if (types[i] >> l & 1u) {
                    if (l > j) rep.eqs.push_back(std::move(r));
                } else {
                    rep.ineqs.push_back(std::move(r));
                }
            }
            break;  // one representative j per generator suffices
        }
    }
    return rep;
}

inline Rational eval_affine(const Vector& row, const Vector& x) {
    Rational s = row.back();
    for (std::size_t k = 0; k < x.size(); ++k) s += row[k] * x[k];
    return s;
}

}  // namespace detail

inline constexpr std::size_t kMaxHullPoints = 8;

/// Type decomposition of the tropical convex hull (min convention) of the given
/// points, restricted to bounded cells. Columns of `v` are the points.
inline TropicalPolytopeComplex tropical_polytope_complex(const TropicalMatrix& v) {
    const std::size_t d = v.rows(), n = v.cols();
    if (d > kMaxHyperplaneDim) throw ArgumentError("hull complexes support d <= 5");
    if (n > kMaxHullPoints) throw ArgumentError("hull complexes support at most 8 points");
    const unsigned full = (1u << d) - 1;

    // Homogenized variables (x_0..x_{d-1}, s) with x_0 = 0 and s > 0.
    auto add_type = [&](HalfOpenCone& c, std::size_t i, unsigned mask) {
        std::size_t j0 = 0;
        while (!(mask >> j0 & 1u)) ++j0;
        for (std::size_t l = 0; l < d; ++l) {
            if (l == j0) continue;
            Vector r = zero_vector(d + 1);
            r[l] = -1;
            r[j0] = 1;
            r[d] = v(l, i) - v(j0, i);
            if (mask >> l & 1u)
                c.equalities.push_back(std::move(r));
            else
                c.strict_ineqs.push_back(std::move(r));
        }
    };

    std::vector<HullCell> all;
    std::vector<unsigned> types;
    std::function<void(const HalfOpenCone&)> descend = [&](const HalfOpenCone& partial) {
        const std::size_t i = types.size();
        if (i == n) {
            unsigned covered = 0;
            for (auto t : types) covered |= t;
            if (covered != full) return;
            auto ip = relative_interior(partial);
            if (!ip) throw InternalInvariantError("feasible hull cell without interior point");
            HullCell cell;
            cell.types = types;
            cell.point.resize(d);
            for (std::size_t k = 0; k < d; ++k) cell.point[k] = ip->point[k] / ip->point[d];
            std::vector<Vector> lin;
            for (const auto& e : partial.equalities) lin.emplace_back(e.begin(), e.begin() + static_cast<std::ptrdiff_t>(d));
            cell.dim = d - rank(lin, d);
            all.push_back(std::move(cell));
            return;
        }
        for (unsigned mask = 1; mask <= full; ++mask) {
            HalfOpenCone c = partial;
            add_type(c, i, mask);
            if (!lp_feasible(c)) continue;
            types.push_back(mask);
            descend(c);
            types.pop_back();
        }
    };
    HalfOpenCone root(d + 1);
    root.equalities.push_back(unit_vector(d + 1, 0));
    root.strict_ineqs.push_back(unit_vector(d + 1, d));
    descend(root);

    std::stable_sort(all.begin(), all.end(), [](const HullCell& a, const HullCell& b) { return a.dim < b.dim; });
    TropicalPolytopeComplex out;
    out.cells = all;
    std::size_t top = 0;
    for (const auto& c : all) top = std::max(top, c.dim);
    out.fine_f_vector.assign(all.empty() ? 0 : top + 1, 0);
    for (const auto& c : all) ++out.fine_f_vector[c.dim];

    // Coarsening: from the top dimension down, glue two k-cells across a (k-1)-cell
    // that lies in exactly those two, when they span the same affine space and their
    // union is convex.
    const std::size_t m = all.size();
    std::vector<bool> absorbed(m, false);
    std::vector<std::size_t> group(m);
    std::iota(group.begin(), group.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
        return group[x] == x ? x : group[x] = find(group[x]);
    };
    std::vector<detail::AffineRep> reps;
    std::vector<std::vector<std::size_t>> vertices(m);
    for (std::size_t c = 0; c < m; ++c) {
        reps.push_back(detail::closed_cell_rep(v, all[c].types));
        for (std::size_t z = 0; z < m; ++z)
            if (all[z].dim == 0 && detail::face_of(all[z], all[c])) vertices[c].push_back(z);
    }
    std::map<std::size_t, detail::AffineRep> group_rep;
    std::map<std::size_t, std::vector<std::size_t>> group_vertices;
    auto span_key = [&](const std::vector<Vector>& eqs) { return rref(eqs, d + 1).rows; };

    for (std::size_t k = top; k >= 1; --k) {
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t f = 0; f < m; ++f) {
                if (all[f].dim != k - 1 || absorbed[f]) continue;
                std::vector<std::size_t> cof;
                for (std::size_t c = 0; c < m; ++c)
                    if (all[c].dim == k && detail::face_of(all[f], all[c])) cof.push_back(c);
                if (cof.size() != 2) continue;
                std::size_t ga = find(cof[0]), gb = find(cof[1]);
                if (ga == gb) {
                    absorbed[f] = true;
                    changed = true;
                    continue;
                }
                const auto& ra = group_rep.count(ga) ? group_rep[ga] : reps[ga];
                const auto& rb = group_rep.count(gb) ? group_rep[gb] : reps[gb];
                if (span_key(ra.eqs) != span_key(rb.eqs)) continue;
                const auto& va = group_vertices.count(ga) ? group_vertices[ga] : vertices[ga];
                const auto& vb = group_vertices.count(gb) ? group_vertices[gb] : vertices[gb];
                auto vanishes_on_f = [&](const Vector& row) {
                    for (auto z : vertices[f])
                        if (sgn(detail::eval_affine(row, all[z].point)) != 0) return false;
                    return true;
                };
                detail::AffineRep merged;
                merged.eqs = ra.eqs;
                bool convex = true;
                auto keep_rows = [&](const detail::AffineRep& own, const std::vector<std::size_t>& other_vertices) {
                    for (const auto& row : own.ineqs) {
                        if (vanishes_on_f(row)) continue;
                        for (auto z : other_vertices)
                            if (sgn(detail::eval_affine(row, all[z].point)) < 0) convex = false;
                        merged.ineqs.push_back(row);
                    }
                };
                keep_rows(ra, vb);
                keep_rows(rb, va);
                if (!convex) continue;
                std::vector<std::size_t> mv = va;
                mv.insert(mv.end(), vb.begin(), vb.end());
                std::sort(mv.begin(), mv.end());
                mv.erase(std::unique(mv.begin(), mv.end()), mv.end());
                group[gb] = ga;
                group_rep[ga] = std::move(merged);
                group_vertices[ga] = std::move(mv);
                absorbed[f] = true;
                changed = true;
            }
        }
        // Lower cells all of whose cofacets were absorbed are interior as well.
        for (std::size_t dim = k - 1; dim-- > 0;) {
            for (std::size_t g = 0; g < m; ++g) {
                if (all[g].dim != dim || absorbed[g]) continue;
                bool any = false, all_absorbed = true;
                for (std::size_t c = 0; c < m; ++c) {
                    if (all[c].dim != dim + 1 || !detail::face_of(all[g], all[c])) continue;
                    any = true;
                    all_absorbed = all_absorbed && absorbed[c];
                }
                if (any && all_absorbed) absorbed[g] = true;
            }
        }
    }

    std::map<std::size_t, std::vector<std::size_t>> groups;
    for (std::size_t c = 0; c < m; ++c)
        if (!absorbed[c]) groups[find(c)].push_back(c);
    out.f_vector.assign(out.fine_f_vector.size(), 0);
    for (auto& [root_cell, members] : groups) {
        ++out.f_vector[all[root_cell].dim];
        out.coarse.push_back(members);
    }
    while (!out.f_vector.empty() && out.f_vector.back() == 0) out.f_vector.pop_back();
    return out;
}

}  // namespace tropbasis
