#pragma once

// Lattice polytopes in V-representation: vertex filtering, facets by double
// description, and the face lattice as vertex bitsets.

#include "tropbasis/errors.hpp"
#include "tropbasis/linalg.hpp"
#include "tropbasis/lp.hpp"
#include "tropbasis/rational.hpp"

#include <boost/dynamic_bitset.hpp>

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <vector>

namespace tropbasis {

using VertexSet = boost::dynamic_bitset<>;

/// Is p a convex combination of `others`?
inline bool in_convex_hull(const Vector& p, const std::vector<Vector>& others) {
    if (others.empty()) return false;
    const std::size_t m = others.size();
    LinearProgram lp;
    lp.num_vars = m;
    lp.nonnegative.assign(m, true);
    lp.objective = zero_vector(m);
    lp.constraints.push_back({Vector(m, Rational(1)), Relation::eq, 1});
    for (std::size_t k = 0; k < p.size(); ++k) {
        Vector row(m);
        for (std::size_t i = 0; i < m; ++i) row[i] = others[i][k];
        lp.constraints.push_back({std::move(row), Relation::eq, p[k]});
    }
    return solve_lp(lp).status == LpStatus::optimal;
}

class Polytope {
public:
    Polytope() = default;

    /// Keeps only the points that are vertices of the convex hull (LP test per point).
    static Polytope from_points(std::vector<Vector> points) {
        if (points.empty()) throw ArgumentError("polytope needs at least one point");
        const std::size_t n = points[0].size();
        for (const auto& p : points)
            if (p.size() != n) throw ArgumentError("points of different dimensions");
        std::sort(points.begin(), points.end(), lex_less);
        points.erase(std::unique(points.begin(), points.end()), points.end());
        std::vector<Vector> verts;
        for (std::size_t i = 0; i < points.size(); ++i) {
            std::vector<Vector> others;
            for (std::size_t j = 0; j < points.size(); ++j)
                if (j != i) others.push_back(points[j]);
            if (!in_convex_hull(points[i], others)) verts.push_back(points[i]);
        }
        return Polytope(n, std::move(verts));
    }

    /// Trusts that no point is a convex combination of the others.
    static Polytope from_vertices(std::vector<Vector> vertices) {
        if (vertices.empty()) throw ArgumentError("polytope needs at least one vertex");
        const std::size_t n = vertices[0].size();
        return Polytope(n, std::move(vertices));
    }

    std::size_t ambient_dim() const { return ambient_; }
    const std::vector<Vector>& vertices() const { return vertices_; }
    std::size_t num_vertices() const { return vertices_.size(); }

    /// Affine dimension.
    std::size_t dim() const { return hull_.rank(); }

    /// Coordinates of a point of the affine hull in the chart given by the pivot
    /// columns of the direction space.
    Vector chart(const Vector& x) const {
        Vector y(hull_.rank());
        for (std::size_t r = 0; r < hull_.rank(); ++r) y[r] = x[hull_.pivots[r]] - vertices_[0][hull_.pivots[r]];
        return y;
    }

    /// The linear functional on the ambient space that restricts to `a` in chart coordinates.
    Vector lift_functional(const Vector& a) const {
        Vector w = zero_vector(ambient_);
        for (std::size_t r = 0; r < hull_.rank(); ++r) w[hull_.pivots[r]] = a[r];
        return w;
    }

private:
    Polytope(std::size_t n, std::vector<Vector> vertices) : ambient_(n), vertices_(std::move(vertices)) {
        std::vector<Vector> diffs;
        for (std::size_t i = 1; i < vertices_.size(); ++i) diffs.push_back(vertices_[i] - vertices_[0]);
        hull_ = rref(std::move(diffs), ambient_);
    }

    std::size_t ambient_ = 0;
    std::vector<Vector> vertices_;
    RowEchelon hull_;
};

/// Facet {y : offset + <normal, y> >= 0} in chart coordinates, with its vertex set.
struct Facet {
    Rational offset;
    Vector normal;
    VertexSet vertices;
};

namespace detail {

struct DdRay {
    Vector x;
    VertexSet tight;
};

}  // namespace detail

/// Facets of the polytope in its affine hull, computed by the double description
/// method on the cone {(b, a) : b + <a, y_v> >= 0 for every vertex v}.
inline std::vector<Facet> facets(const Polytope& p) {
    const std::size_t dim = p.dim();
    const std::size_t m = p.num_vertices();
    if (dim == 0) return {};
    const std::size_t d = dim + 1;
    std::vector<Vector> rows;
    for (const auto& v : p.vertices()) {
        Vector r(d);
        r[0] = 1;
        Vector y = p.chart(v);
        for (std::size_t k = 0; k < dim; ++k) r[k + 1] = y[k];
        rows.push_back(std::move(r));
    }

    std::vector<std::size_t> init;
    {
        std::vector<Vector> chosen;
        for (std::size_t i = 0; i < m && init.size() < d; ++i) {
            chosen.push_back(rows[i]);
            if (rank(chosen, d) == chosen.size())
                init.push_back(i);
            else
                chosen.pop_back();
        }
    }
    if (init.size() != d) throw InternalInvariantError("affine chart has wrong rank");
    std::vector<Vector> a0;
    for (auto i : init) a0.push_back(rows[i]);
    auto inv = inverse(a0);
    std::vector<detail::DdRay> rays;
    for (std::size_t j = 0; j < d; ++j) {
        detail::DdRay r;
        r.x.resize(d);
        for (std::size_t k = 0; k < d; ++k) r.x[k] = inv[k][j];
        r.x = primitive(r.x);
        r.tight.resize(m);
        for (std::size_t k = 0; k < d; ++k)
            if (k != j) r.tight.set(init[k]);
        rays.push_back(std::move(r));
    }
    VertexSet processed(m);
    for (auto i : init) processed.set(i);

    for (std::size_t h = 0; h < m; ++h) {
        if (processed.test(h)) continue;
        std::vector<Rational> s(rays.size());
        std::vector<std::size_t> pos, neg;
        for (std::size_t i = 0; i < rays.size(); ++i) {
            s[i] = dot(rows[h], rays[i].x);
            int sg = sgn(s[i]);
            if (sg > 0)
                pos.push_back(i);
            else if (sg < 0)
                neg.push_back(i);
            else
                rays[i].tight.set(h);
        }
        std::vector<detail::DdRay> next;
        for (std::size_t i = 0; i < rays.size(); ++i)
            if (sgn(s[i]) >= 0) next.push_back(rays[i]);
        for (auto ip : pos) {
            for (auto in : neg) {
                VertexSet common = rays[ip].tight & rays[in].tight;
                if (common.count() + 2 < d) continue;
                bool adjacent = true;
                for (std::size_t o = 0; o < rays.size() && adjacent; ++o) {
                    if (o == ip || o == in) continue;
                    if (common.is_subset_of(rays[o].tight)) adjacent = false;
                }
                if (!adjacent) continue;
                detail::DdRay r;
                r.x = primitive(s[ip] * rays[in].x - s[in] * rays[ip].x);
                r.tight = common;
                r.tight.set(h);
                next.push_back(std::move(r));
            }
        }
        rays = std::move(next);
        processed.set(h);
    }

    std::vector<Facet> out;
    for (auto& r : rays) {
        if (r.tight.none()) continue;
        Facet f;
        f.offset = r.x[0];
        f.normal.assign(r.x.begin() + 1, r.x.end());
        f.vertices = r.tight;
        out.push_back(std::move(f));
    }
    std::sort(out.begin(), out.end(), [](const Facet& a, const Facet& b) { return a.vertices < b.vertices; });
    return out;
}

/// All nonempty faces of a polytope, each with its vertex set, dimension and the
/// facets containing it.
class FaceLattice {
public:
    struct Face {
        VertexSet vertices;
        std::size_t dim = 0;
        std::vector<std::size_t> facets;    // indices into facets()
        std::vector<std::size_t> covers;    // faces of dimension dim + 1 containing this one
    };

    explicit FaceLattice(const Polytope& p) : polytope_(p), facets_(tropbasis::facets(p)) {
        const std::size_t m = p.num_vertices();
        std::set<VertexSet> seen;
        std::vector<VertexSet> queue;
        VertexSet all(m);
        all.set();
        seen.insert(all);
        for (const auto& f : facets_)
            if (seen.insert(f.vertices).second) queue.push_back(f.vertices);
        for (std::size_t q = 0; q < queue.size(); ++q) {
            for (const auto& f : facets_) {
                VertexSet g = queue[q] & f.vertices;
                if (g.none()) continue;
                if (seen.insert(g).second) queue.push_back(g);
            }
        }
        for (const auto& s : seen) {
            Face face;
            face.vertices = s;
            for (std::size_t i = 0; i < facets_.size(); ++i)
                if (s.is_subset_of(facets_[i].vertices)) face.facets.push_back(i);
            std::vector<Vector> normals;
            for (auto i : face.facets) normals.push_back(facets_[i].normal);
            face.dim = p.dim() - rank(normals, p.dim());
            faces_.push_back(std::move(face));
        }
        std::stable_sort(faces_.begin(), faces_.end(), [](const Face& a, const Face& b) { return a.dim < b.dim; });
        for (std::size_t i = 0; i < faces_.size(); ++i) {
            for (std::size_t j = 0; j < faces_.size(); ++j) {
                if (faces_[j].dim != faces_[i].dim + 1) continue;
                if (faces_[i].vertices.is_subset_of(faces_[j].vertices)) faces_[i].covers.push_back(j);
            }
        }
    }

    const Polytope& polytope() const { return polytope_; }
    const std::vector<Facet>& facets() const { return facets_; }
    const std::vector<Face>& faces() const { return faces_; }

    /// Number of faces of each dimension 0..dim P.
    std::vector<std::size_t> f_vector() const {
        std::vector<std::size_t> fv(polytope_.dim() + 1, 0);
        for (const auto& f : faces_) ++fv[f.dim];
        return fv;
    }

private:
    Polytope polytope_;
    std::vector<Facet> facets_;
    std::vector<Face> faces_;
};

}  // namespace tropbasis
