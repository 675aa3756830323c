#pragma once

// Newton polytopes, inner normal fans, and tropical hypersurfaces as the
// codimension-one skeleton of the normal fan.

#include "tropbasis/cone.hpp"
#include "tropbasis/errors.hpp"
#include "tropbasis/fan.hpp"
#include "tropbasis/polytope.hpp"
#include "tropbasis/trop_core.hpp"

#include <cstddef>
#include <vector>

namespace tropbasis {

inline Polytope newton_polytope(const SignedTropPolynomial& f) {
    if (f.empty()) throw ArgumentError("Newton polytope of the empty polynomial");
    std::vector<Vector> pts;
    for (const auto& t : f.terms()) {
        Vector p;
        for (auto e : t.exponent) p.emplace_back(e);
        pts.push_back(std::move(p));
    }
    return Polytope::from_points(std::move(pts));
}

/// Newton polytope of the homogenized polynomial: exponent vectors with the
/// coefficient valuation appended as a last coordinate.
inline Polytope lifted_newton_polytope(const SignedTropPolynomial& f) {
    if (f.empty()) throw ArgumentError("Newton polytope of the empty polynomial");
    std::vector<Vector> pts;
    for (const auto& t : f.terms()) {
        Vector p;
        for (auto e : t.exponent) p.emplace_back(e);
        p.push_back(t.coeff_val);
        pts.push_back(std::move(p));
    }
    return Polytope::from_points(std::move(pts));
}

struct NormalCone {
    Cone cone;
    Vector interior_point;
};

/// Closed inner normal cone of a face: functionals minimized on the polytope at
/// (a superset of) that face.
inline NormalCone normal_cone(const FaceLattice& lattice, std::size_t face_index) {
    const Polytope& p = lattice.polytope();
    const auto& face = lattice.faces()[face_index];
    const auto& verts = p.vertices();
    const std::size_t base = face.vertices.find_first();
    std::vector<Vector> eqs, ineqs;
    for (auto v = face.vertices.find_next(base); v != VertexSet::npos; v = face.vertices.find_next(v))
        eqs.push_back(verts[v] - verts[base]);
    for (auto g : face.covers) {
        VertexSet extra = lattice.faces()[g].vertices - face.vertices;
        ineqs.push_back(verts[extra.find_first()] - verts[base]);
    }
    NormalCone out{Cone::from_irredundant(p.ambient_dim(), std::move(eqs), std::move(ineqs)),
                   zero_vector(p.ambient_dim())};
    for (auto i : face.facets) out.interior_point = out.interior_point + p.lift_functional(lattice.facets()[i].normal);
    if (!out.cone.contains_in_relative_interior(out.interior_point))
        throw InternalInvariantError("facet normal sum left the relative interior of a normal cone");
    return out;
}

/// Normal cones of the faces of dimension at least `min_face_dim`.
inline Fan normal_subfan(const FaceLattice& lattice, std::size_t min_face_dim) {
    std::vector<Cone> cones;
    std::vector<bool> maximal;
    for (std::size_t i = 0; i < lattice.faces().size(); ++i) {
        const auto& f = lattice.faces()[i];
        if (f.dim < min_face_dim) continue;
        cones.push_back(normal_cone(lattice, i).cone);
        maximal.push_back(f.dim == min_face_dim);
    }
    if (cones.empty()) throw ArgumentError("no faces of the requested dimension");
    return Fan(lattice.polytope().ambient_dim(), std::move(cones), std::move(maximal));
}

/// Complete fan; one maximal cone per vertex.
inline Fan normal_fan(const Polytope& p, std::size_t ambient_dim) {
    if (p.ambient_dim() != ambient_dim) throw ArgumentError("polytope lives in a different dimension");
    return normal_subfan(FaceLattice(p), 0);
}

/// Support: functionals at which the minimum of coeff_val + <omega, exponent>
/// over the terms is attained at least twice.
///
/// When every coefficient valuation is 0 the result is a fan in R^N. Otherwise it
/// is the homogenized fan in R^(N+1) whose last coordinate u multiplies the
/// valuations; the hypersurface itself is the slice u = 1.
inline Fan hypersurface_fan(const SignedTropPolynomial& f) {
    if (f.size() < 2) throw PreconditionError("hypersurface of a monomial is empty");
    Polytope p = f.has_nonzero_coeff_val() ? lifted_newton_polytope(f) : newton_polytope(f);
    return normal_subfan(FaceLattice(p), 1);
}

inline bool hypersurface_is_homogenized(const SignedTropPolynomial& f) { return f.has_nonzero_coeff_val(); }

/// Always the fan in R^(N+1), even when every valuation vanishes.
inline Fan homogenized_hypersurface_fan(const SignedTropPolynomial& f) {
    if (f.size() < 2) throw PreconditionError("hypersurface of a monomial is empty");
    return normal_subfan(FaceLattice(lifted_newton_polytope(f)), 1);
}

/// Tropical hyperplane min_i (h_i + x_i) as a signed linear form with valuations h.
inline SignedTropPolynomial linear_form(const Vector& h) {
    std::vector<SignedTerm> terms;
    for (std::size_t i = 0; i < h.size(); ++i) {
        SignedTerm t;
        t.coeff_val = h[i];
        t.exponent.assign(h.size(), 0);
        t.exponent[i] = 1;
        terms.push_back(std::move(t));
    }
    return SignedTropPolynomial(h.size(), std::move(terms));
}

}  // namespace tropbasis
