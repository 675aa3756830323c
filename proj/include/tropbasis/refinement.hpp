#pragma once

// Common refinement of fans by depth-first search over half-open pieces.
//
// The support of each fan is split into disjoint half-open cones, one per maximal
// cone: piece k is M_k minus the union of M_0..M_{k-1}. Choosing one piece per fan
// and pruning infeasible partial intersections enumerates every nonempty cell
// exactly once; the closed cells are then closed under faces.

#include "tropbasis/cone.hpp"
#include "tropbasis/errors.hpp"
#include "tropbasis/fan.hpp"
#include "tropbasis/lp.hpp"

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace tropbasis {

struct HalfOpenDecomposition {
    std::vector<Cone> closures;
    std::vector<HalfOpenCone> pieces;
};

/// M_k \ M_j is {x in M_k : l(x) > 0}, where l sums the inequalities of M_k
/// that vanish on the face M_k ∩ M_j.
inline HalfOpenDecomposition half_open_decomposition(const Fan& fan) {
    HalfOpenDecomposition d;
    d.closures = fan.maximal_cones();
    for (std::size_t k = 0; k < d.closures.size(); ++k) {
        const Cone& mk = d.closures[k];
        HalfOpenCone piece = mk.as_half_open();
        for (std::size_t j = 0; j < k; ++j) {
            Vector p = mk.intersect(d.closures[j]).relative_interior_point();
            Vector l = zero_vector(fan.ambient_dim());
            bool any = false;
            for (const auto& a : mk.inequalities()) {
                if (sgn(dot(a, p)) == 0) {
                    l = l + a;
                    any = true;
                }
            }
            if (!any) throw InternalInvariantError("maximal cones contain one another");
            piece.strict_ineqs.push_back(std::move(l));
        }
        d.pieces.push_back(std::move(piece));
    }
    return d;
}

/// Closed cells ∩ M_{k_i} (∩ domain) reached by the half-open search, deduplicated.
inline std::vector<Cone> refinement_cells(const std::vector<Fan>& fans, const std::optional<Cone>& domain = std::nullopt,
                                          std::size_t threads = 1) {
    if (fans.empty()) throw ArgumentError("refinement of no fans");
    const std::size_t n = fans.front().ambient_dim();
    for (const auto& f : fans)
        if (f.ambient_dim() != n) throw ArgumentError("fans live in different dimensions");
    if (domain && domain->ambient_dim() != n) throw ArgumentError("domain lives in a different dimension");

    std::vector<HalfOpenDecomposition> decomp;
    for (const auto& f : fans) decomp.push_back(half_open_decomposition(f));

    HalfOpenCone root(n);
    if (domain) root = domain->as_half_open();

    std::mutex mu;
    std::map<std::string, Cone> found;

    auto leaf = [&](const std::vector<std::size_t>& choice, std::map<std::string, Cone>& local) {
        std::vector<Vector> eqs, ineqs;
        auto add = [&](const Cone& c) {
            eqs.insert(eqs.end(), c.equalities().begin(), c.equalities().end());
            ineqs.insert(ineqs.end(), c.inequalities().begin(), c.inequalities().end());
        };
        for (std::size_t i = 0; i < choice.size(); ++i) add(decomp[i].closures[choice[i]]);
        if (domain) add(*domain);
        Cone c(n, std::move(eqs), std::move(ineqs));
        local.emplace(c.key(), std::move(c));
    };

    std::function<void(const HalfOpenCone&, std::map<std::string, Cone>&, std::vector<std::size_t>&)> descend =
        [&](const HalfOpenCone& partial, std::map<std::string, Cone>& local, std::vector<std::size_t>& picked) {
            const std::size_t level = picked.size();
            if (level == fans.size()) {
                leaf(picked, local);
                return;
            }
            for (std::size_t k = 0; k < decomp[level].pieces.size(); ++k) {
                HalfOpenCone next = partial.intersect(decomp[level].pieces[k]);
                if (!lp_feasible(next)) continue;
                picked.push_back(k);
                descend(next, local, picked);
                picked.pop_back();
            }
        };

    auto search_from = [&](std::size_t first_choice, std::map<std::string, Cone>& local) {
        HalfOpenCone start = root.intersect(decomp[0].pieces[first_choice]);
        if (!lp_feasible(start)) return;
        std::vector<std::size_t> picked{first_choice};
        descend(start, local, picked);
    };

    const std::size_t top = decomp[0].pieces.size();
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        std::map<std::string, Cone> local;
        for (std::size_t k = next++; k < top; k = next++) search_from(k, local);
        std::lock_guard<std::mutex> lock(mu);
        found.merge(local);
    };
    std::size_t workers = std::max<std::size_t>(1, std::min(threads, top));
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    std::vector<Cone> out;
    for (auto& [k, c] : found) out.push_back(std::move(c));
    std::sort(out.begin(), out.end());
    return out;
}

/// All cones ∩ a_i (∩ domain), a_i a cone of fan i.
inline Fan common_refinement(const std::vector<Fan>& fans, const std::optional<Cone>& domain = std::nullopt,
                             std::size_t threads = 1) {
    auto cells = refinement_cells(fans, domain, threads);
    return Fan::from_generators(fans.front().ambient_dim(), cells);
}

/// The cell of the refinement containing omega in its relative interior, or
/// nothing if omega lies outside some support.
inline std::optional<Cone> carrier_cone(const std::vector<Fan>& fans, const Vector& omega) {
    if (fans.empty()) throw ArgumentError("carrier in no fans");
    std::vector<Vector> eqs, ineqs;
    for (const auto& f : fans) {
        auto c = f.carrier(omega);
        if (!c) return std::nullopt;
        eqs.insert(eqs.end(), c->equalities().begin(), c->equalities().end());
        ineqs.insert(ineqs.end(), c->inequalities().begin(), c->inequalities().end());
    }
    return Cone(fans.front().ambient_dim(), std::move(eqs), std::move(ineqs));
}

}  // namespace tropbasis
