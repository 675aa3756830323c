#pragma once

// Exact linear programming over Q.
//
// Two engines are provided. Fourier-Motzkin elimination decides feasibility of
// homogeneous systems with strict rows and is used for small ambient dimension.
// A dense two-phase simplex with Bland's rule handles everything else, including
// optimization.

#include "tropbasis/errors.hpp"
#include "tropbasis/rational.hpp"

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <optional>
#include <set>
#include <utility>
#include <vector>

namespace tropbasis {

enum class LpBackend { fourier_motzkin, simplex };

namespace detail {
inline std::atomic<LpBackend>& default_backend_slot() {
    static std::atomic<LpBackend> slot{LpBackend::fourier_motzkin};
    return slot;
}
}  // namespace detail

/// Process-wide engine policy. `fourier_motzkin` means elimination up to
/// kFourierMotzkinMaxDim variables and simplex above; `simplex` forces simplex.
inline LpBackend default_lp_backend() { return detail::default_backend_slot().load(); }
inline void set_default_lp_backend(LpBackend b) { detail::default_backend_slot().store(b); }

inline constexpr std::size_t kFourierMotzkinMaxDim = 6;
inline constexpr std::size_t kFourierMotzkinRowCap = 4000;

/// {x : <e,x> = 0 for e in equalities, <w,x> >= 0 for w in weak_ineqs, <s,x> > 0 for s in strict_ineqs}.
struct HalfOpenCone {
    std::size_t ambient_dim = 0;
    std::vector<Vector> equalities;
    std::vector<Vector> weak_ineqs;
    std::vector<Vector> strict_ineqs;

    HalfOpenCone() = default;
    explicit HalfOpenCone(std::size_t n) : ambient_dim(n) {}

    bool contains(const Vector& x) const {
        for (const auto& e : equalities)
            if (sgn(dot(e, x)) != 0) return false;
        for (const auto& w : weak_ineqs)
            if (sgn(dot(w, x)) < 0) return false;
        for (const auto& s : strict_ineqs)
            if (sgn(dot(s, x)) <= 0) return false;
        return true;
    }

    /// Conjunction of the constraints of both sets.
    HalfOpenCone intersect(const HalfOpenCone& o) const {
        if (o.ambient_dim != ambient_dim) throw ArgumentError("half-open cone dimension mismatch");
        HalfOpenCone r = *this;
        r.equalities.insert(r.equalities.end(), o.equalities.begin(), o.equalities.end());
        r.weak_ineqs.insert(r.weak_ineqs.end(), o.weak_ineqs.begin(), o.weak_ineqs.end());
        r.strict_ineqs.insert(r.strict_ineqs.end(), o.strict_ineqs.begin(), o.strict_ineqs.end());
        return r;
    }
};

// ---------------------------------------------------------------------------
// Simplex

enum class Relation { le, ge, eq };

struct LinearConstraint {
    Vector coeffs;
    Relation rel = Relation::ge;
    Rational rhs = 0;
};

/// maximize <objective, x> subject to the constraints. Variables are free unless
/// flagged in `nonnegative`.
struct LinearProgram {
    std::size_t num_vars = 0;
    std::vector<bool> nonnegative;
    std::vector<LinearConstraint> constraints;
    Vector objective;
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpSolution {
    LpStatus status = LpStatus::infeasible;
    Vector x;
    Rational value = 0;
};

namespace detail {

class Tableau {
public:
    Tableau(std::vector<Vector> rows, std::vector<std::size_t> basis, std::size_t cols)
        : t_(std::move(rows)), basis_(std::move(basis)), cols_(cols), obj_(cols + 1) {}

    // Sets reduced costs for maximizing <c, y>.
    void set_objective(const Vector& c) {
        cost_ = c;
        obj_ = Vector(cols_ + 1);
        for (std::size_t j = 0; j < cols_; ++j) obj_[j] = c[j];
        for (std::size_t i = 0; i < t_.size(); ++i) {
            const Rational& cb = c[basis_[i]];
            if (sgn(cb) == 0) continue;
            for (std::size_t j = 0; j <= cols_; ++j) {
                if (sgn(t_[i][j]) != 0) obj_[j] -= cb * t_[i][j];
            }
        }
    }

    // Returns false when unbounded.
    bool optimize(const std::vector<bool>& forbidden) {
        for (;;) {
            std::size_t enter = cols_;
            for (std::size_t j = 0; j < cols_; ++j) {
                if (!forbidden[j] && sgn(obj_[j]) > 0) {
                    enter = j;
                    break;
                }
            }
            if (enter == cols_) return true;
            std::size_t leave = t_.size();
            Rational best;
            for (std::size_t i = 0; i < t_.size(); ++i) {
                if (sgn(t_[i][enter]) <= 0) continue;
                Rational ratio = t_[i][cols_] / t_[i][enter];
                if (leave == t_.size() || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
                    best = ratio;
                    leave = i;
                }
            }
            if (leave == t_.size()) return false;
            pivot(leave, enter);
        }
    }

    void pivot(std::size_t r, std::size_t c) {
        Rational inv = 1 / t_[r][c];
        for (std::size_t j = 0; j <= cols_; ++j) {
            if (sgn(t_[r][j]) != 0) t_[r][j] *= inv;
        }
        for (std::size_t i = 0; i < t_.size(); ++i) {
            if (i == r || sgn(t_[i][c]) == 0) continue;
            Rational f = t_[i][c];
            for (std::size_t j = 0; j <= cols_; ++j) {
                if (sgn(t_[r][j]) != 0) t_[i][j] -= f * t_[r][j];
            }
        }
        if (sgn(obj_[c]) != 0) {
            Rational f = obj_[c];
            for (std::size_t j = 0; j <= cols_; ++j) {
                if (sgn(t_[r][j]) != 0) obj_[j] -= f * t_[r][j];
            }
        }
        basis_[r] = c;
    }

    Rational value() const {
        Rational v = 0;
        for (std::size_t i = 0; i < t_.size(); ++i) v += cost_[basis_[i]] * t_[i][cols_];
        return v;
    }

    Vector primal() const {
        Vector y(cols_);
        for (std::size_t i = 0; i < t_.size(); ++i) y[basis_[i]] = t_[i][cols_];
        return y;
    }

    // Pivots basic artificial variables out, dropping rows that are linearly dependent.
    void expel(const std::vector<bool>& artificial) {
        for (std::size_t i = 0; i < t_.size();) {
            if (!artificial[basis_[i]]) {
                ++i;
                continue;
            }
            std::size_t c = cols_;
            for (std::size_t j = 0; j < cols_; ++j) {
                if (!artificial[j] && sgn(t_[i][j]) != 0) {
                    c = j;
                    break;
                }
            }
            if (c == cols_) {
                t_.erase(t_.begin() + static_cast<std::ptrdiff_t>(i));
                basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
                continue;
            }
            pivot(i, c);
            ++i;
        }
    }

private:
    std::vector<Vector> t_;
    std::vector<std::size_t> basis_;
    std::size_t cols_;
    Vector obj_;
    Vector cost_;
};

}  // namespace detail

/// Two-phase dense simplex with Bland's rule; exact and always terminating.
inline LpSolution solve_lp(const LinearProgram& lp) {
    const std::size_t n = lp.num_vars;
    std::vector<bool> nonneg = lp.nonnegative;
    nonneg.resize(n, false);

    // Column layout: one column per variable, a negative-part column per free variable,
    // then slack/surplus columns, then artificials.
    std::vector<std::size_t> neg_col(n, 0);
    std::size_t cols = n;
    for (std::size_t k = 0; k < n; ++k) {
        if (!nonneg[k]) neg_col[k] = cols++;
    }
    const std::size_t m = lp.constraints.size();
    std::vector<std::size_t> slack_col(m, 0);
    for (std::size_t i = 0; i < m; ++i) {
        if (lp.constraints[i].rel != Relation::eq) slack_col[i] = cols++;
    }
    std::vector<std::size_t> art_col(m, 0);
    std::vector<bool> needs_art(m, false);
    for (std::size_t i = 0; i < m; ++i) {
        const auto& c = lp.constraints[i];
        bool flip = sgn(c.rhs) < 0;
        Relation rel = c.rel;
        if (flip && rel != Relation::eq) rel = (rel == Relation::le) ? Relation::ge : Relation::le;
        needs_art[i] = (rel != Relation::le);
        if (needs_art[i]) art_col[i] = cols++;
    }

    std::vector<Vector> rows(m, Vector(cols + 1));
    std::vector<std::size_t> basis(m);
    std::vector<bool> artificial(cols, false);
    for (std::size_t i = 0; i < m; ++i) {
        const auto& c = lp.constraints[i];
        int s = sgn(c.rhs) < 0 ? -1 : 1;
        Relation rel = c.rel;
        if (s < 0 && rel != Relation::eq) rel = (rel == Relation::le) ? Relation::ge : Relation::le;
        for (std::size_t k = 0; k < n; ++k) {
            if (sgn(c.coeffs[k]) == 0) continue;
            rows[i][k] = s * c.coeffs[k];
            if (!nonneg[k]) rows[i][neg_col[k]] = -rows[i][k];
        }
        if (rel == Relation::le) {
            rows[i][slack_col[i]] = 1;
            basis[i] = slack_col[i];
        } else if (rel == Relation::ge) {
            rows[i][slack_col[i]] = -1;
        }
        if (needs_art[i]) {
            rows[i][art_col[i]] = 1;
            basis[i] = art_col[i];
            artificial[art_col[i]] = true;
        }
        rows[i][cols] = s * c.rhs;
    }

    detail::Tableau tab(std::move(rows), std::move(basis), cols);
    std::vector<bool> none(cols, false);
    Vector phase1(cols);
    for (std::size_t j = 0; j < cols; ++j)
        if (artificial[j]) phase1[j] = -1;
    tab.set_objective(phase1);
    tab.optimize(none);
    if (sgn(tab.value()) < 0) return {LpStatus::infeasible, {}, 0};
    tab.expel(artificial);

    Vector phase2(cols);
    for (std::size_t k = 0; k < n; ++k) {
        if (k < lp.objective.size() && sgn(lp.objective[k]) != 0) {
            phase2[k] = lp.objective[k];
            if (!nonneg[k]) phase2[neg_col[k]] = -lp.objective[k];
        }
    }
    tab.set_objective(phase2);
    bool bounded = tab.optimize(artificial);
    Vector y = tab.primal();
    Vector x(n);
    for (std::size_t k = 0; k < n; ++k) {
        x[k] = y[k];
        if (!nonneg[k]) x[k] -= y[neg_col[k]];
    }
    if (!bounded) return {LpStatus::unbounded, x, 0};
    return {LpStatus::optimal, x, tab.value()};
}

// ---------------------------------------------------------------------------
// Fourier-Motzkin

namespace detail {

struct FmRow {
    Vector a;
    bool strict;
};

inline std::optional<bool> fourier_motzkin_feasible(const HalfOpenCone& c, std::size_t row_cap) {
    const std::size_t n = c.ambient_dim;
    std::vector<Vector> eqs = c.equalities;
    std::vector<FmRow> rows;
    for (const auto& w : c.weak_ineqs) rows.push_back({w, false});
    for (const auto& s : c.strict_ineqs) rows.push_back({s, true});

    // Substitute away one variable per independent equality.
    for (std::size_t e = 0; e < eqs.size(); ++e) {
        std::size_t k = n;
        for (std::size_t j = 0; j < n; ++j) {
            if (sgn(eqs[e][j]) != 0) {
                k = j;
                break;
            }
        }
        if (k == n) continue;
        const Vector piv = eqs[e];
        auto eliminate = [&](Vector& v) {
            if (sgn(v[k]) == 0) return;
            Rational f = v[k] / piv[k];
            for (std::size_t j = 0; j < n; ++j) {
                if (sgn(piv[j]) != 0) v[j] -= f * piv[j];
            }
        };
        for (std::size_t f = e + 1; f < eqs.size(); ++f) eliminate(eqs[f]);
        for (auto& r : rows) eliminate(r.a);
    }

    auto normalize = [&](std::vector<FmRow>& rs) -> bool {
        std::set<std::pair<std::vector<Rational>, bool>, std::less<>> seen;
        std::vector<FmRow> out;
        for (auto& r : rs) {
            if (is_zero(r.a)) {
                if (r.strict) return false;
                continue;
            }
            Vector p = primitive(r.a);
            seen.insert({std::move(p), r.strict});
        }
        for (auto it = seen.begin(); it != seen.end(); ++it) {
            // A weak copy is implied by a strict copy of the same row.
            if (!it->second && seen.count({it->first, true})) continue;
            out.push_back({it->first, it->second});
        }
        rs = std::move(out);
        return true;
    };

    if (!normalize(rows)) return false;
    std::vector<bool> alive(n, true);
    for (;;) {
        bool any_strict = std::any_of(rows.begin(), rows.end(), [](const FmRow& r) { return r.strict; });
        if (!any_strict) return true;
        std::size_t best = n;
        std::size_t best_cost = 0;
        bool trivial = false;
        for (std::size_t k = 0; k < n; ++k) {
            if (!alive[k]) continue;
            std::size_t p = 0, q = 0;
            for (const auto& r : rows) {
                int s = sgn(r.a[k]);
                if (s > 0) ++p;
                if (s < 0) ++q;
            }
            if (p + q == 0) {
                alive[k] = false;
                continue;
            }
            if (p == 0 || q == 0) {
                best = k;
                trivial = true;
                break;
            }
            std::size_t cost = p * q;
            if (best == n || cost < best_cost) {
                best = k;
                best_cost = cost;
            }
        }
        if (best == n) return true;
        const std::size_t k = best;
        alive[k] = false;
        std::vector<FmRow> next;
        std::vector<const FmRow*> pos, neg;
        for (const auto& r : rows) {
            int s = sgn(r.a[k]);
            if (s == 0)
                next.push_back(r);
            else if (s > 0)
                pos.push_back(&r);
            else
                neg.push_back(&r);
        }
        if (!trivial) {
            if (next.size() + pos.size() * neg.size() > row_cap) return std::nullopt;
            for (const auto* p : pos) {
                for (const auto* q : neg) {
                    Rational fp = -q->a[k];
                    Rational fq = p->a[k];
                    Vector comb(n);
                    for (std::size_t j = 0; j < n; ++j) comb[j] = fp * p->a[j] + fq * q->a[j];
                    comb[k] = 0;
                    next.push_back({std::move(comb), p->strict || q->strict});
                }
            }
        }
        rows = std::move(next);
        if (!normalize(rows)) return false;
    }
}

}  // namespace detail

/// Simplex formulation of half-open cone feasibility: scale strict rows to >= 1.
inline bool simplex_feasible(const HalfOpenCone& c) {
    if (c.strict_ineqs.empty()) return true;
    LinearProgram lp;
    lp.num_vars = c.ambient_dim;
    lp.objective = zero_vector(c.ambient_dim);
    for (const auto& e : c.equalities) lp.constraints.push_back({e, Relation::eq, 0});
    for (const auto& w : c.weak_ineqs) lp.constraints.push_back({w, Relation::ge, 0});
    for (const auto& s : c.strict_ineqs) lp.constraints.push_back({s, Relation::ge, 1});
    return solve_lp(lp).status != LpStatus::infeasible;
}

/// Nonemptiness of a half-open cone.
inline bool lp_feasible(const HalfOpenCone& c, LpBackend backend = default_lp_backend()) {
    if (c.strict_ineqs.empty()) return true;
    if (backend == LpBackend::fourier_motzkin && c.ambient_dim <= kFourierMotzkinMaxDim) {
        if (auto r = detail::fourier_motzkin_feasible(c, kFourierMotzkinRowCap)) return *r;
    }
    return simplex_feasible(c);
}

/// A point of a half-open cone that is as interior as possible: strict rows hold,
/// and every weak row that is not an implicit equality holds strictly.
struct InteriorPoint {
    Vector point;
    std::vector<bool> implicit_equality;  // indexed like weak_ineqs
};

inline std::optional<InteriorPoint> relative_interior(const HalfOpenCone& c) {
    const std::size_t n = c.ambient_dim;
    const std::size_t w = c.weak_ineqs.size();
    LinearProgram lp;
    lp.num_vars = n + w;
    lp.nonnegative.assign(n + w, false);
    lp.objective = zero_vector(n + w);
    for (std::size_t i = 0; i < w; ++i) {
        lp.nonnegative[n + i] = true;
        lp.objective[n + i] = 1;
    }
    auto widen = [&](const Vector& v) {
        Vector r = zero_vector(n + w);
        std::copy(v.begin(), v.end(), r.begin());
        return r;
    };
    for (const auto& e : c.equalities) lp.constraints.push_back({widen(e), Relation::eq, 0});
    for (std::size_t i = 0; i < w; ++i) {
        Vector r = widen(c.weak_ineqs[i]);
        r[n + i] = -1;
        lp.constraints.push_back({std::move(r), Relation::ge, 0});
        lp.constraints.push_back({unit_vector(n + w, n + i), Relation::le, 1});
    }
    for (const auto& s : c.strict_ineqs) lp.constraints.push_back({widen(s), Relation::ge, 1});
    LpSolution sol = solve_lp(lp);
    if (sol.status != LpStatus::optimal) return std::nullopt;
    InteriorPoint out;
    out.point.assign(sol.x.begin(), sol.x.begin() + static_cast<std::ptrdiff_t>(n));
    out.implicit_equality.resize(w);
    for (std::size_t i = 0; i < w; ++i) out.implicit_equality[i] = sgn(dot(c.weak_ineqs[i], out.point)) == 0;
    return out;
}

}  // namespace tropbasis
