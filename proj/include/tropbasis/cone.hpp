#pragma once

// Closed polyhedral cones in H-representation with a canonical form.
//
// Canonical form: the equality space is stored as its reduced row echelon basis;
// inequalities are reduced modulo that space, scaled to primitive integer vectors,
// made irredundant and sorted. Two set-equal cones have identical canonical data.

#include "tropbasis/errors.hpp"
#include "tropbasis/linalg.hpp"
#include "tropbasis/lp.hpp"
#include "tropbasis/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace tropbasis {

class Cone {
public:
    Cone() = default;

    /// Builds {x : E x = 0, A x >= 0} and canonicalizes it. Uses LPs to detect
    /// implicit equalities and redundant inequalities.
    Cone(std::size_t ambient_dim, std::vector<Vector> equalities, std::vector<Vector> inequalities)
        : ambient_(ambient_dim) {
        check_lengths(equalities);
        check_lengths(inequalities);
        canonicalize(std::move(equalities), std::move(inequalities), /*trusted=*/false);
    }

    /// Skips the LP steps. The caller guarantees the inequalities are irredundant and
    /// none of them is an implicit equality.
    static Cone from_irredundant(std::size_t ambient_dim, std::vector<Vector> equalities,
                                 std::vector<Vector> inequalities) {
        Cone c;
        c.ambient_ = ambient_dim;
        c.check_lengths(equalities);
        c.check_lengths(inequalities);
        c.canonicalize(std::move(equalities), std::move(inequalities), /*trusted=*/true);
        return c;
    }

    static Cone whole_space(std::size_t n) { return from_irredundant(n, {}, {}); }

    std::size_t ambient_dim() const { return ambient_; }
    const std::vector<Vector>& equalities() const { return equalities_; }
    const std::vector<Vector>& inequalities() const { return inequalities_; }

    std::size_t dim() const { return ambient_ - equalities_.size(); }

    std::size_t lineality_dim() const {
        std::vector<Vector> all = equalities_;
        all.insert(all.end(), inequalities_.begin(), inequalities_.end());
        return ambient_ - rank(all, ambient_);
    }

    /// Basis of the largest linear subspace contained in the cone.
    std::vector<Vector> lineality_basis() const {
        std::vector<Vector> all = equalities_;
        all.insert(all.end(), inequalities_.begin(), inequalities_.end());
        return nullspace(all, ambient_);
    }

    bool contains(const Vector& x) const {
        for (const auto& e : equalities_)
            if (sgn(dot(e, x)) != 0) return false;
        for (const auto& a : inequalities_)
            if (sgn(dot(a, x)) < 0) return false;
        return true;
    }

    bool contains_in_relative_interior(const Vector& x) const {
        for (const auto& e : equalities_)
            if (sgn(dot(e, x)) != 0) return false;
        for (const auto& a : inequalities_)
            if (sgn(dot(a, x)) <= 0) return false;
        return true;
    }

    /// A point strictly inside every inequality. Exact.
    Vector relative_interior_point() const {
        HalfOpenCone h = as_half_open();
        auto ip = relative_interior(h);
        if (!ip) throw InternalInvariantError("closed cone reported empty");
        return ip->point;
    }

    HalfOpenCone as_half_open() const {
        HalfOpenCone h(ambient_);
        h.equalities = equalities_;
        h.weak_ineqs = inequalities_;
        return h;
    }

    Cone intersect(const Cone& o) const {
        if (o.ambient_ != ambient_) throw ArgumentError("cone dimension mismatch");
        std::vector<Vector> e = equalities_, a = inequalities_;
        e.insert(e.end(), o.equalities_.begin(), o.equalities_.end());
        a.insert(a.end(), o.inequalities_.begin(), o.inequalities_.end());
        return Cone(ambient_, std::move(e), std::move(a));
    }

    /// Face on which the listed inequalities vanish.
    Cone face(const std::vector<std::size_t>& tight) const {
        std::vector<Vector> e = equalities_, a;
        std::vector<bool> mark(inequalities_.size(), false);
        for (auto t : tight) mark.at(t) = true;
        for (std::size_t i = 0; i < inequalities_.size(); ++i) (mark[i] ? e : a).push_back(inequalities_[i]);
        return Cone(ambient_, std::move(e), std::move(a));
    }

    /// The unique face containing x in its relative interior; x must lie in the cone.
    Cone carrier(const Vector& x) const {
        std::vector<std::size_t> tight;
        for (std::size_t i = 0; i < inequalities_.size(); ++i)
            if (sgn(dot(inequalities_[i], x)) == 0) tight.push_back(i);
        return face(tight);
    }

    std::vector<Cone> facets() const {
        std::vector<Cone> out;
        for (std::size_t i = 0; i < inequalities_.size(); ++i) out.push_back(face({i}));
        return out;
    }

    /// Image under a coordinate permutation: (sigma x)[sigma[k]] = x[k].
    Cone permuted(const std::vector<std::size_t>& sigma) const {
        auto act = [&](const Vector& v) {
            Vector r(v.size());
            for (std::size_t k = 0; k < v.size(); ++k) r[sigma[k]] = v[k];
            return r;
        };
        std::vector<Vector> e, a;
        for (const auto& v : equalities_) e.push_back(act(v));
        for (const auto& v : inequalities_) a.push_back(act(v));
        return from_irredundant(ambient_, std::move(e), std::move(a));
    }

    /// Text key identical for set-equal cones.
    const std::string& key() const { return key_; }

    friend bool operator==(const Cone& a, const Cone& b) { return a.key_ == b.key_; }
    friend bool operator<(const Cone& a, const Cone& b) {
        if (a.dim() != b.dim()) return a.dim() < b.dim();
        return a.key_ < b.key_;
    }

    /// inner is a subset iff no point of inner violates one of our rows.
    bool contains_cone(const Cone& inner) const {
        for (const auto& e : equalities_) {
            for (const auto& s : {e, Rational(-1) * e}) {
                HalfOpenCone h = inner.as_half_open();
                h.strict_ineqs.push_back(s);
                if (lp_feasible(h)) return false;
            }
        }
        for (const auto& a : inequalities_) {
            HalfOpenCone h = inner.as_half_open();
            h.strict_ineqs.push_back(Rational(-1) * a);
            if (lp_feasible(h)) return false;
        }
        return true;
    }

private:
    void check_lengths(const std::vector<Vector>& rows) const {
        for (const auto& r : rows)
            if (r.size() != ambient_) throw ArgumentError("constraint length does not match ambient dimension");
    }

    void canonicalize(std::vector<Vector> eqs, std::vector<Vector> ineqs, bool trusted) {
        if (!trusted && !ineqs.empty()) {
            HalfOpenCone h(ambient_);
            h.equalities = eqs;
            h.weak_ineqs = ineqs;
            auto ip = relative_interior(h);
            std::vector<Vector> keep;
            for (std::size_t i = 0; i < ineqs.size(); ++i) {
                if (ip->implicit_equality[i])
                    eqs.push_back(ineqs[i]);
                else
                    keep.push_back(std::move(ineqs[i]));
            }
            ineqs = std::move(keep);
        }
        RowEchelon e = rref(std::move(eqs), ambient_);
        std::vector<Vector> reduced;
        for (auto& a : ineqs) {
            Vector r = e.reduce(std::move(a));
            if (is_zero(r)) continue;
            reduced.push_back(primitive(r));
        }
        std::sort(reduced.begin(), reduced.end(), lex_less);
        reduced.erase(std::unique(reduced.begin(), reduced.end()), reduced.end());
        if (!trusted) {
            // Remove rows implied by the others, one at a time.
            for (std::size_t i = 0; i < reduced.size();) {
                HalfOpenCone h(ambient_);
                h.equalities = e.rows;
                for (std::size_t j = 0; j < reduced.size(); ++j)
                    if (j != i) h.weak_ineqs.push_back(reduced[j]);
                h.strict_ineqs.push_back(Rational(-1) * reduced[i]);
                if (!lp_feasible(h))
                    reduced.erase(reduced.begin() + static_cast<std::ptrdiff_t>(i));
                else
                    ++i;
            }
        }
        equalities_ = std::move(e.rows);
        inequalities_ = std::move(reduced);
        build_key();
    }

    void build_key() {
        key_ = std::to_string(ambient_) + "|";
        for (const auto& v : equalities_) {
            for (const auto& x : v) key_ += x.get_str() + ",";
            key_ += ";";
        }
        key_ += "|";
        for (const auto& v : inequalities_) {
            for (const auto& x : v) key_ += x.get_str() + ",";
            key_ += ";";
        }
    }

    std::size_t ambient_ = 0;
    std::vector<Vector> equalities_;
    std::vector<Vector> inequalities_;
    std::string key_;
};

}  // namespace tropbasis
