#pragma once

// Polyhedral fans stored as face-closed sets of canonical cones.

#include "tropbasis/cone.hpp"
#include "tropbasis/errors.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace tropbasis {

/// Cone counts per dimension, starting at the lineality space.
struct FVector {
    std::size_t lineality_dim = 0;
    std::vector<std::size_t> counts;

    std::string str() const {
        std::string s = "(";
        for (std::size_t i = 0; i < counts.size(); ++i) s += (i ? ", " : "") + std::to_string(counts[i]);
        return s + ")";
    }

    friend bool operator==(const FVector&, const FVector&) = default;
};

/// Alternating sum over the cones above the lineality space, read as cells of the
/// sphere in R^N / L: a cone of dimension L + k + 1 is a k-cell.
inline long long euler_characteristic(const std::vector<long long>& fv, std::size_t lineality_dim) {
    long long chi = 0;
    for (std::size_t i = lineality_dim + 1; i < fv.size() + lineality_dim; ++i) {
        long long c = fv[i - lineality_dim];
        chi += ((i - lineality_dim - 1) % 2 == 0) ? c : -c;
    }
    return chi;
}

/// Same, with counts indexed from the lineality space.
inline long long euler_characteristic(const FVector& fv) {
    std::vector<long long> c(fv.counts.begin(), fv.counts.end());
    return euler_characteristic(c, fv.lineality_dim);
}

class Fan {
public:
    Fan() = default;

    /// Adopts a face-closed cone list; `maximal` flags the inclusion-maximal cones.
    Fan(std::size_t ambient_dim, std::vector<Cone> cones, std::vector<bool> maximal)
        : ambient_(ambient_dim) {
        if (cones.size() != maximal.size()) throw ArgumentError("maximal flags do not match cones");
        std::vector<std::size_t> order(cones.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return cones[a] < cones[b]; });
        for (auto i : order) {
            if (!cones_.empty() && cones_.back() == cones[i]) continue;
            if (cones[i].ambient_dim() != ambient_) throw ArgumentError("cone dimension mismatch");
            cones_.push_back(std::move(cones[i]));
            maximal_.push_back(maximal[i]);
        }
        if (cones_.empty()) throw ArgumentError("a fan needs at least one cone");
    }

    /// Closes the given cones under taking faces.
    static Fan from_generators(std::size_t ambient_dim, const std::vector<Cone>& generators) {
        std::map<std::string, Cone> all;
        std::map<std::string, bool> is_max;
        std::vector<Cone> stack;
        for (const auto& g : generators) {
            if (g.ambient_dim() != ambient_dim) throw ArgumentError("cone dimension mismatch");
            if (all.emplace(g.key(), g).second) {
                is_max[g.key()] = true;
                stack.push_back(g);
            }
        }
        while (!stack.empty()) {
            Cone c = std::move(stack.back());
            stack.pop_back();
            for (auto& f : c.facets()) {
                auto [it, fresh] = all.emplace(f.key(), f);
                is_max[f.key()] = false;
                if (fresh) stack.push_back(std::move(f));
            }
        }
        std::vector<Cone> cones;
        std::vector<bool> flags;
        for (auto& [k, c] : all) {
            cones.push_back(std::move(c));
            flags.push_back(is_max[k]);
        }
        return Fan(ambient_dim, std::move(cones), std::move(flags));
    }

    std::size_t ambient_dim() const { return ambient_; }
    std::size_t lineality_dim() const { return cones_.front().lineality_dim(); }
    std::size_t dim() const { return cones_.back().dim(); }
    const std::vector<Cone>& cones() const { return cones_; }
    bool is_maximal(std::size_t i) const { return maximal_[i]; }

    std::vector<Cone> maximal_cones() const {
        std::vector<Cone> out;
        for (std::size_t i = 0; i < cones_.size(); ++i)
            if (maximal_[i]) out.push_back(cones_[i]);
        return out;
    }

    std::vector<Cone> cones_of_dim(std::size_t d) const {
        std::vector<Cone> out;
        for (const auto& c : cones_)
            if (c.dim() == d) out.push_back(c);
        return out;
    }

    FVector f_vector() const {
        FVector fv;
        fv.lineality_dim = lineality_dim();
        fv.counts.assign(dim() - fv.lineality_dim + 1, 0);
        for (const auto& c : cones_) ++fv.counts[c.dim() - fv.lineality_dim];
        return fv;
    }

    bool in_support(const Vector& x) const {
        for (std::size_t i = 0; i < cones_.size(); ++i)
            if (maximal_[i] && cones_[i].contains(x)) return true;
        return false;
    }

    /// Smallest cone containing x.
    std::optional<Cone> carrier(const Vector& x) const {
        for (const auto& c : cones_)
            if (c.contains(x)) return c;
        return std::nullopt;
    }

    bool is_pure() const {
        for (std::size_t i = 0; i < cones_.size(); ++i)
            if (maximal_[i] && cones_[i].dim() != dim()) return false;
        return true;
    }

    friend bool operator==(const Fan& a, const Fan& b) { return a.ambient_ == b.ambient_ && a.cones_ == b.cones_; }

private:
    std::size_t ambient_ = 0;
    std::vector<Cone> cones_;  // sorted by dimension, then key
    std::vector<bool> maximal_;
};

}  // namespace tropbasis
