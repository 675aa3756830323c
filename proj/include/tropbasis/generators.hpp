#pragma once

// Seeded random 5 x n matrices of tropical rank at most 3.

#include "tropbasis/rational.hpp"
#include "tropbasis/trop_core.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace tropbasis {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Uniform on {-20..20} / {1, 2}.
inline Rational random_small_rational(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> num(-20, 20), den(1, 2);
    return make_rational(num(rng), den(rng));
}

/// (rows x inner) ⊙ (inner x cols) min-plus product of random factors.
inline TropicalMatrix random_tropical_product(std::mt19937_64& rng, std::size_t rows, std::size_t inner,
                                              std::size_t cols) {
    TropicalMatrix a(rows, inner), b(inner, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t k = 0; k < inner; ++k) a(i, k) = random_small_rational(rng);
    for (std::size_t k = 0; k < inner; ++k)
        for (std::size_t j = 0; j < cols; ++j) b(k, j) = random_small_rational(rng);
    return tropical_product(a, b);
}

/// A rank-preserving perturbation of `base`: positive scaling, row and column
/// shifts, then `cols` columns drawn with repetition.
inline TropicalMatrix perturb_within_cell(std::mt19937_64& rng, const TropicalMatrix& base, std::size_t cols) {
    std::uniform_int_distribution<long> scale_num(1, 6), scale_den(1, 3);
    std::uniform_int_distribution<std::size_t> pick(0, base.cols() - 1);
    Rational scale = make_rational(scale_num(rng), scale_den(rng));
    std::vector<Rational> row_shift(base.rows());
    for (auto& r : row_shift) r = random_small_rational(rng);
    TropicalMatrix out(base.rows(), cols);
    for (std::size_t j = 0; j < cols; ++j) {
        std::size_t src = pick(rng);
        Rational col_shift = random_small_rational(rng);
        for (std::size_t i = 0; i < base.rows(); ++i) out(i, j) = scale * base(i, src) + row_shift[i] + col_shift;
    }
    return out;
}

/// Mixture of tropical products and perturbed seed matrices (every seed must have
/// tropical rank at most 3 and five rows).
class Rank3Generator {
public:
    Rank3Generator(std::uint64_t seed, std::vector<TropicalMatrix> seeds)
        : rng_(splitmix64(seed)), seeds_(std::move(seeds)) {}

    TropicalMatrix next(std::size_t cols) {
        std::uniform_int_distribution<std::size_t> which(0, seeds_.size() + 1);
        std::size_t k = which(rng_);
        if (seeds_.empty() || k <= 1) return random_tropical_product(rng_, 5, 3, cols);
        return perturb_within_cell(rng_, seeds_[k - 2], cols);
    }

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
    std::vector<TropicalMatrix> seeds_;
};

}  // namespace tropbasis
