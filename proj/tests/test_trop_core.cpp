#include "published.hpp"
#include "tropbasis/trop_core.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace tropbasis;

namespace {

using testdata::example_a;

Rational brute_min(const TropicalMatrix& m, std::size_t& count) {
    std::vector<std::size_t> p(m.rows());
    std::iota(p.begin(), p.end(), 0);
    Rational best;
    count = 0;
    do {
        Rational s = 0;
        for (std::size_t i = 0; i < p.size(); ++i) s += m(i, p[i]);
        if (count == 0 || s < best) {
            best = s;
            count = 1;
        } else if (s == best) {
            ++count;
        }
    } while (std::next_permutation(p.begin(), p.end()));
    return best;
}

TropicalMatrix random_matrix(std::mt19937_64& rng, std::size_t d, std::size_t n, int lo, int hi, int den = 1) {
    std::uniform_int_distribution<int> dist(lo, hi);
    TropicalMatrix m(d, n);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = make_rational(dist(rng), den);
    return m;
}

}  // namespace

TEST(Minors, CountsAndSigns) {
    auto m22 = minors(2, 2, 2);
    ASSERT_EQ(m22.size(), 1u);
    ASSERT_EQ(m22[0].size(), 2u);
    EXPECT_EQ(m22[0].terms()[0].sign, 1);
    EXPECT_EQ(m22[0].terms()[0].exponent, (std::vector<unsigned>{1, 0, 0, 1}));
    EXPECT_EQ(m22[0].terms()[1].sign, -1);

    auto m554 = minors(5, 5, 4);
    EXPECT_EQ(m554.size(), 25u);
    for (const auto& f : m554) EXPECT_EQ(f.size(), 24u);

    auto d3 = minors(3, 3, 3);
    ASSERT_EQ(d3.size(), 1u);
    int pos = 0;
    for (const auto& t : d3[0].terms()) pos += t.sign > 0;
    EXPECT_EQ(pos, 3);
    EXPECT_THROW(minors(2, 3, 3), ArgumentError);
    EXPECT_THROW(minors(2, 3, 0), ArgumentError);
}

TEST(TropDet, WorkedExample) {
    auto r = trop_det(example_a());
    EXPECT_EQ(r.value, 2);
    EXPECT_EQ(r.optimal_count, 3u);
    EXPECT_EQ(r.optimal_permutations.size(), 3u);
    EXPECT_TRUE(is_trop_singular(example_a()));
    EXPECT_FALSE(is_trop_singular(example_a().submatrix({0, 1}, {0, 1})));
}

TEST(TropDet, ZeroMatrixAndErrors) {
    auto r = trop_det(TropicalMatrix(2, 2));
    EXPECT_EQ(r.value, 0);
    EXPECT_EQ(r.optimal_count, 2u);
    EXPECT_THROW(trop_det(TropicalMatrix(2, 3)), ArgumentError);
}

TEST(TropDet, MatchesPermutationOracle) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t k = 1 + trial % 6;
        auto m = random_matrix(rng, k, k, -4, 4, 1 + trial % 2);
        std::size_t count = 0;
        Rational v = brute_min(m, count);
        auto r = trop_det(m);
        EXPECT_EQ(r.value, v);
        EXPECT_EQ(r.optimal_count, count);
    }
}

TEST(TropDet, AssignmentSolverAgreesWithOracleOnUniqueness) {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t k = 7 + trial % 2;
        auto m = random_matrix(rng, k, k, 0, trial % 2 ? 3 : 40);
        std::size_t count = 0;
        Rational v = brute_min(m, count);
        auto r = trop_det(m);
        EXPECT_EQ(r.value, v);
        EXPECT_EQ(r.optimal_count >= 2, count >= 2);
        EXPECT_FALSE(r.count_exact);
    }
}

TEST(TropDet, EqualRowsAreSingular) {
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 30; ++trial) {
        std::size_t k = 2 + trial % 9;
        auto m = random_matrix(rng, k, k, -9, 9);
        for (std::size_t j = 0; j < k; ++j) m(1, j) = m(0, j);
        EXPECT_TRUE(is_trop_singular(m));
    }
}

TEST(TropicalRank, PublishedAndTrivial) {
    EXPECT_EQ(tropical_rank(example_a()), 2u);
    EXPECT_EQ(tropical_rank(TropicalMatrix(5, 5)), 1u);
    EXPECT_EQ(tropical_rank(TropicalMatrix(1, 1)), 1u);
    std::vector<std::size_t> expected{2, 2, 2, 3, 3, 3};
    auto rays = testdata::published_rays();
    for (std::size_t i = 0; i < rays.size(); ++i) EXPECT_EQ(tropical_rank(rays[i]), expected[i]) << i;
    auto rep = tropical_rank_report(example_a());
    EXPECT_EQ(rep.rows, (std::vector<std::size_t>{0, 1}));
    EXPECT_EQ(rep.cols, (std::vector<std::size_t>{0, 1}));
}

TEST(TropicalRank, InvariantUnderSymmetriesAndShifts) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t d = 2 + trial % 4, n = 2 + (trial / 4) % 4;
        auto m = random_matrix(rng, d, n, -2, 2);
        std::size_t r = tropical_rank(m);
        EXPECT_LE(r, std::min(d, n));
        EXPECT_EQ(tropical_rank(m.transposed()), r);
        auto shifted = m;
        for (std::size_t j = 0; j < n; ++j) shifted(d - 1, j) += Rational(7, 3);
        for (std::size_t i = 0; i < d; ++i) shifted(i, 0) -= 5;
        EXPECT_EQ(tropical_rank(shifted), r);
        std::vector<std::size_t> rows(d), cols(n);
        std::iota(rows.begin(), rows.end(), 0);
        std::iota(cols.begin(), cols.end(), 0);
        std::shuffle(rows.begin(), rows.end(), rng);
        std::shuffle(cols.begin(), cols.end(), rng);
        EXPECT_EQ(tropical_rank(m.submatrix(rows, cols)), r);
    }
}

TEST(TropicalRank, ProductsOfRankThreeFactors) {
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 40; ++trial) {
        auto a = random_matrix(rng, 5, 3, -20, 20, 2);
        auto b = random_matrix(rng, 3, 4 + trial % 5, -20, 20, 1 + trial % 2);
        EXPECT_LE(tropical_rank(tropical_product(a, b)), 3u);
    }
}

TEST(InitialForm, WorkedExample) {
    auto a = example_a();
    auto f = determinant_polynomial(3);
    auto in = initial_form(f, a.flatten());
    ASSERT_EQ(in.size(), 3u);
    // x11 x22 x33 - x11 x23 x32 + x12 x23 x31
    std::vector<std::pair<int, std::vector<unsigned>>> expected{
        {1, {1, 0, 0, 0, 1, 0, 0, 0, 1}}, {-1, {1, 0, 0, 0, 0, 1, 0, 1, 0}}, {1, {0, 1, 0, 0, 0, 1, 1, 0, 0}}};
    for (const auto& [s, e] : expected) {
        bool found = false;
        for (const auto& t : in.terms()) found |= t.sign == s && t.exponent == e;
        EXPECT_TRUE(found);
    }
    auto g = minors(2, 2, 2)[0];
    Vector w{0, 1, 1, 1};
    auto ig = initial_form(g, w);
    EXPECT_TRUE(ig.is_monomial());
    EXPECT_EQ(ig.terms()[0].exponent, (std::vector<unsigned>{1, 0, 0, 1}));
    EXPECT_EQ(initial_form(f, zero_vector(9)), f);
    EXPECT_THROW(initial_form(SignedTropPolynomial(), {}), ArgumentError);
}

TEST(InitialForm, SingularityMatchesNonMonomialInitialForm) {
    std::mt19937_64 rng(9);
    for (std::size_t k = 1; k <= 4; ++k) {
        auto f = determinant_polynomial(k);
        for (int trial = 0; trial < 50; ++trial) {
            auto m = random_matrix(rng, k, k, -2, 2);
            EXPECT_EQ(is_trop_singular(m), !initial_form(f, m.flatten()).is_monomial());
        }
    }
}
