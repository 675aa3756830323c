#include "tropbasis/linalg.hpp"
#include "tropbasis/lp.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace tropbasis;

namespace {

Vector vec(std::initializer_list<long> xs) {
    Vector v;
    for (long x : xs) v.emplace_back(x);
    return v;
}

}  // namespace

TEST(Rational, ParsesFractionsAndIntegers) {
    EXPECT_EQ(*parse_rational("3/6"), Rational(1, 2));
    EXPECT_EQ(*parse_rational("-7"), Rational(-7));
    EXPECT_FALSE(parse_rational("1/0"));
    EXPECT_FALSE(parse_rational("abc"));
    EXPECT_FALSE(parse_rational(""));
}

TEST(Rational, PrimitiveScalesToCoprimeIntegers) {
    Vector v{Rational(1, 2), Rational(-3, 4), Rational(0)};
    EXPECT_EQ(primitive(v), vec({2, -3, 0}));
}

TEST(Linalg, RankAndNullspace) {
    std::vector<Vector> m{vec({1, 2, 3}), vec({2, 4, 6}), vec({0, 1, 1})};
    EXPECT_EQ(rank(m, 3), 2u);
    auto ns = nullspace(m, 3);
    ASSERT_EQ(ns.size(), 1u);
    for (const auto& r : m) EXPECT_EQ(dot(r, ns[0]), 0);
}

TEST(Linalg, InverseRoundTrip) {
    std::vector<Vector> m{vec({2, 1}), vec({1, 1})};
    auto inv = inverse(m);
    ASSERT_EQ(inv.size(), 2u);
    EXPECT_EQ(inv[0], vec({1, -1}));
    EXPECT_TRUE(inverse({vec({1, 2}), vec({2, 4})}).empty());
}

TEST(LpFeasible, OneDimensionalStrictness) {
    for (auto backend : {LpBackend::fourier_motzkin, LpBackend::simplex}) {
        HalfOpenCone a(1);
        a.weak_ineqs = {vec({1})};
        a.strict_ineqs = {vec({1})};
        EXPECT_TRUE(lp_feasible(a, backend));
        HalfOpenCone b(1);
        b.weak_ineqs = {vec({1})};
        b.strict_ineqs = {vec({-1})};
        EXPECT_FALSE(lp_feasible(b, backend));
    }
}

TEST(LpFeasible, BackendsAgreeOnRandomSystems) {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> coef(-3, 3);
    for (int trial = 0; trial < 300; ++trial) {
        std::size_t n = 2 + trial % 4;
        HalfOpenCone c(n);
        auto row = [&] {
            Vector v(n);
            for (auto& x : v) x = coef(rng);
            return v;
        };
        if (trial % 3 == 0) c.equalities.push_back(row());
        for (int i = 0; i < 4; ++i) c.weak_ineqs.push_back(row());
        for (int i = 0; i < 2; ++i) c.strict_ineqs.push_back(row());
        bool fm = lp_feasible(c, LpBackend::fourier_motzkin);
        bool sx = lp_feasible(c, LpBackend::simplex);
        EXPECT_EQ(fm, sx) << "trial " << trial;
        auto ip = relative_interior(c);
        EXPECT_EQ(ip.has_value(), sx);
        if (ip && c.strict_ineqs.empty()) {
            EXPECT_TRUE(c.contains(ip->point));
        }
    }
}

TEST(RelativeInterior, DetectsImplicitEqualities) {
    HalfOpenCone c(2);
    c.weak_ineqs = {vec({1, -1}), vec({-1, 1}), vec({1, 0})};
    auto ip = relative_interior(c);
    ASSERT_TRUE(ip);
    EXPECT_TRUE(ip->implicit_equality[0]);
    EXPECT_TRUE(ip->implicit_equality[1]);
    EXPECT_FALSE(ip->implicit_equality[2]);
    EXPECT_EQ(ip->point[0], ip->point[1]);
    EXPECT_GT(ip->point[0], 0);
}

TEST(SolveLp, BoundedOptimum) {
    LinearProgram lp;
    lp.num_vars = 2;
    lp.nonnegative = {true, true};
    lp.constraints = {{vec({1, 1}), Relation::le, 4}, {vec({1, 3}), Relation::le, 6}};
    lp.objective = vec({3, 2});
    auto s = solve_lp(lp);
    ASSERT_EQ(s.status, LpStatus::optimal);
    EXPECT_EQ(s.value, 12);
}

TEST(SolveLp, UnboundedAndInfeasible) {
    LinearProgram lp;
    lp.num_vars = 1;
    lp.nonnegative = {false};
    lp.objective = vec({1});
    EXPECT_EQ(solve_lp(lp).status, LpStatus::unbounded);
    lp.constraints = {{vec({1}), Relation::ge, 2}, {vec({1}), Relation::le, 1}};
    EXPECT_EQ(solve_lp(lp).status, LpStatus::infeasible);
}
