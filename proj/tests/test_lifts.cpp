#include "published.hpp"
#include "tropbasis/generators.hpp"
#include "tropbasis/lifts.hpp"

#include <gtest/gtest.h>

#include <random>
#include <sstream>

using namespace tropbasis;

namespace {

RatFunc mono(long c, long num, long den = 1) { return RatFunc::monomial(c, make_rational(num, den)); }

RatFunc random_element(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> c(-9, 9), e(-4, 6), terms(1, 3), den(1, 3);
    auto poly = [&] {
        LaurentPoly p;
        while (p.is_zero())
            for (long k = terms(rng); k > 0; --k) p = p + LaurentPoly::monomial(c(rng), make_rational(e(rng), den(rng)));
        return p;
    };
    return RatFunc(poly(), poly());
}

// Rank over Q after substituting t = s^m at 20 rational points, majority vote.
std::size_t substitution_rank(const LiftMatrix& a, std::mt19937_64& rng) {
    const long m = a.scale();
    std::uniform_int_distribution<long> num(2, 40), den(1, 7);
    std::map<std::size_t, int> votes;
    int done = 0;
    while (done < 20) {
        Rational s = make_rational(num(rng), den(rng));
        std::vector<Vector> rows(a.rows(), Vector(a.cols()));
        bool ok = true;
        for (std::size_t i = 0; i < a.rows() && ok; ++i)
            for (std::size_t j = 0; j < a.cols() && ok; ++j) {
                auto v = a(i, j).evaluate_at_root(s, m);
                if (!v) ok = false;
                else rows[i][j] = *v;
            }
        if (!ok) continue;
        ++votes[rank(rows, a.cols())];
        ++done;
    }
    std::size_t best = 0;
    int count = -1;
    for (auto [r, c] : votes)
        if (c > count) best = r, count = c;
    return best;
}

RatFunc random_polynomial(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> c(-9, 9), e(0, 3), terms(1, 2);
    LaurentPoly p;
    while (p.is_zero())
        for (long k = terms(rng); k > 0; --k) p = p + LaurentPoly::monomial(c(rng), e(rng));
    return RatFunc(p);
}

LiftMatrix example_lift() {
    LiftMatrix m(3, 3);
    RatFunc one = mono(1, 0);
    m(0, 0) = one;
    m(0, 1) = mono(1, 1);
    m(0, 2) = mono(1, 2);
    m(1, 0) = mono(2, 1);
    m(1, 1) = mono(3, 1);
    m(1, 2) = mono(5, 1);
    m(2, 0) = one + mono(2, 1);
    m(2, 1) = mono(4, 1);
    m(2, 2) = mono(5, 1) + mono(1, 2);
    return m;
}

}  // namespace

TEST(Valuation, Basics) {
    EXPECT_EQ(val(mono(1, 1) + mono(3, 2)), 1);
    EXPECT_EQ(val(RatFunc(LaurentPoly::constant(1) + LaurentPoly::monomial(2, 1), LaurentPoly::monomial(1, 3))), -3);
    EXPECT_EQ(val(mono(7, 2, 3)), make_rational(2, 3));
    EXPECT_THROW(val(RatFunc()), ArgumentError);
}

TEST(Valuation, IsAValuation) {
    std::mt19937_64 rng(17);
    for (int k = 0; k < 1000; ++k) {
        RatFunc f = random_element(rng), g = random_element(rng);
        EXPECT_EQ(val(f * g), val(f) + val(g));
        RatFunc s = f + g;
        if (s.is_zero()) continue;
        Rational lo = std::min(val(f), val(g));
        EXPECT_GE(val(s), lo);
        if (val(f) != val(g)) {
            EXPECT_EQ(val(s), lo);
        }
    }
}

TEST(Valuation, RepresentationIndependent) {
    std::mt19937_64 rng(4);
    for (int k = 0; k < 200; ++k) {
        RatFunc f = random_element(rng), h = random_element(rng);
        RatFunc rewritten(f.numerator() * h.numerator() * h.denominator(),
                          f.denominator() * h.numerator() * h.denominator());
        EXPECT_EQ(rewritten, f);
        EXPECT_EQ(val(rewritten), val(f));
    }
}

TEST(FieldArithmetic, ReducedForm) {
    // (t^2 - 1) / (t - 1) = t + 1
    RatFunc f(LaurentPoly::monomial(1, 2) - LaurentPoly::constant(1),
              LaurentPoly::monomial(1, 1) - LaurentPoly::constant(1));
    EXPECT_EQ(f, mono(1, 1) + mono(1, 0));
    EXPECT_EQ((f / f), mono(1, 0));
    EXPECT_TRUE((f - f).is_zero());
    EXPECT_EQ(mono(1, 1, 2) * mono(1, 1, 2), mono(1, 1));
}

TEST(RankOverK, WorkedExample) {
    auto lift = example_lift();
    EXPECT_EQ(rank_over_K(lift), 2u);
    EXPECT_TRUE(verify_lift(lift, testdata::example_a(), 2));
    EXPECT_FALSE(verify_lift(lift, testdata::example_a(), 1));
}

TEST(RankOverK, IdentityAndZeroTarget) {
    LiftMatrix id(3, 3);
    for (std::size_t i = 0; i < 3; ++i) id(i, i) = mono(1, 0);
    EXPECT_EQ(rank_over_K(id), 3u);
    EXPECT_FALSE(verify_lift(id, TropicalMatrix(3, 3), 1));
}

TEST(RankOverK, AgreesWithSubstitution) {
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<std::size_t> inner(1, 4), cols(2, 8);
    for (int k = 0; k < 25; ++k) {
        std::size_t r = inner(rng), n = cols(rng);
        LiftMatrix a(5, r), b(r, n), p(5, n);
        for (std::size_t i = 0; i < 5; ++i)
            for (std::size_t j = 0; j < r; ++j) a(i, j) = random_polynomial(rng);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < n; ++j) b(i, j) = random_polynomial(rng);
        for (std::size_t i = 0; i < 5; ++i)
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t l = 0; l < r; ++l) p(i, j) = p(i, j) + a(i, l) * b(l, j);
        std::size_t rk = rank_over_K(p);
        EXPECT_LE(rk, r);
        EXPECT_EQ(rk, substitution_rank(p, rng));
    }
}

TEST(RankOverK, RationalEntriesAgreeWithSubstitution) {
    std::mt19937_64 rng(29);
    std::uniform_int_distribution<std::size_t> inner(1, 2);
    for (int k = 0; k < 6; ++k) {
        std::size_t r = inner(rng);
        LiftMatrix a(3, r), b(r, 4), p(3, 4);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < r; ++j) a(i, j) = random_element(rng);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < 4; ++j) b(i, j) = random_element(rng);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 4; ++j)
                for (std::size_t l = 0; l < r; ++l) p(i, j) = p(i, j) + a(i, l) * b(l, j);
        EXPECT_EQ(rank_over_K(p), substitution_rank(p, rng));
    }
}

TEST(LiftHyperplane, ZeroHyperplane) {
    auto l = lift_hyperplane(Hyperplane{{0, 0, 0}}, 1);
    for (const auto& c : l) EXPECT_EQ(val(c), 0);
    auto l2 = lift_hyperplane(Hyperplane{{0, 0, 0}}, 2);
    EXPECT_FALSE(l == l2);
}

TEST(LiftHyperplane, InitialFormsDetectMembership) {
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<long> e(-6, 6);
    for (int k = 0; k < 10; ++k) {
        Hyperplane h;
        for (int i = 0; i < 4; ++i) h.coeffs.push_back(make_rational(e(rng), 2));
        auto l = lift_hyperplane(h, k);
        for (int s = 0; s < 100; ++s) {
            Vector w;
            for (int i = 0; i < 4; ++i) w.emplace_back(e(rng));
            Rational lo = val(l[0]) + w[0];
            int terms = 0;
            for (int i = 0; i < 4; ++i) lo = std::min<Rational>(lo, val(l[i]) + w[i]);
            for (int i = 0; i < 4; ++i) terms += (val(l[i]) + w[i] == lo);
            // A linear initial form has a root with nonzero coordinates iff it has two terms.
            EXPECT_EQ(terms >= 2, on_hyperplane(w, h));
        }
    }
}

TEST(LiftPoint, ConstantForms) {
    LinearFormK l, l2;
    for (long i = 1; i <= 5; ++i) {
        l.push_back(mono(1, 0));
        l2.push_back(mono(i, 0));
    }
    Vector w(5, Rational(0));
    auto x = lift_point_in_codim2(w, l, l2, 7);
    ASSERT_TRUE(x);
    EXPECT_TRUE(evaluate_form(l, *x).is_zero());
    EXPECT_TRUE(evaluate_form(l2, *x).is_zero());
    for (const auto& xi : *x) EXPECT_EQ(val(xi), 0);
}

TEST(LiftPoint, CertifiedInstancesAlwaysSucceed) {
    Rank3Generator gen(5, testdata::published_rays());
    int lifted = 0;
    for (int k = 0; lifted < 200; ++k) {
        auto a = gen.next(4);
        auto cert = kapranov3_certify(a);
        auto [i, j] = cert.stable_pair;
        auto l = lift_hyperplane(cert.hyperplanes[i], k), l2 = lift_hyperplane(cert.hyperplanes[j], k + 1000);
        for (const auto& w : a.columns()) {
            auto x = lift_point_in_codim2(w, l, l2, k);
            ASSERT_TRUE(x);
            for (std::size_t r = 0; r < 5; ++r) EXPECT_EQ(val((*x)[r]), w[r]);
            ++lifted;
        }
    }
}

TEST(BuildLift, PublishedRay) {
    auto a = testdata::ray_vec2();
    auto lift = build_rank3_lift(a, kapranov3_certify(a), 42);
    EXPECT_EQ(rank_over_K(lift.matrix), 3u);
    EXPECT_TRUE(verify_lift(lift.matrix, a, 3));
}

TEST(BuildLift, ZeroMatrix) {
    TropicalMatrix zero(5, 5);
    auto lift = build_rank3_lift(zero, kapranov3_certify(zero), 1);
    EXPECT_TRUE(verify_lift(lift.matrix, zero, 3));
}

TEST(BuildLift, RandomRankThree) {
    Rank3Generator gen(77, testdata::published_rays());
    std::uniform_int_distribution<std::size_t> cols(4, 8);
    for (int k = 0; k < 20; ++k) {
        auto a = gen.next(cols(gen.engine()));
        auto lift = build_rank3_lift(a, kapranov3_certify(a), k);
        EXPECT_TRUE(verify_lift(lift.matrix, a, 3));
        EXPECT_LE(tropical_rank(a), 3u);
    }
}

TEST(BuildLift, RejectsForeignCertificate) {
    auto a = testdata::ray_vec2();
    auto cert = kapranov3_certify(a);
    TropicalMatrix other = a;
    other(0, 0) += 50;
    EXPECT_THROW(build_rank3_lift(other, cert, 1), PreconditionError);
}

TEST(LaurentText, RoundTrip) {
    std::mt19937_64 rng(9);
    for (int k = 0; k < 100; ++k) {
        RatFunc f = random_element(rng);
        EXPECT_EQ(parse_ratfunc(format_ratfunc(f)), f);
    }
    EXPECT_EQ(format_ratfunc(mono(3, -1, 2)), "3*t^-1/2 / 1");
    EXPECT_EQ(parse_ratfunc("1 2*t^1"), mono(1, 0) + mono(2, 1));
    EXPECT_THROW(parse_ratfunc("1 / 0"), ParseError);
    EXPECT_THROW(parse_ratfunc("x*t^2"), ParseError);
    EXPECT_THROW(parse_ratfunc("1*t^q"), ParseError);

    auto lift = example_lift();
    std::stringstream s;
    write_lift(s, lift);
    LiftMatrix back = read_lift(s);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(back(i, j), lift(i, j));
}
