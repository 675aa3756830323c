#include "oracles.hpp"
#include "published.hpp"
#include "tropbasis/generators.hpp"
#include "tropbasis/hyperarrange.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace tropbasis;
using tropbasis::testdata::ray_vec2;

namespace {

Vector ints(std::initializer_list<long> xs) {
    Vector v;
    for (long x : xs) v.emplace_back(x);
    return v;
}

Hyperplane hp(std::initializer_list<long> xs) { return Hyperplane{ints(xs)}; }

TypeSet ts(std::initializer_list<std::size_t> one_based) {
    TypeSet t;
    for (auto i : one_based) t.push_back(i - 1);
    return t;
}

std::vector<TropicalMatrix> published_seeds() { return testdata::published_rays(); }

}  // namespace

TEST(Types, ArgminSets) {
    EXPECT_EQ(type_of(ints({0, 0, 1, 2, 3}), hp({0, 0, 0, 0, 0})), ts({1, 2}));
    EXPECT_EQ(type_of(ints({1, 1, 1, 1, 1}), hp({0, 0, 0, 0, 0})), ts({1, 2, 3, 4, 5}));
    EXPECT_FALSE(on_hyperplane(ints({0, 1, 1}), hp({0, 0, 0})));
    EXPECT_EQ(format_type(ts({2, 4})), "{2,4}");
}

TEST(Types, HyperplaneWithPrescribedTypes) {
    // (0, e, b, a, a) with a < b evaluated at (c1, 0, 0, c4, c5).
    const Rational a = 2, b = 5, e = 7;
    Hyperplane h{{0, e, b, a, a}};
    Vector chi{make_rational(5, 2), 0, 0, make_rational(1, 10), make_rational(1, 10)};
    // Hand evaluation: 5/2, 7, 5, 21/10, 21/10.
    EXPECT_EQ(type_of(chi, h), ts({4, 5}));
}

TEST(Types, AgreeWithHypersurfaceSupport) {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> d(-3, 3);
    for (int trial = 0; trial < 40; ++trial) {
        Vector h;
        for (int i = 0; i < 3; ++i) h.emplace_back(d(rng));
        Fan f = homogenized_hypersurface_fan(linear_form(h));
        for (int s = 0; s < 25; ++s) {
            Vector w;
            for (int i = 0; i < 3; ++i) w.emplace_back(d(rng));
            Vector lifted = w;
            lifted.push_back(1);
            EXPECT_EQ(on_hyperplane(w, Hyperplane{h}), f.in_support(lifted));
        }
    }
}

TEST(Hyperplanes, EqualityModuloConstants) {
    EXPECT_EQ(hp({0, 1, 2}), hp({3, 4, 5}));
    EXPECT_FALSE(hp({0, 1, 2}) == hp({0, 1, 3}));
}

TEST(Hyperplanes, SinglePoint) {
    auto h = hyperplane_through_points({ints({3, -1, 4, 1})});
    ASSERT_TRUE(h);
    EXPECT_TRUE(on_hyperplane(ints({3, -1, 4, 1}), *h));
}

TEST(Hyperplanes, DominantDiagonalHasNone) {
    auto m = TropicalMatrix::from_ints({{0, 9, 9, 9}, {9, 0, 9, 9}, {9, 9, 0, 9}, {9, 9, 9, 0}});
    EXPECT_FALSE(hyperplane_through_points(m.columns()));
}

TEST(Hyperplanes, AgreeWithExhaustiveSearchAndSingularity) {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<long> d(-3, 3);
    int found = 0;
    for (int trial = 0; trial < 40; ++trial) {
        TropicalMatrix m(4, 4);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j) m(i, j) = d(rng);
        auto cols = m.columns();
        auto h = hyperplane_through_points(cols);
        EXPECT_EQ(h.has_value(), oracle::hyperplane_exists_exhaustive(cols));
        EXPECT_EQ(h.has_value(), is_trop_singular(m));
        if (h) {
            ++found;
            for (const auto& c : cols) EXPECT_TRUE(on_hyperplane(c, *h));
        }
    }
    EXPECT_GT(found, 0);
    EXPECT_LT(found, 40);
}

TEST(Hyperplanes, ArgumentChecks) {
    EXPECT_THROW(hyperplane_through_points({}), ArgumentError);
    EXPECT_THROW(hyperplane_through_points({ints({1, 2, 3, 4, 5, 6})}), ArgumentError);
    EXPECT_THROW(hyperplane_through_points({ints({1, 2}), ints({1, 2, 3})}), ArgumentError);
}

TEST(CoordinateHyperplane, ZeroMatrix) {
    TropicalMatrix zero(5, 2);
    Hyperplane h = coordinate_hyperplane(2, zero);
    EXPECT_EQ(h.coeffs, ints({0, 0, 1, 0, 0}));
    for (const auto& c : zero.columns()) EXPECT_EQ(type_of(c, h), ts({1, 2, 4, 5}));
}

TEST(CoordinateHyperplane, ContractOnPublishedAndRandom) {
    auto check = [](const TropicalMatrix& w) {
        for (std::size_t i = 0; i < 5; ++i) {
            Hyperplane h = coordinate_hyperplane(i, w);
            for (const auto& c : w.columns()) {
                auto t = type_of(c, h);
                EXPECT_GE(t.size(), 2u);
                EXPECT_EQ(std::count(t.begin(), t.end(), i), 0);
            }
        }
    };
    check(ray_vec2());
    std::mt19937_64 rng(3);
    for (int k = 0; k < 5; ++k) check(random_tropical_product(rng, 5, 3, 6));
}

TEST(CoordinateHyperplane, FullRankDeletionIsRejected) {
    auto m = TropicalMatrix::from_ints(
        {{0, 9, 9, 9}, {9, 0, 9, 9}, {9, 9, 0, 9}, {9, 9, 9, 0}, {0, 0, 0, 0}});
    EXPECT_THROW(coordinate_hyperplane(4, m), PreconditionError);
}

TEST(StableMembership, SmallCases) {
    auto zero = hp({0, 0, 0, 0, 0});
    EXPECT_TRUE(stable_membership(ints({0, 0, 0, 1, 1}), zero, zero));
    EXPECT_FALSE(stable_membership(ints({0, 0, 1, 1, 1}), zero, zero));
    EXPECT_THROW(stable_membership(ints({0, 1, 1, 1, 1}), zero, zero), PreconditionError);
}

TEST(StableMembership, AgreesWithPerturbationOracle) {
    std::mt19937_64 rng(2024);
    int unstable = 0;
    for (int k = 0; k < 60; ++k) {
        auto inst = oracle::random_stable_instance(rng);
        bool fast = stable_membership(inst.w, inst.h, inst.h2);
        EXPECT_EQ(fast, oracle::perturbation_oracle(inst.w, inst.h, inst.h2, rng).stable);
        unstable += !fast;
    }
    EXPECT_GT(unstable, 5);
}

TEST(Witnesses, ListsExactlyTheUnstablePoints) {
    auto zero = hp({0, 0, 0, 0, 0});
    auto list = witnesses({ints({0, 0, 1, 1, 1})}, zero, zero);
    ASSERT_EQ(list.size(), 1u);
    EXPECT_EQ(list[0].point, 0u);
    EXPECT_EQ(list[0].type, ts({1, 2}));
    EXPECT_TRUE(witnesses({ints({0, 0, 0, 1, 1})}, zero, zero).empty());

    std::mt19937_64 rng(8);
    for (int k = 0; k < 20; ++k) {
        auto inst = oracle::random_stable_instance(rng);
        std::vector<Vector> pts{inst.w};
        auto got = witnesses(pts, inst.h, inst.h2);
        EXPECT_EQ(got.empty(), stable_membership(inst.w, inst.h, inst.h2));
    }
}

TEST(StableIntersection, ZeroLineMeetsItselfInTheVertex) {
    auto zero = hp({0, 0, 0});
    auto s = stable_intersection_set(zero, zero);
    EXPECT_TRUE(s.contains(ints({0, 0, 0})));
    EXPECT_TRUE(s.contains(ints({4, 4, 4})));
    EXPECT_FALSE(s.contains(ints({0, 0, 1})));
    EXPECT_FALSE(s.contains(ints({1, 0, 0})));
}

TEST(StableIntersection, GenericPairMatchesSetIntersection) {
    auto h = hp({0, 3, 7}), h2 = hp({0, -2, 5});
    auto s = stable_intersection_set(h, h2);
    for (long a = -12; a <= 12; ++a)
        for (long b = -12; b <= 12; ++b) {
            Vector w = ints({0, a, b});
            EXPECT_EQ(s.contains(w), on_hyperplane(w, h) && on_hyperplane(w, h2)) << a << "," << b;
        }
}

TEST(Certify, PublishedRay) {
    auto a = ray_vec2();
    Certificate cert = kapranov3_certify(a);
    EXPECT_TRUE(cert.verify(a).empty());
    auto [i, j] = cert.stable_pair;
    for (const auto& c : a.columns()) EXPECT_TRUE(stable_membership(c, cert.hyperplanes[i], cert.hyperplanes[j]));
    auto s = stable_intersection_set(cert.hyperplanes[i], cert.hyperplanes[j]);
    for (const auto& c : a.columns()) EXPECT_TRUE(s.contains(c));
}

TEST(Certify, RejectsFullRank) {
    auto m = TropicalMatrix::from_ints(
        {{0, 9, 9, 9, 9}, {9, 0, 9, 9, 9}, {9, 9, 0, 9, 9}, {9, 9, 9, 0, 9}, {9, 9, 9, 9, 9}});
    EXPECT_THROW(kapranov3_certify(m), PreconditionError);
    EXPECT_THROW(kapranov3_certify(TropicalMatrix(4, 4)), ArgumentError);
}

TEST(Certify, DegenerateInputs) {
    EXPECT_TRUE(kapranov3_certify(TropicalMatrix(5, 4)).verify(TropicalMatrix(5, 4)).empty());
    auto rep = TropicalMatrix::from_columns({ints({1, 2, 3, 4, 5}), ints({1, 2, 3, 4, 5}), ints({0, 0, 0, 0, 0}),
                                             ints({1, 2, 3, 4, 5})});
    EXPECT_TRUE(kapranov3_certify(rep).verify(rep).empty());
}

TEST(Certify, TamperedCertificateFails) {
    auto a = ray_vec2();
    Certificate cert = kapranov3_certify(a);
    cert.hyperplanes[0].coeffs[0] -= 100;
    EXPECT_FALSE(cert.verify(a).empty());
}

TEST(Certify, RandomRankThreeAndWitnessDisjointness) {
    Rank3Generator gen(99, published_seeds());
    std::uniform_int_distribution<std::size_t> cols(4, 8);
    for (int k = 0; k < 40; ++k) {
        auto a = gen.next(cols(gen.engine()));
        Certificate cert = kapranov3_certify(a);
        EXPECT_TRUE(cert.verify(a).empty());
        for (const auto& scan : scan_pairs(cert.hyperplanes, a.columns()))
            for (const auto& w : scan.witnesses) {
                ASSERT_EQ(w.type.size(), 2u);
                for (auto t : w.type) {
                    EXPECT_NE(t, scan.pair.first);
                    EXPECT_NE(t, scan.pair.second);
                }
            }
    }
}

TEST(Hull, Vec2ColumnsGiveSevenNineThree) {
    auto c = tropical_polytope_complex(ray_vec2());
    EXPECT_EQ(c.f_vector, (std::vector<std::size_t>{7, 9, 3}));
    EXPECT_EQ(c.fine_f_vector, (std::vector<std::size_t>{7, 12, 6}));
}

TEST(Hull, SmallConfigurations) {
    EXPECT_EQ(tropical_polytope_complex(TropicalMatrix::from_columns({ints({0, 1, 5})})).f_vector,
              (std::vector<std::size_t>{1}));
    auto seg = tropical_polytope_complex(TropicalMatrix::from_columns({ints({0, 0, 0}), ints({0, 1, 3})}));
    EXPECT_EQ(seg.f_vector, (std::vector<std::size_t>{3, 2}));
    auto same = tropical_polytope_complex(TropicalMatrix::from_columns({ints({0, 0, 0}), ints({2, 2, 2})}));
    EXPECT_EQ(same.f_vector, (std::vector<std::size_t>{1}));
}

TEST(Hull, VerticesIncludeGenerators) {
    auto v = ray_vec2();
    auto c = tropical_polytope_complex(v);
    for (const auto& col : v.columns()) {
        Vector normalized = col;
        for (auto& x : normalized) x -= col[0];
        bool hit = false;
        for (const auto& cell : c.cells)
            if (cell.dim == 0 && cell.point == normalized) hit = true;
        EXPECT_TRUE(hit);
    }
}
