#include <random>

#include <gtest/gtest.h>

#include <fanoforge/bundles.hpp>
#include <fanoforge/verify.hpp>

using namespace fanoforge;

namespace {

SurfaceModel k3a() { return presets::ample_k(9); } // gram [1], K = 3A

template <class F>
void expect_error(ErrorKind kind, F&& f)
{
    try {
        f();
        FAIL() << "expected " << to_string(kind);
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), kind) << e.what();
    }
}

} // namespace

TEST(Bundles, WhitneyExamples)
{
    const auto s = k3a();
    BundleData E = whitney_chern(s, ExtensionData(DivisorClass{1}, DivisorClass{-10}, 10));
    EXPECT_EQ(E.c1, DivisorClass{-9});
    EXPECT_EQ(E.c1, Rational(-3) * s.canonical());
    EXPECT_EQ(E.c2, 0);

    BundleData T = whitney_chern(s, ExtensionData(s.zero(), s.zero(), 0));
    EXPECT_TRUE(T.c1.is_zero());
    EXPECT_EQ(T.c2, 0);

    BundleData Z = whitney_chern(s, ExtensionData(s.zero(), s.zero(), 7));
    EXPECT_TRUE(Z.c1.is_zero());
    EXPECT_EQ(Z.c2, 7);
}

TEST(Bundles, WhitneyIsSymmetric)
{
    RandomBundleSource src(9);
    for (int i = 0; i < 200; ++i) {
        auto m = src.model();
        auto L = src.divisor(m), Lp = src.divisor(m);
        const long long len = src.uniform(0, 30);
        BundleData a = whitney_chern(m, ExtensionData(L, Lp, len));
        BundleData b = whitney_chern(m, ExtensionData(Lp, L, len));
        EXPECT_EQ(a.c1, b.c1);
        EXPECT_EQ(a.c2, b.c2);
    }
}

TEST(Bundles, RecipeGivesVanishingC2)
{
    // L' = -L - nK, len(Z) = -L.L' on rank 1 and rank 2 models with ample K.
    RandomBundleSource src(10);
    std::vector<SurfaceModel> models;
    for (long long k : {1, 2, 4, 9, 12})
        models.push_back(presets::ample_k(k));
    SurfaceData d;
    d.gram = {{2, 1}, {1, -2}};
    d.canonical = DivisorClass{2, 1}; // K.e1 = 5, K.K = 8 - 2 + ... positive
    d.ample_gens = {DivisorClass{1, 0}, DivisorClass{2, 1}};
    models.push_back(SurfaceModel::create(d));
    for (const auto& m : models) {
        ASSERT_TRUE(is_positive_on_ample(m, m.canonical()));
        for (const auto& a : m.ample_gens())
            for (long long k = 1; k <= 6; ++k)
                for (int n = 1; n <= 8; ++n) {
                    DivisorClass L = Rational(k) * a;
                    DivisorClass Lp = -L - Rational(n) * m.canonical();
                    const Rational len = -m.pair(L, Lp);
                    ASSERT_TRUE(is_integer(len));
                    EXPECT_EQ(len, m.pair(L, L) + n * m.pair(L, m.canonical()));
                    EXPECT_GT(len, 0);
                    ExtensionData ext(L, Lp, to_int64(len));
                    BundleData E = whitney_chern(m, ext);
                    EXPECT_EQ(E.c1, Rational(-n) * m.canonical());
                    EXPECT_EQ(E.c2, 0);
                    EXPECT_TRUE(locally_free_check(m, ext));
                }
    }
}

TEST(Bundles, SectionZeroLocusLength)
{
    const auto s = k3a();
    EXPECT_EQ(section_zero_locus_length(s, BundleData(s, s.zero(), Rational(0))), 0);
    BundleData E = whitney_chern(s, ExtensionData(s.zero(), DivisorClass{2}, 7));
    EXPECT_EQ(section_zero_locus_length(s, E), 7);
    expect_error(ErrorKind::Infeasible, [&] { section_zero_locus_length(s, BundleData(s, s.zero(), Rational(-3))); });
}

TEST(Bundles, ExtSpaceDim)
{
    const auto s = k3a();
    EXPECT_EQ(ext_space_dim(ExtensionData(s.zero(), s.zero(), 1)), 0);
    EXPECT_EQ(ext_space_dim(ExtensionData(s.zero(), s.zero(), 10)), 9);
    expect_error(ErrorKind::Infeasible, [&] { ext_space_dim(ExtensionData(s.zero(), s.zero(), 0)); });
    expect_error(ErrorKind::InvalidInput, [&] { ExtensionData(s.zero(), s.zero(), -1); });
}

TEST(Bundles, LocallyFreeCheck)
{
    const auto s = k3a();
    EXPECT_TRUE(locally_free_check(s, ExtensionData(DivisorClass{1}, DivisorClass{-10}, 10)));
    const auto p2 = presets::p2();
    EXPECT_TRUE(locally_free_check(p2, ExtensionData(DivisorClass{2}, DivisorClass{2}, 0)));
    // L - L' = -5A: K - (L - L') = 8A is positive, so the test is inconclusive.
    EXPECT_FALSE(locally_free_check(s, ExtensionData(DivisorClass{-5}, DivisorClass{0}, 0)));
}
