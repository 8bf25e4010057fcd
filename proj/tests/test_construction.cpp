#include <gtest/gtest.h>

#include <fanoforge/construction.hpp>
#include <fanoforge/verify.hpp>

using namespace fanoforge;

namespace {

constexpr auto Paper = ConventionMode::PaperFormal;
constexpr auto Geom = ConventionMode::Geometric;

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

/// Brute force: every len(Z) reachable as k^2 a^2 + n k a.K with k in [1, d].
std::set<long long> reachable(const SurfaceModel& m, int n, long long d)
{
    std::set<long long> out;
    for (const auto& a : m.ample_gens())
        for (long long k = 1; k <= d; ++k) {
            Rational v = Rational(k * k) * m.pair(a, a) + Rational(n * k) * m.pair(a, m.canonical());
            if (v <= d)
                out.insert(to_int64(v));
        }
    return out;
}

} // namespace

TEST(Construction, ChooseSplittingExamples)
{
    const auto s = presets::ample_k(9);
    ExtensionData e = choose_splitting(s, 3, 10);
    EXPECT_EQ(e.L, DivisorClass{1});
    EXPECT_EQ(e.Lp, DivisorClass{-10});
    EXPECT_EQ(e.lenZ, 10);

    expect_error(ErrorKind::Infeasible, [&] { choose_splitting(s, 3, 11); });
    try {
        choose_splitting(s, 3, 11);
    } catch (const Error& err) {
        EXPECT_NE(std::string(err.what()).find("10 22"), std::string::npos) << err.what();
    }

    ExtensionData f = choose_splitting(s, 1, 4);
    EXPECT_EQ(f.L, DivisorClass{1});
    EXPECT_EQ(f.Lp, DivisorClass{-4});

    expect_error(ErrorKind::InvalidInput, [&] { choose_splitting(presets::p2(), 3, 10); });
    expect_error(ErrorKind::InvalidInput, [&] { choose_splitting(s, 0, 10); });
    expect_error(ErrorKind::InvalidInput, [&] { choose_splitting(s, 1, 0); });
}

TEST(Construction, ChooseSplittingAgreesWithBruteForce)
{
    for (long long ks2 : {1, 4, 9}) {
        const auto s = presets::ample_k(ks2);
        for (int n = 1; n <= 6; ++n) {
            const auto ok = reachable(s, n, 120);
            for (long long d = 1; d <= 120; ++d) {
                if (ok.count(d)) {
                    ExtensionData e = choose_splitting(s, n, d);
                    BundleData E = whitney_chern(s, e);
                    EXPECT_EQ(E.c1, Rational(-n) * s.canonical());
                    EXPECT_EQ(E.c2, 0);
                    EXPECT_EQ(e.lenZ, d);
                    EXPECT_TRUE(locally_free_check(s, e));
                    EXPECT_TRUE(is_positive_on_ample(s, e.L));
                } else {
                    expect_error(ErrorKind::Infeasible, [&] { choose_splitting(s, n, d); });
                }
            }
        }
    }
}

TEST(Construction, SearchBoundIsConfigurable)
{
    const auto s = presets::ample_k(9);
    // k = 2 reaches 22 for n = 3; capping the search at k = 1 makes it infeasible.
    EXPECT_EQ(choose_splitting(s, 3, 22).L, DivisorClass{2});
    expect_error(ErrorKind::Infeasible, [&] { choose_splitting(s, 3, 22, SplittingOptions{1}); });
}

TEST(Construction, BuildThreefoldExamples)
{
    const auto s = presets::ample_k(9);
    ThreefoldReport r = build_threefold(ConstructionInput{s, 3, 3, 10, std::nullopt, Paper});
    EXPECT_EQ(r.deg_paper, 216);
    EXPECT_EQ(r.deg_geom, 216);
    EXPECT_EQ(r.family_dim, 20);
    EXPECT_EQ(r.extension_space_dim, 9);
    EXPECT_TRUE(r.locally_free);
    EXPECT_EQ(r.antiK.h1, 2);
    EXPECT_EQ(r.antiK.a1, Rational(2) * s.canonical());

    ThreefoldReport r4 = build_threefold(ConstructionInput{s, 3, 4, 13, std::nullopt, Paper});
    EXPECT_EQ(r4.deg_paper, 630);
    EXPECT_EQ(r4.deg_geom, 342);

    ThreefoldReport r1 = build_threefold(ConstructionInput{s, 5, 1, 4, std::nullopt, Geom});
    EXPECT_EQ(r1.antiK, Rational(2) * ChowClass::hyperplane(1));

    expect_error(ErrorKind::InvalidInput, [&] { build_threefold(ConstructionInput{s, 2, 3, 10, std::nullopt, Paper}); });
    expect_error(ErrorKind::InvalidInput,
                 [&] { build_threefold(ConstructionInput{presets::raynaud(9, 5), 3, 3, 10, std::nullopt, Paper}); });
    expect_error(ErrorKind::Infeasible, [&] { build_threefold(ConstructionInput{s, 3, 3, 11, std::nullopt, Paper}); });
}

TEST(Construction, DegreesIncreaseWithN)
{
    for (long long ks2 : {1, 2, 9}) {
        for (int n = 2; n < 30; ++n)
            EXPECT_LT(recipe_degree(ks2, n, Paper), recipe_degree(ks2, n + 1, Paper));
        for (int n = 1; n < 30; ++n)
            EXPECT_LT(recipe_degree(ks2, n, Geom), recipe_degree(ks2, n + 1, Geom));
    }
}

TEST(Construction, NefPairingCheck)
{
    const auto s = presets::ample_k(9);
    const int n = 3;
    ChowClass anti = Rational(2) * ChowClass::hyperplane(1) + ChowClass::pullback(Rational(n - 1) * s.canonical());

    NefReport fiber_only = nef_pairing_check(s, anti);
    ASSERT_EQ(fiber_only.entries.size(), 1u);
    EXPECT_EQ(fiber_only.entries[0].value, 2);
    EXPECT_TRUE(fiber_only.verdict);
    EXPECT_TRUE(fiber_only.partial_evidence);

    // (n-1)K_S = 6A, so pi_*C = -A/6 pairs to -1.
    CurveClass bad{"negative", Rational(0), DivisorClass{Rational(-1, 6)}};
    NefReport r = nef_pairing_check(s, anti, {bad});
    EXPECT_FALSE(r.partial_evidence);
    EXPECT_FALSE(r.verdict);
    EXPECT_EQ(r.entries[1].value, -1);

    for (int nn = 2; nn <= 6; ++nn) {
        ChowClass a = Rational(2) * ChowClass::hyperplane(1) + ChowClass::pullback(Rational(nn - 1) * s.canonical());
        CurveClass c{"c", Rational(0), DivisorClass{Rational(-1, 3)}};
        EXPECT_EQ(nef_pairing_check(s, a, {c}).entries[1].value, -(nn - 1));
    }

    expect_error(ErrorKind::InvalidInput, [&] { nef_pairing_check(s, anti, {CurveClass{"x", std::nullopt, s.zero()}}); });
    expect_error(ErrorKind::InvalidInput, [&] { nef_pairing_check(s, anti, {CurveClass{"x", Rational(1), std::nullopt}}); });
}

TEST(Construction, PCoverWorkedExample)
{
    const auto s = presets::ample_k(9);
    BundleData E(s, DivisorClass{-9}, Rational(0));
    CoverReport g = p_cover(s, E, 3, DivisorClass{1}, Geom);
    EXPECT_EQ(g.base_class.h1, 2);
    EXPECT_EQ(g.base_class.a1, DivisorClass{8});
    EXPECT_EQ(g.degree, 504);
    EXPECT_TRUE(g.ample_certified);
    CoverReport p = p_cover(s, E, 3, DivisorClass{1}, Paper);
    EXPECT_EQ(p.degree, 1800);
    expect_error(ErrorKind::InvalidInput, [&] { p_cover(s, E, 3, DivisorClass{0}, Geom); });
    expect_error(ErrorKind::InvalidInput, [&] { p_cover(s, E, 4, DivisorClass{1}, Geom); });
}

TEST(Construction, PCoverIsCubicInD)
{
    // degree(tD) / p is a cubic in t; interpolating at t = 0..3 must reproduce t = 4..6.
    const auto s = presets::ample_k(4);
    BundleData E(s, Rational(-3) * s.canonical(), Rational(0));
    for (auto mode : {Paper, Geom}) {
        auto deg = [&](long long t) {
            if (t == 0) {
                // D = 0 is not ample; evaluate the base cube directly.
                return Rational(3) * anticanonical_cube(s, E, mode);
            }
            return p_cover(s, E, 3, DivisorClass{Rational(t)}, mode).degree;
        };
        std::vector<Rational> v{deg(0), deg(1), deg(2), deg(3)};
        for (long long t = 4; t <= 6; ++t) {
            Rational lagrange = 0;
            for (int i = 0; i < 4; ++i) {
                Rational term = v[i];
                for (int j = 0; j < 4; ++j)
                    if (j != i)
                        term *= Rational(t - j) / Rational(i - j);
                lagrange += term;
            }
            EXPECT_EQ(lagrange, deg(t));
        }
        // No t^3 term (D^3 = 0 on a surface); the t^2 coefficient is 6 p (p-1)^2 D^2.
        const Rational second_diff = v[2] - 2 * v[1] + v[0];
        const Rational third_diff = v[3] - 3 * v[2] + 3 * v[1] - v[0];
        EXPECT_EQ(third_diff, 0);
        EXPECT_EQ(second_diff, Rational(2) * 6 * 3 * 4 * s.pair(DivisorClass{1}, DivisorClass{1}));
    }
}

TEST(Construction, CyclicCover)
{
    auto r = cyclic_cover(504, 3);
    EXPECT_EQ(r.canonical_multiple, 1);
    EXPECT_EQ(r.degree, 1512);
    EXPECT_TRUE(r.k_nef);
    auto two = cyclic_cover(504, 2, 3);
    EXPECT_EQ(two.canonical_multiple, 0);
    EXPECT_EQ(two.degree, 0);
    EXPECT_TRUE(two.k_nef);
    expect_error(ErrorKind::InvalidInput, [] { cyclic_cover(504, 6, 3); });
    expect_error(ErrorKind::InvalidInput, [] { cyclic_cover(504, 1, 3); });
    for (long long m = 2; m <= 20; ++m) {
        if (m % 7 == 0)
            continue;
        auto c = cyclic_cover(100, m, 7);
        EXPECT_TRUE(c.k_nef);
        EXPECT_EQ(c.degree == 0, m == 2);
    }
    EXPECT_EQ(default_cyclic_degree(3), 4);
    EXPECT_EQ(default_cyclic_degree(5), 3);
}

TEST(Construction, FamilyDistinctness)
{
    EXPECT_TRUE(family_distinctness(10, 22));
    EXPECT_FALSE(family_distinctness(10, 10));
    EXPECT_TRUE(family_distinctness(1, 2));
    expect_error(ErrorKind::InvalidInput, [] { family_distinctness(0, 2); });
}

TEST(Construction, UnboundedSearch)
{
    const auto s9 = presets::ample_k(9);
    auto a = unbounded_search(s9, 1000, Paper);
    EXPECT_EQ(a.n, 5);
    EXPECT_EQ(a.degree, 1224);
    for (auto mode : {Paper, Geom}) {
        auto b = unbounded_search(s9, 1, mode);
        EXPECT_EQ(b.n, 3);
        EXPECT_EQ(b.degree, 216);
    }
    auto c = unbounded_search(presets::ample_k(1), 216, Paper);
    EXPECT_EQ(c.n, 6);
    EXPECT_EQ(c.degree, 222);

    int prev = 0;
    for (long long N = 1; N <= 20000; N += 37) {
        auto r = unbounded_search(s9, N, Geom);
        EXPECT_GE(r.n, prev);
        EXPECT_GE(r.degree, N);
        prev = r.n;
    }
    expect_error(ErrorKind::InvalidInput, [&] { unbounded_search(s9, 0, Paper); });
}

TEST(Construction, FanoBidegree)
{
    EXPECT_TRUE(fano_bidegree_check(3, 3));
    EXPECT_FALSE(fano_bidegree_check(5, 4));
    EXPECT_TRUE(fano_bidegree_check(2, 7));
    EXPECT_EQ(fano_bidegree(3, 5), std::make_pair(3LL, 5LL));
    expect_error(ErrorKind::InvalidInput, [] { fano_bidegree_check(4, 5); });
}
