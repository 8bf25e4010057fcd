#include <gtest/gtest.h>

#include <fanoforge/curves.hpp>

using namespace fanoforge;

namespace {

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

TEST(Curves, TateGenus)
{
    EXPECT_EQ(tate_genus(3), 1);
    EXPECT_EQ(tate_genus(5), 2);
    EXPECT_EQ(tate_genus(7), 3);
    expect_error(ErrorKind::InvalidInput, [] { tate_genus(2); });
    expect_error(ErrorKind::InvalidInput, [] { tate_genus(9); });
    for (long long p : {3, 5, 7, 11, 13, 101})
        EXPECT_GE(2 * tate_genus(p) - 2, 0);
}

TEST(Curves, RaynaudCanonical)
{
    auto a = raynaud_canonical(3, 2);
    EXPECT_EQ(a.dz.mult, 18);
    EXPECT_EQ(a.genus, 10);
    auto b = raynaud_canonical(3, 3);
    EXPECT_EQ(b.dz.mult, 54);
    EXPECT_EQ(b.genus, 28);
    expect_error(ErrorKind::Infeasible, [] { raynaud_canonical(3, 1); });
    expect_error(ErrorKind::InvalidInput, [] { raynaud_canonical(2, 5); });
    expect_error(ErrorKind::InvalidInput, [] { raynaud_canonical(3, 0); });
}

TEST(Curves, RiemannRochExamples)
{
    EXPECT_EQ(riemann_roch(10, 21), (CohomologyDims{12, 0}));
    EXPECT_EQ(riemann_roch(10, -3), (CohomologyDims{0, 12}));
    EXPECT_EQ(riemann_roch(10, 0), (CohomologyDims{1, 10}));
    EXPECT_EQ(riemann_roch(10, 18), (CohomologyDims{10, 1}));
    expect_error(ErrorKind::AmbiguousRange, [] { riemann_roch(10, 5); });
    expect_error(ErrorKind::InvalidInput, [] { riemann_roch(-1, 5); });
}

TEST(Curves, RiemannRochIdentityAndDuality)
{
    for (long long g = 0; g <= 50; ++g)
        for (long long deg = -200; deg <= 200; ++deg) {
            if (deg > 0 && deg < 2 * g - 2) {
                EXPECT_THROW(riemann_roch(g, deg), Error);
                continue;
            }
            const auto d = riemann_roch(g, deg);
            ASSERT_EQ(d.h0 - d.h1, deg - g + 1) << "g=" << g << " deg=" << deg;
            ASSERT_GE(d.h0, 0);
            ASSERT_GE(d.h1, 0);
            const long long dual = 2 * g - 2 - deg;
            if (dual > 0 && dual < 2 * g - 2)
                continue;
            ASSERT_EQ(d.h1, riemann_roch(g, dual).h0) << "g=" << g << " deg=" << deg;
        }
}

TEST(Curves, KernelDimLowerBound)
{
    auto a = kernel_dim_lower_bound(3, 2);
    EXPECT_EQ(a.genus, 10);
    EXPECT_EQ(a.h1, 12);
    EXPECT_TRUE(a.d_ample);
    EXPECT_TRUE(a.meets_claimed_bound);
    auto b = kernel_dim_lower_bound(5, 1);
    EXPECT_EQ(b.genus, 6);
    EXPECT_EQ(b.h1, 7);
    EXPECT_TRUE(b.meets_claimed_bound);
    expect_error(ErrorKind::Infeasible, [] { kernel_dim_lower_bound(3, 1); });
}

TEST(Curves, KernelBoundGrowsWithE)
{
    for (long long p : {3, 5, 7}) {
        long long prev = -1;
        for (long long e = 1; e <= 12; ++e) {
            if (p * e <= 3)
                continue;
            const long long pe = p * e;
            const auto k = kernel_dim_lower_bound(p, e);
            EXPECT_EQ(k.h1, pe * (pe - 3) / 2 + pe - 3);
            EXPECT_GT(k.h1, prev);
            prev = k.h1;
        }
    }
}

TEST(Curves, KernelWitnessCheck)
{
    const CurveModel c = raynaud_curve(3, 2);
    const OnePointDivisor dz{18};
    const OnePointDivisor D{3};
    EXPECT_TRUE(kernel_witness_check(c, dz, D, {{"y", -3}}));
    EXPECT_FALSE(kernel_witness_check(c, dz, D, {{"y", -4}}));
    expect_error(ErrorKind::InvalidInput, [&] { kernel_witness_check(c, dz, D, {}); });
    expect_error(ErrorKind::Inconsistent, [&] { kernel_witness_check(c, OnePointDivisor{16}, D, {{"y", 0}}); });
}
