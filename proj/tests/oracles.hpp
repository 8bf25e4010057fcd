#pragma once

// Independent reference computations used only by the tests. None of these touch the
// engine's Chow-ring code.

#include <array>
#include <map>
#include <utility>

namespace oracle {

/// Polynomials in two degree-1 generators u, v, stored as exponent pair -> coefficient.
using Poly2 = std::map<std::pair<int, int>, long long>;

inline Poly2 mul(const Poly2& a, const Poly2& b)
{
    Poly2 out;
    for (const auto& [ea, ca] : a)
        for (const auto& [eb, cb] : b)
            out[{ea.first + eb.first, ea.second + eb.second}] += ca * cb;
    return out;
}

/// Degree of a cubic in u, v given the four top intersection numbers u^3, u^2 v, u v^2, v^3.
inline long long integrate_cubic(const Poly2& p, const std::array<long long, 4>& top)
{
    long long sum = 0;
    for (const auto& [e, c] : p)
        if (e.first + e.second == 3)
            sum += c * top[static_cast<std::size_t>(e.second)];
    return sum;
}

/// (-K)^3 of P^2 x P^1 with h the hyperplane and f the point class of P^1:
/// -K = 3h + 2f; h^3 = 0, h^2 f = 1, h f^2 = f^3 = 0.
inline long long p2_times_p1_anticanonical_cube()
{
    Poly2 k{{{1, 0}, 3}, {{0, 1}, 2}};
    return integrate_cubic(mul(mul(k, k), k), {0, 1, 0, 0});
}

/// (-K)^3 of P^3 blown up at a point: -K = 4H - 2E with H^3 = 1, E^3 = 1, H.E = 0.
inline long long blowup_p3_anticanonical_cube()
{
    Poly2 k{{{1, 0}, 4}, {{0, 1}, -2}};
    return integrate_cubic(mul(mul(k, k), k), {1, 0, 0, 1});
}

} // namespace oracle
