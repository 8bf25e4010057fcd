#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>

#include "error.hpp"
#include "lattice.hpp"

namespace fanoforge {

/// r * (inf) on a one-pointed curve.
struct OnePointDivisor {
    long long mult = 0;

    long long degree() const { return mult; }
    friend bool operator==(const OnePointDivisor&, const OnePointDivisor&) = default;
};

struct CurveModel {
    long long genus = 0;
    std::string place_name = "inf";
    int char_p = 0;
    /// (p, e) for the plane curves P(y^p) - y = z^{pe-1}.
    std::optional<std::pair<int, int>> raynaud_params;

    long long canonical_degree() const { return 2 * genus - 2; }
};

/// y^2 = x^p - a has genus (p-1)/2.
inline long long tate_genus(long long p)
{
    if (p == 2)
        fail(ErrorKind::InvalidInput, "the genus formula needs an odd prime");
    if (!detail::is_prime(p))
        fail(ErrorKind::InvalidInput, std::to_string(p) + " is not prime");
    return (p - 1) / 2;
}

struct RaynaudCanonical {
    OnePointDivisor dz;
    long long genus = 0;
};

/// (dz) = pe(pe-3)(inf), hence 2g - 2 = pe(pe-3).
inline RaynaudCanonical raynaud_canonical(long long p, long long e)
{
    if (p < 3 || !detail::is_prime(p))
        fail(ErrorKind::InvalidInput, "p must be a prime >= 3");
    if (e < 1)
        fail(ErrorKind::InvalidInput, "e must be >= 1");
    const long long pe = p * e;
    if (pe <= 3)
        fail(ErrorKind::Infeasible, "pe = " + std::to_string(pe) + " gives a canonical divisor of degree <= 0");
    const long long deg = pe * (pe - 3);
    return {OnePointDivisor{deg}, deg / 2 + 1};
}

inline CurveModel raynaud_curve(int p, int e)
{
    const auto rc = raynaud_canonical(p, e);
    return CurveModel{rc.genus, "inf", p, std::make_pair(p, e)};
}

struct CohomologyDims {
    long long h0 = 0;
    long long h1 = 0;
    friend bool operator==(const CohomologyDims&, const CohomologyDims&) = default;
};

/// (h0, h1) of a degree-deg divisor where degree alone determines them. Degree 2g - 2 is
/// taken to be canonical. Throws AmbiguousRange for 0 < deg < 2g - 2.
inline CohomologyDims riemann_roch(long long g, long long deg)
{
    if (g < 0)
        fail(ErrorKind::InvalidInput, "genus must be >= 0");
    if (deg < 0)
        return {0, g - 1 - deg};
    if (deg == 0)
        return {1, g};
    if (deg > 2 * g - 2)
        return {deg - g + 1, 0};
    if (deg == 2 * g - 2)
        return {g, 1};
    fail(ErrorKind::AmbiguousRange, "h0 of a degree " + std::to_string(deg) + " divisor on a genus " + std::to_string(g)
                                        + " curve is not determined by the degree");
}

struct KernelBound {
    long long genus = 0;
    /// h1(C, (3 - pe)(inf)), the ambient space containing Ker F^*.
    long long h1 = 0;
    bool d_ample = false;
    bool meets_claimed_bound = false;
};

/// D = (pe-3)(inf); compares h1(C, -D) against the claimed lower bound 2.
inline KernelBound kernel_dim_lower_bound(long long p, long long e)
{
    const auto rc = raynaud_canonical(p, e);
    const long long dmult = p * e - 3;
    const auto dims = riemann_roch(rc.genus, -dmult);
    return {rc.genus, dims.h1, dmult > 0, dims.h1 >= 2};
}

/// Checks (d(y^p z))_inf = p val(y) + (dz)_inf >= p D for the witness f = y^p z, using
/// caller-supplied valuations at inf.
inline bool kernel_witness_check(const CurveModel& curve, const OnePointDivisor& dz, const OnePointDivisor& D,
                                 const std::map<std::string, long long>& valuations)
{
    if (curve.char_p < 3)
        fail(ErrorKind::InvalidInput, "curve needs a characteristic >= 3");
    if (dz.degree() != curve.canonical_degree())
        fail(ErrorKind::Inconsistent, "deg(dz) = " + std::to_string(dz.degree()) + " but 2g - 2 = "
                                          + std::to_string(curve.canonical_degree()));
    auto it = valuations.find("y");
    if (it == valuations.end())
        fail(ErrorKind::InvalidInput, "missing valuation of y at " + curve.place_name);
    const long long p = curve.char_p;
    return p * it->second + dz.mult >= p * D.mult;
}

} // namespace fanoforge
