#pragma once

#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "bundles.hpp"
#include "chow.hpp"
#include "error.hpp"
#include "lattice.hpp"

namespace fanoforge {

struct ConstructionInput {
    SurfaceModel model;
    int p = 3;
    int n = 1;
    long long d = 1;
    /// Ample divisor of the p-cover; the first ample generator when unset.
    std::optional<DivisorClass> D;
    ConventionMode mode = ConventionMode::PaperFormal;
};

struct SplittingOptions {
    /// Largest multiple k of an ample generator tried; 0 means d.
    long long max_multiple = 0;
};

namespace detail {

inline void require_ample_canonical(const SurfaceModel& model)
{
    if (!is_positive_on_ample(model, model.canonical()))
        fail(ErrorKind::InvalidInput, "the construction needs K_S positive on the declared ample generators");
}

inline void require_odd_prime(long long p)
{
    if (p < 3 || !is_prime(p))
        fail(ErrorKind::InvalidInput, "p must be a prime >= 3, got " + std::to_string(p));
}

} // namespace detail

/// Finds an ample L = k*a (a an ample generator) with L^2 + n L.K_S = d and returns
/// (L, -L - n K_S, d), so that c1(E) = -n K_S and c2(E) = 0.
inline ExtensionData choose_splitting(const SurfaceModel& model, int n, long long d, SplittingOptions options = {})
{
    detail::require_ample_canonical(model);
    if (n < 1)
        fail(ErrorKind::InvalidInput, "n must be >= 1");
    if (d < 1)
        fail(ErrorKind::InvalidInput, "d must be >= 1");
    const long long bound = options.max_multiple > 0 ? options.max_multiple : d;
    const DivisorClass& K = model.canonical();

    std::set<long long> near;
    for (const auto& a : model.ample_gens()) {
        const Rational a2 = model.pair(a, a);
        const Rational aK = model.pair(a, K);
        for (long long k = 1; k <= bound; ++k) {
            // len(Z) = k^2 a^2 + n k a.K, increasing in k.
            const Rational len = Rational(k * k) * a2 + Rational(n) * Rational(k) * aK;
            if (len == d) {
                DivisorClass L = Rational(k) * a;
                DivisorClass Lp = -L - Rational(n) * K;
                return ExtensionData(std::move(L), std::move(Lp), d);
            }
            if (is_integer(len))
                near.insert(to_int64(len));
            if (len > d)
                break;
        }
    }
    std::string msg = "no ample multiple L of a generator gives len(Z) = " + std::to_string(d) + " for n = "
                       + std::to_string(n);
    auto above = near.upper_bound(d);
    std::vector<long long> shown;
    if (above != near.begin())
        shown.push_back(*std::prev(above));
    if (above != near.end())
        shown.push_back(*above);
    if (!shown.empty()) {
        msg += "; nearest attainable:";
        for (auto v : shown)
            msg += " " + std::to_string(v);
    }
    fail(ErrorKind::Infeasible, msg);
}

/// A curve class on W, described by H.C and its push-forward to S (so pi^*delta.C = delta.pi_*C).
struct CurveClass {
    std::string name;
    std::optional<Rational> h_degree;
    std::optional<DivisorClass> pushforward;
};

struct NefEntry {
    std::string name;
    Rational value;
    bool nonnegative = false;
};

struct NefReport {
    std::vector<NefEntry> entries;
    bool verdict = false;
    /// Only the built-in fibre class was tested.
    bool partial_evidence = true;
};

/// The fibre of W -> S: H.f = 1, pi^*delta.f = 0.
inline CurveClass fiber_class(std::size_t rank)
{
    return CurveClass{"fiber", Rational(1), DivisorClass::zero(rank)};
}

/// Pairs a divisor class on W with the fibre class and the supplied curve classes.
inline NefReport nef_pairing_check(const SurfaceModel& model, const ChowClass& divisor,
                                   const std::vector<CurveClass>& curves = {})
{
    if (divisor.a0 != 0 || divisor.a2 != 0 || !divisor.h2.is_zero() || divisor.a3 != 0)
        fail(ErrorKind::InvalidInput, "nef_pairing_check expects a divisor class (degree 1)");
    model.check(divisor.a1);
    NefReport report;
    std::vector<CurveClass> all{fiber_class(model.rank())};
    all.insert(all.end(), curves.begin(), curves.end());
    report.partial_evidence = curves.empty();
    report.verdict = true;
    for (const auto& c : all) {
        if (!c.h_degree || !c.pushforward)
            fail(ErrorKind::InvalidInput, "curve class '" + c.name + "' lacks pairing data");
        model.check(*c.pushforward);
        Rational v = divisor.h1 * *c.h_degree + model.pair(divisor.a1, *c.pushforward);
        const bool ok = v >= 0;
        report.verdict = report.verdict && ok;
        report.entries.push_back({c.name, std::move(v), ok});
    }
    return report;
}

/// Dimension of the parameter space B_d: Z moves in the Hilbert scheme of d points on S.
inline long long family_dim(long long d)
{
    if (d < 1)
        fail(ErrorKind::InvalidInput, "d must be >= 1");
    return 2 * d;
}

struct ThreefoldReport {
    ExtensionData extension;
    BundleData chern;
    ChowClass antiK;
    Rational deg_paper;
    Rational deg_geom;
    long long extension_space_dim = 0;
    long long family_dim = 0;
    bool locally_free = false;
    NefReport nef;
};

inline ThreefoldReport build_threefold(const ConstructionInput& in, SplittingOptions options = {})
{
    detail::require_odd_prime(in.p);
    if (in.model.char_p() != 0 && in.model.char_p() != in.p)
        fail(ErrorKind::InvalidInput, "surface model is in characteristic " + std::to_string(in.model.char_p())
                                          + " but p = " + std::to_string(in.p));
    const SurfaceModel& model = in.model;
    ExtensionData ext = choose_splitting(model, in.n, in.d, options);
    BundleData E = whitney_chern(model, ext);
    if (!(E.c1 == Rational(-in.n) * model.canonical()) || E.c2 != 0)
        fail(ErrorKind::Inconsistent, "splitting did not produce c1 = -nK_S, c2 = 0");

    ChowClass antiK = -canonical_class(model, E);
    Rational deg_paper = closed_degree_formula(model, E, ConventionMode::PaperFormal);
    Rational deg_geom = closed_degree_formula(model, E, ConventionMode::Geometric);
    if (deg_paper != anticanonical_cube(model, E, ConventionMode::PaperFormal)
        || deg_geom != anticanonical_cube(model, E, ConventionMode::Geometric))
        fail(ErrorKind::Inconsistent, "engine expansion disagrees with the closed degree formula");

    const long long dim = ext_space_dim(ext);
    const bool lf = locally_free_check(model, ext);
    NefReport nef = nef_pairing_check(model, antiK);
    return ThreefoldReport{std::move(ext),      std::move(E), std::move(antiK),   std::move(deg_paper),
                           std::move(deg_geom), dim,          family_dim(in.d), lf,
                           std::move(nef)};
}

struct CoverReport {
    /// -K_W + (p-1) pi^*D; -K_X is its pull-back.
    ChowClass base_class;
    int multiplier = 0;
    Rational degree;
    bool ample_certified = false;
    std::string certified_by;
};

/// Purely inseparable degree-p cover X -> W with K_X = phi^*(K_W - (p-1)D).
inline CoverReport p_cover(const SurfaceModel& model, const BundleData& E, int p, const DivisorClass& D,
                           ConventionMode mode, const std::vector<CurveClass>& curves = {})
{
    detail::require_odd_prime(p);
    model.check(D);
    if (!is_positive_on_ample(model, D))
        fail(ErrorKind::InvalidInput, "D must be positive on the declared ample generators");
    const ChowClass antiK = -canonical_class(model, E);
    ChowClass base = antiK + ChowClass::pullback(Rational(p - 1) * D);
    Rational degree = Rational(p) * integrate(E, cube(model, ChowExpansion(base)), mode);
    const NefReport nef = nef_pairing_check(model, antiK, curves);
    std::string by = "-K_W nonnegative on " + std::to_string(nef.entries.size()) + " curve class(es)"
                     + (nef.partial_evidence ? " (fiber only, partial evidence)" : "")
                     + "; D positive on every declared ample generator";
    return CoverReport{std::move(base), p, std::move(degree), nef.verdict, std::move(by)};
}

struct CyclicCoverReport {
    /// K_{X_m} = pi_m^*(canonical_multiple * (-K_X)).
    long long canonical_multiple = 0;
    Rational degree;
    bool k_nef = false;
};

/// Cyclic m-cover branched along a member of |-m K_X|: K = pi^*(K_X + (m-1)(-K_X)).
/// When the characteristic p is given, m must be prime to it.
inline CyclicCoverReport cyclic_cover(const Rational& x_degree, long long m, std::optional<long long> p = std::nullopt)
{
    if (m < 2)
        fail(ErrorKind::InvalidInput, "m must be >= 2");
    if (p && std::gcd(m, *p) != 1)
        fail(ErrorKind::InvalidInput, "m = " + std::to_string(m) + " is not coprime to p = " + std::to_string(*p));
    const long long mult = m - 2;
    Rational degree = Rational(m) * Rational(mult * mult * mult) * x_degree;
    return CyclicCoverReport{mult, std::move(degree), x_degree > 0};
}

/// Smallest m >= 3 coprime to p.
inline long long default_cyclic_degree(long long p)
{
    long long m = 3;
    while (std::gcd(m, p) != 1)
        ++m;
    return m;
}

/// Families with different len(Z) share (c1, c2) but are generically non-isomorphic.
inline bool family_distinctness(long long d, long long d2)
{
    if (d < 1 || d2 < 1)
        fail(ErrorKind::InvalidInput, "family indices must be >= 1");
    return d != d2;
}

/// Degree of (-K_W)^3 for c1 = -n K_S, c2 = 0.
inline Rational recipe_degree(const Rational& ks2, long long n, ConventionMode mode)
{
    const Rational nn(n);
    return closed_degree_formula(ks2, nn * nn * ks2, -nn * ks2, Rational(0), mode);
}

struct SearchResult {
    int n = 0;
    Rational degree;
};

/// Minimal n >= 3 whose anticanonical degree reaches N.
inline SearchResult unbounded_search(const SurfaceModel& model, const Rational& N, ConventionMode mode)
{
    const Rational ks2 = model.ks2();
    if (ks2 <= 0)
        fail(ErrorKind::InvalidInput, "unbounded_search needs K_S^2 > 0");
    if (N < 1)
        fail(ErrorKind::InvalidInput, "N must be >= 1");
    for (int n = 3;; ++n) {
        Rational deg = recipe_degree(ks2, n, mode);
        if (deg >= N)
            return {n, std::move(deg)};
    }
}

/// -K of a (p,1) divisor in P^n x P^n has bidegree (n+1-p, n).
inline std::pair<long long, long long> fano_bidegree(long long p, long long n)
{
    if (p < 2 || !detail::is_prime(p))
        fail(ErrorKind::InvalidInput, "p must be prime");
    if (n < 1)
        fail(ErrorKind::InvalidInput, "n must be >= 1");
    return {n + 1 - p, n};
}

inline bool fano_bidegree_check(long long p, long long n)
{
    auto [a, b] = fano_bidegree(p, n);
    return a > 0 && b > 0;
}

} // namespace fanoforge
