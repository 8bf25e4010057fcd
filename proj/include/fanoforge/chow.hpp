#pragma once

#include <array>
#include <string>
#include <vector>

#include "error.hpp"
#include "lattice.hpp"
#include "rational.hpp"

namespace fanoforge {

/// Sign convention used when eliminating H^2.
///
/// Geometric reduces H^2 = H.c1 - c2 (the quotient convention; this is an honest ring and
/// integrates H^3 to c1^2 - c2). PaperFormal reduces H^2 = -H.c1 - c2 and evaluates the
/// unreduced degree-3 monomials with the postulated values deg H^3 = -c1^2 - c2 and
/// deg H^2.a = -c1.a. Under PaperFormal the value of H^3 therefore depends on whether
/// H^2 is reduced before the third factor is applied; see ChowExpansion.
enum class ConventionMode { Geometric, PaperFormal };

inline const char* to_string(ConventionMode mode)
{
    return mode == ConventionMode::Geometric ? "geometric" : "paper-formal";
}

/// Sign of the H.c1 term in the reduction of H^2.
inline int hirsch_sign(ConventionMode mode) { return mode == ConventionMode::Geometric ? 1 : -1; }

/// Chern data of a rank-2 bundle on a surface model.
struct BundleData {
    SurfaceModel model;
    DivisorClass c1;
    Rational c2;
    int rank = 2;

    BundleData(SurfaceModel m, DivisorClass first, Rational second)
        : model(std::move(m)), c1(std::move(first)), c2(std::move(second))
    {
        model.check(c1);
    }

    Rational c1_squared() const { return model.pair(c1, c1); }
};

/// Element of A^*(S) truncated at the point class: c0 + c1 + c2*pt.
struct SurfacePart {
    Rational c0;
    DivisorClass c1;
    Rational c2;

    explicit SurfacePart(std::size_t rank = 0) : c1(rank) {}

    bool is_zero() const { return c0 == 0 && c1.is_zero() && c2 == 0; }
    friend bool operator==(const SurfacePart&, const SurfacePart&) = default;
};

/// A class in normal form: a0 + pi^*a1 + h1*H + a2*pt + H*pi^*h2 + a3*H*pt.
struct ChowClass {
    Rational a0;
    DivisorClass a1;
    Rational h1;
    Rational a2;
    DivisorClass h2;
    Rational a3;

    explicit ChowClass(std::size_t rank = 0) : a1(rank), h2(rank) {}

    static ChowClass zero(std::size_t rank) { return ChowClass(rank); }
    static ChowClass one(std::size_t rank)
    {
        ChowClass c(rank);
        c.a0 = 1;
        return c;
    }
    static ChowClass hyperplane(std::size_t rank)
    {
        ChowClass c(rank);
        c.h1 = 1;
        return c;
    }
    static ChowClass pullback(const DivisorClass& d)
    {
        ChowClass c(d.size());
        c.a1 = d;
        return c;
    }
    static ChowClass point(std::size_t rank)
    {
        ChowClass c(rank);
        c.a2 = 1;
        return c;
    }

    std::size_t rank() const { return a1.size(); }

    bool is_zero() const { return a0 == 0 && a1.is_zero() && h1 == 0 && a2 == 0 && h2.is_zero() && a3 == 0; }

    ChowClass& operator+=(const ChowClass& o)
    {
        a0 += o.a0;
        a1 += o.a1;
        h1 += o.h1;
        a2 += o.a2;
        h2 += o.h2;
        a3 += o.a3;
        return *this;
    }
    ChowClass& operator-=(const ChowClass& o) { return *this += Rational(-1) * o; }
    ChowClass& operator*=(const Rational& s)
    {
        a0 *= s;
        a1 *= s;
        h1 *= s;
        a2 *= s;
        h2 *= s;
        a3 *= s;
        return *this;
    }

    friend ChowClass operator+(ChowClass a, const ChowClass& b) { return a += b; }
    friend ChowClass operator-(ChowClass a, const ChowClass& b) { return a -= b; }
    friend ChowClass operator-(ChowClass a) { return a *= Rational(-1); }
    friend ChowClass operator*(const Rational& s, ChowClass a) { return a *= s; }
    friend bool operator==(const ChowClass&, const ChowClass&) = default;
};

/// An unreduced class: a polynomial in H of degree <= 3 with coefficients in A^*(S),
/// truncated to total degree 3. Products here are plain polynomial products; the
/// convention mode only enters when the expansion is normalised.
class ChowExpansion {
public:
    explicit ChowExpansion(std::size_t rank = 0)
        : parts_{SurfacePart(rank), SurfacePart(rank), SurfacePart(rank), SurfacePart(rank)}
    {
    }

    ChowExpansion(const ChowClass& c) : ChowExpansion(c.rank())
    {
        parts_[0].c0 = c.a0;
        parts_[0].c1 = c.a1;
        parts_[0].c2 = c.a2;
        parts_[1].c0 = c.h1;
        parts_[1].c1 = c.h2;
        parts_[1].c2 = c.a3;
    }

    static ChowExpansion scalar(std::size_t rank, const Rational& s)
    {
        ChowExpansion e(rank);
        e.parts_[0].c0 = s;
        return e;
    }
    static ChowExpansion hyperplane_power(std::size_t rank, int k)
    {
        ChowExpansion e(rank);
        if (k >= 0 && k <= 3)
            e.parts_[k].c0 = 1;
        return e;
    }

    std::size_t rank() const { return parts_[0].c1.size(); }

    /// Coefficient of H^power; surface degrees above 3 - power are always zero.
    const SurfacePart& h_power(int power) const { return parts_.at(power); }
    SurfacePart& h_power(int power) { return parts_.at(power); }

    bool is_zero() const
    {
        for (const auto& p : parts_)
            if (!p.is_zero())
                return false;
        return true;
    }

    ChowExpansion& operator+=(const ChowExpansion& o)
    {
        for (int i = 0; i < 4; ++i) {
            parts_[i].c0 += o.parts_[i].c0;
            parts_[i].c1 += o.parts_[i].c1;
            parts_[i].c2 += o.parts_[i].c2;
        }
        return *this;
    }
    ChowExpansion& operator*=(const Rational& s)
    {
        for (auto& p : parts_) {
            p.c0 *= s;
            p.c1 *= s;
            p.c2 *= s;
        }
        return *this;
    }
    friend ChowExpansion operator+(ChowExpansion a, const ChowExpansion& b) { return a += b; }
    friend ChowExpansion operator-(ChowExpansion a, const ChowExpansion& b) { return a += Rational(-1) * b; }
    friend ChowExpansion operator*(const Rational& s, ChowExpansion a) { return a *= s; }
    friend bool operator==(const ChowExpansion&, const ChowExpansion&) = default;

    /// Polynomial product truncated at total degree 3. Sets *overflow when a nonzero
    /// contribution of total degree > 3 was discarded.
    static ChowExpansion product(const SurfaceModel& model, const ChowExpansion& x, const ChowExpansion& y,
                                 bool* overflow = nullptr)
    {
        ChowExpansion out(model.rank());
        bool lost = false;
        for (int i = 0; i < 4; ++i) {
            const SurfacePart& a = x.parts_[i];
            if (a.is_zero())
                continue;
            for (int k = 0; k < 4; ++k) {
                const SurfacePart& b = y.parts_[k];
                if (b.is_zero())
                    continue;
                const int power = i + k;
                const Rational deg0 = a.c0 * b.c0;
                const DivisorClass deg1 = a.c0 * b.c1 + b.c0 * a.c1;
                const Rational deg2 = a.c0 * b.c2 + b.c0 * a.c2 + model.pair(a.c1, b.c1);
                const bool deg3 = (!a.c1.is_zero() && b.c2 != 0) || (a.c2 != 0 && !b.c1.is_zero());
                const bool deg4 = a.c2 != 0 && b.c2 != 0;
                // Surface degree 3 vanishes on S; past total degree 3 it is a truncation.
                lost = lost || deg4 || (deg3 && power >= 1);
                if (power > 3) {
                    lost = lost || deg0 != 0 || !deg1.is_zero() || deg2 != 0;
                    continue;
                }
                SurfacePart& dst = out.parts_[power];
                dst.c0 += deg0;
                if (power <= 2)
                    dst.c1 += deg1;
                else
                    lost = lost || !deg1.is_zero();
                if (power <= 1)
                    dst.c2 += deg2;
                else
                    lost = lost || deg2 != 0;
            }
        }
        if (overflow)
            *overflow = *overflow || lost;
        return out;
    }

private:
    std::array<SurfacePart, 4> parts_;
};

/// Rewrites every H^2 and H^3 monomial with the mode's rules.
inline ChowClass normalize(const BundleData& E, const ChowExpansion& x, ConventionMode mode)
{
    const SurfaceModel& model = E.model;
    if (x.rank() != model.rank())
        fail(ErrorKind::InvalidInput, "class and bundle live on different surface models");
    const int s = hirsch_sign(mode);
    const SurfacePart& p0 = x.h_power(0);
    const SurfacePart& p1 = x.h_power(1);
    const SurfacePart& p2 = x.h_power(2);
    const SurfacePart& p3 = x.h_power(3);

    const Rational h_cubed = mode == ConventionMode::Geometric ? E.c1_squared() - E.c2 : -E.c1_squared() - E.c2;

    ChowClass out(model.rank());
    out.a0 = p0.c0;
    out.a1 = p0.c1;
    out.a2 = p0.c2 - p2.c0 * E.c2;
    out.h1 = p1.c0;
    out.h2 = p1.c1 + Rational(s) * p2.c0 * E.c1;
    out.a3 = p1.c2 + Rational(s) * model.pair(E.c1, p2.c1) + p3.c0 * h_cubed;
    return out;
}

inline ChowClass normalize(const BundleData& E, const ChowClass& x, ConventionMode mode)
{
    return normalize(E, ChowExpansion(x), mode);
}

/// Product of two normal-form classes, reduced back to normal form.
inline ChowClass multiply(const BundleData& E, const ChowClass& x, const ChowClass& y, ConventionMode mode)
{
    if (x.rank() != E.model.rank() || y.rank() != E.model.rank())
        fail(ErrorKind::InvalidInput, "classes and bundle live on different surface models");
    return normalize(E, ChowExpansion::product(E.model, ChowExpansion(x), ChowExpansion(y)), mode);
}

/// Degree of the top-dimensional part after reduction.
inline Rational integrate(const BundleData& E, const ChowExpansion& x, ConventionMode mode)
{
    return normalize(E, x, mode).a3;
}

inline Rational integrate(const BundleData& E, const ChowClass& x, ConventionMode mode)
{
    return integrate(E, ChowExpansion(x), mode);
}

/// K_W = -2H + pi^*(K_S + c1).
inline ChowClass canonical_class(const SurfaceModel& model, const BundleData& E)
{
    if (E.rank != 2)
        fail(ErrorKind::InvalidInput, "only rank-2 bundles are supported");
    ChowClass k = Rational(-2) * ChowClass::hyperplane(model.rank());
    k.a1 = model.canonical() + E.c1;
    return k;
}

inline ChowExpansion cube(const SurfaceModel& model, const ChowExpansion& x)
{
    return ChowExpansion::product(model, ChowExpansion::product(model, x, x), x);
}

/// (-K_W)^3 by expanding the cube monomially and integrating under the mode.
inline Rational anticanonical_cube(const SurfaceModel& model, const BundleData& E, ConventionMode mode)
{
    const ChowExpansion anti = ChowExpansion(-canonical_class(model, E));
    return integrate(E, cube(model, anti), mode);
}

inline Rational closed_degree_formula(const Rational& ks2, const Rational& c1sq, const Rational& ks_c1, const Rational& c2,
                                      ConventionMode mode)
{
    if (mode == ConventionMode::PaperFormal)
        return 6 * ks2 + 10 * c1sq + 24 * ks_c1 - 8 * c2;
    return 6 * ks2 + 2 * c1sq - 8 * c2;
}

inline Rational closed_degree_formula(const SurfaceModel& model, const BundleData& E, ConventionMode mode)
{
    return closed_degree_formula(model.ks2(), E.c1_squared(), model.pair(model.canonical(), E.c1), E.c2, mode);
}

namespace detail {

inline void append_term(std::string& out, const Rational& coeff, const std::string& suffix)
{
    if (coeff == 0)
        return;
    const bool negative = coeff < 0;
    const Rational mag = negative ? Rational(-coeff) : coeff;
    if (out.empty())
        out = negative ? "-" : "";
    else
        out += negative ? " - " : " + ";
    if (suffix.empty())
        out += to_string(mag);
    else if (mag == 1)
        out += suffix;
    else
        out += to_string(mag) + "*" + suffix;
}

} // namespace detail

inline std::string to_string(const SurfaceModel& model, const DivisorClass& d)
{
    model.check(d);
    std::string out;
    for (std::size_t i = 0; i < d.size(); ++i)
        detail::append_term(out, d[i], model.basis_names()[i]);
    return out.empty() ? "0" : out;
}

/// "a0 + a1 + h1*H + a2*pt + H*(h2) + a3*H*pt" with zero parts omitted.
inline std::string to_string(const SurfaceModel& model, const ChowClass& c)
{
    std::string out;
    detail::append_term(out, c.a0, "");
    for (std::size_t i = 0; i < c.a1.size(); ++i)
        detail::append_term(out, c.a1[i], model.basis_names()[i]);
    detail::append_term(out, c.h1, "H");
    detail::append_term(out, c.a2, "pt");
    if (!c.h2.is_zero())
        detail::append_term(out, Rational(1), "H*(" + to_string(model, c.h2) + ")");
    detail::append_term(out, c.a3, "H*pt");
    return out.empty() ? "0" : out;
}

} // namespace fanoforge
