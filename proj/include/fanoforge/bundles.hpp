#pragma once

#include "chow.hpp"
#include "error.hpp"
#include "lattice.hpp"

namespace fanoforge {

/// 0 -> L -> E -> L' (x) I_Z -> 0, with Z recorded only through its length.
struct ExtensionData {
    DivisorClass L;
    DivisorClass Lp;
    long long lenZ = 0;

    ExtensionData(DivisorClass sub, DivisorClass quotient, long long length)
        : L(std::move(sub)), Lp(std::move(quotient)), lenZ(length)
    {
        if (lenZ < 0)
            fail(ErrorKind::InvalidInput, "length of Z must be non-negative");
    }
};

/// Whitney: c1 = L + L', c2 = L.L' + len(Z).
inline BundleData whitney_chern(const SurfaceModel& model, const ExtensionData& ext)
{
    model.check(ext.L);
    model.check(ext.Lp);
    return BundleData(model, ext.L + ext.Lp, model.pair(ext.L, ext.Lp) + ext.lenZ);
}

/// Length of the zero scheme of a section with codimension-2 zeros, which equals c2(E).
inline long long section_zero_locus_length(const SurfaceModel& model, const BundleData& E)
{
    model.check(E.c1);
    if (!is_integer(E.c2))
        fail(ErrorKind::InvalidInput, "c2 must be an integer, got " + to_string(E.c2));
    if (E.c2 < 0)
        fail(ErrorKind::Infeasible, "c2 = " + to_string(E.c2) + " < 0: no section with codimension-2 zeros");
    return to_int64(E.c2, "c2");
}

/// Dimension of P(Ext^1(L' (x) I_Z, L)) = P(O_Z).
inline long long ext_space_dim(const ExtensionData& ext)
{
    if (ext.lenZ < 1)
        fail(ErrorKind::Infeasible, "empty Z gives no nontrivial extension locus");
    return ext.lenZ - 1;
}

/// Certified vanishing of H^2(S, L'^{-1} (x) L), i.e. K_S - (L - L') negative on an ample
/// generator; false is inconclusive.
inline bool locally_free_check(const SurfaceModel& model, const ExtensionData& ext)
{
    return h0_vanishes(model, ext.L - ext.Lp);
}

} // namespace fanoforge
