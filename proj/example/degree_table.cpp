// Prints (-K_W)^3 and the p-cover degree for c1 = -n K_S, c2 = 0 on a surface with ample
// canonical class, in both convention modes.

#include <iostream>

#include <fanoforge/fanoforge.hpp>

using namespace fanoforge;

int main()
{
    const SurfaceModel S = presets::ample_k(9);
    const DivisorClass D = S.ample_gens().front();
    std::cout << "n  L  len(Z)  deg_paper  deg_geom  cover_paper  cover_geom\n";
    for (int n = 1; n <= 6; ++n) {
        const long long d = 1 + 3LL * n; // L = A
        const ExtensionData ext = choose_splitting(S, n, d);
        const BundleData E = whitney_chern(S, ext);
        std::cout << n << "  " << to_string(S, ext.L) << "  " << ext.lenZ << "  "
                  << to_string(anticanonical_cube(S, E, ConventionMode::PaperFormal)) << "  "
                  << to_string(anticanonical_cube(S, E, ConventionMode::Geometric)) << "  "
                  << to_string(p_cover(S, E, 3, D, ConventionMode::PaperFormal).degree) << "  "
                  << to_string(p_cover(S, E, 3, D, ConventionMode::Geometric).degree) << "\n";
    }
}
