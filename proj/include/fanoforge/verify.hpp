#pragma once

#include <functional>
#include <random>
#include <string>
#include <vector>

#include "bundles.hpp"
#include "chow.hpp"
#include "construction.hpp"
#include "curves.hpp"
#include "lattice.hpp"

namespace fanoforge {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct VerifyOptions {
    bool paper = true;
    bool geometric = true;
    unsigned seed = 20240601;
    int samples = 200;
};

/// Random rank <= 2 model with a Hodge-index Gram matrix, plus a random bundle on it.
struct RandomBundleSource {
    std::mt19937_64 rng;

    explicit RandomBundleSource(unsigned seed) : rng(seed) {}

    long long uniform(long long lo, long long hi) { return std::uniform_int_distribution<long long>(lo, hi)(rng); }

    SurfaceModel model()
    {
        SurfaceData d;
        if (uniform(0, 1) == 0) {
            d.gram = {{Rational(uniform(1, 6))}};
            d.canonical = DivisorClass{Rational(uniform(-6, 6))};
            d.ample_gens = {DivisorClass{1}};
        } else {
            // [[a, b], [b, -c]] with a, c > 0 has determinant < 0, hence signature (1, 1).
            const long long a = uniform(1, 5), b = uniform(-3, 3), c = uniform(1, 5);
            d.gram = {{Rational(a), Rational(b)}, {Rational(b), Rational(-c)}};
            d.canonical = DivisorClass{Rational(uniform(-6, 6)), Rational(uniform(-6, 6))};
            d.ample_gens = {DivisorClass{1, 0}};
        }
        d.name = "random";
        return SurfaceModel::create(std::move(d));
    }

    DivisorClass divisor(const SurfaceModel& m, long long bound = 8)
    {
        DivisorClass x(m.rank());
        for (std::size_t i = 0; i < m.rank(); ++i)
            x[i] = Rational(uniform(-bound, bound));
        return x;
    }

    BundleData bundle(const SurfaceModel& m) { return BundleData(m, divisor(m), Rational(uniform(-20, 20))); }
};

/// The identity suite behind `verify`: exact checks of every closed formula the engine implements.
inline std::vector<CheckResult> run_verification(const VerifyOptions& opt)
{
    std::vector<CheckResult> out;
    auto check = [&](std::string name, const std::function<std::string()>& body) {
        try {
            std::string why = body();
            out.push_back({std::move(name), why.empty(), why});
        } catch (const std::exception& e) {
            out.push_back({std::move(name), false, e.what()});
        }
    };

    const SurfaceModel p2 = presets::p2();
    const SurfaceModel k9 = presets::ample_k(9);

    if (opt.paper) {
        check("paper: (-K_W)^3 expansion equals 6K^2 + 10c1^2 + 24K.c1 - 8c2", [&]() -> std::string {
            RandomBundleSource src(opt.seed);
            for (int i = 0; i < opt.samples; ++i) {
                SurfaceModel m = src.model();
                BundleData E = src.bundle(m);
                if (anticanonical_cube(m, E, ConventionMode::PaperFormal)
                    != closed_degree_formula(m, E, ConventionMode::PaperFormal))
                    return "mismatch on sample " + std::to_string(i);
            }
            return {};
        });
        check("paper: H^2 + H.c1 + c2 reduces to 0", [&]() -> std::string {
            RandomBundleSource src(opt.seed + 1);
            for (int i = 0; i < opt.samples; ++i) {
                SurfaceModel m = src.model();
                BundleData E = src.bundle(m);
                const std::size_t r = m.rank();
                ChowClass H = ChowClass::hyperplane(r);
                ChowClass rel = multiply(E, H, H, ConventionMode::PaperFormal)
                                + multiply(E, H, ChowClass::pullback(E.c1), ConventionMode::PaperFormal)
                                + E.c2 * ChowClass::point(r);
                if (!rel.is_zero())
                    return "relation not zero on sample " + std::to_string(i);
            }
            return {};
        });
        check("paper: deg H^3 = -c1^2 - c2", [&]() -> std::string {
            BundleData E(p2, DivisorClass{1}, Rational(0));
            auto v = integrate(E, ChowExpansion::hyperplane_power(1, 3), ConventionMode::PaperFormal);
            return v == -1 ? "" : "got " + to_string(v);
        });
        check("paper: c1 = -nK_S, c2 = 0 gives (10n^2 - 24n + 6)K_S^2", [&]() -> std::string {
            for (int n = 1; n <= 10; ++n) {
                BundleData E(k9, Rational(-n) * k9.canonical(), Rational(0));
                if (anticanonical_cube(k9, E, ConventionMode::PaperFormal) != Rational(10 * n * n - 24 * n + 6) * 9)
                    return "n = " + std::to_string(n);
            }
            return {};
        });
    }
    if (opt.geometric) {
        check("geometric: P^2 x P^1 has (-K)^3 = 54", [&]() -> std::string {
            BundleData E(p2, DivisorClass{0}, Rational(0));
            auto v = anticanonical_cube(p2, E, ConventionMode::Geometric);
            return v == 54 ? "" : "got " + to_string(v);
        });
        check("geometric: P(O + O(1)) over P^2 has (-K)^3 = 56", [&]() -> std::string {
            BundleData E(p2, DivisorClass{1}, Rational(0));
            auto v = anticanonical_cube(p2, E, ConventionMode::Geometric);
            return v == 56 ? "" : "got " + to_string(v);
        });
        check("geometric: (-K_W)^3 expansion equals 6K^2 + 2c1^2 - 8c2", [&]() -> std::string {
            RandomBundleSource src(opt.seed + 2);
            for (int i = 0; i < opt.samples; ++i) {
                SurfaceModel m = src.model();
                BundleData E = src.bundle(m);
                if (anticanonical_cube(m, E, ConventionMode::Geometric)
                    != closed_degree_formula(m, E, ConventionMode::Geometric))
                    return "mismatch on sample " + std::to_string(i);
            }
            return {};
        });
        check("geometric: (-K_W)^3 invariant under E -> E(m)", [&]() -> std::string {
            RandomBundleSource src(opt.seed + 3);
            for (int i = 0; i < opt.samples; ++i) {
                SurfaceModel m = src.model();
                BundleData E = src.bundle(m);
                DivisorClass t = src.divisor(m, 4);
                BundleData F(m, E.c1 + Rational(2) * t, E.c2 + m.pair(E.c1, t) + m.pair(t, t));
                if (anticanonical_cube(m, E, ConventionMode::Geometric)
                    != anticanonical_cube(m, F, ConventionMode::Geometric))
                    return "twist changed the degree on sample " + std::to_string(i);
            }
            return {};
        });
    }
    check("recipe: choose_splitting gives c1 = -nK_S, c2 = 0, locally free", [&]() -> std::string {
        for (int n = 1; n <= 5; ++n)
            for (long long k = 1; k <= 5; ++k) {
                const long long d = k * k + 3 * n * k;
                ExtensionData ext = choose_splitting(k9, n, d);
                BundleData E = whitney_chern(k9, ext);
                if (!(E.c1 == Rational(-n) * k9.canonical()) || E.c2 != 0 || !locally_free_check(k9, ext))
                    return "n = " + std::to_string(n) + ", d = " + std::to_string(d);
            }
        return {};
    });
    check("curves: Tate genus, Raynaud canonical divisor, Riemann-Roch", [&]() -> std::string {
        if (tate_genus(5) != 2)
            return "tate_genus(5)";
        auto rc = raynaud_canonical(3, 2);
        if (rc.dz.mult != 18 || rc.genus != 10)
            return "raynaud_canonical(3, 2)";
        if (kernel_dim_lower_bound(3, 2).h1 != 12)
            return "kernel_dim_lower_bound(3, 2)";
        for (long long g = 0; g <= 20; ++g)
            for (long long deg = -40; deg <= 60; ++deg) {
                if (deg > 0 && deg < 2 * g - 2)
                    continue;
                auto c = riemann_roch(g, deg);
                if (c.h0 - c.h1 != deg - g + 1)
                    return "Riemann-Roch identity at g = " + std::to_string(g);
            }
        return {};
    });
    check("fano bidegree: Fano iff p <= n", [&]() -> std::string {
        for (int p : {2, 3, 5, 7})
            for (int n = 1; n <= 8; ++n)
                if (fano_bidegree_check(p, n) != (p <= n))
                    return "p = " + std::to_string(p) + ", n = " + std::to_string(n);
        return {};
    });
    return out;
}

} // namespace fanoforge
