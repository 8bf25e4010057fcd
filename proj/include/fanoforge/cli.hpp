#pragma once

#include <algorithm>
#include <atomic>
#include <future>
#include <map>
#include <thread>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "chow.hpp"
#include "construction.hpp"
#include "curves.hpp"
#include "error.hpp"
#include "expr.hpp"
#include "io.hpp"
#include "verify.hpp"

namespace fanoforge::cli {

enum ExitCode : int { Ok = 0, VerificationFailed = 1, InvalidInput = 2, Infeasible = 3 };

inline int exit_code(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::Infeasible: return Infeasible;
    case ErrorKind::Inconsistent: return VerificationFailed;
    default: return InvalidInput;
    }
}

namespace detail {

struct SurfaceOptions {
    std::string surface;
    std::string preset;
    std::optional<long long> ks2;
    std::optional<int> char_p;

    void add(CLI::App* app)
    {
        app->add_option("--surface", surface, "surface model JSON file");
        app->add_option("--preset", preset, "bundled preset: p2, ample-K, raynaud");
        app->add_option("--ks2", ks2, "K_S^2 for the ample-K and raynaud presets");
    }

    SurfaceModel load(std::optional<int> p = std::nullopt) const
    {
        ModelOverrides over{ks2, char_p};
        if (!surface.empty() && !preset.empty())
            fail(ErrorKind::InvalidInput, "give either --surface or --preset, not both");
        if (!surface.empty()) {
            // The raynaud preset lives in characteristic p.
            std::ifstream in(surface);
            if (in) {
                json j;
                try {
                    in >> j;
                } catch (const json::exception& e) {
                    fail(ErrorKind::InvalidInput, std::string("malformed surface JSON: ") + e.what());
                }
                if (p && j.is_object() && ::fanoforge::detail::lower(j.value("name", std::string())) == "raynaud")
                    over.char_p = *p;
                return model_from_json(j, over);
            }
            return load_model(surface, over);
        }
        const std::string name = preset.empty() ? "ample-K" : preset;
        if (p && ::fanoforge::detail::lower(name) == "raynaud")
            over.char_p = *p;
        return load_preset(name, over);
    }
};

inline std::vector<ConventionMode> modes(const std::string& m)
{
    if (m == "paper")
        return {ConventionMode::PaperFormal};
    if (m == "geom")
        return {ConventionMode::Geometric};
    return {ConventionMode::PaperFormal, ConventionMode::Geometric};
}

inline ConventionMode primary_mode(const std::string& m)
{
    return m == "geom" ? ConventionMode::Geometric : ConventionMode::PaperFormal;
}

inline std::string mode_key(ConventionMode m) { return m == ConventionMode::Geometric ? "geom" : "paper"; }

/// Flattens a JSON report into "key: value" lines for --format text.
inline void print_text(std::ostream& out, const json& j, const std::string& prefix = "")
{
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it)
            print_text(out, it.value(), prefix.empty() ? it.key() : prefix + "." + it.key());
    } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array())) {
        for (std::size_t i = 0; i < j.size(); ++i)
            print_text(out, j[i], prefix + "[" + std::to_string(i) + "]");
    } else {
        out << prefix << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
    }
}

inline void emit(std::ostream& out, const json& j, const std::string& format)
{
    if (format == "text")
        print_text(out, j);
    else
        out << j.dump(2) << "\n";
}

} // namespace detail

/// Runs the command line; returns the process exit code.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"fanoforge: intersection theory on rank-2 projective bundles over surfaces"};
    app.require_subcommand(1);
    std::string format = "json";
    std::string mode = "paper";
    app.add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));

    auto add_mode = [&](CLI::App* sub) {
        sub->add_option("--mode", mode, "paper, geom or both")->check(CLI::IsMember({"paper", "geom", "both"}));
        sub->add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));
    };

    // verify
    auto* verify = app.add_subcommand("verify", "run the identity suite");
    std::string verify_mode = "both";
    unsigned seed = 20240601;
    int samples = 200;
    verify->add_option("--mode", verify_mode)->check(CLI::IsMember({"paper", "geom", "both"}));
    verify->add_option("--seed", seed);
    verify->add_option("--samples", samples)->check(CLI::PositiveNumber);
    verify->add_option("--format", format)->check(CLI::IsMember({"json", "text"}));

    // construct
    auto* construct_cmd = app.add_subcommand("construct", "build W = P(E), its covers and report invariants");
    detail::SurfaceOptions surf;
    int p = 3, n = 3;
    long long d = 10;
    std::optional<long long> m;
    std::string d_expr;
    long long bound = 0;
    surf.add(construct_cmd);
    construct_cmd->add_option("--p", p);
    construct_cmd->add_option("--n", n);
    construct_cmd->add_option("--d", d);
    construct_cmd->add_option("--m", m, "cyclic cover degree (default: smallest m >= 3 coprime to p)");
    construct_cmd->add_option("--D", d_expr, "ample divisor of the p-cover, e.g. \"A\"");
    construct_cmd->add_option("--search-bound", bound, "largest multiple of an ample generator tried");
    add_mode(construct_cmd);

    // table
    auto* table = app.add_subcommand("table", "grid of constructions over n and d");
    int n_min = 1, n_max = 5;
    long long d_min = 1, d_max = 50;
    bool feasible_only = false;
    surf.add(table);
    table->add_option("--p", p);
    table->add_option("--n-min", n_min);
    table->add_option("--n-max", n_max);
    table->add_option("--d-min", d_min);
    table->add_option("--d-max", d_max);
    table->add_flag("--feasible-only", feasible_only);
    add_mode(table);

    // search
    auto* search = app.add_subcommand("search", "smallest n >= 3 with (-K_W)^3 >= N");
    std::string target = "1000";
    surf.add(search);
    search->add_option("--N", target)->required();
    add_mode(search);

    // curve
    auto* curve = app.add_subcommand("curve", "curve computations");
    curve->require_subcommand(1);
    curve->add_option("--format", format)->check(CLI::IsMember({"json", "text"}));
    long long cp = 3, ce = 2, cg = 0, cdeg = 0, val_y = 0;
    auto* tate = curve->add_subcommand("tate", "genus of y^2 = x^p - a");
    tate->add_option("--p", cp)->required();
    auto* raynaud = curve->add_subcommand("raynaud", "canonical divisor, genus and h1 for P(y^p) - y = z^{pe-1}");
    raynaud->add_option("--p", cp)->required();
    raynaud->add_option("--e", ce)->required();
    auto* rr = curve->add_subcommand("rr", "Riemann-Roch for a divisor of given degree");
    rr->add_option("--g", cg)->required();
    rr->add_option("--deg", cdeg)->required();
    auto* witness = curve->add_subcommand("witness", "check (d(y^p z)) >= pD from a supplied val(y)");
    witness->add_option("--p", cp)->required();
    witness->add_option("--e", ce)->required();
    auto* val_opt = witness->add_option("--val-y", val_y, "valuation of y at inf");
    for (auto* sub : {tate, raynaud, rr, witness})
        sub->add_option("--format", format)->check(CLI::IsMember({"json", "text"}));

    // eval
    auto* eval = app.add_subcommand("eval", "parse a class expression, reduce and integrate it");
    std::string source, c1_src = "0", c2_src = "0";
    surf.add(eval);
    eval->add_option("expr", source)->required();
    eval->add_option("--c1", c1_src, "first Chern class as a divisor expression");
    eval->add_option("--c2", c2_src, "second Chern number");
    add_mode(eval);

    // fano-bidegree
    auto* bideg = app.add_subcommand("fano-bidegree", "is (sum x_i^p y_i = 0) in P^n x P^n Fano");
    long long bp = 3, bn = 3;
    bideg->add_option("--p", bp)->required();
    bideg->add_option("--n", bn)->required();
    bideg->add_option("--format", format)->check(CLI::IsMember({"json", "text"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        std::ostringstream o, e2;
        const int code = app.exit(e, o, e2);
        out << o.str();
        err << e2.str();
        return code == 0 ? Ok : InvalidInput;
    }

    try {
        if (*verify) {
            VerifyOptions opt;
            opt.paper = verify_mode != "geom";
            opt.geometric = verify_mode != "paper";
            opt.seed = seed;
            opt.samples = samples;
            const auto results = run_verification(opt);
            bool all = true;
            json j = json::array();
            for (const auto& r : results) {
                all = all && r.passed;
                j.push_back({{"check", r.name}, {"passed", r.passed}, {"detail", r.detail}});
            }
            if (format == "json")
                out << json{{"checks", j}, {"all_passed", all}}.dump(2) << "\n";
            else {
                for (const auto& r : results)
                    out << (r.passed ? "PASS " : "FAIL ") << r.name << (r.detail.empty() ? "" : " (" + r.detail + ")")
                        << "\n";
                out << (all ? "all checks passed" : "verification FAILED") << "\n";
            }
            return all ? Ok : VerificationFailed;
        }

        if (*construct_cmd) {
            SurfaceModel model = surf.load(p);
            ConstructionInput in{model, p, n, d, std::nullopt, detail::primary_mode(mode)};
            if (!d_expr.empty()) {
                BundleData trivial(model, model.zero(), Rational(0));
                ChowClass c = normalize(trivial, evaluate(parse_class(d_expr, model), trivial).value, in.mode);
                if (!(c == ChowClass::pullback(c.a1)))
                    fail(ErrorKind::InvalidInput, "--D must be a divisor class on S");
                in.D = c.a1;
            }
            ConstructionReport rep = construct(in, m, SplittingOptions{bound});
            detail::emit(out, to_json(rep), format);
            return Ok;
        }

        if (*table) {
            SurfaceModel model = surf.load(p);
            if (n_min < 1 || n_max < n_min || d_min < 1 || d_max < d_min)
                fail(ErrorKind::InvalidInput, "empty or invalid grid");
            struct Cell {
                int n;
                long long d;
            };
            std::vector<Cell> cells;
            for (int nn = n_min; nn <= n_max; ++nn)
                for (long long dd = d_min; dd <= d_max; ++dd)
                    cells.push_back({nn, dd});
            const ConventionMode pm = detail::primary_mode(mode);
            auto compute = [&model, p, pm](const Cell& c) -> json {
                try {
                    ConstructionReport rep = construct(ConstructionInput{model, p, c.n, c.d, std::nullopt, pm});
                    return json{{"n", c.n},
                                {"d", c.d},
                                {"feasible", true},
                                {"L", to_json(rep.threefold.extension.L)},
                                {"deg_paper", to_string(rep.threefold.deg_paper)},
                                {"deg_geom", to_string(rep.threefold.deg_geom)},
                                {"family_dim", rep.threefold.family_dim},
                                {"ext_space_dim", rep.threefold.extension_space_dim},
                                {"cover_degree_paper", to_string(rep.cover_paper.degree)},
                                {"cover_degree_geom", to_string(rep.cover_geom.degree)}};
                } catch (const Error& e) {
                    if (e.kind() != ErrorKind::Infeasible)
                        throw;
                    return json{{"n", c.n}, {"d", c.d}, {"feasible", false}};
                }
            };
            // Cells are independent; results land in grid order regardless of completion order.
            std::vector<json> results(cells.size());
            std::atomic<std::size_t> next{0};
            const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(std::thread::hardware_concurrency(), 8));
            std::vector<std::future<void>> pool;
            for (std::size_t w = 0; w < workers; ++w)
                pool.push_back(std::async(std::launch::async, [&]() {
                    for (std::size_t i = next++; i < cells.size(); i = next++)
                        results[i] = compute(cells[i]);
                }));
            for (auto& f : pool)
                f.get();
            json rows = json::array();
            for (auto& row : results)
                if (!feasible_only || row["feasible"].get<bool>())
                    rows.push_back(std::move(row));
            json j{{"surface", model.name()}, {"KS2", to_string(model.ks2())}, {"p", p}, {"rows", rows}};
            if (format == "text") {
                out << "surface " << model.name() << ", K_S^2 = " << to_string(model.ks2()) << ", p = " << p << "\n";
                for (const auto& row : rows) {
                    out << "n=" << row["n"] << " d=" << row["d"];
                    if (row["feasible"].get<bool>())
                        out << " deg_paper=" << row["deg_paper"].get<std::string>()
                            << " deg_geom=" << row["deg_geom"].get<std::string>() << " family_dim=" << row["family_dim"];
                    else
                        out << " infeasible";
                    out << "\n";
                }
            } else {
                out << j.dump(2) << "\n";
            }
            return Ok;
        }

        if (*search) {
            SurfaceModel model = surf.load();
            const Rational N = parse_rational(target);
            json j{{"surface", model.name()}, {"KS2", to_string(model.ks2())}, {"N", to_string(N)}};
            for (auto md : detail::modes(mode)) {
                SearchResult r = unbounded_search(model, N, md);
                j[detail::mode_key(md)] = {{"n", r.n}, {"degree", to_string(r.degree)}};
            }
            detail::emit(out, j, format);
            return Ok;
        }

        if (*curve) {
            json j;
            if (*tate) {
                j = {{"p", cp}, {"genus", tate_genus(cp)}};
            } else if (*raynaud) {
                auto rc = raynaud_canonical(cp, ce);
                auto kb = kernel_dim_lower_bound(cp, ce);
                j = {{"p", cp},
                     {"e", ce},
                     {"dz", rc.dz.mult},
                     {"genus", rc.genus},
                     {"D", cp * ce - 3},
                     {"h1", kb.h1},
                     {"D_ample", kb.d_ample},
                     {"meets_claimed_bound", kb.meets_claimed_bound},
                     {"note", "h1 is the ambient space containing Ker F^*; the gap to dim Ker F^* is not computed"}};
            } else if (*rr) {
                auto dims = riemann_roch(cg, cdeg);
                j = {{"g", cg}, {"deg", cdeg}, {"h0", dims.h0}, {"h1", dims.h1}};
            } else if (*witness) {
                auto rc = raynaud_canonical(cp, ce);
                CurveModel c = raynaud_curve(static_cast<int>(cp), static_cast<int>(ce));
                std::map<std::string, long long> vals;
                if (val_opt->count() > 0)
                    vals["y"] = val_y;
                const OnePointDivisor D{cp * ce - 3};
                const bool ok = kernel_witness_check(c, rc.dz, D, vals);
                j = {{"p", cp}, {"e", ce}, {"dz", rc.dz.mult}, {"D", D.mult}, {"val_y", val_y}, {"holds", ok}};
            }
            detail::emit(out, j, format);
            return Ok;
        }

        if (*eval) {
            SurfaceModel model = surf.load();
            BundleData trivial(model, model.zero(), Rational(0));
            const ChowClass c1c = normalize(trivial, evaluate(parse_class(c1_src, model), trivial).value,
                                            ConventionMode::Geometric);
            if (!(c1c == ChowClass::pullback(c1c.a1)))
                fail(ErrorKind::InvalidInput, "--c1 must be a divisor class on S");
            BundleData E(model, c1c.a1, parse_rational(c2_src));
            ClassExpr expr = parse_class(source, model);
            EvalResult r = evaluate(expr, E);
            for (const auto& w : r.warnings)
                err << "warning: " << w << "\n";
            json j{{"expr", to_string(expr)}, {"mode", to_string(detail::primary_mode(mode))}};
            json warnings = r.warnings;
            j["warnings"] = warnings;
            for (auto md : {ConventionMode::PaperFormal, ConventionMode::Geometric}) {
                const ChowClass nf = normalize(E, r.value, md);
                j[detail::mode_key(md)] = {{"normal_form", to_string(model, nf)}, {"degree", to_string(nf.a3)}};
            }
            detail::emit(out, j, format);
            return Ok;
        }

        if (*bideg) {
            auto [a, b] = fano_bidegree(bp, bn);
            json j{{"p", bp}, {"n", bn}, {"anticanonical_bidegree", {a, b}}, {"fano", fano_bidegree_check(bp, bn)}};
            detail::emit(out, j, format);
            return Ok;
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code(e.kind());
    }
    return InvalidInput;
}

} // namespace fanoforge::cli
