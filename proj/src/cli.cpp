#include "geoflow/cli.hpp"

#include "geoflow/catalog.hpp"
#include "geoflow/checks.hpp"
#include "geoflow/error.hpp"
#include "geoflow/expr.hpp"
#include "geoflow/io.hpp"
#include "geoflow/jet.hpp"
#include "geoflow/jet_parse.hpp"
#include "geoflow/lie.hpp"
#include "geoflow/symmetry.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <optional>

namespace geoflow {

using nlohmann::json;

namespace {

// Raised for bad input that should be followed by the subcommand's usage text.
struct UsageError {
    std::string code;
    std::string message;
};

std::string one_line(std::string s) {
    std::replace(s.begin(), s.end(), '\n', ' ');
    return s;
}

void print_error(std::ostream& err, std::string_view code, const std::string& msg) {
    err << "error: " << code << ": " << one_line(msg) << "\n";
}

const char* const kRunKeys[] = {"equation", "ic", "n", "length", "dt", "t-end", "scheme", "eps", "store-every"};

// Numeric run options shared by simulate and symmetry-check. Values are kept
// as text and applied through RunConfig::set so file and flag errors agree.
struct RunOptions {
    std::map<std::string, std::string> text;
    std::string config_file;
    bool no_dealias = false;
    bool allow_past_blowup = false;
    std::string output = "geoflow";

    void attach(CLI::App* app) {
        app->add_option("--config", config_file, "key = value file applied before the flags");
        app->add_option("--equation", text["equation"], "hopf, ch, hs, kdv, dch or dhs");
        app->add_option("--ic", text["ic"], "initial condition, an expression in x");
        app->add_option("--n", text["n"], "grid size (even)");
        app->add_option("--length", text["length"], "circumference (default 2*pi)");
        app->add_option("--dt", text["dt"], "time step");
        app->add_option("--t-end", text["t-end"], "final time");
        app->add_option("--scheme", text["scheme"], "rk4 or ifrk4");
        app->add_option("--eps", text["eps"], "central parameter of the Virasoro equations");
        app->add_option("--store-every", text["store-every"], "store every k-th step");
        app->add_flag("--no-dealias", no_dealias, "disable the 2/3 filter");
        app->add_flag("--allow-past-blowup", allow_past_blowup, "run Hopf past 0.9 t*");
        app->add_option("--output", output, "output prefix")->capture_default_str();
    }

    RunConfig build(const CLI::App* app, RunConfig cfg) const {
        try {
            if (!config_file.empty()) apply_config_file(cfg, config_file);
            for (const char* key : kRunKeys)
                if (app->count(std::string("--") + key) > 0) cfg.set(key, text.at(key));
            if (no_dealias) cfg.dealias = false;
            if (allow_past_blowup) cfg.allow_past_blowup = true;
            cfg.validate();
        } catch (const Error& e) {
            throw UsageError{to_string(e.code()), e.what()};
        }
        return cfg;
    }
};

json config_json(const RunConfig& c) {
    return {{"equation", c.equation}, {"n", c.n},         {"length", c.length},
            {"dt", c.dt},             {"t_end", c.t_end}, {"scheme", c.scheme},
            {"eps", c.eps},           {"ic", c.initial_condition}};
}

void write_report(const std::string& prefix, const json& report, std::ostream& out) {
    const std::string path = prefix + ".report.json";
    write_text(path, report.dump(2) + "\n");
    out << "wrote " << path << "\n";
}

Equation equation_arg(const std::string& name) {
    const auto eq = parse_equation(name);
    if (!eq) throw UsageError{"E_USAGE", "unknown equation '" + name + "' (expected hopf, ch, hs, kdv, dch or dhs)"};
    return *eq;
}

// ---------------------------------------------------------------- simulate

int cmd_simulate(const CLI::App* app, const RunOptions& opts, std::ostream& out, std::ostream& err) {
    const RunConfig cfg = opts.build(app, RunConfig{});
    const auto u0 = cfg.initial_field();
    const auto start = std::chrono::steady_clock::now();
    const Trajectory traj = simulate(cfg.equation_config(), u0, cfg.t_end, cfg.solver_options());
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    for (const auto& w : traj.warnings) err << "warning: " << one_line(w) << "\n";
    const std::string csv = opts.output + ".traj.csv", summary = opts.output + ".summary.json";
    write_trajectory_csv(csv, traj);
    write_text(summary, summary_json(cfg, traj, wall));
    out << "wrote " << csv << "\n" << "wrote " << summary << "\n";

    const auto& first = traj.invariant_log.front();
    const auto& last = traj.invariant_log.back();
    out << cfg.equation << ": " << traj.times.size() << " snapshots to t = " << traj.times.back()
        << (traj.truncated ? " (truncated)" : "") << ", energy " << first.energy << " -> " << last.energy << "\n";

    if (traj.blew_up) {
        std::ostringstream msg;
        msg << "non-finite state at t = " << traj.blowup_time.value_or(traj.times.back());
        print_error(err, "E_BLOW_UP", msg.str());
        return 1;
    }
    return 0;
}

// ---------------------------------------------------------- symmetry-check

struct SymmetryArgs {
    std::string generator;
    double epsilon = 0.1;
    double threshold = 1e-4;
};

int cmd_symmetry(const CLI::App* app, const RunOptions& opts, const SymmetryArgs& a, std::ostream& out) {
    RunConfig base;
    base.t_end = 0.5;
    base.initial_condition = "sin(x) + 0.3*cos(2*x)";
    const RunConfig cfg = opts.build(app, base);
    if (!std::isfinite(a.threshold) || a.threshold <= 0.0)
        throw UsageError{"E_USAGE", "--threshold must be a positive number"};

    const SymmetrySpec spec = find_symmetry(cfg.equation_config(), a.generator);
    const auto rep = symmetry_consistency_test(spec, a.epsilon, cfg.initial_field(), cfg.t_end, cfg.solver_options());
    const bool pass = !rep.blew_up && rep.discrepancy < a.threshold;

    json j;
    j["generator_id"] = rep.generator_id;
    j["kind"] = jet::to_string(spec.kind);
    j["generator"] = spec.generator.str();
    j["group_action"] = spec.group_action;
    j["solution_rule"] = spec.solution_rule;
    j["epsilon"] = rep.epsilon;
    j["config"] = config_json(cfg);
    j["dt"] = rep.dt;
    j["discrepancy"] = rep.discrepancy;
    j["threshold"] = a.threshold;
    j["residual_times"] = rep.residual_times;
    j["transformed_residuals"] = rep.transformed_residuals;
    j["original_residuals"] = rep.original_residuals;
    j["blew_up"] = rep.blew_up;
    j["pass"] = pass;
    write_report(opts.output, j, out);

    out << rep.generator_id << " (" << jet::to_string(spec.kind) << ", s = " << a.epsilon
        << "): discrepancy " << rep.discrepancy << (pass ? " < " : " >= ") << a.threshold << "\n";
    for (std::size_t k = 0; k < rep.residual_times.size(); ++k)
        out << "  residual at t = " << rep.residual_times[k] << ": transformed " << rep.transformed_residuals[k]
            << ", original " << rep.original_residuals[k] << "\n";
    return pass ? 0 : 1;
}

// -------------------------------------------------------- invariance-check

struct InvarianceArgs {
    std::string equation, generator, pde, f1 = "t", f2 = "1", output = "geoflow";
    bool no_mutants = false;
};

struct HsParams {
    jet::JetPoly f1, f2;
};

HsParams hs_params(const std::string& f1, const std::string& f2) {
    HsParams p{jet::parse_poly(f1), jet::parse_poly(f2)};
    for (const auto* q : {&p.f1, &p.f2})
        for (const auto& v : q->variables())
            if (v.kind() != jet::JetVar::Kind::T)
                throw Error(ErrorCode::InvalidArgument, "F1 and F2 must be polynomials in t alone");
    return p;
}

int cmd_invariance(const InvarianceArgs& a, std::ostream& out) {
    json checks = json::array();
    std::size_t failed = 0, mutants = 0, rejected = 0;

    auto record = [&](const std::string& equation, const std::string& label, const jet::PointVectorField& v,
                      const jet::PdeForm& pde) {
        const auto r = jet::invariance_check(v, pde);
        const bool zero = r.remainder.is_zero();
        failed += !zero;
        checks.push_back({{"equation", equation},
                          {"generator", label},
                          {"field", v.str()},
                          {"holds", zero},
                          {"raw", r.raw.str()},
                          {"remainder", r.remainder.str()}});
        out << equation << "." << label << ": " << (zero ? "holds" : "FAILS") << ", remainder " << r.remainder.str()
            << "\n";
    };
    auto mutate = [&](const jet::PointVectorField& v, const jet::PdeForm& pde) {
        for (const auto& m : jet::sign_flip_mutants(v)) {
            ++mutants;
            rejected += !jet::invariance_check(m, pde).holds;
        }
    };

    if (!a.pde.empty()) {
        if (a.generator.empty()) throw UsageError{"E_USAGE", "--pde needs --generator"};
        const auto pde = jet::parse_pde(a.pde);
        record("custom", "v", jet::parse_generator(a.generator), pde);
    } else {
        std::vector<Equation> eqs;
        if (!a.equation.empty()) eqs.push_back(equation_arg(a.equation));
        else eqs = {Equation::CamassaHolm, Equation::HunterSaxton, Equation::KdV, Equation::DispersiveCH,
                    Equation::DispersiveHS};
        if (!a.generator.empty() && a.equation.empty()) throw UsageError{"E_USAGE", "--generator needs --equation or --pde"};
        const auto hs = hs_params(a.f1, a.f2);
        for (Equation eq : eqs) {
            const auto pde = jet::equation_pde(eq);
            const auto gens = jet::spanning_generators(eq, hs.f1, hs.f2);
            const std::string name(short_name(eq));
            if (!a.generator.empty()) {
                const auto it = std::find_if(gens.begin(), gens.end(), [&](const auto& g) { return g.label == a.generator; });
                const auto field = it != gens.end() ? it->field : jet::parse_generator(a.generator);
                record(name, it != gens.end() ? it->label : "custom", field, pde);
                if (!a.no_mutants) mutate(field, pde);
                continue;
            }
            for (const auto& g : gens) {
                record(name, g.label, g.field, pde);
                if (!a.no_mutants) mutate(g.field, pde);
            }
            if (!a.no_mutants) mutate(jet::general_generator(eq), pde);
        }
    }

    const bool pass = failed == 0 && rejected == mutants;
    json j = {{"checks", checks}, {"checked", checks.size()}, {"failed", failed}, {"pass", pass}};
    if (mutants > 0) j["mutants"] = {{"total", mutants}, {"rejected", rejected}};
    out << checks.size() - failed << "/" << checks.size() << " exact-zero remainders";
    if (mutants > 0) out << ", " << rejected << "/" << mutants << " sign-flip mutants rejected";
    out << "\n";
    write_report(a.output, j, out);
    return pass ? 0 : 1;
}

// ----------------------------------------------------------- closure-check

struct ClosureArgs {
    std::string equation, generators, f1 = "t", f2 = "1", output = "geoflow";
};

json closure_json(const std::string& name, const jet::ClosureResult& r, std::ostream& out) {
    json structure = json::array();
    out << name << ": " << (r.closed ? "closed" : "not closed") << ", dimension " << r.dimension << "\n";
    if (r.closed) {
        for (std::size_t i = 0; i < r.dimension; ++i)
            for (std::size_t j = i + 1; j < r.dimension; ++j) {
                std::string rhs;
                for (std::size_t k = 0; k < r.dimension; ++k) {
                    const auto& c = r.structure[i][j][k];
                    if (c.is_zero()) continue;
                    structure.push_back({i + 1, j + 1, k + 1, c.str()});
                    rhs += (rhs.empty() ? "" : " + ") + ("(" + c.str() + ")*v" + std::to_string(k + 1));
                }
                out << "  [v" << i + 1 << ",v" << j + 1 << "] = " << (rhs.empty() ? "0" : rhs) << "\n";
            }
    }
    json j = {{"name", name}, {"closed", r.closed}, {"dimension", r.dimension}, {"structure", structure}};
    if (r.witness) {
        j["witness"] = {r.witness->first + 1, r.witness->second + 1};
        j["witness_bracket"] = r.witness_bracket->str();
        out << "  [v" << r.witness->first + 1 << ",v" << r.witness->second + 1 << "] = " << r.witness_bracket->str()
            << " lies outside the span\n";
    }
    return j;
}

int cmd_closure(const ClosureArgs& a, std::ostream& out) {
    json sets = json::array();
    bool all_closed = true;
    auto run = [&](const std::string& name, const std::vector<jet::PointVectorField>& gens) {
        const auto r = jet::closure_check(gens);
        all_closed = all_closed && r.closed;
        sets.push_back(closure_json(name, r, out));
    };
    if (!a.generators.empty()) {
        std::vector<jet::PointVectorField> gens;
        std::size_t pos = 0;
        while (pos <= a.generators.size()) {
            const auto end = std::min(a.generators.find(';', pos), a.generators.size());
            const std::string piece = a.generators.substr(pos, end - pos);
            if (piece.find_first_not_of(" \t") != std::string::npos) gens.push_back(jet::parse_generator(piece));
            pos = end + 1;
        }
        if (gens.empty()) throw UsageError{"E_USAGE", "--generators is empty"};
        run("custom", gens);
    } else {
        std::vector<Equation> eqs;
        if (!a.equation.empty()) eqs.push_back(equation_arg(a.equation));
        else eqs = {Equation::CamassaHolm, Equation::HunterSaxton, Equation::KdV, Equation::DispersiveCH,
                    Equation::DispersiveHS};
        const auto hs = hs_params(a.f1, a.f2);
        for (Equation eq : eqs) {
            std::vector<jet::PointVectorField> gens;
            for (const auto& g : jet::spanning_generators(eq, hs.f1, hs.f2)) gens.push_back(g.field);
            run(std::string(short_name(eq)), gens);
        }
    }
    write_report(a.output, {{"sets", sets}, {"closed", all_closed}}, out);
    return all_closed ? 0 : 1;
}

// ----------------------------------------------------------- algebra-check

int cmd_algebra(const std::string& suite, const std::string& output, std::ostream& out) {
    const auto& names = suite_names();
    if (std::find(names.begin(), names.end(), suite) == names.end()) {
        std::string list;
        for (const auto& n : names) list += (list.empty() ? "" : ", ") + n;
        throw UsageError{"E_USAGE", "unknown suite '" + suite + "' (expected one of " + list + ")"};
    }
    const auto rep = run_suite(suite);
    json props = json::array();
    for (const auto& p : rep.properties) {
        props.push_back({{"name", p.name},
                         {"pass", p.pass},
                         {"residual", p.residual},
                         {"tolerance", p.tolerance},
                         {"samples", p.samples},
                         {"detail", p.detail}});
        out << (p.pass ? "PASS " : "FAIL ") << p.name << ": residual " << p.residual << " (tolerance " << p.tolerance
            << ", " << p.samples << " samples)";
        if (!p.detail.empty()) out << "; " << p.detail;
        out << "\n";
    }
    out << suite << " (seed " << rep.seed << "): " << (rep.pass() ? "all properties hold" : "FAILED") << "\n";
    write_report(output, {{"suite", suite}, {"seed", rep.seed}, {"properties", props}, {"pass", rep.pass()}}, out);
    return rep.pass() ? 0 : 1;
}

// ----------------------------------------------------------- cocycle-check

struct CocycleArgs {
    std::string u, v, w, phi, psi, chi, output = "geoflow", length;
    std::size_t n = 128;
};

int cmd_cocycle(const CocycleArgs& a, std::ostream& out) {
    const bool fields = !a.u.empty() || !a.v.empty() || !a.w.empty();
    const bool maps = !a.phi.empty() || !a.psi.empty() || !a.chi.empty();
    if (!fields && !maps) throw UsageError{"E_USAGE", "give --u and --v, or --phi and --psi"};
    if (fields && (a.u.empty() || a.v.empty())) throw UsageError{"E_USAGE", "--u and --v go together"};
    if (maps && (a.phi.empty() || a.psi.empty())) throw UsageError{"E_USAGE", "--phi and --psi go together"};
    if (a.n < 8 || a.n % 2) throw UsageError{"E_USAGE", "--n must be an even integer >= 8"};
    const auto grid = make_grid(a.n);
    json j = {{"n", a.n}};
    bool pass = true;

    if (fields) {
        const auto u = Expression::parse(a.u).sample(grid), v = Expression::parse(a.v).sample(grid);
        const double omega = gelfand_fuchs(u, v);
        j["gelfand_fuchs"] = omega;
        out << "omega(u, v) = " << omega << "\n";
        if (!a.w.empty()) {
            const auto w = Expression::parse(a.w).sample(grid);
            const double r = std::abs(gelfand_fuchs(ad(u, v), w) + gelfand_fuchs(ad(w, u), v) + gelfand_fuchs(ad(v, w), u));
            j["gelfand_fuchs_identity_residual"] = r;
            pass = pass && r < 1e-9;
            out << "Gel'fand-Fuchs cocycle identity residual " << r << "\n";
        }
    }
    if (maps) {
        auto lift = [&](const std::string& text) {
            const auto e = Expression::parse(text);
            return CircleDiffeo::from_lift(grid, [&e](double x) { return e(x); });
        };
        const auto phi = lift(a.phi), psi = lift(a.psi);
        const double b = bott_thurston(phi, psi);
        j["bott_thurston"] = b;
        out << "B(phi, psi) = " << b << "\n";
        if (!a.chi.empty()) {
            const auto chi = lift(a.chi);
            const double r = std::abs(bott_thurston(phi.compose(psi), chi) + bott_thurston(phi, psi) -
                                      bott_thurston(phi, psi.compose(chi)) - bott_thurston(psi, chi));
            j["bott_thurston_identity_residual"] = r;
            pass = pass && r < 1e-7;
            out << "Bott-Thurston cocycle identity residual " << r << "\n";
        }
    }
    j["pass"] = pass;
    write_report(a.output, j, out);
    return pass ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Geodesic flows on the diffeomorphism and Virasoro-Bott groups", "geoflow"};
    app.require_subcommand(1);

    RunOptions sim_opts, sym_opts;
    auto* sim = app.add_subcommand("simulate", "integrate a geodesic equation and write trajectory and summary");
    sim_opts.attach(sim);

    SymmetryArgs sym_args;
    auto* sym = app.add_subcommand("symmetry-check", "compare a transformed solution with a re-simulation");
    sym_opts.attach(sym);
    sym->add_option("--generator", sym_args.generator, "generator label (v1, v2, ...) or id (kdv.v3)")->required();
    sym->add_option("--epsilon", sym_args.epsilon, "group parameter")->capture_default_str();
    sym->add_option("--threshold", sym_args.threshold, "largest acceptable discrepancy")->capture_default_str();

    InvarianceArgs inv_args;
    auto* inv = app.add_subcommand("invariance-check", "exact symbolic invariance of generators");
    inv->add_option("--equation", inv_args.equation, "restrict to one equation");
    inv->add_option("--generator", inv_args.generator, "label (v1, ...) or surface syntax");
    inv->add_option("--pde", inv_args.pde, "equation in surface syntax, e.g. 'u_t + u*u_x = 0'");
    inv->add_option("--F1", inv_args.f1, "F1(t) for the Hunter-Saxton families")->capture_default_str();
    inv->add_option("--F2", inv_args.f2, "F2(t) for the Hunter-Saxton families")->capture_default_str();
    inv->add_flag("--no-mutants", inv_args.no_mutants, "skip the sign-flip mutation suite");
    inv->add_option("--output", inv_args.output, "output prefix")->capture_default_str();

    ClosureArgs clo_args;
    auto* clo = app.add_subcommand("closure-check", "closure of generator spans under the bracket");
    clo->add_option("--equation", clo_args.equation, "restrict to one equation");
    clo->add_option("--generators", clo_args.generators, "';'-separated generators in surface syntax");
    clo->add_option("--F1", clo_args.f1, "F1(t) for the Hunter-Saxton families")->capture_default_str();
    clo->add_option("--F2", clo_args.f2, "F2(t) for the Hunter-Saxton families")->capture_default_str();
    clo->add_option("--output", clo_args.output, "output prefix")->capture_default_str();

    std::string suite, alg_output = "geoflow";
    auto* alg = app.add_subcommand("algebra-check", "property suites; GEOFLOW_SEED fixes the random seed");
    alg->add_option("suite", suite, "diffeo-actions, virasoro, cocycles, invariance or closure")->required();
    alg->add_option("--output", alg_output, "output prefix")->capture_default_str();

    CocycleArgs coc_args;
    auto* coc = app.add_subcommand("cocycle-check", "evaluate the Gel'fand-Fuchs and Bott-Thurston cocycles");
    coc->add_option("--u", coc_args.u, "vector field, an expression in x");
    coc->add_option("--v", coc_args.v, "vector field");
    coc->add_option("--w", coc_args.w, "third field: also report the cocycle identity");
    coc->add_option("--phi", coc_args.phi, "lift of a circle diffeomorphism, e.g. 'x + 0.2*sin(x)'");
    coc->add_option("--psi", coc_args.psi, "second lift");
    coc->add_option("--chi", coc_args.chi, "third lift: also report the group cocycle identity");
    coc->add_option("--n", coc_args.n, "grid size")->capture_default_str();
    coc->add_option("--output", coc_args.output, "output prefix")->capture_default_str();

    const CLI::App* active = &app;
    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
        if (!app.get_subcommands().empty()) active = app.get_subcommands().front();

        if (sim->parsed()) return cmd_simulate(sim, sim_opts, out, err);
        if (sym->parsed()) {
            if (sym->count("--equation") == 0) throw UsageError{"E_USAGE", "--equation is required"};
            return cmd_symmetry(sym, sym_opts, sym_args, out);
        }
        if (inv->parsed()) return cmd_invariance(inv_args, out);
        if (clo->parsed()) return cmd_closure(clo_args, out);
        if (alg->parsed()) return cmd_algebra(suite, alg_output, out);
        if (coc->parsed()) return cmd_cocycle(coc_args, out);
        throw UsageError{"E_USAGE", "no subcommand"};
    } catch (const CLI::CallForHelp&) {
        const auto subs = app.get_subcommands();
        out << (subs.empty() ? app.help() : subs.front()->help());
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        const auto subs = app.get_subcommands();
        print_error(err, "E_USAGE", e.what());
        err << (subs.empty() ? app.help() : subs.front()->help());
        return 2;
    } catch (const UsageError& e) {
        print_error(err, e.code, e.message);
        err << active->help();
        return 2;
    } catch (const Error& e) {
        print_error(err, to_string(e.code()), e.what());
        return e.code() == ErrorCode::BlowUp ? 1 : 2;
    } catch (const std::exception& e) {
        print_error(err, "E_INTERNAL", e.what());
        return 2;
    }
}

}  // namespace geoflow
