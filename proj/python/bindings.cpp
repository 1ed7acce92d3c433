#include "geoflow/catalog.hpp"
#include "geoflow/checks.hpp"
#include "geoflow/cli.hpp"
#include "geoflow/error.hpp"
#include "geoflow/expr.hpp"
#include "geoflow/geodesic.hpp"
#include "geoflow/jet.hpp"
#include "geoflow/jet_parse.hpp"
#include "geoflow/lie.hpp"
#include "geoflow/symmetry.hpp"

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <numbers>
#include <sstream>

namespace py = pybind11;
using namespace geoflow;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

GridField to_field(const Array& a, double length) {
    if (a.ndim() != 1) throw Error(ErrorCode::InvalidArgument, "expected a one-dimensional array");
    return GridField(PeriodicGrid(static_cast<std::size_t>(a.size()), length),
                     std::vector<double>(a.data(), a.data() + a.size()));
}

Array to_array(std::span<const double> v) {
    Array out(static_cast<py::ssize_t>(v.size()));
    std::copy(v.begin(), v.end(), out.mutable_data());
    return out;
}

Equation to_equation(const std::string& name) {
    const auto eq = parse_equation(name);
    if (!eq) throw Error(ErrorCode::InvalidArgument, "unknown equation '" + name + "'");
    return *eq;
}

py::dict trajectory_dict(const Trajectory& t) {
    const std::size_t rows = t.snapshots.size(), cols = rows ? t.snapshots.front().size() : 0;
    Array snaps({static_cast<py::ssize_t>(rows), static_cast<py::ssize_t>(cols)});
    for (std::size_t k = 0; k < rows; ++k)
        std::copy(t.snapshots[k].data().begin(), t.snapshots[k].data().end(), snaps.mutable_data() + k * cols);
    std::vector<double> energy, momentum, mass, l2;
    for (const auto& r : t.invariant_log) {
        energy.push_back(r.energy);
        momentum.push_back(r.momentum_mean);
        mass.push_back(r.mass);
        l2.push_back(r.l2);
    }
    py::dict d;
    d["times"] = to_array(t.times);
    d["snapshots"] = snaps;
    d["energy"] = to_array(energy);
    d["momentum_mean"] = to_array(momentum);
    d["mass"] = to_array(mass);
    d["l2"] = to_array(l2);
    d["dt"] = t.dt;
    d["blew_up"] = t.blew_up;
    d["blowup_time"] = t.blowup_time ? py::object(py::float_(*t.blowup_time)) : py::object(py::none());
    d["truncated"] = t.truncated;
    d["warnings"] = t.warnings;
    return d;
}

py::dict invariance_dict(const jet::InvarianceResult& r) {
    py::dict d;
    d["holds"] = r.holds;
    d["raw"] = r.raw.str();
    d["remainder"] = r.remainder.str();
    d["exact_zero"] = r.remainder.is_zero();
    return d;
}

py::dict closure_dict(const jet::ClosureResult& r) {
    py::list structure;
    for (std::size_t i = 0; i < r.dimension && r.closed; ++i)
        for (std::size_t j = 0; j < r.dimension; ++j)
            for (std::size_t k = 0; k < r.dimension; ++k)
                if (!r.structure[i][j][k].is_zero()) structure.append(py::make_tuple(i, j, k, r.structure[i][j][k].str()));
    py::dict d;
    d["closed"] = r.closed;
    d["dimension"] = r.dimension;
    d["structure"] = structure;
    d["witness"] = r.witness ? py::object(py::make_tuple(r.witness->first, r.witness->second)) : py::object(py::none());
    d["witness_bracket"] = r.witness_bracket ? py::object(py::str(r.witness_bracket->str())) : py::object(py::none());
    return d;
}

CircleDiffeo to_diffeo(const Array& lift, double length) {
    if (lift.ndim() != 1) throw Error(ErrorCode::InvalidArgument, "expected a one-dimensional array");
    return CircleDiffeo(PeriodicGrid(static_cast<std::size_t>(lift.size()), length),
                        std::vector<double>(lift.data(), lift.data() + lift.size()));
}

}  // namespace

PYBIND11_MODULE(_geoflow, m) {
    m.doc() = "Geodesic flows on circle diffeomorphism groups and symbolic Lie symmetry checks";

    static py::exception<Error> error(m, "GeoflowError", PyExc_ValueError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::set_error(error, (std::string(to_string(e.code())) + ": " + e.what()).c_str());
        }
    });

    constexpr double two_pi = 2.0 * std::numbers::pi;

    m.def("equations", [] {
        std::vector<std::string> names;
        for (auto eq : {Equation::Hopf, Equation::CamassaHolm, Equation::HunterSaxton, Equation::KdV,
                        Equation::DispersiveCH, Equation::DispersiveHS})
            names.emplace_back(short_name(eq));
        return names;
    });

    m.def(
        "sample",
        [](const std::string& expr, std::size_t n, double length) {
            return to_array(Expression::parse(expr).sample(PeriodicGrid(n, length)).values());
        },
        py::arg("expr"), py::arg("n"), py::arg("length") = two_pi, "Sample an expression in x on the periodic grid.");

    m.def(
        "simulate",
        [](const std::string& equation, const Array& u0, double t_end, double dt, double eps, double length,
           const std::string& scheme, unsigned store_every, bool dealias, bool allow_past_blowup) {
            const auto sch = parse_scheme(scheme);
            if (!sch) throw Error(ErrorCode::InvalidArgument, "unknown scheme '" + scheme + "'");
            SolverOptions o;
            o.dt = dt;
            o.scheme = *sch;
            o.store_every = store_every;
            o.dealias = dealias;
            o.allow_past_blowup = allow_past_blowup;
            const auto field = to_field(u0, length);
            Trajectory t;
            {
                py::gil_scoped_release release;
                t = simulate(EquationConfig::make(to_equation(equation), eps), field, t_end, o);
            }
            return trajectory_dict(t);
        },
        py::arg("equation"), py::arg("u0"), py::arg("t_end"), py::arg("dt") = 1e-3, py::arg("eps") = 1.0,
        py::arg("length") = two_pi, py::arg("scheme") = "ifrk4", py::arg("store_every") = 1, py::arg("dealias") = true,
        py::arg("allow_past_blowup") = false);

    m.def(
        "hopf_blowup_estimate", [](const Array& u0, double length) { return hopf_blowup_estimate(to_field(u0, length)); },
        py::arg("u0"), py::arg("length") = two_pi);

    m.def(
        "invariance_check",
        [](const std::string& pde, const std::string& generator) {
            return invariance_dict(jet::invariance_check(jet::parse_generator(generator), jet::parse_pde(pde)));
        },
        py::arg("pde"), py::arg("generator"), "Exact invariance of a PDE under a point generator (surface syntax).");

    m.def(
        "table_generators",
        [](const std::string& equation, const std::string& f1, const std::string& f2) {
            py::list out;
            for (const auto& g : jet::spanning_generators(to_equation(equation), jet::parse_poly(f1), jet::parse_poly(f2))) {
                py::dict d;
                d["label"] = g.label;
                d["kind"] = jet::to_string(g.kind);
                d["field"] = g.field.str();
                out.append(d);
            }
            return out;
        },
        py::arg("equation"), py::arg("F1") = "t", py::arg("F2") = "1");

    m.def(
        "table_invariance",
        [](const std::string& equation) {
            const auto eq = to_equation(equation);
            const auto pde = jet::equation_pde(eq);
            py::dict out;
            for (const auto& g : jet::spanning_generators(eq)) out[py::str(g.label)] = invariance_dict(jet::invariance_check(g.field, pde));
            return out;
        },
        py::arg("equation"));

    m.def(
        "closure_check",
        [](const std::vector<std::string>& generators) {
            std::vector<jet::PointVectorField> gens;
            for (const auto& g : generators) gens.push_back(jet::parse_generator(g));
            return closure_dict(jet::closure_check(gens));
        },
        py::arg("generators"));

    m.def(
        "table_closure",
        [](const std::string& equation, const std::string& f1, const std::string& f2) {
            std::vector<jet::PointVectorField> gens;
            for (const auto& g : jet::spanning_generators(to_equation(equation), jet::parse_poly(f1), jet::parse_poly(f2)))
                gens.push_back(g.field);
            return closure_dict(jet::closure_check(gens));
        },
        py::arg("equation"), py::arg("F1") = "t", py::arg("F2") = "1");

    m.def(
        "run_suite",
        [](const std::string& name, std::optional<std::uint64_t> seed) {
            const auto rep = run_suite(name, seed.value_or(default_seed()));
            py::list props;
            for (const auto& p : rep.properties) {
                py::dict d;
                d["name"] = p.name;
                d["pass"] = p.pass;
                d["residual"] = p.residual;
                d["tolerance"] = p.tolerance;
                d["samples"] = p.samples;
                d["detail"] = p.detail;
                props.append(d);
            }
            py::dict d;
            d["suite"] = rep.suite;
            d["seed"] = rep.seed;
            d["pass"] = rep.pass();
            d["properties"] = props;
            return d;
        },
        py::arg("name"), py::arg("seed") = py::none());

    m.def(
        "symmetry_consistency",
        [](const std::string& equation, const std::string& generator, double epsilon, const Array& u0, double t_end,
           double dt, double eps, double length) {
            const auto spec = find_symmetry(EquationConfig::make(to_equation(equation), eps), generator);
            const auto field = to_field(u0, length);
            SolverOptions o;
            o.dt = dt;
            ConsistencyReport r;
            {
                py::gil_scoped_release release;
                r = symmetry_consistency_test(spec, epsilon, field, t_end, o);
            }
            py::dict d;
            d["generator_id"] = r.generator_id;
            d["discrepancy"] = r.discrepancy;
            d["residual_times"] = r.residual_times;
            d["transformed_residuals"] = r.transformed_residuals;
            d["original_residuals"] = r.original_residuals;
            d["blew_up"] = r.blew_up;
            return d;
        },
        py::arg("equation"), py::arg("generator"), py::arg("epsilon"), py::arg("u0"), py::arg("t_end") = 0.5,
        py::arg("dt") = 1e-3, py::arg("eps") = 1.0, py::arg("length") = two_pi);

    m.def(
        "ad", [](const Array& u, const Array& v, double length) { return to_array(ad(to_field(u, length), to_field(v, length)).values()); },
        py::arg("u"), py::arg("v"), py::arg("length") = two_pi, "u v_x - v u_x");
    m.def(
        "ad_star",
        [](const Array& u, const Array& mom, double length) {
            return to_array(ad_star(to_field(u, length), to_field(mom, length)).values());
        },
        py::arg("u"), py::arg("m"), py::arg("length") = two_pi, "u m_x + 2 u_x m");
    m.def(
        "pairing", [](const Array& mom, const Array& u, double length) { return pairing(to_field(mom, length), to_field(u, length)); },
        py::arg("m"), py::arg("u"), py::arg("length") = two_pi);
    m.def(
        "gelfand_fuchs",
        [](const Array& u, const Array& v, double length) { return gelfand_fuchs(to_field(u, length), to_field(v, length)); },
        py::arg("u"), py::arg("v"), py::arg("length") = two_pi, "integral of u_x v_xx");
    m.def(
        "bott_thurston",
        [](const Array& phi, const Array& psi, double length) { return bott_thurston(to_diffeo(phi, length), to_diffeo(psi, length)); },
        py::arg("phi"), py::arg("psi"), py::arg("length") = two_pi, "Cocycle of two lifts sampled on the grid.");
    m.def(
        "schwarzian", [](const Array& phi, double length) { return to_array(schwarzian(to_diffeo(phi, length)).values()); },
        py::arg("phi"), py::arg("length") = two_pi);
    m.def(
        "compose",
        [](const Array& phi, const Array& psi, double length) {
            return to_array(to_diffeo(phi, length).compose(to_diffeo(psi, length)).lift_values());
        },
        py::arg("phi"), py::arg("psi"), py::arg("length") = two_pi, "Lift samples of phi o psi.");

    m.def(
        "run_cli",
        [](const std::vector<std::string>& args) {
            std::ostringstream out, err;
            const int status = run_cli(args, out, err);
            return py::make_tuple(status, out.str(), err.str());
        },
        py::arg("args"), "Run the command-line tool in-process; returns (status, stdout, stderr).");
}
