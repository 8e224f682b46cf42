#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "eulerfan/burgers.hpp"
#include "eulerfan/constants.hpp"
#include "eulerfan/euler_map.hpp"
#include "eulerfan/initial_data.hpp"
#include "eulerfan/ode_epsilon.hpp"
#include "eulerfan/profiles.hpp"
#include "eulerfan/subsolution.hpp"

namespace py = pybind11;
using namespace eulerfan;
namespace ct = eulerfan::constants;

namespace {

py::dict report_to_dict(const fan::RiemannReport& rep) {
  py::dict out;
  out["all_pass"] = rep.all_pass;
  py::list checks;
  for (const auto& c : rep.checks) {
    py::dict line;
    line["name"] = c.name;
    line["value"] = c.value;
    line["threshold"] = c.threshold;
    line["pass"] = c.pass;
    checks.append(line);
  }
  out["checks"] = checks;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Compression-wave collapse and generalized fan subsolutions for the "
      "2D isentropic Euler system with p(rho) = rho^2";

  // ---- profiles ----
  m.def("f0", &profiles::f0_eval, py::arg("x"));
  m.def("f0_derivative", &profiles::f0_derivative, py::arg("x"), py::arg("n"));

  py::enum_<profiles::DatumMode>(m, "DatumMode")
      .value("Collapse", profiles::DatumMode::Collapse)
      .value("Initial", profiles::DatumMode::Initial);

  py::class_<profiles::LambdaProfile>(m, "LambdaProfile")
      .def("value", &profiles::LambdaProfile::value)
      .def("derivative", &profiles::LambdaProfile::derivative)
      .def("breakpoints", &profiles::LambdaProfile::breakpoints)
      .def_readonly("lambda_minus", &profiles::LambdaProfile::lambda_minus)
      .def_readonly("lambda_plus", &profiles::LambdaProfile::lambda_plus)
      .def_readonly("zeta1", &profiles::LambdaProfile::zeta1)
      .def_readonly("zeta2", &profiles::LambdaProfile::zeta2);

  m.def(
      "compression_datum",
      [](double lambda_minus, double lambda_plus, double T, double zeta1,
         double zeta2, double a_minus, double a_plus, double zeta_bar,
         profiles::DatumMode mode) {
        const auto f0p = profiles::F0Params::reference(
            lambda_minus, lambda_plus, T, zeta2, zeta_bar, a_minus, a_plus);
        return profiles::build_compression_datum(lambda_minus, lambda_plus, T,
                                                 zeta1, zeta2, f0p, {}, mode);
      },
      py::arg("lambda_minus"), py::arg("lambda_plus"), py::arg("T"),
      py::arg("zeta1"), py::arg("zeta2"), py::arg("a_minus") = 0.1,
      py::arg("a_plus") = 0.1, py::arg("zeta_bar") = 0.075,
      py::arg("mode") = profiles::DatumMode::Initial);
  m.def("serialize_profile", &profiles::serialize_profile);
  m.def("deserialize_profile", &profiles::deserialize_profile);

  // ---- burgers ----
  py::class_<burgers::CharSolution>(m, "CharSolution")
      .def(py::init([](const profiles::LambdaProfile& p, double T,
                       double tol) {
             return burgers::CharSolution{p, T, tol};
           }),
           py::arg("profile"), py::arg("T"), py::arg("root_tolerance") = 1e-12)
      .def("foot",
           [](const burgers::CharSolution& s, double t, double x2) {
             return burgers::char_foot(t, x2, s);
           })
      .def("value",
           [](const burgers::CharSolution& s, double t, double x2) {
             return burgers::eval_solution(t, x2, s);
           })
      .def("dx",
           [](const burgers::CharSolution& s, double t, double x2, int n) {
             return burgers::eval_dx(t, x2, s, n);
           },
           py::arg("t"), py::arg("x2"), py::arg("n") = 1);
  m.def("shock_bounds", [](double lm, double lp, double z2, double T) {
    const auto sb = burgers::shock_bounds(lm, lp, z2, T);
    return py::make_tuple(sb.s_minus_slope, sb.s_plus_slope);
  });

  // ---- euler map ----
  m.def("wave_from_state", [](double rho, double m1, double m2) {
    const auto w = euler::wave_from_state(euler::EulerState(rho, m1, m2));
    py::dict d;
    d["lambda1"] = w.lambda1;
    d["lambda2"] = w.lambda2;
    d["w1"] = w.w1;
    d["w2"] = w.w2;
    return d;
  });
  m.def("state_from_wave", [](double lambda1, double w1) {
    const auto s = euler::state_from_wave(lambda1, w1);
    return py::make_tuple(s.rho, s.m1, s.m2);
  });
  m.def("energy_density", [](double rho, double m1, double m2) {
    return euler::energy_density(euler::EulerState(rho, m1, m2));
  });

  // ---- subsolution ----
  py::class_<fan::FanConstants>(m, "FanConstants")
      .def(py::init<>())
      .def_readwrite("rho1", &fan::FanConstants::rho1)
      .def_readwrite("K", &fan::FanConstants::K);

  py::class_<fan::InterfaceSolution>(m, "InterfaceSolution")
      .def_readonly("nu_minus", &fan::InterfaceSolution::nu_minus)
      .def_readonly("nu_plus", &fan::InterfaceSolution::nu_plus)
      .def_readonly("beta", &fan::InterfaceSolution::beta)
      .def_readonly("eps2L", &fan::InterfaceSolution::eps2L)
      .def_readonly("eps2R", &fan::InterfaceSolution::eps2R)
      .def_readonly("eps1L", &fan::InterfaceSolution::eps1L)
      .def_readonly("eps1R", &fan::InterfaceSolution::eps1R)
      .def_readonly("C1", &fan::InterfaceSolution::C1)
      .def("eps1", &fan::InterfaceSolution::eps1);

  m.def(
      "solve_interface",
      [](double rm, double mm, double rp, double mp, double eps_delta,
         const fan::FanConstants& c) {
        return fan::solve_interface(fan::InterfaceStates(rm, mm, rp, mp), c,
                                    eps_delta);
      },
      py::arg("rho_minus"), py::arg("m_minus2"), py::arg("rho_plus"),
      py::arg("m_plus2"), py::arg("eps_delta") = 0.0,
      py::arg("constants") = fan::FanConstants{});
  m.def(
      "rh_residuals",
      [](double rm, double mm, double rp, double mp,
         const fan::InterfaceSolution& sol, const fan::FanConstants& c) {
        const auto r =
            fan::rh_residuals(fan::InterfaceStates(rm, mm, rp, mp), c, sol);
        return std::vector<double>(r.begin(), r.end());
      },
      py::arg("rho_minus"), py::arg("m_minus2"), py::arg("rho_plus"),
      py::arg("m_plus2"), py::arg("solution"),
      py::arg("constants") = fan::FanConstants{});
  m.def(
      "admissibility_margins",
      [](double rm, double mm, double rp, double mp,
         const fan::InterfaceSolution& sol, const fan::FanConstants& c) {
        const auto r = fan::admissibility_margins(
            fan::InterfaceStates(rm, mm, rp, mp), c, sol);
        return py::make_tuple(r[0], r[1]);
      },
      py::arg("rho_minus"), py::arg("m_minus2"), py::arg("rho_plus"),
      py::arg("m_plus2"), py::arg("solution"),
      py::arg("constants") = fan::FanConstants{});
  m.def("epsilon1_from_K", &fan::epsilon1_from_K);
  m.def(
      "verify_riemann",
      [](const fan::FanConstants& c, double zeta2_over_T) {
        return report_to_dict(fan::verify_riemann_subsolution(c, zeta2_over_T));
      },
      py::arg("constants") = fan::FanConstants{},
      py::arg("zeta2_over_T") = 0.1);

  // ---- traces and the fixed point ----
  py::class_<ode::TraceSpec>(m, "TraceSpec")
      .def(py::init<double, double, double>(), py::arg("zeta2_over_T"),
           py::arg("delta"), py::arg("delta_prime"))
      .def_static("constant_reference", &ode::TraceSpec::constant_reference)
      .def("trace",
           [](const ode::TraceSpec& s, bool left, double t) {
             return s.trace(left ? ode::Side::Left : ode::Side::Right, t);
           })
      .def_readonly("delta", &ode::TraceSpec::delta)
      .def_readonly("delta_prime", &ode::TraceSpec::delta_prime)
      .def_readonly("zeta2_over_T", &ode::TraceSpec::zeta2_over_T);

  m.def(
      "boundary_traces",
      [](double t, const ode::TraceSpec& spec) {
        const auto s = ode::boundary_traces(t, spec);
        return py::make_tuple(s.rho_minus_nu, s.m_minus2_nu, s.rho_plus_nu,
                              s.m_plus2_nu);
      },
      py::arg("t"), py::arg("spec"));
  m.def("coeff_f", &ode::coeff_f, py::arg("t"), py::arg("eps_delta"),
        py::arg("spec"), py::arg("constants") = fan::FanConstants{});
  m.def("coeff_g", &ode::coeff_g, py::arg("t"), py::arg("eps_delta"),
        py::arg("spec"), py::arg("constants") = fan::FanConstants{});

  py::class_<ode::EpsDeltaSolution>(m, "EpsDeltaSolution")
      .def_readonly("grid", &ode::EpsDeltaSolution::grid)
      .def_readonly("values", &ode::EpsDeltaSolution::values)
      .def_readonly("iterations", &ode::EpsDeltaSolution::iterations)
      .def_readonly("sup_distances", &ode::EpsDeltaSolution::sup_distances)
      .def_readonly("measured_q", &ode::EpsDeltaSolution::measured_q)
      .def_readonly("bound_constant", &ode::EpsDeltaSolution::bound_constant)
      .def_readonly("max_abs_eps", &ode::EpsDeltaSolution::max_abs_eps)
      .def("eps_at", &ode::EpsDeltaSolution::eps_at);

  m.def(
      "picard_solve",
      [](const ode::TraceSpec& spec, double T_end, double t_min, int grid_size,
         double tol, const fan::FanConstants& c) {
        ode::PicardOptions opt;
        opt.T_end = T_end;
        opt.t_min = t_min;
        opt.grid_size = grid_size;
        opt.tol = tol;
        return ode::picard_solve(spec, c, opt);
      },
      py::arg("spec"), py::arg("T_end") = 0.03, py::arg("t_min") = 1e-8,
      py::arg("grid_size") = 2048, py::arg("tol") = 1e-10,
      py::arg("constants") = fan::FanConstants{});

  // ---- fan geometry and the reconstructed datum ----
  py::class_<datum::FanPartition, std::shared_ptr<datum::FanPartition>>(
      m, "FanPartition")
      .def_readonly("t", &datum::FanPartition::t)
      .def_readonly("nu_tilde_minus", &datum::FanPartition::nu_tilde_minus)
      .def_readonly("nu_tilde_plus", &datum::FanPartition::nu_tilde_plus)
      .def_readonly("s_minus_slope", &datum::FanPartition::s_minus_slope)
      .def_readonly("s_plus_slope", &datum::FanPartition::s_plus_slope)
      .def_readonly("sandwich_ok", &datum::FanPartition::sandwich_ok)
      .def("nu_tilde", [](const datum::FanPartition& f, bool left, double t) {
        return f.nu_tilde(left ? ode::Side::Left : ode::Side::Right, t);
      });

  m.def(
      "fan_curves",
      [](const ode::EpsDeltaSolution& eps, const ode::TraceSpec& spec,
         const fan::FanConstants& c) {
        return std::make_shared<datum::FanPartition>(
            datum::fan_curves(eps, spec, c));
      },
      py::arg("eps"), py::arg("spec"),
      py::arg("constants") = fan::FanConstants{});

  m.def(
      "margin_horizon",
      [](const ode::EpsDeltaSolution& eps, const ode::TraceSpec& spec,
         const fan::FanConstants& c) {
        const auto sweep = datum::margin_horizon(eps, spec, c);
        py::dict d;
        d["t"] = sweep.t;
        d["margin_left"] = sweep.margin_left;
        d["margin_right"] = sweep.margin_right;
        d["eps1"] = sweep.eps1;
        d["eps2L"] = sweep.eps2L;
        d["eps2R"] = sweep.eps2R;
        d["delta0"] = sweep.delta0;
        return d;
      },
      py::arg("eps"), py::arg("spec"),
      py::arg("constants") = fan::FanConstants{});

  m.def("pullback_time", [](bool left, const datum::FanPartition& f,
                            double x) {
    return datum::pullback_time(left ? ode::Side::Left : ode::Side::Right, f,
                                x);
  });

  m.def(
      "hypothesis_check",
      [](bool left, const datum::FanPartition& f, double abs_x_min,
         double abs_x_max) {
        const auto rep = datum::hypothesis_check(
            left ? ode::Side::Left : ode::Side::Right, f, abs_x_min,
            abs_x_max);
        py::dict d;
        d["origin_ok"] = rep.origin_ok;
        d["slope_sign_ok"] = rep.slope_sign_ok;
        d["slope_at_zero"] = rep.slope_at_zero;
        d["envelope_max_ratio"] = rep.envelope_max_ratio;
        d["envelope_growth"] = rep.envelope_growth;
        d["pass"] = rep.pass;
        return d;
      },
      py::arg("left"), py::arg("fan"), py::arg("abs_x_min") = 1e-8,
      py::arg("abs_x_max") = 1e-2);

  py::class_<datum::FanDatum>(m, "FanDatum")
      .def_readonly("zeta1", &datum::FanDatum::zeta1)
      .def_readonly("zeta_bar_left", &datum::FanDatum::zeta_bar_left)
      .def_readonly("zeta_bar_right", &datum::FanDatum::zeta_bar_right)
      .def_readonly("b_minus", &datum::FanDatum::b_minus)
      .def_readonly("b_plus", &datum::FanDatum::b_plus)
      .def_readonly("flanks_monotone", &datum::FanDatum::flanks_monotone)
      .def("lambda0", &datum::FanDatum::lambda0)
      .def("state0", [](const datum::FanDatum& d, double x) {
        const auto s = d.state0(x);
        return py::make_tuple(s.rho, s.m1, s.m2);
      });

  m.def(
      "build_initial_datum",
      [](std::shared_ptr<datum::FanPartition> fan, double zeta1) {
        return datum::build_initial_datum(fan, zeta1);
      },
      py::arg("fan"), py::arg("zeta1") = 0.3);

  m.def(
      "round_trip_check",
      [](const datum::FanDatum& d, double t_lo, double t_hi, int samples) {
        const auto rt = datum::round_trip_check(d, t_lo, t_hi, samples);
        return py::make_tuple(rt.max_deviation_left, rt.max_deviation_right);
      },
      py::arg("datum"), py::arg("t_lo") = 1e-4, py::arg("t_hi") = 0.03,
      py::arg("samples") = 120);

  // ---- reference constants ----
  py::dict refs;
  refs["nu_minus"] = ct::nu_minus_ref;
  refs["nu_plus"] = ct::nu_plus_ref;
  refs["beta"] = ct::beta_ref;
  refs["eps1"] = ct::eps1_ref;
  refs["eps2"] = ct::eps2_ref;
  refs["rho1"] = ct::rho1_ref;
  refs["K"] = ct::K_ref;
  refs["w1"] = ct::w1_ref;
  m.attr("reference") = refs;
}
