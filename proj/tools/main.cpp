#include <cmath>
#include <iostream>
#include <memory>

#include "CLI11.hpp"
#include "eulerfan/burgers.hpp"
#include "eulerfan/initial_data.hpp"
#include "eulerfan/io.hpp"
#include "eulerfan/ode_epsilon.hpp"
#include "eulerfan/profiles.hpp"
#include "eulerfan/scenario.hpp"
#include "eulerfan/subsolution.hpp"

namespace ef = eulerfan;
using ef::scenario::ScenarioConfig;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailure = 2;
constexpr int kExitConfigError = 3;

struct Pipeline {
  ef::ode::TraceSpec spec;
  ef::fan::FanConstants consts;
  ef::ode::EpsDeltaSolution eps;
  ef::datum::MarginSweep sweep;
  std::shared_ptr<ef::datum::FanPartition> fan;
};

Pipeline run_fan_pipeline(const ScenarioConfig& cfg) {
  ef::ode::TraceSpec spec(cfg.zeta2 / cfg.T, cfg.delta, cfg.delta_prime);
  ef::fan::FanConstants consts;
  consts.rho1 = cfg.rho1;
  consts.K = cfg.K;
  ef::ode::PicardOptions opt;
  opt.T_end = cfg.T_end;
  opt.t_min = cfg.t_min;
  opt.grid_size = cfg.grid_size;
  opt.tol = cfg.tol;
  auto eps = ef::ode::picard_solve(spec, consts, opt);
  auto sweep = ef::datum::margin_horizon(eps, spec, consts);
  auto fan = std::make_shared<ef::datum::FanPartition>(
      ef::datum::fan_curves(eps, spec, consts));
  return {spec, consts, std::move(eps), std::move(sweep), std::move(fan)};
}

void write_fan_outputs(const Pipeline& p, const std::string& dir) {
  ef::io::ensure_dir(dir);
  std::vector<std::vector<double>> rows;
  for (std::size_t j = 0; j < p.eps.grid.size(); ++j)
    rows.push_back({p.eps.grid[j], p.eps.values[j], p.sweep.nu_minus[j],
                    p.sweep.nu_plus[j], p.sweep.beta[j], p.sweep.eps2L[j],
                    p.sweep.eps2R[j], p.sweep.margin_left[j],
                    p.sweep.margin_right[j]});
  ef::io::write_table(dir + "/eps_solution.csv",
                      {"t", "eps_delta", "nu_minus", "nu_plus", "beta",
                       "eps2L", "eps2R", "margin_left", "margin_right"},
                      rows);

  rows.clear();
  for (std::size_t j = 0; j < p.fan->t.size(); ++j)
    rows.push_back({p.fan->t[j], p.fan->nu_tilde_minus[j],
                    p.fan->nu_tilde_plus[j],
                    p.fan->s_minus_slope * p.fan->t[j],
                    p.fan->s_plus_slope * p.fan->t[j]});
  ef::io::write_table(
      dir + "/fan_curves.csv",
      {"t", "nu_tilde_minus", "nu_tilde_plus", "s_minus", "s_plus"}, rows);

  std::vector<std::pair<std::string, std::string>> kv;
  kv.emplace_back("iterations", std::to_string(p.eps.iterations));
  kv.emplace_back("contraction_q", ef::io::g17(p.eps.measured_q));
  kv.emplace_back("bound_constant_C", ef::io::g17(p.eps.bound_constant));
  kv.emplace_back("max_abs_eps", ef::io::g17(p.eps.max_abs_eps));
  kv.emplace_back("delta0", ef::io::g17(p.sweep.delta0));
  kv.emplace_back("margins_positive_at_first_node",
                  p.sweep.positive_at_first_node ? "1" : "0");
  kv.emplace_back("ode_residual_interior",
                  ef::io::g17(p.eps.ode_residual_interior));
  kv.emplace_back("residual_window_lo", ef::io::g17(p.eps.residual_window_lo));
  kv.emplace_back("residual_window_hi", ef::io::g17(p.eps.residual_window_hi));
  kv.emplace_back("sandwich_ok", p.fan->sandwich_ok ? "1" : "0");
  for (std::size_t i = 0; i < p.eps.sup_distances.size(); ++i)
    kv.emplace_back("sup_distance_" + std::to_string(i + 1),
                    ef::io::g17(p.eps.sup_distances[i]));
  ef::io::write_key_values(dir + "/diagnostics.csv", kv);
}

int cmd_verify_riemann(const ScenarioConfig& cfg, const std::string& dir) {
  ef::fan::FanConstants consts;
  consts.rho1 = cfg.rho1;
  consts.K = cfg.K;
  const auto rep = ef::fan::verify_riemann_subsolution(
      consts, cfg.zeta2 / cfg.T, cfg.delta_hat, cfg.eps_bar);
  ef::io::ensure_dir(dir);
  ef::io::write_report(dir + "/riemann_report.csv", rep.checks);
  for (const auto& c : rep.checks)
    std::cout << (c.pass ? "pass " : "FAIL ") << c.name << " = "
              << ef::io::g17(c.value) << "\n";
  if (!rep.all_pass) {
    std::cout << "verify-riemann: failing checks:";
    for (const auto& c : rep.checks)
      if (!c.pass) std::cout << " " << c.name;
    std::cout << "\n";
    return kExitCheckFailure;
  }
  std::cout << "verify-riemann: all checks passed\n";
  return kExitOk;
}

int cmd_solve_fan(const ScenarioConfig& cfg, const std::string& dir,
                  bool strict) {
  const auto p = run_fan_pipeline(cfg);
  write_fan_outputs(p, dir);
  std::cout << "solve-fan: iterations=" << p.eps.iterations
            << " q=" << ef::io::g17(p.eps.measured_q)
            << " delta0=" << ef::io::g17(p.sweep.delta0) << "\n";
  if (p.eps.measured_q >= 1.0) {
    std::cout << "solve-fan: failing check: contraction_ratio\n";
    return kExitCheckFailure;
  }
  if (!(p.sweep.delta0 > 0.0)) {
    std::cout << "solve-fan: failing check: margin_horizon_delta0\n";
    return kExitCheckFailure;
  }
  if (strict && !p.sweep.positive_at_first_node) {
    std::cout << "solve-fan: failing check: margins_at_first_node\n";
    return kExitCheckFailure;
  }
  return kExitOk;
}

int cmd_build_datum(const ScenarioConfig& cfg, const std::string& dir,
                    bool strict) {
  const auto p = run_fan_pipeline(cfg);
  write_fan_outputs(p, dir);
  const auto datum = ef::datum::build_initial_datum(p.fan, cfg.zeta1);

  std::vector<ef::fan::CheckLine> checks;
  auto add = [&](const std::string& name, double value, double threshold,
                 bool pass) {
    checks.push_back({name, value, threshold, pass});
  };

  const auto hyp_left =
      ef::datum::hypothesis_check(ef::ode::Side::Left, *p.fan);
  const auto hyp_right =
      ef::datum::hypothesis_check(ef::ode::Side::Right, *p.fan);
  add("hypothesis_left_slope", hyp_left.slope_at_zero, 0.0,
      hyp_left.slope_sign_ok && hyp_left.origin_ok);
  add("hypothesis_left_envelope", hyp_left.envelope_max_ratio, 0.05,
      hyp_left.envelope_ok);
  add("hypothesis_right_slope", hyp_right.slope_at_zero, 0.0,
      hyp_right.slope_sign_ok && hyp_right.origin_ok);
  add("hypothesis_right_envelope", hyp_right.envelope_max_ratio, 0.05,
      hyp_right.envelope_ok);

  const auto rt =
      ef::datum::round_trip_check(datum, 1e-4, p.spec.delta, 160);
  add("round_trip_max_deviation", rt.max_deviation(), 1e-6,
      rt.max_deviation() < 1e-6);

  // Composite form on |x| < zeta_bar: datum equals a f0(h(x)) + b.
  double comp_err = 0.0;
  for (int i = 1; i <= 16; ++i) {
    const double x = -datum.zeta_bar_left * i / 17.0;
    const double h = ef::datum::pullback_time(ef::ode::Side::Left, *p.fan, x);
    comp_err = std::max(comp_err,
                        std::abs(datum.lambda0(x) -
                                 (ef::profiles::f0_eval(h) + datum.b_minus)));
  }
  add("composite_form_error", comp_err, 1e-10, comp_err < 1e-10);

  // Monotonicity over the pure-f0 region of each side.
  bool mono = true;
  double prev = datum.lambda0(-datum.zeta_bar_left);
  for (int i = 1; i <= 200; ++i) {
    const double x = -datum.zeta_bar_left * (1.0 - i / 201.0);
    const double v = datum.lambda0(x);
    if (v > prev) mono = false;
    prev = v;
  }
  add("composite_region_monotone", mono ? 1.0 : 0.0, 0.5, mono);

  const bool mono_global = ef::profiles::f0_eval(p.spec.delta) <=
                           p.spec.zeta2_over_T;
  add("monotone_global_feasible", mono_global ? 1.0 : 0.0, -1.0, true);

  ef::io::write_report(dir + "/datum_report.csv", checks);

  std::vector<std::vector<double>> rows;
  const double span = datum.zeta1 * 1.2;
  const int n = 800;
  for (int i = 0; i <= n; ++i) {
    const double x = -span + 2.0 * span * i / n;
    const double lam = datum.lambda0(x == 0.0 ? -1e-300 : x);
    const auto st = ef::euler::state_from_wave(lam, p.spec.w1);
    rows.push_back({x, lam, st.rho, st.m2});
  }
  ef::io::write_table(dir + "/datum.csv", {"x2", "lambda1_0", "rho0", "m2_0"},
                      rows);

  bool ok = true;
  for (const auto& c : checks) {
    std::cout << (c.pass ? "pass " : "FAIL ") << c.name << " = "
              << ef::io::g17(c.value) << "\n";
    ok = ok && c.pass;
  }
  if (strict && !mono_global) {
    std::cout << "FAIL strict: monotone_global_feasible\n";
    ok = false;
  }
  return ok ? kExitOk : kExitCheckFailure;
}

int cmd_trace_characteristics(const ScenarioConfig& cfg,
                              const std::string& dir) {
  const auto f0p = ef::profiles::F0Params::reference(
      cfg.lambda_minus, cfg.lambda_plus, cfg.T, cfg.zeta2, cfg.zeta_bar,
      cfg.a_minus, cfg.a_plus);
  const auto prof = ef::profiles::build_compression_datum(
      cfg.lambda_minus, cfg.lambda_plus, cfg.T, cfg.zeta1, cfg.zeta2, f0p,
      {}, ef::profiles::DatumMode::Initial);
  ef::burgers::CharSolution sol{prof, cfg.T, cfg.tol};

  const double xl = -cfg.lambda_minus * cfg.T - cfg.zeta1 - 0.5;
  const double xr = -cfg.lambda_plus * cfg.T + cfg.zeta1 + 0.5;
  const int nt = 24, nx = 240;
  std::vector<std::vector<double>> rows;
  for (int i = 0; i <= nt; ++i) {
    const double t = 0.95 * cfg.T * i / nt;
    for (int j = 0; j <= nx; ++j) {
      const double x = xl + (xr - xl) * j / nx;
      const double lam = ef::burgers::eval_solution(t, x, sol);
      const auto st = ef::euler::state_from_wave(lam, ef::constants::w1_ref);
      rows.push_back({t, x, lam, st.rho, st.m2});
    }
  }
  ef::io::ensure_dir(dir);
  ef::io::write_table(dir + "/characteristics.csv",
                      {"t", "x2", "lambda1", "rho", "m2"}, rows);
  std::cout << "trace-characteristics: wrote " << rows.size() << " samples\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Compression-wave collapse and generalized fan subsolutions for the "
      "2D isentropic Euler system (p = rho^2)"};
  app.require_subcommand(1);

  std::string config_path, out_dir;
  int refine = 0;
  bool strict = false;
  app.add_option("--config", config_path, "scenario configuration file");
  app.add_option("--out", out_dir, "output directory (overrides config)");
  app.add_option("--refine", refine, "double the grid this many times");
  app.add_flag("--strict", strict, "treat soft diagnostics as failures");

  auto* verify = app.add_subcommand("verify-riemann",
                                    "check the reference fan subsolution");
  auto* solve = app.add_subcommand("solve-fan",
                                   "solve the interface system and the "
                                   "eps_delta fixed point");
  auto* build = app.add_subcommand("build-datum",
                                   "reconstruct the wild initial datum");
  auto* trace = app.add_subcommand("trace-characteristics",
                                   "sample the pre-collapse compression wave");
  for (auto* sub : {verify, solve, build, trace}) sub->fallthrough();

  CLI11_PARSE(app, argc, argv);

  ScenarioConfig cfg;
  try {
    cfg = config_path.empty() ? ef::scenario::default_config()
                              : ef::scenario::load_config(config_path);
    for (int i = 0; i < refine; ++i) cfg.grid_size *= 2;
    cfg.validate();
  } catch (const ef::scenario::ConfigError& e) {
    std::cerr << "config error [" << e.field << "]: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  }
  const std::string dir = out_dir.empty() ? cfg.output_dir : out_dir;

  try {
    if (verify->parsed()) return cmd_verify_riemann(cfg, dir);
    if (solve->parsed()) return cmd_solve_fan(cfg, dir, strict);
    if (build->parsed()) return cmd_build_datum(cfg, dir, strict);
    if (trace->parsed()) return cmd_trace_characteristics(cfg, dir);
  } catch (const std::exception& e) {
    std::cerr << "check failure: " << e.what() << "\n";
    return kExitCheckFailure;
  }
  return kExitOk;
}
