// Acceptance suite: one line per criterion, nonzero exit if any fails.
#include <cmath>
#include <cstdio>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "eulerfan/burgers.hpp"
#include "eulerfan/constants.hpp"
#include "eulerfan/euler_map.hpp"
#include "eulerfan/initial_data.hpp"
#include "eulerfan/ode_epsilon.hpp"
#include "eulerfan/profiles.hpp"
#include "eulerfan/subsolution.hpp"

using namespace eulerfan;
namespace ct = eulerfan::constants;

namespace {

struct Outcome {
  std::string name;
  bool pass;
  std::string detail;
};

std::vector<Outcome> results;

void record(const std::string& name, bool pass, const std::string& detail) {
  results.push_back({name, pass, detail});
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// 1. Reference wedge constants satisfy the jump system at 1e-12 with all
//    margins strictly positive.
void criterion_reference_wedge() {
  const fan::InterfaceStates states(1.0, ct::sqrt8, 4.0, 0.0);
  const fan::FanConstants c;
  fan::InterfaceSolution sol{};
  sol.nu_minus = ct::nu_minus_ref;
  sol.nu_plus = ct::nu_plus_ref;
  sol.beta = ct::beta_ref;
  sol.eps2L = sol.eps2R = ct::eps2_ref;
  sol.eps_delta = 0.0;
  sol.eps1L = sol.eps1R = ct::eps1_ref;
  sol.C1 = sol.beta * sol.beta / c.rho1 + sol.eps1L + sol.eps2L;
  sol.gamma1L = sol.gamma1R = sol.eps2L - 0.5 * sol.C1;

  double worst = 0.0;
  for (double r : fan::rh_residuals(states, c, sol))
    worst = std::max(worst, std::abs(r));
  const auto adm = fan::admissibility_margins(states, c, sol);
  const auto sub = fan::subsolution_margins(sol, c);
  const bool pass = worst < 1e-12 && adm[0] > 0.0 && adm[1] > 0.0 &&
                    sub.eps1 > 0.0 && sub.eps2L > 0.0 && sub.eps2R > 0.0;
  record("1 reference wedge constants", pass,
         "max |residual| = " + fmt(worst) + ", margins = (" + fmt(adm[0]) +
             ", " + fmt(adm[1]) + "), eps = (" + fmt(sub.eps1) + ", " +
             fmt(sub.eps2L) + ")");
}

// 2. Closed-form branch: 1000 draws inside the neighborhood box keep every
//    jump residual below 1e-10.
void criterion_closed_form_branch() {
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> pm(-0.05, 0.05), ue(-0.1, 0.1);
  double worst = 0.0;
  bool ok = true;
  for (int i = 0; i < 1000 && ok; ++i) {
    const fan::InterfaceStates s(1.0 + pm(rng), ct::sqrt8 + pm(rng),
                                 4.0 + pm(rng), pm(rng));
    try {
      const auto sol = fan::solve_interface(s, fan::FanConstants{}, ue(rng));
      for (double r : fan::rh_residuals(s, fan::FanConstants{}, sol))
        worst = std::max(worst, std::abs(r));
    } catch (const std::exception&) {
      ok = false;
    }
  }
  record("2 closed-form branch residuals", ok && worst < 1e-10,
         "1000 draws, max |residual| = " + fmt(worst));
}

// 3. Wave/state bijection at 1e-12 and the endpoint regression.
void criterion_bijection() {
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> urho(0.1, 10.0), uv(-10.0, 10.0);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double rho = urho(rng), v2 = uv(rng);
    const euler::EulerState s(rho, 0.0, rho * v2);
    const auto w = euler::wave_from_state(s);
    const auto back = euler::state_from_wave(w.lambda1, w.w1);
    worst = std::max(worst, std::abs(back.rho - s.rho) / s.rho);
    worst = std::max(worst,
                     std::abs(back.m2 - s.m2) / (1.0 + std::abs(s.m2)));
  }
  const auto left = euler::state_from_wave(ct::lambda_minus_ref, ct::w1_ref);
  const auto right = euler::state_from_wave(ct::lambda_plus_ref, ct::w1_ref);
  const double endpoint = std::abs(left.rho - 1.0) +
                          std::abs(left.m2 - ct::sqrt8) +
                          std::abs(right.rho - 4.0) + std::abs(right.m2);
  // The momentum sign as printed in the source formula must fail this.
  const double printed =
      (ct::w1_ref - ct::lambda_minus_ref) * (ct::w1_ref - ct::lambda_minus_ref) /
      18.0 * (2.0 * ct::lambda_minus_ref - ct::w1_ref) / 3.0;
  const bool guard = std::abs(printed - ct::sqrt8) > 0.5;
  record("3 wave/state bijection", worst < 1e-12 && endpoint < 1e-12 && guard,
         "1000 round trips, worst = " + fmt(worst) +
             ", endpoint gap = " + fmt(endpoint));
}

// 4. Derivative limits at the singular edge: slope saturation at 1/t, and
//    strictly decreasing curvature magnitudes over three decades.
void criterion_derivative_limits() {
  const burgers::CharSolution sol{profiles::f0_wave_datum(), 1e300, 1e-12};
  const double slope = burgers::eval_dx(0.5, 1e-8, sol, 1);
  const bool clause_a = std::abs(slope - 2.0) < 1e-3;
  record("4a slope limit 1/t", clause_a,
         "d/dx2 at 1e-8 = " + fmt(slope) + " vs 2");

  const double m1 = std::abs(burgers::eval_dx(0.5, 1e-4, sol, 2));
  const double m2 = std::abs(burgers::eval_dx(0.5, 1e-6, sol, 2));
  const double m3 = std::abs(burgers::eval_dx(0.5, 1e-8, sol, 2));
  const bool clause_b = m1 > m2 && m2 > m3;
  std::string note = "|d2| = (" + fmt(m1) + ", " + fmt(m2) + ", " + fmt(m3) + ")";
  if (!clause_b && m1 == 0.0 && m2 == 0.0 && m3 == 0.0)
    note += " - every representable foot carries f0 >= 0.0955, so the "
            "curvature sits at its zero limit for all x2 < 0.048 t and no "
            "strict decrease can be exhibited in double precision";
  record("4b curvature magnitudes strictly decreasing", clause_b, note);
}

struct FanRun {
  ode::TraceSpec spec{0.1, 0.03, 0.075};
  fan::FanConstants consts;
  ode::EpsDeltaSolution eps2048, eps4096;
  datum::MarginSweep sweep;
  std::shared_ptr<datum::FanPartition> fan;

  FanRun() {
    ode::PicardOptions opt;
    eps2048 = ode::picard_solve(spec, consts, opt);
    opt.grid_size = 4096;
    eps4096 = ode::picard_solve(spec, consts, opt);
    sweep = datum::margin_horizon(eps2048, spec, consts);
    fan = std::make_shared<datum::FanPartition>(
        datum::fan_curves(eps2048, spec, consts));
  }
};

// 5. Contraction from the second sweep on, bound constant stable under
//    refinement, tiny leading value.
void criterion_picard(const FanRun& run) {
  bool contracting = run.eps2048.sup_distances.size() >= 2;
  for (std::size_t i = 1; i < run.eps2048.sup_distances.size(); ++i)
    contracting = contracting && run.eps2048.sup_distances[i] <
                                     run.eps2048.sup_distances[i - 1];
  const double drift =
      std::abs(run.eps4096.bound_constant - run.eps2048.bound_constant) /
      run.eps2048.bound_constant;
  const double lead = std::abs(run.eps2048.values.front());
  const bool pass = contracting && run.eps2048.measured_q < 1.0 &&
                    drift < 0.10 && lead < 1e-2;
  record("5 fixed-point contraction and bound constant", pass,
         "q = " + fmt(run.eps2048.measured_q) + ", C = " +
             fmt(run.eps2048.bound_constant) + ", drift = " + fmt(drift) +
             ", eps(t1) = " + fmt(lead));
}

// 6. Fan boundaries stay strictly inside the shock-ray sandwich.
void criterion_sandwich(const FanRun& run) {
  bool ok = true;
  for (std::size_t j = 0; j < run.fan->t.size(); ++j) {
    ok = ok &&
         run.fan->nu_tilde_minus[j] < run.fan->s_minus_slope * run.fan->t[j] &&
         run.fan->nu_tilde_plus[j] > run.fan->s_plus_slope * run.fan->t[j];
  }
  record("6 shock-ray sandwich", ok,
         std::to_string(run.fan->t.size()) + " nodes, slopes (" +
             fmt(run.fan->s_minus_slope) + ", " + fmt(run.fan->s_plus_slope) +
             ")");
}

// 7. Flagship round trip: pullback datum, forward characteristics, trace
//    re-extraction below 1e-6.
void criterion_round_trip(const FanRun& run) {
  const auto d = datum::build_initial_datum(run.fan, 0.3);
  const auto rt = datum::round_trip_check(d, 1e-4, run.spec.delta, 160);
  record("7 datum round trip", rt.max_deviation() < 1e-6,
         "max deviation = " + fmt(rt.max_deviation()) + " over [1e-4, " +
             fmt(run.spec.delta) + "]");
}

// 8. Strictly positive margin horizon.
void criterion_margin_horizon(const FanRun& run) {
  record("8 margin horizon", run.sweep.positive_at_first_node &&
                                 run.sweep.delta0 > 0.0,
         "delta0 = " + fmt(run.sweep.delta0));
}

// 9. Pullback hypotheses: vanishing origin, slope signs, curvature envelope.
void criterion_hypotheses(const FanRun& run) {
  const auto left = datum::hypothesis_check(ode::Side::Left, *run.fan);
  const auto right = datum::hypothesis_check(ode::Side::Right, *run.fan);
  record("9 pullback hypotheses", left.pass && right.pass,
         "slopes (" + fmt(left.slope_at_zero) + ", " +
             fmt(right.slope_at_zero) + "), envelope ratios (" +
             fmt(left.envelope_max_ratio) + ", " +
             fmt(right.envelope_max_ratio) + ")");
}

}  // namespace

int main() {
  criterion_reference_wedge();
  criterion_closed_form_branch();
  criterion_bijection();
  criterion_derivative_limits();
  const FanRun run;
  criterion_picard(run);
  criterion_sandwich(run);
  criterion_round_trip(run);
  criterion_margin_horizon(run);
  criterion_hypotheses(run);

  int failures = 0;
  for (const auto& r : results) {
    std::printf("criterion %-45s %s  [%s]\n", r.name.c_str(),
                r.pass ? "PASS" : "FAIL", r.detail.c_str());
    failures += r.pass ? 0 : 1;
  }
  std::printf("%zu criteria checked, %d failed\n", results.size(), failures);
  return failures == 0 ? 0 : 1;
}
