#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "eulerfan/constants.hpp"
#include "eulerfan/ode_epsilon.hpp"
#include "eulerfan/profiles.hpp"
#include "eulerfan/subsolution.hpp"

using namespace eulerfan;
using namespace eulerfan::ode;
namespace ct = eulerfan::constants;

namespace {
TraceSpec default_spec() { return TraceSpec(0.1, 0.03, 0.075); }

// beta from the closed-form branch along the traces; the oracle for the
// coefficient functions.
double beta_of(double t, double eps, const TraceSpec& spec) {
  return fan::solve_interface(boundary_traces(t, spec), fan::FanConstants{},
                              eps)
      .beta;
}
}  // namespace

TEST_CASE("traces hit the plateau exactly and ramp like f0 near zero") {
  const auto spec = default_spec();
  const auto plateau = boundary_traces(0.08, spec);
  CHECK(plateau.rho_minus_nu == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(plateau.m_minus2_nu == doctest::Approx(ct::sqrt8).epsilon(1e-14));
  CHECK(plateau.rho_plus_nu == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(plateau.m_plus2_nu ==
        doctest::Approx(0.0).scale(1.0).epsilon(1e-14));

  // lambda trace minus its t -> 0 limit is exactly the f0 ramp.
  for (double t : {1e-10, 1e-6, 1e-3, 0.02}) {
    const double lim_gap =
        spec.trace(Side::Left, t) - (ct::lambda_minus_ref - 0.1);
    CHECK(lim_gap == doctest::Approx(profiles::f0_eval(t)).epsilon(1e-14));
    CHECK(spec.trace(Side::Right, t) - (ct::lambda_plus_ref + 0.1) ==
          doctest::Approx(-profiles::f0_eval(t)).epsilon(1e-14));
  }
  CHECK_THROWS_AS(spec.trace(Side::Left, 0.0), std::domain_error);
}

TEST_CASE("trace spec rejects bad windows") {
  CHECK_THROWS(TraceSpec(0.1, 0.05, 0.04));
  CHECK_THROWS(TraceSpec(-0.1, 0.03, 0.075));
}

TEST_CASE("trace time derivatives are bounded by f0'") {
  const auto spec = default_spec();
  // Fitted once: every state-derivative stays below 3.2 |f0'|.
  for (double t : {1e-3, 1e-5}) {
    const auto d = boundary_traces_dt(t, spec);
    const double f0p = profiles::f0_derivative(t, 1);
    for (double v : d) {
      CHECK(std::abs(v) <= 3.2 * f0p);
      CHECK(f0p > 0.0);
    }
    // Below is the finite-difference confirmation of the chain rule.
    const double h = 1e-3 * t;
    const auto sp = boundary_traces(t + h, spec);
    const auto sm = boundary_traces(t - h, spec);
    CHECK(d[0] == doctest::Approx((sp.rho_minus_nu - sm.rho_minus_nu) / (2 * h))
                      .epsilon(1e-5));
    CHECK(d[3] == doctest::Approx((sp.m_plus2_nu - sm.m_plus2_nu) / (2 * h))
                      .scale(1.0)
                      .epsilon(1e-5));
  }
}

TEST_CASE("coefficient f equals the eps-derivative of the wedge momentum") {
  const auto frozen = TraceSpec::constant_reference();
  CHECK(coeff_f(0.01, 0.0, frozen, fan::FanConstants{}) ==
        doctest::Approx(1.0 / std::sqrt(26.0)).epsilon(1e-13));

  const auto spec = default_spec();
  for (double t : {1e-3, 0.01, 0.025}) {
    const double h = 1e-6;
    const double fd =
        (beta_of(t, h, spec) - beta_of(t, -h, spec)) / (2.0 * h);
    CHECK(coeff_f(t, 0.0, spec, fan::FanConstants{}) ==
          doctest::Approx(fd).epsilon(1e-6));
  }
  // Past |B|/|R| = 13/3 the radicand closes and the coefficient diverges.
  CHECK_THROWS_AS(coeff_f(0.01, 4.5, frozen, fan::FanConstants{}),
                  std::domain_error);
  CHECK(coeff_f(0.01, 4.32, frozen, fan::FanConstants{}) >
        10.0 * coeff_f(0.01, 0.0, frozen, fan::FanConstants{}));
}

TEST_CASE("coefficient g equals the time derivative at frozen eps") {
  const auto spec = default_spec();
  CHECK(coeff_g(0.08, 0.0, spec, fan::FanConstants{}) == 0.0);  // plateau

  for (double t : {0.01, 0.005}) {
    for (double eps : {0.0, 0.02}) {
      const double h = 1e-6 * t;
      const double fd =
          (beta_of(t + h, eps, spec) - beta_of(t - h, eps, spec)) / (2.0 * h);
      CHECK(coeff_g(t, eps, spec, fan::FanConstants{}) ==
            doctest::Approx(fd).epsilon(1e-4));
    }
  }

  // The singular envelope |g| t |log t| stays inside a fitted band.
  for (double t : {1e-2, 1e-3, 1e-4, 1e-5, 1e-6}) {
    const double v = std::abs(coeff_g(t, 0.0, spec, fan::FanConstants{})) * t *
                     std::abs(std::log(t));
    CHECK(v < 1.0);
    CHECK(v > 0.1);
  }
}

TEST_CASE("wedge width") {
  const auto frozen = TraceSpec::constant_reference();
  auto zero = [](double) { return 0.0; };
  const double gap = ct::nu_plus_ref - ct::nu_minus_ref;  // sqrt26 / 2
  for (double t : {1e-4, 0.01, 0.3}) {
    CHECK(length_l(t, zero, frozen, fan::FanConstants{}) ==
          doctest::Approx(gap * t).epsilon(1e-12));
  }
  CHECK(gap == doctest::Approx(std::sqrt(26.0) / 2.0).epsilon(1e-14));
  CHECK(gap == doctest::Approx(2.549510).epsilon(1e-6));

  // Default traces: l(t)/t in the (c1, c2) band, and additive.
  const auto spec = default_spec();
  for (double t : {1e-6, 1e-4, 1e-2, 0.03}) {
    const double l = length_l(t, zero, spec, fan::FanConstants{});
    CHECK(l / t > 2.0);
    CHECK(l / t < 3.0);
  }
  const double l1 = length_l(0.01, zero, spec, fan::FanConstants{});
  const double l2 = length_l(0.02, zero, spec, fan::FanConstants{});
  double mid = 0.0;  // independent fine trapezoid of the gap on [t1, t2]
  {
    const int n = 4000;
    double prev = 0.0;
    for (int i = 0; i <= n; ++i) {
      const double s = 0.01 + 0.01 * i / n;
      const auto sol = fan::solve_interface(boundary_traces(s, spec),
                                            fan::FanConstants{}, 0.0);
      const double w = sol.nu_plus - sol.nu_minus;
      if (i) mid += 0.5 * (prev + w) * (0.01 / n);
      prev = w;
    }
  }
  CHECK(l2 - l1 == doctest::Approx(mid).epsilon(1e-6));
}

TEST_CASE("frozen traces make zero the exact fixed point") {
  const auto frozen = TraceSpec::constant_reference();
  PicardOptions opt;
  opt.grid_size = 256;
  const auto eps = picard_solve(frozen, fan::FanConstants{}, opt);
  CHECK(eps.iterations == 1);
  CHECK(eps.max_abs_eps == 0.0);
  CHECK(eps.measured_q < 1.0);
}

TEST_CASE("default scenario contracts and respects the bounds") {
  const auto spec = default_spec();
  PicardOptions opt;
  const auto eps = picard_solve(spec, fan::FanConstants{}, opt);

  CHECK(eps.measured_q < 1.0);
  CHECK(eps.sup_distances.size() >= 2);
  for (std::size_t i = 1; i < eps.sup_distances.size(); ++i)
    CHECK(eps.sup_distances[i] < eps.sup_distances[i - 1]);

  CHECK(eps.max_abs_eps < ct::eps_ball_radius);
  CHECK(std::abs(eps.values.front()) < 1e-2);
  CHECK(eps.bound_constant > 0.1);
  CHECK(eps.bound_constant < 2.0);

  // The smallest-node value shrinks as the grid refines toward the anchor.
  double prev = std::abs(eps.values.front());
  for (int n : {4096, 8192}) {
    PicardOptions o2;
    o2.grid_size = n;
    const auto e2 = picard_solve(spec, fan::FanConstants{}, o2);
    CHECK(std::abs(e2.values.front()) < prev);
    prev = std::abs(e2.values.front());
  }
}

TEST_CASE("refinement keeps the solution within the tolerance scale") {
  const auto spec = default_spec();
  PicardOptions opt;
  opt.tol = 1e-5;
  opt.grid_size = 2048;
  const auto a = picard_solve(spec, fan::FanConstants{}, opt);
  opt.grid_size = 4096;
  const auto b = picard_solve(spec, fan::FanConstants{}, opt);
  // Shared nodes: every second node of the finer grid.
  double worst = 0.0;
  for (std::size_t j = 0; j < a.grid.size(); ++j) {
    CHECK(b.grid[2 * j + 1] == doctest::Approx(a.grid[j]).epsilon(1e-12));
    worst = std::max(worst, std::abs(b.values[2 * j + 1] - a.values[j]));
  }
  CHECK(worst < 5.0 * opt.tol);
}

TEST_CASE("interior residual of the differential form") {
  const auto spec = default_spec();
  PicardOptions opt;
  opt.grid_size = 16384;
  opt.tol = 1e-6;
  const auto eps = picard_solve(spec, fan::FanConstants{}, opt);
  CHECK(eps.ode_residual_interior < 10.0 * opt.tol);
}

TEST_CASE("horizon preconditions") {
  const auto spec = default_spec();
  PicardOptions opt;
  opt.T_end = 0.6;  // beyond both delta_prime and 1/2
  CHECK_THROWS_AS(picard_solve(spec, fan::FanConstants{}, opt),
                  std::invalid_argument);

  PicardOptions starved;
  starved.grid_size = 64;
  starved.max_iter = 2;
  starved.tol = 1e-30;  // unreachable: the budget check must fire
  CHECK_THROWS_AS(picard_solve(spec, fan::FanConstants{}, starved),
                  std::runtime_error);
}

TEST_CASE("interpolated solution is anchored at zero") {
  const auto spec = default_spec();
  PicardOptions opt;
  opt.grid_size = 512;
  const auto eps = picard_solve(spec, fan::FanConstants{}, opt);
  CHECK(eps.eps_at(eps.t_anchor) == 0.0);
  CHECK(eps.eps_at(1e-12) == 0.0);
  CHECK(eps.eps_at(eps.grid[5]) ==
        doctest::Approx(eps.values[5]).scale(1.0).epsilon(1e-14));
  const double mid = std::sqrt(eps.grid[5] * eps.grid[6]);
  const double v = eps.eps_at(mid);
  CHECK(((v >= std::min(eps.values[5], eps.values[6]) &&
          v <= std::max(eps.values[5], eps.values[6]))));
}
