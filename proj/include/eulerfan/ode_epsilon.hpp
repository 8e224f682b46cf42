#ifndef EULERFAN_ODE_EPSILON_HPP
#define EULERFAN_ODE_EPSILON_HPP

#include <functional>
#include <vector>

#include "eulerfan/numerics.hpp"
#include "eulerfan/subsolution.hpp"

namespace eulerfan::ode {

enum class Side { Left, Right };

// Boundary traces lambda_{1 pm}^nu(t): an f0 ramp on (0, delta), a quintic
// glue on (delta, delta'), and the reference plateau beyond. Monotone with
// monotone first derivatives on (0, delta); the glue is checked monotone.
struct TraceSpec {
  double zeta2_over_T = 0.1;
  double delta = 0.03;
  double delta_prime = 0.075;
  double lambda_minus = constants::lambda_minus_ref;
  double lambda_plus = constants::lambda_plus_ref;
  double w1 = constants::w1_ref;

  TraceSpec(double zeta2_over_T_, double delta_, double delta_prime_);

  // Traces frozen at the reference plateau for all t; the degenerate
  // configuration with g = 0 used by the fixed-point sanity checks.
  static TraceSpec constant_reference();

  double trace(Side s, double t) const;
  double trace_dt(Side s, double t) const;

  bool constant_mode() const { return constant_mode_; }

 private:
  TraceSpec() = default;
  bool constant_mode_ = false;
  Quintic glue_left_, glue_right_;
};

// Maps the traces through the wave coordinates (w1 fixed) to the interface
// states (rho_pm^nu, m_pm2^nu)(t).
fan::InterfaceStates boundary_traces(double t, const TraceSpec& spec);

// d/dt of (rho_-^nu, m_-2^nu, rho_+^nu, m_+2^nu).
std::array<double, 4> boundary_traces_dt(double t, const TraceSpec& spec);

// f = d beta / d eps_delta at fixed t (bounded away from 0 and infinity on
// the valid region).
double coeff_f(double t, double eps_delta, const TraceSpec& spec,
               const fan::FanConstants& c);

// g = d beta / d t at fixed eps_delta, by the chain rule through the closed
// form; singular like 1/(t |log t|) at the origin.
double coeff_g(double t, double eps_delta, const TraceSpec& spec,
               const fan::FanConstants& c);

// Wedge width l(t) = integral of (nu_+ - nu_-) along a given eps_delta path;
// composite trapezoid on the log-time grid.
double length_l(double t, const std::function<double(double)>& eps_path,
                const TraceSpec& spec, const fan::FanConstants& c,
                int n_quad = 512);

struct PicardOptions {
  double T_end = 0.03;
  double t_min = 1e-8;
  int grid_size = 2048;
  double tol = 1e-10;
  int max_iter = 50;
};

struct EpsDeltaSolution {
  std::vector<double> grid;    // log-spaced nodes in (t_min, T_end]
  std::vector<double> values;  // eps_delta on the grid
  double t_anchor = 0.0;       // quadrature anchor; eps_delta pinned to 0
  int iterations = 0;
  std::vector<double> sup_distances;  // per-iteration contraction record
  double measured_q = 0.0;            // max consecutive ratio from iter 2 on
  double max_abs_eps = 0.0;
  double bound_constant = 0.0;  // fitted sup |eps| sqrt|log t|
  double ode_residual_interior = 0.0;
  double residual_window_lo = 0.0, residual_window_hi = 0.0;

  double eps_at(double t) const;  // linear in log t; 0 at and below anchor
};

// Successive substitution on the integral form of the wedge momentum
// equation, starting from eps_delta = 0. The inner kernel integral is
// accumulated by prefix sums in log time, one pass per sweep. Enforces
// T_end <= min(delta_prime, 1/2) and the invariant-ball bound
// |eps_delta| <= 13/6; detects non-contraction.
EpsDeltaSolution picard_solve(const TraceSpec& spec,
                              const fan::FanConstants& c,
                              const PicardOptions& opt);

}  // namespace eulerfan::ode

#endif
