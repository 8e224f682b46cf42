#ifndef EULERFAN_INITIAL_DATA_HPP
#define EULERFAN_INITIAL_DATA_HPP

#include <functional>
#include <memory>
#include <vector>

#include "eulerfan/euler_map.hpp"
#include "eulerfan/ode_epsilon.hpp"
#include "eulerfan/profiles.hpp"

namespace eulerfan::datum {

// Integrated fan boundaries nu_tilde_pm(t) together with the bounding shock
// rays; supports evaluation between nodes (trapezoid partial cells on the
// log grid, consistent with the node construction).
struct FanPartition {
  std::vector<double> t;  // anchor followed by the solution grid
  std::vector<double> nu_tilde_minus;
  std::vector<double> nu_tilde_plus;
  double s_minus_slope = 0.0;
  double s_plus_slope = 0.0;
  bool sandwich_ok = false;

  std::shared_ptr<const ode::TraceSpec> spec;
  std::shared_ptr<const ode::EpsDeltaSolution> eps;
  fan::FanConstants consts;

  double nu_speed(ode::Side s, double time) const;   // nu_pm(t)
  double nu_tilde(ode::Side s, double time) const;   // integrated boundary
  double T_end() const { return t.back(); }
};

// Integrates the closed-form interface speeds along the solved eps_delta
// path and checks nu_tilde_- < s_- and nu_tilde_+ > s_+ at every node.
FanPartition fan_curves(const ode::EpsDeltaSolution& eps,
                        const ode::TraceSpec& spec,
                        const fan::FanConstants& c);

// Admissibility/subsolution margins swept along the grid; delta0 is the end
// of the maximal prefix on which every margin is strictly positive.
struct MarginSweep {
  std::vector<double> t;
  std::vector<double> nu_minus, nu_plus, beta;
  std::vector<double> margin_left, margin_right;
  std::vector<double> eps1, eps2L, eps2R;
  double delta0 = 0.0;
  bool positive_at_first_node = false;
};

MarginSweep margin_horizon(const ode::EpsDeltaSolution& eps,
                           const ode::TraceSpec& spec,
                           const fan::FanConstants& c);

struct PullbackMap {
  ode::Side side;
  std::vector<double> x;  // signed positions, ordered away from 0
  std::vector<double> h;  // crossing times
  double slope_at_zero = 0.0;
};

// Crossing time h(x) of the characteristic from (0, x) with the fan
// boundary: nu_tilde(h) = x + h lambda_trace(h).
double pullback_time(ode::Side side, const FanPartition& fan, double x);

PullbackMap pullback_h(ode::Side side, const FanPartition& fan,
                       double abs_x_min = 1e-8, int points_per_decade = 16);

struct HypothesisReport {
  bool origin_ok = false;      // h -> 0 with the sampled x
  bool slope_sign_ok = false;  // -K_- > 0 < K_+
  double slope_at_zero = 0.0;
  double envelope_max_ratio = 0.0;  // |h''| |x| against 1 + sqrt(L) + L
  double envelope_growth = 0.0;     // last decade vs first decade
  bool envelope_ok = false;
  bool pass = false;
};

// Checks h(0) = 0, the slope sign, and that |h''(x)| |x| stays below a
// polylog envelope in sqrt|log|x|| and log|log|x|| across the sampled
// decades (growth across decades is the failure signal).
HypothesisReport hypothesis_check(ode::Side side, const FanPartition& fan,
                                  double abs_x_min = 1e-8,
                                  double abs_x_max = 1e-2,
                                  double envelope_cap = 0.05);

// Same check against an externally supplied map (synthetic cases in tests).
HypothesisReport hypothesis_check_fn(const std::function<double(double)>& h,
                                     int expected_slope_sign,
                                     double abs_x_min = 1e-8,
                                     double abs_x_max = 1e-2,
                                     double envelope_cap = 0.05);

// The reconstructed wild datum: plateau | smooth flank | pullback of the
// left trace | jump at 0 | pullback of the right trace | smooth flank |
// plateau, with the matching Euler field on w1 = 4 sqrt2. The pullback
// pieces cover |x| up to the foot of the t = delta characteristic; the
// flanks are quintic segments out to +-zeta1 (the continuation the
// construction leaves free).
struct FanDatum {
  profiles::LambdaProfile profile;
  std::shared_ptr<const FanPartition> fan;
  double zeta1 = 0.0;
  double zeta_bar_left = 0.0, zeta_bar_right = 0.0;  // pullback reach |x(delta)|
  double a_minus = 1.0, a_plus = 1.0;
  double b_minus = 0.0, b_plus = 0.0;
  bool flanks_monotone = false;  // false whenever f0(delta) > zeta2/T

  double lambda0(double x) const { return profile.value(x); }
  euler::EulerState state0(double x) const;
};

FanDatum build_initial_datum(std::shared_ptr<const FanPartition> fan,
                             double zeta1 = 0.3);

// Forward-solves the emitted datum by characteristics, re-extracts the
// boundary traces along nu_tilde_pm and reports the largest deviation.
struct RoundTripResult {
  double max_deviation_left = 0.0;
  double max_deviation_right = 0.0;
  double max_deviation() const {
    return max_deviation_left > max_deviation_right ? max_deviation_left
                                                    : max_deviation_right;
  }
};

RoundTripResult round_trip_check(const FanDatum& datum, double t_lo,
                                 double t_hi, int samples = 160);

}  // namespace eulerfan::datum

#endif
