#include "eulerfan/initial_data.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "eulerfan/burgers.hpp"

namespace eulerfan::datum {

namespace ct = eulerfan::constants;
using ode::Side;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

// ---- fan curves ---------------------------------------------------------------

double FanPartition::nu_speed(Side s, double time) const {
  const auto states = ode::boundary_traces(time, *spec);
  const auto sol = fan::solve_interface(states, consts, eps->eps_at(time));
  return s == Side::Left ? sol.nu_minus : sol.nu_plus;
}

double FanPartition::nu_tilde(Side s, double time) const {
  const auto& curve = s == Side::Left ? nu_tilde_minus : nu_tilde_plus;
  if (time <= t.front()) return nu_speed(s, t.front()) * time;
  if (time >= t.back()) {
    const double dt = time - t.back();
    return curve.back() + dt * nu_speed(s, t.back());
  }
  auto it = std::upper_bound(t.begin(), t.end(), time);
  const std::size_t j = static_cast<std::size_t>(it - t.begin());
  const double vp = nu_speed(s, t[j - 1]);
  const double vc = nu_speed(s, time);
  return curve[j - 1] + 0.5 * (vp + vc) * (time - t[j - 1]);
}

FanPartition fan_curves(const ode::EpsDeltaSolution& eps,
                        const ode::TraceSpec& spec,
                        const fan::FanConstants& c) {
  FanPartition fp;
  fp.spec = std::make_shared<ode::TraceSpec>(spec);
  fp.eps = std::make_shared<ode::EpsDeltaSolution>(eps);
  fp.consts = c;

  fp.t.push_back(eps.t_anchor);
  for (double tj : eps.grid) fp.t.push_back(tj);

  std::vector<double> num(fp.t.size()), nup(fp.t.size());
  for (std::size_t j = 0; j < fp.t.size(); ++j) {
    const auto states = ode::boundary_traces(fp.t[j], spec);
    const auto sol = fan::solve_interface(states, c, eps.eps_at(fp.t[j]));
    num[j] = sol.nu_minus;
    nup[j] = sol.nu_plus;
  }
  fp.nu_tilde_minus.resize(fp.t.size());
  fp.nu_tilde_plus.resize(fp.t.size());
  fp.nu_tilde_minus[0] = num[0] * fp.t[0];
  fp.nu_tilde_plus[0] = nup[0] * fp.t[0];
  for (std::size_t j = 1; j < fp.t.size(); ++j) {
    const double dt = fp.t[j] - fp.t[j - 1];
    fp.nu_tilde_minus[j] =
        fp.nu_tilde_minus[j - 1] + 0.5 * dt * (num[j - 1] + num[j]);
    fp.nu_tilde_plus[j] =
        fp.nu_tilde_plus[j - 1] + 0.5 * dt * (nup[j - 1] + nup[j]);
  }

  const auto sb = burgers::shock_bounds(spec.lambda_minus, spec.lambda_plus,
                                        spec.zeta2_over_T, 1.0);
  fp.s_minus_slope = sb.s_minus_slope;
  fp.s_plus_slope = sb.s_plus_slope;

  fp.sandwich_ok = true;
  for (std::size_t j = 0; j < fp.t.size(); ++j) {
    if (!(fp.nu_tilde_minus[j] < fp.s_minus_slope * fp.t[j]) ||
        !(fp.nu_tilde_plus[j] > fp.s_plus_slope * fp.t[j])) {
      fp.sandwich_ok = false;
      break;
    }
  }
  if (!fp.sandwich_ok)
    throw std::runtime_error(
        "fan_curves: boundary left the shock-ray sandwich");
  return fp;
}

MarginSweep margin_horizon(const ode::EpsDeltaSolution& eps,
                           const ode::TraceSpec& spec,
                           const fan::FanConstants& c) {
  MarginSweep sweep;
  bool prefix_alive = true;
  for (std::size_t j = 0; j < eps.grid.size(); ++j) {
    const double tj = eps.grid[j];
    const auto states = ode::boundary_traces(tj, spec);
    const auto sol = fan::solve_interface(states, c, eps.values[j]);
    const auto adm = fan::admissibility_margins(states, c, sol);
    sweep.t.push_back(tj);
    sweep.nu_minus.push_back(sol.nu_minus);
    sweep.nu_plus.push_back(sol.nu_plus);
    sweep.beta.push_back(sol.beta);
    sweep.margin_left.push_back(adm[0]);
    sweep.margin_right.push_back(adm[1]);
    sweep.eps1.push_back(sol.eps1());
    sweep.eps2L.push_back(sol.eps2L);
    sweep.eps2R.push_back(sol.eps2R);
    const bool ok = adm[0] > 0.0 && adm[1] > 0.0 && sol.eps1() > 0.0 &&
                    sol.eps2L > 0.0 && sol.eps2R > 0.0;
    if (j == 0) sweep.positive_at_first_node = ok;
    if (ok && prefix_alive)
      sweep.delta0 = tj;
    else
      prefix_alive = false;
  }
  return sweep;
}

// ---- pullback -----------------------------------------------------------------

double pullback_time(Side side, const FanPartition& fan, double x) {
  if (x == 0.0) return 0.0;
  if ((side == Side::Left) != (x < 0.0))
    throw std::domain_error("pullback_time: x on the wrong side");
  auto psi = [&](double h) {
    if (h <= 0.0) return -x;  // nu_tilde(0) = 0 and the trace stays bounded
    return fan.nu_tilde(side, h) - h * fan.spec->trace(side, h) - x;
  };
  const double hi = fan.T_end();
  const double p0 = -x;  // psi(0+) limit
  const double p1 = psi(hi);
  if (std::signbit(p0) == std::signbit(p1))
    throw std::runtime_error(
        "pullback_time: position outside the region covered by the fan "
        "boundary");
  // psi is monotone between the endpoints; bisect from the closed form at 0.
  double a = 0.0, b = hi, fa = p0;
  for (int it = 0; it < 500 && (b - a) > 1e-16 * hi; ++it) {
    const double mid = 0.5 * (a + b);
    const double fm = psi(mid);
    if (fm == 0.0) return mid;
    if (std::signbit(fm) == std::signbit(fa)) {
      a = mid;
      fa = fm;
    } else {
      b = mid;
    }
  }
  // Secant polish for relative accuracy on very small crossing times.
  double x0 = a, x1 = b, f0 = psi(a), f1 = psi(b);
  for (int it = 0; it < 12; ++it) {
    const double denom = f1 - f0;
    if (denom == 0.0) break;
    const double cand = (x0 * f1 - x1 * f0) / denom;
    if (!(cand > 0.0 && cand <= hi)) break;
    const double fc = psi(cand);
    x0 = x1;
    f0 = f1;
    x1 = cand;
    f1 = fc;
    if (fc == 0.0) break;
  }
  return x1;
}

PullbackMap pullback_h(Side side, const FanPartition& fan, double abs_x_min,
                       int points_per_decade) {
  PullbackMap map;
  map.side = side;
  const double sgn = side == Side::Left ? -1.0 : 1.0;
  // Reach of the pullback region on this side.
  const double reach =
      std::abs(fan.nu_tilde(side, fan.T_end()) -
               fan.T_end() * fan.spec->trace(side, fan.T_end()));
  const double decades = std::log10(0.98 * reach / abs_x_min);
  const int n = std::max(2, static_cast<int>(decades * points_per_decade));
  for (int i = 0; i <= n; ++i) {
    const double ax = abs_x_min * std::pow(10.0, decades * i / n);
    const double x = sgn * ax;
    map.x.push_back(x);
    map.h.push_back(pullback_time(side, fan, x));
  }
  // Slope via a linear-plus-quadratic fit through the two innermost samples.
  const double x1 = map.x[0], h1 = map.h[0];
  const double x2 = map.x[1], h2 = map.h[1];
  map.slope_at_zero = (h1 * x2 * x2 - h2 * x1 * x1) / (x1 * x2 * x2 - x2 * x1 * x1);
  return map;
}

// ---- hypothesis check -----------------------------------------------------------

namespace {

HypothesisReport envelope_scan(const std::function<double(double)>& h,
                               int expected_slope_sign, double abs_x_min,
                               double abs_x_max, double envelope_cap,
                               double side_sign) {
  HypothesisReport rep;
  const double q = 0.05;  // proportional step for the curvature differences
  const int per_decade = 8;
  const double decades = std::log10(abs_x_max / abs_x_min);
  const int n = std::max(4, static_cast<int>(decades * per_decade));

  double first_decade_max = 0.0, last_decade_max = 0.0, all_max = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double ax = abs_x_min * std::pow(10.0, decades * i / n);
    const double x = side_sign * ax;
    const double hpp =
        (h(x * (1 + q)) - 2.0 * h(x) + h(x * (1 - q))) / (q * ax * (q * ax));
    const double L = std::abs(std::log(ax));
    const double envelope = 1.0 + std::sqrt(L) + L;
    const double ratio = std::abs(hpp) * ax / envelope;
    all_max = std::max(all_max, ratio);
    if (ax < abs_x_min * 10.0) first_decade_max = std::max(first_decade_max, ratio);
    if (ax > abs_x_max / 10.0) last_decade_max = std::max(last_decade_max, ratio);
  }
  rep.envelope_max_ratio = all_max;
  rep.envelope_growth = first_decade_max / (last_decade_max + 1e-300);
  rep.envelope_ok = all_max <= envelope_cap && rep.envelope_growth <= 10.0;

  const double h_small = h(side_sign * abs_x_min);
  rep.origin_ok = std::abs(h_small) < 10.0 * abs_x_min;
  rep.slope_at_zero = h_small / (side_sign * abs_x_min);
  rep.slope_sign_ok =
      expected_slope_sign > 0 ? rep.slope_at_zero > 0.0 : rep.slope_at_zero < 0.0;
  rep.pass = rep.origin_ok && rep.slope_sign_ok && rep.envelope_ok;
  return rep;
}

}  // namespace

HypothesisReport hypothesis_check(Side side, const FanPartition& fan,
                                  double abs_x_min, double abs_x_max,
                                  double envelope_cap) {
  const double side_sign = side == Side::Left ? -1.0 : 1.0;
  auto h = [&](double x) { return pullback_time(side, fan, x); };
  // h_- decreases in x (negative slope); h_+ increases.
  const int expected = side == Side::Left ? -1 : +1;
  return envelope_scan(h, expected, abs_x_min, abs_x_max, envelope_cap,
                       side_sign);
}

HypothesisReport hypothesis_check_fn(const std::function<double(double)>& h,
                                     int expected_slope_sign, double abs_x_min,
                                     double abs_x_max, double envelope_cap) {
  return envelope_scan(h, expected_slope_sign, abs_x_min, abs_x_max,
                       envelope_cap, 1.0);
}

// ---- datum --------------------------------------------------------------------

euler::EulerState FanDatum::state0(double x) const {
  return euler::state_from_wave(profile.value(x), fan->spec->w1);
}

FanDatum build_initial_datum(std::shared_ptr<const FanPartition> fan,
                             double zeta1) {
  if (!fan) throw std::invalid_argument("build_initial_datum: null fan");
  FanDatum d;
  d.fan = fan;
  const auto spec = fan->spec;
  d.zeta1 = zeta1;
  d.b_minus = spec->lambda_minus - spec->zeta2_over_T;
  d.b_plus = spec->lambda_plus + spec->zeta2_over_T;

  // Stitch a hair inside the last solvable crossing time so the flank
  // endpoint derivatives can be differenced without leaving the region.
  const double t_reach = 0.999 * std::min(spec->delta, fan->T_end());
  auto stitch = [&](Side s, double time) {
    return fan->nu_tilde(s, time) - time * spec->trace(s, time);
  };
  d.zeta_bar_left = -stitch(Side::Left, t_reach);
  d.zeta_bar_right = stitch(Side::Right, t_reach);
  if (!(zeta1 > d.zeta_bar_left && zeta1 > d.zeta_bar_right))
    throw std::invalid_argument(
        "build_initial_datum: zeta1 must exceed the pullback reach");

  auto value_fn = [fan](Side s) {
    return [fan, s](double x) {
      if (x == 0.0)
        return s == Side::Left
                   ? fan->spec->lambda_minus - fan->spec->zeta2_over_T
                   : fan->spec->lambda_plus + fan->spec->zeta2_over_T;
      const double h = pullback_time(s, *fan, x);
      return fan->spec->trace(s, std::max(h, 1e-300));
    };
  };
  auto deriv_fn = [fan](Side s) {
    return [fan, s](double x) {
      const double h = std::max(pullback_time(s, *fan, x), 1e-300);
      const double tr = fan->spec->trace(s, h);
      const double dtr = fan->spec->trace_dt(s, h);
      const double denom = fan->nu_speed(s, h) - tr - h * dtr;
      return dtr / denom;
    };
  };

  profiles::LambdaProfile prof;
  prof.lambda_minus = spec->lambda_minus;
  prof.lambda_plus = spec->lambda_plus;
  prof.T = 1.0;
  prof.zeta2 = spec->zeta2_over_T;  // with T = 1 the ray slopes come out right
  prof.zeta1 = zeta1;
  prof.zeta_bar = std::min(d.zeta_bar_left, d.zeta_bar_right);
  prof.mode = profiles::DatumMode::Collapse;

  profiles::Piece left;
  left.kind = profiles::PieceKind::Callable;
  left.lo = -d.zeta_bar_left;
  left.hi = 0.0;
  left.fn = value_fn(Side::Left);
  left.dfn = deriv_fn(Side::Left);
  left.label = "fan_pullback_left";

  profiles::Piece right;
  right.kind = profiles::PieceKind::Callable;
  right.lo = 0.0;
  right.hi = d.zeta_bar_right;
  right.fn = value_fn(Side::Right);
  right.dfn = deriv_fn(Side::Right);
  right.label = "fan_pullback_right";

  // Flanks: quintic continuation from the pullback edge to the plateau.
  auto edge_data = [&](const profiles::Piece& p, double x) {
    const double h = std::max(1e-7 * std::abs(x), 1e-10);
    const double v = p.value(x);
    const double dv = p.derivative(x);
    const double d2v = (p.derivative(x + h) - p.derivative(x - h)) / (2.0 * h);
    return std::array<double, 3>{v, dv, d2v};
  };
  const auto eL = edge_data(left, -d.zeta_bar_left);
  const auto eR = edge_data(right, d.zeta_bar_right);

  profiles::Piece flankL;
  flankL.kind = profiles::PieceKind::Bridge;
  flankL.lo = -zeta1;
  flankL.hi = -d.zeta_bar_left;
  flankL.bridge = Quintic(-zeta1, -d.zeta_bar_left, spec->lambda_minus, 0.0,
                          0.0, eL[0], eL[1], eL[2]);

  profiles::Piece flankR;
  flankR.kind = profiles::PieceKind::Bridge;
  flankR.lo = d.zeta_bar_right;
  flankR.hi = zeta1;
  flankR.bridge = Quintic(d.zeta_bar_right, zeta1, eR[0], eR[1], eR[2],
                          spec->lambda_plus, 0.0, 0.0);

  // A flank that meets the pullback edge with the compressive slope while
  // climbing from the plateau necessarily carries one interior extremum
  // whenever f0(delta) > zeta2/T; monotonicity is reported, not required.
  const int sgnL = eL[0] >= spec->lambda_minus ? 1 : -1;
  const int sgnR = spec->lambda_plus >= eR[0] ? 1 : -1;
  d.flanks_monotone =
      flankL.bridge.monotone(sgnL) && flankR.bridge.monotone(sgnR);

  profiles::Piece lplat;
  lplat.kind = profiles::PieceKind::Constant;
  lplat.lo = -kInf;
  lplat.hi = -zeta1;
  lplat.constant = spec->lambda_minus;

  profiles::Piece rplat;
  rplat.kind = profiles::PieceKind::Constant;
  rplat.lo = zeta1;
  rplat.hi = kInf;
  rplat.constant = spec->lambda_plus;

  prof.pieces = {lplat, flankL, left, right, flankR, rplat};
  d.profile = std::move(prof);
  return d;
}

RoundTripResult round_trip_check(const FanDatum& datum, double t_lo,
                                 double t_hi, int samples) {
  if (!(t_lo > 0.0 && t_lo < t_hi))
    throw std::invalid_argument("round_trip_check: bad time window");
  burgers::CharSolution sol{datum.profile, 1.0, 1e-12};
  RoundTripResult rt;
  const double du = std::log(t_hi / t_lo) / samples;
  for (int i = 0; i <= samples; ++i) {
    const double t = i == samples ? t_hi : t_lo * std::exp(du * i);
    const double xm = datum.fan->nu_tilde(Side::Left, t);
    const double lm = burgers::eval_solution(t, xm, sol);
    rt.max_deviation_left = std::max(
        rt.max_deviation_left,
        std::abs(lm - datum.fan->spec->trace(Side::Left, t)));
    const double xp = datum.fan->nu_tilde(Side::Right, t);
    const double lp = burgers::eval_solution(t, xp, sol);
    rt.max_deviation_right = std::max(
        rt.max_deviation_right,
        std::abs(lp - datum.fan->spec->trace(Side::Right, t)));
  }
  return rt;
}

}  // namespace eulerfan::datum
