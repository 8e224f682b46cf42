#include "eulerfan/ode_epsilon.hpp"

#include <cmath>
#include <stdexcept>

#include "eulerfan/euler_map.hpp"
#include "eulerfan/profiles.hpp"

namespace eulerfan::ode {

namespace ct = eulerfan::constants;

// ---- traces -----------------------------------------------------------------

TraceSpec::TraceSpec(double zeta2_over_T_, double delta_, double delta_prime_) {
  zeta2_over_T = zeta2_over_T_;
  delta = delta_;
  delta_prime = delta_prime_;
  if (!(zeta2_over_T > 0.0))
    throw std::invalid_argument("TraceSpec: zeta2/T must be positive");
  if (!(delta > 0.0 && delta < delta_prime))
    throw std::invalid_argument("TraceSpec: needs 0 < delta < delta_prime");
  if (!(delta < 1.0))
    throw std::invalid_argument("TraceSpec: delta must lie below 1");

  const double f0d = profiles::f0_eval(delta);
  const double df0d = profiles::f0_derivative(delta, 1);
  const double d2f0d = profiles::f0_derivative(delta, 2);

  // The glue matches value and two derivatives at both ends. It cannot also
  // be monotone once f0(delta) exceeds zeta2/T (the f0 ramp enters rising
  // while the plateau sits below), so monotonicity is only guaranteed on
  // (0, delta); the glue is merely smooth.
  glue_left_ = Quintic(delta, delta_prime, f0d + lambda_minus - zeta2_over_T,
                       df0d, d2f0d, lambda_minus, 0.0, 0.0);
  glue_right_ = Quintic(delta, delta_prime, -f0d + lambda_plus + zeta2_over_T,
                        -df0d, -d2f0d, lambda_plus, 0.0, 0.0);

  // The closed-form branch needs rho_-^nu < 2 < rho_+^nu throughout.
  for (int i = 0; i <= 200; ++i) {
    const double t = delta_prime * std::pow(10.0, -10.0 * (1.0 - i / 200.0));
    const auto s = boundary_traces(t, *this);
    if (!(s.rho_minus_nu < ct::rho1_ref && ct::rho1_ref < s.rho_plus_nu))
      throw std::runtime_error(
          "TraceSpec: trace densities violate the wedge ordering");
  }
}

TraceSpec TraceSpec::constant_reference() {
  TraceSpec s;
  s.constant_mode_ = true;
  s.zeta2_over_T = 0.0;
  s.delta = 0.0;
  s.delta_prime = 0.0;
  return s;
}

double TraceSpec::trace(Side s, double t) const {
  if (!(t > 0.0)) throw std::domain_error("TraceSpec::trace: t must be > 0");
  if (constant_mode_) return s == Side::Left ? lambda_minus : lambda_plus;
  if (t < delta) {
    const double f = profiles::f0_eval(t);
    return s == Side::Left ? f + lambda_minus - zeta2_over_T
                           : -f + lambda_plus + zeta2_over_T;
  }
  if (t < delta_prime)
    return s == Side::Left ? glue_left_(t) : glue_right_(t);
  return s == Side::Left ? lambda_minus : lambda_plus;
}

double TraceSpec::trace_dt(Side s, double t) const {
  if (!(t > 0.0)) throw std::domain_error("TraceSpec::trace_dt: t must be > 0");
  if (constant_mode_ || t >= delta_prime) return 0.0;
  if (t < delta) {
    const double d = profiles::f0_derivative(t, 1);
    return s == Side::Left ? d : -d;
  }
  return s == Side::Left ? glue_left_.derivative(t)
                         : glue_right_.derivative(t);
}

fan::InterfaceStates boundary_traces(double t, const TraceSpec& spec) {
  const auto left = euler::state_from_wave(spec.trace(Side::Left, t), spec.w1);
  const auto right =
      euler::state_from_wave(spec.trace(Side::Right, t), spec.w1);
  return fan::InterfaceStates(left.rho, left.m2, right.rho, right.m2);
}

std::array<double, 4> boundary_traces_dt(double t, const TraceSpec& spec) {
  const double lm = spec.trace(Side::Left, t);
  const double lp = spec.trace(Side::Right, t);
  const double dlm = spec.trace_dt(Side::Left, t);
  const double dlp = spec.trace_dt(Side::Right, t);
  return {euler::drho_dlambda(lm, spec.w1) * dlm,
          euler::dm2_dlambda(lm, spec.w1) * dlm,
          euler::drho_dlambda(lp, spec.w1) * dlp,
          euler::dm2_dlambda(lp, spec.w1) * dlp};
}

// ---- coefficient functions ---------------------------------------------------

namespace {

// Interface states with their time derivatives and the derived jump
// quantities; everything eps_delta-independent.
struct Ingredients {
  double rm, mm, rp, mp;
  double drm, dmm, drp, dmp;
  double P, Q, R, A, H, B;
  double dP, dQ, dR, dA, dH, dB;
  double N, dN;
};

Ingredients ingredients(double t, const TraceSpec& spec,
                        const fan::FanConstants& c) {
  Ingredients g{};
  const auto s = boundary_traces(t, spec);
  const auto ds = boundary_traces_dt(t, spec);
  g.rm = s.rho_minus_nu;
  g.mm = s.m_minus2_nu;
  g.rp = s.rho_plus_nu;
  g.mp = s.m_plus2_nu;
  g.drm = ds[0];
  g.dmm = ds[1];
  g.drp = ds[2];
  g.dmp = ds[3];

  g.P = c.rho1 - g.rm;
  g.Q = g.rp - c.rho1;
  g.R = g.rm - g.rp;
  g.A = g.mm - g.mp;
  g.H = g.mm * g.mm / g.rm - g.mp * g.mp / g.rp + g.rm * g.rm - g.rp * g.rp;
  g.B = g.A * g.A - g.R * g.H;

  g.dP = -g.drm;
  g.dQ = g.drp;
  g.dR = g.drm - g.drp;
  g.dA = g.dmm - g.dmp;
  g.dH = (2.0 * g.mm * g.dmm * g.rm - g.mm * g.mm * g.drm) / (g.rm * g.rm) -
         (2.0 * g.mp * g.dmp * g.rp - g.mp * g.mp * g.drp) / (g.rp * g.rp) +
         2.0 * g.rm * g.drm - 2.0 * g.rp * g.drp;
  g.dB = 2.0 * g.A * g.dA - g.dR * g.H - g.R * g.dH;

  g.N = -g.mm * g.Q - g.mp * g.P;
  g.dN = -g.dmm * g.Q - g.mm * g.dQ - g.dmp * g.P - g.mp * g.dP;
  return g;
}

double radicand(const Ingredients& g, double eps) {
  return (-g.B + g.R * eps) * g.P * g.Q;
}

}  // namespace

double coeff_f(double t, double eps_delta, const TraceSpec& spec,
               const fan::FanConstants& c) {
  const auto g = ingredients(t, spec, c);
  const double W = -g.B + g.R * eps_delta;
  if (!(W > 0.0) || !(g.P > 0.0) || !(g.Q > 0.0))
    throw std::domain_error("coeff_f: radicand nonpositive");
  return g.P * g.Q / (2.0 * std::sqrt(W * g.P * g.Q));
}

double coeff_g(double t, double eps_delta, const TraceSpec& spec,
               const fan::FanConstants& c) {
  const auto g = ingredients(t, spec, c);
  const double W = -g.B + g.R * eps_delta;
  const double S2 = radicand(g, eps_delta);
  if (!(S2 > 0.0)) throw std::domain_error("coeff_g: radicand nonpositive");
  const double S = std::sqrt(S2);
  const double dW = -g.dB + g.dR * eps_delta;
  const double dS =
      (dW * g.P * g.Q + W * g.dP * g.Q + W * g.P * g.dQ) / (2.0 * S);
  return (g.dN + dS) / g.R - (g.N + S) * g.dR / (g.R * g.R);
}

double length_l(double t, const std::function<double(double)>& eps_path,
                const TraceSpec& spec, const fan::FanConstants& c,
                int n_quad) {
  if (!(t > 0.0)) throw std::domain_error("length_l: t must be positive");
  auto width = [&](double s) {
    const auto st = boundary_traces(s, spec);
    const auto sol = fan::solve_interface(st, c, eps_path(s));
    return sol.nu_plus - sol.nu_minus;
  };
  const double s0 = t * 1e-10;
  double acc = width(s0) * s0;  // constant-integrand model below the anchor
  const double du = std::log(t / s0) / n_quad;
  double prev_s = s0, prev_w = width(s0);
  for (int i = 1; i <= n_quad; ++i) {
    const double s = i == n_quad ? t : s0 * std::exp(du * i);
    const double w = width(s);
    acc += 0.5 * (prev_w + w) * (s - prev_s);  // exact for constant width
    prev_s = s;
    prev_w = w;
  }
  return acc;
}

// ---- Picard solver ------------------------------------------------------------

double EpsDeltaSolution::eps_at(double t) const {
  if (t <= t_anchor) return 0.0;
  if (t >= grid.back()) return values.back();
  // Linear interpolation in log time, anchored at (t_anchor, 0).
  if (t <= grid.front()) {
    const double w = std::log(t / t_anchor) / std::log(grid.front() / t_anchor);
    return w * values.front();
  }
  auto it = std::upper_bound(grid.begin(), grid.end(), t);
  const std::size_t j = static_cast<std::size_t>(it - grid.begin());
  const double w = std::log(t / grid[j - 1]) / std::log(grid[j] / grid[j - 1]);
  return values[j - 1] + w * (values[j] - values[j - 1]);
}

EpsDeltaSolution picard_solve(const TraceSpec& spec,
                              const fan::FanConstants& c,
                              const PicardOptions& opt) {
  if (!spec.constant_mode() &&
      !(opt.T_end <= std::min(spec.delta_prime, 0.5) + 1e-15))
    throw std::invalid_argument(
        "picard_solve: T_end must not exceed min(delta_prime, 1/2)");
  if (!(opt.T_end > opt.t_min) || !(opt.t_min > 0.0))
    throw std::invalid_argument("picard_solve: needs 0 < t_min < T_end");
  if (opt.grid_size < 8)
    throw std::invalid_argument("picard_solve: grid too small");
  if (!(opt.tol > 0.0)) throw std::invalid_argument("picard_solve: tol <= 0");

  const int n = opt.grid_size;
  const double du = std::log(opt.T_end / opt.t_min) / n;

  std::vector<double> t(static_cast<std::size_t>(n) + 1);
  t[0] = opt.t_min;
  for (int j = 1; j < n; ++j)
    t[static_cast<std::size_t>(j)] = opt.t_min * std::exp(du * j);
  t[static_cast<std::size_t>(n)] = opt.T_end;

  std::vector<Ingredients> ing;
  ing.reserve(t.size());
  for (double tj : t) ing.push_back(ingredients(tj, spec, c));

  const double ball = ct::eps_ball_radius;
  std::vector<double> eps(t.size(), 0.0), next(t.size(), 0.0);
  std::vector<double> nu_gap(t.size()), l(t.size()), k(t.size());
  std::vector<double> f(t.size()), gco(t.size());

  EpsDeltaSolution out;
  out.t_anchor = opt.t_min;
  out.grid.assign(t.begin() + 1, t.end());

  double prev_d = -1.0;
  int worse_streak = 0;
  for (int it = 1; it <= opt.max_iter; ++it) {
    // Sweep 1: closed-form speeds and coefficients along the previous path.
    for (std::size_t j = 0; j < t.size(); ++j) {
      const auto& gj = ing[j];
      const double W = -gj.B + gj.R * eps[j];
      const double S2 = W * gj.P * gj.Q;
      if (!(S2 > 0.0))
        throw std::runtime_error("picard_solve: radicand closed at a node");
      const double S = std::sqrt(S2);
      nu_gap[j] = -(std::sqrt(W * gj.Q / gj.P) + std::sqrt(W * gj.P / gj.Q)) /
                  gj.R;  // nu_+ - nu_-, positive since R < 0
      f[j] = gj.P * gj.Q / (2.0 * S);
      const double dW = -gj.dB + gj.dR * eps[j];
      const double dS =
          (dW * gj.P * gj.Q + W * gj.dP * gj.Q + W * gj.P * gj.dQ) / (2.0 * S);
      gco[j] = (gj.dN + dS) / gj.R - (gj.N + S) * gj.dR / (gj.R * gj.R);
    }
    // Sweep 2: wedge width (trapezoid in t, exact for frozen traces) and
    // kernel prefix (trapezoid in log t, where the integrand is mild).
    l[0] = nu_gap[0] * t[0];
    k[0] = 0.0;
    for (std::size_t j = 1; j < t.size(); ++j) {
      l[j] = l[j - 1] + 0.5 * (nu_gap[j - 1] + nu_gap[j]) * (t[j] - t[j - 1]);
      const double Lp = t[j - 1] / (l[j - 1] * f[j - 1]);
      const double Lc = t[j] / (l[j] * f[j]);
      k[j] = k[j - 1] + 0.5 * du * (Lp + Lc);
      if (!(k[j] >= k[j - 1]))  // damping kernel must stay in (0, 1]
        throw std::logic_error("picard_solve: kernel exponent not monotone");
    }
    // Sweep 3: the damped integral, advanced cell by cell so every
    // exponential stays bounded by one.
    next[0] = 0.0;
    double E = 0.0;
    for (std::size_t j = 1; j < t.size(); ++j) {
      const double dk = k[j] - k[j - 1];
      const double Gp = gco[j - 1] * t[j - 1] / f[j - 1];
      const double Gc = gco[j] * t[j] / f[j];
      E = std::exp(-dk) * (E + 0.5 * du * Gp) + 0.5 * du * Gc;
      next[j] = -E;
    }

    double d = 0.0;
    for (std::size_t j = 0; j < t.size(); ++j)
      d = std::max(d, std::abs(next[j] - eps[j]));
    out.sup_distances.push_back(d);
    eps.swap(next);
    out.iterations = it;

    for (double v : eps)
      if (std::abs(v) > ball)
        throw std::runtime_error(
            "picard_solve: iterate escaped the invariant ball");

    if (d < opt.tol) break;
    if (prev_d >= 0.0) {
      worse_streak = d >= prev_d ? worse_streak + 1 : 0;
      if (worse_streak >= 3)
        throw std::runtime_error("picard_solve: non-contraction detected");
    }
    prev_d = d;
    if (it == opt.max_iter)
      throw std::runtime_error("picard_solve: iteration budget exhausted");
  }

  out.values.assign(eps.begin() + 1, eps.end());
  out.measured_q = 0.0;
  for (std::size_t i = 1; i < out.sup_distances.size(); ++i)
    if (out.sup_distances[i - 1] > 0.0)
      out.measured_q = std::max(
          out.measured_q, out.sup_distances[i] / out.sup_distances[i - 1]);

  for (std::size_t j = 1; j < t.size(); ++j) {
    const double a = std::abs(eps[j]);
    out.max_abs_eps = std::max(out.max_abs_eps, a);
    out.bound_constant =
        std::max(out.bound_constant, a * std::sqrt(std::abs(std::log(t[j]))));
  }

  // Interior ODE residual f eps' + eps / l + g, with eps' differenced on the
  // log grid; reported over a window clear of both the singular origin and
  // the endpoint.
  out.residual_window_lo = 0.2 * opt.T_end;
  out.residual_window_hi = 0.95 * opt.T_end;
  double rmax = 0.0;
  for (std::size_t j = 1; j + 1 < t.size(); ++j) {
    if (t[j] < out.residual_window_lo || t[j] > out.residual_window_hi)
      continue;
    const double deps_dt = (eps[j + 1] - eps[j - 1]) / (2.0 * du) / t[j];
    const double r = f[j] * deps_dt + eps[j] / l[j] + gco[j];
    rmax = std::max(rmax, std::abs(r));
  }
  out.ode_residual_interior = rmax;
  return out;
}

}  // namespace eulerfan::ode
