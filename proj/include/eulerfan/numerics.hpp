#ifndef EULERFAN_NUMERICS_HPP
#define EULERFAN_NUMERICS_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace eulerfan {

struct RootResult {
  double x = 0.0;
  double fx = 0.0;
  double width = 0.0;  // final bracket width
  bool converged = false;
};

// Bracketed scalar root finder: bisection down to a narrow bracket, then a
// guarded secant polish. The map must be continuous with f(lo) and f(hi) of
// opposite sign (either may be zero). Robust next to the log-log singularity
// where derivative-based iterations stall.
template <class F>
RootResult find_root(F&& f, double lo, double hi, double xtol = 1e-13,
                     int max_iter = 200) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return {lo, 0.0, 0.0, true};
  if (fhi == 0.0) return {hi, 0.0, 0.0, true};
  if (std::signbit(flo) == std::signbit(fhi))
    throw std::runtime_error("find_root: endpoints do not bracket a root");

  double a = lo, b = hi, fa = flo, fb = fhi;
  for (int it = 0; it < max_iter && (b - a) > xtol; ++it) {
    double mid;
    // Secant step once the bracket is already narrow; fall back to bisection
    // whenever the step leaves the bracket interior.
    if ((b - a) < 1e-6 * (std::abs(a) + std::abs(b) + 1.0)) {
      mid = (a * fb - b * fa) / (fb - fa);
      if (!(mid > a && mid < b)) mid = 0.5 * (a + b);
    } else {
      mid = 0.5 * (a + b);
    }
    double fm = f(mid);
    if (fm == 0.0) return {mid, 0.0, 0.0, true};
    if (std::signbit(fm) == std::signbit(fa)) {
      a = mid;
      fa = fm;
    } else {
      b = mid;
      fb = fm;
    }
  }
  // Final secant polish inside the residual bracket.
  double x = (std::abs(fa) < std::abs(fb)) ? a : b;
  double x_other = (x == a) ? b : a;
  double fx = (x == a) ? fa : fb;
  double fx_other = (x == a) ? fb : fa;
  for (int it = 0; it < 8; ++it) {
    double denom = fx_other - fx;
    if (denom == 0.0) break;
    double cand = (x * fx_other - x_other * fx) / denom;
    if (!(cand >= a && cand <= b)) break;
    double fc = f(cand);
    x_other = x;
    fx_other = fx;
    x = cand;
    fx = fc;
    if (fx == 0.0) break;
  }
  return {x, fx, b - a, true};
}

// Quintic Hermite segment matching value, first and second derivative at both
// endpoints. Used for the smooth monotone gluing pieces.
class Quintic {
 public:
  Quintic() = default;
  Quintic(double x0, double x1, double p0, double m0, double s0, double p1,
          double m1, double s1)
      : x0_(x0), len_(x1 - x0) {
    if (!(len_ > 0.0)) throw std::invalid_argument("Quintic: empty interval");
    const double L = len_;
    c_[0] = p0;
    c_[1] = m0 * L;
    c_[2] = 0.5 * s0 * L * L;
    const double A = p1 - c_[0] - c_[1] - c_[2];
    const double B = m1 * L - c_[1] - 2.0 * c_[2];
    const double C = s1 * L * L - 2.0 * c_[2];
    c_[3] = 10.0 * A - 4.0 * B + 0.5 * C;
    c_[4] = -15.0 * A + 7.0 * B - C;
    c_[5] = 6.0 * A - 3.0 * B + 0.5 * C;
  }

  double operator()(double x) const {
    const double s = (x - x0_) / len_;
    double acc = 0.0;
    for (int k = 5; k >= 0; --k) acc = acc * s + c_[k];
    return acc;
  }
  double derivative(double x) const {
    const double s = (x - x0_) / len_;
    double acc = 0.0;
    for (int k = 5; k >= 1; --k) acc = acc * s + k * c_[k];
    return acc / len_;
  }
  double second_derivative(double x) const {
    const double s = (x - x0_) / len_;
    double acc = 0.0;
    for (int k = 5; k >= 2; --k) acc = acc * s + k * (k - 1) * c_[k];
    return acc / (len_ * len_);
  }

  double x0() const { return x0_; }
  double x1() const { return x0_ + len_; }
  const std::array<double, 6>& coeffs() const { return c_; }

  static Quintic from_coeffs(double x0, double x1,
                             const std::array<double, 6>& c) {
    Quintic q;
    q.x0_ = x0;
    q.len_ = x1 - x0;
    q.c_ = c;
    return q;
  }

  // Sampled strict monotonicity probe (sign = +1 nondecreasing, -1
  // nonincreasing; endpoint derivatives may vanish).
  bool monotone(int sign, int samples = 512) const {
    for (int i = 1; i < samples; ++i) {
      const double x = x0_ + len_ * i / samples;
      if (sign * derivative(x) < 0.0) return false;
    }
    return true;
  }

 private:
  double x0_ = 0.0;
  double len_ = 1.0;
  std::array<double, 6> c_{};
};

// Five-point central first/second difference oracles (test-grade helpers that
// also serve the adaptive-step evaluators in the library).
template <class F>
double central_diff1(F&& f, double x, double h) {
  return (8.0 * (f(x + h) - f(x - h)) - (f(x + 2 * h) - f(x - 2 * h))) /
         (12.0 * h);
}

template <class F>
double central_diff2(F&& f, double x, double h) {
  return (-(f(x + 2 * h) + f(x - 2 * h)) + 16.0 * (f(x + h) + f(x - h)) -
          30.0 * f(x)) /
         (12.0 * h * h);
}

}  // namespace eulerfan

#endif
