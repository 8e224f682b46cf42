#include "eulerfan/burgers.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace eulerfan::burgers {

using profiles::Piece;
using profiles::PieceKind;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool has_jump(const CharSolution& sol) {
  return sol.profile.mode == profiles::DatumMode::Collapse;
}

// Picks the piece whose advected interval covers x2 at time t, restricted to
// one side of the shock cone for jump-type data.
const Piece& dispatch(double t, double x2, const CharSolution& sol) {
  const auto& pieces = sol.profile.pieces;
  if (t < 0.0) throw std::domain_error("char_foot: negative time");

  int side = 0;  // -1: left of the cone, +1: right, 0: unrestricted
  if (has_jump(sol) && t > 0.0) {
    const auto sb = shock_bounds(sol.profile.lambda_minus,
                                 sol.profile.lambda_plus, sol.profile.zeta2,
                                 sol.profile.T);
    if (x2 > sb.s_minus_slope * t && x2 < sb.s_plus_slope * t)
      throw std::domain_error(
          "char_foot: query inside the excluded post-shock cone");
    side = x2 <= sb.s_minus_slope * t ? -1 : +1;
  } else if (t >= sol.T) {
    throw std::domain_error(
        "char_foot: smooth-datum queries require t < collapse time");
  }

  const Piece* found = nullptr;
  for (const auto& p : pieces) {
    if (side < 0 && p.lo >= 0.0) continue;
    if (side > 0 && p.hi <= 0.0) continue;
    const double vlo = std::isinf(p.lo) ? p.constant : p.value(p.lo);
    const double vhi = std::isinf(p.hi) ? p.constant : p.value(p.hi);
    const double ilo = std::isinf(p.lo) ? -kInf : p.lo + t * vlo;
    const double ihi = std::isinf(p.hi) ? kInf : p.hi + t * vhi;
    if (ilo > ihi)
      continue;  // folded piece: its interior has crossed; covered by cone
    if (x2 > ilo && x2 <= ihi) {
      if (found)
        throw std::domain_error(
            "char_foot: characteristics crossed at the query point");
      found = &p;
    }
  }
  if (!found)
    throw std::domain_error("char_foot: no characteristic reaches the query");
  return *found;
}

}  // namespace

namespace {

double residual_scale(double t, double x2, const Piece& p) {
  const double vlo = std::isinf(p.lo) ? p.constant : p.value(p.lo);
  const double vhi = std::isinf(p.hi) ? p.constant : p.value(p.hi);
  return std::max(1.0,
                  std::abs(x2) + t * (std::abs(vlo) + std::abs(vhi)));
}

}  // namespace

FootResult char_foot_detail(double t, double x2, const CharSolution& sol) {
  if (t == 0.0) return {x2, 0.0, false};
  const Piece& p = dispatch(t, x2, sol);

  // Exact feet on pieces with closed-form inverses.
  if (p.kind == PieceKind::Constant) return {x2 - t * p.constant, 0.0, false};
  if (p.kind == PieceKind::Linear) {
    const double T = p.linear_T;
    if (t >= T) throw std::domain_error("char_foot: focusing core collapsed");
    return {x2 * T / (T - t), 0.0, false};
  }

  auto phi = [&](double r) { return r + t * p.value(r) - x2; };
  auto root = find_root(phi, p.lo, p.hi, 1e-13);
  const double tol = sol.root_tolerance * residual_scale(t, x2, p);
  if (std::abs(root.fx) <= tol) return {root.x, std::abs(root.fx), false};

  // Composite pieces anchor their f0 argument at x = 0. When the final
  // bracket hugs that edge with a residual bisection cannot burn down, the
  // true foot lies below double range: pin the foot to the edge so repeated
  // evaluations difference cleanly.
  if (p.kind == PieceKind::Composite &&
      std::abs(root.x) <= 2.0 * root.width + 1e-300) {
    return {0.0, std::abs(phi(0.0)), true};
  }
  // Steep but resolved root: the foot is converged in r (bracket width
  // 1e-13) even though the residual in x2 units exceeds the tolerance.
  if (root.width <= 1e-12) return {root.x, std::abs(root.fx), false};
  throw std::runtime_error("char_foot: root polish failed to converge");
}

double char_foot(double t, double x2, const CharSolution& sol) {
  const auto f = char_foot_detail(t, x2, sol);
  if (f.saturated)
    throw std::runtime_error(
        "char_foot: foot below floating-point resolution at the singular "
        "edge");
  if (t > 0.0) {
    const double tol = sol.root_tolerance *
                       residual_scale(t, x2, sol.profile.piece_at(f.r));
    if (f.residual > tol)
      throw std::runtime_error("char_foot: residual above tolerance");
  }
  return f.r;
}

double eval_solution(double t, double x2, const CharSolution& sol) {
  if (t == 0.0) return sol.profile.value(x2);
  const auto f = char_foot_detail(t, x2, sol);
  const double tol =
      sol.root_tolerance * residual_scale(t, x2, sol.profile.piece_at(f.r));
  if (f.saturated || f.residual > tol) return (x2 - f.r) / t;
  return sol.profile.value(f.r);
}

double eval_dx(double t, double x2, const CharSolution& sol, int n) {
  if (n < 1 || n > 3) throw std::domain_error("eval_dx: order must be 1..3");
  if (t == 0.0) {
    if (n == 1) return sol.profile.derivative(x2);
    if (n == 2) return sol.profile.second_derivative(x2);
    const double h = std::max(1e-6 * std::abs(x2), 1e-12);
    return (sol.profile.second_derivative(x2 + h) -
            sol.profile.second_derivative(x2 - h)) /
           (2.0 * h);
  }
  if (n == 1) {
    const auto f = char_foot_detail(t, x2, sol);
    if (f.saturated) return 1.0 / t;
    const double d = sol.profile.piece_at(f.r).derivative(f.r);
    if (!std::isfinite(d) || std::abs(t * d) > 1e15) return 1.0 / t;
    return d / (1.0 + t * d);
  }

  // lambda(t,x) = (x - r(x))/t exactly, so spatial differences of the
  // solution reduce to differences of the foot map; differencing r avoids
  // cancelling the linear part of lambda against itself.
  const double h = std::max(1e-6 * std::abs(x2), 1e-12);
  auto foot = [&](double x) { return char_foot_detail(t, x, sol).r; };
  if (n == 2) {
    const double d2r = foot(x2 + h) - 2.0 * foot(x2) + foot(x2 - h);
    return -d2r / (t * h * h);
  }
  const double d3r = foot(x2 + 2 * h) - 2.0 * foot(x2 + h) +
                     2.0 * foot(x2 - h) - foot(x2 - 2 * h);
  return -d3r / (2.0 * t * h * h * h);
}

ShockBounds shock_bounds(double lambda_minus, double lambda_plus, double zeta2,
                         double T) {
  if (!(lambda_minus > lambda_plus))
    throw std::domain_error("shock_bounds: needs lambda_- > lambda_+");
  if (zeta2 < 0.0 || !(T > 0.0))
    throw std::domain_error("shock_bounds: needs zeta2 >= 0 and T > 0");
  const double mid = 0.5 * (lambda_plus + lambda_minus);
  return {mid - 0.5 * zeta2 / T, mid + 0.5 * zeta2 / T};
}

}  // namespace eulerfan::burgers
