#ifndef EULERFAN_BURGERS_HPP
#define EULERFAN_BURGERS_HPP

#include "eulerfan/profiles.hpp"

namespace eulerfan::burgers {

// Method-of-characteristics evaluator for a monotone piecewise datum.
struct CharSolution {
  profiles::LambdaProfile profile;
  double T;  // collapse time of the datum (inf when none)
  double root_tolerance = 1e-12;
};

struct FootResult {
  double r = 0.0;        // characteristic foot
  double residual = 0.0; // |x2 - (lambda(r) t + r)|
  bool saturated = false; // true when the true foot lies below double range
};

// Inverse characteristic map. Feet next to the log-log singular point can be
// smaller than the smallest positive double; the solver then pins the foot to
// the singular edge (within bracket width 1e-13) and flags it.
FootResult char_foot_detail(double t, double x2, const CharSolution& sol);

// Strict-contract variant: throws when the residual tolerance is not
// attainable (saturated feet) or when characteristics have crossed.
double char_foot(double t, double x2, const CharSolution& sol);

// lambda(t, x2). Equals lambda^0(foot); on saturated feet it evaluates the
// exact characteristic relation (x2 - r)/t instead.
double eval_solution(double t, double x2, const CharSolution& sol);

// Spatial derivative of order n (1..3). n = 1 uses
// lambda0'(r) / (1 + t lambda0'(r)); n >= 2 differences the foot map, which
// is the same as differencing eval_solution = (x2 - r(x2))/t but without the
// catastrophic cancellation of the linear part.
double eval_dx(double t, double x2, const CharSolution& sol, int n);

struct ShockBounds {
  double s_minus_slope;
  double s_plus_slope;
};

// Rays bounding the post-collapse shock: slopes (lambda_+ + lambda_- -+
// zeta2/T) / 2.
ShockBounds shock_bounds(double lambda_minus, double lambda_plus, double zeta2,
                         double T);

}  // namespace eulerfan::burgers

#endif
