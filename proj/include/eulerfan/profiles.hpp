#ifndef EULERFAN_PROFILES_HPP
#define EULERFAN_PROFILES_HPP

#include <functional>
#include <string>
#include <vector>

#include "eulerfan/numerics.hpp"

namespace eulerfan::profiles {

// f0(x) = 1 - (2/pi) atan(log|log x|) on (0,1). Increasing, f0 -> 0 as
// x -> 0+ (triple-logarithmically slowly), f0(1/e) = 1.
double f0_eval(double x);

// n = 1, 2: closed forms. n = 3, 4: nested central differences of the n = 2
// closed form; only the decay behaviour of these is ever asserted.
double f0_derivative(double x, int n);

// f0 extended by its limit value at 0; used at piece edges only.
double f0_limit0(double x);

struct F0Params {
  double a_plus = 1.0;
  double a_minus = 1.0;
  double b_plus = 0.0;
  double b_minus = 0.0;
  double zeta_bar = 0.0;

  // b_minus = lambda_minus - zeta2/T, b_plus = lambda_plus + zeta2/T.
  static F0Params reference(double lambda_minus, double lambda_plus, double T,
                            double zeta2, double zeta_bar, double a_minus = 1.0,
                            double a_plus = 1.0);
};

// Linear reparametrizations h_pm(x) = k_pm * x with k_minus < 0 < k_plus.
struct HSpec {
  double k_minus = -1.0;
  double k_plus = 1.0;
};

enum class PieceKind {
  Constant,
  Linear,            // -x / T
  Composite,         // a * f0(slope * x) + b
  Bridge,            // quintic Hermite segment
  AdvectedComposite, // composite pulled back along characteristics
  AdvectedBridge,
  Callable           // externally defined (fan pullback); not serializable
};

struct Piece {
  PieceKind kind = PieceKind::Constant;
  double lo = 0.0;  // covers (lo, hi]; +-inf at the outer ends
  double hi = 0.0;

  double constant = 0.0;           // Constant
  double linear_T = 1.0;           // Linear
  double a = 0.0, b = 0.0, slope = 1.0;  // Composite (also the advected base)
  Quintic bridge;                  // Bridge (also the advected base)
  double horizon = 0.0;            // Advected*: pullback time
  std::function<double(double)> fn, dfn;  // Callable
  std::string label;

  double value(double x) const;
  double derivative(double x) const;
  double second_derivative(double x) const;
};

enum class DatumMode { Collapse, Initial };

// Piecewise description of a Burgers datum lambda_1^0 (or of the
// collapse-time profile when built in Collapse mode).
struct LambdaProfile {
  double lambda_minus = 0.0;
  double lambda_plus = 0.0;
  double T = 1.0;
  double zeta1 = 0.0;
  double zeta2 = 0.0;
  double zeta_bar = 0.0;
  DatumMode mode = DatumMode::Initial;
  std::vector<Piece> pieces;

  double value(double x) const;
  double derivative(double x) const;
  double second_derivative(double x) const;
  const Piece& piece_at(double x) const;
  std::vector<double> breakpoints() const;  // interior boundaries
};

// Builds the smooth compression-wave datum. Collapse mode yields the
// discontinuous collapse-time profile (plateau / bridge / composite | jump |
// composite / bridge / plateau); Initial mode pulls every non-plateau piece
// back along its own characteristics by T and inserts the focusing linear
// core -x/T.
//
// Demands lambda_minus > lambda_plus, 0 < zeta2 < zeta1 < 1 (zeta2 = 0 is
// accepted only with a_pm = 0, which degenerates to the Riemann datum),
// 0 < zeta_bar < zeta1/2, and monotone bridges (checked, error otherwise).
LambdaProfile build_compression_datum(double lambda_minus, double lambda_plus,
                                      double T, double zeta1, double zeta2,
                                      const F0Params& f0p, const HSpec& h,
                                      DatumMode mode);

// Increasing datum equal to f0 on (0, upper]; the configuration of the
// derivative-limit studies.
LambdaProfile f0_wave_datum(double upper = 0.9);

std::string serialize_profile(const LambdaProfile& p);
LambdaProfile deserialize_profile(const std::string& text);

}  // namespace eulerfan::profiles

#endif
