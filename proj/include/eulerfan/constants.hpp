#ifndef EULERFAN_CONSTANTS_HPP
#define EULERFAN_CONSTANTS_HPP

#include <cmath>

namespace eulerfan::constants {

inline const double sqrt2 = std::sqrt(2.0);
inline const double sqrt8 = std::sqrt(8.0);
inline const double sqrt13 = std::sqrt(13.0);
inline const double sqrt26 = std::sqrt(26.0);
inline const double sqrt32 = std::sqrt(32.0);

// Riemann fan reference data: (rho, v2) = (1, sqrt8) on the left and (4, 0)
// on the right, both on the 1-wave curve w1 = 4*sqrt2.
inline const double w1_ref = 4.0 * sqrt2;
inline const double lambda_minus_ref = sqrt2;
inline const double lambda_plus_ref = -2.0 * sqrt2;

inline const double rho1_ref = 2.0;
inline const double K_ref = (58.0 + 2.0 * sqrt13) / 9.0;

// Exact piecewise-constant fan subsolution for the reference Riemann datum.
inline const double nu_minus_ref = (-sqrt8 - sqrt26) / 3.0;
inline const double nu_plus_ref = (sqrt26 - sqrt32) / 6.0;
inline const double beta_ref = (sqrt32 - sqrt26) / 3.0;
inline const double eps1_ref = (50.0 + 16.0 * sqrt13) / 9.0;
inline const double eps2_ref = 1.0;

// Interface-state differences at the reference datum.
inline const double R_bar = -3.0;
inline const double A_bar = sqrt8;
inline const double H_bar = -7.0;
inline const double B_bar = -13.0;

// Invariant ball radius |B_bar| / (2 |R_bar|) used by the fixed-point solver.
inline const double eps_ball_radius = 13.0 / 6.0;

}  // namespace eulerfan::constants

#endif
