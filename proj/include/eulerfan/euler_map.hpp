#ifndef EULERFAN_EULER_MAP_HPP
#define EULERFAN_EULER_MAP_HPP

namespace eulerfan::euler {

// Momentum-form state for p(rho) = rho^2; the construction keeps m1 = 0.
struct EulerState {
  double rho;
  double m1;
  double m2;

  EulerState(double rho_, double m1_, double m2_);
  double v2() const { return m2 / rho; }
};

struct WaveCoordinates {
  double lambda1;
  double lambda2;
  double w1;
  double w2;
};

// lambda_1,2 = v2 -+ sqrt(2 rho), w_1,2 = v2 +- sqrt(8 rho).
WaveCoordinates wave_from_state(const EulerState& s);

// Inverse on {w1 > lambda1}: rho = (w1 - lambda1)^2 / 18,
// m2 = rho (2 lambda1 + w1) / 3, m1 = 0.
EulerState state_from_wave(double lambda1, double w1);

// rho^2 + |m|^2 / (2 rho); the pressure law gives e(rho) = rho.
double energy_density(const EulerState& s);

// d rho / d lambda1 and d m2 / d lambda1 at fixed w1; the trace derivatives
// of the fan boundary data flow through these.
double drho_dlambda(double lambda1, double w1);
double dm2_dlambda(double lambda1, double w1);

}  // namespace eulerfan::euler

#endif
