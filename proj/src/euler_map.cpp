#include "eulerfan/euler_map.hpp"

#include <cmath>
#include <stdexcept>

namespace eulerfan::euler {

EulerState::EulerState(double rho_, double m1_, double m2_)
    : rho(rho_), m1(m1_), m2(m2_) {
  if (!(rho > 0.0))
    throw std::domain_error("EulerState: density must be strictly positive");
}

WaveCoordinates wave_from_state(const EulerState& s) {
  const double v2 = s.m2 / s.rho;
  const double c = std::sqrt(2.0 * s.rho);   // sqrt(p'(rho))
  const double r = std::sqrt(8.0 * s.rho);   // integral of sqrt(p')/r
  return {v2 - c, v2 + c, v2 + r, v2 - r};
}

EulerState state_from_wave(double lambda1, double w1) {
  const double d = w1 - lambda1;
  if (!(d > 0.0))
    throw std::domain_error("state_from_wave: requires w1 > lambda1");
  const double rho = d * d / 18.0;
  const double m2 = rho * (2.0 * lambda1 + w1) / 3.0;
  return EulerState(rho, 0.0, m2);
}

double energy_density(const EulerState& s) {
  return s.rho * s.rho + (s.m1 * s.m1 + s.m2 * s.m2) / (2.0 * s.rho);
}

double drho_dlambda(double lambda1, double w1) {
  return -(w1 - lambda1) / 9.0;
}

double dm2_dlambda(double lambda1, double w1) {
  return -lambda1 * (w1 - lambda1) / 9.0;
}

}  // namespace eulerfan::euler
