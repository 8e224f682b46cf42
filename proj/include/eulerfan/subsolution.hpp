#ifndef EULERFAN_SUBSOLUTION_HPP
#define EULERFAN_SUBSOLUTION_HPP

#include <array>
#include <string>
#include <vector>

#include "eulerfan/constants.hpp"

namespace eulerfan::fan {

// Fixed wedge data: rho1 = 2 and K = (58 + 2 sqrt13)/9 in the reference
// configuration; alpha and gamma2 vanish identically under the ansatz.
struct FanConstants {
  double rho1 = constants::rho1_ref;
  double K = constants::K_ref;
  double alpha = 0.0;
  double gamma2 = 0.0;
};

// Traces (rho, m2) of the outer smooth solution on the two fan boundaries.
struct InterfaceStates {
  double rho_minus_nu;
  double m_minus2_nu;
  double rho_plus_nu;
  double m_plus2_nu;

  InterfaceStates(double rm, double mm, double rp, double mp);
};

struct RABQuantities {
  double R;  // rho_-^nu - rho_+^nu
  double A;  // m_-2^nu - m_+2^nu
  double H;
  double B;  // A^2 - R H
};

RABQuantities rab_quantities(const InterfaceStates& s);

// Product-form restatement of B; used as an algebraic cross-check.
double rab_B_product_form(const InterfaceStates& s);

// Interface speeds, wedge momentum and the linear-in-x2 margin variables.
// eps2 is linear across the wedge with boundary values eps2L/eps2R; the
// pointwise identity 2 rho1^2 + (beta^2/rho1 + eps1 + eps2)/2 = rho1 K then
// forces eps1 to be linear as well, with boundary values eps1L/eps1R.
struct InterfaceSolution {
  double nu_minus;
  double nu_plus;
  double beta;
  double eps2L;
  double eps2R;
  double eps_delta;  // eps2L - eps2R
  double eps1L;
  double eps1R;
  double C1;       // beta^2/rho1 + eps1 + eps2 (x2-independent)
  double gamma1L;  // eps2 - C1/2 at each boundary
  double gamma1R;

  double eps1() const { return eps1L < eps1R ? eps1L : eps1R; }
  double gamma1() const { return gamma1L; }
};

// Closed-form solution branch of the two-interface jump conditions for
// given eps_delta. Requires rho1 between the boundary densities and
// -B + R eps_delta > 0.
InterfaceSolution solve_interface(const InterfaceStates& s,
                                  const FanConstants& c, double eps_delta);

// LHS - RHS of the four jump conditions, ordered: left continuity, left
// momentum, right continuity, right momentum.
std::array<double, 4> rh_residuals(const InterfaceStates& s,
                                   const FanConstants& c,
                                   const InterfaceSolution& sol);

// RHS - LHS of the two energy-flux inequalities; positive means strictly
// admissible.
std::array<double, 2> admissibility_margins(const InterfaceStates& s,
                                            const FanConstants& c,
                                            const InterfaceSolution& sol);

struct SubsolutionMargins {
  double eps1;  // min over the two boundary values
  double eps2L;
  double eps2R;
};

SubsolutionMargins subsolution_margins(const InterfaceSolution& sol,
                                       const FanConstants& c);

// Positive definiteness of (C1/2) I - m (x) m / rho1 + u1 via leading
// principal minors.
bool matrix_pd_check(double rho1, double alpha, double beta, double gamma1,
                     double gamma2, double C1);

// eps1 = 2 rho1 K - 4 rho1^2 - beta^2/rho1 - eps2.
double epsilon1_from_K(double rho1, double beta, double eps2, double K);

// ---- pre-ansatz full system ------------------------------------------------

// Wedge data with alpha, gamma2 free; C1 and gamma1 carried per boundary.
struct GeneralWedgeData {
  double rho1;
  double alpha;
  double beta;
  double gamma1L, gamma1R;
  double gamma2;
  double C1L, C1R;
  double K;
};

struct FullSystemResult {
  std::array<double, 6> rh;          // 3 left + 3 right jump residuals
  std::array<double, 2> adm_margin;  // energy inequalities, RHS - LHS
  double sub_trace_margin;           // rho1 C1 - (alpha^2 + beta^2)
  double sub_det_margin;
  std::array<double, 2> K_residual;  // 2 rho1^2 + C1/2 - rho1 K per boundary
};

// Evaluates the general jump/admissibility system (m1 traces zero); used by
// the tests that confirm the ansatz reductions.
FullSystemResult full_system_residuals(const InterfaceStates& s,
                                       const GeneralWedgeData& w,
                                       double nu_minus, double nu_plus);

// ---- reference-configuration verification ----------------------------------

struct CheckLine {
  std::string name;
  double value;
  double threshold;
  bool pass;
};

struct RiemannReport {
  std::vector<CheckLine> checks;
  bool all_pass = true;

  const CheckLine* find(const std::string& name) const;
};

// Assembles the reference Riemann states and wedge constants, then checks
// jump residuals, admissibility, subsolution margins, positive definiteness,
// endpoint-state reconstruction, the shock-ray ordering, and closed-form
// solvability over the (delta_hat, eps_bar) neighborhood box.
RiemannReport verify_riemann_subsolution(const FanConstants& c = {},
                                         double zeta2_over_T = 0.1,
                                         double delta_hat = 0.05,
                                         double eps_bar = 0.1);

}  // namespace eulerfan::fan

#endif
