#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "doctest.h"
#include "eulerfan/constants.hpp"
#include "eulerfan/subsolution.hpp"

using namespace eulerfan;
using namespace eulerfan::fan;
namespace ct = eulerfan::constants;

namespace {
InterfaceStates reference_states() {
  return InterfaceStates(1.0, ct::sqrt8, 4.0, 0.0);
}
// First-run golden values for the reference admissibility margins; the
// construction asserts strict positivity without printing them.
const double kGoldenMarginLeft = 1.1124549016910097;
const double kGoldenMarginRight = 0.8351448187953032;
}  // namespace

TEST_CASE("jump quantities at the reference states") {
  const auto q = rab_quantities(reference_states());
  CHECK(q.R == doctest::Approx(-3.0).epsilon(1e-14));
  CHECK(q.A == doctest::Approx(ct::sqrt8).epsilon(1e-14));
  CHECK(q.H == doctest::Approx(-7.0).epsilon(1e-14));
  CHECK(q.B == doctest::Approx(-13.0).epsilon(1e-14));

  const auto z = rab_quantities(InterfaceStates(1.7, 0.4, 1.7, 0.4));
  CHECK(z.R == 0.0);
  CHECK(z.A == 0.0);
  CHECK(z.H == 0.0);
  CHECK(z.B == 0.0);
}

TEST_CASE("difference and product forms of B agree") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> ur(0.2, 6.0), um(-4.0, 4.0);
  for (int i = 0; i < 500; ++i) {
    const InterfaceStates s(ur(rng), um(rng), ur(rng), um(rng));
    const auto q = rab_quantities(s);
    CHECK(q.B ==
          doctest::Approx(rab_B_product_form(s)).scale(1.0 + std::abs(q.B)).epsilon(1e-12));
  }
}

TEST_CASE("closed form reproduces the reference wedge constants") {
  const auto sol = solve_interface(reference_states(), FanConstants{}, 0.0);
  CHECK(sol.nu_minus == doctest::Approx(ct::nu_minus_ref).epsilon(1e-14));
  CHECK(sol.nu_plus ==
        doctest::Approx(ct::nu_plus_ref).scale(1.0).epsilon(1e-14));
  CHECK(sol.beta == doctest::Approx(ct::beta_ref).epsilon(1e-13));
  CHECK(sol.eps2L == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(sol.eps2R == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(sol.eps1() == doctest::Approx(ct::eps1_ref).epsilon(1e-13));
  CHECK(sol.nu_minus < sol.nu_plus);
  // Numeric decimals quoted for the speeds.
  CHECK(sol.nu_minus == doctest::Approx(-2.642482).epsilon(1e-6));
  CHECK(sol.nu_plus == doctest::Approx(-0.092972).epsilon(1e-5));
}

TEST_CASE("radicand closes at eps_delta = 13/3") {
  CHECK_THROWS_AS(
      solve_interface(reference_states(), FanConstants{}, 13.0 / 3.0),
      std::domain_error);
  CHECK_THROWS_AS(
      solve_interface(InterfaceStates(2.5, 1.0, 4.0, 0.0), FanConstants{}, 0.0),
      std::domain_error);  // density ordering violated
}

TEST_CASE("perturbed states keep the jump residuals tiny") {
  const InterfaceStates s(1.02, 2.8, 3.95, 0.05);
  const auto sol = solve_interface(s, FanConstants{}, 0.05);
  for (double r : rh_residuals(s, FanConstants{}, sol))
    CHECK(std::abs(r) < 1e-10);
}

TEST_CASE("closed form / residual duality over the neighborhood box") {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> pm(-0.05, 0.05), ue(-0.1, 0.1);
  for (int i = 0; i < 1000; ++i) {
    const InterfaceStates s(1.0 + pm(rng), ct::sqrt8 + pm(rng), 4.0 + pm(rng),
                            pm(rng));
    const double eps = ue(rng);
    const auto sol = solve_interface(s, FanConstants{}, eps);
    for (double r : rh_residuals(s, FanConstants{}, sol))
      CHECK(std::abs(r) < 1e-10);
    CHECK(sol.nu_minus < sol.nu_plus);
    CHECK(sol.eps2L - sol.eps2R ==
          doctest::Approx(eps).scale(1.0).epsilon(1e-12));
  }
}

TEST_CASE("corrupting the wedge momentum breaks the left residuals") {
  const auto s = reference_states();
  auto sol = solve_interface(s, FanConstants{}, 0.0);
  sol.beta += 0.1;
  const auto rh = rh_residuals(s, FanConstants{}, sol);
  CHECK(std::abs(rh[0]) >= 0.05);
  CHECK(std::abs(rh[1]) >= 0.05);
}

TEST_CASE("admissibility margins at the reference configuration") {
  const auto s = reference_states();
  const auto sol = solve_interface(s, FanConstants{}, 0.0);
  const auto m = admissibility_margins(s, FanConstants{}, sol);
  CHECK(m[0] > 0.0);
  CHECK(m[1] > 0.0);
  CHECK(m[0] == doctest::Approx(kGoldenMarginLeft).epsilon(1e-12));
  CHECK(m[1] == doctest::Approx(kGoldenMarginRight).epsilon(1e-12));

  // A runaway left interface flips the sign of the left margin.
  auto bad = sol;
  bad.nu_minus = -100.0;
  CHECK(admissibility_margins(s, FanConstants{}, bad)[0] < 0.0);

  // Margins move continuously with eps_delta.
  const auto sol2 = solve_interface(s, FanConstants{}, 0.01);
  const auto m2 = admissibility_margins(s, FanConstants{}, sol2);
  CHECK(std::abs(m2[0] - m[0]) < 0.1);
  CHECK(std::abs(m2[1] - m[1]) < 0.1);
}

TEST_CASE("subsolution margins and the definiteness test") {
  const auto sol = solve_interface(reference_states(), FanConstants{}, 0.0);
  const auto sm = subsolution_margins(sol, FanConstants{});
  CHECK(sm.eps1 == doctest::Approx(11.965424).epsilon(1e-6));
  CHECK(sm.eps2L == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(matrix_pd_check(2.0, 0.0, sol.beta, sol.gamma1L, 0.0, sol.C1));

  // eps1 = 0 puts the matrix on the semidefinite boundary.
  const double C1 = sol.beta * sol.beta / 2.0 + 0.0 + sol.eps2L;
  const double gamma1 = sol.eps2L - 0.5 * C1;
  CHECK_FALSE(matrix_pd_check(2.0, 0.0, sol.beta, gamma1, 0.0, C1));
}

TEST_CASE("definiteness is equivalent to positive margin pair") {
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> ue(-2.0, 8.0), ub(-2.0, 2.0);
  for (int i = 0; i < 1000; ++i) {
    const double eps1 = ue(rng), eps2 = ue(rng), beta = ub(rng);
    const double rho1 = 2.0;
    const double C1 = beta * beta / rho1 + eps1 + eps2;
    const double gamma1 = eps2 - 0.5 * C1;
    const bool pd = matrix_pd_check(rho1, 0.0, beta, gamma1, 0.0, C1);
    CHECK(pd == (eps1 > 0.0 && eps2 > 0.0));
  }
}

TEST_CASE("margins vary with a finite sampled Lipschitz constant") {
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> pm(-0.05, 0.05), ue(-0.1, 0.1),
      step(-1e-4, 1e-4);
  double worst_ratio = 0.0;
  for (int i = 0; i < 300; ++i) {
    const double dr = pm(rng), dm = pm(rng), drp = pm(rng), dmp = pm(rng);
    const double eps = ue(rng);
    const fan::InterfaceStates s1(1.0 + dr, ct::sqrt8 + dm, 4.0 + drp, dmp);
    const double hr = step(rng), hm = step(rng), he = step(rng);
    const fan::InterfaceStates s2(1.0 + dr + hr, ct::sqrt8 + dm + hm,
                                  4.0 + drp, dmp);
    const auto m1 = fan::admissibility_margins(
        s1, fan::FanConstants{}, fan::solve_interface(s1, fan::FanConstants{}, eps));
    const auto m2 = fan::admissibility_margins(
        s2, fan::FanConstants{},
        fan::solve_interface(s2, fan::FanConstants{}, eps + he));
    const double din = std::abs(hr) + std::abs(hm) + std::abs(he);
    if (din < 1e-8) continue;
    const double dout =
        std::abs(m2[0] - m1[0]) + std::abs(m2[1] - m1[1]);
    worst_ratio = std::max(worst_ratio, dout / din);
  }
  CHECK(worst_ratio < 50.0);
  CHECK(worst_ratio > 0.0);
}

TEST_CASE("flux identity closure") {
  const double eps1 =
      epsilon1_from_K(2.0, ct::beta_ref, 1.0, ct::K_ref);
  CHECK(eps1 == doctest::Approx(ct::eps1_ref).epsilon(1e-13));
  CHECK(epsilon1_from_K(1.5, 0.0, 0.0, 3.0) ==
        doctest::Approx(0.0).scale(1.0).epsilon(1e-14));
  // Recovering K from the returned eps1 closes the loop.
  const double K_back =
      (2.0 * 2.0 * 2.0 + 0.5 * (ct::beta_ref * ct::beta_ref / 2.0 + eps1 + 1.0)) /
      2.0;
  CHECK(K_back == doctest::Approx(ct::K_ref).epsilon(1e-13));
}

TEST_CASE("general system reduces to the simplified one under the ansatz") {
  std::mt19937 rng(29);
  std::uniform_real_distribution<double> pm(-0.04, 0.04), ue(-0.08, 0.08);
  for (int i = 0; i < 200; ++i) {
    const InterfaceStates s(1.0 + pm(rng), ct::sqrt8 + pm(rng), 4.0 + pm(rng),
                            pm(rng));
    const double eps = ue(rng);
    const FanConstants c;
    const auto sol = solve_interface(s, c, eps);

    GeneralWedgeData w{};
    w.rho1 = c.rho1;
    w.alpha = 0.0;
    w.gamma2 = 0.0;
    w.beta = sol.beta;
    w.gamma1L = sol.gamma1L;
    w.gamma1R = sol.gamma1R;
    w.C1L = sol.C1;
    w.C1R = sol.C1;
    w.K = c.K;
    const auto full = full_system_residuals(s, w, sol.nu_minus, sol.nu_plus);

    for (double r : full.rh) CHECK(std::abs(r) < 1e-10);
    for (double r : full.K_residual) CHECK(std::abs(r) < 1e-10);

    const auto adm = admissibility_margins(s, c, sol);
    CHECK(full.adm_margin[0] == doctest::Approx(adm[0]).epsilon(1e-10));
    CHECK(full.adm_margin[1] == doctest::Approx(adm[1]).epsilon(1e-10));

    CHECK(full.sub_trace_margin > 0.0);
    CHECK(full.sub_det_margin > 0.0);
  }

  // Nonzero transverse data shows up in the first-momentum residuals.
  GeneralWedgeData w{};
  w.rho1 = 2.0;
  w.alpha = 0.3;
  w.gamma2 = 0.2;
  w.beta = ct::beta_ref;
  w.gamma1L = w.gamma1R = -1.0;
  w.C1L = w.C1R = 10.0;
  w.K = ct::K_ref;
  const auto full =
      full_system_residuals(reference_states(), w, ct::nu_minus_ref,
                            ct::nu_plus_ref);
  CHECK(std::abs(full.rh[1]) > 0.1);
  CHECK(std::abs(full.rh[4]) > 0.1);
}

TEST_CASE("reference verification report") {
  const auto rep = verify_riemann_subsolution();
  CHECK(rep.all_pass);
  CHECK(rep.find("rh_residual_right_momentum") != nullptr);
  CHECK(rep.find("fan_ray_ordering")->pass);

  FanConstants bumped;
  bumped.K += 1e-3;
  const auto bad = verify_riemann_subsolution(bumped);
  CHECK_FALSE(bad.all_pass);
  CHECK_FALSE(bad.find("rh_residual_right_momentum")->pass);
  CHECK(bad.find("rh_residual_right_momentum")->value > 1e-4);

  FanConstants rho3;
  rho3.rho1 = 3.0;
  CHECK_FALSE(verify_riemann_subsolution(rho3).all_pass);
}
