#ifndef EULERFAN_SCENARIO_HPP
#define EULERFAN_SCENARIO_HPP

#include <stdexcept>
#include <string>

#include "eulerfan/constants.hpp"

namespace eulerfan::scenario {

struct ConfigError : std::runtime_error {
  std::string field;
  ConfigError(std::string f, const std::string& msg)
      : std::runtime_error(msg), field(std::move(f)) {}
};

// Flat key = value configuration. Values may be decimal or symbolic
// ("sqrt2", "-2sqrt2", "(58+2sqrt13)/9", "13/6") so the irrational scenario
// constants never pass through truncated decimals.
double parse_value(const std::string& token);

struct ScenarioConfig {
  double T = 1.0;
  double zeta1 = 0.3;
  double zeta2 = 0.1;
  double zeta_bar = 0.075;
  double delta = 0.03;
  double delta_prime = 0.075;
  double a_plus = 0.1;
  double a_minus = 0.1;
  double T_end = 0.03;
  double t_min = 1e-8;
  int grid_size = 2048;
  double tol = 1e-10;
  double eps_bar = 0.1;
  double delta_hat = 0.05;
  double rho1 = constants::rho1_ref;
  double K = constants::K_ref;
  double lambda_minus = constants::lambda_minus_ref;
  double lambda_plus = constants::lambda_plus_ref;
  std::string output_dir = "out";

  // Throws ConfigError naming the offending field.
  void validate() const;
};

ScenarioConfig load_config(const std::string& path);
ScenarioConfig default_config();

}  // namespace eulerfan::scenario

#endif
