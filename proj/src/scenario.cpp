#include "eulerfan/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>

namespace eulerfan::scenario {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  auto e = s.find_last_not_of(" \t\r\n");
  return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

// term := [number] ['sqrt' number]; cursor advances past what was consumed.
double parse_term(const char*& p) {
  double coef = 1.0;
  char* end = nullptr;
  const double num = std::strtod(p, &end);
  bool have_num = end != p;
  if (have_num) {
    coef = num;
    p = end;
  }
  if (std::strncmp(p, "sqrt", 4) == 0) {
    p += 4;
    const double arg = std::strtod(p, &end);
    if (end == p) throw std::invalid_argument("sqrt needs a numeric argument");
    p = end;
    return coef * std::sqrt(arg);
  }
  if (!have_num) throw std::invalid_argument("expected a number");
  return coef;
}

double parse_sum(const char*& p) {
  double total = parse_term(p);
  while (*p == '+' || *p == '-') {
    const double sign = *p == '+' ? 1.0 : -1.0;
    ++p;
    total += sign * parse_term(p);
  }
  return total;
}

}  // namespace

double parse_value(const std::string& token) {
  std::string s = trim(token);
  s.erase(std::remove(s.begin(), s.end(), ' '), s.end());
  if (s.empty()) throw std::invalid_argument("empty value");
  const char* p = s.c_str();
  double value;
  if (*p == '(') {
    ++p;
    value = parse_sum(p);
    if (*p != ')') throw std::invalid_argument("unbalanced parenthesis");
    ++p;
  } else {
    value = parse_term(p);
  }
  if (*p == '/') {
    ++p;
    char* end = nullptr;
    const double den = std::strtod(p, &end);
    if (end == p || den == 0.0) throw std::invalid_argument("bad denominator");
    p = end;
    value /= den;
  }
  if (*p != '\0') throw std::invalid_argument("trailing characters in value");
  return value;
}

void ScenarioConfig::validate() const {
  auto fail = [](const std::string& field, const std::string& msg) {
    throw ConfigError(field, field + ": " + msg);
  };
  if (!(T > 0.0)) fail("T", "must be positive");
  if (!(zeta1 > 0.0 && zeta1 < 1.0)) fail("zeta1", "must lie in (0,1)");
  if (!(zeta2 > 0.0)) fail("zeta2", "must be positive (traces degenerate)");
  if (!(zeta2 < zeta1)) fail("zeta2", "must lie below zeta1");
  if (!(zeta_bar > 0.0 && zeta_bar < 0.5 * zeta1))
    fail("zeta_bar", "must lie in (0, zeta1/2)");
  if (a_plus < 0.0) fail("a_plus", "must be nonnegative");
  if (a_minus < 0.0) fail("a_minus", "must be nonnegative");
  if (!(delta > 0.0)) fail("delta", "must be positive");
  if (!(delta < delta_prime)) fail("delta_prime", "must exceed delta");
  if (!(delta_prime < 1.0)) fail("delta_prime", "must lie below 1");
  if (!(T_end <= std::min(delta_prime, 0.5)))
    fail("T_end", "must not exceed min(delta_prime, 1/2)");
  if (!(t_min > 0.0 && t_min < T_end)) fail("t_min", "must lie in (0, T_end)");
  if (grid_size < 8) fail("grid_size", "must be at least 8");
  if (!(tol > 0.0)) fail("tol", "must be positive");
  if (!(eps_bar > 0.0)) fail("eps_bar", "must be positive");
  if (!(delta_hat > 0.0)) fail("delta_hat", "must be positive");
  if (!(rho1 > 0.0)) fail("rho1", "must be positive");
  if (!(K > 0.0)) fail("K", "must be positive");
  if (!(lambda_minus > lambda_plus))
    fail("lambda_minus", "must exceed lambda_plus (compression)");
}

ScenarioConfig default_config() { return ScenarioConfig{}; }

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot open " + path);
  ScenarioConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config",
                        "line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    try {
      if (key == "T") cfg.T = parse_value(val);
      else if (key == "zeta1") cfg.zeta1 = parse_value(val);
      else if (key == "zeta2") cfg.zeta2 = parse_value(val);
      else if (key == "zeta_bar") cfg.zeta_bar = parse_value(val);
      else if (key == "delta") cfg.delta = parse_value(val);
      else if (key == "delta_prime") cfg.delta_prime = parse_value(val);
      else if (key == "a_plus") cfg.a_plus = parse_value(val);
      else if (key == "a_minus") cfg.a_minus = parse_value(val);
      else if (key == "T_end") cfg.T_end = parse_value(val);
      else if (key == "t_min") cfg.t_min = parse_value(val);
      else if (key == "grid_size") cfg.grid_size = static_cast<int>(parse_value(val));
      else if (key == "tol") cfg.tol = parse_value(val);
      else if (key == "eps_bar") cfg.eps_bar = parse_value(val);
      else if (key == "delta_hat") cfg.delta_hat = parse_value(val);
      else if (key == "rho1") cfg.rho1 = parse_value(val);
      else if (key == "K") cfg.K = parse_value(val);
      else if (key == "lambda_minus") cfg.lambda_minus = parse_value(val);
      else if (key == "lambda_plus") cfg.lambda_plus = parse_value(val);
      else if (key == "output_dir") cfg.output_dir = val;
      else throw ConfigError(key, "unknown key " + key);
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      throw ConfigError(key, key + ": " + e.what());
    }
  }
  return cfg;
}

}  // namespace eulerfan::scenario
