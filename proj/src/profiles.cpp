#include "eulerfan/profiles.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace eulerfan::profiles {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kInf = std::numeric_limits<double>::infinity();
}  // namespace

double f0_eval(double x) {
  if (!(x > 0.0) || x >= 1.0)
    throw std::domain_error("f0_eval: argument must lie in (0,1)");
  const double w = -std::log(x);  // |log x|
  return 1.0 - (2.0 / kPi) * std::atan(std::log(w));
}

double f0_limit0(double x) { return x <= 0.0 ? 0.0 : f0_eval(x); }

double f0_derivative(double x, int n) {
  if (!(x > 0.0) || x >= 1.0)
    throw std::domain_error("f0_derivative: argument must lie in (0,1)");
  const double w = -std::log(x);
  const double u = std::log(w);
  const double one_u2 = 1.0 + u * u;
  switch (n) {
    case 1:
      // f0'(y) = -(2/pi) / ((1 + u^2) y log y) with u = log|log y|.
      return (2.0 / kPi) / (x * w * one_u2);
    case 2:
      return -(2.0 / kPi) * ((w - 1.0) * one_u2 - 2.0 * u) /
             (x * x * w * w * one_u2 * one_u2);
    case 3: {
      const double h = 1e-5 * x;
      return central_diff1([](double y) { return f0_derivative(y, 2); }, x, h);
    }
    case 4: {
      const double h = 3e-4 * x;
      return central_diff2([](double y) { return f0_derivative(y, 2); }, x, h);
    }
    default:
      throw std::domain_error("f0_derivative: order must be 1..4");
  }
}

F0Params F0Params::reference(double lambda_minus, double lambda_plus, double T,
                             double zeta2, double zeta_bar, double a_minus,
                             double a_plus) {
  F0Params p;
  p.a_minus = a_minus;
  p.a_plus = a_plus;
  p.b_minus = lambda_minus - zeta2 / T;
  p.b_plus = lambda_plus + zeta2 / T;
  p.zeta_bar = zeta_bar;
  return p;
}

// ---- piece evaluation -----------------------------------------------------

namespace {

double composite_value(double a, double b, double slope, double x) {
  return a * f0_limit0(slope * x) + b;
}
double composite_derivative(double a, double slope, double x) {
  if (a == 0.0) return 0.0;
  const double y = slope * x;
  if (y <= 0.0) return a * slope > 0.0 ? kInf : -kInf;
  return a * slope * f0_derivative(y, 1);
}
double composite_second(double a, double slope, double x) {
  const double y = slope * x;
  if (y <= 0.0) return 0.0;
  return a * slope * slope * f0_derivative(y, 2);
}

// Solves y - horizon * P(y) = x for y in the base interval of an advected
// piece; the map is strictly increasing for our decreasing base profiles.
template <class Pfun>
double advect_back(Pfun&& P, double ylo, double yhi, double horizon,
                   double x) {
  auto psi = [&](double y) { return y - horizon * P(y) - x; };
  auto r = find_root(psi, ylo, yhi, 1e-15 * (std::abs(ylo) + std::abs(yhi) + 1.0));
  return r.x;
}

}  // namespace

double Piece::value(double x) const {
  switch (kind) {
    case PieceKind::Constant:
      return constant;
    case PieceKind::Linear:
      return -x / linear_T;
    case PieceKind::Composite:
      return composite_value(a, b, slope, x);
    case PieceKind::Bridge:
      return bridge(x);
    case PieceKind::AdvectedComposite: {
      auto P = [&](double y) { return composite_value(a, b, slope, y); };
      const double y = advect_back(P, bridge.x0(), bridge.x1(), horizon, x);
      // (y - x)/horizon equals P at the true crossing even when the root
      // hugs the log-log singular edge tighter than doubles resolve.
      return (y - x) / horizon;
    }
    case PieceKind::AdvectedBridge: {
      auto P = [&](double y) { return bridge(y); };
      const double y = advect_back(P, bridge.x0(), bridge.x1(), horizon, x);
      return (y - x) / horizon;
    }
    case PieceKind::Callable:
      return fn(x);
  }
  throw std::logic_error("Piece::value: bad kind");
}

double Piece::derivative(double x) const {
  switch (kind) {
    case PieceKind::Constant:
      return 0.0;
    case PieceKind::Linear:
      return -1.0 / linear_T;
    case PieceKind::Composite:
      return composite_derivative(a, slope, x);
    case PieceKind::Bridge:
      return bridge.derivative(x);
    case PieceKind::AdvectedComposite:
    case PieceKind::AdvectedBridge: {
      auto P = [&](double y) {
        return kind == PieceKind::AdvectedComposite
                   ? composite_value(a, b, slope, y)
                   : bridge(y);
      };
      const double y = advect_back(P, bridge.x0(), bridge.x1(), horizon, x);
      const double dP = kind == PieceKind::AdvectedComposite
                            ? composite_derivative(a, slope, y)
                            : bridge.derivative(y);
      if (!std::isfinite(dP) || std::abs(horizon * dP) > 1e15)
        return -1.0 / horizon;  // focusing limit of the pulled-back slope
      return dP / (1.0 - horizon * dP);
    }
    case PieceKind::Callable:
      return dfn(x);
  }
  throw std::logic_error("Piece::derivative: bad kind");
}

double Piece::second_derivative(double x) const {
  switch (kind) {
    case PieceKind::Constant:
    case PieceKind::Linear:
      return 0.0;
    case PieceKind::Composite:
      return composite_second(a, slope, x);
    case PieceKind::Bridge:
      return bridge.second_derivative(x);
    case PieceKind::AdvectedComposite:
    case PieceKind::AdvectedBridge: {
      auto P = [&](double y) {
        return kind == PieceKind::AdvectedComposite
                   ? composite_value(a, b, slope, y)
                   : bridge(y);
      };
      const double y = advect_back(P, bridge.x0(), bridge.x1(), horizon, x);
      const double dP = kind == PieceKind::AdvectedComposite
                            ? composite_derivative(a, slope, y)
                            : bridge.derivative(y);
      const double d2P = kind == PieceKind::AdvectedComposite
                             ? composite_second(a, slope, y)
                             : bridge.second_derivative(y);
      const double denom = 1.0 - horizon * dP;
      if (!std::isfinite(dP) || std::abs(denom) > 1e12) return 0.0;
      return d2P / (denom * denom * denom);
    }
    case PieceKind::Callable: {
      const double h = std::max(1e-6 * std::abs(x), 1e-12);
      return (dfn(x + h) - dfn(x - h)) / (2.0 * h);
    }
  }
  throw std::logic_error("Piece::second_derivative: bad kind");
}

// ---- profile --------------------------------------------------------------

const Piece& LambdaProfile::piece_at(double x) const {
  for (const auto& p : pieces)
    if (x > p.lo && x <= p.hi) return p;
  // x may coincide with the lowest lo (= -inf never matches equality).
  return pieces.front();
}

double LambdaProfile::value(double x) const { return piece_at(x).value(x); }
double LambdaProfile::derivative(double x) const {
  return piece_at(x).derivative(x);
}
double LambdaProfile::second_derivative(double x) const {
  return piece_at(x).second_derivative(x);
}

std::vector<double> LambdaProfile::breakpoints() const {
  std::vector<double> b;
  for (std::size_t i = 0; i + 1 < pieces.size(); ++i) b.push_back(pieces[i].hi);
  return b;
}

// ---- builder --------------------------------------------------------------

namespace {

Piece constant_piece(double lo, double hi, double v) {
  Piece p;
  p.kind = PieceKind::Constant;
  p.lo = lo;
  p.hi = hi;
  p.constant = v;
  return p;
}

void check_geometry(double lambda_minus, double lambda_plus, double T,
                    double zeta1, double zeta2, const F0Params& f0p) {
  if (!(lambda_minus > lambda_plus))
    throw std::invalid_argument("compression datum needs lambda_- > lambda_+");
  if (!(T > 0.0)) throw std::invalid_argument("collapse time must be positive");
  if (!(zeta1 > 0.0 && zeta1 < 1.0))
    throw std::invalid_argument("zeta1 must lie in (0,1)");
  const bool degenerate = f0p.a_minus == 0.0 && f0p.a_plus == 0.0;
  if (!(zeta2 < zeta1) || zeta2 < 0.0 || (zeta2 == 0.0 && !degenerate))
    throw std::invalid_argument("zeta2 must lie in (0, zeta1)");
  if (!(f0p.zeta_bar > 0.0 && f0p.zeta_bar < 0.5 * zeta1))
    throw std::invalid_argument("zeta_bar must lie in (0, zeta1/2)");
  if (f0p.a_minus < 0.0 || f0p.a_plus < 0.0)
    throw std::invalid_argument("f0 amplitudes must be nonnegative");
  if (f0p.b_minus != lambda_minus - zeta2 / T ||
      f0p.b_plus != lambda_plus + zeta2 / T)
    throw std::invalid_argument("offsets must equal lambda_pm -+ zeta2/T");
}

}  // namespace

LambdaProfile build_compression_datum(double lambda_minus, double lambda_plus,
                                      double T, double zeta1, double zeta2,
                                      const F0Params& f0p, const HSpec& h,
                                      DatumMode mode) {
  check_geometry(lambda_minus, lambda_plus, T, zeta1, zeta2, f0p);
  if (!(h.k_minus < 0.0) || !(h.k_plus > 0.0))
    throw std::invalid_argument("h slopes must satisfy k_- < 0 < k_+");
  const double zb = f0p.zeta_bar;
  if (-h.k_minus * zb >= 1.0 || h.k_plus * zb >= 1.0)
    throw std::invalid_argument("h(zeta_bar) must stay below 1");

  // Collapse-time pieces on the left side: plateau, bridge, composite.
  Piece compL;
  compL.kind = PieceKind::Composite;
  compL.lo = -zb;
  compL.hi = 0.0;
  compL.a = f0p.a_minus;
  compL.b = f0p.b_minus;
  compL.slope = h.k_minus;

  const double yL = -h.k_minus * zb;  // f0 argument at x = -zeta_bar
  const double vL = f0p.a_minus * f0_limit0(yL) + f0p.b_minus;
  const double dL =
      f0p.a_minus == 0.0 ? 0.0 : composite_derivative(f0p.a_minus, h.k_minus, -zb);
  const double sL =
      f0p.a_minus == 0.0 ? 0.0 : composite_second(f0p.a_minus, h.k_minus, -zb);

  Piece bridgeL;
  bridgeL.kind = PieceKind::Bridge;
  bridgeL.lo = -zeta1;
  bridgeL.hi = -zb;
  bridgeL.bridge = Quintic(-zeta1, -zb, lambda_minus, 0.0, 0.0, vL, dL, sL);
  if (!bridgeL.bridge.monotone(-1))
    throw std::runtime_error("non-monotone bridge on the left flank");

  // Right side: composite, bridge, plateau.
  Piece compR;
  compR.kind = PieceKind::Composite;
  compR.lo = 0.0;
  compR.hi = zb;
  compR.a = -f0p.a_plus;
  compR.b = f0p.b_plus;
  compR.slope = h.k_plus;

  const double yR = h.k_plus * zb;
  const double vR = -f0p.a_plus * f0_limit0(yR) + f0p.b_plus;
  const double dR =
      f0p.a_plus == 0.0 ? 0.0 : composite_derivative(-f0p.a_plus, h.k_plus, zb);
  const double sR =
      f0p.a_plus == 0.0 ? 0.0 : composite_second(-f0p.a_plus, h.k_plus, zb);

  Piece bridgeR;
  bridgeR.kind = PieceKind::Bridge;
  bridgeR.lo = zb;
  bridgeR.hi = zeta1;
  bridgeR.bridge = Quintic(zb, zeta1, vR, dR, sR, lambda_plus, 0.0, 0.0);
  if (!bridgeR.bridge.monotone(-1))
    throw std::runtime_error("non-monotone bridge on the right flank");

  LambdaProfile prof;
  prof.lambda_minus = lambda_minus;
  prof.lambda_plus = lambda_plus;
  prof.T = T;
  prof.zeta1 = zeta1;
  prof.zeta2 = zeta2;
  prof.zeta_bar = zb;
  prof.mode = mode;

  if (mode == DatumMode::Collapse) {
    prof.pieces.push_back(constant_piece(-kInf, -zeta1, lambda_minus));
    prof.pieces.push_back(bridgeL);
    prof.pieces.push_back(compL);
    prof.pieces.push_back(compR);
    prof.pieces.push_back(bridgeR);
    prof.pieces.push_back(constant_piece(zeta1, kInf, lambda_plus));
    return prof;
  }

  // Initial mode: pull each non-plateau collapse piece back by T along its
  // own characteristics and insert the focusing linear core.
  auto advected = [T](const Piece& base, double base_lo, double base_hi) {
    Piece p = base;
    p.kind = base.kind == PieceKind::Composite ? PieceKind::AdvectedComposite
                                               : PieceKind::AdvectedBridge;
    p.horizon = T;
    // The base interval travels with the quintic slot even for composites.
    if (base.kind == PieceKind::Composite)
      p.bridge = Quintic(base_lo, base_hi, 0, 0, 0, 1, 0, 0);
    const double vlo = base.value(base_lo);
    const double vhi = base.value(base_hi);
    p.lo = base_lo - T * vlo;
    p.hi = base_hi - T * vhi;
    return p;
  };

  // Composite pieces touch the jump point, where their value limit is b_pm.
  Piece advBridgeL = advected(bridgeL, -zeta1, -zb);
  Piece advCompL = advected(compL, -zb, 0.0);
  Piece advCompR = advected(compR, 0.0, zb);
  Piece advBridgeR = advected(bridgeR, zb, zeta1);

  Piece lin;
  lin.kind = PieceKind::Linear;
  lin.linear_T = T;
  lin.lo = -T * f0p.b_minus;
  lin.hi = -T * f0p.b_plus;

  prof.pieces.push_back(constant_piece(-kInf, advBridgeL.lo, lambda_minus));
  prof.pieces.push_back(advBridgeL);
  prof.pieces.push_back(advCompL);
  prof.pieces.push_back(lin);
  prof.pieces.push_back(advCompR);
  prof.pieces.push_back(advBridgeR);
  prof.pieces.push_back(constant_piece(advBridgeR.hi, kInf, lambda_plus));
  return prof;
}

LambdaProfile f0_wave_datum(double upper) {
  if (!(upper > 0.0 && upper < 1.0))
    throw std::invalid_argument("f0_wave_datum: upper must lie in (0,1)");
  LambdaProfile prof;
  prof.lambda_minus = f0_eval(upper);
  prof.lambda_plus = 0.0;
  prof.T = kInf;
  prof.zeta1 = upper;
  prof.zeta2 = 0.0;
  prof.zeta_bar = upper;
  prof.mode = DatumMode::Initial;

  Piece comp;
  comp.kind = PieceKind::Composite;
  comp.lo = 0.0;
  comp.hi = upper;
  comp.a = 1.0;
  comp.b = 0.0;
  comp.slope = 1.0;

  prof.pieces.push_back(constant_piece(-kInf, 0.0, 0.0));
  prof.pieces.push_back(comp);
  prof.pieces.push_back(constant_piece(upper, kInf, f0_eval(upper)));
  return prof;
}

// ---- serialization --------------------------------------------------------

namespace {

using nlohmann::json;

json bound_to_json(double v) {
  if (v == kInf) return "inf";
  if (v == -kInf) return "-inf";
  return v;
}

double bound_from_json(const json& j) {
  if (j.is_string()) return j.get<std::string>() == "inf" ? kInf : -kInf;
  return j.get<double>();
}

json quintic_to_json(const Quintic& q) {
  return json{{"x0", q.x0()}, {"x1", q.x1()}, {"c", q.coeffs()}};
}

Quintic quintic_from_json(const json& j) {
  std::array<double, 6> c{};
  for (int k = 0; k < 6; ++k) c[static_cast<std::size_t>(k)] = j["c"][k];
  return Quintic::from_coeffs(j["x0"], j["x1"], c);
}

}  // namespace

std::string serialize_profile(const LambdaProfile& p) {
  json root;
  root["lambda_minus"] = p.lambda_minus;
  root["lambda_plus"] = p.lambda_plus;
  root["T"] = p.T == kInf ? json("inf") : json(p.T);
  root["zeta1"] = p.zeta1;
  root["zeta2"] = p.zeta2;
  root["zeta_bar"] = p.zeta_bar;
  root["mode"] = p.mode == DatumMode::Collapse ? "collapse" : "initial";
  json pieces = json::array();
  for (const auto& q : p.pieces) {
    json e;
    e["lo"] = bound_to_json(q.lo);
    e["hi"] = bound_to_json(q.hi);
    switch (q.kind) {
      case PieceKind::Constant:
        e["kind"] = "constant";
        e["value"] = q.constant;
        break;
      case PieceKind::Linear:
        e["kind"] = "linear";
        e["T"] = q.linear_T;
        break;
      case PieceKind::Composite:
        e["kind"] = "composite";
        e["a"] = q.a;
        e["b"] = q.b;
        e["slope"] = q.slope;
        break;
      case PieceKind::Bridge:
        e["kind"] = "bridge";
        e["q"] = quintic_to_json(q.bridge);
        break;
      case PieceKind::AdvectedComposite:
        e["kind"] = "advected_composite";
        e["a"] = q.a;
        e["b"] = q.b;
        e["slope"] = q.slope;
        e["base_lo"] = q.bridge.x0();
        e["base_hi"] = q.bridge.x1();
        e["horizon"] = q.horizon;
        break;
      case PieceKind::AdvectedBridge:
        e["kind"] = "advected_bridge";
        e["q"] = quintic_to_json(q.bridge);
        e["horizon"] = q.horizon;
        break;
      case PieceKind::Callable:
        throw std::runtime_error(
            "serialize_profile: externally defined pieces are exported as "
            "sampled tables, not as piece lists");
    }
    pieces.push_back(std::move(e));
  }
  root["pieces"] = std::move(pieces);
  return root.dump(2);
}

LambdaProfile deserialize_profile(const std::string& text) {
  const json root = json::parse(text);
  LambdaProfile p;
  p.lambda_minus = root["lambda_minus"];
  p.lambda_plus = root["lambda_plus"];
  p.T = root["T"].is_string() ? kInf : root["T"].get<double>();
  p.zeta1 = root["zeta1"];
  p.zeta2 = root["zeta2"];
  p.zeta_bar = root["zeta_bar"];
  p.mode = root["mode"] == "collapse" ? DatumMode::Collapse : DatumMode::Initial;
  for (const auto& e : root["pieces"]) {
    Piece q;
    q.lo = bound_from_json(e["lo"]);
    q.hi = bound_from_json(e["hi"]);
    const std::string kind = e["kind"];
    if (kind == "constant") {
      q.kind = PieceKind::Constant;
      q.constant = e["value"];
    } else if (kind == "linear") {
      q.kind = PieceKind::Linear;
      q.linear_T = e["T"];
    } else if (kind == "composite") {
      q.kind = PieceKind::Composite;
      q.a = e["a"];
      q.b = e["b"];
      q.slope = e["slope"];
    } else if (kind == "bridge") {
      q.kind = PieceKind::Bridge;
      q.bridge = quintic_from_json(e["q"]);
    } else if (kind == "advected_composite") {
      q.kind = PieceKind::AdvectedComposite;
      q.a = e["a"];
      q.b = e["b"];
      q.slope = e["slope"];
      q.bridge = Quintic(e["base_lo"], e["base_hi"], 0, 0, 0, 1, 0, 0);
      q.horizon = e["horizon"];
    } else if (kind == "advected_bridge") {
      q.kind = PieceKind::AdvectedBridge;
      q.bridge = quintic_from_json(e["q"]);
      q.horizon = e["horizon"];
    } else {
      throw std::runtime_error("deserialize_profile: unknown piece kind");
    }
    p.pieces.push_back(std::move(q));
  }
  return p;
}

}  // namespace eulerfan::profiles
