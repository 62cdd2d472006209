#include "galiray/representations.hpp"

#include <cmath>

#include "galiray/errors.hpp"

namespace galiray {

namespace {

constexpr Complex kI(0.0, 1.0);

}  // namespace

std::string rep_kind_name(RepKind kind) {
  switch (kind) {
    case RepKind::bargmann3d: return "bargmann3d";
    case RepKind::nonabelian2d: return "nonabelian2d";
    case RepKind::schrodinger2d: return "schrodinger2d";
    case RepKind::schrodinger3d: return "schrodinger3d";
    case RepKind::position1d: return "position1d";
  }
  return "unknown";
}

RepKind rep_kind(const std::string& name) {
  for (auto k : {RepKind::bargmann3d, RepKind::nonabelian2d, RepKind::schrodinger2d, RepKind::schrodinger3d,
                 RepKind::position1d}) {
    if (rep_kind_name(k) == name) return k;
  }
  throw InvalidArgument("unknown representation kind '" + name + "'");
}

int rep_dim(RepKind kind) {
  switch (kind) {
    case RepKind::bargmann3d:
    case RepKind::schrodinger3d: return 3;
    case RepKind::nonabelian2d:
    case RepKind::schrodinger2d: return 2;
    case RepKind::position1d: return 1;
  }
  return 0;
}

void RepDescriptor::validate() const {
  if (!(gamma != 0.0) || !std::isfinite(gamma)) throw InvalidArgument("representation: gamma must be finite and nonzero");
  if (!(hbar > 0.0)) throw InvalidArgument("representation: hbar must be positive");
  if (!(m > 0.0)) throw InvalidArgument("representation: m must be positive");
  for (double x : {lambda, s, force_f, V0}) {
    if (!std::isfinite(x)) throw InvalidArgument("representation: parameters must be finite");
  }
}

RepDescriptor RepDescriptor::defaults(RepKind kind) {
  RepDescriptor rep;
  rep.kind = kind;
  switch (kind) {
    case RepKind::nonabelian2d:
      rep.lambda = 0.7;
      rep.s = 0.5;
      break;
    case RepKind::schrodinger2d: rep.s = 0.5; break;
    case RepKind::position1d:
      rep.force_f = 0.5;
      rep.V0 = 0.25;
      break;
    default: break;
  }
  return rep;
}

QuadraticPhase representation_phase(const RepDescriptor& rep, const GalileiElement& r) {
  if (!rep.momentum_space()) throw InvalidArgument("position1d has no group action, only generators");
  const int n = rep.dim();
  require_same_dim(n, r.dim(), "representation");
  rep.validate();
  const double g = rep.gamma;
  const Vector& u = r.u();
  const Vector& v = r.v();
  const double eta = r.eta();

  QuadraticPhase ph;
  ph.quad = CMatrix::Identity(n, n) * (kI * (eta / (2.0 * g)));
  ph.lin = kI * u.cast<Complex>();

  switch (rep.kind) {
    case RepKind::bargmann3d:
      ph.lin = -ph.lin;
      ph.constant = -kI * (0.5 * eta * g * v.squaredNorm() - g * u.dot(v));
      break;
    case RepKind::nonabelian2d:
      // -lambda/(2 gamma) (v1 p2 - v2 p1)
      ph.lin(0) += kI * (rep.lambda / (2.0 * g)) * v(1);
      ph.lin(1) -= kI * (rep.lambda / (2.0 * g)) * v(0);
      ph.constant = kI * (0.5 * g * u.dot(v) + rep.s * r.angle().theta);
      break;
    case RepKind::schrodinger2d:
      ph.constant = kI * (0.5 * g * u.dot(v) + rep.s * r.angle().theta);
      break;
    case RepKind::schrodinger3d:
      ph.constant = kI * (0.5 * g * u.dot(v));
      break;
    case RepKind::position1d: break;
  }
  return ph;
}

PolyGaussianState apply(const RepDescriptor& rep, const GalileiElement& r, const PolyGaussianState& state) {
  require_same_dim(rep.dim(), state.dim(), "apply: state");
  const QuadraticPhase ph = representation_phase(rep, r);
  const Vector shift = rep.momentum_sign() * rep.gamma * r.v();
  return multiply_phase(substitute(state, r.W(), shift), ph.quad, ph.lin, ph.constant);
}

PolyGaussianState apply_time(const RepDescriptor& rep, const GalileiElement& r, TimeLabel t,
                             const PolyGaussianState& state) {
  PolyGaussianState out = apply(rep, r, state);
  const int n = rep.dim();
  const CVector lin = -kI * t.t * r.v().cast<Complex>();
  return multiply_phase(out, CMatrix::Zero(n, n), lin, Complex(0.0, 0.0));
}

PolyGaussianState apply_gauged(const RepDescriptor& rep, const GaugeFn& gauge, const GalileiElement& r,
                               TimeLabel t, const PolyGaussianState& state) {
  return std::exp(kI * gauge(r)) * apply_time(rep, r, t, state);
}

std::vector<std::string> generator_names(const RepDescriptor& rep) {
  switch (rep.dim()) {
    case 1: return {"H", "P", "N"};
    case 2: return {"H", "P1", "P2", "M", "N1", "N2"};
    default: return {"H", "P1", "P2", "P3", "M12", "M13", "M23", "N1", "N2", "N3"};
  }
}

std::string generator_alias(const RepDescriptor& rep, const std::string& name) {
  const int n = rep.dim();
  if (name == "f") return "H";
  if (name.size() == 2 && (name[0] == 'b' || name[0] == 'd')) {
    const int k = name[1] - '0';
    if (k >= 1 && k <= n) {
      const char* head = name[0] == 'b' ? "P" : "N";
      return n == 1 ? std::string(head) : head + std::to_string(k);
    }
  }
  if (name.size() == 3 && name[0] == 'a' && n >= 2) {
    const int i = name[1] - '0';
    const int j = name[2] - '0';
    if (i >= 1 && j >= 1 && i <= n && j <= n && i < j) return n == 2 ? "M" : "M" + name.substr(1);
  }
  return name;
}

namespace {

struct Symbols {
  int n;
  PolyDiffOperator coord(int k) const { return PolyDiffOperator::multiplication(n, Polynomial::variable(k)); }
  PolyDiffOperator d(int k) const { return PolyDiffOperator::partial(n, k); }
  PolyDiffOperator time() const { return PolyDiffOperator::multiplication(n, Polynomial::variable(kTimeVar)); }
  PolyDiffOperator scalar(Complex c) const { return c * PolyDiffOperator::identity(n); }
};

int index_suffix(const std::string& X, std::size_t pos, int n) {
  if (X.size() != pos + 1) return -1;
  const int k = X[pos] - '1';
  return (k >= 0 && k < n) ? k : -1;
}

[[noreturn]] void unknown_generator(const RepDescriptor& rep, const std::string& X) {
  throw InvalidArgument("unknown generator '" + X + "' for " + rep.name());
}

PolyDiffOperator momentum_generator(const RepDescriptor& rep, const std::string& X, bool with_time) {
  const int n = rep.dim();
  const Symbols S{n};
  const double g = rep.gamma;

  if (X == "H") {
    PolyDiffOperator h(n);
    for (int k = 0; k < n; ++k) h += Complex(1.0 / (2.0 * g), 0.0) * (S.coord(k) * S.coord(k));
    return h;
  }
  if (X[0] == 'P') {
    const int k = index_suffix(X, 1, n);
    if (k < 0) unknown_generator(rep, X);
    return S.coord(k);
  }
  if (X == "M" && n == 2) return S.scalar(kI * rep.s) + S.coord(1) * S.d(0) - S.coord(0) * S.d(1);
  if (X.size() == 3 && X[0] == 'M' && n == 3) {
    const int i = X[1] - '1';
    const int j = X[2] - '1';
    if (i < 0 || j < 0 || i >= n || j >= n || i >= j) unknown_generator(rep, X);
    return S.coord(j) * S.d(i) - S.coord(i) * S.d(j);
  }
  if (X[0] == 'N') {
    const int k = index_suffix(X, 1, n);
    if (k < 0) unknown_generator(rep, X);
    PolyDiffOperator op = Complex(g, 0.0) * S.d(k);
    if (with_time) op -= kI * (S.coord(k) * S.time());
    if (rep.kind == RepKind::nonabelian2d) {
      const double c = rep.lambda / (2.0 * g);
      if (with_time) {
        // R_t(N_k) carries -i c p_j for both k
        op -= (kI * c) * S.coord(1 - k);
      } else {
        // static N_1 = g d1 + i c p2, N_2 = g d2 - i c p1
        op += (k == 0 ? kI * c : -kI * c) * S.coord(1 - k);
      }
    }
    return op;
  }
  unknown_generator(rep, X);
}

PolyDiffOperator position_generator(const RepDescriptor& rep, const std::string& X) {
  const Symbols S{1};
  const double hb = rep.hbar;
  const double f = rep.force_f;
  if (X == "H") {
    return Complex(-hb * hb / (2.0 * rep.m), 0.0) * (S.d(0) * S.d(0)) + Complex(f, 0.0) * S.coord(0) +
           S.scalar(rep.V0);
  }
  if (X == "P") return (kI * hb) * S.d(0) - Complex(f, 0.0) * S.time();
  if (X == "N") {
    return Complex(rep.m, 0.0) * S.coord(0) - (kI * hb) * (S.time() * S.d(0)) -
           Complex(0.5 * f, 0.0) * (S.time() * S.time());
  }
  unknown_generator(rep, X);
}

}  // namespace

PolyDiffOperator symbolic_generator(const RepDescriptor& rep, const std::string& name) {
  rep.validate();
  const std::string X = generator_alias(rep, name);
  if (X.empty()) unknown_generator(rep, name);
  return rep.momentum_space() ? momentum_generator(rep, X, true) : position_generator(rep, X);
}

PolyDiffOperator generator(const RepDescriptor& rep, const std::string& X, double t) {
  return symbolic_generator(rep, X).at_time(t);
}

PolyDiffOperator static_generator(const RepDescriptor& rep, const std::string& name) {
  rep.validate();
  const std::string X = generator_alias(rep, name);
  if (X.empty()) unknown_generator(rep, name);
  if (!rep.momentum_space()) return position_generator(rep, X).at_time(0.0);
  return momentum_generator(rep, X, false);
}

PolyGaussianState one_parameter_derivative(const RepDescriptor& rep, const std::string& X, double t,
                                           const PolyGaussianState& state, double h) {
  if (!rep.momentum_space()) throw InvalidArgument("position1d has no group action, only generators");
  if (!(h > 0.0)) throw InvalidArgument("one_parameter_derivative: step must be positive");
  const AlgebraElement x = AlgebraElement::basis(rep.dim(), X);
  auto central = [&](double step) {
    AlgebraElement plus = x;
    plus *= step;
    AlgebraElement minus = x;
    minus *= -step;
    PolyGaussianState d = apply_time(rep, exponential(plus), TimeLabel{t}, state) -
                          apply_time(rep, exponential(minus), TimeLabel{t}, state);
    d *= Complex(1.0 / (2.0 * step), 0.0);
    return d;
  };
  PolyGaussianState coarse = central(h);
  PolyGaussianState fine = central(0.5 * h);
  return Complex(4.0 / 3.0, 0.0) * fine - Complex(1.0 / 3.0, 0.0) * coarse;
}

void to_json(nlohmann::json& j, const RepDescriptor& rep) {
  j = nlohmann::json{{"kind", rep.name()}, {"dim", rep.dim()}, {"gamma", rep.gamma}, {"lambda", rep.lambda},
                     {"s", rep.s},         {"hbar", rep.hbar}, {"m", rep.m},         {"f", rep.force_f},
                     {"V0", rep.V0}};
}

void from_json(const nlohmann::json& j, RepDescriptor& rep) {
  try {
    if (!j.is_object() || !j.contains("kind")) throw ConfigError("representation: expected an object with 'kind'");
    RepDescriptor out = RepDescriptor::defaults(rep_kind(j.at("kind").get<std::string>()));
    if (j.contains("dim") && j.at("dim").get<int>() != out.dim()) {
      throw ConfigError("representation: dim does not match kind " + out.name());
    }
    auto read = [&](const char* key, double& field) {
      if (j.contains(key)) field = j.at(key).get<double>();
    };
    read("gamma", out.gamma);
    read("lambda", out.lambda);
    read("s", out.s);
    read("hbar", out.hbar);
    read("m", out.m);
    read("f", out.force_f);
    read("force_f", out.force_f);
    read("V0", out.V0);
    if (j.contains("a3")) {
      if (j.contains("V0")) throw ConfigError("representation: give either V0 or a3, not both");
      out.V0 = j.at("a3").get<double>() / (2.0 * out.m);
    }
    out.validate();
    rep = out;
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("representation: ") + e.what());
  }
}

}  // namespace galiray
