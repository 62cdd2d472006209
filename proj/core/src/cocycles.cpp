#include "galiray/cocycles.hpp"

#include <cmath>

#include "galiray/errors.hpp"

namespace galiray {

namespace {

double wedge(const Vector& a, const Vector& b) { return a(0) * b(1) - a(1) * b(0); }

}  // namespace

std::string exponent_name(ExponentKind kind) {
  switch (kind) {
    case ExponentKind::xi0: return "xi0";
    case ExponentKind::xi1: return "xi1";
    case ExponentKind::xi2: return "xi2";
    case ExponentKind::xi_eta: return "xi_eta";
    case ExponentKind::xi_eta_literal: return "xi_eta_literal";
    case ExponentKind::xi_t: return "xi_t";
  }
  return "?";
}

ExponentKind exponent_kind(const std::string& name) {
  for (auto k : {ExponentKind::xi0, ExponentKind::xi1, ExponentKind::xi2, ExponentKind::xi_eta,
                 ExponentKind::xi_eta_literal, ExponentKind::xi_t}) {
    if (exponent_name(k) == name) return k;
  }
  throw InvalidArgument("unknown phase exponent '" + name + "'");
}

int required_dim(ExponentKind kind) {
  switch (kind) {
    case ExponentKind::xi1:
    case ExponentKind::xi2: return 2;
    case ExponentKind::xi_eta:
    case ExponentKind::xi_eta_literal: return 1;
    default: return 0;
  }
}

PhaseExponent::PhaseExponent(ExponentKind kind, int dim, ExponentParams params)
    : kind_(kind), dim_(dim), params_(params) {
  require_dim(dim);
  const int need = required_dim(kind);
  if (need != 0 && need != dim) {
    throw DimensionError(exponent_name(kind) + " is defined only for dim " + std::to_string(need));
  }
}

PhaseExponent PhaseExponent::from_name(const std::string& name, int dim, ExponentParams params) {
  return PhaseExponent(exponent_kind(name), dim, params);
}

std::string PhaseExponent::name() const { return exponent_name(kind_); }

double PhaseExponent::operator()(const GalileiElement& r, const GalileiElement& s) const {
  require_same_dim(r.dim(), dim_, name().c_str());
  require_same_dim(s.dim(), dim_, name().c_str());
  const ExponentParams& p = params_;
  switch (kind_) {
    case ExponentKind::xi0: {
      const Vector Wvs = r.W() * s.v();
      const Vector Wus = r.W() * s.u();
      return 0.5 * p.gamma * (r.u().dot(Wvs) - r.v().dot(Wus) + s.eta() * r.v().dot(Wvs));
    }
    case ExponentKind::xi1:
      return 0.5 * p.lambda * wedge(r.v(), r.W() * s.v());
    case ExponentKind::xi2:
      return p.S * (r.angle().theta * s.eta() - s.angle().theta * r.eta());
    case ExponentKind::xi_eta:
    case ExponentKind::xi_eta_literal: {
      const double ur = r.u()(0), vr = r.v()(0), er = r.eta();
      const double us = s.u()(0), vs = s.v()(0), es = s.eta();
      const double quad = kind_ == ExponentKind::xi_eta ? es * vr * vs : er * vr * vs;
      return 0.5 * p.a1 * (ur * vs - us * vr + quad) + 0.5 * p.a2 * (ur * es - us * er - er * es * vr);
    }
    case ExponentKind::xi_t:
      return -p.gamma * r.v().dot(r.W() * s.v()) * p.t;
  }
  return 0.0;
}

double evaluate(const PhaseExponent& xi, const GalileiElement& r, const GalileiElement& s) { return xi(r, s); }

double cocycle_residual(const ExponentFn& xi, const GalileiElement& r, const GalileiElement& s,
                        const GalileiElement& t) {
  const GalileiElement rs = r * s;
  const GalileiElement st = s * t;
  return std::abs(xi(r, s) + xi(rs, t) - xi(s, t) - xi(r, st));
}

double coboundary(const GaugeFn& phi, const GalileiElement& r, const GalileiElement& s) {
  return phi(r) + phi(s) - phi(r * s);
}

ExponentFn equivalence_transform(ExponentFn xi, GaugeFn phi, int dim) {
  const double at_identity = phi(GalileiElement::identity(dim));
  if (at_identity != 0.0) {
    throw InvalidArgument("equivalence_transform: phi(identity) = " + std::to_string(at_identity) + " != 0");
  }
  return [xi = std::move(xi), phi = std::move(phi)](const GalileiElement& r, const GalileiElement& s) {
    return xi(r, s) + coboundary(phi, r, s);
  };
}

CocycleSweep cocycle_sweep(const PhaseExponent& xi, std::uint64_t seed, std::size_t n_triples, double scale) {
  CocycleSweep out;
  out.name = xi.name();
  out.dim = xi.dim();
  out.n_triples = n_triples;
  std::mt19937_64 rng(seed);
  const ExponentFn fn = [&xi](const GalileiElement& a, const GalileiElement& b) { return xi(a, b); };
  for (std::size_t i = 0; i < n_triples; ++i) {
    const GalileiElement r = random_element(rng, xi.dim(), scale);
    const GalileiElement s = random_element(rng, xi.dim(), scale);
    const GalileiElement t = random_element(rng, xi.dim(), scale);
    const double res = cocycle_residual(fn, r, s, t);
    if (res > out.max_residual) {
      out.max_residual = res;
      out.worst_index = i;
    }
  }
  return out;
}

std::vector<double> default_tau_sequence() { return {0.1, 0.05, 0.025, 0.0125, 0.00625}; }

std::vector<double> richardson_diagonal(const std::vector<double>& taus, const std::vector<double>& values) {
  if (taus.size() != values.size() || taus.empty()) {
    throw InvalidArgument("richardson_diagonal: need equally many (nonempty) taus and values");
  }
  const std::size_t n = taus.size();
  std::vector<std::vector<double>> T(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    T[i][0] = values[i];
    for (std::size_t k = 1; k <= i; ++k) {
      const double ratio = taus[i] / (taus[i - k] - taus[i]);
      T[i][k] = T[i][k - 1] + (T[i][k - 1] - T[i - 1][k - 1]) * ratio;
    }
  }
  std::vector<double> diag(n);
  for (std::size_t i = 0; i < n; ++i) diag[i] = T[i][i];
  return diag;
}

InfinitesimalExponentValue infinitesimal_exponent(const ExponentFn& xi, const AlgebraElement& X,
                                                  const AlgebraElement& Y, const std::vector<double>& taus,
                                                  double tolerance) {
  require_same_dim(X.dim(), Y.dim(), "infinitesimal_exponent");
  if (taus.size() < 2) throw InvalidArgument("infinitesimal_exponent: need at least two tau values");
  for (std::size_t i = 0; i < taus.size(); ++i) {
    if (!(taus[i] > 0.0) || (i > 0 && taus[i] == taus[i - 1])) {
      throw InvalidArgument("infinitesimal_exponent: taus must be positive and distinct");
    }
  }

  InfinitesimalExponentValue out;
  out.tau_sequence = taus;
  for (double tau : taus) {
    const GalileiElement a = exponential(tau * X);
    const GalileiElement b = exponential(tau * Y);
    const GalileiElement ai = inverse(a);
    const GalileiElement bi = inverse(b);
    const double combo = xi(a * b, ai * bi) + xi(a, b) + xi(ai, bi);
    out.samples.push_back(combo / (tau * tau));
  }
  const std::vector<double> diag = richardson_diagonal(taus, out.samples);
  out.value = diag.back();
  out.extrapolation_error = std::abs(diag[diag.size() - 1] - diag[diag.size() - 2]);
  out.converged = std::isfinite(out.value) && out.extrapolation_error <= tolerance;
  return out;
}

double action_contribution(double gamma, const GalileiElement& r, const GalileiElement& s, double t) {
  require_same_dim(r.dim(), s.dim(), "action_contribution");
  return -gamma * r.v().dot(r.W() * s.v()) * t;
}

void to_json(nlohmann::json& j, const ExponentParams& p) {
  j = nlohmann::json{{"gamma", p.gamma}, {"lambda", p.lambda}, {"S", p.S},
                     {"a1", p.a1},       {"a2", p.a2},         {"t", p.t}};
}

void from_json(const nlohmann::json& j, ExponentParams& p) {
  p.gamma = j.value("gamma", 1.0);
  p.lambda = j.value("lambda", 1.0);
  p.S = j.value("S", 1.0);
  p.a1 = j.value("a1", 1.0);
  p.a2 = j.value("a2", 1.0);
  p.t = j.value("t", 0.0);
}

void to_json(nlohmann::json& j, const InfinitesimalExponentValue& v) {
  j = nlohmann::json{{"value", v.value},
                     {"tau_sequence", v.tau_sequence},
                     {"samples", v.samples},
                     {"extrapolation_error", v.extrapolation_error},
                     {"converged", v.converged}};
}

}  // namespace galiray
