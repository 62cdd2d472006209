#include "galiray/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <tuple>

#include "galiray/errors.hpp"

namespace galiray {

namespace {

constexpr Complex kI(0.0, 1.0);
constexpr double kSkipRelative = 1e-8;
constexpr double kSampleRadius = 2.0;

std::vector<Vector> points_around(const PolyGaussianState& state, std::uint64_t seed, std::size_t count) {
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  return sample_ball(rng, state.center(), kSampleRadius, count);
}

double predicted_time_exponent(const RepDescriptor& rep, const GalileiElement& r, const GalileiElement& s,
                               double t) {
  // The time factor composes as exp(-i sigma gamma <v_r, W_r v_s> t).
  return rep.momentum_sign() * action_contribution(rep.gamma, r, s, t);
}

}  // namespace

std::vector<Vector> multiplier_sample_points(const RepDescriptor& rep, const GalileiElement& rs, TimeLabel t,
                                             const PolyGaussianState& state, std::uint64_t seed,
                                             std::size_t count) {
  return points_around(apply_time(rep, rs, t, state), seed, std::max(count, kMinSamplePoints));
}

ExponentFn predicted_exponent(const RepDescriptor& rep) {
  const double g = rep.gamma;
  const int n = rep.dim();
  ExponentParams params;
  params.gamma = g;
  params.lambda = rep.lambda;
  const PhaseExponent xi0(ExponentKind::xi0, n, params);
  switch (rep.kind) {
    case RepKind::schrodinger2d:
    case RepKind::schrodinger3d:
      return [xi0, g](const GalileiElement& r, const GalileiElement& s) { return -g * xi0(r, s); };
    case RepKind::nonabelian2d: {
      const PhaseExponent xi1(ExponentKind::xi1, n, params);
      return [xi0, xi1, g](const GalileiElement& r, const GalileiElement& s) { return -g * xi0(r, s) + xi1(r, s); };
    }
    case RepKind::bargmann3d: {
      GaugeFn phi = [g](const GalileiElement& r) {
        return g * (0.5 * r.u().dot(r.v()) - 0.5 * r.eta() * r.v().squaredNorm());
      };
      return [xi0, g, phi](const GalileiElement& r, const GalileiElement& s) {
        return -g * xi0(r, s) + coboundary(phi, r, s);
      };
    }
    case RepKind::position1d: break;
  }
  throw InvalidArgument("position1d has no group action, only generators");
}

std::string predicted_exponent_name(const RepDescriptor& rep) {
  switch (rep.kind) {
    case RepKind::schrodinger2d:
    case RepKind::schrodinger3d: return "-gamma*xi0";
    case RepKind::nonabelian2d: return "-gamma*xi0+lambda*xi1";
    case RepKind::bargmann3d: return "-gamma*xi0+coboundary(gamma*(<u,v>/2-eta|v|^2/2))";
    case RepKind::position1d: break;
  }
  return "";
}

MultiplierReport extract_multiplier(const RepDescriptor& rep, const GalileiElement& r, const GalileiElement& s,
                                    TimeLabel t, const PolyGaussianState& state,
                                    const std::vector<Vector>& sample_points) {
  const PolyGaussianState lhs = apply_time(rep, r, t, apply_time(rep, s, t, state));
  const PolyGaussianState rhs = apply_time(rep, r * s, t, state);

  std::vector<Complex> num;
  std::vector<Complex> den;
  double den_max = 0.0;
  for (const Vector& p : sample_points) {
    num.push_back(lhs(p));
    den.push_back(rhs(p));
    den_max = std::max(den_max, std::abs(den.back()));
  }

  MultiplierReport out;
  std::vector<Complex> ratios;
  for (std::size_t i = 0; i < num.size(); ++i) {
    if (den_max == 0.0 || std::abs(den[i]) < kSkipRelative * den_max) {
      ++out.skipped;
      continue;
    }
    ratios.push_back(num[i] / den[i]);
  }
  out.n_points = ratios.size();
  if (ratios.empty()) {
    out.omega = Complex(0.0, 0.0);
    out.constancy_spread = std::numeric_limits<double>::infinity();
    out.modulus_error = 1.0;
    return out;
  }
  Complex sum(0.0, 0.0);
  for (Complex z : ratios) sum += z;
  out.omega = sum / static_cast<double>(ratios.size());
  for (Complex z : ratios) out.constancy_spread = std::max(out.constancy_spread, std::abs(z - out.omega));
  out.modulus_error = std::abs(std::abs(out.omega) - 1.0);

  if (rep.momentum_space()) {
    const double xi = predicted_exponent(rep)(r, s) + predicted_time_exponent(rep, r, s, t.t);
    std::string name = predicted_exponent_name(rep);
    if (t.t != 0.0) name += rep.momentum_sign() > 0 ? "+xi_t" : "-xi_t";
    out.matched_exponent = MatchedExponent{name, std::abs(out.omega - std::exp(kI * xi))};
  }
  return out;
}

MultiplierReport extract_multiplier(const RepDescriptor& rep, const GalileiElement& r, const GalileiElement& s,
                                    TimeLabel t, const PolyGaussianState& state, std::uint64_t seed) {
  return extract_multiplier(rep, r, s, t, state, multiplier_sample_points(rep, r * s, t, state, seed));
}

Complex time_multiplier_ratio(const RepDescriptor& rep, const GalileiElement& r, const GalileiElement& s,
                              TimeLabel t, const PolyGaussianState& state, std::uint64_t seed) {
  const MultiplierReport timed = extract_multiplier(rep, r, s, t, state, seed);
  const MultiplierReport stat = extract_multiplier(rep, r, s, TimeLabel{0.0}, state, seed);
  return timed.omega / stat.omega;
}

double check_time_multiplier(const RepDescriptor& rep, const GalileiElement& r, const GalileiElement& s,
                             TimeLabel t, const PolyGaussianState& state, std::uint64_t seed) {
  const Complex ratio = time_multiplier_ratio(rep, r, s, t, state, seed);
  return std::abs(ratio - std::exp(kI * action_contribution(rep.gamma, r, s, t.t)));
}

double continuous_exponent(const RepDescriptor& rep, const GalileiElement& r, const GalileiElement& s,
                           const PolyGaussianState& state, std::size_t steps, std::uint64_t seed) {
  if (steps == 0) throw InvalidArgument("continuous_exponent: steps must be positive");
  auto omega_at = [&](double tau) {
    return extract_multiplier(rep, path_point(r, tau), path_point(s, tau), TimeLabel{0.0}, state, seed).omega;
  };
  constexpr double kMaxStep = 1.0;
  constexpr int kMaxDepth = 40;

  // Accumulates arg(omega) from a to b, halving intervals whose phase
  // increment is not small.
  auto advance = [&](auto& self, double a, Complex wa, double b, Complex wb, int depth) -> double {
    const double d = std::arg(wb / wa);
    if (std::abs(d) <= kMaxStep || depth >= kMaxDepth) return d;
    const double mid = 0.5 * (a + b);
    const Complex wm = omega_at(mid);
    return self(self, a, wa, mid, wm, depth + 1) + self(self, mid, wm, b, wb, depth + 1);
  };

  double total = std::arg(omega_at(0.0));
  double a = 0.0;
  Complex wa = omega_at(0.0);
  for (std::size_t k = 1; k <= steps; ++k) {
    const double b = static_cast<double>(k) / static_cast<double>(steps);
    const Complex wb = omega_at(b);
    total += advance(advance, a, wa, b, wb, 0);
    a = b;
    wa = wb;
  }
  return total;
}

namespace {

using CoefficientKey = std::pair<PolyDiffOperator::MultiIndex, Exponents>;

std::map<CoefficientKey, Complex> flatten(const PolyDiffOperator& op) {
  std::map<CoefficientKey, Complex> out;
  for (const auto& [alpha, poly] : op.terms())
    for (const auto& [e, c] : poly.terms()) out[{alpha, e}] = c;
  return out;
}

/// Least-squares K in D = K C at the coefficient level.
std::optional<Complex> fit_constant(const PolyDiffOperator& D, const PolyDiffOperator& C) {
  const auto d = flatten(D);
  const auto c = flatten(C);
  double norm = 0.0;
  Complex dot(0.0, 0.0);
  for (const auto& [key, cv] : c) {
    norm += std::norm(cv);
    auto it = d.find(key);
    if (it != d.end()) dot += std::conj(cv) * it->second;
  }
  if (norm == 0.0) return std::nullopt;
  return dot / norm;
}

std::vector<PolyGaussianState> state_battery(int dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0x5deece66dULL);
  std::vector<PolyGaussianState> out;
  out.push_back(PolyGaussianState::gaussian(Vector::Zero(dim), 1.0));
  for (int k = 0; k < 3; ++k) out.push_back(random_state(rng, dim, 1 + k % 2, 2));
  return out;
}

double battery_residual(const PolyDiffOperator& symbolic, const std::vector<PolyGaussianState>& battery,
                        const std::vector<double>& t_samples, std::uint64_t seed) {
  double worst = 0.0;
  for (double t : t_samples) {
    const PolyDiffOperator op = symbolic.at_time(t);
    for (std::size_t i = 0; i < battery.size(); ++i) {
      const PolyGaussianState image = apply_operator(op, battery[i]);
      for (const Vector& p : points_around(battery[i], seed + i, kMinSamplePoints)) {
        worst = std::max(worst, std::abs(image(p)));
      }
    }
  }
  return worst;
}

std::string format_complex(Complex z) {
  std::ostringstream os;
  os.precision(12);
  os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
  return os.str();
}

}  // namespace

HeisenbergFit heisenberg_fit(const RepDescriptor& rep, std::vector<std::string> generators,
                             const std::vector<double>& t_samples, std::uint64_t seed) {
  rep.validate();
  if (generators.empty()) generators = generator_names(rep);
  const std::vector<double> ts = t_samples.empty() ? std::vector<double>{0.0, 0.5, 1.7} : t_samples;
  constexpr double kMatch = 1e-12;

  const PolyDiffOperator H = static_generator(rep, "H");
  const auto battery = state_battery(rep.dim(), seed);

  struct Entry {
    std::string name;
    PolyDiffOperator D;
    PolyDiffOperator C;
    std::optional<Complex> K;
    bool time_independent;
  };
  std::vector<Entry> entries;
  for (const std::string& X : generators) {
    const PolyDiffOperator R = symbolic_generator(rep, X);
    Entry e{generator_alias(rep, X), R.time_derivative(), operator_commutator(H, R), std::nullopt,
            !R.depends_on_time()};
    e.K = fit_constant(e.D, e.C);
    entries.push_back(std::move(e));
  }

  std::vector<Complex> candidates;
  for (const Entry& e : entries) {
    if (!e.K) continue;
    const bool seen = std::any_of(candidates.begin(), candidates.end(),
                                  [&](Complex c) { return std::abs(c - *e.K) <= kMatch * std::max(1.0, std::abs(c)); });
    if (!seen) candidates.push_back(*e.K);
  }
  if (candidates.empty()) candidates.push_back(kI);

  auto residual_for = [&](const Entry& e, Complex K, int sign) {
    return battery_residual(e.D - (static_cast<double>(sign) * K) * e.C, battery, ts, seed);
  };

  HeisenbergFit best;
  bool have_best = false;
  auto score = [](const HeisenbergFit& f) {
    return std::make_tuple(f.max_residual > 1e-9 ? f.max_residual : 0.0, f.per_generator_flips.size(), -f.K.imag());
  };
  for (Complex K : candidates) {
    HeisenbergFit fit;
    fit.rep = rep.name();
    fit.K = K;
    fit.orientation = 1;
    for (const Entry& e : entries) {
      GeneratorFit g;
      g.name = e.name;
      g.K = e.K;
      g.time_independent = e.time_independent;
      g.own_residual = battery_residual(e.K ? e.D - *e.K * e.C : e.D, battery, ts, seed);
      const double straight = residual_for(e, K, 1);
      fit.uniform_residual = std::max(fit.uniform_residual, straight);
      g.residual = straight;
      if (e.K && std::abs(*e.K + K) <= kMatch * std::max(1.0, std::abs(K))) {
        const double flipped = residual_for(e, K, -1);
        if (flipped < straight) {
          g.residual = flipped;
          g.flipped = true;
          fit.per_generator_flips.push_back(e.name);
        }
      }
      fit.max_residual = std::max(fit.max_residual, g.residual);
      fit.generators.push_back(std::move(g));
    }
    if (!have_best || score(fit) < score(best)) {
      best = std::move(fit);
      have_best = true;
    }
  }

  best.uniform = best.per_generator_flips.empty() && best.uniform_residual <= 1e-12;
  std::ostringstream msg;
  if (best.uniform) {
    msg << "K = " << format_complex(best.K) << " with [H, X] fits every generator";
  } else {
    msg << "no uniform K:";
    for (const GeneratorFit& g : best.generators) {
      msg << " K_" << g.name << " = " << (g.K ? format_complex(*g.K) : std::string("free"));
      msg << ";";
    }
    if (!best.per_generator_flips.empty()) {
      msg << " K = " << format_complex(best.K) << " holds after flipping the commutator orientation for";
      for (const std::string& n : best.per_generator_flips) msg << " " << n;
    }
  }
  best.message = msg.str();
  return best;
}

double check_initial_condition(const RepDescriptor& rep, const std::string& X, const PolyGaussianState& state,
                               std::uint64_t seed) {
  const PolyGaussianState a = apply_operator(generator(rep, X, 0.0), state);
  const PolyGaussianState b = apply_operator(static_generator(rep, X), state);
  return max_pointwise_difference(a, b, points_around(state, seed, kMinSamplePoints));
}

ActionFit fit_generator_action(const RepDescriptor& rep, const std::string& X, double t,
                               const PolyGaussianState& state, std::uint64_t seed) {
  const PolyGaussianState d = one_parameter_derivative(rep, X, t, state);
  const PolyGaussianState g = apply_operator(generator(rep, X, t), state);
  const auto points = points_around(state, seed, kMinSamplePoints);
  Complex dot(0.0, 0.0);
  double norm = 0.0;
  std::vector<std::pair<Complex, Complex>> values;
  for (const Vector& p : points) {
    values.emplace_back(d(p), g(p));
    dot += std::conj(values.back().second) * values.back().first;
    norm += std::norm(values.back().second);
  }
  ActionFit out;
  out.generator = generator_alias(rep, X);
  out.c = norm > 0.0 ? dot / norm : Complex(0.0, 0.0);
  for (const auto& [dv, gv] : values) out.residual = std::max(out.residual, std::abs(dv - out.c * gv));
  out.modulus_error = std::abs(std::abs(out.c) - 1.0);
  return out;
}

void to_json(nlohmann::json& j, const MultiplierReport& r) {
  j = nlohmann::json{{"omega", {r.omega.real(), r.omega.imag()}},
                     {"constancy_spread", r.constancy_spread},
                     {"modulus_error", r.modulus_error},
                     {"n_points", r.n_points},
                     {"skipped", r.skipped}};
  if (r.matched_exponent) {
    j["matched_exponent"] = {{"name", r.matched_exponent->name}, {"residual", r.matched_exponent->residual}};
  } else {
    j["matched_exponent"] = nullptr;
  }
}

void to_json(nlohmann::json& j, const HeisenbergFit& f) {
  nlohmann::json gens = nlohmann::json::array();
  for (const GeneratorFit& g : f.generators) {
    nlohmann::json e{{"generator", g.name},
                     {"own_residual", g.own_residual},
                     {"residual", g.residual},
                     {"flipped", g.flipped},
                     {"time_independent", g.time_independent}};
    e["K"] = g.K ? nlohmann::json{g.K->real(), g.K->imag()} : nlohmann::json(nullptr);
    gens.push_back(std::move(e));
  }
  j = nlohmann::json{{"rep", f.rep},
                     {"K", {f.K.real(), f.K.imag()}},
                     {"orientation", f.orientation > 0 ? "[H,X]" : "[X,H]"},
                     {"per_generator_flips", f.per_generator_flips},
                     {"max_residual", f.max_residual},
                     {"uniform_residual", f.uniform_residual},
                     {"uniform", f.uniform},
                     {"generators", gens},
                     {"message", f.message}};
}

void to_json(nlohmann::json& j, const ActionFit& f) {
  j = nlohmann::json{{"generator", f.generator},
                     {"c", {f.c.real(), f.c.imag()}},
                     {"residual", f.residual},
                     {"modulus_error", f.modulus_error}};
}

}  // namespace galiray
