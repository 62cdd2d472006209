#include "galiray/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "galiray/algebra.hpp"
#include "galiray/cocycles.hpp"
#include "galiray/errors.hpp"
#include "galiray/verify.hpp"

namespace galiray {

namespace {

constexpr Complex kI(0.0, 1.0);
constexpr double kTimeRange = 2.0;

const std::map<std::string, double>& default_tolerances() {
  static const std::map<std::string, double> t{
      {"group", 1e-12},     {"closed_form", 1e-12}, {"algebra", 1e-12},  {"exponential", 1e-10},
      {"bch", 1e-6},        {"cocycle", 1e-10},     {"infexp", 1e-6},    {"unitarity", 1e-9},
      {"time_zero", 1e-12}, {"spread", 1e-9},       {"modulus", 1e-10},  {"converted", 1e-8},
      {"time", 1e-9},       {"heisenberg", 1e-12},  {"initial", 1e-12},
  };
  return t;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& text) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config: '" + key + "' expects a number, got '" + text + "'");
  }
}

std::uint64_t parse_uint(const std::string& key, const std::string& text) {
  if (text.empty() || text[0] == '-' || text[0] == '+') {
    throw ConfigError("config: '" + key + "' expects a nonnegative integer, got '" + text + "'");
  }
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(text, &used);
    if (used != text.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config: '" + key + "' expects a nonnegative integer, got '" + text + "'");
  }
}

std::vector<std::string> parse_list(const std::string& key, const std::string& text) {
  if (text.size() < 2 || text.front() != '[' || text.back() != ']') {
    throw ConfigError("config: '" + key + "' expects a list [a, b, ...]");
  }
  std::vector<std::string> out;
  const std::string body = trim(text.substr(1, text.size() - 2));
  if (body.empty()) return out;
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) throw ConfigError("config: empty list element in '" + key + "'");
    out.push_back(item);
  }
  return out;
}

std::vector<double> parse_double_list(const std::string& key, const std::string& text) {
  std::vector<double> out;
  for (const std::string& s : parse_list(key, text)) out.push_back(parse_double(key, s));
  return out;
}

Sampler parse_sampler(const std::string& s) {
  if (s == "random") return Sampler::random;
  if (s == "identity") return Sampler::identity;
  throw ConfigError("config: sampler must be 'random' or 'identity'");
}

std::string sampler_name(Sampler s) { return s == Sampler::random ? "random" : "identity"; }

RepDescriptor* find_rep(SuiteConfig& c, const std::string& kind) {
  for (RepDescriptor& r : c.reps)
    if (r.name() == kind) return &r;
  return nullptr;
}

void set_rep_param(RepDescriptor& rep, const std::string& param, double value) {
  if (param == "gamma") rep.gamma = value;
  else if (param == "lambda") rep.lambda = value;
  else if (param == "s") rep.s = value;
  else if (param == "hbar") rep.hbar = value;
  else if (param == "m") rep.m = value;
  else if (param == "f" || param == "force_f") rep.force_f = value;
  else if (param == "V0") rep.V0 = value;
  else if (param == "a3") rep.V0 = value / (2.0 * rep.m);
  else throw ConfigError("config: unknown representation parameter '" + param + "'");
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

class Sampling {
 public:
  Sampling(std::uint64_t seed, Sampler sampler, double scale) : rng_(seed), sampler_(sampler), scale_(scale) {}

  GalileiElement element(int dim) {
    if (sampler_ == Sampler::identity) return GalileiElement::identity(dim);
    return random_element(rng_, dim, scale_);
  }
  AlgebraElement algebra(int dim) {
    if (sampler_ == Sampler::identity) return AlgebraElement::zero(dim);
    return random_algebra_element(rng_, dim, scale_);
  }
  double time() { return std::uniform_real_distribution<double>(-kTimeRange, kTimeRange)(rng_); }
  PolyGaussianState state(int dim, int n_terms = 1) { return normalized(random_state(rng_, dim, n_terms, 2)); }
  Vector vector(int dim) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Vector v(dim);
    for (int k = 0; k < dim; ++k) v(k) = (sampler_ == Sampler::identity) ? 0.0 : scale_ * u(rng_);
    return v;
  }
  std::uint64_t next_seed() { return rng_(); }
  std::mt19937_64& rng() { return rng_; }

 private:
  std::mt19937_64 rng_;
  Sampler sampler_;
  double scale_;
};

CheckResult make_check(std::string name, std::string rep, std::uint64_t seed, double tol) {
  CheckResult r;
  r.check = std::move(name);
  r.rep = std::move(rep);
  r.seed = seed;
  r.tolerance = tol;
  return r;
}

bool is_momentum(const RepDescriptor& rep) { return rep.momentum_space(); }

struct Context {
  const SuiteConfig& config;
  std::vector<CheckResult>& out;

  std::uint64_t seed(const std::string& name) const { return check_seed(config.seed, name); }
  double tol(const std::string& name) const { return config.tolerance(name); }
  Sampling sampling(const std::string& name) const { return Sampling(seed(name), config.sampler, config.scale); }

  void push(CheckResult r) {
    finalize(r, config.expected_divergences);
    out.push_back(std::move(r));
  }
};

// Runs `body`; an exception becomes a failed check with its message.
template <class Body>
void guarded(Context& ctx, CheckResult r, Body body) {
  try {
    body(r);
  } catch (const std::exception& e) {
    r.pass = false;
    r.informational = false;
    r.max_residual = std::numeric_limits<double>::infinity();
    r.details.push_back({{"error", e.what()}});
  }
  ctx.push(std::move(r));
}

void group_checks(Context& ctx) {
  const std::size_t n = ctx.config.n_triples;
  const double tol = ctx.tol("group");

  guarded(ctx, make_check("group.associativity", "-", ctx.seed("group.associativity"), tol), [&](CheckResult& r) {
    Sampling s = ctx.sampling(r.check);
    for (int dim = 1; dim <= 3; ++dim) {
      double worst = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const GalileiElement a = s.element(dim), b = s.element(dim), c = s.element(dim);
        worst = std::max(worst, max_abs_difference((a * b) * c, a * (b * c)));
      }
      r.details.push_back({{"dim", dim}, {"max_residual", worst}});
      r.max_residual = std::max(r.max_residual, worst);
      r.n_cases += n;
    }
    r.pass = r.max_residual < tol;
  });

  guarded(ctx, make_check("group.inverse", "-", ctx.seed("group.inverse"), tol), [&](CheckResult& r) {
    Sampling s = ctx.sampling(r.check);
    for (int dim = 1; dim <= 3; ++dim) {
      const GalileiElement e = GalileiElement::identity(dim);
      double worst = max_abs_difference(e * e, e);
      for (std::size_t i = 0; i < n; ++i) {
        const GalileiElement a = s.element(dim);
        const GalileiElement ai = inverse(a);
        worst = std::max({worst, max_abs_difference(a * ai, e), max_abs_difference(ai * a, e),
                          max_abs_difference(a * e, a), max_abs_difference(e * a, a)});
      }
      r.details.push_back({{"dim", dim}, {"max_residual", worst}});
      r.max_residual = std::max(r.max_residual, worst);
      r.n_cases += n;
    }
    r.pass = r.max_residual < tol;
  });

  guarded(ctx, make_check("group.embedding", "-", ctx.seed("group.embedding"), tol), [&](CheckResult& r) {
    Sampling s = ctx.sampling(r.check);
    for (int dim = 1; dim <= 3; ++dim) {
      double hom = 0.0;
      double round_trip = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const GalileiElement a = s.element(dim), b = s.element(dim);
        hom = std::max(hom, (embed_matrix(a * b) - embed_matrix(a) * embed_matrix(b)).cwiseAbs().maxCoeff());
        const GalileiElement back = decode_matrix(embed_matrix(a));
        round_trip = std::max(round_trip, (back.W() - a.W()).cwiseAbs().maxCoeff());
        round_trip = std::max({round_trip, std::abs(back.eta() - a.eta()), (back.v() - a.v()).cwiseAbs().maxCoeff(),
                               (back.u() - a.u()).cwiseAbs().maxCoeff()});
      }
      r.details.push_back({{"dim", dim}, {"homomorphism", hom}, {"round_trip", round_trip}});
      r.max_residual = std::max({r.max_residual, hom, round_trip});
      r.n_cases += n;
    }
    r.pass = r.max_residual < tol;
  });

  guarded(ctx, make_check("group.momentum_action", "-", ctx.seed("group.momentum_action"), tol), [&](CheckResult& r) {
    Sampling s = ctx.sampling(r.check);
    const double gamma = 1.3;
    for (int dim = 1; dim <= 3; ++dim) {
      double worst = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const GalileiElement a = s.element(dim), b = s.element(dim);
        const Vector p = s.vector(dim);
        const Vector lhs = act_on_momentum(b, act_on_momentum(a, p, gamma), gamma);
        const Vector rhs = act_on_momentum(a * b, p, gamma);
        worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
      }
      r.details.push_back({{"dim", dim}, {"max_residual", worst}});
      r.max_residual = std::max(r.max_residual, worst);
      r.n_cases += n;
    }
    r.pass = r.max_residual < tol;
  });
}

void algebra_checks(Context& ctx) {
  const std::size_t n = ctx.config.n_triples;

  guarded(ctx, make_check("algebra.jacobi", "-", ctx.seed("algebra.jacobi"), ctx.tol("algebra")), [&](CheckResult& r) {
    Sampling s = ctx.sampling(r.check);
    for (int dim = 1; dim <= 3; ++dim) {
      double worst = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const AlgebraElement X = s.algebra(dim), Y = s.algebra(dim), Z = s.algebra(dim);
        worst = std::max(worst, jacobi_residual(X, Y, Z));
      }
      const auto names = basis_names(dim);
      for (const auto& a : names)
        for (const auto& b : names)
          for (const auto& c : names)
            worst = std::max(worst, jacobi_residual(AlgebraElement::basis(dim, a), AlgebraElement::basis(dim, b),
                                                    AlgebraElement::basis(dim, c)));
      r.details.push_back({{"dim", dim}, {"max_residual", worst}});
      r.max_residual = std::max(r.max_residual, worst);
      r.n_cases += n;
    }
    r.pass = r.max_residual < r.tolerance;
  });

  guarded(ctx, make_check("algebra.structure_constants", "-", ctx.seed("algebra.structure_constants"),
                          ctx.tol("algebra")),
          [&](CheckResult& r) {
            Sampling s = ctx.sampling(r.check);
            for (int dim = 1; dim <= 3; ++dim) {
              double matrix_route = 0.0;
              double antisymmetry = 0.0;
              for (std::size_t i = 0; i < n; ++i) {
                const AlgebraElement X = s.algebra(dim), Y = s.algebra(dim);
                const AlgebraElement c = commutator(X, Y);
                matrix_route = std::max(matrix_route, (c - matrix_commutator(X, Y)).max_abs());
                antisymmetry = std::max(antisymmetry, (c + commutator(Y, X)).max_abs());
              }
              r.details.push_back(
                  {{"dim", dim}, {"matrix_commutator", matrix_route}, {"antisymmetry", antisymmetry}});
              r.max_residual = std::max({r.max_residual, matrix_route, antisymmetry});
              r.n_cases += n;
            }
            r.pass = r.max_residual < r.tolerance;
          });

  guarded(ctx, make_check("algebra.exponential", "-", ctx.seed("algebra.exponential"), ctx.tol("exponential")),
          [&](CheckResult& r) {
            Sampling s = ctx.sampling(r.check);
            for (int dim = 1; dim <= 3; ++dim) {
              double worst = 0.0;
              for (std::size_t i = 0; i < ctx.config.n_cases; ++i) {
                const AlgebraElement X = s.algebra(dim);
                const Matrix a = embed_matrix(exponential(X));
                const Matrix b = expm(embed_algebra(X));
                worst = std::max(worst, (a - b).cwiseAbs().maxCoeff());
              }
              r.details.push_back({{"dim", dim}, {"max_residual", worst}});
              r.max_residual = std::max(r.max_residual, worst);
              r.n_cases += ctx.config.n_cases;
            }
            r.pass = r.max_residual < r.tolerance;
          });

  // exp(tX) exp(tY) exp(-tX) exp(-tY) = I + t^2 [X, Y] + O(t^3) on the matrix embedding.
  guarded(ctx, make_check("algebra.bch", "-", ctx.seed("algebra.bch"), ctx.tol("bch")), [&](CheckResult& r) {
    Sampling s = ctx.sampling(r.check);
    const std::vector<double>& taus = ctx.config.tau_sequence;
    const std::size_t cases = std::max<std::size_t>(1, ctx.config.n_cases / 2);
    for (int dim = 2; dim <= 3; ++dim) {
      double worst = 0.0;
      for (std::size_t i = 0; i < cases; ++i) {
        const AlgebraElement X = s.algebra(dim), Y = s.algebra(dim);
        const Matrix target = embed_algebra(matrix_commutator(X, Y));
        std::vector<Matrix> samples;
        for (double tau : taus) {
          const GalileiElement c = exponential(tau * X) * exponential(tau * Y) * exponential(-tau * X) *
                                   exponential(-tau * Y);
          const Matrix m = embed_matrix(c);
          samples.push_back((m - Matrix::Identity(m.rows(), m.cols())) / (tau * tau));
        }
        for (Eigen::Index a = 0; a < target.rows(); ++a) {
          for (Eigen::Index b = 0; b < target.cols(); ++b) {
            std::vector<double> values;
            for (const Matrix& m : samples) values.push_back(m(a, b));
            const double limit = richardson_diagonal(taus, values).back();
            worst = std::max(worst, std::abs(limit - target(a, b)));
          }
        }
      }
      r.details.push_back({{"dim", dim}, {"max_residual", worst}});
      r.max_residual = std::max(r.max_residual, worst);
      r.n_cases += cases;
    }
    r.pass = r.max_residual < r.tolerance;
  });
}

void cocycle_checks(Context& ctx) {
  const auto& c = ctx.config;
  const double tol = ctx.tol("cocycle");
  for (int dim = 1; dim <= 3; ++dim) {
    const std::string name = "cocycle.xi0.d" + std::to_string(dim);
    guarded(ctx, make_check(name, "-", ctx.seed(name), tol), [&](CheckResult& r) {
      r = cocycle_check("xi0", dim, c.n_triples, r.seed, c.scale, tol);
      r.check = name;
    });
  }
  for (const auto& [xi, dim] : std::vector<std::pair<std::string, int>>{
           {"xi1", 2}, {"xi2", 2}, {"xi_eta", 1}, {"xi_eta_literal", 1}}) {
    const std::string name = "cocycle." + xi;
    guarded(ctx, make_check(name, "-", ctx.seed(name), tol), [&, xi = xi, dim = dim](CheckResult& r) {
      r = cocycle_check(xi, dim, c.n_triples, r.seed, c.scale, tol);
      r.check = name;
    });
  }
  for (int dim = 2; dim <= 3; ++dim) {
    for (double t : c.t_samples) {
      std::ostringstream os;
      os << "cocycle.xi_t.d" << dim << ".t" << t;
      const std::string name = os.str();
      guarded(ctx, make_check(name, "-", ctx.seed(name), tol), [&](CheckResult& r) {
        r = cocycle_check("xi_t", dim, c.n_triples, r.seed, c.scale, tol, t);
        r.check = name;
      });
    }
  }
}

std::vector<const RepDescriptor*> momentum_reps(const SuiteConfig& c) {
  std::vector<const RepDescriptor*> out;
  for (const RepDescriptor& r : c.reps)
    if (is_momentum(r)) out.push_back(&r);
  return out;
}

void unitarity_checks(Context& ctx) {
  for (const RepDescriptor* rep : momentum_reps(ctx.config)) {
    const std::string name = "unitarity." + rep->name();
    guarded(ctx, make_check(name, rep->name(), ctx.seed(name), ctx.tol("unitarity")), [&](CheckResult& r) {
      Sampling s = ctx.sampling(name);
      const int dim = rep->dim();
      double worst_static = 0.0;
      double worst_time = 0.0;
      for (std::size_t i = 0; i < ctx.config.n_cases; ++i) {
        const GalileiElement g = s.element(dim);
        const PolyGaussianState f = s.state(dim, 1 + static_cast<int>(i % 2));
        const PolyGaussianState h = s.state(dim, 1);
        const double t = s.time();
        const Complex before = inner_product(f, h);
        const Complex after = inner_product(apply(*rep, g, f), apply(*rep, g, h));
        const Complex after_t =
            inner_product(apply_time(*rep, g, TimeLabel{t}, f), apply_time(*rep, g, TimeLabel{t}, h));
        worst_static = std::max(worst_static, std::abs(after - before));
        worst_time = std::max(worst_time, std::abs(after_t - before));
      }
      r.n_cases = ctx.config.n_cases;
      r.details.push_back({{"apply", worst_static}, {"apply_time", worst_time}});
      r.max_residual = std::max(worst_static, worst_time);
      r.pass = r.max_residual < r.tolerance;
    });
  }
}

void time_zero_checks(Context& ctx) {
  for (const RepDescriptor* rep : momentum_reps(ctx.config)) {
    const std::string name = "time_zero." + rep->name();
    guarded(ctx, make_check(name, rep->name(), ctx.seed(name), ctx.tol("time_zero")), [&](CheckResult& r) {
      Sampling s = ctx.sampling(name);
      const int dim = rep->dim();
      for (std::size_t i = 0; i < ctx.config.n_cases; ++i) {
        const GalileiElement g = s.element(dim);
        const PolyGaussianState f = s.state(dim, 1 + static_cast<int>(i % 2));
        const PolyGaussianState a = apply_time(*rep, g, TimeLabel{0.0}, f);
        const PolyGaussianState b = apply(*rep, g, f);
        const auto points = sample_ball(s.rng(), b.center(), 2.0, kMinSamplePoints);
        r.max_residual = std::max(r.max_residual, max_pointwise_difference(a, b, points));
      }
      r.n_cases = ctx.config.n_cases;
      r.pass = r.max_residual < r.tolerance;
    });
  }
}

void multiplier_checks(Context& ctx) {
  const auto& c = ctx.config;
  for (const RepDescriptor* rep : momentum_reps(c)) {
    const std::string name = "multiplier." + rep->name();
    guarded(ctx, make_check(name, rep->name(), ctx.seed(name), ctx.tol("spread")), [&](CheckResult& r) {
      r = multiplier_check(*rep, c.n_pairs, r.seed, c.scale, ctx.tol("spread"), ctx.tol("modulus"), c.sampler);
      r.check = name;
    });

    const std::string conv = "multiplier_converted." + rep->name();
    guarded(ctx, make_check(conv, rep->name(), ctx.seed(conv), ctx.tol("converted")), [&](CheckResult& r) {
      Sampling s = ctx.sampling(conv);
      const int dim = rep->dim();
      const ExponentFn predicted = predicted_exponent(*rep);
      double gap = 0.0;
      for (std::size_t i = 0; i < c.n_converted; ++i) {
        const GalileiElement a = s.element(dim), b = s.element(dim), q = s.element(dim);
        const PolyGaussianState f = s.state(dim, 1);
        const std::uint64_t seed = s.next_seed();
        const double ab = continuous_exponent(*rep, a, b, f, 16, seed);
        const double ab_q = continuous_exponent(*rep, a * b, q, f, 16, seed);
        const double bq = continuous_exponent(*rep, b, q, f, 16, seed);
        const double a_bq = continuous_exponent(*rep, a, b * q, f, 16, seed);
        r.max_residual = std::max(r.max_residual, std::abs(ab + ab_q - bq - a_bq));
        gap = std::max(gap, std::abs(ab - predicted(a, b)));
      }
      r.n_cases = c.n_converted;
      r.details.push_back({{"cocycle_residual", r.max_residual},
                           {"max_gap_to_predicted", gap},
                           {"predicted", predicted_exponent_name(*rep)}});
      r.pass = r.max_residual < r.tolerance;
    });
  }
}

void time_multiplier_checks(Context& ctx) {
  const auto& c = ctx.config;
  for (const RepDescriptor* rep : momentum_reps(c)) {
    const bool law_applies = rep->momentum_sign() > 0;
    const std::string name = "time_multiplier." + rep->name();
    guarded(ctx, make_check(name, rep->name(), ctx.seed(name), ctx.tol("time")), [&](CheckResult& r) {
      Sampling s = ctx.sampling(name);
      const int dim = rep->dim();
      double opposite = 0.0;
      for (std::size_t i = 0; i < c.n_time_cases; ++i) {
        const GalileiElement a = s.element(dim), b = s.element(dim);
        const PolyGaussianState f = s.state(dim, 1);
        const double t = s.time();
        const std::uint64_t seed = s.next_seed();
        const Complex ratio = time_multiplier_ratio(*rep, a, b, TimeLabel{t}, f, seed);
        const double xi_t = action_contribution(rep->gamma, a, b, t);
        r.max_residual = std::max(r.max_residual, std::abs(ratio - std::exp(kI * xi_t)));
        opposite = std::max(opposite, std::abs(ratio - std::exp(-kI * xi_t)));
      }
      r.n_cases = c.n_time_cases;
      r.details.push_back({{"residual_exp_i_xi_t", r.max_residual}, {"residual_exp_minus_i_xi_t", opposite}});
      if (!law_applies) {
        // W^{-1}(p - gamma v) reverses the sign of the time factor.
        r.informational = true;
        r.details.push_back({{"note", "opposite momentum action; the ratio is exp(-i xi_t)"}});
      }
      r.pass = r.max_residual < r.tolerance;
    });

    if (!law_applies) continue;
    const std::string boost = "time_multiplier_pure_boost." + rep->name();
    guarded(ctx, make_check(boost, rep->name(), ctx.seed(boost), ctx.tol("time")), [&](CheckResult& r) {
      Sampling s = ctx.sampling(boost);
      const int dim = rep->dim();
      for (std::size_t i = 0; i < c.n_time_cases; ++i) {
        const Vector vr = s.vector(dim), vs = s.vector(dim);
        const PolyGaussianState f = s.state(dim, 1);
        const double t = s.time();
        const Complex ratio =
            time_multiplier_ratio(*rep, GalileiElement::boost(vr), GalileiElement::boost(vs), TimeLabel{t}, f,
                                  s.next_seed());
        const Complex expected = std::exp(-kI * rep->gamma * vr.dot(vs) * t);
        r.max_residual = std::max(r.max_residual, std::abs(ratio - expected));
      }
      r.n_cases = c.n_time_cases;
      r.pass = r.max_residual < r.tolerance;
    });
  }
}

void heisenberg_checks(Context& ctx) {
  std::vector<double> ts = ctx.config.t_samples;
  ts.insert(ts.begin(), 0.0);
  for (const RepDescriptor& rep : ctx.config.reps) {
    const std::string name = "heisenberg." + rep.name();
    guarded(ctx, make_check(name, rep.name(), ctx.seed(name), ctx.tol("heisenberg")), [&](CheckResult& r) {
      r = heisenberg_check(rep, ts, r.seed, r.tolerance);
      r.check = name;
    });

    if (!is_momentum(rep)) continue;
    const std::string comm = "static_commutators." + rep.name();
    guarded(ctx, make_check(comm, rep.name(), 0, ctx.tol("closed_form")), [&](CheckResult& r) {
      const PolyDiffOperator H = static_generator(rep, "H");
      for (const std::string& X : generator_names(rep)) {
        if (X[0] != 'P' && X[0] != 'M' && X != "H") continue;
        const double v = operator_commutator(H, static_generator(rep, X)).max_abs_coefficient();
        r.details.push_back({{"commutator", "[H," + X + "]"}, {"max_abs_coefficient", v}});
        r.max_residual = std::max(r.max_residual, v);
        ++r.n_cases;
      }
      r.pass = r.max_residual < r.tolerance;
    });
  }
}

void initial_condition_checks(Context& ctx) {
  for (const RepDescriptor& rep : ctx.config.reps) {
    const std::string name = "initial_condition." + rep.name();
    guarded(ctx, make_check(name, rep.name(), ctx.seed(name), ctx.tol("initial")), [&](CheckResult& r) {
      Sampling s = ctx.sampling(name);
      std::vector<PolyGaussianState> states;
      for (int k = 0; k < 3; ++k) states.push_back(s.state(rep.dim(), 1 + k % 2));
      for (const std::string& X : generator_names(rep)) {
        double worst = 0.0;
        for (const PolyGaussianState& f : states) {
          worst = std::max(worst, check_initial_condition(rep, X, f, s.next_seed()));
        }
        r.details.push_back({{"generator", X}, {"residual", worst}});
        r.max_residual = std::max(r.max_residual, worst);
        ++r.n_cases;
      }
      r.pass = r.max_residual < r.tolerance;
    });
  }
}

void generator_action_checks(Context& ctx) {
  for (const RepDescriptor* rep : momentum_reps(ctx.config)) {
    const std::string name = "generator_action." + rep->name();
    guarded(ctx, make_check(name, rep->name(), ctx.seed(name), ctx.tol("spread")), [&](CheckResult& r) {
      r.informational = true;
      Sampling s = ctx.sampling(name);
      const PolyGaussianState f = s.state(rep->dim(), 1);
      for (double t : {0.0, 0.7}) {
        for (const std::string& X : basis_names(rep->dim())) {
          const ActionFit fit = fit_generator_action(*rep, X, t, f, s.next_seed());
          nlohmann::json j = fit;
          j["basis"] = X;
          j["t"] = t;
          r.details.push_back(std::move(j));
          r.max_residual = std::max(r.max_residual, fit.residual);
          ++r.n_cases;
        }
      }
      r.pass = true;
    });
  }
}

}  // namespace

// ---------------------------------------------------------------------------

SuiteConfig SuiteConfig::defaults() {
  SuiteConfig c;
  c.tau_sequence = default_tau_sequence();
  c.tolerances = default_tolerances();
  for (auto k : {RepKind::schrodinger2d, RepKind::nonabelian2d, RepKind::schrodinger3d, RepKind::bargmann3d,
                 RepKind::position1d}) {
    c.reps.push_back(RepDescriptor::defaults(k));
  }
  c.t_samples = {0.5, 1.7};
  c.expected_divergences = {"cocycle.xi_eta_literal", "heisenberg.position1d", "initial_condition.nonabelian2d"};
  return c;
}

std::vector<std::string> SuiteConfig::tolerance_names() {
  std::vector<std::string> out;
  for (const auto& [k, v] : default_tolerances()) out.push_back(k);
  return out;
}

double SuiteConfig::tolerance(const std::string& name) const {
  auto it = tolerances.find(name);
  if (it != tolerances.end()) return it->second;
  auto d = default_tolerances().find(name);
  if (d == default_tolerances().end()) throw ConfigError("unknown tolerance '" + name + "'");
  return d->second;
}

void SuiteConfig::validate() const {
  if (!(scale >= 0.0) || !std::isfinite(scale)) throw ConfigError("config: scale must be finite and nonnegative");
  if (n_triples < 1 || n_pairs < 1 || n_time_cases < 1 || n_cases < 1 || n_converted < 1) {
    throw ConfigError("config: case counts must be at least 1");
  }
  for (const auto& [name, value] : tolerances) {
    if (!default_tolerances().count(name)) throw ConfigError("config: unknown tolerance '" + name + "'");
    if (!(value > 0.0) || !std::isfinite(value)) {
      throw ConfigError("config: tolerance '" + name + "' must be positive");
    }
  }
  if (tau_sequence.size() < 2) throw ConfigError("config: tau_sequence needs at least two values");
  for (std::size_t i = 0; i < tau_sequence.size(); ++i) {
    if (!(tau_sequence[i] > 0.0)) throw ConfigError("config: tau_sequence values must be positive");
    if (i > 0 && !(tau_sequence[i] < tau_sequence[i - 1])) {
      throw ConfigError("config: tau_sequence must be strictly decreasing");
    }
  }
  for (double t : t_samples)
    if (!std::isfinite(t)) throw ConfigError("config: t_samples must be finite");
  std::set<std::string> kinds;
  for (const RepDescriptor& r : reps) {
    if (!kinds.insert(r.name()).second) throw ConfigError("config: representation '" + r.name() + "' listed twice");
    try {
      r.validate();
    } catch (const InvalidArgument& e) {
      throw ConfigError(e.what());
    }
  }
}

SuiteConfig parse_config(const std::string& text) {
  const std::string body = trim(text);
  if (!body.empty() && body.front() == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(body);
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(std::string("config: invalid JSON: ") + e.what());
    }
    return config_from_json(j);
  }

  std::vector<std::pair<std::string, std::string>> entries;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw ConfigError("config line " + std::to_string(line_no) + ": empty key or value");
    }
    entries.emplace_back(std::move(key), std::move(value));
  }

  SuiteConfig c = SuiteConfig::defaults();
  // reps first, so per-representation parameters apply to the final list.
  for (const auto& [key, value] : entries) {
    if (key != "reps") continue;
    c.reps.clear();
    for (const std::string& kind : parse_list(key, value)) {
      try {
        c.reps.push_back(RepDescriptor::defaults(rep_kind(kind)));
      } catch (const InvalidArgument& e) {
        throw ConfigError(e.what());
      }
    }
  }
  for (const auto& [key, value] : entries) {
    if (key == "reps") continue;
    if (key == "seed") c.seed = parse_uint(key, value);
    else if (key == "scale") c.scale = parse_double(key, value);
    else if (key == "n_triples") c.n_triples = parse_uint(key, value);
    else if (key == "n_pairs") c.n_pairs = parse_uint(key, value);
    else if (key == "n_time_cases") c.n_time_cases = parse_uint(key, value);
    else if (key == "n_cases") c.n_cases = parse_uint(key, value);
    else if (key == "n_converted") c.n_converted = parse_uint(key, value);
    else if (key == "tau_sequence") c.tau_sequence = parse_double_list(key, value);
    else if (key == "t_samples") c.t_samples = parse_double_list(key, value);
    else if (key == "expected_divergences") c.expected_divergences = parse_list(key, value);
    else if (key == "sampler") c.sampler = parse_sampler(value);
    else if (key.rfind("tolerance.", 0) == 0) c.tolerances[key.substr(10)] = parse_double(key, value);
    else if (key.rfind("rep.", 0) == 0) {
      const auto dot = key.find('.', 4);
      if (dot == std::string::npos) throw ConfigError("config: expected rep.<kind>.<param>, got '" + key + "'");
      RepDescriptor* rep = find_rep(c, key.substr(4, dot - 4));
      if (!rep) throw ConfigError("config: '" + key + "' names a representation not in reps");
      set_rep_param(*rep, key.substr(dot + 1), parse_double(key, value));
    } else {
      throw ConfigError("config: unknown key '" + key + "'");
    }
  }
  c.validate();
  return c;
}

SuiteConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

SuiteConfig config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config: JSON document must be an object");
  SuiteConfig c = SuiteConfig::defaults();
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "seed") c.seed = value.get<std::uint64_t>();
      else if (key == "scale") c.scale = value.get<double>();
      else if (key == "n_triples") c.n_triples = value.get<std::size_t>();
      else if (key == "n_pairs") c.n_pairs = value.get<std::size_t>();
      else if (key == "n_time_cases") c.n_time_cases = value.get<std::size_t>();
      else if (key == "n_cases") c.n_cases = value.get<std::size_t>();
      else if (key == "n_converted") c.n_converted = value.get<std::size_t>();
      else if (key == "tau_sequence") c.tau_sequence = value.get<std::vector<double>>();
      else if (key == "t_samples") c.t_samples = value.get<std::vector<double>>();
      else if (key == "expected_divergences") c.expected_divergences = value.get<std::vector<std::string>>();
      else if (key == "sampler") c.sampler = parse_sampler(value.get<std::string>());
      else if (key == "tolerances") {
        for (const auto& [name, tol] : value.items()) c.tolerances[name] = tol.get<double>();
      } else if (key == "reps") {
        c.reps.clear();
        for (const auto& r : value) {
          c.reps.push_back(r.is_string() ? RepDescriptor::defaults(rep_kind(r.get<std::string>()))
                                         : r.get<RepDescriptor>());
        }
      } else {
        throw ConfigError("config: unknown key '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
  c.validate();
  return c;
}

nlohmann::json config_to_json(const SuiteConfig& c) {
  nlohmann::json reps = nlohmann::json::array();
  for (const RepDescriptor& r : c.reps) reps.push_back(r);
  return nlohmann::json{{"seed", c.seed},
                        {"scale", c.scale},
                        {"n_triples", c.n_triples},
                        {"n_pairs", c.n_pairs},
                        {"n_time_cases", c.n_time_cases},
                        {"n_cases", c.n_cases},
                        {"n_converted", c.n_converted},
                        {"tau_sequence", c.tau_sequence},
                        {"t_samples", c.t_samples},
                        {"tolerances", c.tolerances},
                        {"reps", reps},
                        {"expected_divergences", c.expected_divergences},
                        {"sampler", sampler_name(c.sampler)}};
}

void apply_environment(SuiteConfig& c) {
  if (const char* s = std::getenv("GALIRAY_SEED")) c.seed = parse_uint("GALIRAY_SEED", trim(s));
}

std::string status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::expected_divergence: return "expected_divergence";
    case CheckStatus::info: return "info";
  }
  return "fail";
}

const CheckResult* SuiteReport::find(const std::string& check) const {
  for (const CheckResult& c : checks)
    if (c.check == check) return &c;
  return nullptr;
}

nlohmann::json SuiteReport::to_json(bool with_timestamp) const {
  nlohmann::json arr = nlohmann::json::array();
  for (const CheckResult& c : checks) {
    arr.push_back({{"check", c.check},
                   {"rep", c.rep},
                   {"seed", c.seed},
                   {"n_cases", c.n_cases},
                   {"max_residual", c.max_residual},
                   {"tolerance", c.tolerance},
                   {"pass", c.pass},
                   {"status", status_name(c.status)},
                   {"details", c.details}});
  }
  nlohmann::json j{{"schema", 1}, {"seed", seed}, {"pass", pass}, {"n_checks", checks.size()}, {"checks", arr}};
  if (with_timestamp) j["timestamp"] = timestamp;
  return j;
}

std::uint64_t check_seed(std::uint64_t seed, const std::string& check) {
  // FNV-1a over the name, mixed with the suite seed (splitmix64 finalizer).
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : check) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  std::uint64_t z = seed + h + 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

void finalize(CheckResult& r, const std::vector<std::string>& expected_divergences) {
  if (r.informational) {
    r.status = CheckStatus::info;
  } else if (r.pass) {
    r.status = CheckStatus::pass;
  } else if (std::find(expected_divergences.begin(), expected_divergences.end(), r.check) !=
             expected_divergences.end()) {
    r.status = CheckStatus::expected_divergence;
  } else {
    r.status = CheckStatus::fail;
  }
}

int exit_status(const SuiteReport& report) { return report.pass ? 0 : 1; }

CheckResult cocycle_check(const std::string& name, int dim, std::size_t n_triples, std::uint64_t seed,
                          double scale, double tolerance, double t) {
  ExponentParams params;
  params.t = t;
  const PhaseExponent xi = PhaseExponent::from_name(name, dim, params);
  CheckResult r = make_check("cocycle." + name, "-", seed, tolerance);
  std::mt19937_64 rng(seed);
  const GalileiElement e = GalileiElement::identity(dim);
  const double normalization = std::abs(xi(e, e));
  double worst = 0.0;
  std::size_t worst_index = 0;
  for (std::size_t i = 0; i < n_triples; ++i) {
    const GalileiElement a = random_element(rng, dim, scale);
    const GalileiElement b = random_element(rng, dim, scale);
    const GalileiElement c = random_element(rng, dim, scale);
    const double res = cocycle_residual(xi, a, b, c);
    if (res > worst) {
      worst = res;
      worst_index = i;
    }
  }
  r.n_cases = n_triples;
  r.max_residual = std::max(worst, normalization);
  r.details.push_back({{"exponent", xi.name()},
                       {"dim", dim},
                       {"t", t},
                       {"normalization", normalization},
                       {"associativity", worst},
                       {"worst_index", worst_index}});
  r.pass = r.max_residual < tolerance;
  return r;
}

CheckResult infexp_check(const std::string& name, int dim, const std::vector<double>& taus, double tolerance,
                         double gamma) {
  ExponentParams params;
  params.gamma = gamma;
  const PhaseExponent xi = PhaseExponent::from_name(name, dim, params);
  CheckResult r = make_check("infexp." + name + ".d" + std::to_string(dim), "-", 0, tolerance);
  const auto names = basis_names(dim);
  bool converged = true;
  for (const std::string& a : names) {
    for (const std::string& b : names) {
      const auto v = infinitesimal_exponent(xi, AlgebraElement::basis(dim, a), AlgebraElement::basis(dim, b), taus,
                                            tolerance);
      double expected = 0.0;
      if (name == "xi0" && a.size() == 2 && b.size() == 2 && a[1] == b[1]) {
        if (a[0] == 'b' && b[0] == 'd') expected = gamma;
        if (a[0] == 'd' && b[0] == 'b') expected = -gamma;
      }
      const double err = std::abs(v.value - expected);
      r.max_residual = std::max(r.max_residual, err);
      converged = converged && v.converged;
      if (expected != 0.0 || err >= tolerance) {
        r.details.push_back({{"x", a}, {"y", b}, {"value", v.value}, {"expected", expected}});
      }
      ++r.n_cases;
    }
  }
  r.details.push_back({{"all_converged", converged}});
  r.pass = r.max_residual < tolerance && converged;
  return r;
}

CheckResult multiplier_check(const RepDescriptor& rep, std::size_t n_pairs, std::uint64_t seed, double scale,
                             double spread_tol, double modulus_tol, Sampler sampler) {
  CheckResult r = make_check("multiplier." + rep.name(), rep.name(), seed, spread_tol);
  Sampling s(seed, sampler, scale);
  const int dim = rep.dim();
  double spread = 0.0;
  double modulus = 0.0;
  double matched = 0.0;
  std::size_t skipped = 0;
  std::string matched_name;
  for (std::size_t i = 0; i < n_pairs; ++i) {
    const GalileiElement a = s.element(dim), b = s.element(dim);
    const PolyGaussianState f = s.state(dim, 1 + static_cast<int>(i % 2));
    const MultiplierReport m = extract_multiplier(rep, a, b, TimeLabel{0.0}, f, s.next_seed());
    spread = std::max(spread, m.constancy_spread);
    modulus = std::max(modulus, m.modulus_error);
    skipped += m.skipped;
    if (m.matched_exponent) {
      matched = std::max(matched, m.matched_exponent->residual);
      matched_name = m.matched_exponent->name;
    }
  }
  r.n_cases = n_pairs;
  r.max_residual = std::max({spread, modulus, matched});
  r.details.push_back({{"constancy_spread", spread},
                       {"modulus_error", modulus},
                       {"modulus_tolerance", modulus_tol},
                       {"matched_exponent", matched_name},
                       {"matched_residual", matched},
                       {"skipped_points", skipped}});
  r.pass = spread < spread_tol && modulus < modulus_tol && matched < spread_tol;
  return r;
}

CheckResult heisenberg_check(const RepDescriptor& rep, const std::vector<double>& t_samples, std::uint64_t seed,
                             double tolerance) {
  CheckResult r = make_check("heisenberg." + rep.name(), rep.name(), seed, tolerance);
  const HeisenbergFit fit = heisenberg_fit(rep, {}, t_samples, seed);
  r.n_cases = fit.generators.size();
  r.details.push_back(fit);
  if (rep.momentum_space()) {
    bool static_ok = true;
    for (const GeneratorFit& g : fit.generators) {
      if (g.name[0] != 'N' && !g.time_independent) static_ok = false;
    }
    r.max_residual = fit.uniform_residual;
    r.pass = fit.uniform && std::abs(fit.K - kI) < tolerance && fit.uniform_residual < tolerance && static_ok;
  } else {
    r.max_residual = fit.uniform_residual;
    r.pass = fit.uniform && fit.uniform_residual < tolerance;
  }
  return r;
}

SuiteReport run_suite(const SuiteConfig& config) {
  config.validate();
  SuiteReport report;
  report.seed = config.seed;
  report.timestamp = utc_timestamp();
  Context ctx{config, report.checks};

  group_checks(ctx);
  algebra_checks(ctx);
  cocycle_checks(ctx);
  guarded(ctx, make_check("infexp.xi0.d3", "-", 0, config.tolerance("infexp")), [&](CheckResult& r) {
    r = infexp_check("xi0", 3, config.tau_sequence, config.tolerance("infexp"), 1.0);
  });
  unitarity_checks(ctx);
  time_zero_checks(ctx);
  multiplier_checks(ctx);
  time_multiplier_checks(ctx);
  heisenberg_checks(ctx);
  initial_condition_checks(ctx);
  generator_action_checks(ctx);

  std::stable_sort(report.checks.begin(), report.checks.end(),
                   [](const CheckResult& a, const CheckResult& b) { return a.check < b.check; });
  report.pass = std::none_of(report.checks.begin(), report.checks.end(),
                             [](const CheckResult& c) { return c.status == CheckStatus::fail; });
  return report;
}

}  // namespace galiray
