#include "galiray/hilbert.hpp"

#include <cmath>
#include <numbers>

#include "galiray/errors.hpp"

namespace galiray {

namespace {

using MultiIndex = PolyDiffOperator::MultiIndex;

bool same_gaussian(const GaussianTerm& a, const GaussianTerm& b) {
  return a.alpha == b.alpha && a.beta == b.beta && a.Gamma == b.Gamma;
}

void require_negative_definite(const CMatrix& Gamma, const char* where) {
  const Eigen::MatrixXd re = 0.5 * (Gamma.real() + Gamma.real().transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(re);
  if (es.eigenvalues().maxCoeff() >= 0.0) {
    throw NotNormalizable(std::string(where) + ": Re(Gamma) is not negative definite");
  }
}

// Exponent derivative d/dp_k (alpha + beta.p + p^T Gamma p) as a polynomial.
Polynomial exponent_gradient(const GaussianTerm& t, int k) {
  Polynomial g = Polynomial::constant(t.beta(k));
  for (int j = 0; j < t.beta.size(); ++j) g += (2.0 * t.Gamma(k, j)) * Polynomial::variable(j);
  return g;
}

// Polynomial factor of d^alpha (poly e^Q), memoized per term.
class TermDerivatives {
 public:
  explicit TermDerivatives(const GaussianTerm& term) : term_(term) {
    cache_.emplace(MultiIndex{}, term.poly);
    for (int k = 0; k < term.beta.size(); ++k) grad_.push_back(exponent_gradient(term, k));
  }

  const Polynomial& get(const MultiIndex& alpha) {
    auto it = cache_.find(alpha);
    if (it != cache_.end()) return it->second;
    std::size_t k = 0;
    while (alpha[k] == 0) ++k;
    MultiIndex lower = alpha;
    lower[k] = static_cast<std::uint8_t>(alpha[k] - 1);
    const Polynomial base = get(lower);
    Polynomial d = base.derivative(static_cast<int>(k)) + base * grad_[k];
    return cache_.emplace(alpha, std::move(d)).first->second;
  }

 private:
  const GaussianTerm& term_;
  std::vector<Polynomial> grad_;
  std::map<MultiIndex, Polynomial> cache_;
};

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Moments E[y^m] of the complex Gaussian weight exp(-y^T M y), normalized to
// E[1] = 1, with covariance Sigma = M^{-1} / 2 (Wick recursion).
class GaussianMoments {
 public:
  explicit GaussianMoments(CMatrix sigma) : sigma_(std::move(sigma)) {}

  Complex get(const MultiIndex& m) {
    const int total = int{m[0]} + int{m[1]} + int{m[2]};
    if (total == 0) return 1.0;
    if (total % 2 == 1) return 0.0;
    auto it = cache_.find(m);
    if (it != cache_.end()) return it->second;
    std::size_t k = 0;
    while (m[k] == 0) ++k;
    MultiIndex rest = m;
    rest[k] = static_cast<std::uint8_t>(m[k] - 1);
    Complex sum = 0.0;
    for (std::size_t j = 0; j < static_cast<std::size_t>(sigma_.rows()); ++j) {
      if (rest[j] == 0) continue;
      MultiIndex next = rest;
      const double count = rest[j];
      next[j] = static_cast<std::uint8_t>(rest[j] - 1);
      sum += sigma_(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j)) * count * get(next);
    }
    cache_.emplace(m, sum);
    return sum;
  }

 private:
  CMatrix sigma_;
  std::map<MultiIndex, Complex> cache_;
};

Complex term_overlap(const GaussianTerm& f, const GaussianTerm& g, int dim) {
  const CMatrix M = -(f.Gamma.conjugate() + g.Gamma);
  const CVector b = f.beta.conjugate() + g.beta;
  const Complex c0 = std::conj(f.alpha) + g.alpha;

  const Eigen::MatrixXd reM = 0.5 * (M.real() + M.real().transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> res(reM);
  if (res.eigenvalues().minCoeff() <= 0.0) {
    throw NotNormalizable("inner_product: combined Gaussian is not integrable");
  }

  // Branch of sqrt(det M) continuous from the real positive-definite case:
  // the eigenvalues of M all have positive real part, take principal roots.
  Eigen::ComplexEigenSolver<CMatrix> ces(M);
  Complex sqrt_det = 1.0;
  for (int k = 0; k < dim; ++k) sqrt_det *= std::sqrt(ces.eigenvalues()(k));

  const CMatrix Minv = M.inverse();
  const CVector mu = 0.5 * Minv * b;
  const Complex exponent = c0 + 0.5 * b.cwiseProduct(mu).sum();

  const Polynomial q = f.poly.conj() * g.poly;
  const Polynomial shifted = q.substitute_affine(CMatrix::Identity(dim, dim), mu);
  GaussianMoments moments(0.5 * Minv);
  Complex poly_part = 0.0;
  for (const auto& [e, coeff] : shifted.terms()) {
    poly_part += coeff * moments.get(MultiIndex{e[0], e[1], e[2]});
  }
  const double z0 = std::pow(std::numbers::pi, 0.5 * dim);
  return std::exp(exponent) * (z0 / sqrt_det) * poly_part;
}

}  // namespace

// ---------------------------------------------------------------------------
// PolyGaussianState

PolyGaussianState::PolyGaussianState(int dim, int max_degree) : dim_(dim), max_degree_(max_degree) {
  require_dim(dim);
  if (max_degree < 0) throw InvalidArgument("PolyGaussianState: negative degree bound");
}

PolyGaussianState PolyGaussianState::gaussian(const Vector& center, double width, const Vector& momentum) {
  const int n = static_cast<int>(center.size());
  if (momentum.size() != n) throw DimensionError("gaussian: center and momentum sizes differ");
  if (!(width > 0.0)) throw InvalidArgument("gaussian: width must be positive");
  const double w2 = width * width;
  GaussianTerm t;
  t.poly = Polynomial::constant(1.0);
  t.alpha = -center.squaredNorm() / (2.0 * w2);
  t.beta = center.cast<Complex>() / w2 + Complex(0.0, 1.0) * momentum.cast<Complex>();
  t.Gamma = CMatrix::Identity(n, n) * (-1.0 / (2.0 * w2));
  PolyGaussianState s(n);
  s.add_term(std::move(t));
  return s;
}

PolyGaussianState PolyGaussianState::gaussian(const Vector& center, double width) {
  return gaussian(center, width, Vector::Zero(center.size()));
}

int PolyGaussianState::degree() const {
  int d = -1;
  for (const auto& t : terms_) d = std::max(d, t.poly.degree());
  return d;
}

void PolyGaussianState::add_term(GaussianTerm term) {
  if (term.beta.size() != dim_ || term.Gamma.rows() != dim_ || term.Gamma.cols() != dim_) {
    throw DimensionError("PolyGaussianState: term has wrong dimension");
  }
  if (term.poly.spatial_extent() > dim_) throw DimensionError("PolyGaussianState: polynomial uses extra variables");
  if (term.poly.time_degree() > 0) throw InvalidArgument("PolyGaussianState: polynomial depends on t");
  if (term.poly.degree() > max_degree_) {
    throw DegreeOverflow("PolyGaussianState: polynomial degree " + std::to_string(term.poly.degree()) +
                         " exceeds bound " + std::to_string(max_degree_));
  }
  term.Gamma = (0.5 * (term.Gamma + term.Gamma.transpose())).eval();
  require_negative_definite(term.Gamma, "PolyGaussianState");
  for (auto& existing : terms_) {
    if (same_gaussian(existing, term)) {
      existing.poly += term.poly;
      return;
    }
  }
  terms_.push_back(std::move(term));
}

Complex PolyGaussianState::operator()(const Vector& p) const {
  if (p.size() != dim_) throw DimensionError("PolyGaussianState: evaluation point has wrong size");
  const CVector pc = p.cast<Complex>();
  Complex sum = 0.0;
  for (const auto& t : terms_) {
    const Complex q = t.alpha + (t.beta.transpose() * pc)(0) + (pc.transpose() * t.Gamma * pc)(0);
    sum += t.poly.evaluate(p) * std::exp(q);
  }
  return sum;
}

Vector PolyGaussianState::center() const {
  if (terms_.empty()) return Vector::Zero(dim_);
  const auto& t = terms_.front();
  const Eigen::MatrixXd re = t.Gamma.real();
  return -0.5 * re.ldlt().solve(Vector(t.beta.real()));
}

PolyGaussianState& PolyGaussianState::operator+=(const PolyGaussianState& o) {
  require_same_dim(dim_, o.dim_, "PolyGaussianState +");
  max_degree_ = std::max(max_degree_, o.max_degree_);
  for (const auto& t : o.terms_) add_term(t);
  return *this;
}

PolyGaussianState& PolyGaussianState::operator*=(Complex c) {
  for (auto& t : terms_) t.poly *= c;
  return *this;
}

PolyGaussianState operator+(PolyGaussianState a, const PolyGaussianState& b) { return a += b; }
PolyGaussianState operator-(PolyGaussianState a, const PolyGaussianState& b) {
  PolyGaussianState nb = b;
  nb *= -1.0;
  return a += nb;
}
PolyGaussianState operator*(Complex c, PolyGaussianState a) { return a *= c; }

Complex evaluate(const PolyGaussianState& state, const Vector& p) { return state(p); }

PolyGaussianState substitute(const PolyGaussianState& state, const Matrix& W, const Vector& shift) {
  const int n = state.dim();
  if (W.rows() != n || W.cols() != n || shift.size() != n) throw DimensionError("substitute: size mismatch");
  // q = A p + c with A = W^T, c = W^T shift.
  const CMatrix A = W.transpose().cast<Complex>();
  const CVector c = (W.transpose() * shift).cast<Complex>();
  PolyGaussianState out(n, state.max_degree());
  for (const auto& t : state.terms()) {
    GaussianTerm s;
    s.poly = t.poly.substitute_affine(A, c);
    s.alpha = t.alpha + t.beta.cwiseProduct(c).sum() + (c.transpose() * t.Gamma * c)(0);
    s.beta = A.transpose() * t.beta + 2.0 * A.transpose() * t.Gamma * c;
    s.Gamma = A.transpose() * t.Gamma * A;
    out.add_term(std::move(s));
  }
  return out;
}

PolyGaussianState multiply_phase(const PolyGaussianState& state, const CMatrix& quad, const CVector& lin,
                                 Complex constant) {
  const int n = state.dim();
  if (quad.rows() != n || quad.cols() != n || lin.size() != n) throw DimensionError("multiply_phase: size mismatch");
  const CMatrix sym = 0.5 * (quad + quad.transpose());
  PolyGaussianState out(n, state.max_degree());
  for (const auto& t : state.terms()) {
    GaussianTerm s = t;
    s.alpha += constant;
    s.beta += lin;
    s.Gamma += sym;
    require_negative_definite(s.Gamma, "multiply_phase");
    out.add_term(std::move(s));
  }
  return out;
}

// ---------------------------------------------------------------------------
// PolyDiffOperator

PolyDiffOperator::PolyDiffOperator(int dim) : dim_(dim) { require_dim(dim); }

PolyDiffOperator PolyDiffOperator::identity(int dim) {
  return multiplication(dim, Polynomial::constant(1.0));
}

PolyDiffOperator PolyDiffOperator::multiplication(int dim, Polynomial coefficient) {
  PolyDiffOperator op(dim);
  op.add(MultiIndex{}, coefficient);
  return op;
}

PolyDiffOperator PolyDiffOperator::partial(int dim, int k) {
  if (k < 0 || k >= dim) throw DimensionError("partial: index out of range");
  PolyDiffOperator op(dim);
  MultiIndex a{};
  a[static_cast<std::size_t>(k)] = 1;
  op.add(a, Polynomial::constant(1.0));
  return op;
}

void PolyDiffOperator::add(const MultiIndex& alpha, const Polynomial& coefficient) {
  for (int k = dim_; k < 3; ++k) {
    if (alpha[static_cast<std::size_t>(k)] != 0) throw DimensionError("PolyDiffOperator: derivative beyond dim");
  }
  if (coefficient.spatial_extent() > dim_) throw DimensionError("PolyDiffOperator: coefficient uses extra variables");
  if (coefficient.is_zero()) return;
  auto [it, inserted] = terms_.emplace(alpha, coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

bool PolyDiffOperator::depends_on_time() const {
  for (const auto& [a, c] : terms_)
    if (c.time_degree() > 0) return true;
  return false;
}

int PolyDiffOperator::max_order() const {
  int m = -1;
  for (const auto& [a, c] : terms_) m = std::max(m, int{a[0]} + int{a[1]} + int{a[2]});
  return m;
}

double PolyDiffOperator::max_abs_coefficient() const {
  double m = 0.0;
  for (const auto& [a, c] : terms_) m = std::max(m, c.max_abs_coefficient());
  return m;
}

PolyDiffOperator PolyDiffOperator::time_derivative() const {
  PolyDiffOperator out(dim_);
  for (const auto& [a, c] : terms_) out.add(a, c.derivative(kTimeVar));
  return out;
}

PolyDiffOperator PolyDiffOperator::at_time(double t) const {
  PolyDiffOperator out(dim_);
  for (const auto& [a, c] : terms_) out.add(a, c.at_time(t));
  return out;
}

PolyDiffOperator& PolyDiffOperator::operator+=(const PolyDiffOperator& o) {
  require_same_dim(dim_, o.dim_, "PolyDiffOperator +");
  for (const auto& [a, c] : o.terms_) add(a, c);
  return *this;
}

PolyDiffOperator& PolyDiffOperator::operator-=(const PolyDiffOperator& o) {
  require_same_dim(dim_, o.dim_, "PolyDiffOperator -");
  for (const auto& [a, c] : o.terms_) add(a, -c);
  return *this;
}

PolyDiffOperator& PolyDiffOperator::operator*=(Complex c) {
  PolyDiffOperator out(dim_);
  for (const auto& [a, coeff] : terms_) out.add(a, c * coeff);
  *this = std::move(out);
  return *this;
}

PolyDiffOperator operator+(PolyDiffOperator a, const PolyDiffOperator& b) { return a += b; }
PolyDiffOperator operator-(PolyDiffOperator a, const PolyDiffOperator& b) { return a -= b; }
PolyDiffOperator operator*(Complex c, PolyDiffOperator a) { return a *= c; }

PolyDiffOperator operator*(const PolyDiffOperator& a, const PolyDiffOperator& b) {
  require_same_dim(a.dim(), b.dim(), "PolyDiffOperator *");
  PolyDiffOperator out(a.dim());
  for (const auto& [alpha, ca] : a.terms()) {
    for (const auto& [beta, cb] : b.terms()) {
      // (ca d^alpha)(cb d^beta) = sum_{g <= alpha} C(alpha, g) ca (d^g cb) d^{alpha - g + beta}
      for (int g0 = 0; g0 <= alpha[0]; ++g0)
        for (int g1 = 0; g1 <= alpha[1]; ++g1)
          for (int g2 = 0; g2 <= alpha[2]; ++g2) {
            Polynomial d = cb;
            for (int k = 0; k < g0; ++k) d = d.derivative(0);
            for (int k = 0; k < g1; ++k) d = d.derivative(1);
            for (int k = 0; k < g2; ++k) d = d.derivative(2);
            if (d.is_zero()) continue;
            const double weight = binomial(alpha[0], g0) * binomial(alpha[1], g1) * binomial(alpha[2], g2);
            MultiIndex order{static_cast<std::uint8_t>(alpha[0] - g0 + beta[0]),
                             static_cast<std::uint8_t>(alpha[1] - g1 + beta[1]),
                             static_cast<std::uint8_t>(alpha[2] - g2 + beta[2])};
            out.add(order, Complex(weight, 0.0) * (ca * d));
          }
    }
  }
  return out;
}

PolyDiffOperator operator_commutator(const PolyDiffOperator& a, const PolyDiffOperator& b) {
  return a * b - b * a;
}

PolyGaussianState apply_operator(const PolyDiffOperator& op, const PolyGaussianState& state) {
  require_same_dim(op.dim(), state.dim(), "apply_operator");
  if (op.depends_on_time()) {
    throw InvalidArgument("apply_operator: operator depends on t; call at_time(t) first");
  }
  PolyGaussianState out(state.dim(), state.max_degree());
  for (const auto& term : state.terms()) {
    TermDerivatives derivs(term);
    Polynomial poly;
    for (const auto& [alpha, coeff] : op.terms()) poly += coeff * derivs.get(alpha);
    if (poly.degree() > state.max_degree()) {
      throw DegreeOverflow("apply_operator: result degree " + std::to_string(poly.degree()) + " exceeds bound " +
                           std::to_string(state.max_degree()));
    }
    if (poly.is_zero()) continue;
    GaussianTerm t = term;
    t.poly = std::move(poly);
    out.add_term(std::move(t));
  }
  return out;
}

Complex inner_product(const PolyGaussianState& f, const PolyGaussianState& g) {
  require_same_dim(f.dim(), g.dim(), "inner_product");
  Complex sum = 0.0;
  for (const auto& tf : f.terms())
    for (const auto& tg : g.terms()) sum += term_overlap(tf, tg, f.dim());
  return sum;
}

PolyGaussianState normalized(const PolyGaussianState& state) {
  const double norm2 = inner_product(state, state).real();
  if (!(norm2 > 0.0)) throw InvalidArgument("normalized: zero state");
  return Complex(1.0 / std::sqrt(norm2), 0.0) * state;
}

PolyGaussianState random_state(std::mt19937_64& rng, int dim, int n_terms, int poly_degree) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  PolyGaussianState state(dim);
  for (int term = 0; term < n_terms; ++term) {
    GaussianTerm t;
    Eigen::MatrixXd B(dim, dim), S(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) {
        B(i, j) = 0.4 * u(rng);
        S(i, j) = 0.3 * u(rng);
      }
    const Eigen::MatrixXd re = -0.5 * (B * B.transpose() + 0.6 * Eigen::MatrixXd::Identity(dim, dim));
    const Eigen::MatrixXd im = 0.5 * (S + S.transpose());
    t.Gamma = re.cast<Complex>() + Complex(0.0, 1.0) * im.cast<Complex>();
    t.beta = CVector(dim);
    for (int i = 0; i < dim; ++i) t.beta(i) = Complex(0.4 * u(rng), u(rng));
    t.alpha = Complex(0.2 * u(rng), u(rng));
    t.poly = Polynomial::constant(1.0);
    // Random monomials up to poly_degree.
    for (int d = 1; d <= poly_degree; ++d) {
      for (int k = 0; k < dim; ++k) {
        Exponents e{};
        e[static_cast<std::size_t>(k)] = static_cast<std::uint8_t>(d);
        t.poly += Polynomial::monomial(e, Complex(0.3 * u(rng), 0.3 * u(rng)));
        if (dim > 1) {
          Exponents mixed{};
          mixed[static_cast<std::size_t>(k)] = static_cast<std::uint8_t>(d - 1);
          mixed[static_cast<std::size_t>((k + 1) % dim)] += 1;
          t.poly += Polynomial::monomial(mixed, Complex(0.3 * u(rng), 0.3 * u(rng)));
        }
      }
    }
    state.add_term(std::move(t));
  }
  return state;
}

std::vector<Vector> sample_ball(std::mt19937_64& rng, const Vector& center, double radius, std::size_t count) {
  const auto n = center.size();
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Vector> pts;
  pts.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    Vector dir(n);
    for (Eigen::Index k = 0; k < n; ++k) dir(k) = gauss(rng);
    const double norm = dir.norm();
    if (norm == 0.0) dir(0) = 1.0; else dir /= norm;
    const double rad = radius * std::pow(unit(rng), 1.0 / static_cast<double>(n));
    pts.push_back(center + rad * dir);
  }
  return pts;
}

double max_pointwise_difference(const PolyGaussianState& a, const PolyGaussianState& b,
                                const std::vector<Vector>& points) {
  double m = 0.0;
  for (const auto& p : points) m = std::max(m, std::abs(a(p) - b(p)));
  return m;
}

// ---------------------------------------------------------------------------
// JSON

namespace {

nlohmann::json complex_json(Complex c) { return nlohmann::json::array({c.real(), c.imag()}); }

Complex json_complex(const nlohmann::json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  return {j.at(0).get<double>(), j.at(1).get<double>()};
}

}  // namespace

void to_json(nlohmann::json& j, const PolyGaussianState& s) {
  nlohmann::json terms = nlohmann::json::array();
  const int n = s.dim();
  for (const auto& t : s.terms()) {
    nlohmann::json poly = nlohmann::json::array();
    for (const auto& [e, c] : t.poly.terms()) {
      std::vector<int> ex;
      for (int k = 0; k < n; ++k) ex.push_back(e[static_cast<std::size_t>(k)]);
      poly.push_back({{"e", ex}, {"c", complex_json(c)}});
    }
    nlohmann::json beta = nlohmann::json::array();
    for (int k = 0; k < n; ++k) beta.push_back(complex_json(t.beta(k)));
    nlohmann::json Gamma = nlohmann::json::array();
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) Gamma.push_back(complex_json(t.Gamma(i, k)));
    terms.push_back({{"poly", poly}, {"alpha", complex_json(t.alpha)}, {"beta", beta}, {"Gamma", Gamma}});
  }
  j = nlohmann::json{{"dim", n}, {"max_degree", s.max_degree()}, {"terms", terms}};
}

PolyGaussianState state_from_json(const nlohmann::json& j) {
  try {
    const int n = j.at("dim").get<int>();
    PolyGaussianState s(n, j.value("max_degree", kDefaultMaxDegree));
    for (const auto& tj : j.at("terms")) {
      GaussianTerm t;
      for (const auto& mj : tj.at("poly")) {
        const auto ex = mj.at("e").get<std::vector<int>>();
        if (static_cast<int>(ex.size()) != n) throw ConfigError("state JSON: exponent arity differs from dim");
        Exponents e{};
        for (int k = 0; k < n; ++k) e[static_cast<std::size_t>(k)] = static_cast<std::uint8_t>(ex[static_cast<std::size_t>(k)]);
        t.poly += Polynomial::monomial(e, json_complex(mj.at("c")));
      }
      t.alpha = json_complex(tj.at("alpha"));
      t.beta = CVector(n);
      t.Gamma = CMatrix(n, n);
      for (int k = 0; k < n; ++k) t.beta(k) = json_complex(tj.at("beta").at(static_cast<std::size_t>(k)));
      for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) t.Gamma(i, k) = json_complex(tj.at("Gamma").at(static_cast<std::size_t>(i * n + k)));
      s.add_term(std::move(t));
    }
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("state JSON: ") + e.what());
  }
}

}  // namespace galiray
