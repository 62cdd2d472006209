#pragma once

// Exact states and operators.
//
// A PolyGaussianState is a finite sum of terms
//     poly(p) * exp(alpha + <beta, p> + p^T Gamma p)
// with complex coefficients and Re(Gamma) negative definite. Representation
// phases are at most quadratic in p and the generators are differential
// operators with polynomial coefficients, so every operation below maps the
// family into itself without discretization.

#include <map>
#include <random>
#include <vector>

#include <nlohmann/json.hpp>

#include "galiray/group.hpp"
#include "galiray/polynomial.hpp"

namespace galiray {

inline constexpr int kDefaultMaxDegree = 8;

struct GaussianTerm {
  Polynomial poly;
  Complex alpha{0.0, 0.0};
  CVector beta;
  CMatrix Gamma;
};

class PolyGaussianState {
 public:
  explicit PolyGaussianState(int dim, int max_degree = kDefaultMaxDegree);

  /// exp(-|p - center|^2 / (2 width^2) + i <momentum, p>).
  static PolyGaussianState gaussian(const Vector& center, double width, const Vector& momentum);
  static PolyGaussianState gaussian(const Vector& center, double width);

  int dim() const { return dim_; }
  int max_degree() const { return max_degree_; }
  const std::vector<GaussianTerm>& terms() const { return terms_; }
  int degree() const;

  /// Validates the term; merges it into an existing term with identical
  /// Gaussian parameters.
  void add_term(GaussianTerm term);

  Complex operator()(const Vector& p) const;

  /// Maximum of |exp(...)| for the first term; used to place sample points.
  Vector center() const;

  PolyGaussianState& operator+=(const PolyGaussianState& o);
  PolyGaussianState& operator*=(Complex c);

 private:
  int dim_;
  int max_degree_;
  std::vector<GaussianTerm> terms_;
};

PolyGaussianState operator+(PolyGaussianState a, const PolyGaussianState& b);
PolyGaussianState operator-(PolyGaussianState a, const PolyGaussianState& b);
PolyGaussianState operator*(Complex c, PolyGaussianState a);

Complex evaluate(const PolyGaussianState& state, const Vector& p);

/// result(p) = state(W^{-1} (p + shift)) for orthogonal W.
PolyGaussianState substitute(const PolyGaussianState& state, const Matrix& W, const Vector& shift);

/// Multiplies by exp(constant + <lin, p> + p^T quad p). Throws NotNormalizable
/// if a term loses negative-definiteness.
PolyGaussianState multiply_phase(const PolyGaussianState& state, const CMatrix& quad, const CVector& lin,
                                 Complex constant);

/// Differential operator sum_alpha c_alpha(p, t) d^alpha, derivatives to the right.
class PolyDiffOperator {
 public:
  using MultiIndex = std::array<std::uint8_t, 3>;

  explicit PolyDiffOperator(int dim);

  static PolyDiffOperator identity(int dim);
  static PolyDiffOperator multiplication(int dim, Polynomial coefficient);
  /// d / dp_{k+1}
  static PolyDiffOperator partial(int dim, int k);

  int dim() const { return dim_; }
  const std::map<MultiIndex, Polynomial>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool depends_on_time() const;
  int max_order() const;
  double max_abs_coefficient() const;

  /// Exact d/dt of the coefficients.
  PolyDiffOperator time_derivative() const;
  PolyDiffOperator at_time(double t) const;

  void add(const MultiIndex& alpha, const Polynomial& coefficient);

  PolyDiffOperator& operator+=(const PolyDiffOperator& o);
  PolyDiffOperator& operator-=(const PolyDiffOperator& o);
  PolyDiffOperator& operator*=(Complex c);

 private:
  int dim_;
  std::map<MultiIndex, Polynomial> terms_;
};

PolyDiffOperator operator+(PolyDiffOperator a, const PolyDiffOperator& b);
PolyDiffOperator operator-(PolyDiffOperator a, const PolyDiffOperator& b);
PolyDiffOperator operator*(Complex c, PolyDiffOperator a);
/// Operator product (A B) f = A (B f), normalized by the Leibniz rule.
PolyDiffOperator operator*(const PolyDiffOperator& a, const PolyDiffOperator& b);

PolyDiffOperator operator_commutator(const PolyDiffOperator& a, const PolyDiffOperator& b);

/// Exact application. The operator must not depend on t (use at_time first).
/// Throws DegreeOverflow when the result exceeds the state's degree bound.
PolyGaussianState apply_operator(const PolyDiffOperator& op, const PolyGaussianState& state);

/// Closed-form integral of conj(f) g over R^dim.
Complex inner_product(const PolyGaussianState& f, const PolyGaussianState& g);

PolyGaussianState normalized(const PolyGaussianState& state);

/// Random normalizable state: `n_terms` terms with polynomial factors up to
/// `poly_degree`, moderate widths and complex Gaussian parameters.
PolyGaussianState random_state(std::mt19937_64& rng, int dim, int n_terms = 1, int poly_degree = 2);

/// Uniform points in the ball of radius `radius` around `center`.
std::vector<Vector> sample_ball(std::mt19937_64& rng, const Vector& center, double radius, std::size_t count);

double max_pointwise_difference(const PolyGaussianState& a, const PolyGaussianState& b,
                                const std::vector<Vector>& points);

void to_json(nlohmann::json& j, const PolyGaussianState& s);
PolyGaussianState state_from_json(const nlohmann::json& j);

}  // namespace galiray
