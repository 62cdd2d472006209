#pragma once

// The Galilei Lie algebra over the basis {a_ij, b_i, d_i, f}:
//   a_ij  rotation generators (i < j), matrix E_ij - E_ji
//   b_i   space translations
//   d_i   pure Galilei boosts
//   f     time translation
// Brackets:
//   [a_ij, a_kl] = d_jk a_il - d_ik a_jl + d_il a_jk - d_jl a_ik
//   [a_ij, b_k]  = d_jk b_i - d_ik b_j,   [a_ij, d_k] = d_jk d_i - d_ik d_j
//   [d_k, f]     = b_k,                   all other basis brackets vanish.

#include <string>
#include <vector>

#include "galiray/group.hpp"

namespace galiray {

class AlgebraElement {
 public:
  explicit AlgebraElement(int dim = 3);
  AlgebraElement(Matrix rot, Vector trans, Vector boost, double time);

  static AlgebraElement zero(int dim) { return AlgebraElement(dim); }

  /// Parses "a12", "b1", "d3", "f" (and "a21" = -a12).
  static AlgebraElement basis(int dim, const std::string& name);

  int dim() const { return dim_; }
  const Matrix& rot() const { return rot_; }
  const Vector& trans() const { return trans_; }
  const Vector& boost() const { return boost_; }
  double time() const { return time_; }

  AlgebraElement& operator+=(const AlgebraElement& o);
  AlgebraElement& operator-=(const AlgebraElement& o);
  AlgebraElement& operator*=(double c);

  /// Coefficients in the ordered basis returned by basis_names(dim).
  Vector coordinates() const;
  static AlgebraElement from_coordinates(int dim, const Vector& c);

  double max_abs() const;

 private:
  int dim_;
  Matrix rot_;
  Vector trans_;
  Vector boost_;
  double time_ = 0.0;
};

AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b);
AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b);
AlgebraElement operator*(double c, AlgebraElement a);

/// Ordered basis: a_ij (i < j, lexicographic), b_1..b_n, d_1..d_n, f.
std::vector<std::string> basis_names(int dim);
int algebra_dimension(int dim);

/// Structure constants c[A][B] = coordinates of [e_A, e_B], built from the
/// Kronecker-delta bracket table above.
class StructureConstants {
 public:
  explicit StructureConstants(int dim);
  int dim() const { return dim_; }
  int size() const { return size_; }
  /// Coordinates of [e_a, e_b].
  const Vector& bracket(int a, int b) const { return table_[static_cast<std::size_t>(a * size_ + b)]; }

 private:
  int dim_;
  int size_;
  std::vector<Vector> table_;
};

/// Bilinear expansion over the structure constants.
AlgebraElement commutator(const AlgebraElement& X, const AlgebraElement& Y);

/// Matrix commutator of the (dim+2)x(dim+2) embeddings, decoded back.
AlgebraElement matrix_commutator(const AlgebraElement& X, const AlgebraElement& Y);

/// max-norm of [X,[Y,Z]] + [Y,[Z,X]] + [Z,[X,Y]].
double jacobi_residual(const AlgebraElement& X, const AlgebraElement& Y, const AlgebraElement& Z);

/// Embedding [[rot, boost, trans], [0, 0, time], [0, 0, 0]]; the tangent of
/// embed_matrix at the identity.
Matrix embed_algebra(const AlgebraElement& X);
AlgebraElement decode_algebra(const Matrix& m);

/// Scaled-and-squared Taylor series for a small dense matrix.
Matrix expm(const Matrix& A);

/// exp(X) as a group element. In dim 2 the lifted angle is the exact
/// coefficient (exp(c a_12) rotates by -c).
GalileiElement exponential(const AlgebraElement& X);

/// Random element with coefficients uniform in [-scale, scale].
AlgebraElement random_algebra_element(std::mt19937_64& rng, int dim, double scale);

void to_json(nlohmann::json& j, const AlgebraElement& X);
void from_json(const nlohmann::json& j, AlgebraElement& X);

}  // namespace galiray
