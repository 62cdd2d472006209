#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <map>

#include <Eigen/Dense>

namespace galiray {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Variables 0..2 are spatial coordinates, variable 3 is the external time t.
inline constexpr int kSpatialVars = 3;
inline constexpr int kTimeVar = 3;
using Exponents = std::array<std::uint8_t, 4>;

/// Sparse complex polynomial in (p_1, p_2, p_3, t).
class Polynomial {
 public:
  Polynomial() = default;

  static Polynomial constant(Complex c);
  /// The coordinate p_{var+1}, or t for var == kTimeVar.
  static Polynomial variable(int var);
  static Polynomial monomial(const Exponents& e, Complex c);

  const std::map<Exponents, Complex>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Total degree in the spatial variables (-1 for the zero polynomial).
  int degree() const;
  int time_degree() const;
  /// Highest spatial variable index that appears, plus one.
  int spatial_extent() const;

  Complex coefficient(const Exponents& e) const;
  double max_abs_coefficient() const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  Polynomial& operator*=(Complex c);

  Polynomial derivative(int var) const;
  Polynomial conj() const;

  /// Replaces t by a number.
  Polynomial at_time(double t) const;

  /// Substitutes p -> A p + c in the first A.rows() spatial variables.
  Polynomial substitute_affine(const CMatrix& A, const CVector& c) const;

  Complex evaluate(const Eigen::VectorXd& p, double t = 0.0) const;

 private:
  void add_term(const Exponents& e, Complex c);
  std::map<Exponents, Complex> terms_;
};

Polynomial operator+(Polynomial a, const Polynomial& b);
Polynomial operator-(Polynomial a, const Polynomial& b);
Polynomial operator*(const Polynomial& a, const Polynomial& b);
Polynomial operator*(Complex c, Polynomial a);
Polynomial operator-(Polynomial a);

}  // namespace galiray
