#include "galiray/polynomial.hpp"

#include <cmath>
#include <vector>

#include "galiray/errors.hpp"

namespace galiray {

void Polynomial::add_term(const Exponents& e, Complex c) {
  if (c == Complex(0.0, 0.0)) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == Complex(0.0, 0.0)) terms_.erase(it);
  }
}

Polynomial Polynomial::constant(Complex c) {
  Polynomial p;
  p.add_term(Exponents{}, c);
  return p;
}

Polynomial Polynomial::variable(int var) {
  if (var < 0 || var > kTimeVar) throw InvalidArgument("Polynomial::variable: index out of range");
  Exponents e{};
  e[static_cast<std::size_t>(var)] = 1;
  return monomial(e, 1.0);
}

Polynomial Polynomial::monomial(const Exponents& e, Complex c) {
  Polynomial p;
  p.add_term(e, c);
  return p;
}

int Polynomial::degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, int{e[0]} + int{e[1]} + int{e[2]});
  return d;
}

int Polynomial::time_degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, int{e[kTimeVar]});
  return d;
}

int Polynomial::spatial_extent() const {
  int n = 0;
  for (const auto& [e, c] : terms_)
    for (int k = 0; k < kSpatialVars; ++k)
      if (e[static_cast<std::size_t>(k)] > 0) n = std::max(n, k + 1);
  return n;
}

Complex Polynomial::coefficient(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Complex(0.0, 0.0) : it->second;
}

double Polynomial::max_abs_coefficient() const {
  double m = 0.0;
  for (const auto& [e, c] : terms_) m = std::max(m, std::abs(c));
  return m;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) {
  Polynomial out;
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : o.terms_) {
      Exponents e{};
      for (std::size_t k = 0; k < e.size(); ++k) {
        const int sum = int{ea[k]} + int{eb[k]};
        if (sum > 255) throw DegreeOverflow("Polynomial: exponent exceeds 255");
        e[k] = static_cast<std::uint8_t>(sum);
      }
      out.add_term(e, ca * cb);
    }
  }
  terms_ = std::move(out.terms_);
  return *this;
}

Polynomial& Polynomial::operator*=(Complex c) {
  if (c == Complex(0.0, 0.0)) {
    terms_.clear();
    return *this;
  }
  for (auto it = terms_.begin(); it != terms_.end();) {
    it->second *= c;
    if (it->second == Complex(0.0, 0.0))
      it = terms_.erase(it);
    else
      ++it;
  }
  return *this;
}

Polynomial Polynomial::derivative(int var) const {
  Polynomial out;
  const auto k = static_cast<std::size_t>(var);
  for (const auto& [e, c] : terms_) {
    if (e[k] == 0) continue;
    Exponents d = e;
    d[k] = static_cast<std::uint8_t>(e[k] - 1);
    out.add_term(d, c * static_cast<double>(e[k]));
  }
  return out;
}

Polynomial Polynomial::conj() const {
  Polynomial out;
  for (const auto& [e, c] : terms_) out.add_term(e, std::conj(c));
  return out;
}

Polynomial Polynomial::at_time(double t) const {
  Polynomial out;
  for (const auto& [e, c] : terms_) {
    Exponents d = e;
    d[kTimeVar] = 0;
    out.add_term(d, c * std::pow(t, static_cast<int>(e[kTimeVar])));
  }
  return out;
}

Polynomial Polynomial::substitute_affine(const CMatrix& A, const CVector& c) const {
  const int n = static_cast<int>(A.rows());
  if (A.cols() != n || c.size() != n || n > kSpatialVars) {
    throw DimensionError("substitute_affine: bad map size");
  }
  if (spatial_extent() > n) throw DimensionError("substitute_affine: polynomial uses more variables than the map");

  // images[k] = (A p + c)_k as a polynomial; powers cached lazily.
  std::vector<std::vector<Polynomial>> powers(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    Polynomial lin = Polynomial::constant(c(k));
    for (int j = 0; j < n; ++j) lin += A(k, j) * Polynomial::variable(j);
    powers[static_cast<std::size_t>(k)] = {Polynomial::constant(1.0), lin};
  }
  auto power = [&](int k, int e) -> const Polynomial& {
    auto& cache = powers[static_cast<std::size_t>(k)];
    while (static_cast<int>(cache.size()) <= e) cache.push_back(cache.back() * cache[1]);
    return cache[static_cast<std::size_t>(e)];
  };

  Polynomial out;
  for (const auto& [e, coeff] : terms_) {
    Exponents te{};
    te[kTimeVar] = e[kTimeVar];
    Polynomial term = Polynomial::monomial(te, coeff);
    for (int k = 0; k < n; ++k) {
      const int ek = e[static_cast<std::size_t>(k)];
      if (ek > 0) term *= power(k, ek);
    }
    out += term;
  }
  return out;
}

Complex Polynomial::evaluate(const Eigen::VectorXd& p, double t) const {
  Complex sum(0.0, 0.0);
  for (const auto& [e, c] : terms_) {
    double m = 1.0;
    for (int k = 0; k < kSpatialVars; ++k) {
      const int ek = e[static_cast<std::size_t>(k)];
      if (ek == 0) continue;
      if (k >= p.size()) throw DimensionError("Polynomial::evaluate: point has too few coordinates");
      m *= std::pow(p(k), ek);
    }
    if (e[kTimeVar] > 0) m *= std::pow(t, static_cast<int>(e[kTimeVar]));
    sum += c * m;
  }
  return sum;
}

Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial out = a;
  out *= b;
  return out;
}
Polynomial operator*(Complex c, Polynomial a) { return a *= c; }
Polynomial operator-(Polynomial a) { return a *= Complex(-1.0, 0.0); }

}  // namespace galiray
