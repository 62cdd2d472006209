#pragma once

// Reference implementations used only by the tests. They are written in a
// different style from the library (plain loops, closures) so that a shared
// mistake is unlikely.

#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <vector>

#include "galiray/group.hpp"
#include "galiray/hilbert.hpp"
#include "galiray/representations.hpp"

namespace oracle {

using galiray::Complex;
using galiray::GalileiElement;
using galiray::Matrix;
using galiray::Vector;

inline double dot(const Vector& a, const Vector& b) {
  double s = 0.0;
  for (Eigen::Index k = 0; k < a.size(); ++k) s += a(k) * b(k);
  return s;
}

inline Vector matvec(const Matrix& W, const Vector& x) {
  Vector y = Vector::Zero(W.rows());
  for (Eigen::Index i = 0; i < W.rows(); ++i)
    for (Eigen::Index j = 0; j < W.cols(); ++j) y(i) += W(i, j) * x(j);
  return y;
}

inline Vector transpose_matvec(const Matrix& W, const Vector& x) {
  Vector y = Vector::Zero(W.cols());
  for (Eigen::Index i = 0; i < W.rows(); ++i)
    for (Eigen::Index j = 0; j < W.cols(); ++j) y(j) += W(i, j) * x(i);
  return y;
}

struct Plain {
  Matrix W;
  double eta;
  Vector v;
  Vector u;
};

inline Plain plain(const GalileiElement& g) { return {g.W(), g.eta(), g.v(), g.u()}; }

/// rs = (W_r W_s, eta_r + eta_s, W_r v_s + v_r, W_r u_s + u_r + eta_s v_r)
inline Plain multiply(const Plain& r, const Plain& s) {
  const int n = static_cast<int>(r.v.size());
  Plain out{Matrix::Zero(n, n), r.eta + s.eta, matvec(r.W, s.v), matvec(r.W, s.u)};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) out.W(i, j) += r.W(i, k) * s.W(k, j);
  for (int i = 0; i < n; ++i) {
    out.v(i) += r.v(i);
    out.u(i) += r.u(i) + s.eta * r.v(i);
  }
  return out;
}

inline double xi0(const GalileiElement& r, const GalileiElement& s, double gamma) {
  const Vector Wvs = matvec(r.W(), s.v());
  const Vector Wus = matvec(r.W(), s.u());
  return 0.5 * gamma * (dot(r.u(), Wvs) - dot(r.v(), Wus) + s.eta() * dot(r.v(), Wvs));
}

inline double wedge(const Vector& a, const Vector& b) { return a(0) * b(1) - a(1) * b(0); }

using Wave = std::function<Complex(const Vector&)>;

inline Wave wave(const galiray::PolyGaussianState& s) {
  return [s](const Vector& p) { return s(p); };
}

/// Literal closure form of (U_t(r) f)(p) for the momentum-space kinds.
inline Wave represent(const galiray::RepDescriptor& rep, const GalileiElement& r, double t, Wave f) {
  using galiray::RepKind;
  const Complex I(0.0, 1.0);
  return [=](const Vector& p) {
    const double g = rep.gamma;
    const double sigma = rep.kind == RepKind::bargmann3d ? -1.0 : 1.0;
    Vector arg = p;
    for (Eigen::Index k = 0; k < p.size(); ++k) arg(k) += sigma * g * r.v()(k);
    arg = transpose_matvec(r.W(), arg);
    const double pp = dot(p, p);
    double phase = 0.0;
    switch (rep.kind) {
      case RepKind::bargmann3d:
        phase = -(dot(p, r.u()) - r.eta() / (2 * g) * pp + r.eta() * g / 2 * dot(r.v(), r.v()) -
                  g * dot(r.u(), r.v()));
        break;
      case RepKind::nonabelian2d:
        phase = dot(r.u(), p) + g / 2 * dot(r.u(), r.v()) + r.eta() / (2 * g) * pp + rep.s * r.angle().theta -
                rep.lambda / (2 * g) * wedge(r.v(), p);
        break;
      case RepKind::schrodinger2d:
        phase = dot(r.u(), p) + g / 2 * dot(r.u(), r.v()) + r.eta() / (2 * g) * pp + rep.s * r.angle().theta;
        break;
      case RepKind::schrodinger3d:
        phase = dot(r.u(), p) + g / 2 * dot(r.u(), r.v()) + r.eta() / (2 * g) * pp;
        break;
      case RepKind::position1d: break;
    }
    phase -= dot(p, r.v()) * t;
    return std::exp(I * phase) * f(arg);
  };
}

/// Central difference of a closure along coordinate k.
inline Complex partial(const Wave& f, const Vector& p, int k, double h = 1e-4) {
  Vector a = p;
  Vector b = p;
  a(k) += h;
  b(k) -= h;
  Vector a2 = p;
  Vector b2 = p;
  a2(k) += 2 * h;
  b2(k) -= 2 * h;
  return (8.0 * (f(a) - f(b)) - (f(a2) - f(b2))) / (12.0 * h);
}

inline std::vector<Vector> points(std::mt19937_64& rng, int dim, std::size_t n, double radius = 1.5) {
  std::uniform_real_distribution<double> u(-radius, radius);
  std::vector<Vector> out;
  for (std::size_t i = 0; i < n; ++i) {
    Vector p(dim);
    for (int k = 0; k < dim; ++k) p(k) = u(rng);
    out.push_back(p);
  }
  return out;
}

}  // namespace oracle
