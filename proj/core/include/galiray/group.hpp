#pragma once

// The Galilei group in one to three space dimensions.
//
// An element r = (W, eta, v, u) acts on space-time by
//   x' = W x + v t + u,   t' = t + eta
// and composes as
//   rs = (W_r W_s, eta_r + eta_s, W_r v_s + v_r, W_r u_s + u_r + eta_s v_r).
//
// W is restricted to SO(n). In the plane the rotation angle is additionally
// carried as a lifted real coordinate so that angle-valued functions (the
// theta-dependent exponent and the e^{i s theta} factors) stay continuous on
// the universal cover.

#include <cstdint>
#include <random>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

namespace galiray {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Angle of a plane rotation, on the universal cover (not reduced mod 2 pi).
struct RotationAngle {
  double theta = 0.0;
};

/// Plane rotation by theta: [[cos, -sin], [sin, cos]].
Matrix plane_rotation(double theta);

class GalileiElement {
 public:
  GalileiElement() : GalileiElement(identity(3)) {}

  /// Generic constructor. For dim 2 the lifted angle is read off W with atan2.
  GalileiElement(Matrix W, double eta, Vector v, Vector u);

  /// Planar element with explicit lifted angle.
  static GalileiElement planar(double theta, double eta, const Vector& v, const Vector& u);
  static GalileiElement identity(int dim);
  static GalileiElement time_translation(int dim, double eta);
  static GalileiElement boost(const Vector& v);
  static GalileiElement translation(const Vector& u);

  int dim() const { return dim_; }
  const Matrix& W() const { return W_; }
  double eta() const { return eta_; }
  const Vector& v() const { return v_; }
  const Vector& u() const { return u_; }

  /// Lifted rotation angle; only meaningful for dim 2 (zero otherwise).
  RotationAngle angle() const;

 private:
  struct Raw {};
  GalileiElement(Raw, Matrix W, double eta, Vector v, Vector u, double theta);

  int dim_ = 3;
  Matrix W_;
  double eta_ = 0.0;
  Vector v_;
  Vector u_;
  double theta_ = 0.0;

  friend GalileiElement multiply(const GalileiElement&, const GalileiElement&);
  friend GalileiElement inverse(const GalileiElement&);
  friend GalileiElement path_point(const GalileiElement&, double);
};

GalileiElement multiply(const GalileiElement& r, const GalileiElement& s);
GalileiElement inverse(const GalileiElement& r);
inline GalileiElement operator*(const GalileiElement& r, const GalileiElement& s) { return multiply(r, s); }

/// (dim+2)x(dim+2) block matrix [[W, v, u], [0, 1, eta], [0, 0, 1]].
Matrix embed_matrix(const GalileiElement& r);

/// Inverse of embed_matrix. The lifted angle is taken from atan2 for dim 2.
GalileiElement decode_matrix(const Matrix& m);

/// W^{-1} (p + gamma v). Composes as act(s, act(r, p)) = act(rs, p).
Vector act_on_momentum(const GalileiElement& r, const Vector& p, double gamma);

/// Max-norm distance over all coordinates (including the lifted angle in dim 2).
double max_abs_difference(const GalileiElement& a, const GalileiElement& b);

/// Orthogonality and determinant defect of W: max(|W^T W - I|_max, |det W - 1|).
double rotation_defect(const GalileiElement& r);

/// Deterministic sampler. Rotations are random for every scale; eta, v and u
/// are uniform in [-scale, scale].
GalileiElement random_element(std::uint64_t seed, int dim, double scale);
GalileiElement random_element(std::mt19937_64& rng, int dim, double scale);

/// Continuous path from the identity (tau = 0) to r (tau = 1): every linear
/// coordinate scaled by tau, the rotation by tau times its angle.
GalileiElement path_point(const GalileiElement& r, double tau);

void to_json(nlohmann::json& j, const GalileiElement& r);
void from_json(const nlohmann::json& j, GalileiElement& r);

}  // namespace galiray
