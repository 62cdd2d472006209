#include "galiray/group.hpp"

#include <cmath>
#include <numbers>

#include "galiray/errors.hpp"

namespace galiray {

namespace {

constexpr double kOrthogonalityTolerance = 1e-9;

void check_rotation(const Matrix& W, int dim) {
  const Matrix gram = W.transpose() * W;
  const double defect = (gram - Matrix::Identity(dim, dim)).cwiseAbs().maxCoeff();
  if (defect > kOrthogonalityTolerance || std::abs(W.determinant() - 1.0) > kOrthogonalityTolerance) {
    throw InvalidArgument("W is not a proper rotation (orthogonality defect " + std::to_string(defect) + ")");
  }
}

}  // namespace

Matrix plane_rotation(double theta) {
  Matrix R(2, 2);
  R << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  return R;
}

GalileiElement::GalileiElement(Raw, Matrix W, double eta, Vector v, Vector u, double theta)
    : dim_(static_cast<int>(W.rows())), W_(std::move(W)), eta_(eta), v_(std::move(v)), u_(std::move(u)),
      theta_(theta) {}

GalileiElement::GalileiElement(Matrix W, double eta, Vector v, Vector u)
    : dim_(static_cast<int>(W.rows())), W_(std::move(W)), eta_(eta), v_(std::move(v)), u_(std::move(u)) {
  require_dim(dim_);
  if (W_.cols() != dim_ || v_.size() != dim_ || u_.size() != dim_) {
    throw DimensionError("GalileiElement: W, v, u sizes disagree");
  }
  check_rotation(W_, dim_);
  if (dim_ == 2) theta_ = std::atan2(W_(1, 0), W_(0, 0));
}

GalileiElement GalileiElement::planar(double theta, double eta, const Vector& v, const Vector& u) {
  if (v.size() != 2 || u.size() != 2) throw DimensionError("planar element needs 2-vectors");
  return GalileiElement(Raw{}, plane_rotation(theta), eta, v, u, theta);
}

GalileiElement GalileiElement::identity(int dim) {
  require_dim(dim);
  return GalileiElement(Raw{}, Matrix::Identity(dim, dim), 0.0, Vector::Zero(dim), Vector::Zero(dim), 0.0);
}

GalileiElement GalileiElement::time_translation(int dim, double eta) {
  require_dim(dim);
  return GalileiElement(Raw{}, Matrix::Identity(dim, dim), eta, Vector::Zero(dim), Vector::Zero(dim), 0.0);
}

GalileiElement GalileiElement::boost(const Vector& v) {
  const int dim = static_cast<int>(v.size());
  require_dim(dim);
  return GalileiElement(Raw{}, Matrix::Identity(dim, dim), 0.0, v, Vector::Zero(dim), 0.0);
}

GalileiElement GalileiElement::translation(const Vector& u) {
  const int dim = static_cast<int>(u.size());
  require_dim(dim);
  return GalileiElement(Raw{}, Matrix::Identity(dim, dim), 0.0, Vector::Zero(dim), u, 0.0);
}

RotationAngle GalileiElement::angle() const { return RotationAngle{dim_ == 2 ? theta_ : 0.0}; }

GalileiElement multiply(const GalileiElement& r, const GalileiElement& s) {
  require_same_dim(r.dim_, s.dim_, "multiply");
  return GalileiElement(GalileiElement::Raw{}, r.W_ * s.W_, r.eta_ + s.eta_, r.W_ * s.v_ + r.v_,
                        r.W_ * s.u_ + r.u_ + s.eta_ * r.v_, r.theta_ + s.theta_);
}

GalileiElement inverse(const GalileiElement& r) {
  const Matrix Wt = r.W_.transpose();
  return GalileiElement(GalileiElement::Raw{}, Wt, -r.eta_, -(Wt * r.v_), -(Wt * (r.u_ - r.eta_ * r.v_)),
                        -r.theta_);
}

Matrix embed_matrix(const GalileiElement& r) {
  const int n = r.dim();
  Matrix m = Matrix::Identity(n + 2, n + 2);
  m.topLeftCorner(n, n) = r.W();
  m.block(0, n, n, 1) = r.v();
  m.block(0, n + 1, n, 1) = r.u();
  m(n, n + 1) = r.eta();
  return m;
}

GalileiElement decode_matrix(const Matrix& m) {
  const int n = static_cast<int>(m.rows()) - 2;
  require_dim(n);
  return GalileiElement(m.topLeftCorner(n, n), m(n, n + 1), m.block(0, n, n, 1), m.block(0, n + 1, n, 1));
}

Vector act_on_momentum(const GalileiElement& r, const Vector& p, double gamma) {
  require_same_dim(r.dim(), static_cast<int>(p.size()), "act_on_momentum");
  return r.W().transpose() * (p + gamma * r.v());
}

double max_abs_difference(const GalileiElement& a, const GalileiElement& b) {
  require_same_dim(a.dim(), b.dim(), "max_abs_difference");
  double d = (a.W() - b.W()).cwiseAbs().maxCoeff();
  d = std::max(d, std::abs(a.eta() - b.eta()));
  d = std::max(d, (a.v() - b.v()).cwiseAbs().maxCoeff());
  d = std::max(d, (a.u() - b.u()).cwiseAbs().maxCoeff());
  d = std::max(d, std::abs(a.angle().theta - b.angle().theta));
  return d;
}

double rotation_defect(const GalileiElement& r) {
  const int n = r.dim();
  const double ortho = (r.W().transpose() * r.W() - Matrix::Identity(n, n)).cwiseAbs().maxCoeff();
  return std::max(ortho, std::abs(r.W().determinant() - 1.0));
}

GalileiElement random_element(std::mt19937_64& rng, int dim, double scale) {
  require_dim(dim);
  if (!(scale >= 0.0)) throw InvalidArgument("random_element: scale must be nonnegative");
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);

  auto draw_vector = [&] {
    Vector x(dim);
    for (int i = 0; i < dim; ++i) x(i) = scale * unit(rng);
    return x;
  };

  if (dim == 2) {
    const double theta = angle(rng);
    const double eta = scale * unit(rng);
    const Vector v = draw_vector();
    const Vector u = draw_vector();
    return GalileiElement::planar(theta, eta, v, u);
  }

  Matrix W = Matrix::Identity(dim, dim);
  if (dim == 3) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::Vector3d axis(gauss(rng), gauss(rng), gauss(rng));
    while (axis.norm() < 1e-12) axis = Eigen::Vector3d(gauss(rng), gauss(rng), gauss(rng));
    axis.normalize();
    W = Eigen::AngleAxisd(angle(rng), axis).toRotationMatrix();
  }
  const double eta = scale * unit(rng);
  const Vector v = draw_vector();
  const Vector u = draw_vector();
  return GalileiElement(W, eta, v, u);
}

GalileiElement random_element(std::uint64_t seed, int dim, double scale) {
  std::mt19937_64 rng(seed);
  return random_element(rng, dim, scale);
}

GalileiElement path_point(const GalileiElement& r, double tau) {
  const int n = r.dim();
  Matrix W = Matrix::Identity(n, n);
  double theta = 0.0;
  if (n == 2) {
    theta = tau * r.theta_;
    W = plane_rotation(theta);
  } else if (n == 3) {
    const Eigen::AngleAxisd aa{Eigen::Matrix3d(r.W())};
    W = Eigen::AngleAxisd(tau * aa.angle(), aa.axis()).toRotationMatrix();
  }
  return GalileiElement(GalileiElement::Raw{}, W, tau * r.eta(), tau * r.v(), tau * r.u(), theta);
}

void to_json(nlohmann::json& j, const GalileiElement& r) {
  const int n = r.dim();
  std::vector<double> W;
  W.reserve(static_cast<std::size_t>(n * n));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) W.push_back(r.W()(i, k));
  j = nlohmann::json{{"dim", n},
                     {"W", W},
                     {"eta", r.eta()},
                     {"v", std::vector<double>(r.v().data(), r.v().data() + n)},
                     {"u", std::vector<double>(r.u().data(), r.u().data() + n)}};
  if (n == 2) j["theta"] = r.angle().theta;
}

void from_json(const nlohmann::json& j, GalileiElement& r) {
  try {
    const int n = j.at("dim").get<int>();
    require_dim(n);
    const auto W = j.at("W").get<std::vector<double>>();
    const auto v = j.at("v").get<std::vector<double>>();
    const auto u = j.at("u").get<std::vector<double>>();
    if (W.size() != static_cast<std::size_t>(n * n) || v.size() != static_cast<std::size_t>(n) ||
        u.size() != static_cast<std::size_t>(n)) {
      throw ConfigError("GalileiElement JSON: array sizes do not match dim");
    }
    Matrix Wm(n, n);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) Wm(i, k) = W[static_cast<std::size_t>(i * n + k)];
    const Vector vv = Eigen::Map<const Vector>(v.data(), n);
    const Vector uu = Eigen::Map<const Vector>(u.data(), n);
    const double eta = j.at("eta").get<double>();
    if (n == 2 && j.contains("theta")) {
      const double theta = j.at("theta").get<double>();
      if ((plane_rotation(theta) - Wm).cwiseAbs().maxCoeff() > 1e-9) {
        throw ConfigError("GalileiElement JSON: theta disagrees with W");
      }
      r = GalileiElement::planar(theta, eta, vv, uu);
    } else {
      r = GalileiElement(Wm, eta, vv, uu);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("GalileiElement JSON: ") + e.what());
  }
}

}  // namespace galiray
