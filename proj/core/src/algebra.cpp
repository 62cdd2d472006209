#include "galiray/algebra.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "galiray/errors.hpp"

namespace galiray {

namespace {

int rot_count(int dim) { return dim * (dim - 1) / 2; }

// Index of a_ij (i < j, zero-based) in the ordered basis.
int rot_index(int dim, int i, int j) {
  int idx = 0;
  for (int a = 0; a < dim; ++a)
    for (int b = a + 1; b < dim; ++b) {
      if (a == i && b == j) return idx;
      ++idx;
    }
  throw InvalidArgument("rot_index: not an upper-triangle pair");
}

int kron(int a, int b) { return a == b ? 1 : 0; }

// Coordinates of a_ij for arbitrary (i, j): a_ji = -a_ij, a_ii = 0.
void add_rot(Vector& c, int dim, int i, int j, double coeff) {
  if (i == j || coeff == 0.0) return;
  if (i < j)
    c(rot_index(dim, i, j)) += coeff;
  else
    c(rot_index(dim, j, i)) -= coeff;
}

const StructureConstants& cached_constants(int dim) {
  static std::mutex mu;
  static std::map<int, StructureConstants> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(dim);
  if (it == cache.end()) it = cache.emplace(dim, StructureConstants(dim)).first;
  return it->second;
}

}  // namespace

AlgebraElement::AlgebraElement(int dim)
    : dim_(dim), rot_(Matrix::Zero(dim, dim)), trans_(Vector::Zero(dim)), boost_(Vector::Zero(dim)) {
  require_dim(dim);
}

AlgebraElement::AlgebraElement(Matrix rot, Vector trans, Vector boost, double time)
    : dim_(static_cast<int>(rot.rows())), rot_(std::move(rot)), trans_(std::move(trans)), boost_(std::move(boost)),
      time_(time) {
  require_dim(dim_);
  if (rot_.cols() != dim_ || trans_.size() != dim_ || boost_.size() != dim_) {
    throw DimensionError("AlgebraElement: component sizes disagree");
  }
  if ((rot_ + rot_.transpose()).cwiseAbs().maxCoeff() != 0.0) {
    throw InvalidArgument("AlgebraElement: rotation part must be exactly antisymmetric");
  }
}

AlgebraElement AlgebraElement::basis(int dim, const std::string& name) {
  AlgebraElement X(dim);
  auto index = [&](char ch) {
    const int k = ch - '1';
    if (k < 0 || k >= dim) throw InvalidArgument("basis index out of range in '" + name + "'");
    return k;
  };
  if (name == "f") {
    X.time_ = 1.0;
  } else if (name.size() == 2 && name[0] == 'b') {
    X.trans_(index(name[1])) = 1.0;
  } else if (name.size() == 2 && name[0] == 'd') {
    X.boost_(index(name[1])) = 1.0;
  } else if (name.size() == 3 && name[0] == 'a') {
    const int i = index(name[1]);
    const int j = index(name[2]);
    if (i == j) throw InvalidArgument("a_ii is not a basis element");
    X.rot_(i, j) = 1.0;
    X.rot_(j, i) = -1.0;
  } else {
    throw InvalidArgument("unknown basis element '" + name + "'");
  }
  return X;
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& o) {
  require_same_dim(dim_, o.dim_, "AlgebraElement +");
  rot_ += o.rot_;
  trans_ += o.trans_;
  boost_ += o.boost_;
  time_ += o.time_;
  return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& o) {
  require_same_dim(dim_, o.dim_, "AlgebraElement -");
  rot_ -= o.rot_;
  trans_ -= o.trans_;
  boost_ -= o.boost_;
  time_ -= o.time_;
  return *this;
}

AlgebraElement& AlgebraElement::operator*=(double c) {
  rot_ *= c;
  trans_ *= c;
  boost_ *= c;
  time_ *= c;
  return *this;
}

AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
AlgebraElement operator*(double c, AlgebraElement a) { return a *= c; }

Vector AlgebraElement::coordinates() const {
  const int nr = rot_count(dim_);
  Vector c(algebra_dimension(dim_));
  int idx = 0;
  for (int i = 0; i < dim_; ++i)
    for (int j = i + 1; j < dim_; ++j) c(idx++) = rot_(i, j);
  c.segment(nr, dim_) = trans_;
  c.segment(nr + dim_, dim_) = boost_;
  c(nr + 2 * dim_) = time_;
  return c;
}

AlgebraElement AlgebraElement::from_coordinates(int dim, const Vector& c) {
  if (c.size() != algebra_dimension(dim)) throw DimensionError("from_coordinates: wrong coordinate count");
  const int nr = rot_count(dim);
  AlgebraElement X(dim);
  int idx = 0;
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j) {
      X.rot_(i, j) = c(idx);
      X.rot_(j, i) = -c(idx);
      ++idx;
    }
  X.trans_ = c.segment(nr, dim);
  X.boost_ = c.segment(nr + dim, dim);
  X.time_ = c(nr + 2 * dim);
  return X;
}

double AlgebraElement::max_abs() const { return coordinates().cwiseAbs().maxCoeff(); }

std::vector<std::string> basis_names(int dim) {
  require_dim(dim);
  std::vector<std::string> names;
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j) names.push_back("a" + std::to_string(i + 1) + std::to_string(j + 1));
  for (int i = 0; i < dim; ++i) names.push_back("b" + std::to_string(i + 1));
  for (int i = 0; i < dim; ++i) names.push_back("d" + std::to_string(i + 1));
  names.emplace_back("f");
  return names;
}

int algebra_dimension(int dim) { return rot_count(dim) + 2 * dim + 1; }

StructureConstants::StructureConstants(int dim) : dim_(dim), size_(algebra_dimension(dim)) {
  require_dim(dim);
  const int nr = rot_count(dim);
  const int b0 = nr;
  const int d0 = nr + dim;

  // Tag each basis index with its kind and spatial indices.
  struct Tag {
    char kind;
    int i;
    int j;
  };
  std::vector<Tag> tags;
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j) tags.push_back({'a', i, j});
  for (int i = 0; i < dim; ++i) tags.push_back({'b', i, -1});
  for (int i = 0; i < dim; ++i) tags.push_back({'d', i, -1});
  tags.push_back({'f', -1, -1});

  // [a_ij, b_k] (resp. d_k) = d_jk x_i - d_ik x_j with x_i at offset `base`.
  auto rot_on_vector = [&](Vector& c, const Tag& a, int k, int base, double sign) {
    c(base + a.i) += sign * kron(a.j, k);
    c(base + a.j) -= sign * kron(a.i, k);
  };

  table_.assign(static_cast<std::size_t>(size_ * size_), Vector::Zero(size_));
  for (int A = 0; A < size_; ++A) {
    for (int B = 0; B < size_; ++B) {
      Vector c = Vector::Zero(size_);
      const Tag& x = tags[static_cast<std::size_t>(A)];
      const Tag& y = tags[static_cast<std::size_t>(B)];
      if (x.kind == 'a' && y.kind == 'a') {
        const int i = x.i, j = x.j, k = y.i, l = y.j;
        add_rot(c, dim, i, l, kron(j, k));
        add_rot(c, dim, j, l, -kron(i, k));
        add_rot(c, dim, j, k, kron(i, l));
        add_rot(c, dim, i, k, -kron(j, l));
      } else if (x.kind == 'a' && y.kind == 'b') {
        rot_on_vector(c, x, y.i, b0, 1.0);
      } else if (x.kind == 'b' && y.kind == 'a') {
        rot_on_vector(c, y, x.i, b0, -1.0);
      } else if (x.kind == 'a' && y.kind == 'd') {
        rot_on_vector(c, x, y.i, d0, 1.0);
      } else if (x.kind == 'd' && y.kind == 'a') {
        rot_on_vector(c, y, x.i, d0, -1.0);
      } else if (x.kind == 'd' && y.kind == 'f') {
        c(b0 + x.i) = 1.0;
      } else if (x.kind == 'f' && y.kind == 'd') {
        c(b0 + y.i) = -1.0;
      }
      table_[static_cast<std::size_t>(A * size_ + B)] = c;
    }
  }
}

AlgebraElement commutator(const AlgebraElement& X, const AlgebraElement& Y) {
  require_same_dim(X.dim(), Y.dim(), "commutator");
  const StructureConstants& sc = cached_constants(X.dim());
  const Vector x = X.coordinates();
  const Vector y = Y.coordinates();
  Vector out = Vector::Zero(sc.size());
  for (int a = 0; a < sc.size(); ++a) {
    if (x(a) == 0.0) continue;
    for (int b = 0; b < sc.size(); ++b) {
      if (y(b) == 0.0) continue;
      out += x(a) * y(b) * sc.bracket(a, b);
    }
  }
  return AlgebraElement::from_coordinates(X.dim(), out);
}

Matrix embed_algebra(const AlgebraElement& X) {
  const int n = X.dim();
  Matrix m = Matrix::Zero(n + 2, n + 2);
  m.topLeftCorner(n, n) = X.rot();
  m.block(0, n, n, 1) = X.boost();
  m.block(0, n + 1, n, 1) = X.trans();
  m(n, n + 1) = X.time();
  return m;
}

AlgebraElement decode_algebra(const Matrix& m) {
  const int n = static_cast<int>(m.rows()) - 2;
  require_dim(n);
  Matrix rot = m.topLeftCorner(n, n);
  rot = 0.5 * (rot - rot.transpose()).eval();
  return AlgebraElement(rot, m.block(0, n + 1, n, 1), m.block(0, n, n, 1), m(n, n + 1));
}

AlgebraElement matrix_commutator(const AlgebraElement& X, const AlgebraElement& Y) {
  require_same_dim(X.dim(), Y.dim(), "matrix_commutator");
  const Matrix A = embed_algebra(X);
  const Matrix B = embed_algebra(Y);
  return decode_algebra(A * B - B * A);
}

double jacobi_residual(const AlgebraElement& X, const AlgebraElement& Y, const AlgebraElement& Z) {
  const AlgebraElement sum =
      commutator(X, commutator(Y, Z)) + commutator(Y, commutator(Z, X)) + commutator(Z, commutator(X, Y));
  return sum.max_abs();
}

Matrix expm(const Matrix& A) {
  constexpr double kTolerance = 1e-14;
  const double norm = A.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  const Matrix S = A / std::ldexp(1.0, squarings);

  const auto n = A.rows();
  Matrix result = Matrix::Identity(n, n);
  Matrix term = Matrix::Identity(n, n);
  for (int k = 1; k < 64; ++k) {
    term = (term * S) / static_cast<double>(k);
    result += term;
    if (term.cwiseAbs().maxCoeff() < kTolerance * 1e-3) break;
  }
  for (int i = 0; i < squarings; ++i) result = (result * result).eval();
  return result;
}

GalileiElement exponential(const AlgebraElement& X) {
  const int n = X.dim();
  const Matrix m = expm(embed_algebra(X));
  const Matrix W = m.topLeftCorner(n, n);
  const Vector v = m.block(0, n, n, 1);
  const Vector u = m.block(0, n + 1, n, 1);
  const double eta = m(n, n + 1);
  if (n == 2) return GalileiElement::planar(X.rot()(1, 0), eta, v, u);
  if (n == 1) return GalileiElement(Matrix::Identity(1, 1), eta, v, u);
  // Re-orthonormalize the rotation block to remove series round-off.
  Eigen::JacobiSVD<Matrix> svd(W, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return GalileiElement(svd.matrixU() * svd.matrixV().transpose(), eta, v, u);
}

AlgebraElement random_algebra_element(std::mt19937_64& rng, int dim, double scale) {
  std::uniform_real_distribution<double> unit(-scale, scale);
  Vector c(algebra_dimension(dim));
  for (int i = 0; i < c.size(); ++i) c(i) = unit(rng);
  return AlgebraElement::from_coordinates(dim, c);
}

void to_json(nlohmann::json& j, const AlgebraElement& X) {
  const int n = X.dim();
  std::vector<double> rot;
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) rot.push_back(X.rot()(i, k));
  j = nlohmann::json{{"dim", n},
                     {"rot", rot},
                     {"trans", std::vector<double>(X.trans().data(), X.trans().data() + n)},
                     {"boost", std::vector<double>(X.boost().data(), X.boost().data() + n)},
                     {"time", X.time()}};
}

void from_json(const nlohmann::json& j, AlgebraElement& X) {
  try {
    if (j.is_string()) {
      throw ConfigError("AlgebraElement JSON: bare basis names need a dimension; use {\"dim\":n,\"basis\":name}");
    }
    const int n = j.at("dim").get<int>();
    if (j.contains("basis")) {
      X = AlgebraElement::basis(n, j.at("basis").get<std::string>());
      return;
    }
    const auto rot = j.at("rot").get<std::vector<double>>();
    const auto trans = j.at("trans").get<std::vector<double>>();
    const auto boost = j.at("boost").get<std::vector<double>>();
    if (rot.size() != static_cast<std::size_t>(n * n) || trans.size() != static_cast<std::size_t>(n) ||
        boost.size() != static_cast<std::size_t>(n)) {
      throw ConfigError("AlgebraElement JSON: array sizes do not match dim");
    }
    Matrix R(n, n);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) R(i, k) = rot[static_cast<std::size_t>(i * n + k)];
    X = AlgebraElement(R, Eigen::Map<const Vector>(trans.data(), n), Eigen::Map<const Vector>(boost.data(), n),
                       j.at("time").get<double>());
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("AlgebraElement JSON: ") + e.what());
  }
}

}  // namespace galiray
