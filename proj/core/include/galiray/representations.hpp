#pragma once

// Explicit ray representations on PolyGaussianState and their generators.
//
// Momentum-space kinds act as
//     (U(r) f)(p) = exp(i Phi_r(p)) f(W^{-1} (p + sigma gamma v))
// with
//   schrodinger2d  Phi = <u,p> + gamma/2 <u,v> + eta/(2 gamma) <p,p> + s theta,  sigma = +1
//   nonabelian2d   schrodinger2d phase - lambda/(2 gamma) (v ^ p),             sigma = +1
//   schrodinger3d  schrodinger2d phase without the s theta term, in dim 3,    sigma = +1
//   bargmann3d     -(<p,u> - eta/(2 gamma) <p,p> + eta gamma/2 <v,v> - gamma <u,v>), sigma = -1
// and the time-dependent operators are U_t(r) = exp(-i <p, v_r> t) U(r).
//
// position1d carries only the time-dependent position-space generators
//   R_t(H) = -hbar^2/(2m) d_x^2 + f x + V0
//   R_t(P) = i hbar d_x - f t
//   R_t(N) = m x - i hbar t d_x - f t^2 / 2.

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "galiray/algebra.hpp"
#include "galiray/cocycles.hpp"
#include "galiray/group.hpp"
#include "galiray/hilbert.hpp"

namespace galiray {

enum class RepKind { bargmann3d, nonabelian2d, schrodinger2d, schrodinger3d, position1d };

std::string rep_kind_name(RepKind kind);
RepKind rep_kind(const std::string& name);
int rep_dim(RepKind kind);

struct RepDescriptor {
  RepKind kind = RepKind::schrodinger2d;
  double gamma = 1.0;
  double lambda = 0.0;
  double s = 0.0;
  double hbar = 1.0;
  double m = 1.0;
  double force_f = 0.0;
  double V0 = 0.0;

  int dim() const { return rep_dim(kind); }
  std::string name() const { return rep_kind_name(kind); }
  bool momentum_space() const { return kind != RepKind::position1d; }
  /// Sign of gamma v in the substitution argument W^{-1}(p + sigma gamma v).
  double momentum_sign() const { return kind == RepKind::bargmann3d ? -1.0 : 1.0; }

  /// Throws InvalidArgument on gamma == 0, hbar <= 0, m <= 0.
  void validate() const;

  /// Default parameter set for a kind (lambda, s, force nonzero where they apply).
  static RepDescriptor defaults(RepKind kind);
};

struct TimeLabel {
  double t = 0.0;
};

/// Phase exp(const + <lin, p> + p^T quad p) of U(r), without the time factor.
struct QuadraticPhase {
  CMatrix quad;
  CVector lin;
  Complex constant{0.0, 0.0};
};

QuadraticPhase representation_phase(const RepDescriptor& rep, const GalileiElement& r);

PolyGaussianState apply(const RepDescriptor& rep, const GalileiElement& r, const PolyGaussianState& state);
PolyGaussianState apply_time(const RepDescriptor& rep, const GalileiElement& r, TimeLabel t,
                             const PolyGaussianState& state);

/// e^{i phi(r)} U_t(r): a different choice of representatives in the same rays.
PolyGaussianState apply_gauged(const RepDescriptor& rep, const GaugeFn& gauge, const GalileiElement& r,
                               TimeLabel t, const PolyGaussianState& state);

/// Generator names of a kind, e.g. {"H","P1","P2","M","N1","N2"}.
std::vector<std::string> generator_names(const RepDescriptor& rep);

/// Maps algebra basis names (f, b_i, a_ij, d_i) to generator names; other
/// names pass through unchanged.
std::string generator_alias(const RepDescriptor& rep, const std::string& name);

/// R_t(X) with t kept as the polynomial variable kTimeVar.
PolyDiffOperator symbolic_generator(const RepDescriptor& rep, const std::string& X);

/// R_t(X) at a fixed time.
PolyDiffOperator generator(const RepDescriptor& rep, const std::string& X, double t);

/// The t-independent generators R(X): the listed infinitesimal generators of
/// the momentum-space kinds; R_0(X) for position1d.
PolyDiffOperator static_generator(const RepDescriptor& rep, const std::string& X);

/// d/dtau U_t(exp(tau X)) state at tau = 0, X an algebra basis name. Central
/// differences with one Richardson step; the result is itself a state.
PolyGaussianState one_parameter_derivative(const RepDescriptor& rep, const std::string& X, double t,
                                           const PolyGaussianState& state, double h = 1e-3);

void to_json(nlohmann::json& j, const RepDescriptor& rep);
void from_json(const nlohmann::json& j, RepDescriptor& rep);

}  // namespace galiray
