#pragma once

// Phase exponents (real 2-cocycles) of the Galilei group.
//
//   xi0    gamma/2 (<u_r, W_r v_s> - <v_r, W_r u_s> + eta_s <v_r, W_r v_s>)   any dim
//   xi1    lambda/2 (v_r ^ W_r v_s)                                         dim 2
//   xi2    S (theta_r eta_s - theta_s eta_r)                                 dim 2
//   xi_eta a1/2 (u_r v_s - u_s v_r + eta_s v_r v_s)
//          + a2/2 (u_r eta_s - u_s eta_r - eta_r eta_s v_r)                   dim 1
//   xi_t   -gamma <v_r, W_r v_s> t                                          any dim
//
// xi_eta_literal keeps eta_r in the a1 bracket. It is not a cocycle for this
// group law and exists so that the defect can be measured and reported.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "galiray/algebra.hpp"
#include "galiray/group.hpp"

namespace galiray {

enum class ExponentKind { xi0, xi1, xi2, xi_eta, xi_eta_literal, xi_t };

struct ExponentParams {
  double gamma = 1.0;
  double lambda = 1.0;
  double S = 1.0;
  double a1 = 1.0;
  double a2 = 1.0;
  double t = 0.0;
};

class PhaseExponent {
 public:
  PhaseExponent(ExponentKind kind, int dim, ExponentParams params = {});
  static PhaseExponent from_name(const std::string& name, int dim, ExponentParams params = {});

  ExponentKind kind() const { return kind_; }
  int dim() const { return dim_; }
  const ExponentParams& params() const { return params_; }
  std::string name() const;

  double operator()(const GalileiElement& r, const GalileiElement& s) const;

 private:
  ExponentKind kind_;
  int dim_;
  ExponentParams params_;
};

std::string exponent_name(ExponentKind kind);
ExponentKind exponent_kind(const std::string& name);
/// Dimension an exponent is restricted to, or 0 when any dim is allowed.
int required_dim(ExponentKind kind);

using ExponentFn = std::function<double(const GalileiElement&, const GalileiElement&)>;
using GaugeFn = std::function<double(const GalileiElement&)>;

double evaluate(const PhaseExponent& xi, const GalileiElement& r, const GalileiElement& s);

/// |xi(r,s) + xi(rs,t) - xi(s,t) - xi(r,st)|
double cocycle_residual(const ExponentFn& xi, const GalileiElement& r, const GalileiElement& s,
                        const GalileiElement& t);

/// xi'(r,s) = xi(r,s) + phi(r) + phi(s) - phi(rs). Throws InvalidArgument
/// unless phi vanishes at the identity of `dim`.
ExponentFn equivalence_transform(ExponentFn xi, GaugeFn phi, int dim);

/// phi(r) + phi(s) - phi(rs).
double coboundary(const GaugeFn& phi, const GalileiElement& r, const GalileiElement& s);

struct CocycleSweep {
  std::string name;
  int dim = 0;
  std::size_t n_triples = 0;
  double max_residual = 0.0;
  std::size_t worst_index = 0;
};

/// Max cocycle residual over seeded random triples.
CocycleSweep cocycle_sweep(const PhaseExponent& xi, std::uint64_t seed, std::size_t n_triples, double scale);

struct InfinitesimalExponentValue {
  double value = 0.0;
  std::vector<double> tau_sequence;
  /// tau^{-2}-scaled combination at each tau.
  std::vector<double> samples;
  /// |difference of the last two diagonal extrapolants|.
  double extrapolation_error = 0.0;
  bool converged = false;
};

std::vector<double> default_tau_sequence();

/// Limit of tau^{-2} [ xi((tX)(tY), (tX)^{-1}(tY)^{-1}) + xi(tX, tY) + xi((tX)^{-1}, (tY)^{-1}) ]
/// with tX = exponential(tau X), extrapolated to tau -> 0 by a Neville tableau
/// in powers of tau. `converged` is false when the extrapolation error exceeds
/// `tolerance`.
InfinitesimalExponentValue infinitesimal_exponent(const ExponentFn& xi, const AlgebraElement& X,
                                                  const AlgebraElement& Y,
                                                  const std::vector<double>& taus = default_tau_sequence(),
                                                  double tolerance = 1e-6);

/// Polynomial extrapolation to zero of samples f(tau_k) (Neville tableau).
/// Returns the diagonal of the tableau; the last entry is the estimate.
std::vector<double> richardson_diagonal(const std::vector<double>& taus, const std::vector<double>& values);

/// Contribution -gamma <v_r, W_r v_s> t of two frames to the total action.
double action_contribution(double gamma, const GalileiElement& r, const GalileiElement& s, double t);

void to_json(nlohmann::json& j, const ExponentParams& p);
void from_json(const nlohmann::json& j, ExponentParams& p);
void to_json(nlohmann::json& j, const InfinitesimalExponentValue& v);

}  // namespace galiray
