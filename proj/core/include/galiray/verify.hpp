#pragma once

// Empirical checks on the representations: multiplier extraction from exact
// compositions, the time-dependent multiplier law, Heisenberg-picture fits.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "galiray/cocycles.hpp"
#include "galiray/representations.hpp"

namespace galiray {

struct MatchedExponent {
  std::string name;
  double residual = 0.0;
};

struct MultiplierReport {
  Complex omega{1.0, 0.0};
  double constancy_spread = 0.0;
  double modulus_error = 0.0;
  std::size_t n_points = 0;
  std::size_t skipped = 0;
  std::optional<MatchedExponent> matched_exponent;

  bool pass(double spread_tol, double modulus_tol) const {
    return n_points > 0 && constancy_spread < spread_tol && modulus_error < modulus_tol;
  }
};

inline constexpr std::size_t kMinSamplePoints = 16;

/// Points in the ball of radius 2 around the center of U_t(rs) state.
std::vector<Vector> multiplier_sample_points(const RepDescriptor& rep, const GalileiElement& rs, TimeLabel t,
                                             const PolyGaussianState& state, std::uint64_t seed,
                                             std::size_t count = kMinSamplePoints);

/// Ratio U_t(r)U_t(s) state / U_t(rs) state at the sample points. Points with
/// |denominator| below 1e-8 relative to the largest are skipped. When the
/// kind has a predicted exponent the closest match is attached.
MultiplierReport extract_multiplier(const RepDescriptor& rep, const GalileiElement& r, const GalileiElement& s,
                                    TimeLabel t, const PolyGaussianState& state,
                                    const std::vector<Vector>& sample_points);

/// Same, with the default seeded sample points.
MultiplierReport extract_multiplier(const RepDescriptor& rep, const GalileiElement& r, const GalileiElement& s,
                                    TimeLabel t, const PolyGaussianState& state, std::uint64_t seed = 0);

/// Exponent xi with omega(r,s) = exp(i xi(r,s)) for the static operators:
///   schrodinger2d, schrodinger3d   -gamma xi0
///   nonabelian2d                   -gamma xi0 + lambda xi1
///   bargmann3d                     -gamma xi0 + coboundary of gamma(<u,v>/2 - eta |v|^2/2)
ExponentFn predicted_exponent(const RepDescriptor& rep);
std::string predicted_exponent_name(const RepDescriptor& rep);

/// omega_t(r,s) / omega_0(r,s).
Complex time_multiplier_ratio(const RepDescriptor& rep, const GalileiElement& r, const GalileiElement& s,
                              TimeLabel t, const PolyGaussianState& state, std::uint64_t seed = 0);

/// |omega_t / omega_0 - exp(i xi_t(r,s))| with xi_t = -gamma <v_r, W_r v_s> t.
double check_time_multiplier(const RepDescriptor& rep, const GalileiElement& r, const GalileiElement& s,
                             TimeLabel t, const PolyGaussianState& state, std::uint64_t seed = 0);

/// Continuous-branch exponent arg omega(r_tau, s_tau) followed along
/// tau in [0, 1], r_tau = path_point(r, tau), unwrapping by bisection.
double continuous_exponent(const RepDescriptor& rep, const GalileiElement& r, const GalileiElement& s,
                           const PolyGaussianState& state, std::size_t steps = 16, std::uint64_t seed = 0);

struct GeneratorFit {
  std::string name;
  /// Least-squares constant in d/dt R_t(X) = K_X [R(H), R_t(X)]; empty when
  /// the commutator vanishes.
  std::optional<Complex> K;
  double own_residual = 0.0;
  /// Residual under the uniform assignment (with this generator's flip).
  double residual = 0.0;
  bool flipped = false;
  bool time_independent = false;
};

struct HeisenbergFit {
  std::string rep;
  Complex K{0.0, 0.0};
  /// +1 for [H, X], -1 for [X, H].
  int orientation = 1;
  std::vector<std::string> per_generator_flips;
  std::vector<GeneratorFit> generators;
  /// Worst residual of the best assignment, flips applied.
  double max_residual = 0.0;
  /// Worst residual with no flips.
  double uniform_residual = 0.0;
  /// True when one K fits every generator without flips.
  bool uniform = false;
  std::string message;
};

/// Fits K over `generators` (all of the rep's generators when empty). The
/// residual is the largest pointwise value of (d/dt R_t(X) - K o [R(H), R_t(X)])
/// applied to a seeded state battery at each t in t_samples.
HeisenbergFit heisenberg_fit(const RepDescriptor& rep, std::vector<std::string> generators,
                             const std::vector<double>& t_samples, std::uint64_t seed = 0);

/// Pointwise |generator(X, 0) state - static_generator(X) state|.
double check_initial_condition(const RepDescriptor& rep, const std::string& X, const PolyGaussianState& state,
                               std::uint64_t seed = 0);

struct ActionFit {
  std::string generator;
  Complex c{0.0, 0.0};
  double residual = 0.0;
  double modulus_error = 0.0;
};

/// Fits d/dtau U_t(exp(tau X)) state = c R_t(X) state at sample points.
ActionFit fit_generator_action(const RepDescriptor& rep, const std::string& X, double t,
                               const PolyGaussianState& state, std::uint64_t seed = 0);

void to_json(nlohmann::json& j, const MultiplierReport& r);
void to_json(nlohmann::json& j, const HeisenbergFit& f);
void to_json(nlohmann::json& j, const ActionFit& f);

}  // namespace galiray
