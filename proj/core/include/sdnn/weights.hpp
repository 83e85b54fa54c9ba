#pragma once

#include <optional>
#include <vector>

#include "sdnn/weight_pair.hpp"

namespace sdnn {

/// Interface frequencies resolved by the discretization.
struct FrequencyBand {
  double k_min = 0.0;
  double k_max = 0.0;

  void validate() const;
};

struct AnalysisParams {
  double mu_f = 1.0;
  double eta_p = 1.0;

  void validate() const;
};

/// How the largest resolvable frequency is derived from the mesh size:
/// `dof` uses the interface dof spacing h/2, `element` the element size h.
enum class KmaxConvention { dof, element };

/// k_min = pi / L, k_max = pi / s with s = h/2 (dof) or h (element).
FrequencyBand frequency_band(double length, double h, KmaxConvention convention = KmaxConvention::dof);

/// rho(alpha_f, alpha_p, k) = 1 - alpha_p (1 + 2 mu eta k^2) - alpha_f (1 + 1/(2 mu eta k^2)).
/// Even in k; throws for k == 0. Weights may be zero here.
double reduction_factor(const WeightPair& w, double k, const AnalysisParams& a);

/// Equioscillating min-max weights for the band.
WeightPair optimal_weights(const AnalysisParams& a, const FrequencyBand& band);

/// Location of the interior maximum of rho in k.
double k_star(const WeightPair& w, const AnalysisParams& a);

/// rho at k_star: 1 - (sqrt(alpha_f) + sqrt(alpha_p))^2.
double rho_at_k_star(const WeightPair& w);

struct RhoZeros {
  double k1 = 0.0;
  double k2 = 0.0;
};

/// Positive zeros k1 <= k2 of rho; empty when the discriminant is negative.
std::optional<RhoZeros> rho_zeros(const WeightPair& w, const AnalysisParams& a);

/// Weights of the sqrt(alpha_f) + sqrt(alpha_p) = 1 family that balance
/// |rho(k_min)| = |rho(k_max)|, together with the sufficient condition for
/// |rho| < 1 on the band.
struct BoundaryCaseWeights {
  WeightPair weights;
  bool contraction_guaranteed = false;  // 1 + 2 mu eta k_min k_max > sqrt(2 mu eta) (k_max - k_min)
};

BoundaryCaseWeights boundary_case_weights(const AnalysisParams& a, const FrequencyBand& band);

/// Leading terms of the small-h expansions of the optimal weights and of
/// rho at k_max, with C = (4 pi^2 mu eta + L^2)^{-1}.
struct AsymptoticWeights {
  double alpha_f = 0.0;
  double alpha_p = 0.0;
  double rho_at_k_max = 0.0;
  double c_nn = 0.0;
};

/// Expansions in terms of the effective spacing pi / k_max (h for the
/// element convention, h/2 for the dof convention) and L = pi / k_min.
AsymptoticWeights asymptotic_weights(double length, double h, const AnalysisParams& a,
                                     KmaxConvention convention = KmaxConvention::dof);

/// Runs m sweeps of the six-step half-plane iteration for one Fourier mode
/// through the closed-form subdomain solutions and returns the final mode
/// amplitude. Independent of reduction_factor by construction.
double mode_composition_oracle(double lambda0, double k, const WeightPair& w,
                               const AnalysisParams& a, int m);

struct GridSpec {
  int points_per_axis = 201;
  double log10_min = -14.0;
  double log10_max = 1.0;
  int k_samples = 10000;
  int polish_rounds = 100;  // golden-section iterations per axis after the grid; 0 disables
};

struct MinmaxResult {
  WeightPair weights;
  double max_abs_rho = 0.0;
};

/// max |rho| over k_samples log-spaced frequencies in the band (endpoints included).
double sampled_max_abs_rho(const WeightPair& w, const AnalysisParams& a, const FrequencyBand& band,
                           int k_samples);

/// Brute-force min-max over a logarithmic (alpha_f, alpha_p) grid followed by
/// repeated zoomed grids around the incumbent. Uses only reduction_factor.
MinmaxResult minmax_oracle(const AnalysisParams& a, const FrequencyBand& band,
                           const GridSpec& grid = {});

/// (k, rho) pairs on a log-spaced grid of the band.
std::vector<std::pair<double, double>> rho_scan(const WeightPair& w, const AnalysisParams& a,
                                                const FrequencyBand& band, int samples);

}  // namespace sdnn
