#include "sdnn/weights.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace sdnn {
namespace {

using real = long double;
constexpr real kPi = std::numbers::pi_v<long double>;

}  // namespace

void FrequencyBand::validate() const {
  if (!(k_min > 0.0) || !(k_min < k_max))
    throw std::invalid_argument("FrequencyBand: need 0 < k_min < k_max");
}

void AnalysisParams::validate() const {
  if (!(mu_f > 0.0) || !(eta_p > 0.0))
    throw std::invalid_argument("AnalysisParams: mu_f and eta_p must be positive");
}

FrequencyBand frequency_band(double length, double h, KmaxConvention convention) {
  if (!(length > 0.0) || !(h > 0.0))
    throw std::invalid_argument("frequency_band: L and h must be positive");
  const double spacing = convention == KmaxConvention::dof ? 0.5 * h : h;
  FrequencyBand band{std::numbers::pi / length, std::numbers::pi / spacing};
  band.validate();
  return band;
}

double reduction_factor(const WeightPair& w, double k, const AnalysisParams& a) {
  if (k == 0.0) throw std::invalid_argument("reduction_factor: k must be nonzero");
  const real q = 2.0L * a.mu_f * a.eta_p * static_cast<real>(k) * k;
  return static_cast<double>(1.0L - w.alpha_p * (1.0L + q) - w.alpha_f * (1.0L + 1.0L / q));
}

WeightPair optimal_weights(const AnalysisParams& a, const FrequencyBand& band) {
  a.validate();
  band.validate();
  const real m = static_cast<real>(a.mu_f) * a.eta_p;
  const real kk = static_cast<real>(band.k_min) * band.k_max;
  const real ks = static_cast<real>(band.k_min) + band.k_max;
  const real prod = 2.0L * m * kk;
  const real denom = 1.0L + prod * prod + m * ks * ks;
  return {static_cast<double>(prod * prod / denom), static_cast<double>(1.0L / denom)};
}

double k_star(const WeightPair& w, const AnalysisParams& a) {
  w.validate();
  const real two_m = 2.0L * a.mu_f * a.eta_p;
  return static_cast<double>(std::pow(static_cast<real>(w.alpha_f) / (w.alpha_p * two_m * two_m), 0.25L));
}

double rho_at_k_star(const WeightPair& w) {
  const real s = std::sqrt(static_cast<real>(w.alpha_f)) + std::sqrt(static_cast<real>(w.alpha_p));
  return static_cast<double>(1.0L - s * s);
}

std::optional<RhoZeros> rho_zeros(const WeightPair& w, const AnalysisParams& a) {
  w.validate();
  const real af = w.alpha_f;
  const real ap = w.alpha_p;
  const real s = 1.0L - af - ap;
  const real disc = s * s - 4.0L * af * ap;
  // A tangent pair has disc == 0 up to roundoff in the weights.
  const real disc_tol = 64.0L * std::numeric_limits<double>::epsilon() * s * s;
  if (disc < -disc_tol || s <= 0.0L) return std::nullopt;
  const real root = disc > 0.0L ? std::sqrt(disc) : 0.0L;
  // Roots in q = 2 mu eta k^2 of ap q^2 - s q + af = 0; the small root via the
  // product q1 q2 = af / ap avoids cancellation.
  const real q2 = (s + root) / (2.0L * ap);
  const real q1 = (af / ap) / q2;
  const real two_m = 2.0L * a.mu_f * a.eta_p;
  return RhoZeros{static_cast<double>(std::sqrt(q1 / two_m)), static_cast<double>(std::sqrt(q2 / two_m))};
}

BoundaryCaseWeights boundary_case_weights(const AnalysisParams& a, const FrequencyBand& band) {
  a.validate();
  band.validate();
  const real m = static_cast<real>(a.mu_f) * a.eta_p;
  const real prod = 2.0L * m * band.k_min * band.k_max;
  const real inv = 1.0L / ((1.0L + prod) * (1.0L + prod));
  BoundaryCaseWeights out;
  out.weights = {static_cast<double>(prod * prod * inv), static_cast<double>(inv)};
  out.contraction_guaranteed =
      1.0L + prod > std::sqrt(2.0L * m) * (static_cast<real>(band.k_max) - band.k_min);
  return out;
}

AsymptoticWeights asymptotic_weights(double length, double h, const AnalysisParams& a,
                                     KmaxConvention convention) {
  a.validate();
  const FrequencyBand band = frequency_band(length, h, convention);
  const real L = kPi / band.k_min;
  const real s = kPi / band.k_max;
  const real m = static_cast<real>(a.mu_f) * a.eta_p;
  const real c = 1.0L / (4.0L * kPi * kPi * m + L * L);
  AsymptoticWeights out;
  out.c_nn = static_cast<double>(c);
  out.alpha_f = static_cast<double>(4.0L * kPi * kPi * m * c * (1.0L - 2.0L * L * c * s));
  out.alpha_p = static_cast<double>(L * L / (kPi * kPi * m) * c * s * s);
  out.rho_at_k_max = static_cast<double>(-L * L * c + (8.0L * kPi * kPi * m * L + 4.0L * L * L * L) * c * c * s);
  return out;
}

double mode_composition_oracle(double lambda0, double k, const WeightPair& w,
                               const AnalysisParams& a, int m) {
  if (!(k > 0.0)) throw std::invalid_argument("mode_composition_oracle: k must be positive");
  if (m < 0) throw std::invalid_argument("mode_composition_oracle: m must be non-negative");
  const real mu = a.mu_f;
  const real eta = a.eta_p;
  const real kk = k;
  real lambda = lambda0;
  for (int it = 0; it < m; ++it) {
    // Stokes, u_1(0) = lambda: u_1 = (U + P x / (2 mu)) e^{|k| x}, p_f = P e^{|k| x}.
    const real u_amp = lambda;
    // Darcy with flux lambda: p_p = Phi e^{-|k| x sqrt(eta2/eta1)}.
    const real phi = lambda / (eta * kk);
    // sigma = -2 mu d_x u_1 + p_f - p_p at x = 0; the P terms cancel.
    const real sigma = -2.0L * mu * kk * u_amp - phi;
    // Stokes with normal stress sigma: v_1(0) = -sigma / (2 mu |k|).
    const real v_normal = -sigma / (2.0L * mu * kk);
    // Darcy with trace sigma: eta1 d_x q_p(0) = -eta_p |k| sigma.
    const real q_flux = -eta * kk * sigma;
    lambda = lambda - (w.alpha_f * v_normal + w.alpha_p * q_flux);
  }
  return static_cast<double>(lambda);
}

double sampled_max_abs_rho(const WeightPair& w, const AnalysisParams& a, const FrequencyBand& band,
                           int k_samples) {
  band.validate();
  if (k_samples < 2) throw std::invalid_argument("sampled_max_abs_rho: need >= 2 samples");
  const double ratio = std::log(band.k_max / band.k_min);
  double best = std::max(std::abs(reduction_factor(w, band.k_min, a)),
                         std::abs(reduction_factor(w, band.k_max, a)));
  for (int i = 1; i + 1 < k_samples; ++i) {
    const double k = band.k_min * std::exp(ratio * i / (k_samples - 1));
    best = std::max(best, std::abs(reduction_factor(w, k, a)));
  }
  return best;
}

namespace {

// Sampled max |rho|, abandoning the scan once it exceeds `cutoff`.
double bounded_max_abs_rho(const WeightPair& w, const AnalysisParams& a, const FrequencyBand& band,
                           int k_samples, double cutoff) {
  const double ratio = std::log(band.k_max / band.k_min);
  double best = std::max(std::abs(reduction_factor(w, band.k_min, a)),
                         std::abs(reduction_factor(w, band.k_max, a)));
  for (int i = 1; i + 1 < k_samples && best <= cutoff; ++i) {
    const double k = band.k_min * std::exp(ratio * i / (k_samples - 1));
    best = std::max(best, std::abs(reduction_factor(w, k, a)));
  }
  return best;
}

struct GridBest {
  double log_f = 0.0;
  double log_p = 0.0;
  double value = std::numeric_limits<double>::infinity();
};

void scan_grid(const AnalysisParams& a, const FrequencyBand& band, int k_samples,
               double f_lo, double f_hi, double p_lo, double p_hi, int n, GridBest& best) {
  for (int i = 0; i < n; ++i) {
    const double lf = n == 1 ? f_lo : f_lo + (f_hi - f_lo) * i / (n - 1);
    for (int j = 0; j < n; ++j) {
      const double lp = n == 1 ? p_lo : p_lo + (p_hi - p_lo) * j / (n - 1);
      const WeightPair w{std::pow(10.0, lf), std::pow(10.0, lp)};
      const double v = bounded_max_abs_rho(w, a, band, k_samples, best.value);
      if (v < best.value) best = {lf, lp, v};
    }
  }
}

}  // namespace

MinmaxResult minmax_oracle(const AnalysisParams& a, const FrequencyBand& band, const GridSpec& grid) {
  a.validate();
  band.validate();
  if (grid.points_per_axis < 2 || !(grid.log10_min < grid.log10_max))
    throw std::invalid_argument("minmax_oracle: invalid grid");
  GridBest best;
  scan_grid(a, band, grid.k_samples, grid.log10_min, grid.log10_max, grid.log10_min,
            grid.log10_max, grid.points_per_axis, best);
  MinmaxResult out{{std::pow(10.0, best.log_f), std::pow(10.0, best.log_p)}, best.value};
  if (grid.polish_rounds <= 0) return out;

  // max |rho| is convex in the linear weights, so nested golden-section
  // searches converge to the global minimum regardless of the grid.
  const double hi = std::pow(10.0, grid.log10_max);
  const auto golden = [&](auto&& f) {
    constexpr double r = 0.6180339887498949;
    double lo = 0.0, up = hi;
    double x1 = up - r * (up - lo), x2 = lo + r * (up - lo);
    double f1 = f(x1), f2 = f(x2);
    for (int i = 0; i < grid.polish_rounds; ++i) {
      if (f1 <= f2) {
        up = x2;
        x2 = x1;
        f2 = f1;
        x1 = up - r * (up - lo);
        f1 = f(x1);
      } else {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + r * (up - lo);
        f2 = f(x2);
      }
    }
    return f1 <= f2 ? std::pair{x1, f1} : std::pair{x2, f2};
  };
  double best_p = 0.0;
  const auto inner = [&](double af) {
    const auto [ap, v] = golden([&](double p) { return sampled_max_abs_rho({af, p}, a, band, grid.k_samples); });
    best_p = ap;
    return v;
  };
  const auto [af, v] = golden(inner);
  inner(af);
  if (v < out.max_abs_rho) out = {{af, best_p}, v};
  return out;
}

std::vector<std::pair<double, double>> rho_scan(const WeightPair& w, const AnalysisParams& a,
                                                const FrequencyBand& band, int samples) {
  band.validate();
  if (samples < 2) throw std::invalid_argument("rho_scan: need >= 2 samples");
  std::vector<std::pair<double, double>> out;
  out.reserve(static_cast<std::size_t>(samples));
  const double ratio = std::log(band.k_max / band.k_min);
  for (int i = 0; i < samples; ++i) {
    double k = band.k_min * std::exp(ratio * i / (samples - 1));
    if (i == samples - 1) k = band.k_max;
    out.emplace_back(k, reduction_factor(w, k, a));
  }
  return out;
}

}  // namespace sdnn
