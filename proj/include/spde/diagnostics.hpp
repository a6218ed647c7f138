#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "spde/integrators.hpp"
#include "spde/operators.hpp"
#include "spde/problems.hpp"

namespace spde {

struct RateFit {
  std::vector<double> taus;
  std::vector<double> errors;
  std::vector<double> stderrs;  // empty for deterministic fits
  double slope = 0.0;
  double intercept = 0.0;  // log-space intercept; exp(intercept) is the constant
  double residual = 0.0;   // rms log residual
  bool ok = false;
  std::string diagnostic;
};

/// Least-squares slope of log(error) against log(tau). Needs >= 3 strictly
/// positive pairs.
RateFit fit_rate(std::span<const double> taus, std::span<const double> errors);

/// Closed-form per-mode variances of the F = 0 schemes started from zero:
///   exact/exponential: (1 - e^{-2 N tau lambda})/(2 lambda)
///   modified:          (1 - (1+tau lambda)^{-2N})/(2 lambda)
///   standard:          (1 - (1+tau lambda)^{-2N})/(lambda (2 + tau lambda))
/// n_steps < 0 selects the stationary law. variance_at extends past the
/// retained modes with lambda_j = (j pi)^2 for tail analysis.
struct ModeVarianceTable {
  Scheme scheme = Scheme::modified;
  double tau = 0.0;
  long n_steps = -1;
  std::vector<double> lambdas;
  std::vector<double> variances;

  bool stationary() const { return n_steps < 0; }
  double variance_at(long j) const;
};

ModeVarianceTable mode_variances(Scheme scheme, const SpectralOperator& op, double tau,
                                 long n_steps);

/// Weighted moment sum_j lambda_j^{2 alpha} v_j over the retained modes, plus
/// convergence flags for the infinite sum. The doubling test compares the
/// increments of consecutive partial-sum doublings (ratio >= ~1 means the
/// terms decay no faster than 1/j, i.e. divergence); increments below 1e-8
/// short-circuit to convergence. The analytic flag encodes the stationary-law
/// thresholds alpha < 1/4 (exact/modified) and alpha < 1/2 (standard).
struct SobolevMoment {
  double value = 0.0;
  bool tail_converges = false;
  bool analytic_converges = false;
  double increment_ratio = 0.0;
};

SobolevMoment sobolev_moment(const ModeVarianceTable& table, double alpha);

/// Feldman-Hajek mode sums: sum_j (1+tau lambda_j)^{-2N} and sum_j e^{-2N tau lambda_j}
/// over the retained modes, with integral-comparison tail bounds. Both finite
/// means the equivalence indicator passes.
struct FeldmanHajekIndicator {
  double modified_sum = 0.0;
  double exact_sum = 0.0;
  double modified_tail_bound = 0.0;
  double exact_tail_bound = 0.0;
};

FeldmanHajekIndicator feldman_hajek_indicator(const SpectralOperator& op, double tau, long N);

/// Hellinger distance between centered diagonal Gaussians:
/// H = sqrt(1 - prod_j rho_j), rho_j = (2 sqrt(v1_j v2_j)/(v1_j + v2_j))^{1/2}.
/// Equal entries contribute affinity exactly 1.
double hellinger_diag(std::span<const double> v1, std::span<const double> v2);

/// Spatial quadratic variation sum_{i=0}^{J} (x_{i+1}-x_i)^2 with implicit
/// Dirichlet zeros; ~1/2 for the stationary modified field, smaller for the
/// over-smoothed standard one.
double quadratic_variation(const FieldState& x);

enum class WeakFunctional { squared_norm, alpha_moment };

/// |sum_j lambda_j^{2 alpha} (v_scheme,j(T, tau) - v_exact,j(T))| per tau with
/// a fitted slope; F = 0 closed forms, points below 1e-13 dropped.
RateFit deterministic_weak_error(const SpectralOperator& op, std::span<const double> taus,
                                 double T, Scheme scheme, WeakFunctional functional,
                                 double alpha = 0.0);

/// Stationary weighted bias |sum_j lambda_j^{2 alpha}(v_scheme,inf - 1/(2 lambda_j))|
/// in closed form; exactly 0 for the modified and exponential schemes.
double stationary_bias(Scheme scheme, const SpectralOperator& op, double tau, double alpha = 0.0);

/// Coupled multilevel Monte-Carlo experiment. All schemes and levels are
/// driven by one fine Brownian field per replica: each fine step draws the
/// increment together with the exact stochastic-convolution increment
/// (conditionally-consistent refinement), coarse levels aggregate them.
struct CoupledConfig {
  int J = 64;
  double T = 0.5;
  std::vector<double> taus;  // coarse steps; each must be an even multiple of tau_ref
  int ref_factor = 8;        // tau_ref = min(taus) / ref_factor
  long replicas = 1000;
  std::uint64_t seed = 0;
  int threads = 1;
  long chunk = 64;
  ProblemSpec problem;
};

using Functional = std::function<double(std::span<const double>)>;  // modal coordinates

struct LevelStats {
  double mean = 0.0;
  double se = 0.0;
};

struct CoupledResult {
  std::vector<double> taus;
  double tau_ref = 0.0;
  long replicas = 0;
  std::map<Scheme, std::vector<LevelStats>> strong;  // E ||X - X_ref||_h per level
  std::map<Scheme, std::vector<LevelStats>> weak;    // E [phi(X) - phi(X_ref)] per level
};

CoupledResult run_coupled_levels(const CoupledConfig& cfg, std::span<const Scheme> schemes,
                                 const Functional& phi);

/// Fit of the coupled strong errors for one scheme (points below 1e-13 dropped).
RateFit strong_error_fit(const CoupledResult& res, Scheme scheme);

/// Fit of |weak difference| over the points exceeding 3 standard errors;
/// refused with a diagnostic when fewer than 3 points survive.
RateFit mc_weak_error_fit(const CoupledResult& res, Scheme scheme);

/// One-scheme conveniences wrapping run_coupled_levels.
RateFit strong_error(const CoupledConfig& cfg, Scheme scheme);
RateFit mc_weak_error(const CoupledConfig& cfg, Scheme scheme, const Functional& phi);

/// phi(x) = exp(-|x|_h^2) in modal coordinates (Parseval).
double exp_neg_sqnorm(std::span<const double> modal);

}  // namespace spde
