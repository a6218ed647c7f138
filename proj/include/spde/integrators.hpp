#pragma once

#include <optional>
#include <string>
#include <vector>

#include "spde/noise.hpp"
#include "spde/operators.hpp"
#include "spde/problems.hpp"

namespace spde {

enum class Scheme { modified, modified_bform, modified_expform, standard, exponential, exact_ou };

Scheme scheme_by_name(const std::string& name);
const char* scheme_name(Scheme s);

struct SchemeConfig {
  double tau = 0.0;
  long n_steps = 0;
  Scheme scheme = Scheme::modified;

  double horizon() const { return tau * static_cast<double>(n_steps); }
};

/// F(x) in the representation of x. Nemytskii semantics: nodal fields are fed
/// to f directly; modal fields make one DST round trip (dst required).
FieldState apply_drift(const ProblemSpec& p, const SineTransform* dst, const FieldState& x);

/// X' = A_tau (x + tau F(x)) + sqrt(tau) (B1 g1 + B2 g2); the practical
/// two-draw formulation, valid for spectral and FD factors.
FieldState step_modified(const ResolventFactors& f, const ProblemSpec& p, const SineTransform* dst,
                         const FieldState& x, const FieldState& g1, const FieldState& g2);

/// Single-draw formulation with B_tau,jj = sqrt(2 + tau lambda_j) / (sqrt2 (1 + tau lambda_j));
/// spectral only, same one-step Gaussian law as step_modified.
FieldState step_modified_bform(const SpectralOperator& op, double tau, const ProblemSpec& p,
                               const SineTransform* dst, const FieldState& x, const FieldState& g);

/// Accelerated exponential Euler applied to the modified equation, per mode:
/// mean factor e^{-tau lambda_tau} = 1/(1+tau lambda), drift factor
/// lambda_tau^{-1}(1-e^{-tau lambda_tau}) q_tau = tau/(1+tau lambda), noise
/// variance q (1-e^{-2 tau lambda_tau})/(2 lambda_tau). Spectral only.
FieldState step_modified_expform(const SpectralOperator& op, double tau, const ProblemSpec& p,
                                 const SineTransform* dst, const FieldState& x,
                                 const FieldState& g);

/// Standard linear implicit Euler: X' = A_tau (x + tau F(x) + sqrt(tau) g).
FieldState step_standard(const ResolventFactors& f, const ProblemSpec& p, const SineTransform* dst,
                         const FieldState& x, const FieldState& g);

/// Accelerated exponential Euler for the original equation; exact transition
/// in the Ornstein-Uhlenbeck case. Draws its own convolution increment.
FieldState step_exponential(const SpectralOperator& op, double tau, const ProblemSpec& p,
                            const SineTransform* dst, const FieldState& x, NoiseStream& stream);

/// Exact Ornstein-Uhlenbeck transition (exponential scheme with F = 0).
FieldState step_exact_ou(const SpectralOperator& op, double tau, const FieldState& x,
                         NoiseStream& stream);

enum class RecordMode { none, final_state, path };

struct PathRecord {
  std::vector<double> times;
  std::vector<FieldState> states;
};

struct TrajectoryResult {
  FieldState final_state;
  PathRecord path;  // filled when RecordMode::path
};

/// Iterates the configured scheme N times from x0. NaN/overflow aborts with a
/// diagnostic. Spectral route; modal state, drift through dst.
TrajectoryResult run_trajectory(const SchemeConfig& cfg, const SpectralOperator& op,
                                const ProblemSpec& p, const FieldState& x0, NoiseStream& stream,
                                RecordMode record = RecordMode::final_state);

/// FD route; nodal state. Only the modified and standard schemes apply.
TrajectoryResult run_trajectory(const SchemeConfig& cfg, const FDOperator& op,
                                const ProblemSpec& p, const FieldState& x0, NoiseStream& stream,
                                RecordMode record = RecordMode::final_state);

}  // namespace spde
