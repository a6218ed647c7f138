#pragma once

#include "spde/noise.hpp"
#include "spde/operators.hpp"
#include "spde/problems.hpp"

namespace spde {

struct SlowFastState {
  FieldState X;  // slow component
  FieldState Y;  // fast component
  double epsilon = 1.0;
};

/// One step of the asymptotic-preserving scheme: the fast component advances
/// with the modified-Euler noise operators at step tau/epsilon scaled by
/// sigma(X_n); the slow component uses A_tau with the fresh Y_{n+1} in the
/// drift. `slow` holds factors at tau, `fast` at tau/epsilon; both spectral or
/// both FD. dst is needed for modal states (G is applied nodally).
SlowFastState step_ap(const ResolventFactors& slow, const ResolventFactors& fast,
                      const SlowFastSpec& sf, const SineTransform* dst, const SlowFastState& state,
                      NoiseStream& stream);

/// One step of the limiting scheme X' = A_tau(X + tau G(X, sigma(X) Z)) with a
/// fresh draw Z of nu = N(0, Lambda^{-1}/2) per step; spectral only.
FieldState step_limiting(const SpectralOperator& op, const ResolventFactors& slow,
                         const SlowFastSpec& sf, const SineTransform& dst, const FieldState& x,
                         NoiseStream& stream);

/// Monte-Carlo average over M draws of Z ~ nu of G(x, sigma(x) Z), with
/// per-node standard errors; spectral route, result nodal.
struct AveragedDrift {
  FieldState mean;               // nodal
  std::vector<double> stderrs;  // per node
};

AveragedDrift averaged_drift_mc(const FieldState& x, const SlowFastSpec& sf,
                                const SpectralOperator& op, const SineTransform& dst, long M,
                                NoiseStream& stream);

}  // namespace spde
