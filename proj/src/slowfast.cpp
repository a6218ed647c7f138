#include "spde/slowfast.hpp"

#include <cmath>
#include <stdexcept>

namespace spde {

namespace {

// Pointwise G through the nodal representation; x and y share a representation.
FieldState apply_G(const SlowFastSpec& sf, const SineTransform* dst, const FieldState& x,
                   const FieldState& y) {
  if (x.rep != y.rep || x.size() != y.size())
    throw std::invalid_argument("apply_G: mismatched slow/fast fields");
  if (x.rep == Representation::nodal) {
    FieldState out = FieldState::zeros(x.size(), Representation::nodal);
    for (int i = 0; i < x.size(); ++i)
      out.values[static_cast<size_t>(i)] =
          sf.G(x.values[static_cast<size_t>(i)], y.values[static_cast<size_t>(i)]);
    return out;
  }
  if (dst == nullptr) throw std::invalid_argument("apply_G: modal fields need a SineTransform");
  const FieldState xn = dst->to_nodal(x);
  const FieldState yn = dst->to_nodal(y);
  FieldState gn = FieldState::zeros(x.size(), Representation::nodal);
  for (int i = 0; i < x.size(); ++i)
    gn.values[static_cast<size_t>(i)] =
        sf.G(xn.values[static_cast<size_t>(i)], yn.values[static_cast<size_t>(i)]);
  return dst->to_modal(gn);
}

}  // namespace

SlowFastState step_ap(const ResolventFactors& slow, const ResolventFactors& fast,
                      const SlowFastSpec& sf, const SineTransform* dst, const SlowFastState& state,
                      NoiseStream& stream) {
  if (!(state.epsilon > 0.0)) throw std::invalid_argument("step_ap: epsilon must be positive");
  if (slow.J != fast.J || slow.mode != fast.mode)
    throw std::invalid_argument("step_ap: slow/fast factors mismatch");
  const Representation rep = slow.representation();
  require_rep(state.X, rep, "step_ap");
  require_rep(state.Y, rep, "step_ap");

  const double sig = sf.sigma(state.X);
  const FieldState g1 = stream.draw_cylindrical(fast.J, rep);
  const FieldState g2 = stream.draw_cylindrical(fast.J, rep);
  FieldState noise = sample_modified_noise(fast, g1, g2);

  SlowFastState next;
  next.epsilon = state.epsilon;
  next.Y = apply_A_tau(fast, state.Y);
  for (int i = 0; i < fast.J; ++i)
    next.Y.values[static_cast<size_t>(i)] += sig * noise.values[static_cast<size_t>(i)];

  const FieldState drift = apply_G(sf, dst, state.X, next.Y);
  FieldState inner = state.X;
  for (int i = 0; i < slow.J; ++i)
    inner.values[static_cast<size_t>(i)] += slow.tau * drift.values[static_cast<size_t>(i)];
  next.X = apply_A_tau(slow, inner);
  return next;
}

FieldState step_limiting(const SpectralOperator& op, const ResolventFactors& slow,
                         const SlowFastSpec& sf, const SineTransform& dst, const FieldState& x,
                         NoiseStream& stream) {
  if (slow.mode != FactorMode::spectral)
    throw std::invalid_argument("step_limiting: spectral factors required");
  require_rep(x, Representation::modal, "step_limiting");
  require_size(x, op.J, "step_limiting");

  // Z ~ nu: per-mode N(0, 1/(2 lambda_j))
  FieldState z = FieldState::zeros(op.J, Representation::modal);
  for (int j = 0; j < op.J; ++j)
    z.values[static_cast<size_t>(j)] =
        stream.normal() / std::sqrt(2.0 * op.lambdas[static_cast<size_t>(j)]);
  const double sig = sf.sigma(x);
  for (double& v : z.values) v *= sig;

  const FieldState drift = apply_G(sf, &dst, x, z);
  FieldState inner = x;
  for (int j = 0; j < op.J; ++j)
    inner.values[static_cast<size_t>(j)] += slow.tau * drift.values[static_cast<size_t>(j)];
  return apply_A_tau(slow, inner);
}

AveragedDrift averaged_drift_mc(const FieldState& x, const SlowFastSpec& sf,
                                const SpectralOperator& op, const SineTransform& dst, long M,
                                NoiseStream& stream) {
  if (M < 1) throw std::invalid_argument("averaged_drift_mc: M must be >= 1");
  require_rep(x, Representation::modal, "averaged_drift_mc");
  require_size(x, op.J, "averaged_drift_mc");

  const FieldState xn = dst.to_nodal(x);
  const double sig = sf.sigma(x);
  std::vector<double> sum(static_cast<size_t>(op.J), 0.0), sumsq(static_cast<size_t>(op.J), 0.0);
  FieldState z = FieldState::zeros(op.J, Representation::modal);
  std::vector<double> zn(static_cast<size_t>(op.J));
  for (long r = 0; r < M; ++r) {
    for (int j = 0; j < op.J; ++j)
      z.values[static_cast<size_t>(j)] =
          sig * stream.normal() / std::sqrt(2.0 * op.lambdas[static_cast<size_t>(j)]);
    dst.to_nodal(z.values, zn);
    for (int i = 0; i < op.J; ++i) {
      const double g = sf.G(xn.values[static_cast<size_t>(i)], zn[static_cast<size_t>(i)]);
      sum[static_cast<size_t>(i)] += g;
      sumsq[static_cast<size_t>(i)] += g * g;
    }
  }
  AveragedDrift out;
  out.mean = FieldState::zeros(op.J, Representation::nodal);
  out.stderrs.resize(static_cast<size_t>(op.J));
  for (int i = 0; i < op.J; ++i) {
    const double m = sum[static_cast<size_t>(i)] / static_cast<double>(M);
    out.mean.values[static_cast<size_t>(i)] = m;
    const double var = std::max(0.0, sumsq[static_cast<size_t>(i)] / static_cast<double>(M) - m * m);
    out.stderrs[static_cast<size_t>(i)] = std::sqrt(var / static_cast<double>(M));
  }
  return out;
}

}  // namespace spde
