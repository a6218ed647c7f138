#pragma once

#include <functional>
#include <span>
#include <vector>

#include "spde/io.hpp"
#include "spde/noise.hpp"
#include "spde/operators.hpp"
#include "spde/problems.hpp"

namespace spde {

/// Metropolis-Hastings proposal: the F = 0 modified Euler step
/// A_tau x + sqrt(tau)(B1 g1 + B2 g2). Its invariant law is nu, which makes
/// the acceptance ratio well defined in any dimension.
FieldState propose(const ResolventFactors& f, const FieldState& x, const FieldState& g1,
                   const FieldState& g2);

/// min(1, exp(2 (V(x) - V(xhat)))); invariant under shifting V by a constant.
double acceptance_prob(double v_x, double v_xhat);

struct ChainOptions {
  long n_steps = 0;
  long burn_in = 0;
  long thin = 1;
};

/// Observables are evaluated on the nodal trace of the chain state.
using Observable = std::function<double(const FieldState&)>;

/// h sum x_i^2, h sum cos(x_i), quadratic variation.
std::vector<Observable> default_observables();

struct ChainStats {
  double acceptance_rate = 0.0;
  long samples = 0;  // post burn-in, thinned
  std::vector<double> means;
  std::vector<double> stderrs;  // batch-means standard errors
};

/// MH chain targeting mu_star = Z^{-1} e^{-2V} dnu. V is cached and
/// recomputed only on acceptance. Modal chains pass dst for the nodal trace;
/// a null dst is valid for nodal (FD) chains. Optional thinned CSV trace.
ChainStats run_chain(const ResolventFactors& f, const ProblemSpec& p, const SineTransform* dst,
                     const ChainOptions& opts, const FieldState& x0, NoiseStream& stream,
                     std::span<const Observable> observables, CsvWriter* trace = nullptr);

/// Multi-chain mode: independent chains on streams split by chain index
/// (one per thread), batch means pooled across chains. Results do not depend
/// on the thread count.
ChainStats run_chains(const ResolventFactors& f, const ProblemSpec& p, const SineTransform* dst,
                      const ChainOptions& opts, const FieldState& x0, std::uint64_t master_seed,
                      int n_chains, int threads, std::span<const Observable> observables);

/// Batch-means standard error of a correlated scalar series.
double batch_means_se(std::span<const double> series);

}  // namespace spde
