#include "spde/mcmc.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "spde/diagnostics.hpp"
#include "spde/parallel.hpp"

namespace spde {

FieldState propose(const ResolventFactors& f, const FieldState& x, const FieldState& g1,
                   const FieldState& g2) {
  FieldState out = apply_A_tau(f, x);
  const FieldState noise = sample_modified_noise(f, g1, g2);
  for (int i = 0; i < f.J; ++i)
    out.values[static_cast<size_t>(i)] += noise.values[static_cast<size_t>(i)];
  return out;
}

double acceptance_prob(double v_x, double v_xhat) {
  if (std::isnan(v_x) || std::isnan(v_xhat))
    throw std::invalid_argument("acceptance_prob: NaN potential");
  const double diff = 2.0 * (v_x - v_xhat);
  return diff >= 0.0 ? 1.0 : std::exp(diff);
}

std::vector<Observable> default_observables() {
  return {
      [](const FieldState& x) {
        double s = 0.0;
        for (double v : x.values) s += v * v;
        return x.mesh() * s;
      },
      [](const FieldState& x) {
        double s = 0.0;
        for (double v : x.values) s += std::cos(v);
        return x.mesh() * s;
      },
      [](const FieldState& x) { return quadratic_variation(x); },
  };
}

double batch_means_se(std::span<const double> series) {
  const long n = static_cast<long>(series.size());
  if (n < 4) return std::numeric_limits<double>::infinity();
  const long nb = std::max<long>(2, static_cast<long>(std::floor(std::sqrt(static_cast<double>(n)))));
  const long bs = n / nb;
  double grand = 0.0;
  for (long i = 0; i < nb * bs; ++i) grand += series[static_cast<size_t>(i)];
  grand /= static_cast<double>(nb * bs);
  double var = 0.0;
  for (long b = 0; b < nb; ++b) {
    double m = 0.0;
    for (long i = b * bs; i < (b + 1) * bs; ++i) m += series[static_cast<size_t>(i)];
    m /= static_cast<double>(bs);
    var += (m - grand) * (m - grand);
  }
  var /= static_cast<double>(nb - 1);
  return std::sqrt(var / static_cast<double>(nb));
}

ChainStats run_chain(const ResolventFactors& f, const ProblemSpec& p, const SineTransform* dst,
                     const ChainOptions& opts, const FieldState& x0, NoiseStream& stream,
                     std::span<const Observable> observables, CsvWriter* trace) {
  if (opts.n_steps < 1) throw std::invalid_argument("run_chain: n_steps must be >= 1");
  if (opts.burn_in >= opts.n_steps) throw std::invalid_argument("run_chain: burn_in < n_steps required");
  if (opts.thin < 1) throw std::invalid_argument("run_chain: thin must be >= 1");
  const bool flat = !p.has_potential();  // V == 0: every proposal accepted
  const Representation rep = f.representation();
  require_rep(x0, rep, "run_chain");
  require_size(x0, f.J, "run_chain");
  if (rep == Representation::modal && dst == nullptr)
    throw std::invalid_argument("run_chain: modal chain needs a SineTransform");

  auto nodal_trace = [&](const FieldState& x) {
    return rep == Representation::nodal ? x : dst->to_nodal(x);
  };

  FieldState x = x0;
  double v = flat ? 0.0 : evaluate_V(p, nodal_trace(x));
  long accepted = 0;
  std::vector<std::vector<double>> series(observables.size());

  for (long n = 0; n < opts.n_steps; ++n) {
    const FieldState g1 = stream.draw_cylindrical(f.J, rep);
    const FieldState g2 = stream.draw_cylindrical(f.J, rep);
    FieldState xhat = propose(f, x, g1, g2);
    const double u = stream.uniform();
    if (flat) {
      x = std::move(xhat);
      ++accepted;
    } else {
      const double vhat = evaluate_V(p, nodal_trace(xhat));
      if (u <= acceptance_prob(v, vhat)) {
        x = std::move(xhat);
        v = vhat;
        ++accepted;
      }
    }
    if (n >= opts.burn_in && (n - opts.burn_in) % opts.thin == 0) {
      const FieldState xt = nodal_trace(x);
      std::vector<double> row;
      row.reserve(observables.size() + 1);
      row.push_back(static_cast<double>(n));
      for (size_t o = 0; o < observables.size(); ++o) {
        const double val = observables[o](xt);
        series[o].push_back(val);
        row.push_back(val);
      }
      if (trace != nullptr) trace->row(row);
    }
  }

  ChainStats stats;
  stats.acceptance_rate = static_cast<double>(accepted) / static_cast<double>(opts.n_steps);
  stats.samples = series.empty() ? 0 : static_cast<long>(series[0].size());
  for (const auto& s : series) {
    double m = 0.0;
    for (double val : s) m += val;
    m /= static_cast<double>(s.size());
    stats.means.push_back(m);
    stats.stderrs.push_back(batch_means_se(s));
  }
  return stats;
}

ChainStats run_chains(const ResolventFactors& f, const ProblemSpec& p, const SineTransform* dst,
                      const ChainOptions& opts, const FieldState& x0, std::uint64_t master_seed,
                      int n_chains, int threads, std::span<const Observable> observables) {
  if (n_chains < 1) throw std::invalid_argument("run_chains: n_chains must be >= 1");
  const auto results = run_chunked<ChainStats>(
      n_chains, 1, threads, [&](long chain, long) {
        NoiseStream stream(master_seed, static_cast<std::uint64_t>(chain));
        return run_chain(f, p, dst, opts, x0, stream, observables);
      });
  ChainStats pooled;
  pooled.means.assign(observables.size(), 0.0);
  pooled.stderrs.assign(observables.size(), 0.0);
  for (const auto& r : results) {
    pooled.acceptance_rate += r.acceptance_rate;
    pooled.samples += r.samples;
    for (size_t o = 0; o < observables.size(); ++o) {
      pooled.means[o] += r.means[o];
      pooled.stderrs[o] += r.stderrs[o] * r.stderrs[o];
    }
  }
  const double k = static_cast<double>(n_chains);
  pooled.acceptance_rate /= k;
  for (size_t o = 0; o < observables.size(); ++o) {
    pooled.means[o] /= k;
    pooled.stderrs[o] = std::sqrt(pooled.stderrs[o]) / k;  // independent chains
  }
  return pooled;
}

}  // namespace spde
