#include "spde/integrators.hpp"

#include <cmath>
#include <stdexcept>

namespace spde {

namespace {

void add_scaled(std::vector<double>& y, const std::vector<double>& x, double c) {
  for (size_t i = 0; i < y.size(); ++i) y[i] += c * x[i];
}

void check_finite(const FieldState& x, long step) {
  double s = 0.0;
  for (double v : x.values) s += v * v;
  if (!std::isfinite(s)) {
    throw std::runtime_error("run_trajectory: non-finite state at step " + std::to_string(step));
  }
}

}  // namespace

Scheme scheme_by_name(const std::string& name) {
  if (name == "modified") return Scheme::modified;
  if (name == "modified_bform") return Scheme::modified_bform;
  if (name == "modified_expform") return Scheme::modified_expform;
  if (name == "standard") return Scheme::standard;
  if (name == "exponential") return Scheme::exponential;
  if (name == "exact_ou") return Scheme::exact_ou;
  throw std::invalid_argument("scheme_by_name: unknown scheme '" + name + "'");
}

const char* scheme_name(Scheme s) {
  switch (s) {
    case Scheme::modified: return "modified";
    case Scheme::modified_bform: return "modified_bform";
    case Scheme::modified_expform: return "modified_expform";
    case Scheme::standard: return "standard";
    case Scheme::exponential: return "exponential";
    case Scheme::exact_ou: return "exact_ou";
  }
  return "?";
}

FieldState apply_drift(const ProblemSpec& p, const SineTransform* dst, const FieldState& x) {
  if (!p.has_drift()) return FieldState::zeros(x.size(), x.rep);
  if (x.rep == Representation::nodal) return apply_F(p, x);
  if (dst == nullptr) throw std::invalid_argument("apply_drift: modal drift needs a SineTransform");
  return dst->to_modal(apply_F(p, dst->to_nodal(x)));
}

FieldState step_modified(const ResolventFactors& f, const ProblemSpec& p, const SineTransform* dst,
                         const FieldState& x, const FieldState& g1, const FieldState& g2) {
  FieldState drifted = x;
  if (p.has_drift()) add_scaled(drifted.values, apply_drift(p, dst, x).values, f.tau);
  FieldState out = apply_A_tau(f, drifted);
  const FieldState noise = sample_modified_noise(f, g1, g2);
  add_scaled(out.values, noise.values, 1.0);
  return out;
}

FieldState step_modified_bform(const SpectralOperator& op, double tau, const ProblemSpec& p,
                               const SineTransform* dst, const FieldState& x, const FieldState& g) {
  require_rep(x, Representation::modal, "step_modified_bform");
  require_size(x, op.J, "step_modified_bform");
  const FieldState drift = apply_drift(p, dst, x);
  FieldState out = FieldState::zeros(op.J, Representation::modal);
  const double sqrt_tau = std::sqrt(tau);
  for (int j = 0; j < op.J; ++j) {
    const double lam = op.lambdas[static_cast<size_t>(j)];
    const double a = 1.0 / (1.0 + tau * lam);
    const double b = std::sqrt(2.0 + tau * lam) / (std::sqrt(2.0) * (1.0 + tau * lam));
    out.values[static_cast<size_t>(j)] =
        a * (x.values[static_cast<size_t>(j)] + tau * drift.values[static_cast<size_t>(j)]) +
        sqrt_tau * b * g.values[static_cast<size_t>(j)];
  }
  return out;
}

FieldState step_modified_expform(const SpectralOperator& op, double tau, const ProblemSpec& p,
                                 const SineTransform* dst, const FieldState& x,
                                 const FieldState& g) {
  require_rep(x, Representation::modal, "step_modified_expform");
  require_size(x, op.J, "step_modified_expform");
  const FieldState drift = apply_drift(p, dst, x);
  FieldState out = FieldState::zeros(op.J, Representation::modal);
  for (int j = 0; j < op.J; ++j) {
    const double lam = op.lambdas[static_cast<size_t>(j)];
    const double lg = std::log1p(tau * lam);
    const double lam_tau = lg / tau;
    const double q = lg / (tau * lam);
    const double mean_factor = std::exp(-tau * lam_tau);
    const double drift_factor = (1.0 - mean_factor) / lam_tau * q;
    const double noise_var = q * (1.0 - std::exp(-2.0 * tau * lam_tau)) / (2.0 * lam_tau);
    out.values[static_cast<size_t>(j)] =
        mean_factor * x.values[static_cast<size_t>(j)] +
        drift_factor * drift.values[static_cast<size_t>(j)] +
        std::sqrt(noise_var) * g.values[static_cast<size_t>(j)];
  }
  return out;
}

FieldState step_standard(const ResolventFactors& f, const ProblemSpec& p, const SineTransform* dst,
                         const FieldState& x, const FieldState& g) {
  require_rep(g, f.representation(), "step_standard");
  FieldState inner = x;
  if (p.has_drift()) add_scaled(inner.values, apply_drift(p, dst, x).values, f.tau);
  add_scaled(inner.values, g.values, std::sqrt(f.tau));
  return apply_A_tau(f, inner);
}

FieldState step_exponential(const SpectralOperator& op, double tau, const ProblemSpec& p,
                            const SineTransform* dst, const FieldState& x, NoiseStream& stream) {
  require_rep(x, Representation::modal, "step_exponential");
  require_size(x, op.J, "step_exponential");
  const FieldState drift = apply_drift(p, dst, x);
  FieldState out = FieldState::zeros(op.J, Representation::modal);
  for (int j = 0; j < op.J; ++j) {
    const double lam = op.lambdas[static_cast<size_t>(j)];
    const double e = std::exp(-tau * lam);
    const double noise_sd = std::sqrt((1.0 - e * e) / (2.0 * lam));
    out.values[static_cast<size_t>(j)] = e * x.values[static_cast<size_t>(j)] +
                                         (1.0 - e) / lam * drift.values[static_cast<size_t>(j)] +
                                         noise_sd * stream.normal();
  }
  return out;
}

FieldState step_exact_ou(const SpectralOperator& op, double tau, const FieldState& x,
                         NoiseStream& stream) {
  static const ProblemSpec kOu = make_ou();
  return step_exponential(op, tau, kOu, nullptr, x, stream);
}

TrajectoryResult run_trajectory(const SchemeConfig& cfg, const SpectralOperator& op,
                                const ProblemSpec& p, const FieldState& x0, NoiseStream& stream,
                                RecordMode record) {
  require_rep(x0, Representation::modal, "run_trajectory(spectral)");
  require_size(x0, op.J, "run_trajectory(spectral)");
  if (cfg.n_steps < 0 || !(cfg.tau > 0.0))
    throw std::invalid_argument("run_trajectory: need tau > 0 and n_steps >= 0");

  SineTransform dst(op.J);
  ResolventFactors f;
  if (cfg.scheme == Scheme::modified || cfg.scheme == Scheme::standard)
    f = factorize_resolvent(op, cfg.tau);

  TrajectoryResult res;
  res.final_state = x0;
  if (record == RecordMode::path) {
    res.path.times.push_back(0.0);
    res.path.states.push_back(dst.to_nodal(x0));
  }
  for (long n = 0; n < cfg.n_steps; ++n) {
    FieldState& x = res.final_state;
    switch (cfg.scheme) {
      case Scheme::modified: {
        const FieldState g1 = stream.draw_cylindrical(op.J, Representation::modal);
        const FieldState g2 = stream.draw_cylindrical(op.J, Representation::modal);
        x = step_modified(f, p, &dst, x, g1, g2);
        break;
      }
      case Scheme::modified_bform: {
        const FieldState g = stream.draw_cylindrical(op.J, Representation::modal);
        x = step_modified_bform(op, cfg.tau, p, &dst, x, g);
        break;
      }
      case Scheme::modified_expform: {
        const FieldState g = stream.draw_cylindrical(op.J, Representation::modal);
        x = step_modified_expform(op, cfg.tau, p, &dst, x, g);
        break;
      }
      case Scheme::standard: {
        const FieldState g = stream.draw_cylindrical(op.J, Representation::modal);
        x = step_standard(f, p, &dst, x, g);
        break;
      }
      case Scheme::exponential:
        x = step_exponential(op, cfg.tau, p, &dst, x, stream);
        break;
      case Scheme::exact_ou:
        x = step_exact_ou(op, cfg.tau, x, stream);
        break;
    }
    check_finite(x, n + 1);
    if (record == RecordMode::path) {
      res.path.times.push_back(cfg.tau * static_cast<double>(n + 1));
      res.path.states.push_back(dst.to_nodal(x));
    }
  }
  return res;
}

TrajectoryResult run_trajectory(const SchemeConfig& cfg, const FDOperator& op,
                                const ProblemSpec& p, const FieldState& x0, NoiseStream& stream,
                                RecordMode record) {
  require_rep(x0, Representation::nodal, "run_trajectory(fd)");
  require_size(x0, op.J, "run_trajectory(fd)");
  if (cfg.scheme != Scheme::modified && cfg.scheme != Scheme::standard)
    throw std::invalid_argument("run_trajectory(fd): FD route supports modified and standard only");
  if (cfg.n_steps < 0 || !(cfg.tau > 0.0))
    throw std::invalid_argument("run_trajectory: need tau > 0 and n_steps >= 0");

  const ResolventFactors f = factorize_resolvent(op, cfg.tau);
  TrajectoryResult res;
  res.final_state = x0;
  if (record == RecordMode::path) {
    res.path.times.push_back(0.0);
    res.path.states.push_back(x0);
  }
  for (long n = 0; n < cfg.n_steps; ++n) {
    FieldState& x = res.final_state;
    if (cfg.scheme == Scheme::modified) {
      const FieldState g1 = stream.draw_cylindrical(op.J, Representation::nodal);
      const FieldState g2 = stream.draw_cylindrical(op.J, Representation::nodal);
      x = step_modified(f, p, nullptr, x, g1, g2);
    } else {
      const FieldState g = stream.draw_cylindrical(op.J, Representation::nodal);
      x = step_standard(f, p, nullptr, x, g);
    }
    check_finite(x, n + 1);
    if (record == RecordMode::path) {
      res.path.times.push_back(cfg.tau * static_cast<double>(n + 1));
      res.path.states.push_back(x);
    }
  }
  return res;
}

}  // namespace spde
