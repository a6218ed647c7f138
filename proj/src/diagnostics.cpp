#include "spde/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "spde/parallel.hpp"

namespace spde {

namespace {
constexpr double kPi = 3.14159265358979323846264338328;

double pow_int_neg(double base_log, long n) {
  // (e^{base_log})^{-n} computed as exp(-n * base_log)
  return std::exp(-static_cast<double>(n) * base_log);
}
}  // namespace

RateFit fit_rate(std::span<const double> taus, std::span<const double> errors) {
  if (taus.size() != errors.size()) throw std::invalid_argument("fit_rate: length mismatch");
  if (taus.size() < 3) throw std::invalid_argument("fit_rate: need at least 3 points");
  const size_t n = taus.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < n; ++i) {
    if (!(taus[i] > 0.0) || !(errors[i] > 0.0))
      throw std::invalid_argument("fit_rate: entries must be strictly positive");
    const double x = std::log(taus[i]);
    const double y = std::log(errors[i]);
    sx += x; sy += y; sxx += x * x; sxy += x * y;
  }
  RateFit fit;
  fit.taus.assign(taus.begin(), taus.end());
  fit.errors.assign(errors.begin(), errors.end());
  const double denom = n * sxx - sx * sx;
  fit.slope = (n * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / n;
  double ss = 0;
  for (size_t i = 0; i < n; ++i) {
    const double r = std::log(errors[i]) - (fit.intercept + fit.slope * std::log(taus[i]));
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / n);
  fit.ok = true;
  return fit;
}

double ModeVarianceTable::variance_at(long j) const {
  const double lam = j <= static_cast<long>(lambdas.size())
                         ? lambdas[static_cast<size_t>(j - 1)]
                         : (static_cast<double>(j) * kPi) * (static_cast<double>(j) * kPi);
  const double decay_exact = stationary() ? 0.0 : std::exp(-2.0 * n_steps * tau * lam);
  const double decay_implicit = stationary() ? 0.0 : pow_int_neg(std::log1p(tau * lam), 2 * n_steps);
  switch (scheme) {
    case Scheme::exact_ou:
    case Scheme::exponential:
      return (1.0 - decay_exact) / (2.0 * lam);
    case Scheme::modified:
    case Scheme::modified_bform:
    case Scheme::modified_expform:
      return (1.0 - decay_implicit) / (2.0 * lam);
    case Scheme::standard:
      return (1.0 - decay_implicit) / (lam * (2.0 + tau * lam));
  }
  return 0.0;
}

ModeVarianceTable mode_variances(Scheme scheme, const SpectralOperator& op, double tau,
                                 long n_steps) {
  if (!(tau > 0.0)) throw std::invalid_argument("mode_variances: tau must be positive");
  ModeVarianceTable t;
  t.scheme = scheme;
  t.tau = tau;
  t.n_steps = n_steps;
  t.lambdas = op.lambdas;
  t.variances.resize(static_cast<size_t>(op.J));
  for (long j = 1; j <= op.J; ++j) t.variances[static_cast<size_t>(j - 1)] = t.variance_at(j);
  return t;
}

SobolevMoment sobolev_moment(const ModeVarianceTable& table, double alpha) {
  SobolevMoment m;
  for (size_t j = 0; j < table.variances.size(); ++j)
    m.value += std::pow(table.lambdas[j], 2.0 * alpha) * table.variances[j];

  // Doubling test on the closed-form extension: partial sums at
  // J0, 2 J0, ..., compare consecutive increments.
  auto weighted = [&](long j) {
    const double lam = (static_cast<double>(j) * kPi) * (static_cast<double>(j) * kPi);
    return std::pow(lam, 2.0 * alpha) * table.variance_at(j);
  };
  const long j0 = 256;
  double prev_inc = 0.0, inc = 0.0;
  for (long j = j0 + 1; j <= 2 * j0; ++j) prev_inc += weighted(j);
  for (long j = 2 * j0 + 1; j <= 4 * j0; ++j) inc += weighted(j);
  double inc2 = 0.0;
  for (long j = 4 * j0 + 1; j <= 8 * j0; ++j) inc2 += weighted(j);
  m.increment_ratio = inc > 0.0 ? inc2 / inc : 0.0;
  if (inc2 < 1e-8) {
    m.tail_converges = true;
  } else {
    m.tail_converges = m.increment_ratio < 0.999;
  }

  const bool standard = table.scheme == Scheme::standard;
  m.analytic_converges = standard ? alpha < 0.5 : alpha < 0.25;
  return m;
}

FeldmanHajekIndicator feldman_hajek_indicator(const SpectralOperator& op, double tau, long N) {
  if (N < 1) throw std::invalid_argument("feldman_hajek_indicator: N must be >= 1");
  FeldmanHajekIndicator ind;
  for (int j = 0; j < op.J; ++j) {
    const double lam = op.lambdas[static_cast<size_t>(j)];
    ind.modified_sum += pow_int_neg(std::log1p(tau * lam), 2 * N);
    ind.exact_sum += std::exp(-2.0 * N * tau * lam);
  }
  // Integral-comparison tails beyond mode J (constant-coefficient asymptotics):
  // (1 + c u^2)^{-2N} <= (1 + c)^{-2N} u^{-4N} for u >= 1, and the Gaussian
  // tail bound for the exact sum.
  const double J = static_cast<double>(op.J);
  const double c = tau * kPi * kPi * J * J;
  ind.modified_tail_bound = J * pow_int_neg(std::log1p(c), 2 * N) / (4.0 * N - 1.0);
  ind.exact_tail_bound = std::exp(-2.0 * N * c) / (4.0 * N * tau * kPi * kPi * J);
  return ind;
}

double hellinger_diag(std::span<const double> v1, std::span<const double> v2) {
  if (v1.size() != v2.size()) throw std::invalid_argument("hellinger_diag: length mismatch");
  double prod = 1.0;
  for (size_t j = 0; j < v1.size(); ++j) {
    const double a = v1[j], b = v2[j];
    if (a < 0.0 || b < 0.0) throw std::invalid_argument("hellinger_diag: negative variance");
    if (a == b) continue;  // affinity exactly 1
    prod *= std::sqrt(2.0 * std::sqrt(a * b) / (a + b));
  }
  return std::sqrt(std::max(0.0, 1.0 - prod));
}

double quadratic_variation(const FieldState& x) {
  require_rep(x, Representation::nodal, "quadratic_variation");
  const int J = x.size();
  double qv = 0.0;
  double prev = 0.0;
  for (int i = 0; i < J; ++i) {
    const double d = x.values[static_cast<size_t>(i)] - prev;
    qv += d * d;
    prev = x.values[static_cast<size_t>(i)];
  }
  qv += prev * prev;  // right boundary zero
  return qv;
}

namespace {

double weighted_variance_gap(Scheme scheme, double lam, double tau, long N, double T,
                             double alpha) {
  // v_scheme(T) - v_exact(T), written to avoid cancellation where it matters.
  const double w = std::pow(lam, 2.0 * alpha);
  switch (scheme) {
    case Scheme::exponential:
    case Scheme::exact_ou:
      return 0.0;
    case Scheme::modified:
    case Scheme::modified_bform:
    case Scheme::modified_expform: {
      const double lam_tau = std::log1p(tau * lam) / tau;
      return w * (std::exp(-2.0 * T * lam) - std::exp(-2.0 * T * lam_tau)) / (2.0 * lam);
    }
    case Scheme::standard: {
      const double decay = pow_int_neg(std::log1p(tau * lam), 2 * N);
      const double v_st = (1.0 - decay) / (lam * (2.0 + tau * lam));
      const double v_ex = (1.0 - std::exp(-2.0 * T * lam)) / (2.0 * lam);
      return w * (v_st - v_ex);
    }
  }
  return 0.0;
}

}  // namespace

RateFit deterministic_weak_error(const SpectralOperator& op, std::span<const double> taus,
                                 double T, Scheme scheme, WeakFunctional functional,
                                 double alpha) {
  if (taus.size() < 3) throw std::invalid_argument("deterministic_weak_error: need >= 3 tau values");
  if (functional == WeakFunctional::squared_norm) alpha = 0.0;
  std::vector<double> kept_taus, errs;
  for (double tau : taus) {
    const double ratio = T / tau;
    const long N = std::lround(ratio);
    if (std::abs(ratio - static_cast<double>(N)) > 1e-9)
      throw std::invalid_argument("deterministic_weak_error: T/tau must be an integer");
    double e = 0.0;
    for (int j = 0; j < op.J; ++j)
      e += weighted_variance_gap(scheme, op.lambdas[static_cast<size_t>(j)], tau, N, T, alpha);
    e = std::abs(e);
    if (e > 1e-13) {  // below that is roundoff, not signal
      kept_taus.push_back(tau);
      errs.push_back(e);
    }
  }
  if (kept_taus.size() < 3) {
    RateFit fit;
    fit.taus = kept_taus;
    fit.errors = errs;
    fit.diagnostic = "fewer than 3 error points above the 1e-13 floor";
    return fit;
  }
  return fit_rate(kept_taus, errs);
}

double stationary_bias(Scheme scheme, const SpectralOperator& op, double tau, double alpha) {
  double bias = 0.0;
  for (int j = 0; j < op.J; ++j) {
    const double lam = op.lambdas[static_cast<size_t>(j)];
    const double w = std::pow(lam, 2.0 * alpha);
    switch (scheme) {
      case Scheme::modified:
      case Scheme::modified_bform:
      case Scheme::modified_expform:
      case Scheme::exponential:
      case Scheme::exact_ou:
        break;  // invariant law is nu exactly
      case Scheme::standard:
        // 1/(2 lam) - 1/(lam (2 + tau lam)) = tau / (4 (1 + tau lam / 2))
        bias += w * tau / (4.0 + 2.0 * tau * lam);
        break;
    }
  }
  return bias;
}

double exp_neg_sqnorm(std::span<const double> modal) {
  double s = 0.0;
  for (double c : modal) s += c * c;
  return std::exp(-s);
}

// ---------------------------------------------------------------------------
// Coupled multilevel engine
// ---------------------------------------------------------------------------

namespace {

struct LevelConstants {
  long m = 0;  // tau = m * tau_ref
  double tau = 0.0;
  std::vector<double> a;          // 1/(1 + tau lambda)
  std::vector<double> sqrt_a;     // for B2
  std::vector<double> exp_e;      // e^{-tau lambda}
  std::vector<double> exp_drift;  // (1 - e^{-tau lambda})/lambda
};

struct EngineConstants {
  int J = 0;
  long n_fine = 0;
  double tau_ref = 0.0;
  std::vector<double> lam;
  std::vector<double> e1;         // e^{-tau_ref lambda}
  std::vector<double> ref_drift;  // (1 - e1)/lambda
  std::vector<double> cond_coef;  // Cov(dbeta, I)/Var(dbeta)
  std::vector<double> cond_sd;    // conditional sd of I given dbeta
  std::vector<LevelConstants> levels;
};

EngineConstants make_constants(const CoupledConfig& cfg) {
  EngineConstants ec;
  ec.J = cfg.J;
  const SpectralOperator op = build_spectral(cfg.J);
  ec.lam = op.lambdas;
  double tau_min = cfg.taus.front();
  for (double t : cfg.taus) tau_min = std::min(tau_min, t);
  ec.tau_ref = tau_min / cfg.ref_factor;
  const double n_fine_real = cfg.T / ec.tau_ref;
  ec.n_fine = std::lround(n_fine_real);
  if (std::abs(n_fine_real - static_cast<double>(ec.n_fine)) > 1e-9)
    throw std::invalid_argument("run_coupled_levels: T/tau_ref must be an integer");

  const double tf = ec.tau_ref;
  ec.e1.resize(static_cast<size_t>(cfg.J));
  ec.ref_drift.resize(static_cast<size_t>(cfg.J));
  ec.cond_coef.resize(static_cast<size_t>(cfg.J));
  ec.cond_sd.resize(static_cast<size_t>(cfg.J));
  for (int j = 0; j < cfg.J; ++j) {
    const double lam = ec.lam[static_cast<size_t>(j)];
    const double e = std::exp(-tf * lam);
    const double v_int = (1.0 - e * e) / (2.0 * lam);     // Var of the convolution increment
    const double cov = (1.0 - e) / lam;                   // Cov(dbeta, increment)
    ec.e1[static_cast<size_t>(j)] = e;
    ec.ref_drift[static_cast<size_t>(j)] = cov;
    ec.cond_coef[static_cast<size_t>(j)] = cov / tf;
    ec.cond_sd[static_cast<size_t>(j)] = std::sqrt(std::max(0.0, v_int - cov * cov / tf));
  }

  for (double tau : cfg.taus) {
    LevelConstants lc;
    lc.tau = tau;
    const double m_real = tau / ec.tau_ref;
    lc.m = std::lround(m_real);
    if (std::abs(m_real - static_cast<double>(lc.m)) > 1e-9 || lc.m % 2 != 0)
      throw std::invalid_argument("run_coupled_levels: each tau must be an even multiple of tau_ref");
    if (ec.n_fine % lc.m != 0)
      throw std::invalid_argument("run_coupled_levels: T/tau must be an integer");
    lc.a.resize(static_cast<size_t>(cfg.J));
    lc.sqrt_a.resize(static_cast<size_t>(cfg.J));
    lc.exp_e.resize(static_cast<size_t>(cfg.J));
    lc.exp_drift.resize(static_cast<size_t>(cfg.J));
    for (int j = 0; j < cfg.J; ++j) {
      const double lam = ec.lam[static_cast<size_t>(j)];
      const double a = 1.0 / (1.0 + tau * lam);
      lc.a[static_cast<size_t>(j)] = a;
      lc.sqrt_a[static_cast<size_t>(j)] = std::sqrt(a);
      lc.exp_e[static_cast<size_t>(j)] = std::exp(-tau * lam);
      lc.exp_drift[static_cast<size_t>(j)] = (1.0 - lc.exp_e[static_cast<size_t>(j)]) / lam;
    }
    ec.levels.push_back(std::move(lc));
  }
  return ec;
}

struct ChunkSums {
  // [scheme][level]: strong sum, strong sumsq, weak sum, weak sumsq
  std::vector<double> data;
  long count = 0;
};

class DriftEval {
 public:
  DriftEval(const ProblemSpec& p, int J) : p_(p), dst_(J), nodal_(static_cast<size_t>(J)) {}

  // F(x) in modal coordinates, written into out.
  void operator()(std::span<const double> modal, std::span<double> out) {
    dst_.to_nodal(modal, nodal_);
    for (double& v : nodal_) v = p_.f(v);
    dst_.to_modal(nodal_, out);
  }

 private:
  const ProblemSpec& p_;
  SineTransform dst_;
  std::vector<double> nodal_;
};

}  // namespace

CoupledResult run_coupled_levels(const CoupledConfig& cfg, std::span<const Scheme> schemes,
                                 const Functional& phi) {
  if (cfg.taus.empty()) throw std::invalid_argument("run_coupled_levels: empty tau grid");
  if (cfg.replicas < 1) throw std::invalid_argument("run_coupled_levels: need replicas >= 1");
  for (Scheme s : schemes) {
    if (s == Scheme::modified_bform || s == Scheme::modified_expform)
      throw std::invalid_argument("run_coupled_levels: coupled engine supports the two-draw form");
  }
  const EngineConstants ec = make_constants(cfg);
  const int J = cfg.J;
  const size_t n_lev = ec.levels.size();
  const size_t n_sch = schemes.size();
  const bool drift = cfg.problem.has_drift();

  auto body = [&](long begin, long end) {
    ChunkSums acc;
    acc.data.assign(n_sch * n_lev * 4, 0.0);
    acc.count = end - begin;
    // replica-local state
    std::vector<double> ref(static_cast<size_t>(J));
    std::vector<double> states(n_sch * n_lev * static_cast<size_t>(J));
    std::vector<double> s_all(n_lev * static_cast<size_t>(J));
    std::vector<double> s_half(n_lev * static_cast<size_t>(J));
    std::vector<double> u(n_lev * static_cast<size_t>(J));
    std::vector<double> fbuf(static_cast<size_t>(J));
    std::vector<double> dbeta(static_cast<size_t>(J)), conv(static_cast<size_t>(J));
    DriftEval F(cfg.problem, J);
    const double sqrt_tf = std::sqrt(ec.tau_ref);

    for (long r = begin; r < end; ++r) {
      NoiseStream stream(cfg.seed, static_cast<std::uint64_t>(r));
      std::fill(ref.begin(), ref.end(), 0.0);
      std::fill(states.begin(), states.end(), 0.0);
      std::fill(s_all.begin(), s_all.end(), 0.0);
      std::fill(s_half.begin(), s_half.end(), 0.0);
      std::fill(u.begin(), u.end(), 0.0);

      for (long k = 0; k < ec.n_fine; ++k) {
        // shared fine noise: Brownian increment + exact convolution increment
        for (int j = 0; j < J; ++j) {
          double z1, z2;
          stream.normal_pair(z1, z2);
          const double db = sqrt_tf * z1;
          dbeta[static_cast<size_t>(j)] = db;
          conv[static_cast<size_t>(j)] =
              ec.cond_coef[static_cast<size_t>(j)] * db + ec.cond_sd[static_cast<size_t>(j)] * z2;
        }
        // reference step (accelerated exponential Euler at tau_ref)
        if (drift) {
          F(ref, fbuf);
          for (int j = 0; j < J; ++j)
            ref[static_cast<size_t>(j)] =
                ec.e1[static_cast<size_t>(j)] * ref[static_cast<size_t>(j)] +
                ec.ref_drift[static_cast<size_t>(j)] * fbuf[static_cast<size_t>(j)] +
                conv[static_cast<size_t>(j)];
        } else {
          for (int j = 0; j < J; ++j)
            ref[static_cast<size_t>(j)] = ec.e1[static_cast<size_t>(j)] * ref[static_cast<size_t>(j)] +
                                          conv[static_cast<size_t>(j)];
        }
        // accumulate per level, step coarse schemes at window boundaries
        for (size_t l = 0; l < n_lev; ++l) {
          const LevelConstants& lc = ec.levels[l];
          double* sa = &s_all[l * static_cast<size_t>(J)];
          double* sh = &s_half[l * static_cast<size_t>(J)];
          double* uu = &u[l * static_cast<size_t>(J)];
          const bool first_half = (k % lc.m) < lc.m / 2;
          for (int j = 0; j < J; ++j) {
            sa[j] += dbeta[static_cast<size_t>(j)];
            if (first_half) sh[j] += dbeta[static_cast<size_t>(j)];
            uu[j] = ec.e1[static_cast<size_t>(j)] * uu[j] + conv[static_cast<size_t>(j)];
          }
          if ((k + 1) % lc.m != 0) continue;
          const double inv_sqrt_tau = 1.0 / std::sqrt(lc.tau);
          const double half_scale = std::sqrt(2.0 / lc.tau);
          for (size_t s = 0; s < n_sch; ++s) {
            double* X = &states[(s * n_lev + l) * static_cast<size_t>(J)];
            const bool needs_drift = drift && schemes[s] != Scheme::exact_ou;
            if (needs_drift) F(std::span<const double>(X, static_cast<size_t>(J)), fbuf);
            switch (schemes[s]) {
              case Scheme::standard:
                for (int j = 0; j < J; ++j) {
                  const double gam = sa[j] * inv_sqrt_tau;
                  const double inner = X[j] + (needs_drift ? lc.tau * fbuf[static_cast<size_t>(j)] : 0.0) +
                                       std::sqrt(lc.tau) * gam;
                  X[j] = lc.a[static_cast<size_t>(j)] * inner;
                }
                break;
              case Scheme::modified:
                for (int j = 0; j < J; ++j) {
                  const double g1 = sh[j] * half_scale;
                  const double g2 = (sa[j] - sh[j]) * half_scale;
                  const double a = lc.a[static_cast<size_t>(j)];
                  X[j] = a * (X[j] + (needs_drift ? lc.tau * fbuf[static_cast<size_t>(j)] : 0.0)) +
                         std::sqrt(lc.tau) * 0.70710678118654752440 *
                             (a * g1 + lc.sqrt_a[static_cast<size_t>(j)] * g2);
                }
                break;
              case Scheme::exponential:
              case Scheme::exact_ou:
                for (int j = 0; j < J; ++j) {
                  X[j] = lc.exp_e[static_cast<size_t>(j)] * X[j] +
                         (needs_drift ? lc.exp_drift[static_cast<size_t>(j)] * fbuf[static_cast<size_t>(j)]
                                      : 0.0) +
                         uu[j];
                }
                break;
              default:
                break;
            }
          }
          std::fill(sa, sa + J, 0.0);
          std::fill(sh, sh + J, 0.0);
          std::fill(uu, uu + J, 0.0);
        }
      }

      const double phi_ref = phi(ref);
      for (size_t s = 0; s < n_sch; ++s) {
        for (size_t l = 0; l < n_lev; ++l) {
          const double* X = &states[(s * n_lev + l) * static_cast<size_t>(J)];
          double d2 = 0.0;
          for (int j = 0; j < J; ++j) {
            const double d = X[j] - ref[static_cast<size_t>(j)];
            d2 += d * d;
          }
          const double strong = std::sqrt(d2);
          const double wd = phi(std::span<const double>(X, static_cast<size_t>(J))) - phi_ref;
          double* slot = &acc.data[(s * n_lev + l) * 4];
          slot[0] += strong;
          slot[1] += strong * strong;
          slot[2] += wd;
          slot[3] += wd * wd;
        }
      }
    }
    return acc;
  };

  const auto chunks = run_chunked<ChunkSums>(cfg.replicas, cfg.chunk, cfg.threads, body);

  CoupledResult res;
  res.taus = cfg.taus;
  res.tau_ref = ec.tau_ref;
  res.replicas = cfg.replicas;
  const double M = static_cast<double>(cfg.replicas);
  for (size_t s = 0; s < n_sch; ++s) {
    std::vector<LevelStats> st(n_lev), wk(n_lev);
    for (size_t l = 0; l < n_lev; ++l) {
      double s1 = 0, s2 = 0, w1 = 0, w2 = 0;
      for (const auto& c : chunks) {
        const double* slot = &c.data[(s * n_lev + l) * 4];
        s1 += slot[0];
        s2 += slot[1];
        w1 += slot[2];
        w2 += slot[3];
      }
      st[l].mean = s1 / M;
      st[l].se = std::sqrt(std::max(0.0, s2 / M - st[l].mean * st[l].mean) / M);
      wk[l].mean = w1 / M;
      wk[l].se = std::sqrt(std::max(0.0, w2 / M - wk[l].mean * wk[l].mean) / M);
    }
    res.strong[schemes[s]] = std::move(st);
    res.weak[schemes[s]] = std::move(wk);
  }
  return res;
}

RateFit strong_error_fit(const CoupledResult& res, Scheme scheme) {
  const auto it = res.strong.find(scheme);
  if (it == res.strong.end()) throw std::invalid_argument("strong_error_fit: scheme not in result");
  std::vector<double> taus, errs, ses;
  for (size_t l = 0; l < res.taus.size(); ++l) {
    if (it->second[l].mean > 1e-13) {
      taus.push_back(res.taus[l]);
      errs.push_back(it->second[l].mean);
      ses.push_back(it->second[l].se);
    }
  }
  if (taus.size() < 3) {
    RateFit fit;
    fit.diagnostic = "fewer than 3 strong-error points above the roundoff floor";
    return fit;
  }
  RateFit fit = fit_rate(taus, errs);
  fit.stderrs = ses;
  return fit;
}

RateFit mc_weak_error_fit(const CoupledResult& res, Scheme scheme) {
  const auto it = res.weak.find(scheme);
  if (it == res.weak.end()) throw std::invalid_argument("mc_weak_error_fit: scheme not in result");
  if (res.replicas < 2) {
    RateFit fit;
    fit.diagnostic = "fit refused: need at least 2 replicas for a standard error";
    return fit;
  }
  std::vector<double> taus, errs, ses;
  for (size_t l = 0; l < res.taus.size(); ++l) {
    const double e = std::abs(it->second[l].mean);
    const double se = it->second[l].se;
    if (se > 0.0 && e >= 3.0 * se) {
      taus.push_back(res.taus[l]);
      errs.push_back(e);
      ses.push_back(se);
    }
  }
  if (taus.size() < 3) {
    RateFit fit;
    fit.diagnostic =
        "fit refused: fewer than 3 points exceed 3 standard errors (" +
        std::to_string(taus.size()) + " significant)";
    return fit;
  }
  RateFit fit = fit_rate(taus, errs);
  fit.stderrs = ses;
  return fit;
}

RateFit strong_error(const CoupledConfig& cfg, Scheme scheme) {
  const Scheme schemes[1] = {scheme};
  const auto res = run_coupled_levels(cfg, schemes, exp_neg_sqnorm);
  return strong_error_fit(res, scheme);
}

RateFit mc_weak_error(const CoupledConfig& cfg, Scheme scheme, const Functional& phi) {
  const Scheme schemes[1] = {scheme};
  const auto res = run_coupled_levels(cfg, schemes, phi);
  return mc_weak_error_fit(res, scheme);
}

}  // namespace spde
