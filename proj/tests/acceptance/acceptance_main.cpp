// Acceptance suite: one check per numbered criterion, each printing a single
// PASS/FAIL line with the measured quantities and wall time.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <string>
#include <vector>

#include "spde/diagnostics.hpp"
#include "spde/experiments.hpp"
#include "spde/integrators.hpp"
#include "spde/mcmc.hpp"
#include "spde/modified_equation.hpp"
#include "spde/parallel.hpp"
#include "spde/slowfast.hpp"
#include "../test_util.hpp"

using namespace spde;

namespace {

int g_threads = 2;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += "FAILED: " + what;
    }
  }
  void note(const std::string& what) {
    if (!detail.empty()) detail += "; ";
    detail += what;
  }
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

// ---------------------------------------------------------------------------
// 1. Exact Gaussian invariance of the modified scheme
// ---------------------------------------------------------------------------
Outcome criterion1() {
  Outcome out;
  double worst = 0.0;
  for (double tau : {0.5, 0.1, 0.01}) {
    for (int J : {16, 64, 256}) {
      const auto op = build_spectral(J);
      const auto f = factorize_resolvent(op, tau);
      for (int j = 0; j < J; ++j) {
        const double a = f.a_scalars[j];
        const double bvar = tau * 0.5 * (a * a + a);
        const double target = 0.5 / op.lambdas[j];
        double v = target;
        for (int n = 0; n < 1000; ++n) v = a * a * v + bvar;
        worst = std::max(worst, std::abs(v / target - 1.0));
      }
    }
  }
  out.require(worst <= 1e-12, "stationary recursion relative error " + fmt(worst) + " > 1e-12");
  out.note("recursion max rel err " + fmt(worst));

  // MC confirmation: J = 32, tau = 0.1, 1e5 steps from a draw of nu
  const int J = 32;
  const double tau = 0.1;
  const auto op = build_spectral(J);
  const auto f = factorize_resolvent(op, tau);
  const ProblemSpec ou = make_ou();
  NoiseStream stream(20250801);
  FieldState x = FieldState::zeros(J, Representation::modal);
  for (int j = 0; j < J; ++j) x.values[j] = stream.normal() / std::sqrt(2.0 * op.lambdas[j]);
  const long n_steps = 100000;
  std::vector<double> acc(J, 0.0);
  for (long n = 0; n < n_steps; ++n) {
    const FieldState g1 = stream.draw_cylindrical(J, Representation::modal);
    const FieldState g2 = stream.draw_cylindrical(J, Representation::modal);
    x = step_modified(f, ou, nullptr, x, g1, g2);
    for (int j = 0; j < J; ++j) acc[j] += x.values[j] * x.values[j];
  }
  double worst_sig = 0.0;
  for (int j = 0; j < J; ++j) {
    const double v = 0.5 / op.lambdas[j];
    const double a = f.a_scalars[j];
    const double se = v * std::sqrt(2.0 * (1.0 + a * a) / (1.0 - a * a) / n_steps);
    worst_sig = std::max(worst_sig, std::abs(acc[j] / n_steps - v) / se);
  }
  out.require(worst_sig < 5.0, "MC per-mode variance off by " + fmt(worst_sig) + " se (> 5)");
  out.note("MC worst deviation " + fmt(worst_sig) + " se");
  return out;
}

// ---------------------------------------------------------------------------
// 2. FD/Cholesky operator identity
// ---------------------------------------------------------------------------
Outcome criterion2() {
  Outcome out;
  double worst = 0.0;
  const std::function<double(double)> coeffs[2] = {[](double) { return 1.0; },
                                                   [](double x) { return 1.0 + 0.5 * x; }};
  for (const auto& a_fn : coeffs) {
    for (int J = 2; J <= 8; ++J) {
      for (double tau : {0.5, 0.05}) {
        const auto op = build_fd(J, a_fn);
        const auto f = factorize_resolvent(op, tau);
        const auto A = testutil::from_apply(J, [&](const std::vector<double>& e) {
          return apply_A_tau(f, FieldState(e, Representation::nodal)).values;
        });
        const FieldState zero = FieldState::zeros(J, Representation::nodal);
        const double inv_sqrt_tau = 1.0 / std::sqrt(tau);
        const auto B1 = testutil::from_apply(J, [&](const std::vector<double>& e) {
          auto r = sample_modified_noise(f, FieldState(e, Representation::nodal), zero).values;
          for (double& v : r) v *= inv_sqrt_tau;
          return r;
        });
        const auto B2 = testutil::from_apply(J, [&](const std::vector<double>& e) {
          auto r = sample_modified_noise(f, zero, FieldState(e, Representation::nodal)).values;
          for (double& v : r) v *= inv_sqrt_tau;
          return r;
        });
        const auto A2 = testutil::multiply(A, A);
        auto ImA2 = testutil::identity(J);
        for (int i = 0; i < J; ++i)
          for (int j = 0; j < J; ++j) ImA2[i][j] -= A2[i][j];
        auto cov = testutil::multiply(B1, testutil::transpose(B1));
        const auto c2 = testutil::multiply(B2, testutil::transpose(B2));
        for (int i = 0; i < J; ++i)
          for (int j = 0; j < J; ++j) cov[i][j] = tau * (cov[i][j] + c2[i][j]);
        const auto lhs = testutil::multiply(cov, testutil::inverse(ImA2));
        const auto lam = testutil::from_apply(
            J, [&](const std::vector<double>& e) { return op.apply(e); });
        auto rhs = testutil::inverse(lam);
        for (int i = 0; i < J; ++i)
          for (int j = 0; j < J; ++j) rhs[i][j] *= 0.5;
        worst = std::max(worst, testutil::max_abs_diff(lhs, rhs));
      }
    }
  }
  out.require(worst <= 1e-10, "max entrywise residual " + fmt(worst) + " > 1e-10");
  out.note("max entrywise residual " + fmt(worst));
  return out;
}

// ---------------------------------------------------------------------------
// 3. Formulation equivalence on random (tau, lambda) pairs
// ---------------------------------------------------------------------------
Outcome criterion3() {
  Outcome out;
  NoiseStream stream(3);
  const ProblemSpec ou = make_ou();
  ProblemSpec constant;
  constant.f = [](double) { return 1.0; };
  constant.label = "constant";
  const SineTransform dst(1);
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const double tau = std::pow(10.0, -4.0 + 4.5 * stream.uniform());
    const double lam = std::pow(10.0, -0.5 + 5.5 * stream.uniform());
    SpectralOperator op;
    op.J = 1;
    op.lambdas = {lam};
    const auto f = factorize_resolvent(op, tau);
    const FieldState e({1.0}, Representation::modal), z({0.0}, Representation::modal);

    const double m1 = step_modified(f, ou, nullptr, e, z, z).values[0];
    const double n11 = step_modified(f, ou, nullptr, z, e, z).values[0];
    const double n12 = step_modified(f, ou, nullptr, z, z, e).values[0];
    const double v1 = n11 * n11 + n12 * n12;

    const double m2 = step_modified_bform(op, tau, ou, nullptr, e, z).values[0];
    const double n2 = step_modified_bform(op, tau, ou, nullptr, z, e).values[0];

    const double m3 = step_modified_expform(op, tau, ou, nullptr, e, z).values[0];
    const double n3 = step_modified_expform(op, tau, ou, nullptr, z, e).values[0];

    const double d1 = step_modified(f, constant, &dst, z, z, z).values[0];
    const double d3 = step_modified_expform(op, tau, constant, &dst, z, z).values[0];

    worst = std::max(worst, std::abs(m2 / m1 - 1.0));
    worst = std::max(worst, std::abs(m3 / m1 - 1.0));
    worst = std::max(worst, std::abs(n2 * n2 / v1 - 1.0));
    worst = std::max(worst, std::abs(n3 * n3 / v1 - 1.0));
    worst = std::max(worst, std::abs(d3 / d1 - 1.0));  // tau-corrected drift identity
  }
  out.require(worst <= 1e-12, "max relative law mismatch " + fmt(worst) + " > 1e-12");
  out.note("max relative mismatch over 1000 pairs " + fmt(worst));
  return out;
}

// ---------------------------------------------------------------------------
// 4. Regularity dichotomy via the doubling test
// ---------------------------------------------------------------------------
Outcome criterion4() {
  Outcome out;
  const auto op = build_spectral(256);
  const double tau = 0.1;
  const auto mod = mode_variances(Scheme::modified, op, tau, -1);
  const auto ex = mode_variances(Scheme::exact_ou, op, tau, -1);
  const auto st = mode_variances(Scheme::standard, op, tau, -1);
  out.require(!sobolev_moment(mod, 0.3).tail_converges, "modified alpha=0.3 should diverge");
  out.require(!sobolev_moment(ex, 0.3).tail_converges, "exact alpha=0.3 should diverge");
  out.require(sobolev_moment(mod, 0.2).tail_converges, "modified alpha=0.2 should converge");
  out.require(sobolev_moment(ex, 0.2).tail_converges, "exact alpha=0.2 should converge");
  out.require(sobolev_moment(st, 0.3).tail_converges, "standard alpha=0.3 should converge");
  out.note("increment ratios: mod(0.3)=" + fmt(sobolev_moment(mod, 0.3).increment_ratio) +
           " mod(0.2)=" + fmt(sobolev_moment(mod, 0.2).increment_ratio) +
           " std(0.3)=" + fmt(sobolev_moment(st, 0.3).increment_ratio));
  return out;
}

// ---------------------------------------------------------------------------
// 5. Standard-scheme stationary bias of order 1/2
// ---------------------------------------------------------------------------
Outcome criterion5() {
  Outcome out;
  const auto op = build_spectral(1 << 14);
  std::vector<double> taus, biases;
  for (int k = 4; k <= 12; ++k) {
    const double tau = std::pow(2.0, -k);
    taus.push_back(tau);
    biases.push_back(stationary_bias(Scheme::standard, op, tau));
    if (stationary_bias(Scheme::modified, op, tau) != 0.0) {
      out.require(false, "modified stationary bias nonzero at tau = " + fmt(tau));
    }
  }
  const auto fit = fit_rate(taus, biases);
  out.require(std::abs(fit.slope - 0.5) <= 0.05,
              "slope " + fmt(fit.slope) + " outside 0.5 +/- 0.05");
  // asymptotic constant estimated at the smallest tau (the global intercept is
  // biased by the exact -tau/8 correction term)
  const double c_ref = 1.0 / (4.0 * std::sqrt(2.0));
  const double c_est = biases.back() / std::sqrt(taus.back());
  out.require(std::abs(c_est / c_ref - 1.0) <= 0.15,
              "constant " + fmt(c_est) + " deviates from 1/(4 sqrt 2) by more than 15%");
  out.note("slope " + fmt(fit.slope) + ", constant " + fmt(c_est) + " vs " + fmt(c_ref) +
           " (global-fit intercept " + fmt(std::exp(fit.intercept)) + ")");
  return out;
}

// ---------------------------------------------------------------------------
// 6. Hellinger singularity contrast
// ---------------------------------------------------------------------------
Outcome criterion6() {
  Outcome out;
  const double tau = 0.1;
  const int J_max = 64;
  const auto op = build_spectral(J_max);
  const auto v_mod = mode_variances(Scheme::modified, op, tau, -1).variances;
  const auto v_nu = mode_variances(Scheme::exact_ou, op, tau, -1).variances;
  const auto v_std = mode_variances(Scheme::standard, op, tau, -1).variances;

  int j_star = -1;
  double prev = -1.0;
  bool monotone = true;
  for (int J = 1; J <= J_max; ++J) {
    const std::span<const double> a(v_mod.data(), static_cast<size_t>(J));
    const std::span<const double> b(v_nu.data(), static_cast<size_t>(J));
    const std::span<const double> c(v_std.data(), static_cast<size_t>(J));
    if (hellinger_diag(a, b) != 0.0)
      out.require(false, "H(modified, nu) != 0 at J = " + std::to_string(J));
    const double h_std = hellinger_diag(c, b);
    if (h_std < prev) monotone = false;  // ties allowed once H saturates at 1
    prev = h_std;
    if (j_star < 0 && h_std >= 0.9) j_star = J;
  }
  out.require(monotone, "H(standard, nu) not monotone increasing in J");
  out.require(j_star > 0, "no J* with H >= 0.9 up to J = 64");
  out.note("J* = " + std::to_string(j_star) + " at tau = 0.1, H(J*) >= 0.9, H(64) = " +
           fmt(hellinger_diag(v_std, v_nu)));
  return out;
}

// ---------------------------------------------------------------------------
// 7./8. Coupled strong and weak order experiments
// ---------------------------------------------------------------------------
CoupledConfig coupled_base() {
  CoupledConfig cfg;
  cfg.J = 64;
  cfg.T = 0.5;
  cfg.taus = {1.0 / 256, 1.0 / 128, 1.0 / 64, 1.0 / 32, 1.0 / 16, 1.0 / 8};
  cfg.ref_factor = 8;
  cfg.problem = make_sine();
  cfg.threads = g_threads;
  cfg.chunk = 50;
  return cfg;
}

Outcome criterion7() {
  Outcome out;
  CoupledConfig cfg = coupled_base();
  cfg.replicas = 2000;
  cfg.seed = 70801;
  const Scheme schemes[3] = {Scheme::standard, Scheme::exponential, Scheme::modified};
  const auto res = run_coupled_levels(cfg, schemes, exp_neg_sqnorm);
  const auto fit_std = strong_error_fit(res, Scheme::standard);
  const auto fit_exp = strong_error_fit(res, Scheme::exponential);
  const auto fit_mod = strong_error_fit(res, Scheme::modified);
  out.require(fit_std.ok && fit_std.slope >= 0.15 && fit_std.slope <= 0.35,
              "standard strong slope " + fmt(fit_std.slope) + " outside [0.15, 0.35]");
  out.require(fit_exp.ok && fit_exp.slope >= 0.4 && fit_exp.slope <= 0.6,
              "exponential strong slope " + fmt(fit_exp.slope) + " outside [0.4, 0.6]");
  out.note("slopes: standard " + fmt(fit_std.slope) + ", exponential " + fmt(fit_exp.slope) +
           ", modified " + fmt(fit_mod.slope) + " (informational)");
  return out;
}

Outcome criterion8() {
  Outcome out;
  CoupledConfig cfg = coupled_base();
  cfg.replicas = 100000;
  cfg.seed = 80801;
  const Scheme schemes[1] = {Scheme::modified};
  const auto res = run_coupled_levels(cfg, schemes, exp_neg_sqnorm);
  const auto fit = mc_weak_error_fit(res, Scheme::modified);
  out.require(fit.ok, "weak fit refused: " + fit.diagnostic);
  if (fit.ok) {
    out.require(fit.taus.size() == cfg.taus.size(),
                "only " + std::to_string(fit.taus.size()) + "/6 points exceed 3 se");
    out.require(fit.slope >= 0.35 && fit.slope <= 0.75,
                "modified weak slope " + fmt(fit.slope) + " outside [0.35, 0.75]");
    double min_sig = 1e300;
    const auto& wk = res.weak.at(Scheme::modified);
    for (size_t l = 0; l < wk.size(); ++l)
      min_sig = std::min(min_sig, std::abs(wk[l].mean) / wk[l].se);
    out.note("modified weak slope " + fmt(fit.slope) + ", min significance " + fmt(min_sig) +
             " se");
  }

  // informational: the standard scheme under the same design
  CoupledConfig cfg_std = coupled_base();
  cfg_std.replicas = 4000;
  cfg_std.seed = 80802;
  const Scheme sch_std[1] = {Scheme::standard};
  const auto res_std = run_coupled_levels(cfg_std, sch_std, exp_neg_sqnorm);
  const auto fit_std = mc_weak_error_fit(res_std, Scheme::standard);
  out.note("standard weak slope " + fmt(fit_std.slope) + " (informational)");
  return out;
}

// ---------------------------------------------------------------------------
// 9. Asymptotic-preserving property
// ---------------------------------------------------------------------------
struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
};

Outcome criterion9() {
  Outcome out;
  const double tau = 0.01;
  const int n_steps = 4;
  const int J = 32;
  const long M = 20000;
  const auto op = build_spectral(J);
  const auto slow = factorize_resolvent(op, tau);

  SlowFastSpec sf;
  sf.G = [](double, double y) { return std::cos(y); };
  sf.sigma = [](const FieldState&) { return 1.0; };

  const SineTransform dst(J);
  auto phi = [&](const FieldState& modal) {
    const FieldState xn = dst.to_nodal(modal);
    double s = 0.0;
    for (double v : xn.values) s += v;
    return xn.mesh() * s;
  };

  // mean/se of phi over M replicas of a replica-level runner
  auto mc = [&](const std::function<double(NoiseStream&)>& one, std::uint64_t seed) {
    struct Sums {
      double s = 0.0, s2 = 0.0;
    };
    const auto chunks = run_chunked<Sums>(M, 500, g_threads, [&](long b, long e) {
      Sums sums;
      for (long r = b; r < e; ++r) {
        NoiseStream stream(seed, static_cast<std::uint64_t>(r));
        const double v = one(stream);
        sums.s += v;
        sums.s2 += v * v;
      }
      return sums;
    });
    double s = 0.0, s2 = 0.0;
    for (const auto& c : chunks) {
      s += c.s;
      s2 += c.s2;
    }
    MeanSe ms;
    ms.mean = s / M;
    ms.se = std::sqrt(std::max(0.0, s2 / M - ms.mean * ms.mean) / M);
    return ms;
  };

  auto run_ap = [&](double eps, bool standard_fast) {
    const auto fast = factorize_resolvent(op, tau / eps);
    return [&, eps, standard_fast, fast](NoiseStream& stream) {
      SlowFastState s{FieldState::zeros(J, Representation::modal),
                      FieldState::zeros(J, Representation::modal), eps};
      const ProblemSpec ou = make_ou();
      for (int n = 0; n < n_steps; ++n) {
        if (!standard_fast) {
          s = step_ap(slow, fast, sf, &dst, s, stream);
        } else {
          // non-AP variant: fast update by the standard Euler noise
          const double sig = sf.sigma(s.X);
          FieldState g = stream.draw_cylindrical(J, Representation::modal);
          for (double& v : g.values) v *= sig;
          FieldState inner = s.Y;
          for (int j = 0; j < J; ++j)
            inner.values[j] += std::sqrt(fast.tau) * g.values[j];
          s.Y = apply_A_tau(fast, inner);
          const FieldState yn = dst.to_nodal(s.Y);
          const FieldState xn = dst.to_nodal(s.X);
          FieldState gn = FieldState::zeros(J, Representation::nodal);
          for (int i = 0; i < J; ++i) gn.values[i] = sf.G(xn.values[i], yn.values[i]);
          const FieldState drift = dst.to_modal(gn);
          FieldState xi = s.X;
          for (int j = 0; j < J; ++j) xi.values[j] += tau * drift.values[j];
          s.X = apply_A_tau(slow, xi);
        }
      }
      return phi(s.X);
    };
  };

  auto run_limit = [&](NoiseStream& stream) {
    FieldState x = FieldState::zeros(J, Representation::modal);
    for (int n = 0; n < n_steps; ++n) x = step_limiting(op, slow, sf, dst, x, stream);
    return phi(x);
  };

  const MeanSe limit = mc(run_limit, 90100);
  const double epsilons[4] = {1e-1, 1e-2, 1e-3, 1e-4};
  std::vector<double> gaps, gap_ses;
  for (int i = 0; i < 4; ++i) {
    const MeanSe m = mc(run_ap(epsilons[i], false), 90200 + static_cast<std::uint64_t>(i));
    gaps.push_back(std::abs(m.mean - limit.mean));
    gap_ses.push_back(std::hypot(m.se, limit.se));
  }
  std::string gap_str = "gaps:";
  for (size_t i = 0; i < gaps.size(); ++i)
    gap_str += " " + fmt(gaps[i]) + "(" + fmt(gaps[i] / gap_ses[i]) + "se)";
  out.note(gap_str);
  for (size_t i = 0; i + 1 < gaps.size(); ++i) {
    const double slack = 2.0 * std::hypot(gap_ses[i], gap_ses[i + 1]);
    out.require(gaps[i + 1] <= gaps[i] + slack,
                "epsilon sweep not decreasing at step " + std::to_string(i));
  }
  out.require(gaps.back() <= 3.0 * gap_ses.back(), "final gap not at the MC noise floor");

  // non-AP contrast at the smallest epsilon
  const MeanSe biased = mc(run_ap(1e-4, true), 90300);
  const double contrast = std::abs(biased.mean - limit.mean);
  const double contrast_se = std::hypot(biased.se, limit.se);
  out.require(contrast > 5.0 * contrast_se,
              "standard-noise variant within 5 se of the AP limit");
  out.note("non-AP contrast " + fmt(contrast / contrast_se) + " se");

  // limiting-scheme consistency against the averaged equation
  {
    const int Jc = 64;
    const auto opc = build_spectral(Jc);
    const SineTransform dstc(Jc);
    const double T = 0.5;
    std::vector<double> taus_c, errs_c;
    // modal coefficients of the closed-form averaged drift e^{-xi(1-xi)/4}
    FieldState gbar = FieldState::zeros(Jc, Representation::nodal);
    for (int i = 1; i <= Jc; ++i) {
      const double xi = static_cast<double>(i) / (Jc + 1);
      gbar.values[i - 1] = std::exp(-xi * (1.0 - xi) / 4.0);
    }
    const FieldState gbar_modal = dstc.to_modal(gbar);
    auto phic = [&](const FieldState& modal) {
      const FieldState xn = dstc.to_nodal(modal);
      double s = 0.0;
      for (double v : xn.values) s += v;
      return xn.mesh() * s;
    };
    for (int k = 3; k <= 6; ++k) {
      const double tau_c = std::pow(2.0, -k);
      const long N = std::lround(T / tau_c);
      const auto slow_c = factorize_resolvent(opc, tau_c);
      auto one = [&](NoiseStream& stream) {
        FieldState x = FieldState::zeros(Jc, Representation::modal);
        for (long n = 0; n < N; ++n) x = step_limiting(opc, slow_c, sf, dstc, x, stream);
        return phic(x);
      };
      const MeanSe m = mc(one, 90400 + static_cast<std::uint64_t>(k));
      // deterministic averaged reference at tau/16 with the same resolvent
      const auto ref_f = factorize_resolvent(opc, tau_c / 16.0);
      FieldState xr = FieldState::zeros(Jc, Representation::modal);
      for (long n = 0; n < N * 16; ++n) {
        FieldState inner = xr;
        for (int j = 0; j < Jc; ++j)
          inner.values[j] += (tau_c / 16.0) * gbar_modal.values[j];
        xr = apply_A_tau(ref_f, inner);
      }
      taus_c.push_back(tau_c);
      errs_c.push_back(std::abs(m.mean - phic(xr)));
    }
    const auto fit = fit_rate(taus_c, errs_c);
    out.require(fit.slope >= 0.8, "limiting consistency slope " + fmt(fit.slope) + " < 0.8");
    out.note("consistency slope " + fmt(fit.slope));
  }
  return out;
}

// ---------------------------------------------------------------------------
// 10. MCMC targets the Gibbs distribution
// ---------------------------------------------------------------------------
Outcome criterion10() {
  Outcome out;
  const int J = 32;
  const auto op = build_spectral(J);
  const SineTransform dst(J);

  // V = 0: acceptance exactly 1 and per-mode stationary variances at nu
  {
    const auto f = factorize_resolvent(op, 0.1);
    NoiseStream stream(100100);
    FieldState x = FieldState::zeros(J, Representation::modal);
    for (int j = 0; j < J; ++j) x.values[j] = stream.normal() / std::sqrt(2.0 * op.lambdas[j]);
    long accepted = 0;
    const long n_steps = 100000;
    std::vector<double> acc(J, 0.0);
    for (long n = 0; n < n_steps; ++n) {
      const FieldState g1 = stream.draw_cylindrical(J, Representation::modal);
      const FieldState g2 = stream.draw_cylindrical(J, Representation::modal);
      const FieldState xhat = propose(f, x, g1, g2);
      const double u = stream.uniform();
      if (u <= acceptance_prob(0.0, 0.0)) {
        x = xhat;
        ++accepted;
      }
      for (int j = 0; j < J; ++j) acc[j] += x.values[j] * x.values[j];
    }
    out.require(accepted == n_steps, "V = 0 acceptance rate below 1");
    double worst_sig = 0.0;
    for (int j = 0; j < J; ++j) {
      const double v = 0.5 / op.lambdas[j];
      const double a = f.a_scalars[j];
      const double se = v * std::sqrt(2.0 * (1.0 + a * a) / (1.0 - a * a) / n_steps);
      worst_sig = std::max(worst_sig, std::abs(acc[j] / n_steps - v) / se);
    }
    out.require(worst_sig < 5.0, "V = 0 stationary variance off by " + fmt(worst_sig) + " se");
    out.note("V=0 acceptance 1, worst mode deviation " + fmt(worst_sig) + " se");
  }

  // V = 0.5 int cos: ergodic average of h sum x_i^2, MCMC vs drifted SDE
  const auto p = make_gradient_cos(0.5);
  const Observable phi = [](const FieldState& xn) {
    double s = 0.0;
    for (double v : xn.values) s += v * v;
    return xn.mesh() * s;
  };

  // MCMC arm at tau = 0.1
  const auto f_mcmc = factorize_resolvent(op, 0.1);
  NoiseStream chain_stream(100200);
  FieldState x0 = FieldState::zeros(J, Representation::modal);
  for (int j = 0; j < J; ++j)
    x0.values[j] = chain_stream.normal() / std::sqrt(2.0 * op.lambdas[j]);
  ChainOptions opts{1000000, 100000, 1};
  const Observable obs[1] = {phi};
  const auto stats = run_chain(f_mcmc, p, &dst, opts, x0, chain_stream, obs);
  out.require(stats.acceptance_rate > 0.0 && stats.acceptance_rate < 1.0,
              "gradient chain acceptance rate degenerate");

  // SDE arm: modified Euler at tau = 0.01 (small-tau regime of the invariant
  // bias; the tau = 0.1 bias would exceed the comparison budget)
  const double tau_sde = 0.01;
  const auto f_sde = factorize_resolvent(op, tau_sde);
  NoiseStream sde_stream(100300);
  FieldState x = x0;
  const long n_sde = 1000000, burn = 100000;
  std::vector<double> series;
  series.reserve(n_sde - burn);
  for (long n = 0; n < n_sde; ++n) {
    const FieldState g1 = sde_stream.draw_cylindrical(J, Representation::modal);
    const FieldState g2 = sde_stream.draw_cylindrical(J, Representation::modal);
    x = step_modified(f_sde, p, &dst, x, g1, g2);
    if (n >= burn) series.push_back(phi(dst.to_nodal(x)));
  }
  double sde_mean = 0.0;
  for (double v : series) sde_mean += v;
  sde_mean /= static_cast<double>(series.size());
  const double sde_se = batch_means_se(series);

  const double diff = std::abs(stats.means[0] - sde_mean);
  const double comb = std::hypot(stats.stderrs[0], sde_se);
  out.require(diff <= 3.0 * comb, "MCMC vs SDE ergodic averages differ by " +
                                      fmt(diff / comb) + " combined se (> 3)");
  out.note("acceptance " + fmt(stats.acceptance_rate) + ", MCMC " + fmt(stats.means[0]) +
           " vs SDE " + fmt(sde_mean) + " (" + fmt(diff / comb) + " combined se)");
  return out;
}

// ---------------------------------------------------------------------------
// 11. Figure 1/2 reproduction at scaled paper parameters
// ---------------------------------------------------------------------------
Outcome criterion11() {
  Outcome out;
  const int J = 255;
  const double tau = 1.0 / 256;
  const long n_steps = 256;  // T = 1
  const auto op = build_fd(J);
  const ProblemSpec ou = make_ou();

  struct Sums {
    double qv_mod_sum = 0.0;
    long ordered = 0;
  };
  const auto chunks = run_chunked<Sums>(100, 10, g_threads, [&](long b, long e) {
    Sums sums;
    for (long seed = b; seed < e; ++seed) {
      NoiseStream stream(static_cast<std::uint64_t>(seed + 1));
      const auto res = run_coupled_fd_paths(op, ou, tau, n_steps, stream);
      sums.qv_mod_sum += res.qv_modified.back();
      if (res.qv_standard.back() < res.qv_modified.back()) ++sums.ordered;
    }
    return sums;
  });
  double qv_mean = 0.0;
  long ordered = 0;
  for (const auto& c : chunks) {
    qv_mean += c.qv_mod_sum;
    ordered += c.ordered;
  }
  qv_mean /= 100.0;
  out.require(qv_mean >= 0.4 && qv_mean <= 0.6,
              "mean QV(modified) " + fmt(qv_mean) + " outside [0.4, 0.6]");
  out.require(ordered >= 95, "QV ordering holds in only " + std::to_string(ordered) + "/100 seeds");
  out.note("mean QV(modified) " + fmt(qv_mean) + " (target 0.5 +/- 0.1, E = " +
           fmt((1.0 - 1.0 / 256) / 2.0) + "), ordering " + std::to_string(ordered) + "/100");
  return out;
}

struct Criterion {
  int id;
  double budget_seconds;
  Outcome (*run)();
};

const Criterion kCriteria[] = {
    {1, 10.0, criterion1},  {2, 1.0, criterion2},   {3, 1.0, criterion3},
    {4, 5.0, criterion4},   {5, 10.0, criterion5},  {6, 5.0, criterion6},
    {7, 300.0, criterion7}, {8, 900.0, criterion8}, {9, 600.0, criterion9},
    {10, 600.0, criterion10}, {11, 300.0, criterion11},
};

}  // namespace

int main(int argc, char** argv) {
  int only = -1;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) only = std::atoi(argv[++i]);
    else if (std::strcmp(argv[i], "--threads") == 0 && i + 1 < argc) g_threads = std::atoi(argv[++i]);
    else {
      std::fprintf(stderr, "usage: %s [--criterion N] [--threads T]\n", argv[0]);
      return 2;
    }
  }
  int failures = 0;
  for (const auto& c : kCriteria) {
    if (only > 0 && c.id != only) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out = c.run();
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.budget_seconds)
      out.require(false, "runtime " + fmt(secs) + " s exceeds the " + fmt(c.budget_seconds) +
                             " s budget");
    std::printf("criterion %2d: %s (%.1f s) - %s\n", c.id, out.pass ? "PASS" : "FAIL", secs,
                out.detail.c_str());
    std::fflush(stdout);
    if (!out.pass) ++failures;
  }
  return failures;
}
