#include "spde/modified_equation.hpp"

#include <cmath>

#include "doctest.h"
#include "spde/noise.hpp"

using namespace spde;

TEST_SUITE("modified_equation") {

TEST_CASE("spectra closed forms") {
  SpectralOperator op;
  op.J = 1;
  op.lambdas = {1.0};
  const auto s = compute_modified_spectra(op, 1.0);
  CHECK(s.lambda_tau[0] == doctest::Approx(0.6931471805599453).epsilon(1e-14));
  CHECK(s.q_tau[0] == doctest::Approx(0.6931471805599453).epsilon(1e-14));

  // tau -> 0: q -> 1
  const auto s0 = compute_modified_spectra(op, 1e-8);
  CHECK(std::abs(s0.q_tau[0] - 1.0) < 1e-7);

  // e^{-tau lambda_tau} = 1/(1 + tau lambda) exactly
  const auto big = build_spectral(64);
  for (double tau : {1e-4, 0.01, 0.3, 1.0}) {
    const auto sp = compute_modified_spectra(big, tau);
    const auto e = sp.semigroup(tau);
    for (int j = 0; j < 64; ++j)
      CHECK(e[j] * (1.0 + tau * big.lambdas[j]) == doctest::Approx(1.0).epsilon(1e-13));
  }
}

TEST_CASE("check_identities over random (tau, lambda) pairs") {
  NoiseStream stream(77);
  for (int k = 0; k < 1000; ++k) {
    SpectralOperator op;
    op.J = 1;
    op.lambdas = {std::pow(10.0, -0.5 + 5.5 * stream.uniform())};
    const double tau = std::pow(10.0, -4.0 + 4.5 * stream.uniform());
    const auto f = factorize_resolvent(op, tau);
    const auto s = compute_modified_spectra(op, tau);
    const auto rep = check_identities(s, f, op);
    CHECK(rep.violations.empty());
    CHECK(rep.max_residual <= 1e-12);
  }
}

TEST_CASE("scalar spot check at tau lambda = 1") {
  // b^2 = 3/8, 1 - a^2 = 3/4 = 2 tau lambda b^2
  const double a = 0.5, b2 = 0.5 * (a * a + a);
  CHECK(b2 == doctest::Approx(3.0 / 8.0).epsilon(1e-15));
  CHECK(1.0 - a * a == doctest::Approx(2.0 * b2).epsilon(1e-15));
}

TEST_CASE("Q_tau bound and monotonicity") {
  const auto op = build_spectral(128);
  for (double tau : {1e-3, 0.05, 0.9}) {
    const auto s = compute_modified_spectra(op, tau);
    CHECK(s.q_tau[0] <= 1.0);
    for (int j = 1; j < 128; ++j) {
      CHECK(s.q_tau[j] > 0.0);
      CHECK(s.q_tau[j] <= s.q_tau[j - 1]);
    }
    // operator norm attained at mode 1: log(1 + tau lambda_1)/(tau lambda_1)
    CHECK(s.q_tau[0] == doctest::Approx(std::log1p(tau * op.lambdas[0]) / (tau * op.lambdas[0]))
                            .epsilon(1e-14));
  }
}

TEST_CASE("spectral gap of Lambda_tau on a tau grid") {
  const auto op = build_spectral(32);
  const double tau0 = 0.8;
  const double gap = std::log1p(tau0 * op.lambdas[0]) / tau0;
  for (double tau = 0.05; tau <= tau0 + 1e-12; tau += 0.05) {
    const auto s = compute_modified_spectra(op, tau);
    for (int j = 0; j < 32; ++j) CHECK(s.lambda_tau[j] >= gap - 1e-12);
    CHECK(s.lambda_tau[0] <= op.lambdas[0] + 1e-12);  // lambda_tau <= lambda
  }
}

}  // TEST_SUITE
