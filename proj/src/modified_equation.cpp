#include "spde/modified_equation.hpp"

#include <cmath>
#include <stdexcept>

namespace spde {

ModifiedSpectra compute_modified_spectra(const SpectralOperator& op, double tau) {
  if (!(tau > 0.0)) throw std::invalid_argument("compute_modified_spectra: tau must be positive");
  ModifiedSpectra s;
  s.tau = tau;
  s.lambda_tau.resize(static_cast<size_t>(op.J));
  s.q_tau.resize(static_cast<size_t>(op.J));
  for (int j = 0; j < op.J; ++j) {
    const double lam = op.lambdas[static_cast<size_t>(j)];
    const double lg = std::log1p(tau * lam);
    s.lambda_tau[static_cast<size_t>(j)] = lg / tau;
    s.q_tau[static_cast<size_t>(j)] = lg / (tau * lam);
  }
  return s;
}

std::vector<double> ModifiedSpectra::semigroup(double t) const {
  std::vector<double> e(lambda_tau.size());
  for (size_t j = 0; j < lambda_tau.size(); ++j) e[j] = std::exp(-t * lambda_tau[j]);
  return e;
}

IdentityReport check_identities(const ModifiedSpectra& spectra, const ResolventFactors& f,
                                const SpectralOperator& op) {
  if (f.mode != FactorMode::spectral)
    throw std::invalid_argument("check_identities: spectral factors required");
  if (f.J != op.J || static_cast<int>(spectra.lambda_tau.size()) != op.J)
    throw std::invalid_argument("check_identities: size mismatch");
  IdentityReport rep;
  const double tol = 1e-12;
  for (int j = 0; j < op.J; ++j) {
    const double lam = op.lambdas[static_cast<size_t>(j)];
    const double a = f.a_scalars[static_cast<size_t>(j)];
    const double tau = f.tau;
    // b from the second-formulation display, independent of the factored forms
    const double b = std::sqrt(2.0 + tau * lam) / (std::sqrt(2.0) * (1.0 + tau * lam));
    const double b2 = b * b;
    // 1 - a^2 = (1 - a)(1 + a) with 1 - a = tau lambda a; the factored form
    // avoids the cancellation that dominates when tau lambda is tiny
    const double one_minus_a2 = tau * lam * a * (1.0 + a);
    const double r1 = std::abs(one_minus_a2 - 2.0 * tau * lam * b2) / one_minus_a2;
    const double r2 = std::abs(tau * b2 / one_minus_a2 - 0.5 / lam) * (2.0 * lam);
    const double r3 =
        std::abs(spectra.q_tau[static_cast<size_t>(j)] / spectra.lambda_tau[static_cast<size_t>(j)] -
                 1.0 / lam) * lam;
    const double r = std::max({r1, r2, r3});
    rep.max_residual = std::max(rep.max_residual, r);
    if (r > tol) rep.violations.push_back(j + 1);
  }
  return rep;
}

}  // namespace spde
