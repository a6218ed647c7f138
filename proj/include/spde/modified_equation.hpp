#pragma once

#include <vector>

#include "spde/operators.hpp"

namespace spde {

/// Spectra of the modified-equation operators: lambda_{tau,j} = log(1+tau*lambda_j)/tau
/// and q_{tau,j} = log(1+tau*lambda_j)/(tau*lambda_j). These exist for validation
/// and the exponential-form stepper only; the FD pipeline never materializes them.
struct ModifiedSpectra {
  double tau = 0.0;
  std::vector<double> lambda_tau;
  std::vector<double> q_tau;

  /// Per-mode scalars of e^{-t Lambda_tau}.
  std::vector<double> semigroup(double t) const;
};

ModifiedSpectra compute_modified_spectra(const SpectralOperator& op, double tau);

/// Per-mode checks, to 1e-12:
///   (i)   1 - a^2 = 2 tau lambda b^2   with a = 1/(1+tau lambda), b^2 = (2+tau lambda)/(2(1+tau lambda)^2)
///   (ii)  tau b^2 / (1 - a^2) = 1/(2 lambda)
///   (iii) q_{tau,j} / lambda_{tau,j} = 1/lambda_j
struct IdentityReport {
  std::vector<int> violations;  // 1-indexed modes, expected empty
  double max_residual = 0.0;
};

IdentityReport check_identities(const ModifiedSpectra& spectra, const ResolventFactors& f,
                                const SpectralOperator& op);

}  // namespace spde
