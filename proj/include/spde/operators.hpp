#pragma once

#include <functional>
#include <span>
#include <vector>

#include "spde/field.hpp"

namespace spde {

/// Dirichlet operator in spectral form: Lambda e_j = lambda_j e_j with
/// e_j(xi) = sqrt(2) sin(j pi xi). For the constant-coefficient case
/// lambda_j = (j pi)^2.
struct SpectralOperator {
  int J = 0;
  std::vector<double> lambdas;

  double basis(int j, double xi) const;  // e_j(xi), 1-indexed
};

SpectralOperator build_spectral(int J);

/// Tridiagonal finite-difference operator Lambda_h assembled from the
/// diffusion coefficient a(.) on the interior grid xi_i = i h, h = 1/(J+1),
/// with midpoint sampling a(xi_{i +/- 1/2}) and Dirichlet rows eliminated.
struct FDOperator {
  int J = 0;
  double h = 0.0;
  std::vector<double> diag;     // J entries
  std::vector<double> offdiag;  // J-1 entries

  /// y = Lambda_h x (plain tridiagonal multiply on raw coefficients).
  std::vector<double> apply(std::span<const double> x) const;
  /// Eigenvalues (4/h^2) sin^2(j pi h / 2) of the constant-coefficient stencil.
  static double constant_coefficient_eigenvalue(int j, int J);
};

FDOperator build_fd(int J, const std::function<double(double)>& a);
FDOperator build_fd(int J);  // a == 1

enum class FactorMode { spectral, fd_cholesky };

/// Factorizations of I + tau*Lambda backing A_tau = (I + tau*Lambda)^{-1} and
/// the modified-scheme noise operators B_{tau,1} = A_tau/sqrt(2) and B_{tau,2}
/// with B_{tau,2} B_{tau,2}^T = A_tau/2. Spectral: per-mode scalars
/// 1/(1 + tau*lambda_j). FD: lower-bidiagonal Cholesky L with L L^T = I + tau*Lambda_h,
/// and B_{tau,2} realized as L^{-T}/sqrt(2) (one triangular solve per draw).
struct ResolventFactors {
  FactorMode mode = FactorMode::spectral;
  double tau = 0.0;
  int J = 0;
  std::vector<double> a_scalars;  // spectral only
  std::vector<double> chol_d;     // FD: diagonal of L
  std::vector<double> chol_e;     // FD: subdiagonal of L

  Representation representation() const {
    return mode == FactorMode::spectral ? Representation::modal : Representation::nodal;
  }
};

ResolventFactors factorize_resolvent(const SpectralOperator& op, double tau);
ResolventFactors factorize_resolvent(const FDOperator& op, double tau);

FieldState apply_A_tau(const ResolventFactors& f, const FieldState& x);

/// sqrt(tau) * (B_{tau,1} g1 + B_{tau,2} g2) for independent cylindrical g1, g2.
FieldState sample_modified_noise(const ResolventFactors& f, const FieldState& g1,
                                 const FieldState& g2);

/// |x|_alpha = (sum_j lambda_j^{2 alpha} x_j^2)^{1/2}, modal input only.
double sobolev_norm(const SpectralOperator& op, const FieldState& x, double alpha);

/// Orthogonal discrete sine transform pair on the interior grid, scaled so the
/// grid samples of e_j map to the j-th unit coefficient vector and
/// h * sum(nodal^2) = sum(modal^2).
class SineTransform {
 public:
  explicit SineTransform(int J);

  int size() const { return J_; }
  void to_nodal(std::span<const double> modal, std::span<double> nodal) const;
  void to_modal(std::span<const double> nodal, std::span<double> modal) const;
  FieldState to_nodal(const FieldState& x) const;
  FieldState to_modal(const FieldState& x) const;

 private:
  int J_;
  double h_;
  std::vector<double> s_;  // row-major J x J, s[i][j] = sqrt(2) sin((i+1)(j+1) pi h)
};

/// Convenience form of the transform keyed to a spectral operator; builds a
/// SineTransform internally, so hot paths should hold a SineTransform instead.
FieldState nodal_modal_transform(const SpectralOperator& op, const FieldState& x,
                                 Representation target);

}  // namespace spde
