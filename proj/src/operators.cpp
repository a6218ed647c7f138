#include "spde/operators.hpp"

#include <cmath>
#include <stdexcept>

namespace spde {

namespace {
constexpr double kPi = 3.14159265358979323846264338328;
constexpr double kInvSqrt2 = 0.70710678118654752440;
}  // namespace

double SpectralOperator::basis(int j, double xi) const {
  return std::sqrt(2.0) * std::sin(j * kPi * xi);
}

SpectralOperator build_spectral(int J) {
  if (J < 1) throw std::invalid_argument("build_spectral: J must be >= 1");
  SpectralOperator op;
  op.J = J;
  op.lambdas.resize(static_cast<size_t>(J));
  for (int j = 1; j <= J; ++j) {
    const double jp = j * kPi;
    op.lambdas[static_cast<size_t>(j - 1)] = jp * jp;
  }
  return op;
}

std::vector<double> FDOperator::apply(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != J) throw std::invalid_argument("FDOperator::apply: size mismatch");
  std::vector<double> y(static_cast<size_t>(J));
  for (int i = 0; i < J; ++i) {
    double v = diag[static_cast<size_t>(i)] * x[static_cast<size_t>(i)];
    if (i > 0) v += offdiag[static_cast<size_t>(i - 1)] * x[static_cast<size_t>(i - 1)];
    if (i + 1 < J) v += offdiag[static_cast<size_t>(i)] * x[static_cast<size_t>(i + 1)];
    y[static_cast<size_t>(i)] = v;
  }
  return y;
}

double FDOperator::constant_coefficient_eigenvalue(int j, int J) {
  const double h = 1.0 / (J + 1);
  const double s = std::sin(j * kPi * h / 2.0);
  return 4.0 / (h * h) * s * s;
}

FDOperator build_fd(int J, const std::function<double(double)>& a) {
  if (J < 1) throw std::invalid_argument("build_fd: J must be >= 1");
  FDOperator op;
  op.J = J;
  op.h = 1.0 / (J + 1);
  op.diag.resize(static_cast<size_t>(J));
  op.offdiag.resize(static_cast<size_t>(J - 1));
  const double h2 = op.h * op.h;
  // a sampled at midpoints xi_{i+1/2} = (i + 1/2) h, i = 0..J
  std::vector<double> am(static_cast<size_t>(J + 1));
  for (int i = 0; i <= J; ++i) {
    const double v = a((i + 0.5) * op.h);
    if (!(v > 0.0)) throw std::invalid_argument("build_fd: a(.) must be positive");
    am[static_cast<size_t>(i)] = v;
  }
  for (int i = 0; i < J; ++i) {
    op.diag[static_cast<size_t>(i)] = (am[static_cast<size_t>(i)] + am[static_cast<size_t>(i + 1)]) / h2;
    if (i + 1 < J) op.offdiag[static_cast<size_t>(i)] = -am[static_cast<size_t>(i + 1)] / h2;
  }
  return op;
}

FDOperator build_fd(int J) {
  return build_fd(J, [](double) { return 1.0; });
}

ResolventFactors factorize_resolvent(const SpectralOperator& op, double tau) {
  if (!(tau > 0.0)) throw std::invalid_argument("factorize_resolvent: tau must be positive");
  ResolventFactors f;
  f.mode = FactorMode::spectral;
  f.tau = tau;
  f.J = op.J;
  f.a_scalars.resize(static_cast<size_t>(op.J));
  for (int j = 0; j < op.J; ++j)
    f.a_scalars[static_cast<size_t>(j)] = 1.0 / (1.0 + tau * op.lambdas[static_cast<size_t>(j)]);
  return f;
}

ResolventFactors factorize_resolvent(const FDOperator& op, double tau) {
  if (!(tau > 0.0)) throw std::invalid_argument("factorize_resolvent: tau must be positive");
  ResolventFactors f;
  f.mode = FactorMode::fd_cholesky;
  f.tau = tau;
  f.J = op.J;
  f.chol_d.resize(static_cast<size_t>(op.J));
  f.chol_e.resize(static_cast<size_t>(op.J > 0 ? op.J - 1 : 0));
  // Cholesky of the SPD tridiagonal I + tau*Lambda_h.
  double prev_e = 0.0;
  for (int i = 0; i < op.J; ++i) {
    const double d = 1.0 + tau * op.diag[static_cast<size_t>(i)] - prev_e * prev_e;
    if (!(d > 0.0)) throw std::runtime_error("factorize_resolvent: Cholesky failure on SPD input");
    const double l = std::sqrt(d);
    f.chol_d[static_cast<size_t>(i)] = l;
    if (i + 1 < op.J) {
      const double e = tau * op.offdiag[static_cast<size_t>(i)] / l;
      f.chol_e[static_cast<size_t>(i)] = e;
      prev_e = e;
    }
  }
  return f;
}

namespace {

// L y = b (forward), then L^T x = y (backward); L lower bidiagonal.
void solve_LLt(const ResolventFactors& f, std::span<const double> b, std::span<double> x) {
  const int J = f.J;
  for (int i = 0; i < J; ++i) {
    double v = b[static_cast<size_t>(i)];
    if (i > 0) v -= f.chol_e[static_cast<size_t>(i - 1)] * x[static_cast<size_t>(i - 1)];
    x[static_cast<size_t>(i)] = v / f.chol_d[static_cast<size_t>(i)];
  }
  for (int i = J - 1; i >= 0; --i) {
    double v = x[static_cast<size_t>(i)];
    if (i + 1 < J) v -= f.chol_e[static_cast<size_t>(i)] * x[static_cast<size_t>(i + 1)];
    x[static_cast<size_t>(i)] = v / f.chol_d[static_cast<size_t>(i)];
  }
}

// L^T x = b only.
void solve_Lt(const ResolventFactors& f, std::span<const double> b, std::span<double> x) {
  const int J = f.J;
  for (int i = J - 1; i >= 0; --i) {
    double v = b[static_cast<size_t>(i)];
    if (i + 1 < J) v -= f.chol_e[static_cast<size_t>(i)] * x[static_cast<size_t>(i + 1)];
    x[static_cast<size_t>(i)] = v / f.chol_d[static_cast<size_t>(i)];
  }
}

void check_factor_input(const ResolventFactors& f, const FieldState& x, const char* where) {
  require_rep(x, f.representation(), where);
  require_size(x, f.J, where);
}

}  // namespace

FieldState apply_A_tau(const ResolventFactors& f, const FieldState& x) {
  check_factor_input(f, x, "apply_A_tau");
  FieldState out = FieldState::zeros(f.J, x.rep);
  if (f.mode == FactorMode::spectral) {
    for (int j = 0; j < f.J; ++j)
      out.values[static_cast<size_t>(j)] = f.a_scalars[static_cast<size_t>(j)] * x.values[static_cast<size_t>(j)];
  } else {
    solve_LLt(f, x.values, out.values);
  }
  return out;
}

FieldState sample_modified_noise(const ResolventFactors& f, const FieldState& g1,
                                 const FieldState& g2) {
  check_factor_input(f, g1, "sample_modified_noise");
  check_factor_input(f, g2, "sample_modified_noise");
  const double sqrt_tau = std::sqrt(f.tau);
  FieldState out = FieldState::zeros(f.J, g1.rep);
  if (f.mode == FactorMode::spectral) {
    for (int j = 0; j < f.J; ++j) {
      const double a = f.a_scalars[static_cast<size_t>(j)];
      // B1 = a/sqrt2, B2 = sqrt(a)/sqrt2 so that B2^2 = a/2.
      out.values[static_cast<size_t>(j)] =
          sqrt_tau * kInvSqrt2 *
          (a * g1.values[static_cast<size_t>(j)] + std::sqrt(a) * g2.values[static_cast<size_t>(j)]);
    }
  } else {
    std::vector<double> b1(static_cast<size_t>(f.J)), b2(static_cast<size_t>(f.J));
    solve_LLt(f, g1.values, b1);  // A_tau g1
    solve_Lt(f, g2.values, b2);   // L^{-T} g2, so B2 B2^T = (L L^T)^{-1}/2
    for (int i = 0; i < f.J; ++i)
      out.values[static_cast<size_t>(i)] =
          sqrt_tau * kInvSqrt2 * (b1[static_cast<size_t>(i)] + b2[static_cast<size_t>(i)]);
  }
  return out;
}

double sobolev_norm(const SpectralOperator& op, const FieldState& x, double alpha) {
  require_rep(x, Representation::modal, "sobolev_norm");
  require_size(x, op.J, "sobolev_norm");
  if (alpha < 0.0 || alpha > 1.0) throw std::invalid_argument("sobolev_norm: alpha must be in [0,1]");
  double s = 0.0;
  for (int j = 0; j < op.J; ++j) {
    const double c = x.values[static_cast<size_t>(j)];
    s += std::pow(op.lambdas[static_cast<size_t>(j)], 2.0 * alpha) * c * c;
  }
  return std::sqrt(s);
}

SineTransform::SineTransform(int J) : J_(J), h_(1.0 / (J + 1)) {
  if (J < 1) throw std::invalid_argument("SineTransform: J must be >= 1");
  s_.resize(static_cast<size_t>(J) * static_cast<size_t>(J));
  const double sqrt2 = std::sqrt(2.0);
  for (int i = 0; i < J; ++i)
    for (int j = 0; j < J; ++j)
      s_[static_cast<size_t>(i) * J + j] = sqrt2 * std::sin((i + 1.0) * (j + 1.0) * kPi * h_);
}

void SineTransform::to_nodal(std::span<const double> modal, std::span<double> nodal) const {
  for (int i = 0; i < J_; ++i) {
    const double* row = &s_[static_cast<size_t>(i) * J_];
    double acc = 0.0;
    for (int j = 0; j < J_; ++j) acc += row[j] * modal[static_cast<size_t>(j)];
    nodal[static_cast<size_t>(i)] = acc;
  }
}

void SineTransform::to_modal(std::span<const double> nodal, std::span<double> modal) const {
  for (int j = 0; j < J_; ++j) {
    const double* row = &s_[static_cast<size_t>(j) * J_];  // S is symmetric
    double acc = 0.0;
    for (int i = 0; i < J_; ++i) acc += row[i] * nodal[static_cast<size_t>(i)];
    modal[static_cast<size_t>(j)] = h_ * acc;
  }
}

FieldState SineTransform::to_nodal(const FieldState& x) const {
  require_rep(x, Representation::modal, "SineTransform::to_nodal");
  require_size(x, J_, "SineTransform::to_nodal");
  FieldState out = FieldState::zeros(J_, Representation::nodal);
  to_nodal(x.values, out.values);
  return out;
}

FieldState SineTransform::to_modal(const FieldState& x) const {
  require_rep(x, Representation::nodal, "SineTransform::to_modal");
  require_size(x, J_, "SineTransform::to_modal");
  FieldState out = FieldState::zeros(J_, Representation::modal);
  to_modal(x.values, out.values);
  return out;
}

FieldState nodal_modal_transform(const SpectralOperator& op, const FieldState& x,
                                 Representation target) {
  require_size(x, op.J, "nodal_modal_transform");
  if (x.rep == target) return x;
  SineTransform dst(op.J);
  return target == Representation::nodal ? dst.to_nodal(x) : dst.to_modal(x);
}

}  // namespace spde
