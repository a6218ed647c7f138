#pragma once

#include <functional>
#include <string>

#include "spde/field.hpp"

namespace spde {

/// Semilinear problem data: Nemytskii nonlinearity F(x) = f(x(.)) applied
/// pointwise in nodal coordinates, optional scalar antiderivative v with
/// v' = f defining the potential V(x) = -int v(x(xi)) dxi (so F = -DV),
/// and the Lipschitz bound L_F of f.
struct ProblemSpec {
  std::function<double(double)> f;  // null => F == 0 (Ornstein-Uhlenbeck)
  std::function<double(double)> v;  // optional antiderivative of f
  double lipschitz = 0.0;
  std::string label = "ou";

  bool has_drift() const { return static_cast<bool>(f); }
  bool has_potential() const { return static_cast<bool>(v); }
};

ProblemSpec make_ou();
ProblemSpec make_sine();
/// f(z) = beta sin z, v(z) = -beta cos z, V(x) = beta int cos(x(xi)) dxi;
/// bounded V with bounded Lipschitz gradient.
ProblemSpec make_gradient_cos(double beta);
/// "ou" | "sine" | "gradient_cos(<beta>)"
ProblemSpec problem_by_name(const std::string& name);

/// Componentwise f; nodal input only.
FieldState apply_F(const ProblemSpec& p, const FieldState& x);

/// Discrete potential: -h (sum_i v(x_i) + v(0)), the zero-boundary trapezoid
/// quadrature of -int v(x(xi)) dxi (the boundary term keeps V exact on
/// constants, e.g. V(0) = beta for the gradient_cos problem).
double evaluate_V(const ProblemSpec& p, const FieldState& x);

/// Slow-fast system data: pointwise coupling G applied through the nodal
/// representation, bounded Lipschitz noise amplitude sigma, timescale ratio
/// epsilon.
struct SlowFastSpec {
  std::function<double(double, double)> G;          // (x value, y value) -> R
  std::function<double(const FieldState&)> sigma;   // H -> R
  double epsilon = 1.0;
};

}  // namespace spde
