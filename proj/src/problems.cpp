#include "spde/problems.hpp"

#include <cmath>
#include <stdexcept>

namespace spde {

ProblemSpec make_ou() {
  ProblemSpec p;
  p.label = "ou";
  return p;
}

ProblemSpec make_sine() {
  ProblemSpec p;
  p.f = [](double z) { return std::sin(z); };
  p.v = [](double z) { return -std::cos(z); };
  p.lipschitz = 1.0;
  p.label = "sine";
  return p;
}

ProblemSpec make_gradient_cos(double beta) {
  ProblemSpec p;
  p.f = [beta](double z) { return beta * std::sin(z); };
  p.v = [beta](double z) { return -beta * std::cos(z); };
  p.lipschitz = std::abs(beta);
  p.label = "gradient_cos(" + std::to_string(beta) + ")";
  return p;
}

ProblemSpec problem_by_name(const std::string& name) {
  if (name == "ou") return make_ou();
  if (name == "sine") return make_sine();
  const std::string prefix = "gradient_cos(";
  if (name.rfind(prefix, 0) == 0 && name.back() == ')') {
    const std::string arg = name.substr(prefix.size(), name.size() - prefix.size() - 1);
    size_t pos = 0;
    const double beta = std::stod(arg, &pos);
    if (pos != arg.size()) throw std::invalid_argument("problem_by_name: bad beta in '" + name + "'");
    return make_gradient_cos(beta);
  }
  throw std::invalid_argument("problem_by_name: unknown problem '" + name + "'");
}

FieldState apply_F(const ProblemSpec& p, const FieldState& x) {
  require_rep(x, Representation::nodal, "apply_F");
  FieldState out = FieldState::zeros(x.size(), Representation::nodal);
  if (!p.has_drift()) return out;
  for (int i = 0; i < x.size(); ++i)
    out.values[static_cast<size_t>(i)] = p.f(x.values[static_cast<size_t>(i)]);
  return out;
}

double evaluate_V(const ProblemSpec& p, const FieldState& x) {
  if (!p.has_potential()) throw std::invalid_argument("evaluate_V: problem has no potential");
  require_rep(x, Representation::nodal, "evaluate_V");
  const double h = x.mesh();
  double s = p.v(0.0);  // two half-weight Dirichlet boundary nodes
  for (int i = 0; i < x.size(); ++i) s += p.v(x.values[static_cast<size_t>(i)]);
  return -h * s;
}

}  // namespace spde
