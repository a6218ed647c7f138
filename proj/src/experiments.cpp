#include "spde/experiments.hpp"

#include "spde/diagnostics.hpp"

namespace spde {

CoupledPathsResult run_coupled_fd_paths(const FDOperator& op, const ProblemSpec& p, double tau,
                                        long n_steps, NoiseStream& stream, bool record_paths) {
  const ResolventFactors f = factorize_resolvent(op, tau);
  CoupledPathsResult res;
  res.final_modified = FieldState::zeros(op.J, Representation::nodal);
  res.final_standard = FieldState::zeros(op.J, Representation::nodal);
  if (record_paths) {
    res.path_modified.times.push_back(0.0);
    res.path_modified.states.push_back(res.final_modified);
    res.path_standard.times.push_back(0.0);
    res.path_standard.states.push_back(res.final_standard);
  }
  for (long n = 0; n < n_steps; ++n) {
    const auto d = stream.draw_coupled_pair(op.J, Representation::nodal);
    res.final_modified = step_modified(f, p, nullptr, res.final_modified, d.g1, d.g2);
    res.final_standard = step_standard(f, p, nullptr, res.final_standard, d.g);
    const double t = tau * static_cast<double>(n + 1);
    res.times.push_back(t);
    res.qv_modified.push_back(quadratic_variation(res.final_modified));
    res.qv_standard.push_back(quadratic_variation(res.final_standard));
    if (record_paths) {
      res.path_modified.times.push_back(t);
      res.path_modified.states.push_back(res.final_modified);
      res.path_standard.times.push_back(t);
      res.path_standard.states.push_back(res.final_standard);
    }
  }
  return res;
}

}  // namespace spde
