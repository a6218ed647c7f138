#pragma once

#include "spde/integrators.hpp"
#include "spde/noise.hpp"

namespace spde {

/// Modified and standard FD trajectories driven by the shared Wiener path
/// (Gamma_{n,1} + Gamma_{n,2} = sqrt(2) Gamma_n), with per-step quadratic
/// variation series. This is the Figure 1/2 regularity-contrast experiment.
struct CoupledPathsResult {
  std::vector<double> times;        // after each step
  std::vector<double> qv_modified;  // spatial quadratic variation per step
  std::vector<double> qv_standard;
  FieldState final_modified;
  FieldState final_standard;
  PathRecord path_modified;  // filled when record_paths
  PathRecord path_standard;
};

CoupledPathsResult run_coupled_fd_paths(const FDOperator& op, const ProblemSpec& p, double tau,
                                        long n_steps, NoiseStream& stream,
                                        bool record_paths = false);

}  // namespace spde
