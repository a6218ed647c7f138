#pragma once

#include <cstdint>

#include "spde/field.hpp"

namespace spde {

/// Counter-based Gaussian stream.
///
/// Stream key derivation (documented so replicas are reproducible anywhere):
///   key     = mix(seed ^ GOLDEN * (replica_id + 1))
///   u64(n)  = mix(key + GOLDEN * n)        n = draw counter
/// with GOLDEN = 0x9E3779B97F4A7C15 and mix = the SplitMix64 finalizer.
/// Draws depend only on (seed, replica_id, counter), so parallel replicas are
/// reorder-independent and identical (seed, replica_id) replays bit-identical
/// sequences. Normals come from the trigonometric Box-Muller transform (two
/// uniforms per pair, second value cached).
class NoiseStream {
 public:
  explicit NoiseStream(std::uint64_t master_seed, std::uint64_t replica_id = 0);

  std::uint64_t master_seed() const { return seed_; }
  std::uint64_t replica_id() const { return replica_; }
  std::uint64_t counter() const { return counter_; }

  std::uint64_t next_u64();
  /// Uniform on (0, 1].
  double uniform();
  /// Standard normal.
  double normal();
  /// One Box-Muller pair, bypassing the cache.
  void normal_pair(double& z1, double& z2);

  /// Cylindrical Gaussian draw: modal coordinates are iid N(0,1); nodal
  /// coordinates are iid N(0, 1/h) with h = 1/(J+1), so that h E[GG^T] = I.
  FieldState draw_cylindrical(int J, Representation rep);

  struct CoupledDraw {
    FieldState g1, g2, g;  // g = (g1 + g2)/sqrt(2), itself cylindrical
  };
  /// Two independent cylindrical draws plus their shared-path combination,
  /// used to drive the modified and standard schemes on the same Wiener path.
  CoupledDraw draw_coupled_pair(int J, Representation rep);

 private:
  std::uint64_t seed_;
  std::uint64_t replica_;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

}  // namespace spde
