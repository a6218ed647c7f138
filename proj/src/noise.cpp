#include "spde/noise.hpp"

#include <cmath>

namespace spde {
namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

inline std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ull;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBull;
  z ^= z >> 31;
  return z;
}

}  // namespace

NoiseStream::NoiseStream(std::uint64_t master_seed, std::uint64_t replica_id)
    : seed_(master_seed),
      replica_(replica_id),
      key_(mix64(master_seed ^ (kGolden * (replica_id + 1)))) {}

std::uint64_t NoiseStream::next_u64() { return mix64(key_ + kGolden * ++counter_); }

double NoiseStream::uniform() {
  // (0, 1]: never returns 0, so log() below is safe.
  return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
}

void NoiseStream::normal_pair(double& z1, double& z2) {
  const double u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double t = 6.283185307179586476925286766559 * u2;
  z1 = r * std::cos(t);
  z2 = r * std::sin(t);
}

double NoiseStream::normal() {
  if (has_cached_) {
    has_cached_ = false;
    return cached_;
  }
  double z1, z2;
  normal_pair(z1, z2);
  cached_ = z2;
  has_cached_ = true;
  return z1;
}

FieldState NoiseStream::draw_cylindrical(int J, Representation rep) {
  if (J < 1) throw std::invalid_argument("draw_cylindrical: J must be >= 1");
  FieldState out = FieldState::zeros(J, rep);
  const double scale = rep == Representation::nodal ? std::sqrt(static_cast<double>(J + 1)) : 1.0;
  for (int i = 0; i < J; ++i) out.values[static_cast<size_t>(i)] = scale * normal();
  return out;
}

NoiseStream::CoupledDraw NoiseStream::draw_coupled_pair(int J, Representation rep) {
  CoupledDraw d;
  d.g1 = draw_cylindrical(J, rep);
  d.g2 = draw_cylindrical(J, rep);
  d.g = FieldState::zeros(J, rep);
  const double inv_sqrt2 = 0.70710678118654752440;
  for (int i = 0; i < J; ++i) {
    d.g.values[static_cast<size_t>(i)] =
        (d.g1.values[static_cast<size_t>(i)] + d.g2.values[static_cast<size_t>(i)]) * inv_sqrt2;
  }
  return d;
}

}  // namespace spde
