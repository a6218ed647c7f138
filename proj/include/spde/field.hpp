#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace spde {

enum class Representation { nodal, modal };

inline const char* representation_name(Representation r) {
  return r == Representation::nodal ? "nodal" : "modal";
}

/// A length-J real field, either grid samples at the interior nodes
/// xi_i = i/(J+1) (nodal) or sine coefficients (modal). Operations never mix
/// representations; mismatches throw.
struct FieldState {
  std::vector<double> values;
  Representation rep = Representation::modal;

  FieldState() = default;
  FieldState(std::vector<double> v, Representation r) : values(std::move(v)), rep(r) {}

  static FieldState zeros(int J, Representation r) {
    return FieldState(std::vector<double>(static_cast<size_t>(J), 0.0), r);
  }

  int size() const { return static_cast<int>(values.size()); }

  /// Mesh width of the implied interior grid.
  double mesh() const { return 1.0 / (size() + 1); }
};

inline void require_rep(const FieldState& x, Representation want, const char* where) {
  if (x.rep != want) {
    throw std::invalid_argument(std::string(where) + ": expected " +
                                representation_name(want) + " field, got " +
                                representation_name(x.rep));
  }
}

inline void require_size(const FieldState& x, int J, const char* where) {
  if (x.size() != J) {
    throw std::invalid_argument(std::string(where) + ": size mismatch (" +
                                std::to_string(x.size()) + " vs " + std::to_string(J) + ")");
  }
}

}  // namespace spde
