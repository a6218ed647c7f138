#pragma once

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>

namespace spde {

inline constexpr const char* kVersion = "0.1.0";

/// CSV with '#'-prefixed metadata comments, one header row, and numeric rows
/// printed with 17 significant digits for round-trip fidelity.
class CsvWriter {
 public:
  explicit CsvWriter(const std::filesystem::path& path);

  void comment(std::string_view key, std::string_view value);
  void header(std::initializer_list<const char*> cols);
  void header(std::span<const std::string> cols);
  void row(std::span<const double> values);

  static std::string format(double v);

 private:
  std::ofstream out_;
};

}  // namespace spde
