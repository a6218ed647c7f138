#include "spde/io.hpp"

#include <cstdio>
#include <stdexcept>

namespace spde {

CsvWriter::CsvWriter(const std::filesystem::path& path) : out_(path) {
  if (!out_) throw std::runtime_error("CsvWriter: cannot open " + path.string());
}

void CsvWriter::comment(std::string_view key, std::string_view value) {
  out_ << "# " << key << " = " << value << "\n";
}

void CsvWriter::header(std::initializer_list<const char*> cols) {
  bool first = true;
  for (const char* c : cols) {
    if (!first) out_ << ",";
    out_ << c;
    first = false;
  }
  out_ << "\n";
}

void CsvWriter::header(std::span<const std::string> cols) {
  for (size_t i = 0; i < cols.size(); ++i) {
    if (i) out_ << ",";
    out_ << cols[i];
  }
  out_ << "\n";
}

void CsvWriter::row(std::span<const double> values) {
  for (size_t i = 0; i < values.size(); ++i) {
    if (i) out_ << ",";
    out_ << format(values[i]);
  }
  out_ << "\n";
}

std::string CsvWriter::format(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace spde
