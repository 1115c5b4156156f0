#pragma once
// Deterministic CSV artifacts: 17-significant-digit locale-free number
// formatting, '\n' line endings, '#' comment lines, and a provenance footer
// carrying a hash of the config that produced the file.

#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

namespace rrm {

// Shortest form with 17 significant digits; never locale-dependent.  NaNs
// normalize to "nan" regardless of sign.
std::string format_double(double v);

std::uint64_t fnv1a64(const std::string& bytes);
std::string hash_hex(const std::string& bytes);

class CsvWriter {
 public:
  explicit CsvWriter(const std::string& path);
  void header(const std::vector<std::string>& cols);
  void cells(const std::vector<std::string>& vals);
  void row(const std::vector<double>& vals);
  void comment(const std::string& text);
  void footer_hash(const std::string& config_text);

 private:
  std::ofstream out_;
};

}  // namespace rrm
