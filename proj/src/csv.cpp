// CSV writing with byte-reproducible output: identical inputs must serialize
// to identical files on every run and platform.

#include "rrmlab/csv.hpp"

#include <charconv>
#include <cmath>

#include "rrmlab/errors.hpp"

namespace rrm {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[48];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hash_hex(const std::string& bytes) {
  static const char* digits = "0123456789abcdef";
  std::uint64_t h = fnv1a64(bytes);
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[std::size_t(i)] = digits[h & 0xf];
    h >>= 4;
  }
  return out;
}

CsvWriter::CsvWriter(const std::string& path) : out_(path, std::ios::binary) {
  if (!out_) throw RunError("cannot open output file: " + path);
}

void CsvWriter::header(const std::vector<std::string>& cols) { cells(cols); }

void CsvWriter::cells(const std::vector<std::string>& vals) {
  for (std::size_t i = 0; i < vals.size(); ++i) {
    if (i) out_ << ',';
    out_ << vals[i];
  }
  out_ << '\n';
}

void CsvWriter::row(const std::vector<double>& vals) {
  for (std::size_t i = 0; i < vals.size(); ++i) {
    if (i) out_ << ',';
    out_ << format_double(vals[i]);
  }
  out_ << '\n';
}

void CsvWriter::comment(const std::string& text) { out_ << "# " << text << '\n'; }

void CsvWriter::footer_hash(const std::string& config_text) {
  comment("config-hash: " + hash_hex(config_text));
}

}  // namespace rrm
