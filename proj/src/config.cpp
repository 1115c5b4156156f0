// Config parsing: a strict flat INI dialect with '#' comments, quoted
// expression values, and eager validation of everything that can fail early.

#include "rrmlab/config.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "rrmlab/errors.hpp"
#include "rrmlab/smallmat.hpp"

namespace rrm {
namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

// Strips an unquoted '#' comment, honoring double-quoted spans.
std::string strip_comment(const std::string& line) {
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') quoted = !quoted;
    if (line[i] == '#' && !quoted) return line.substr(0, i);
  }
  return line;
}

double parse_double(const std::string& v, int line) {
  const char* s = v.c_str();
  char* end = nullptr;
  const double x = std::strtod(s, &end);
  if (end == s || *end != '\0')
    throw ConfigError("expected a number, got '" + v + "'", line);
  return x;
}

int parse_int(const std::string& v, int line) {
  const double x = parse_double(v, line);
  const int i = static_cast<int>(x);
  if (double(i) != x) throw ConfigError("expected an integer, got '" + v + "'", line);
  return i;
}

std::vector<std::string> split_ws(const std::string& v) {
  std::istringstream in(v);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

std::vector<std::string> split_packed(const std::string& v) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : v) {
    if (c == ';') {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim(cur));
  return out;
}

// Unquotes "..." values; quotes are only needed around expressions.
std::string unquote(const std::string& v, int line) {
  if (v.size() >= 2 && v.front() == '"' && v.back() == '"') return v.substr(1, v.size() - 2);
  if (!v.empty() && (v.front() == '"' || v.back() == '"'))
    throw ConfigError("unbalanced quotes in '" + v + "'", line);
  return v;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  cfg.source_text = text;

  std::istringstream in(text);
  std::string raw;
  std::string section;
  int line = 0;
  bool seen_n = false, seen_grid = false, seen_chart = false;
  int line_chart = -1, line_p = -1, line_b = -1;

  while (std::getline(in, raw)) {
    ++line;
    const std::string body = trim(strip_comment(raw));
    if (body.empty()) continue;

    if (body.front() == '[') {
      if (body.back() != ']') throw ConfigError("unterminated section header", line);
      section = trim(body.substr(1, body.size() - 2));
      if (section != "grid" && section != "chart" && section != "background" &&
          section != "metric" && section != "params" && section != "run")
        throw ConfigError("unknown section [" + section + "]", line);
      if (section == "grid") seen_grid = true;
      if (section == "chart") {
        seen_chart = true;
        line_chart = line;
      }
      if (section == "background") cfg.has_background = true;
      continue;
    }

    const std::size_t eq = body.find('=');
    if (eq == std::string::npos) throw ConfigError("expected 'key = value'", line);
    const std::string key = trim(body.substr(0, eq));
    const std::string val = unquote(trim(body.substr(eq + 1)), line);
    if (key.empty()) throw ConfigError("empty key", line);
    if (val.empty()) throw ConfigError("empty value for '" + key + "'", line);

    if (section.empty()) {
      if (key == "n") {
        cfg.n = parse_int(val, line);
        seen_n = true;
        if (cfg.n < 2 || cfg.n > 4)
          throw ConfigError("n must be 2, 3, or 4 (got " + val + ")", line);
      } else {
        throw ConfigError("unknown top-level key '" + key + "' (only n)", line);
      }
    } else if (section == "grid") {
      if (key == "a")
        cfg.a = parse_double(val, line);
      else if (key == "b")
        cfg.b = parse_double(val, line);
      else if (key == "nr")
        cfg.nr = parse_int(val, line);
      else if (key == "inset")
        cfg.inset = parse_double(val, line);
      else
        throw ConfigError("unknown [grid] key '" + key + "'", line);
    } else if (section == "chart") {
      if (key == "kind") {
        if (val == "box")
          cfg.chart.kind = ChartKind::periodic_box;
        else if (val == "sphere")
          cfg.chart.kind = ChartKind::latlong_sphere;
        else
          throw ConfigError("chart kind must be box or sphere, got '" + val + "'", line);
      } else if (key == "res") {
        cfg.chart.res.clear();
        for (const std::string& t : split_ws(val)) cfg.chart.res.push_back(parse_int(t, line));
      } else if (key == "period") {
        cfg.chart.period.clear();
        for (const std::string& t : split_ws(val))
          cfg.chart.period.push_back(parse_double(t, line));
      } else if (key == "ghat") {
        cfg.chart.ghat = split_packed(val);
        for (const std::string& e : cfg.chart.ghat) Expr::parse(e);
      } else if (key == "scale") {
        cfg.chart.scale = parse_double(val, line);
      } else {
        throw ConfigError("unknown [chart] key '" + key + "'", line);
      }
    } else if (section == "background") {
      if (key == "preset") {
        if (val == "hyperbolic")
          cfg.background.preset = BackgroundPreset::hyperbolic;
        else if (val == "euclidean")
          cfg.background.preset = BackgroundPreset::euclidean;
        else if (val == "cylindrical")
          cfg.background.preset = BackgroundPreset::cylindrical;
        else if (val == "spherical")
          cfg.background.preset = BackgroundPreset::spherical;
        else if (val == "custom")
          cfg.background.preset = BackgroundPreset::custom;
        else
          throw ConfigError("unknown background preset '" + val + "'", line);
      } else if (key == "k") {
        cfg.background.k = parse_double(val, line);
      } else if (key == "h") {
        cfg.background.h_expr = val;
        Expr::parse(val);
      } else {
        throw ConfigError("unknown [background] key '" + key + "'", line);
      }
    } else if (section == "metric") {
      if (key == "family") {
        cfg.family = val;
        // Expression matrices are validated eagerly; builtin names when built.
        if (val.find(';') != std::string::npos)
          for (const std::string& e : split_packed(val)) Expr::parse(e);
      } else if (key == "P") {
        cfg.P = split_packed(val);
        for (const std::string& e : cfg.P) Expr::parse(e);
        line_p = line;
      } else if (key == "B") {
        cfg.B = val;
        Expr::parse(val);
        line_b = line;
      } else {
        throw ConfigError("unknown [metric] key '" + key + "'", line);
      }
    } else if (section == "params") {
      cfg.params[key] = parse_double(val, line);
    } else if (section == "run") {
      if (key == "out") {
        cfg.out = val;
      } else if (key == "endpoint") {
        if (val == "outer")
          cfg.endpoint = Endpoint::outer;
        else if (val == "inner")
          cfg.endpoint = Endpoint::inner;
        else
          throw ConfigError("endpoint must be outer or inner, got '" + val + "'", line);
      } else if (key == "decomp") {
        if (val == "f")
          cfg.decomp = DecompKind::f_type;
        else if (val == "base")
          cfg.decomp = DecompKind::bar_type;
        else
          throw ConfigError("decomp must be f or base, got '" + val + "'", line);
      } else {
        throw ConfigError("unknown [run] key '" + key + "'", line);
      }
    }
  }

  if (!seen_n) throw ConfigError("missing top-level n");
  if (!seen_grid || cfg.nr == 0) throw ConfigError("missing [grid] section with a, b, nr");
  if (!seen_chart || cfg.chart.res.empty()) throw ConfigError("missing [chart] section with res");

  const int d = cfg.n - 1;
  if (static_cast<int>(cfg.chart.res.size()) != d)
    throw ConfigError("dimension mismatch: n = " + std::to_string(cfg.n) + " needs " +
                          std::to_string(d) + " chart axes, got " +
                          std::to_string(cfg.chart.res.size()),
                      line_chart);
  if (cfg.chart.kind == ChartKind::latlong_sphere && cfg.n != 3)
    throw ConfigError("sphere charts need n = 3", line_chart);

  cfg.has_perturbation = !cfg.P.empty() || !cfg.B.empty();
  if (cfg.has_perturbation) {
    if (!cfg.family.empty())
      throw ConfigError("[metric] takes either family or the P/B pair, not both", line_p);
    if (cfg.P.empty() || cfg.B.empty())
      throw ConfigError("perturbation needs both P and B", cfg.P.empty() ? line_b : line_p);
    if (static_cast<int>(cfg.P.size()) != sm::pack_count(d))
      throw ConfigError("P needs " + std::to_string(sm::pack_count(d)) +
                            " packed entries for n = " + std::to_string(cfg.n) + ", got " +
                            std::to_string(cfg.P.size()),
                      line_p);
    if (!cfg.has_background)
      throw ConfigError("perturbation metrics need a [background] section", line_p);
  }

  cfg.chart.params = cfg.params;
  cfg.background.params = cfg.params;
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

}  // namespace rrm
