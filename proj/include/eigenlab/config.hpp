#ifndef EIGENLAB_CONFIG_HPP
#define EIGENLAB_CONFIG_HPP

#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "eigenlab/error.hpp"
#include "eigenlab/expr.hpp"
#include "eigenlab/opspec.hpp"
#include "eigenlab/principles.hpp"
#include "eigenlab/unbounded.hpp"

namespace eigenlab {

/// Run configuration: `[block]` headers followed by `key = value` lines.
/// `#` starts a comment. Keys are addressed as `block.key`.
class Config {
 public:
  struct Entry {
    std::string value;
    int line = 0;  // 0 for command-line overrides
  };

  static const std::map<std::string, std::set<std::string>>& schema() {
    static const std::map<std::string, std::set<std::string>> s = {
        {"operator", {"dim", "a", "b", "c", "a1", "a2", "b1", "b2", "form", "breakpoints",
                      "breakpoints_y", "period"}},
        {"domain", {"geometry", "params", "unbounded"}},
        {"solve", {"h", "tol", "max_iter", "schedule", "scheme", "eigenfunction", "margin"}},
        {"tail", {"r", "schedule"}},
        {"sweep", {"parameter", "values", "radius", "h", "band"}},
        {"barrier", {"kind", "phi", "beta", "lambda", "radius", "h", "rel_tol", "kinks"}},
        {"witness", {"u", "kind", "radius", "h"}},
        {"scenario", {"id"}},
    };
    return s;
  }

  static Config parse(std::string_view text) {
    Config cfg;
    std::string block;
    std::istringstream in{std::string(text)};
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
      ++line;
      std::string s = trim(strip_comment(raw));
      if (s.empty()) continue;
      if (s.front() == '[') {
        if (s.back() != ']') throw ConfigError(line, s, "unterminated block header");
        block = trim(s.substr(1, s.size() - 2));
        if (!schema().count(block)) throw ConfigError(line, block, "unknown block");
        continue;
      }
      const auto eq = s.find('=');
      if (eq == std::string::npos) throw ConfigError(line, s, "expected key = value");
      const std::string key = trim(s.substr(0, eq));
      if (block.empty()) throw ConfigError(line, key, "key outside of any block");
      cfg.assign(block + "." + key, unquote(trim(s.substr(eq + 1))), line, true);
    }
    return cfg;
  }

  static Config load(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError(0, path, "cannot open config file");
    std::stringstream ss;
    ss << f.rdbuf();
    return parse(ss.str());
  }

  /// Command-line override `block.key=value`; replaces any file value.
  void set(std::string_view assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError(0, std::string(assignment), "override must read block.key=value");
    assign(trim(std::string(assignment.substr(0, eq))),
           unquote(trim(std::string(assignment.substr(eq + 1)))), 0, false);
  }

  bool has(const std::string& key) const { return entries_.count(key) > 0; }
  bool has_block(const std::string& block) const {
    const std::string prefix = block + ".";
    for (const auto& [k, _] : entries_)
      if (k.compare(0, prefix.size(), prefix) == 0) return true;
    return false;
  }
  const std::map<std::string, Entry>& entries() const { return entries_; }
  int line_of(const std::string& key) const { return has(key) ? entries_.at(key).line : 0; }

  std::string str(const std::string& key, const std::string& fallback) const {
    return has(key) ? entries_.at(key).value : fallback;
  }
  std::string require(const std::string& key) const {
    if (!has(key)) throw ConfigError(0, key, "required field is missing");
    return entries_.at(key).value;
  }

  /// Numeric fields accept constant expressions such as `pi/4`.
  double number(const std::string& key, double fallback) const {
    return has(key) ? constant(key, entries_.at(key).value) : fallback;
  }
  int integer(const std::string& key, int fallback) const {
    if (!has(key)) return fallback;
    const double v = number(key, 0.0);
    if (v != std::floor(v) || std::fabs(v) > 1e9)
      throw ConfigError(line_of(key), key, "expected an integer");
    return static_cast<int>(v);
  }
  bool boolean(const std::string& key, bool fallback) const {
    if (!has(key)) return fallback;
    const std::string& v = entries_.at(key).value;
    if (v == "true" || v == "yes" || v == "1") return true;
    if (v == "false" || v == "no" || v == "0") return false;
    throw ConfigError(line_of(key), key, "expected true or false");
  }
  std::vector<double> numbers(const std::string& key, std::vector<double> fallback = {}) const {
    if (!has(key)) return fallback;
    std::vector<double> out;
    for (const std::string& item : split_list(entries_.at(key).value)) out.push_back(constant(key, item));
    return out;
  }
  ScalarField field(const std::string& key, const std::string& fallback, int dim) const {
    const std::string text = str(key, fallback);
    try {
      return parse_field(text, dim);
    } catch (const Error& e) {
      throw ConfigError(line_of(key), key, e.what());
    }
  }

  static std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    int depth = 0;
    std::string cur;
    for (char ch : s) {
      if (ch == '(') ++depth;
      if (ch == ')') --depth;
      if (ch == ',' && depth == 0) {
        out.push_back(trim(cur));
        cur.clear();
      } else {
        cur += ch;
      }
    }
    if (!trim(cur).empty() || !out.empty()) out.push_back(trim(cur));
    return out;
  }

 private:
  std::map<std::string, Entry> entries_;

  void assign(const std::string& key, std::string value, int line, bool reject_duplicate) {
    const auto dot = key.find('.');
    if (dot == std::string::npos) throw ConfigError(line, key, "expected block.key");
    const std::string block = key.substr(0, dot);
    const auto it = schema().find(block);
    if (it == schema().end()) throw ConfigError(line, key, "unknown block");
    if (!it->second.count(key.substr(dot + 1))) throw ConfigError(line, key, "unknown key");
    if (reject_duplicate && has(key)) throw ConfigError(line, key, "duplicate key");
    entries_[key] = Entry{std::move(value), line};
  }

  double constant(const std::string& key, const std::string& text) const {
    try {
      const ScalarField f = parse_field(text, 2);
      if (f.uses(0) || f.uses(1)) throw ConfigError(line_of(key), key, "expected a constant, got '" + text + "'");
      return f(Point{0.0, 0.0});
    } catch (const ConfigError&) {
      throw;
    } catch (const Error& e) {
      throw ConfigError(line_of(key), key, e.what());
    }
  }

  static std::string strip_comment(const std::string& s) {
    const auto h = s.find('#');
    return h == std::string::npos ? s : s.substr(0, h);
  }
  static std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
  }
  static std::string unquote(std::string s) {
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"') return s.substr(1, s.size() - 2);
    return s;
  }
};

// ---------------------------------------------------------------------------
// Typed views.

inline Geometry parse_geometry(const Config& cfg) {
  const std::string key = "domain.geometry";
  const std::string g = cfg.require(key);
  for (Geometry cand : {Geometry::interval, Geometry::half_line, Geometry::full_line, Geometry::rectangle,
                        Geometry::disk, Geometry::annulus, Geometry::full_plane})
    if (g == to_string(cand)) return cand;
  throw ConfigError(cfg.line_of(key), key, "unknown geometry '" + g + "'");
}

inline DomainSpec domain_from(const Config& cfg) {
  const Geometry g = parse_geometry(cfg);
  DomainSpec d;
  try {
    d = DomainSpec::make(g, cfg.numbers("domain.params"));
  } catch (const PreconditionFailed& e) {
    throw ConfigError(cfg.line_of("domain.params"), "domain.params", e.what());
  }
  if (cfg.has("domain.unbounded") && cfg.boolean("domain.unbounded", false) == d.bounded())
    throw ConfigError(cfg.line_of("domain.unbounded"), "domain.unbounded",
                      std::string("contradicts geometry ") + to_string(g));
  return d;
}

inline OperatorSpec operator_from(const Config& cfg, int domain_dim) {
  const int dim = cfg.integer("operator.dim", domain_dim);
  if (dim != 1 && dim != 2) throw ConfigError(cfg.line_of("operator.dim"), "operator.dim", "must be 1 or 2");
  if (dim != domain_dim)
    throw ConfigError(cfg.line_of("operator.dim"), "operator.dim", "does not match the domain dimension");
  OperatorSpec op;
  op.dim = dim;
  const std::string form = cfg.str("operator.form", "non_divergence");
  if (form == "divergence") {
    op.form = Form::divergence;
  } else if (form != "non_divergence") {
    throw ConfigError(cfg.line_of("operator.form"), "operator.form", "expected non_divergence or divergence");
  }
  if (dim == 1) {
    for (const char* k : {"operator.a1", "operator.a2", "operator.b1", "operator.b2", "operator.breakpoints_y"})
      if (cfg.has(k)) throw ConfigError(cfg.line_of(k), k, "2D field in a 1D operator");
    op.a = {cfg.field("operator.a", "1", 1)};
    op.b = {cfg.field("operator.b", "0", 1)};
  } else {
    for (const char* k : {"operator.a", "operator.b", "operator.period"})
      if (cfg.has(k)) throw ConfigError(cfg.line_of(k), k, "use a1, a2, b1, b2 in 2D");
    op.a = {cfg.field("operator.a1", "1", 2), cfg.field("operator.a2", "1", 2)};
    op.b = {cfg.field("operator.b1", "0", 2), cfg.field("operator.b2", "0", 2)};
  }
  op.c = cfg.field("operator.c", "0", dim);
  op.breakpoints = cfg.numbers("operator.breakpoints");
  op.breakpoints_y = cfg.numbers("operator.breakpoints_y");
  if (cfg.has("operator.period")) op.period = cfg.number("operator.period", 0.0);
  try {
    op.validate();
  } catch (const PreconditionFailed& e) {
    throw ConfigError(0, "operator", e.what());
  }
  return op;
}

struct SolveBlock {
  double h = 0.01;
  double tol = 1e-10;
  int max_iter = 50000;
  std::vector<double> schedule{2, 4, 8, 16, 32, 64};
  DriftScheme scheme = DriftScheme::hybrid;
  bool eigenfunction = false;
  double margin = 1e-3;
};

inline SolveBlock solve_from(const Config& cfg) {
  SolveBlock s;
  s.h = cfg.number("solve.h", s.h);
  if (!(s.h > 0.0)) throw ConfigError(cfg.line_of("solve.h"), "solve.h", "must be positive");
  s.tol = cfg.number("solve.tol", s.tol);
  if (!(s.tol > 0.0)) throw ConfigError(cfg.line_of("solve.tol"), "solve.tol", "must be positive");
  s.max_iter = cfg.integer("solve.max_iter", s.max_iter);
  if (s.max_iter < 1) throw ConfigError(cfg.line_of("solve.max_iter"), "solve.max_iter", "must be at least 1");
  s.schedule = cfg.numbers("solve.schedule", s.schedule);
  const std::string scheme = cfg.str("solve.scheme", "hybrid");
  if (scheme == "upwind") {
    s.scheme = DriftScheme::upwind;
  } else if (scheme != "hybrid") {
    throw ConfigError(cfg.line_of("solve.scheme"), "solve.scheme", "expected hybrid or upwind");
  }
  s.eigenfunction = cfg.boolean("solve.eigenfunction", false);
  s.margin = cfg.number("solve.margin", s.margin);
  return s;
}

inline ExhaustOptions exhaust_options(const SolveBlock& s, int threads) {
  ExhaustOptions o;
  o.tol = s.tol;
  o.max_iter = s.max_iter;
  o.threads = threads;
  o.scheme = s.scheme;
  return o;
}

struct SweepBlock {
  std::string parameter = "c";
  std::vector<double> values;
  double radius = 32.0;
  double h = 0.01;
  double band = 0.05;
};

inline SweepBlock sweep_from(const Config& cfg) {
  SweepBlock s;
  s.parameter = cfg.str("sweep.parameter", "c");
  if (s.parameter != "c" && s.parameter != "a")
    throw ConfigError(cfg.line_of("sweep.parameter"), "sweep.parameter", "expected c or a");
  s.values = cfg.numbers("sweep.values");
  if (s.values.empty()) throw ConfigError(0, "sweep.values", "required field is missing");
  s.radius = cfg.number("sweep.radius", s.radius);
  s.h = cfg.number("sweep.h", s.h);
  s.band = cfg.number("sweep.band", s.band);
  return s;
}

inline CertifyOptions certify_from(const Config& cfg, const std::string& block) {
  CertifyOptions o;
  o.radius = cfg.number(block + ".radius", o.radius);
  o.h = cfg.number(block + ".h", o.h);
  if (block == "barrier") {
    o.rel_tol = cfg.number("barrier.rel_tol", o.rel_tol);
    o.kinks = cfg.numbers("barrier.kinks");
  }
  return o;
}

inline std::optional<CertificateCandidate> barrier_from(const Config& cfg, int dim) {
  if (!cfg.has_block("barrier")) return std::nullopt;
  CertificateCandidate c;
  const std::string kind = cfg.str("barrier.kind", "sub");
  if (kind == "super") {
    c.kind = CertificateKind::super;
  } else if (kind != "sub") {
    throw ConfigError(cfg.line_of("barrier.kind"), "barrier.kind", "expected sub or super");
  }
  c.phi = cfg.field("barrier.phi", cfg.require("barrier.phi"), dim);
  c.beta = cfg.field("barrier.beta", "1", dim);
  c.lambda = cfg.number("barrier.lambda", 0.0);
  if (!cfg.has("barrier.lambda")) throw ConfigError(0, "barrier.lambda", "required field is missing");
  return c;
}

struct WitnessBlock {
  ScalarField u;
  WitnessKind kind = WitnessKind::plain;
  CertifyOptions certify;
};

inline std::optional<WitnessBlock> witness_from(const Config& cfg, int dim) {
  if (!cfg.has_block("witness")) return std::nullopt;
  WitnessBlock w;
  w.u = cfg.field("witness.u", cfg.require("witness.u"), dim);
  const std::string kind = cfg.str("witness.kind", "plain");
  if (kind == "decay") {
    w.kind = WitnessKind::decay;
  } else if (kind != "plain") {
    throw ConfigError(cfg.line_of("witness.kind"), "witness.kind", "expected plain or decay");
  }
  w.certify = certify_from(cfg, "witness");
  return w;
}

}  // namespace eigenlab

#endif  // EIGENLAB_CONFIG_HPP
