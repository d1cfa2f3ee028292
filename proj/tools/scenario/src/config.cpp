#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "gricci/scenario.hpp"
#include "json.hpp"

namespace gricci::scenario {

using nlohmann::json;

namespace {

constexpr std::string_view kSuiteNames[] = {"monotonicity", "blowdown",   "max_principle",  "lambda",
                                            "harnack",      "uniqueness", "steady_classify"};

std::string line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1, column = 1;
  for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

/// Cursor over a JSON object that remembers its dotted path and rejects
/// keys nobody asked for.
class Reader {
 public:
  Reader(const json& node, std::string path) : node_(node), path_(std::move(path)) {
    if (!node_.is_object()) throw ConfigError(display(), "expected an object");
  }

  bool has(const std::string& key) const { return node_.contains(key); }

  std::string field(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  template <class T, class Fn>
  void read(const std::string& key, T& out, Fn&& convert) {
    seen_.insert(key);
    if (!node_.contains(key)) return;
    out = convert(node_.at(key), field(key));
  }

  void number(const std::string& key, double& out) {
    read(key, out, [](const json& j, const std::string& where) {
      if (!j.is_number()) throw ConfigError(where, "expected a number");
      return j.get<double>();
    });
  }

  void integer(const std::string& key, int& out) {
    read(key, out, [](const json& j, const std::string& where) {
      if (!j.is_number_integer()) throw ConfigError(where, "expected an integer");
      return j.get<int>();
    });
  }

  void boolean(const std::string& key, bool& out) {
    read(key, out, [](const json& j, const std::string& where) {
      if (!j.is_boolean()) throw ConfigError(where, "expected true or false");
      return j.get<bool>();
    });
  }

  void string(const std::string& key, std::string& out) {
    read(key, out, [](const json& j, const std::string& where) {
      if (!j.is_string()) throw ConfigError(where, "expected a string");
      return j.get<std::string>();
    });
  }

  void numbers(const std::string& key, std::vector<double>& out) {
    read(key, out, [](const json& j, const std::string& where) {
      if (!j.is_array()) throw ConfigError(where, "expected an array of numbers");
      std::vector<double> v;
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_number()) throw ConfigError(where + "[" + std::to_string(i) + "]", "expected a number");
        v.push_back(j[i].get<double>());
      }
      return v;
    });
  }

  Reader child(const std::string& key) {
    seen_.insert(key);
    return Reader(node_.at(key), field(key));
  }

  const json& raw(const std::string& key) {
    seen_.insert(key);
    return node_.at(key);
  }

  /// Rejects keys that were never read.
  void finish() const {
    for (auto it = node_.begin(); it != node_.end(); ++it) {
      if (!seen_.count(it.key())) throw ConfigError(field(it.key()), "unknown key");
    }
  }

 private:
  std::string display() const { return path_.empty() ? "<root>" : path_; }

  const json& node_;
  std::string path_;
  std::set<std::string> seen_;
};

void read_field(Reader& parent, const std::string& key, FieldSpec& out) {
  if (!parent.has(key)) return;
  Reader r = parent.child(key);
  r.number("c0", out.c0);
  r.numbers("cos", out.cos);
  r.numbers("sin", out.sin);
  r.finish();
}

json field_json(const FieldSpec& f) { return json{{"c0", f.c0}, {"cos", f.cos}, {"sin", f.sin}}; }

std::string scheme_name(Scheme s) { return s == Scheme::spectral ? "spectral" : "fd4"; }

void read_tolerances(Reader& r, Tolerances& t) {
  r.number("flat", t.flat);
  r.number("monotonicity_residual", t.monotonicity_residual);
  r.number("monotonicity_slack", t.monotonicity_slack);
  r.number("monotonicity_t_min", t.monotonicity_t_min);
  r.number("blowdown_grad_low", t.blowdown_grad_low);
  r.number("blowdown_grad_high", t.blowdown_grad_high);
  r.number("blowdown_h", t.blowdown_h);
  r.number("blowdown_r_low", t.blowdown_r_low);
  r.number("blowdown_r_high", t.blowdown_r_high);
  r.number("max_principle_slack", t.max_principle_slack);
  r.number("max_principle_fit_until", t.max_principle_fit_until);
  r.number("lambda_slack", t.lambda_slack);
  r.number("harnack_residual", t.harnack_residual);
  r.number("uniqueness_energy", t.uniqueness_energy);
  r.number("uniqueness_t_max", t.uniqueness_t_max);
  r.number("uniqueness_rate_stability", t.uniqueness_rate_stability);
  r.number("steady", t.steady);
}

json tolerances_json(const Tolerances& t) {
  return json{{"flat", t.flat},
              {"monotonicity_residual", t.monotonicity_residual},
              {"monotonicity_slack", t.monotonicity_slack},
              {"monotonicity_t_min", t.monotonicity_t_min},
              {"blowdown_grad_low", t.blowdown_grad_low},
              {"blowdown_grad_high", t.blowdown_grad_high},
              {"blowdown_h", t.blowdown_h},
              {"blowdown_r_low", t.blowdown_r_low},
              {"blowdown_r_high", t.blowdown_r_high},
              {"max_principle_slack", t.max_principle_slack},
              {"max_principle_fit_until", t.max_principle_fit_until},
              {"lambda_slack", t.lambda_slack},
              {"harnack_residual", t.harnack_residual},
              {"uniqueness_energy", t.uniqueness_energy},
              {"uniqueness_t_max", t.uniqueness_t_max},
              {"uniqueness_rate_stability", t.uniqueness_rate_stability},
              {"steady", t.steady}};
}

void require(bool ok, const std::string& where, const std::string& message) {
  if (!ok) throw ConfigError(where, message);
}

}  // namespace

PeriodicField FieldSpec::sample(const GridSpec& grid) const {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  return PeriodicField::sample(grid, [&](double y) {
    double v = c0;
    for (std::size_t m = 0; m < cos.size(); ++m) v += cos[m] * std::cos(two_pi * static_cast<double>(m + 1) * y);
    for (std::size_t m = 0; m < sin.size(); ++m) v += sin[m] * std::sin(two_pi * static_cast<double>(m + 1) * y);
    return v;
  });
}

std::string_view to_string(Suite suite) { return kSuiteNames[static_cast<int>(suite)]; }

std::optional<Suite> suite_from_string(std::string_view name) {
  for (std::size_t i = 0; i < std::size(kSuiteNames); ++i) {
    if (kSuiteNames[i] == name) return static_cast<Suite>(i);
  }
  return std::nullopt;
}

const std::vector<Suite>& all_suites() {
  static const std::vector<Suite> suites = {Suite::monotonicity, Suite::blowdown,   Suite::max_principle,
                                            Suite::lambda,       Suite::harnack,    Suite::uniqueness,
                                            Suite::steady_classify};
  return suites;
}

ScenarioConfig parse_config(std::string_view text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    std::string detail = e.what();
    if (const auto p = detail.find("syntax error"); p != std::string::npos) detail = detail.substr(p);
    throw ConfigError(line_column(text, e.byte == 0 ? 0 : e.byte - 1), detail);
  }

  Reader r(root, "");
  ScenarioConfig c;
  if (r.has("preset")) {
    std::string name;
    r.string("preset", name);
    c = preset(name);
  }
  require(r.has("schema_version"), "schema_version", "missing");
  r.integer("schema_version", c.schema_version);
  require(c.schema_version == kSchemaVersion, "schema_version",
          "unsupported version " + std::to_string(c.schema_version) + " (expected " +
              std::to_string(kSchemaVersion) + ")");
  r.string("name", c.name);

  if (r.has("grid")) {
    Reader g = r.child("grid");
    g.integer("n_nodes", c.n_nodes);
    std::string scheme = scheme_name(c.scheme);
    g.string("scheme", scheme);
    if (scheme == "spectral") {
      c.scheme = Scheme::spectral;
    } else if (scheme == "fd4") {
      c.scheme = Scheme::fd4;
    } else {
      throw ConfigError(g.field("scheme"), "expected \"spectral\" or \"fd4\", got \"" + scheme + "\"");
    }
    g.finish();
  }

  if (r.has("initial")) {
    Reader i = r.child("initial");
    i.number("lambda", c.lambda);
    read_field(i, "k_per", c.k_per);
    read_field(i, "u", c.u);
    read_field(i, "f", c.f);
    i.finish();
  }

  if (r.has("flow")) {
    Reader f = r.child("flow");
    f.number("t_end", c.flow.t_end);
    f.number("checkpoint_interval", c.flow.checkpoint_interval);
    std::string policy = c.flow.dt_policy == DtPolicy::cfl ? "cfl" : "fixed";
    f.string("dt_policy", policy);
    if (policy == "cfl") {
      c.flow.dt_policy = DtPolicy::cfl;
    } else if (policy == "fixed") {
      c.flow.dt_policy = DtPolicy::fixed;
    } else {
      throw ConfigError(f.field("dt_policy"), "expected \"cfl\" or \"fixed\", got \"" + policy + "\"");
    }
    f.number("cfl", c.flow.cfl);
    f.number("fixed_dt", c.flow.fixed_dt);
    f.boolean("coupled", c.flow.coupled);
    f.finish();
  }

  if (r.has("suites")) {
    const json& s = r.raw("suites");
    require(s.is_array(), "suites", "expected an array of suite names");
    c.suites.clear();
    for (std::size_t i = 0; i < s.size(); ++i) {
      const std::string where = "suites[" + std::to_string(i) + "]";
      require(s[i].is_string(), where, "expected a suite name");
      const auto suite = suite_from_string(s[i].get<std::string>());
      require(suite.has_value(), where, "unknown suite \"" + s[i].get<std::string>() + "\"");
      c.suites.push_back(*suite);
    }
  }

  if (r.has("tolerances")) {
    Reader t = r.child("tolerances");
    read_tolerances(t, c.tolerances);
    t.finish();
  }
  r.string("expected_steady_kind", c.expected_steady_kind);
  if (r.has("seed")) {
    const json& s = r.raw("seed");
    require(s.is_number_unsigned() || (s.is_number_integer() && s.get<std::int64_t>() >= 0), "seed",
            "expected a non-negative integer");
    c.seed = s.get<std::uint64_t>();
  }
  if (r.has("output")) {
    Reader o = r.child("output");
    o.string("dir", c.out_dir);
    o.boolean("write_trajectory", c.write_trajectory);
    o.finish();
  }
  r.finish();
  validate(c);
  return c;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path, "cannot open file");
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_config(buffer.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.where(), std::string(e.what()).substr(e.where().size() + 2));
  }
}

std::string dump_config(const ScenarioConfig& c) {
  json suites = json::array();
  for (Suite s : c.suites) suites.push_back(std::string(to_string(s)));
  const json root = {
      {"schema_version", c.schema_version},
      {"name", c.name},
      {"grid", {{"n_nodes", c.n_nodes}, {"scheme", scheme_name(c.scheme)}}},
      {"initial", {{"lambda", c.lambda}, {"k_per", field_json(c.k_per)}, {"u", field_json(c.u)}, {"f", field_json(c.f)}}},
      {"flow",
       {{"t_end", c.flow.t_end},
        {"checkpoint_interval", c.flow.checkpoint_interval},
        {"dt_policy", c.flow.dt_policy == DtPolicy::cfl ? "cfl" : "fixed"},
        {"cfl", c.flow.cfl},
        {"fixed_dt", c.flow.fixed_dt},
        {"coupled", c.flow.coupled}}},
      {"suites", suites},
      {"tolerances", tolerances_json(c.tolerances)},
      {"expected_steady_kind", c.expected_steady_kind},
      {"seed", c.seed},
      {"output", {{"dir", c.out_dir}, {"write_trajectory", c.write_trajectory}}}};
  return root.dump(2) + "\n";
}

void validate(const ScenarioConfig& c) {
  require(c.schema_version == kSchemaVersion, "schema_version", "unsupported version");
  try {
    GridSpec(c.n_nodes, c.scheme);
  } catch (const Error& e) {
    throw ConfigError("grid.n_nodes", e.what());
  }
  require(std::isfinite(c.lambda), "initial.lambda", "must be finite");
  require(c.flow.t_end > 0.0 && std::isfinite(c.flow.t_end), "flow.t_end", "must be positive");
  require(c.flow.checkpoint_interval > 0.0, "flow.checkpoint_interval", "must be positive");
  require(c.flow.cfl >= 0.0, "flow.cfl", "must be non-negative");
  if (c.flow.dt_policy == DtPolicy::fixed) {
    require(c.flow.fixed_dt > 0.0, "flow.fixed_dt", "must be positive with dt_policy \"fixed\"");
  }

  std::set<Suite> seen;
  for (std::size_t i = 0; i < c.suites.size(); ++i) {
    require(seen.insert(c.suites[i]).second, "suites[" + std::to_string(i) + "]",
            "duplicate suite \"" + std::string(to_string(c.suites[i])) + "\"");
  }

  const json tol = tolerances_json(c.tolerances);
  for (const std::string key : {"flat", "monotonicity_residual", "monotonicity_slack", "blowdown_h",
                                "max_principle_slack", "max_principle_fit_until", "lambda_slack",
                                "harnack_residual", "uniqueness_energy", "uniqueness_t_max",
                                "uniqueness_rate_stability", "steady"}) {
    const double v = tol.at(key).get<double>();
    require(v > 0.0 && std::isfinite(v), "tolerances." + key, "must be positive");
  }
  require(c.tolerances.monotonicity_t_min >= 0.0, "tolerances.monotonicity_t_min", "must be non-negative");
  require(c.tolerances.blowdown_grad_low < c.tolerances.blowdown_grad_high, "tolerances.blowdown_grad_high",
          "must exceed blowdown_grad_low");
  require(c.tolerances.blowdown_r_low < c.tolerances.blowdown_r_high, "tolerances.blowdown_r_high",
          "must exceed blowdown_r_low");
  const auto& k = c.expected_steady_kind;
  require(k.empty() || k == "FlatTorus" || k == "HyperbolicCuspNormalized" || k == "None",
          "expected_steady_kind", "expected FlatTorus, HyperbolicCuspNormalized or None");
  require(!c.out_dir.empty(), "output.dir", "must not be empty");
}

Tolerances scaled(const Tolerances& t, double factor) {
  if (!(factor > 0.0) || !std::isfinite(factor)) throw UsageError("tolerance scale must be positive");
  Tolerances s = t;
  for (double* v : {&s.flat, &s.monotonicity_residual, &s.monotonicity_slack, &s.blowdown_h,
                    &s.max_principle_slack, &s.lambda_slack, &s.harnack_residual, &s.uniqueness_energy,
                    &s.uniqueness_rate_stability, &s.steady}) {
    *v *= factor;
  }
  auto widen = [factor](double& lo, double& hi) {
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo) * factor;
    lo = mid - half;
    hi = mid + half;
  };
  widen(s.blowdown_grad_low, s.blowdown_grad_high);
  widen(s.blowdown_r_low, s.blowdown_r_high);
  return s;
}

}  // namespace gricci::scenario
