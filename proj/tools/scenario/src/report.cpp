#include <cmath>
#include <iomanip>
#include <set>
#include <sstream>

#include "json.hpp"

#include "gricci/scenario.hpp"

namespace gricci::scenario {

namespace {

using nlohmann::ordered_json;

ordered_json number(double v) { return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr); }

ordered_json suite_json(const SuiteResult& s) {
  ordered_json j;
  j["suite"] = std::string(to_string(s.suite));
  j["status"] = std::string(to_string(s.status));
  j["message"] = s.message;
  ordered_json metrics = ordered_json::object();
  for (const auto& [key, value] : s.metrics) metrics[key] = number(value);
  j["metrics"] = metrics;
  if (s.worst) {
    j["worst"] = {{"t", s.worst->t},
                  {"y", s.worst->y ? number(*s.worst->y) : ordered_json(nullptr)},
                  {"margin", number(s.worst->margin)}};
  } else {
    j["worst"] = nullptr;
  }
  return j;
}

std::string json_report(const RunReport& r) {
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["name"] = r.config.name;
  j["passed"] = r.all_passed();
  j["config"] = ordered_json::parse(dump_config(r.config));
  j["statistics"] = {{"checkpoints", r.statistics.checkpoints},
                     {"steps", r.statistics.steps},
                     {"min_dt", r.statistics.min_dt},
                     {"max_dt", r.statistics.max_dt}};
  ordered_json suites = ordered_json::array();
  for (const SuiteResult& s : r.suites) suites.push_back(suite_json(s));
  j["suites"] = suites;
  j["trajectory_csv"] = r.trajectory_csv.empty() ? ordered_json(nullptr) : ordered_json(r.trajectory_csv);
  return j.dump(2) + "\n";
}

/// Wide table: one row per distinct time, one column per series. Monotonicity
/// columns keep their bare names; others are prefixed with the suite name.
std::string csv_report(const RunReport& r) {
  struct Column {
    std::string name;
    const std::vector<double>* times;
    const std::vector<double>* values;
  };
  std::vector<Column> columns;
  std::set<double> times;
  for (const SuiteResult& s : r.suites) {
    for (const auto& [key, values] : s.series) {
      const std::string name = s.suite == Suite::monotonicity ? key : std::string(to_string(s.suite)) + "." + key;
      columns.push_back({name, &s.times, &values});
    }
    if (!s.series.empty()) times.insert(s.times.begin(), s.times.end());
  }
  std::ostringstream out;
  out << std::setprecision(17) << "t";
  for (const Column& c : columns) out << ',' << c.name;
  out << '\n';
  std::vector<std::size_t> cursor(columns.size(), 0);
  for (double t : times) {
    out << t;
    for (std::size_t c = 0; c < columns.size(); ++c) {
      out << ',';
      const auto& ts = *columns[c].times;
      std::size_t& i = cursor[c];
      while (i < ts.size() && ts[i] < t) ++i;
      if (i < ts.size() && ts[i] == t && std::isfinite((*columns[c].values)[i])) out << (*columns[c].values)[i];
    }
    out << '\n';
  }
  return out.str();
}

std::string human_report(const RunReport& r) {
  std::ostringstream out;
  out << "scenario " << r.config.name << ": " << r.statistics.checkpoints << " checkpoints, "
      << r.statistics.steps << " steps";
  if (r.statistics.steps > 0) out << ", dt in [" << r.statistics.min_dt << ", " << r.statistics.max_dt << "]";
  out << "\n\n";
  out << std::left << std::setw(16) << "suite" << std::setw(15) << "status" << std::right << std::setw(13)
      << "margin" << std::setw(11) << "t" << std::setw(9) << "y" << "  message\n";
  for (const SuiteResult& s : r.suites) {
    out << std::left << std::setw(16) << to_string(s.suite) << std::setw(15) << to_string(s.status) << std::right;
    out << std::scientific << std::setprecision(3);
    if (s.worst) {
      out << std::setw(13) << s.worst->margin << std::defaultfloat << std::setprecision(5) << std::setw(11)
          << s.worst->t;
      if (s.worst->y) {
        out << std::setw(9) << *s.worst->y;
      } else {
        out << std::setw(9) << "-";
      }
    } else {
      out << std::setw(13) << "-" << std::setw(11) << "-" << std::setw(9) << "-";
    }
    out << std::defaultfloat << std::setprecision(6) << "  " << s.message << '\n';
  }
  out << '\n' << (r.all_passed() ? "PASS" : "FAIL") << '\n';
  return out.str();
}

}  // namespace

std::string_view to_string(SuiteStatus status) {
  switch (status) {
    case SuiteStatus::pass: return "pass";
    case SuiteStatus::fail: return "fail";
    case SuiteStatus::not_applicable: return "not_applicable";
  }
  return "fail";
}

ReportFormat format_from_string(std::string_view name) {
  if (name == "json") return ReportFormat::json;
  if (name == "csv") return ReportFormat::csv;
  if (name == "human") return ReportFormat::human;
  throw UsageError("unknown report format \"" + std::string(name) + "\" (expected json, csv or human)");
}

std::string emit_report(const RunReport& report, ReportFormat format) {
  switch (format) {
    case ReportFormat::json: return json_report(report);
    case ReportFormat::csv: return csv_report(report);
    case ReportFormat::human: return human_report(report);
  }
  throw UsageError("unknown report format");
}

std::string emit_report(const RunReport& report, std::string_view format) {
  return emit_report(report, format_from_string(format));
}

}  // namespace gricci::scenario
