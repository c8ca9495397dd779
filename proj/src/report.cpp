#include "oulab/report.hpp"

#include <cmath>

#include "oulab/csv.hpp"

namespace oulab {

void InequalityReport::settle() {
  margin = rhs - lhs;
  pass = std::isfinite(margin) && std::isfinite(tolerance) && margin >= -tolerance;
}

void InequalityReport::note(const std::string& key, double value) {
  details.emplace_back(key, format_double(value));
}

void InequalityReport::note(const std::string& key, const std::string& value) {
  details.emplace_back(key, value);
}

std::string InequalityReport::detail(const std::string& key) const {
  for (const auto& [k, v] : details)
    if (k == key) return v;
  return {};
}

InequalityReport make_report(std::string name, double lhs, double rhs, double tolerance,
                             Details details) {
  InequalityReport r;
  r.name = std::move(name);
  r.lhs = lhs;
  r.rhs = rhs;
  r.tolerance = tolerance;
  r.details = std::move(details);
  r.settle();
  return r;
}

void write_reports_csv(std::ostream& os, const std::vector<InequalityReport>& reports) {
  CsvWriter csv(os, {"name", "lhs", "rhs", "margin", "tolerance", "pass"});
  for (const auto& r : reports)
    csv.row({r.name, format_double(r.lhs), format_double(r.rhs), format_double(r.margin),
             format_double(r.tolerance), r.pass ? "true" : "false"});
}

std::string join_details(const Details& details) {
  std::string out;
  for (const auto& [k, v] : details) {
    if (!out.empty()) out += ';';
    out += k;
    out += '=';
    out += v;
  }
  return out;
}

void write_summary(std::ostream& os, const std::vector<InequalityReport>& reports) {
  std::size_t failed = 0;
  for (const auto& r : reports) {
    if (!r.pass) ++failed;
    os << (r.pass ? "PASS " : "FAIL ") << r.name << "  lhs=" << format_double(r.lhs)
       << " rhs=" << format_double(r.rhs) << " margin=" << format_double(r.margin)
       << " tol=" << format_double(r.tolerance) << '\n';
  }
  os << reports.size() - failed << "/" << reports.size() << " checks passed";
  if (failed > 0) os << ", " << failed << " failed";
  os << '\n';
}

}  // namespace oulab
