#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace oulab {

using Details = std::vector<std::pair<std::string, std::string>>;

// Outcome of one inequality check: lhs <= rhs up to tolerance.
// Two-sided checks put the absolute defect in lhs and 0 in rhs.
struct InequalityReport {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;  // rhs - lhs
  double tolerance = 0.0;
  bool pass = false;
  Details details;

  // Recomputes margin and pass from lhs, rhs and tolerance.
  void settle();
  // Appends a diagnostic; numbers are printed in shortest round-trip form.
  void note(const std::string& key, double value);
  void note(const std::string& key, const std::string& value);
  // Value of a diagnostic, or "" when absent.
  std::string detail(const std::string& key) const;
};

InequalityReport make_report(std::string name, double lhs, double rhs, double tolerance,
                             Details details = {});

// Columns name,lhs,rhs,margin,tolerance,pass.
void write_reports_csv(std::ostream& os, const std::vector<InequalityReport>& reports);
// Human-readable block: one line per report and a final tally.
void write_summary(std::ostream& os, const std::vector<InequalityReport>& reports);
// "key=value;key=value" rendering of the details.
std::string join_details(const Details& details);

}  // namespace oulab
