#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace oulab {

// Shortest round-trip decimal form; "nan"/"inf"/"-inf" for non-finite values.
std::string format_double(double v);

// Comma-separated rows with LF endings. Fields are written verbatim, so
// callers keep commas out of them.
class CsvWriter {
 public:
  CsvWriter(std::ostream& os, const std::vector<std::string>& header);
  void row(const std::vector<std::string>& fields);

 private:
  std::ostream& os_;
  std::size_t width_;
};

}  // namespace oulab
