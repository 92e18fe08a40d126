#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace concav {

/// Shortest decimal string that parses back to exactly `v`.
std::string format_double(double v);

/// Strict parse of a full field; accepts "nan", "inf", "-inf".
double parse_double(std::string_view field);

std::vector<std::string> split_fields(std::string_view line, char sep = ',');

/// Reads the next line that is neither empty nor a '#' comment. Returns false
/// at end of stream.
bool next_data_line(std::istream& is, std::string& line);

/// Minimal CSV writer: joins fields with ',' and terminates with '\n'.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& os) : os_(os) {}

  CsvWriter& field(std::string_view s);
  CsvWriter& field(const char* s) { return field(std::string_view(s)); }
  CsvWriter& field(double v);
  CsvWriter& field(long long v);
  CsvWriter& field(unsigned long long v);
  CsvWriter& field(bool v);
  void end_row();

 private:
  std::ostream& os_;
  bool first_ = true;
};

}  // namespace concav
