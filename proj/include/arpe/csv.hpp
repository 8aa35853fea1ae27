#ifndef ARPE_CSV_HPP
#define ARPE_CSV_HPP

#include <initializer_list>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace arpe {

/// Shortest decimal that round-trips the double.
std::string format_double(double v);

/// RFC-4180 style writer: fields containing a comma, quote or newline are
/// quoted, embedded quotes doubled, rows end with "\n".
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& os) : os_(os) {}
  void row(std::initializer_list<std::string_view> fields);
  void row(const std::vector<std::string>& fields);

 private:
  void field(std::string_view f, bool first);
  std::ostream& os_;
};

/// Splits one CSV record (no embedded newlines) honoring quotes.
std::vector<std::string> parse_csv_line(std::string_view line);

}  // namespace arpe

#endif  // ARPE_CSV_HPP
