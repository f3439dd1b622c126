#pragma once

#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace redcalc {

/// Quotes a field only when it contains a comma, quote or line break.
std::string csv_field(std::string_view value);

void write_csv_row(std::ostream& out, std::span<const std::string> fields);
inline void write_csv_row(std::ostream& out, std::initializer_list<std::string> fields) {
    write_csv_row(out, std::span<const std::string>(fields.begin(), fields.size()));
}

/// Splits one record; ParseError on an unterminated quote.
std::vector<std::string> parse_csv_line(std::string_view line);

/// All records of a stream; blank lines are skipped.
std::vector<std::vector<std::string>> read_csv(std::istream& in);

/// Shortest round-trip decimal form of a double.
std::string format_double(double value);

} // namespace redcalc
