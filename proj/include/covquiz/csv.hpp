#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace covquiz::csv {

using Row = std::vector<std::string>;

/// RFC 4180 field: quoted when it holds a comma, quote, CR or LF, with
/// embedded quotes doubled.
std::string quote_field(std::string_view field);

/// Rows joined with LF line ends, including after the last row.
std::string write(const std::vector<Row>& rows);

/// Parses RFC 4180 text. Accepts LF or CRLF record ends; a trailing line
/// break does not start an extra record. Throws IoError on a malformed
/// quoted field.
std::vector<Row> parse(std::string_view text);

}  // namespace covquiz::csv
