#include "covquiz/csv.hpp"

#include "covquiz/error.hpp"

namespace covquiz::csv {

std::string quote_field(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string write(const std::vector<Row>& rows) {
  std::string out;
  for (const Row& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i > 0) out += ',';
      out += quote_field(row[i]);
    }
    out += '\n';
  }
  return out;
}

std::vector<Row> parse(std::string_view text) {
  std::vector<Row> rows;
  Row row;
  std::string field;
  std::size_t i = 0;
  int line = 1;
  const std::size_t n = text.size();

  auto end_record = [&] {
    row.push_back(std::move(field));
    field.clear();
    rows.push_back(std::move(row));
    row.clear();
  };

  while (i < n) {
    if (text[i] == '"' && field.empty()) {
      const int start_line = line;
      ++i;
      for (;;) {
        if (i >= n) throw IoError("CSV line " + std::to_string(start_line) + ": unterminated quoted field");
        if (text[i] == '"') {
          if (i + 1 < n && text[i + 1] == '"') {
            field += '"';
            i += 2;
            continue;
          }
          ++i;
          break;
        }
        if (text[i] == '\n') ++line;
        field += text[i++];
      }
      if (i < n && text[i] != ',' && text[i] != '\n' && text[i] != '\r') {
        throw IoError("CSV line " + std::to_string(line) + ": text after closing quote");
      }
      continue;
    }
    const char c = text[i];
    if (c == ',') {
      row.push_back(std::move(field));
      field.clear();
      ++i;
    } else if (c == '\n' || (c == '\r' && i + 1 < n && text[i + 1] == '\n')) {
      i += c == '\r' ? 2 : 1;
      ++line;
      end_record();
    } else if (c == '"') {
      throw IoError("CSV line " + std::to_string(line) + ": quote inside unquoted field");
    } else {
      field += c;
      ++i;
    }
  }
  if (!field.empty() || !row.empty()) end_record();
  return rows;
}

}  // namespace covquiz::csv
