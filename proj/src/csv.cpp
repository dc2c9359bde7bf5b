#include "sevote/csv.hpp"

#include <istream>
#include <iterator>
#include <ostream>

namespace sevote::csv {

std::vector<Record> read(std::istream& in) {
  std::string data{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  std::size_t pos = 0;
  if (data.compare(0, 3, "\xEF\xBB\xBF") == 0) pos = 3;

  std::vector<Record> records;
  std::size_t row = 0;
  while (pos < data.size()) {
    // Skip blank lines between records.
    if (data[pos] == '\n') { ++pos; continue; }
    if (data[pos] == '\r' && pos + 1 < data.size() && data[pos + 1] == '\n') { pos += 2; continue; }

    Record rec;
    rec.row = ++row;
    std::string field;
    bool done = false;
    while (!done) {
      field.clear();
      if (pos < data.size() && data[pos] == '"') {
        ++pos;
        bool closed = false;
        while (pos < data.size()) {
          char c = data[pos++];
          if (c == '"') {
            if (pos < data.size() && data[pos] == '"') {
              field.push_back('"');
              ++pos;
            } else {
              closed = true;
              break;
            }
          } else {
            field.push_back(c);
          }
        }
        if (!closed) throw ParseError(rec.row, "unterminated quoted field");
        if (pos < data.size() && data[pos] != ',' && data[pos] != '\n' &&
            !(data[pos] == '\r' && pos + 1 < data.size() && data[pos + 1] == '\n') &&
            !(data[pos] == '\r' && pos + 1 == data.size())) {
          throw ParseError(rec.row, "unexpected character after closing quote");
        }
      } else {
        while (pos < data.size() && data[pos] != ',' && data[pos] != '\n') {
          if (data[pos] == '\r' && (pos + 1 == data.size() || data[pos + 1] == '\n')) break;
          if (data[pos] == '"') throw ParseError(rec.row, "quote inside unquoted field");
          field.push_back(data[pos++]);
        }
      }
      rec.fields.push_back(field);
      if (pos >= data.size()) {
        done = true;
      } else if (data[pos] == ',') {
        ++pos;
      } else {
        if (data[pos] == '\r') ++pos;
        if (pos < data.size() && data[pos] == '\n') ++pos;
        done = true;
      }
    }
    records.push_back(std::move(rec));
  }
  return records;
}

void write_field(std::ostream& out, std::string_view field, bool force_quote) {
  bool quote = force_quote || field.find_first_of(",\"\r\n") != std::string_view::npos ||
               (!field.empty() && (field.front() == ' ' || field.back() == ' '));
  if (!quote) {
    out << field;
    return;
  }
  out << '"';
  for (char c : field) {
    if (c == '"') out << '"';
    out << c;
  }
  out << '"';
}

void write_record(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out << ',';
    write_field(out, fields[i]);
  }
  out << '\n';
}

}  // namespace sevote::csv
