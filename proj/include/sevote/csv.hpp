#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "sevote/error.hpp"

namespace sevote::csv {

/// One parsed record. `row` is the 1-based record number in the file, the
/// header being row 1.
struct Record {
  std::size_t row = 0;
  std::vector<std::string> fields;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t row, const std::string& what)
      : Error("row " + std::to_string(row) + ": " + what), row_(row) {}
  std::size_t row() const noexcept { return row_; }

 private:
  std::size_t row_;
};

/// RFC 4180 reader: comma separated, double-quote quoting with "" escapes,
/// quoted fields may span lines. Accepts LF and CRLF record terminators.
/// A UTF-8 byte-order mark at the start of input is skipped. Blank lines
/// are ignored.
std::vector<Record> read(std::istream& in);

/// Writes one field, quoting when it contains a comma, quote, CR, LF or
/// leading/trailing space, or when `force_quote` is set.
void write_field(std::ostream& out, std::string_view field, bool force_quote = false);

/// Writes a full record terminated by '\n'.
void write_record(std::ostream& out, const std::vector<std::string>& fields);

}  // namespace sevote::csv
