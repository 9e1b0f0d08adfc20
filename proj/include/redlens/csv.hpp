#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace redlens::csv {

/// Quotes a cell per RFC 4180 when it contains a comma, quote, CR or LF.
std::string escape(std::string_view cell);

void write_row(std::ostream& out, const std::vector<std::string>& cells);

/// Parses one record starting at `pos`; quoted cells may span lines.
/// Advances `pos` past the record terminator. Throws DataError on an
/// unterminated quote.
std::vector<std::string> parse_record(std::string_view text, std::size_t& pos);

/// Splits a whole document into records, skipping lines that start with '#'
/// outside quoted cells and blank lines.
std::vector<std::vector<std::string>> parse(std::string_view text);

/// Shortest decimal text that parses back to the same double.
std::string format_real(double value);

} // namespace redlens::csv
