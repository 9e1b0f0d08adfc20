#include "redlens/csv.hpp"

#include "redlens/error.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

namespace redlens::csv {

std::string escape(std::string_view cell)
{
    if (cell.find_first_of(",\"\r\n") == std::string_view::npos) {
        return std::string(cell);
    }
    std::string out;
    out.reserve(cell.size() + 2);
    out.push_back('"');
    for (char c : cell) {
        if (c == '"') {
            out.push_back('"');
        }
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

void write_row(std::ostream& out, const std::vector<std::string>& cells)
{
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i != 0) {
            out << ',';
        }
        out << escape(cells[i]);
    }
    out << '\n';
}

std::vector<std::string> parse_record(std::string_view text, std::size_t& pos)
{
    std::vector<std::string> cells;
    std::string cell;
    bool quoted = false;
    bool was_quoted = false;
    while (pos < text.size()) {
        char c = text[pos];
        if (quoted) {
            if (c == '"') {
                if (pos + 1 < text.size() && text[pos + 1] == '"') {
                    cell.push_back('"');
                    pos += 2;
                    continue;
                }
                quoted = false;
                ++pos;
                continue;
            }
            cell.push_back(c);
            ++pos;
            continue;
        }
        if (c == '"' && cell.empty() && !was_quoted) {
            quoted = true;
            was_quoted = true;
            ++pos;
        } else if (c == ',') {
            cells.push_back(std::move(cell));
            cell.clear();
            was_quoted = false;
            ++pos;
        } else if (c == '\r' || c == '\n') {
            if (c == '\r' && pos + 1 < text.size() && text[pos + 1] == '\n') {
                ++pos;
            }
            ++pos;
            cells.push_back(std::move(cell));
            return cells;
        } else {
            cell.push_back(c);
            ++pos;
        }
    }
    if (quoted) {
        throw DataError("csv: unterminated quoted cell");
    }
    cells.push_back(std::move(cell));
    return cells;
}

std::vector<std::vector<std::string>> parse(std::string_view text)
{
    std::vector<std::vector<std::string>> records;
    std::size_t pos = 0;
    while (pos < text.size()) {
        if (text[pos] == '#') {
            auto eol = text.find('\n', pos);
            pos = eol == std::string_view::npos ? text.size() : eol + 1;
            continue;
        }
        if (text[pos] == '\n' || text[pos] == '\r') {
            ++pos;
            continue;
        }
        records.push_back(parse_record(text, pos));
    }
    return records;
}

std::string format_real(double value)
{
    if (value == 0.0) {
        return "0"; // also folds -0
    }
    if (!std::isfinite(value)) {
        return std::isnan(value) ? "nan" : (value > 0 ? "inf" : "-inf");
    }
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, end);
}

} // namespace redlens::csv
