#pragma once
// Table emission (CSV, JSON mirror) and the matching reader.  Reals print
// with 12 significant digits; integers unformatted.  Cells never contain
// commas, quotes or newlines, so the reader is a plain splitter.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace pslab::csv {

using Cell = std::variant<std::int64_t, double, std::string, bool>;

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<Cell>> rows;
};

std::string format_cell(const Cell& c);

void write_csv(std::ostream& os, const Table& t);
void write_json(std::ostream& os, const Table& t);  // rows as objects

struct ParsedTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

ParsedTable parse_csv(std::istream& is);

}  // namespace pslab::csv
