#include "pslab/csv.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "pslab/common.hpp"

#include <json.hpp>

namespace pslab::csv {

std::string format_cell(const Cell& c) {
    struct Visitor {
        std::string operator()(std::int64_t v) const { return std::to_string(v); }
        std::string operator()(double v) const { return format_real(v); }
        std::string operator()(const std::string& v) const {
            if (v.find_first_of(",\"\n") != std::string::npos)
                throw std::invalid_argument("csv cell may not contain comma/quote/newline");
            return v;
        }
        std::string operator()(bool v) const { return v ? "true" : "false"; }
    };
    return std::visit(Visitor{}, c);
}

void write_csv(std::ostream& os, const Table& t) {
    for (std::size_t i = 0; i < t.header.size(); ++i) {
        if (i) os << ',';
        os << t.header[i];
    }
    os << '\n';
    for (const auto& row : t.rows) {
        if (row.size() != t.header.size())
            throw std::invalid_argument("csv row width does not match header");
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) os << ',';
            os << format_cell(row[i]);
        }
        os << '\n';
    }
}

void write_json(std::ostream& os, const Table& t) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& row : t.rows) {
        if (row.size() != t.header.size())
            throw std::invalid_argument("json row width does not match header");
        nlohmann::json obj = nlohmann::json::object();
        for (std::size_t i = 0; i < row.size(); ++i) {
            const Cell& c = row[i];
            if (std::holds_alternative<std::int64_t>(c))
                obj[t.header[i]] = std::get<std::int64_t>(c);
            else if (std::holds_alternative<double>(c))
                obj[t.header[i]] = std::get<double>(c);
            else if (std::holds_alternative<bool>(c))
                obj[t.header[i]] = std::get<bool>(c);
            else
                obj[t.header[i]] = std::get<std::string>(c);
        }
        arr.push_back(std::move(obj));
    }
    os << arr.dump(2) << '\n';
}

ParsedTable parse_csv(std::istream& is) {
    ParsedTable out;
    std::string line;
    bool first = true;
    while (std::getline(is, line)) {
        if (line.empty() && is.peek() == std::char_traits<char>::eof()) break;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (!line.empty() && line.back() == ',') cells.emplace_back();
        if (first) {
            out.header = std::move(cells);
            first = false;
        } else {
            if (cells.size() != out.header.size())
                throw std::invalid_argument("csv parse: ragged row");
            out.rows.push_back(std::move(cells));
        }
    }
    return out;
}

}  // namespace pslab::csv
