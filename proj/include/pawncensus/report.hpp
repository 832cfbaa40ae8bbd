#pragma once

#include "pawncensus/board.hpp"

#include <json.hpp>

#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

// Result rows and their text/CSV/JSON renderings. Counts are arbitrary
// precision, so CSV/JSON carry them as decimal strings; the percentage is
// computed with integer arithmetic (two decimals, half-up) to keep renderings
// byte-for-byte deterministic.

namespace pawncensus {

struct CountRow {
    int n = 0;
    BigCount unreachable = 0;
    BigCount total = 0;
    long long elapsed_ms = 0;
};

inline std::string percent_two_decimals(const BigCount& part, const BigCount& whole) {
    if (whole.is_zero())
        return "0.00";
    BigCount scaled = part * 10000;
    BigCount q = scaled / whole;
    BigCount rem = scaled % whole;
    if (rem * 2 >= whole)
        ++q;  // round half up
    BigCount units = q / 100, cents = q % 100;
    std::ostringstream out;
    out << units << '.' << std::setw(2) << std::setfill('0') << cents;
    return out.str();
}

inline std::string percent_unreachable(const CountRow& row) {
    return percent_two_decimals(row.unreachable, row.total);
}

inline std::string render_text(const std::vector<CountRow>& rows) {
    std::ostringstream out;
    out << std::left << std::setw(4) << "n" << std::setw(16) << "unreachable" << std::setw(16)
        << "total" << std::setw(10) << "percent" << "elapsed_ms\n";
    for (const CountRow& r : rows) {
        out << std::left << std::setw(4) << r.n << std::setw(16) << r.unreachable.str()
            << std::setw(16) << r.total.str() << std::setw(10) << percent_unreachable(r)
            << r.elapsed_ms << "\n";
    }
    return out.str();
}

inline std::string render_csv(const std::vector<CountRow>& rows) {
    std::ostringstream out;
    out << "n,unreachable,total,percent_unreachable,elapsed_ms\n";
    for (const CountRow& r : rows)
        out << r.n << ',' << r.unreachable.str() << ',' << r.total.str() << ','
            << percent_unreachable(r) << ',' << r.elapsed_ms << "\n";
    return out.str();
}

inline std::string render_json(const std::vector<CountRow>& rows) {
    nlohmann::json arr = nlohmann::json::array();
    for (const CountRow& r : rows) {
        arr.push_back({{"n", r.n},
                       {"unreachable", r.unreachable.str()},
                       {"total", r.total.str()},
                       {"percent_unreachable", percent_unreachable(r)},
                       {"elapsed_ms", r.elapsed_ms}});
    }
    return arr.dump(2) + "\n";
}

inline std::vector<CountRow> parse_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != "n,unreachable,total,percent_unreachable,elapsed_ms")
        throw std::invalid_argument("bad csv header");
    std::vector<CountRow> rows;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        std::vector<std::string> cells;
        std::size_t start = 0;
        while (true) {
            std::size_t comma = line.find(',', start);
            cells.push_back(line.substr(start, comma == std::string::npos ? comma : comma - start));
            if (comma == std::string::npos)
                break;
            start = comma + 1;
        }
        if (cells.size() != 5)
            throw std::invalid_argument("bad csv row: " + line);
        CountRow r;
        r.n = std::stoi(cells[0]);
        r.unreachable = BigCount(cells[1]);
        r.total = BigCount(cells[2]);
        r.elapsed_ms = std::stoll(cells[4]);
        if (percent_unreachable(r) != cells[3])
            throw std::invalid_argument("percent does not match counts in row: " + line);
        rows.push_back(r);
    }
    return rows;
}

inline std::vector<CountRow> parse_json(const std::string& text) {
    nlohmann::json arr = nlohmann::json::parse(text);
    if (!arr.is_array())
        throw std::invalid_argument("expected a json array of rows");
    std::vector<CountRow> rows;
    for (const auto& item : arr) {
        CountRow r;
        r.n = item.at("n").get<int>();
        r.unreachable = BigCount(item.at("unreachable").get<std::string>());
        r.total = BigCount(item.at("total").get<std::string>());
        r.elapsed_ms = item.at("elapsed_ms").get<long long>();
        if (percent_unreachable(r) != item.at("percent_unreachable").get<std::string>())
            throw std::invalid_argument("percent does not match counts in json row");
        rows.push_back(r);
    }
    return rows;
}

}  // namespace pawncensus
