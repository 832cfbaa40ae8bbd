#pragma once

#include "pawncensus/board.hpp"

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

// Board input/output in the piece-placement field style of FEN, restricted to
// the subset this tool needs: digits for empty runs, 'P' for a pawn, '/'
// between rows, rows listed top-down. Boards may be given partially: if the
// last row is empty it is taken as rank 1, otherwise the last row is rank 2
// (pawns can never stand on rank 1, so a trailing pawn row is unambiguous).

namespace pawncensus {

struct FenError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

namespace detail {

struct FenRow {
    std::vector<int> pawn_files;  // 1-based
    bool empty = true;
};

inline FenRow parse_fen_row(std::string_view row, BoardSize b) {
    FenRow out;
    int file = 0;
    std::size_t i = 0;
    while (i < row.size()) {
        char c = row[i];
        if (c == 'P') {
            ++file;
            if (file > b.n)
                throw FenError("row wider than board: '" + std::string(row) + "'");
            out.pawn_files.push_back(file);
            out.empty = false;
            ++i;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            int run = 0;
            while (i < row.size() && std::isdigit(static_cast<unsigned char>(row[i]))) {
                run = run * 10 + (row[i] - '0');
                if (run > b.n)
                    throw FenError("row wider than board: '" + std::string(row) + "'");
                ++i;
            }
            if (run == 0)
                throw FenError("zero-length empty run in row '" + std::string(row) + "'");
            file += run;
            if (file > b.n)
                throw FenError("row wider than board: '" + std::string(row) + "'");
        } else {
            throw FenError(std::string("unexpected character '") + c + "' (only digits, 'P', '/')");
        }
    }
    if (file != b.n)
        throw FenError("row '" + std::string(row) + "' covers " + std::to_string(file) +
                       " files, expected " + std::to_string(b.n));
    return out;
}

}  // namespace detail

inline Diagram parse_rows(std::string_view text, BoardSize b) {
    if (text.empty())
        throw FenError("empty position string");
    std::vector<detail::FenRow> rows;
    std::size_t start = 0;
    while (true) {
        std::size_t slash = text.find('/', start);
        std::string_view piece =
            slash == std::string_view::npos ? text.substr(start) : text.substr(start, slash - start);
        rows.push_back(detail::parse_fen_row(piece, b));
        if (slash == std::string_view::npos)
            break;
        start = slash + 1;
    }
    int k = int(rows.size());
    int bottom_rank = rows.back().empty ? 1 : 2;
    if (bottom_rank + k - 1 > b.n)
        throw FenError("too many rows for a board with " + std::to_string(b.n) + " ranks");
    Diagram d(b);
    for (int i = 0; i < k; ++i) {
        int rank = bottom_rank + (k - 1 - i);
        for (int file : rows[i].pawn_files) {
            if (rank < 2 || rank > b.n - 1)
                throw FenError("pawn on rank " + std::to_string(rank) +
                               ", pawns occupy ranks 2.." + std::to_string(b.n - 1));
            d.set(Square{file, rank});
        }
    }
    return d;
}

// Canonical full-height form (ranks n..1, top-down); always parses back to
// the same diagram.
inline std::string format_rows(const Diagram& d) {
    BoardSize b = d.board();
    std::string out;
    for (int rank = b.n; rank >= 1; --rank) {
        if (rank != b.n)
            out += '/';
        int run = 0;
        for (int file = 1; file <= b.n; ++file) {
            bool pawn = rank >= 2 && rank <= b.n - 1 && d.test(Square{file, rank});
            if (pawn) {
                if (run) {
                    out += std::to_string(run);
                    run = 0;
                }
                out += 'P';
            } else {
                ++run;
            }
        }
        if (run)
            out += std::to_string(run);
    }
    return out;
}

}  // namespace pawncensus
