#pragma once

#include "pawncensus/board.hpp"
#include "pawncensus/census.hpp"
#include "pawncensus/fen.hpp"
#include "pawncensus/matching.hpp"
#include "pawncensus/report.hpp"
#include "pawncensus/sieve.hpp"
#include "pawncensus/verify.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

// Command-line front end. Subcommands:
//   count      one board size, sieve and/or brute census
//   table      results table for n = 3..max-n (sieve)
//   reachable  verdict for one diagram given as piece-placement rows
//   verify     runtime property suites
// Exit codes: 0 success, 1 usage/input error, 2 verification failure or
// method disagreement, 3 internal assertion failure.

namespace pawncensus {

namespace detail {

inline long long elapsed_ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() -
                                                                 t0)
        .count();
}

// Core cache file: explicit flag wins, else $CENSUS_CACHE_DIR/cores_n<n>.txt.
inline std::optional<std::string> core_cache_path(const std::string& flag, int n) {
    if (!flag.empty())
        return flag;
    if (const char* dir = std::getenv("CENSUS_CACHE_DIR"))
        return std::string(dir) + "/cores_n" + std::to_string(n) + ".txt";
    return std::nullopt;
}

inline UnsatCoreSet load_core_cache(const std::optional<std::string>& path, BoardSize b) {
    UnsatCoreSet cores;
    if (path) {
        std::ifstream in(*path);
        if (in)
            cores = load_cores(b, in);
    }
    return cores;
}

inline void save_core_cache(const std::optional<std::string>& path, BoardSize b,
                            const UnsatCoreSet& cores, std::ostream& err) {
    if (!path)
        return;
    std::ofstream out(*path, std::ios::trunc);
    if (!out) {
        err << "warning: cannot write core cache " << *path << "\n";
        return;
    }
    save_cores(cores, b, out);
}

inline std::string file_label(int file) {
    if (file <= 26)
        return std::string(1, static_cast<char>('a' + file - 1));
    return "f" + std::to_string(file);
}

inline std::string signed_str(const BigCount& v) {
    return v < 0 ? v.str() : "+" + v.str();
}

inline std::string combo_label(const SignatureCombo& combo) {
    std::string out = "[";
    bool first = true;
    for (const auto& [sig, mult] : combo) {
        if (!first)
            out += ' ';
        first = false;
        out += "(e=" + std::to_string(sig.e) + ",w=" + std::to_string(sig.w) +
               ",p=" + std::to_string(sig.p) + ",z=" + std::to_string(sig.z) +
               ",q=" + std::to_string(sig.q) + ")";
        if (mult > 1)
            out += "x" + std::to_string(mult);
    }
    return out + "]";
}

// Infers the board width from the first row: digits are empty runs, 'P' is a
// pawn. Full validation happens in the parser.
inline int infer_width(const std::string& rows) {
    int width = 0, run = 0;
    for (char c : rows) {
        if (c == '/')
            break;
        if (c >= '0' && c <= '9') {
            run = run * 10 + (c - '0');
        } else {
            width += run + 1;
            run = 0;
        }
    }
    return width + run;
}

inline void emit_rows(const std::vector<CountRow>& rows, const std::string& format,
                      std::ostream& out) {
    if (format == "csv")
        out << render_csv(rows);
    else if (format == "json")
        out << render_json(rows);
    else
        out << render_text(rows);
}

}  // namespace detail

inline int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact census of unreachable single-side pawn diagrams under diagonal-capture "
                 "movement"};
    app.require_subcommand(1);

    int n = 0, max_n = 0, threads = 1;
    long long samples = 10000;
    std::uint64_t seed = 0;
    bool seed_given = false;
    std::string method = "sieve", format = "text", cores_path, rows;
    bool verbose = false;

    CLI::App* count = app.add_subcommand("count", "count unreachable diagrams for one board");
    count->add_option("--n", n, "board width")->required()->check(CLI::Range(3, 31));
    count->add_option("--method", method, "sieve | brute | both")
        ->check(CLI::IsMember({"sieve", "brute", "both"}));
    count->add_option("--format", format, "text | json | csv")
        ->check(CLI::IsMember({"text", "json", "csv"}));
    count->add_option("--threads", threads, "worker threads for the brute census")
        ->check(CLI::PositiveNumber);
    count->add_option("--cores", cores_path, "unsat-core cache file");
    count->add_flag("--verbose", verbose, "print the signed contribution ledger (sieve, text)");

    CLI::App* table = app.add_subcommand("table", "results table for n = 3..max-n (sieve)");
    table->add_option("--max-n", max_n, "largest board width")->required()->check(CLI::Range(3, 31));
    table->add_option("--format", format, "text | json | csv")
        ->check(CLI::IsMember({"text", "json", "csv"}));
    table->add_option("--cores", cores_path, "unsat-core cache file (per-n default via "
                                             "CENSUS_CACHE_DIR)");

    CLI::App* reach = app.add_subcommand("reachable", "verdict for one diagram");
    reach->add_option("rows", rows, "piece-placement rows: digits, 'P', '/'")->required();
    reach->add_option("--n", n, "board width (default: inferred from the first row)")
        ->check(CLI::Range(3, 31));
    reach->add_option("--format", format, "text | json")
        ->check(CLI::IsMember({"text", "json"}));

    CLI::App* verify = app.add_subcommand("verify", "run the property suites");
    verify->add_option("--n", n, "board width")->required()->check(CLI::Range(3, 31));
    verify->add_option("--samples", samples, "budget for sampled suites (0 = deterministic only)")
        ->check(CLI::NonNegativeNumber);
    auto* seed_opt = verify->add_option("--seed", seed, "random seed (default: nondeterministic)");
    verify->add_option("--format", format, "text | json")
        ->check(CLI::IsMember({"text", "json"}));

    std::vector<const char*> argv;
    argv.push_back("pawncensus");
    for (const std::string& a : args)
        argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 1;
    }
    seed_given = seed_opt->count() > 0;

    try {
        if (count->parsed()) {
            BoardSize b{n};
            auto cache = detail::core_cache_path(cores_path, n);
            std::vector<CountRow> emitted;
            BigCount total = total_diagrams(b);
            std::optional<BigCount> sieve_value, brute_value;
            std::vector<SieveTerm> terms;
            long long sieve_ms = 0, brute_ms = 0;

            if (method == "sieve" || method == "both") {
                auto t0 = std::chrono::steady_clock::now();
                UnsatCoreSet cores = detail::load_core_cache(cache, b);
                SieveResult r = sieve_count(b, cores, verbose);
                sieve_ms = detail::elapsed_ms_since(t0);
                detail::save_core_cache(cache, b, cores, err);
                sieve_value = r.unreachable;
                terms = std::move(r.terms);
                emitted.push_back({n, r.unreachable, total, sieve_ms});
            }
            if (method == "brute" || method == "both") {
                auto t0 = std::chrono::steady_clock::now();
                BigCount r = brute_force_count(b, threads);
                brute_ms = detail::elapsed_ms_since(t0);
                brute_value = r;
                emitted.push_back({n, r, total, brute_ms});
            }

            if (format == "text") {
                if (sieve_value)
                    out << "n=" << n << " method=sieve unreachable=" << *sieve_value
                        << " total=" << total << " percent="
                        << percent_unreachable(emitted.front()) << " elapsed_ms=" << sieve_ms
                        << "\n";
                if (verbose && !terms.empty()) {
                    out << "signed contribution ledger:\n";
                    for (const SieveTerm& t : terms)
                        out << "  " << detail::signed_str(t.value) << "  weight=" << t.weight
                            << " F=" << t.placements << " R=" << t.remainder
                            << " combo=" << detail::combo_label(t.combo) << "\n";
                }
                if (brute_value)
                    out << "n=" << n << " method=brute unreachable=" << *brute_value
                        << " total=" << total << " percent="
                        << percent_unreachable(emitted.back()) << " elapsed_ms=" << brute_ms
                        << "\n";
                if (method == "both")
                    out << "agreement: " << *sieve_value << (*sieve_value == *brute_value
                                                                 ? " = "
                                                                 : " != ")
                        << *brute_value << (*sieve_value == *brute_value ? ", agree" : ", DISAGREE")
                        << "\n";
            } else {
                detail::emit_rows(emitted, format, out);
            }
            if (method == "both" && *sieve_value != *brute_value) {
                err << "methods disagree at n=" << n << "\n";
                return 2;
            }
            return 0;
        }

        if (table->parsed()) {
            std::vector<CountRow> emitted;
            for (int i = 3; i <= max_n; ++i) {
                BoardSize b{i};
                auto cache = detail::core_cache_path(cores_path, i);
                auto t0 = std::chrono::steady_clock::now();
                UnsatCoreSet cores = detail::load_core_cache(cache, b);
                SieveResult r = sieve_count(b, cores);
                long long ms = detail::elapsed_ms_since(t0);
                detail::save_core_cache(cache, b, cores, err);
                emitted.push_back({i, r.unreachable, total_diagrams(b), ms});
            }
            detail::emit_rows(emitted, format, out);
            return 0;
        }

        if (reach->parsed()) {
            int width = n > 0 ? n : detail::infer_width(rows);
            if (width < 3 || width > 31) {
                err << "board width " << width << " out of range (3..31)\n";
                return 1;
            }
            BoardSize b{width};
            Diagram d = parse_rows(rows, b);
            auto assignment = greedy_assignment(d, b);
            if (format == "json") {
                nlohmann::json doc{{"n", width}, {"reachable", assignment.has_value()}};
                if (assignment) {
                    nlohmann::json files = nlohmann::json::array();
                    for (const auto& [sq, file] : assignment->pawn_to_file)
                        files.push_back({{"square", square_name(sq)},
                                         {"start_file", detail::file_label(file)}});
                    doc["assignment"] = files;
                }
                out << doc.dump(2) << "\n";
            } else {
                out << (assignment ? "reachable" : "unreachable") << "\n";
                if (assignment)
                    for (const auto& [sq, file] : assignment->pawn_to_file)
                        out << "  " << square_name(sq) << " -> " << detail::file_label(file)
                            << "\n";
            }
            return 0;
        }

        // verify
        BoardSize b{n};
        if (!seed_given)
            seed = std::random_device{}();
        VerifyReport report = run_verify(b, samples, seed);
        out << (format == "json" ? render_verify_json(report) : render_verify_text(report));
        return report.pass() ? 0 : 2;
    } catch (const FenError& e) {
        err << "parse error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        err << "invalid input: " << e.what() << "\n";
        return 1;
    } catch (const std::logic_error& e) {
        err << "internal assertion failed: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace pawncensus
