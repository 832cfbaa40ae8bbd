// Acceptance gate: one pass/fail line per release criterion, nonzero exit on
// any failure. Expected counts are the values derived and cross-checked by
// this project's independent methods (exhaustive census under two different
// matchers, the inclusion-exclusion sieve with and without pruning, and
// per-pawn-count slice audits); see README for the derivation story.
//
// Criteria 2 (n=8 brute force) and 4 (n=10 sieve) take minutes; they run only
// when PAWNCENSUS_LONG_RUN=1 is set.

#include "pawncensus/census.hpp"
#include "pawncensus/cli.hpp"
#include "pawncensus/matching.hpp"
#include "pawncensus/report.hpp"
#include "pawncensus/sieve.hpp"
#include "pawncensus/verify.hpp"

#include <cstdlib>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>

namespace {

using namespace pawncensus;

int failures = 0;

void report(bool pass, const std::string& label, const std::string& detail) {
    std::cout << (pass ? "[PASS] " : "[FAIL] ") << label;
    if (!detail.empty())
        std::cout << " — " << detail;
    std::cout << '\n';
    if (!pass)
        ++failures;
}

void skip(const std::string& label, const std::string& why) {
    std::cout << "[SKIP] " << label << " — " << why << '\n';
}

bool long_run_enabled() {
    const char* v = std::getenv("PAWNCENSUS_LONG_RUN");
    return v != nullptr && std::string(v) == "1";
}

const std::map<int, BigCount>& expected_unreachable() {
    static const std::map<int, BigCount> table = {
        {3, BigCount(0)},         {4, BigCount(18)},
        {5, BigCount(550)},       {6, BigCount(16398)},
        {7, BigCount(541782)},    {8, BigCount(20217624)},
        {9, BigCount(851074484)}, {10, BigCount("40168206763")},
    };
    return table;
}

BigCount run_sieve(int n) {
    UnsatCoreSet cores;
    return sieve_count(BoardSize{n}, cores).unreachable;
}

// 1. The sieve reproduces the cross-validated census column for n = 3..8.
void criterion_table_reproduction() {
    std::ostringstream detail;
    bool pass = true;
    for (int n = 3; n <= 8; ++n) {
        BigCount got = run_sieve(n);
        const BigCount& want = expected_unreachable().at(n);
        if (got != want) {
            pass = false;
            detail << "n=" << n << " sieve=" << got << " expected=" << want << "; ";
        }
    }
    if (pass)
        detail << "sieve matches the census column exactly for n=3..8";
    report(pass, "table reproduction (sieve, n=3..8)", detail.str());
}

// 2. Brute-force census equals the sieve for n = 3..7 (n=8 in long-run mode).
void criterion_oracle_agreement() {
    int top = long_run_enabled() ? 8 : 7;
    std::ostringstream detail;
    bool pass = true;
    for (int n = 3; n <= top; ++n) {
        BigCount brute = brute_force_count(BoardSize{n});
        BigCount sieve = run_sieve(n);
        if (brute != sieve) {
            pass = false;
            detail << "n=" << n << " brute=" << brute << " sieve=" << sieve << "; ";
        }
    }
    if (pass) {
        detail << "brute force equals the sieve for n=3.." << top;
        if (top == 7)
            detail << " (set PAWNCENSUS_LONG_RUN=1 to include n=8)";
    }
    report(pass, "oracle agreement (brute force vs sieve)", detail.str());
}

// 3. The printed two-decimal percent column for n = 3..8.
void criterion_percent_column() {
    const std::map<int, std::string> want = {{3, "0.00"}, {4, "11.04"}, {5, "11.12"},
                                             {6, "8.63"}, {7, "6.20"},  {8, "4.35"}};
    std::ostringstream detail;
    bool pass = true;
    for (const auto& [n, expect] : want) {
        BoardSize b{n};
        std::string got =
            percent_two_decimals(expected_unreachable().at(n), total_diagrams(b));
        if (got != expect) {
            pass = false;
            detail << "n=" << n << " got " << got << " expected " << expect << "; ";
        }
    }
    if (pass)
        detail << "0.00 / 11.04 / 11.12 / 8.63 / 6.20 / 4.35";
    report(pass, "percent column (two decimals, n=3..8)", detail.str());
}

// 4. Large boards: n=9 always (seconds); n=10 in long-run mode (minutes).
void criterion_large_boards() {
    std::ostringstream detail;
    bool pass = true;
    {
        BigCount got = run_sieve(9);
        if (got != expected_unreachable().at(9)) {
            pass = false;
            detail << "n=9 sieve=" << got << " expected=" << expected_unreachable().at(9)
                   << "; ";
        }
    }
    if (long_run_enabled()) {
        BigCount got = run_sieve(10);
        if (got != expected_unreachable().at(10)) {
            pass = false;
            detail << "n=10 sieve=" << got << " expected=" << expected_unreachable().at(10)
                   << "; ";
        }
        if (pass)
            detail << "n=9 and n=10 match their slice-audited values";
    } else if (pass) {
        detail << "n=9 matches; n=10 runs with PAWNCENSUS_LONG_RUN=1";
    }
    report(pass, "large boards (n=9 always, n=10 long-run)", detail.str());
}

// 5. Greedy interval assignment agrees with the augmenting-path matcher:
//    exhaustively for n <= 5, and on 1e5 seeded random diagrams for n = 6..8.
void criterion_matching_equivalence() {
    std::ostringstream detail;
    bool pass = true;
    long long exhaustive = 0;
    for (int n = 3; n <= 5 && pass; ++n) {
        BoardSize b{n};
        int grid = b.n * (b.n - 2);
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << grid) && pass; ++mask) {
            if (std::popcount(mask) > b.n)
                continue;
            Diagram d(b);
            for (int i = 0; i < grid; ++i)
                if (mask >> i & 1)
                    d.set(square_at(i, b));
            if (is_reachable(d, b) != reference_is_reachable(d, b)) {
                pass = false;
                detail << "n=" << n << " disagreement on mask " << mask << "; ";
            }
            ++exhaustive;
        }
    }
    long long sampled = 0;
    std::mt19937_64 rng(20260814);
    for (int n = 6; n <= 8 && pass; ++n) {
        BoardSize b{n};
        for (int i = 0; i < 100000; ++i) {
            Diagram d = pawncensus::detail::random_diagram(b, rng);
            if (is_reachable(d, b) != reference_is_reachable(d, b)) {
                pass = false;
                detail << "n=" << n << " disagreement on sample " << i << "; ";
                break;
            }
            ++sampled;
        }
    }
    if (pass)
        detail << exhaustive << " exhaustive (n<=5) + " << sampled
               << " sampled (n=6..8) diagrams agree";
    report(pass, "matching equivalence (greedy vs augmenting path)", detail.str());
}

// 6. Property suites at n = 4..6 with >= 1e4 sampled unreachable diagrams per
//    board for reflection; downward-shift has no qualifying diagrams at n=4
//    (no all-rank-3 diagram on a 4-board is unreachable), so its sample total
//    is required across n=5..6 instead.
void criterion_property_suites() {
    std::ostringstream detail;
    bool pass = true;
    long long reflection_total = 0, shift_total = 0;
    for (int n = 4; n <= 6 && pass; ++n) {
        VerifyReport rep = run_verify(BoardSize{n}, 10000, 97531);
        if (!rep.pass()) {
            pass = false;
            for (const SuiteResult& s : rep.suites)
                if (!s.pass)
                    detail << "n=" << n << ' ' << s.name << ": " << s.detail << "; ";
            break;
        }
        for (const SuiteResult& s : rep.suites) {
            if (s.name == "reflection-invariance")
                reflection_total += s.checked;
            if (s.name == "downward-shift")
                shift_total += s.checked;
        }
    }
    if (pass && reflection_total < 30000) {
        pass = false;
        detail << "reflection checked only " << reflection_total << " of 30000; ";
    }
    if (pass && shift_total < 20000) {
        pass = false;
        detail << "downward-shift checked only " << shift_total << " of 20000; ";
    }
    if (pass)
        detail << "partition, per-family, placement, remainder, reflection ("
               << reflection_total << " samples) and downward-shift (" << shift_total
               << " samples) suites pass at n=4..6";
    report(pass, "property suites (verify, n=4..6)", detail.str());
}

// 7. The n=4 verbose ledger is exactly +12, +10, -4.
void criterion_worked_ledger() {
    UnsatCoreSet cores;
    SieveResult r = sieve_count(BoardSize{4}, cores, true);
    std::ostringstream detail;
    bool pass = r.terms.size() == 3 && r.terms[0].value == 12 && r.terms[1].value == 10 &&
                r.terms[2].value == -4 && r.unreachable == 18;
    if (!pass) {
        detail << "got";
        for (const SieveTerm& t : r.terms)
            detail << ' ' << t.value;
    }
    std::string ledger;
    if (pass) {
        std::ostringstream out, err;
        int rc = cli_main({"count", "--n", "4", "--verbose"}, out, err);
        ledger = out.str();
        pass = rc == 0 && ledger.find("+12") != std::string::npos &&
               ledger.find("+10") != std::string::npos &&
               ledger.find("-4") != std::string::npos;
        if (!pass)
            detail << "verbose output missing a term (exit " << rc << ")";
    }
    if (pass)
        detail << "signed contributions +12, +10, -4 sum to 18; verbose mode prints them";
    report(pass, "worked ledger (n=4 signed contributions)", detail.str());
}

}  // namespace

int main() {
    criterion_table_reproduction();
    criterion_oracle_agreement();
    criterion_percent_column();
    criterion_large_boards();
    criterion_matching_equivalence();
    criterion_property_suites();
    criterion_worked_ledger();
    if (!long_run_enabled())
        skip("long-run extras", "PAWNCENSUS_LONG_RUN=1 adds brute force at n=8 and the n=10 sieve");
    std::cout << (failures == 0 ? "ACCEPTANCE PASSED" : "ACCEPTANCE FAILED") << " ("
              << failures << " criterion failures)\n";
    return failures == 0 ? 0 : 1;
}
