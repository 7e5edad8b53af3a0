#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "recur2code/codes.hpp"

namespace recur2code {

enum class ScanFilter {
    mds,
    one_weight,
    outside_classification,
    case_irreducible,
    case_distinct,
    case_repeated,
};

// Accepts "mds", "one-weight", "outside-classification", "case:irreducible",
// "case:distinct", "case:repeated".
ScanFilter parse_scan_filter(std::string_view text);
bool matches(const CodeReport& report, ScanFilter filter);

struct ScanOptions {
    std::vector<ScanFilter> filters;  // conjunction
    uint64_t budget = 1'000'000'000;
    int workers = 0;
    uint64_t start_a_index = 0;  // resume: skip a-chunks below this index
};

// Analyzes all q(q-1) pairs (a in F_q, b in F_q^*), ordered by (log a with 0
// first, log b). Work is chunked by a-value and parallelized over b inside
// each chunk; chunk_sink (when given) receives each finished chunk, so an
// interrupted run still leaves a valid export prefix behind.
std::vector<CodeReport> scan_field(uint64_t q, const ScanOptions& opts = {});
void scan_field_chunked(uint64_t q, const ScanOptions& opts,
                        const std::function<void(const std::vector<CodeReport>&)>& chunk_sink);

struct TableRow {
    int table = 0;
    uint64_t q = 0;
    uint64_t a_exp = 0, b_exp = 0;
    uint64_t expected_n = 0;
    std::optional<uint64_t> expected_e;
};

// Embedded reference rows, ids 1..3.
std::vector<TableRow> table_fixture(int id);
// "table q a_exp b_exp N [e]" per row; '#' comments and blank lines allowed.
std::vector<TableRow> parse_table_fixture(std::istream& in);

struct TableRowResult {
    TableRow row;
    uint64_t computed_n = 0, computed_e = 0;
    bool n_match = false, e_match = false;
    std::string modulus;  // modulus actually used, for mismatch diagnostics
};

struct TableComparison {
    int table = 0;
    std::vector<TableRowResult> rows;
    bool all_match = false;
};

TableComparison reproduce_table(int id);

// JSONL: one CodeReport object per line. CSV: fixed header, absent values
// empty, flags joined with ';'. Both LF-terminated. Returns bytes written.
uint64_t export_jsonl(const std::vector<CodeReport>& records, std::ostream& out);
uint64_t export_csv(const std::vector<CodeReport>& records, std::ostream& out);
// Rows only, no header; for chunked/streaming export.
uint64_t export_csv_rows(const std::vector<CodeReport>& records, std::ostream& out);
std::vector<CodeReport> import_jsonl(std::istream& in);
std::vector<CodeReport> import_csv(std::istream& in);

inline constexpr const char* kCsvHeader =
    "q,a,b,case,N,e,K,w1,f1,w2,f2,d,d_dual,mds,projective,one_weight,u,subfield,semiprimitive,flags";

}  // namespace recur2code
