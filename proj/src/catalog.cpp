#include "recur2code/catalog.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <algorithm>
#include <charconv>
#include <exception>
#include <ostream>
#include <sstream>

namespace recur2code {

ScanFilter parse_scan_filter(std::string_view text) {
    if (text == "mds") return ScanFilter::mds;
    if (text == "one-weight") return ScanFilter::one_weight;
    if (text == "outside-classification") return ScanFilter::outside_classification;
    if (text == "case:irreducible") return ScanFilter::case_irreducible;
    if (text == "case:distinct") return ScanFilter::case_distinct;
    if (text == "case:repeated") return ScanFilter::case_repeated;
    throw input_error("unknown filter: " + std::string(text) +
                      " (expected mds, one-weight, outside-classification or case:<kind>)");
}

bool matches(const CodeReport& r, ScanFilter filter) {
    switch (filter) {
        case ScanFilter::mds: return r.mds;
        case ScanFilter::one_weight: return r.one_weight;
        case ScanFilter::outside_classification:
            return r.kind == FactorKind::irreducible && !r.one_weight && r.swc &&
                   r.swc->u > 1 && !r.swc->semiprimitive && !r.swc->subfield;
        case ScanFilter::case_irreducible: return r.kind == FactorKind::irreducible;
        case ScanFilter::case_distinct: return r.kind == FactorKind::distinct_roots;
        case ScanFilter::case_repeated: return r.kind == FactorKind::repeated_root;
    }
    return false;
}

void scan_field_chunked(uint64_t q, const ScanOptions& opts,
                        const std::function<void(const std::vector<CodeReport>&)>& chunk_sink) {
    if (q > max_q_bound()) throw input_error("q exceeds the field size cap");
    const FieldPtr field = Field::build_from_q(q);
    const AnalyzeOptions analyze_opts{opts.budget, opts.workers, AnalyzeOptions{}.check_poly_max_n};

    // a ranges over 0, r^0, ..., r^(q-2); b over r^0, ..., r^(q-2).
    for (uint64_t ai = opts.start_a_index; ai < q; ++ai) {
        const FieldElement a = ai == 0 ? field->zero() : field->from_log(static_cast<int64_t>(ai - 1));
        std::vector<CodeReport> chunk(q - 1);
        std::vector<char> keep(q - 1, 0);
        std::exception_ptr failure;
#ifdef _OPENMP
        const int threads = opts.workers > 0 ? opts.workers : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
#endif
        for (int64_t bi = 0; bi < static_cast<int64_t>(q) - 1; ++bi) {
            try {
                const FieldElement b = field->from_log(bi);
                // per-codeword enumeration stays serial here; the pairs are
                // the parallel grain
                AnalyzeOptions per_pair = analyze_opts;
                per_pair.workers = 1;
                CodeReport rep = analyze(field, RecurrenceParams(*field, a, b), per_pair);
                const bool ok = std::all_of(opts.filters.begin(), opts.filters.end(),
                                            [&](ScanFilter f) { return matches(rep, f); });
                if (ok) {
                    chunk[bi] = std::move(rep);
                    keep[bi] = 1;
                }
            } catch (...) {
#ifdef _OPENMP
#pragma omp critical
#endif
                {
                    if (!failure) failure = std::current_exception();
                }
            }
        }
        if (failure) std::rethrow_exception(failure);
        std::vector<CodeReport> kept;
        for (uint64_t bi = 0; bi < q - 1; ++bi)
            if (keep[bi]) kept.push_back(std::move(chunk[bi]));
        chunk_sink(kept);
    }
}

std::vector<CodeReport> scan_field(uint64_t q, const ScanOptions& opts) {
    std::vector<CodeReport> all;
    scan_field_chunked(q, opts, [&](const std::vector<CodeReport>& chunk) {
        all.insert(all.end(), chunk.begin(), chunk.end());
    });
    return all;
}

namespace {

// Rows of the reference tables: "table q a_exp b_exp N [e]".
constexpr const char* kTableFixtureText =
    "# irreducible characteristic polynomial\n"
    "1 9 2 3 80 10\n"
    "1 49 5 30 400 25\n"
    "1 49 2 15 800 50\n"
    "1 49 10 9 800 50\n"
    "1 49 5 21 800 50\n"
    "1 49 7 11 2400 50\n"
    "1 49 27 23 2400 50\n"
    "1 27 3 11 364 14\n"
    "1 27 7 14 104 4\n"
    "1 27 2 10 728 28\n"
    "# two distinct roots\n"
    "2 9 4 8 8 4\n"
    "2 49 7 8 24 12\n"
    "2 49 4 8 48 8\n"
    "2 49 4 11 48 48\n"
    "2 49 4 13 48 48\n"
    "2 49 4 17 48 48\n"
    "2 49 4 23 48 48\n"
    "2 121 14 7 120 120\n"
    "2 121 22 7 120 120\n"
    "2 121 25 7 120 120\n"
    "# repeated root (rank is the characteristic, not listed)\n"
    "3 9 8 4 6\n"
    "3 49 18 28 168\n"
    "3 49 21 34 336\n"
    "3 49 23 38 336\n"
    "3 49 26 44 168\n"
    "3 49 29 2 336\n"
    "3 49 33 10 336\n"
    "3 121 15 66 440\n"
    "3 121 19 24 1320\n"
    "3 121 22 80 132\n";

}  // namespace

std::vector<TableRow> parse_table_fixture(std::istream& in) {
    std::vector<TableRow> rows;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream row_in(line);
        TableRow row;
        if (!(row_in >> row.table >> row.q >> row.a_exp >> row.b_exp >> row.expected_n)) {
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            throw input_error("fixture line " + std::to_string(lineno) + ": malformed row");
        }
        uint64_t e = 0;
        if (row_in >> e) row.expected_e = e;
        rows.push_back(row);
    }
    return rows;
}

std::vector<TableRow> table_fixture(int id) {
    if (id < 1 || id > 3) throw input_error("table id must be 1, 2 or 3");
    std::istringstream in(kTableFixtureText);
    std::vector<TableRow> out;
    for (const auto& row : parse_table_fixture(in))
        if (row.table == id) out.push_back(row);
    return out;
}

TableComparison reproduce_table(int id) {
    TableComparison cmp;
    cmp.table = id;
    cmp.all_match = true;
    FieldPtr field;
    for (const auto& row : table_fixture(id)) {
        if (!field || field->q() != row.q) field = Field::build_from_q(row.q);
        const RecurrenceParams params(*field, field->from_log(static_cast<int64_t>(row.a_exp)),
                                      field->from_log(static_cast<int64_t>(row.b_exp)));
        const auto prof = profile(*field, params);
        TableRowResult res;
        res.row = row;
        res.computed_n = prof.N;
        res.computed_e = prof.e;
        res.n_match = prof.N == row.expected_n;
        res.e_match = !row.expected_e || prof.e == *row.expected_e;
        std::string mod = "[";
        for (size_t i = 0; i < field->modulus().size(); ++i)
            mod += (i ? "," : "") + std::to_string(field->modulus()[i]);
        res.modulus = mod + "]";
        cmp.all_match = cmp.all_match && res.n_match && res.e_match;
        cmp.rows.push_back(std::move(res));
    }
    return cmp;
}

namespace {

std::string csv_row(const CodeReport& r) {
    std::string out;
    const auto add = [&out](const std::string& s) {
        if (!out.empty()) out += ',';
        out += s;
    };
    add(std::to_string(r.q));
    add(element_str(r.a_log));
    add(element_str(r.b_log));
    add(std::string(to_string(r.kind)));
    add(std::to_string(r.N));
    add(std::to_string(r.e));
    add(std::to_string(r.K));
    add(std::to_string(r.weights.entries[0].first));
    add(std::to_string(r.weights.entries[0].second));
    if (r.weights.entries.size() > 1) {
        add(std::to_string(r.weights.entries[1].first));
        add(std::to_string(r.weights.entries[1].second));
    } else {
        add("");
        add("");
    }
    add(std::to_string(r.d));
    add(std::to_string(r.d_dual));
    add(r.mds ? "true" : "false");
    add(r.projective ? "true" : "false");
    add(r.one_weight ? "true" : "false");
    if (r.swc) {
        add(std::to_string(r.swc->u));
        add(r.swc->subfield ? "true" : "false");
        add(r.swc->semiprimitive ? "true" : "false");
    } else {
        add("");
        add("");
        add("");
    }
    std::string flags;
    for (const auto& f : r.flags) {
        if (!flags.empty()) flags += ';';
        flags += f;
    }
    add(flags);
    return out;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

uint64_t to_u64(const std::string& s, const char* what) {
    uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw input_error(std::string("bad CSV field for ") + what + ": " + s);
    return v;
}

bool to_bool(const std::string& s, const char* what) {
    if (s == "true") return true;
    if (s == "false") return false;
    throw input_error(std::string("bad CSV boolean for ") + what + ": " + s);
}

}  // namespace

uint64_t export_jsonl(const std::vector<CodeReport>& records, std::ostream& out) {
    uint64_t bytes = 0;
    for (const auto& r : records) {
        const std::string line = to_json_line(r) + "\n";
        out << line;
        bytes += line.size();
    }
    if (!out) throw input_error("write failed");
    return bytes;
}

uint64_t export_csv_rows(const std::vector<CodeReport>& records, std::ostream& out) {
    uint64_t bytes = 0;
    for (const auto& r : records) {
        const std::string line = csv_row(r) + "\n";
        out << line;
        bytes += line.size();
    }
    if (!out) throw input_error("write failed");
    return bytes;
}

uint64_t export_csv(const std::vector<CodeReport>& records, std::ostream& out) {
    const std::string header = std::string(kCsvHeader) + "\n";
    out << header;
    if (!out) throw input_error("write failed");
    return header.size() + export_csv_rows(records, out);
}

std::vector<CodeReport> import_jsonl(std::istream& in) {
    std::vector<CodeReport> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        out.push_back(report_from_json_line(line));
    }
    return out;
}

std::vector<CodeReport> import_csv(std::istream& in) {
    std::vector<CodeReport> out;
    std::string line;
    if (!std::getline(in, line)) return out;
    if (split_csv(line) != split_csv(kCsvHeader)) throw input_error("bad CSV header");
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const auto f = split_csv(line);
        if (f.size() != 20) throw input_error("bad CSV row: expected 20 fields");
        CodeReport r;
        r.q = to_u64(f[0], "q");
        r.a_log = element_log_from_str(f[1], r.q);
        r.b_log = element_log_from_str(f[2], r.q);
        const auto kind = kind_from_string(f[3]);
        if (!kind) throw input_error("bad CSV case: " + f[3]);
        r.kind = *kind;
        r.N = to_u64(f[4], "N");
        r.e = to_u64(f[5], "e");
        r.K = to_u64(f[6], "K");
        r.weights.entries.emplace_back(to_u64(f[7], "w1"), to_u64(f[8], "f1"));
        if (!f[9].empty()) r.weights.entries.emplace_back(to_u64(f[9], "w2"), to_u64(f[10], "f2"));
        r.d = to_u64(f[11], "d");
        r.d_dual = to_u64(f[12], "d_dual");
        r.mds = to_bool(f[13], "mds");
        r.projective = to_bool(f[14], "projective");
        r.one_weight = to_bool(f[15], "one_weight");
        if (!f[16].empty()) {
            SwcClassification swc;
            swc.u = to_u64(f[16], "u");
            swc.subfield = to_bool(f[17], "subfield");
            swc.semiprimitive = to_bool(f[18], "semiprimitive");
            swc.trivial_u = swc.u == 1;
            r.swc = swc;
        }
        if (!f[19].empty()) {
            std::string cur;
            for (char c : f[19] + ";") {
                if (c == ';') {
                    if (!cur.empty()) r.flags.push_back(cur);
                    cur.clear();
                } else {
                    cur += c;
                }
            }
        }
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace recur2code
