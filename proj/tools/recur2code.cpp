#include <algorithm>
#include <charconv>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "recur2code/catalog.hpp"
#include "recur2code/selftest.hpp"

using namespace recur2code;

namespace {

struct FieldArgs {
    uint64_t q = 0;
    uint64_t p = 0;
    uint32_t k = 1;
    std::string modulus;
};

std::vector<uint32_t> parse_uint_list(const std::string& text) {
    std::vector<uint32_t> out;
    size_t pos = 0;
    while (pos <= text.size()) {
        const size_t comma = text.find(',', pos);
        const std::string item = text.substr(pos, comma - pos);
        uint32_t v = 0;
        const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
        if (ec != std::errc{} || ptr != item.data() + item.size())
            throw input_error("malformed integer list: " + text);
        out.push_back(v);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

FieldPtr build_field(const FieldArgs& args) {
    std::optional<std::vector<uint32_t>> mod;
    if (!args.modulus.empty()) mod = parse_uint_list(args.modulus);
    if (args.q != 0) {
        const auto [p, k] = factor_prime_power(args.q);
        return Field::build(p, k, std::move(mod));
    }
    if (args.p == 0) throw input_error("specify the field with --q or with --p and --k");
    return Field::build(args.p, args.k, std::move(mod));
}

void add_field_options(CLI::App* cmd, FieldArgs& args) {
    cmd->add_option("--q", args.q, "Field size q = p^k");
    cmd->add_option("--p", args.p, "Field characteristic (alternative to --q)");
    cmd->add_option("--k", args.k, "Extension degree (with --p)");
    cmd->add_option("--modulus", args.modulus,
                    "Override the Conway modulus: c0,c1,...,ck (monic, constant first)");
}

std::string modulus_str(const Field& field) {
    std::string out = "[";
    for (size_t i = 0; i < field.modulus().size(); ++i)
        out += (i ? "," : "") + std::to_string(field.modulus()[i]);
    return out + "]";
}

void print_report(const Field& field, const RecurrenceParams& params, const CodeReport& r) {
    std::cout << "field: F_" << r.q << " = F_" << field.p() << "^" << field.k() << ", modulus "
              << modulus_str(field) << "\n";
    std::cout << "a = " << element_str(r.a_log) << ", b = " << element_str(r.b_log) << "\n";
    const auto fact = classify(field, params);
    std::cout << "case: " << to_string(r.kind);
    if (r.kind == FactorKind::irreducible) {
        std::cout << "; roots R^" << fact.alpha.log << ", R^" << fact.beta.log
                  << " in F_" << r.q * r.q << " (R its primitive element)";
    } else if (r.kind == FactorKind::distinct_roots) {
        std::cout << "; alpha = " << field.str(fact.alpha) << ", beta = " << field.str(fact.beta);
    } else {
        std::cout << "; alpha = " << field.str(fact.alpha) << " (doubled)";
    }
    std::cout << "\n";
    std::cout << "N = " << r.N << ", e = " << r.e << ", K = " << r.K << "\n";
    std::cout << "weights:";
    for (const auto& [w, f] : r.weights.entries) std::cout << " " << w << ":" << f;
    const bool enumerated =
        std::find(r.flags.begin(), r.flags.end(), kFlagBruteforceSkipped) == r.flags.end();
    std::cout << (enumerated ? "  (enumeration agrees with the closed form)"
                             : "  (closed form only; enumeration over budget)")
              << "\n";
    std::cout << "d = " << r.d << ", dual distance = " << r.d_dual << ", MDS = "
              << (r.mds ? "yes" : "no") << ", projective = " << (r.projective ? "yes" : "no")
              << ", one-weight = " << (r.one_weight ? "yes" : "no") << "\n";
    {
        const Poly h(field.shared_from_this(),
                     {field.neg(field.inv(params.b)), field.div(params.a, params.b), field.one()});
        std::cout << "check polynomial h(x) = " << h.str() << "\n";
    }
    if (r.swc) {
        std::cout << "classification: u = " << r.swc->u << ", semiprimitive = "
                  << (r.swc->semiprimitive ? "yes" : "no") << ", subfield = "
                  << (r.swc->subfield ? "yes" : "no");
        if (r.swc->trivial_u) std::cout << " (u = 1: semiprimitive holds vacuously)";
        std::cout << "\n";
    }
    if (!r.flags.empty()) {
        std::cout << "flags:";
        for (const auto& f : r.flags) std::cout << " " << f;
        std::cout << "\n";
    }
}

int run_analyze(const FieldArgs& fargs, const std::string& a_text, const std::string& b_text,
                bool json, uint64_t budget, int workers) {
    const FieldPtr field = build_field(fargs);
    const FieldElement a = field->parse(a_text);
    const FieldElement b = field->parse(b_text);
    const RecurrenceParams params(*field, a, b);
    const CodeReport rep = analyze(field, params, {budget, workers, AnalyzeOptions{}.check_poly_max_n});
    if (json)
        std::cout << to_json_line(rep) << "\n";
    else
        print_report(*field, params, rep);
    return 0;
}

int run_table(int id) {
    const TableComparison cmp = reproduce_table(id);
    int matched = 0;
    for (const auto& row : cmp.rows) {
        std::cout << "q=" << row.row.q << "\ta=r^" << row.row.a_exp << "\tb=r^" << row.row.b_exp
                  << "\tN " << row.row.expected_n << (row.n_match ? " ✓" : " ✗");
        if (!row.n_match) std::cout << " (computed " << row.computed_n << ")";
        if (row.row.expected_e) {
            std::cout << "\te " << *row.row.expected_e << (row.e_match ? " ✓" : " ✗");
            if (!row.e_match) std::cout << " (computed " << row.computed_e << ")";
        }
        if (!row.n_match || !row.e_match) std::cout << "\t[modulus " << row.modulus << "]";
        std::cout << "\n";
        matched += row.n_match && row.e_match;
    }
    std::cout << matched << "/" << cmp.rows.size() << " rows match\n";
    return cmp.all_match ? 0 : 2;
}

int run_scan(uint64_t q, const std::vector<std::string>& filter_texts, const std::string& format,
             const std::string& out_path, uint64_t budget, int workers, uint64_t start_a) {
    if (q == 0) throw input_error("--q is required");
    if (format != "jsonl" && format != "csv") throw input_error("format must be jsonl or csv");
    ScanOptions opts;
    for (const auto& f : filter_texts) opts.filters.push_back(parse_scan_filter(f));
    opts.budget = budget;
    opts.workers = workers;
    opts.start_a_index = start_a;

    std::ofstream file;
    if (!out_path.empty()) {
        file.open(out_path, std::ios::binary);
        if (!file) throw input_error("cannot open " + out_path + " for writing");
    }
    std::ostream& out = out_path.empty() ? std::cout : file;
    std::ostream& info = out_path.empty() ? std::cerr : std::cout;

    uint64_t pairs = 0, records = 0, bytes = 0;
    uint64_t by_case[3] = {0, 0, 0};
    std::map<std::string, uint64_t> by_flag;
    if (format == "csv") {
        out << kCsvHeader << "\n";
        bytes += std::string(kCsvHeader).size() + 1;
    }
    scan_field_chunked(q, opts, [&](const std::vector<CodeReport>& chunk) {
        bytes += format == "csv" ? export_csv_rows(chunk, out) : export_jsonl(chunk, out);
        out.flush();
        pairs += q - 1;
        records += chunk.size();
        for (const auto& r : chunk) {
            ++by_case[static_cast<int>(r.kind)];
            for (const auto& f : r.flags) ++by_flag[f];
        }
    });
    info << "scanned " << pairs << " pairs, kept " << records << " records (irreducible "
         << by_case[0] << ", distinct " << by_case[1] << ", repeated " << by_case[2] << "), "
         << bytes << " bytes\n";
    if (!by_flag.empty()) {
        info << "flags:";
        for (const auto& [f, n] : by_flag) info << " " << f << "=" << n;
        info << "\n";
    }
    return 0;
}

int run_selftest_cmd(uint64_t max_q, uint64_t budget, int workers) {
    const auto suites = run_selftest(max_q, {workers, budget});
    for (const auto& s : suites) {
        std::cout << s.name;
        for (size_t i = s.name.size(); i < 26; ++i) std::cout << ' ';
        std::cout << s.checked << " checks, " << s.failures << " failures\n";
        for (const auto& m : s.messages) std::cout << "    " << m << "\n";
    }
    if (!all_passed(suites)) {
        std::cerr << "selftest FAILED\n";
        return 2;
    }
    std::cout << "selftest passed for all prime powers q <= " << max_q << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dimension-2 cyclic codes C(a,b,q) from second-order recurrences over F_q"};
    app.require_subcommand(1);

    FieldArgs fargs;
    std::string a_text, b_text, format = "jsonl", out_path;
    std::vector<std::string> filters;
    bool json = false;
    uint64_t budget = 1'000'000'000;
    int workers = 0;
    uint64_t scan_q = 0, start_a = 0, max_q = 0;
    int table_id = 0;

    auto* analyze_cmd =
        app.add_subcommand("analyze", "Analyze the code C(a,b,q) of one parameter pair");
    add_field_options(analyze_cmd, fargs);
    analyze_cmd->add_option("--a", a_text, "Coefficient a (\"r^n\", \"0\" or \"[c0,...]\")")
        ->required();
    analyze_cmd->add_option("--b", b_text, "Coefficient b, nonzero")->required();
    analyze_cmd->add_flag("--json", json, "Emit one JSON record instead of the readable report");
    analyze_cmd->add_option("--budget", budget, "Enumeration budget in symbol operations");
    analyze_cmd->add_option("--workers", workers, "Worker threads (0 = all available)");

    auto* table_cmd = app.add_subcommand("table", "Recompute a reference table and compare");
    table_cmd->add_option("id", table_id, "Table id (1, 2 or 3)")->required();

    auto* scan_cmd = app.add_subcommand("scan", "Analyze all (a,b) pairs of one field");
    scan_cmd->add_option("--q", scan_q, "Field size q = p^k")->required();
    scan_cmd->add_option("--filter", filters,
                         "mds | one-weight | outside-classification | case:<kind> (repeatable)");
    scan_cmd->add_option("--format", format, "jsonl (default) or csv");
    scan_cmd->add_option("--out", out_path, "Output path (default: stdout)");
    scan_cmd->add_option("--budget", budget, "Per-pair enumeration budget");
    scan_cmd->add_option("--workers", workers, "Worker threads (0 = all available)");
    scan_cmd->add_option("--start-a", start_a, "Resume from this a-chunk index");

    auto* selftest_cmd =
        app.add_subcommand("selftest", "Run the exhaustive invariant suites for q <= max-q");
    selftest_cmd->add_option("--max-q", max_q, "Largest field size to verify")->required();
    selftest_cmd->add_option("--budget", budget, "Per-pair enumeration budget");
    selftest_cmd->add_option("--workers", workers, "Worker threads (0 = all available)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (app.got_subcommand(analyze_cmd))
            return run_analyze(fargs, a_text, b_text, json, budget, workers);
        if (app.got_subcommand(table_cmd)) return run_table(table_id);
        if (app.got_subcommand(scan_cmd))
            return run_scan(scan_q, filters, format, out_path, budget, workers, start_a);
        if (app.got_subcommand(selftest_cmd)) return run_selftest_cmd(max_q, budget, workers);
    } catch (const invariant_error& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return 2;
    } catch (const input_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
