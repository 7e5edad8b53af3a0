#include "recur2code/conway.hpp"

#include <mutex>
#include <sstream>
#include <string>

#include "recur2code/gf.hpp"

namespace recur2code {

#include "conway_data.inc"

ConwayTable parse_conway_table(std::istream& in) {
    ConwayTable table;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream row(line);
        uint64_t p = 0;
        uint32_t k = 0;
        if (!(row >> p >> k)) {
            if (row.eof() && line.find_first_not_of(" \t\r") == std::string::npos) continue;
            throw input_error("conway table line " + std::to_string(lineno) + ": malformed entry");
        }
        std::vector<uint32_t> coeffs;
        uint64_t c = 0;
        while (row >> c) {
            if (c >= p) throw input_error("conway table line " + std::to_string(lineno) + ": coefficient out of range");
            coeffs.push_back(static_cast<uint32_t>(c));
        }
        if (!row.eof()) throw input_error("conway table line " + std::to_string(lineno) + ": malformed coefficient");
        if (coeffs.size() != k + 1 || coeffs.back() != 1)
            throw input_error("conway table line " + std::to_string(lineno) + ": expected monic degree-k polynomial");
        table[{p, k}] = std::move(coeffs);
    }
    return table;
}

namespace {

std::mutex g_table_mutex;

ConwayTable& global_table() {
    static ConwayTable table = [] {
        std::istringstream in(kConwayTableText);
        return parse_conway_table(in);
    }();
    return table;
}

}  // namespace

std::optional<std::vector<uint32_t>> conway_polynomial(uint64_t p, uint32_t k) {
    std::lock_guard lock(g_table_mutex);
    const auto& table = global_table();
    auto it = table.find({p, k});
    if (it == table.end()) return std::nullopt;
    return it->second;
}

void register_conway_entries(const ConwayTable& extra) {
    std::lock_guard lock(g_table_mutex);
    auto& table = global_table();
    for (const auto& [key, val] : extra) table[key] = val;
}

}  // namespace recur2code
