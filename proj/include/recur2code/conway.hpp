#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace recur2code {

using ConwayTable = std::map<std::pair<uint64_t, uint32_t>, std::vector<uint32_t>>;

// Parses "p k c0 c1 ... ck" lines (constant term first, monic);
// '#' starts a comment, blank lines are ignored.
ConwayTable parse_conway_table(std::istream& in);

// Embedded Conway polynomial for (p, k), or nullopt when absent.
std::optional<std::vector<uint32_t>> conway_polynomial(uint64_t p, uint32_t k);

// Merges extra entries (e.g. loaded from a file) into the global table.
void register_conway_entries(const ConwayTable& extra);

}  // namespace recur2code
