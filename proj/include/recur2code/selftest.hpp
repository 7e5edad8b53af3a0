#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "recur2code/codes.hpp"

namespace recur2code {

struct SelftestOptions {
    int workers = 0;
    uint64_t budget = 1'000'000'000;
};

struct SuiteResult {
    std::string name;
    uint64_t checked = 0;
    uint64_t failures = 0;
    std::vector<std::string> messages;  // first few failure details
};

inline constexpr size_t kNumSuites = 9;

// Exhaustive verification over every prime power q <= max_q:
//   field-axioms              commutativity/associativity/distributivity,
//                             element orders, Zech-table consistency, and the
//                             embedding homomorphism (triple/pair loops are
//                             capped at q <= 27)
//   classify-reconstruction   expanding the factorization returns (a, b)
//   period-vs-companion       period == order of the companion matrix
//   period-divisibility       case-wise bounds on N
//   weights-vs-enumeration    closed-form distribution == brute force, at
//                             most two weights, both power-moment identities
//   one-weight-dichotomy      irreducible: e <= q+1, one-weight iff e = q+1
//   mds-projective-duality    d_dual in {2,3}; MDS <=> projective <=> K = 1
//   check-polynomial          g*h = x^N - 1 (pairs with N <= 2500)
//   zero-positions            per-state zero counts/spacing and closed-form
//                             agreement (q <= 27)
std::array<SuiteResult, kNumSuites> run_selftest(uint64_t max_q, const SelftestOptions& opts = {});

bool all_passed(const std::array<SuiteResult, kNumSuites>& suites);

std::vector<uint64_t> prime_powers_up_to(uint64_t max_q);

}  // namespace recur2code
