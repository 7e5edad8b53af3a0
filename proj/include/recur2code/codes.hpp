#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "recur2code/gf.hpp"
#include "recur2code/poly.hpp"
#include "recur2code/recurrence.hpp"

namespace recur2code {

// Weight -> count over the q^2 - 1 nonzero codewords; entries sorted by
// weight, frequencies positive.
struct WeightDistribution {
    std::vector<std::pair<uint64_t, uint64_t>> entries;

    uint64_t min_weight() const;
    uint64_t total() const;
    friend bool operator==(const WeightDistribution&, const WeightDistribution&) = default;
};

// The length-N cyclic code spanned by the two impulse-response sequences of
// the recurrence (initial states (1,0) and (0,1)). Rows are raw discrete
// logs so the enumeration kernels can run on them directly.
struct TwoDimCyclicCode {
    FieldPtr field;
    RecurrenceParams params;
    uint64_t length = 0;
    std::array<std::vector<int32_t>, 2> rows;
};

// Builds the code and asserts cyclicity and the no-zero-column property.
TwoDimCyclicCode build_code(const FieldPtr& field, const RecurrenceParams& params);

// Generator matrix together with the case-specific predicted column form,
// verified to be a fixed invertible change of basis away from the impulse
// rows.
struct GeneratorMatrix {
    std::array<std::vector<FieldElement>, 2> rows;
    std::array<std::vector<FieldElement>, 2> predicted;
    std::array<std::array<FieldElement, 2>, 2> transform;  // predicted = transform * rows
    std::string column_form;
};
GeneratorMatrix generator_matrix(const TwoDimCyclicCode& code);

// Closed-form weight distribution: weights {N-K, N} with frequencies
// {(q-1)e, (q-1)(q+1-e)}; the second entry vanishes exactly in the
// one-weight case e = q+1.
WeightDistribution weights_theoretical(const Field& field, const RecurrenceParams& params);

struct EnumerationOptions {
    uint64_t budget = 1'000'000'000;  // cap on q^2 * N symbol operations
    int workers = 0;                  // 0 = all available
};

// Reference implementation: single-threaded enumeration of all q^2 - 1
// nonzero initial states.
WeightDistribution weights_bruteforce_serial(const TwoDimCyclicCode& code,
                                             uint64_t budget = EnumerationOptions{}.budget);
// Same result, OpenMP-parallel over initial states.
WeightDistribution weights_bruteforce(const TwoDimCyclicCode& code,
                                      const EnumerationOptions& opts = {});

uint64_t min_distance(const TwoDimCyclicCode& code, const EnumerationOptions& opts = {});
// 3 when no two generator columns are proportional, else 2.
uint64_t dual_distance(const TwoDimCyclicCode& code);
bool is_mds(const TwoDimCyclicCode& code, const EnumerationOptions& opts = {});
bool is_projective(const TwoDimCyclicCode& code);

// Placement of an irreducible code against the subfield/semiprimitive
// two-weight classification, via q^2 - 1 = N*u.
struct SwcClassification {
    uint64_t u = 0;
    bool subfield = false;
    bool semiprimitive = false;
    bool trivial_u = false;  // u = 1 makes the semiprimitive test vacuous
    friend bool operator==(const SwcClassification&, const SwcClassification&) = default;
};
SwcClassification swc_classification(const Field& field, const RecurrenceParams& params);

// h = monic reciprocal of x^2 - a*x - b, g = (x^N - 1)/h; g*h = x^N - 1 is
// verified.
struct CheckPolynomials {
    Poly h, g;
};
CheckPolynomials check_polynomials(const FieldPtr& field, const RecurrenceParams& params,
                                   uint64_t period_n);

struct AnalyzeOptions {
    uint64_t budget = 1'000'000'000;
    int workers = 0;
    uint64_t check_poly_max_n = 2500;  // verify g*h = x^N - 1 up to this length
};

// Full analysis record for one (a, b, q).
struct CodeReport {
    uint64_t q = 0;
    int32_t a_log = kZeroLog;
    int32_t b_log = 0;
    FactorKind kind{};
    uint64_t N = 0, e = 0, K = 0;
    WeightDistribution weights;
    uint64_t d = 0, d_dual = 0;
    bool mds = false, projective = false, one_weight = false;
    std::optional<SwcClassification> swc;  // irreducible case only
    std::vector<std::string> flags;

    friend bool operator==(const CodeReport&, const CodeReport&) = default;
};

// Flags used in CodeReport::flags.
inline constexpr const char* kFlagTrivialU = "trivial-u";
inline constexpr const char* kFlagSquareMds = "square-mds";
inline constexpr const char* kFlagBruteforceSkipped = "bruteforce-skipped";

// Composes classification, period/rank, weight formulas, brute-force
// enumeration (within budget), distances and predicates, asserting every
// cross-check on the way.
CodeReport analyze(const FieldPtr& field, const RecurrenceParams& params,
                   const AnalyzeOptions& opts = {});

// One JSON object with fixed key order (q, a, b, case, N, e, K, weights, d,
// d_dual, mds, projective, one_weight, u, subfield, semiprimitive, flags);
// elements rendered as "r^n".
std::string to_json_line(const CodeReport& report);
CodeReport report_from_json_line(const std::string& line);

std::string element_str(int32_t log);              // "0" or "r^<log>"
int32_t element_log_from_str(const std::string& text, uint64_t q);

}  // namespace recur2code
