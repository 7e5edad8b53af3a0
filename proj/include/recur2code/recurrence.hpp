#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "recur2code/gf.hpp"

namespace recur2code {

// Parameters of g_{n+2} = a*g_{n+1} + b*g_n over F_q. b must be nonzero.
struct RecurrenceParams {
    RecurrenceParams(const Field& field, FieldElement a_in, FieldElement b_in);
    FieldElement a, b;
};

enum class FactorKind { irreducible, distinct_roots, repeated_root };
std::string_view to_string(FactorKind kind);

// Factorization of x^2 - a*x - b. Roots live in the base field for the
// reducible kinds; for the irreducible kind they live in the quadratic
// extension with beta = alpha^q. alpha is always the root with the smaller
// discrete log.
struct CharFactorization {
    FactorKind kind;
    FieldElement alpha;
    FieldElement beta;
    const QuadraticExtension* extension = nullptr;  // set iff irreducible
};

// (N, e, K): period, rank, and K = N/e.
struct SequenceProfile {
    uint64_t N = 0, e = 0, K = 0;
};

// lambda, mu of the closed form; elements of F_{q^2} in the irreducible case
// (with mu = lambda^q), of F_q otherwise.
struct SolutionCoeffs {
    FieldElement lambda, mu;
};

// Roots are found by exhaustive search over F_q and, if none exist there,
// over F_{q^2}; no discriminant is used, so characteristic 2 needs no
// special casing.
CharFactorization classify(const Field& field, const RecurrenceParams& params);

uint64_t period(const Field& field, const RecurrenceParams& params);
uint64_t rank(const Field& field, const RecurrenceParams& params);
SequenceProfile profile(const Field& field, const RecurrenceParams& params);

// Variants reusing an already-computed factorization.
uint64_t period_from(const Field& field, const CharFactorization& fact);
uint64_t rank_from(const Field& field, const CharFactorization& fact);
SequenceProfile profile_from(const Field& field, const CharFactorization& fact);

std::optional<FactorKind> kind_from_string(std::string_view text);

// Order of the companion matrix [[0,1],[b,a]] by repeated multiplication;
// an independent route to the period.
uint64_t companion_order(const Field& field, const RecurrenceParams& params);

SolutionCoeffs solve_coefficients(const Field& field, const CharFactorization& fact,
                                  FieldElement g0, FieldElement g1);

// Term g_n evaluated from the closed form: lambda*alpha^n + mu*beta^n, or
// alpha^n*(lambda + mu*n) in the repeated case.
FieldElement closed_form_term(const Field& field, const CharFactorization& fact,
                              const SolutionCoeffs& coeffs, uint64_t n);

std::vector<FieldElement> generate_sequence(const Field& field, const RecurrenceParams& params,
                                            FieldElement g0, FieldElement g1, uint64_t length);

// All n in [0, N) with g_n = 0; empty or a single residue class mod e.
std::vector<uint64_t> zero_positions(const Field& field, const RecurrenceParams& params,
                                     FieldElement g0, FieldElement g1);

}  // namespace recur2code
