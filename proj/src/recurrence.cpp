#include "recur2code/recurrence.hpp"

#include <numeric>

namespace recur2code {

RecurrenceParams::RecurrenceParams(const Field& field, FieldElement a_in, FieldElement b_in)
    : a(a_in), b(b_in) {
    if (a.field_id != field.id() || b.field_id != field.id())
        throw input_error("recurrence parameters must come from the given field");
    if (b.is_zero()) throw input_error("b must be nonzero");
}

std::string_view to_string(FactorKind kind) {
    switch (kind) {
        case FactorKind::irreducible: return "irreducible";
        case FactorKind::distinct_roots: return "distinct";
        case FactorKind::repeated_root: return "repeated";
    }
    return "?";
}

CharFactorization classify(const Field& field, const RecurrenceParams& params) {
    const int32_t a = params.a.log, b = params.b.log;
    const uint64_t q = field.q();

    // Roots are nonzero (their product is -b != 0), so searching by ascending
    // exponent covers all candidates and yields the smaller-log root first.
    for (uint64_t n = 0; n < q - 1; ++n) {
        const int32_t t = static_cast<int32_t>(n);
        const int32_t t2 = field.mul_log(t, t);
        const int32_t val =
            field.add_log(field.add_log(t2, field.neg_log(field.mul_log(a, t))), field.neg_log(b));
        if (val == kZeroLog) {
            const FieldElement alpha{t, field.id()};
            const FieldElement beta = field.sub(params.a, alpha);
            if (beta == alpha) return {FactorKind::repeated_root, alpha, alpha, nullptr};
            if (field.mul(alpha, beta) != field.neg(params.b))
                throw invariant_error("classify: root pair does not reproduce b");
            return {FactorKind::distinct_roots, alpha, beta, nullptr};
        }
    }

    const QuadraticExtension& ext = field.quadratic_extension();
    const FieldElement a_ext = ext.embed(params.a), b_ext = ext.embed(params.b);
    const Field& E = *ext.ext();
    for (uint64_t n = 0; n < E.q() - 1; ++n) {
        const FieldElement z = E.from_log(static_cast<int64_t>(n));
        const FieldElement val = E.sub(E.sub(E.mul(z, z), E.mul(a_ext, z)), b_ext);
        if (val.is_zero()) {
            const FieldElement beta = ext.frobenius(z);
            if (E.add(z, beta) != a_ext || E.mul(z, beta) != E.neg(b_ext))
                throw invariant_error("classify: extension roots do not reproduce (a, b)");
            return {FactorKind::irreducible, z, beta, &ext};
        }
    }
    throw invariant_error("classify: no roots found in the quadratic extension");
}

uint64_t period_from(const Field& field, const CharFactorization& fact) {
    switch (fact.kind) {
        case FactorKind::irreducible:
            return fact.extension->ext()->mult_order(fact.alpha);
        case FactorKind::distinct_roots:
            return std::lcm(field.mult_order(fact.alpha), field.mult_order(fact.beta));
        case FactorKind::repeated_root:
            return field.p() * field.mult_order(fact.alpha);
    }
    throw invariant_error("period: unreachable");
}

uint64_t rank_from(const Field& field, const CharFactorization& fact) {
    switch (fact.kind) {
        case FactorKind::irreducible: {
            const Field& E = *fact.extension->ext();
            return E.mult_order(E.div(fact.beta, fact.alpha));
        }
        case FactorKind::distinct_roots:
            return field.mult_order(field.div(fact.beta, fact.alpha));
        case FactorKind::repeated_root:
            return field.p();  // zeros recur with the characteristic's period
    }
    throw invariant_error("rank: unreachable");
}

SequenceProfile profile_from(const Field& field, const CharFactorization& fact) {
    const uint64_t N = period_from(field, fact);
    const uint64_t e = rank_from(field, fact);
    if (N % e != 0) throw invariant_error("profile: rank does not divide the period");
    return {N, e, N / e};
}

uint64_t period(const Field& field, const RecurrenceParams& params) {
    return period_from(field, classify(field, params));
}

uint64_t rank(const Field& field, const RecurrenceParams& params) {
    return rank_from(field, classify(field, params));
}

SequenceProfile profile(const Field& field, const RecurrenceParams& params) {
    return profile_from(field, classify(field, params));
}

std::optional<FactorKind> kind_from_string(std::string_view text) {
    if (text == "irreducible") return FactorKind::irreducible;
    if (text == "distinct") return FactorKind::distinct_roots;
    if (text == "repeated") return FactorKind::repeated_root;
    return std::nullopt;
}

uint64_t companion_order(const Field& field, const RecurrenceParams& params) {
    const int32_t a = params.a.log, b = params.b.log;
    const int32_t one = 0, zero = kZeroLog;
    // m = [[m00, m01], [m10, m11]], starting at the companion matrix.
    int32_t m00 = zero, m01 = one, m10 = b, m11 = a;
    const uint64_t cap = field.q() * field.q();
    for (uint64_t t = 1; t <= cap; ++t) {
        if (m00 == one && m11 == one && m01 == zero && m10 == zero) return t;
        const int32_t n00 = field.mul_log(m01, b);
        const int32_t n01 = field.add_log(m00, field.mul_log(m01, a));
        const int32_t n10 = field.mul_log(m11, b);
        const int32_t n11 = field.add_log(m10, field.mul_log(m11, a));
        m00 = n00;
        m01 = n01;
        m10 = n10;
        m11 = n11;
    }
    throw invariant_error("companion matrix order exceeds q^2");
}

SolutionCoeffs solve_coefficients(const Field& field, const CharFactorization& fact,
                                  FieldElement g0, FieldElement g1) {
    if (g0.is_zero() && g1.is_zero()) throw input_error("initial state (0,0) is the zero codeword");

    SolutionCoeffs out;
    switch (fact.kind) {
        case FactorKind::repeated_root: {
            // g_n = alpha^n (lambda + mu n)
            out.lambda = g0;
            out.mu = field.sub(field.div(g1, fact.alpha), g0);
            break;
        }
        case FactorKind::distinct_roots: {
            const FieldElement denom = field.sub(fact.alpha, fact.beta);
            out.lambda = field.div(field.sub(g1, field.mul(fact.beta, g0)), denom);
            out.mu = field.div(field.sub(field.mul(fact.alpha, g0), g1), denom);
            break;
        }
        case FactorKind::irreducible: {
            const QuadraticExtension& ext = *fact.extension;
            const Field& E = *ext.ext();
            const FieldElement G0 = ext.embed(g0), G1 = ext.embed(g1);
            const FieldElement denom = E.sub(fact.alpha, fact.beta);
            out.lambda = E.div(E.sub(G1, E.mul(fact.beta, G0)), denom);
            out.mu = E.div(E.sub(E.mul(fact.alpha, G0), G1), denom);
            if (out.mu != ext.frobenius(out.lambda))
                throw invariant_error("solve_coefficients: mu != lambda^q in the irreducible case");
            break;
        }
    }
    if (closed_form_term(field, fact, out, 0) != g0 || closed_form_term(field, fact, out, 1) != g1)
        throw invariant_error("solve_coefficients: closed form does not reproduce the initial state");
    return out;
}

FieldElement closed_form_term(const Field& field, const CharFactorization& fact,
                              const SolutionCoeffs& coeffs, uint64_t n) {
    switch (fact.kind) {
        case FactorKind::repeated_root: {
            const FieldElement lin =
                field.add(coeffs.lambda, field.mul(coeffs.mu, field.from_prime(n % field.p())));
            return field.mul(field.pow(fact.alpha, static_cast<int64_t>(n)), lin);
        }
        case FactorKind::distinct_roots: {
            const FieldElement ta = field.mul(coeffs.lambda, field.pow(fact.alpha, static_cast<int64_t>(n)));
            const FieldElement tb = field.mul(coeffs.mu, field.pow(fact.beta, static_cast<int64_t>(n)));
            return field.add(ta, tb);
        }
        case FactorKind::irreducible: {
            const QuadraticExtension& ext = *fact.extension;
            const Field& E = *ext.ext();
            const FieldElement ta = E.mul(coeffs.lambda, E.pow(fact.alpha, static_cast<int64_t>(n)));
            const FieldElement tb = E.mul(coeffs.mu, E.pow(fact.beta, static_cast<int64_t>(n)));
            return ext.project(E.add(ta, tb));
        }
    }
    throw invariant_error("closed_form_term: unreachable");
}

std::vector<FieldElement> generate_sequence(const Field& field, const RecurrenceParams& params,
                                            FieldElement g0, FieldElement g1, uint64_t length) {
    if (g0.field_id != field.id() || g1.field_id != field.id())
        throw input_error("initial state must come from the given field");
    std::vector<FieldElement> out;
    out.reserve(length);
    int32_t x = g0.log, y = g1.log;
    const int32_t a = params.a.log, b = params.b.log;
    for (uint64_t n = 0; n < length; ++n) {
        out.push_back({x, field.id()});
        const int32_t next = field.add_log(field.mul_log(a, y), field.mul_log(b, x));
        x = y;
        y = next;
    }
    return out;
}

std::vector<uint64_t> zero_positions(const Field& field, const RecurrenceParams& params,
                                     FieldElement g0, FieldElement g1) {
    if (g0.is_zero() && g1.is_zero()) throw input_error("initial state (0,0) is the zero codeword");
    const uint64_t N = period(field, params);
    std::vector<uint64_t> out;
    int32_t x = g0.log, y = g1.log;
    const int32_t a = params.a.log, b = params.b.log;
    for (uint64_t n = 0; n < N; ++n) {
        if (x == kZeroLog) out.push_back(n);
        const int32_t next = field.add_log(field.mul_log(a, y), field.mul_log(b, x));
        x = y;
        y = next;
    }
    return out;
}

}  // namespace recur2code
