#include "recur2code/selftest.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <algorithm>

#include "recur2code/catalog.hpp"

namespace recur2code {

namespace {

enum Suite : size_t {
    kAxioms,
    kReconstruction,
    kPeriodOracle,
    kDivisibility,
    kWeights,
    kDichotomy,
    kDuality,
    kCheckPoly,
    kZeroPositions,
};

constexpr const char* kSuiteNames[kNumSuites] = {
    "field-axioms",          "classify-reconstruction", "period-vs-companion",
    "period-divisibility",   "weights-vs-enumeration",  "one-weight-dichotomy",
    "mds-projective-duality", "check-polynomial",       "zero-positions",
};

constexpr size_t kMaxMessages = 8;
constexpr uint64_t kExhaustiveCap = 27;  // pair/triple loops stay at this size

void fail(SuiteResult& suite, const std::string& message) {
    ++suite.failures;
    if (suite.messages.size() < kMaxMessages) suite.messages.push_back(message);
}

void merge(std::array<SuiteResult, kNumSuites>& into, const std::array<SuiteResult, kNumSuites>& from) {
    for (size_t i = 0; i < kNumSuites; ++i) {
        into[i].checked += from[i].checked;
        into[i].failures += from[i].failures;
        for (const auto& m : from[i].messages)
            if (into[i].messages.size() < kMaxMessages) into[i].messages.push_back(m);
    }
}

std::string pair_tag(const Field& field, FieldElement a, FieldElement b) {
    return "q=" + std::to_string(field.q()) + " a=" + field.str(a) + " b=" + field.str(b);
}

void check_field_axioms(const FieldPtr& field, SuiteResult& suite) {
    const Field& F = *field;
    const uint64_t q = F.q();

    for (uint64_t i = 0; i < q - 1; ++i) {
        const FieldElement x = F.from_log(static_cast<int64_t>(i));
        ++suite.checked;
        if (F.pow(x, static_cast<int64_t>(q) - 1) != F.one())
            fail(suite, "x^(q-1) != 1 at q=" + std::to_string(q) + " x=" + F.str(x));
        else if ((q - 1) % F.mult_order(x) != 0)
            fail(suite, "ord(x) does not divide q-1 at q=" + std::to_string(q));
    }

    // Zech consistency through the coefficient representation.
    for (uint64_t n = 0; n < q - 1; ++n) {
        ++suite.checked;
        auto c = F.coeffs(F.from_log(static_cast<int64_t>(n)));
        c[0] = static_cast<uint32_t>((c[0] + 1) % F.p());
        if (F.from_coeffs(c) != F.add(F.from_log(static_cast<int64_t>(n)), F.one()))
            fail(suite, "Zech entry mismatch at q=" + std::to_string(q) + " n=" + std::to_string(n));
    }

    if (q > kExhaustiveCap) return;

    std::vector<FieldElement> elems;
    elems.push_back(F.zero());
    for (uint64_t i = 0; i < q - 1; ++i) elems.push_back(F.from_log(static_cast<int64_t>(i)));
    for (const auto x : elems) {
        for (const auto y : elems) {
            ++suite.checked;
            if (F.add(x, y) != F.add(y, x) || F.mul(x, y) != F.mul(y, x))
                fail(suite, "commutativity broken at q=" + std::to_string(q));
            for (const auto z : elems) {
                ++suite.checked;
                if (F.add(F.add(x, y), z) != F.add(x, F.add(y, z)) ||
                    F.mul(F.mul(x, y), z) != F.mul(x, F.mul(y, z)) ||
                    F.mul(x, F.add(y, z)) != F.add(F.mul(x, y), F.mul(x, z)))
                    fail(suite, "ring axiom broken at q=" + std::to_string(q));
            }
        }
    }

    const QuadraticExtension& ext = F.quadratic_extension();
    const Field& E = *ext.ext();
    for (const auto x : elems) {
        for (const auto y : elems) {
            ++suite.checked;
            if (ext.embed(F.add(x, y)) != E.add(ext.embed(x), ext.embed(y)) ||
                ext.embed(F.mul(x, y)) != E.mul(ext.embed(x), ext.embed(y)))
                fail(suite, "embedding is not a homomorphism at q=" + std::to_string(q));
        }
    }
    // embed(r) is a root of the base modulus lifted to the extension
    {
        ++suite.checked;
        FieldElement acc = E.zero();
        const FieldElement image = ext.embed(F.generator());
        for (size_t i = F.modulus().size(); i-- > 0;)
            acc = E.add(E.mul(acc, image), E.from_prime(F.modulus()[i]));
        if (!acc.is_zero()) fail(suite, "embedded generator is not a modulus root at q=" + std::to_string(q));
    }
    for (uint64_t i = 0; i < q * q; ++i) {
        const FieldElement z = i == 0 ? E.zero() : E.from_log(static_cast<int64_t>(i - 1));
        ++suite.checked;
        const FieldElement t = E.add(z, ext.frobenius(z));
        if (!ext.in_base(t)) {
            fail(suite, "trace left the base field at q=" + std::to_string(q));
            continue;
        }
        if (ext.embed(ext.relative_trace(z)) != t)
            fail(suite, "trace projection mismatch at q=" + std::to_string(q));
    }
}

void check_pair(const FieldPtr& field, FieldElement a, FieldElement b,
                std::array<SuiteResult, kNumSuites>& s, const SelftestOptions& opts) {
    const Field& F = *field;
    const uint64_t q = F.q();
    const std::string tag = pair_tag(F, a, b);
    const RecurrenceParams params(F, a, b);

    CharFactorization fact;
    SequenceProfile prof;
    try {
        fact = classify(F, params);
        prof = profile_from(F, fact);
    } catch (const std::exception& e) {
        ++s[kReconstruction].checked;
        fail(s[kReconstruction], tag + ": " + e.what());
        return;
    }

    {
        ++s[kReconstruction].checked;
        bool ok = true;
        if (fact.kind == FactorKind::irreducible) {
            const QuadraticExtension& ext = *fact.extension;
            const Field& E = *ext.ext();
            ok = E.add(fact.alpha, fact.beta) == ext.embed(a) &&
                 E.mul(fact.alpha, fact.beta) == E.neg(ext.embed(b)) &&
                 !ext.in_base(fact.alpha) && fact.alpha.log < fact.beta.log;
        } else {
            ok = F.add(fact.alpha, fact.beta) == a && F.mul(fact.alpha, fact.beta) == F.neg(b);
            if (fact.kind == FactorKind::distinct_roots)
                ok = ok && fact.alpha != fact.beta && fact.alpha.log < fact.beta.log;
            else
                ok = ok && fact.alpha == fact.beta && !fact.alpha.is_zero();
        }
        if (!ok) fail(s[kReconstruction], tag + ": factorization does not reproduce (a, b)");
    }

    {
        ++s[kPeriodOracle].checked;
        const uint64_t order = companion_order(F, params);
        if (order != prof.N)
            fail(s[kPeriodOracle], tag + ": companion order " + std::to_string(order) + " != N " +
                                       std::to_string(prof.N));
    }

    {
        ++s[kDivisibility].checked;
        bool ok = prof.N % prof.e == 0;
        switch (fact.kind) {
            case FactorKind::irreducible:
                ok = ok && (q + 1) * F.mult_order(F.neg(b)) % prof.N == 0;
                break;
            case FactorKind::distinct_roots:
                ok = ok && (q - 1) % prof.N == 0;
                break;
            case FactorKind::repeated_root:
                ok = ok && prof.N == F.p() * F.mult_order(fact.alpha);
                break;
        }
        if (!ok) fail(s[kDivisibility], tag + ": period bound violated");
    }

    WeightDistribution enumerated;
    bool have_enumeration = false;
    try {
        const auto code = build_code(field, params);
        enumerated = weights_bruteforce(code, {opts.budget, 1});
        have_enumeration = true;

        {
            ++s[kWeights].checked;
            const auto theory = weights_theoretical(F, params);
            bool ok = enumerated == theory && enumerated.entries.size() <= 2;
            unsigned __int128 sum = 0, moment = 0;
            for (const auto& [w, f] : enumerated.entries) {
                sum += f;
                moment += static_cast<unsigned __int128>(w) * f;
            }
            ok = ok && sum == static_cast<unsigned __int128>(q) * q - 1 &&
                 moment == static_cast<unsigned __int128>(q) * (q - 1) * prof.N;
            if (!ok) fail(s[kWeights], tag + ": enumeration disagrees with the closed form");
        }

        if (fact.kind == FactorKind::irreducible) {
            ++s[kDichotomy].checked;
            const bool one_weight = enumerated.entries.size() == 1;
            if (prof.e > q + 1 || one_weight != (prof.e == q + 1))
                fail(s[kDichotomy], tag + ": one-weight dichotomy violated (e=" + std::to_string(prof.e) + ")");
        }

        {
            ++s[kDuality].checked;
            const uint64_t d = enumerated.min_weight();
            const uint64_t dd = dual_distance(code);
            const bool mds = d == prof.N - 1;
            bool ok = (dd == 2 || dd == 3) && mds == (dd == 3) && mds == (prof.K == 1);
            if (!ok) fail(s[kDuality], tag + ": MDS/projectivity duality violated");
        }
    } catch (const std::exception& e) {
        ++s[kWeights].checked;
        fail(s[kWeights], tag + ": " + e.what());
    }

    if (prof.N <= 2500) {
        ++s[kCheckPoly].checked;
        try {
            check_polynomials(field, params, prof.N);
        } catch (const std::exception& e) {
            fail(s[kCheckPoly], tag + ": " + e.what());
        }
    }

    if (q <= kExhaustiveCap && have_enumeration) {
        // Every nonzero initial state: zero count in {0, K}, zeros in one
        // residue class mod e, and the iterated sequence matches the closed
        // form at every index.
        const int32_t la = a.log, lb = b.log;
        for (uint64_t i = 0; i < q; ++i) {
            for (uint64_t j = 0; j < q; ++j) {
                if (i == 0 && j == 0) continue;
                ++s[kZeroPositions].checked;
                const FieldElement g0 = i == 0 ? F.zero() : F.from_log(static_cast<int64_t>(i - 1));
                const FieldElement g1 = j == 0 ? F.zero() : F.from_log(static_cast<int64_t>(j - 1));
                try {
                    const auto coeffs = solve_coefficients(F, fact, g0, g1);
                    uint64_t zeros = 0, first_zero = prof.N;
                    bool spacing_ok = true, closed_ok = true;

                    int32_t x = g0.log, y = g1.log;
                    if (fact.kind == FactorKind::irreducible) {
                        const QuadraticExtension& ext = *fact.extension;
                        const Field& E = *ext.ext();
                        FieldElement ta = coeffs.lambda, tb = coeffs.mu;
                        for (uint64_t n = 0; n < prof.N; ++n) {
                            if (x == kZeroLog) {
                                if (zeros == 0) first_zero = n;
                                else if ((n - first_zero) % prof.e != 0) spacing_ok = false;
                                ++zeros;
                            }
                            if (E.add(ta, tb) != ext.embed(FieldElement{x, F.id()})) closed_ok = false;
                            ta = E.mul(ta, fact.alpha);
                            tb = E.mul(tb, fact.beta);
                            const int32_t next = F.add_log(F.mul_log(la, y), F.mul_log(lb, x));
                            x = y;
                            y = next;
                        }
                    } else if (fact.kind == FactorKind::distinct_roots) {
                        FieldElement ta = coeffs.lambda, tb = coeffs.mu;
                        for (uint64_t n = 0; n < prof.N; ++n) {
                            if (x == kZeroLog) {
                                if (zeros == 0) first_zero = n;
                                else if ((n - first_zero) % prof.e != 0) spacing_ok = false;
                                ++zeros;
                            }
                            if (F.add(ta, tb).log != x) closed_ok = false;
                            ta = F.mul(ta, fact.alpha);
                            tb = F.mul(tb, fact.beta);
                            const int32_t next = F.add_log(F.mul_log(la, y), F.mul_log(lb, x));
                            x = y;
                            y = next;
                        }
                    } else {
                        FieldElement power = F.one();
                        for (uint64_t n = 0; n < prof.N; ++n) {
                            if (x == kZeroLog) {
                                if (zeros == 0) first_zero = n;
                                else if ((n - first_zero) % prof.e != 0) spacing_ok = false;
                                ++zeros;
                            }
                            const FieldElement lin =
                                F.add(coeffs.lambda, F.mul(coeffs.mu, F.from_prime(n % F.p())));
                            if (F.mul(power, lin).log != x) closed_ok = false;
                            power = F.mul(power, fact.alpha);
                            const int32_t next = F.add_log(F.mul_log(la, y), F.mul_log(lb, x));
                            x = y;
                            y = next;
                        }
                    }

                    if (zeros != 0 && zeros != prof.K)
                        fail(s[kZeroPositions], tag + ": zero count " + std::to_string(zeros) +
                                                    " outside {0, K}");
                    else if (!spacing_ok)
                        fail(s[kZeroPositions], tag + ": zeros not in one residue class mod e");
                    else if (!closed_ok)
                        fail(s[kZeroPositions], tag + ": sequence disagrees with the closed form");
                } catch (const std::exception& e) {
                    fail(s[kZeroPositions], tag + ": " + e.what());
                }
            }
        }
    }
}

}  // namespace

std::vector<uint64_t> prime_powers_up_to(uint64_t max_q) {
    std::vector<uint64_t> out;
    for (uint64_t q = 2; q <= max_q; ++q) {
        try {
            factor_prime_power(q);
            out.push_back(q);
        } catch (const input_error&) {
        }
    }
    return out;
}

std::array<SuiteResult, kNumSuites> run_selftest(uint64_t max_q, const SelftestOptions& opts) {
    if (max_q < 2) throw input_error("max-q must be at least 2");
    if (max_q > max_q_bound()) throw input_error("max-q exceeds the field size cap");

    std::array<SuiteResult, kNumSuites> suites;
    for (size_t i = 0; i < kNumSuites; ++i) suites[i].name = kSuiteNames[i];

    for (const uint64_t q : prime_powers_up_to(max_q)) {
        const FieldPtr field = Field::build_from_q(q);
        check_field_axioms(field, suites[kAxioms]);

        const int64_t total = static_cast<int64_t>(q) * (static_cast<int64_t>(q) - 1);
#ifdef _OPENMP
        const int threads = opts.workers > 0 ? opts.workers : omp_get_max_threads();
#pragma omp parallel num_threads(threads)
        {
            std::array<SuiteResult, kNumSuites> local;
#pragma omp for schedule(dynamic) nowait
            for (int64_t idx = 0; idx < total; ++idx) {
                const uint64_t ai = static_cast<uint64_t>(idx) / (q - 1);
                const uint64_t bi = static_cast<uint64_t>(idx) % (q - 1);
                const FieldElement a =
                    ai == 0 ? field->zero() : field->from_log(static_cast<int64_t>(ai - 1));
                const FieldElement b = field->from_log(static_cast<int64_t>(bi));
                check_pair(field, a, b, local, opts);
            }
#pragma omp critical
            merge(suites, local);
        }
#else
        for (int64_t idx = 0; idx < total; ++idx) {
            const uint64_t ai = static_cast<uint64_t>(idx) / (q - 1);
            const uint64_t bi = static_cast<uint64_t>(idx) % (q - 1);
            const FieldElement a = ai == 0 ? field->zero() : field->from_log(static_cast<int64_t>(ai - 1));
            const FieldElement b = field->from_log(static_cast<int64_t>(bi));
            check_pair(field, a, b, suites, opts);
        }
#endif
    }
    return suites;
}

bool all_passed(const std::array<SuiteResult, kNumSuites>& suites) {
    return std::all_of(suites.begin(), suites.end(),
                       [](const SuiteResult& s) { return s.failures == 0; });
}

}  // namespace recur2code
