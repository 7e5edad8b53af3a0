#include <set>

#include "doctest.h"
#include "recur2code/recurrence.hpp"

using namespace recur2code;

namespace {

std::vector<uint32_t> values(const Field& f, const std::vector<FieldElement>& seq) {
    // renders a sequence over a prime field as integers
    std::vector<uint32_t> out;
    for (const auto x : seq) out.push_back(f.coeffs(x)[0]);
    return out;
}

}  // namespace

TEST_CASE("classify covers all three factorizations over F_9") {
    auto F = Field::build(3, 2);

    const RecurrenceParams irr(*F, F->from_log(2), F->from_log(3));
    const auto fi = classify(*F, irr);
    CHECK(fi.kind == FactorKind::irreducible);
    REQUIRE(fi.extension != nullptr);
    CHECK(fi.beta == fi.extension->frobenius(fi.alpha));
    CHECK(!fi.extension->in_base(fi.alpha));

    const RecurrenceParams dis(*F, F->from_log(4), F->from_log(8));
    const auto fd = classify(*F, dis);
    CHECK(fd.kind == FactorKind::distinct_roots);
    CHECK(fd.alpha == F->from_log(5));  // 2x
    CHECK(fd.beta == F->from_log(7));   // x + 2
    CHECK(F->add(fd.alpha, fd.beta) == F->from_log(4));
    CHECK(F->mul(fd.alpha, fd.beta) == F->neg(F->from_log(8)));

    const RecurrenceParams rep(*F, F->from_log(8), F->from_log(4));
    const auto fr = classify(*F, rep);
    CHECK(fr.kind == FactorKind::repeated_root);
    CHECK(fr.alpha == F->from_prime(2));  // x^2 - x + 1 = (x - 2)^2 over F_3

    CHECK_THROWS_AS(RecurrenceParams(*F, F->one(), F->zero()), input_error);
}

TEST_CASE("period, rank and profile reproduce the reference rows over F_9") {
    auto F = Field::build(3, 2);

    const RecurrenceParams irr(*F, F->from_log(2), F->from_log(3));
    CHECK(period(*F, irr) == 80);
    CHECK(rank(*F, irr) == 10);
    const auto pi = profile(*F, irr);
    CHECK(pi.N == 80);
    CHECK(pi.e == 10);
    CHECK(pi.K == 8);

    const RecurrenceParams dis(*F, F->from_log(4), F->from_log(8));
    const auto pd = profile(*F, dis);
    CHECK(pd.N == 8);
    CHECK(pd.e == 4);
    CHECK(pd.K == 2);

    const RecurrenceParams rep(*F, F->from_log(8), F->from_log(4));
    const auto pr = profile(*F, rep);
    CHECK(pr.N == 6);  // 3 * ord(2)
    CHECK(pr.e == 3);
    CHECK(pr.K == 2);
}

TEST_CASE("companion matrix order equals the period") {
    auto F9 = Field::build(3, 2);
    CHECK(companion_order(*F9, {*F9, F9->from_log(4), F9->from_log(8)}) == 8);
    CHECK(companion_order(*F9, {*F9, F9->from_log(2), F9->from_log(3)}) == 80);
    auto F3 = Field::build(3, 1);
    // (x-1)^2 and (x-2)^2 over F_3: periods p*ord(1) = 3 and p*ord(2) = 6
    CHECK(companion_order(*F3, {*F3, F3->from_prime(2), F3->from_prime(2)}) == 3);
    CHECK(period(*F3, {*F3, F3->from_prime(2), F3->from_prime(2)}) == 3);
    CHECK(companion_order(*F3, {*F3, F3->from_prime(1), F3->from_prime(2)}) == 6);
    CHECK(period(*F3, {*F3, F3->from_prime(1), F3->from_prime(2)}) == 6);
}

TEST_CASE("generated sequences match hand-iterated values over F_3") {
    auto F = Field::build(3, 1);

    // Fibonacci: x^2 - x - 1
    const RecurrenceParams fib(*F, F->one(), F->one());
    const auto seq = generate_sequence(*F, fib, F->zero(), F->one(), 8);
    CHECK(values(*F, seq) == std::vector<uint32_t>{0, 1, 1, 2, 0, 2, 2, 1});
    CHECK(period(*F, fib) == 8);

    // repeated root alpha = 1: g_n = n mod 3
    const RecurrenceParams rep(*F, F->from_prime(2), F->from_prime(2));
    const auto seq2 = generate_sequence(*F, rep, F->zero(), F->one(), 6);
    CHECK(values(*F, seq2) == std::vector<uint32_t>{0, 1, 2, 0, 1, 2});

    // echo of the initial state
    const auto seq3 = generate_sequence(*F, fib, F->one(), F->one(), 2);
    CHECK(values(*F, seq3) == std::vector<uint32_t>{1, 1});
    CHECK(generate_sequence(*F, fib, F->one(), F->one(), 0).empty());
}

TEST_CASE("solve_coefficients on the three kinds") {
    auto F = Field::build(3, 2);

    const RecurrenceParams dis(*F, F->from_log(4), F->from_log(8));
    const auto fd = classify(*F, dis);
    const auto pure = solve_coefficients(*F, fd, F->one(), fd.alpha);
    CHECK(pure.lambda == F->one());
    CHECK(pure.mu.is_zero());
    const auto both = solve_coefficients(*F, fd, F->from_prime(2), F->add(fd.alpha, fd.beta));
    CHECK(both.lambda == F->one());
    CHECK(both.mu == F->one());

    const RecurrenceParams rep(*F, F->from_log(8), F->from_log(4));
    const auto fr = classify(*F, rep);
    const auto ramp = solve_coefficients(*F, fr, F->zero(), fr.alpha);
    CHECK(ramp.lambda.is_zero());
    CHECK(ramp.mu == F->one());

    const RecurrenceParams irr(*F, F->from_log(2), F->from_log(3));
    const auto fi = classify(*F, irr);
    const auto sc = solve_coefficients(*F, fi, F->one(), F->zero());
    CHECK(sc.mu == fi.extension->frobenius(sc.lambda));

    CHECK_THROWS_AS(solve_coefficients(*F, fd, F->zero(), F->zero()), input_error);
}

TEST_CASE("closed form reproduces the iterated sequence for all kinds") {
    auto F = Field::build(3, 2);
    const std::vector<std::pair<int64_t, int64_t>> pairs = {{2, 3}, {4, 8}, {8, 4}};
    for (const auto& [la, lb] : pairs) {
        const RecurrenceParams params(*F, F->from_log(la), F->from_log(lb));
        const auto fact = classify(*F, params);
        const uint64_t n = period(*F, params);
        const auto g0 = F->generator(), g1 = F->from_log(3);
        const auto coeffs = solve_coefficients(*F, fact, g0, g1);
        const auto seq = generate_sequence(*F, params, g0, g1, n);
        for (uint64_t i = 0; i < n; ++i) CHECK(closed_form_term(*F, fact, coeffs, i) == seq[i]);
    }
}

TEST_CASE("zero positions: counts and spacing") {
    auto F3 = Field::build(3, 1);
    // alpha = 2, N = 6: zeros of the ramp solution sit at n = 0 mod 3
    const RecurrenceParams rep(*F3, F3->from_prime(1), F3->from_prime(2));
    CHECK(zero_positions(*F3, rep, F3->zero(), F3->one()) == std::vector<uint64_t>{0, 3});
    // alpha = 1, N = 3: a single zero, N/p = 1
    const RecurrenceParams rep1(*F3, F3->from_prime(2), F3->from_prime(2));
    CHECK(zero_positions(*F3, rep1, F3->zero(), F3->one()) == std::vector<uint64_t>{0});

    auto F9 = Field::build(3, 2);
    const RecurrenceParams dis(*F9, F9->from_log(4), F9->from_log(8));
    const auto fd = classify(*F9, dis);
    CHECK(zero_positions(*F9, dis, F9->one(), fd.alpha).empty());  // geometric sequence

    // sizes over all 80 nonzero states are exactly {0, 2}
    std::set<size_t> sizes;
    for (uint64_t i = 0; i < 9; ++i) {
        for (uint64_t j = 0; j < 9; ++j) {
            if (i == 0 && j == 0) continue;
            const auto g0 = i == 0 ? F9->zero() : F9->from_log(static_cast<int64_t>(i - 1));
            const auto g1 = j == 0 ? F9->zero() : F9->from_log(static_cast<int64_t>(j - 1));
            sizes.insert(zero_positions(*F9, dis, g0, g1).size());
        }
    }
    CHECK(sizes == std::set<size_t>{0, 2});

    CHECK_THROWS_AS(zero_positions(*F9, dis, F9->zero(), F9->zero()), input_error);
}

TEST_CASE("factor kind names round-trip") {
    CHECK(to_string(FactorKind::irreducible) == "irreducible");
    CHECK(kind_from_string("distinct") == FactorKind::distinct_roots);
    CHECK(kind_from_string("repeated") == FactorKind::repeated_root);
    CHECK(!kind_from_string("bogus"));
}
