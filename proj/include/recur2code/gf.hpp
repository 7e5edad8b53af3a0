#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace recur2code {

// Bad user input (parameters, element syntax, size caps). CLI exit code 1.
class input_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// A mathematical cross-check failed; this is a bug, not bad input.
// CLI exit code 2.
class invariant_error : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

// Field size cap (default 2^20), overridable via RECUR2CODE_MAX_Q.
uint64_t max_q_bound();

inline constexpr int32_t kZeroLog = -1;

// Element of a specific Field, stored as the discrete log of the field's
// canonical primitive element r; kZeroLog encodes the zero element.
// field_id ties the element to the Field that minted it.
struct FieldElement {
    int32_t log = kZeroLog;
    uint32_t field_id = 0;

    bool is_zero() const { return log == kZeroLog; }
    friend bool operator==(const FieldElement&, const FieldElement&) = default;
};

class Field;
using FieldPtr = std::shared_ptr<const Field>;

// Canonical embedding of F_q into F_{q^2}. Discrete logs are scaled by a
// fixed factor, so embed/project are O(1).
class QuadraticExtension {
  public:
    QuadraticExtension(FieldPtr base, FieldPtr ext);

    const FieldPtr& base() const { return base_; }
    const FieldPtr& ext() const { return ext_; }

    FieldElement embed(FieldElement x) const;
    bool in_base(FieldElement z) const;
    // Inverse of embed; throws invariant_error if z is outside the embedded
    // base field.
    FieldElement project(FieldElement z) const;
    FieldElement frobenius(FieldElement z) const;  // z^q, within the extension
    // tr(z) = z + z^q, re-expressed in the base field.
    FieldElement relative_trace(FieldElement z) const;

  private:
    FieldPtr base_, ext_;
    int64_t scale_ = 0;    // embed: log n -> n * scale_ mod (q^2 - 1)
    int64_t unscale_ = 0;  // project: inverse of scale_/(q+1) mod (q - 1)
};

// F_{p^k} with Zech-logarithm tables. Immutable once built; safe to share
// across threads.
class Field : public std::enable_shared_from_this<Field> {
  public:
    // Builds F_{p^k}. With no modulus the embedded Conway polynomial is used
    // (error if absent); a user modulus (c0..ck, monic) is checked for
    // irreducibility by exhaustive trial division.
    static FieldPtr build(uint64_t p, uint32_t k,
                          std::optional<std::vector<uint32_t>> modulus = std::nullopt);
    // Convenience: q must be a prime power; same as build(p, k).
    static FieldPtr build_from_q(uint64_t q);

    uint64_t p() const { return p_; }
    uint32_t k() const { return k_; }
    uint64_t q() const { return q_; }
    uint32_t id() const { return id_; }
    const std::vector<uint32_t>& modulus() const { return modulus_; }

    FieldElement zero() const { return {kZeroLog, id_}; }
    FieldElement one() const { return {0, id_}; }
    // The canonical primitive element r: first element in packed coefficient
    // order with multiplicative order q-1. Class of x for Conway moduli, the
    // least primitive root for prime fields.
    FieldElement generator() const;
    FieldElement from_log(int64_t n) const;
    FieldElement from_prime(uint64_t c) const;  // c * 1, 0 <= c < p
    FieldElement from_coeffs(std::span<const uint32_t> c) const;
    std::vector<uint32_t> coeffs(FieldElement x) const;  // c0..c_{k-1}

    // Accepts "0", "r^<n>", or "[c0,...,c_{k-1}]".
    FieldElement parse(std::string_view text) const;
    // Canonical form: "0" or "r^<n>" with n reduced mod q-1.
    std::string str(FieldElement x) const;

    FieldElement add(FieldElement x, FieldElement y) const;
    FieldElement sub(FieldElement x, FieldElement y) const;
    FieldElement neg(FieldElement x) const;
    FieldElement mul(FieldElement x, FieldElement y) const;
    FieldElement div(FieldElement x, FieldElement y) const;
    FieldElement inv(FieldElement x) const;
    FieldElement pow(FieldElement x, int64_t n) const;
    // Least t >= 1 with x^t = 1; computed as (q-1)/gcd(q-1, log x).
    uint64_t mult_order(FieldElement x) const;

    // Log-domain kernel operations: no ownership checks, kZeroLog = 0.
    int32_t add_log(int32_t a, int32_t b) const {
        if (a == kZeroLog) return b;
        if (b == kZeroLog) return a;
        int32_t d = b - a;
        if (d < 0) d += static_cast<int32_t>(q_) - 1;
        const int32_t z = zech_[static_cast<uint32_t>(d)];
        if (z == kZeroLog) return kZeroLog;
        int32_t s = a + z;
        if (s >= static_cast<int32_t>(q_) - 1) s -= static_cast<int32_t>(q_) - 1;
        return s;
    }
    int32_t mul_log(int32_t a, int32_t b) const {
        if (a == kZeroLog || b == kZeroLog) return kZeroLog;
        int32_t s = a + b;
        if (s >= static_cast<int32_t>(q_) - 1) s -= static_cast<int32_t>(q_) - 1;
        return s;
    }
    int32_t neg_log(int32_t a) const {
        if (a == kZeroLog) return a;
        int32_t s = a + neg_shift_;
        if (s >= static_cast<int32_t>(q_) - 1) s -= static_cast<int32_t>(q_) - 1;
        return s;
    }

    // The quadratic extension F_{q^2} with the canonical embedding; built on
    // first use and cached (thread-safe).
    const QuadraticExtension& quadratic_extension() const;

  private:
    Field() = default;
    void check_mine(FieldElement x) const;

    uint64_t p_ = 0, q_ = 0;
    uint32_t k_ = 0, id_ = 0;
    int32_t neg_shift_ = 0;  // log of -1 (0 in characteristic 2)
    int32_t gen_log_ = 0;
    std::vector<uint32_t> modulus_;
    std::vector<int32_t> zech_;    // 1 + r^n = r^zech_[n]; kZeroLog sentinel
    std::vector<int32_t> dlog_;    // packed coefficient value -> log
    std::vector<uint32_t> power_;  // log -> packed coefficient value

    mutable std::once_flag ext_once_;
    mutable std::unique_ptr<QuadraticExtension> ext_;
};

QuadraticExtension build_quadratic_extension(const FieldPtr& base);

// Factors q as p^k; throws input_error if q is not a prime power.
std::pair<uint64_t, uint32_t> factor_prime_power(uint64_t q);

}  // namespace recur2code
