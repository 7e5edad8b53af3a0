#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "recur2code/gf.hpp"

namespace recur2code {

// Dense polynomial over one Field, constant term first; trailing zero
// coefficients are trimmed, so the zero polynomial has no coefficients.
class Poly {
  public:
    Poly() = default;
    Poly(FieldPtr field, std::vector<FieldElement> coeffs);

    static Poly zero(FieldPtr field) { return Poly(std::move(field), {}); }
    // x^n - 1
    static Poly x_pow_minus_one(FieldPtr field, uint64_t n);

    const FieldPtr& field() const { return field_; }
    int64_t degree() const { return static_cast<int64_t>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    bool is_monic() const;
    FieldElement coeff(uint64_t i) const;
    const std::vector<FieldElement>& coeffs() const { return coeffs_; }

    Poly add(const Poly& other) const;
    Poly sub(const Poly& other) const;
    Poly mul(const Poly& other) const;
    // Quotient and remainder; divisor must be nonzero.
    std::pair<Poly, Poly> divmod(const Poly& divisor) const;
    FieldElement eval(FieldElement x) const;

    std::string str() const;  // e.g. "x^2 + (r^4)*x + (r^1)"

    friend bool operator==(const Poly&, const Poly&) = default;

  private:
    FieldPtr field_;
    std::vector<FieldElement> coeffs_;
};

}  // namespace recur2code
