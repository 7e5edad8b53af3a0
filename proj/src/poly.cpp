#include "recur2code/poly.hpp"

namespace recur2code {

Poly::Poly(FieldPtr field, std::vector<FieldElement> coeffs)
    : field_(std::move(field)), coeffs_(std::move(coeffs)) {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

Poly Poly::x_pow_minus_one(FieldPtr field, uint64_t n) {
    std::vector<FieldElement> c(n + 1, field->zero());
    c[0] = field->neg(field->one());
    c[n] = field->one();
    return Poly(std::move(field), std::move(c));
}

bool Poly::is_monic() const { return !coeffs_.empty() && coeffs_.back() == field_->one(); }

FieldElement Poly::coeff(uint64_t i) const {
    return i < coeffs_.size() ? coeffs_[i] : field_->zero();
}

Poly Poly::add(const Poly& other) const {
    std::vector<FieldElement> out(std::max(coeffs_.size(), other.coeffs_.size()), field_->zero());
    for (size_t i = 0; i < out.size(); ++i) out[i] = field_->add(coeff(i), other.coeff(i));
    return Poly(field_, std::move(out));
}

Poly Poly::sub(const Poly& other) const {
    std::vector<FieldElement> out(std::max(coeffs_.size(), other.coeffs_.size()), field_->zero());
    for (size_t i = 0; i < out.size(); ++i) out[i] = field_->sub(coeff(i), other.coeff(i));
    return Poly(field_, std::move(out));
}

Poly Poly::mul(const Poly& other) const {
    if (is_zero() || other.is_zero()) return zero(field_);
    std::vector<FieldElement> out(coeffs_.size() + other.coeffs_.size() - 1, field_->zero());
    for (size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i].is_zero()) continue;
        for (size_t j = 0; j < other.coeffs_.size(); ++j)
            out[i + j] = field_->add(out[i + j], field_->mul(coeffs_[i], other.coeffs_[j]));
    }
    return Poly(field_, std::move(out));
}

std::pair<Poly, Poly> Poly::divmod(const Poly& divisor) const {
    if (divisor.is_zero()) throw input_error("polynomial division by zero");
    if (degree() < divisor.degree()) return {zero(field_), *this};
    const auto lead_inv = field_->inv(divisor.coeffs_.back());
    std::vector<FieldElement> rem = coeffs_;
    std::vector<FieldElement> quot(coeffs_.size() - divisor.coeffs_.size() + 1, field_->zero());
    for (size_t i = rem.size(); i-- >= divisor.coeffs_.size();) {
        if (rem[i].is_zero()) continue;
        const auto factor = field_->mul(rem[i], lead_inv);
        const size_t shift = i - (divisor.coeffs_.size() - 1);
        quot[shift] = factor;
        for (size_t j = 0; j < divisor.coeffs_.size(); ++j)
            rem[shift + j] = field_->sub(rem[shift + j], field_->mul(factor, divisor.coeffs_[j]));
    }
    return {Poly(field_, std::move(quot)), Poly(field_, std::move(rem))};
}

FieldElement Poly::eval(FieldElement x) const {
    FieldElement acc = field_->zero();
    for (size_t i = coeffs_.size(); i-- > 0;) acc = field_->add(field_->mul(acc, x), coeffs_[i]);
    return acc;
}

std::string Poly::str() const {
    if (is_zero()) return "0";
    std::string out;
    for (size_t i = coeffs_.size(); i-- > 0;) {
        if (coeffs_[i].is_zero()) continue;
        if (!out.empty()) out += " + ";
        const bool is_unit = coeffs_[i] == field_->one();
        if (i == 0 || !is_unit) out += "(" + field_->str(coeffs_[i]) + ")";
        if (i > 0) {
            if (!is_unit) out += "*";
            out += "x";
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out;
}

}  // namespace recur2code
