#include "recur2code/gf.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <numeric>

#include "recur2code/conway.hpp"

namespace recur2code {

uint64_t max_q_bound() {
    static const uint64_t bound = [] {
        if (const char* env = std::getenv("RECUR2CODE_MAX_Q")) {
            char* end = nullptr;
            const unsigned long long v = std::strtoull(env, &end, 10);
            if (end && *end == '\0' && v >= 2) return static_cast<uint64_t>(v);
        }
        return uint64_t{1} << 20;
    }();
    return bound;
}

namespace {

std::atomic<uint32_t> g_next_field_id{1};

bool is_prime(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::vector<uint64_t> prime_factors(uint64_t n) {
    std::vector<uint64_t> out;
    for (uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

int64_t mod_inverse(int64_t a, int64_t m) {
    if (m == 1) return 0;
    int64_t r0 = m, r1 = ((a % m) + m) % m, s0 = 0, s1 = 1;
    while (r1 != 0) {
        const int64_t d = r0 / r1;
        r0 -= d * r1;
        std::swap(r0, r1);
        s0 -= d * s1;
        std::swap(s0, s1);
    }
    if (r0 != 1) throw invariant_error("mod_inverse: arguments not coprime");
    return ((s0 % m) + m) % m;
}

// Coefficient-domain arithmetic, used only while building tables.
using Coeffs = std::vector<uint32_t>;

Coeffs unpack(uint64_t packed, uint64_t p, uint32_t k) {
    Coeffs c(k, 0);
    for (uint32_t i = 0; i < k && packed; ++i) {
        c[i] = static_cast<uint32_t>(packed % p);
        packed /= p;
    }
    return c;
}

uint64_t pack(const Coeffs& c, uint64_t p) {
    uint64_t v = 0;
    for (size_t i = c.size(); i-- > 0;) v = v * p + c[i];
    return v;
}

// (u * v) mod m, with m monic of degree k; u, v of degree < k.
Coeffs mulmod(const Coeffs& u, const Coeffs& v, const Coeffs& m, uint64_t p) {
    const uint32_t k = static_cast<uint32_t>(m.size()) - 1;
    std::vector<uint64_t> prod(2 * k, 0);
    for (uint32_t i = 0; i < u.size(); ++i) {
        if (!u[i]) continue;
        for (uint32_t j = 0; j < v.size(); ++j) prod[i + j] = (prod[i + j] + uint64_t{u[i]} * v[j]) % p;
    }
    for (uint32_t i = 2 * k; i-- > k;) {
        const uint64_t c = prod[i];
        if (!c) continue;
        prod[i] = 0;
        for (uint32_t j = 0; j < k; ++j) prod[i - k + j] = (prod[i - k + j] + (p - m[j]) * c) % p;
    }
    Coeffs out(k);
    for (uint32_t i = 0; i < k; ++i) out[i] = static_cast<uint32_t>(prod[i]);
    return out;
}

Coeffs powmod(Coeffs base, uint64_t e, const Coeffs& m, uint64_t p) {
    const uint32_t k = static_cast<uint32_t>(m.size()) - 1;
    Coeffs result(k, 0);
    result[0] = 1;
    while (e) {
        if (e & 1) result = mulmod(result, base, m, p);
        base = mulmod(base, base, m, p);
        e >>= 1;
    }
    return result;
}

bool is_one(const Coeffs& c) {
    if (c.empty() || c[0] != 1) return false;
    return std::all_of(c.begin() + 1, c.end(), [](uint32_t v) { return v == 0; });
}

// Exhaustive trial division by every monic polynomial of degree 1..k/2.
bool is_irreducible(const std::vector<uint32_t>& f, uint64_t p) {
    const uint32_t k = static_cast<uint32_t>(f.size()) - 1;
    if (k == 1) return true;
    for (uint32_t d = 1; 2 * d <= k; ++d) {
        uint64_t count = 1;
        for (uint32_t i = 0; i < d; ++i) count *= p;
        for (uint64_t idx = 0; idx < count; ++idx) {
            Coeffs div = unpack(idx, p, d);
            div.push_back(1);  // monic degree d
            // remainder of f by div
            std::vector<uint64_t> rem(f.begin(), f.end());
            for (uint32_t i = k + 1; i-- > d;) {
                const uint64_t c = rem[i] % p;
                if (!c) continue;
                rem[i] = 0;
                for (uint32_t j = 0; j < d; ++j) rem[i - d + j] = (rem[i - d + j] + (p - div[j]) * c) % p;
            }
            if (std::all_of(rem.begin(), rem.begin() + d, [p](uint64_t v) { return v % p == 0; })) return false;
        }
    }
    return true;
}

}  // namespace

std::pair<uint64_t, uint32_t> factor_prime_power(uint64_t q) {
    if (q < 2) throw input_error("q must be at least 2");
    uint64_t p = q;
    for (uint64_t d = 2; d * d <= q; ++d) {
        if (q % d == 0) {
            p = d;
            break;
        }
    }
    uint32_t k = 0;
    uint64_t rest = q;
    while (rest % p == 0) {
        rest /= p;
        ++k;
    }
    if (rest != 1) throw input_error("q = " + std::to_string(q) + " is not a prime power");
    return {p, k};
}

FieldPtr Field::build_from_q(uint64_t q) {
    const auto [p, k] = factor_prime_power(q);
    return build(p, k);
}

FieldPtr Field::build(uint64_t p, uint32_t k, std::optional<std::vector<uint32_t>> modulus) {
    if (!is_prime(p)) throw input_error("p = " + std::to_string(p) + " is not prime");
    if (k < 1) throw input_error("extension degree k must be >= 1");

    const uint64_t bound = max_q_bound();
    uint64_t q = 1;
    for (uint32_t i = 0; i < k; ++i) {
        if (q > bound / p) throw input_error("p^k exceeds the field size cap " + std::to_string(bound));
        q *= p;
    }

    std::vector<uint32_t> mod;
    if (modulus) {
        mod = std::move(*modulus);
        if (mod.size() != k + 1 || mod.back() != 1)
            throw input_error("modulus must be monic of degree k with k+1 coefficients, constant first");
        for (uint32_t c : mod)
            if (c >= p) throw input_error("modulus coefficient out of range");
        if (mod[0] == 0 || !is_irreducible(mod, p)) throw input_error("modulus is reducible over F_p");
    } else {
        auto conway = conway_polynomial(p, k);
        if (!conway)
            throw input_error("no embedded Conway polynomial for (p,k) = (" + std::to_string(p) + "," +
                              std::to_string(k) + "); supply a modulus");
        mod = std::move(*conway);
    }

    auto field = std::shared_ptr<Field>(new Field());
    field->p_ = p;
    field->k_ = k;
    field->q_ = q;
    field->id_ = g_next_field_id.fetch_add(1);
    field->modulus_ = std::move(mod);
    field->neg_shift_ = (p == 2) ? 0 : static_cast<int32_t>((q - 1) / 2);

    // Canonical primitive element: first element in packed coefficient order
    // with multiplicative order q-1. For a Conway modulus this is the class
    // of x; for a prime field, the least primitive root.
    const auto factors = prime_factors(q - 1);
    Coeffs gen;
    for (uint64_t cand = 1; cand < q; ++cand) {
        Coeffs c = unpack(cand, p, k);
        bool primitive = true;
        for (uint64_t l : factors) {
            if (is_one(powmod(c, (q - 1) / l, field->modulus_, p))) {
                primitive = false;
                break;
            }
        }
        if (primitive) {
            gen = std::move(c);
            break;
        }
    }
    if (gen.empty()) throw invariant_error("no primitive element found; modulus is not irreducible");

    field->power_.assign(q - 1, 0);
    field->dlog_.assign(q, kZeroLog);
    const bool gen_is_x = (k > 1 && pack(gen, p) == p);
    Coeffs cur(k, 0);
    cur[0] = 1;
    for (uint64_t n = 0; n < q - 1; ++n) {
        const uint64_t packed = pack(cur, p);
        if (packed == 0 || field->dlog_[packed] != kZeroLog)
            throw invariant_error("powers of the generator collapsed; modulus is not irreducible");
        field->power_[n] = static_cast<uint32_t>(packed);
        field->dlog_[packed] = static_cast<int32_t>(n);
        if (gen_is_x) {
            const uint32_t carry = cur[k - 1];
            for (uint32_t i = k; i-- > 1;) cur[i] = cur[i - 1];
            cur[0] = 0;
            if (carry) {
                for (uint32_t i = 0; i < k; ++i)
                    cur[i] = static_cast<uint32_t>((cur[i] + (p - field->modulus_[i]) * uint64_t{carry}) % p);
            }
        } else {
            cur = mulmod(cur, gen, field->modulus_, p);
        }
    }
    if (!is_one(cur)) throw invariant_error("generator order is not q-1");

    field->zech_.assign(q - 1, kZeroLog);
    for (uint64_t n = 0; n < q - 1; ++n) {
        uint64_t packed = field->power_[n];
        const uint64_t c0 = packed % p;
        packed = (c0 == p - 1) ? packed - (p - 1) : packed + 1;  // + 1 in coefficient form
        field->zech_[n] = (packed == 0) ? kZeroLog : field->dlog_[packed];
    }
    return field;
}

void Field::check_mine(FieldElement x) const {
    if (x.field_id != id_) throw input_error("element does not belong to this field");
}

FieldElement Field::generator() const { return from_log(1); }

FieldElement Field::from_log(int64_t n) const {
    const int64_t m = static_cast<int64_t>(q_) - 1;
    return {static_cast<int32_t>(((n % m) + m) % m), id_};
}

FieldElement Field::from_prime(uint64_t c) const {
    if (c >= p_) throw input_error("prime-subfield value out of range");
    if (c == 0) return zero();
    return {dlog_[c], id_};
}

FieldElement Field::from_coeffs(std::span<const uint32_t> c) const {
    if (c.empty() || c.size() > k_) throw input_error("expected between 1 and k coefficients");
    uint64_t packed = 0;
    for (size_t i = c.size(); i-- > 0;) {
        if (c[i] >= p_) throw input_error("coefficient out of range");
        packed = packed * p_ + c[i];
    }
    if (packed == 0) return zero();
    return {dlog_[packed], id_};
}

std::vector<uint32_t> Field::coeffs(FieldElement x) const {
    check_mine(x);
    if (x.is_zero()) return Coeffs(k_, 0);
    return unpack(power_[x.log], p_, k_);
}

FieldElement Field::parse(std::string_view text) const {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    if (text == "0") return zero();
    if (text.starts_with("r^")) {
        text.remove_prefix(2);
        uint64_t n = 0;
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), n);
        if (ec != std::errc{} || ptr != text.data() + text.size())
            throw input_error("malformed element: expected r^<decimal>");
        return from_log(static_cast<int64_t>(n % (q_ - 1)));
    }
    if (text.starts_with("[") && text.ends_with("]")) {
        text = text.substr(1, text.size() - 2);
        Coeffs c;
        while (true) {
            const auto comma = text.find(',');
            std::string_view item = text.substr(0, comma);
            while (!item.empty() && std::isspace(static_cast<unsigned char>(item.front()))) item.remove_prefix(1);
            while (!item.empty() && std::isspace(static_cast<unsigned char>(item.back()))) item.remove_suffix(1);
            uint32_t v = 0;
            const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
            if (ec != std::errc{} || ptr != item.data() + item.size())
                throw input_error("malformed coefficient vector");
            c.push_back(v);
            if (comma == std::string_view::npos) break;
            text.remove_prefix(comma + 1);
        }
        if (c.size() != k_) throw input_error("expected exactly k = " + std::to_string(k_) + " coefficients");
        return from_coeffs(c);
    }
    throw input_error("malformed element: expected \"0\", \"r^<n>\" or \"[c0,...]\"");
}

std::string Field::str(FieldElement x) const {
    check_mine(x);
    if (x.is_zero()) return "0";
    return "r^" + std::to_string(x.log);
}

FieldElement Field::add(FieldElement x, FieldElement y) const {
    check_mine(x);
    check_mine(y);
    return {add_log(x.log, y.log), id_};
}

FieldElement Field::neg(FieldElement x) const {
    check_mine(x);
    return {neg_log(x.log), id_};
}

FieldElement Field::sub(FieldElement x, FieldElement y) const {
    check_mine(x);
    check_mine(y);
    return {add_log(x.log, neg_log(y.log)), id_};
}

FieldElement Field::mul(FieldElement x, FieldElement y) const {
    check_mine(x);
    check_mine(y);
    return {mul_log(x.log, y.log), id_};
}

FieldElement Field::inv(FieldElement x) const {
    check_mine(x);
    if (x.is_zero()) throw input_error("inversion of zero");
    const int32_t m = static_cast<int32_t>(q_) - 1;
    return {x.log == 0 ? 0 : m - x.log, id_};
}

FieldElement Field::div(FieldElement x, FieldElement y) const { return mul(x, inv(y)); }

FieldElement Field::pow(FieldElement x, int64_t n) const {
    check_mine(x);
    if (x.is_zero()) {
        if (n > 0) return zero();
        if (n == 0) return one();
        throw input_error("inversion of zero");
    }
    const int64_t m = static_cast<int64_t>(q_) - 1;
    const int64_t e = ((n % m) + m) % m;
    return {static_cast<int32_t>((x.log * e) % m), id_};
}

uint64_t Field::mult_order(FieldElement x) const {
    check_mine(x);
    if (x.is_zero()) throw input_error("multiplicative order of zero is undefined");
    return (q_ - 1) / std::gcd(q_ - 1, static_cast<uint64_t>(x.log));
}

const QuadraticExtension& Field::quadratic_extension() const {
    std::call_once(ext_once_, [this] {
        ext_ = std::make_unique<QuadraticExtension>(build_quadratic_extension(shared_from_this()));
    });
    return *ext_;
}

QuadraticExtension build_quadratic_extension(const FieldPtr& base) {
    auto ext = Field::build(base->p(), 2 * base->k());
    return QuadraticExtension(base, std::move(ext));
}

QuadraticExtension::QuadraticExtension(FieldPtr base, FieldPtr ext)
    : base_(std::move(base)), ext_(std::move(ext)) {
    if (ext_->p() != base_->p() || ext_->k() != 2 * base_->k())
        throw input_error("extension field is not the quadratic extension of the base");
    const uint64_t q = base_->q();

    // Minimal polynomial over F_p of the base generator r: prod (x - r^{p^i}).
    // Its coefficients are prime-subfield values.
    std::vector<FieldElement> minpoly{base_->one()};
    uint64_t pi = 1;
    for (uint32_t i = 0; i < base_->k(); ++i) {
        const FieldElement conj = base_->from_log(static_cast<int64_t>(pi % (q - 1)));
        std::vector<FieldElement> next(minpoly.size() + 1, base_->zero());
        for (size_t j = 0; j < minpoly.size(); ++j) {
            next[j + 1] = base_->add(next[j + 1], minpoly[j]);
            next[j] = base_->sub(next[j], base_->mul(conj, minpoly[j]));
        }
        minpoly = std::move(next);
        pi *= base_->p();
    }
    std::vector<uint32_t> mu(minpoly.size());
    for (size_t i = 0; i < minpoly.size(); ++i) {
        const auto c = base_->coeffs(minpoly[i]);
        for (size_t j = 1; j < c.size(); ++j)
            if (c[j] != 0) throw invariant_error("generator minimal polynomial has non-prime coefficients");
        mu[i] = c[0];
    }

    // Image of r: the smallest-log root of that polynomial inside the unique
    // subfield of size q (logs divisible by q+1). For a Conway-built base
    // this lands on R^{q+1}.
    const uint64_t u = q + 1;
    int64_t found = -1;
    for (uint64_t j = 0; j < q - 1; ++j) {
        const FieldElement cand = ext_->from_log(static_cast<int64_t>(j * u));
        FieldElement acc = ext_->zero();
        for (size_t i = mu.size(); i-- > 0;) acc = ext_->add(ext_->mul(acc, cand), ext_->from_prime(mu[i]));
        if (acc.is_zero()) {
            found = static_cast<int64_t>(j);
            break;
        }
    }
    if (found < 0) throw invariant_error("no embedding root found in the quadratic extension");
    scale_ = found * static_cast<int64_t>(u);
    unscale_ = mod_inverse(found, static_cast<int64_t>(q) - 1);
}

FieldElement QuadraticExtension::embed(FieldElement x) const {
    if (x.field_id != base_->id()) throw input_error("embed: element is not in the base field");
    if (x.is_zero()) return ext_->zero();
    return ext_->from_log(x.log * scale_);
}

bool QuadraticExtension::in_base(FieldElement z) const {
    if (z.field_id != ext_->id()) throw input_error("element is not in the extension field");
    return z.is_zero() || z.log % static_cast<int32_t>(base_->q() + 1) == 0;
}

FieldElement QuadraticExtension::project(FieldElement z) const {
    if (z.field_id != ext_->id()) throw input_error("project: element is not in the extension field");
    if (z.is_zero()) return base_->zero();
    const int64_t u = static_cast<int64_t>(base_->q()) + 1;
    if (z.log % u != 0) throw invariant_error("project: element lies outside the embedded base field");
    return base_->from_log((z.log / u) * unscale_);
}

FieldElement QuadraticExtension::frobenius(FieldElement z) const {
    if (z.field_id != ext_->id()) throw input_error("element is not in the extension field");
    if (z.is_zero()) return z;
    return ext_->from_log(z.log * static_cast<int64_t>(base_->q()));
}

FieldElement QuadraticExtension::relative_trace(FieldElement z) const {
    return project(ext_->add(z, frobenius(z)));
}

}  // namespace recur2code
