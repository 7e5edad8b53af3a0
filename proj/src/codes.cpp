#include "recur2code/codes.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <algorithm>
#include <charconv>

#include "json.hpp"

namespace recur2code {

uint64_t WeightDistribution::min_weight() const {
    if (entries.empty()) throw invariant_error("empty weight distribution");
    return entries.front().first;
}

uint64_t WeightDistribution::total() const {
    uint64_t sum = 0;
    for (const auto& [w, f] : entries) sum += f;
    return sum;
}

TwoDimCyclicCode build_code(const FieldPtr& field, const RecurrenceParams& params) {
    const Field& F = *field;
    const uint64_t N = period(F, params);
    TwoDimCyclicCode code{field, params, N, {}};
    const auto row0 = generate_sequence(F, params, F.one(), F.zero(), N);
    const auto row1 = generate_sequence(F, params, F.zero(), F.one(), N);
    for (int r = 0; r < 2; ++r) code.rows[r].resize(N);
    for (uint64_t n = 0; n < N; ++n) {
        code.rows[0][n] = row0[n].log;
        code.rows[1][n] = row1[n].log;
        if (row0[n].is_zero() && row1[n].is_zero())
            throw invariant_error("generator matrix has a zero column");
    }
    // Cyclicity: the one-step shift of each row is the row combination given
    // by its shifted initial state.
    for (int r = 0; r < 2; ++r) {
        const int32_t c0 = code.rows[r][1 % N];
        const int32_t c1 = code.rows[r][2 % N];
        for (uint64_t n = 0; n < N; ++n) {
            const int32_t shifted = code.rows[r][(n + 1) % N];
            const int32_t combo =
                F.add_log(F.mul_log(c0, code.rows[0][n]), F.mul_log(c1, code.rows[1][n]));
            if (shifted != combo) throw invariant_error("shift of a generator row left the code");
        }
    }
    return code;
}

GeneratorMatrix generator_matrix(const TwoDimCyclicCode& code) {
    const Field& F = *code.field;
    const uint64_t N = code.length;
    const auto fact = classify(F, code.params);

    GeneratorMatrix out;
    for (int r = 0; r < 2; ++r) {
        out.rows[r].reserve(N);
        out.predicted[r].resize(N);
        for (uint64_t n = 0; n < N; ++n) out.rows[r].push_back({code.rows[r][n], F.id()});
    }

    switch (fact.kind) {
        case FactorKind::repeated_root: {
            out.column_form = "(alpha^n, n*alpha^n)^t";
            FieldElement cur = F.one();
            for (uint64_t n = 0; n < N; ++n) {
                out.predicted[0][n] = cur;
                out.predicted[1][n] = F.mul(cur, F.from_prime(n % F.p()));
                cur = F.mul(cur, fact.alpha);
            }
            break;
        }
        case FactorKind::distinct_roots: {
            out.column_form = "(alpha^n, beta^n)^t";
            FieldElement ca = F.one(), cb = F.one();
            for (uint64_t n = 0; n < N; ++n) {
                out.predicted[0][n] = ca;
                out.predicted[1][n] = cb;
                ca = F.mul(ca, fact.alpha);
                cb = F.mul(cb, fact.beta);
            }
            break;
        }
        case FactorKind::irreducible: {
            out.column_form = "(tr(alpha^n), tr(alpha^(n+1)))^t";
            const QuadraticExtension& ext = *fact.extension;
            const Field& E = *ext.ext();
            FieldElement cur = E.one();
            for (uint64_t n = 0; n <= N; ++n) {
                const FieldElement tr = ext.relative_trace(cur);
                if (n < N) out.predicted[0][n] = tr;
                if (n > 0) out.predicted[1][n - 1] = tr;
                cur = E.mul(cur, fact.alpha);
            }
            break;
        }
    }

    for (int r = 0; r < 2; ++r) out.transform[r] = {out.predicted[r][0], out.predicted[r][1 % N]};
    const auto& t = out.transform;
    const FieldElement det = F.sub(F.mul(t[0][0], t[1][1]), F.mul(t[0][1], t[1][0]));
    if (det.is_zero()) throw invariant_error("predicted generator rows are linearly dependent");
    for (int r = 0; r < 2; ++r) {
        for (uint64_t n = 0; n < N; ++n) {
            const FieldElement combo =
                F.add(F.mul(t[r][0], out.rows[0][n]), F.mul(t[r][1], out.rows[1][n]));
            if (combo != out.predicted[r][n])
                throw invariant_error("predicted column form does not span the generator columns");
        }
    }
    return out;
}

WeightDistribution weights_theoretical(const Field& field, const RecurrenceParams& params) {
    const auto prof = profile(field, params);
    const uint64_t q = field.q();
    if (prof.e > q + 1) throw invariant_error("rank exceeds q + 1");
    WeightDistribution wd;
    wd.entries.emplace_back(prof.N - prof.K, (q - 1) * prof.e);
    if (prof.e < q + 1) wd.entries.emplace_back(prof.N, (q - 1) * (q + 1 - prof.e));
    return wd;
}

namespace {

int32_t state_log(uint64_t idx) { return idx == 0 ? kZeroLog : static_cast<int32_t>(idx - 1); }

void check_budget(const TwoDimCyclicCode& code, uint64_t budget) {
    const uint64_t q = code.field->q();
    if (code.length > budget / q / q)
        throw input_error("enumeration budget exceeded (q^2 * N symbol operations over the cap)");
}

WeightDistribution histogram_to_distribution(const std::vector<uint64_t>& zeros_hist, uint64_t n) {
    WeightDistribution wd;
    for (uint64_t zeros = n + 1; zeros-- > 0;) {
        if (zeros_hist[zeros]) wd.entries.emplace_back(n - zeros, zeros_hist[zeros]);
    }
    return wd;
}

}  // namespace

WeightDistribution weights_bruteforce_serial(const TwoDimCyclicCode& code, uint64_t budget) {
    check_budget(code, budget);
    const Field& F = *code.field;
    const uint64_t q = F.q(), N = code.length;
    const int32_t a = code.params.a.log, b = code.params.b.log;
    std::vector<uint64_t> zeros_hist(N + 1, 0);
    for (uint64_t i = 0; i < q; ++i) {
        for (uint64_t j = 0; j < q; ++j) {
            if (i == 0 && j == 0) continue;
            int32_t x = state_log(i), y = state_log(j);
            uint64_t zeros = 0;
            for (uint64_t n = 0; n < N; ++n) {
                zeros += (x == kZeroLog);
                const int32_t next = F.add_log(F.mul_log(a, y), F.mul_log(b, x));
                x = y;
                y = next;
            }
            ++zeros_hist[zeros];
        }
    }
    return histogram_to_distribution(zeros_hist, N);
}

WeightDistribution weights_bruteforce(const TwoDimCyclicCode& code, const EnumerationOptions& opts) {
#ifndef _OPENMP
    return weights_bruteforce_serial(code, opts.budget);
#else
    check_budget(code, opts.budget);
    const Field& F = *code.field;
    const uint64_t q = F.q(), N = code.length;
    const int32_t a = code.params.a.log, b = code.params.b.log;
    const int64_t total = static_cast<int64_t>(q * q);
    std::vector<uint64_t> zeros_hist(N + 1, 0);
    const int threads = opts.workers > 0 ? opts.workers : omp_get_max_threads();
#pragma omp parallel num_threads(threads)
    {
        std::vector<uint64_t> local(N + 1, 0);
#pragma omp for schedule(static) nowait
        for (int64_t s = 1; s < total; ++s) {
            int32_t x = state_log(static_cast<uint64_t>(s) / q);
            int32_t y = state_log(static_cast<uint64_t>(s) % q);
            uint64_t zeros = 0;
            for (uint64_t n = 0; n < N; ++n) {
                zeros += (x == kZeroLog);
                const int32_t next = F.add_log(F.mul_log(a, y), F.mul_log(b, x));
                x = y;
                y = next;
            }
            ++local[zeros];
        }
#pragma omp critical
        {
            for (size_t i = 0; i < local.size(); ++i) zeros_hist[i] += local[i];
        }
    }
    return histogram_to_distribution(zeros_hist, N);
#endif
}

uint64_t min_distance(const TwoDimCyclicCode& code, const EnumerationOptions& opts) {
    return weights_bruteforce(code, opts).min_weight();
}

uint64_t dual_distance(const TwoDimCyclicCode& code) {
    const Field& F = *code.field;
    const uint64_t q = F.q(), N = code.length;
    if (N > q + 1) return 2;  // only q+1 projective points to go around
    std::vector<char> seen(q + 1, 0);
    for (uint64_t n = 0; n < N; ++n) {
        const int32_t x = code.rows[0][n], y = code.rows[1][n];
        uint64_t point;
        if (x == kZeroLog) {
            point = q;
        } else if (y == kZeroLog) {
            point = 0;
        } else {
            int32_t ratio = y - x;
            if (ratio < 0) ratio += static_cast<int32_t>(q) - 1;
            point = 1 + static_cast<uint64_t>(ratio);
        }
        if (seen[point]) return 2;
        seen[point] = 1;
    }
    return 3;
}

bool is_projective(const TwoDimCyclicCode& code) { return dual_distance(code) == 3; }

bool is_mds(const TwoDimCyclicCode& code, const EnumerationOptions& opts) {
    const bool mds = min_distance(code, opts) == code.length - 1;
    if (mds != is_projective(code)) throw invariant_error("MDS and projectivity disagree");
    return mds;
}

SwcClassification swc_classification(const Field& field, const RecurrenceParams& params) {
    const auto fact = classify(field, params);
    if (fact.kind != FactorKind::irreducible)
        throw input_error("subfield/semiprimitive classification applies to the irreducible case only");
    const Field& E = *fact.extension->ext();
    const uint64_t N = E.mult_order(fact.alpha);
    const uint64_t q = field.q();
    const uint64_t group = q * q - 1;
    if (group % N != 0) throw invariant_error("root order does not divide q^2 - 1");

    SwcClassification out;
    out.u = group / N;
    if (out.u == 1) {
        out.semiprimitive = true;  // vacuously: every residue is 0 mod 1
        out.trivial_u = true;
    } else {
        uint64_t cur = 1 % out.u;
        for (uint64_t j = 0; j <= out.u; ++j) {
            if (cur == out.u - 1) {
                out.semiprimitive = true;
                break;
            }
            cur = cur * (q % out.u) % out.u;
            if (cur == 1) break;  // cycled through all powers of q mod u
        }
    }

    // alpha primitive in a proper subfield of F_{q^2}: ord(alpha) = p^d - 1
    // for a proper divisor d of 2k.
    const uint64_t p = field.p();
    const uint32_t m = 2 * field.k();
    for (uint32_t d = 1; d < m; ++d) {
        if (m % d != 0) continue;
        uint64_t pd = 1;
        for (uint32_t i = 0; i < d; ++i) pd *= p;
        if (N == pd - 1) {
            out.subfield = true;
            break;
        }
    }
    return out;
}

CheckPolynomials check_polynomials(const FieldPtr& field, const RecurrenceParams& params,
                                   uint64_t period_n) {
    const Field& F = *field;
    // Reciprocal of x^2 - a x - b, normalized monic: x^2 + (a/b) x - 1/b.
    std::vector<FieldElement> hc{F.neg(F.inv(params.b)), F.div(params.a, params.b), F.one()};
    Poly h(field, std::move(hc));
    const Poly xn1 = Poly::x_pow_minus_one(field, period_n);
    auto [g, rem] = xn1.divmod(h);
    if (!rem.is_zero()) throw invariant_error("check polynomial does not divide x^N - 1");
    if (g.mul(h) != xn1) throw invariant_error("g*h != x^N - 1 after division");
    return {std::move(h), std::move(g)};
}

CodeReport analyze(const FieldPtr& field, const RecurrenceParams& params, const AnalyzeOptions& opts) {
    const Field& F = *field;
    const uint64_t q = F.q();
    const auto fact = classify(F, params);
    const auto prof = profile_from(F, fact);

    if (companion_order(F, params) != prof.N)
        throw invariant_error("period disagrees with the companion matrix order");
    switch (fact.kind) {
        case FactorKind::irreducible: {
            const uint64_t ordb = F.mult_order(F.neg(params.b));
            if ((q + 1) * ordb % prof.N != 0)
                throw invariant_error("N does not divide (q+1)*ord(-b)");
            break;
        }
        case FactorKind::distinct_roots:
            if ((q - 1) % prof.N != 0) throw invariant_error("N does not divide q-1");
            break;
        case FactorKind::repeated_root:
            if (prof.N != F.p() * F.mult_order(fact.alpha))
                throw invariant_error("N != p*ord(alpha)");
            break;
    }

    const auto code = build_code(field, params);

    CodeReport rep;
    rep.q = q;
    rep.a_log = params.a.log;
    rep.b_log = params.b.log;
    rep.kind = fact.kind;
    rep.N = prof.N;
    rep.e = prof.e;
    rep.K = prof.K;

    rep.weights = weights_theoretical(F, params);
    if (prof.N <= opts.budget / q / q) {
        const auto enumerated = weights_bruteforce(code, {opts.budget, opts.workers});
        if (enumerated != rep.weights)
            throw invariant_error("weight distribution: enumeration disagrees with the closed form");
    } else {
        rep.flags.push_back(kFlagBruteforceSkipped);
    }

    if (rep.weights.entries.size() > 2) throw invariant_error("more than two nonzero weights");
    unsigned __int128 sum = 0, moment = 0;
    for (const auto& [w, f] : rep.weights.entries) {
        sum += f;
        moment += static_cast<unsigned __int128>(w) * f;
    }
    if (sum != static_cast<unsigned __int128>(q) * q - 1)
        throw invariant_error("frequencies do not sum to q^2 - 1");
    if (moment != static_cast<unsigned __int128>(q) * (q - 1) * prof.N)
        throw invariant_error("weighted frequency sum violates the second power moment");

    rep.one_weight = rep.weights.entries.size() == 1;
    rep.d = rep.weights.min_weight();
    rep.d_dual = dual_distance(code);
    if (rep.d_dual != 2 && rep.d_dual != 3) throw invariant_error("dual distance outside {2,3}");
    rep.projective = rep.d_dual == 3;
    rep.mds = rep.d == prof.N - 1;
    if (rep.mds != rep.projective) throw invariant_error("MDS and projectivity disagree");
    if (rep.mds != (prof.K == 1)) throw invariant_error("MDS does not coincide with K = 1");

    if (fact.kind == FactorKind::irreducible) {
        if (rep.one_weight != (prof.e == q + 1))
            throw invariant_error("one-weight dichotomy: e = q+1 iff one weight");
        rep.swc = swc_classification(F, params);
        if (rep.swc->trivial_u) rep.flags.push_back(kFlagTrivialU);
    }
    if (fact.kind == FactorKind::repeated_root && rep.mds) rep.flags.push_back(kFlagSquareMds);

    if (prof.N <= opts.check_poly_max_n) check_polynomials(field, params, prof.N);
    generator_matrix(code);  // verifies the predicted column form

    return rep;
}

std::string element_str(int32_t log) {
    return log == kZeroLog ? "0" : "r^" + std::to_string(log);
}

int32_t element_log_from_str(const std::string& text, uint64_t q) {
    if (text == "0") return kZeroLog;
    if (text.starts_with("r^")) {
        uint64_t n = 0;
        const char* begin = text.data() + 2;
        const char* end = text.data() + text.size();
        const auto [ptr, ec] = std::from_chars(begin, end, n);
        if (ec == std::errc{} && ptr == end && n < q - 1) return static_cast<int32_t>(n);
    }
    throw input_error("malformed element string: " + text);
}

std::string to_json_line(const CodeReport& r) {
    nlohmann::ordered_json j;
    j["q"] = r.q;
    j["a"] = element_str(r.a_log);
    j["b"] = element_str(r.b_log);
    j["case"] = std::string(to_string(r.kind));
    j["N"] = r.N;
    j["e"] = r.e;
    j["K"] = r.K;
    auto weights = nlohmann::ordered_json::array();
    for (const auto& [w, f] : r.weights.entries) weights.push_back({w, f});
    j["weights"] = std::move(weights);
    j["d"] = r.d;
    j["d_dual"] = r.d_dual;
    j["mds"] = r.mds;
    j["projective"] = r.projective;
    j["one_weight"] = r.one_weight;
    if (r.swc) {
        j["u"] = r.swc->u;
        j["subfield"] = r.swc->subfield;
        j["semiprimitive"] = r.swc->semiprimitive;
    } else {
        j["u"] = nullptr;
        j["subfield"] = nullptr;
        j["semiprimitive"] = nullptr;
    }
    j["flags"] = r.flags;
    return j.dump();
}

CodeReport report_from_json_line(const std::string& line) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
        throw input_error(std::string("bad JSON record: ") + e.what());
    }
    try {
        CodeReport r;
        r.q = j.at("q").get<uint64_t>();
        r.a_log = element_log_from_str(j.at("a").get<std::string>(), r.q);
        r.b_log = element_log_from_str(j.at("b").get<std::string>(), r.q);
        const auto kind = kind_from_string(j.at("case").get<std::string>());
        if (!kind) throw input_error("unknown case: " + j.at("case").get<std::string>());
        r.kind = *kind;
        r.N = j.at("N").get<uint64_t>();
        r.e = j.at("e").get<uint64_t>();
        r.K = j.at("K").get<uint64_t>();
        for (const auto& pair : j.at("weights"))
            r.weights.entries.emplace_back(pair.at(0).get<uint64_t>(), pair.at(1).get<uint64_t>());
        r.d = j.at("d").get<uint64_t>();
        r.d_dual = j.at("d_dual").get<uint64_t>();
        r.mds = j.at("mds").get<bool>();
        r.projective = j.at("projective").get<bool>();
        r.one_weight = j.at("one_weight").get<bool>();
        if (!j.at("u").is_null()) {
            SwcClassification swc;
            swc.u = j.at("u").get<uint64_t>();
            swc.subfield = j.at("subfield").get<bool>();
            swc.semiprimitive = j.at("semiprimitive").get<bool>();
            swc.trivial_u = swc.u == 1;
            r.swc = swc;
        }
        for (const auto& f : j.at("flags")) r.flags.push_back(f.get<std::string>());
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw input_error(std::string("bad JSON record: ") + e.what());
    }
}

}  // namespace recur2code
