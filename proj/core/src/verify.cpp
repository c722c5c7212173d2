#include "modsep/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <map>
#include <stdexcept>
#include <thread>
#include <unordered_map>

namespace modsep {

namespace {

using ClassMap = std::unordered_map<std::string, std::map<uint64_t, uint64_t>>;

uint64_t checked_point_count(uint32_t q, uint32_t dim, uint64_t limit) {
    uint64_t points = 1;
    for (uint32_t i = 0; i < dim; ++i) {
        if (points > limit / q)
            throw std::invalid_argument("point count q^dim exceeds the limit of " + std::to_string(limit) +
                                        "; use a smaller field or module");
        points *= q;
    }
    if (points > limit)
        throw std::invalid_argument("point count q^dim exceeds the limit of " + std::to_string(limit) +
                                    "; use a smaller field or module");
    return points;
}

void decode_point(uint64_t code, uint32_t q, uint32_t dim, uint32_t* out) {
    for (uint32_t i = 0; i < dim; ++i) {
        out[i] = uint32_t(code % q);
        code /= q;
    }
}

uint64_t encode_point(const uint32_t* in, uint32_t q, uint32_t dim) {
    uint64_t code = 0;
    for (uint32_t i = dim; i-- > 0;) code = code * q + in[i];
    return code;
}

Point decode_to_elements(uint64_t code, const FiniteField& F, uint32_t dim) {
    Point v;
    v.reserve(dim);
    for (uint32_t i = 0; i < dim; ++i) {
        v.push_back(F.element(uint32_t(code % F.size())));
        code /= F.size();
    }
    return v;
}

void require_invariants(const GroupAction& G, const std::vector<Polynomial>& S, const char* who) {
    for (const auto& f : S) {
        if (&f.field() != &G.field() || f.nvars() != G.dim())
            throw std::invalid_argument(std::string(who) + ": polynomial does not live in the action's ring");
        if (!G.is_invariant(f))
            throw std::invalid_argument(std::string(who) + ": polynomial '" + f.to_string() +
                                        "' is not invariant");
    }
}

// Scans [lo, hi), grouping points by prefix+fingerprint and recording, per
// group and orbit representative, the smallest point code.  `leaders` counts
// points that are their own orbit minimum (only meaningful without a prefix).
struct ScanResult {
    ClassMap classes;
    uint64_t leaders = 0;
};

ScanResult scan_range(const GroupAction& G, const std::vector<Polynomial>& S, const Surjection* phi,
                      uint64_t lo, uint64_t hi) {
    const FiniteField& F = G.field();
    const uint32_t q = F.size(), dim = G.dim();
    ScanResult res;
    std::vector<uint32_t> v(dim), img(dim);
    std::vector<uint32_t> fiber(phi ? phi->kept.size() : 0);
    const size_t prefix = phi ? 8 : 0;
    std::string key(prefix + 2 * S.size(), '\0');
    for (uint64_t code = lo; code < hi; ++code) {
        decode_point(code, q, dim, v.data());
        if (phi) {
            phi->apply_codes(v.data(), fiber.data());
            uint64_t fc = encode_point(fiber.data(), q, uint32_t(fiber.size()));
            for (size_t b = 0; b < 8; ++b) key[b] = char(uint8_t(fc >> (8 * b)));
        }
        for (size_t s = 0; s < S.size(); ++s) {
            const uint32_t val = S[s].evaluate_codes(v.data());
            key[prefix + 2 * s] = char(uint8_t(val & 0xff));
            key[prefix + 2 * s + 1] = char(uint8_t(val >> 8));
        }
        uint64_t rep = code;
        for (size_t g = 0; g < G.order(); ++g) {
            if (g == G.identity()) continue;
            G.act_point_codes(g, v.data(), img.data());
            rep = std::min(rep, encode_point(img.data(), q, dim));
        }
        if (rep == code) ++res.leaders;
        auto& reps = res.classes[key];
        auto [it, inserted] = reps.emplace(rep, code);
        if (!inserted) it->second = std::min(it->second, code);
    }
    return res;
}

ScanResult scan_all(const GroupAction& G, const std::vector<Polynomial>& S, const Surjection* phi,
                    uint64_t points, uint32_t threads) {
    if (threads <= 1 || points < 2048) return scan_range(G, S, phi, 0, points);
    const uint32_t workers = uint32_t(std::min<uint64_t>(threads, points / 1024));
    std::vector<ScanResult> parts(workers);
    std::vector<std::thread> pool;
    const uint64_t chunk = (points + workers - 1) / workers;
    for (uint32_t w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            const uint64_t lo = w * chunk, hi = std::min(points, lo + chunk);
            parts[w] = scan_range(G, S, phi, lo, hi);
        });
    for (auto& t : pool) t.join();
    ScanResult merged = std::move(parts[0]);
    for (uint32_t w = 1; w < workers; ++w) {
        merged.leaders += parts[w].leaders;
        for (auto& [key, reps] : parts[w].classes) {
            auto& target = merged.classes[key];
            for (auto& [rep, code] : reps) {
                auto [it, inserted] = target.emplace(rep, code);
                if (!inserted) it->second = std::min(it->second, code);
            }
        }
    }
    return merged;
}

VerificationReport summarize(const GroupAction& G, const ScanResult& scan, uint64_t points,
                             bool fiberwise) {
    VerificationReport report;
    report.field_name = G.field().name();
    report.point_count = points;
    report.class_count = scan.classes.size();
    uint64_t pairs = 0;
    for (const auto& [key, reps] : scan.classes) pairs += reps.size();
    report.orbit_count = pairs;
    if (!fiberwise && pairs != scan.leaders)
        throw std::logic_error("orbit bookkeeping mismatch (non-invariant input slipped through?)");
    report.ok = report.class_count == report.orbit_count;

    if (!report.ok) {
        // Deterministic counterexample: in the offending class containing the
        // smallest point code, that point against the smallest code from a
        // different orbit.
        const std::map<uint64_t, uint64_t>* worst = nullptr;
        uint64_t best_min = 0;
        for (const auto& [key, reps] : scan.classes) {
            if (reps.size() < 2) continue;
            uint64_t class_min = UINT64_MAX;
            for (const auto& [rep, code] : reps) class_min = std::min(class_min, code);
            if (!worst || class_min < best_min) {
                worst = &reps;
                best_min = class_min;
            }
        }
        uint64_t rep_u = 0;
        for (const auto& [rep, code] : *worst)
            if (code == best_min) rep_u = rep;
        uint64_t w_code = UINT64_MAX;
        for (const auto& [rep, code] : *worst)
            if (rep != rep_u) w_code = std::min(w_code, code);
        report.counterexample = {decode_to_elements(best_min, G.field(), G.dim()),
                                 decode_to_elements(w_code, G.field(), G.dim())};
    }
    return report;
}

Polynomial vmono(const FiniteField& F, uint32_t dim,
                 std::initializer_list<std::pair<uint32_t, uint16_t>> factors) {
    Monomial m(dim, 0);
    for (auto [idx, e] : factors) m[idx - 1] = uint16_t(m[idx - 1] + e);
    return Polynomial::term(F, dim, m, F.one());
}

size_t element_by_label(const GroupAction& G, std::string_view label) {
    for (size_t i = 0; i < G.order(); ++i)
        if (G.element(i).label == label) return i;
    throw std::logic_error("group element '" + std::string(label) + "' not found");
}

// x_1 x_a x_b + x_1 x_c x_d with indices beyond the ring read as zero (the
// displayed right sides use the convention x_{2n+1} := 0).
Polynomial x1_pair(const FiniteField& F, uint32_t dim, uint32_t a, uint32_t b, uint32_t c, uint32_t d) {
    Polynomial out(F, dim);
    if (a <= dim && b <= dim) out = out + vmono(F, dim, {{1, 1}, {a, 1}, {b, 1}});
    if (c <= dim && d <= dim) out = out + vmono(F, dim, {{1, 1}, {c, 1}, {d, 1}});
    return out;
}

OracleResult oracle(std::string id, const Polynomial& lhs, const Polynomial& rhs) {
    Polynomial diff = lhs - rhs;
    const bool pass = diff.is_zero();
    return {std::move(id), pass, std::move(diff)};
}

std::vector<TermConstraint> x1_part() { return {TermConstraint::positive(0)}; }

void klein_ii_oracles(const ModuleSpec& spec, const FiniteField& F, std::vector<OracleResult>& out) {
    const uint32_t n = spec.n;
    if (n < 3) return;
    const GroupAction G = build_action(spec, F);
    const uint32_t dim = G.dim();
    const FieldElement lam = F.parse(spec.lambda);

    for (uint32_t i = 2; i <= n - 1; ++i)
        for (uint32_t j = 2; j <= n - 1; ++j) {
            const Polynomial lhs =
                G.transfer_full(vmono(F, dim, {{1, 1}, {i, 1}, {j, 1}})).filter_terms(x1_part());
            const Polynomial rhs = x1_pair(F, dim, n + i, n + j + 1, n + i + 1, n + j);
            out.push_back(oracle("ii-a*(i=" + std::to_string(i) + ",j=" + std::to_string(j) + ")", lhs, rhs));
        }

    {
        const Polynomial lhs =
            G.transfer_full(vmono(F, dim, {{1, 1}, {n - 1, 1}, {n, 1}})).filter_terms(x1_part());
        const Polynomial rhs = x1_pair(F, dim, 2 * n - 1, 2 * n + 1, 2 * n, 2 * n);
        out.push_back(oracle("ii-b", lhs, rhs));
    }

    {
        const Polynomial lhs = G.transfer_full(vmono(F, dim, {{1, 1}, {2, 3}}))
                                   .filter_terms({TermConstraint::positive(0), TermConstraint::zero(n + 2)});
        const Polynomial rhs = Polynomial::constant(F, dim, lam * (lam + F.one())) *
                               vmono(F, dim, {{1, 1}, {n + 2, 3}});
        out.push_back(oracle("ii-lambda", lhs, rhs));
    }

    if (lam == F.zero() || lam == F.one()) {
        const Subgroup H2 = G.generated_subgroup(element_by_label(G, "s2"));
        const Polynomial u = vmono(F, dim, {{1, 1}, {n + 2, 1}}) + vmono(F, dim, {{2, 1}, {n + 1, 1}});
        const Polynomial lhs = G.norm(H2, u).filter_terms(x1_part());
        const Polynomial rhs = vmono(F, dim, {{1, 2}, {n + 2, 2}}) + vmono(F, dim, {{1, 1}, {n + 2, 3}}) +
                               vmono(F, dim, {{1, 1}, {n + 2, 1}, {n + 1, 1}, {n + 3, 1}});
        out.push_back(oracle("ii-N", lhs, rhs));
    }
}

void klein_v_oracles(const ModuleSpec& spec, const FiniteField& F, std::vector<OracleResult>& out) {
    const uint32_t n = spec.n;
    if (n < 3) return;
    const GroupAction G = build_action(spec, F);
    const uint32_t dim = G.dim();
    for (uint32_t i = 2; i <= n - 1; ++i) {
        const Polynomial lhs = G.transfer_full(vmono(F, dim, {{1, 1}, {i, 3}})).filter_terms(x1_part());
        const uint32_t a = n - 1 + i, b = n + i;
        const Polynomial rhs =
            vmono(F, dim, {{1, 1}, {a, 2}, {b, 1}}) + vmono(F, dim, {{1, 1}, {a, 1}, {b, 2}});
        out.push_back(oracle("v-cube(i=" + std::to_string(i) + ")", lhs, rhs));
    }
}

void cyclic_oracles(const ModuleSpec& spec, const FiniteField& F, std::vector<OracleResult>& out) {
    const uint32_t n = spec.n, p = spec.p;
    if (n < 3) return;
    const GroupAction G = build_action(spec, F);
    const Subgroup M = G.generated_subgroup(element_by_label(G, "r"));
    const uint32_t k = find_k(G, spec);
    for (uint32_t i = 1; i <= n - 2; ++i) {
        const Polynomial f_i = vmono(F, n, {{n, 1}, {i + 1, uint16_t(p - 1)}, {i, uint16_t(k)}});
        std::vector<TermConstraint> filter{TermConstraint::positive(n - 1)};
        for (uint32_t j = 1; j < i; ++j) filter.push_back(TermConstraint::zero(j - 1));
        const Polynomial lhs = G.transfer_relative(M, f_i).filter_terms(filter);
        const Polynomial rhs = Polynomial::constant(F, n, F.from_int(p - 1)) *
                               vmono(F, n, {{n, 1}, {i, uint16_t(p + k - 1)}});
        out.push_back(oracle("cyc-tr(i=" + std::to_string(i) + ")", lhs, rhs));
    }
}

}  // namespace

uint64_t default_point_limit() {
    if (const char* env = std::getenv("MODSEP_POINT_LIMIT")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
        throw std::invalid_argument("MODSEP_POINT_LIMIT must be a positive integer");
    }
    return kDefaultPointLimit;
}

VerificationReport check_separating(const GroupAction& G, const std::vector<Polynomial>& S,
                                    uint64_t point_limit, uint32_t threads) {
    const auto start = std::chrono::steady_clock::now();
    const uint64_t points = checked_point_count(G.field().size(), G.dim(), point_limit);
    require_invariants(G, S, "check_separating");
    const ScanResult scan = scan_all(G, S, nullptr, points, threads);
    VerificationReport report = summarize(G, scan, points, false);
    report.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

VerificationReport check_separating(const GroupAction& G, const SeparatingSet& S, uint64_t point_limit,
                                    uint32_t threads) {
    VerificationReport report = check_separating(G, S.polynomials(), point_limit, threads);
    report.subject = S.spec.to_string();
    return report;
}

VerificationReport check_fiber_condition(const GroupAction& G, const Surjection& phi,
                                         const std::vector<Polynomial>& T, uint64_t point_limit,
                                         uint32_t threads) {
    const auto start = std::chrono::steady_clock::now();
    if (phi.source.dimension() != G.dim())
        throw std::invalid_argument("check_fiber_condition: surjection source does not match the action");
    const uint64_t points = checked_point_count(G.field().size(), G.dim(), point_limit);
    require_invariants(G, T, "check_fiber_condition");
    const ScanResult scan = scan_all(G, T, &phi, points, threads);
    VerificationReport report = summarize(G, scan, points, true);
    report.subject = phi.source.to_string() + " -> " + phi.target.to_string();
    report.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

std::vector<WitnessEntry> witness(const GroupAction& G, const std::vector<Polynomial>& S,
                                  const Point& v1, const Point& v2) {
    if (v1.size() != G.dim() || v2.size() != G.dim())
        throw std::invalid_argument("witness: point dimension mismatch");
    std::vector<WitnessEntry> out;
    for (size_t i = 0; i < S.size(); ++i) {
        const FieldElement a = S[i].evaluate(v1);
        const FieldElement b = S[i].evaluate(v2);
        if (a != b) out.push_back({i, a, b});
    }
    return out;
}

uint32_t power_sum(uint32_t p, uint32_t a) {
    if (a == 0) throw std::invalid_argument("power_sum needs a >= 1");
    if (p < 2) throw std::invalid_argument("power_sum needs p >= 2");
    for (uint32_t d = 2; d * d <= p; ++d)
        if (p % d == 0) throw std::invalid_argument("power_sum needs a prime p");
    uint64_t sum = 0;
    for (uint32_t l = 0; l < p; ++l) {
        uint64_t term = 1, base = l, e = a;
        while (e > 0) {
            if (e & 1) term = term * base % p;
            base = base * base % p;
            e >>= 1;
        }
        sum += term;
    }
    return uint32_t(sum % p);
}

std::vector<OracleResult> lemma_oracles(const ModuleSpec& spec, const FiniteField& field) {
    spec.validate(field);
    std::vector<OracleResult> out;
    switch (spec.family) {
        case Family::klein_ii: klein_ii_oracles(spec, field, out); break;
        case Family::klein_v: klein_v_oracles(spec, field, out); break;
        case Family::cyclic: cyclic_oracles(spec, field, out); break;
        default: break;
    }
    return out;
}

}  // namespace modsep
