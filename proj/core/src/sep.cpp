#include "modsep/sep.hpp"

#include <algorithm>
#include <stdexcept>

#include "modsep/verify.hpp"

namespace modsep {

namespace {

Polynomial var(const GroupAction& G, uint32_t index_1based) {
    return Polynomial::variable(G.field(), G.dim(), index_1based);
}

// Monomial x_{i}^{ei} * x_{j}^{ej} * ... from 1-based (index, exponent) pairs.
Polynomial mono(const GroupAction& G, std::initializer_list<std::pair<uint32_t, uint16_t>> factors) {
    Monomial m(G.dim(), 0);
    for (auto [idx, e] : factors) m[idx - 1] = uint16_t(m[idx - 1] + e);
    return Polynomial::term(G.field(), G.dim(), m, G.field().one());
}

size_t element_by_label(const GroupAction& G, std::string_view label) {
    for (size_t i = 0; i < G.order(); ++i)
        if (G.element(i).label == label) return i;
    throw std::logic_error("group element '" + std::string(label) + "' not found");
}

// T of the klein-ii/klein-iii gluing step: x_{n+1}, N_G(x_1), the
// lambda-dependent invariant, and tr^G(x_1 x_i x_{i+1}) for 2 <= i <= n-1.
std::vector<SetElement> klein_ii_T(const GroupAction& G, uint32_t n, const FieldElement& lam) {
    const FiniteField& F = G.field();
    std::vector<SetElement> T;
    T.push_back({var(G, n + 1), Provenance::variable});
    T.push_back({G.norm(G.full_subgroup(), var(G, 1)), Provenance::norm});
    if (lam != F.zero() && lam != F.one()) {
        T.push_back({G.transfer_full(mono(G, {{1, 1}, {2, 3}})), Provenance::transfer});
    } else {
        const Subgroup H2 = G.generated_subgroup(element_by_label(G, "s2"));
        const Polynomial u = mono(G, {{1, 1}, {n + 2, 1}}) + mono(G, {{2, 1}, {n + 1, 1}});
        T.push_back({G.norm(H2, u), Provenance::relative_norm});
    }
    for (uint32_t i = 2; i <= n - 1; ++i)
        T.push_back({G.transfer_full(mono(G, {{1, 1}, {i, 1}, {i + 1, 1}})), Provenance::transfer});
    return T;
}

// T of the klein-v gluing step, in the module's own numbering: x_n is the
// first invariant variable and x_{n+i} plays the role the doubled module's
// x_{n+i+1} would.
std::vector<SetElement> klein_v_T(const GroupAction& G, uint32_t n) {
    std::vector<SetElement> T;
    T.push_back({var(G, n), Provenance::variable});
    T.push_back({G.norm(G.full_subgroup(), var(G, 1)), Provenance::norm});
    const Subgroup H2 = G.generated_subgroup(element_by_label(G, "s2"));
    const Polynomial u = mono(G, {{1, 1}, {n + 1, 1}}) + mono(G, {{2, 1}, {n, 1}});
    T.push_back({G.norm(H2, u), Provenance::relative_norm});
    T.push_back({G.transfer_full(mono(G, {{1, 1}, {2, 1}, {n - 1, 1}})), Provenance::transfer});
    for (uint32_t i = 2; i <= n - 2; ++i)
        T.push_back({G.transfer_full(mono(G, {{1, 1}, {i, 1}, {i + 1, 1}})), Provenance::transfer});
    for (uint32_t i = 2; i <= n - 1; ++i)
        T.push_back({G.transfer_full(mono(G, {{1, 1}, {i, 3}})), Provenance::transfer});
    return T;
}

std::vector<SetElement> cyclic_T(const GroupAction& G, const ModuleSpec& spec) {
    const uint32_t n = spec.n, p = spec.p;
    const Subgroup H = G.generated_subgroup(element_by_label(G, "s"));
    const Subgroup M = G.generated_subgroup(element_by_label(G, "r"));
    std::vector<SetElement> T;
    const uint32_t l = find_l(G, spec);
    T.push_back({G.norm(H, var(G, n)) * G.norm(H, var(G, n - 1)).pow(l), Provenance::relative_norm});
    T.push_back({G.norm(G.full_subgroup(), var(G, n)), Provenance::norm});
    if (n >= 3) {
        const uint32_t k = find_k(G, spec);
        for (uint32_t i = 1; i <= n - 2; ++i) {
            const Polynomial f_i = mono(G, {{n, 1}, {i + 1, uint16_t(p - 1)}, {i, uint16_t(k)}});
            T.push_back({G.transfer_relative(M, f_i), Provenance::relative_transfer});
        }
    }
    return T;
}

SeparatingSet base_set(const ModuleSpec& spec, std::vector<SetElement> elements) {
    SeparatingSet s;
    s.spec = spec;
    s.elements = std::move(elements);
    return s;
}

}  // namespace

std::string_view provenance_name(Provenance p) {
    switch (p) {
        case Provenance::variable: return "variable";
        case Provenance::norm: return "norm";
        case Provenance::relative_norm: return "relative-norm";
        case Provenance::transfer: return "transfer";
        case Provenance::relative_transfer: return "relative-transfer";
        case Provenance::pullback: return "pullback";
        case Provenance::explicit_form: return "explicit";
        case Provenance::search: return "search";
    }
    throw std::logic_error("unknown provenance");
}

std::vector<Polynomial> SeparatingSet::polynomials() const {
    std::vector<Polynomial> polys;
    polys.reserve(elements.size());
    for (const auto& e : elements) polys.push_back(e.poly);
    return polys;
}

SeparatingSet glue(const GroupAction& source_action, const SeparatingSet& target_set,
                   std::vector<SetElement> T, const Surjection& phi) {
    for (const auto& t : T)
        if (!source_action.is_invariant(t.poly))
            throw std::invalid_argument("glue: a member of T is not invariant on " + phi.source.to_string());
    SeparatingSet out;
    out.spec = phi.source;
    out.elements.reserve(target_set.elements.size() + T.size());
    for (const auto& e : target_set.elements)
        out.elements.push_back({phi.pullback(e.poly), Provenance::pullback});
    for (auto& t : T) out.elements.push_back(std::move(t));
    out.steps = target_set.steps;
    std::vector<SetElement> added(out.elements.end() - ptrdiff_t(T.size()), out.elements.end());
    out.steps.push_back({phi.source, phi, std::move(added)});
    return out;
}

SeparatingSet separating_set(const ModuleSpec& spec, const FiniteField& field, uint64_t point_limit,
                             uint32_t threads) {
    spec.validate(field);
    const uint32_t n = spec.n;
    switch (spec.family) {
        case Family::klein_ii: {
            const FieldElement lam = field.parse(spec.lambda);
            if (n == 2) {
                if (lam == field.zero() || lam == field.one())
                    return generic_search(spec, field, 4, point_limit, threads);
                const GroupAction G = build_action(spec, field);
                const FieldElement c = (lam * (lam + field.one())).inv();
                const Polynomial f1 = mono(G, {{1, 1}, {4, 1}}) +
                                      Polynomial::constant(field, 4, c) * mono(G, {{2, 2}}) +
                                      mono(G, {{2, 1}, {3, 1}}) +
                                      Polynomial::constant(field, 4, c) * mono(G, {{2, 1}, {4, 1}});
                return base_set(spec, {{f1, Provenance::explicit_form},
                                       {G.norm(G.full_subgroup(), var(G, 1)), Provenance::norm},
                                       {G.norm(G.full_subgroup(), var(G, 2)), Provenance::norm},
                                       {var(G, 3), Provenance::variable},
                                       {var(G, 4), Provenance::variable}});
            }
            const Surjection phi = surjection(spec);
            const SeparatingSet S = separating_set(phi.target, field, point_limit, threads);
            const GroupAction G = build_action(spec, field);
            return glue(G, S, klein_ii_T(G, n, lam), phi);
        }
        case Family::klein_iii: {
            if (n == 2) return generic_search(spec, field, 4, point_limit, threads);
            const Surjection phi = surjection(spec);
            const SeparatingSet S = separating_set(phi.target, field, point_limit, threads);
            const GroupAction G = build_action(spec, field);
            return glue(G, S, klein_ii_T(G, n, field.zero()), phi);
        }
        case Family::klein_iv: {
            ModuleSpec big;
            big.family = Family::klein_ii;
            big.n = n;
            big.lambda = "1";
            const SeparatingSet S = separating_set(big, field, point_limit, threads);
            SeparatingSet out;
            out.spec = spec;
            for (const auto& e : S.elements) {
                Polynomial r = restrict_to_submodule(e.poly, big);
                if (r.is_zero()) continue;
                bool dup = false;
                for (const auto& kept : out.elements)
                    if (kept.poly == r) {
                        dup = true;
                        break;
                    }
                if (!dup) out.elements.push_back({std::move(r), e.provenance});
            }
            return out;
        }
        case Family::klein_v: {
            const GroupAction G = build_action(spec, field);
            if (n == 2)
                return base_set(spec, {{G.norm(G.full_subgroup(), var(G, 1)), Provenance::norm},
                                       {var(G, 2), Provenance::variable},
                                       {var(G, 3), Provenance::variable}});
            const Surjection phi = surjection(spec);
            const SeparatingSet S = separating_set(phi.target, field, point_limit, threads);
            return glue(G, S, klein_v_T(G, n), phi);
        }
        case Family::klein_regular:
            return generic_search(spec, field, 4, point_limit, threads);
        case Family::cyclic: {
            if (n == 1) {
                Monomial m(1, uint16_t(spec.m));
                const Polynomial xm = Polynomial::term(field, 1, m, field.one());
                return base_set(spec, {{xm, Provenance::explicit_form}});
            }
            const Surjection phi = surjection(spec);
            const SeparatingSet S = separating_set(phi.target, field, point_limit, threads);
            const GroupAction G = build_action(spec, field);
            return glue(G, S, cyclic_T(G, spec), phi);
        }
    }
    throw std::logic_error("unknown family");
}

uint32_t find_k(const GroupAction& G, const ModuleSpec& spec) {
    if (spec.family != Family::cyclic || spec.n < 3)
        throw std::invalid_argument("find_k needs a cyclic spec with n >= 3");
    const Subgroup M = G.generated_subgroup(element_by_label(G, "r"));
    auto f = [&](uint32_t i, uint32_t k) {
        return mono(G, {{spec.n, 1}, {i + 1, uint16_t(spec.p - 1)}, {i, uint16_t(k)}});
    };
    uint32_t result = spec.m;  // searches below must hit before m
    for (uint32_t k = 0; k < spec.m; ++k)
        if (G.is_invariant_under(M, f(1, k))) {
            result = k;
            break;
        }
    if (result == spec.m) throw std::logic_error("find_k: no exponent below m works");
    for (uint32_t i = 2; i + 1 < spec.n; ++i) {
        if (!G.is_invariant_under(M, f(i, result)) ||
            (result > 0 && G.is_invariant_under(M, f(i, result - 1))))
            throw std::logic_error("find_k: minimal exponent depends on i");
    }
    return result;
}

uint32_t find_l(const GroupAction& G, const ModuleSpec& spec) {
    if (spec.family != Family::cyclic || spec.n < 2)
        throw std::invalid_argument("find_l needs a cyclic spec with n >= 2");
    const Subgroup H = G.generated_subgroup(element_by_label(G, "s"));
    const Polynomial nh_n = G.norm(H, var(G, spec.n));
    const Polynomial nh_n1 = G.norm(H, var(G, spec.n - 1));
    for (uint32_t l = 0; l < spec.m; ++l)
        if (G.is_invariant(nh_n * nh_n1.pow(l))) return l;
    throw std::logic_error("find_l: no exponent below m works");
}

SeparatingSet generic_search(const ModuleSpec& spec, const FiniteField& field, uint32_t degree_bound,
                             uint64_t point_limit, uint32_t threads) {
    if (degree_bound == 0) throw std::invalid_argument("generic_search: degree bound must be positive");
    const GroupAction G = build_action(spec, field);
    const uint32_t dim = G.dim();

    std::vector<Polynomial> pool;
    auto push_unique = [&pool](Polynomial f) {
        if (f.is_zero()) return;
        if (std::find(pool.begin(), pool.end(), f) == pool.end()) pool.push_back(std::move(f));
    };
    for (uint32_t d = 1; d <= degree_bound; ++d)
        for (const Monomial& m : monomials_of_degree(dim, d)) push_unique(G.orbit_sum(m));

    std::vector<std::vector<size_t>> subgroup_sets;
    for (size_t g = 1; g < G.order(); ++g) subgroup_sets.push_back(G.generated_subgroup(g).indices);
    subgroup_sets.push_back(G.full_subgroup().indices);
    std::sort(subgroup_sets.begin(), subgroup_sets.end(),
              [](const auto& a, const auto& b) { return a.size() != b.size() ? a.size() < b.size() : a < b; });
    subgroup_sets.erase(std::unique(subgroup_sets.begin(), subgroup_sets.end()), subgroup_sets.end());
    for (const auto& idx : subgroup_sets) {
        if (idx.size() < 2 || idx.size() > degree_bound) continue;
        const Subgroup H = G.subgroup(idx);
        for (uint32_t i = 1; i <= dim; ++i) {
            Polynomial f = G.norm(H, var(G, i));
            if (G.is_invariant(f)) push_unique(std::move(f));
        }
    }
    if (pool.empty())
        throw std::runtime_error("generic_search: no invariant candidates up to degree " +
                                 std::to_string(degree_bound));

    auto separates = [&](const std::vector<Polynomial>& polys) {
        return check_separating(G, polys, point_limit, threads).ok;
    };
    if (!separates(pool))
        throw std::runtime_error("generic_search: candidates up to degree " + std::to_string(degree_bound) +
                                 " do not separate " + spec.to_string() + " over F_" + field.name() +
                                 " — raise the degree bound");

    std::vector<bool> keep(pool.size(), true);
    for (size_t idx = pool.size(); idx-- > 0;) {
        keep[idx] = false;
        std::vector<Polynomial> rest;
        for (size_t j = 0; j < pool.size(); ++j)
            if (keep[j]) rest.push_back(pool[j]);
        if (!separates(rest)) keep[idx] = true;
    }

    SeparatingSet out;
    out.spec = spec;
    for (size_t j = 0; j < pool.size(); ++j)
        if (keep[j]) out.elements.push_back({pool[j], Provenance::search});
    return out;
}

}  // namespace modsep
