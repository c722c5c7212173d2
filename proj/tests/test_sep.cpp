#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <modsep/sep.hpp>
#include <modsep/verify.hpp>

#include <vector>

using namespace modsep;

namespace {

SeparatingSet make(const char* spec_text, const char* field_text) {
    auto spec = ModuleSpec::parse(spec_text);
    const FiniteField& F = field_text ? make_field_named(field_text) : default_field(spec);
    return separating_set(spec, F);
}

std::vector<Provenance> provenances(const SeparatingSet& s) {
    std::vector<Provenance> out;
    for (const auto& e : s.elements) out.push_back(e.provenance);
    return out;
}

size_t by_label(const GroupAction& G, const std::string& label) {
    for (size_t g = 0; g < G.order(); ++g)
        if (G.element(g).label == label) return g;
    REQUIRE(false);
    return 0;
}

}  // namespace

TEST_CASE("every constructed element is symbolically invariant") {
    for (const char* spec_text :
         {"klein-ii:n=2,lambda=t", "klein-ii:n=3,lambda=t+1", "klein-ii:n=4,lambda=0",
          "klein-iii:n=3", "klein-iv:n=2", "klein-iv:n=4", "klein-v:n=2", "klein-v:n=4",
          "klein-regular", "cyclic:p=3,m=2,n=3", "cyclic:p=3,m=4,n=3", "cyclic:p=5,m=2,n=5",
          "cyclic:p=2,m=3,n=2"}) {
        CAPTURE(spec_text);
        auto spec = ModuleSpec::parse(spec_text);
        const FiniteField& F = default_field(spec);
        auto set = separating_set(spec, F);
        GroupAction G = build_action(spec, F);
        auto full = G.full_subgroup();
        for (const auto& e : set.elements) {
            CHECK(G.is_invariant(e.poly));
            CHECK(G.is_invariant_under(full, e.poly));
            CHECK(!e.poly.is_zero());
        }
    }
}

TEST_CASE("klein-ii n=2 base set matches the explicit formula") {
    auto set = make("klein-ii:n=2,lambda=t", "2^2");
    REQUIRE(set.elements.size() == 5);
    CHECK(provenances(set) ==
          std::vector<Provenance>{Provenance::explicit_form, Provenance::norm, Provenance::norm,
                                  Provenance::variable, Provenance::variable});
    const FiniteField& F = make_field_named("2^2");
    // f_1 = x1*x4 + c*x2^2 + x2*x3 + c*x2*x4, c = (lambda(lambda+1))^{-1};
    // lambda = t gives c = 1
    auto f1 = Polynomial::parse(F, 4, "x2^2 + x2*x3 + x1*x4 + x2*x4");
    CHECK(set.elements[0].poly == f1);
    CHECK(set.elements[3].poly == Polynomial::parse(F, 4, "x3"));
    CHECK(set.elements[4].poly == Polynomial::parse(F, 4, "x4"));
    // the two norms really are the full-group norms of x1 and x2
    GroupAction G = build_action(set.spec, F);
    auto full = G.full_subgroup();
    CHECK(set.elements[1].poly == G.norm(full, Polynomial::variable(F, 4, 1)));
    CHECK(set.elements[2].poly == G.norm(full, Polynomial::variable(F, 4, 2)));
    CHECK(set.steps.empty());
}

TEST_CASE("klein-ii base coefficient c varies with lambda") {
    // lambda = t+1: lambda*(lambda+1) = (t+1)*t = t^2+t = 1, so c = 1 again over F_4;
    // use F_8 to get a c different from 1
    const FiniteField& F8 = make_field_named("2^3");
    auto spec = ModuleSpec::parse("klein-ii:n=2,lambda=t");
    auto set = separating_set(spec, F8);
    auto lam = F8.parse("t");
    auto c = (lam * (lam + F8.one())).inv();
    auto expected = Polynomial::parse(F8, 4, "x1*x4") +
                    Polynomial::constant(F8, 4, c) * Polynomial::parse(F8, 4, "x2^2 + x2*x4") +
                    Polynomial::parse(F8, 4, "x2*x3");
    CHECK(set.elements[0].poly == expected);
}

TEST_CASE("klein-ii n=3 tail follows the recursion") {
    auto set = make("klein-ii:n=3,lambda=t", "2^2");
    REQUIRE(set.elements.size() == 9);
    CHECK(provenances(set) ==
          std::vector<Provenance>{Provenance::pullback, Provenance::pullback, Provenance::pullback,
                                  Provenance::pullback, Provenance::pullback, Provenance::variable,
                                  Provenance::norm, Provenance::transfer, Provenance::transfer});
    const FiniteField& F = make_field_named("2^2");
    GroupAction G = build_action(set.spec, F);
    // T = {x_{n+1}, N_G(x_1), tr(x_1 x_2^3), tr(x_1 x_2 x_3)} for lambda outside {0,1}
    CHECK(set.elements[5].poly == Polynomial::variable(F, 6, 4));
    CHECK(set.elements[6].poly == G.norm(G.full_subgroup(), Polynomial::variable(F, 6, 1)));
    auto x1 = Polynomial::variable(F, 6, 1);
    auto x2 = Polynomial::variable(F, 6, 2);
    auto x3 = Polynomial::variable(F, 6, 3);
    CHECK(set.elements[7].poly == G.transfer_full(x1 * x2.pow(3)));
    CHECK(set.elements[8].poly == G.transfer_full(x1 * x2 * x3));

    REQUIRE(set.steps.size() == 1);
    CHECK(set.steps[0].source.to_string() == "klein-ii:n=3,lambda=t");
    CHECK(set.steps[0].phi.target.to_string() == "klein-ii:n=2,lambda=t");
    CHECK(set.steps[0].added.size() == 4);
}

TEST_CASE("klein-ii lambda in {0,1} uses the subgroup norm instead of the cube transfer") {
    auto set = make("klein-ii:n=3,lambda=1", "2^2");
    REQUIRE(set.elements.size() == 9);
    CHECK(set.elements[7].provenance == Provenance::relative_norm);
    const FiniteField& F = make_field_named("2^2");
    GroupAction G = build_action(set.spec, F);
    auto H2 = G.generated_subgroup(by_label(G, "s2"));
    auto u = Polynomial::parse(F, 6, "x1*x5 + x2*x4");  // x1*x_{n+2} + x2*x_{n+1}, n = 3
    CHECK(set.elements[7].poly == G.norm(H2, u));
}

TEST_CASE("klein-v sets match the remark and the recursion") {
    auto base = make("klein-v:n=2", "2^1");
    REQUIRE(base.elements.size() == 3);
    CHECK(provenances(base) == std::vector<Provenance>{Provenance::norm, Provenance::variable,
                                                       Provenance::variable});
    const FiniteField& F = make_field_named("2^1");
    GroupAction G2 = build_action(base.spec, F);
    CHECK(base.elements[0].poly == G2.norm(G2.full_subgroup(), Polynomial::variable(F, 3, 1)));
    CHECK(base.elements[1].poly == Polynomial::variable(F, 3, 2));
    CHECK(base.elements[2].poly == Polynomial::variable(F, 3, 3));

    auto set = make("klein-v:n=3", "2^1");
    REQUIRE(set.elements.size() == 8);
    // T = {y_n, N_G(y_1), N_{H2}(y_1 y_{n+1} + y_2 y_n), tr(y_1 y_2 y_{n-1}), tr(y_1 y_2^3)}
    GroupAction G = build_action(set.spec, F);
    CHECK(set.elements[3].poly == Polynomial::variable(F, 5, 3));
    CHECK(set.elements[3].provenance == Provenance::variable);
    CHECK(set.elements[4].poly == G.norm(G.full_subgroup(), Polynomial::variable(F, 5, 1)));
    auto H2 = G.generated_subgroup(by_label(G, "s2"));
    CHECK(set.elements[5].poly == G.norm(H2, Polynomial::parse(F, 5, "x1*x4 + x2*x3")));
    CHECK(set.elements[5].provenance == Provenance::relative_norm);
    auto x1 = Polynomial::variable(F, 5, 1);
    auto x2 = Polynomial::variable(F, 5, 2);
    CHECK(set.elements[6].poly == G.transfer_full(x1 * x2 * x2));  // y_1 y_2 y_{n-1}, n = 3
    CHECK(set.elements[7].poly == G.transfer_full(x1 * x2.pow(3)));
}

TEST_CASE("cyclic sets follow the proposition") {
    auto base = make("cyclic:p=3,m=2,n=1", nullptr);
    REQUIRE(base.elements.size() == 1);
    CHECK(base.elements[0].provenance == Provenance::explicit_form);
    const FiniteField& F = make_field_named("3^1");
    CHECK(base.elements[0].poly == Polynomial::parse(F, 1, "x1^2"));

    auto set = make("cyclic:p=3,m=2,n=3", nullptr);
    REQUIRE(set.elements.size() == 6);
    GroupAction G = build_action(set.spec, F);
    auto H = G.generated_subgroup(by_label(G, "s"));
    auto M = G.generated_subgroup(by_label(G, "r"));
    auto x1 = Polynomial::variable(F, 3, 1);
    auto x2 = Polynomial::variable(F, 3, 2);
    auto x3 = Polynomial::variable(F, 3, 3);
    // l = 1, k = 1 for (p,m) = (3,2)
    CHECK(set.elements[3].poly == G.norm(H, x3) * G.norm(H, x2));
    CHECK(set.elements[3].provenance == Provenance::relative_norm);
    CHECK(set.elements[4].poly == G.norm(G.full_subgroup(), x3));
    CHECK(set.elements[4].provenance == Provenance::norm);
    CHECK(set.elements[5].poly == G.transfer_relative(M, x3 * x2.pow(2) * x1));
    CHECK(set.elements[5].provenance == Provenance::relative_transfer);
}

TEST_CASE("cardinalities follow the recursion counts") {
    CHECK(make("klein-ii:n=2,lambda=t", "2^2").elements.size() == 5);
    CHECK(make("klein-ii:n=3,lambda=t", "2^2").elements.size() == 9);
    CHECK(make("klein-ii:n=4,lambda=t", "2^2").elements.size() == 14);
    CHECK(make("klein-v:n=2", "2^1").elements.size() == 3);
    CHECK(make("klein-v:n=3", "2^1").elements.size() == 8);
    CHECK(make("klein-v:n=4", "2^1").elements.size() == 15);
    CHECK(make("klein-v:n=5", "2^1").elements.size() == 24);
    CHECK(make("cyclic:p=3,m=2,n=1", nullptr).elements.size() == 1);
    CHECK(make("cyclic:p=3,m=2,n=2", nullptr).elements.size() == 3);
    CHECK(make("cyclic:p=3,m=2,n=3", nullptr).elements.size() == 6);
    CHECK(make("cyclic:p=5,m=2,n=4", nullptr).elements.size() == 10);
    CHECK(make("cyclic:p=5,m=2,n=5", nullptr).elements.size() == 15);
}

TEST_CASE("steps record the recursion innermost first") {
    auto set = make("klein-ii:n=4,lambda=t", "2^2");
    REQUIRE(set.steps.size() == 2);
    CHECK(set.steps[0].source.to_string() == "klein-ii:n=3,lambda=t");
    CHECK(set.steps[1].source.to_string() == "klein-ii:n=4,lambda=t");
    CHECK(set.steps[1].phi.target.to_string() == "klein-ii:n=3,lambda=t");
    // pullback count at the top level: |set(n-1)| elements
    size_t pullbacks = 0;
    for (const auto& e : set.elements)
        if (e.provenance == Provenance::pullback) ++pullbacks;
    CHECK(pullbacks == 9);
    // the added tail of the outer step appears verbatim at the end
    const auto& added = set.steps[1].added;
    REQUIRE(added.size() == 5);
    for (size_t i = 0; i < added.size(); ++i)
        CHECK(added[i].poly == set.elements[set.elements.size() - added.size() + i].poly);
}

TEST_CASE("klein-iv restricts the klein-ii lambda=1 construction") {
    const FiniteField& F = make_field_named("2^2");
    auto small = separating_set(ModuleSpec::parse("klein-iv:n=3"), F);
    auto big = separating_set(ModuleSpec::parse("klein-ii:n=3,lambda=1"), F);
    // negative criterion first: sizes can only shrink via dropped zeros/duplicates
    CHECK(small.elements.size() <= big.elements.size());
    // each restricted element evaluates like its parent on the embedded points
    REQUIRE(small.elements.size() >= 1);
    for (const auto& e : small.elements) CHECK(e.poly.nvars() == 5);
    CHECK(small.steps.empty());
}

TEST_CASE("glue rejects non-invariant T members") {
    const FiniteField& F = make_field_named("2^2");
    auto spec = ModuleSpec::parse("klein-ii:n=3,lambda=t");
    GroupAction G = build_action(spec, F);
    auto target = separating_set(ModuleSpec::parse("klein-ii:n=2,lambda=t"), F);
    auto phi = surjection(spec);
    std::vector<SetElement> T = {{Polynomial::variable(F, 6, 1), Provenance::variable}};
    CHECK_THROWS_AS((void)glue(G, target, T, phi), std::invalid_argument);
}

TEST_CASE("find_k and find_l match the closed forms implied by the scaling") {
    struct Case { uint32_t p, m, expect_k, expect_l; };
    // alpha scales f_i by lambda^{-(p+k)}, so k = (-p) mod m; the norm product
    // is scaled by lambda^{-p(l+1)}, so l = m - 1 is the first l with m | p(l+1)
    for (Case c : {Case{3, 2, 1, 1}, Case{5, 2, 1, 1}, Case{3, 4, 1, 3}, Case{2, 3, 1, 2},
                   Case{5, 4, 3, 3}, Case{7, 3, 2, 2}, Case{5, 3, 1, 2}}) {
        CAPTURE(c.p);
        CAPTURE(c.m);
        uint32_t n = std::min(c.p, uint32_t{3});
        ModuleSpec spec;
        {
            std::string text = "cyclic:p=" + std::to_string(c.p) + ",m=" + std::to_string(c.m) +
                               ",n=" + std::to_string(n);
            spec = ModuleSpec::parse(text);
        }
        const FiniteField& F = default_field(spec);
        GroupAction G = build_action(spec, F);
        if (n >= 3) {
            uint32_t k = find_k(G, spec);
            CHECK(k == c.expect_k);
            CHECK((c.p + k) % c.m == 0);
        }
        uint32_t l = find_l(G, spec);
        CHECK(l == c.expect_l);
        CHECK((c.p * (l + 1)) % c.m == 0);
    }
}

TEST_CASE("find_k/find_l match a brute-force minimal search") {
    auto spec = ModuleSpec::parse("cyclic:p=5,m=4,n=3");
    const FiniteField& F = default_field(spec);
    GroupAction G = build_action(spec, F);
    size_t alpha = by_label(G, "r");
    auto M = G.generated_subgroup(alpha);

    auto x = [&](uint32_t i) { return Polynomial::variable(F, 3, i); };
    uint32_t brute_k = 0;
    for (;; ++brute_k) {
        auto f = x(3) * x(2).pow(4) * x(1).pow(brute_k);
        if (G.is_invariant_under(M, f)) break;
    }
    CHECK(find_k(G, spec) == brute_k);

    auto H = G.generated_subgroup(by_label(G, "s"));
    uint32_t brute_l = 0;
    for (;; ++brute_l) {
        auto f = G.norm(H, x(3)) * G.norm(H, x(2)).pow(brute_l);
        if (G.is_invariant(f)) break;
    }
    CHECK(find_l(G, spec) == brute_l);
}

TEST_CASE("generic search returns a verified set of bounded degree") {
    auto spec = ModuleSpec::parse("klein-regular");
    const FiniteField& F = make_field_named("2^1");
    auto set = generic_search(spec, F, 4);
    CHECK(!set.elements.empty());
    GroupAction G = build_action(spec, F);
    for (const auto& e : set.elements) {
        CHECK(e.provenance == Provenance::search);
        CHECK(e.poly.degree() <= 4);
        CHECK(G.is_invariant(e.poly));
        // each survivor is an orbit sum: the sum of the distinct images of
        // its leading monomial
        CHECK(e.poly == G.orbit_sum(e.poly.terms().begin()->first));
    }
    CHECK(check_separating(G, set.polynomials()).ok);
}

TEST_CASE("generic search: removing any one element breaks separation") {
    auto spec = ModuleSpec::parse("klein-regular");
    const FiniteField& F = make_field_named("2^1");
    auto set = generic_search(spec, F, 4);
    GroupAction G = build_action(spec, F);
    auto polys = set.polynomials();
    for (size_t skip = 0; skip < polys.size(); ++skip) {
        std::vector<Polynomial> rest;
        for (size_t i = 0; i < polys.size(); ++i)
            if (i != skip) rest.push_back(polys[i]);
        CHECK(!check_separating(G, rest).ok);
    }
}

TEST_CASE("generic search reports an insufficient degree bound") {
    auto spec = ModuleSpec::parse("klein-ii:n=2,lambda=0");
    const FiniteField& F = make_field_named("2^2");
    CHECK_THROWS_AS((void)generic_search(spec, F, 1), std::runtime_error);
    CHECK_THROWS_AS((void)generic_search(spec, F, 0), std::invalid_argument);
}

TEST_CASE("search results separate for the delegated base cases") {
    for (auto [spec_text, field_text] :
         {std::pair{"klein-ii:n=2,lambda=0", "2^1"}, std::pair{"klein-ii:n=2,lambda=0", "2^2"},
          std::pair{"klein-ii:n=2,lambda=1", "2^1"}, std::pair{"klein-ii:n=2,lambda=1", "2^2"}}) {
        CAPTURE(spec_text);
        auto spec = ModuleSpec::parse(spec_text);
        const FiniteField& F = make_field_named(field_text);
        auto set = separating_set(spec, F);
        for (const auto& e : set.elements) {
            CHECK(e.provenance == Provenance::search);
            CHECK(e.poly.degree() <= 4);
        }
        GroupAction G = build_action(spec, F);
        CHECK(check_separating(G, set.polynomials()).ok);
    }
}
