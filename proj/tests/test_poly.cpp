#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <modsep/poly.hpp>

#include <random>
#include <set>

using namespace modsep;

namespace {

Polynomial random_poly(const FiniteField& F, uint32_t nvars, std::mt19937& rng,
                       uint32_t max_terms = 6, uint32_t max_exp = 3) {
    std::uniform_int_distribution<uint32_t> nterms(0, max_terms);
    std::uniform_int_distribution<uint32_t> expd(0, max_exp);
    std::uniform_int_distribution<uint32_t> coeffd(0, F.size() - 1);
    Polynomial f(F, nvars);
    uint32_t n = nterms(rng);
    for (uint32_t i = 0; i < n; ++i) {
        Monomial m(nvars);
        for (auto& e : m) e = static_cast<uint16_t>(expd(rng));
        f.add_term(m, coeffd(rng));
    }
    return f;
}

Matrix random_invertible(const FiniteField& F, uint32_t n, std::mt19937& rng) {
    std::uniform_int_distribution<uint32_t> coeffd(0, F.size() - 1);
    for (;;) {
        Matrix M(F, n, n);
        for (uint32_t r = 0; r < n; ++r)
            for (uint32_t c = 0; c < n; ++c) M.at(r, c) = coeffd(rng);
        if (M.is_invertible()) return M;
    }
}

}  // namespace

TEST_CASE("builders and basic queries") {
    const FiniteField& F = make_field_named("3^1");
    Polynomial zero(F, 3);
    CHECK(zero.is_zero());
    CHECK(zero.degree() == 0);
    CHECK(zero.to_string() == "0");

    auto x2 = Polynomial::variable(F, 3, 2);
    CHECK(x2.to_string() == "x2");
    CHECK(x2.degree() == 1);
    CHECK(x2.term_count() == 1);

    auto c = Polynomial::constant(F, 3, F.from_int(2));
    CHECK(c.to_string() == "2");
    CHECK(c.degree() == 0);

    auto t = Polynomial::term(F, 3, Monomial{1, 0, 2}, F.from_int(2));
    CHECK(t.to_string() == "2*x1*x3^2");
    CHECK(t.degree() == 3);
    CHECK(t.coefficient(Monomial{1, 0, 2}) == F.from_int(2));
    CHECK(t.coefficient(Monomial{0, 1, 0}).is_zero());
}

TEST_CASE("freshman's dream in characteristic 2") {
    const FiniteField& F = make_field_named("2^2");
    auto x = Polynomial::variable(F, 2, 1);
    auto y = Polynomial::variable(F, 2, 2);
    CHECK((x + y).pow(2) == x.pow(2) + y.pow(2));
    CHECK((x + y).pow(4) == x.pow(4) + y.pow(4));
    CHECK((x + y).pow(3) == x.pow(3) + x.pow(2) * y + x * y.pow(2) + y.pow(3));
}

TEST_CASE("ring axioms on random polynomials") {
    std::mt19937 rng(2024);
    for (const char* name : {"2^2", "3^2", "5^1"}) {
        const FiniteField& F = make_field_named(name);
        for (int trial = 0; trial < 60; ++trial) {
            auto f = random_poly(F, 3, rng);
            auto g = random_poly(F, 3, rng);
            auto h = random_poly(F, 3, rng);
            CHECK(f + g == g + f);
            CHECK(f * g == g * f);
            CHECK((f + g) + h == f + (g + h));
            CHECK((f * g) * h == f * (g * h));
            CHECK(f * (g + h) == f * g + f * h);
            CHECK((f - f).is_zero());
            CHECK(f + (-f) == Polynomial(F, 3));
            CHECK(f * Polynomial(F, 3) == Polynomial(F, 3));
            CHECK(f.pow(2) == f * f);
            CHECK(f.pow(0) == Polynomial::constant(F, 3, F.one()));
        }
    }
}

TEST_CASE("grevlex: iteration order is degree-first, deterministic") {
    const FiniteField& F = make_field_named("2^1");
    Polynomial f(F, 2);
    f.add_term(Monomial{0, 0}, 1);
    f.add_term(Monomial{2, 0}, 1);
    f.add_term(Monomial{0, 1}, 1);
    f.add_term(Monomial{1, 1}, 1);
    CHECK(f.to_string() == "x1^2 + x1*x2 + x2 + 1");
}

TEST_CASE("monomials_of_degree is complete and grevlex descending") {
    auto ms = monomials_of_degree(3, 4);
    CHECK(ms.size() == 15);  // C(4+2, 2)
    GrevlexBefore before;
    std::set<Monomial> seen;
    for (size_t i = 0; i < ms.size(); ++i) {
        uint32_t total = 0;
        for (auto e : ms[i]) total += e;
        CHECK(total == 4);
        CHECK(seen.insert(ms[i]).second);
        if (i + 1 < ms.size()) CHECK(before(ms[i], ms[i + 1]));
    }
}

TEST_CASE("evaluate distributes over product and sum") {
    std::mt19937 rng(99);
    const FiniteField& F = make_field_named("3^2");
    std::uniform_int_distribution<uint32_t> pick(0, F.size() - 1);
    for (int trial = 0; trial < 40; ++trial) {
        auto f = random_poly(F, 3, rng);
        auto g = random_poly(F, 3, rng);
        std::vector<FieldElement> v = {F.element(pick(rng)), F.element(pick(rng)),
                                       F.element(pick(rng))};
        CHECK((f * g).evaluate(v) == f.evaluate(v) * g.evaluate(v));
        CHECK((f + g).evaluate(v) == f.evaluate(v) + g.evaluate(v));
        uint32_t codes[3] = {v[0].code(), v[1].code(), v[2].code()};
        CHECK(f.evaluate_codes(codes) == f.evaluate(v).code());
    }
}

TEST_CASE("substitute_linear composes contravariantly") {
    // substitute(f, L) evaluates f after the variable change x_i -> sum L[i][j] x_j,
    // so chaining two changes multiplies the matrices: sub(sub(f, A), B) = sub(f, A*B).
    std::mt19937 rng(4242);
    const FiniteField& F = make_field_named("2^2");
    for (int trial = 0; trial < 40; ++trial) {
        auto f = random_poly(F, 3, rng, 5, 2);
        Matrix A = random_invertible(F, 3, rng);
        Matrix B = random_invertible(F, 3, rng);
        CHECK(f.substitute_linear(A).substitute_linear(B) == f.substitute_linear(A * B));
    }
}

TEST_CASE("substitute_linear agrees with pointwise evaluation") {
    std::mt19937 rng(555);
    const FiniteField& F = make_field_named("3^1");
    std::uniform_int_distribution<uint32_t> pick(0, F.size() - 1);
    for (int trial = 0; trial < 40; ++trial) {
        auto f = random_poly(F, 2, rng, 5, 2);
        Matrix L = random_invertible(F, 2, rng);
        auto g = f.substitute_linear(L);
        for (uint32_t a = 0; a < 3; ++a)
            for (uint32_t b = 0; b < 3; ++b) {
                // x_i -> sum_j L[i][j] x_j, so g(v) = f(w) with w_i = row_i(L)·v
                uint32_t v[2] = {a, b};
                uint32_t w[2];
                for (uint32_t i = 0; i < 2; ++i) {
                    w[i] = 0;
                    for (uint32_t j = 0; j < 2; ++j)
                        w[i] = F.add(w[i], F.mul(L.at(i, j), v[j]));
                }
                CHECK(g.evaluate_codes(v) == f.evaluate_codes(w));
            }
    }
}

TEST_CASE("substitute_linear by the identity is the identity") {
    std::mt19937 rng(7);
    const FiniteField& F = make_field_named("5^1");
    for (int trial = 0; trial < 20; ++trial) {
        auto f = random_poly(F, 4, rng);
        CHECK(f.substitute_linear(Matrix::identity(F, 4)) == f);
    }
}

TEST_CASE("filter_terms keeps exactly the matching terms") {
    const FiniteField& F = make_field_named("2^1");
    // f = x1^2*x2 + x1 + x2*x3 + x3
    Polynomial f(F, 3);
    f.add_term(Monomial{2, 1, 0}, 1);
    f.add_term(Monomial{1, 0, 0}, 1);
    f.add_term(Monomial{0, 1, 1}, 1);
    f.add_term(Monomial{0, 0, 1}, 1);

    auto with_x1 = f.filter_terms({TermConstraint::positive(0)});
    CHECK(with_x1.to_string() == "x1^2*x2 + x1");

    auto no_x2 = f.filter_terms({TermConstraint::zero(1)});
    CHECK(no_x2.to_string() == "x1 + x3");

    auto both = f.filter_terms({TermConstraint::positive(2), TermConstraint::zero(0)});
    CHECK(both.to_string() == "x2*x3 + x3");

    CHECK(f.filter_terms({}) == f);
}

TEST_CASE("to_string/parse round-trips random polynomials") {
    std::mt19937 rng(31337);
    for (const char* name : {"2^1", "2^2", "3^2", "5^1", "7^1"}) {
        const FiniteField& F = make_field_named(name);
        for (int trial = 0; trial < 50; ++trial) {
            auto f = random_poly(F, 4, rng);
            CHECK(Polynomial::parse(F, 4, f.to_string()) == f);
        }
    }
}

TEST_CASE("parse accepts the documented grammar") {
    const FiniteField& F = make_field_named("2^2");
    auto f = Polynomial::parse(F, 3, "(t+1)*x1^2*x3 + x2 + t");
    CHECK(f.coefficient(Monomial{2, 0, 1}) == F.parse("t+1"));
    CHECK(f.coefficient(Monomial{0, 1, 0}) == F.one());
    CHECK(f.coefficient(Monomial{0, 0, 0}) == F.parse("t"));
    CHECK(Polynomial::parse(F, 3, " x1 * x2 ") == Polynomial::parse(F, 3, "x1*x2"));
    CHECK(Polynomial::parse(F, 3, "0").is_zero());
    // like terms merge; characteristic 2 cancels pairs
    CHECK(Polynomial::parse(F, 3, "x1 + x1").is_zero());
}

TEST_CASE("parse rejects junk") {
    const FiniteField& F = make_field_named("2^2");
    CHECK_THROWS_AS((void)Polynomial::parse(F, 2, "x3"), std::invalid_argument);   // var range
    CHECK_THROWS_AS((void)Polynomial::parse(F, 2, "x0"), std::invalid_argument);
    CHECK_THROWS_AS((void)Polynomial::parse(F, 2, "x1^"), std::invalid_argument);
    CHECK_THROWS_AS((void)Polynomial::parse(F, 2, "y1"), std::invalid_argument);
    CHECK_THROWS_AS((void)Polynomial::parse(F, 2, ""), std::invalid_argument);
    CHECK_THROWS_AS((void)Polynomial::parse(F, 2, "x1 +"), std::invalid_argument);
}

TEST_CASE("mixed-field arithmetic throws") {
    const FiniteField& F4 = make_field_named("2^2");
    const FiniteField& F9 = make_field_named("3^2");
    auto f = Polynomial::variable(F4, 2, 1);
    auto g = Polynomial::variable(F9, 2, 1);
    CHECK_THROWS_AS((void)(f + g), std::invalid_argument);
    CHECK_THROWS_AS((void)(f * g), std::invalid_argument);
}

TEST_CASE("add_term merges and drops zeros") {
    const FiniteField& F = make_field_named("3^1");
    Polynomial f(F, 2);
    f.add_term(Monomial{1, 1}, 1);
    f.add_term(Monomial{1, 1}, 2);  // 1 + 2 = 0 mod 3
    CHECK(f.is_zero());
    f.add_term(Monomial{2, 0}, 2);
    CHECK(f.term_count() == 1);
}
