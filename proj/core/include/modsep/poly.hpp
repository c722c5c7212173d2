#pragma once

// Sparse multivariate polynomials over a finite field.  Terms are kept in a
// map ordered by graded reverse-lexicographic order, largest term first, so
// iteration order equals canonical printing order and all operations are
// deterministic.  Variables are x1..xN (1-based in text, 0-based in exponent
// vectors); zero coefficients are never stored.

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "modsep/field.hpp"

namespace modsep {

using Monomial = std::vector<uint16_t>;  // exponent per variable

// true iff a comes strictly before b, i.e. a > b in grevlex: higher total
// degree first; at equal degree the rightmost differing exponent decides,
// smaller entry winning.
struct GrevlexBefore {
    bool operator()(const Monomial& a, const Monomial& b) const;
};

// Term filter used to realize the paper's "mod R"-style truncations: keep
// only terms whose exponent at `var` is zero / at least one.
struct TermConstraint {
    enum class Kind { exponent_zero, exponent_positive };
    uint32_t var = 0;  // 0-based
    Kind kind = Kind::exponent_zero;

    static TermConstraint zero(uint32_t var) { return {var, Kind::exponent_zero}; }
    static TermConstraint positive(uint32_t var) { return {var, Kind::exponent_positive}; }
};

class Polynomial {
public:
    using TermMap = std::map<Monomial, uint32_t, GrevlexBefore>;

    Polynomial() = default;
    Polynomial(const FiniteField& field, uint32_t nvars);  // zero polynomial

    static Polynomial constant(const FiniteField& field, uint32_t nvars, const FieldElement& c);
    // 1-based variable index, matching the printed names x1..xN.
    static Polynomial variable(const FiniteField& field, uint32_t nvars, uint32_t index);
    static Polynomial term(const FiniteField& field, uint32_t nvars, const Monomial& m,
                           const FieldElement& c);

    const FiniteField& field() const;
    uint32_t nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }
    uint32_t degree() const;  // max total degree; 0 for the zero polynomial
    const TermMap& terms() const { return terms_; }

    FieldElement coefficient(const Monomial& m) const;

    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial operator-() const;
    Polynomial pow(uint32_t e) const;

    bool operator==(const Polynomial& o) const;
    bool operator!=(const Polynomial& o) const { return !(*this == o); }

    // Applies x_i -> sum_j L[i][j] x_j simultaneously; L is nvars x nvars.
    Polynomial substitute_linear(const Matrix& L) const;

    FieldElement evaluate(std::span<const FieldElement> point) const;
    uint32_t evaluate_codes(const uint32_t* point) const;

    // Keeps exactly the terms satisfying every constraint.
    Polynomial filter_terms(const std::vector<TermConstraint>& constraints) const;

    // Canonical text: grevlex-descending terms joined by " + ", coefficients
    // in the field-element grammar (parenthesized when they contain '+'),
    // e.g. "(t+1)*x1^2*x3 + x2 + t".
    std::string to_string() const;
    static Polynomial parse(const FiniteField& field, uint32_t nvars, std::string_view text);

    void add_term(const Monomial& m, uint32_t coeff_code);  // merges, drops zero

private:
    const FiniteField* field_ = nullptr;
    uint32_t nvars_ = 0;
    TermMap terms_;
};

// All monomials in nvars variables of total degree exactly d, grevlex
// descending (deterministic candidate order for searches).
std::vector<Monomial> monomials_of_degree(uint32_t nvars, uint32_t d);

}  // namespace modsep
