#include "modsep/poly.hpp"

#include <algorithm>
#include <stdexcept>

namespace modsep {

bool GrevlexBefore::operator()(const Monomial& a, const Monomial& b) const {
    uint32_t da = 0, db = 0;
    for (uint16_t e : a) da += e;
    for (uint16_t e : b) db += e;
    if (da != db) return da > db;
    // Equal degree: a > b iff the rightmost nonzero entry of a - b is
    // negative, i.e. at the rightmost differing position a has the smaller
    // exponent.
    size_t i = a.size();
    while (i-- > 0) {
        if (a[i] != b[i]) return a[i] < b[i];
    }
    return false;  // equal
}

Polynomial::Polynomial(const FiniteField& field, uint32_t nvars) : field_(&field), nvars_(nvars) {}

const FiniteField& Polynomial::field() const {
    if (!field_) throw std::logic_error("use of default-constructed Polynomial");
    return *field_;
}

Polynomial Polynomial::constant(const FiniteField& field, uint32_t nvars, const FieldElement& c) {
    if (&c.field() != &field) throw std::invalid_argument("mismatched fields in Polynomial::constant");
    Polynomial p(field, nvars);
    p.add_term(Monomial(nvars, 0), c.code());
    return p;
}

Polynomial Polynomial::variable(const FiniteField& field, uint32_t nvars, uint32_t index) {
    if (index < 1 || index > nvars)
        throw std::invalid_argument("variable index x" + std::to_string(index) + " out of range (nvars = " +
                                    std::to_string(nvars) + ")");
    Polynomial p(field, nvars);
    Monomial m(nvars, 0);
    m[index - 1] = 1;
    p.add_term(m, field.one().code());
    return p;
}

Polynomial Polynomial::term(const FiniteField& field, uint32_t nvars, const Monomial& m,
                            const FieldElement& c) {
    if (m.size() != nvars) throw std::invalid_argument("monomial length does not match nvars");
    if (&c.field() != &field) throw std::invalid_argument("mismatched fields in Polynomial::term");
    Polynomial p(field, nvars);
    p.add_term(m, c.code());
    return p;
}

void Polynomial::add_term(const Monomial& m, uint32_t coeff_code) {
    if (m.size() != nvars_) throw std::invalid_argument("monomial length does not match nvars");
    if (coeff_code == 0) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, coeff_code);
    } else {
        uint32_t s = field_->add(it->second, coeff_code);
        if (s == 0)
            terms_.erase(it);
        else
            it->second = s;
    }
}

uint32_t Polynomial::degree() const {
    uint32_t d = 0;
    for (const auto& [m, c] : terms_) {
        uint32_t t = 0;
        for (uint16_t e : m) t += e;
        d = std::max(d, t);
    }
    return d;
}

FieldElement Polynomial::coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return FieldElement(field(), it == terms_.end() ? 0 : it->second);
}

namespace {
const FiniteField& same_ring(const Polynomial& a, const Polynomial& b) {
    if (&a.field() != &b.field()) throw std::invalid_argument("mismatched fields in polynomial arithmetic");
    if (a.nvars() != b.nvars()) throw std::invalid_argument("mismatched variable counts in polynomial arithmetic");
    return a.field();
}
}  // namespace

Polynomial Polynomial::operator+(const Polynomial& o) const {
    same_ring(*this, o);
    Polynomial out = *this;
    for (const auto& [m, c] : o.terms_) out.add_term(m, c);
    return out;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
    same_ring(*this, o);
    Polynomial out = *this;
    for (const auto& [m, c] : o.terms_) out.add_term(m, field_->neg(c));
    return out;
}

Polynomial Polynomial::operator-() const {
    Polynomial out(field(), nvars_);
    for (const auto& [m, c] : terms_) out.terms_.emplace(m, field_->neg(c));
    return out;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
    const FiniteField& f = same_ring(*this, o);
    Polynomial out(f, nvars_);
    Monomial prod(nvars_);
    for (const auto& [ma, ca] : terms_) {
        for (const auto& [mb, cb] : o.terms_) {
            for (uint32_t i = 0; i < nvars_; ++i) prod[i] = static_cast<uint16_t>(ma[i] + mb[i]);
            out.add_term(prod, f.mul(ca, cb));
        }
    }
    return out;
}

Polynomial Polynomial::pow(uint32_t e) const {
    Polynomial result = Polynomial::constant(field(), nvars_, field().one());
    Polynomial base = *this;
    while (e) {
        if (e & 1) result = result * base;
        if (e >>= 1) base = base * base;
    }
    return result;
}

bool Polynomial::operator==(const Polynomial& o) const {
    return field_ == o.field_ && nvars_ == o.nvars_ && terms_ == o.terms_;
}

Polynomial Polynomial::substitute_linear(const Matrix& L) const {
    if (&L.field() != field_) throw std::invalid_argument("mismatched fields in substitute_linear");
    if (L.rows() != nvars_ || L.cols() != nvars_)
        throw std::invalid_argument("substitute_linear needs an nvars x nvars matrix");
    // Linear form for each variable, plus a memo of its powers.
    std::vector<Polynomial> forms;
    forms.reserve(nvars_);
    for (uint32_t i = 0; i < nvars_; ++i) {
        Polynomial form(*field_, nvars_);
        for (uint32_t j = 0; j < nvars_; ++j) {
            if (L.at(i, j) == 0) continue;
            Monomial m(nvars_, 0);
            m[j] = 1;
            form.add_term(m, L.at(i, j));
        }
        forms.push_back(std::move(form));
    }
    std::vector<std::vector<Polynomial>> powers(nvars_);  // powers[i][e] = forms[i]^e, filled lazily
    auto form_pow = [&](uint32_t i, uint16_t e) -> const Polynomial& {
        auto& memo = powers[i];
        if (memo.empty()) memo.push_back(Polynomial::constant(*field_, nvars_, field_->one()));
        while (memo.size() <= e) memo.push_back(memo.back() * forms[i]);
        return memo[e];
    };

    Polynomial out(*field_, nvars_);
    for (const auto& [m, c] : terms_) {
        Polynomial acc = Polynomial::constant(*field_, nvars_, FieldElement(*field_, c));
        for (uint32_t i = 0; i < nvars_; ++i)
            if (m[i] > 0) acc = acc * form_pow(i, m[i]);
        out = out + acc;
    }
    return out;
}

FieldElement Polynomial::evaluate(std::span<const FieldElement> point) const {
    if (point.size() != nvars_) throw std::invalid_argument("evaluate: point has wrong dimension");
    std::vector<uint32_t> codes(nvars_);
    for (uint32_t i = 0; i < nvars_; ++i) {
        if (&point[i].field() != field_) throw std::invalid_argument("evaluate: mismatched fields");
        codes[i] = point[i].code();
    }
    return FieldElement(field(), evaluate_codes(codes.data()));
}

uint32_t Polynomial::evaluate_codes(const uint32_t* point) const {
    uint32_t acc = 0;
    for (const auto& [m, c] : terms_) {
        uint32_t v = c;
        for (uint32_t i = 0; i < nvars_ && v != 0; ++i) {
            if (m[i] == 0) continue;
            v = field_->mul(v, field_->pow_code(point[i], m[i]));
        }
        acc = field_->add(acc, v);
    }
    return acc;
}

Polynomial Polynomial::filter_terms(const std::vector<TermConstraint>& constraints) const {
    for (const auto& c : constraints)
        if (c.var >= nvars_) throw std::invalid_argument("filter_terms: variable index out of range");
    Polynomial out(field(), nvars_);
    for (const auto& [m, c] : terms_) {
        bool keep = true;
        for (const auto& cons : constraints) {
            bool ok = cons.kind == TermConstraint::Kind::exponent_zero ? m[cons.var] == 0 : m[cons.var] >= 1;
            if (!ok) {
                keep = false;
                break;
            }
        }
        if (keep) out.terms_.emplace(m, c);
    }
    return out;
}

std::string Polynomial::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [m, c] : terms_) {
        if (!out.empty()) out += " + ";
        std::string coeff = field_->code_to_string(c);
        bool has_vars = false;
        for (uint16_t e : m)
            if (e) has_vars = true;
        std::string vars;
        for (uint32_t i = 0; i < nvars_; ++i) {
            if (m[i] == 0) continue;
            if (!vars.empty()) vars += "*";
            vars += "x" + std::to_string(i + 1);
            if (m[i] >= 2) vars += "^" + std::to_string(m[i]);
        }
        if (!has_vars) {
            out += coeff;  // bare constant sums re-parse to the same value
        } else if (coeff == "1") {
            out += vars;
        } else {
            if (coeff.find('+') != std::string::npos) coeff = "(" + coeff + ")";
            out += coeff + "*" + vars;
        }
    }
    return out;
}

Polynomial Polynomial::parse(const FiniteField& field, uint32_t nvars, std::string_view text) {
    size_t pos = 0;
    auto skip_ws = [&] {
        while (pos < text.size() && text[pos] == ' ') ++pos;
    };
    auto fail = [&]() -> void { throw std::invalid_argument("bad polynomial: '" + std::string(text) + "'"); };
    auto parse_uint = [&]() -> uint64_t {
        size_t start = pos;
        uint64_t v = 0;
        while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
            v = v * 10 + (text[pos] - '0');
            ++pos;
        }
        if (pos == start) fail();
        return v;
    };

    Polynomial out(field, nvars);
    skip_ws();
    if (pos >= text.size()) fail();
    while (true) {
        // one term: factors joined by '*'
        uint32_t coeff = field.one().code();
        Monomial m(nvars, 0);
        bool expect_factor = true;
        while (expect_factor) {
            skip_ws();
            if (pos >= text.size()) fail();
            char ch = text[pos];
            if (ch == '(') {
                ++pos;
                size_t depth = 1, start = pos;
                while (pos < text.size() && depth > 0) {
                    if (text[pos] == '(') ++depth;
                    if (text[pos] == ')') --depth;
                    ++pos;
                }
                if (depth != 0) fail();
                FieldElement e = field.parse(text.substr(start, pos - 1 - start));
                coeff = field.mul(coeff, e.code());
            } else if (ch == 't') {
                ++pos;
                uint64_t e = 1;
                if (pos < text.size() && text[pos] == '^') {
                    ++pos;
                    e = parse_uint();
                }
                FieldElement t = field.parse("t");  // rejects prime fields
                coeff = field.mul(coeff, t.pow(e).code());
            } else if (ch == 'x') {
                ++pos;
                uint64_t idx = parse_uint();
                if (idx < 1 || idx > nvars) fail();
                uint64_t e = 1;
                if (pos < text.size() && text[pos] == '^') {
                    ++pos;
                    e = parse_uint();
                }
                m[idx - 1] = static_cast<uint16_t>(m[idx - 1] + e);
            } else if (ch >= '0' && ch <= '9') {
                uint64_t v = parse_uint();
                coeff = field.mul(coeff, field.from_int(v).code());
            } else {
                fail();
            }
            skip_ws();
            if (pos < text.size() && text[pos] == '*') {
                ++pos;
                expect_factor = true;
            } else {
                expect_factor = false;
            }
        }
        out.add_term(m, coeff);
        skip_ws();
        if (pos >= text.size()) break;
        if (text[pos] != '+') fail();
        ++pos;
    }
    return out;
}

std::vector<Monomial> monomials_of_degree(uint32_t nvars, uint32_t d) {
    std::vector<Monomial> out;
    Monomial cur(nvars, 0);
    // Enumerate compositions of d into nvars parts, then sort grevlex-descending.
    auto rec = [&](auto&& self, uint32_t var, uint32_t remaining) -> void {
        if (var + 1 == nvars) {
            cur[var] = static_cast<uint16_t>(remaining);
            out.push_back(cur);
            return;
        }
        for (uint32_t e = 0; e <= remaining; ++e) {
            cur[var] = static_cast<uint16_t>(e);
            self(self, var + 1, remaining - e);
        }
        cur[var] = 0;
    };
    if (nvars == 0) return out;
    rec(rec, 0, d);
    std::sort(out.begin(), out.end(), GrevlexBefore{});
    return out;
}

}  // namespace modsep
