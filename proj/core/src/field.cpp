#include "modsep/field.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace modsep {
namespace {

bool is_prime(uint32_t n) {
    if (n < 2) return false;
    for (uint32_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::vector<uint32_t> prime_factors(uint32_t n) {
    std::vector<uint32_t> out;
    for (uint32_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

// Dense coefficient vectors over F_p, used only while bootstrapping a field
// (modulus search, generator search).  Low index = low degree.
using PolyFp = std::vector<uint32_t>;

void trim(PolyFp& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

PolyFp poly_mul(const PolyFp& a, const PolyFp& b, uint32_t p) {
    if (a.empty() || b.empty()) return {};
    PolyFp c(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            c[i + j] = (c[i + j] + uint64_t{a[i]} * b[j]) % p;
    trim(c);
    return c;
}

// a mod b, b monic.
PolyFp poly_mod(PolyFp a, const PolyFp& b, uint32_t p) {
    trim(a);
    while (a.size() >= b.size()) {
        uint32_t lead = a.back();
        size_t shift = a.size() - b.size();
        for (size_t i = 0; i < b.size(); ++i) {
            uint64_t sub = uint64_t{lead} * b[i] % p;
            a[shift + i] = (a[shift + i] + p - sub) % p;
        }
        trim(a);
    }
    return a;
}

bool poly_divides(const PolyFp& d, const PolyFp& a, uint32_t p) {
    return poly_mod(a, d, p).empty();
}

bool is_irreducible(const PolyFp& f, uint32_t p) {
    uint32_t k = static_cast<uint32_t>(f.size()) - 1;
    if (k == 1) return true;
    // Root test covers all degree-1 factors.
    for (uint32_t x = 0; x < p; ++x) {
        uint64_t v = 0, xp = 1;
        for (uint32_t i = 0; i <= k; ++i) {
            v = (v + f[i] * xp) % p;
            xp = xp * x % p;
        }
        if (v == 0) return false;
    }
    // Trial division by monic polynomials of degree 2..k/2.  Fine at desk
    // scale: p^(k/2) stays small under the p^k <= 2^16 cap.
    for (uint32_t d = 2; 2 * d <= k; ++d) {
        uint64_t count = 1;
        for (uint32_t i = 0; i < d; ++i) count *= p;
        for (uint64_t code = 0; code < count; ++code) {
            PolyFp g(d + 1, 0);
            uint64_t c = code;
            for (uint32_t i = 0; i < d; ++i) {
                g[i] = c % p;
                c /= p;
            }
            g[d] = 1;
            if (poly_divides(g, f, p)) return false;
        }
    }
    return true;
}

}  // namespace

// ---------------------------------------------------------------------------
// FiniteField

const FiniteField& FiniteField::get(uint32_t p, uint32_t k) {
    static std::mutex mu;
    static std::map<std::pair<uint32_t, uint32_t>, std::unique_ptr<FiniteField>> registry;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(p, k);
    auto it = registry.find(key);
    if (it == registry.end()) {
        it = registry.emplace(key, std::unique_ptr<FiniteField>(new FiniteField(p, k))).first;
    }
    return *it->second;
}

FiniteField::FiniteField(uint32_t p, uint32_t k) : p_(p), k_(k) {
    if (!is_prime(p)) throw std::invalid_argument("make_field: p = " + std::to_string(p) + " is not prime");
    if (k < 1) throw std::invalid_argument("make_field: k must be >= 1");
    uint64_t q = 1;
    for (uint32_t i = 0; i < k; ++i) {
        q *= p;
        if (q > max_size)
            throw std::invalid_argument("make_field: p^k exceeds the desk-scale cap 2^16");
    }
    q_ = static_cast<uint32_t>(q);

    // Lexicographically least monic irreducible modulus, coefficients
    // compared low-degree-first; the scan order below is exactly that order.
    if (k == 1) {
        modulus_ = {0, 1};  // t
    } else {
        for (uint32_t code = 0;; ++code) {
            if (code >= q_) throw std::logic_error("modulus search exhausted");
            PolyFp f(k + 1, 0);
            uint32_t c = code;
            for (uint32_t i = 0; i < k; ++i) {
                f[i] = c % p;
                c /= p;
            }
            f[k] = 1;
            if (is_irreducible(f, p)) {
                modulus_ = f;
                break;
            }
        }
    }

    neg_.resize(q_);
    for (uint32_t a = 0; a < q_; ++a) {
        auto d = code_digits(a);
        for (auto& x : d) x = (p_ - x) % p_;
        neg_[a] = digits_code(d);
    }

    if (p_ != 2 && k_ > 1 && q_ <= 1024) {
        use_add_table_ = true;
        add_table_.resize(size_t{q_} * q_);
        for (uint32_t a = 0; a < q_; ++a) {
            auto da = code_digits(a);
            for (uint32_t b = 0; b < q_; ++b) {
                auto db = code_digits(b);
                std::vector<uint32_t> s(k_);
                for (uint32_t i = 0; i < k_; ++i) s[i] = (da[i] + db[i]) % p_;
                add_table_[size_t{a} * q_ + b] = digits_code(s);
            }
        }
    }

    // Bootstrap multiplication (coefficient vectors mod modulus) to find a
    // generator of the multiplicative group and fill the log tables.
    auto slow_mul = [&](uint32_t a, uint32_t b) -> uint32_t {
        PolyFp pa = code_digits(a), pb = code_digits(b);
        trim(pa);
        trim(pb);
        PolyFp prod = poly_mod(poly_mul(pa, pb, p_), modulus_, p_);
        prod.resize(k_, 0);
        return digits_code(prod);
    };
    auto slow_pow = [&](uint32_t a, uint64_t e) -> uint32_t {
        uint32_t r = 1, base = a;
        while (e) {
            if (e & 1) r = slow_mul(r, base);
            base = slow_mul(base, base);
            e >>= 1;
        }
        return r;
    };

    uint32_t order = q_ - 1;
    auto factors = prime_factors(order);
    uint32_t gen = 0;
    for (uint32_t a = 1; a < q_; ++a) {
        bool primitive = true;
        for (uint32_t r : factors) {
            if (slow_pow(a, order / r) == 1) {
                primitive = false;
                break;
            }
        }
        if (primitive) {
            gen = a;
            break;
        }
    }
    if (gen == 0 && order > 1) throw std::logic_error("no multiplicative generator found");
    if (order == 1) gen = 1;

    exp_.resize(order);
    log_.assign(q_, 0);
    uint32_t cur = 1;
    for (uint32_t i = 0; i < order; ++i) {
        exp_[i] = cur;
        log_[cur] = i;
        cur = slow_mul(cur, gen);
    }
}

std::vector<uint32_t> FiniteField::code_digits(uint32_t code) const {
    std::vector<uint32_t> d(k_);
    for (uint32_t i = 0; i < k_; ++i) {
        d[i] = code % p_;
        code /= p_;
    }
    return d;
}

uint32_t FiniteField::digits_code(const std::vector<uint32_t>& digits) const {
    uint32_t code = 0;
    for (uint32_t i = k_; i-- > 0;) code = code * p_ + digits[i];
    return code;
}

std::string FiniteField::name() const {
    return std::to_string(p_) + "^" + std::to_string(k_);
}

FieldElement FiniteField::element(uint32_t code) const {
    if (code >= q_) throw std::invalid_argument("element code out of range for " + name());
    return FieldElement(*this, code);
}

std::vector<FieldElement> FiniteField::elements() const {
    std::vector<FieldElement> out;
    out.reserve(q_);
    for (uint32_t c = 0; c < q_; ++c) out.push_back(FieldElement(*this, c));
    return out;
}

uint32_t FiniteField::add(uint32_t a, uint32_t b) const {
    if (p_ == 2) return a ^ b;
    if (k_ == 1) {
        uint32_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    if (use_add_table_) return add_table_[size_t{a} * q_ + b];
    uint32_t code = 0, pw = 1;
    for (uint32_t i = 0; i < k_; ++i) {
        uint32_t da = a % p_, db = b % p_;
        a /= p_;
        b /= p_;
        uint32_t s = da + db;
        if (s >= p_) s -= p_;
        code += s * pw;
        pw *= p_;
    }
    return code;
}

uint32_t FiniteField::inv_code(uint32_t a) const {
    if (a == 0) throw std::domain_error("division by zero in " + name());
    uint32_t l = log_[a];
    return exp_[(q_ - 1 - l) % (q_ - 1)];
}

uint32_t FiniteField::pow_code(uint32_t a, uint64_t e) const {
    if (a == 0) return e == 0 ? one_code_ : 0;
    if (q_ == 2) return 1;
    uint64_t l = (uint64_t{log_[a]} * (e % (q_ - 1))) % (q_ - 1);
    return exp_[l];
}

FieldElement FiniteField::primitive_root_of_unity(uint32_t m) const {
    if (m == 0) throw std::invalid_argument("primitive_root_of_unity: m must be >= 1");
    if ((q_ - 1) % m != 0)
        throw std::domain_error("no primitive " + std::to_string(m) + "-th root of unity in " + name() +
                                ": m does not divide " + std::to_string(q_ - 1));
    auto factors = prime_factors(m);
    for (uint32_t a = 1; a < q_; ++a) {
        if (pow_code(a, m) != one_code_) continue;
        bool exact = true;
        for (uint32_t r : factors) {
            if (pow_code(a, m / r) == one_code_) {
                exact = false;
                break;
            }
        }
        if (exact) return FieldElement(*this, a);
    }
    throw std::logic_error("root-of-unity scan exhausted");  // unreachable
}

std::string FiniteField::code_to_string(uint32_t code) const {
    if (code == 0) return "0";
    auto d = code_digits(code);
    std::string out;
    for (uint32_t i = k_; i-- > 0;) {
        if (d[i] == 0) continue;
        if (!out.empty()) out += "+";
        if (i == 0) {
            out += std::to_string(d[i]);
        } else {
            if (d[i] != 1) out += std::to_string(d[i]) + "*";
            out += (i == 1) ? "t" : "t^" + std::to_string(i);
        }
    }
    return out;
}

FieldElement FiniteField::parse(std::string_view text) const {
    size_t pos = 0;
    auto skip_ws = [&] {
        while (pos < text.size() && text[pos] == ' ') ++pos;
    };
    auto parse_uint = [&]() -> uint64_t {
        size_t start = pos;
        uint64_t v = 0;
        while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
            v = v * 10 + (text[pos] - '0');
            ++pos;
        }
        if (pos == start) throw std::invalid_argument("bad field element: '" + std::string(text) + "'");
        return v;
    };

    uint32_t acc = 0;
    bool first = true;
    while (true) {
        skip_ws();
        if (!first) {
            if (pos >= text.size()) break;
            if (text[pos] != '+') throw std::invalid_argument("bad field element: '" + std::string(text) + "'");
            ++pos;
            skip_ws();
        }
        first = false;
        // term: DIGITS ['*' t-part] | t-part
        uint32_t coeff = 1;
        bool have_coeff = false;
        if (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
            coeff = static_cast<uint32_t>(parse_uint() % p_);
            have_coeff = true;
            skip_ws();
            if (pos < text.size() && text[pos] == '*') {
                ++pos;
                skip_ws();
            } else {
                acc = add(acc, coeff);
                skip_ws();
                if (pos >= text.size()) break;
                continue;
            }
        }
        if (pos >= text.size() || text[pos] != 't')
            throw std::invalid_argument("bad field element: '" + std::string(text) + "'");
        ++pos;
        uint64_t e = 1;
        if (pos < text.size() && text[pos] == '^') {
            ++pos;
            e = parse_uint();
        }
        (void)have_coeff;
        if (k_ == 1 && e >= 1)
            throw std::invalid_argument("'t' is not an element of the prime field " + name());
        // coeff * t^e, reduced through the power table.
        uint32_t t_code = p_;  // code of t
        acc = add(acc, mul(coeff, pow_code(t_code, e)));
        skip_ws();
        if (pos >= text.size()) break;
    }
    return FieldElement(*this, acc);
}

const FiniteField& make_field_named(std::string_view name) {
    size_t caret = name.find('^');
    auto to_u32 = [&](std::string_view s) -> uint32_t {
        if (s.empty()) throw std::invalid_argument("bad field name: '" + std::string(name) + "'");
        uint64_t v = 0;
        for (char c : s) {
            if (c < '0' || c > '9') throw std::invalid_argument("bad field name: '" + std::string(name) + "'");
            v = v * 10 + (c - '0');
            if (v > FiniteField::max_size) throw std::invalid_argument("bad field name: '" + std::string(name) + "'");
        }
        return static_cast<uint32_t>(v);
    };
    if (caret == std::string_view::npos) return make_field(to_u32(name), 1);
    return make_field(to_u32(name.substr(0, caret)), to_u32(name.substr(caret + 1)));
}

// ---------------------------------------------------------------------------
// FieldElement

FieldElement::FieldElement(const FiniteField& field, uint32_t code) : field_(&field), code_(code) {
    if (code >= field.size()) throw std::invalid_argument("element code out of range for " + field.name());
}

const FiniteField& FieldElement::field() const {
    if (!field_) throw std::logic_error("use of default-constructed FieldElement");
    return *field_;
}

namespace {
const FiniteField& same_field(const FieldElement& a, const FieldElement& b) {
    if (&a.field() != &b.field())
        throw std::invalid_argument("mismatched fields: " + a.field().name() + " vs " + b.field().name());
    return a.field();
}
}  // namespace

FieldElement FieldElement::operator+(const FieldElement& o) const {
    const FiniteField& f = same_field(*this, o);
    return FieldElement(f, f.add(code_, o.code_));
}
FieldElement FieldElement::operator-(const FieldElement& o) const {
    const FiniteField& f = same_field(*this, o);
    return FieldElement(f, f.sub(code_, o.code_));
}
FieldElement FieldElement::operator*(const FieldElement& o) const {
    const FiniteField& f = same_field(*this, o);
    return FieldElement(f, f.mul(code_, o.code_));
}
FieldElement FieldElement::operator/(const FieldElement& o) const {
    const FiniteField& f = same_field(*this, o);
    return FieldElement(f, f.div(code_, o.code_));
}
FieldElement FieldElement::operator-() const { return FieldElement(field(), field().neg(code_)); }
FieldElement FieldElement::inv() const { return FieldElement(field(), field().inv_code(code_)); }
FieldElement FieldElement::pow(uint64_t e) const { return FieldElement(field(), field().pow_code(code_, e)); }

bool FieldElement::operator==(const FieldElement& o) const {
    return field_ == o.field_ && code_ == o.code_;
}

std::string FieldElement::to_string() const { return field().code_to_string(code_); }

// ---------------------------------------------------------------------------
// Matrix

Matrix::Matrix(const FiniteField& field, uint32_t rows, uint32_t cols)
    : field_(&field), rows_(rows), cols_(cols), codes_(size_t{rows} * cols, 0) {}

Matrix Matrix::identity(const FiniteField& field, uint32_t n) {
    Matrix m(field, n, n);
    for (uint32_t i = 0; i < n; ++i) m.at(i, i) = field.one().code();
    return m;
}

const FiniteField& Matrix::field() const {
    if (!field_) throw std::logic_error("use of default-constructed Matrix");
    return *field_;
}

FieldElement Matrix::entry(uint32_t r, uint32_t c) const { return FieldElement(field(), at(r, c)); }

void Matrix::set(uint32_t r, uint32_t c, const FieldElement& v) {
    if (&v.field() != field_) throw std::invalid_argument("mismatched fields in Matrix::set");
    at(r, c) = v.code();
}

Matrix Matrix::operator*(const Matrix& o) const {
    if (field_ != o.field_) throw std::invalid_argument("mismatched fields in Matrix product");
    if (cols_ != o.rows_) throw std::invalid_argument("shape mismatch in Matrix product");
    Matrix out(*field_, rows_, o.cols_);
    for (uint32_t i = 0; i < rows_; ++i)
        for (uint32_t k = 0; k < cols_; ++k) {
            uint32_t aik = at(i, k);
            if (aik == 0) continue;
            for (uint32_t j = 0; j < o.cols_; ++j) {
                uint32_t prod = field_->mul(aik, o.at(k, j));
                out.at(i, j) = field_->add(out.at(i, j), prod);
            }
        }
    return out;
}

bool Matrix::operator==(const Matrix& o) const {
    return field_ == o.field_ && rows_ == o.rows_ && cols_ == o.cols_ && codes_ == o.codes_;
}

bool Matrix::is_invertible() const {
    if (rows_ != cols_) return false;
    Matrix m = *this;
    uint32_t n = rows_;
    for (uint32_t col = 0; col < n; ++col) {
        uint32_t pivot = n;
        for (uint32_t r = col; r < n; ++r)
            if (m.at(r, col) != 0) {
                pivot = r;
                break;
            }
        if (pivot == n) return false;
        if (pivot != col)
            for (uint32_t c = 0; c < n; ++c) std::swap(m.at(pivot, c), m.at(col, c));
        uint32_t inv = field_->inv_code(m.at(col, col));
        for (uint32_t c = 0; c < n; ++c) m.at(col, c) = field_->mul(m.at(col, c), inv);
        for (uint32_t r = 0; r < n; ++r) {
            if (r == col || m.at(r, col) == 0) continue;
            uint32_t f = m.at(r, col);
            for (uint32_t c = 0; c < n; ++c)
                m.at(r, c) = field_->sub(m.at(r, c), field_->mul(f, m.at(col, c)));
        }
    }
    return true;
}

void Matrix::apply_codes(const uint32_t* in, uint32_t* out) const {
    for (uint32_t i = 0; i < rows_; ++i) {
        uint32_t acc = 0;
        const uint32_t* row = codes_.data() + size_t{i} * cols_;
        for (uint32_t j = 0; j < cols_; ++j) {
            if (row[j] == 0 || in[j] == 0) continue;
            acc = field_->add(acc, field_->mul(row[j], in[j]));
        }
        out[i] = acc;
    }
}

}  // namespace modsep
