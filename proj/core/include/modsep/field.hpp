#pragma once

// Exact arithmetic in finite fields F_{p^k} at desk scale (p^k <= 2^16 by
// default).  Fields are interned: make_field(p, k) returns a reference to a
// canonical immutable object, so elements can carry a plain pointer and field
// identity is pointer identity.
//
// Representation: an element is the integer code  c_0 + c_1*p + ... +
// c_{k-1}*p^{k-1}  of its coefficient vector with respect to the power basis
// of t in F_p[t]/(modulus).  The modulus is the lexicographically least monic
// irreducible polynomial of degree k over F_p, coefficients compared
// low-degree-first; enumeration order of the field is code order, i.e.
// F_4 -> [0, 1, t, t+1].
//
// Multiplicative structure is table-driven (discrete log against a fixed
// generator), so mul/div/inv/pow are O(1) after construction.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace modsep {

class FiniteField;

// Value handle for one field element.  Arithmetic between elements of
// different fields throws std::invalid_argument.
class FieldElement {
public:
    FieldElement() = default;
    FieldElement(const FiniteField& field, uint32_t code);

    const FiniteField& field() const;
    uint32_t code() const { return code_; }
    bool is_zero() const { return code_ == 0; }

    FieldElement operator+(const FieldElement& o) const;
    FieldElement operator-(const FieldElement& o) const;
    FieldElement operator*(const FieldElement& o) const;
    FieldElement operator/(const FieldElement& o) const;  // throws on zero divisor
    FieldElement operator-() const;
    FieldElement inv() const;                              // throws on zero
    FieldElement pow(uint64_t e) const;

    bool operator==(const FieldElement& o) const;
    bool operator!=(const FieldElement& o) const { return !(*this == o); }

    // Polynomial expression in t, e.g. "0", "1", "t", "t+1", "2*t+1".
    std::string to_string() const;

private:
    const FiniteField* field_ = nullptr;
    uint32_t code_ = 0;
};

class FiniteField {
public:
    // Interned accessor; throws std::invalid_argument for non-prime p, k < 1,
    // or p^k beyond the desk-scale cap.
    static const FiniteField& get(uint32_t p, uint32_t k);

    static constexpr uint64_t max_size = uint64_t{1} << 16;

    uint32_t characteristic() const { return p_; }
    uint32_t degree() const { return k_; }
    uint32_t size() const { return q_; }
    std::string name() const;  // "p^k"

    // Modulus coefficients c_0..c_k (monic, c_k = 1).  For k = 1 this is t,
    // i.e. {0, 1}.
    const std::vector<uint32_t>& modulus() const { return modulus_; }

    FieldElement zero() const { return FieldElement(*this, 0); }
    FieldElement one() const { return FieldElement(*this, one_code_); }
    FieldElement element(uint32_t code) const;
    // Image of an integer under F_p -> F_{p^k}.
    FieldElement from_int(uint64_t v) const { return element(v % p_); }

    // All q elements in enumeration (= code) order, zero first.
    std::vector<FieldElement> elements() const;

    // First element in enumeration order of multiplicative order exactly m;
    // throws std::domain_error when m does not divide q - 1 (the caller must
    // enlarge k).
    FieldElement primitive_root_of_unity(uint32_t m) const;

    // Inverse of to_string; accepts the same grammar, spaces allowed.
    FieldElement parse(std::string_view text) const;

    // Code-level arithmetic.  No field checks: callers that mix fields get
    // undefined values, so FieldElement is the safe public route.
    uint32_t add(uint32_t a, uint32_t b) const;
    uint32_t sub(uint32_t a, uint32_t b) const { return add(a, neg(b)); }
    uint32_t neg(uint32_t a) const { return neg_[a]; }
    uint32_t mul(uint32_t a, uint32_t b) const {
        if (a == 0 || b == 0) return 0;
        uint32_t s = log_[a] + log_[b];
        if (s >= q_ - 1) s -= q_ - 1;
        return exp_[s];
    }
    uint32_t inv_code(uint32_t a) const;
    uint32_t div(uint32_t a, uint32_t b) const { return mul(a, inv_code(b)); }
    uint32_t pow_code(uint32_t a, uint64_t e) const;

    std::string code_to_string(uint32_t code) const;

    FiniteField(const FiniteField&) = delete;
    FiniteField& operator=(const FiniteField&) = delete;

private:
    FiniteField(uint32_t p, uint32_t k);

    std::vector<uint32_t> code_digits(uint32_t code) const;
    uint32_t digits_code(const std::vector<uint32_t>& digits) const;

    uint32_t p_ = 0, k_ = 0, q_ = 0;
    uint32_t one_code_ = 1;
    std::vector<uint32_t> modulus_;      // c_0..c_k
    std::vector<uint32_t> exp_, log_;    // discrete log tables
    std::vector<uint32_t> neg_;
    std::vector<uint32_t> add_table_;    // q*q, only for small odd extensions
    bool use_add_table_ = false;
};

// Spec-facing constructor name.
inline const FiniteField& make_field(uint32_t p, uint32_t k) {
    return FiniteField::get(p, k);
}

// Parses "p^k" (or bare "p" as k = 1).
const FiniteField& make_field_named(std::string_view name);

// Matrix over a finite field, row-major codes.  Row i holds the coefficients
// of the image of the i-th basis vector / variable, so for dual matrices
// g.x_i = sum_j M[i][j] x_j.
class Matrix {
public:
    Matrix() = default;
    Matrix(const FiniteField& field, uint32_t rows, uint32_t cols);
    static Matrix identity(const FiniteField& field, uint32_t n);

    const FiniteField& field() const;
    uint32_t rows() const { return rows_; }
    uint32_t cols() const { return cols_; }

    uint32_t& at(uint32_t r, uint32_t c) { return codes_[r * cols_ + c]; }
    uint32_t at(uint32_t r, uint32_t c) const { return codes_[r * cols_ + c]; }
    FieldElement entry(uint32_t r, uint32_t c) const;
    void set(uint32_t r, uint32_t c, const FieldElement& v);

    Matrix operator*(const Matrix& o) const;
    bool operator==(const Matrix& o) const;
    bool operator!=(const Matrix& o) const { return !(*this == o); }

    bool is_invertible() const;

    // out[i] = sum_j M[i][j] * in[j]; in/out are element codes of length
    // cols()/rows().
    void apply_codes(const uint32_t* in, uint32_t* out) const;

private:
    const FiniteField* field_ = nullptr;
    uint32_t rows_ = 0, cols_ = 0;
    std::vector<uint32_t> codes_;
};

}  // namespace modsep
