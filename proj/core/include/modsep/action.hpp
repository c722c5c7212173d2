#pragma once

// Finite group actions on polynomial rings.  A GroupAction stores, for every
// group element g, its dual matrix D_g acting on variables (g.x_i =
// sum_j D_g[i][j] x_j) together with the abstract multiplication table, which
// the builders derive from the group structure (matrices may repeat for
// non-faithful actions, so the table cannot be reconstructed from them).
//
// The point action is the unique one compatible with the variable action via
// (g.f)(v) = f(g^{-1}.v), i.e. g.v = D_{g^{-1}} v.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "modsep/field.hpp"
#include "modsep/poly.hpp"

namespace modsep {

using Point = std::vector<FieldElement>;

struct GroupElement {
    std::string label;  // word in the generators, identity = "1"
    Matrix dual;
};

// Validated set of element indices, closed and containing the identity.
struct Subgroup {
    std::vector<size_t> indices;
    size_t order() const { return indices.size(); }
};

class GroupAction {
public:
    // Validates: dual matrices are dim x dim and invertible, the identity has
    // the identity matrix, the table is a group table consistent with the
    // matrices (D_g * D_h = D_{g h}; the groups here are abelian so the
    // orientation is immaterial, but it is still checked), and the listed
    // generators generate every element.
    GroupAction(const FiniteField& field, uint32_t dim, std::vector<GroupElement> elements,
                std::vector<std::vector<size_t>> table, std::vector<size_t> generators);

    const FiniteField& field() const { return *field_; }
    uint32_t dim() const { return dim_; }
    size_t order() const { return elements_.size(); }
    const GroupElement& element(size_t i) const { return elements_[i]; }
    size_t identity() const { return identity_; }
    size_t multiply(size_t g, size_t h) const { return table_[g][h]; }
    size_t inverse(size_t g) const { return inverse_[g]; }
    const std::vector<size_t>& generators() const { return generators_; }

    // Subgroup helpers; subgroup() throws std::invalid_argument when the
    // indices are not closed or miss the identity.
    Subgroup subgroup(std::vector<size_t> indices) const;
    Subgroup generated_subgroup(size_t g) const;
    Subgroup full_subgroup() const;

    Polynomial act_poly(size_t g, const Polynomial& f) const;
    Point act_point(size_t g, const Point& v) const;
    void act_point_codes(size_t g, const uint32_t* in, uint32_t* out) const;

    // Distinct images of v, sorted lexicographically by coordinate codes.
    std::vector<Point> orbit(const Point& v) const;

    // tr^G(f) = sum_g g.f
    Polynomial transfer_full(const Polynomial& f) const;
    // tr^G_M(f) = sum over coset representatives of M in G; requires f to be
    // M-invariant (checked).  Representatives are chosen greedily in element
    // order, which for the cyclic builders yields sigma^0..sigma^{p-1}; the
    // result is independent of the choice exactly because f is M-invariant.
    Polynomial transfer_relative(const Subgroup& M, const Polynomial& f) const;
    // N_H(f) = prod_{g in H} g.f
    Polynomial norm(const Subgroup& H, const Polynomial& f) const;
    // Sum of the distinct images of the monomial under G (each image once).
    Polynomial orbit_sum(const Monomial& m) const;

    // Checks the generators only; equivalent to checking all elements.
    bool is_invariant(const Polynomial& f) const;
    bool is_invariant_under(const Subgroup& H, const Polynomial& f) const;

private:
    void check_poly(const Polynomial& f) const;

    const FiniteField* field_;
    uint32_t dim_;
    std::vector<GroupElement> elements_;
    std::vector<std::vector<size_t>> table_;
    std::vector<size_t> inverse_;
    std::vector<size_t> generators_;
    size_t identity_ = 0;
};

}  // namespace modsep
