#pragma once

// Catalog of the supported module families: spec parsing/printing, the
// builders that turn a spec + field into a concrete GroupAction, and the
// coordinate-dropping equivariant surjections that drive the recursive
// constructions.
//
// Families and dimensions:
//   klein-ii      dim 2n   Klein four group, char 2; parameter lambda
//   klein-iii     dim 2n   lambda = 0 with the two generators interchanged
//   klein-iv      dim 2n-1 submodule of klein-ii(lambda=1) with coordinate
//                          n+1 deleted
//   klein-v       dim 2n-1 quotient-type series, variables renumbered so the
//                          ring is F[x1..x_{2n-1}]
//   klein-regular dim 4    the group acting on itself by multiplication
//   cyclic        dim n    Z_{pm} = <s> x <r>, s of order p acting by a
//                          unipotent Jordan block, r of order m by a
//                          primitive m-th root of unity

#include <cstdint>
#include <string>
#include <string_view>

#include "modsep/action.hpp"

namespace modsep {

enum class Family { klein_ii, klein_iii, klein_iv, klein_v, klein_regular, cyclic };

std::string_view family_name(Family f);

struct ModuleSpec {
    Family family = Family::klein_regular;
    uint32_t n = 0;      // series index (Klein families) / dimension (cyclic)
    std::string lambda;  // klein-ii only: field-element literal such as "t+1"
    uint32_t p = 0;      // cyclic only
    uint32_t m = 0;      // cyclic only

    // Grammar: "klein-ii:n=3,lambda=t", "klein-iii:n=2", "klein-iv:n=4",
    // "klein-v:n=3", "klein-regular", "cyclic:p=3,m=2,n=3".
    static ModuleSpec parse(std::string_view text);
    std::string to_string() const;

    uint32_t dimension() const;

    // Family/field compatibility: Klein families need characteristic 2 and
    // n >= 2, lambda must parse in the field; cyclic needs characteristic p,
    // gcd(p, m) = 1, m >= 2, 1 <= n <= p, and m | q - 1.  Throws
    // std::invalid_argument with a specific message.
    void validate(const FiniteField& field) const;
};

// Least k >= 1 with m | p^k - 1 (the order of p modulo m); gcd(p, m) = 1
// guarantees one exists.
uint32_t cyclic_field_degree(uint32_t p, uint32_t m);

// Smallest field the spec makes sense over: F_2 for Klein families with a
// prime-field lambda, F_4 when lambda mentions t, F_{p^k} with k from
// cyclic_field_degree for cyclic.
const FiniteField& default_field(const ModuleSpec& spec);

// Builds the action; validates the spec against the field and asserts the
// structural group relations (involutions / element orders, commutativity,
// and for klein-iv the equality of the deleted-coordinate matrices with the
// direct block forms).
GroupAction build_action(const ModuleSpec& spec, const FiniteField& field);

// phi drops source coordinates; kept[j] is the 0-based source coordinate that
// becomes target coordinate j.  G-equivariant by construction (and checked
// exhaustively in the tests).
struct Surjection {
    ModuleSpec source;
    ModuleSpec target;
    std::vector<uint32_t> kept;

    // Re-indexes a polynomial on the target into source coordinates,
    // x_{j+1} -> x_{kept[j]+1}.
    Polynomial pullback(const Polynomial& f) const;

    // Image of a source point, by coordinate codes.
    void apply_codes(const uint32_t* in, uint32_t* out) const;
};

// The map onto the next-smaller sibling: klein-ii/iii n>=3 drop coordinates
// 1 and n+1; klein-v n>=3 drops 1 and n (renumbered); cyclic n>=2 drops the
// last.  Throws std::invalid_argument at base cases and for families without
// a recursion (klein-iv, klein-regular).
Surjection surjection(const ModuleSpec& spec);

// Restriction along the inclusion of the klein-iv submodule into
// klein-ii(lambda=1): substitutes x_{n+1} -> 0 and renumbers the surviving
// 2n-1 variables in order.  spec must be klein-ii with lambda = 1 in f's
// field.
Polynomial restrict_to_submodule(const Polynomial& f, const ModuleSpec& spec);

}  // namespace modsep
