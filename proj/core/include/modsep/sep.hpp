#pragma once

// Constructors of separating sets.  Each family's recursive step glues a
// pulled-back set of the next-smaller sibling with a fixed list T of fresh
// invariants; base cases are either explicit or delegated to a brute-force
// search over orbit sums and variable norms.

#include <cstdint>
#include <string_view>
#include <vector>

#include "modsep/reps.hpp"

namespace modsep {

enum class Provenance {
    variable,           // a coordinate function x_i
    norm,               // product of all G-images
    relative_norm,      // product over a proper subgroup (or of such norms)
    transfer,           // sum of all G-images
    relative_transfer,  // sum over coset representatives of a subgroup
    pullback,           // re-indexed element of the smaller sibling's set
    explicit_form,      // written out directly
    search,             // found by generic_search
};

// "variable", "norm", "relative-norm", "transfer", "relative-transfer",
// "pullback", "explicit", "search".
std::string_view provenance_name(Provenance p);

struct SetElement {
    Polynomial poly;
    Provenance provenance = Provenance::explicit_form;
};

// One gluing level: on `source`, the fresh invariants `added` (the set T)
// were joined with the pullback along `phi` of the sibling's set.
struct RecursionStep {
    ModuleSpec source;
    Surjection phi;
    std::vector<SetElement> added;
};

struct SeparatingSet {
    ModuleSpec spec;
    std::vector<SetElement> elements;
    // Innermost level first; empty for base cases and searched sets.
    std::vector<RecursionStep> steps;

    std::vector<Polynomial> polynomials() const;
};

// phi*(target set) ++ T.  Every member of T must be an invariant of
// source_action (std::invalid_argument otherwise); pullbacks get provenance
// `pullback` and the step is appended to the target's step list.
SeparatingSet glue(const GroupAction& source_action, const SeparatingSet& target_set,
                   std::vector<SetElement> T, const Surjection& phi);

// The full recursive construction for the spec's family.  point_limit and
// threads only matter for the families whose base case is a search
// (klein-regular and the lambda-in-{0,1} Klein bases).
SeparatingSet separating_set(const ModuleSpec& spec, const FiniteField& field,
                             uint64_t point_limit = uint64_t{1} << 24, uint32_t threads = 1);

// Smallest k >= 0 making x_n x_{i+1}^{p-1} x_i^k invariant under the order-m
// subgroup, by incremental search; the minimum is independent of i, which is
// asserted for every valid 1 <= i <= n-2.  Requires a cyclic spec with
// n >= 3.  Satisfies m | p + k.
uint32_t find_k(const GroupAction& G, const ModuleSpec& spec);

// Smallest l >= 0 making N_H(x_n) N_H(x_{n-1})^l G-invariant, by incremental
// search.  Requires a cyclic spec with n >= 2.  Satisfies m | p(l + 1).
uint32_t find_l(const GroupAction& G, const ModuleSpec& spec);

// Brute-force separating set: the candidate pool is every orbit sum of a
// monomial of degree 1..degree_bound (grevlex-descending within each degree)
// followed by the invariant variable norms over the cyclic subgroups and the
// full group whose degree fits the bound; the pool is verified to separate
// exhaustively, then greedily pruned in reverse pool order (so norms and
// high-degree sums are dropped first whenever the remainder still
// separates).  Throws std::invalid_argument for degree_bound = 0 and
// std::runtime_error when the pool does not separate (raise the bound).
SeparatingSet generic_search(const ModuleSpec& spec, const FiniteField& field,
                             uint32_t degree_bound, uint64_t point_limit = uint64_t{1} << 24,
                             uint32_t threads = 1);

}  // namespace modsep
