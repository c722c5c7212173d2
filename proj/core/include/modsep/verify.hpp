#pragma once

// Exhaustive separation checks over the F_q-points of a module, the
// fiberwise condition behind the gluing theorem, separation witnesses for
// point pairs, and exact symbolic oracles for the congruence identities the
// recursive constructions rely on.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "modsep/sep.hpp"

namespace modsep {

struct VerificationReport {
    std::string subject;      // optional caller-supplied label (spec string)
    std::string field_name;   // "p^k"
    uint64_t point_count = 0;
    // For check_separating these are global counts; for the fiber condition
    // both are summed fiber by fiber (an orbit meeting f fibers adds f).
    uint64_t orbit_count = 0;
    uint64_t class_count = 0;
    bool ok = false;
    // Two points in different orbits with equal fingerprints: the smallest
    // enumeration code in the offending class, paired with the smallest code
    // there of a different orbit.  Deterministic regardless of thread count.
    std::optional<std::pair<Point, Point>> counterexample;
    double elapsed_seconds = 0.0;  // diagnostic only, never serialized
};

constexpr uint64_t kDefaultPointLimit = uint64_t{1} << 24;

// kDefaultPointLimit, or the value of MODSEP_POINT_LIMIT when set.
uint64_t default_point_limit();

// Enumerates all q^dim points, fingerprints each by the values of S, and
// checks that every fingerprint class is exactly one orbit.  Inputs must be
// invariants in the action's ring (std::invalid_argument otherwise, same for
// point counts beyond the limit).  threads > 1 splits the enumeration range;
// reports are identical to the single-threaded ones.
VerificationReport check_separating(const GroupAction& G, const std::vector<Polynomial>& S,
                                    uint64_t point_limit = kDefaultPointLimit, uint32_t threads = 1);
VerificationReport check_separating(const GroupAction& G, const SeparatingSet& S,
                                    uint64_t point_limit = kDefaultPointLimit, uint32_t threads = 1);

// The gluing hypothesis: within every fiber of phi, any two points in
// different G-orbits are separated by some member of T.
VerificationReport check_fiber_condition(const GroupAction& G, const Surjection& phi,
                                         const std::vector<Polynomial>& T,
                                         uint64_t point_limit = kDefaultPointLimit,
                                         uint32_t threads = 1);

struct WitnessEntry {
    size_t index;  // position in S
    FieldElement at_v1;
    FieldElement at_v2;
};

// All elements of S taking different values on v1 and v2; empty iff the two
// fingerprints agree.
std::vector<WitnessEntry> witness(const GroupAction& G, const std::vector<Polynomial>& S,
                                  const Point& v1, const Point& v2);

// sum_{l=0}^{p-1} l^a mod p for a >= 1; equals p - 1 exactly when p-1
// divides a and 0 otherwise.
uint32_t power_sum(uint32_t p, uint32_t a);

struct OracleResult {
    std::string id;
    bool pass = false;
    Polynomial difference;  // lhs - rhs, zero iff pass
};

// Exact symbolic checks of the congruence identities, one per applicable
// lemma instance ("mod R" realized as exponent-pattern filters):
//   klein-ii  ii-a*(i=,j=)  x_1-part of tr^G(x_1 x_i x_j), 2 <= i,j <= n-1
//             ii-b          x_1-part of tr^G(x_1 x_{n-1} x_n)
//             ii-lambda     x_1-part without x_{n+3} of tr^G(x_1 x_2^3)
//             ii-N          x_1-part of N_{H_2}(x_1 x_{n+2} + x_2 x_{n+1}),
//                           emitted for lambda in {0, 1}
//   klein-v   v-cube(i=)    x_1-part of tr^G(x_1 x_i^3), 2 <= i <= n-1
//   cyclic    cyc-tr(i=)    terms with x_n and no x_{<i} of tr^G_M(f_i)
// Families without congruence lemmas (and parameter ranges that admit no
// instance) yield an empty list.
std::vector<OracleResult> lemma_oracles(const ModuleSpec& spec, const FiniteField& field);

}  // namespace modsep
