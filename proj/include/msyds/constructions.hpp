#ifndef MSYDS_CONSTRUCTIONS_HPP
#define MSYDS_CONSTRUCTIONS_HPP

#include <cstdint>
#include <vector>

#include "msyds/system.hpp"

namespace msyds {

// ---- CNF input --------------------------------------------------------

/// Clauses as signed 1-based literals (negative = negated variable).
/// Clauses are non-empty and never contain both polarities of one
/// variable; duplicate literals are removed at parse.
struct CnfFormula {
    unsigned num_vars = 0;
    std::vector<std::vector<int>> clauses;
};

// True iff the assignment (one bit per variable, index 0 = x1)
// satisfies every clause.
bool satisfies(const CnfFormula& f, const std::vector<std::uint8_t>& assignment);

// ---- SAT reduction ----------------------------------------------------

struct NodeRole {
    enum Kind { LiteralPos, LiteralNeg, Center } kind;
    unsigned variable = 0; // 1-based, meaningful for literal nodes
};

/// The near-identical pair produced by the satisfiability reduction:
/// `s` and `s_prime` share node set and all layer graphs and differ in
/// exactly one threshold of the center node in the star layer.
struct ReductionPair {
    MSyDS s;
    MSyDS s_prime;
    std::vector<NodeRole> node_roles;
};

// ---- generators -------------------------------------------------------

// Two complete-graph layers with XOR masters; the phase space is one
// cycle of length n+1 with all transients of length one.
MSyDS unary_cycle(unsigned n);

// Disjoint union of unary-cycle blocks sized by the first q primes
// minus one; the all-zeros trajectory cycles with primorial period.
MSyDS primorial(unsigned q);

// 2n-1 star layers realizing +1 mod 2^n on the integer encoding
// (node 0 = low bit).
MSyDS binary_counter(unsigned n);

// Star-layer pair whose inequivalence is exactly the satisfiability of f.
ReductionPair sat_to_msyds(const CnfFormula& f);

// Extracts the satisfying assignment encoded by an inequivalence
// witness; throws ContractError when w is not a witness for the pair.
std::vector<std::uint8_t> witness_to_assignment(const ReductionPair& pair,
                                                const Configuration& w);

// Configuration with y_i = alpha(x_i), z_i = 1 - alpha(x_i), center 0.
Configuration assignment_to_witness(const ReductionPair& pair,
                                    const std::vector<std::uint8_t>& alpha);

// k single-edge layers around a hub node, OR masters.
MSyDS hierarchy_or(unsigned k);

// The two-layer AND-master system equivalent to hierarchy_or(k).
MSyDS hierarchy_and_equiv(unsigned k);

// ---- transformations --------------------------------------------------

// Replaces layers i and j by their edge union; the merged layer keeps
// layer i's locals, with constant-0 threshold encodings re-fitted to
// the merged degree. Proof-support utility for the layer-hierarchy
// counterexample; rejects symmetric locals whose arity would change,
// composed locals, and Symmetric/Table masters.
MSyDS merge_layers(const MSyDS& s, std::size_t i, std::size_t j);

// Equivalent single-layer system over the complete graph with composed
// local functions.
MSyDS flatten(const MSyDS& s);

// Equivalent k_target-layer system from a single-layer system: copied
// layers and locals, OR masters. A non-identity unary master is folded
// into the local tables first.
MSyDS lift(const MSyDS& s, unsigned k_target);

// [2, 3, 5, 7, ...]
std::vector<unsigned> first_primes(unsigned q);

} // namespace msyds

#endif
