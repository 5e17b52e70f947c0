#ifndef MSYDS_EQUIVALENCE_HPP
#define MSYDS_EQUIVALENCE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "msyds/system.hpp"

namespace msyds {

/// Answer of an equivalence check. Every Inequivalent verdict carries a
/// witness configuration and a node at which the two successors differ,
/// re-checkable in O(system size) via node_successor.
struct EquivalenceVerdict {
    bool equivalent = true;
    std::optional<Configuration> witness;
    std::optional<NodeId> node;
    std::string algorithm;
    std::uint64_t work = 0; // configurations or profiles examined
};

/// Partition of the node set by anchored-layer adjacency signature to a
/// fixed node v. Anchored layer (a, l) maps to mask bit l (a = 0) or
/// k0 + l (a = 1). Only nonempty blocks are stored, sorted by mask;
/// v itself lands in the all-ones block.
struct NodePartition {
    NodeId v = 0;
    std::size_t k0 = 0;
    std::size_t k1 = 0;
    struct Block {
        std::uint64_t mask = 0;
        std::vector<NodeId> nodes; // ascending
    };
    std::vector<Block> blocks;
};

/// Per-block count of 1-nodes, aligned with NodePartition::blocks.
using Profile = std::vector<unsigned>;

struct AutoOptions {
    unsigned limit_bits = 24;
    unsigned max_layer_sum = 6; // cap on k0 + k1 for the profile algorithm
    unsigned max_bound = 6;     // cap on tau / nu for the bounded searches
};

// Exhaustive check over all 2^n configurations in ascending code order;
// reports the lowest differing configuration and node.
EquivalenceVerdict brute_force_equiv(const MSyDS& s0, const MSyDS& s1,
                                     unsigned limit_bits = 24);

// Same scan restricted to one node's next-state bit.
EquivalenceVerdict v_equivalent_brute(const MSyDS& s0, const MSyDS& s1, NodeId v,
                                      unsigned limit_bits = 24);

NodePartition build_partition(const MSyDS& s0, const MSyDS& s1, NodeId v);

// The block-count abstraction of a configuration.
Profile profile_of(const NodePartition& partition, const Configuration& c);

// Next-state bit of partition.v determined by a profile alone
// (system selected by anchor: 0 = s0, 1 = s1). Requires symmetric
// locals for v in the selected system.
bool profile_next_state(const MSyDS& s, int anchor, const NodePartition& partition,
                        const Profile& theta);

// Witness candidate realizing a profile: the lowest-index theta[b]
// members of each block set to 1.
Configuration materialize_profile(const NodePartition& partition, const Profile& theta,
                                  std::size_t n);

// Profile-enumeration equivalence check; polynomial for a fixed total
// layer count. Requires every local in both systems to be symmetric.
EquivalenceVerdict profile_equiv(const MSyDS& s0, const MSyDS& s1);

// Largest effective threshold; constant-0 encodings (t > arity) are
// excluded. Requires all-threshold locals.
unsigned max_threshold(const MSyDS& s);

// Largest negative threshold degree - t + 2; constant functions are
// excluded. Requires all-threshold locals.
unsigned max_negative_threshold(const MSyDS& s);

// Witness search over configurations with popcount <= tau, in ascending
// popcount then ascending code. Requires threshold locals and OR
// masters in both systems.
EquivalenceVerdict bounded_threshold_equiv(const MSyDS& s0, const MSyDS& s1);

// Dual search over configurations with at most nu zeros. Requires
// threshold locals and AND masters.
EquivalenceVerdict bounded_negative_equiv(const MSyDS& s0, const MSyDS& s1);

// Dispatches to the cheapest applicable algorithm; refuses (listing the
// reason each algorithm was skipped) when nothing applies within limits.
EquivalenceVerdict auto_equiv(const MSyDS& s0, const MSyDS& s1, const AutoOptions& opts = {});

} // namespace msyds

#endif
