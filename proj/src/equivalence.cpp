#include "msyds/equivalence.hpp"

#include <algorithm>
#include <map>

#include "msyds/errors.hpp"

namespace msyds {

namespace {

void require_same_nodes(const MSyDS& s0, const MSyDS& s1) {
    if (s0.node_count() != s1.node_count())
        throw ContractError("equivalence: node counts differ (" + std::to_string(s0.node_count()) +
                            " vs " + std::to_string(s1.node_count()) + ")");
}

// First node at which the successors of c differ, if any.
std::optional<NodeId> differing_node(const MSyDS& s0, const MSyDS& s1, const Configuration& c) {
    for (NodeId v = 0; v < s0.node_count(); ++v)
        if (node_successor(s0, v, c) != node_successor(s1, v, c)) return v;
    return std::nullopt;
}

bool all_threshold(const MSyDS& s) {
    for (const auto& layer : s.locals)
        for (const auto& f : layer)
            if (!std::holds_alternative<ThresholdFn>(f)) return false;
    return true;
}

bool all_symmetric(const MSyDS& s) {
    for (const auto& layer : s.locals)
        for (const auto& f : layer)
            if (!is_symmetric_local(f)) return false;
    return true;
}

template <typename Master>
bool all_masters(const MSyDS& s) {
    for (const auto& m : s.masters)
        if (!std::holds_alternative<Master>(m)) return false;
    return true;
}

void require_symmetric(const MSyDS& s, const char* tag, const char* algorithm) {
    for (std::size_t layer = 0; layer < s.locals.size(); ++layer)
        for (NodeId v = 0; v < s.locals[layer].size(); ++v)
            if (!is_symmetric_local(s.locals[layer][v]))
                throw UnsupportedError(std::string(algorithm) + ": non-symmetric local in " + tag +
                                       " at layer " + std::to_string(layer) + ", node " +
                                       s.node_names[v]);
}

void require_threshold(const MSyDS& s, const char* tag, const char* algorithm) {
    for (std::size_t layer = 0; layer < s.locals.size(); ++layer)
        for (NodeId v = 0; v < s.locals[layer].size(); ++v)
            if (!std::holds_alternative<ThresholdFn>(s.locals[layer][v]))
                throw UnsupportedError(std::string(algorithm) + ": non-threshold local in " + tag +
                                       " at layer " + std::to_string(layer) + ", node " +
                                       s.node_names[v]);
}

// Colex successor over size-p position subsets of 0..n-1; colex order
// of subsets equals ascending numeric order of the encoded
// configurations. Returns false after the last subset.
bool next_colex(std::vector<NodeId>& positions, std::size_t n) {
    const std::size_t p = positions.size();
    for (std::size_t i = 0; i < p; ++i) {
        NodeId limit = (i + 1 < p) ? positions[i + 1] : static_cast<NodeId>(n);
        if (positions[i] + 1 < limit) {
            ++positions[i];
            for (std::size_t b = 0; b < i; ++b) positions[b] = static_cast<NodeId>(b);
            return true;
        }
    }
    return false;
}

} // namespace

EquivalenceVerdict brute_force_equiv(const MSyDS& s0, const MSyDS& s1, unsigned limit_bits) {
    require_same_nodes(s0, s1);
    const std::size_t n = s0.node_count();
    if (n > limit_bits)
        throw RefusalError("brute_force_equiv: system has " + std::to_string(n) +
                           " nodes, enumeration limit is " + std::to_string(limit_bits) + " bits");
    EquivalenceVerdict verdict;
    verdict.algorithm = "brute";
    const std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t code = 0; code < total; ++code) {
        Configuration c = Configuration::from_code(code, n);
        ++verdict.work;
        if (auto v = differing_node(s0, s1, c)) {
            verdict.equivalent = false;
            verdict.witness = std::move(c);
            verdict.node = *v;
            return verdict;
        }
    }
    return verdict;
}

EquivalenceVerdict v_equivalent_brute(const MSyDS& s0, const MSyDS& s1, NodeId v,
                                      unsigned limit_bits) {
    require_same_nodes(s0, s1);
    const std::size_t n = s0.node_count();
    if (n > limit_bits)
        throw RefusalError("v_equivalent_brute: system has " + std::to_string(n) +
                           " nodes, enumeration limit is " + std::to_string(limit_bits) + " bits");
    EquivalenceVerdict verdict;
    verdict.algorithm = "brute-node";
    const std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t code = 0; code < total; ++code) {
        Configuration c = Configuration::from_code(code, n);
        ++verdict.work;
        if (node_successor(s0, v, c) != node_successor(s1, v, c)) {
            verdict.equivalent = false;
            verdict.witness = std::move(c);
            verdict.node = v;
            return verdict;
        }
    }
    return verdict;
}

NodePartition build_partition(const MSyDS& s0, const MSyDS& s1, NodeId v) {
    require_same_nodes(s0, s1);
    NodePartition partition;
    partition.v = v;
    partition.k0 = s0.layer_count();
    partition.k1 = s1.layer_count();
    if (partition.k0 + partition.k1 > 63)
        throw RefusalError("build_partition: more than 63 anchored layers");

    std::map<std::uint64_t, std::vector<NodeId>> blocks;
    for (NodeId u = 0; u < s0.node_count(); ++u) {
        std::uint64_t mask = 0;
        for (std::size_t l = 0; l < partition.k0; ++l)
            if (u == v || s0.layers[l].has_edge(u, v)) mask |= std::uint64_t{1} << l;
        for (std::size_t l = 0; l < partition.k1; ++l)
            if (u == v || s1.layers[l].has_edge(u, v)) mask |= std::uint64_t{1} << (partition.k0 + l);
        blocks[mask].push_back(u);
    }
    for (auto& [mask, nodes] : blocks)
        partition.blocks.push_back({mask, std::move(nodes)});
    return partition;
}

Profile profile_of(const NodePartition& partition, const Configuration& c) {
    Profile theta(partition.blocks.size(), 0);
    for (std::size_t b = 0; b < partition.blocks.size(); ++b)
        for (NodeId u : partition.blocks[b].nodes)
            if (c.get(u)) ++theta[b];
    return theta;
}

bool profile_next_state(const MSyDS& s, int anchor, const NodePartition& partition,
                        const Profile& theta) {
    const std::size_t k = s.layer_count();
    const std::size_t bit_base = anchor == 0 ? 0 : partition.k0;
    std::vector<std::uint8_t> outputs(k);
    for (std::size_t l = 0; l < k; ++l) {
        unsigned ones = 0;
        for (std::size_t b = 0; b < partition.blocks.size(); ++b)
            if (partition.blocks[b].mask & (std::uint64_t{1} << (bit_base + l))) ones += theta[b];
        outputs[l] = eval_local(s.locals[l][partition.v], ones,
                                static_cast<unsigned>(s.layers[l].degree(partition.v)) + 1)
                         ? 1
                         : 0;
    }
    return eval_master(s.masters[partition.v], outputs);
}

Configuration materialize_profile(const NodePartition& partition, const Profile& theta,
                                  std::size_t n) {
    Configuration c(n);
    for (std::size_t b = 0; b < partition.blocks.size(); ++b)
        for (unsigned i = 0; i < theta[b]; ++i) c.set(partition.blocks[b].nodes[i], true);
    return c;
}

EquivalenceVerdict profile_equiv(const MSyDS& s0, const MSyDS& s1) {
    require_same_nodes(s0, s1);
    require_symmetric(s0, "first system", "profile_equiv");
    require_symmetric(s1, "second system", "profile_equiv");

    EquivalenceVerdict verdict;
    verdict.algorithm = "profile";
    const std::size_t n = s0.node_count();
    for (NodeId v = 0; v < n; ++v) {
        NodePartition partition = build_partition(s0, s1, v);
        Profile theta(partition.blocks.size(), 0);
        // Mixed-radix counter over block counts 0..|block|.
        for (;;) {
            ++verdict.work;
            if (profile_next_state(s0, 0, partition, theta) !=
                profile_next_state(s1, 1, partition, theta)) {
                verdict.equivalent = false;
                verdict.witness = materialize_profile(partition, theta, n);
                verdict.node = v;
                return verdict;
            }
            std::size_t digit = 0;
            while (digit < theta.size()) {
                if (theta[digit] < partition.blocks[digit].nodes.size()) {
                    ++theta[digit];
                    break;
                }
                theta[digit] = 0;
                ++digit;
            }
            if (digit == theta.size()) break;
        }
    }
    return verdict;
}

unsigned max_threshold(const MSyDS& s) {
    require_threshold(s, "system", "max_threshold");
    unsigned best = 0;
    for (std::size_t layer = 0; layer < s.layer_count(); ++layer)
        for (NodeId v = 0; v < s.node_count(); ++v) {
            unsigned t = std::get<ThresholdFn>(s.locals[layer][v]).t;
            unsigned arity = static_cast<unsigned>(s.layers[layer].degree(v)) + 1;
            if (t <= arity) best = std::max(best, t); // t > arity never fires
        }
    return best;
}

unsigned max_negative_threshold(const MSyDS& s) {
    require_threshold(s, "system", "max_negative_threshold");
    unsigned best = 0;
    for (std::size_t layer = 0; layer < s.layer_count(); ++layer)
        for (NodeId v = 0; v < s.node_count(); ++v) {
            unsigned t = std::get<ThresholdFn>(s.locals[layer][v]).t;
            unsigned degree = static_cast<unsigned>(s.layers[layer].degree(v));
            if (t == 0) continue; // constant 1 never turns off
            if (t >= degree + 2) continue; // constant 0 needs no zeros
            best = std::max(best, degree + 2 - t);
        }
    return best;
}

EquivalenceVerdict bounded_threshold_equiv(const MSyDS& s0, const MSyDS& s1) {
    require_same_nodes(s0, s1);
    require_threshold(s0, "first system", "bounded_threshold_equiv");
    require_threshold(s1, "second system", "bounded_threshold_equiv");
    if (!all_masters<OrMaster>(s0) || !all_masters<OrMaster>(s1))
        throw UnsupportedError("bounded_threshold_equiv: all master functions must be OR");

    EquivalenceVerdict verdict;
    verdict.algorithm = "bounded-or";
    const std::size_t n = s0.node_count();
    const unsigned tau = std::max(max_threshold(s0), max_threshold(s1));
    for (unsigned p = 0; p <= std::min<std::size_t>(tau, n); ++p) {
        std::vector<NodeId> positions(p);
        for (unsigned i = 0; i < p; ++i) positions[i] = i;
        bool more = true;
        while (more) {
            Configuration c(n);
            for (NodeId pos : positions) c.set(pos, true);
            ++verdict.work;
            if (auto v = differing_node(s0, s1, c)) {
                verdict.equivalent = false;
                verdict.witness = std::move(c);
                verdict.node = *v;
                return verdict;
            }
            more = p > 0 && next_colex(positions, n);
        }
    }
    return verdict;
}

EquivalenceVerdict bounded_negative_equiv(const MSyDS& s0, const MSyDS& s1) {
    require_same_nodes(s0, s1);
    require_threshold(s0, "first system", "bounded_negative_equiv");
    require_threshold(s1, "second system", "bounded_negative_equiv");
    if (!all_masters<AndMaster>(s0) || !all_masters<AndMaster>(s1))
        throw UnsupportedError("bounded_negative_equiv: all master functions must be AND");

    EquivalenceVerdict verdict;
    verdict.algorithm = "bounded-and";
    const std::size_t n = s0.node_count();
    const unsigned nu = std::max(max_negative_threshold(s0), max_negative_threshold(s1));
    // Ascending popcount: from n - nu zeros-allowed upward, i.e. zero
    // count z from nu down to 0; within a popcount, ascending code.
    for (unsigned z = std::min<std::size_t>(nu, n); z + 1 > 0; --z) {
        std::vector<Configuration> batch;
        std::vector<NodeId> zero_positions(z);
        for (unsigned i = 0; i < z; ++i) zero_positions[i] = i;
        bool more = true;
        while (more) {
            Configuration c(n);
            for (NodeId v = 0; v < n; ++v) c.set(v, true);
            for (NodeId pos : zero_positions) c.set(pos, false);
            batch.push_back(std::move(c));
            more = z > 0 && next_colex(zero_positions, n);
        }
        std::sort(batch.begin(), batch.end());
        for (auto& c : batch) {
            ++verdict.work;
            if (auto v = differing_node(s0, s1, c)) {
                verdict.equivalent = false;
                verdict.witness = std::move(c);
                verdict.node = *v;
                return verdict;
            }
        }
        if (z == 0) break;
    }
    return verdict;
}

EquivalenceVerdict auto_equiv(const MSyDS& s0, const MSyDS& s1, const AutoOptions& opts) {
    require_same_nodes(s0, s1);
    std::vector<std::string> skipped;

    const bool thresholds = all_threshold(s0) && all_threshold(s1);
    if (thresholds && all_masters<OrMaster>(s0) && all_masters<OrMaster>(s1)) {
        unsigned tau = std::max(max_threshold(s0), max_threshold(s1));
        if (tau <= opts.max_bound) return bounded_threshold_equiv(s0, s1);
        skipped.push_back("bounded-or: tau " + std::to_string(tau) + " exceeds cap " +
                          std::to_string(opts.max_bound));
    } else {
        skipped.push_back("bounded-or: requires threshold locals and OR masters");
    }

    if (thresholds && all_masters<AndMaster>(s0) && all_masters<AndMaster>(s1)) {
        unsigned nu = std::max(max_negative_threshold(s0), max_negative_threshold(s1));
        if (nu <= opts.max_bound) return bounded_negative_equiv(s0, s1);
        skipped.push_back("bounded-and: nu " + std::to_string(nu) + " exceeds cap " +
                          std::to_string(opts.max_bound));
    } else {
        skipped.push_back("bounded-and: requires threshold locals and AND masters");
    }

    if (all_symmetric(s0) && all_symmetric(s1)) {
        std::size_t layer_sum = s0.layer_count() + s1.layer_count();
        if (layer_sum <= opts.max_layer_sum) return profile_equiv(s0, s1);
        skipped.push_back("profile: layer sum " + std::to_string(layer_sum) + " exceeds cap " +
                          std::to_string(opts.max_layer_sum));
    } else {
        skipped.push_back("profile: requires symmetric locals");
    }

    if (s0.node_count() <= opts.limit_bits) return brute_force_equiv(s0, s1, opts.limit_bits);
    skipped.push_back("brute: " + std::to_string(s0.node_count()) + " nodes exceed the " +
                      std::to_string(opts.limit_bits) + "-bit enumeration limit");

    std::string reason = "auto_equiv: no applicable algorithm";
    for (const auto& r : skipped) reason += "; " + r;
    throw RefusalError(reason);
}

} // namespace msyds
