#ifndef MSYDS_SYSTEM_HPP
#define MSYDS_SYSTEM_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "msyds/configuration.hpp"

namespace msyds {

/// Undirected simple graph on the common node set of one layer.
/// Neighbor lists are kept sorted; duplicate edges and self-loops are
/// rejected at insertion.
class LayerGraph {
public:
    LayerGraph() = default;
    explicit LayerGraph(std::size_t n) : adj_(n) {}

    std::size_t node_count() const { return adj_.size(); }
    std::size_t degree(NodeId v) const { return adj_[v].size(); }
    const std::vector<NodeId>& neighbors(NodeId v) const { return adj_[v]; }

    bool has_edge(NodeId u, NodeId v) const;
    void add_edge(NodeId u, NodeId v); // throws ContractError on self-loop/duplicate

    std::size_t edge_count() const;
    // Edges as (min,max) pairs, sorted.
    std::vector<std::pair<NodeId, NodeId>> edges() const;

    bool operator==(const LayerGraph&) const = default;

private:
    std::vector<std::vector<NodeId>> adj_;
};

// ---- master functions -------------------------------------------------

struct OrMaster {
    bool operator==(const OrMaster&) const = default;
};
struct AndMaster {
    bool operator==(const AndMaster&) const = default;
};
struct XorMaster {
    bool operator==(const XorMaster&) const = default;
};
struct NorMaster {
    bool operator==(const NorMaster&) const = default;
};
/// Value depends only on the number of layer outputs equal to 1;
/// table has k+1 entries.
struct SymmetricMaster {
    std::vector<std::uint8_t> table;
    bool operator==(const SymmetricMaster&) const = default;
};
/// Explicit truth table over the k layer outputs; bits indexed by the
/// integer whose bit j is the output of layer j (layer 0 = LSB).
struct TableMaster {
    std::vector<std::uint8_t> bits;
    bool operator==(const TableMaster&) const = default;
};

using MasterFunction =
    std::variant<OrMaster, AndMaster, XorMaster, NorMaster, SymmetricMaster, TableMaster>;

// Evaluates a master on k layer outputs. outputs[j] is the bit of layer j.
bool eval_master(const MasterFunction& m, const std::vector<std::uint8_t>& outputs);

// ---- local functions --------------------------------------------------

/// 1 iff at least t inputs are 1. t = 0 encodes constant 1; any
/// t > arity encodes constant 0 (constructions use t = degree + 2).
struct ThresholdFn {
    unsigned t = 0;
    bool operator==(const ThresholdFn&) const = default;
};

/// Arbitrary symmetric function; table[c] is the value when exactly c
/// of the arity inputs are 1 (arity = degree + 1, so degree + 2 entries).
struct SymmetricFn {
    std::vector<std::uint8_t> table;
    bool operator==(const SymmetricFn&) const = default;
};

/// Single-layer composition produced by flattening: a master applied to
/// symmetric sub-functions, each restricted to a fixed node subset.
/// Not symmetric over the full neighborhood; evaluated against the
/// configuration directly.
struct ComposedPart {
    std::vector<NodeId> nodes; // sorted, unique
    std::vector<std::uint8_t> table; // |nodes| + 1 entries
    bool operator==(const ComposedPart&) const = default;
};
struct ComposedFn {
    MasterFunction master;
    std::vector<ComposedPart> parts;
    bool operator==(const ComposedFn&) const = default;
};

using LocalFunction = std::variant<ThresholdFn, SymmetricFn, ComposedFn>;

// True for Threshold and Symmetric variants.
bool is_symmetric_local(const LocalFunction& f);

// Evaluates a symmetric local on a count of 1-inputs.
// Throws ContractError for Composed locals, ones > arity, or a
// symmetry-table length mismatch.
bool eval_local(const LocalFunction& f, unsigned ones, unsigned arity);

// Symmetry table of a Threshold or Symmetric local at the given arity.
std::vector<std::uint8_t> symmetry_table(const LocalFunction& f, unsigned arity);

// ---- the system -------------------------------------------------------

/// A multilayer synchronous dynamical system over {0,1}: one node set,
/// k layer graphs, a local function per (layer, node) and a master
/// function per node. Immutable once built; all operations are pure.
struct MSyDS {
    std::vector<std::string> node_names;
    std::vector<LayerGraph> layers;
    // locals[layer][node]
    std::vector<std::vector<LocalFunction>> locals;
    std::vector<MasterFunction> masters;

    std::size_t node_count() const { return node_names.size(); }
    std::size_t layer_count() const { return layers.size(); }

    // Checks all structural invariants; throws ContractError.
    void validate() const;

    bool operator==(const MSyDS&) const = default;
};

// Output of node v's local function in one layer: the local applied to
// the states of v's closed neighborhood in that layer.
bool layer_output(const MSyDS& s, std::size_t layer, NodeId v, const Configuration& c);

// Next state of node v: the master applied to the k layer outputs.
bool node_successor(const MSyDS& s, NodeId v, const Configuration& c);

// Synchronous update of the whole configuration.
Configuration successor(const MSyDS& s, const Configuration& c);

} // namespace msyds

#endif
