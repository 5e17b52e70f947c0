#include "msyds/system.hpp"

#include <algorithm>
#include <bit>

#include "msyds/errors.hpp"

namespace msyds {

bool LayerGraph::has_edge(NodeId u, NodeId v) const {
    const auto& a = adj_[u];
    return std::binary_search(a.begin(), a.end(), v);
}

void LayerGraph::add_edge(NodeId u, NodeId v) {
    if (u == v) throw ContractError("add_edge: self-loop at node " + std::to_string(u));
    if (u >= adj_.size() || v >= adj_.size())
        throw ContractError("add_edge: node index out of range");
    if (has_edge(u, v))
        throw ContractError("add_edge: duplicate edge {" + std::to_string(u) + "," +
                            std::to_string(v) + "}");
    adj_[u].insert(std::upper_bound(adj_[u].begin(), adj_[u].end(), v), v);
    adj_[v].insert(std::upper_bound(adj_[v].begin(), adj_[v].end(), u), u);
}

std::size_t LayerGraph::edge_count() const {
    std::size_t twice = 0;
    for (const auto& a : adj_) twice += a.size();
    return twice / 2;
}

std::vector<std::pair<NodeId, NodeId>> LayerGraph::edges() const {
    std::vector<std::pair<NodeId, NodeId>> out;
    for (NodeId u = 0; u < adj_.size(); ++u)
        for (NodeId v : adj_[u])
            if (u < v) out.emplace_back(u, v);
    return out;
}

bool eval_master(const MasterFunction& m, const std::vector<std::uint8_t>& outputs) {
    const std::size_t k = outputs.size();
    std::size_t ones = 0;
    for (auto b : outputs) ones += b;
    return std::visit(
        [&](const auto& f) -> bool {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, OrMaster>) {
                return ones > 0;
            } else if constexpr (std::is_same_v<T, AndMaster>) {
                return ones == k;
            } else if constexpr (std::is_same_v<T, XorMaster>) {
                return ones % 2 == 1;
            } else if constexpr (std::is_same_v<T, NorMaster>) {
                return ones == 0;
            } else if constexpr (std::is_same_v<T, SymmetricMaster>) {
                if (f.table.size() != k + 1)
                    throw ContractError("eval_master: symmetric table has " +
                                        std::to_string(f.table.size()) + " entries, expected " +
                                        std::to_string(k + 1));
                return f.table[ones] != 0;
            } else {
                if (f.bits.size() != (std::size_t{1} << k))
                    throw ContractError("eval_master: truth table has " +
                                        std::to_string(f.bits.size()) + " entries, expected 2^" +
                                        std::to_string(k));
                std::size_t idx = 0;
                for (std::size_t j = 0; j < k; ++j)
                    if (outputs[j]) idx |= std::size_t{1} << j;
                return f.bits[idx] != 0;
            }
        },
        m);
}

bool is_symmetric_local(const LocalFunction& f) {
    return !std::holds_alternative<ComposedFn>(f);
}

bool eval_local(const LocalFunction& f, unsigned ones, unsigned arity) {
    if (ones > arity)
        throw ContractError("eval_local: ones (" + std::to_string(ones) + ") exceeds arity (" +
                            std::to_string(arity) + ")");
    if (const auto* t = std::get_if<ThresholdFn>(&f)) return ones >= t->t;
    if (const auto* s = std::get_if<SymmetricFn>(&f)) {
        if (s->table.size() != arity + 1)
            throw ContractError("eval_local: symmetry table has " +
                                std::to_string(s->table.size()) + " entries, expected " +
                                std::to_string(arity + 1));
        return s->table[ones] != 0;
    }
    throw ContractError("eval_local: composed local is not a symmetric function");
}

std::vector<std::uint8_t> symmetry_table(const LocalFunction& f, unsigned arity) {
    std::vector<std::uint8_t> table(arity + 1);
    for (unsigned c = 0; c <= arity; ++c) table[c] = eval_local(f, c, arity) ? 1 : 0;
    return table;
}

namespace {

void validate_local(const LocalFunction& f, std::size_t n, std::size_t degree,
                    const std::string& where) {
    if (const auto* s = std::get_if<SymmetricFn>(&f)) {
        if (s->table.size() != degree + 2)
            throw ContractError(where + ": symmetry table has " + std::to_string(s->table.size()) +
                                " entries, expected " + std::to_string(degree + 2));
    } else if (const auto* c = std::get_if<ComposedFn>(&f)) {
        for (const auto& part : c->parts) {
            if (!std::is_sorted(part.nodes.begin(), part.nodes.end()) ||
                std::adjacent_find(part.nodes.begin(), part.nodes.end()) != part.nodes.end())
                throw ContractError(where + ": composed part nodes must be sorted and unique");
            if (!part.nodes.empty() && part.nodes.back() >= n)
                throw ContractError(where + ": composed part node out of range");
            if (part.table.size() != part.nodes.size() + 1)
                throw ContractError(where + ": composed part table has " +
                                    std::to_string(part.table.size()) + " entries, expected " +
                                    std::to_string(part.nodes.size() + 1));
        }
    }
}

} // namespace

void MSyDS::validate() const {
    const std::size_t n = node_count();
    const std::size_t k = layer_count();
    if (k == 0) throw ContractError("system: at least one layer required");
    if (layers.size() != locals.size())
        throw ContractError("system: locals must have one entry per layer");
    if (masters.size() != n) throw ContractError("system: one master per node required");
    for (std::size_t i = 0; i < k; ++i) {
        if (layers[i].node_count() != n)
            throw ContractError("system: layer " + std::to_string(i) + " has wrong node count");
        if (locals[i].size() != n)
            throw ContractError("system: layer " + std::to_string(i) +
                                " must have one local per node");
        for (NodeId v = 0; v < n; ++v)
            validate_local(locals[i][v], n, layers[i].degree(v),
                           "layer " + std::to_string(i) + ", node " + node_names[v]);
    }
    for (NodeId v = 0; v < n; ++v) {
        if (const auto* s = std::get_if<SymmetricMaster>(&masters[v])) {
            if (s->table.size() != k + 1)
                throw ContractError("master of " + node_names[v] + ": table has " +
                                    std::to_string(s->table.size()) + " entries, expected " +
                                    std::to_string(k + 1));
        } else if (const auto* t = std::get_if<TableMaster>(&masters[v])) {
            if (t->bits.size() != (std::size_t{1} << k))
                throw ContractError("master of " + node_names[v] + ": truth table has " +
                                    std::to_string(t->bits.size()) + " entries, expected 2^" +
                                    std::to_string(k));
        }
    }
}

bool layer_output(const MSyDS& s, std::size_t layer, NodeId v, const Configuration& c) {
    const LocalFunction& f = s.locals[layer][v];
    if (const auto* comp = std::get_if<ComposedFn>(&f)) {
        std::vector<std::uint8_t> part_outputs;
        part_outputs.reserve(comp->parts.size());
        for (const auto& part : comp->parts) {
            unsigned ones = 0;
            for (NodeId u : part.nodes) ones += c.get(u) ? 1 : 0;
            part_outputs.push_back(part.table[ones]);
        }
        return eval_master(comp->master, part_outputs);
    }
    const LayerGraph& g = s.layers[layer];
    unsigned ones = c.get(v) ? 1 : 0;
    for (NodeId u : g.neighbors(v)) ones += c.get(u) ? 1 : 0;
    return eval_local(f, ones, static_cast<unsigned>(g.degree(v)) + 1);
}

bool node_successor(const MSyDS& s, NodeId v, const Configuration& c) {
    std::vector<std::uint8_t> outputs(s.layer_count());
    for (std::size_t i = 0; i < s.layer_count(); ++i)
        outputs[i] = layer_output(s, i, v, c) ? 1 : 0;
    return eval_master(s.masters[v], outputs);
}

Configuration successor(const MSyDS& s, const Configuration& c) {
    if (c.size() != s.node_count())
        throw ContractError("successor: configuration has " + std::to_string(c.size()) +
                            " bits, system has " + std::to_string(s.node_count()) + " nodes");
    Configuration next(s.node_count());
    for (NodeId v = 0; v < s.node_count(); ++v)
        if (node_successor(s, v, c)) next.set(v, true);
    return next;
}

} // namespace msyds
