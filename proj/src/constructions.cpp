#include "msyds/constructions.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <string>

#include "msyds/errors.hpp"

namespace msyds {

namespace {

ThresholdFn constant_zero(std::size_t degree) {
    return ThresholdFn{static_cast<unsigned>(degree) + 2};
}

std::string node_name(const char* prefix, unsigned i) {
    return std::string(prefix) + std::to_string(i);
}

} // namespace

bool satisfies(const CnfFormula& f, const std::vector<std::uint8_t>& assignment) {
    if (assignment.size() != f.num_vars)
        throw ContractError("satisfies: assignment has " + std::to_string(assignment.size()) +
                            " bits, formula has " + std::to_string(f.num_vars) + " variables");
    for (const auto& clause : f.clauses) {
        bool sat = false;
        for (int lit : clause) {
            unsigned var = static_cast<unsigned>(std::abs(lit));
            bool value = assignment[var - 1] != 0;
            if ((lit > 0) == value) {
                sat = true;
                break;
            }
        }
        if (!sat) return false;
    }
    return true;
}

MSyDS unary_cycle(unsigned n) {
    if (n < 1) throw ContractError("unary_cycle: n must be at least 1");
    MSyDS s;
    for (unsigned i = 1; i <= n; ++i) s.node_names.push_back(node_name("v", i));
    LayerGraph complete(n);
    for (NodeId u = 0; u < n; ++u)
        for (NodeId v = u + 1; v < n; ++v) complete.add_edge(u, v);
    s.layers = {complete, complete};
    s.locals.resize(2);
    for (NodeId v = 0; v < n; ++v) {
        s.locals[0].push_back(ThresholdFn{n});
        s.locals[1].push_back(ThresholdFn{v}); // node v_{i} has threshold i-1
        s.masters.push_back(XorMaster{});
    }
    s.validate();
    return s;
}

std::vector<unsigned> first_primes(unsigned q) {
    if (q < 1) throw ContractError("first_primes: q must be at least 1");
    std::vector<unsigned> primes;
    for (unsigned candidate = 2; primes.size() < q; ++candidate) {
        bool prime = true;
        for (unsigned p : primes) {
            if (p * p > candidate) break;
            if (candidate % p == 0) {
                prime = false;
                break;
            }
        }
        if (prime) primes.push_back(candidate);
    }
    return primes;
}

MSyDS primorial(unsigned q) {
    auto primes = first_primes(q);
    std::size_t n = 0;
    for (unsigned p : primes) n += p - 1;

    MSyDS s;
    s.layers = {LayerGraph(n), LayerGraph(n)};
    s.locals.resize(2);
    NodeId base = 0;
    for (unsigned block_index = 0; block_index < q; ++block_index) {
        unsigned block_size = primes[block_index] - 1;
        for (unsigned i = 1; i <= block_size; ++i)
            s.node_names.push_back("p" + std::to_string(block_index + 1) + "_v" +
                                   std::to_string(i));
        for (NodeId u = 0; u < block_size; ++u)
            for (NodeId v = u + 1; v < block_size; ++v) {
                s.layers[0].add_edge(base + u, base + v);
                s.layers[1].add_edge(base + u, base + v);
            }
        for (NodeId v = 0; v < block_size; ++v) {
            s.locals[0].push_back(ThresholdFn{block_size});
            s.locals[1].push_back(ThresholdFn{v});
            s.masters.push_back(XorMaster{});
        }
        base += block_size;
    }
    s.validate();
    return s;
}

MSyDS binary_counter(unsigned n) {
    if (n < 2) throw ContractError("binary_counter: n must be at least 2");
    const unsigned k = 2 * n - 1;
    MSyDS s;
    for (unsigned i = 1; i <= n; ++i) s.node_names.push_back(node_name("v", i));
    s.layers.assign(k, LayerGraph(n));
    s.locals.assign(k, {});

    // Layer 0 (paper layer 1) is edgeless with threshold 1 everywhere:
    // each node's output is its own state.
    for (NodeId v = 0; v < n; ++v) s.locals[0].push_back(ThresholdFn{1});

    // For j in 2..n, layers j-1 and n+j-2 are the star on v_j and all
    // lower-index nodes; v_j's thresholds are j-1 and j respectively.
    for (unsigned j = 2; j <= n; ++j) {
        for (std::size_t layer : {std::size_t{j - 1}, std::size_t{n + j - 2}})
            for (NodeId i = 0; i + 1 < j; ++i) s.layers[layer].add_edge(j - 1, i);
        for (NodeId v = 0; v < n; ++v) {
            s.locals[j - 1].push_back(v == j - 1 ? ThresholdFn{j - 1}
                                                 : constant_zero(s.layers[j - 1].degree(v)));
            s.locals[n + j - 2].push_back(v == j - 1 ? ThresholdFn{j}
                                                     : constant_zero(s.layers[n + j - 2].degree(v)));
        }
    }

    s.masters.push_back(NorMaster{});
    // "exactly one or exactly two of the k layer outputs"
    std::vector<std::uint8_t> one_or_two(k + 1, 0);
    one_or_two[1] = one_or_two[2] = 1;
    for (NodeId v = 1; v < n; ++v) s.masters.push_back(SymmetricMaster{one_or_two});
    s.validate();
    return s;
}

ReductionPair sat_to_msyds(const CnfFormula& f) {
    if (f.num_vars == 0 || f.clauses.empty())
        throw ContractError("sat_to_msyds: formula must have variables and clauses");
    for (const auto& clause : f.clauses)
        if (clause.empty()) throw ContractError("sat_to_msyds: empty clause");

    const unsigned nv = f.num_vars;
    const std::size_t m = f.clauses.size();
    const std::size_t node_total = 2 * nv + 1;
    const NodeId center = static_cast<NodeId>(2 * nv);
    const std::size_t k = 1 + nv + m;

    MSyDS s;
    for (unsigned i = 1; i <= nv; ++i) {
        s.node_names.push_back(node_name("y", i));
        s.node_names.push_back(node_name("z", i));
    }
    s.node_names.push_back("w");
    s.layers.assign(k, LayerGraph(node_total));
    s.locals.assign(k, {});

    // Star layer: center connected to every literal node.
    for (NodeId v = 0; v < center; ++v) s.layers[0].add_edge(center, v);
    // One consistency layer per variable.
    for (unsigned i = 0; i < nv; ++i) {
        s.layers[1 + i].add_edge(center, 2 * i);     // y_i
        s.layers[1 + i].add_edge(center, 2 * i + 1); // z_i
    }
    // One layer per clause, with an edge to the complement of each literal.
    std::vector<unsigned> clause_sizes;
    for (std::size_t j = 0; j < m; ++j) {
        std::set<NodeId> endpoints;
        for (int lit : f.clauses[j]) {
            unsigned var = static_cast<unsigned>(std::abs(lit));
            // complement of x_i is z_i; complement of not-x_i is y_i
            NodeId node = lit > 0 ? 2 * (var - 1) + 1 : 2 * (var - 1);
            endpoints.insert(node);
        }
        for (NodeId node : endpoints) s.layers[1 + nv + j].add_edge(center, node);
        clause_sizes.push_back(static_cast<unsigned>(endpoints.size()));
    }

    for (std::size_t layer = 0; layer < k; ++layer)
        for (NodeId v = 0; v < node_total; ++v) {
            unsigned t;
            if (v != center)
                t = 0; // literal nodes are constant 1 everywhere
            else if (layer == 0)
                t = nv;
            else if (layer <= nv)
                t = 2;
            else
                t = clause_sizes[layer - nv - 1];
            s.locals[layer].push_back(ThresholdFn{t});
        }
    s.masters.assign(node_total, OrMaster{});
    s.validate();

    ReductionPair pair;
    pair.s = s;
    std::get<ThresholdFn>(s.locals[0][center]).t = nv + 1;
    pair.s_prime = std::move(s);
    for (unsigned i = 1; i <= nv; ++i) {
        pair.node_roles.push_back({NodeRole::LiteralPos, i});
        pair.node_roles.push_back({NodeRole::LiteralNeg, i});
    }
    pair.node_roles.push_back({NodeRole::Center, 0});
    return pair;
}

std::vector<std::uint8_t> witness_to_assignment(const ReductionPair& pair,
                                                const Configuration& w) {
    if (successor(pair.s, w) == successor(pair.s_prime, w))
        throw ContractError("witness_to_assignment: configuration is not an inequivalence witness");
    std::vector<std::uint8_t> alpha;
    for (std::size_t i = 0; i < pair.node_roles.size(); ++i)
        if (pair.node_roles[i].kind == NodeRole::LiteralPos)
            alpha.push_back(w.get(static_cast<NodeId>(i)) ? 1 : 0);
    return alpha;
}

Configuration assignment_to_witness(const ReductionPair& pair,
                                    const std::vector<std::uint8_t>& alpha) {
    const std::size_t n = pair.s.node_count();
    if (2 * alpha.size() + 1 != n)
        throw ContractError("assignment_to_witness: expected " + std::to_string((n - 1) / 2) +
                            " assignment bits, got " + std::to_string(alpha.size()));
    Configuration c(n);
    for (std::size_t i = 0; i < alpha.size(); ++i) {
        c.set(static_cast<NodeId>(2 * i), alpha[i] != 0);
        c.set(static_cast<NodeId>(2 * i + 1), alpha[i] == 0);
    }
    return c;
}

MSyDS hierarchy_or(unsigned k) {
    if (k < 2) throw ContractError("hierarchy_or: k must be at least 2");
    MSyDS s;
    s.node_names.push_back("a");
    for (unsigned i = 1; i <= k; ++i) s.node_names.push_back(node_name("b", i));
    s.layers.assign(k, LayerGraph(k + 1));
    s.locals.assign(k, {});
    for (unsigned i = 0; i < k; ++i) {
        s.layers[i].add_edge(0, i + 1);
        for (NodeId v = 0; v <= k; ++v)
            s.locals[i].push_back(v == 0 ? LocalFunction{ThresholdFn{2}}
                                         : LocalFunction{constant_zero(s.layers[i].degree(v))});
    }
    s.masters.assign(k + 1, OrMaster{});
    s.validate();
    return s;
}

MSyDS hierarchy_and_equiv(unsigned k) {
    if (k < 2) throw ContractError("hierarchy_and_equiv: k must be at least 2");
    MSyDS s;
    s.node_names.push_back("a");
    for (unsigned i = 1; i <= k; ++i) s.node_names.push_back(node_name("b", i));
    s.layers.assign(2, LayerGraph(k + 1));
    for (unsigned i = 1; i <= k; ++i) s.layers[1].add_edge(0, i);
    s.locals.assign(2, {});
    for (NodeId v = 0; v <= k; ++v) {
        s.locals[0].push_back(v == 0 ? LocalFunction{ThresholdFn{1}}
                                     : LocalFunction{constant_zero(0)});
        s.locals[1].push_back(v == 0 ? LocalFunction{ThresholdFn{2}}
                                     : LocalFunction{constant_zero(s.layers[1].degree(v))});
    }
    s.masters.assign(k + 1, AndMaster{});
    s.validate();
    return s;
}

MSyDS merge_layers(const MSyDS& s, std::size_t i, std::size_t j) {
    if (i == j || i >= s.layer_count() || j >= s.layer_count())
        throw ContractError("merge_layers: need two distinct valid layer indices");
    for (const auto& m : s.masters)
        if (std::holds_alternative<SymmetricMaster>(m) || std::holds_alternative<TableMaster>(m))
            throw UnsupportedError(
                "merge_layers: symmetric/table masters do not survive an arity change");

    const std::size_t n = s.node_count();
    LayerGraph merged(n);
    for (auto [u, v] : s.layers[i].edges()) merged.add_edge(u, v);
    for (auto [u, v] : s.layers[j].edges())
        if (!merged.has_edge(u, v)) merged.add_edge(u, v);

    MSyDS out;
    out.node_names = s.node_names;
    for (std::size_t layer = 0; layer < s.layer_count(); ++layer) {
        if (layer == j) continue;
        out.layers.push_back(layer == i ? merged : s.layers[layer]);
        out.locals.push_back(s.locals[layer]);
    }
    // The merged layer keeps layer i's locals. A symmetry table tied to
    // layer i's degree no longer fits if the union changed that degree,
    // and a constant-0 threshold encoding must track the new degree to
    // stay constant.
    const std::size_t merged_index = i < j ? i : i - 1;
    for (NodeId v = 0; v < n; ++v) {
        LocalFunction& f = out.locals[merged_index][v];
        if (std::holds_alternative<ComposedFn>(f))
            throw UnsupportedError("merge_layers: composed local at node " + s.node_names[v]);
        if (std::holds_alternative<SymmetricFn>(f) && merged.degree(v) != s.layers[i].degree(v))
            throw UnsupportedError("merge_layers: symmetric local of node " + s.node_names[v] +
                                   " cannot be re-fitted to the merged degree");
        if (auto* t = std::get_if<ThresholdFn>(&f))
            if (t->t > s.layers[i].degree(v) + 1)
                t->t = static_cast<unsigned>(merged.degree(v)) + 2;
    }
    out.masters = s.masters;
    out.validate();
    return out;
}

MSyDS flatten(const MSyDS& s) {
    const std::size_t n = s.node_count();
    MSyDS out;
    out.node_names = s.node_names;
    LayerGraph complete(n);
    for (NodeId u = 0; u < n; ++u)
        for (NodeId v = u + 1; v < n; ++v) complete.add_edge(u, v);
    out.layers = {complete};
    out.locals.resize(1);
    for (NodeId v = 0; v < n; ++v) {
        ComposedFn composed;
        composed.master = s.masters[v];
        for (std::size_t layer = 0; layer < s.layer_count(); ++layer) {
            const LocalFunction& f = s.locals[layer][v];
            if (!is_symmetric_local(f))
                throw UnsupportedError("flatten: node " + s.node_names[v] + " in layer " +
                                       std::to_string(layer) + " already has a composed local");
            ComposedPart part;
            part.nodes = s.layers[layer].neighbors(v);
            part.nodes.insert(std::upper_bound(part.nodes.begin(), part.nodes.end(), v), v);
            part.table = symmetry_table(f, static_cast<unsigned>(part.nodes.size()));
            composed.parts.push_back(std::move(part));
        }
        out.locals[0].push_back(std::move(composed));
        out.masters.push_back(OrMaster{});
    }
    out.validate();
    return out;
}

namespace {

// psi restricted to one input: the bit the master yields when its single
// layer output is 0 resp. 1.
std::pair<bool, bool> unary_master_values(const MasterFunction& m) {
    return {eval_master(m, {0}), eval_master(m, {1})};
}

} // namespace

MSyDS lift(const MSyDS& s, unsigned k_target) {
    if (s.layer_count() != 1)
        throw ContractError("lift: input must have exactly one layer, has " +
                            std::to_string(s.layer_count()));
    if (k_target < 2) throw ContractError("lift: k_target must be at least 2");

    MSyDS out;
    out.node_names = s.node_names;
    out.layers.assign(k_target, s.layers[0]);
    out.locals.resize(k_target);
    for (NodeId v = 0; v < s.node_count(); ++v) {
        auto [on_zero, on_one] = unary_master_values(s.masters[v]);
        LocalFunction local = s.locals[0][v];
        if (!(on_zero == false && on_one == true)) {
            // Fold the non-identity master into the function itself so
            // OR masters preserve the dynamics.
            if (const auto* comp = std::get_if<ComposedFn>(&local)) {
                ComposedFn folded = *comp;
                const std::size_t p = folded.parts.size();
                std::vector<std::uint8_t> bits(std::size_t{1} << p);
                for (std::size_t idx = 0; idx < bits.size(); ++idx) {
                    std::vector<std::uint8_t> inputs(p);
                    for (std::size_t b = 0; b < p; ++b) inputs[b] = (idx >> b) & 1;
                    bool inner = eval_master(folded.master, inputs);
                    bits[idx] = (inner ? on_one : on_zero) ? 1 : 0;
                }
                folded.master = TableMaster{std::move(bits)};
                local = std::move(folded);
            } else {
                unsigned arity = static_cast<unsigned>(s.layers[0].degree(v)) + 1;
                auto table = symmetry_table(local, arity);
                for (auto& bit : table) bit = (bit ? on_one : on_zero) ? 1 : 0;
                local = SymmetricFn{std::move(table)};
            }
        }
        for (unsigned layer = 0; layer < k_target; ++layer) out.locals[layer].push_back(local);
        out.masters.push_back(OrMaster{});
    }
    out.validate();
    return out;
}

} // namespace msyds
