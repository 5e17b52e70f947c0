// Shared helpers for the test suites: seeded random system generation
// and independent reference oracles. The oracles deliberately avoid the
// library's evaluation path.
#ifndef MSYDS_TESTS_SUPPORT_HPP
#define MSYDS_TESTS_SUPPORT_HPP

#include <algorithm>
#include <cstdlib>
#include <random>
#include <vector>

#include "msyds/constructions.hpp"
#include "msyds/system.hpp"

namespace msyds::testing {

struct RandomSystemOptions {
    std::size_t n = 8;
    std::size_t k = 2;
    double edge_probability = 0.3;
    bool symmetric_tables = false; // random symmetric tables instead of thresholds
    unsigned max_threshold = 0;    // 0 = unrestricted (up to degree + 2)
    enum MasterSet { AnyMaster, OrOnly, AndOnly, SymmetricMasters } masters = AnyMaster;
};

inline MSyDS random_system(std::mt19937& rng, const RandomSystemOptions& opts) {
    MSyDS s;
    for (std::size_t i = 1; i <= opts.n; ++i) s.node_names.push_back("n" + std::to_string(i));
    std::bernoulli_distribution edge(opts.edge_probability);
    std::bernoulli_distribution coin(0.5);
    s.layers.assign(opts.k, LayerGraph(opts.n));
    for (auto& g : s.layers)
        for (NodeId u = 0; u < opts.n; ++u)
            for (NodeId v = u + 1; v < opts.n; ++v)
                if (edge(rng)) g.add_edge(u, v);
    s.locals.resize(opts.k);
    for (std::size_t layer = 0; layer < opts.k; ++layer)
        for (NodeId v = 0; v < opts.n; ++v) {
            unsigned degree = static_cast<unsigned>(s.layers[layer].degree(v));
            if (opts.symmetric_tables) {
                std::vector<std::uint8_t> table(degree + 2);
                for (auto& bit : table) bit = coin(rng) ? 1 : 0;
                s.locals[layer].push_back(SymmetricFn{std::move(table)});
            } else {
                unsigned hi = degree + 2;
                if (opts.max_threshold > 0) hi = std::min(hi, opts.max_threshold);
                std::uniform_int_distribution<unsigned> dist(0, hi);
                unsigned t = dist(rng);
                // keep t out of the range (cap, arity]: either effective
                // below the cap or an explicit constant 0
                if (opts.max_threshold > 0 && t > opts.max_threshold) t = degree + 2;
                s.locals[layer].push_back(ThresholdFn{t});
            }
        }
    for (NodeId v = 0; v < opts.n; ++v) {
        switch (opts.masters) {
            case RandomSystemOptions::OrOnly: s.masters.push_back(OrMaster{}); break;
            case RandomSystemOptions::AndOnly: s.masters.push_back(AndMaster{}); break;
            case RandomSystemOptions::SymmetricMasters: {
                std::vector<std::uint8_t> table(opts.k + 1);
                for (auto& bit : table) bit = coin(rng) ? 1 : 0;
                s.masters.push_back(SymmetricMaster{std::move(table)});
                break;
            }
            case RandomSystemOptions::AnyMaster: {
                std::uniform_int_distribution<int> pick(0, 4);
                switch (pick(rng)) {
                    case 0: s.masters.push_back(OrMaster{}); break;
                    case 1: s.masters.push_back(AndMaster{}); break;
                    case 2: s.masters.push_back(XorMaster{}); break;
                    case 3: s.masters.push_back(NorMaster{}); break;
                    default: {
                        std::vector<std::uint8_t> bits(std::size_t{1} << opts.k);
                        for (auto& bit : bits) bit = coin(rng) ? 1 : 0;
                        s.masters.push_back(TableMaster{std::move(bits)});
                    }
                }
                break;
            }
        }
    }
    s.validate();
    return s;
}

// Perturbs one threshold (or one symmetric-table bit) so pair suites see
// a mix of equivalent and inequivalent cases.
inline MSyDS mutate_one_local(std::mt19937& rng, const MSyDS& s, unsigned threshold_cap = 0) {
    MSyDS out = s;
    std::uniform_int_distribution<std::size_t> pick_layer(0, out.layer_count() - 1);
    std::uniform_int_distribution<NodeId> pick_node(0, static_cast<NodeId>(out.node_count() - 1));
    std::size_t layer = pick_layer(rng);
    NodeId v = pick_node(rng);
    LocalFunction& f = out.locals[layer][v];
    unsigned degree = static_cast<unsigned>(out.layers[layer].degree(v));
    if (auto* t = std::get_if<ThresholdFn>(&f)) {
        unsigned hi = threshold_cap > 0 ? std::min(degree + 2, threshold_cap) : degree + 2;
        std::uniform_int_distribution<unsigned> dist(0, hi);
        unsigned fresh = dist(rng);
        if (threshold_cap > 0 && fresh > threshold_cap) fresh = degree + 2;
        t->t = fresh;
    } else if (auto* sym = std::get_if<SymmetricFn>(&f)) {
        std::uniform_int_distribution<std::size_t> pick_bit(0, sym->table.size() - 1);
        sym->table[pick_bit(rng)] ^= 1;
    }
    return out;
}

// ---- independent reference evaluator ---------------------------------
// Recomputes a node's next state straight from the definitions, using a
// different traversal than the library (scans all nodes for adjacency,
// expands master truth tables explicitly).

inline bool ref_symmetric_value(const LocalFunction& f, unsigned ones) {
    if (const auto* t = std::get_if<ThresholdFn>(&f)) return ones >= t->t;
    return std::get<SymmetricFn>(f).table[ones] != 0;
}

inline bool ref_node_successor(const MSyDS& s, NodeId v, const Configuration& c) {
    std::vector<int> outputs;
    for (std::size_t layer = 0; layer < s.layer_count(); ++layer) {
        unsigned ones = 0;
        for (NodeId u = 0; u < s.node_count(); ++u)
            if ((u == v || s.layers[layer].has_edge(u, v)) && c.get(u)) ++ones;
        outputs.push_back(ref_symmetric_value(s.locals[layer][v], ones) ? 1 : 0);
    }
    int count = 0;
    for (int b : outputs) count += b;
    const std::size_t k = outputs.size();
    if (std::holds_alternative<OrMaster>(s.masters[v])) return count >= 1;
    if (std::holds_alternative<AndMaster>(s.masters[v])) return static_cast<std::size_t>(count) == k;
    if (std::holds_alternative<XorMaster>(s.masters[v])) return count & 1;
    if (std::holds_alternative<NorMaster>(s.masters[v])) return count == 0;
    if (const auto* sym = std::get_if<SymmetricMaster>(&s.masters[v]))
        return sym->table[count] != 0;
    std::size_t idx = 0;
    for (std::size_t j = 0; j < k; ++j)
        if (outputs[j]) idx |= std::size_t{1} << j;
    return std::get<TableMaster>(s.masters[v]).bits[idx] != 0;
}

inline Configuration ref_successor(const MSyDS& s, const Configuration& c) {
    Configuration next(s.node_count());
    for (NodeId v = 0; v < s.node_count(); ++v)
        if (ref_node_successor(s, v, c)) next.set(v, true);
    return next;
}

// Exhaustive satisfiability scan, the independent side of the reduction
// checks.
inline bool satisfiable_by_scan(const CnfFormula& f) {
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << f.num_vars); ++bits) {
        std::vector<std::uint8_t> assignment(f.num_vars);
        for (unsigned i = 0; i < f.num_vars; ++i) assignment[i] = (bits >> i) & 1;
        if (satisfies(f, assignment)) return true;
    }
    return false;
}

// Random CNF with the given shape; clauses of width 3 over distinct
// variables.
inline CnfFormula random_3cnf(std::mt19937& rng, unsigned num_vars, unsigned num_clauses) {
    CnfFormula f;
    f.num_vars = num_vars;
    std::uniform_int_distribution<unsigned> pick_var(1, num_vars);
    std::bernoulli_distribution sign(0.5);
    for (unsigned j = 0; j < num_clauses; ++j) {
        std::vector<int> clause;
        while (clause.size() < 3) {
            int var = static_cast<int>(pick_var(rng));
            bool dup = false;
            for (int lit : clause)
                if (std::abs(lit) == var) dup = true;
            if (!dup) clause.push_back(sign(rng) ? var : -var);
        }
        f.clauses.push_back(std::move(clause));
    }
    return f;
}

} // namespace msyds::testing

#endif
