#include <doctest.h>

#include <map>

#include "msyds/constructions.hpp"
#include "msyds/errors.hpp"
#include "msyds/system.hpp"
#include "support.hpp"

using namespace msyds;
using namespace msyds::testing;

TEST_CASE("eval_local thresholds and tables") {
    CHECK(eval_local(ThresholdFn{2}, 3, 4) == true);
    CHECK(eval_local(ThresholdFn{0}, 0, 1) == true); // threshold 0 is constant 1
    CHECK(eval_local(SymmetricFn{{0, 1, 1, 0}}, 2, 3) == true);
    CHECK(eval_local(ThresholdFn{5}, 0, 3) == false); // over-arity threshold is constant 0

    CHECK_THROWS_AS(eval_local(ThresholdFn{1}, 5, 4), ContractError);
    CHECK_THROWS_AS(eval_local(SymmetricFn{{0, 1}}, 1, 3), ContractError);
}

TEST_CASE("threshold agrees with its symmetry table at every count") {
    for (unsigned arity = 1; arity <= 6; ++arity)
        for (unsigned t = 0; t <= arity + 2; ++t) {
            SymmetricFn table{symmetry_table(ThresholdFn{t}, arity)};
            for (unsigned ones = 0; ones <= arity; ++ones)
                CHECK(eval_local(ThresholdFn{t}, ones, arity) ==
                      eval_local(table, ones, arity));
        }
}

TEST_CASE("layer_output on the paper constructions") {
    MSyDS cyc = unary_cycle(3);
    Configuration all_ones = Configuration::from_string("111", 3);
    // layer-1 threshold is n = 3, met by all three ones
    CHECK(layer_output(cyc, 0, 0, all_ones) == true);

    // constant-0 locals never fire
    MSyDS h = hierarchy_or(2);
    for (std::uint64_t code = 0; code < 8; ++code) {
        Configuration c = Configuration::from_code(code, 3);
        CHECK(layer_output(h, 0, 1, c) == false); // b1 in layer 0: threshold deg+2
    }

    // counter layer 3 (index 2), node v3: closed nbhd {v3, v1, v2}, threshold 2
    MSyDS counter = binary_counter(3);
    Configuration c110 = Configuration::from_string("110", 3);
    CHECK(layer_output(counter, 2, 2, c110) == true);
}

TEST_CASE("node_successor examples") {
    MSyDS counter = binary_counter(3);
    Configuration c110 = Configuration::from_string("110", 3); // encodes 3
    CHECK(node_successor(counter, 0, c110) == false);          // 4 has low bit 0

    MSyDS h = hierarchy_or(2);
    Configuration ab1 = Configuration::from_string("110", 3); // a=1, b1=1
    CHECK(node_successor(h, 0, ab1) == true);
}

TEST_CASE("successor on the unary cycle") {
    MSyDS cyc = unary_cycle(3);
    CHECK(successor(cyc, Configuration::from_string("000", 3)).to_string() == "100");
    CHECK(successor(cyc, Configuration::from_string("111", 3)).to_string() == "000");
    CHECK(successor(cyc, Configuration::from_string("101", 3)).to_string() == "111");
    CHECK(successor(cyc, Configuration::from_string("110", 3)).to_string() == "111");
}

TEST_CASE("successor realizes +1 mod 2^n on the counter") {
    MSyDS counter = binary_counter(3);
    CHECK(successor(counter, Configuration::from_code(3, 3)).code() == 4);
    for (std::uint64_t code = 0; code < 8; ++code)
        CHECK(successor(counter, Configuration::from_code(code, 3)).code() == (code + 1) % 8);
}

TEST_CASE("successor rejects length mismatch") {
    MSyDS cyc = unary_cycle(3);
    CHECK_THROWS_AS(successor(cyc, Configuration(4)), ContractError);
}

TEST_CASE("successor is deterministic and matches the reference evaluator") {
    std::mt19937 rng(12345);
    for (int trial = 0; trial < 20; ++trial) {
        RandomSystemOptions opts;
        opts.n = 7;
        opts.k = 3;
        MSyDS s = random_system(rng, opts);
        std::uniform_int_distribution<std::uint64_t> pick(0, (1u << 7) - 1);
        for (int i = 0; i < 30; ++i) {
            Configuration c = Configuration::from_code(pick(rng), 7);
            Configuration a = successor(s, c);
            CHECK(a == successor(s, c));
            CHECK(a == ref_successor(s, c));
        }
    }
}

TEST_CASE("swapping interchangeable nodes leaves a successor bit unchanged") {
    std::mt19937 rng(777);
    for (int trial = 0; trial < 20; ++trial) {
        RandomSystemOptions opts;
        opts.n = 8;
        opts.k = 2;
        opts.symmetric_tables = true;
        MSyDS s = random_system(rng, opts);
        for (NodeId v = 0; v < s.node_count(); ++v) {
            // group nodes by adjacency signature to v across all layers
            std::map<std::uint64_t, std::vector<NodeId>> groups;
            for (NodeId u = 0; u < s.node_count(); ++u) {
                std::uint64_t mask = 0;
                for (std::size_t layer = 0; layer < s.layer_count(); ++layer)
                    if (u == v || s.layers[layer].has_edge(u, v))
                        mask |= std::uint64_t{1} << layer;
                groups[mask].push_back(u);
            }
            std::uniform_int_distribution<std::uint64_t> pick(0, (1u << 8) - 1);
            for (const auto& [mask, nodes] : groups) {
                if (nodes.size() < 2) continue;
                NodeId a = nodes[0], b = nodes[1];
                if (a == v || b == v) continue;
                Configuration c = Configuration::from_code(pick(rng), 8);
                Configuration swapped = c;
                swapped.set(a, c.get(b));
                swapped.set(b, c.get(a));
                CHECK(node_successor(s, v, c) == node_successor(s, v, swapped));
            }
        }
    }
}

TEST_CASE("layer graph rejects self-loops and duplicates") {
    LayerGraph g(3);
    g.add_edge(0, 1);
    CHECK_THROWS_AS(g.add_edge(1, 1), ContractError);
    CHECK_THROWS_AS(g.add_edge(1, 0), ContractError);
    CHECK(g.edge_count() == 1);
}

TEST_CASE("validate catches malformed systems") {
    MSyDS s = unary_cycle(2);
    s.locals[0][0] = SymmetricFn{{1, 0}}; // degree 1 needs 3 entries
    CHECK_THROWS_AS(s.validate(), ContractError);

    MSyDS s2 = unary_cycle(2);
    s2.masters[0] = SymmetricMaster{{1, 0}}; // k = 2 needs 3 entries
    CHECK_THROWS_AS(s2.validate(), ContractError);
}
