#include "msyds/diff.hpp"

#include <variant>

namespace msyds {

namespace {

std::string describe_local(const LocalFunction& f) {
    if (const auto* t = std::get_if<ThresholdFn>(&f)) return "threshold " + std::to_string(t->t);
    if (std::holds_alternative<SymmetricFn>(f)) return "symmetric table";
    return "composed";
}

std::string describe_master(const MasterFunction& m) {
    switch (m.index()) {
        case 0: return "or";
        case 1: return "and";
        case 2: return "xor";
        case 3: return "nor";
        case 4: return "symmetric table";
        default: return "truth table";
    }
}

} // namespace

std::vector<Difference> structural_diff(const MSyDS& s0, const MSyDS& s1) {
    std::vector<Difference> out;
    if (s0.node_names != s1.node_names) {
        out.push_back({"node lists differ"});
        return out;
    }
    if (s0.layer_count() != s1.layer_count()) {
        out.push_back({"layer counts differ: " + std::to_string(s0.layer_count()) + " vs " +
                       std::to_string(s1.layer_count())});
        return out;
    }
    for (std::size_t layer = 0; layer < s0.layer_count(); ++layer) {
        if (s0.layers[layer] != s1.layers[layer])
            out.push_back({"layer " + std::to_string(layer) + ": edge sets differ"});
        for (NodeId v = 0; v < s0.node_count(); ++v)
            if (s0.locals[layer][v] != s1.locals[layer][v])
                out.push_back({"layer " + std::to_string(layer) + ", node " + s0.node_names[v] +
                               ": local " + describe_local(s0.locals[layer][v]) + " vs " +
                               describe_local(s1.locals[layer][v])});
    }
    for (NodeId v = 0; v < s0.node_count(); ++v)
        if (s0.masters[v] != s1.masters[v])
            out.push_back({"node " + s0.node_names[v] + ": master " +
                           describe_master(s0.masters[v]) + " vs " +
                           describe_master(s1.masters[v])});
    return out;
}

} // namespace msyds
