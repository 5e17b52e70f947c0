#include "msyds/formats.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "msyds/errors.hpp"

namespace msyds {

namespace {

using json = nlohmann::ordered_json;

void check_keys(const json& obj, std::initializer_list<const char*> allowed,
                const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const char* key : allowed)
            if (it.key() == key) ok = true;
        if (!ok) throw ParseError(where + ": unknown key \"" + it.key() + "\"");
    }
}

std::vector<std::uint8_t> parse_bits(const json& arr, const std::string& where) {
    if (!arr.is_array()) throw ParseError(where + ": expected an array of 0/1");
    std::vector<std::uint8_t> bits;
    for (const auto& entry : arr) {
        if (!entry.is_number_integer() || (entry != 0 && entry != 1))
            throw ParseError(where + ": entries must be 0 or 1");
        bits.push_back(entry.get<int>() ? 1 : 0);
    }
    return bits;
}

MasterFunction parse_master(const json& obj, const std::string& where);

LocalFunction parse_local(const json& obj, const std::map<std::string, NodeId>& node_index,
                          const std::string& where) {
    if (!obj.is_object() || !obj.contains("type"))
        throw ParseError(where + ": local function must be an object with a \"type\"");
    std::string type = obj.at("type").get<std::string>();
    if (type == "threshold") {
        check_keys(obj, {"type", "t"}, where);
        if (!obj.contains("t") || !obj.at("t").is_number_unsigned())
            throw ParseError(where + ": threshold needs a non-negative integer \"t\"");
        return ThresholdFn{obj.at("t").get<unsigned>()};
    }
    if (type == "symmetric") {
        check_keys(obj, {"type", "table"}, where);
        if (!obj.contains("table")) throw ParseError(where + ": symmetric local needs a \"table\"");
        return SymmetricFn{parse_bits(obj.at("table"), where + ".table")};
    }
    if (type == "composed") {
        check_keys(obj, {"type", "master", "parts"}, where);
        if (!obj.contains("master") || !obj.contains("parts"))
            throw ParseError(where + ": composed local needs \"master\" and \"parts\"");
        ComposedFn composed;
        composed.master = parse_master(obj.at("master"), where + ".master");
        for (const auto& part_obj : obj.at("parts")) {
            check_keys(part_obj, {"nodes", "table"}, where + ".parts");
            ComposedPart part;
            for (const auto& name : part_obj.at("nodes")) {
                auto it = node_index.find(name.get<std::string>());
                if (it == node_index.end())
                    throw ParseError(where + ": unknown node \"" + name.get<std::string>() +
                                     "\" in composed part");
                part.nodes.push_back(it->second);
            }
            std::sort(part.nodes.begin(), part.nodes.end());
            part.table = parse_bits(part_obj.at("table"), where + ".parts.table");
            composed.parts.push_back(std::move(part));
        }
        return composed;
    }
    throw ParseError(where + ": unknown local type \"" + type + "\"");
}

MasterFunction parse_master(const json& obj, const std::string& where) {
    if (!obj.is_object() || !obj.contains("type"))
        throw ParseError(where + ": master function must be an object with a \"type\"");
    std::string type = obj.at("type").get<std::string>();
    if (type == "or" || type == "and" || type == "xor" || type == "nor") {
        check_keys(obj, {"type"}, where);
        if (type == "or") return OrMaster{};
        if (type == "and") return AndMaster{};
        if (type == "xor") return XorMaster{};
        return NorMaster{};
    }
    if (type == "symmetric") {
        check_keys(obj, {"type", "table"}, where);
        if (!obj.contains("table")) throw ParseError(where + ": symmetric master needs a \"table\"");
        return SymmetricMaster{parse_bits(obj.at("table"), where + ".table")};
    }
    if (type == "table") {
        check_keys(obj, {"type", "bits"}, where);
        if (!obj.contains("bits")) throw ParseError(where + ": table master needs \"bits\"");
        return TableMaster{parse_bits(obj.at("bits"), where + ".bits")};
    }
    throw ParseError(where + ": unknown master type \"" + type + "\"");
}

json local_to_json(const LocalFunction& f, const MSyDS& s);

json master_to_json(const MasterFunction& m) {
    return std::visit(
        [](const auto& f) -> json {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, OrMaster>) return json{{"type", "or"}};
            else if constexpr (std::is_same_v<T, AndMaster>) return json{{"type", "and"}};
            else if constexpr (std::is_same_v<T, XorMaster>) return json{{"type", "xor"}};
            else if constexpr (std::is_same_v<T, NorMaster>) return json{{"type", "nor"}};
            else if constexpr (std::is_same_v<T, SymmetricMaster>)
                return json{{"type", "symmetric"}, {"table", f.table}};
            else
                return json{{"type", "table"}, {"bits", f.bits}};
        },
        m);
}

json local_to_json(const LocalFunction& f, const MSyDS& s) {
    return std::visit(
        [&](const auto& fn) -> json {
            using T = std::decay_t<decltype(fn)>;
            if constexpr (std::is_same_v<T, ThresholdFn>) {
                return json{{"type", "threshold"}, {"t", fn.t}};
            } else if constexpr (std::is_same_v<T, SymmetricFn>) {
                return json{{"type", "symmetric"}, {"table", fn.table}};
            } else {
                json parts = json::array();
                for (const auto& part : fn.parts) {
                    json names = json::array();
                    for (NodeId u : part.nodes) names.push_back(s.node_names[u]);
                    parts.push_back(json{{"nodes", names}, {"table", part.table}});
                }
                return json{{"type", "composed"}, {"master", master_to_json(fn.master)},
                            {"parts", parts}};
            }
        },
        f);
}

} // namespace

MSyDS parse_system(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("system document: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("system document: top level must be an object");
    check_keys(doc, {"nodes", "layers", "masters"}, "system document");
    if (!doc.contains("nodes") || !doc.contains("layers") || !doc.contains("masters"))
        throw ParseError("system document: \"nodes\", \"layers\" and \"masters\" are required");

    MSyDS s;
    std::map<std::string, NodeId> node_index;
    for (const auto& entry : doc.at("nodes")) {
        if (!entry.is_string()) throw ParseError("nodes: entries must be strings");
        std::string name = entry.get<std::string>();
        if (!node_index.emplace(name, static_cast<NodeId>(s.node_names.size())).second)
            throw ParseError("nodes: duplicate node name \"" + name + "\"");
        s.node_names.push_back(std::move(name));
    }
    if (s.node_names.empty()) throw ParseError("nodes: at least one node required");

    const std::size_t n = s.node_names.size();
    if (!doc.at("layers").is_array() || doc.at("layers").empty())
        throw ParseError("layers: at least one layer required");
    std::size_t layer_idx = 0;
    for (const auto& layer_obj : doc.at("layers")) {
        std::string where = "layer " + std::to_string(layer_idx);
        check_keys(layer_obj, {"edges", "default_local", "locals"}, where);
        if (!layer_obj.contains("edges")) throw ParseError(where + ": \"edges\" is required");
        LayerGraph g(n);
        for (const auto& edge : layer_obj.at("edges")) {
            if (!edge.is_array() || edge.size() != 2)
                throw ParseError(where + ": edges must be 2-element name pairs");
            NodeId ends[2];
            for (int e = 0; e < 2; ++e) {
                auto it = node_index.find(edge[e].get<std::string>());
                if (it == node_index.end())
                    throw ParseError(where + ": unknown node \"" + edge[e].get<std::string>() +
                                     "\" in edge");
                ends[e] = it->second;
            }
            try {
                g.add_edge(ends[0], ends[1]);
            } catch (const ContractError& e) {
                throw ParseError(where + ": " + e.what());
            }
        }

        std::vector<std::optional<LocalFunction>> locals(n);
        if (layer_obj.contains("default_local")) {
            LocalFunction def =
                parse_local(layer_obj.at("default_local"), node_index, where + ".default_local");
            for (auto& slot : locals) slot = def;
        }
        if (layer_obj.contains("locals")) {
            const auto& overrides = layer_obj.at("locals");
            if (!overrides.is_object()) throw ParseError(where + ": \"locals\" must be an object");
            for (auto it = overrides.begin(); it != overrides.end(); ++it) {
                auto node_it = node_index.find(it.key());
                if (node_it == node_index.end())
                    throw ParseError(where + ": unknown node \"" + it.key() + "\" in locals");
                locals[node_it->second] =
                    parse_local(it.value(), node_index, where + ".locals." + it.key());
            }
        }
        s.locals.emplace_back();
        for (NodeId v = 0; v < n; ++v) {
            if (!locals[v])
                throw ParseError(where + ": node \"" + s.node_names[v] +
                                 "\" has no local function and no default_local is given");
            s.locals.back().push_back(std::move(*locals[v]));
        }
        s.layers.push_back(std::move(g));
        ++layer_idx;
    }

    const auto& masters = doc.at("masters");
    if (!masters.is_object()) throw ParseError("masters: must be an object");
    s.masters.resize(n, OrMaster{});
    std::vector<bool> have_master(n, false);
    for (auto it = masters.begin(); it != masters.end(); ++it) {
        auto node_it = node_index.find(it.key());
        if (node_it == node_index.end())
            throw ParseError("masters: unknown node \"" + it.key() + "\"");
        s.masters[node_it->second] = parse_master(it.value(), "masters." + it.key());
        have_master[node_it->second] = true;
    }
    for (NodeId v = 0; v < n; ++v)
        if (!have_master[v])
            throw ParseError("masters: node \"" + s.node_names[v] + "\" has no master function");

    try {
        s.validate();
    } catch (const ContractError& e) {
        throw ParseError(std::string("system document: ") + e.what());
    }
    return s;
}

std::string serialize_system(const MSyDS& s) {
    json doc;
    doc["nodes"] = s.node_names;
    doc["layers"] = json::array();
    for (std::size_t layer = 0; layer < s.layer_count(); ++layer) {
        json layer_obj;
        std::vector<std::pair<std::string, std::string>> edges;
        for (auto [u, v] : s.layers[layer].edges()) {
            std::string a = s.node_names[u], b = s.node_names[v];
            if (b < a) std::swap(a, b);
            edges.emplace_back(std::move(a), std::move(b));
        }
        std::sort(edges.begin(), edges.end());
        json edge_arr = json::array();
        for (auto& [a, b] : edges) edge_arr.push_back(json::array({a, b}));
        layer_obj["edges"] = std::move(edge_arr);

        // Hoist the most common local (ties by serialized text) into
        // default_local so constant-heavy constructions stay small.
        std::map<std::string, std::size_t> counts;
        std::vector<std::string> dumped;
        for (NodeId v = 0; v < s.node_count(); ++v) {
            dumped.push_back(local_to_json(s.locals[layer][v], s).dump());
            ++counts[dumped.back()];
        }
        std::string default_text = dumped[0];
        for (const auto& [text, count] : counts)
            if (count > counts[default_text] ||
                (count == counts[default_text] && text < default_text))
                default_text = text;
        layer_obj["default_local"] = json::parse(default_text);
        json overrides = json::object();
        std::vector<std::pair<std::string, std::string>> ordered;
        for (NodeId v = 0; v < s.node_count(); ++v)
            if (dumped[v] != default_text) ordered.emplace_back(s.node_names[v], dumped[v]);
        std::sort(ordered.begin(), ordered.end());
        for (auto& [name, text] : ordered) overrides[name] = json::parse(text);
        if (!overrides.empty()) layer_obj["locals"] = std::move(overrides);
        doc["layers"].push_back(std::move(layer_obj));
    }

    std::vector<std::string> sorted_names = s.node_names;
    std::sort(sorted_names.begin(), sorted_names.end());
    json masters = json::object();
    std::map<std::string, NodeId> node_index;
    for (NodeId v = 0; v < s.node_count(); ++v) node_index[s.node_names[v]] = v;
    for (const auto& name : sorted_names) masters[name] = master_to_json(s.masters[node_index[name]]);
    doc["masters"] = std::move(masters);
    return doc.dump(2) + "\n";
}

CnfFormula parse_dimacs(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    CnfFormula f;
    bool have_header = false;
    std::size_t declared_clauses = 0;
    std::vector<int> current;
    auto finish_clause = [&]() {
        std::set<int> seen(current.begin(), current.end());
        for (int lit : seen)
            if (seen.count(-lit))
                throw ParseError("dimacs: tautological clause with variable " +
                                 std::to_string(std::abs(lit)));
        if (seen.empty()) throw ParseError("dimacs: empty clause");
        f.clauses.emplace_back(seen.begin(), seen.end());
        current.clear();
    };
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == 'c') continue;
        if (line[0] == '%') break;
        std::istringstream tokens(line);
        if (line[0] == 'p') {
            std::string p, cnf;
            if (!(tokens >> p >> cnf >> f.num_vars >> declared_clauses) || cnf != "cnf")
                throw ParseError("dimacs: malformed header \"" + line + "\"");
            have_header = true;
            continue;
        }
        if (!have_header) throw ParseError("dimacs: clause before \"p cnf\" header");
        int lit;
        while (tokens >> lit) {
            if (lit == 0) {
                finish_clause();
                continue;
            }
            if (static_cast<unsigned>(std::abs(lit)) > f.num_vars)
                throw ParseError("dimacs: literal " + std::to_string(lit) +
                                 " out of range for " + std::to_string(f.num_vars) + " variables");
            current.push_back(lit);
        }
    }
    if (!have_header) throw ParseError("dimacs: missing \"p cnf\" header");
    if (!current.empty()) throw ParseError("dimacs: last clause is not 0-terminated");
    if (f.clauses.size() != declared_clauses)
        throw ParseError("dimacs: header declares " + std::to_string(declared_clauses) +
                         " clauses, found " + std::to_string(f.clauses.size()));
    return f;
}

std::string verdict_to_json(const EquivalenceVerdict& verdict, const MSyDS& s) {
    json doc;
    doc["algorithm"] = verdict.algorithm;
    doc["result"] = verdict.equivalent ? "equivalent" : "inequivalent";
    doc["work"] = verdict.work;
    if (!verdict.equivalent) {
        doc["witness"] = verdict.witness->to_string();
        doc["node"] = s.node_names[*verdict.node];
    }
    return doc.dump(2) + "\n";
}

std::string phase_space_to_json(const PhaseSpaceReport& report) {
    json doc;
    doc["n"] = report.n;
    doc["cycle_count"] = report.cycles.size();
    doc["cycles"] = report.cycles;
    doc["fixed_points"] = report.fixed_points;
    doc["max_transient"] = report.max_transient;
    json hist = json::object();
    for (const auto& [length, count] : report.transient_histogram)
        hist[std::to_string(length)] = count;
    doc["transient_histogram"] = std::move(hist);
    return doc.dump(2) + "\n";
}

std::string trajectory_to_json(const TrajectoryReport& report) {
    json doc;
    doc["start"] = report.start.to_string();
    doc["conclusive"] = report.conclusive;
    doc["steps_taken"] = report.steps_taken;
    if (report.conclusive) {
        doc["tail_length"] = report.tail_length;
        doc["cycle_length"] = report.cycle_length;
        doc["cycle_entry"] = report.cycle_entry.to_string();
    }
    return doc.dump(2) + "\n";
}

} // namespace msyds
