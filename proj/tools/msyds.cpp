// Command-line front end: construction, simulation, phase-space
// analysis and equivalence checking of multilayer synchronous
// dynamical systems.
//
// Exit codes: 0 success (for `equiv`: equivalent), 1 inequivalent
// (`equiv` only), 2 usage or parse error, 3 refusal (limits exceeded
// or algorithm preconditions unmet).

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "msyds/diff.hpp"
#include "msyds/errors.hpp"
#include "msyds/formats.hpp"

namespace {

using namespace msyds;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write file: " + path);
    out << content;
}

unsigned env_limit_bits() {
    if (const char* env = std::getenv("MSYDS_LIMIT_BITS")) {
        unsigned value = static_cast<unsigned>(std::strtoul(env, nullptr, 10));
        if (value > 0) return value;
    }
    return kDefaultLimitBits;
}

void emit_system(const MSyDS& s, const std::string& output) {
    std::string text = serialize_system(s);
    if (output.empty())
        std::cout << text;
    else
        write_file(output, text);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"multilayer synchronous dynamical system toolkit"};
    app.require_subcommand(1);

    std::string format = "text";
    app.add_option("--format", format, "output format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    unsigned limit_bits = env_limit_bits();
    app.add_option("--limit-bits", limit_bits, "phase-space enumeration cap (bits)");
    unsigned jobs = 1;
    app.add_option("--jobs", jobs, "worker threads for parallelizable passes");

    // step
    auto* step_cmd = app.add_subcommand("step", "print successive configurations");
    std::string step_system, step_config;
    unsigned step_count = 1;
    step_cmd->add_option("-s,--system", step_system, "system file")->required();
    step_cmd->add_option("-c,--config", step_config, "start configuration (bits or @N)")
        ->required();
    step_cmd->add_option("-t,--steps", step_count, "number of steps");

    // trajectory
    auto* traj_cmd = app.add_subcommand("trajectory", "tail and cycle length from a start");
    std::string traj_system, traj_config;
    std::uint64_t traj_max_steps = 1'000'000;
    bool traj_hash = false;
    traj_cmd->add_option("-s,--system", traj_system, "system file")->required();
    traj_cmd->add_option("-c,--config", traj_config, "start configuration")->required();
    traj_cmd->add_option("--max-steps", traj_max_steps, "successor-evaluation budget");
    traj_cmd->add_flag("--hash-set", traj_hash, "use the hash-set detector");

    // phase-space
    auto* ps_cmd = app.add_subcommand("phase-space", "enumerate the full phase space");
    std::string ps_system, ps_dot;
    ps_cmd->add_option("-s,--system", ps_system, "system file")->required();
    ps_cmd->add_option("--dot", ps_dot, "write a DOT rendering (n <= 12)");

    // equiv
    auto* eq_cmd = app.add_subcommand("equiv", "decide equivalence of two systems");
    std::string eq_s0, eq_s1, eq_algorithm = "auto";
    eq_cmd->add_option("--s0", eq_s0, "first system file")->required();
    eq_cmd->add_option("--s1", eq_s1, "second system file")->required();
    eq_cmd->add_option("-a,--algorithm", eq_algorithm, "checker")
        ->check(CLI::IsMember({"auto", "brute", "profile", "bounded-or", "bounded-and"}));

    // construct
    auto* con_cmd = app.add_subcommand("construct", "generate a named system");
    std::string con_kind, con_output;
    unsigned con_param = 0;
    con_cmd->add_option("kind", con_kind, "generator")
        ->required()
        ->check(CLI::IsMember({"unary-cycle", "primorial", "counter", "hierarchy-or",
                               "hierarchy-and"}));
    con_cmd->add_option("param", con_param, "generator size parameter")->required();
    con_cmd->add_option("-o,--output", con_output, "output file (default stdout)");

    // reduce-sat
    auto* sat_cmd = app.add_subcommand("reduce-sat", "build the reduction pair from a CNF");
    std::string sat_file, sat_prefix;
    sat_cmd->add_option("-f,--formula", sat_file, "DIMACS CNF file")->required();
    sat_cmd->add_option("-o,--o-prefix", sat_prefix, "output file prefix")->required();

    // flatten / lift / merge-layers
    auto* flat_cmd = app.add_subcommand("flatten", "equivalent single-layer system");
    std::string flat_system, flat_output;
    flat_cmd->add_option("-s,--system", flat_system, "system file")->required();
    flat_cmd->add_option("-o,--output", flat_output, "output file (default stdout)");

    auto* lift_cmd = app.add_subcommand("lift", "copy a single-layer system to k layers");
    std::string lift_system, lift_output;
    unsigned lift_k = 2;
    lift_cmd->add_option("-s,--system", lift_system, "system file")->required();
    lift_cmd->add_option("--k", lift_k, "target layer count")->required();
    lift_cmd->add_option("-o,--output", lift_output, "output file (default stdout)");

    auto* merge_cmd = app.add_subcommand("merge-layers", "replace two layers by their union");
    std::string merge_system, merge_output;
    std::size_t merge_i = 0, merge_j = 1;
    merge_cmd->add_option("-s,--system", merge_system, "system file")->required();
    merge_cmd->add_option("--i", merge_i, "first layer index (0-based)")->required();
    merge_cmd->add_option("--j", merge_j, "second layer index (0-based)")->required();
    merge_cmd->add_option("-o,--output", merge_output, "output file (default stdout)");

    // diff
    auto* diff_cmd = app.add_subcommand("diff", "structural differences of two systems");
    std::string diff_s0, diff_s1;
    diff_cmd->add_option("--s0", diff_s0, "first system file")->required();
    diff_cmd->add_option("--s1", diff_s1, "second system file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*step_cmd) {
            MSyDS s = parse_system(read_file(step_system));
            Configuration c = Configuration::from_string(step_config, s.node_count());
            for (unsigned i = 0; i < step_count; ++i) {
                c = successor(s, c);
                std::cout << c.to_string() << "\n";
            }
        } else if (*traj_cmd) {
            MSyDS s = parse_system(read_file(traj_system));
            Configuration c = Configuration::from_string(traj_config, s.node_count());
            TrajectoryReport report = trajectory(s, c, traj_max_steps, traj_hash);
            if (format == "json") {
                std::cout << trajectory_to_json(report);
            } else if (!report.conclusive) {
                std::cout << "inconclusive after " << report.steps_taken << " steps\n";
            } else {
                std::cout << "tail_length: " << report.tail_length << "\n"
                          << "cycle_length: " << report.cycle_length << "\n";
            }
            if (!report.conclusive) return 3;
        } else if (*ps_cmd) {
            MSyDS s = parse_system(read_file(ps_system));
            PhaseSpaceReport report = enumerate_phase_space(s, limit_bits, jobs);
            if (!ps_dot.empty()) write_file(ps_dot, phase_space_dot(s, report));
            if (format == "json") {
                std::cout << phase_space_to_json(report);
            } else {
                std::vector<std::size_t> lengths;
                for (const auto& cycle : report.cycles) lengths.push_back(cycle.size());
                std::sort(lengths.begin(), lengths.end());
                std::cout << "cycles: " << report.cycles.size() << "\n";
                std::cout << "cycle lengths:";
                for (auto len : lengths) std::cout << " " << len;
                std::cout << "\n";
                std::cout << "fixed points:";
                for (auto code : report.fixed_points) std::cout << " " << code;
                std::cout << "\n";
                std::cout << "max transient: " << report.max_transient << "\n";
            }
        } else if (*eq_cmd) {
            MSyDS s0 = parse_system(read_file(eq_s0));
            MSyDS s1 = parse_system(read_file(eq_s1));
            EquivalenceVerdict verdict;
            if (eq_algorithm == "brute")
                verdict = brute_force_equiv(s0, s1, limit_bits);
            else if (eq_algorithm == "profile")
                verdict = profile_equiv(s0, s1);
            else if (eq_algorithm == "bounded-or")
                verdict = bounded_threshold_equiv(s0, s1);
            else if (eq_algorithm == "bounded-and")
                verdict = bounded_negative_equiv(s0, s1);
            else {
                AutoOptions opts;
                opts.limit_bits = limit_bits;
                verdict = auto_equiv(s0, s1, opts);
            }
            if (format == "json") {
                std::cout << verdict_to_json(verdict, s0);
            } else if (verdict.equivalent) {
                std::cout << "equivalent (" << verdict.algorithm << ", work " << verdict.work
                          << ")\n";
            } else {
                std::cout << "inequivalent (" << verdict.algorithm << ", work " << verdict.work
                          << ")\n"
                          << "witness: " << verdict.witness->to_string() << "\n"
                          << "node: " << s0.node_names[*verdict.node] << "\n";
            }
            return verdict.equivalent ? 0 : 1;
        } else if (*con_cmd) {
            MSyDS s;
            if (con_kind == "unary-cycle")
                s = unary_cycle(con_param);
            else if (con_kind == "primorial")
                s = primorial(con_param);
            else if (con_kind == "counter")
                s = binary_counter(con_param);
            else if (con_kind == "hierarchy-or")
                s = hierarchy_or(con_param);
            else
                s = hierarchy_and_equiv(con_param);
            emit_system(s, con_output);
        } else if (*sat_cmd) {
            CnfFormula f = parse_dimacs(read_file(sat_file));
            ReductionPair pair = sat_to_msyds(f);
            write_file(sat_prefix + ".s.msyds.json", serialize_system(pair.s));
            write_file(sat_prefix + ".sprime.msyds.json", serialize_system(pair.s_prime));
            std::ostringstream roles;
            roles << "{\n";
            for (std::size_t i = 0; i < pair.node_roles.size(); ++i) {
                const auto& role = pair.node_roles[i];
                roles << "  \"" << pair.s.node_names[i] << "\": \"";
                if (role.kind == NodeRole::Center)
                    roles << "center";
                else
                    roles << (role.kind == NodeRole::LiteralPos ? "x" : "not-x") << role.variable;
                roles << "\"" << (i + 1 < pair.node_roles.size() ? "," : "") << "\n";
            }
            roles << "}\n";
            write_file(sat_prefix + ".roles.json", roles.str());
        } else if (*flat_cmd) {
            emit_system(flatten(parse_system(read_file(flat_system))), flat_output);
        } else if (*lift_cmd) {
            emit_system(lift(parse_system(read_file(lift_system)), lift_k), lift_output);
        } else if (*merge_cmd) {
            emit_system(merge_layers(parse_system(read_file(merge_system)), merge_i, merge_j),
                        merge_output);
        } else if (*diff_cmd) {
            MSyDS s0 = parse_system(read_file(diff_s0));
            MSyDS s1 = parse_system(read_file(diff_s1));
            auto differences = structural_diff(s0, s1);
            if (differences.empty())
                std::cout << "identical\n";
            else
                for (const auto& d : differences) std::cout << d.description << "\n";
        }
    } catch (const RefusalError& e) {
        std::cerr << "refused: " << e.what() << "\n";
        return 3;
    } catch (const UnsupportedError& e) {
        std::cerr << "unsupported: " << e.what() << "\n";
        return 3;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ContractError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
