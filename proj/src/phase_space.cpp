#include "msyds/phase_space.hpp"

#include <algorithm>
#include <sstream>
#include <thread>
#include <unordered_map>

#include "msyds/errors.hpp"

namespace msyds {

namespace {

void fill_slice(const MSyDS& s, std::vector<std::uint32_t>& table, std::uint64_t begin,
                std::uint64_t end) {
    const std::size_t n = s.node_count();
    for (std::uint64_t code = begin; code < end; ++code)
        table[code] =
            static_cast<std::uint32_t>(successor(s, Configuration::from_code(code, n)).code());
}

} // namespace

PhaseSpaceReport enumerate_phase_space(const MSyDS& s, unsigned limit_bits, unsigned jobs) {
    const std::size_t n = s.node_count();
    if (limit_bits > 30) limit_bits = 30; // hard cap on table size
    if (n > limit_bits)
        throw RefusalError("enumerate: system has " + std::to_string(n) +
                           " nodes, enumeration limit is " + std::to_string(limit_bits) +
                           " bits");

    PhaseSpaceReport report;
    report.n = n;
    const std::uint64_t total = std::uint64_t{1} << n;
    report.successor_table.resize(total);

    if (jobs <= 1 || total < 4096) {
        fill_slice(s, report.successor_table, 0, total);
    } else {
        std::vector<std::thread> workers;
        const std::uint64_t chunk = (total + jobs - 1) / jobs;
        for (unsigned j = 0; j < jobs; ++j) {
            std::uint64_t begin = j * chunk;
            std::uint64_t end = std::min(total, begin + chunk);
            if (begin >= end) break;
            workers.emplace_back(
                [&, begin, end] { fill_slice(s, report.successor_table, begin, end); });
        }
        for (auto& w : workers) w.join();
    }

    // Kahn-style peel: repeatedly remove in-degree-0 configurations;
    // whatever survives lies on a cycle.
    std::vector<std::uint32_t> indeg(total, 0);
    for (std::uint64_t code = 0; code < total; ++code) ++indeg[report.successor_table[code]];
    std::vector<std::uint32_t> queue;
    for (std::uint64_t code = 0; code < total; ++code)
        if (indeg[code] == 0) queue.push_back(static_cast<std::uint32_t>(code));
    std::vector<char> on_cycle(total, 1);
    while (!queue.empty()) {
        std::uint32_t code = queue.back();
        queue.pop_back();
        on_cycle[code] = 0;
        std::uint32_t next = report.successor_table[code];
        if (--indeg[next] == 0) queue.push_back(next);
    }

    // Extract cycles, rotated to start at the minimum code.
    std::vector<char> visited(total, 0);
    for (std::uint64_t code = 0; code < total; ++code) {
        if (!on_cycle[code] || visited[code]) continue;
        std::vector<std::uint32_t> cycle;
        std::uint32_t cur = static_cast<std::uint32_t>(code);
        do {
            visited[cur] = 1;
            cycle.push_back(cur);
            cur = report.successor_table[cur];
        } while (cur != code);
        auto min_it = std::min_element(cycle.begin(), cycle.end());
        std::rotate(cycle.begin(), min_it, cycle.end());
        report.cycles.push_back(std::move(cycle));
    }
    std::sort(report.cycles.begin(), report.cycles.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    for (const auto& cycle : report.cycles)
        if (cycle.size() == 1) report.fixed_points.push_back(cycle.front());

    // Tail lengths by reverse BFS from cycle nodes over a CSR
    // predecessor structure.
    std::vector<std::uint32_t> offsets(total + 1, 0);
    for (std::uint64_t code = 0; code < total; ++code) ++offsets[report.successor_table[code] + 1];
    for (std::uint64_t i = 0; i < total; ++i) offsets[i + 1] += offsets[i];
    std::vector<std::uint32_t> preds(total);
    {
        std::vector<std::uint32_t> cursor(offsets.begin(), offsets.end() - 1);
        for (std::uint64_t code = 0; code < total; ++code)
            preds[cursor[report.successor_table[code]]++] = static_cast<std::uint32_t>(code);
    }
    std::vector<std::uint64_t> tail(total, 0);
    std::vector<std::uint32_t> frontier;
    for (std::uint64_t code = 0; code < total; ++code)
        if (on_cycle[code]) frontier.push_back(static_cast<std::uint32_t>(code));
    std::uint64_t depth = 0;
    while (!frontier.empty()) {
        std::vector<std::uint32_t> next_frontier;
        for (std::uint32_t code : frontier) {
            tail[code] = depth;
            for (std::uint32_t i = offsets[code]; i < offsets[code + 1]; ++i)
                if (!on_cycle[preds[i]]) next_frontier.push_back(preds[i]);
        }
        frontier = std::move(next_frontier);
        ++depth;
    }
    for (std::uint64_t code = 0; code < total; ++code) {
        ++report.transient_histogram[tail[code]];
        report.max_transient = std::max(report.max_transient, tail[code]);
    }
    return report;
}

TrajectoryReport trajectory(const MSyDS& s, const Configuration& start, std::uint64_t max_steps,
                            bool use_hash_set) {
    TrajectoryReport report;
    report.start = start;

    if (use_hash_set) {
        std::unordered_map<Configuration, std::uint64_t, ConfigurationHash> seen;
        Configuration cur = start;
        std::uint64_t step = 0;
        while (step <= max_steps) {
            auto [it, inserted] = seen.emplace(cur, step);
            if (!inserted) {
                report.conclusive = true;
                report.steps_taken = step;
                report.tail_length = it->second;
                report.cycle_length = step - it->second;
                report.cycle_entry = cur;
                return report;
            }
            cur = successor(s, cur);
            ++step;
        }
        report.steps_taken = max_steps;
        return report;
    }

    // Brent: find the cycle length with a power-of-two reference point,
    // then locate the cycle entry with two aligned walkers.
    std::uint64_t budget = max_steps;
    auto step = [&](Configuration& c) -> bool {
        if (budget == 0) return false;
        --budget;
        ++report.steps_taken;
        c = successor(s, c);
        return true;
    };

    std::uint64_t power = 1, lam = 1;
    Configuration tortoise = start;
    Configuration hare = start;
    if (!step(hare)) return report;
    while (!(tortoise == hare)) {
        if (power == lam) {
            tortoise = hare;
            power *= 2;
            lam = 0;
        }
        if (!step(hare)) return report;
        ++lam;
    }

    tortoise = start;
    hare = start;
    for (std::uint64_t i = 0; i < lam; ++i)
        if (!step(hare)) return report;
    std::uint64_t mu = 0;
    while (!(tortoise == hare)) {
        if (!step(tortoise) || !step(hare)) return report;
        ++mu;
    }

    report.conclusive = true;
    report.tail_length = mu;
    report.cycle_length = lam;
    report.cycle_entry = tortoise;
    return report;
}

std::vector<Configuration> find_fixed_points_small(const MSyDS& s, unsigned limit_bits) {
    const std::size_t n = s.node_count();
    if (limit_bits > 30) limit_bits = 30;
    if (n > limit_bits)
        throw RefusalError("find_fixed_points: system has " + std::to_string(n) +
                           " nodes, enumeration limit is " + std::to_string(limit_bits) +
                           " bits");
    std::vector<Configuration> out;
    const std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t code = 0; code < total; ++code) {
        Configuration c = Configuration::from_code(code, n);
        if (successor(s, c) == c) out.push_back(std::move(c));
    }
    return out;
}

std::string phase_space_dot(const MSyDS& s, const PhaseSpaceReport& report) {
    if (report.n > 12)
        throw RefusalError("dot export limited to 12 nodes, system has " +
                           std::to_string(report.n));
    std::ostringstream os;
    os << "digraph phase_space {\n";
    const std::uint64_t total = std::uint64_t{1} << report.n;
    for (std::uint64_t code = 0; code < total; ++code)
        os << "  c" << code << " [label=\"" << Configuration::from_code(code, report.n).to_string()
           << "\"];\n";
    for (std::uint64_t code = 0; code < total; ++code)
        os << "  c" << code << " -> c" << report.successor_table[code] << ";\n";
    os << "}\n";
    (void)s;
    return os.str();
}

} // namespace msyds
