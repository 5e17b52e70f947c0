#ifndef MSYDS_PHASE_SPACE_HPP
#define MSYDS_PHASE_SPACE_HPP

#include <cstdint>
#include <map>
#include <vector>

#include "msyds/system.hpp"

namespace msyds {

constexpr unsigned kDefaultLimitBits = 24;

/// Full functional graph of a system: the successor table over all 2^n
/// configuration codes plus the extracted cycle structure.
struct PhaseSpaceReport {
    std::size_t n = 0;
    std::vector<std::uint32_t> successor_table;
    // Each cycle in trajectory order, rotated to start at its minimum
    // code; cycles sorted by that code.
    std::vector<std::vector<std::uint32_t>> cycles;
    std::vector<std::uint32_t> fixed_points;
    std::uint64_t max_transient = 0;
    std::map<std::uint64_t, std::uint64_t> transient_histogram; // tail length -> count
};

/// Result of single-trajectory cycle detection. When `conclusive` is
/// false no repeat was found within the step budget and only
/// `steps_taken` is meaningful.
struct TrajectoryReport {
    Configuration start;
    bool conclusive = false;
    std::uint64_t steps_taken = 0;
    std::uint64_t tail_length = 0;
    std::uint64_t cycle_length = 0;
    Configuration cycle_entry;
};

// Exhaustive phase-space enumeration. Refuses (RefusalError) when the
// system has more than limit_bits nodes. jobs > 1 partitions the
// successor-table fill across threads; output is identical either way.
PhaseSpaceReport enumerate_phase_space(const MSyDS& s, unsigned limit_bits = kDefaultLimitBits,
                                       unsigned jobs = 1);

// Brent's cycle-finding from a start configuration, bounded by a budget
// of successor evaluations. use_hash_set switches to a step-indexed
// hash map (more memory, same answer).
TrajectoryReport trajectory(const MSyDS& s, const Configuration& start,
                            std::uint64_t max_steps = 1'000'000, bool use_hash_set = false);

// Exact fixed points by exhaustive scan; same limit as enumeration.
std::vector<Configuration> find_fixed_points_small(const MSyDS& s,
                                                   unsigned limit_bits = kDefaultLimitBits);

// DOT rendering of the functional graph, one vertex per code.
// Refuses above 12 nodes.
std::string phase_space_dot(const MSyDS& s, const PhaseSpaceReport& report);

} // namespace msyds

#endif
