#ifndef MSYDS_DIFF_HPP
#define MSYDS_DIFF_HPP

#include <string>
#include <vector>

#include "msyds/system.hpp"

namespace msyds {

/// One structural difference between two systems, at scalar granularity
/// for local functions (a single threshold delta is one entry).
struct Difference {
    std::string description;
};

// Compares node lists, layer graphs, locals and masters. Used to assert
// the one-threshold delta of the satisfiability reduction pair.
std::vector<Difference> structural_diff(const MSyDS& s0, const MSyDS& s1);

} // namespace msyds

#endif
