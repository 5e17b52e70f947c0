#ifndef MSYDS_FORMATS_HPP
#define MSYDS_FORMATS_HPP

#include <string>

#include "msyds/constructions.hpp"
#include "msyds/equivalence.hpp"
#include "msyds/phase_space.hpp"
#include "msyds/system.hpp"

namespace msyds {

// Parses a ".msyds.json" document. Strict: unknown keys, missing
// locals/masters, malformed tables, duplicate edges and self-loops are
// all distinct ParseErrors naming the offending element.
MSyDS parse_system(const std::string& text);

// Canonical serialization: nodes in declared order, edges sorted
// lexicographically by name, map keys sorted. Equal systems serialize
// byte-identically; the per-layer majority local is hoisted into
// "default_local".
std::string serialize_system(const MSyDS& s);

// Standard DIMACS CNF ("p cnf <vars> <clauses>", 0-terminated clauses,
// "c" comments). Duplicate literals within a clause are removed;
// tautological and empty clauses are rejected.
CnfFormula parse_dimacs(const std::string& text);

// ".report.json" payloads.
std::string verdict_to_json(const EquivalenceVerdict& verdict, const MSyDS& s);
std::string phase_space_to_json(const PhaseSpaceReport& report);
std::string trajectory_to_json(const TrajectoryReport& report);

} // namespace msyds

#endif
