#pragma once

#include <cstdint>
#include <map>
#include <set>

#include "parley/term.hpp"

namespace parley {

/// Identifier of one linear resource occurrence. Ids are assigned in
/// insertion order and never reused within a simulation.
using OccId = std::uint64_t;

/// Simulation state: a multiset of linear ground atoms keyed by occurrence
/// id, plus a set of permanent ground facts that rules may only read.
struct SimState {
  std::map<OccId, Atom> linear;
  std::set<Atom> permanent;
  OccId next_id = 0;

  OccId add_linear(Atom a) {
    const OccId id = next_id++;
    linear.emplace(id, std::move(a));
    return id;
  }

  void add_permanent(Atom a) { permanent.insert(std::move(a)); }

  /// Equality ignores next_id: two states are the same context when they
  /// hold the same occurrences and the same permanent facts.
  friend bool operator==(const SimState& a, const SimState& b) {
    return a.linear == b.linear && a.permanent == b.permanent;
  }
};

}  // namespace parley
