#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "parley/rng.hpp"
#include "parley/rule.hpp"
#include "parley/state.hpp"

namespace parley {

/// Thrown by apply_firing when a candidate refers to occurrences that are no
/// longer present (it was computed against an older state).
struct StaleCandidateError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// What a persistent precondition matched: a linear occurrence (read without
/// consumption) or a permanent fact.
using ReadRef = std::variant<OccId, Atom>;

/// One rule application. applicable_firings returns candidates with
/// `produced` empty; apply_firing fills it in.
struct Firing {
  std::string rule;
  Binding binding;
  std::vector<OccId> consumed;
  std::vector<std::pair<OccId, Atom>> produced;
  std::vector<ReadRef> reads;
  std::size_t step = 0;

  friend bool operator==(const Firing&, const Firing&) = default;
};

enum class Termination { Quiescent, StepLimit };

struct Trace {
  SimState initial;
  std::vector<Firing> firings;
  SimState final_state;
  std::uint64_t seed = 0;
  Termination termination = Termination::Quiescent;
};

/// One-sided first-order matching: extends `partial` so that
/// instantiate(pattern, result) == ground, or nullopt if impossible.
/// `ground` must contain no variables.
std::optional<Binding> unify(const Atom& pattern, const Atom& ground,
                             const Binding& partial = {});
std::optional<Binding> unify(const Term& pattern, const Term& ground,
                             const Binding& partial = {});

/// All distinct (rule, binding) candidates of one rule against a state.
///
/// Each linear precondition is matched by a distinct occurrence; persistent
/// preconditions are reads against the pre-state and may overlap consumed
/// occurrences (reading n and consuming n is consuming-and-reproducing).
/// Candidates are sorted by binding; consumed occurrences are canonical:
/// the lowest ids that realize the binding, slot by slot. Permanent reads
/// are preferred over linear reads when both match.
std::vector<Firing> applicable_firings(const Rule& rule, const SimState& state);

/// Concatenation over all rules in declaration order.
std::vector<Firing> applicable_firings(std::span<const Rule> rules,
                                       const SimState& state);

/// Consumes candidate.consumed, instantiates the rule's postconditions in
/// order, inserts them with fresh ids, and returns the completed Firing.
/// Throws StaleCandidateError if any consumed id is missing.
Firing apply_firing(SimState& state, const Firing& candidate, const Rule& rule);

/// Re-applies a recorded firing by its stored ids (no matching).
void replay_firing(SimState& state, const Firing& firing);

/// Picks one candidate uniformly at random and applies it. Returns nullopt
/// (and leaves state untouched) at quiescence. Consumes exactly one draw
/// from the generator otherwise.
std::optional<Firing> step(SimState& state, std::span<const Rule> rules,
                           SplitMix64& rng);

/// Runs until quiescence or step_limit firings, recording every step.
Trace run(std::span<const Rule> rules, const SimState& initial,
          std::uint64_t seed, std::size_t step_limit = 200);

/// Replays a trace's firings over its initial state and returns the result;
/// equality with trace.final_state validates the record.
SimState replay(const Trace& trace);

}  // namespace parley
