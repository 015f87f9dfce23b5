#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "parley/conversation.hpp"
#include "parley/engine.hpp"

namespace parley::analysis {

struct TraceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TallyOptions {
  /// Whether the initiation counts toward times_spoken (it is a speech act
  /// that spends no turn). On by default; the flag exists because the
  /// choice is a matter of definition.
  bool count_initiation = true;
};

struct Tally {
  std::map<std::string, std::uint64_t> times_spoken;
  std::map<std::string, std::uint64_t> belief_changes;
  std::uint64_t belief_changes_total = 0;
  std::uint64_t interruptions = 0;
  std::uint64_t emotion_events = 0;
  std::uint64_t topic_shifts = 0;

  friend bool operator==(const Tally&, const Tally&) = default;
};

/// Classifies every firing of a trace and counts.
Tally tally_trace(const Trace& trace, const TallyOptions& options = {});

/// One archetype per character slot.
using Composition = std::vector<conv::Archetype>;

/// Slash-joined archetype names, e.g. "participant/contrarian/reticent".
std::string composition_name(const Composition& c);

/// The nine default compositions used by the batch analyzer.
const std::vector<Composition>& default_compositions();

struct BatchRow {
  std::size_t composition_index = 0;
  std::size_t run_index = 0;
  std::uint64_t seed = 0;
  Tally tally;
};

struct BatchResult {
  std::vector<std::string> characters;  // scenario order
  std::vector<Composition> compositions;
  std::size_t runs = 0;
  std::vector<BatchRow> rows;           // ordered by (composition, run)
};

/// Runs |compositions| × runs simulations of the scenario, overriding the
/// characters' archetypes per composition. Each run's seed is
/// derive_seed(master_seed, {composition_index, run_index}). Throws
/// std::invalid_argument on a composition length mismatch or runs = 0.
BatchResult run_batch(const std::vector<Composition>& compositions,
                      const conv::Scenario& base_scenario, std::size_t runs,
                      std::uint64_t master_seed,
                      const dsl::Program& program = conv::standard_ruleset(),
                      const TallyOptions& options = {});

/// CSV with header composition,run,seed,character,times_spoken,belief_changes
/// and one data row per (batch row × character).
std::string to_csv(const BatchResult& result);

/// JSON object keyed by composition name with per-slot mean times_spoken and
/// mean belief change.
std::string summary_json(const BatchResult& result);

/// Bipartite causal graph of one trace: rule nodes (one per firing) and
/// resource nodes (every occurrence the firings touched). Permanent facts
/// are not nodes.
struct CausalGraph {
  struct RuleNode {
    std::size_t step = 0;
    std::string rule;
    Binding binding;
  };
  enum class EdgeKind { Consume, Produce, Read };
  struct Edge {
    EdgeKind kind = EdgeKind::Consume;
    OccId resource = 0;
    std::size_t step = 0;
  };

  std::vector<RuleNode> rule_nodes;      // ascending step
  std::map<OccId, Atom> resources;
  std::vector<Edge> edges;
  /// resource -> producing step; initial-state resources are absent.
  std::map<OccId, std::size_t> producer;
};

/// Throws TraceError on dangling occurrence ids.
CausalGraph causal_graph(const Trace& trace);

/// Deterministic DOT rendering: rule nodes f<step> as boxes, resource nodes
/// r<occurrence_id> as ellipses, read edges dashed.
std::string to_dot(const CausalGraph& graph);

/// Fig-style convergence motif: a belief-change firing whose consumed
/// resources were produced by two firings with no causal path between them.
/// Returns the step of the first such firing.
std::optional<std::size_t> find_convergence_motif(const CausalGraph& graph);

}  // namespace parley::analysis
