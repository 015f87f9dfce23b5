#include "parley/engine.hpp"

#include <algorithm>
#include <set>

namespace parley {

std::optional<Binding> unify(const Term& pattern, const Term& ground,
                             const Binding& partial) {
  if (pattern.is_var()) {
    auto it = partial.find(pattern.head());
    if (it != partial.end()) {
      if (it->second == ground) return partial;
      return std::nullopt;
    }
    Binding out = partial;
    out.emplace(pattern.head(), ground);
    return out;
  }
  if (!ground.is_app() || pattern.head() != ground.head() ||
      pattern.args().size() != ground.args().size())
    return std::nullopt;
  Binding out = partial;
  for (std::size_t i = 0; i < pattern.args().size(); ++i) {
    auto next = unify(pattern.args()[i], ground.args()[i], out);
    if (!next) return std::nullopt;
    out = std::move(*next);
  }
  return out;
}

std::optional<Binding> unify(const Atom& pattern, const Atom& ground,
                             const Binding& partial) {
  if (pattern.pred != ground.pred || pattern.args.size() != ground.args.size())
    return std::nullopt;
  Binding out = partial;
  for (std::size_t i = 0; i < pattern.args.size(); ++i) {
    auto next = unify(pattern.args[i], ground.args[i], out);
    if (!next) return std::nullopt;
    out = std::move(*next);
  }
  return out;
}

namespace {

/// Depth-first enumeration, linear slots first. Linear occurrences are
/// scanned in ascending id order, so the first complete match found for a
/// given binding consumes the lowest admissible ids slot by slot; keeping
/// only that first match per binding yields the canonical candidate.
struct Matcher {
  const Rule& rule;
  const SimState& state;
  std::vector<Firing> found;
  std::set<Binding> seen;
  std::vector<OccId> consumed;
  std::vector<ReadRef> reads;

  void linear_slot(std::size_t slot, const Binding& b) {
    if (slot == rule.linear_pre.size()) {
      persistent_slot(0, b);
      return;
    }
    for (const auto& [id, atom] : state.linear) {
      if (std::find(consumed.begin(), consumed.end(), id) != consumed.end())
        continue;
      if (auto next = unify(rule.linear_pre[slot], atom, b)) {
        consumed.push_back(id);
        linear_slot(slot + 1, *next);
        consumed.pop_back();
      }
    }
  }

  void persistent_slot(std::size_t slot, const Binding& b) {
    if (slot == rule.persistent_pre.size()) {
      emit(b);
      return;
    }
    const Atom& pattern = rule.persistent_pre[slot];
    for (const Atom& fact : state.permanent) {
      if (auto next = unify(pattern, fact, b)) {
        reads.emplace_back(fact);
        persistent_slot(slot + 1, *next);
        reads.pop_back();
      }
    }
    for (const auto& [id, atom] : state.linear) {
      if (auto next = unify(pattern, atom, b)) {
        reads.emplace_back(id);
        persistent_slot(slot + 1, *next);
        reads.pop_back();
      }
    }
  }

  void emit(const Binding& b) {
    if (!seen.insert(b).second) return;
    found.push_back(Firing{rule.name, b, consumed, {}, reads, 0});
  }
};

const Rule& rule_by_name(std::span<const Rule> rules, const std::string& name) {
  for (const Rule& r : rules)
    if (r.name == name) return r;
  throw std::invalid_argument("no rule named '" + name + "'");
}

}  // namespace

std::vector<Firing> applicable_firings(const Rule& rule, const SimState& state) {
  Matcher m{rule, state, {}, {}, {}, {}};
  m.linear_slot(0, Binding{});
  std::stable_sort(m.found.begin(), m.found.end(),
                   [](const Firing& a, const Firing& b) {
                     return compare(a.binding, b.binding) < 0;
                   });
  return std::move(m.found);
}

std::vector<Firing> applicable_firings(std::span<const Rule> rules,
                                       const SimState& state) {
  std::vector<Firing> all;
  for (const Rule& r : rules) {
    auto cs = applicable_firings(r, state);
    all.insert(all.end(), std::make_move_iterator(cs.begin()),
               std::make_move_iterator(cs.end()));
  }
  return all;
}

Firing apply_firing(SimState& state, const Firing& candidate, const Rule& rule) {
  if (candidate.rule != rule.name)
    throw std::invalid_argument("candidate for rule '" + candidate.rule +
                                "' applied with rule '" + rule.name + "'");
  for (OccId id : candidate.consumed)
    if (!state.linear.contains(id))
      throw StaleCandidateError("consumed occurrence " + std::to_string(id) +
                                " is not in the state");
  for (const ReadRef& ref : candidate.reads) {
    if (const OccId* id = std::get_if<OccId>(&ref); id && !state.linear.contains(*id))
      throw StaleCandidateError("read occurrence " + std::to_string(*id) +
                                " is not in the state");
    if (const Atom* fact = std::get_if<Atom>(&ref); fact && !state.permanent.contains(*fact))
      throw StaleCandidateError("read fact '" + fact->to_string() +
                                "' is not in the state");
  }

  Firing out = candidate;
  for (OccId id : out.consumed) state.linear.erase(id);
  out.produced.clear();
  for (const Atom& pattern : rule.post) {
    Atom ground = instantiate(pattern, out.binding);
    if (!ground.is_ground())
      throw std::logic_error("postcondition '" + pattern.to_string() +
                             "' has unbound variables");
    const OccId id = state.add_linear(ground);
    out.produced.emplace_back(id, std::move(ground));
  }
  return out;
}

void replay_firing(SimState& state, const Firing& firing) {
  for (OccId id : firing.consumed) {
    if (state.linear.erase(id) == 0)
      throw StaleCandidateError("replay consumed missing occurrence " +
                                std::to_string(id));
  }
  for (const auto& [id, atom] : firing.produced) {
    state.linear.emplace(id, atom);
    state.next_id = std::max(state.next_id, id + 1);
  }
}

std::optional<Firing> step(SimState& state, std::span<const Rule> rules,
                           SplitMix64& rng) {
  auto candidates = applicable_firings(rules, state);
  if (candidates.empty()) return std::nullopt;
  const std::uint64_t pick = rng.below(candidates.size());
  const Firing& chosen = candidates[pick];
  return apply_firing(state, chosen, rule_by_name(rules, chosen.rule));
}

Trace run(std::span<const Rule> rules, const SimState& initial,
          std::uint64_t seed, std::size_t step_limit) {
  Trace trace;
  trace.initial = initial;
  trace.seed = seed;
  trace.termination = Termination::StepLimit;

  SimState state = initial;
  SplitMix64 rng(seed);
  for (std::size_t i = 0; i < step_limit; ++i) {
    auto firing = step(state, rules, rng);
    if (!firing) {
      trace.termination = Termination::Quiescent;
      break;
    }
    firing->step = i;
    trace.firings.push_back(std::move(*firing));
  }
  trace.final_state = std::move(state);
  return trace;
}

SimState replay(const Trace& trace) {
  SimState state = trace.initial;
  for (const Firing& f : trace.firings) replay_firing(state, f);
  return state;
}

}  // namespace parley
