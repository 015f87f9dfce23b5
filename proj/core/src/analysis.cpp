#include "parley/analysis.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include <json.hpp>

namespace parley::analysis {

using conv::Archetype;

Tally tally_trace(const Trace& trace, const TallyOptions& options) {
  Tally t;
  for (const Firing& f : trace.firings) {
    const conv::FiringClass c = conv::classify_firing(f);
    if (c.speaker && (options.count_initiation || !c.initiation))
      ++t.times_spoken[*c.speaker];
    if (c.belief_change) {
      ++t.belief_changes[c.belief_change->character];
      ++t.belief_changes_total;
    }
    if (c.interruption) ++t.interruptions;
    if (c.emotion_change) ++t.emotion_events;
    if (c.topic_shift) ++t.topic_shifts;
  }
  return t;
}

std::string composition_name(const Composition& c) {
  std::string out;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) out += '/';
    out += conv::archetype_name(c[i]);
  }
  return out;
}

const std::vector<Composition>& default_compositions() {
  using enum Archetype;
  static const std::vector<Composition> defaults = {
      {Participant, PeoplePleaser, Reticent},
      {Contrarian, Contrarian, Contrarian},
      {Participant, PeoplePleaser, Contrarian},
      {Participant, Participant, Participant},
      {PeoplePleaser, PeoplePleaser, PeoplePleaser},
      {Reticent, Reticent, Reticent},
      {Participant, Contrarian, Reticent},
      {PeoplePleaser, Contrarian, Reticent},
      {Participant, Participant, Reticent},
  };
  return defaults;
}

BatchResult run_batch(const std::vector<Composition>& compositions,
                      const conv::Scenario& base_scenario, std::size_t runs,
                      std::uint64_t master_seed, const dsl::Program& program,
                      const TallyOptions& options) {
  if (runs == 0) throw std::invalid_argument("run_batch: runs must be >= 1");
  for (const Composition& c : compositions)
    if (c.size() != base_scenario.characters.size())
      throw std::invalid_argument(
          "run_batch: composition has " + std::to_string(c.size()) +
          " slots for " + std::to_string(base_scenario.characters.size()) +
          " characters");

  BatchResult result;
  for (const auto& ch : base_scenario.characters) result.characters.push_back(ch.id);
  result.compositions = compositions;
  result.runs = runs;

  for (std::size_t ci = 0; ci < compositions.size(); ++ci) {
    conv::Scenario scenario = base_scenario;
    for (std::size_t i = 0; i < scenario.characters.size(); ++i)
      scenario.characters[i].archetype = compositions[ci][i];
    const dsl::Program* rules = &program;
    dsl::Program broadcast;
    if (scenario.broadcast) {
      broadcast = conv::broadcast_ruleset(program, scenario);
      rules = &broadcast;
    }
    const SimState initial = conv::build_scenario(scenario, *rules);
    for (std::size_t ri = 0; ri < runs; ++ri) {
      const std::uint64_t seed = derive_seed(master_seed, {ci, ri});
      const Trace trace = run(rules->rules, initial, seed);
      result.rows.push_back(BatchRow{ci, ri, seed, tally_trace(trace, options)});
    }
  }
  return result;
}

std::string to_csv(const BatchResult& result) {
  std::string out = "composition,run,seed,character,times_spoken,belief_changes\n";
  for (const BatchRow& row : result.rows) {
    const std::string comp = composition_name(result.compositions[row.composition_index]);
    for (const std::string& ch : result.characters) {
      const auto spoken = row.tally.times_spoken.find(ch);
      const auto beliefs = row.tally.belief_changes.find(ch);
      out += comp;
      out += ',';
      out += std::to_string(row.run_index);
      out += ',';
      out += std::to_string(row.seed);
      out += ',';
      out += ch;
      out += ',';
      out += std::to_string(spoken == row.tally.times_spoken.end() ? 0 : spoken->second);
      out += ',';
      out += std::to_string(beliefs == row.tally.belief_changes.end() ? 0 : beliefs->second);
      out += '\n';
    }
  }
  return out;
}

std::string summary_json(const BatchResult& result) {
  nlohmann::ordered_json doc = nlohmann::ordered_json::object();
  for (std::size_t ci = 0; ci < result.compositions.size(); ++ci) {
    double belief_sum = 0;
    std::map<std::string, double> spoken_sum;
    std::size_t n = 0;
    for (const BatchRow& row : result.rows) {
      if (row.composition_index != ci) continue;
      ++n;
      belief_sum += static_cast<double>(row.tally.belief_changes_total);
      for (const std::string& ch : result.characters) {
        const auto it = row.tally.times_spoken.find(ch);
        spoken_sum[ch] += it == row.tally.times_spoken.end()
                              ? 0.0
                              : static_cast<double>(it->second);
      }
    }
    nlohmann::ordered_json spoken = nlohmann::ordered_json::object();
    for (const std::string& ch : result.characters)
      spoken[ch] = n == 0 ? 0.0 : spoken_sum[ch] / static_cast<double>(n);
    nlohmann::ordered_json entry = nlohmann::ordered_json::object();
    entry["mean_times_spoken"] = std::move(spoken);
    entry["mean_belief_changes"] =
        n == 0 ? 0.0 : belief_sum / static_cast<double>(n);
    doc[composition_name(result.compositions[ci])] = std::move(entry);
  }
  return doc.dump(2) + "\n";
}

CausalGraph causal_graph(const Trace& trace) {
  std::map<OccId, Atom> table = trace.initial.linear;
  CausalGraph g;
  for (const Firing& f : trace.firings) {
    g.rule_nodes.push_back(CausalGraph::RuleNode{f.step, f.rule, f.binding});
    for (const auto& [id, atom] : f.produced) {
      table.emplace(id, atom);
      g.producer[id] = f.step;
    }
  }
  auto touch = [&](OccId id, const char* what, const Firing& f) {
    const auto it = table.find(id);
    if (it == table.end())
      throw TraceError("firing of '" + f.rule + "' at step " +
                       std::to_string(f.step) + " " + what +
                       " unknown occurrence " + std::to_string(id));
    g.resources.emplace(it->first, it->second);
  };
  for (const Firing& f : trace.firings) {
    std::vector<OccId> consumed = f.consumed;
    std::sort(consumed.begin(), consumed.end());
    for (OccId id : consumed) {
      touch(id, "consumes", f);
      g.edges.push_back({CausalGraph::EdgeKind::Consume, id, f.step});
    }
    std::vector<OccId> reads;
    for (const ReadRef& r : f.reads)
      if (const OccId* id = std::get_if<OccId>(&r)) reads.push_back(*id);
    std::sort(reads.begin(), reads.end());
    for (OccId id : reads) {
      touch(id, "reads", f);
      g.edges.push_back({CausalGraph::EdgeKind::Read, id, f.step});
    }
    for (const auto& [id, atom] : f.produced) {
      g.resources.emplace(id, atom);
      g.edges.push_back({CausalGraph::EdgeKind::Produce, id, f.step});
    }
  }
  return g;
}

namespace {

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

std::string binding_text(const Binding& b) {
  std::string out = "{";
  bool first = true;
  for (const auto& [var, term] : b) {
    if (!first) out += ", ";
    first = false;
    out += var;
    out += '=';
    out += term.to_string();
  }
  out += '}';
  return out;
}

}  // namespace

std::string to_dot(const CausalGraph& graph) {
  if (graph.rule_nodes.empty() && graph.resources.empty())
    return "digraph causal { }\n";
  std::string out = "digraph causal {\n";
  for (const CausalGraph::RuleNode& rn : graph.rule_nodes) {
    std::string label = rn.rule;
    if (!rn.binding.empty()) label += " " + binding_text(rn.binding);
    out += "  f" + std::to_string(rn.step) + " [shape=box, label=\"" +
           dot_escape(label) + "\"];\n";
  }
  for (const auto& [id, atom] : graph.resources) {
    out += "  r" + std::to_string(id) + " [shape=ellipse, label=\"" +
           dot_escape(atom.to_string()) + "\"];\n";
  }
  for (const CausalGraph::Edge& e : graph.edges) {
    const std::string rule = "f" + std::to_string(e.step);
    const std::string res = "r" + std::to_string(e.resource);
    switch (e.kind) {
      case CausalGraph::EdgeKind::Consume:
        out += "  " + res + " -> " + rule + ";\n";
        break;
      case CausalGraph::EdgeKind::Produce:
        out += "  " + rule + " -> " + res + ";\n";
        break;
      case CausalGraph::EdgeKind::Read:
        out += "  " + res + " -> " + rule + " [style=dashed];\n";
        break;
    }
  }
  out += "}\n";
  return out;
}

std::optional<std::size_t> find_convergence_motif(const CausalGraph& graph) {
  // Successor relation over firings through consumed resources; reads are
  // excluded from the partial order.
  std::map<std::size_t, std::set<std::size_t>> succ;
  for (const CausalGraph::Edge& e : graph.edges) {
    if (e.kind != CausalGraph::EdgeKind::Consume) continue;
    const auto producer = graph.producer.find(e.resource);
    if (producer != graph.producer.end() && producer->second != e.step)
      succ[producer->second].insert(e.step);
  }
  auto reaches = [&](std::size_t from, std::size_t to) {
    std::set<std::size_t> seen{from};
    std::vector<std::size_t> work{from};
    while (!work.empty()) {
      const std::size_t cur = work.back();
      work.pop_back();
      if (cur == to) return true;
      const auto it = succ.find(cur);
      if (it == succ.end()) continue;
      for (std::size_t nxt : it->second)
        if (seen.insert(nxt).second) work.push_back(nxt);
    }
    return false;
  };

  for (const CausalGraph::RuleNode& rn : graph.rule_nodes) {
    Firing probe;
    probe.rule = rn.rule;
    probe.binding = rn.binding;
    conv::FiringClass c;
    try {
      c = conv::classify_firing(probe);
    } catch (const conv::UnknownRuleError&) {
      continue;
    }
    if (!c.belief_change) continue;

    std::vector<std::size_t> producers;
    for (const CausalGraph::Edge& e : graph.edges) {
      if (e.kind != CausalGraph::EdgeKind::Consume || e.step != rn.step) continue;
      const auto it = graph.producer.find(e.resource);
      if (it != graph.producer.end()) producers.push_back(it->second);
    }
    std::sort(producers.begin(), producers.end());
    producers.erase(std::unique(producers.begin(), producers.end()), producers.end());
    for (std::size_t i = 0; i < producers.size(); ++i)
      for (std::size_t j = i + 1; j < producers.size(); ++j)
        if (!reaches(producers[i], producers[j]) &&
            !reaches(producers[j], producers[i]))
          return rn.step;
  }
  return std::nullopt;
}

}  // namespace parley::analysis
