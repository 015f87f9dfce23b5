#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "parley/analysis.hpp"
#include "parley/conversation.hpp"
#include "parley/dsl.hpp"
#include "parley/engine.hpp"
#include "parley/trace_io.hpp"

namespace parley::cli {

namespace {

// Domain failure whose message has already been shaped for the console.
struct CommandError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CommandError("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw CommandError("cannot read " + path);
  return buffer.str();
}

dsl::Program load_rules(const std::string& path, std::ostream& err) {
  const std::string source = read_file(path);
  dsl::ParseResult result = dsl::parse_program(source);
  for (const Diagnostic& d : result.diagnostics)
    err << path << ": " << d.to_string() << "\n";
  if (!result.program)
    throw CommandError(path + ": rule file has errors");
  return std::move(*result.program);
}

conv::Scenario load_scenario_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CommandError("cannot open " + path);
  try {
    return conv::load_scenario(in);
  } catch (const conv::ScenarioError& e) {
    throw CommandError(path + ": " + e.what());
  }
}

// Rules ready to run for a scenario: the broadcast variant is derived on
// demand when the scenario asks for it.
dsl::Program scenario_rules(const dsl::Program& program, const conv::Scenario& s) {
  return s.broadcast ? conv::broadcast_ruleset(program, s) : program;
}

std::string firing_text(const Firing& f) {
  std::string out = f.rule;
  if (f.binding.empty()) return out;
  out += " {";
  bool first = true;
  for (const auto& [var, term] : f.binding) {
    if (!first) out += ", ";
    first = false;
    out += var;
    out += '=';
    out += term.to_string();
  }
  out += '}';
  return out;
}

const Rule& rule_by_name(const dsl::Program& program, const std::string& name) {
  for (const Rule& r : program.rules)
    if (r.name == name) return r;
  throw CommandError("no rule named '" + name + "'");
}

std::vector<analysis::Composition> load_compositions(const std::string& path) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw CommandError(path + ": invalid JSON: " + e.what());
  }
  if (!doc.is_array() || doc.empty())
    throw CommandError(path + ": expected a non-empty array of compositions");
  std::vector<analysis::Composition> out;
  for (const auto& row : doc) {
    if (!row.is_array())
      throw CommandError(path + ": each composition must be an array of archetype names");
    analysis::Composition comp;
    for (const auto& cell : row) {
      if (!cell.is_string())
        throw CommandError(path + ": archetype names must be strings");
      const auto a = conv::archetype_from_name(cell.get<std::string>());
      if (!a)
        throw CommandError(path + ": unknown archetype '" +
                           cell.get<std::string>() + "'");
      comp.push_back(*a);
    }
    out.push_back(std::move(comp));
  }
  return out;
}

struct SimulateOpts {
  std::string rules;
  std::string scenario;
  std::uint64_t seed = 0;
  std::size_t max_steps = 200;
  std::string trace_path;
};

int run_simulate(const SimulateOpts& opts, std::ostream& out, std::ostream& err) {
  const dsl::Program base = load_rules(opts.rules, err);
  const conv::Scenario scenario = load_scenario_file(opts.scenario);
  const dsl::Program program = scenario_rules(base, scenario);
  const SimState initial = conv::build_scenario(scenario, program);
  const Trace trace = run(program.rules, initial, opts.seed, opts.max_steps);
  for (const Firing& f : trace.firings)
    out << "step " << f.step << ": " << firing_text(f) << "\n";
  out << (trace.termination == Termination::Quiescent ? "quiescent"
                                                      : "step limit reached")
      << " after " << trace.firings.size() << " firings (seed " << trace.seed
      << ")\n";
  if (!opts.trace_path.empty()) {
    io::write_file_atomic(opts.trace_path, io::trace_to_json(trace));
    out << "wrote " << opts.trace_path << "\n";
  }
  return 0;
}

struct AnalyzeOpts {
  std::string rules;
  std::string scenario;
  std::string compositions;
  std::size_t runs = 15;
  std::uint64_t seed = 0;
  std::string out_path;
  std::string summary_path;
};

int run_analyze(const AnalyzeOpts& opts, std::ostream& out, std::ostream& err) {
  const dsl::Program program = load_rules(opts.rules, err);
  const conv::Scenario scenario = load_scenario_file(opts.scenario);
  const std::vector<analysis::Composition> compositions =
      opts.compositions.empty() ? analysis::default_compositions()
                                : load_compositions(opts.compositions);
  analysis::BatchResult result;
  try {
    result = analysis::run_batch(compositions, scenario, opts.runs, opts.seed,
                                 program);
  } catch (const std::invalid_argument& e) {
    throw CommandError(e.what());
  }
  io::write_file_atomic(opts.out_path, analysis::to_csv(result));
  out << "wrote " << opts.out_path << " (" << result.rows.size() * result.characters.size()
      << " data rows)\n";
  if (!opts.summary_path.empty()) {
    io::write_file_atomic(opts.summary_path, analysis::summary_json(result));
    out << "wrote " << opts.summary_path << "\n";
  }
  return 0;
}

struct GraphOpts {
  std::string trace;
  std::string dot;
};

int run_graph(const GraphOpts& opts, std::ostream& out) {
  std::ifstream in(opts.trace, std::ios::binary);
  if (!in) throw CommandError("cannot open " + opts.trace);
  Trace trace;
  try {
    trace = io::trace_from_json(in);
  } catch (const io::TraceFormatError& e) {
    throw CommandError(opts.trace + ": " + e.what());
  }
  analysis::CausalGraph graph;
  try {
    graph = analysis::causal_graph(trace);
  } catch (const analysis::TraceError& e) {
    throw CommandError(opts.trace + ": " + e.what());
  }
  io::write_file_atomic(opts.dot, analysis::to_dot(graph));
  out << "wrote " << opts.dot << " (" << graph.rule_nodes.size()
      << " firings, " << graph.resources.size() << " resources, "
      << graph.edges.size() << " edges)\n";
  return 0;
}

struct InteractiveOpts {
  std::string rules;
  std::string scenario;
  std::size_t max_steps = 200;
  std::string trace_path;
};

int run_interactive(const InteractiveOpts& opts, std::istream& in,
                    std::ostream& out, std::ostream& err) {
  const dsl::Program base = load_rules(opts.rules, err);
  const conv::Scenario scenario = load_scenario_file(opts.scenario);
  const dsl::Program program = scenario_rules(base, scenario);

  Trace trace;
  trace.seed = 0;
  trace.initial = conv::build_scenario(scenario, program);
  SimState state = trace.initial;
  trace.termination = Termination::Quiescent;

  bool quit = false;
  while (!quit) {
    if (trace.firings.size() >= opts.max_steps) {
      trace.termination = Termination::StepLimit;
      out << "step limit reached.\n";
      break;
    }
    const std::vector<Firing> candidates =
        applicable_firings(program.rules, state);
    if (candidates.empty()) {
      out << "quiescent.\n";
      break;
    }
    const std::size_t step = trace.firings.size();
    out << "step " << step << " - " << candidates.size() << " applicable:\n";
    for (std::size_t i = 0; i < candidates.size(); ++i)
      out << "  [" << i << "] " << firing_text(candidates[i]) << "\n";

    std::optional<std::size_t> choice;
    while (!choice && !quit) {
      out << "> " << std::flush;
      std::string line;
      if (!std::getline(in, line)) {
        out << "\n";
        quit = true;
        break;
      }
      const auto begin = line.find_first_not_of(" \t\r");
      const auto end = line.find_last_not_of(" \t\r");
      line = begin == std::string::npos
                 ? std::string()
                 : line.substr(begin, end - begin + 1);
      if (line == "q") {
        quit = true;
        break;
      }
      try {
        std::size_t used = 0;
        const unsigned long long k = std::stoull(line, &used);
        if (used == line.size() && k < candidates.size())
          choice = static_cast<std::size_t>(k);
      } catch (const std::exception&) {
      }
      if (!choice && !quit)
        out << "enter a number between 0 and " << candidates.size() - 1
            << ", or q to quit\n";
    }
    if (quit) break;

    Firing fired = apply_firing(state, candidates[*choice],
                                rule_by_name(program, candidates[*choice].rule));
    fired.step = step;
    trace.firings.push_back(std::move(fired));
  }

  trace.final_state = state;
  if (!opts.trace_path.empty()) {
    if (quit) {
      out << "quit; no trace written\n";
    } else {
      io::write_file_atomic(opts.trace_path, io::trace_to_json(trace));
      out << "wrote " << opts.trace_path << "\n";
    }
  }
  return 0;
}

struct CheckOpts {
  std::string rules;
  std::string scenario;
};

int run_check(const CheckOpts& opts, std::ostream& out) {
  const std::string source = read_file(opts.rules);
  const dsl::ParseResult result = dsl::parse_program(source);
  for (const Diagnostic& d : result.diagnostics)
    out << opts.rules << ": " << d.to_string() << "\n";
  bool ok = result.program.has_value();
  if (ok && !opts.scenario.empty()) {
    try {
      const conv::Scenario scenario = load_scenario_file(opts.scenario);
      for (const std::string& note : conv::lint_scenario(scenario))
        out << opts.scenario << ": warning: " << note << "\n";
      conv::build_scenario(scenario, *result.program);
    } catch (const CommandError& e) {
      out << e.what() << "\n";
      ok = false;
    } catch (const conv::ScenarioError& e) {
      out << opts.scenario << ": " << e.what() << "\n";
      ok = false;
    }
  }
  if (ok) out << "ok\n";
  return ok ? 0 : 1;
}

}  // namespace

int dispatch(std::vector<std::string> args, std::istream& in,
             std::ostream& out, std::ostream& err) {
  CLI::App app{"Multiset-rewriting conversation simulator"};
  app.name("parley");
  app.require_subcommand(1);

  SimulateOpts sim;
  CLI::App* simulate = app.add_subcommand("simulate", "Run one seeded simulation");
  simulate->add_option("--rules", sim.rules, "rule file (.cvl)")->required();
  simulate->add_option("--scenario", sim.scenario, "scenario JSON")->required();
  simulate->add_option("--seed", sim.seed, "rng seed (default 0)");
  simulate->add_option("--max-steps", sim.max_steps, "firing cap (default 200)");
  simulate->add_option("--trace", sim.trace_path, "write the trace JSON here");

  AnalyzeOpts ana;
  CLI::App* analyze = app.add_subcommand("analyze", "Run batch composition experiments");
  analyze->add_option("--rules", ana.rules, "rule file (.cvl)")->required();
  analyze->add_option("--scenario", ana.scenario, "scenario JSON")->required();
  analyze->add_option("--compositions", ana.compositions,
                      "JSON array of archetype-name arrays (default: built-in 9)");
  analyze->add_option("--runs", ana.runs, "runs per composition (default 15)");
  analyze->add_option("--seed", ana.seed, "master seed (default 0)");
  analyze->add_option("--out", ana.out_path, "CSV output path")->required();
  analyze->add_option("--summary", ana.summary_path, "summary JSON output path");

  GraphOpts gr;
  CLI::App* graph = app.add_subcommand("graph", "Emit a trace's causal graph as DOT");
  graph->add_option("--trace", gr.trace, "trace JSON input")->required();
  graph->add_option("--dot", gr.dot, "DOT output path")->required();

  InteractiveOpts inter;
  CLI::App* interactive =
      app.add_subcommand("interactive", "Pick each firing from a numbered menu");
  interactive->add_option("--rules", inter.rules, "rule file (.cvl)")->required();
  interactive->add_option("--scenario", inter.scenario, "scenario JSON")->required();
  interactive->add_option("--max-steps", inter.max_steps, "firing cap (default 200)");
  interactive->add_option("--trace", inter.trace_path,
                          "write the trace JSON here on a completed run");

  CheckOpts chk;
  CLI::App* check = app.add_subcommand("check", "Parse and validate a rule file");
  check->add_option("--rules", chk.rules, "rule file (.cvl)")->required();
  check->add_option("--scenario", chk.scenario, "scenario JSON to check against");

  std::reverse(args.begin(), args.end());
  try {
    app.parse(std::move(args));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return 2;
  }

  try {
    if (simulate->parsed()) return run_simulate(sim, out, err);
    if (analyze->parsed()) return run_analyze(ana, out, err);
    if (graph->parsed()) return run_graph(gr, out);
    if (interactive->parsed()) return run_interactive(inter, in, out, err);
    if (check->parsed()) return run_check(chk, out);
  } catch (const CommandError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace parley::cli
