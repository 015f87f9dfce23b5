#include <benchmark/benchmark.h>

#include "parley/analysis.hpp"
#include "parley/conversation.hpp"
#include "parley/dsl.hpp"
#include "parley/engine.hpp"

namespace {

using namespace parley;

const conv::Scenario& scooby() {
  static const conv::Scenario s = conv::load_scenario_string(R"({
    "characters": [
      {"id": "fred", "archetype": "participant"},
      {"id": "daphne", "archetype": "people_pleaser"},
      {"id": "velma", "archetype": "contrarian"}
    ],
    "topics": ["house", "creaky_doors", "ghosts"],
    "relevant": [["house", "creaky_doors"], ["house", "ghosts"]],
    "beliefs": [
      {"character": "fred", "kind": "opinion", "topic": "house", "sentiment": "positive"},
      {"character": "daphne", "kind": "opinion", "topic": "house", "sentiment": "positive"},
      {"character": "velma", "kind": "opinion", "topic": "house", "sentiment": "negative"},
      {"character": "fred", "kind": "opinion", "topic": "creaky_doors", "sentiment": "negative"},
      {"character": "daphne", "kind": "opinion", "topic": "creaky_doors", "sentiment": "neutral"},
      {"character": "velma", "kind": "opinion", "topic": "ghosts", "sentiment": "negative"}
    ],
    "likes": [["fred", "daphne"], ["daphne", "fred"], ["fred", "velma"],
              ["velma", "fred"], ["daphne", "velma"], ["velma", "daphne"]],
    "listening": "complete",
    "leader": "daphne",
    "starting_topic": "house",
    "turns": 9
  })");
  return s;
}

void BM_ParseRuleset(benchmark::State& state) {
  const std::string& text = conv::standard_ruleset_text();
  for (auto _ : state) {
    auto result = dsl::parse_program(text);
    benchmark::DoNotOptimize(result);
  }
}
BENCHMARK(BM_ParseRuleset);

void BM_ApplicableFirings(benchmark::State& state) {
  const dsl::Program& program = conv::standard_ruleset();
  SimState sim = conv::build_scenario(scooby(), program);
  // Advance a few steps so the floor is live and hears atoms exist.
  SplitMix64 rng(7);
  for (int i = 0; i < 4; ++i) step(sim, program.rules, rng);
  for (auto _ : state) {
    auto candidates = applicable_firings(program.rules, sim);
    benchmark::DoNotOptimize(candidates);
  }
}
BENCHMARK(BM_ApplicableFirings);

void BM_FullRun(benchmark::State& state) {
  const dsl::Program& program = conv::standard_ruleset();
  const SimState initial = conv::build_scenario(scooby(), program);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    Trace trace = run(program.rules, initial, seed++);
    benchmark::DoNotOptimize(trace);
  }
}
BENCHMARK(BM_FullRun);

void BM_Batch9x15(benchmark::State& state) {
  const dsl::Program& program = conv::standard_ruleset();
  for (auto _ : state) {
    auto result = analysis::run_batch(analysis::default_compositions(), scooby(),
                                      15, 7, program);
    benchmark::DoNotOptimize(result);
  }
}
BENCHMARK(BM_Batch9x15);

}  // namespace

BENCHMARK_MAIN();
