#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "parley/dsl.hpp"
#include "parley/engine.hpp"

namespace parley::conv {

struct ScenarioError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Archetype { Participant, PeoplePleaser, Contrarian, Reticent };

std::string_view archetype_name(Archetype a);
std::optional<Archetype> archetype_from_name(std::string_view name);

enum class Sentiment { Negative, Neutral, Positive };

std::string_view sentiment_name(Sentiment s);
std::optional<Sentiment> sentiment_from_name(std::string_view name);

/// positive <-> negative; neutral has no opposite.
std::optional<Sentiment> opposite(Sentiment s);

/// Something a character can believe and say: an opinion (topic, sentiment)
/// or a fact (topic, value).
struct Statement {
  enum class Kind { Opinion, Fact };
  Kind kind = Kind::Opinion;
  std::string topic;
  Sentiment sentiment = Sentiment::Neutral;  // opinions
  std::string value;                         // facts

  Term to_term() const;
  static std::optional<Statement> from_term(const Term& t);

  friend bool operator==(const Statement&, const Statement&) = default;
};

struct Scenario {
  struct Character {
    std::string id;
    Archetype archetype = Archetype::Participant;
  };
  struct Belief {
    std::string character;
    Statement statement;
  };

  std::vector<Character> characters;
  std::vector<std::string> topics;
  std::vector<std::pair<std::string, std::string>> relevant;  // symmetrized on build
  std::vector<Belief> beliefs;
  std::vector<std::pair<std::string, std::string>> likes;
  /// nullopt means complete: everyone listens to everyone else.
  std::optional<std::vector<std::pair<std::string, std::string>>> listening;
  std::string leader;
  std::string starting_topic;
  std::uint64_t turns = 9;
  /// Rewrites the ruleset so speech produces one hears atom per listener
  /// instead of one per firing.
  bool broadcast = false;
};

/// Reads and checks the scenario JSON format. Throws ScenarioError with a
/// descriptive message on malformed input or dangling references.
Scenario load_scenario(std::istream& in);
Scenario load_scenario_string(const std::string& text);

/// Non-fatal scenario advice, e.g. a zero turn budget.
std::vector<std::string> lint_scenario(const Scenario& s);

/// The built-in conversation ruleset (18 rules plus declarations and the
/// archetype-level permanent facts). Identical to the shipped .cvl file.
const dsl::Program& standard_ruleset();
const std::string& standard_ruleset_text();

/// Initial simulation state for a scenario: the turn budget, leader and
/// starting-topic tokens and one thinks atom per belief in the linear
/// context; archetype assignments, listening/likes edges, symmetrized topic
/// relevance and the on-topic closure as permanent facts.
SimState build_scenario(const Scenario& s,
                        const dsl::Program& program = standard_ruleset());

/// Broadcast variant: one speech rule instance per (speaker, listener set)
/// with every hears atom produced at once.
dsl::Program broadcast_ruleset(const dsl::Program& program, const Scenario& s);

struct UnknownRuleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Aspects of one firing of the standard ruleset. A firing can carry more
/// than one: an interrupt is both an Interruption and a SpeechAct, and the
/// initiation is a SpeechAct that spends no turn.
struct FiringClass {
  /// Engaged for speech acts (initiate, begin/finish_speaking,
  /// reticent_contribute, agree_to_please, cause_debate, the question
  /// rules, interrupt). change_topic is not a speech act.
  std::optional<std::string> speaker;
  bool spends_turn = false;

  struct Initiation {
    std::string speaker;
    std::string topic;
    friend bool operator==(const Initiation&, const Initiation&) = default;
  };
  std::optional<Initiation> initiation;

  struct Interruption {
    std::string interrupter;
    std::string interrupted;
    friend bool operator==(const Interruption&, const Interruption&) = default;
  };
  std::optional<Interruption> interruption;

  struct BeliefChange {
    std::string character;
    std::string topic;
    Sentiment from = Sentiment::Neutral;
    Sentiment to = Sentiment::Neutral;
    friend bool operator==(const BeliefChange&, const BeliefChange&) = default;
  };
  std::optional<BeliefChange> belief_change;

  /// Set by the four emotion rules only; the miffed token minted by an
  /// interrupt belongs to its Interruption aspect.
  struct EmotionChange {
    std::string character;
    std::string emotion;
    friend bool operator==(const EmotionChange&, const EmotionChange&) = default;
  };
  std::optional<EmotionChange> emotion_change;

  struct TopicShift {
    std::string from;
    std::string to;
    friend bool operator==(const TopicShift&, const TopicShift&) = default;
  };
  std::optional<TopicShift> topic_shift;
};

/// Classifies a firing by rule name and binding. Throws UnknownRuleError
/// for rules outside the standard ruleset.
FiringClass classify_firing(const Firing& f);

}  // namespace parley::conv
