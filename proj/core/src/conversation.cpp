#include "parley/conversation.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "parley_ruleset_text.hpp"

namespace parley::conv {

using nlohmann::json;

std::string_view archetype_name(Archetype a) {
  switch (a) {
    case Archetype::Participant: return "participant";
    case Archetype::PeoplePleaser: return "people_pleaser";
    case Archetype::Contrarian: return "contrarian";
    case Archetype::Reticent: return "reticent";
  }
  return "participant";
}

std::optional<Archetype> archetype_from_name(std::string_view name) {
  if (name == "participant") return Archetype::Participant;
  if (name == "people_pleaser") return Archetype::PeoplePleaser;
  if (name == "contrarian") return Archetype::Contrarian;
  if (name == "reticent") return Archetype::Reticent;
  return std::nullopt;
}

std::string_view sentiment_name(Sentiment s) {
  switch (s) {
    case Sentiment::Negative: return "negative";
    case Sentiment::Neutral: return "neutral";
    case Sentiment::Positive: return "positive";
  }
  return "neutral";
}

std::optional<Sentiment> sentiment_from_name(std::string_view name) {
  if (name == "negative") return Sentiment::Negative;
  if (name == "neutral") return Sentiment::Neutral;
  if (name == "positive") return Sentiment::Positive;
  return std::nullopt;
}

std::optional<Sentiment> opposite(Sentiment s) {
  switch (s) {
    case Sentiment::Negative: return Sentiment::Positive;
    case Sentiment::Positive: return Sentiment::Negative;
    case Sentiment::Neutral: return std::nullopt;
  }
  return std::nullopt;
}

Term Statement::to_term() const {
  if (kind == Kind::Opinion)
    return Term::app("opinion", {Term::app(topic),
                                 Term::app(std::string(sentiment_name(sentiment)))});
  return Term::app("fact", {Term::app(topic), Term::app(value)});
}

std::optional<Statement> Statement::from_term(const Term& t) {
  if (!t.is_app() || t.args().size() != 2) return std::nullopt;
  const Term& topic = t.args()[0];
  const Term& second = t.args()[1];
  if (!topic.is_app() || !topic.args().empty()) return std::nullopt;
  if (!second.is_app() || !second.args().empty()) return std::nullopt;
  Statement st;
  st.topic = topic.head();
  if (t.head() == "opinion") {
    auto s = sentiment_from_name(second.head());
    if (!s) return std::nullopt;
    st.kind = Kind::Opinion;
    st.sentiment = *s;
    return st;
  }
  if (t.head() == "fact") {
    st.kind = Kind::Fact;
    st.value = second.head();
    return st;
  }
  return std::nullopt;
}

// ------------------------------------------------------------- scenarios --

namespace {

bool valid_ident(std::string_view s) {
  if (s.empty() || !std::islower(static_cast<unsigned char>(s[0]))) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
  });
}

[[noreturn]] void fail(const std::string& msg) { throw ScenarioError("scenario: " + msg); }

std::string need_ident(const json& j, const std::string& what) {
  if (!j.is_string()) fail(what + " must be a string");
  const std::string s = j.get<std::string>();
  if (!valid_ident(s))
    fail(what + " '" + s + "' is not a lowercase identifier");
  return s;
}

std::vector<std::pair<std::string, std::string>> need_pairs(
    const json& j, const std::string& what) {
  if (!j.is_array()) fail(what + " must be an array of pairs");
  std::vector<std::pair<std::string, std::string>> out;
  for (const json& e : j) {
    if (!e.is_array() || e.size() != 2) fail(what + " entries must be 2-element arrays");
    out.emplace_back(need_ident(e[0], what + " entry"),
                     need_ident(e[1], what + " entry"));
  }
  return out;
}

}  // namespace

Scenario load_scenario(std::istream& in) {
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    fail(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) fail("top level must be an object");

  Scenario s;

  if (!doc.contains("characters") || !doc["characters"].is_array() ||
      doc["characters"].empty())
    fail("'characters' must be a non-empty array");
  std::set<std::string> ids;
  for (const json& c : doc["characters"]) {
    if (!c.is_object()) fail("'characters' entries must be objects");
    Scenario::Character ch;
    ch.id = need_ident(c.value("id", json()), "character id");
    const std::string arch = c.value("archetype", std::string());
    auto a = archetype_from_name(arch);
    if (!a) fail("unknown archetype '" + arch + "' for character '" + ch.id + "'");
    ch.archetype = *a;
    if (!ids.insert(ch.id).second) fail("duplicate character id '" + ch.id + "'");
    s.characters.push_back(std::move(ch));
  }

  if (!doc.contains("topics") || !doc["topics"].is_array() || doc["topics"].empty())
    fail("'topics' must be a non-empty array");
  std::set<std::string> topics;
  for (const json& t : doc["topics"]) {
    std::string id = need_ident(t, "topic");
    if (!topics.insert(id).second) fail("duplicate topic '" + id + "'");
    s.topics.push_back(std::move(id));
  }

  auto check_char = [&](const std::string& c, const std::string& where) {
    if (!ids.contains(c)) fail(where + " references unknown character '" + c + "'");
  };
  auto check_topic = [&](const std::string& t, const std::string& where) {
    if (!topics.contains(t)) fail(where + " references unknown topic '" + t + "'");
  };

  if (doc.contains("relevant")) {
    s.relevant = need_pairs(doc["relevant"], "'relevant'");
    for (const auto& [a, b] : s.relevant) {
      check_topic(a, "'relevant'");
      check_topic(b, "'relevant'");
      if (a == b) fail("'relevant' pair relates topic '" + a + "' to itself");
    }
  }

  if (doc.contains("beliefs")) {
    if (!doc["beliefs"].is_array()) fail("'beliefs' must be an array");
    for (const json& b : doc["beliefs"]) {
      if (!b.is_object()) fail("'beliefs' entries must be objects");
      Scenario::Belief belief;
      belief.character = need_ident(b.value("character", json()), "belief character");
      check_char(belief.character, "'beliefs'");
      belief.statement.topic = need_ident(b.value("topic", json()), "belief topic");
      check_topic(belief.statement.topic, "'beliefs'");
      const std::string kind = b.value("kind", std::string());
      if (kind == "opinion") {
        belief.statement.kind = Statement::Kind::Opinion;
        auto sent = sentiment_from_name(b.value("sentiment", std::string()));
        if (!sent) fail("opinion belief needs a sentiment of negative|neutral|positive");
        belief.statement.sentiment = *sent;
      } else if (kind == "fact") {
        belief.statement.kind = Statement::Kind::Fact;
        belief.statement.value = need_ident(b.value("value", json()), "fact value");
      } else {
        fail("belief kind must be \"opinion\" or \"fact\"");
      }
      s.beliefs.push_back(std::move(belief));
    }
  }

  if (doc.contains("likes")) {
    s.likes = need_pairs(doc["likes"], "'likes'");
    for (const auto& [a, b] : s.likes) {
      check_char(a, "'likes'");
      check_char(b, "'likes'");
    }
  }

  if (doc.contains("listening") && doc["listening"] != json("complete")) {
    s.listening = need_pairs(doc["listening"], "'listening'");
    for (const auto& [a, b] : *s.listening) {
      check_char(a, "'listening'");
      check_char(b, "'listening'");
      if (a == b) fail("character '" + a + "' cannot listen to itself");
    }
  }

  s.leader = need_ident(doc.value("leader", json()), "'leader'");
  check_char(s.leader, "'leader'");
  s.starting_topic = need_ident(doc.value("starting_topic", json()), "'starting_topic'");
  check_topic(s.starting_topic, "'starting_topic'");

  if (doc.contains("turns")) {
    if (!doc["turns"].is_number_unsigned()) fail("'turns' must be a non-negative integer");
    s.turns = doc["turns"].get<std::uint64_t>();
  }
  if (doc.contains("broadcast")) {
    if (!doc["broadcast"].is_boolean()) fail("'broadcast' must be a boolean");
    s.broadcast = doc["broadcast"].get<bool>();
  }
  return s;
}

Scenario load_scenario_string(const std::string& text) {
  std::istringstream in(text);
  return load_scenario(in);
}

std::vector<std::string> lint_scenario(const Scenario& s) {
  std::vector<std::string> out;
  if (s.turns == 0)
    out.push_back("turn budget is 0: only the initiation can fire");
  if (s.beliefs.empty())
    out.push_back("no beliefs: nothing can ever be said, only interruptions are possible");
  for (const auto& c : s.characters) {
    const bool has_belief =
        std::any_of(s.beliefs.begin(), s.beliefs.end(),
                    [&](const Scenario::Belief& b) { return b.character == c.id; });
    if (!has_belief)
      out.push_back("character '" + c.id + "' has no beliefs and cannot speak");
  }
  return out;
}

// --------------------------------------------------------------- ruleset --

const std::string& standard_ruleset_text() {
  static const std::string text = detail::kStandardRulesetText;
  return text;
}

const dsl::Program& standard_ruleset() {
  static const dsl::Program program = [] {
    dsl::ParseResult r = dsl::parse_program(detail::kStandardRulesetText);
    if (!r.program)
      throw std::logic_error("embedded conversation ruleset does not parse");
    return std::move(*r.program);
  }();
  return program;
}

SimState build_scenario(const Scenario& s, const dsl::Program& program) {
  SimState st;
  // Linear context; the occurrence id order is part of the trace format.
  st.add_linear(Atom{"turns", {Term::nat(s.turns)}});
  st.add_linear(Atom{"leader", {Term::app(s.leader)}});
  st.add_linear(Atom{"starting_topic", {Term::app(s.starting_topic)}});
  for (const Scenario::Belief& b : s.beliefs)
    st.add_linear(Atom{"thinks", {Term::app(b.character), b.statement.to_term()}});

  for (const Atom& a : program.permanent_init) st.add_permanent(a);
  for (const Scenario::Character& c : s.characters)
    st.add_permanent(Atom{"is", {Term::app(c.id),
                                 Term::app(std::string(archetype_name(c.archetype)))}});
  if (s.listening) {
    for (const auto& [a, b] : *s.listening)
      st.add_permanent(Atom{"listening", {Term::app(a), Term::app(b)}});
  } else {
    for (const auto& a : s.characters)
      for (const auto& b : s.characters)
        if (a.id != b.id)
          st.add_permanent(Atom{"listening", {Term::app(a.id), Term::app(b.id)}});
  }
  for (const auto& [a, b] : s.likes)
    st.add_permanent(Atom{"likes", {Term::app(a), Term::app(b)}});
  for (const auto& [a, b] : s.relevant) {
    st.add_permanent(Atom{"relevant", {Term::app(a), Term::app(b)}});
    st.add_permanent(Atom{"relevant", {Term::app(b), Term::app(a)}});
  }
  // on_topic closure: every opinion of a topic is on that topic, and every
  // fact anyone believes is on its own topic.
  for (const std::string& t : s.topics) {
    for (Sentiment sent : {Sentiment::Negative, Sentiment::Neutral, Sentiment::Positive}) {
      Statement op{Statement::Kind::Opinion, t, sent, {}};
      st.add_permanent(Atom{"on_topic", {op.to_term(), Term::app(t)}});
    }
  }
  for (const Scenario::Belief& b : s.beliefs) {
    if (b.statement.kind == Statement::Kind::Fact)
      st.add_permanent(Atom{"on_topic",
                            {b.statement.to_term(), Term::app(b.statement.topic)}});
  }
  return st;
}

// ------------------------------------------------------------- broadcast --

namespace {

const std::vector<std::string>& broadcast_rule_names() {
  static const std::vector<std::string> names = {
      "begin_speaking", "finish_speaking", "agree_to_please",
      "cause_debate", "reticent_contribute"};
  return names;
}

std::vector<std::string> listeners_of(const Scenario& s, const std::string& speaker) {
  std::vector<std::string> out;
  if (s.listening) {
    for (const auto& [a, b] : *s.listening)
      if (b == speaker) out.push_back(a);
  } else {
    for (const auto& c : s.characters)
      if (c.id != speaker) out.push_back(c.id);
  }
  return out;
}

/// Grounds rule variable C to one speaker and replaces the single
/// `hears C' C St` postcondition by one copy per listener of that speaker.
/// `$listening C' C` preconditions only positioned the hearer, so they are
/// dropped; `$listening C C'` (the speaker listening to the previous
/// speaker, as in begin_speaking) stays.
Rule ground_for_speaker(const Rule& r, const std::string& speaker,
                        const std::vector<std::string>& listeners) {
  const Binding ground{{"C", Term::app(speaker)}};
  const auto hearer_edge = [](const Atom& a) {
    return a.pred == "listening" && a.args.size() == 2 && a.args[0].is_var() &&
           a.args[0].head() == "C'";
  };
  Rule out;
  out.name = r.name + "_" + speaker;
  for (const Atom& a : r.linear_pre) out.linear_pre.push_back(instantiate(a, ground));
  for (const Atom& a : r.persistent_pre) {
    if (hearer_edge(a)) continue;
    out.persistent_pre.push_back(instantiate(a, ground));
  }
  for (const Atom& a : r.post) {
    if (a.pred == "hears") {
      for (const std::string& l : listeners) {
        Atom h = instantiate(a, ground);
        h.args[0] = Term::app(l);
        out.post.push_back(std::move(h));
      }
      continue;
    }
    out.post.push_back(instantiate(a, ground));
  }
  return out;
}

}  // namespace

dsl::Program broadcast_ruleset(const dsl::Program& program, const Scenario& s) {
  dsl::Program out;
  out.decls = program.decls;
  out.init = program.init;
  out.permanent_init = program.permanent_init;
  const auto& names = broadcast_rule_names();
  for (const Rule& r : program.rules) {
    if (std::find(names.begin(), names.end(), r.name) == names.end()) {
      out.rules.push_back(r);
      continue;
    }
    for (const Scenario::Character& c : s.characters)
      out.rules.push_back(ground_for_speaker(r, c.id, listeners_of(s, c.id)));
  }
  return out;
}

// ---------------------------------------------------------- classification --

namespace {

std::string bound_const(const Firing& f, const char* var) {
  auto it = f.binding.find(var);
  if (it == f.binding.end() || !it->second.is_app() || !it->second.args().empty())
    throw UnknownRuleError("firing of '" + f.rule + "' lacks a constant binding for " +
                           var);
  return it->second.head();
}

FiringClass classify_base(const std::string& base, const Firing& f,
                          const std::optional<std::string>& fixed_speaker) {
  auto speaker = [&] { return fixed_speaker ? *fixed_speaker : bound_const(f, "C"); };
  FiringClass out;
  if (base == "initiate") {
    out.speaker = speaker();
    out.initiation = FiringClass::Initiation{*out.speaker, bound_const(f, "T")};
    return out;
  }
  if (base == "begin_speaking" || base == "finish_speaking" ||
      base == "agree_to_please" || base == "cause_debate" ||
      base == "question_fact" || base == "question_opinion" ||
      base == "reticent_contribute") {
    out.speaker = speaker();
    out.spends_turn = true;
    return out;
  }
  if (base == "interrupt") {
    out.speaker = speaker();
    out.spends_turn = true;
    out.interruption = FiringClass::Interruption{*out.speaker, bound_const(f, "C'")};
    return out;
  }
  if (base == "change_topic") {
    out.spends_turn = true;
    out.topic_shift = FiringClass::TopicShift{bound_const(f, "T"), bound_const(f, "T'")};
    return out;
  }
  if (base == "upset_from_interruption") {
    out.emotion_change = FiringClass::EmotionChange{bound_const(f, "C"), "angry"};
    return out;
  }
  if (base == "happy_from_agreement") {
    out.emotion_change = FiringClass::EmotionChange{bound_const(f, "C"), "happy"};
    return out;
  }
  if (base == "sad_from_disagreement") {
    out.emotion_change = FiringClass::EmotionChange{bound_const(f, "C"), "sad"};
    return out;
  }
  if (base == "encouraged_from_involvement") {
    out.emotion_change = FiringClass::EmotionChange{bound_const(f, "C"), "encouraged"};
    return out;
  }
  const auto belief = [&](Sentiment from, Sentiment to) {
    FiringClass c;
    c.belief_change = FiringClass::BeliefChange{bound_const(f, "C"), bound_const(f, "T"),
                                                from, to};
    return c;
  };
  if (base == "negative_to_neutral_opinion")
    return belief(Sentiment::Negative, Sentiment::Neutral);
  if (base == "positive_to_neutral_opinion")
    return belief(Sentiment::Positive, Sentiment::Neutral);
  if (base == "neutral_to_positive_opinion")
    return belief(Sentiment::Neutral, Sentiment::Positive);
  if (base == "neutral_to_negative_opinion")
    return belief(Sentiment::Neutral, Sentiment::Negative);
  throw UnknownRuleError("rule '" + f.rule + "' is not part of the conversation ruleset");
}

}  // namespace

FiringClass classify_firing(const Firing& f) {
  for (const std::string& base : broadcast_rule_names()) {
    if (f.rule.size() > base.size() + 1 && f.rule.starts_with(base) &&
        f.rule[base.size()] == '_')
      return classify_base(base, f, f.rule.substr(base.size() + 1));
  }
  return classify_base(f.rule, f, std::nullopt);
}

}  // namespace parley::conv
