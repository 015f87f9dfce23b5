#include "parley/trace_io.hpp"

#include <fstream>
#include <istream>
#include <sstream>

#include <json.hpp>

#include "parley/dsl.hpp"

namespace parley::io {

namespace {

using json = nlohmann::ordered_json;

json state_to_json(const SimState& state) {
  json linear = json::array();
  for (const auto& [id, atom] : state.linear)
    linear.push_back(json::array({id, atom.to_string()}));
  json permanent = json::array();
  for (const Atom& atom : state.permanent) permanent.push_back(atom.to_string());
  json out = json::object();
  out["linear"] = std::move(linear);
  out["permanent"] = std::move(permanent);
  return out;
}

[[noreturn]] void fail(const std::string& what) { throw TraceFormatError(what); }

const json& field(const json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key))
    fail(std::string("missing field '") + key + "'");
  return obj.at(key);
}

std::uint64_t as_id(const json& v, const char* where) {
  if (!v.is_number_unsigned())
    fail(std::string(where) + ": expected an occurrence id");
  return v.get<std::uint64_t>();
}

Atom parse_ground_atom(const json& v, const char* where) {
  if (!v.is_string()) fail(std::string(where) + ": expected an atom string");
  std::string error;
  const auto atom = dsl::parse_atom(v.get<std::string>(), &error);
  if (!atom) fail(std::string(where) + ": " + error);
  for (const Term& arg : atom->args)
    if (!arg.is_ground())
      fail(std::string(where) + ": atom '" + atom->to_string() +
           "' is not ground");
  return *atom;
}

SimState state_from_json(const json& v, const char* where) {
  SimState state;
  const json& linear = field(v, "linear");
  if (!linear.is_array()) fail(std::string(where) + ".linear: expected array");
  for (const json& entry : linear) {
    if (!entry.is_array() || entry.size() != 2)
      fail(std::string(where) + ".linear: expected [id, atom] pairs");
    const OccId id = as_id(entry[0], where);
    if (!state.linear.emplace(id, parse_ground_atom(entry[1], where)).second)
      fail(std::string(where) + ": duplicate occurrence id " +
           std::to_string(id));
    state.next_id = std::max(state.next_id, id + 1);
  }
  const json& permanent = field(v, "permanent");
  if (!permanent.is_array())
    fail(std::string(where) + ".permanent: expected array");
  for (const json& entry : permanent)
    state.permanent.insert(parse_ground_atom(entry, where));
  return state;
}

}  // namespace

std::string trace_to_json(const Trace& trace) {
  json doc = json::object();
  doc["seed"] = trace.seed;
  doc["termination"] =
      trace.termination == Termination::Quiescent ? "quiescent" : "step_limit";
  doc["initial"] = state_to_json(trace.initial);
  json firings = json::array();
  for (const Firing& f : trace.firings) {
    json entry = json::object();
    entry["step"] = f.step;
    entry["rule"] = f.rule;
    json binding = json::object();
    for (const auto& [var, term] : f.binding) binding[var] = term.to_string();
    entry["binding"] = std::move(binding);
    entry["consumed"] = f.consumed;
    json produced = json::array();
    for (const auto& [id, atom] : f.produced)
      produced.push_back(json::array({id, atom.to_string()}));
    entry["produced"] = std::move(produced);
    json reads = json::array();
    for (const ReadRef& r : f.reads) {
      if (const OccId* id = std::get_if<OccId>(&r))
        reads.push_back(*id);
      else
        reads.push_back(std::get<Atom>(r).to_string());
    }
    entry["read"] = std::move(reads);
    firings.push_back(std::move(entry));
  }
  doc["firings"] = std::move(firings);
  doc["final"] = state_to_json(trace.final_state);
  return doc.dump(2) + "\n";
}

Trace trace_from_json_string(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    fail(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) fail("trace document must be a JSON object");

  Trace trace;
  const json& seed = field(doc, "seed");
  if (!seed.is_number_unsigned()) fail("seed: expected an unsigned integer");
  trace.seed = seed.get<std::uint64_t>();

  const json& termination = field(doc, "termination");
  if (termination == "quiescent")
    trace.termination = Termination::Quiescent;
  else if (termination == "step_limit")
    trace.termination = Termination::StepLimit;
  else
    fail("termination: expected \"quiescent\" or \"step_limit\"");

  trace.initial = state_from_json(field(doc, "initial"), "initial");
  trace.final_state = state_from_json(field(doc, "final"), "final");

  const json& firings = field(doc, "firings");
  if (!firings.is_array()) fail("firings: expected array");
  for (const json& entry : firings) {
    Firing f;
    const json& step = field(entry, "step");
    if (!step.is_number_unsigned()) fail("firings: step must be unsigned");
    f.step = step.get<std::size_t>();
    const json& rule = field(entry, "rule");
    if (!rule.is_string()) fail("firings: rule must be a string");
    f.rule = rule.get<std::string>();
    const json& binding = field(entry, "binding");
    if (!binding.is_object()) fail("firings: binding must be an object");
    for (const auto& [var, value] : binding.items()) {
      if (!value.is_string()) fail("binding: values must be term strings");
      std::string error;
      const auto term = dsl::parse_term(value.get<std::string>(), &error);
      if (!term) fail("binding: " + error);
      f.binding.emplace(var, *term);
    }
    const json& consumed = field(entry, "consumed");
    if (!consumed.is_array()) fail("firings: consumed must be an array");
    for (const json& id : consumed) f.consumed.push_back(as_id(id, "consumed"));
    const json& produced = field(entry, "produced");
    if (!produced.is_array()) fail("firings: produced must be an array");
    for (const json& pair : produced) {
      if (!pair.is_array() || pair.size() != 2)
        fail("produced: expected [id, atom] pairs");
      f.produced.emplace_back(as_id(pair[0], "produced"),
                              parse_ground_atom(pair[1], "produced"));
    }
    const json& reads = field(entry, "read");
    if (!reads.is_array()) fail("firings: read must be an array");
    for (const json& r : reads) {
      if (r.is_number_unsigned())
        f.reads.emplace_back(r.get<OccId>());
      else
        f.reads.emplace_back(parse_ground_atom(r, "read"));
    }
    trace.firings.push_back(std::move(f));
  }
  return trace;
}

Trace trace_from_json(std::istream& in) {
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) fail("could not read trace input");
  return trace_from_json_string(buffer.str());
}

void write_file_atomic(const std::filesystem::path& path,
                       std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace parley::io
