#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "parley/diagnostics.hpp"
#include "parley/rule.hpp"
#include "parley/state.hpp"
#include "parley/term.hpp"

namespace parley::dsl {

/// Predicate declaration. The sort "nat" requires successor-shaped
/// arguments; "term" is a wildcard accepting anything; any other name is
/// nominal and rejects numerals. Predicates of permanent declarations are
/// facts: rules may read but never consume or produce them.
struct PredDecl {
  std::string name;
  std::vector<std::string> sorts;
  bool permanent = false;

  friend bool operator==(const PredDecl&, const PredDecl&) = default;
};

/// A parsed program. Preconditions are already split into consumed
/// (linear_pre) and read-only (persistent_pre) parts: `$`-marked atoms and
/// atoms of permanent predicates land in persistent_pre. Initial atoms are
/// split the same way into init (linear) and permanent_init.
struct Program {
  std::vector<PredDecl> decls;
  std::vector<Rule> rules;
  std::vector<Atom> init;
  std::vector<Atom> permanent_init;

  /// Source spans parallel to decls/rules; empty when built by hand.
  std::vector<SrcSpan> decl_spans;
  std::vector<SrcSpan> rule_spans;

  const PredDecl* find_decl(std::string_view name) const;
  bool is_permanent(std::string_view pred) const;

  /// Initial simulation state: init atoms in order (ids 0..n-1), then the
  /// permanent facts.
  SimState initial_state() const;

  /// Declarations compare as sets; everything else in order.
  friend bool operator==(const Program& a, const Program& b);
};

struct ParseResult {
  std::optional<Program> program;  // engaged iff no error diagnostics
  std::vector<Diagnostic> diagnostics;
};

/// Parses and validates a program. If the source declares no predicates at
/// all, predicates are inferred from use (arity from first use, every sort
/// "term", linear); otherwise undeclared predicates are errors.
ParseResult parse_program(std::string_view source);

/// Structural validation of a possibly hand-built program. Spans stored on
/// the program are used for locations when present.
std::vector<Diagnostic> validate(const Program& program);

/// Canonical formatting. parse_program(pretty_print(p)) reproduces p for
/// every valid program. Output always ends in exactly one newline.
std::string pretty_print(const Program& program);

/// One ground-or-not atom in surface syntax, e.g. "thinks velma (opinion
/// murder negative)". Returns nullopt and fills *error on failure.
std::optional<Atom> parse_atom(std::string_view text, std::string* error = nullptr);
std::optional<Term> parse_term(std::string_view text, std::string* error = nullptr);

}  // namespace parley::dsl
