#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace parley {

/// First-order terms. A term is either a variable (upper-case initial in the
/// surface syntax) or an application of a constant head to zero or more
/// argument terms. Natural numbers are successor chains: 3 is s(s(s(0))),
/// built with the reserved unary head "s" and the reserved nullary head "0".
/// Ground successor chains print in decimal.
class Term {
public:
  enum class Kind : std::uint8_t { Var, App };

  Term() : kind_(Kind::App), head_("0") {}

  static Term var(std::string name);
  static Term app(std::string head, std::vector<Term> args = {});
  static Term nat(std::uint64_t n);

  Kind kind() const { return kind_; }
  const std::string& head() const { return head_; }
  const std::vector<Term>& args() const { return args_; }

  bool is_var() const { return kind_ == Kind::Var; }
  bool is_app() const { return kind_ == Kind::App; }
  bool is_zero() const { return kind_ == Kind::App && head_ == "0" && args_.empty(); }
  bool is_succ() const { return kind_ == Kind::App && head_ == "s" && args_.size() == 1; }
  bool is_ground() const;

  /// Decimal value of a ground successor chain, nullopt otherwise.
  std::optional<std::uint64_t> as_nat() const;

  /// Surface syntax in term position: variables and constants bare,
  /// ground naturals in decimal, other applications parenthesized.
  std::string to_string() const;

  friend bool operator==(const Term&, const Term&) = default;

private:
  Term(Kind kind, std::string head, std::vector<Term> args)
      : kind_(kind), head_(std::move(head)), args_(std::move(args)) {}

  Kind kind_;
  std::string head_;
  std::vector<Term> args_;
};

/// Total order used wherever determinism requires sorted terms.
int compare(const Term& a, const Term& b);
bool operator<(const Term& a, const Term& b);

/// A predicate applied to terms: `thinks velma (opinion murder negative)`.
struct Atom {
  std::string pred;
  std::vector<Term> args;

  bool is_ground() const;
  std::string to_string() const;

  friend bool operator==(const Atom&, const Atom&) = default;
};

int compare(const Atom& a, const Atom& b);
bool operator<(const Atom& a, const Atom& b);

/// Substitution from variable names to terms. std::map keeps iteration
/// (and hence serialization) deterministic.
using Binding = std::map<std::string, Term>;

Term substitute(const Term& t, const Binding& b);
Atom instantiate(const Atom& a, const Binding& b);

/// Lexicographic order on bindings, used to sort enumerated candidates.
int compare(const Binding& a, const Binding& b);

/// Collect variable names occurring in a term/atom, in first-occurrence order.
void collect_vars(const Term& t, std::vector<std::string>& out);
void collect_vars(const Atom& a, std::vector<std::string>& out);

}  // namespace parley
