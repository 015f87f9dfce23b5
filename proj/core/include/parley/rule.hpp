#pragma once

#include <string>
#include <vector>

#include "parley/term.hpp"

namespace parley {

/// A rewrite rule `pre -o post` over the linear context.
///
/// linear_pre atoms are consumed. persistent_pre atoms are read without being
/// consumed; they hold both the `$`-marked preconditions and any precondition
/// on a permanent-declared predicate. Every variable on the right-hand side
/// must be bound on the left.
struct Rule {
  std::string name;
  std::vector<Atom> linear_pre;
  std::vector<Atom> persistent_pre;
  std::vector<Atom> post;

  friend bool operator==(const Rule&, const Rule&) = default;
};

/// Variables of the preconditions / postconditions, first-occurrence order.
std::vector<std::string> rule_pre_vars(const Rule& r);
std::vector<std::string> rule_post_vars(const Rule& r);

}  // namespace parley
