#include <doctest.h>

#include <algorithm>
#include <set>

#include "parley/rule.hpp"
#include "parley/term.hpp"

using namespace parley;

TEST_CASE("naturals are successor chains") {
  const Term three = Term::nat(3);
  REQUIRE(three.is_succ());
  CHECK(three.args()[0] == Term::nat(2));
  CHECK(Term::nat(0).is_zero());
  CHECK(three.as_nat() == 3);
  CHECK(Term::nat(0).as_nat() == 0);
  CHECK_FALSE(Term::var("N").as_nat().has_value());
  CHECK_FALSE(Term::app("s", {Term::var("N")}).as_nat().has_value());
  CHECK_FALSE(Term::app("fred").as_nat().has_value());
}

TEST_CASE("term rendering uses surface syntax") {
  CHECK(Term::var("N").to_string() == "N");
  CHECK(Term::app("fred").to_string() == "fred");
  CHECK(Term::nat(4).to_string() == "4");
  CHECK(Term::app("s", {Term::var("N")}).to_string() == "(s N)");
  CHECK(Term::app("s", {Term::app("s", {Term::var("N")})}).to_string() ==
        "(s (s N))");
  const Term opinion =
      Term::app("opinion", {Term::app("house"), Term::app("positive")});
  CHECK(opinion.to_string() == "(opinion house positive)");
  CHECK(Atom{"thinks", {Term::app("velma"), opinion}}.to_string() ==
        "thinks velma (opinion house positive)");
  CHECK(Atom{"quiet", {}}.to_string() == "quiet");
}

TEST_CASE("groundness") {
  CHECK(Term::nat(2).is_ground());
  CHECK_FALSE(Term::var("X").is_ground());
  CHECK_FALSE(Term::app("s", {Term::var("X")}).is_ground());
  CHECK(Atom{"p", {Term::app("a"), Term::nat(1)}}.is_ground());
  CHECK_FALSE(Atom{"p", {Term::app("a"), Term::var("X")}}.is_ground());
}

TEST_CASE("substitute and instantiate") {
  const Binding b{{"N", Term::nat(3)}, {"T", Term::app("ghosts")}};
  CHECK(substitute(Term::var("N"), b) == Term::nat(3));
  CHECK(substitute(Term::var("Q"), b) == Term::var("Q"));
  CHECK(substitute(Term::app("s", {Term::var("N")}), b) == Term::nat(4));
  const Atom pattern{"current_topic", {Term::var("T")}};
  CHECK(instantiate(pattern, b) == Atom{"current_topic", {Term::app("ghosts")}});
}

TEST_CASE("term ordering is total and strict") {
  std::vector<Term> terms = {
      Term::var("A"),       Term::var("B"),
      Term::app("a"),       Term::app("b"),
      Term::nat(0),         Term::nat(1),
      Term::app("s", {Term::var("N")}),
      Term::app("f", {Term::app("a"), Term::app("b")}),
  };
  for (const Term& x : terms) {
    CHECK(compare(x, x) == 0);
    for (const Term& y : terms) {
      CHECK(compare(x, y) == -compare(y, x));
      if (x == y) CHECK(compare(x, y) == 0);
      if (compare(x, y) == 0) CHECK(x == y);
    }
  }
  std::set<Term> uniq(terms.begin(), terms.end());
  CHECK(uniq.size() == terms.size());
}

TEST_CASE("binding comparison is lexicographic by variable then value") {
  const Binding a{{"N", Term::nat(1)}};
  const Binding b{{"N", Term::nat(2)}};
  const Binding c{{"N", Term::nat(1)}, {"T", Term::app("x")}};
  CHECK(compare(a, b) < 0);
  CHECK(compare(b, a) > 0);
  CHECK(compare(a, a) == 0);
  CHECK(compare(a, c) < 0);  // prefix is smaller
}

TEST_CASE("variable collection preserves first-occurrence order") {
  const Atom a{"hears",
               {Term::var("C'"), Term::var("C"),
                Term::app("opinion", {Term::var("T"), Term::var("S")})}};
  std::vector<std::string> vars;
  collect_vars(a, vars);
  CHECK(vars == std::vector<std::string>{"C'", "C", "T", "S"});

  Rule r;
  r.linear_pre = {Atom{"turns", {Term::app("s", {Term::var("N")})}}};
  r.persistent_pre = {Atom{"thinks", {Term::var("C"), Term::var("St")}}};
  r.post = {Atom{"turns", {Term::var("N")}},
            Atom{"says", {Term::var("C"), Term::var("St")}}};
  CHECK(rule_pre_vars(r) == std::vector<std::string>{"N", "C", "St"});
  CHECK(rule_post_vars(r) == std::vector<std::string>{"N", "C", "St"});
}
