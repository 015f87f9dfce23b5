#include "parley/term.hpp"

#include <algorithm>
#include <stdexcept>

#include "parley/rule.hpp"

namespace parley {

Term Term::var(std::string name) {
  return Term(Kind::Var, std::move(name), {});
}

Term Term::app(std::string head, std::vector<Term> args) {
  return Term(Kind::App, std::move(head), std::move(args));
}

Term Term::nat(std::uint64_t n) {
  Term t = Term::app("0");
  for (std::uint64_t i = 0; i < n; ++i) t = Term::app("s", {std::move(t)});
  return t;
}

bool Term::is_ground() const {
  if (is_var()) return false;
  return std::all_of(args_.begin(), args_.end(),
                     [](const Term& t) { return t.is_ground(); });
}

std::optional<std::uint64_t> Term::as_nat() const {
  std::uint64_t n = 0;
  const Term* t = this;
  while (t->is_succ()) {
    ++n;
    t = &t->args()[0];
  }
  if (!t->is_zero()) return std::nullopt;
  return n;
}

std::string Term::to_string() const {
  if (is_var()) return head_;
  if (auto n = as_nat()) return std::to_string(*n);
  if (args_.empty()) return head_;
  std::string out = "(" + head_;
  for (const Term& a : args_) {
    out += ' ';
    out += a.to_string();
  }
  out += ')';
  return out;
}

int compare(const Term& a, const Term& b) {
  if (a.kind() != b.kind()) return a.kind() < b.kind() ? -1 : 1;
  if (int c = a.head().compare(b.head()); c != 0) return c < 0 ? -1 : 1;
  const auto& xs = a.args();
  const auto& ys = b.args();
  for (std::size_t i = 0; i < xs.size() && i < ys.size(); ++i) {
    if (int c = compare(xs[i], ys[i]); c != 0) return c;
  }
  if (xs.size() != ys.size()) return xs.size() < ys.size() ? -1 : 1;
  return 0;
}

bool operator<(const Term& a, const Term& b) { return compare(a, b) < 0; }

bool Atom::is_ground() const {
  return std::all_of(args.begin(), args.end(),
                     [](const Term& t) { return t.is_ground(); });
}

std::string Atom::to_string() const {
  std::string out = pred;
  for (const Term& a : args) {
    out += ' ';
    out += a.to_string();
  }
  return out;
}

int compare(const Atom& a, const Atom& b) {
  if (int c = a.pred.compare(b.pred); c != 0) return c < 0 ? -1 : 1;
  for (std::size_t i = 0; i < a.args.size() && i < b.args.size(); ++i) {
    if (int c = compare(a.args[i], b.args[i]); c != 0) return c;
  }
  if (a.args.size() != b.args.size()) return a.args.size() < b.args.size() ? -1 : 1;
  return 0;
}

bool operator<(const Atom& a, const Atom& b) { return compare(a, b) < 0; }

Term substitute(const Term& t, const Binding& b) {
  if (t.is_var()) {
    auto it = b.find(t.head());
    return it == b.end() ? t : it->second;
  }
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const Term& a : t.args()) args.push_back(substitute(a, b));
  return Term::app(t.head(), std::move(args));
}

Atom instantiate(const Atom& a, const Binding& b) {
  Atom out{a.pred, {}};
  out.args.reserve(a.args.size());
  for (const Term& t : a.args) out.args.push_back(substitute(t, b));
  return out;
}

int compare(const Binding& a, const Binding& b) {
  auto ia = a.begin();
  auto ib = b.begin();
  for (; ia != a.end() && ib != b.end(); ++ia, ++ib) {
    if (int c = ia->first.compare(ib->first); c != 0) return c < 0 ? -1 : 1;
    if (int c = compare(ia->second, ib->second); c != 0) return c;
  }
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  return 0;
}

void collect_vars(const Term& t, std::vector<std::string>& out) {
  if (t.is_var()) {
    if (std::find(out.begin(), out.end(), t.head()) == out.end())
      out.push_back(t.head());
    return;
  }
  for (const Term& a : t.args()) collect_vars(a, out);
}

void collect_vars(const Atom& a, std::vector<std::string>& out) {
  for (const Term& t : a.args) collect_vars(t, out);
}

std::vector<std::string> rule_pre_vars(const Rule& r) {
  std::vector<std::string> out;
  for (const Atom& a : r.linear_pre) collect_vars(a, out);
  for (const Atom& a : r.persistent_pre) collect_vars(a, out);
  return out;
}

std::vector<std::string> rule_post_vars(const Rule& r) {
  std::vector<std::string> out;
  for (const Atom& a : r.post) collect_vars(a, out);
  return out;
}

}  // namespace parley
