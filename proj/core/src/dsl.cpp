#include "parley/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace parley {

std::string Diagnostic::to_string() const {
  std::string out = severity == Severity::Error ? "error" : "warning";
  out += '[';
  out += code;
  out += ']';
  if (span.line > 0) {
    out += ' ';
    out += std::to_string(span.line);
    out += ':';
    out += std::to_string(span.col);
  }
  out += ": ";
  out += message;
  return out;
}

bool has_errors(const std::vector<Diagnostic>& diags) {
  return std::any_of(diags.begin(), diags.end(), [](const Diagnostic& d) {
    return d.severity == Severity::Error;
  });
}

}  // namespace parley

namespace parley::dsl {

namespace {

constexpr std::size_t kMaxNumeral = 1000000;

// ---------------------------------------------------------------- lexing --

struct Token {
  enum class Type {
    Ident, Var, Number,
    Colon, Star, Lolli, Dot, Dollar,
    LParen, RParen, LBrace, RBrace, Comma, Plus,
    End, Bad
  };
  Type type = Type::End;
  std::string text;
  std::uint64_t number = 0;
  int line = 1;
  int col = 1;

  SrcSpan span() const {
    return SrcSpan{line, col, line, col + static_cast<int>(text.size())};
  }
};

bool ident_cont(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') { ++line; col = 1; } else { ++col; }
    }
  };
  while (i < src.size()) {
    const char c = src[i];
    if (c == '%') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) { advance(1); continue; }

    Token t;
    t.line = line;
    t.col = col;
    auto single = [&](Token::Type type) {
      t.type = type;
      t.text = std::string(1, c);
      advance(1);
    };
    if (std::islower(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && ident_cont(src[j])) ++j;
      t.type = Token::Type::Ident;
      t.text = std::string(src.substr(i, j - i));
      advance(j - i);
    } else if (std::isupper(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && ident_cont(src[j])) ++j;
      t.type = Token::Type::Var;
      t.text = std::string(src.substr(i, j - i));
      advance(j - i);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      t.text = std::string(src.substr(i, j - i));
      if (t.text.size() > 7 || std::stoull(t.text) > kMaxNumeral) {
        t.type = Token::Type::Bad;
        t.text = "numeral too large: " + t.text;
      } else {
        t.type = Token::Type::Number;
        t.number = std::stoull(t.text);
      }
      advance(j - i);
    } else if (c == '-') {
      if (i + 1 < src.size() && src[i + 1] == 'o') {
        t.type = Token::Type::Lolli;
        t.text = "-o";
        advance(2);
      } else {
        t.type = Token::Type::Bad;
        t.text = "stray '-' (expected '-o')";
        advance(1);
      }
    } else {
      switch (c) {
        case ':': single(Token::Type::Colon); break;
        case '*': single(Token::Type::Star); break;
        case '.': single(Token::Type::Dot); break;
        case '$': single(Token::Type::Dollar); break;
        case '(': single(Token::Type::LParen); break;
        case ')': single(Token::Type::RParen); break;
        case '{': single(Token::Type::LBrace); break;
        case '}': single(Token::Type::RBrace); break;
        case ',': single(Token::Type::Comma); break;
        case '+': single(Token::Type::Plus); break;
        default:
          t.type = Token::Type::Bad;
          t.text = std::string("unexpected character '") + c + "'";
          advance(1);
      }
    }
    out.push_back(std::move(t));
  }
  Token end;
  end.type = Token::Type::End;
  end.line = line;
  end.col = col;
  out.push_back(end);
  return out;
}

// --------------------------------------------------------------- surface --

struct SAtom {
  Atom atom;
  SrcSpan span;
};

struct SPre {
  SAtom atom;
  bool dollar = false;
};

struct SRule {
  std::string name;
  SrcSpan span;
  std::vector<SPre> pre;
  std::vector<SAtom> post;
};

struct SDecl {
  PredDecl decl;
  SrcSpan span;
};

struct SProgram {
  std::vector<SDecl> decls;
  std::vector<SRule> rules;
  std::vector<SAtom> init;
};

// --------------------------------------------------------------- parsing --

class Parser {
public:
  Parser(std::string_view src, std::vector<Diagnostic>& diags)
      : tokens_(lex(src)), diags_(diags) {}

  /// Entry point for the atom helpers: one atom, then end of input.
  std::optional<SAtom> single_atom() {
    auto a = parse_atom();
    if (!a) return std::nullopt;
    if (!at(Token::Type::End)) {
      error("syntax-error", "unexpected trailing tokens", peek().span());
      return std::nullopt;
    }
    return a;
  }

  SProgram parse() {
    SProgram prog;
    while (!at(Token::Type::End)) {
      if (at(Token::Type::Bad)) {
        error("syntax-error", peek().text, peek().span());
        ++pos_;
        continue;
      }
      if (!at(Token::Type::Ident)) {
        error("syntax-error", "expected a declaration, rule, or init block",
              peek().span());
        sync();
        continue;
      }
      const std::string& kw = peek().text;
      if ((kw == "pred" || kw == "perm") && next_is(Token::Type::Ident)) {
        parse_decl(prog);
      } else if (kw == "init" && next_is(Token::Type::LBrace)) {
        parse_init(prog);
      } else {
        parse_rule(prog);
      }
    }
    return prog;
  }

private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::vector<Diagnostic>& diags_;

  const Token& peek(std::size_t ahead = 0) const {
    return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
  }
  bool at(Token::Type t) const { return peek().type == t; }
  bool next_is(Token::Type t) const { return peek(1).type == t; }
  const Token& take() { return tokens_[std::min(pos_++, tokens_.size() - 1)]; }

  void error(std::string code, std::string msg, SrcSpan span) {
    diags_.push_back({Severity::Error, std::move(code), std::move(msg), span});
  }

  /// Skip to just past the next '.', or to end of input.
  void sync() {
    while (!at(Token::Type::End)) {
      if (take().type == Token::Type::Dot) return;
    }
  }

  bool expect(Token::Type t, const char* what) {
    if (at(t)) { ++pos_; return true; }
    error("syntax-error", std::string("expected ") + what, peek().span());
    return false;
  }

  bool at_term_start() const {
    switch (peek().type) {
      case Token::Type::Ident:
      case Token::Type::Var:
      case Token::Type::Number:
      case Token::Type::LParen:
        return true;
      default:
        return false;
    }
  }

  std::optional<Term> parse_term() {
    const Token& t = peek();
    switch (t.type) {
      case Token::Type::Ident:
        ++pos_;
        return Term::app(t.text);
      case Token::Type::Var:
        ++pos_;
        return Term::var(t.text);
      case Token::Type::Number:
        ++pos_;
        return Term::nat(t.number);
      case Token::Type::LParen:
        return parse_paren_term();
      default:
        error("syntax-error", "expected a term", t.span());
        return std::nullopt;
    }
  }

  std::optional<Term> parse_paren_term() {
    ++pos_;  // '('
    if (at(Token::Type::Var)) {
      // "(V + k)" sugar for k successor applications.
      const Token var = take();
      if (!expect(Token::Type::Plus, "'+'")) return std::nullopt;
      if (!at(Token::Type::Number)) {
        error("syntax-error", "expected a numeral after '+'", peek().span());
        return std::nullopt;
      }
      const std::uint64_t k = take().number;
      if (!expect(Token::Type::RParen, "')'")) return std::nullopt;
      Term out = Term::var(var.text);
      for (std::uint64_t i = 0; i < k; ++i) out = Term::app("s", {std::move(out)});
      return out;
    }
    if (!at(Token::Type::Ident)) {
      error("syntax-error", "expected a compound head", peek().span());
      return std::nullopt;
    }
    const Token head = take();
    std::vector<Term> args;
    while (at_term_start()) {
      auto arg = parse_term();
      if (!arg) return std::nullopt;
      args.push_back(std::move(*arg));
    }
    if (!expect(Token::Type::RParen, "')'")) return std::nullopt;
    if (head.text == "s" && args.size() != 1) {
      error("sort-mismatch", "'s' takes exactly one argument", head.span());
      return std::nullopt;
    }
    return Term::app(head.text, std::move(args));
  }

  std::optional<SAtom> parse_atom() {
    if (!at(Token::Type::Ident)) {
      error("syntax-error", "expected a predicate name", peek().span());
      return std::nullopt;
    }
    const Token pred = take();
    SAtom out;
    out.atom.pred = pred.text;
    out.span = pred.span();
    while (at_term_start()) {
      auto arg = parse_term();
      if (!arg) return std::nullopt;
      out.atom.args.push_back(std::move(*arg));
    }
    const Token& prev = tokens_[pos_ - 1];
    out.span.end_line = prev.line;
    out.span.end_col = prev.col + static_cast<int>(prev.text.size());
    return out;
  }

  void parse_decl(SProgram& prog) {
    const Token kw = take();
    SDecl d;
    d.decl.permanent = kw.text == "perm";
    d.span = kw.span();
    d.decl.name = take().text;
    while (at(Token::Type::Ident)) d.decl.sorts.push_back(take().text);
    const Token& prev = tokens_[pos_ - 1];
    d.span.end_line = prev.line;
    d.span.end_col = prev.col + static_cast<int>(prev.text.size());
    if (!expect(Token::Type::Dot, "'.' after declaration")) { sync(); return; }
    prog.decls.push_back(std::move(d));
  }

  void parse_init(SProgram& prog) {
    ++pos_;  // 'init'
    ++pos_;  // '{'
    if (at(Token::Type::RBrace)) { ++pos_; return; }
    for (;;) {
      auto atom = parse_atom();
      if (!atom) { sync_brace(); return; }
      prog.init.push_back(std::move(*atom));
      if (at(Token::Type::Comma)) { ++pos_; continue; }
      break;
    }
    if (!expect(Token::Type::RBrace, "'}' after init atoms")) sync_brace();
  }

  void sync_brace() {
    while (!at(Token::Type::End)) {
      if (take().type == Token::Type::RBrace) return;
    }
  }

  void parse_rule(SProgram& prog) {
    if (peek().text == "rule" && next_is(Token::Type::Ident)) ++pos_;
    const Token name = take();
    SRule r;
    r.name = name.text;
    r.span = name.span();
    if (!expect(Token::Type::Colon, "':' after rule name")) { sync(); return; }

    for (;;) {
      SPre pre;
      if (at(Token::Type::Dollar)) { ++pos_; pre.dollar = true; }
      auto atom = parse_atom();
      if (!atom) { sync(); return; }
      pre.atom = std::move(*atom);
      r.pre.push_back(std::move(pre));
      if (at(Token::Type::Star)) { ++pos_; continue; }
      break;
    }
    if (!expect(Token::Type::Lolli, "'-o' between preconditions and postconditions")) {
      sync();
      return;
    }
    for (;;) {
      if (at(Token::Type::Dollar)) {
        error("persist-on-post", "'$' cannot mark a postcondition", peek().span());
        ++pos_;
      }
      auto atom = parse_atom();
      if (!atom) { sync(); return; }
      r.post.push_back(std::move(*atom));
      if (at(Token::Type::Star)) { ++pos_; continue; }
      break;
    }
    const Token& prev = tokens_[pos_ - 1];
    r.span.end_line = prev.line;
    r.span.end_col = prev.col + static_cast<int>(prev.text.size());
    if (!expect(Token::Type::Dot, "'.' after rule")) { sync(); return; }
    prog.rules.push_back(std::move(r));
  }
};

// ------------------------------------------------------------ validation --

struct DeclInfo {
  PredDecl decl;
  SrcSpan span;
};

using DeclTable = std::map<std::string, DeclInfo>;

/// True for terms a "nat" position accepts: a variable, or a successor
/// chain ending in zero or a variable.
bool nat_shaped(const Term& t) {
  const Term* p = &t;
  while (p->is_succ()) p = &p->args()[0];
  return p->is_var() || p->is_zero();
}

/// True for terms a nominal position rejects: anything successor-built.
bool numeric_shaped(const Term& t) {
  return t.is_zero() || t.is_succ();
}

void check_term_shape(const Term& t, const SrcSpan& span,
                      std::vector<Diagnostic>& diags) {
  if (t.is_var()) return;
  if (t.head() == "s" && t.args().size() != 1)
    diags.push_back({Severity::Error, "sort-mismatch",
                     "'s' takes exactly one argument", span});
  if (t.head() == "0" && !t.args().empty())
    diags.push_back({Severity::Error, "sort-mismatch",
                     "'0' takes no arguments", span});
  for (const Term& a : t.args()) check_term_shape(a, span, diags);
}

class Validator {
public:
  Validator(const DeclTable& table, std::vector<Diagnostic>& diags)
      : table_(table), diags_(diags) {}

  void check_rules(const std::vector<SRule>& rules) {
    std::map<std::string, SrcSpan> names;
    for (const SRule& r : rules) {
      if (!names.emplace(r.name, r.span).second)
        error("duplicate-rule", "rule '" + r.name + "' is defined twice", r.span);
      check_rule(r);
    }
  }

  void check_rule(const SRule& r) {
    var_sorts_.clear();
    if (r.pre.empty())
      error("empty-lhs", "rule '" + r.name + "' has no preconditions", r.span);
    for (const SPre& pre : r.pre) {
      check_atom(pre.atom);
      const DeclInfo* d = find(pre.atom.atom.pred);
      if (d && d->decl.permanent && !pre.dollar) {
        diags_.push_back({Severity::Warning, "permanent-linear-match",
                          "permanent fact '" + pre.atom.atom.pred +
                              "' is matched linearly; it will be read, not consumed",
                          pre.atom.span});
      }
    }
    for (const SAtom& post : r.post) {
      check_atom(post);
      const DeclInfo* d = find(post.atom.pred);
      if (d && d->decl.permanent) {
        error("permanent-in-post",
              "rules cannot produce the permanent fact '" + post.atom.pred + "'",
              post.span);
      }
    }
    // Right-hand side variables must come from the left.
    std::vector<std::string> lhs, rhs;
    for (const SPre& pre : r.pre) collect_vars(pre.atom.atom, lhs);
    for (const SAtom& post : r.post) collect_vars(post.atom, rhs);
    for (const std::string& v : rhs) {
      if (std::find(lhs.begin(), lhs.end(), v) == lhs.end()) {
        error("unbound-variable",
              "variable " + v + " of rule '" + r.name +
                  "' appears only on the right-hand side",
              r.post.empty() ? r.span : r.post.front().span);
      }
    }
  }

  void check_init(const std::vector<SAtom>& init) {
    for (const SAtom& a : init) {
      check_atom(a);
      if (!a.atom.is_ground())
        error("non-ground-init",
              "initial atom '" + a.atom.to_string() + "' contains variables",
              a.span);
    }
  }

private:
  const DeclTable& table_;
  std::vector<Diagnostic>& diags_;
  std::map<std::string, std::string> var_sorts_;

  const DeclInfo* find(const std::string& pred) const {
    auto it = table_.find(pred);
    return it == table_.end() ? nullptr : &it->second;
  }

  void error(std::string code, std::string msg, SrcSpan span) {
    diags_.push_back({Severity::Error, std::move(code), std::move(msg), span});
  }

  void check_atom(const SAtom& a) {
    for (const Term& t : a.atom.args) check_term_shape(t, a.span, diags_);
    const DeclInfo* d = find(a.atom.pred);
    if (!d) {
      error("unknown-predicate",
            "predicate '" + a.atom.pred + "' is not declared", a.span);
      return;
    }
    if (d->decl.sorts.size() != a.atom.args.size()) {
      error("arity-mismatch",
            "'" + a.atom.pred + "' takes " +
                std::to_string(d->decl.sorts.size()) + " argument(s), got " +
                std::to_string(a.atom.args.size()),
            a.span);
      return;
    }
    for (std::size_t i = 0; i < a.atom.args.size(); ++i)
      check_sort(a.atom.args[i], d->decl.sorts[i], a);
  }

  void check_sort(const Term& t, const std::string& sort, const SAtom& a) {
    if (sort == "term") return;
    if (sort == "nat") {
      if (!nat_shaped(t)) {
        error("sort-mismatch",
              "'" + t.to_string() + "' is not a natural number in '" +
                  a.atom.to_string() + "'",
              a.span);
        return;
      }
      const Term* p = &t;
      while (p->is_succ()) p = &p->args()[0];
      if (p->is_var()) bind_var_sort(p->head(), "nat", a);
      return;
    }
    // Nominal sort: reject numerals, record variable sorts. Compound
    // arguments are constructor applications and are not sort-checked.
    if (numeric_shaped(t)) {
      error("sort-mismatch",
            "numeral in position of sort '" + sort + "' in '" +
                a.atom.to_string() + "'",
            a.span);
      return;
    }
    if (t.is_var()) bind_var_sort(t.head(), sort, a);
  }

  void bind_var_sort(const std::string& var, const std::string& sort,
                     const SAtom& a) {
    auto [it, fresh] = var_sorts_.emplace(var, sort);
    if (!fresh && it->second != sort) {
      error("sort-mismatch",
            "variable " + var + " is used both at sort '" + it->second +
                "' and at sort '" + sort + "'",
            a.span);
    }
  }
};

DeclTable table_from_decls(const std::vector<SDecl>& decls,
                           std::vector<Diagnostic>& diags) {
  DeclTable table;
  for (const SDecl& d : decls) {
    if (!table.emplace(d.decl.name, DeclInfo{d.decl, d.span}).second)
      diags.push_back({Severity::Error, "duplicate-decl",
                       "predicate '" + d.decl.name + "' is declared twice",
                       d.span});
  }
  return table;
}

/// Script mode: no declarations at all, so infer one per predicate from its
/// first use (arity from that use, all sorts "term", linear).
DeclTable infer_decls(SProgram& prog) {
  DeclTable table;
  auto see = [&](const SAtom& a) {
    if (table.contains(a.atom.pred)) return;
    PredDecl d;
    d.name = a.atom.pred;
    d.sorts.assign(a.atom.args.size(), "term");
    table.emplace(d.name, DeclInfo{d, a.span});
    prog.decls.push_back(SDecl{std::move(d), a.span});
  };
  for (const SRule& r : prog.rules) {
    for (const SPre& p : r.pre) see(p.atom);
    for (const SAtom& p : r.post) see(p);
  }
  for (const SAtom& a : prog.init) see(a);
  return table;
}

Program lower(const SProgram& surface, const DeclTable& table) {
  Program out;
  for (const SDecl& d : surface.decls) {
    out.decls.push_back(d.decl);
    out.decl_spans.push_back(d.span);
  }
  for (const SRule& r : surface.rules) {
    Rule rule;
    rule.name = r.name;
    for (const SPre& pre : r.pre) {
      auto it = table.find(pre.atom.atom.pred);
      const bool persistent =
          pre.dollar || (it != table.end() && it->second.decl.permanent);
      (persistent ? rule.persistent_pre : rule.linear_pre).push_back(pre.atom.atom);
    }
    for (const SAtom& post : r.post) rule.post.push_back(post.atom);
    out.rules.push_back(std::move(rule));
    out.rule_spans.push_back(r.span);
  }
  for (const SAtom& a : surface.init) {
    auto it = table.find(a.atom.pred);
    const bool permanent = it != table.end() && it->second.decl.permanent;
    (permanent ? out.permanent_init : out.init).push_back(a.atom);
  }
  return out;
}

/// Lift a (possibly hand-built) Program back to the surface representation
/// the validator works on. persistent_pre atoms lift as `$`-marked.
SProgram lift(const Program& p) {
  SProgram s;
  for (std::size_t i = 0; i < p.decls.size(); ++i)
    s.decls.push_back(SDecl{p.decls[i],
                            i < p.decl_spans.size() ? p.decl_spans[i] : SrcSpan{}});
  for (std::size_t i = 0; i < p.rules.size(); ++i) {
    const Rule& r = p.rules[i];
    SRule sr;
    sr.name = r.name;
    sr.span = i < p.rule_spans.size() ? p.rule_spans[i] : SrcSpan{};
    for (const Atom& a : r.linear_pre) sr.pre.push_back({{a, sr.span}, false});
    for (const Atom& a : r.persistent_pre) sr.pre.push_back({{a, sr.span}, true});
    for (const Atom& a : r.post) sr.post.push_back({a, sr.span});
    s.rules.push_back(std::move(sr));
  }
  for (const Atom& a : p.init) s.init.push_back({a, SrcSpan{}});
  for (const Atom& a : p.permanent_init) s.init.push_back({a, SrcSpan{}});
  return s;
}

// -------------------------------------------------------------- printing --

std::string decl_line(const PredDecl& d) {
  std::string out = d.permanent ? "perm " : "pred ";
  out += d.name;
  for (const std::string& s : d.sorts) {
    out += ' ';
    out += s;
  }
  out += '.';
  return out;
}

std::string wrap_atoms(const std::vector<std::string>& parts) {
  if (parts.empty()) return "    ";
  std::string out;
  std::string line = "    " + parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) {
    if (line.size() + 3 + parts[i].size() > 76) {
      out += line;
      out += '\n';
      line = "    * " + parts[i];
    } else {
      line += " * " + parts[i];
    }
  }
  out += line;
  return out;
}

std::string rule_text(const Rule& r) {
  std::vector<std::string> pres, posts;
  for (const Atom& a : r.linear_pre) pres.push_back(a.to_string());
  for (const Atom& a : r.persistent_pre) pres.push_back("$" + a.to_string());
  for (const Atom& a : r.post) posts.push_back(a.to_string());

  std::string one = r.name + " : ";
  for (std::size_t i = 0; i < pres.size(); ++i) {
    if (i) one += " * ";
    one += pres[i];
  }
  one += " -o ";
  for (std::size_t i = 0; i < posts.size(); ++i) {
    if (i) one += " * ";
    one += posts[i];
  }
  one += '.';
  if (one.size() <= 100) return one;

  std::string out = r.name + " :\n";
  out += wrap_atoms(pres);
  out += "\n  -o\n";
  out += wrap_atoms(posts);
  out += '.';
  return out;
}

}  // namespace

// ---------------------------------------------------------------- public --

const PredDecl* Program::find_decl(std::string_view name) const {
  for (const PredDecl& d : decls)
    if (d.name == name) return &d;
  return nullptr;
}

bool Program::is_permanent(std::string_view pred) const {
  const PredDecl* d = find_decl(pred);
  return d != nullptr && d->permanent;
}

SimState Program::initial_state() const {
  SimState st;
  for (const Atom& a : init) st.add_linear(a);
  for (const Atom& a : permanent_init) st.add_permanent(a);
  return st;
}

bool operator==(const Program& a, const Program& b) {
  auto key = [](const PredDecl& d) {
    return std::tuple(d.name, d.permanent, d.sorts);
  };
  std::vector<PredDecl> da = a.decls, db = b.decls;
  std::sort(da.begin(), da.end(),
            [&](const PredDecl& x, const PredDecl& y) { return key(x) < key(y); });
  std::sort(db.begin(), db.end(),
            [&](const PredDecl& x, const PredDecl& y) { return key(x) < key(y); });
  return da == db && a.rules == b.rules && a.init == b.init &&
         a.permanent_init == b.permanent_init;
}

ParseResult parse_program(std::string_view source) {
  ParseResult result;
  Parser parser(source, result.diagnostics);
  SProgram surface = parser.parse();

  DeclTable table = surface.decls.empty()
                        ? infer_decls(surface)
                        : table_from_decls(surface.decls, result.diagnostics);

  Validator v(table, result.diagnostics);
  v.check_rules(surface.rules);
  v.check_init(surface.init);

  if (!has_errors(result.diagnostics))
    result.program = lower(surface, table);
  return result;
}

std::vector<Diagnostic> validate(const Program& program) {
  std::vector<Diagnostic> diags;
  SProgram surface = lift(program);
  DeclTable table = table_from_decls(surface.decls, diags);
  Validator v(table, diags);
  v.check_rules(surface.rules);
  v.check_init(surface.init);
  return diags;
}

std::string pretty_print(const Program& program) {
  std::vector<std::string> chunks;
  if (!program.decls.empty()) {
    std::string block;
    for (std::size_t i = 0; i < program.decls.size(); ++i) {
      if (i) block += '\n';
      block += decl_line(program.decls[i]);
    }
    chunks.push_back(std::move(block));
  }
  for (const Rule& r : program.rules) chunks.push_back(rule_text(r));
  if (!program.init.empty() || !program.permanent_init.empty()) {
    std::string block = "init {\n";
    std::vector<const Atom*> atoms;
    for (const Atom& a : program.init) atoms.push_back(&a);
    for (const Atom& a : program.permanent_init) atoms.push_back(&a);
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      block += "  " + atoms[i]->to_string();
      if (i + 1 < atoms.size()) block += ',';
      block += '\n';
    }
    block += '}';
    chunks.push_back(std::move(block));
  }
  std::string out;
  for (std::size_t i = 0; i < chunks.size(); ++i) {
    if (i) out += "\n\n";
    out += chunks[i];
  }
  out += '\n';
  return out;
}

std::optional<Atom> parse_atom(std::string_view text, std::string* error) {
  std::vector<Diagnostic> diags;
  Parser parser(text, diags);
  auto atom = parser.single_atom();
  if (!atom || has_errors(diags)) {
    if (error) {
      *error = "cannot parse atom '" + std::string(text) + "'";
      for (const Diagnostic& d : diags)
        if (d.severity == Severity::Error) { *error += ": " + d.message; break; }
    }
    return std::nullopt;
  }
  return atom->atom;
}

std::optional<Term> parse_term(std::string_view text, std::string* error) {
  auto atom = parse_atom("of " + std::string(text), error);
  if (!atom) return std::nullopt;
  if (atom->args.size() != 1) {
    if (error) *error = "expected exactly one term in '" + std::string(text) + "'";
    return std::nullopt;
  }
  return atom->args.front();
}

}  // namespace parley::dsl
