// Datalog text format: rules `H(X) :- B(X, y).`, facts `p(a,b) @ annot.`,
// `%` comments. Variables are uppercase-initial (or `_`) or written `?x`.
#include <cctype>

#include "provlog/datalog.hpp"
#include "provlog/errors.hpp"

namespace provlog {

namespace {

bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

class Lexer {
 public:
  explicit Lexer(std::string_view s) : s_(s) {}

  void skip() {
    while (i_ < s_.size()) {
      char c = s_[i_];
      if (c == '%') {
        while (i_ < s_.size() && s_[i_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }
  bool at_end() {
    skip();
    return i_ >= s_.size();
  }
  char peek() {
    skip();
    return i_ < s_.size() ? s_[i_] : '\0';
  }
  bool eat(std::string_view tok) {
    skip();
    if (s_.substr(i_, tok.size()) == tok) {
      for (size_t k = 0; k < tok.size(); ++k) advance();
      return true;
    }
    return false;
  }
  void expect(std::string_view tok) {
    if (!eat(tok)) fail("expected '" + std::string(tok) + "'");
  }
  std::string ident() {
    skip();
    size_t st = i_;
    while (i_ < s_.size() && ident_char(s_[i_])) advance();
    if (st == i_) fail("expected an identifier");
    return std::string(s_.substr(st, i_ - st));
  }
  std::string quoted() {
    char q = s_[i_];
    advance();
    std::string out;
    while (i_ < s_.size() && s_[i_] != q) {
      if (s_[i_] == '\\' && i_ + 1 < s_.size()) advance();
      out += s_[i_];
      advance();
    }
    if (i_ >= s_.size()) fail("unterminated quoted constant");
    advance();
    return out;
  }
  // Raw annotation text up to the statement-terminating '.', i.e. a '.'
  // followed by whitespace, a comment, or end of input.
  std::string annotation() {
    skip();
    size_t st = i_;
    while (i_ < s_.size()) {
      if (s_[i_] == '.') {
        char nx = i_ + 1 < s_.size() ? s_[i_ + 1] : ' ';
        if (std::isspace(static_cast<unsigned char>(nx)) || nx == '%') break;
      }
      if (s_[i_] == '\n' && i_ == st) break;
      advance();
    }
    if (i_ >= s_.size()) fail("annotation is not terminated by '.'");
    return std::string(s_.substr(st, i_ - st));
  }
  [[noreturn]] void fail(const std::string& msg) const { throw SyntaxError(line_, col_, msg); }
  int line() const { return line_; }
  int col() const { return col_; }

 private:
  void advance() {
    if (s_[i_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++i_;
  }
  std::string_view s_;
  size_t i_ = 0;
  int line_ = 1, col_ = 1;
};

Term parse_term(Lexer& lx) {
  char c = lx.peek();
  if (c == '?') {
    lx.expect("?");
    return Term::var(lx.ident());
  }
  if (c == '"' || c == '\'') return Term::constant(lx.quoted());
  if (c == '\0' || !ident_char(c)) lx.fail("expected a term");
  std::string id = lx.ident();
  if (std::isupper(static_cast<unsigned char>(id[0])) || id[0] == '_') return Term::var(id);
  return Term::constant(id);
}

Atom parse_atom(Lexer& lx) {
  Atom a;
  char c = lx.peek();
  if (c == '\0' || !std::isalpha(static_cast<unsigned char>(c))) lx.fail("expected a predicate name");
  a.pred = lx.ident();
  if (lx.eat("(")) {
    if (!lx.eat(")")) {
      do {
        a.args.push_back(parse_term(lx));
      } while (lx.eat(","));
      lx.expect(")");
    }
  }
  return a;
}

struct Statement {
  bool is_rule = false;
  Rule rule;
  Atom fact;
  bool has_annot = false;
  std::string annot;
  int line = 0, col = 0, annot_line = 0, annot_col = 0;
};

Statement parse_statement(Lexer& lx) {
  Statement st;
  lx.skip();
  st.line = lx.line();
  st.col = lx.col();
  Atom head = parse_atom(lx);
  if (lx.eat(":-")) {
    st.is_rule = true;
    st.rule.head = std::move(head);
    do {
      st.rule.body.push_back(parse_atom(lx));
    } while (lx.eat(","));
    lx.expect(".");
    return st;
  }
  st.fact = std::move(head);
  if (lx.eat("@")) {
    st.has_annot = true;
    lx.skip();
    st.annot_line = lx.line();
    st.annot_col = lx.col();
    st.annot = lx.annotation();
  }
  lx.expect(".");
  return st;
}

void note_arity(std::map<std::string, size_t>& ar, const std::string& pred, size_t n) {
  auto [it, ins] = ar.emplace(pred, n);
  if (!ins && it->second != n)
    throw ArityError("predicate '" + pred + "' used with arity " + std::to_string(it->second) +
                     " and " + std::to_string(n));
}

}  // namespace

void dedupe_body(Rule& r) {
  std::vector<Atom> out;
  for (auto& a : r.body) {
    bool dup = false;
    for (const auto& b : out)
      if (a == b) dup = true;
    if (!dup) out.push_back(std::move(a));
  }
  r.body = std::move(out);
}

void check_rule(const Rule& r) {
  std::set<std::string> bv;
  for (const auto& a : r.body)
    for (const auto& t : a.args)
      if (t.is_var) bv.insert(t.name);
  for (const auto& t : r.head.args)
    if (t.is_var && !bv.count(t.name))
      throw HeadVariableError("head variable " + to_string(t) + " of rule '" + to_string(r) +
                              "' does not occur in the body");
}

void check_arity(const Program& p, const Database& d) {
  std::map<std::string, size_t> ar;
  for (const auto& r : p.rules) {
    note_arity(ar, r.head.pred, r.head.args.size());
    for (const auto& a : r.body) note_arity(ar, a.pred, a.args.size());
  }
  for (const auto& f : d) note_arity(ar, f.pred, f.args.size());
}

Program parse_program(std::string_view text) {
  Lexer lx(text);
  Program p;
  while (!lx.at_end()) {
    Statement st = parse_statement(lx);
    if (!st.is_rule) throw SyntaxError(st.line, st.col, "expected ':-' (facts belong in the database)");
    dedupe_body(st.rule);
    check_rule(st.rule);
    p.rules.push_back(std::move(st.rule));
  }
  check_arity(p, {});
  return p;
}

Rule parse_rule(std::string_view text) {
  Program p = parse_program(text);
  if (p.rules.size() != 1) throw SyntaxError(1, 1, "expected exactly one rule");
  return p.rules.front();
}

AnnotatedDatabase parse_database(std::string_view text, SemiringPtr semiring) {
  Lexer lx(text);
  AnnotatedDatabase db;
  db.semiring = semiring;
  std::map<std::string, size_t> ar;
  while (!lx.at_end()) {
    Statement st = parse_statement(lx);
    if (st.is_rule) throw SyntaxError(st.line, st.col, "rules belong in the program");
    Fact f;
    f.pred = st.fact.pred;
    for (const auto& t : st.fact.args) {
      if (t.is_var) throw SyntaxError(st.line, st.col, "facts must be ground, found variable " + t.name);
      f.args.push_back(t.name);
    }
    note_arity(ar, f.pred, f.args.size());
    Value v = semiring->one();
    if (st.has_annot) {
      try {
        v = semiring->parse(st.annot);
      } catch (const ValueParseError& e) {
        throw SyntaxError(st.annot_line, st.annot_col, e.what());
      }
    }
    if (semiring->is_zero(v))
      throw ZeroAnnotationError("fact " + to_string(f) + " is annotated with zero");
    if (db.lambda.count(f)) throw DuplicateFactError("fact " + to_string(f) + " occurs twice");
    db.lambda.emplace(std::move(f), std::move(v));
  }
  return db;
}

Fact parse_fact(std::string_view text) {
  Lexer lx(text);
  Atom a = parse_atom(lx);
  lx.eat(".");
  if (!lx.at_end()) lx.fail("trailing input after fact");
  Fact f;
  f.pred = a.pred;
  for (const auto& t : a.args) {
    if (t.is_var) lx.fail("facts must be ground");
    f.args.push_back(t.name);
  }
  return f;
}

namespace {

bool plain_constant(const std::string& s) {
  if (s.empty()) return false;
  unsigned char c0 = static_cast<unsigned char>(s[0]);
  if (!(std::islower(c0) || std::isdigit(c0))) return false;
  for (char c : s)
    if (!ident_char(c)) return false;
  return true;
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string constant_text(const std::string& c) { return plain_constant(c) ? c : quote(c); }

}  // namespace

std::string to_string(const Term& t) {
  if (!t.is_var) return constant_text(t.name);
  unsigned char c0 = t.name.empty() ? 'x' : static_cast<unsigned char>(t.name[0]);
  if (std::isupper(c0) || c0 == '_') return t.name;
  return "?" + t.name;
}

std::string to_string(const Atom& a) {
  if (a.args.empty()) return a.pred;
  std::string s = a.pred + "(";
  for (size_t i = 0; i < a.args.size(); ++i) {
    if (i) s += ",";
    s += to_string(a.args[i]);
  }
  return s + ")";
}

std::string to_string(const Fact& f) {
  if (f.args.empty()) return f.pred;
  std::string s = f.pred + "(";
  for (size_t i = 0; i < f.args.size(); ++i) {
    if (i) s += ",";
    s += constant_text(f.args[i]);
  }
  return s + ")";
}

std::string to_string(const Rule& r) {
  std::string s = to_string(r.head) + " :- ";
  for (size_t i = 0; i < r.body.size(); ++i) {
    if (i) s += ", ";
    s += to_string(r.body[i]);
  }
  return s + ".";
}

std::string to_string(const Homomorphism& h) {
  std::string s = "{";
  bool first = true;
  for (const auto& [v, c] : h) {
    if (!first) s += ", ";
    first = false;
    s += to_string(Term::var(v)) + "->" + constant_text(c);
  }
  return s + "}";
}

std::string print_program(const Program& p) {
  std::string s;
  for (const auto& r : p.rules) s += to_string(r) + "\n";
  return s;
}

std::string print_database(const AnnotatedDatabase& db) {
  std::string s;
  for (const auto& [f, v] : db.lambda) s += to_string(f) + " @ " + db.semiring->print(v) + ".\n";
  return s;
}

}  // namespace provlog
