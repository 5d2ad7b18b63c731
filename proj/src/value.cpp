#include "provlog/value.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "provlog/errors.hpp"

namespace provlog {

unsigned degree(const Monomial& m) {
  unsigned d = 0;
  for (const auto& [v, e] : m) d += e;
  return d;
}

Monomial mono_mul(const Monomial& a, const Monomial& b) {
  Monomial out;
  out.reserve(a.size() + b.size());
  size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.push_back(b[j++]);
    } else {
      out.emplace_back(a[i].first, a[i].second + b[j].second);
      ++i;
      ++j;
    }
  }
  return out;
}

Monomial mono_var(const std::string& v) { return Monomial{{v, 1u}}; }

bool graded_lex_before(const Monomial& a, const Monomial& b) {
  unsigned da = degree(a), db = degree(b);
  if (da != db) return da > db;
  size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].first != b[j].first) return a[i].first < b[j].first;
    if (a[i].second != b[j].second) return a[i].second > b[j].second;
    ++i;
    ++j;
  }
  return false;
}

bool mono_divides(const Monomial& d, const Monomial& m) {
  size_t j = 0;
  for (const auto& [v, e] : d) {
    while (j < m.size() && m[j].first < v) ++j;
    if (j == m.size() || m[j].first != v || m[j].second < e) return false;
  }
  return true;
}

Monomial mono_div(const Monomial& m, const Monomial& d) {
  Monomial out;
  size_t j = 0;
  for (const auto& [v, e] : m) {
    while (j < d.size() && d[j].first < v) ++j;
    unsigned sub = (j < d.size() && d[j].first == v) ? d[j].second : 0;
    if (e > sub) out.emplace_back(v, e - sub);
  }
  return out;
}

std::string mono_to_string(const Monomial& m) {
  std::string s;
  for (const auto& [v, e] : m) {
    if (!s.empty()) s += "*";
    s += v;
    if (e > 1) s += "^" + std::to_string(e);
  }
  return s;
}

Coef coef_add(const Coef& a, const Coef& b) {
  if (a.inf || b.inf) return Coef{0, true};
  return Coef{a.n + b.n, false};
}

Coef coef_mul(const Coef& a, const Coef& b) {
  if (a.is_zero() || b.is_zero()) return Coef{0, false};
  if (a.inf || b.inf) return Coef{0, true};
  return Coef{a.n * b.n, false};
}

Poly Poly::constant(BigInt c) {
  Poly p;
  if (c != 0) p.terms[{}] = Coef{std::move(c), false};
  return p;
}

Poly Poly::variable(const std::string& v) {
  Poly p;
  p.terms[mono_var(v)] = Coef{1, false};
  return p;
}

Poly poly_normalize(Poly p, const PolyRing& r) {
  for (auto it = p.terms.begin(); it != p.terms.end();) {
    bool drop = it->second.is_zero() ||
                (r.degree_cap && degree(it->first) > *r.degree_cap);
    if (drop) {
      it = p.terms.erase(it);
      continue;
    }
    if (r.boolean) it->second = Coef{1, false};
    ++it;
  }
  return p;
}

Poly poly_add(const Poly& a, const Poly& b, const PolyRing& r) {
  Poly out = a;
  for (const auto& [m, c] : b.terms) {
    auto [it, inserted] = out.terms.emplace(m, c);
    if (!inserted) it->second = coef_add(it->second, c);
  }
  if (r.boolean)
    for (auto& [m, c] : out.terms) c = Coef{1, false};
  return out;
}

Poly poly_mul(const Poly& a, const Poly& b, const PolyRing& r) {
  Poly out;
  for (const auto& [ma, ca] : a.terms) {
    for (const auto& [mb, cb] : b.terms) {
      if (r.degree_cap && degree(ma) + degree(mb) > *r.degree_cap) continue;
      Coef c = coef_mul(ca, cb);
      if (c.is_zero()) continue;
      Monomial m = mono_mul(ma, mb);
      auto [it, inserted] = out.terms.emplace(std::move(m), c);
      if (!inserted) it->second = coef_add(it->second, c);
    }
  }
  if (r.boolean)
    for (auto& [m, c] : out.terms) c = Coef{1, false};
  return out;
}

Poly poly_clamp(const Poly& p) {
  Poly out;
  for (const auto& [m, c] : p.terms) out.terms[m] = Coef{1, false};
  return out;
}

Poly poly_zero_vars(const Poly& p, const std::vector<std::string>& vars) {
  std::set<std::string> vs(vars.begin(), vars.end());
  Poly out;
  for (const auto& [m, c] : p.terms) {
    bool hit = false;
    for (const auto& [v, e] : m)
      if (vs.count(v)) hit = true;
    if (!hit) out.terms.emplace(m, c);
  }
  return out;
}

std::vector<std::string> poly_variables(const Poly& p) {
  std::set<std::string> vs;
  for (const auto& [m, c] : p.terms)
    for (const auto& [v, e] : m) vs.insert(v);
  return {vs.begin(), vs.end()};
}

BigInt poly_coefficient_sum(const Poly& p) {
  BigInt s = 0;
  for (const auto& [m, c] : p.terms)
    if (!c.inf) s += c.n;
  return s;
}

bool poly_has_inf(const Poly& p) {
  for (const auto& [m, c] : p.terms)
    if (c.inf) return true;
  return false;
}

std::string poly_to_string(const Poly& p) {
  if (p.terms.empty()) return "0";
  std::vector<const std::pair<const Monomial, Coef>*> ts;
  for (const auto& t : p.terms) ts.push_back(&t);
  std::sort(ts.begin(), ts.end(), [](auto* a, auto* b) {
    return graded_lex_before(a->first, b->first);
  });
  std::string s;
  for (const auto* t : ts) {
    if (!s.empty()) s += " + ";
    const Coef& c = t->second;
    std::string cs = c.inf ? "inf" : c.n.str();
    if (t->first.empty()) {
      s += cs;
    } else {
      if (c.inf || c.n != 1) s += cs + "*";
      s += mono_to_string(t->first);
    }
  }
  return s;
}

PosBool posbool_reduce(std::vector<std::vector<std::string>> clauses) {
  for (auto& c : clauses) {
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
  }
  std::sort(clauses.begin(), clauses.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  clauses.erase(std::unique(clauses.begin(), clauses.end()), clauses.end());
  std::vector<std::vector<std::string>> kept;
  for (const auto& c : clauses) {
    bool absorbed = false;
    for (const auto& k : kept)
      if (std::includes(c.begin(), c.end(), k.begin(), k.end())) {
        absorbed = true;
        break;
      }
    if (!absorbed) kept.push_back(c);
  }
  std::sort(kept.begin(), kept.end());
  return PosBool{std::move(kept)};
}

PosBool posbool_or(const PosBool& a, const PosBool& b) {
  auto cs = a.clauses;
  cs.insert(cs.end(), b.clauses.begin(), b.clauses.end());
  return posbool_reduce(std::move(cs));
}

PosBool posbool_and(const PosBool& a, const PosBool& b) {
  std::vector<std::vector<std::string>> cs;
  for (const auto& x : a.clauses)
    for (const auto& y : b.clauses) {
      std::vector<std::string> u;
      std::set_union(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(u));
      cs.push_back(std::move(u));
    }
  return posbool_reduce(std::move(cs));
}

std::string posbool_to_string(const PosBool& p) {
  if (p.clauses.empty()) return "0";
  std::vector<Monomial> ms;
  for (const auto& c : p.clauses) {
    Monomial m;
    for (const auto& v : c) m.emplace_back(v, 1u);
    ms.push_back(std::move(m));
  }
  std::sort(ms.begin(), ms.end(), graded_lex_before);
  std::string s;
  for (const auto& m : ms) {
    if (!s.empty()) s += " + ";
    s += m.empty() ? "1" : mono_to_string(m);
  }
  return s;
}

namespace {

struct Cursor {
  std::string_view s;
  size_t i = 0;
  void ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool eat(std::string_view tok) {
    ws();
    if (s.substr(i, tok.size()) == tok) {
      i += tok.size();
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ValueParseError("at offset " + std::to_string(i) + " in '" + std::string(s) +
                          "': " + msg);
  }
};

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

ParsedTerm parse_factor(Cursor& c) {
  c.ws();
  ParsedTerm t{Coef{1, false}, {}};
  if (c.eat("∞")) {
    t.coef = Coef{0, true};
    return t;
  }
  if (c.i >= c.s.size()) c.fail("expected a factor");
  char ch = c.s[c.i];
  if (std::isdigit(static_cast<unsigned char>(ch))) {
    size_t st = c.i;
    while (c.i < c.s.size() && std::isdigit(static_cast<unsigned char>(c.s[c.i]))) ++c.i;
    t.coef = Coef{BigInt(std::string(c.s.substr(st, c.i - st))), false};
    return t;
  }
  if (is_ident_start(ch)) {
    size_t st = c.i;
    while (c.i < c.s.size() && is_ident_char(c.s[c.i])) ++c.i;
    std::string name(c.s.substr(st, c.i - st));
    if (name == "inf") {
      t.coef = Coef{0, true};
      return t;
    }
    unsigned e = 1;
    if (c.eat("^")) {
      c.ws();
      size_t es = c.i;
      while (c.i < c.s.size() && std::isdigit(static_cast<unsigned char>(c.s[c.i]))) ++c.i;
      if (es == c.i) c.fail("expected exponent");
      e = static_cast<unsigned>(std::stoul(std::string(c.s.substr(es, c.i - es))));
    }
    if (e > 0) t.mono = Monomial{{name, e}};
    return t;
  }
  c.fail(std::string("unexpected character '") + ch + "'");
}

}  // namespace

std::vector<ParsedTerm> parse_sum_of_products(std::string_view text) {
  Cursor c{text};
  std::vector<ParsedTerm> out;
  while (true) {
    ParsedTerm term = parse_factor(c);
    while (c.eat("*") || c.eat("&") || c.eat("∧")) {
      ParsedTerm f = parse_factor(c);
      term.coef = coef_mul(term.coef, f.coef);
      term.mono = mono_mul(term.mono, f.mono);
    }
    out.push_back(std::move(term));
    if (c.eat("+") || c.eat("|") || c.eat("∨")) continue;
    c.ws();
    if (c.i != c.s.size()) c.fail("trailing input");
    break;
  }
  return out;
}

}  // namespace provlog
