#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace provlog {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

// Natural number extended with absorbing infinities. level 0 is finite,
// level 1 is the usual infinity, level 2 is a second, larger infinity used
// only by the two-infinity counterexample semiring.
struct ExtNat {
  BigInt n = 0;
  int level = 0;

  static ExtNat finite(BigInt v) { return ExtNat{std::move(v), 0}; }
  static ExtNat infinity(int lvl = 1) { return ExtNat{0, lvl}; }
  bool is_finite() const { return level == 0; }
  bool is_zero() const { return level == 0 && n == 0; }
  friend bool operator==(const ExtNat& a, const ExtNat& b) {
    return a.level == b.level && (a.level != 0 || a.n == b.n);
  }
  friend bool operator<(const ExtNat& a, const ExtNat& b) {
    if (a.level != b.level) return a.level < b.level;
    return a.level == 0 && a.n < b.n;
  }
};

// Non-negative rational cost extended with +infinity (tropical carrier).
struct Cost {
  BigRat v = 0;
  bool inf = false;

  friend bool operator==(const Cost& a, const Cost& b) {
    return a.inf == b.inf && (a.inf || a.v == b.v);
  }
  friend bool operator<(const Cost& a, const Cost& b) {
    if (a.inf != b.inf) return b.inf;
    return !a.inf && a.v < b.v;
  }
};

// Sorted (variable, exponent) pairs, exponents >= 1.
using Monomial = std::vector<std::pair<std::string, unsigned>>;

unsigned degree(const Monomial& m);
Monomial mono_mul(const Monomial& a, const Monomial& b);
Monomial mono_var(const std::string& v);
// True iff `a` comes before `b` in graded-lex print order (higher degree
// first, then lexicographic on exponent vectors).
bool graded_lex_before(const Monomial& a, const Monomial& b);
// True iff every exponent of `d` is <= the one in `m`.
bool mono_divides(const Monomial& d, const Monomial& m);
Monomial mono_div(const Monomial& m, const Monomial& d);
std::string mono_to_string(const Monomial& m);

struct Coef {
  BigInt n = 0;
  bool inf = false;

  bool is_zero() const { return !inf && n == 0; }
  friend bool operator==(const Coef& a, const Coef& b) {
    return a.inf == b.inf && (a.inf || a.n == b.n);
  }
  friend bool operator<(const Coef& a, const Coef& b) {
    if (a.inf != b.inf) return b.inf;
    return !a.inf && a.n < b.n;
  }
};
Coef coef_add(const Coef& a, const Coef& b);
Coef coef_mul(const Coef& a, const Coef& b);

struct Poly {
  std::map<Monomial, Coef> terms;  // never stores zero coefficients

  bool is_zero() const { return terms.empty(); }
  static Poly constant(BigInt c);
  static Poly variable(const std::string& v);
  friend bool operator==(const Poly& a, const Poly& b) { return a.terms == b.terms; }
  friend bool operator<(const Poly& a, const Poly& b) { return a.terms < b.terms; }
};

// Ring parameters for polynomial arithmetic.
struct PolyRing {
  bool boolean = false;                 // coefficients in B instead of N
  bool allow_inf = false;               // infinite coefficients permitted
  std::optional<unsigned> degree_cap;   // truncation degree
};

Poly poly_add(const Poly& a, const Poly& b, const PolyRing& r);
Poly poly_mul(const Poly& a, const Poly& b, const PolyRing& r);
Poly poly_normalize(Poly p, const PolyRing& r);
// Set every non-zero coefficient to 1.
Poly poly_clamp(const Poly& p);
// Drop every monomial mentioning one of `vars` (partial evaluation at 0).
Poly poly_zero_vars(const Poly& p, const std::vector<std::string>& vars);
std::vector<std::string> poly_variables(const Poly& p);
BigInt poly_coefficient_sum(const Poly& p);  // infinite coefficients ignored
bool poly_has_inf(const Poly& p);
std::string poly_to_string(const Poly& p);

// Positive Boolean formula in absorption-reduced DNF. Each clause is a
// sorted set of variables; no clause contains another. `{}` is false and
// `{{}}` is true.
struct PosBool {
  std::vector<std::vector<std::string>> clauses;

  static PosBool falsity() { return {}; }
  static PosBool truth() { return PosBool{{{}}}; }
  static PosBool variable(const std::string& v) { return PosBool{{{v}}}; }
  friend bool operator==(const PosBool& a, const PosBool& b) { return a.clauses == b.clauses; }
  friend bool operator<(const PosBool& a, const PosBool& b) { return a.clauses < b.clauses; }
};
PosBool posbool_or(const PosBool& a, const PosBool& b);
PosBool posbool_and(const PosBool& a, const PosBool& b);
PosBool posbool_reduce(std::vector<std::vector<std::string>> clauses);
std::string posbool_to_string(const PosBool& p);

struct TableElem {
  int idx = 0;
  friend bool operator==(const TableElem& a, const TableElem& b) { return a.idx == b.idx; }
  friend bool operator<(const TableElem& a, const TableElem& b) { return a.idx < b.idx; }
};

using Value = std::variant<bool, ExtNat, Cost, PosBool, Poly, TableElem>;

// Parser shared by the polynomial and PosBool codecs: a sum of products of
// factors, each factor a number, `inf`, or a variable with optional ^exp.
struct ParsedTerm {
  Coef coef;
  Monomial mono;
};
std::vector<ParsedTerm> parse_sum_of_products(std::string_view text);

}  // namespace provlog
