#include "provlog/semiring.hpp"

#include <algorithm>
#include <cctype>
#include <random>

#include "provlog/errors.hpp"

namespace provlog {

std::string to_string(Tri t) {
  switch (t) {
    case Tri::True: return "true";
    case Tri::False: return "false";
    default: return "unknown";
  }
}

std::optional<Value> Semiring::omega_sum(const Value& v) const {
  if (flags_.plus_idempotent) return v;
  auto car = carrier();
  if (!car.empty()) {
    Value s = v;
    for (size_t i = 0; i <= car.size() + 1; ++i) {
      Value n = add(s, v);
      if (n == s) return s;
      s = std::move(n);
    }
  }
  return std::nullopt;
}

Value Semiring::sum(const std::vector<Value>& vs) const {
  Value acc = zero();
  for (const auto& v : vs) acc = add(acc, v);
  return acc;
}

Value Semiring::product(const std::vector<Value>& vs) const {
  Value acc = one();
  for (const auto& v : vs) acc = mul(acc, v);
  return acc;
}

Value Semiring::scale(const BigInt& n, const Value& v) const {
  Value result = zero();
  Value base = v;
  BigInt k = n;
  while (k > 0) {
    if ((k & 1) != 0) result = add(result, base);
    k >>= 1;
    if (k > 0) base = add(base, base);
  }
  return result;
}

namespace {

std::string trim(std::string_view s) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

bool all_digits(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(),
                                   [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

class BoolSemiring final : public Semiring {
 public:
  BoolSemiring() {
    flags_ = Flags{true, true, true, true, true, true, true};
  }
  std::string id() const override { return "bool"; }
  Value zero() const override { return false; }
  Value one() const override { return true; }
  Value add(const Value& a, const Value& b) const override {
    return std::get<bool>(a) || std::get<bool>(b);
  }
  Value mul(const Value& a, const Value& b) const override {
    return std::get<bool>(a) && std::get<bool>(b);
  }
  std::string print(const Value& v) const override { return std::get<bool>(v) ? "true" : "false"; }
  Value parse(std::string_view text) const override {
    std::string t = trim(text);
    if (t == "true" || t == "1") return true;
    if (t == "false" || t == "0") return false;
    throw ValueParseError("not a Boolean value: '" + t + "'");
  }
  Tri leq(const Value& a, const Value& b) const override {
    return (!std::get<bool>(a) || std::get<bool>(b)) ? Tri::True : Tri::False;
  }
  std::optional<Value> join(const Value& a, const Value& b) const override { return add(a, b); }
  std::vector<Value> carrier() const override { return {false, true}; }
  std::vector<Value> samples(std::uint64_t, size_t) const override { return carrier(); }
};

// nat (kind 0), nat-inf (kind 1), nat-inf2 (kind 2).
class NatSemiring final : public Semiring {
 public:
  explicit NatSemiring(int kind) : kind_(kind) {
    flags_.positive = true;
    flags_.has_finite_joins = true;
    flags_.has_glb = true;
    flags_.omega_continuous = kind >= 1;
  }
  std::string id() const override {
    return kind_ == 0 ? "nat" : kind_ == 1 ? "nat-inf" : "nat-inf2";
  }
  Value zero() const override { return ExtNat::finite(0); }
  Value one() const override { return ExtNat::finite(1); }
  Value add(const Value& a, const Value& b) const override {
    const auto& x = std::get<ExtNat>(a);
    const auto& y = std::get<ExtNat>(b);
    if (x.level || y.level) return ExtNat::infinity(std::max(x.level, y.level));
    return ExtNat::finite(x.n + y.n);
  }
  Value mul(const Value& a, const Value& b) const override {
    const auto& x = std::get<ExtNat>(a);
    const auto& y = std::get<ExtNat>(b);
    if (x.is_zero() || y.is_zero()) return ExtNat::finite(0);
    if (x.level || y.level) return ExtNat::infinity(std::max(x.level, y.level));
    return ExtNat::finite(x.n * y.n);
  }
  std::string print(const Value& v) const override {
    const auto& x = std::get<ExtNat>(v);
    if (x.level == 1) return "inf";
    if (x.level == 2) return "inf'";
    return x.n.str();
  }
  Value parse(std::string_view text) const override {
    std::string t = trim(text);
    if (kind_ >= 1 && (t == "inf" || t == "∞")) return ExtNat::infinity(1);
    if (kind_ == 2 && (t == "inf'" || t == "∞'")) return ExtNat::infinity(2);
    if (!all_digits(t)) throw ValueParseError("not a " + id() + " value: '" + t + "'");
    return ExtNat::finite(BigInt(t));
  }
  Tri leq(const Value& a, const Value& b) const override {
    return std::get<ExtNat>(b) < std::get<ExtNat>(a) ? Tri::False : Tri::True;
  }
  std::optional<Value> join(const Value& a, const Value& b) const override {
    return std::get<ExtNat>(a) < std::get<ExtNat>(b) ? b : a;
  }
  std::optional<Value> omega_sum(const Value& v) const override {
    const auto& x = std::get<ExtNat>(v);
    if (x.is_zero()) return v;
    if (kind_ == 0) return std::nullopt;
    return ExtNat::infinity(std::max(1, x.level));
  }
  std::vector<Value> samples(std::uint64_t seed, size_t n) const override {
    std::vector<Value> out;
    for (int i = 0; i <= 3; ++i) out.push_back(ExtNat::finite(i));
    if (kind_ >= 1) out.push_back(ExtNat::infinity(1));
    if (kind_ == 2) out.push_back(ExtNat::infinity(2));
    std::mt19937_64 rng(seed);
    while (out.size() < n) out.push_back(ExtNat::finite(static_cast<unsigned>(rng() % 50)));
    return out;
  }

 private:
  int kind_;
};

class TropicalSemiring final : public Semiring {
 public:
  TropicalSemiring() {
    flags_.plus_idempotent = true;
    flags_.absorptive = true;
    flags_.positive = true;
    flags_.omega_continuous = true;
    flags_.has_finite_joins = true;
    flags_.has_glb = true;
  }
  std::string id() const override { return "tropical"; }
  Value zero() const override { return Cost{0, true}; }
  Value one() const override { return Cost{0, false}; }
  Value add(const Value& a, const Value& b) const override {
    const auto& x = std::get<Cost>(a);
    const auto& y = std::get<Cost>(b);
    return y < x ? y : x;
  }
  Value mul(const Value& a, const Value& b) const override {
    const auto& x = std::get<Cost>(a);
    const auto& y = std::get<Cost>(b);
    if (x.inf || y.inf) return Cost{0, true};
    return Cost{x.v + y.v, false};
  }
  std::string print(const Value& v) const override {
    const auto& x = std::get<Cost>(v);
    if (x.inf) return "inf";
    if (boost::multiprecision::denominator(x.v) == 1)
      return boost::multiprecision::numerator(x.v).str();
    return boost::multiprecision::numerator(x.v).str() + "/" +
           boost::multiprecision::denominator(x.v).str();
  }
  Value parse(std::string_view text) const override {
    std::string t = trim(text);
    if (t == "inf" || t == "∞") return Cost{0, true};
    auto slash = t.find('/');
    auto dot = t.find('.');
    if (slash != std::string::npos) {
      std::string p = t.substr(0, slash), q = t.substr(slash + 1);
      if (!all_digits(p) || !all_digits(q) || BigInt(q) == 0)
        throw ValueParseError("not a tropical value: '" + t + "'");
      return Cost{BigRat(BigInt(p), BigInt(q)), false};
    }
    if (dot != std::string::npos) {
      std::string ip = t.substr(0, dot), fp = t.substr(dot + 1);
      if (ip.empty()) ip = "0";
      if (!all_digits(ip) || !all_digits(fp))
        throw ValueParseError("not a tropical value: '" + t + "'");
      BigInt den = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(fp.size()));
      return Cost{BigRat(BigInt(ip + fp), den), false};
    }
    if (!all_digits(t)) throw ValueParseError("not a tropical value: '" + t + "'");
    return Cost{BigRat(BigInt(t)), false};
  }
  Tri leq(const Value& a, const Value& b) const override {
    // a <= b in the natural order iff b is numerically at most a.
    return std::get<Cost>(a) < std::get<Cost>(b) ? Tri::False : Tri::True;
  }
  std::optional<Value> join(const Value& a, const Value& b) const override { return add(a, b); }
  std::vector<Value> samples(std::uint64_t seed, size_t n) const override {
    std::vector<Value> out{Cost{0, true}, Cost{0, false}, Cost{1, false}, Cost{2, false},
                           Cost{BigRat(1, 2), false}};
    std::mt19937_64 rng(seed);
    while (out.size() < n)
      out.push_back(Cost{BigRat(static_cast<int>(rng() % 40), 1 + static_cast<int>(rng() % 4)), false});
    return out;
  }
};

// Sets of variable sets with union and pairwise union, no absorption.
PosBool why_normalize(std::vector<std::vector<std::string>> cls) {
  for (auto& c : cls) {
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
  }
  std::sort(cls.begin(), cls.end());
  cls.erase(std::unique(cls.begin(), cls.end()), cls.end());
  return PosBool{std::move(cls)};
}

// PosBool(X) when `absorb`, otherwise the why-provenance semiring.
class PosBoolSemiring final : public Semiring {
 public:
  explicit PosBoolSemiring(bool absorb) : absorb_(absorb) {
    flags_ = Flags{true, true, absorb, true, true, true, true};
  }
  std::string id() const override { return absorb_ ? "posbool-free" : "why"; }
  Value zero() const override { return PosBool::falsity(); }
  Value one() const override { return PosBool::truth(); }
  Value add(const Value& a, const Value& b) const override {
    if (absorb_) return posbool_or(std::get<PosBool>(a), std::get<PosBool>(b));
    auto cls = std::get<PosBool>(a).clauses;
    for (const auto& c : std::get<PosBool>(b).clauses) cls.push_back(c);
    return why_normalize(std::move(cls));
  }
  Value mul(const Value& a, const Value& b) const override {
    if (absorb_) return posbool_and(std::get<PosBool>(a), std::get<PosBool>(b));
    std::vector<std::vector<std::string>> cls;
    for (const auto& x : std::get<PosBool>(a).clauses)
      for (const auto& y : std::get<PosBool>(b).clauses) {
        auto c = x;
        c.insert(c.end(), y.begin(), y.end());
        cls.push_back(std::move(c));
      }
    return why_normalize(std::move(cls));
  }
  std::string print(const Value& v) const override { return posbool_to_string(std::get<PosBool>(v)); }
  Value parse(std::string_view text) const override {
    std::string t = trim(text);
    if (t == "true") return one();
    if (t == "false") return zero();
    std::vector<std::vector<std::string>> cls;
    for (const auto& term : parse_sum_of_products(t)) {
      if (term.coef.inf) throw ValueParseError("infinite coefficient in PosBool value");
      if (term.coef.n == 0) continue;
      std::vector<std::string> c;
      for (const auto& [v, e] : term.mono) c.push_back(v);
      cls.push_back(std::move(c));
    }
    return absorb_ ? posbool_reduce(std::move(cls)) : why_normalize(std::move(cls));
  }
  Tri leq(const Value& a, const Value& b) const override {
    return add(a, b) == b ? Tri::True : Tri::False;
  }
  std::optional<Value> join(const Value& a, const Value& b) const override { return add(a, b); }
  std::optional<Value> variable(const std::string& name) const override {
    return PosBool::variable(name);
  }
  std::vector<Value> samples(std::uint64_t seed, size_t n) const override {
    std::vector<Value> out{zero(), one(), PosBool::variable("x"), PosBool::variable("y"),
                           parse("x*y"), parse("x + y"), parse("x + y*z")};
    std::mt19937_64 rng(seed);
    const char* vars[] = {"x", "y", "z", "w"};
    while (out.size() < n) {
      std::vector<std::vector<std::string>> cls;
      int k = 1 + static_cast<int>(rng() % 3);
      for (int i = 0; i < k; ++i) {
        std::vector<std::string> c;
        for (const char* v : vars)
          if (rng() % 2) c.push_back(v);
        cls.push_back(c);
      }
      out.push_back(absorb_ ? posbool_reduce(cls) : why_normalize(cls));
    }
    return out;
  }

 private:
  bool absorb_;
};

class PolySemiring final : public Semiring {
 public:
  PolySemiring(std::string id, PolyRing ring) : id_(std::move(id)), ring_(ring) {
    flags_.has_finite_joins = true;
    flags_.has_glb = true;
    flags_.plus_idempotent = ring.boolean;
    flags_.omega_continuous = ring.allow_inf;
    // Truncation introduces zero divisors.
    flags_.positive = !ring.degree_cap.has_value();
  }
  std::string id() const override { return id_; }
  Value zero() const override { return Poly{}; }
  Value one() const override { return Poly::constant(1); }
  Value add(const Value& a, const Value& b) const override {
    return poly_add(std::get<Poly>(a), std::get<Poly>(b), ring_);
  }
  Value mul(const Value& a, const Value& b) const override {
    return poly_mul(std::get<Poly>(a), std::get<Poly>(b), ring_);
  }
  std::string print(const Value& v) const override { return poly_to_string(std::get<Poly>(v)); }
  Value parse(std::string_view text) const override {
    Poly p;
    for (auto& term : parse_sum_of_products(text)) {
      if (term.coef.inf && !ring_.allow_inf)
        throw ValueParseError("infinite coefficient not allowed in " + id_);
      auto [it, ins] = p.terms.emplace(term.mono, term.coef);
      if (!ins) it->second = coef_add(it->second, term.coef);
    }
    return poly_normalize(std::move(p), ring_);
  }
  Tri leq(const Value& a, const Value& b) const override {
    const auto& pa = std::get<Poly>(a);
    const auto& pb = std::get<Poly>(b);
    for (const auto& [m, c] : pa.terms) {
      auto it = pb.terms.find(m);
      if (it == pb.terms.end() || it->second < c) return Tri::False;
    }
    return Tri::True;
  }
  std::optional<Value> join(const Value& a, const Value& b) const override {
    Poly out = std::get<Poly>(a);
    for (const auto& [m, c] : std::get<Poly>(b).terms) {
      auto [it, ins] = out.terms.emplace(m, c);
      if (!ins && it->second < c) it->second = c;
    }
    return out;
  }
  std::optional<Value> omega_sum(const Value& v) const override {
    if (ring_.boolean) return v;
    if (!ring_.allow_inf) {
      if (std::get<Poly>(v).is_zero()) return v;
      return std::nullopt;
    }
    Poly out = std::get<Poly>(v);
    for (auto& [m, c] : out.terms) c = Coef{0, true};
    return out;
  }
  const PolyRing* poly_ring() const override { return &ring_; }
  std::optional<Value> variable(const std::string& name) const override {
    return poly_normalize(Poly::variable(name), ring_);
  }
  std::vector<Value> samples(std::uint64_t seed, size_t n) const override {
    std::vector<Value> out{zero(), one(), parse("x"), parse("y"), parse("x + y"),
                           parse("x*y"), parse("2*x + 1")};
    if (ring_.allow_inf) out.push_back(parse("inf*x"));
    std::mt19937_64 rng(seed);
    const char* vars[] = {"x", "y", "z"};
    while (out.size() < n) {
      Poly p;
      int k = 1 + static_cast<int>(rng() % 3);
      for (int i = 0; i < k; ++i) {
        Monomial m;
        for (const char* v : vars) {
          unsigned e = static_cast<unsigned>(rng() % 3);
          if (e) m.emplace_back(v, e);
        }
        p.terms[m] = Coef{1 + static_cast<int>(rng() % 3), false};
      }
      out.push_back(poly_normalize(p, ring_));
    }
    for (auto& v : out) v = poly_normalize(std::get<Poly>(v), ring_);
    return out;
  }

 private:
  std::string id_;
  PolyRing ring_;
};

}  // namespace

SemiringPtr make_semiring(const std::string& id) {
  if (id == "bool") return std::make_shared<BoolSemiring>();
  if (id == "nat") return std::make_shared<NatSemiring>(0);
  if (id == "nat-inf") return std::make_shared<NatSemiring>(1);
  if (id == "nat-inf2") return std::make_shared<NatSemiring>(2);
  if (id == "tropical") return std::make_shared<TropicalSemiring>();
  if (id == "posbool-free") return std::make_shared<PosBoolSemiring>(true);
  if (id == "why") return std::make_shared<PosBoolSemiring>(false);
  if (id == "poly-nat") return std::make_shared<PolySemiring>(id, PolyRing{false, false, std::nullopt});
  if (id == "poly-bool") return std::make_shared<PolySemiring>(id, PolyRing{true, false, std::nullopt});
  if (id == "series") return std::make_shared<PolySemiring>(id, PolyRing{false, true, std::nullopt});
  const std::string trunc = "series-trunc:";
  if (id.rfind(trunc, 0) == 0) {
    std::string d = id.substr(trunc.size());
    if (!all_digits(d)) throw UnsupportedSemiring("bad truncation degree in '" + id + "'");
    return std::make_shared<PolySemiring>(id, PolyRing{false, true, static_cast<unsigned>(std::stoul(d))});
  }
  const std::string table = "table:";
  if (id.rfind(table, 0) == 0) return load_table_semiring_file(id.substr(table.size()));
  throw UnsupportedSemiring("unknown semiring id '" + id + "'");
}

Tri natural_order_leq(const Semiring& s, const Value& a, const Value& b) {
  auto car = s.carrier();
  if (!car.empty()) {
    for (const auto& c : car)
      if (s.add(a, c) == b) return Tri::True;
    return Tri::False;
  }
  return s.leq(a, b);
}

Value eval_valuation(const Poly& p, const Semiring& target,
                     const std::map<std::string, Value>& nu) {
  Value total = target.zero();
  for (const auto& [m, c] : p.terms) {
    Value prod = target.one();
    for (const auto& [v, e] : m) {
      auto it = nu.find(v);
      if (it == nu.end()) throw UnboundVariable("variable '" + v + "' has no image");
      for (unsigned k = 0; k < e; ++k) prod = target.mul(prod, it->second);
    }
    Value term;
    if (c.inf) {
      if (!target.flags().omega_continuous)
        throw InfiniteCoefficientInNonContinuousTarget(
            "infinite coefficient cannot be mapped into " + target.id());
      auto s = target.omega_sum(prod);
      if (!s)
        throw InfiniteCoefficientInNonContinuousTarget("no infinite sum available in " + target.id());
      term = *s;
    } else {
      term = target.scale(c.n, prod);
    }
    total = target.add(total, term);
  }
  return total;
}

}  // namespace provlog
