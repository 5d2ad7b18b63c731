#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include "json.hpp"
#include <optional>
#include <string>
#include <vector>

#include "provlog/value.hpp"

namespace provlog {

struct Flags {
  bool plus_idempotent = false;
  bool times_idempotent = false;
  bool absorptive = false;
  bool positive = false;
  bool omega_continuous = false;
  bool has_finite_joins = false;
  bool has_glb = false;
};

enum class Tri { False, True, Unknown };
std::string to_string(Tri t);

class Semiring {
 public:
  virtual ~Semiring() = default;

  virtual std::string id() const = 0;
  virtual Value zero() const = 0;
  virtual Value one() const = 0;
  virtual Value add(const Value& a, const Value& b) const = 0;
  virtual Value mul(const Value& a, const Value& b) const = 0;
  virtual std::string print(const Value& v) const = 0;
  virtual Value parse(std::string_view text) const = 0;

  // Natural order a <= b, three-valued.
  virtual Tri leq(const Value&, const Value&) const { return Tri::Unknown; }
  // Least upper bound under the natural order, when an oracle exists.
  virtual std::optional<Value> join(const Value&, const Value&) const { return std::nullopt; }
  // Supremum of v, v+v, v+v+v, ... (infinite repeated sum).
  virtual std::optional<Value> omega_sum(const Value& v) const;
  // Whole carrier when finite, else empty.
  virtual std::vector<Value> carrier() const { return {}; }
  // Deterministic sample pool for randomized law checks; small elements first.
  virtual std::vector<Value> samples(std::uint64_t seed, size_t n) const = 0;
  // Polynomial ring parameters when this is a polynomial semiring.
  virtual const PolyRing* poly_ring() const { return nullptr; }
  // Build the value standing for variable `name` (provenance semirings only).
  virtual std::optional<Value> variable(const std::string&) const { return std::nullopt; }

  const Flags& flags() const { return flags_; }
  bool is_zero(const Value& v) const { return v == zero(); }
  bool finite() const { return !carrier().empty(); }
  Value sum(const std::vector<Value>& vs) const;
  Value product(const std::vector<Value>& vs) const;
  // n-fold repeated sum of v.
  Value scale(const BigInt& n, const Value& v) const;

 protected:
  Flags flags_;
};

using SemiringPtr = std::shared_ptr<const Semiring>;

// Built-in ids: bool, nat, nat-inf, nat-inf2, tropical, posbool-free, why,
// poly-nat, poly-bool, series, series-trunc:<deg>, table:<path>.
SemiringPtr make_semiring(const std::string& id);

SemiringPtr load_table_semiring(const nlohmann::json& spec, const std::string& name = "table");
SemiringPtr load_table_semiring_file(const std::string& path);

Tri natural_order_leq(const Semiring& s, const Value& a, const Value& b);

struct LawViolation {
  std::string law;
  std::vector<std::string> witness;  // printed elements a, b, c as relevant
};

struct ValidationReport {
  bool exhaustive = false;
  size_t checked = 0;
  std::vector<LawViolation> violations;   // axiom failures
  Flags observed;                          // flags as measured
  std::vector<LawViolation> flag_refutations;  // witnesses for false flags
  std::optional<std::pair<std::string, std::string>> glb_witness;  // pair without glb
  bool ok() const { return violations.empty(); }
};

ValidationReport validate_semiring(const Semiring& s, size_t sample_budget, std::uint64_t seed = 1);

// Homomorphic image of a polynomial under the valuation nu.
Value eval_valuation(const Poly& p, const Semiring& target,
                     const std::map<std::string, Value>& nu);

}  // namespace provlog
