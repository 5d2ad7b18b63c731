#pragma once

#include <memory>

#include "json.hpp"
#include "provlog/datalog.hpp"

namespace provlog {

struct CircuitNode {
  enum class Op { Sum, Prod, Var, Const };
  Op op = Op::Const;
  std::vector<int> children;  // indices of earlier nodes
  std::string var;
  int constant = 0;           // 0 or 1
};

// Children always have smaller indices than their parent.
struct ArithmeticCircuit {
  std::vector<CircuitNode> nodes;
  int root = 0;
};

enum class CircuitSemantics { AtDepth, MinDepth, HereditaryMinDepth };
CircuitSemantics parse_circuit_semantics(const std::string& s);  // at-depth, mdt, hmdt

// Circuits of all derived facts over one shared node pool.
struct CircuitBundle {
  std::vector<CircuitNode> nodes;
  std::map<Fact, int> roots;
  std::map<std::string, Fact> bindings;  // variable -> database fact
  int iterations = 0;
  size_t instantiations = 0;  // rule firings seen during construction

  ArithmeticCircuit circuit(const Fact& f) const;  // reachable part, re-indexed
  nlohmann::json to_json() const;
};

// The database must carry an injective single-variable annotation.
CircuitBundle build_circuits(const Program& p, const AnnotatedDatabase& adb, CircuitSemantics sem, int depth = 0);

Value evaluate_circuit(const ArithmeticCircuit& c, const Semiring& s, const std::map<std::string, Value>& nu);
Poly expand_circuit(const ArithmeticCircuit& c, unsigned degree_cap, size_t term_cap);
nlohmann::json circuit_to_json(const ArithmeticCircuit& c, const std::map<std::string, Fact>& bindings = {});

// Database annotated by fresh variables over the given provenance semiring.
AnnotatedDatabase variable_annotation(const Database& d, SemiringPtr s, const std::string& prefix = "x");
// The variable of a single-variable annotation, if it is one.
std::optional<std::string> annotation_variable(const Value& v);

}  // namespace provlog
