#include <fstream>
#include <sstream>

#include "provlog/errors.hpp"
#include "provlog/semiring.hpp"

namespace provlog {

namespace {

class TableSemiring final : public Semiring {
 public:
  TableSemiring(std::string name, std::vector<std::string> names, std::vector<std::vector<int>> add,
                std::vector<std::vector<int>> mul, int zero, int one)
      : name_(std::move(name)),
        names_(std::move(names)),
        add_(std::move(add)),
        mul_(std::move(mul)),
        zero_(zero),
        one_(one) {
    const size_t n = names_.size();
    leq_.assign(n, std::vector<bool>(n, false));
    for (size_t a = 0; a < n; ++a)
      for (size_t c = 0; c < n; ++c) leq_[a][add_[a][c]] = true;
  }

  void set_flags(const Flags& f) { flags_ = f; }

  std::string id() const override { return name_; }
  Value zero() const override { return TableElem{zero_}; }
  Value one() const override { return TableElem{one_}; }
  Value add(const Value& a, const Value& b) const override {
    return TableElem{add_[std::get<TableElem>(a).idx][std::get<TableElem>(b).idx]};
  }
  Value mul(const Value& a, const Value& b) const override {
    return TableElem{mul_[std::get<TableElem>(a).idx][std::get<TableElem>(b).idx]};
  }
  std::string print(const Value& v) const override { return names_.at(std::get<TableElem>(v).idx); }
  Value parse(std::string_view text) const override {
    std::string t(text);
    while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back()))) t.pop_back();
    while (!t.empty() && std::isspace(static_cast<unsigned char>(t.front()))) t.erase(t.begin());
    for (size_t i = 0; i < names_.size(); ++i)
      if (names_[i] == t) return TableElem{static_cast<int>(i)};
    if (t == "inf")
      for (size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == "∞") return TableElem{static_cast<int>(i)};
    throw ValueParseError("'" + t + "' is not in the carrier of " + name_);
  }
  Tri leq(const Value& a, const Value& b) const override {
    return leq_[std::get<TableElem>(a).idx][std::get<TableElem>(b).idx] ? Tri::True : Tri::False;
  }
  std::optional<Value> join(const Value& a, const Value& b) const override {
    const int i = std::get<TableElem>(a).idx, j = std::get<TableElem>(b).idx;
    const int n = static_cast<int>(names_.size());
    std::vector<int> ub;
    for (int k = 0; k < n; ++k)
      if (leq_[i][k] && leq_[j][k]) ub.push_back(k);
    for (int k : ub) {
      bool least = true;
      for (int o : ub)
        if (!leq_[k][o]) least = false;
      if (least) return TableElem{k};
    }
    return std::nullopt;
  }
  std::vector<Value> carrier() const override {
    std::vector<Value> out;
    for (size_t i = 0; i < names_.size(); ++i) out.push_back(TableElem{static_cast<int>(i)});
    return out;
  }
  std::vector<Value> samples(std::uint64_t, size_t) const override { return carrier(); }

 private:
  std::string name_;
  std::vector<std::string> names_;
  std::vector<std::vector<int>> add_, mul_;
  int zero_, one_;
  std::vector<std::vector<bool>> leq_;
};

std::string json_symbol(const nlohmann::json& j, const std::string& what) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  throw MalformedSpec(what + " must be a string");
}

}  // namespace

SemiringPtr load_table_semiring(const nlohmann::json& spec, const std::string& name) {
  if (!spec.is_object()) throw MalformedSpec("table semiring spec must be an object");
  for (const char* key : {"carrier", "zero", "one", "add", "mul"})
    if (!spec.contains(key)) throw MalformedSpec(std::string("missing field '") + key + "'");
  if (!spec["carrier"].is_array() || spec["carrier"].empty())
    throw MalformedSpec("carrier must be a non-empty array");
  std::vector<std::string> names;
  std::map<std::string, int> index;
  for (const auto& e : spec["carrier"]) {
    std::string s = json_symbol(e, "carrier element");
    if (index.count(s)) throw MalformedSpec("duplicate carrier element '" + s + "'");
    index[s] = static_cast<int>(names.size());
    names.push_back(s);
  }
  auto lookup = [&](const std::string& s, const std::string& ctx) {
    auto it = index.find(s);
    if (it == index.end()) throw MalformedSpec(ctx + ": '" + s + "' is not in the carrier");
    return it->second;
  };
  const int zero = lookup(json_symbol(spec["zero"], "zero"), "zero");
  const int one = lookup(json_symbol(spec["one"], "one"), "one");

  auto default_for = [&](const std::string& op) -> std::optional<int> {
    if (!spec.contains("default")) return std::nullopt;
    const auto& d = spec["default"];
    if (d.is_object()) {
      if (!d.contains(op)) return std::nullopt;
      return lookup(json_symbol(d[op], "default"), "default");
    }
    return lookup(json_symbol(d, "default"), "default");
  };

  const int n = static_cast<int>(names.size());
  auto build = [&](const std::string& op) {
    const auto& tab = spec[op];
    if (!tab.is_object()) throw MalformedSpec(op + " must be an object of \"a,b\": c cells");
    std::vector<std::vector<int>> t(n, std::vector<int>(n, -1));
    for (auto it = tab.begin(); it != tab.end(); ++it) {
      const std::string& key = it.key();
      auto comma = key.find(',');
      if (comma == std::string::npos) throw MalformedSpec(op + " key '" + key + "' is not 'a,b'");
      auto strip = [](std::string s) {
        while (!s.empty() && s.front() == ' ') s.erase(s.begin());
        while (!s.empty() && s.back() == ' ') s.pop_back();
        return s;
      };
      int a = lookup(strip(key.substr(0, comma)), op);
      int b = lookup(strip(key.substr(comma + 1)), op);
      t[a][b] = lookup(json_symbol(it.value(), op + " cell"), op);
    }
    auto dflt = default_for(op);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        if (t[a][b] >= 0) continue;
        if (t[b][a] >= 0) {
          t[a][b] = t[b][a];
        } else if (op == "add" && (a == zero || b == zero)) {
          t[a][b] = (a == zero) ? b : a;
        } else if (op == "mul" && (a == zero || b == zero)) {
          t[a][b] = zero;
        } else if (op == "mul" && (a == one || b == one)) {
          t[a][b] = (a == one) ? b : a;
        } else if (dflt) {
          t[a][b] = *dflt;
        } else {
          throw MalformedSpec(op + " cell (" + names[a] + "," + names[b] +
                              ") is missing and no default is given");
        }
      }
    return t;
  };
  auto add = build("add");
  auto mul = build("mul");

  auto sr = std::make_shared<TableSemiring>(name, names, add, mul, zero, one);
  ValidationReport rep = validate_semiring(*sr, 0);
  if (!rep.violations.empty()) {
    const auto& v = rep.violations.front();
    std::string wit;
    for (const auto& w : v.witness) wit += (wit.empty() ? "" : ", ") + w;
    throw AxiomViolation(v.law + " violated at (" + wit + ")");
  }
  sr->set_flags(rep.observed);
  return sr;
}

SemiringPtr load_table_semiring_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MalformedSpec("cannot open table semiring file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw MalformedSpec(std::string("invalid JSON: ") + e.what());
  }
  return load_table_semiring(j, "table:" + path);
}

}  // namespace provlog
