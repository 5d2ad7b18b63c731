#include "provlog/harness.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <sstream>

#include "builtin_tables.hpp"
#include "provlog/circuits.hpp"
#include "provlog/errors.hpp"
#include "provlog/exec.hpp"
#include "provlog/model.hpp"
#include "provlog/trees.hpp"

namespace provlog {

// ---------------------------------------------------------------- ids

const std::vector<SemanticsId>& all_semantics() {
  static const std::vector<SemanticsId> v{SemanticsId::AT,   SemanticsId::NRT, SemanticsId::MDT,
                                          SemanticsId::HMDT, SemanticsId::AM,  SemanticsId::SAM};
  return v;
}

const std::vector<PropertyId>& all_properties() {
  static const std::vector<PropertyId> v{
      PropertyId::AlgebraConsistency, PropertyId::BooleanCompat,    PropertyId::HomCommutation,
      PropertyId::OmegaHomCommutation, PropertyId::AnySemiring,     PropertyId::AnyOmegaSemiring,
      PropertyId::JointAltUse,        PropertyId::JointUse,         PropertyId::AltUse,
      PropertyId::Self,               PropertyId::Parsimony,        PropertyId::NecessaryFacts,
      PropertyId::NonUsableFacts,     PropertyId::Insertion,        PropertyId::Deletion};
  return v;
}

std::string to_string(SemanticsId s) {
  static const char* names[] = {"at", "nrt", "mdt", "hmdt", "am", "sam"};
  return names[static_cast<int>(s)];
}

namespace {
struct PropertyName {
  const char* id;
  const char* title;
};
const PropertyName kPropertyNames[] = {
    {"algebra-consistency", "Algebra Consistency"},
    {"boolean-compat", "Boolean Compatibility"},
    {"hom-commutation", "Commutation with Homomorphisms"},
    {"omega-hom-commutation", "Commutation with omega-cont. Hom."},
    {"any-semiring", "Any Semiring"},
    {"any-omega-semiring", "Any omega-cont. Semiring"},
    {"joint-alt-use", "Joint and Alternative Use"},
    {"joint-use", "Joint Use"},
    {"alt-use", "Alternative Use"},
    {"self", "Self"},
    {"parsimony", "Parsimony"},
    {"necessary-facts", "Necessary Facts"},
    {"non-usable-facts", "Non-Usable Facts"},
    {"insertion", "Insertion"},
    {"deletion", "Deletion"},
};
}  // namespace

std::string to_string(PropertyId p) { return kPropertyNames[static_cast<int>(p)].id; }
std::string property_title(PropertyId p) { return kPropertyNames[static_cast<int>(p)].title; }

SemanticsId parse_semantics(const std::string& s) {
  for (auto x : all_semantics())
    if (to_string(x) == s) return x;
  throw Error("UsageError", "unknown semantics '" + s + "'");
}

PropertyId parse_property(const std::string& s) {
  for (auto x : all_properties())
    if (to_string(x) == s) return x;
  throw Error("UsageError", "unknown property '" + s + "'");
}

bool expected_to_hold(PropertyId p, SemanticsId s) {
  // Columns: at nrt mdt hmdt am sam.
  static const std::map<PropertyId, std::array<bool, 6>> table{
      {PropertyId::AlgebraConsistency, {1, 1, 1, 1, 0, 0}},
      {PropertyId::BooleanCompat, {1, 1, 0, 0, 1, 1}},
      {PropertyId::HomCommutation, {0, 1, 1, 1, 0, 0}},
      {PropertyId::OmegaHomCommutation, {1, 1, 1, 1, 0, 0}},
      {PropertyId::AnySemiring, {0, 1, 1, 1, 0, 0}},
      {PropertyId::AnyOmegaSemiring, {1, 1, 1, 1, 0, 1}},
      {PropertyId::JointAltUse, {1, 1, 0, 0, 0, 0}},
      {PropertyId::JointUse, {1, 1, 0, 1, 1, 0}},
      {PropertyId::AltUse, {1, 1, 0, 0, 0, 0}},
      {PropertyId::Self, {1, 1, 1, 1, 1, 1}},
      {PropertyId::Parsimony, {1, 1, 1, 1, 1, 1}},
      {PropertyId::NecessaryFacts, {1, 1, 1, 1, 0, 1}},
      {PropertyId::NonUsableFacts, {1, 1, 1, 1, 1, 1}},
      {PropertyId::Insertion, {1, 1, 0, 0, 0, 0}},
      {PropertyId::Deletion, {1, 1, 0, 0, 1, 1}},
  };
  return table.at(p)[static_cast<int>(s)];
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Satisfied: return "satisfied";
    case Verdict::Violated: return "violated";
    default: return "inapplicable";
  }
}

// ---------------------------------------------------------------- evaluation

Value evaluate(SemanticsId sem, const Program& p, const AnnotatedDatabase& adb, const Fact& target,
               const Caps& caps) {
  switch (sem) {
    case SemanticsId::AT: return at_eval(p, adb, target, caps.iter, caps.series);
    case SemanticsId::NRT: return nrt_eval(p, adb, target);
    case SemanticsId::MDT: return optimized_eval(p, adb, target, caps.iter);
    case SemanticsId::HMDT: return seminaive_eval(p, adb).value(target);
    case SemanticsId::AM:
    case SemanticsId::SAM: {
      ModelOptions o;
      o.cap = caps.iter;
      o.delegate = false;
      o.set_cap = caps.sam;
      return sem == SemanticsId::AM ? am_provenance(p, adb, target, o) : sam_provenance(p, adb, target, o);
    }
  }
  throw Error("UsageError", "bad semantics");
}

namespace {

std::string fmt(const Semiring& s, const Value& v) { return s.print(v); }

std::set<std::string> predicates_of(const Program& p, const Database& d) {
  std::set<std::string> out;
  for (const auto& r : p.rules) {
    out.insert(r.head.pred);
    for (const auto& a : r.body) out.insert(a.pred);
  }
  for (const auto& f : d) out.insert(f.pred);
  return out;
}

std::string fresh_goal(const Program& p, const Database& d) {
  auto used = predicates_of(p, d);
  std::string g = "goal";
  while (used.count(g)) g += "_";
  return g;
}

std::vector<std::string> variables_of(const AnnotatedDatabase& adb, const std::vector<Fact>& facts) {
  std::vector<std::string> out;
  for (const auto& f : facts) {
    auto it = adb.lambda.find(f);
    if (it == adb.lambda.end()) throw InapplicableSemiring("deleted fact " + to_string(f) + " is not in the database");
    auto v = annotation_variable(it->second);
    if (!v) throw InapplicableSemiring("deletion needs single-variable annotations");
    out.push_back(*v);
  }
  return out;
}

AnnotatedDatabase restrict(const AnnotatedDatabase& adb, const std::set<Fact>& drop) {
  AnnotatedDatabase out{adb.semiring, {}};
  for (const auto& [f, v] : adb.lambda)
    if (!drop.count(f)) out.lambda.emplace(f, v);
  return out;
}

// Does some e satisfy v = m * e?
Tri has_factor(const Semiring& s, const Value& m, const Value& v) {
  auto vals = s.carrier();
  if (!vals.empty()) {
    for (const auto& e : vals)
      if (s.mul(m, e) == v) return Tri::True;
    return Tri::False;
  }
  if (s.is_zero(v)) return Tri::True;
  if (const auto* pm = std::get_if<Poly>(&m)) {
    const auto& pv = std::get<Poly>(v);
    if (pm->terms.size() != 1) return Tri::Unknown;
    const auto& [mono, c] = *pm->terms.begin();
    if (c.inf || c.n != 1) return Tri::Unknown;
    for (const auto& [t, _] : pv.terms)
      if (!mono_divides(mono, t)) return Tri::False;
    return Tri::True;
  }
  if (const auto* em = std::get_if<ExtNat>(&m)) {
    const auto& ev = std::get<ExtNat>(v);
    if (!em->is_finite() || em->is_zero()) return Tri::Unknown;
    if (!ev.is_finite()) return Tri::True;
    return ev.n % em->n == 0 ? Tri::True : Tri::False;
  }
  if (const auto* bm = std::get_if<PosBool>(&m)) {
    const auto& bv = std::get<PosBool>(v);
    if (bm->clauses.size() != 1) return Tri::Unknown;
    const auto& need = bm->clauses[0];
    for (const auto& c : bv.clauses)
      if (!std::includes(c.begin(), c.end(), need.begin(), need.end())) return Tri::False;
    return Tri::True;
  }
  return Tri::Unknown;
}

Value apply_hom_value(const PropertyInstance& inst, const Value& v) {
  if (inst.hom == "inf-to-inf2") {
    const auto& e = std::get<ExtNat>(v);
    return e.is_finite() ? Value(e) : Value(ExtNat::infinity(2));
  }
  if (inst.hom == "valuation") {
    if (!inst.image) throw InapplicableSemiring("homomorphism without a target semiring");
    const auto* p = std::get_if<Poly>(&v);
    if (!p) throw InapplicableSemiring("valuation homomorphisms start from a polynomial semiring");
    return eval_valuation(*p, *inst.image, inst.valuation);
  }
  throw InapplicableSemiring("the check needs a homomorphism");
}

SemiringPtr hom_codomain(const PropertyInstance& inst) {
  if (inst.hom == "inf-to-inf2") return make_semiring("nat-inf2");
  if (!inst.image) throw InapplicableSemiring("homomorphism without a target semiring");
  return inst.image;
}

struct Outcome {
  Verdict verdict = Verdict::Satisfied;
  std::string detail;
};

Outcome violated(std::string d) { return {Verdict::Violated, std::move(d)}; }
Outcome inapplicable(std::string d) { return {Verdict::Inapplicable, std::move(d)}; }

Outcome check_algebra(SemanticsId sem, const PropertyInstance& in, const Caps& caps) {
  const Semiring& s = *in.db.semiring;
  if (in.program.rules.empty()) return inapplicable("empty program");
  const std::string h = in.program.rules[0].head.pred;
  UCQ q;
  for (const auto& r : in.program.rules) {
    if (r.head.pred != h) return inapplicable("rule heads use more than one predicate");
    for (const auto& a : r.body)
      if (a.pred == h) return inapplicable("head predicate occurs in a body");
    q.push_back(ConjunctiveQuery{r.body, r.head.args});
  }
  for (const auto& f : in.db.lambda)
    if (f.first.pred == h) return inapplicable("head predicate occurs in the database");
  for (const auto& t : in.targets) {
    if (t.pred != h) continue;
    Value lhs = ucq_provenance(q, t.args, in.db);
    Value rhs = evaluate(sem, in.program, in.db, t, caps);
    if (lhs != rhs)
      return violated(to_string(t) + ": query provenance " + fmt(s, lhs) + ", semantics " + fmt(s, rhs));
  }
  return {};
}

Outcome check_boolean(SemanticsId sem, const PropertyInstance& in, const Caps& caps) {
  const Semiring& s = *in.db.semiring;
  if (!std::holds_alternative<PosBool>(s.zero()) || s.id() != "posbool-free")
    return inapplicable("Boolean compatibility is checked over posbool-free");
  std::vector<std::pair<Fact, std::string>> facts;
  for (const auto& [f, v] : in.db.lambda) {
    auto var = annotation_variable(v);
    if (!var) return inapplicable("annotation of " + to_string(f) + " is not a variable");
    facts.emplace_back(f, *var);
  }
  if (facts.size() > 16) return inapplicable("too many facts for subset enumeration");
  for (const auto& t : in.targets) {
    std::vector<std::vector<std::string>> clauses;
    for (size_t mask = 0; mask < (size_t{1} << facts.size()); ++mask) {
      Database sub;
      std::vector<std::string> vars;
      for (size_t i = 0; i < facts.size(); ++i)
        if (mask >> i & 1) {
          sub.insert(facts[i].first);
          vars.push_back(facts[i].second);
        }
      if (entails(in.program, sub, t)) {
        std::sort(vars.begin(), vars.end());
        clauses.push_back(vars);
      }
    }
    Value lhs = posbool_reduce(clauses);
    Value rhs = evaluate(sem, in.program, in.db, t, caps);
    if (lhs != rhs)
      return violated(to_string(t) + ": Boolean provenance " + fmt(s, lhs) + ", semantics " + fmt(s, rhs));
  }
  return {};
}

Outcome check_hom(SemanticsId sem, const PropertyInstance& in, const Caps& caps) {
  SemiringPtr k2 = hom_codomain(in);
  AnnotatedDatabase img{k2, {}};
  for (const auto& [f, v] : in.db.lambda) {
    Value hv = apply_hom_value(in, v);
    if (k2->is_zero(hv)) return inapplicable("the homomorphism maps the annotation of " + to_string(f) + " to 0");
    img.lambda.emplace(f, hv);
  }
  for (const auto& t : in.targets) {
    Value src = evaluate(sem, in.program, in.db, t, caps);
    Value lhs = apply_hom_value(in, src);
    Value rhs = evaluate(sem, in.program, img, t, caps);
    if (lhs != rhs)
      return violated(to_string(t) + ": h(P) = h(" + in.db.semiring->print(src) + ") = " + fmt(*k2, lhs) +
                      ", P under h o lambda = " + fmt(*k2, rhs));
  }
  return {};
}

Outcome check_domain(SemanticsId sem, const PropertyInstance& in, const Caps& caps) {
  for (const auto& t : in.targets) {
    try {
      evaluate(sem, in.program, in.db, t, caps);
    } catch (const DivergenceError& e) {
      return violated("no value on " + in.db.semiring->id() + ": " + e.what());
    } catch (const UnsupportedSemiring& e) {
      return violated("undefined on " + in.db.semiring->id() + ": " + e.what());
    }
  }
  return {};
}

Outcome check_use(SemanticsId sem, const PropertyInstance& in, const Caps& caps) {
  const Semiring& s = *in.db.semiring;
  if (in.groups.empty()) return inapplicable("no conjunctions given");
  Program ext = in.program;
  const std::string goal = fresh_goal(in.program, in.db.facts());
  Value rhs = s.zero();
  for (const auto& g : in.groups) {
    Rule r{Atom{goal, {}}, {}};
    Value prod = s.one();
    for (const auto& f : g) {
      r.body.push_back(to_atom(f));
      prod = s.mul(prod, evaluate(sem, in.program, in.db, f, caps));
    }
    dedupe_body(r);
    ext.rules.push_back(std::move(r));
    rhs = s.add(rhs, prod);
  }
  Value lhs = evaluate(sem, ext, in.db, Fact{goal, {}}, caps);
  if (lhs != rhs)
    return violated(goal + " under the extended program: " + fmt(s, lhs) + ", sum of products: " + fmt(s, rhs));
  return {};
}

Outcome check_self(SemanticsId sem, const PropertyInstance& in, const Caps& caps) {
  const Semiring& s = *in.db.semiring;
  bool any = false;
  for (const auto& t : in.targets) {
    auto it = in.db.lambda.find(t);
    if (it == in.db.lambda.end()) continue;
    any = true;
    Value v = evaluate(sem, in.program, in.db, t, caps);
    Tri r = natural_order_leq(s, it->second, v);
    if (r == Tri::Unknown) return inapplicable("order undecided on " + s.id());
    if (r == Tri::False)
      return violated(to_string(t) + ": annotation " + fmt(s, it->second) + " is not below " + fmt(s, v));
  }
  return any ? Outcome{} : inapplicable("no database fact among the targets");
}

Outcome check_parsimony(SemanticsId sem, const PropertyInstance& in, const Caps& caps) {
  const Semiring& s = *in.db.semiring;
  bool any = false;
  for (const auto& t : in.targets) {
    auto it = in.db.lambda.find(t);
    if (it == in.db.lambda.end()) continue;
    // The constants of t lie in the domain, so unification with a head is
    // the same as occurring in a head of the grounding.
    bool in_head = false;
    for (const auto& r : in.program.rules) {
      Homomorphism h;
      if (unify_head(r.head, t, h)) in_head = true;
    }
    if (in_head) continue;
    any = true;
    Value v = evaluate(sem, in.program, in.db, t, caps);
    if (v != it->second) return violated(to_string(t) + ": annotation " + fmt(s, it->second) + ", semantics " + fmt(s, v));
  }
  return any ? Outcome{} : inapplicable("every target occurs in a rule head");
}

Outcome check_necessary(SemanticsId sem, const PropertyInstance& in, const Caps& caps) {
  const Semiring& s = *in.db.semiring;
  Database d = in.db.facts();
  bool any = false;
  for (const auto& t : in.targets) {
    if (!entails(in.program, d, t)) continue;
    any = true;
    Value m = s.one();
    std::string names;
    for (const auto& b : necessary_facts(in.program, d, t)) {
      m = s.mul(m, in.db.lambda.at(b));
      names += (names.empty() ? "" : ", ") + to_string(b);
    }
    Value v = evaluate(sem, in.program, in.db, t, caps);
    Tri r = has_factor(s, m, v);
    if (r == Tri::Unknown) return inapplicable("factor existence undecided on " + s.id());
    if (r == Tri::False)
      return violated(to_string(t) + ": value " + fmt(s, v) + " has no factorization " + fmt(s, m) +
                      " * e (necessary facts: " + names + ")");
  }
  return any ? Outcome{} : inapplicable("no entailed target");
}

Outcome check_non_usable(SemanticsId sem, const PropertyInstance& in, const Caps& caps) {
  const Semiring& s = *in.db.semiring;
  if (!in.other) return inapplicable("no alternative annotation");
  if (in.other->facts() != in.db.facts()) return inapplicable("the alternative annotation has other facts");
  Database d = in.db.facts();
  for (const auto& t : in.targets) {
    auto usable = usable_facts(in.program, d, t);
    for (const auto& f : usable)
      if (in.other->lambda.at(f) != in.db.lambda.at(f))
        return inapplicable("annotations differ on the usable fact " + to_string(f));
    Value a = evaluate(sem, in.program, in.db, t, caps);
    Value b = evaluate(sem, in.program, *in.other, t, caps);
    if (a != b) return violated(to_string(t) + ": " + fmt(s, a) + " before, " + fmt(s, b) + " after");
  }
  return {};
}

Outcome check_insertion(SemanticsId sem, const PropertyInstance& in, const Caps& caps) {
  const Semiring& s = *in.db.semiring;
  if (!in.other) return inapplicable("no second database");
  AnnotatedDatabase both = in.db;
  for (const auto& [f, v] : in.other->lambda)
    if (!both.lambda.emplace(f, v).second) return inapplicable("the databases share " + to_string(f));
  for (const auto& t : in.targets) {
    Value a = evaluate(sem, in.program, in.db, t, caps);
    Value b = evaluate(sem, in.program, *in.other, t, caps);
    Value u = evaluate(sem, in.program, both, t, caps);
    Value sum = s.add(a, b);
    Tri r = natural_order_leq(s, sum, u);
    if (r == Tri::Unknown) return inapplicable("order undecided on " + s.id());
    if (r == Tri::False)
      return violated(to_string(t) + ": " + fmt(s, a) + " + " + fmt(s, b) + " is not below " + fmt(s, u));
  }
  return {};
}

Outcome check_deletion(SemanticsId sem, const PropertyInstance& in, const Caps& caps) {
  const Semiring& s = *in.db.semiring;
  if (!s.poly_ring()) return inapplicable("deletion needs a polynomial or series semiring");
  auto vars = variables_of(in.db, in.removed);
  AnnotatedDatabase kept = restrict(in.db, std::set<Fact>(in.removed.begin(), in.removed.end()));
  for (const auto& t : in.targets) {
    Value full = evaluate(sem, in.program, in.db, t, caps);
    Value lhs = evaluate(sem, in.program, kept, t, caps);
    Value rhs = poly_zero_vars(std::get<Poly>(full), vars);
    if (lhs != rhs)
      return violated(to_string(t) + ": after deletion " + fmt(s, lhs) + ", partial evaluation of " + fmt(s, full) +
                      " gives " + fmt(s, rhs));
  }
  return {};
}

Outcome run_check(PropertyId prop, SemanticsId sem, const PropertyInstance& in, const Caps& caps) {
  switch (prop) {
    case PropertyId::AlgebraConsistency: return check_algebra(sem, in, caps);
    case PropertyId::BooleanCompat: return check_boolean(sem, in, caps);
    case PropertyId::HomCommutation:
    case PropertyId::OmegaHomCommutation: return check_hom(sem, in, caps);
    case PropertyId::AnySemiring:
    case PropertyId::AnyOmegaSemiring: return check_domain(sem, in, caps);
    case PropertyId::JointAltUse:
    case PropertyId::JointUse:
    case PropertyId::AltUse: return check_use(sem, in, caps);
    case PropertyId::Self: return check_self(sem, in, caps);
    case PropertyId::Parsimony: return check_parsimony(sem, in, caps);
    case PropertyId::NecessaryFacts: return check_necessary(sem, in, caps);
    case PropertyId::NonUsableFacts: return check_non_usable(sem, in, caps);
    case PropertyId::Insertion: return check_insertion(sem, in, caps);
    case PropertyId::Deletion: return check_deletion(sem, in, caps);
  }
  return inapplicable("unknown property");
}

}  // namespace

PropertyCheck check_property(PropertyId prop, SemanticsId sem, const PropertyInstance& inst, const Caps& caps) {
  PropertyCheck c{prop, sem, inst, Verdict::Inapplicable, {}};
  Outcome o;
  try {
    o = run_check(prop, sem, inst, caps);
  } catch (const DivergenceError& e) {
    o = inapplicable(std::string("divergence: ") + e.what());
  } catch (const UnsupportedSemiring& e) {
    o = inapplicable(std::string("unsupported: ") + e.what());
  } catch (const InapplicableSemiring& e) {
    o = inapplicable(e.what());
  } catch (const SizeLimitError& e) {
    o = inapplicable(std::string("size limit: ") + e.what());
  } catch (const NotEntailed& e) {
    o = inapplicable(e.what());
  }
  c.verdict = o.verdict;
  c.detail = o.detail;
  return c;
}

bool replay(const PropertyCheck& c, const Caps& caps) {
  auto again = check_property(c.property, c.semantics, c.instance, caps);
  return again.verdict == c.verdict && again.detail == c.detail;
}

PropertyCheck check_definition3(SemanticsId sem, const PropertyInstance& inst, const Caps& caps) {
  PropertyCheck c{PropertyId::Self, sem, inst, Verdict::Satisfied, {}};
  const Semiring& s = *inst.db.semiring;
  Database d = inst.db.facts();
  Database ent = saturate(inst.program, d);
  std::set<Fact> cand(inst.targets.begin(), inst.targets.end());
  cand.insert(ent.begin(), ent.end());
  // Every atom over the instance's predicates and domain, up to a budget.
  std::map<std::string, size_t> arity;
  for (const auto& r : inst.program.rules) {
    arity[r.head.pred] = r.head.args.size();
    for (const auto& a : r.body) arity[a.pred] = a.args.size();
  }
  for (const auto& f : d) arity[f.pred] = f.args.size();
  auto dom = domain(d);
  std::vector<std::string> consts(dom.begin(), dom.end());
  for (const auto& [pred, n] : arity) {
    std::vector<size_t> idx(n, 0);
    while (cand.size() < 400) {
      Fact f{pred, {}};
      for (size_t i : idx) f.args.push_back(consts.empty() ? "a" : consts[i]);
      cand.insert(f);
      size_t k = n;
      while (k > 0 && ++idx[k - 1] == consts.size()) idx[--k] = 0;
      if (k == 0) break;
    }
  }
  try {
    for (const auto& f : cand) {
      Value v = evaluate(sem, inst.program, inst.db, f, caps);
      bool entailed = ent.count(f) > 0;
      if (!entailed && !s.is_zero(v)) {
        c.verdict = Verdict::Violated;
        c.detail = to_string(f) + " is not entailed but has value " + s.print(v);
        return c;
      }
      if (entailed && s.flags().positive && s.is_zero(v)) {
        c.verdict = Verdict::Violated;
        c.detail = to_string(f) + " is entailed but has value 0 over a positive semiring";
        return c;
      }
    }
  } catch (const Error& e) {
    if (e.kind() != "DivergenceError" && e.kind() != "UnsupportedSemiring") throw;
    c.verdict = Verdict::Inapplicable;
    c.detail = e.what();
  }
  return c;
}

// ---------------------------------------------------------------- facts

std::set<Fact> necessary_facts(const Program& p, const Database& d, const Fact& target) {
  if (!entails(p, d, target)) throw NotEntailed(to_string(target) + " is not entailed");
  std::set<Fact> out;
  for (const auto& b : d) {
    Database rest = d;
    rest.erase(b);
    if (!entails(p, rest, target)) out.insert(b);
  }
  return out;
}

std::set<Fact> usable_facts(const Program& p, const Database& d, const Fact& target) {
  auto used = predicates_of(p, d);
  used.insert(target.pred);
  auto adorn_name = [&](const std::string& pred) {
    std::string n = pred + "__u";
    while (used.count(n)) n += "_";
    return n;
  };
  std::map<std::string, std::string> adorned;
  for (const auto& pr : used) adorned[pr] = adorn_name(pr);

  // Sigma plus every single-atom adornment of each rule, with plain or adorned head.
  Program ext = p;
  for (const auto& r : p.rules)
    for (size_t i = 0; i < r.body.size(); ++i) {
      Rule a = r;
      a.body[i].pred = adorned.at(a.body[i].pred);
      ext.rules.push_back(a);
      a.head.pred = adorned.at(a.head.pred);
      ext.rules.push_back(std::move(a));
    }
  Fact goal = target;
  goal.pred = adorned.at(target.pred);

  std::set<Fact> out;
  for (const auto& alpha : d) {
    Database da = d;
    Fact aa = alpha;
    aa.pred = adorned.at(alpha.pred);
    da.insert(aa);
    if (entails(ext, da, goal)) out.insert(alpha);
  }
  return out;
}

bool grounding_invariant(SemanticsId sem, const Program& p, const AnnotatedDatabase& adb, const Fact& target,
                         const Caps& caps) {
  Program g = ground(p, adb.facts(), caps.ground);
  return evaluate(sem, p, adb, target, caps) == evaluate(sem, g, adb, target, caps);
}

// ---------------------------------------------------------------- instances

nlohmann::json PropertyInstance::to_json() const {
  nlohmann::json j;
  j["program"] = print_program(program);
  j["semiring"] = db.semiring ? db.semiring->id() : "";
  j["database"] = db.semiring ? print_database(db) : "";
  nlohmann::json ts = nlohmann::json::array();
  for (const auto& t : targets) ts.push_back(to_string(t));
  j["targets"] = ts;
  if (!groups.empty()) {
    nlohmann::json gs = nlohmann::json::array();
    for (const auto& g : groups) {
      nlohmann::json one = nlohmann::json::array();
      for (const auto& f : g) one.push_back(to_string(f));
      gs.push_back(one);
    }
    j["groups"] = gs;
  }
  if (other) j["other_database"] = print_database(*other);
  if (!removed.empty()) {
    nlohmann::json rs = nlohmann::json::array();
    for (const auto& f : removed) rs.push_back(to_string(f));
    j["removed"] = rs;
  }
  if (!hom.empty()) {
    j["homomorphism"] = hom;
    if (image) {
      j["image"] = image->id();
      nlohmann::json nu = nlohmann::json::object();
      for (const auto& [v, x] : valuation) nu[v] = image->print(x);
      j["valuation"] = nu;
    }
  }
  j["label"] = label;
  return j;
}

nlohmann::json PropertyCheck::to_json() const {
  nlohmann::json j;
  j["property"] = to_string(property);
  j["semantics"] = to_string(semantics);
  j["verdict"] = to_string(verdict);
  if (!detail.empty()) j[verdict == Verdict::Violated ? "witness" : "reason"] = detail;
  j["instance"] = instance.to_json();
  return j;
}

namespace {

PropertyInstance parse_instance(const std::string& program, const std::string& db, SemiringPtr s,
                                std::vector<std::string> targets, std::string label) {
  PropertyInstance in;
  in.program = parse_program(program);
  in.db = parse_database(db, s);
  for (const auto& t : targets) in.targets.push_back(parse_fact(t));
  in.label = std::move(label);
  return in;
}

const char* kSection51Program = "goal :- A(X).\ngoal :- B(X).\nB(X) :- C(X).\n";
const char* kSection51Db = "A(a) @ a.\nC(a) @ c.\n";

PropertyInstance section51(SemiringPtr s, const char* db = kSection51Db) {
  return parse_instance(kSection51Program, db, s, {"goal"}, "two alternatives of distinct depths");
}

PropertyInstance alternatives_nat_inf() {
  return parse_instance("goal :- A(X).\ngoal :- B(X).\n", "A(a) @ 2.\nB(a) @ 2.\n", make_semiring("nat-inf"),
                        {"goal"}, "two alternatives annotated 2 over extended naturals");
}

PropertyInstance alternatives_series() {
  return parse_instance("goal :- A(X).\ngoal :- B(X).\n", "A(a) @ x.\nB(a) @ y.\n", make_semiring("series"),
                        {"goal"}, "two alternatives annotated x and y over power series");
}

PropertyInstance hom_to_nat_inf() {
  PropertyInstance in = alternatives_series();
  in.hom = "valuation";
  in.image = make_semiring("nat-inf");
  in.valuation = {{"x", in.image->parse("2")}, {"y", in.image->parse("2")}};
  in.label = "x, y mapped to 2 in the extended naturals";
  return in;
}

PropertyInstance alt_use_base(SemiringPtr s, const char* db) {
  // The section instance seen as a base program plus two alternatives.
  PropertyInstance in = parse_instance("B(X) :- C(X).\n", db, s, {}, "alternatives A(a), B(a) over B(X) :- C(X)");
  in.groups = {{parse_fact("A(a)")}, {parse_fact("B(a)")}};
  return in;
}

PropertyInstance alt_use_nat_inf() {
  PropertyInstance in = parse_instance("", "A(a) @ 2.\nB(a) @ 2.\n", make_semiring("nat-inf"), {},
                                       "alternatives A(a), B(a) annotated 2, empty base program");
  in.groups = {{parse_fact("A(a)")}, {parse_fact("B(a)")}};
  return in;
}

SemiringPtr builtin_table(const char* name, const char* text) {
  return load_table_semiring(nlohmann::json::parse(text), name);
}

}  // namespace

std::optional<PropertyInstance> counterexample(PropertyId prop, SemanticsId sem) {
  if (expected_to_hold(prop, sem)) return std::nullopt;
  const bool depth_sem = sem == SemanticsId::MDT || sem == SemanticsId::HMDT;
  const bool model_sem = sem == SemanticsId::AM || sem == SemanticsId::SAM;
  auto polynat = make_semiring("poly-nat");
  switch (prop) {
    case PropertyId::AlgebraConsistency:
      if (model_sem) return alternatives_nat_inf();
      break;
    case PropertyId::BooleanCompat:
      if (depth_sem) return section51(make_semiring("posbool-free"));
      break;
    case PropertyId::HomCommutation:
    case PropertyId::OmegaHomCommutation:
      if (sem == SemanticsId::AT) {
        PropertyInstance in = parse_instance("A(X) :- B(X).\nB(X) :- A(X).\n", "A(a) @ 1.\n",
                                             make_semiring("nat-inf"), {"A(a)"},
                                             "mutual recursion, infinity mapped to the larger infinity");
        in.hom = "inf-to-inf2";
        return in;
      }
      if (model_sem) return hom_to_nat_inf();
      break;
    case PropertyId::AnySemiring:
      if (sem == SemanticsId::AT)
        return parse_instance("A(X) :- B(X).\nB(X) :- A(X).\n", "A(a) @ 1.\n", make_semiring("nat"), {"A(a)"},
                              "mutual recursion over the counting semiring");
      if (sem == SemanticsId::SAM)
        return parse_instance("A(X) :- A(X), B(X).\n", "A(a) @ 2.\nB(a) @ 2.\n", make_semiring("nat"), {"A(a)"},
                              "self-loop over the counting semiring");
      [[fallthrough]];
    case PropertyId::AnyOmegaSemiring:
      if (sem == SemanticsId::AM) {
        auto s = builtin_table("glb-failure", builtin_tables::kGlbFailure);
        return parse_instance("goal :- A(X).\n", "A(a) @ c.\n", s, {"goal"},
                              "omega-continuous table semiring without greatest lower bounds");
      }
      break;
    case PropertyId::JointAltUse:
    case PropertyId::AltUse:
      if (depth_sem) return alt_use_base(polynat, kSection51Db);
      if (model_sem) return alt_use_nat_inf();
      break;
    case PropertyId::JointUse:
      if (sem == SemanticsId::MDT) {
        PropertyInstance in = parse_instance("B(X) :- C(X).\nA(X) :- D(X).\n", "B(a) @ b.\nC(a) @ c.\nD(a) @ d.\n",
                                             polynat, {}, "joint use of A(a), B(a) with two depths for B(a)");
        in.groups = {{parse_fact("A(a)"), parse_fact("B(a)")}};
        return in;
      }
      if (sem == SemanticsId::SAM) {
        PropertyInstance in = parse_instance("g1 :- A(X).\ng2 :- A(X).\ng1 :- B(X).\ng2 :- B(X).\n",
                                             "A(a) @ x.\nB(a) @ y.\n", make_semiring("series"), {},
                                             "joint use of g1, g2 fed by the same alternatives");
        in.groups = {{parse_fact("g1"), parse_fact("g2")}};
        return in;
      }
      break;
    case PropertyId::NecessaryFacts:
      if (sem == SemanticsId::AM) {
        auto s = builtin_table("necessary-facts", builtin_tables::kNecessaryFacts);
        return parse_instance("goal :- A(X), B(X).\ngoal :- A(X), C(X).\n", "A(a) @ d.\nB(a) @ e.\nC(a) @ f.\n", s,
                              {"goal"}, "nine-element table semiring");
      }
      break;
    case PropertyId::Insertion:
      if (depth_sem) {
        PropertyInstance in = section51(polynat);
        in.other = parse_database("goal @ g.\n", polynat);
        return in;
      }
      if (model_sem) {
        auto s = make_semiring("nat-inf");
        PropertyInstance in = parse_instance("goal :- A(X).\ngoal :- B(X).\n", "A(a) @ 2.\n", s, {"goal"},
                                             "alternatives inserted one at a time");
        in.other = parse_database("B(a) @ 2.\n", s);
        return in;
      }
      break;
    case PropertyId::Deletion:
      if (depth_sem) {
        PropertyInstance in = section51(polynat);
        in.removed = {parse_fact("A(a)")};
        return in;
      }
      break;
    default: break;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------- generator

InstanceGenerator::InstanceGenerator(std::uint64_t seed, GeneratorBounds bounds) : rng_(seed), bounds_(bounds) {}

namespace {
const char* kPreds[] = {"P", "Q", "R", "S", "T", "U"};
const char* kConsts[] = {"a", "b", "c", "d", "e", "f"};
const char* kVars[] = {"X", "Y", "Z"};

size_t pick(std::mt19937_64& rng, size_t n) { return static_cast<size_t>(rng() % n); }
bool coin(std::mt19937_64& rng, int percent) { return static_cast<int>(rng() % 100) < percent; }
}  // namespace

std::optional<RandomInstance> InstanceGenerator::attempt() {
  auto& g = rng_;
  const auto& b = bounds_;
  const int np = std::clamp(b.predicates, 1, 6), nc = std::clamp(b.constants, 1, 6);
  std::vector<int> arity(np);
  for (int i = 0; i < np; ++i) {
    // Nullary predicates are kept rare.
    int r = static_cast<int>(pick(g, 9));
    arity[i] = r == 0 ? 0 : std::min(b.max_arity, 1 + (r - 1) / 4);
  }
  auto term = [&](int var_percent) {
    if (coin(g, var_percent)) return Term::var(kVars[pick(g, 3)]);
    return Term::constant(kConsts[pick(g, nc)]);
  };

  RandomInstance ri;
  const int nrules = 1 + static_cast<int>(pick(g, b.rules));
  for (int i = 0; i < nrules; ++i) {
    Rule r;
    const int nb = 1 + static_cast<int>(pick(g, b.body_atoms));
    for (int j = 0; j < nb; ++j) {
      int pr = static_cast<int>(pick(g, np));
      Atom a{kPreds[pr], {}};
      for (int k = 0; k < arity[pr]; ++k) a.args.push_back(term(85));
      r.body.push_back(std::move(a));
    }
    std::vector<std::string> vars;
    for (const auto& a : r.body)
      for (const auto& t : a.args)
        if (t.is_var) vars.push_back(t.name);
    int hp = static_cast<int>(pick(g, np));
    r.head.pred = kPreds[hp];
    for (int k = 0; k < arity[hp]; ++k) {
      if (!vars.empty() && coin(g, 85))
        r.head.args.push_back(Term::var(vars[pick(g, vars.size())]));
      else
        r.head.args.push_back(Term::constant(kConsts[pick(g, nc)]));
    }
    dedupe_body(r);
    ri.program.rules.push_back(std::move(r));
  }
  const int nf = 1 + static_cast<int>(pick(g, b.facts));
  for (int i = 0; i < nf; ++i) {
    int pr = static_cast<int>(pick(g, np));
    Fact f{kPreds[pr], {}};
    for (int k = 0; k < arity[pr]; ++k) f.args.push_back(kConsts[pick(g, nc)]);
    ri.db.insert(std::move(f));
  }
  ri.entailed = saturate(ri.program, ri.db);
  // Keep instances that derive something and stay small enough for the
  // tree-enumeration oracles.
  if (ri.entailed.size() == ri.db.size() || ri.entailed.size() > b.max_entailed) return std::nullopt;
  return ri;
}

RandomInstance InstanceGenerator::next() {
  while (true)
    if (auto r = attempt()) return *r;
}

namespace {

SemiringPtr trial_semiring(PropertyId prop, SemanticsId sem) {
  if (prop == PropertyId::BooleanCompat) return make_semiring("posbool-free");
  if (prop == PropertyId::HomCommutation) return make_semiring("poly-nat");
  if (prop == PropertyId::OmegaHomCommutation) return make_semiring("series");
  switch (sem) {
    case SemanticsId::NRT:
    case SemanticsId::MDT:
    case SemanticsId::HMDT: return make_semiring("poly-nat");
    default: return make_semiring("series-trunc:3");
  }
}

std::vector<Fact> sample(std::vector<Fact> pool, size_t k, std::mt19937_64& rng) {
  std::vector<Fact> out;
  while (!pool.empty() && out.size() < k) {
    size_t i = pick(rng, pool.size());
    out.push_back(pool[i]);
    pool.erase(pool.begin() + static_cast<long>(i));
  }
  return out;
}

// Entailed facts, derived ones first in the draw, plus an occasional
// non-entailed fact.
std::vector<Fact> pick_targets(const RandomInstance& ri, std::mt19937_64& rng, size_t k) {
  std::vector<Fact> derived, base;
  for (const auto& f : ri.entailed) (ri.db.count(f) ? base : derived).push_back(f);
  auto out = sample(derived, k, rng);
  if (out.size() < k) {
    auto more = sample(base, k - out.size(), rng);
    out.insert(out.end(), more.begin(), more.end());
  }
  if (coin(rng, 25)) {
    Fact f = *ri.entailed.begin();
    f.pred += "_none";
    out.push_back(f);
  }
  return out;
}

Value hom_image_value(const Semiring& s, std::mt19937_64& rng) {
  if (std::holds_alternative<bool>(s.one())) return s.one();
  return s.parse(std::to_string(1 + pick(rng, 3)));
}

}  // namespace

std::optional<PropertyInstance> make_trial(PropertyId prop, SemanticsId sem, const RandomInstance& ri,
                                           std::mt19937_64& rng) {
  PropertyInstance in;
  in.label = "random";
  in.program = ri.program;
  SemiringPtr s = trial_semiring(prop, sem);
  in.db = variable_annotation(ri.db, s, "x");
  std::vector<Fact> entailed(ri.entailed.begin(), ri.entailed.end());

  switch (prop) {
    case PropertyId::AlgebraConsistency: {
      // Same bodies, one fresh head predicate.
      const std::string h = fresh_goal(ri.program, ri.db);
      const size_t k = pick(rng, 3);
      for (auto& r : in.program.rules) {
        std::vector<std::string> vars;
        for (const auto& a : r.body)
          for (const auto& t : a.args)
            if (t.is_var) vars.push_back(t.name);
        r.head = Atom{h, {}};
        for (size_t i = 0; i < k; ++i)
          r.head.args.push_back(vars.empty() ? Term::constant(kConsts[pick(rng, 2)])
                                             : Term::var(vars[pick(rng, vars.size())]));
      }
      Database sat = saturate(in.program, ri.db);
      for (const auto& f : sat)
        if (f.pred == h) in.targets.push_back(f);
      if (in.targets.empty()) return std::nullopt;
      return in;
    }
    case PropertyId::HomCommutation:
    case PropertyId::OmegaHomCommutation: {
      static const char* k1[] = {"nat", "tropical", "bool", "posbool-free"};
      static const char* kw[] = {"nat-inf", "tropical", "posbool-free"};
      in.hom = "valuation";
      in.image = make_semiring(prop == PropertyId::HomCommutation ? k1[pick(rng, 4)] : kw[pick(rng, 3)]);
      for (const auto& [f, v] : in.db.lambda) {
        std::string var = *annotation_variable(v);
        in.valuation[var] = in.image->id() == "posbool-free" ? *in.image->variable(var)
                                                              : hom_image_value(*in.image, rng);
      }
      in.targets = pick_targets(ri, rng, 3);
      return in;
    }
    case PropertyId::AnySemiring:
    case PropertyId::AnyOmegaSemiring: return std::nullopt;
    case PropertyId::JointAltUse:
    case PropertyId::JointUse:
    case PropertyId::AltUse: {
      auto pool = entailed;
      if (coin(rng, 20)) pool.push_back(Fact{"P_none", {}});
      if (prop == PropertyId::JointUse) {
        in.groups.push_back(sample(pool, 1 + pick(rng, 3), rng));
      } else if (prop == PropertyId::AltUse) {
        for (const auto& f : sample(pool, 1 + pick(rng, 3), rng)) in.groups.push_back({f});
      } else {
        const size_t m = 1 + pick(rng, 2);
        std::set<std::set<Fact>> seen;
        for (size_t i = 0; i < m; ++i) {
          auto g = sample(pool, 1 + pick(rng, 2), rng);
          if (seen.insert(std::set<Fact>(g.begin(), g.end())).second) in.groups.push_back(g);
        }
      }
      return in;
    }
    case PropertyId::Self:
      in.targets.assign(ri.db.begin(), ri.db.end());
      return in;
    case PropertyId::Parsimony:
      for (const auto& f : ri.db) {
        bool in_head = false;
        for (const auto& r : ri.program.rules) {
          Homomorphism h;
          if (unify_head(r.head, f, h)) in_head = true;
        }
        if (!in_head) in.targets.push_back(f);
      }
      if (in.targets.empty()) return std::nullopt;
      return in;
    case PropertyId::NonUsableFacts: {
      in.targets = sample(entailed, 1, rng);
      auto usable = usable_facts(ri.program, ri.db, in.targets[0]);
      AnnotatedDatabase alt = in.db;
      int z = 0;
      for (auto& [f, v] : alt.lambda)
        if (!usable.count(f)) v = *s->variable("z" + std::to_string(z++));
      if (z == 0) return std::nullopt;
      in.other = alt;
      return in;
    }
    case PropertyId::Insertion: {
      if (ri.db.size() < 2) return std::nullopt;
      AnnotatedDatabase all = in.db;
      in.db.lambda.clear();
      AnnotatedDatabase second{s, {}};
      for (const auto& [f, v] : all.lambda) (coin(rng, 50) ? in.db : second).lambda.emplace(f, v);
      if (in.db.lambda.empty() || second.lambda.empty()) return std::nullopt;
      in.other = second;
      in.targets = pick_targets(ri, rng, 3);
      return in;
    }
    case PropertyId::Deletion: {
      std::vector<Fact> facts(ri.db.begin(), ri.db.end());
      in.removed = sample(facts, 1 + pick(rng, facts.size()), rng);
      in.targets = pick_targets(ri, rng, 3);
      return in;
    }
    default:
      in.targets = pick_targets(ri, rng, 3);
      return in;
  }
}

// ---------------------------------------------------------------- matrix

bool CellReport::matches() const {
  if (is_static) return true;
  if (expected) return violated == 0 && satisfied > 0;
  return witness && witness->verdict == Verdict::Violated;
}

std::string CellReport::symbol() const {
  std::string s = expected ? "yes" : "no";
  return matches() ? s : s + "!";
}

bool MatrixReport::ok() const {
  for (const auto& c : cells)
    if (!c.matches()) return false;
  return grounding_failures == 0;
}

const CellReport* MatrixReport::find(PropertyId p, SemanticsId s) const {
  for (const auto& c : cells)
    if (c.property == p && c.semantics == s) return &c;
  return nullptr;
}

std::string MatrixReport::to_text() const {
  std::ostringstream o;
  auto pad = [](std::string s, size_t w) {
    if (s.size() < w) s += std::string(w - s.size(), ' ');
    return s;
  };
  std::vector<SemanticsId> cols;
  std::vector<PropertyId> rows;
  for (const auto& c : cells) {
    if (std::find(cols.begin(), cols.end(), c.semantics) == cols.end()) cols.push_back(c.semantics);
    if (std::find(rows.begin(), rows.end(), c.property) == rows.end()) rows.push_back(c.property);
  }
  o << pad("Property", 36);
  for (auto s : cols) {
    std::string h = to_string(s);
    std::transform(h.begin(), h.end(), h.begin(), ::toupper);
    o << pad(h, 7);
  }
  o << "\n";
  for (auto p : rows) {
    o << pad(property_title(p), 36);
    for (auto s : cols) {
      const CellReport* c = find(p, s);
      o << pad(c ? c->symbol() : "-", 7);
    }
    o << "\n";
  }
  o << "\nCells (satisfied/violated/inapplicable):\n";
  for (const auto& c : cells) {
    o << "  " << pad(to_string(c.property) + " / " + to_string(c.semantics), 34);
    if (c.is_static)
      o << "declared " << (c.expected ? "yes" : "no");
    else if (c.expected)
      o << c.satisfied << "/" << c.violated << "/" << c.inapplicable;
    else
      o << "counterexample " << (c.witness ? to_string(c.witness->verdict) : "missing");
    if (!c.matches()) o << "  MISMATCH";
    if (c.witness && c.witness->verdict == Verdict::Violated) o << "\n      " << c.witness->detail;
    o << "\n";
  }
  o << "\nGrounding invariance: " << grounding_checked << " checked, " << grounding_failures << " failed\n";
  o << "Result: " << (ok() ? "matches the expected matrix" : "MISMATCH") << "\n";
  return o.str();
}

nlohmann::json MatrixReport::to_json() const {
  nlohmann::json j;
  j["trials"] = trials;
  j["seed"] = seed;
  j["ok"] = ok();
  j["grounding"] = {{"checked", grounding_checked}, {"failed", grounding_failures}};
  nlohmann::json cs = nlohmann::json::array();
  for (const auto& c : cells) {
    nlohmann::json x;
    x["property"] = to_string(c.property);
    x["semantics"] = to_string(c.semantics);
    x["expected"] = c.expected;
    x["static"] = c.is_static;
    x["satisfied"] = c.satisfied;
    x["violated"] = c.violated;
    x["inapplicable"] = c.inapplicable;
    x["matches"] = c.matches();
    if (c.witness) x["check"] = c.witness->to_json();
    cs.push_back(x);
  }
  j["cells"] = cs;
  return j;
}

MatrixReport run_table1(const MatrixOptions& opts) {
  auto start = std::chrono::steady_clock::now();
  MatrixReport rep;
  rep.trials = opts.trials;
  rep.seed = opts.seed;
  const auto& props = opts.properties.empty() ? all_properties() : opts.properties;
  const auto& sems = opts.semantics.empty() ? all_semantics() : opts.semantics;

  for (auto p : props) {
    for (auto s : sems) {
      CellReport c;
      c.property = p;
      c.semantics = s;
      c.expected = expected_to_hold(p, s);
      const bool domain = p == PropertyId::AnySemiring || p == PropertyId::AnyOmegaSemiring;
      if (!c.expected) {
        if (auto ce = counterexample(p, s)) {
          c.witness = check_property(p, s, *ce, opts.caps);
          if (c.witness->verdict == Verdict::Violated && !replay(*c.witness, opts.caps))
            c.witness->detail += " (replay differs)", c.witness->verdict = Verdict::Inapplicable;
          ++(c.witness->verdict == Verdict::Violated ? c.violated
             : c.witness->verdict == Verdict::Satisfied ? c.satisfied
                                                        : c.inapplicable);
        } else if (domain) {
          c.is_static = true;
        }
      } else if (domain) {
        c.is_static = true;
      } else {
        std::uint64_t cell_seed = opts.seed * 1000003u + static_cast<std::uint64_t>(p) * 97u + static_cast<std::uint64_t>(s);
        InstanceGenerator gen(cell_seed);
        const int budget = opts.trials * opts.max_attempts;
        for (int k = 0; k < budget && c.satisfied + c.violated < opts.trials; ++k) {
          RandomInstance ri = gen.next();
          auto inst = make_trial(p, s, ri, gen.rng());
          if (!inst) {
            ++c.inapplicable;
            continue;
          }
          auto chk = check_property(p, s, *inst, opts.caps);
          if (chk.verdict == Verdict::Satisfied) ++c.satisfied;
          else if (chk.verdict == Verdict::Violated) {
            ++c.violated;
            if (!c.witness) c.witness = chk;
          } else {
            ++c.inapplicable;
          }
        }
      }
      rep.cells.push_back(std::move(c));
    }
  }

  // Grounding invariance on the corpus, for the two tree semantics built on all trees.
  InstanceGenerator gen(opts.seed ^ 0x9e3779b97f4a7c15ull);
  auto series = make_semiring("series-trunc:3");
  auto polynat = make_semiring("poly-nat");
  for (int k = 0; k < opts.trials; ++k) {
    RandomInstance ri = gen.next();
    auto targets = pick_targets(ri, gen.rng(), 1);
    for (auto s : {SemanticsId::AT, SemanticsId::NRT}) {
      if (std::find(sems.begin(), sems.end(), s) == sems.end()) continue;
      auto adb = variable_annotation(ri.db, s == SemanticsId::AT ? series : polynat, "x");
      try {
        ++rep.grounding_checked;
        if (!grounding_invariant(s, ri.program, adb, targets[0], opts.caps)) ++rep.grounding_failures;
      } catch (const DivergenceError&) {
        --rep.grounding_checked;
      } catch (const SizeLimitError&) {
        --rep.grounding_checked;
      }
    }
  }
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

}  // namespace provlog
