// provlog: evaluate provenance semantics, enumerate derivation trees, and
// check semantic properties from the command line.
//
// Exit codes: 0 ok, 1 input does not parse or is malformed, 2 semantics and
// semiring are incompatible, 3 divergence or a size cap was hit, 4 the
// property matrix differs from the expected one, 64 bad command line.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "provlog/provlog.hpp"

using namespace provlog;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("IOError", "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int exit_code(const Error& e) {
  static const std::set<std::string> parse{"SyntaxError",     "ArityError",      "HeadVariableError",
                                           "ZeroAnnotationError", "DuplicateFactError", "ValueParseError",
                                           "MalformedSpec",   "AxiomViolation",  "IOError"};
  static const std::set<std::string> diverge{"DivergenceError", "DepthCapRequired", "SizeLimitError",
                                             "TermExplosion"};
  if (parse.count(e.kind())) return 1;
  if (diverge.count(e.kind())) return 3;
  if (e.kind() == "MatrixMismatch") return 4;
  if (e.kind() == "UsageError") return 64;
  return 2;
}

struct Inputs {
  Program program;
  AnnotatedDatabase db;
};

Inputs load(const std::string& program, const std::string& database, const std::string& semiring) {
  Inputs in;
  in.program = parse_program(read_file(program));
  in.db = parse_database(read_file(database), make_semiring(semiring));
  check_arity(in.program, in.db.facts());
  return in;
}

std::vector<Fact> targets_or_all(const std::vector<std::string>& facts, const Inputs& in) {
  std::vector<Fact> out;
  for (const auto& f : facts) out.push_back(parse_fact(f));
  if (out.empty()) {
    Database all = saturate(in.program, in.db.facts());
    out.assign(all.begin(), all.end());
  }
  return out;
}

// ------------------------------------------------------------------ eval

struct EvalArgs {
  std::string program, database, semiring = "nat", semantics = "at", format = "text", circuit;
  std::vector<std::string> facts;
  bool trace = false;
  std::optional<int> max_iter;
  int depth = -1;
};

int cmd_eval(const EvalArgs& a, const Caps& caps0) {
  Caps caps = caps0;
  if (a.max_iter) caps.iter = a.max_iter;
  Inputs in = load(a.program, a.database, a.semiring);
  const Semiring& s = *in.db.semiring;
  SemanticsId sem = parse_semantics(a.semantics);
  if (sem == SemanticsId::AM && !am_supported(s))
    throw UnsupportedSemiring("semantics am needs greatest lower bounds and a join; " + s.id() + " has none");
  if (a.trace && sem != SemanticsId::AT && sem != SemanticsId::MDT)
    throw InapplicableSemiring("--trace shows the naive fixpoint, available for at and mdt");

  auto targets = targets_or_all(a.facts, in);
  std::vector<std::pair<Fact, Value>> values;
  std::optional<FixpointTrace> trace;
  if (sem == SemanticsId::AT || a.trace) {
    NaiveOptions o;
    o.cap = caps.iter;
    trace = naive_eval(in.program, in.db, o);
  }
  std::map<Fact, Value> model;
  if (sem == SemanticsId::AM) {
    ModelOptions o;
    o.cap = caps.iter;
    model = am_model(in.program, in.db, o);
  }
  AnnotatedInterpretation hmdt;
  if (sem == SemanticsId::HMDT) hmdt = seminaive_eval(in.program, in.db);
  for (const auto& f : targets) {
    Value v;
    switch (sem) {
      case SemanticsId::AT: v = trace->converged_value(f); break;
      case SemanticsId::NRT: v = nrt_eval(in.program, in.db, f); break;
      case SemanticsId::MDT: v = optimized_eval(in.program, in.db, f, caps.iter); break;
      case SemanticsId::HMDT: v = hmdt.value(f); break;
      case SemanticsId::AM: v = model.count(f) ? model.at(f) : s.zero(); break;
      case SemanticsId::SAM: {
        ModelOptions o;
        o.cap = caps.iter;
        o.set_cap = caps.sam;
        v = sam_provenance(in.program, in.db, f, o);
        break;
      }
    }
    values.emplace_back(f, v);
  }

  if (!a.circuit.empty()) {
    CircuitSemantics cs;
    if (sem == SemanticsId::MDT) cs = CircuitSemantics::MinDepth;
    else if (sem == SemanticsId::HMDT) cs = CircuitSemantics::HereditaryMinDepth;
    else if (sem == SemanticsId::AT) cs = CircuitSemantics::AtDepth;
    else throw InapplicableSemiring("circuits exist for at (bounded depth), mdt and hmdt");
    // Circuits are over fresh variables, one per database fact.
    AnnotatedDatabase vars = variable_annotation(in.db.facts(), make_semiring("poly-nat"), "x");
    int depth = a.depth >= 0 ? a.depth : caps.depth;
    CircuitBundle b = build_circuits(in.program, vars, cs, depth);
    nlohmann::json j = a.facts.size() == 1 ? circuit_to_json(b.circuit(targets[0]), b.bindings) : b.to_json();
    std::ofstream out(a.circuit);
    if (!out) throw Error("IOError", "cannot write " + a.circuit);
    out << j.dump(2) << "\n";
  }

  if (a.format == "json") {
    nlohmann::json j;
    j["semiring"] = s.id();
    j["semantics"] = a.semantics;
    j["values"] = nlohmann::json::array();
    for (const auto& [f, v] : values) j["values"].push_back({{"fact", to_string(f)}, {"value", s.print(v)}});
    if (a.trace) j["trace"] = trace->to_json();
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  for (const auto& [f, v] : values) std::cout << to_string(f) << "\t" << s.print(v) << "\n";
  if (a.trace) {
    auto j = trace->to_json();
    std::cout << "# status " << j["status"].get<std::string>() << ", rounds " << trace->rounds << ", cap "
              << trace->cap << "\n";
    for (const auto& w : trace->warnings) std::cout << "# warning " << w << "\n";
    for (const auto& r : j["trace"]) {
      std::cout << "# round " << r["round"].get<int>() << ":";
      for (const auto& [f, v] : r["changed"].items()) std::cout << " " << f << "=" << v.get<std::string>();
      std::cout << "\n";
    }
  }
  return 0;
}

// ------------------------------------------------------------------ trees

struct TreesArgs {
  std::string program, database, semiring = "poly-nat", kind = "all", format = "text", fact;
  std::optional<int> max_depth;
  bool count_only = false;
};

int cmd_trees(const TreesArgs& a, const Caps&) {
  Inputs in = load(a.program, a.database, a.semiring);
  Fact target = parse_fact(a.fact);
  TreeKind kind = parse_tree_kind(a.kind);
  auto stream = enumerate_trees(in.program, in.db.facts(), target, kind, a.max_depth);
  if (a.count_only) {
    size_t n = 0;
    while (stream.next()) ++n;
    if (a.format == "json")
      std::cout << nlohmann::json{{"fact", a.fact}, {"kind", a.kind}, {"count", n}}.dump() << "\n";
    else
      std::cout << n << "\n";
    return 0;
  }
  if (a.format == "json") {
    nlohmann::json arr = nlohmann::json::array();
    while (auto t = stream.next()) {
      auto j = tree_to_json(*t);
      j["annotation"] = in.db.semiring->print(tree_annotation(*t, *in.db.semiring, in.db.lambda));
      arr.push_back(j);
    }
    std::cout << arr.dump(2) << "\n";
    return 0;
  }
  size_t i = 0;
  while (auto t = stream.next()) {
    std::cout << "# tree " << ++i << " depth " << (*t)->depth << " annotation "
              << in.db.semiring->print(tree_annotation(*t, *in.db.semiring, in.db.lambda)) << "\n"
              << tree_to_text(*t);
  }
  return 0;
}

// ------------------------------------------------------------------ check

struct CheckArgs {
  bool all = false;
  std::vector<std::string> properties, semantics;
  int trials = 200;
  std::uint64_t seed = 1;
  std::string format = "text";
};

int cmd_check(const CheckArgs& a, const Caps& caps) {
  MatrixOptions o;
  o.trials = a.trials;
  o.seed = a.seed;
  o.caps = caps;
  if (!a.all) {
    for (const auto& p : a.properties) o.properties.push_back(parse_property(p));
    for (const auto& s : a.semantics) o.semantics.push_back(parse_semantics(s));
  }
  MatrixReport r = run_table1(o);
  if (a.format == "json") {
    auto j = r.to_json();
    j.erase("seconds");
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << r.to_text();
  }
  return r.ok() ? 0 : 4;
}

// ------------------------------------------------------------------ validate

int cmd_validate(const std::string& id, size_t budget, std::uint64_t seed, const std::string& format) {
  auto s = make_semiring(id);
  auto r = validate_semiring(*s, budget, seed);
  auto flags = [](const Flags& f) {
    return nlohmann::json{{"plus_idempotent", f.plus_idempotent}, {"times_idempotent", f.times_idempotent},
                          {"absorptive", f.absorptive},           {"positive", f.positive},
                          {"omega_continuous", f.omega_continuous}, {"has_finite_joins", f.has_finite_joins},
                          {"has_glb", f.has_glb}};
  };
  auto laws = [](const std::vector<LawViolation>& v) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& x : v) arr.push_back({{"law", x.law}, {"witness", x.witness}});
    return arr;
  };
  nlohmann::json j{{"semiring", s->id()},
                   {"exhaustive", r.exhaustive},
                   {"checked", r.checked},
                   {"ok", r.ok()},
                   {"violations", laws(r.violations)},
                   {"flags", flags(r.observed)},
                   {"flag_refutations", laws(r.flag_refutations)}};
  if (r.glb_witness) j["glb_witness"] = {r.glb_witness->first, r.glb_witness->second};
  if (format == "json") {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "semiring " << s->id() << (r.exhaustive ? " (exhaustive, " : " (sampled, ") << r.checked
              << " checks)\n";
    for (const auto& v : r.violations) {
      std::cout << "violated " << v.law << ":";
      for (const auto& w : v.witness) std::cout << " " << w;
      std::cout << "\n";
    }
    for (const auto& [k, v] : j["flags"].items()) std::cout << k << " " << (v.get<bool>() ? "true" : "false") << "\n";
    if (r.glb_witness) std::cout << "no glb for " << r.glb_witness->first << ", " << r.glb_witness->second << "\n";
    std::cout << (r.ok() ? "axioms hold" : "axioms violated") << "\n";
  }
  return r.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Provenance semantics for Datalog"};
  app.require_subcommand(1);
  std::string format = "text";

  EvalArgs ev;
  auto* eval = app.add_subcommand("eval", "Evaluate provenance under one semantics");
  eval->add_option("-p,--program", ev.program, "Program file")->required();
  eval->add_option("-d,--db", ev.database, "Annotated database file")->required();
  eval->add_option("-k,--semiring", ev.semiring, "Semiring id or table:<path>");
  eval->add_option("-s,--semantics", ev.semantics, "at, nrt, mdt, hmdt, am or sam");
  eval->add_option("-f,--fact", ev.facts, "Target fact (repeatable; default: every entailed fact)");
  eval->add_flag("--trace", ev.trace, "Show the naive fixpoint rounds");
  eval->add_option("--emit-circuit", ev.circuit, "Write the arithmetic circuit(s) as JSON");
  eval->add_option("--depth", ev.depth, "Depth for at circuits");
  eval->add_option("--max-iter", ev.max_iter, "Round cap");
  eval->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  TreesArgs tr;
  auto* trees = app.add_subcommand("trees", "Enumerate derivation trees");
  trees->add_option("-p,--program", tr.program, "Program file")->required();
  trees->add_option("-d,--db", tr.database, "Database file")->required();
  trees->add_option("-f,--fact", tr.fact, "Target fact")->required();
  trees->add_option("-k,--semiring", tr.semiring, "Semiring of the annotations");
  trees->add_option("--kind", tr.kind, "all, nonrecursive, md or hmd");
  trees->add_option("--max-depth", tr.max_depth, "Depth cap");
  trees->add_flag("--count-only", tr.count_only, "Print only the number of trees");
  trees->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  CheckArgs ck;
  auto* check = app.add_subcommand("check", "Check properties against the expected matrix");
  check->add_flag("--all", ck.all, "Every property and semantics");
  check->add_option("--property", ck.properties, "Property id (repeatable)");
  check->add_option("--semantics", ck.semantics, "Semantics id (repeatable)");
  check->add_option("--trials", ck.trials, "Random instances per cell");
  check->add_option("--seed", ck.seed, "Random seed");
  check->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  std::string vid;
  size_t budget = 20000;
  std::uint64_t vseed = 1;
  auto* validate = app.add_subcommand("validate", "Check semiring axioms and flags");
  validate->add_option("-k,--semiring", vid, "Semiring id or table:<path>")->required();
  validate->add_option("--budget", budget, "Sample budget for infinite carriers");
  validate->add_option("--seed", vseed, "Sampling seed");
  validate->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 64;
  }

  try {
    Caps caps = caps_from_env();
    if (*eval) {
      ev.format = format;
      return cmd_eval(ev, caps);
    }
    if (*trees) {
      tr.format = format;
      return cmd_trees(tr, caps);
    }
    if (*check) {
      ck.format = format;
      return cmd_check(ck, caps);
    }
    if (*validate) return cmd_validate(vid, budget, vseed, format);
  } catch (const Error& e) {
    std::cerr << "error: " << e.kind() << ": " << e.what() << "\n";
    return exit_code(e);
  }
  return 0;
}
