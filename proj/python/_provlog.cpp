#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "provlog/provlog.hpp"

namespace py = pybind11;
using namespace provlog;

namespace {

py::object to_py(const nlohmann::json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

std::vector<std::string> fact_strings(const std::set<Fact>& s) {
  std::vector<std::string> out;
  for (const auto& f : s) out.push_back(to_string(f));
  return out;
}

Value eval_named(const std::string& semantics, const Program& p, const AnnotatedDatabase& db, const Fact& f,
                 const Caps& caps) {
  return evaluate(parse_semantics(semantics), p, db, f, caps);
}

// Handle around a const semiring; pybind11 holders cannot point to const.
struct SemiringHandle {
  SemiringPtr ptr;
};

}  // namespace

PYBIND11_MODULE(_provlog, m) {
  m.doc() = "Semiring provenance for Datalog";

  static py::exception<Error> error(m, "ProvlogError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = error;
      py::object inst = exc(std::string(e.what()));
      inst.attr("kind") = e.kind();
      PyErr_SetObject(error.ptr(), inst.ptr());
    }
  });

  py::class_<SemiringHandle>(m, "Semiring")
      .def_property_readonly("id", [](const SemiringHandle& h) { return h.ptr->id(); })
      .def("validate",
           [](const SemiringHandle& h, size_t budget, std::uint64_t seed) {
             auto r = validate_semiring(*h.ptr, budget, seed);
             py::dict d;
             d["ok"] = r.ok();
             d["exhaustive"] = r.exhaustive;
             d["checked"] = r.checked;
             py::list v;
             for (const auto& x : r.violations) v.append(py::make_tuple(x.law, x.witness));
             d["violations"] = v;
             d["has_glb"] = r.observed.has_glb;
             if (r.glb_witness) d["glb_witness"] = py::make_tuple(r.glb_witness->first, r.glb_witness->second);
             return d;
           },
           py::arg("budget") = 20000, py::arg("seed") = 1)
      .def("__repr__", [](const SemiringHandle& h) { return "<Semiring " + h.ptr->id() + ">"; });

  m.def("semiring", [](const std::string& id) { return SemiringHandle{make_semiring(id)}; }, py::arg("id"), "Built-in semiring by id, e.g. 'nat' or 'series-trunc:3'.");
  m.def("load_table_semiring", [](const std::string& path) { return SemiringHandle{load_table_semiring_file(path)}; }, py::arg("path"));

  py::class_<Program>(m, "Program")
      .def_static("parse", &parse_program, py::arg("text"))
      .def_property_readonly("is_recursive", [](const Program& p) { return is_recursive(p); })
      .def("__len__", [](const Program& p) { return p.rules.size(); })
      .def("__str__", &print_program);

  py::class_<AnnotatedDatabase>(m, "Database")
      .def_static("parse", [](const std::string& text, const SemiringHandle& h) { return parse_database(text, h.ptr); },
                  py::arg("text"), py::arg("semiring"))
      .def_property_readonly("semiring", [](const AnnotatedDatabase& d) { return SemiringHandle{d.semiring}; })
      .def_property_readonly("annotations",
                             [](const AnnotatedDatabase& d) {
                               std::map<std::string, std::string> out;
                               for (const auto& [f, v] : d.lambda) out[to_string(f)] = d.semiring->print(v);
                               return out;
                             })
      .def("__len__", [](const AnnotatedDatabase& d) { return d.lambda.size(); })
      .def("__str__", &print_database);

  m.def("entailed",
        [](const Program& p, const AnnotatedDatabase& d) {
          auto s = saturate(p, d.facts());
          return fact_strings(std::set<Fact>(s.begin(), s.end()));
        },
        py::arg("program"), py::arg("db"));

  m.def("provenance",
        [](const Program& p, const AnnotatedDatabase& d, const std::string& fact, const std::string& semantics,
           const std::string& caps) {
          Value v = eval_named(semantics, p, d, parse_fact(fact), parse_caps(caps));
          return d.semiring->print(v);
        },
        py::arg("program"), py::arg("db"), py::arg("fact"), py::arg("semantics") = "at", py::arg("caps") = "",
        "Printed provenance of one fact under at, nrt, mdt, hmdt, am or sam.");

  m.def("trees",
        [](const Program& p, const AnnotatedDatabase& d, const std::string& fact, const std::string& kind,
           std::optional<int> max_depth) {
          py::list out;
          for (const auto& t : collect_trees(p, d.facts(), parse_fact(fact), parse_tree_kind(kind), max_depth))
            out.append(to_py(tree_to_json(t)));
          return out;
        },
        py::arg("program"), py::arg("db"), py::arg("fact"), py::arg("kind") = "nonrecursive",
        py::arg("max_depth") = py::none());

  m.def("necessary_facts",
        [](const Program& p, const AnnotatedDatabase& d, const std::string& f) {
          return fact_strings(necessary_facts(p, d.facts(), parse_fact(f)));
        },
        py::arg("program"), py::arg("db"), py::arg("fact"));
  m.def("usable_facts",
        [](const Program& p, const AnnotatedDatabase& d, const std::string& f) {
          return fact_strings(usable_facts(p, d.facts(), parse_fact(f)));
        },
        py::arg("program"), py::arg("db"), py::arg("fact"));

  m.def("circuit",
        [](const Program& p, const AnnotatedDatabase& d, const std::string& fact, const std::string& semantics,
           int depth) {
          auto b = build_circuits(p, d, parse_circuit_semantics(semantics), depth);
          return to_py(circuit_to_json(b.circuit(parse_fact(fact)), b.bindings));
        },
        py::arg("program"), py::arg("db"), py::arg("fact"), py::arg("semantics") = "mdt", py::arg("depth") = 5,
        "Circuit of one fact as a JSON-like dict; the database needs variable annotations.");

  m.def("check_counterexample",
        [](const std::string& prop, const std::string& sem) -> py::object {
          auto inst = counterexample(parse_property(prop), parse_semantics(sem));
          if (!inst) return py::none();
          return to_py(check_property(parse_property(prop), parse_semantics(sem), *inst).to_json());
        },
        py::arg("property"), py::arg("semantics"));

  m.def("run_matrix",
        [](int trials, std::uint64_t seed, const std::vector<std::string>& properties,
           const std::vector<std::string>& semantics) {
          MatrixOptions o;
          o.trials = trials;
          o.seed = seed;
          for (const auto& p : properties) o.properties.push_back(parse_property(p));
          for (const auto& s : semantics) o.semantics.push_back(parse_semantics(s));
          MatrixReport r;
          {
            py::gil_scoped_release release;
            r = run_table1(o);
          }
          return to_py(r.to_json());
        },
        py::arg("trials") = 200, py::arg("seed") = 1, py::arg("properties") = std::vector<std::string>{},
        py::arg("semantics") = std::vector<std::string>{});
}
