#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <random>

#include "vptk/error.hpp"
#include "vptk/oracle.hpp"
#include "vptk/text.hpp"
#include "vptk/translate.hpp"

namespace py = pybind11;
using namespace vptk;

namespace {

// Any iterable of strings.
using Labels = py::iterable;

std::set<Symbol> to_set(const Labels& labels) {
  std::set<Symbol> out;
  for (auto item : labels) out.insert(item.cast<std::string>());
  return out;
}

std::vector<std::string> formatted(const OutputSet& outs) {
  std::vector<std::string> out;
  for (const auto& w : outs) out.push_back(format_word(w));
  return out;
}

py::object to_python(Model m) {
  if (auto* a = std::get_if<Vpt>(&m)) return py::cast(std::move(*a));
  return py::cast(std::get<H2s>(std::move(m)));
}

struct PyVerdict {
  bool equivalent;
  std::size_t inputs_checked;
  std::size_t inputs_accepted;
  std::optional<std::string> counterexample;
  std::vector<std::string> side_a;
  std::vector<std::string> side_b;
  std::string report;
};

PyVerdict wrap(const Verdict& v) {
  PyVerdict p{v.equivalent(), v.inputs_checked, v.inputs_accepted, std::nullopt, {}, {},
              format_verdict(v)};
  if (v.counterexample) {
    p.counterexample = format_input(v.counterexample->input);
    p.side_a = formatted(v.counterexample->side_a);
    p.side_b = formatted(v.counterexample->side_b);
  }
  return p;
}

H2sFlavor h2s_flavor(const std::string& name) {
  if (name == "general") return H2sFlavor::general;
  if (name == "tr") return H2sFlavor::tail_recursive;
  if (name == "h2h") return H2sFlavor::h2h;
  if (name == "h2h-tr") return H2sFlavor::h2h_tr;
  if (name == "h2b") return H2sFlavor::h2b;
  throw Error("unknown H2S flavor '" + name + "'");
}

}  // namespace

PYBIND11_MODULE(_vptk, m) {
  m.doc() = "Visibly pushdown transducers and hedge-to-string transducers";

  auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", error.ptr());
  py::register_exception<AlphabetError>(m, "AlphabetError", error.ptr());
  py::register_exception<ModelError>(m, "ModelError", error.ptr());
  py::register_exception<PreconditionError>(m, "PreconditionError", error.ptr());
  py::register_exception<ShapeError>(m, "ShapeError", error.ptr());
  py::register_exception<OutputLimitError>(m, "OutputLimitError", error.ptr());

  py::class_<Vpt>(m, "Vpt")
      .def(py::init([](const std::string& text) { return parse_vpt(text); }), py::arg("text"))
      .def_property_readonly("state_count", &Vpt::state_count)
      .def_property_readonly("transition_count",
                             [](const Vpt& a) { return a.calls().size() + a.returns().size(); })
      .def("run",
           [](const Vpt& a, const std::string& word, std::size_t limit) {
             return formatted(run_all(a, a.input_alphabet().resolve(parse_tokens(word)), limit));
           },
           py::arg("word"), py::arg("limit") = kDefaultOutputLimit,
           "Sorted outputs on a space-separated word; empty if rejected.")
      .def("accepts",
           [](const Vpt& a, const std::string& word) {
             return accepts(a, a.input_alphabet().resolve(parse_tokens(word)));
           })
      .def("is_well_nested", &is_wn_vpt)
      .def("to_text", py::overload_cast<const Vpt&>(&to_text))
      .def("__str__", py::overload_cast<const Vpt&>(&to_text));

  py::class_<H2s>(m, "H2s")
      .def(py::init([](const std::string& text) { return parse_h2s(text); }), py::arg("text"))
      .def_property_readonly("state_count", &H2s::state_count)
      .def_property_readonly("rule_count", [](const H2s& t) { return t.rules().size(); })
      .def("eval",
           [](const H2s& t, const std::string& hedge, std::size_t limit) {
             return formatted(eval(t, parse_hedge(hedge), limit));
           },
           py::arg("hedge"), py::arg("limit") = kDefaultOutputLimit,
           "Sorted outputs on a hedge in term syntax, e.g. 'f(a b) c'.")
      .def("is_tail_recursive", &is_tail_recursive)
      .def("is_h2h", &is_h2h)
      .def("is_h2b", &is_h2b)
      .def("to_text", py::overload_cast<const H2s&>(&to_text))
      .def("__str__", py::overload_cast<const H2s&>(&to_text));

  m.def("parse_model", [](const std::string& text) { return to_python(parse_model(text)); });
  m.def("load_model",
        [](const std::filesystem::path& path) { return to_python(load_model(path)); });
  m.def("builtin", [](const std::string& name, const Labels& labels) {
    return builtin(name, to_set(labels));
  }, py::arg("name"), py::arg("labels"));

  m.def("vpt_to_h2s_tr", &vpt_to_h2s_tr);
  m.def("h2s_tr_to_vpt", &h2s_tr_to_vpt);
  m.def("vpt_fcns_to_h2s", &vpt_fcns_to_h2s);
  m.def("h2s_to_vpt_fcns", &h2s_to_vpt_fcns);
  m.def("h2b_to_h2h", &h2b_to_h2h);

  py::class_<PyVerdict>(m, "Verdict")
      .def_readonly("equivalent", &PyVerdict::equivalent)
      .def_readonly("inputs_checked", &PyVerdict::inputs_checked)
      .def_readonly("inputs_accepted", &PyVerdict::inputs_accepted)
      .def_readonly("counterexample", &PyVerdict::counterexample)
      .def_readonly("side_a", &PyVerdict::side_a)
      .def_readonly("side_b", &PyVerdict::side_b)
      .def("__bool__", [](const PyVerdict& v) { return v.equivalent; })
      .def("__str__", [](const PyVerdict& v) { return v.report; });

  m.def("equiv", [](const Vpt& a, const H2s& t, std::size_t bound, bool fcns) {
    return wrap(fcns ? equiv_fcns_on_bounded(a, t, bound) : equiv_on_bounded(a, t, bound));
  }, py::arg("vpt"), py::arg("h2s"), py::arg("bound") = 8, py::arg("fcns") = false);
  m.def("equiv", [](const H2s& a, const H2s& b, std::size_t bound, bool skip_empty) {
    return wrap(equiv_h2s_on_bounded(a, b, bound, skip_empty));
  }, py::arg("a"), py::arg("b"), py::arg("bound") = 5, py::arg("skip_empty") = false);
  m.def("equiv", [](const Vpt& a, const Vpt& b, std::size_t bound) {
    return wrap(equiv_vpt_on_bounded(a, b, bound));
  }, py::arg("a"), py::arg("b"), py::arg("bound") = 8);

  m.def("lin", [](const std::string& hedge) { return format_word(lin(parse_hedge(hedge))); });
  m.def("hedge_of", [](const std::string& word, const Labels& calls, const Labels& returns) {
    return format_hedge(hedge_of(parse_nested(word, to_set(calls), to_set(returns))));
  }, py::arg("word"), py::arg("calls") = py::tuple(), py::arg("returns") = py::tuple());
  m.def("fcns_word", [](const std::string& word, const Labels& calls, const Labels& returns) {
    return format_word(fcns_word(parse_nested(word, to_set(calls), to_set(returns))));
  }, py::arg("word"), py::arg("calls") = py::tuple(), py::arg("returns") = py::tuple());
  m.def("fcns_inv_word", [](const std::string& word, const Labels& calls, const Labels& returns) {
    return format_word(fcns_inv_word(parse_nested(word, to_set(calls), to_set(returns))));
  }, py::arg("word"), py::arg("calls") = py::tuple(), py::arg("returns") = py::tuple());
  m.def("fcns", [](const std::string& hedge) {
    return format_binary_tree(fcns(parse_hedge(hedge)));
  });

  m.def("enum_hedges", [](const Labels& labels, std::size_t max_nodes) {
    std::vector<std::string> out;
    for (const auto& h : enum_hedges(to_set(labels), max_nodes)) out.push_back(format_hedge(h));
    return out;
  });

  py::class_<WitnessRow>(m, "WitnessRow")
      .def_readonly("n", &WitnessRow::n)
      .def_readonly("height_in", &WitnessRow::height_in)
      .def_readonly("nodes", &WitnessRow::nodes)
      .def_readonly("flat_size", &WitnessRow::flat_size)
      .def_readonly("height_out", &WitnessRow::height_fcns_out)
      .def_readonly("ratio", &WitnessRow::ratio);
  m.def("separation_witness", &separation_witness, py::arg("max_n") = 10);

  m.def("random_vpt", [](std::uint64_t seed, const Labels& calls, const Labels& returns,
                         const Labels& out, bool well_nested) {
    std::mt19937_64 rng(seed);
    return random_vpt(rng, StructuredAlphabet(to_set(calls), to_set(returns)),
                      OutputAlphabet::structured(structured_version(to_set(out))),
                      well_nested ? VptFlavor::well_nested : VptFlavor::general);
  }, py::arg("seed"), py::arg("calls"), py::arg("returns"), py::arg("out"),
        py::arg("well_nested") = false);
  m.def("random_h2s", [](std::uint64_t seed, const Labels& labels, const Labels& out,
                         const std::string& flavor) {
    std::mt19937_64 rng(seed);
    const H2sFlavor f = h2s_flavor(flavor);
    StructuredAlphabet s = structured_version(to_set(out));
    if (f == H2sFlavor::h2b) s = s.with_bottom();
    return random_h2s(rng, to_set(labels), OutputAlphabet::structured(s), f);
  }, py::arg("seed"), py::arg("labels"), py::arg("out"), py::arg("flavor") = "general");
}
