#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ccqbf/ccqbf.hpp"

namespace py = pybind11;
using namespace ccqbf;

namespace {

std::optional<BaseClass> class_arg(const std::optional<std::string>& tag) {
    if (!tag) return std::nullopt;
    return parse_base_class(*tag);
}

py::dict stats_dict(const SolveStats& s) {
    py::dict d;
    d["k"] = s.initial_k;
    d["branch_nodes"] = s.branch_nodes;
    d["leaves"] = s.leaves;
    d["max_depth"] = s.max_depth;
    return d;
}

QbfFormula kernel_formula(const QbfFormula& f) {
    const auto g = partition(f, BaseClass::aff());
    std::vector<AffineEquation> eqs;
    for (const auto& a : g.matrix.tractable) eqs.push_back(std::get<AffineEquation>(a));
    const AffSystem phi1(std::move(eqs), g.prefix);
    QbfFormula out;
    out.base_class = BaseClass::aff();
    if (!eval_qaff(phi1)) {
        out.matrix.tractable.emplace_back(AffineEquation({}, true));
        return out;
    }
    const auto kr = kernelize(g.prefix, phi1, g.matrix.backdoor_vars());
    out.prefix = kr.reduced_prefix;
    for (const auto& e : kr.reduced_system.equations()) out.matrix.tractable.emplace_back(e);
    out.matrix.backdoor = g.matrix.backdoor;
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "QBF evaluation with clause-covering backdoors";

    // later registrations are tried first, so the subclass goes last
    const auto& error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<ParseError>(m, "ParseError", error.ptr());

    py::class_<QbfFormula>(m, "Formula")
        .def_property_readonly("num_vars", [](const QbfFormula& f) { return f.prefix.size(); })
        .def_property_readonly("backdoor_size", &QbfFormula::backdoor_size)
        .def_property_readonly("base_class",
                               [](const QbfFormula& f) -> std::optional<std::string> {
                                   if (!f.base_class) return std::nullopt;
                                   return to_string(*f.base_class);
                               })
        .def_property_readonly("prefix",
                               [](const QbfFormula& f) {
                                   std::vector<std::pair<std::string, std::uint32_t>> out;
                                   for (const auto& e : f.prefix.entries()) {
                                       out.emplace_back(e.quant == Quant::Exists ? "e" : "a", e.var.id);
                                   }
                                   return out;
                               })
        .def("to_qdimacs", [](const QbfFormula& f) { return write_qdimacs(f); })
        .def("__eq__", [](const QbfFormula& a, const QbfFormula& b) { return a == b; })
        .def("__str__", [](const QbfFormula& f) { return to_string(f); })
        .def("__repr__", [](const QbfFormula& f) {
            return "<Formula n=" + std::to_string(f.prefix.size()) + " k=" + std::to_string(f.backdoor_size()) + ">";
        });

    m.def(
        "parse_qdimacs",
        [](const std::string& text, std::optional<std::string> cls) {
            ParseOptions o;
            o.cls = class_arg(cls);
            return parse_qdimacs(text, o);
        },
        py::arg("text"), py::arg("cls") = py::none());

    m.def(
        "solve",
        [](const QbfFormula& f, const std::string& algorithm, std::size_t brute_cap) {
            DispatchOptions o;
            o.algorithm = parse_algorithm(algorithm);
            o.brute_cap = brute_cap;
            Verdict v;
            {
                py::gil_scoped_release release;
                v = dispatch(f, o);
            }
            py::dict d = stats_dict(v.stats);
            d["value"] = v.value;
            d["algorithm"] = to_string(v.algorithm);
            d["cls"] = v.cls ? py::cast(to_string(*v.cls)) : py::none();
            return d;
        },
        py::arg("formula"), py::arg("algorithm") = "auto", py::arg("brute_cap") = kDefaultBruteCap);

    m.def("eval_bruteforce", [](const QbfFormula& f, std::size_t cap) { return eval_bruteforce(f, cap); },
          py::arg("formula"), py::arg("cap") = kDefaultBruteCap);

    m.def(
        "detect",
        [](const QbfFormula& f, const std::string& cls) {
            const auto d = detect_cc_backdoor(all_atoms(f.matrix), parse_base_class(cls));
            std::vector<std::uint32_t> vars;
            for (Var v : d.backdoor_vars) vars.push_back(v.id);
            return vars;
        },
        py::arg("formula"), py::arg("cls"));

    m.def("kernelize", &kernel_formula, py::arg("formula"));

    m.def(
        "strategy",
        [](const QbfFormula& f, std::size_t cap) {
            StrategyOptions o;
            o.cap = cap;
            return to_string(extract_strategy(f, o));
        },
        py::arg("formula"), py::arg("cap") = kDefaultBruteCap);
    m.def("verify_strategy",
          [](const QbfFormula& f, const std::string& tree) { return verify_strategy(f, parse_strategy(tree)); },
          py::arg("formula"), py::arg("tree"));

    m.def(
        "classify",
        [](const std::string& relations, std::optional<int> max_d) {
            const auto gamma = parse_relations(relations).entries;
            int d = 3;
            for (const auto& r : gamma) d = std::max(d, static_cast<int>(r.arity));
            return to_string(classify(gamma, max_d.value_or(d)));
        },
        py::arg("relations"), py::arg("max_d") = py::none());

    m.def(
        "generate",
        [](std::size_t n, std::size_t k, const std::string& cls, std::uint64_t seed, double density,
           double forall_prob) {
            RandomParams p;
            p.n = n;
            p.k = k;
            p.cls = parse_base_class(cls);
            p.density = density;
            p.forall_prob = forall_prob;
            return gen_random(p, seed);
        },
        py::arg("n"), py::arg("k"), py::arg("cls"), py::arg("seed"), py::arg("density") = 1.0,
        py::arg("forall_prob") = 0.4);

    m.def("mis_to_horn", [](const std::string& graph) { return mis_to_horn(parse_graph(graph)); }, py::arg("graph"));
    m.def("mis_to_ihsb_minus", [](const std::string& graph) { return mis_to_ihsb_minus(parse_graph(graph)); },
          py::arg("graph"));
    m.def("has_mis", [](const std::string& graph) { return mis_bruteforce(parse_graph(graph)); }, py::arg("graph"));
    m.def("horn_to_3horn", &horn_to_3horn, py::arg("formula"));
    m.def("dualize", &dualize, py::arg("formula"));
}
