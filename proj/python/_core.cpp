#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "masseykit/cochains.hpp"
#include "masseykit/function_field.hpp"
#include "masseykit/groups.hpp"
#include "masseykit/reports.hpp"

namespace py = pybind11;
namespace mk = masseykit;
using mk::fp_t;

namespace {

// Reports cross the boundary as JSON text; the Python side decodes them.
std::vector<std::string> collect(const std::function<bool(const mk::reports::Sink&)>& run, bool& passed) {
    std::vector<std::string> lines;
    passed = run([&](const mk::reports::Json& j) { lines.push_back(j.dump()); });
    return lines;
}

py::tuple report(const std::function<bool(const mk::reports::Sink&)>& run) {
    bool passed = false;
    std::vector<std::string> lines;
    {
        py::gil_scoped_release release;
        lines = collect(run, passed);
    }
    return py::make_tuple(passed, lines);
}

std::string cochain_op(const std::string& a, const std::optional<std::string>& b) {
    auto ja = mk::reports::Json::parse(a);
    mk::Cochain x = mk::reports::cochain_from_json(ja);
    std::string spec = ja.at("group").get<std::string>();
    if (!b) return mk::reports::cochain_to_json(mk::differential(x), spec).dump();
    auto jb = mk::reports::Json::parse(*b);
    mk::Cochain y = mk::reports::cochain_from_json(jb);
    if (jb.at("group").get<std::string>() != spec) throw std::invalid_argument("cochains on different groups");
    // Both were parsed from the same specifier; rebind y to x's table.
    mk::Cochain y2(x.group(), y.degree(), y.modulus(), y.values());
    return mk::reports::cochain_to_json(mk::cup(x, y2), spec).dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Massey products, Kummer towers and abelian crossed products";

    py::register_exception<mk::ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<mk::InstanceRejected>(m, "InstanceRejected", PyExc_RuntimeError);
    py::register_exception<mk::RetryExhausted>(m, "RetryExhausted", PyExc_RuntimeError);
    m.attr("RNG_NAME") = mk::Rng::kName;

    m.def("group_order", [](const std::string& spec) { return mk::parse_group_spec(spec)->order(); }, py::arg("spec"));
    m.def("group_table", [](const std::string& spec) { return mk::parse_group_spec(spec)->table(); }, py::arg("spec"),
          "Row-major multiplication table.");
    m.def("default_prime", [](const std::string& spec) { return mk::default_prime(spec); }, py::arg("spec"));

    m.def("differential", [](const std::string& c) { return cochain_op(c, std::nullopt); }, py::arg("cochain"));
    m.def("cup", [](const std::string& a, const std::string& b) { return cochain_op(a, b); }, py::arg("a"),
          py::arg("b"));

    m.def(
        "factor",
        [](const std::string& poly, fp_t ell) {
            mk::Factorization f = mk::factor(mk::parse_poly(poly, ell));
            std::vector<std::pair<std::string, unsigned>> out;
            for (const auto& [q, e] : f.factors) out.emplace_back(q.to_string(), e);
            return py::make_tuple(f.unit, out);
        },
        py::arg("poly"), py::arg("ell"), "Unit and sorted monic irreducible factors with multiplicities.");
    m.def(
        "ratfunc", [](const std::string& text, fp_t ell) { return mk::parse_ratfunc(text, ell).to_string(); },
        py::arg("text"), py::arg("ell"), "Canonical form of a rational function.");
    m.def(
        "is_pth_power",
        [](const std::string& text, fp_t ell, fp_t p) { return mk::is_pth_power(mk::parse_ratfunc(text, ell), p); },
        py::arg("text"), py::arg("ell"), py::arg("p"));
    m.def(
        "primitive_root", [](fp_t ell, fp_t p) { return mk::primitive_root(ell, p).value; }, py::arg("ell"),
        py::arg("p"));

    namespace r = mk::reports;
    m.def(
        "cohomology",
        [](const std::string& group, std::optional<fp_t> p, bool basis) {
            return report([&](const r::Sink& s) { return r::cohomology(group, p, basis, s); });
        },
        py::arg("group"), py::arg("p") = py::none(), py::arg("basis") = false);
    m.def(
        "massey_scan",
        [](const std::string& group, std::optional<fp_t> p) {
            return report([&](const r::Sink& s) { return r::massey_scan(group, p, s); });
        },
        py::arg("group"), py::arg("p") = py::none());
    m.def(
        "dwyer_check",
        [](const std::string& group, std::optional<fp_t> p, unsigned samples, std::uint64_t seed) {
            return report([&](const r::Sink& s) { return r::dwyer_check(group, p, samples, seed, s); });
        },
        py::arg("group"), py::arg("p") = py::none(), py::arg("samples") = 100, py::arg("seed") = 0);
    m.def(
        "tower",
        [](fp_t ell, fp_t p, const std::string& b, std::optional<std::string> v, std::uint64_t seed) {
            auto field = mk::PrimeFieldSpec::make(ell, p);
            return report([&](const r::Sink& s) { return r::tower(field, b, v, seed, s); });
        },
        py::arg("ell"), py::arg("p"), py::arg("b") = "t", py::arg("v") = py::none(), py::arg("seed") = 0);
    m.def(
        "crossed",
        [](fp_t ell, fp_t p, const std::string& a2, std::optional<std::string> v2, std::uint64_t seed,
           unsigned associativity, bool center) {
            auto field = mk::PrimeFieldSpec::make(ell, p);
            r::CrossedOptions opts{std::move(v2), associativity, center};
            return report([&](const r::Sink& s) { return r::crossed(field, a2, opts, seed, s); });
        },
        py::arg("ell"), py::arg("p"), py::arg("a2") = "t", py::arg("v2") = py::none(), py::arg("seed") = 0,
        py::arg("associativity") = 100, py::arg("center") = true);
}
