// Python bindings. Structured data crosses the boundary as plain dicts and
// lists (converted through JSON), so the Python side never sees C++ types.

#include <pybind11/pybind11.h>

#include "bracekit/brace.hpp"
#include "bracekit/cycle.hpp"
#include "bracekit/errors.hpp"
#include "bracekit/io.hpp"
#include "bracekit/matched.hpp"
#include "bracekit/solution.hpp"

namespace py = pybind11;
using namespace bracekit;

namespace {

py::object to_py(const json& j) {
    return py::module_::import("json").attr("loads")(j.dump());
}

json from_py(const py::handle& obj) {
    const auto text =
        py::module_::import("json").attr("dumps")(obj).cast<std::string>();
    return json::parse(text);
}

Caps make_caps(i64 cap, i64 ybe_budget, i64 samples, std::uint64_t seed) {
    Caps c;
    c.exhaustive_cap = cap;
    c.ybe_budget = ybe_budget;
    c.samples = samples;
    c.seed = seed;
    return c;
}

const Caps defaults;

std::vector<i64> ranks_of(const LeftBrace& B, const std::vector<Element>& es) {
    std::vector<i64> out;
    out.reserve(es.size());
    for (const Element& e : es) out.push_back(B.shape().rank(e));
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

PYBIND11_MODULE(bracekit, m) {
    m.doc() = "Exact tools for finite left braces and set-theoretic "
              "Yang-Baxter solutions";
    m.attr("__version__") = kToolVersion;

    py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
    py::register_exception<ArithmeticError>(m, "ComputeError", PyExc_ValueError);
    py::register_exception<CapExceeded>(m, "CapExceeded", PyExc_RuntimeError);
    py::register_exception<Undecided>(m, "Undecided", PyExc_RuntimeError);

    m.def(
        "build",
        [](const py::handle& spec, bool formula, i64 cap) {
            const json j = from_py(spec);
            check_format(j, "build spec");
            return to_py(build_from_spec(j, make_caps(cap, 0, 0, kDefaultSeed),
                                         formula)
                             .file);
        },
        py::arg("spec"), py::arg("formula") = false,
        py::arg("cap") = defaults.exhaustive_cap,
        "Build a brace from a build-spec dict; returns the table (or, with "
        "formula=True past the cap, a descriptor) as a dict");

    m.def(
        "check_axioms",
        [](const py::handle& brace, i64 cap, i64 samples, std::uint64_t seed) {
            const Caps caps = make_caps(cap, defaults.ybe_budget, samples, seed);
            auto B = brace_from_json(from_py(brace), caps);
            return to_py(verify_brace_axioms(*B, caps).to_json());
        },
        py::arg("brace"), py::arg("cap") = defaults.exhaustive_cap,
        py::arg("samples") = defaults.samples,
        py::arg("seed") = kDefaultSeed,
        "Verify the brace axioms; exhaustive up to cap, seeded sampling past it");

    m.def(
        "simple",
        [](const py::handle& brace, i64 cap) {
            const Caps caps = make_caps(cap, defaults.ybe_budget,
                                        defaults.samples, kDefaultSeed);
            auto B = brace_from_json(from_py(brace), caps);
            const SimplicityResult r = is_simple(*B, caps);
            json out{{"simple", r.simple}, {"certificate", r.certificate}};
            if (!r.simple && !r.ideal.empty()) {
                out["ideal"] = ranks_of(*B, r.ideal);
                out["generator"] = B->shape().rank(r.generator);
            }
            return to_py(out);
        },
        py::arg("brace"), py::arg("cap") = defaults.exhaustive_cap,
        "Exhaustive simplicity decision with a certificate; when not simple, "
        "a proper ideal is returned as sorted element ranks");

    m.def(
        "socle",
        [](const py::handle& brace, i64 cap) {
            const Caps caps = make_caps(cap, defaults.ybe_budget,
                                        defaults.samples, kDefaultSeed);
            auto B = brace_from_json(from_py(brace), caps);
            return to_py(json(ranks_of(*B, bracekit::socle(*B, caps))));
        },
        py::arg("brace"), py::arg("cap") = defaults.exhaustive_cap,
        "Element ranks of the socle {a : lambda_a = id}");

    m.def(
        "decompose",
        [](const py::handle& brace, i64 cap) {
            const Caps caps = make_caps(cap, defaults.ybe_budget,
                                        defaults.samples, kDefaultSeed);
            auto B = brace_from_json(from_py(brace), caps);
            const DecomposeResult d = decompose_and_rebuild(*B, caps);
            json orders = json::array();
            for (const auto& comp : d.components)
                orders.push_back(comp->shape().order().value());
            return to_py(json{{"primes", d.primes},
                              {"component_orders", orders},
                              {"eta_check", d.eta_check}});
        },
        py::arg("brace"), py::arg("cap") = defaults.exhaustive_cap,
        "Split into Sylow left ideals and check the product map is an "
        "isomorphism onto the original brace");

    m.def(
        "solution",
        [](const py::handle& brace, i64 cap) {
            const Caps caps = make_caps(cap, defaults.ybe_budget,
                                        defaults.samples, kDefaultSeed);
            auto B = brace_from_json(from_py(brace), caps);
            return to_py(solution_to_json(canonical_solution(*B, caps)));
        },
        py::arg("brace"), py::arg("cap") = defaults.exhaustive_cap,
        "Canonical involutive non-degenerate solution attached to a brace");

    m.def(
        "verify_solution",
        [](const py::handle& solution, bool sample, i64 cap, i64 ybe_budget,
           i64 samples, std::uint64_t seed) {
            const Caps caps = make_caps(cap, ybe_budget, samples, seed);
            const SetSolution sol = solution_from_json(from_py(solution));
            json out{{"braid", verify_ybe(sol, caps, sample).to_json()},
                     {"involutive", verify_involutive(sol).to_json()},
                     {"nondegenerate", verify_nondegenerate(sol).to_json()}};
            if (out["nondegenerate"]["pass"].get<bool>() && sol.n <= caps.exhaustive_cap) {
                const PermGroupSummary pg = permutation_group(sol, caps);
                out["permutation_group"] =
                    json{{"order", pg.order}, {"generators", pg.generators}};
            }
            return to_py(out);
        },
        py::arg("solution"), py::arg("sample") = false,
        py::arg("cap") = defaults.exhaustive_cap,
        py::arg("ybe_budget") = defaults.ybe_budget,
        py::arg("samples") = defaults.samples, py::arg("seed") = kDefaultSeed,
        "Braid relation, involutivity, non-degeneracy, and the permutation "
        "group of a solution dict");

    m.def(
        "order_filters",
        [](i64 N) {
            const OrderFilterResult r = order_filters(N);
            return to_py(json{{"possible", r.possible()}, {"reason", r.reason}});
        },
        py::arg("N"),
        "Necessary-condition filters for a simple brace of order N");

    m.def(
        "canonical_hash",
        [](const py::handle& obj) { return fnv1a64_hex(canonical_dump(from_py(obj))); },
        py::arg("obj"),
        "FNV-1a 64 hex digest of the canonical dump, as used in report inputs");
}
