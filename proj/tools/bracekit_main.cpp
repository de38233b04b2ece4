// bracekit: build finite left braces, check their structure, and export
// verified set-theoretic Yang-Baxter solutions. JSON in, JSON out.
//
// exit codes: 0 verified true, 1 verified false (with witness),
//             2 inapplicable or cap exceeded, 3 input error

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <iostream>
#include <string>

#include "bracekit/errors.hpp"
#include "bracekit/io.hpp"

using namespace bracekit;

namespace {

void emit(const json& j, const std::string& out_path) {
    const std::string text = canonical_dump(j);
    if (out_path.empty())
        std::cout << text;
    else
        write_text_file(out_path, text);
}

std::vector<i64> sorted_ranks(const LeftBrace& B, const std::vector<Element>& elems) {
    std::vector<i64> ranks;
    ranks.reserve(elems.size());
    for (const Element& e : elems) ranks.push_back(B.shape().rank(e));
    std::sort(ranks.begin(), ranks.end());
    return ranks;
}

struct CheckFlags {
    bool axioms = false;
    bool simple = false;
    bool socle = false;
    bool decompose = false;
    bool graph = false;
};

int run_build(const std::string& spec_path, const std::string& out_path,
              bool formula, const Caps& caps) {
    const std::string text = read_text_file(spec_path);
    const json j = parse_json_text(text, spec_path);
    check_format(j, spec_path);
    BuildOutput out = build_from_spec(j, caps, formula);
    emit(out.file, out_path);
    return 0;
}

int run_check(const std::string& path, const std::string& out_path, CheckFlags flags,
              const std::string& mode, const Caps& caps, bool timing) {
    const std::string text = read_text_file(path);
    const json j = parse_json_text(text, path);
    check_format(j, path);

    if (!flags.axioms && !flags.simple && !flags.socle && !flags.decompose && !flags.graph)
        flags.axioms = true;

    json report = report_envelope("check", {{path, fnv1a64_hex(text)}}, caps);
    json checks = json::object();
    json timing_ms = json::object();
    bool any_false = false;
    bool inapplicable = false;

    auto timed = [&](const char* name, auto&& body) {
        const auto t0 = std::chrono::steady_clock::now();
        body();
        const auto t1 = std::chrono::steady_clock::now();
        if (timing)
            timing_ms[name] =
                std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
    };

    std::shared_ptr<LeftBrace> B;
    if (flags.axioms || flags.simple || flags.socle || flags.decompose)
        B = brace_from_json(j, caps);

    if (flags.axioms)
        timed("axioms", [&] {
            const VerifyReport rep = verify_brace_axioms(*B, caps);
            checks["axioms"] = rep.to_json();
            if (!rep.pass()) any_false = true;
        });
    if (flags.simple)
        timed("simple", [&] {
            const SimplicityResult res = is_simple(*B, caps);
            json s{{"simple", res.simple}, {"certificate", res.certificate}};
            if (!res.simple && !res.ideal.empty()) {
                s["ideal"] = sorted_ranks(*B, res.ideal);
                s["generator"] = B->shape().rank(res.generator);
            }
            checks["simple"] = std::move(s);
            if (!res.simple) any_false = true;
        });
    if (flags.socle)
        timed("socle", [&] {
            const auto ranks = sorted_ranks(*B, socle(*B, caps));
            checks["socle"] = json{{"size", ranks.size()}, {"elements", ranks}};
        });
    if (flags.decompose)
        timed("decompose", [&] {
            const DecomposeResult dr = decompose_and_rebuild(*B, caps);
            std::vector<i64> comp_orders;
            for (const auto& c : dr.components)
                comp_orders.push_back(c->shape().order().value());
            checks["decompose"] = json{{"primes", dr.primes},
                                       {"component_orders", comp_orders},
                                       {"eta_check", dr.eta_check}};
            if (!dr.eta_check) any_false = true;
        });
    if (flags.graph)
        timed("graph", [&] {
            const IteratedActionsSpec ia = actions_from_spec(j, caps);
            const GraphVerdictResult gv = graph_verdict(ia, mode, caps);
            json edges = json::array();
            for (const auto& [actor, target] : action_graph(ia).edges)
                edges.push_back(json::array({actor, target}));
            checks["graph"] = json{{"verdict", verdict_name(gv.verdict)},
                                   {"reason", gv.reason},
                                   {"mode", mode},
                                   {"edges", std::move(edges)}};
            if (gv.verdict == GraphVerdict::NotSimple) any_false = true;
            if (gv.verdict == GraphVerdict::Inapplicable) inapplicable = true;
        });

    report["checks"] = std::move(checks);
    if (timing) report["timing_ms"] = std::move(timing_ms);
    emit(report, out_path);
    return inapplicable ? 2 : (any_false ? 1 : 0);
}

int run_solution(const std::string& path, const std::string& out_path, const Caps& caps) {
    const std::string text = read_text_file(path);
    const json j = parse_json_text(text, path);
    check_format(j, path);
    const auto B = brace_from_json(j, caps);
    emit(solution_to_json(canonical_solution(*B, caps)), out_path);
    return 0;
}

int run_verify(const std::string& path, const std::string& out_path, bool sample,
               const Caps& caps, bool timing) {
    const std::string text = read_text_file(path);
    const json j = parse_json_text(text, path);
    const SetSolution sol = solution_from_json(j);

    json report = report_envelope("verify", {{path, fnv1a64_hex(text)}}, caps);
    json checks = json::object();
    json timing_ms = json::object();

    auto timed = [&](const char* name, auto&& body) {
        const auto t0 = std::chrono::steady_clock::now();
        body();
        const auto t1 = std::chrono::steady_clock::now();
        if (timing)
            timing_ms[name] =
                std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
    };

    bool all_pass = true;
    bool nondeg = false;
    timed("braid", [&] {
        const VerifyReport rep = verify_ybe(sol, caps, sample);
        checks["braid"] = rep.to_json();
        all_pass = all_pass && rep.pass();
    });
    timed("involutive", [&] {
        const VerifyReport rep = verify_involutive(sol);
        checks["involutive"] = rep.to_json();
        all_pass = all_pass && rep.pass();
    });
    timed("nondegenerate", [&] {
        const VerifyReport rep = verify_nondegenerate(sol);
        checks["nondegenerate"] = rep.to_json();
        nondeg = rep.pass();
        all_pass = all_pass && nondeg;
    });
    if (nondeg && sol.n <= caps.exhaustive_cap)
        timed("permutation_group", [&] {
            const PermGroupSummary pg = permutation_group(sol, caps);
            checks["permutation_group"] =
                json{{"order", pg.order}, {"generators", pg.generators}};
        });

    report["checks"] = std::move(checks);
    if (timing) report["timing_ms"] = std::move(timing_ms);
    emit(report, out_path);
    return all_pass ? 0 : 1;
}

int run_filter(i64 n, const std::string& out_path, const Caps& caps) {
    const OrderFilterResult res = order_filters(n);
    json report = report_envelope("filter", {{"N", fnv1a64_hex(std::to_string(n))}}, caps);
    report["filter"] = json{{"n", n},
                            {"verdict", res.possible() ? "possible" : "impossible"},
                            {"reason", res.reason}};
    emit(report, out_path);
    return res.possible() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"bracekit: exact-arithmetic toolkit for finite left braces and "
                 "set-theoretic Yang-Baxter solutions"};
    app.require_subcommand(1);
    app.set_version_flag("-V,--version", std::string(kToolVersion));

    Caps caps;
    bool timing = false;
    std::string out_path;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--cap", caps.exhaustive_cap,
                        "largest order handled exhaustively / as a table");
        sub->add_option("--seed", caps.seed, "seed for sampled verification");
        sub->add_option("--samples", caps.samples, "sample count above the cap");
        sub->add_flag("--timing", timing, "include elapsed milliseconds in reports");
        sub->add_option("-o,--out", out_path, "output file (default: stdout)");
    };

    std::string spec_path, brace_path, solution_path;
    bool formula = false;
    CheckFlags flags;
    std::string mode = "walk-cycle";
    bool sample = false;
    i64 filter_n = 0;

    CLI::App* build = app.add_subcommand("build", "construct a brace from a spec file");
    build->add_option("spec", spec_path, "build-spec JSON file")->required();
    build->add_flag("--formula", formula,
                    "allow a formula descriptor when the order exceeds the cap");
    add_common(build);

    CLI::App* check = app.add_subcommand("check", "verify properties of a brace file");
    check->add_option("input", brace_path, "brace table, descriptor, or spec file")
        ->required();
    check->add_flag("--axioms", flags.axioms, "verify the brace axioms (default)");
    check->add_flag("--simple", flags.simple, "decide simplicity by ideal closure");
    check->add_flag("--socle", flags.socle, "list the socle");
    check->add_flag("--decompose", flags.decompose,
                    "split into Sylow components and rebuild");
    check->add_flag("--graph", flags.graph,
                    "action-graph simplicity verdict (spec files only)");
    check->add_option("--mode", mode, "cycle notion for --graph")
        ->check(CLI::IsMember({"walk-cycle", "strict-cycle"}));
    add_common(check);

    CLI::App* solution =
        app.add_subcommand("solution", "export the canonical Yang-Baxter solution");
    solution->add_option("input", brace_path, "brace table, descriptor, or spec file")
        ->required();
    add_common(solution);

    CLI::App* verify = app.add_subcommand("verify", "verify a solution file");
    verify->add_option("input", solution_path, "solution JSON file")->required();
    verify->add_flag("--sample", sample,
                     "sample the braid check when n^3 exceeds the budget");
    add_common(verify);

    CLI::App* filter =
        app.add_subcommand("filter", "necessary conditions on a simple-brace order");
    filter->add_option("N", filter_n, "candidate order")->required();
    add_common(filter);

    int rc = 0;
    build->callback([&] { rc = run_build(spec_path, out_path, formula, caps); });
    check->callback([&] { rc = run_check(brace_path, out_path, flags, mode, caps, timing); });
    solution->callback([&] { rc = run_solution(brace_path, out_path, caps); });
    verify->callback([&] { rc = run_verify(solution_path, out_path, sample, caps, timing); });
    filter->callback([&] { rc = run_filter(filter_n, out_path, caps); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 3;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 3;
    } catch (const CapExceeded& e) {
        std::cerr << "cap exceeded: " << e.what() << "\n";
        return 2;
    } catch (const Undecided& e) {
        std::cerr << "undecided: " << e.what() << "\n";
        return 2;
    } catch (const ArithmeticError& e) {
        std::cerr << "arithmetic error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return rc;
}
