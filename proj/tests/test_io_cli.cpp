#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <string>

#include "bracekit/errors.hpp"
#include "bracekit/io.hpp"

using namespace bracekit;
namespace fs = std::filesystem;

namespace {

// order-8 brace on (Z/2)^3: lambda_(x,mu)(y,mu') = (y, mu' + x1 y2 + x2 y1),
// independently computed ground truth used across this suite
const std::vector<std::vector<std::int32_t>> kLam8 = {
    {0, 1, 2, 3, 4, 5, 6, 7}, {0, 1, 2, 3, 4, 5, 6, 7},
    {0, 1, 2, 3, 5, 4, 7, 6}, {0, 1, 2, 3, 5, 4, 7, 6},
    {0, 1, 3, 2, 4, 5, 7, 6}, {0, 1, 3, 2, 4, 5, 7, 6},
    {0, 1, 3, 2, 5, 4, 6, 7}, {0, 1, 3, 2, 5, 4, 6, 7}};

json spec72_json() {
    return json{{"format", kFormatTag},
                {"kind", "cycle"},
                {"spec", {{"s", 2}, {"primes", json::array({{{"p", 3}}, {{"p", 2}}})}}}};
}

json hegedus8_json() {
    return json{{"p", 2}, {"r", 1}, {"n", 2},
                {"U", json::array({{0, 1}, {0, 0}})},
                {"f", json::array({{1, 0}, {0, 1}})}};
}

// scratch directory shared by the CLI cases, removed at process exit
fs::path scratch_dir() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() /
                     ("bracekit_io_cli_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

fs::path scratch_file(const std::string& name, const std::string& text) {
    fs::path p = scratch_dir() / name;
    write_text_file(p.string(), text);
    return p;
}

struct CliResult {
    int rc = -1;
    std::string out;
};

CliResult run_cli(const std::string& args) {
    const char* bin = std::getenv("BRACEKIT_BIN");
    REQUIRE_MESSAGE(bin != nullptr, "BRACEKIT_BIN must point at the bracekit binary");
    const fs::path out = scratch_dir() / "stdout.txt";
    const std::string cmd = std::string(bin) + " " + args + " > " + out.string() + " 2>&1";
    const int st = std::system(cmd.c_str());
    CliResult r;
    r.rc = WEXITSTATUS(st);
    r.out = read_text_file(out.string());
    return r;
}

} // namespace

TEST_CASE("canonical dump and fnv1a hashing") {
    CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
    CHECK(fnv1a64("abc") == 0xe71fa2190541574bULL);
    CHECK(fnv1a64_hex("abc") == "e71fa2190541574b");
    CHECK(fnv1a64_hex("bracekit/1") == "01d44f21014688e8"); // keeps the leading zero

    const json j{{"b", 1}, {"a", 2}};
    CHECK(canonical_dump(j) == "{\n  \"a\": 2,\n  \"b\": 1\n}\n");
    CHECK(canonical_dump(j) == canonical_dump(json::parse(canonical_dump(j))));
}

TEST_CASE("table brace json roundtrip and field policing") {
    const TableBrace b8(AdditiveShape({2, 2, 2}), kLam8, json{{"construction", "test"}});
    const json j = table_brace_to_json(b8);
    CHECK(j.at("format") == kFormatTag);
    CHECK(j.at("shape") == std::vector<i64>{2, 2, 2});

    auto back = table_brace_from_json(j);
    CHECK(back->lambda_table() == kLam8);
    CHECK(back->shape().moduli == std::vector<i64>{2, 2, 2});
    CHECK(back->provenance().at("construction") == "test");

    json extra = j;
    extra["surplus"] = 1;
    CHECK_THROWS_WITH_AS(table_brace_from_json(extra),
                         doctest::Contains("unknown field"), InputError);

    json unversioned = j;
    unversioned.erase("format");
    CHECK_THROWS_WITH_AS(table_brace_from_json(unversioned),
                         doctest::Contains("missing field"), InputError);

    json wrong = j;
    wrong["format"] = "bracekit/2";
    CHECK_THROWS_WITH_AS(table_brace_from_json(wrong),
                         doctest::Contains("unsupported format"), InputError);

    json broken = j;
    broken["lambda"][0][0] = 3; // row no longer a permutation
    CHECK_THROWS_AS(table_brace_from_json(broken), InputError);
}

TEST_CASE("solution json roundtrip") {
    const TableBrace b8(AdditiveShape({2, 2, 2}), kLam8, json::object());
    const SetSolution sol = canonical_solution(b8);
    const json j = solution_to_json(sol);
    CHECK(j.at("n") == 8);

    const SetSolution back = solution_from_json(j);
    CHECK(back.f == sol.f);
    CHECK(back.g == sol.g);

    json bad = j;
    bad["f"][0][0] = 9; // out of range for n = 8
    CHECK_THROWS_AS(solution_from_json(bad), InputError);

    json extra = j;
    extra["color"] = "blue";
    CHECK_THROWS_WITH_AS(solution_from_json(extra),
                         doctest::Contains("unknown field"), InputError);
}

TEST_CASE("hegedus and cycle specs from json") {
    const HegedusSpec hs = hegedus_spec_from_json(hegedus8_json());
    auto H = build_hegedus(hs);
    CHECK(tabulate(*H)->lambda_table() == kLam8);

    json missing = hegedus8_json();
    missing.erase("U");
    CHECK_THROWS_WITH_AS(hegedus_spec_from_json(missing),
                         doctest::Contains("missing field"), InputError);

    const json cj = spec72_json().at("spec");
    const CycleSpec cs = cycle_spec_from_json(cj);
    CHECK(cs.s() == 2);
    CHECK(cs.primes[0].p == 3);
    CHECK(cs.primes[1].p == 2);
    CHECK(cycle_spec_from_json(cycle_spec_to_json(cs)).primes[0].p == 3);

    json shorted = cj;
    shorted["s"] = 3; // primes list length must match
    CHECK_THROWS_WITH_AS(cycle_spec_from_json(shorted),
                         doctest::Contains("exactly s"), InputError);

    json bad_key = cj;
    bad_key["overrides"] = json{{"x_1", json::array({{1}})}};
    CHECK_THROWS_WITH_AS(cycle_spec_from_json(bad_key),
                         doctest::Contains("bad key"), InputError);

    json bad_idx = cj;
    bad_idx["overrides"] = json{{"c_9", json::array({{1}})}};
    CHECK_THROWS_WITH_AS(cycle_spec_from_json(bad_idx),
                         doctest::Contains("out of range"), InputError);
}

TEST_CASE("build_from_spec dispatch and cap behavior") {
    const Caps caps;

    BuildOutput triv = build_from_spec(
        json{{"kind", "trivial"}, {"spec", {{"shape", json::array({5})}}}}, caps, false);
    CHECK(triv.is_table);
    CHECK(triv.file.at("lambda")[0] == std::vector<std::int32_t>{0, 1, 2, 3, 4});

    BuildOutput cyc = build_from_spec(spec72_json(), caps, false);
    CHECK(cyc.is_table);
    CHECK(cyc.file.at("shape") == std::vector<i64>{3, 3, 2, 2, 2});
    CHECK(cyc.file.at("provenance").at("criterion_simple") == true);

    const json big{{"kind", "cycle"},
                   {"spec", {{"s", 3},
                             {"primes", json::array({{{"p", 3}}, {{"p", 5}}, {{"p", 2}}})}}}};
    CHECK_THROWS_WITH_AS(build_from_spec(big, caps, false),
                         doctest::Contains("--formula"), CapExceeded);
    BuildOutput desc = build_from_spec(big, caps, true);
    CHECK_FALSE(desc.is_table);
    CHECK(desc.file.at("formula").at("order") == 48600);
    CHECK(desc.file.at("formula").at("certificate") == "simple-by-criterion");

    CHECK_THROWS_WITH_AS(
        build_from_spec(json{{"kind", "mystery"}, {"spec", json::object()}}, caps, false),
        doctest::Contains("unknown kind"), InputError);

    // matched and iterated kinds with nested factor specs
    const json tshape2{{"kind", "trivial"}, {"spec", {{"shape", json::array({2})}}}};
    const json tshape3{{"kind", "trivial"}, {"spec", {{"shape", json::array({3})}}}};
    BuildOutput mp = build_from_spec(
        json{{"kind", "matched"},
             {"spec", {{"g", tshape3}, {"h", tshape2},
                       {"alpha", "identity"}, {"beta", "identity"}}}},
        caps, false);
    CHECK(mp.is_table);
    CHECK(mp.brace->shape().order().value() == 6);

    json it{{"kind", "iterated"},
            {"spec", {{"factors", json::array({tshape2, tshape3})}}}};
    CHECK(build_from_spec(it, caps, false).brace->shape().order().value() == 6);

    it["spec"]["actions"] = json::array({{{"from", 1}, {"to", 1}, {"table", json::array()}}});
    CHECK_THROWS_WITH_AS(build_from_spec(it, caps, false),
                         doctest::Contains("bad factor pair"), InputError);
    it["spec"]["actions"] = json::array(
        {{{"from", 1}, {"to", 2}, {"table", json::array()}, {"rule", "internal"}}});
    CHECK_THROWS_WITH_AS(build_from_spec(it, caps, false),
                         doctest::Contains("unknown field"), InputError);
}

TEST_CASE("brace_from_json accepts tables, descriptors, and specs") {
    const Caps caps;
    BuildOutput cyc = build_from_spec(spec72_json(), caps, false);
    CHECK(brace_from_json(cyc.file, caps)->shape().order().value() == 72);
    CHECK(brace_from_json(spec72_json(), caps)->shape().order().value() == 72);

    const json big{{"kind", "cycle"},
                   {"spec", {{"s", 3},
                             {"primes", json::array({{{"p", 3}}, {{"p", 5}}, {{"p", 2}}})}}}};
    const BuildOutput desc = build_from_spec(big, caps, true);
    auto rebuilt = brace_from_json(desc.file, caps);
    CHECK(rebuilt->shape().order().value() == 48600);
    CHECK(rebuilt->certificate() == SimplicityCertificate::SimpleByCriterion);

    CHECK_THROWS_AS(brace_from_json(json{{"format", kFormatTag}}, caps), InputError);
}

TEST_CASE("actions_from_spec exposes the action structure") {
    const Caps caps;
    const IteratedActionsSpec ia = actions_from_spec(spec72_json(), caps);
    CHECK(ia.s() == 2);
    CHECK(action_graph(ia).edges.size() == 2);

    CHECK_THROWS_WITH_AS(
        actions_from_spec(json{{"kind", "trivial"},
                               {"spec", {{"shape", json::array({5})}}}}, caps),
        doctest::Contains("no action structure"), InputError);
}

TEST_CASE("report envelope carries version, hashes, caps, seed") {
    Caps caps;
    caps.seed = 42;
    const json r = report_envelope("check", {{"in.json", fnv1a64_hex("abc")}}, caps);
    CHECK(r.at("format") == kFormatTag);
    CHECK(r.at("version") == kToolVersion);
    CHECK(r.at("command") == "check");
    CHECK(r.at("inputs").at("in.json") == "e71fa2190541574b");
    CHECK(r.at("caps").at("exhaustive_cap") == caps.exhaustive_cap);
    CHECK(r.at("seed") == 42);
}

TEST_CASE("cli: build, check verdicts, and exit codes") {
    const fs::path z4 = scratch_file("z4_spec.json",
        canonical_dump(json{{"format", kFormatTag},
                            {"kind", "trivial"},
                            {"spec", {{"shape", json::array({4})}}}}));
    const fs::path z4_brace = scratch_dir() / "z4_brace.json";

    CHECK(run_cli("build " + z4.string() + " -o " + z4_brace.string()).rc == 0);

    // non-simple verdict: exit 1 with the witness ideal {0, 2}
    const fs::path rep = scratch_dir() / "z4_report.json";
    CliResult chk = run_cli("check " + z4_brace.string() + " --simple -o " + rep.string());
    CHECK(chk.rc == 1);
    const json rj = json::parse(read_text_file(rep.string()));
    CHECK(rj.at("checks").at("simple").at("simple") == false);
    CHECK(rj.at("checks").at("simple").at("ideal") == std::vector<i64>{0, 2});

    CHECK(run_cli("check " + z4_brace.string() + " --axioms").rc == 0);

    // simple 72-element brace: exit 0 under --simple
    const fs::path c72 = scratch_file("c72_spec.json", canonical_dump(spec72_json()));
    const fs::path b72 = scratch_dir() / "b72.json";
    CHECK(run_cli("build " + c72.string() + " -o " + b72.string()).rc == 0);
    CHECK(run_cli("check " + b72.string() + " --simple").rc == 0);

    // graph sufficiency needs simple factors: inapplicable, exit 2
    CHECK(run_cli("check " + c72.string() + " --graph --mode strict-cycle").rc == 2);
}

TEST_CASE("cli: solution and verify round trip") {
    const fs::path z3 = scratch_file("z3_spec.json",
        canonical_dump(json{{"format", kFormatTag},
                            {"kind", "trivial"},
                            {"spec", {{"shape", json::array({3})}}}}));
    const fs::path z3_brace = scratch_dir() / "z3_brace.json";
    const fs::path z3_sol = scratch_dir() / "z3_sol.json";
    const fs::path z3_rep = scratch_dir() / "z3_verify.json";

    CHECK(run_cli("build " + z3.string() + " -o " + z3_brace.string()).rc == 0);
    CHECK(run_cli("solution " + z3_brace.string() + " -o " + z3_sol.string()).rc == 0);

    // the flip solution: both coordinate maps are the identity
    const json sj = json::parse(read_text_file(z3_sol.string()));
    CHECK(sj.at("f")[1] == std::vector<std::int32_t>{0, 1, 2});
    CHECK(sj.at("g")[2] == std::vector<std::int32_t>{0, 1, 2});

    CHECK(run_cli("verify " + z3_sol.string() + " -o " + z3_rep.string()).rc == 0);
    const json vj = json::parse(read_text_file(z3_rep.string()));
    CHECK(vj.at("checks").at("braid").at("pass") == true);
    CHECK(vj.at("checks").at("involutive").at("pass") == true);
    CHECK(vj.at("checks").at("nondegenerate").at("pass") == true);
    CHECK(vj.at("checks").at("permutation_group").at("order") == 1);

    // corrupt one f row: braid and involutivity break, exit 1
    json bad = sj;
    bad["f"][1] = std::vector<std::int32_t>{1, 0, 2};
    const fs::path bad_sol = scratch_file("z3_bad_sol.json", canonical_dump(bad));
    CHECK(run_cli("verify " + bad_sol.string()).rc == 1);
}

TEST_CASE("cli: filter verdicts") {
    CliResult r56 = run_cli("filter 56");
    CHECK(r56.rc == 1);
    CHECK(r56.out.find("normal Sylow") != std::string::npos);

    CHECK(run_cli("filter 53").rc == 0);   // prime order
    CHECK(run_cli("filter 72").rc == 0);   // no obstruction
    CHECK(run_cli("filter 49").rc == 1);   // proper prime power
    CHECK(run_cli("filter 1").rc == 3);    // below the domain
    CHECK(run_cli("filter 1000000000000001").rc == 2); // beyond the filter cap
}

TEST_CASE("cli: byte-identical reruns") {
    const fs::path c72 = scratch_file("det_spec.json", canonical_dump(spec72_json()));
    const fs::path b1 = scratch_dir() / "det_b1.json";
    const fs::path b2 = scratch_dir() / "det_b2.json";
    CHECK(run_cli("build " + c72.string() + " -o " + b1.string()).rc == 0);
    CHECK(run_cli("build " + c72.string() + " -o " + b2.string()).rc == 0);
    CHECK(read_text_file(b1.string()) == read_text_file(b2.string()));

    const fs::path r1 = scratch_dir() / "det_r1.json";
    const fs::path r2 = scratch_dir() / "det_r2.json";
    CHECK(run_cli("check " + b1.string() + " --simple --socle --decompose -o " +
                  r1.string()).rc == 0);
    CHECK(run_cli("check " + b1.string() + " --simple --socle --decompose -o " +
                  r2.string()).rc == 0);
    CHECK(read_text_file(r1.string()) == read_text_file(r2.string()));
}

TEST_CASE("cli: input errors exit 3") {
    CHECK(run_cli("check /nonexistent/never.json --axioms").rc == 3);

    const fs::path garbage = scratch_file("garbage.json", "{not json");
    CHECK(run_cli("check " + garbage.string() + " --axioms").rc == 3);

    const fs::path unknown = scratch_file("unknown_field.json",
        canonical_dump(json{{"format", kFormatTag},
                            {"kind", "trivial"},
                            {"spec", {{"shape", json::array({4})}}},
                            {"typo", 1}}));
    CHECK(run_cli("build " + unknown.string()).rc == 3);

    const fs::path big = scratch_file("big_spec.json",
        canonical_dump(json{{"format", kFormatTag},
                            {"kind", "cycle"},
                            {"spec", {{"s", 3},
                                      {"primes", json::array({{{"p", 3}}, {{"p", 5}},
                                                              {{"p", 2}}})}}}}));
    CHECK(run_cli("build " + big.string()).rc == 2);            // cap without --formula
    CHECK(run_cli("build " + big.string() + " --formula").rc == 0);

    CHECK(run_cli("check " + big.string() + " --graph --mode bogus").rc == 3);
}
