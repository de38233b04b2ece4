#include "bracekit/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "bracekit/errors.hpp"

namespace bracekit {

namespace {

void expect_object(const json& j, const std::string& where) {
    if (!j.is_object())
        throw InputError(where + ": expected a JSON object");
}

void require_keys(const json& j, const std::vector<std::string>& required,
                  const std::vector<std::string>& optional, const std::string& where) {
    expect_object(j, where);
    for (const auto& key : required)
        if (!j.contains(key))
            throw InputError(where + ": missing field \"" + key + "\"");
    for (const auto& [key, value] : j.items()) {
        (void)value;
        bool known = false;
        for (const auto& r : required)
            if (key == r) { known = true; break; }
        for (const auto& o : optional)
            if (key == o) { known = true; break; }
        if (!known)
            throw InputError(where + ": unknown field \"" + key + "\"");
    }
}

i64 get_i64(const json& j, const char* key, const std::string& where) {
    const json& v = j.at(key);
    if (!v.is_number_integer())
        throw InputError(where + ": field \"" + key + "\" must be an integer");
    return v.get<i64>();
}

int get_int(const json& j, const char* key, const std::string& where) {
    const i64 v = get_i64(j, key, where);
    if (v < INT32_MIN || v > INT32_MAX)
        throw InputError(where + ": field \"" + key + "\" out of int range");
    return static_cast<int>(v);
}

std::vector<i64> as_i64_list(const json& a, const std::string& where) {
    if (!a.is_array())
        throw InputError(where + ": expected an array of integers");
    std::vector<i64> out;
    out.reserve(a.size());
    for (const json& v : a) {
        if (!v.is_number_integer())
            throw InputError(where + ": expected integer entries");
        out.push_back(v.get<i64>());
    }
    return out;
}

std::vector<std::vector<i64>> as_i64_matrix(const json& a, const std::string& where) {
    if (!a.is_array() || a.empty())
        throw InputError(where + ": expected a non-empty array of rows");
    std::vector<std::vector<i64>> out;
    out.reserve(a.size());
    for (const json& row : a) out.push_back(as_i64_list(row, where));
    return out;
}

std::vector<std::vector<std::int32_t>> as_table(const json& a, const std::string& where) {
    std::vector<std::vector<std::int32_t>> out;
    for (const auto& row : as_i64_matrix(a, where)) {
        std::vector<std::int32_t> r;
        r.reserve(row.size());
        for (i64 v : row) {
            if (v < 0 || v > INT32_MAX)
                throw InputError(where + ": table entry " + std::to_string(v) +
                                 " out of range");
            r.push_back(static_cast<std::int32_t>(v));
        }
        out.push_back(std::move(r));
    }
    return out;
}

std::shared_ptr<const ActionFamily> action_from_json(const json& a,
                                                     const AdditiveShape& actor,
                                                     const AdditiveShape& target,
                                                     const std::string& where) {
    if (a.is_string() && a.get<std::string>() == "identity")
        return std::make_shared<IdentityAction>();
    if (a.is_array())
        return std::make_shared<TableAction>(actor, target, as_table(a, where));
    throw InputError(where + ": expected \"identity\" or an array of rows");
}

MatchedPairSpec matched_pair_from_json(const json& spec, const Caps& caps) {
    require_keys(spec, {"g", "h", "alpha", "beta"}, {}, "matched spec");
    MatchedPairSpec mp;
    mp.G = build_from_spec(spec.at("g"), caps, false).brace;
    mp.H = build_from_spec(spec.at("h"), caps, false).brace;
    mp.alpha = action_from_json(spec.at("alpha"), mp.H->shape(), mp.G->shape(),
                                "matched spec alpha");
    mp.beta = action_from_json(spec.at("beta"), mp.G->shape(), mp.H->shape(),
                               "matched spec beta");
    return mp;
}

IteratedActionsSpec iterated_spec_from_json(const json& spec, const Caps& caps) {
    require_keys(spec, {"factors"}, {"actions"}, "iterated spec");
    const json& farr = spec.at("factors");
    if (!farr.is_array() || farr.size() < 2)
        throw InputError("iterated spec: \"factors\" must list at least two entries");
    std::vector<BracePtr> factors;
    for (const json& f : farr)
        factors.push_back(build_from_spec(f, caps, false).brace);

    IteratedActionsSpec ia(std::move(factors));
    if (!spec.contains("actions")) return ia;

    const json& aarr = spec.at("actions");
    if (!aarr.is_array())
        throw InputError("iterated spec: \"actions\" must be an array");
    std::set<std::pair<int, int>> seen;
    for (const json& entry : aarr) {
        require_keys(entry, {"from", "to", "table"}, {}, "iterated action");
        const int from = get_int(entry, "from", "iterated action");
        const int to = get_int(entry, "to", "iterated action");
        if (from < 1 || from > ia.s() || to < 1 || to > ia.s() || from == to)
            throw InputError("iterated action: bad factor pair (" +
                             std::to_string(from) + ", " + std::to_string(to) + ")");
        if (!seen.emplace(from, to).second)
            throw InputError("iterated action: duplicate pair (" +
                             std::to_string(from) + ", " + std::to_string(to) + ")");
        ia.act[static_cast<std::size_t>(from - 1)][static_cast<std::size_t>(to - 1)] =
            std::make_shared<TableAction>(ia.factors[static_cast<std::size_t>(from - 1)]->shape(),
                                          ia.factors[static_cast<std::size_t>(to - 1)]->shape(),
                                          as_table(entry.at("table"), "iterated action table"));
    }
    return ia;
}

json formula_descriptor(const std::string& kind, const json& spec,
                        const LeftBrace& B) {
    const auto ord = B.order();
    json desc{{"kind", kind},
              {"spec", spec},
              {"shape", B.shape().moduli},
              {"order", ord ? json(*ord) : json(nullptr)},
              {"certificate", certificate_name(B.certificate())},
              {"provenance", B.provenance()}};
    return json{{"format", kFormatTag}, {"formula", std::move(desc)}};
}

} // namespace

std::string canonical_dump(const json& j) { return j.dump(2) + "\n"; }

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string fnv1a64_hex(std::string_view bytes) {
    static const char* digits = "0123456789abcdef";
    std::uint64_t h = fnv1a64(bytes);
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[h & 0xF];
        h >>= 4;
    }
    return out;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write file: " + path);
    out << text;
    if (!out) throw InputError("write failed: " + path);
}

json parse_json_text(const std::string& text, const std::string& where) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(where + ": JSON parse error: " + e.what());
    }
}

void check_format(const json& j, const std::string& where) {
    expect_object(j, where);
    if (!j.contains("format"))
        throw InputError(where + ": missing field \"format\"");
    if (!j.at("format").is_string() || j.at("format").get<std::string>() != kFormatTag)
        throw InputError(where + ": unsupported format, expected \"" +
                         std::string(kFormatTag) + "\"");
}

json table_brace_to_json(const TableBrace& B) {
    return json{{"format", kFormatTag},
                {"shape", B.shape().moduli},
                {"lambda", B.lambda_table()},
                {"provenance", B.provenance()}};
}

std::shared_ptr<TableBrace> table_brace_from_json(const json& j) {
    require_keys(j, {"format", "shape", "lambda"}, {"provenance"}, "brace table");
    check_format(j, "brace table");
    AdditiveShape shape(as_i64_list(j.at("shape"), "brace table shape"));
    auto lam = as_table(j.at("lambda"), "brace table lambda");
    json prov = j.contains("provenance") ? j.at("provenance") : json::object();
    return std::make_shared<TableBrace>(std::move(shape), std::move(lam), std::move(prov));
}

json solution_to_json(const SetSolution& sol) {
    return json{{"format", kFormatTag},
                {"n", sol.n},
                {"f", sol.f},
                {"g", sol.g},
                {"provenance", sol.provenance}};
}

SetSolution solution_from_json(const json& j) {
    require_keys(j, {"format", "n", "f", "g"}, {"provenance"}, "solution");
    check_format(j, "solution");
    SetSolution sol;
    sol.n = get_int(j, "n", "solution");
    sol.f = as_table(j.at("f"), "solution f");
    sol.g = as_table(j.at("g"), "solution g");
    sol.provenance = j.contains("provenance") ? j.at("provenance") : json::object();
    sol.validate();
    return sol;
}

HegedusSpec hegedus_spec_from_json(const json& j) {
    require_keys(j, {"p", "r", "n", "U", "f"}, {}, "hegedus spec");
    const Modulus mod(get_i64(j, "p", "hegedus spec"), get_int(j, "r", "hegedus spec"));
    const int n = get_int(j, "n", "hegedus spec");
    QForm Q(mod, Mat(mod, as_i64_matrix(j.at("U"), "hegedus spec U")));
    Mat f(mod, as_i64_matrix(j.at("f"), "hegedus spec f"));
    return HegedusSpec(mod, n, std::move(Q), std::move(f));
}

CycleSpec cycle_spec_from_json(const json& j) {
    require_keys(j, {"s", "primes"}, {"overrides"}, "cycle spec");
    const int s = get_int(j, "s", "cycle spec");
    const json& parr = j.at("primes");
    if (!parr.is_array() || static_cast<int>(parr.size()) != s)
        throw InputError("cycle spec: \"primes\" must list exactly s = " +
                         std::to_string(s) + " entries");
    CycleSpec spec;
    for (const json& pj : parr) {
        require_keys(pj, {"p"}, {"r", "rprime"}, "cycle prime");
        CyclePrime cp;
        cp.p = get_i64(pj, "p", "cycle prime");
        cp.r = pj.contains("r") ? get_int(pj, "r", "cycle prime") : 1;
        cp.rprime = pj.contains("rprime") ? get_int(pj, "rprime", "cycle prime") : 0;
        spec.primes.push_back(cp);
    }
    if (j.contains("overrides")) {
        const json& over = j.at("overrides");
        expect_object(over, "cycle spec overrides");
        for (const auto& [key, rows] : over.items()) {
            if (key.size() < 3 || key.compare(0, 2, "c_") != 0 ||
                key.find_first_not_of("0123456789", 2) != std::string::npos)
                throw InputError("cycle spec overrides: bad key \"" + key +
                                 "\", expected \"c_<index>\"");
            const int idx = std::stoi(key.substr(2));
            if (idx < 1 || idx > s)
                throw InputError("cycle spec overrides: index " + std::to_string(idx) +
                                 " out of range");
            const CyclePrime& cp = spec.primes[static_cast<std::size_t>(idx - 1)];
            spec.overrides.emplace(idx, Mat(Modulus(cp.p, cp.r),
                                            as_i64_matrix(rows, "cycle override " + key)));
        }
    }
    spec.validate();
    return spec;
}

json cycle_spec_to_json(const CycleSpec& spec) {
    json parr = json::array();
    for (const CyclePrime& cp : spec.primes)
        parr.push_back(json{{"p", cp.p}, {"r", cp.r}, {"rprime", cp.rprime}});
    json out{{"s", spec.s()}, {"primes", std::move(parr)}};
    if (!spec.overrides.empty()) {
        json over = json::object();
        for (const auto& [idx, M] : spec.overrides)
            over["c_" + std::to_string(idx)] = M.rows();
        out["overrides"] = std::move(over);
    }
    return out;
}

BuildOutput build_from_spec(const json& j, const Caps& caps, bool allow_formula) {
    require_keys(j, {"kind", "spec"}, {"format"}, "build spec");
    if (j.contains("format")) check_format(j, "build spec");
    if (!j.at("kind").is_string())
        throw InputError("build spec: \"kind\" must be a string");
    const std::string kind = j.at("kind").get<std::string>();
    const json& spec = j.at("spec");

    std::shared_ptr<LeftBrace> B;
    if (kind == "trivial") {
        require_keys(spec, {"shape"}, {}, "trivial spec");
        B = trivial_brace(AdditiveShape(as_i64_list(spec.at("shape"), "trivial spec shape")));
    } else if (kind == "hegedus") {
        B = build_hegedus(hegedus_spec_from_json(spec));
    } else if (kind == "cycle") {
        B = build_cycle_brace(cycle_spec_from_json(spec), caps);
    } else if (kind == "matched") {
        B = matched_product(matched_pair_from_json(spec, caps), caps);
    } else if (kind == "iterated") {
        B = iterated_matched_product(iterated_spec_from_json(spec, caps), caps);
    } else {
        throw InputError("build spec: unknown kind \"" + kind +
                         "\"; expected trivial, hegedus, matched, iterated, or cycle");
    }

    BuildOutput out;
    const auto ord = B->order();
    if (ord && *ord <= caps.exhaustive_cap) {
        auto tab = std::dynamic_pointer_cast<TableBrace>(B);
        if (!tab) {
            tab = tabulate(*B, caps);
            tab->set_certificate(B->certificate());
        }
        out.brace = tab;
        out.file = table_brace_to_json(*tab);
        out.is_table = true;
        return out;
    }
    if (!allow_formula)
        throw CapExceeded("order " + (ord ? std::to_string(*ord) : std::string("overflow")) +
                          " exceeds the table cap " + std::to_string(caps.exhaustive_cap) +
                          "; rerun with --formula for a descriptor output");
    out.brace = B;
    out.file = formula_descriptor(kind, spec, *B);
    return out;
}

std::shared_ptr<LeftBrace> brace_from_json(const json& j, const Caps& caps) {
    expect_object(j, "brace file");
    if (j.contains("lambda")) return table_brace_from_json(j);
    if (j.contains("formula")) {
        require_keys(j, {"format", "formula"}, {}, "formula descriptor");
        check_format(j, "formula descriptor");
        const json& desc = j.at("formula");
        require_keys(desc, {"kind", "spec", "shape", "order", "certificate", "provenance"},
                     {}, "formula descriptor");
        json build{{"kind", desc.at("kind")}, {"spec", desc.at("spec")}};
        return build_from_spec(build, caps, true).brace;
    }
    if (j.contains("kind")) return build_from_spec(j, caps, true).brace;
    throw InputError("brace file: expected a table, a formula descriptor, or a build spec");
}

IteratedActionsSpec actions_from_spec(const json& j, const Caps& caps) {
    require_keys(j, {"kind", "spec"}, {"format"}, "build spec");
    if (j.contains("format")) check_format(j, "build spec");
    const std::string kind = j.at("kind").get<std::string>();
    const json& spec = j.at("spec");
    if (kind == "cycle") return build_actions(cycle_spec_from_json(spec));
    if (kind == "iterated") return iterated_spec_from_json(spec, caps);
    if (kind == "matched") {
        MatchedPairSpec mp = matched_pair_from_json(spec, caps);
        IteratedActionsSpec ia({mp.G, mp.H});
        ia.act[1][0] = mp.alpha;
        ia.act[0][1] = mp.beta;
        return ia;
    }
    throw InputError("kind \"" + kind +
                     "\" has no action structure; expected cycle, iterated, or matched");
}

json caps_to_json(const Caps& caps) {
    return json{{"exhaustive_cap", caps.exhaustive_cap},
                {"ybe_budget", caps.ybe_budget},
                {"samples", caps.samples}};
}

json report_envelope(const std::string& command,
                     const std::vector<std::pair<std::string, std::string>>& inputs,
                     const Caps& caps) {
    json in = json::object();
    for (const auto& [label, hex] : inputs) in[label] = hex;
    return json{{"format", kFormatTag},
                {"version", kToolVersion},
                {"command", command},
                {"inputs", std::move(in)},
                {"caps", caps_to_json(caps)},
                {"seed", caps.seed}};
}

} // namespace bracekit
