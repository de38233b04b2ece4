#pragma once
// Versioned JSON file formats ("bracekit/1"): brace tables, construction
// specs, formula descriptors, solutions, and report envelopes, with
// canonical serialization and input hashing. All readers reject unknown
// fields.

#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bracekit/brace.hpp"
#include "bracekit/cycle.hpp"
#include "bracekit/hegedus.hpp"
#include "bracekit/matched.hpp"
#include "bracekit/solution.hpp"

namespace bracekit {

inline constexpr const char* kFormatTag = "bracekit/1";
inline constexpr const char* kToolVersion = "1.0.0";

// sorted keys, two-space indent, trailing newline; the byte-identical form
std::string canonical_dump(const json& j);

std::uint64_t fnv1a64(std::string_view bytes);
std::string fnv1a64_hex(std::string_view bytes);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);
json parse_json_text(const std::string& text, const std::string& where);

// requires a top-level "format": "bracekit/1" entry
void check_format(const json& j, const std::string& where);

// {"format","shape","lambda","provenance"}
json table_brace_to_json(const TableBrace& B);
std::shared_ptr<TableBrace> table_brace_from_json(const json& j);

// {"format","n","f","g","provenance"}
json solution_to_json(const SetSolution& sol);
SetSolution solution_from_json(const json& j);

// {"p","r","n","U","f"}: modulus p^r, upper-triangular form matrix U,
// orthogonal matrix f
HegedusSpec hegedus_spec_from_json(const json& j);

// {"s","primes":[{"p","r","rprime"}],"overrides":{"c_<i>":rows}}
CycleSpec cycle_spec_from_json(const json& j);
json cycle_spec_to_json(const CycleSpec& spec);

struct BuildOutput {
    std::shared_ptr<LeftBrace> brace;
    json file;           // table JSON, or formula descriptor above the cap
    bool is_table = false;
};

// {"kind","spec"} with kind in {trivial, hegedus, matched, iterated, cycle};
// factor entries inside matched/iterated specs are nested {"kind","spec"}
// objects. Emits a table when the order fits caps.exhaustive_cap; otherwise
// a formula descriptor when allow_formula is set, else throws CapExceeded.
BuildOutput build_from_spec(const json& j, const Caps& caps, bool allow_formula);

// accepts a table file, a formula descriptor (rebuilt from its embedded
// spec), or a build-spec file
std::shared_ptr<LeftBrace> brace_from_json(const json& j, const Caps& caps);

// action structure for the graph verdict; build-spec files of kind
// cycle, iterated, or matched only
IteratedActionsSpec actions_from_spec(const json& j, const Caps& caps);

json caps_to_json(const Caps& caps);

// {"format","version","command","inputs":{label: fnv1a64 hex},"caps","seed"}
json report_envelope(const std::string& command,
                     const std::vector<std::pair<std::string, std::string>>& inputs,
                     const Caps& caps);

} // namespace bracekit
