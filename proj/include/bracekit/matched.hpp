#pragma once
// Matched pairs and iterated matched products of left braces, the
// decompose/rebuild isomorphism, and the action-graph simplicity verdict.

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "bracekit/brace.hpp"

namespace bracekit {

// a family of additive automorphisms of a target brace, indexed by the
// elements of an actor brace; required to be a homomorphism from the
// actor's multiplicative group into Aut(target, +)
class ActionFamily {
public:
    virtual ~ActionFamily() = default;
    virtual Element apply(const Element& actor, const Element& x) const = 0;
    virtual Element apply_inv(const Element& actor, const Element& x) const = 0;
    virtual bool structurally_trivial() const = 0; // identity for every actor
    virtual json describe() const = 0;
};

class IdentityAction final : public ActionFamily {
public:
    Element apply(const Element&, const Element& x) const override { return x; }
    Element apply_inv(const Element&, const Element& x) const override { return x; }
    bool structurally_trivial() const override { return true; }
    json describe() const override { return json{{"type", "identity"}}; }
};

// rows indexed by actor rank, each row a permutation of target ranks
class TableAction final : public ActionFamily {
public:
    TableAction(AdditiveShape actor, AdditiveShape target,
                std::vector<std::vector<std::int32_t>> rows);
    Element apply(const Element& actor, const Element& x) const override;
    Element apply_inv(const Element& actor, const Element& x) const override;
    bool structurally_trivial() const override { return trivial_; }
    json describe() const override;
    const std::vector<std::vector<std::int32_t>>& rows() const { return rows_; }

private:
    AdditiveShape actor_, target_;
    std::vector<std::vector<std::int32_t>> rows_, rows_inv_;
    bool trivial_;
};

class RuleAction final : public ActionFamily {
public:
    using Map2 = std::function<Element(const Element&, const Element&)>;
    RuleAction(Map2 fwd, Map2 bwd, bool known_trivial, json description);
    Element apply(const Element& actor, const Element& x) const override {
        return fwd_(actor, x);
    }
    Element apply_inv(const Element& actor, const Element& x) const override {
        return bwd_(actor, x);
    }
    bool structurally_trivial() const override { return trivial_; }
    json describe() const override { return desc_; }

private:
    Map2 fwd_, bwd_;
    bool trivial_;
    json desc_;
};

using BracePtr = std::shared_ptr<const LeftBrace>;
using ActionPtr = std::shared_ptr<const ActionFamily>;

struct MatchedPairSpec {
    BracePtr G, H;
    ActionPtr alpha; // H acting on G
    ActionPtr beta;  // G acting on H
};

// checks: alpha/beta additive, bijective, multiplicative-to-additive
// homomorphisms, and the compatibility identities MP1, MP2
VerifyReport validate_matched_pair(const MatchedPairSpec& spec, const Caps& caps = {});

// brace on G x H; throws InputError when validation fails
std::shared_ptr<FormulaBrace> matched_product(const MatchedPairSpec& spec,
                                              const Caps& caps = {});

struct IteratedActionsSpec {
    std::vector<BracePtr> factors;
    // act[j][i]: factor j acting on factor i; nullptr means identity
    std::vector<std::vector<ActionPtr>> act;

    explicit IteratedActionsSpec(std::vector<BracePtr> fs);
    int s() const { return static_cast<int>(factors.size()); }
    const ActionFamily* action(int j, int i) const;
    Element apply(int j, int i, const Element& actor, const Element& x) const;
    Element apply_inv(int j, int i, const Element& actor, const Element& x) const;
};

// checks: every action is a homomorphism into additive automorphisms,
// plus the iterated compatibility identities IM1 and IM2
VerifyReport validate_iterated(const IteratedActionsSpec& spec, const Caps& caps = {});

// brace on B_1 x ... x B_n with the n-fold twisted lambda; validates first
std::shared_ptr<FormulaBrace> iterated_matched_product(const IteratedActionsSpec& spec,
                                                       const Caps& caps = {});

// same product, but from families of commuting brace automorphisms:
// validates the stronger conditions (codomain in Aut(B,+,.), invariance
// under the other actions, pairwise commuting) which imply IM1/IM2
std::shared_ptr<FormulaBrace> iterated_from_commuting_actions(
    const std::vector<BracePtr>& braces,
    const std::vector<std::vector<ActionPtr>>& actions, const Caps& caps = {});

struct DecomposeResult {
    std::vector<i64> primes;                           // ascending
    std::vector<std::shared_ptr<TableBrace>> components;
    std::shared_ptr<FormulaBrace> rebuilt;
    bool eta_check = false; // (a_1,...,a_n) -> a_1 + ... + a_n is an isomorphism
};
DecomposeResult decompose_and_rebuild(const LeftBrace& B, const Caps& caps = {});

struct ActionGraph {
    int s = 0;
    std::vector<std::pair<int, int>> edges; // (actor, target), 1-indexed
};
ActionGraph action_graph(const IteratedActionsSpec& spec);

enum class GraphVerdict { Simple, NotSimple, Inapplicable };
std::string verdict_name(GraphVerdict v);

struct GraphVerdictResult {
    GraphVerdict verdict = GraphVerdict::Inapplicable;
    std::string reason;
};
// mode "walk-cycle": closed directed walk through all vertices (strong
// connectivity); mode "strict-cycle": Hamiltonian cycle. Absence of the
// cycle is decisive (not-simple); presence proves simplicity only with
// pairwise coprime orders and all factors certified simple.
GraphVerdictResult graph_verdict(const IteratedActionsSpec& spec,
                                 const std::string& mode = "walk-cycle",
                                 const Caps& caps = {});

} // namespace bracekit
