#pragma once
// Left braces with exact table/formula backends and the exhaustive
// structure algorithms (axioms, socle, ideals, simplicity).

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "bracekit/errors.hpp"
#include "bracekit/residue.hpp"
#include "bracekit/rng.hpp"

namespace bracekit {

using json = nlohmann::json;
using Element = std::vector<i64>;

std::string elem_to_string(const Element& a);

// verification budgets; exhaustive below the cap, seeded sampling above
struct Caps {
    i64 exhaustive_cap = 4096;
    i64 ybe_budget = 100000000; // braid-relation triples
    i64 samples = 100000;
    std::uint64_t seed = kDefaultSeed;
};

// finite abelian group Z/m_1 x ... x Z/m_d with mixed-radix ranking,
// most significant coordinate first
struct AdditiveShape {
    std::vector<i64> moduli;

    explicit AdditiveShape(std::vector<i64> ms);
    int dim() const { return static_cast<int>(moduli.size()); }
    std::optional<i64> order() const;               // nullopt on overflow
    i64 order_checked(i64 cap) const;               // throws CapExceeded above cap
    i64 rank(const Element& a) const;
    Element unrank(i64 r) const;
    Element zero() const { return Element(moduli.size(), 0); }
    Element add(const Element& a, const Element& b) const;
    Element sub(const Element& a, const Element& b) const;
    Element neg(const Element& a) const;
    Element random(Rng& rng) const;
    void check(const Element& a) const;             // throws InputError
    bool operator==(const AdditiveShape& o) const { return moduli == o.moduli; }
};

enum class SimplicityCertificate { Unknown, SimpleExhaustive, SimpleByCriterion, NotSimple };
std::string certificate_name(SimplicityCertificate c);

class LeftBrace {
public:
    LeftBrace(AdditiveShape shape, std::string kind, json provenance);
    virtual ~LeftBrace() = default;

    const AdditiveShape& shape() const { return shape_; }
    const std::string& kind() const { return kind_; }
    const json& provenance() const { return provenance_; }
    std::optional<i64> order() const { return shape_.order(); }

    virtual Element lambda(const Element& a, const Element& b) const = 0;
    virtual Element lambda_inv(const Element& a, const Element& b) const = 0;

    Element zero() const { return shape_.zero(); }
    Element add(const Element& a, const Element& b) const { return shape_.add(a, b); }
    Element sub(const Element& a, const Element& b) const { return shape_.sub(a, b); }
    Element neg(const Element& a) const { return shape_.neg(a); }
    Element mul(const Element& a, const Element& b) const;       // a + lambda_a(b)
    Element inv(const Element& a) const;                         // lambda_a^{-1}(-a)

    SimplicityCertificate certificate() const { return certificate_; }
    void set_certificate(SimplicityCertificate c) const { certificate_ = c; }

private:
    AdditiveShape shape_;
    std::string kind_;
    json provenance_;
    mutable SimplicityCertificate certificate_ = SimplicityCertificate::Unknown;
};

class TableBrace : public LeftBrace {
public:
    // lam rows must be permutations of [0, order); the inverse table is derived
    TableBrace(AdditiveShape shape, std::vector<std::vector<std::int32_t>> lam,
               json provenance);

    const std::vector<std::vector<std::int32_t>>& lambda_table() const { return lam_; }
    const std::vector<std::vector<std::int32_t>>& lambda_inv_table() const { return laminv_; }

    Element lambda(const Element& a, const Element& b) const override;
    Element lambda_inv(const Element& a, const Element& b) const override;

private:
    std::vector<std::vector<std::int32_t>> lam_, laminv_;
};

class FormulaBrace : public LeftBrace {
public:
    using Map2 = std::function<Element(const Element&, const Element&)>;
    FormulaBrace(AdditiveShape shape, Map2 lam, Map2 laminv, json provenance);

    Element lambda(const Element& a, const Element& b) const override { return lam_(a, b); }
    Element lambda_inv(const Element& a, const Element& b) const override { return laminv_(a, b); }

private:
    Map2 lam_, laminv_;
};

std::shared_ptr<TableBrace> trivial_brace(const AdditiveShape& shape);

// rank-space view used by the exhaustive algorithms; order must fit the cap
struct DenseView {
    const LeftBrace& B;
    i64 n;
    int d;
    std::vector<Element> elems;
    std::vector<std::int32_t> lam, laminv;   // flat n*n, row = actor
    std::vector<std::int32_t> negt;          // additive negation
    std::vector<std::int32_t> invt;          // multiplicative inverse
    std::vector<i64> gens;                   // ranks of unit vectors (moduli > 1)

    DenseView(const LeftBrace& brace, i64 cap);
    std::int32_t add(i64 i, i64 j) const;
    std::int32_t mul(i64 i, i64 j) const { return add(i, lam[i * n + j]); }
    const std::vector<std::int32_t>& mul_table();   // built lazily, flat n*n

private:
    std::vector<std::int32_t> mult_;
};

struct CheckItem {
    std::string name;
    bool pass = false;
    std::string witness; // empty when passing
};

struct VerifyReport {
    std::vector<CheckItem> items;
    bool exhaustive = true;
    i64 samples = 0;
    std::uint64_t seed = 0;
    bool pass() const;
    json to_json() const;
};

// (i) each lambda_a additive, (ii) bijective with the declared inverse,
// (iii) lambda_{a + lambda_a(b)} = lambda_a . lambda_b, (iv) multiplicative
// group: associativity and two-sided inverses
VerifyReport verify_brace_axioms(const LeftBrace& B, const Caps& caps = {});

// {a : lambda_a = id}, verified to be an ideal before returning
std::vector<Element> socle(const LeftBrace& B, const Caps& caps = {});

// smallest ideal containing gens (mul, inv, conjugation, all lambda images)
std::vector<Element> ideal_closure(const LeftBrace& B, const std::vector<Element>& gens,
                                   const Caps& caps = {});

struct SimplicityResult {
    bool simple = false;
    std::string certificate;        // "exhaustive" or the failure reason
    std::vector<Element> ideal;     // a proper nonzero ideal when not simple
    Element generator;              // generator of that ideal
};
SimplicityResult is_simple(const LeftBrace& B, const Caps& caps = {});

bool is_left_ideal(const LeftBrace& B, const std::vector<Element>& subset,
                   const Caps& caps = {});
bool is_ideal(const LeftBrace& B, const std::vector<Element>& subset,
              const Caps& caps = {});

struct SylowComponent {
    i64 p = 0;
    std::vector<Element> elements;
    bool left_ideal = false;
};
std::vector<SylowComponent> sylow_left_ideals(const LeftBrace& B, const Caps& caps = {});

bool is_brace_isomorphism(const LeftBrace& B1, const LeftBrace& B2,
                          const std::function<Element(const Element&)>& map,
                          const Caps& caps = {});

// materialize any brace as a table brace; axioms are re-verified
std::shared_ptr<TableBrace> tabulate(const LeftBrace& B, const Caps& caps = {});

} // namespace bracekit
