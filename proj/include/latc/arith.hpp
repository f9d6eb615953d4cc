#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

// Symbolic natural arithmetic over {0, S, +, *, min, max} with size
// variables. Sizes and latency bounds live here; the typer compares them
// only through the conservative prover below.
namespace latc::arith {

using Nat = boost::multiprecision::cpp_int;

enum class ArithKind { Lit, Var, Succ, Add, Mul, Min, Max };

struct ArithTerm;
using ArithPtr = std::shared_ptr<const ArithTerm>;

// Immutable tree. Lit subsumes Zero; decimal literals are sugar for
// Succ-chains and get folded back into literals by normalization.
struct ArithTerm {
    ArithKind kind;
    Nat lit;          // Lit
    std::string var;  // Var
    ArithPtr lhs, rhs;
};

ArithPtr lit(Nat n);
ArithPtr zero();
ArithPtr variable(std::string name);
ArithPtr succ(ArithPtr a);
ArithPtr add(ArithPtr a, ArithPtr b);
ArithPtr mul(ArithPtr a, ArithPtr b);
ArithPtr amin(ArithPtr a, ArithPtr b);
ArithPtr amax(ArithPtr a, ArithPtr b);

bool same_term(const ArithPtr& a, const ArithPtr& b);
std::string to_string(const ArithPtr& a);
std::set<std::string> free_vars(const ArithPtr& a);
ArithPtr substitute(const ArithPtr& a, const std::string& x, const ArithPtr& b);

using Assignment = std::map<std::string, Nat>;

struct MissingVariable : std::runtime_error {
    explicit MissingVariable(const std::string& name)
        : std::runtime_error("assignment missing variable: " + name) {}
};

// Ground-truth evaluation; the oracle everything else is tested against.
Nat denote(const ArithPtr& a, const Assignment& sigma);

// ---------------------------------------------------------------------------
// Normal forms: max over min-sets over polynomials.
//
// + and * distribute over min and max on the naturals, and min/max
// distribute over each other, so every term flattens into this two-layer
// shape. Within each layer, dominated alternatives are dropped and the
// rest sorted, which makes equal denotations collide syntactically for
// the fragment the typer exercises.

struct Monomial {
    std::vector<std::string> vars;  // sorted multiset
    auto operator<=>(const Monomial&) const = default;
};

struct Polynomial {
    std::map<Monomial, Nat> coeffs;  // no zero coefficients stored

    bool operator==(const Polynomial&) const = default;
    bool operator<(const Polynomial& o) const;

    bool is_zero() const { return coeffs.empty(); }
    static Polynomial constant(Nat n);
    static Polynomial var(const std::string& name);
    Polynomial plus(const Polynomial& o) const;
    Polynomial times(const Polynomial& o) const;
    Polynomial scaled(const Nat& k) const;
    // true iff every coefficient of *this is <= the matching one in o
    bool dominated_by(const Polynomial& o) const;
    // exact difference o = *this + r; nullopt if any coefficient would go negative
    std::optional<Polynomial> minus(const Polynomial& o) const;
};

struct MinSet {
    std::vector<Polynomial> alts;  // minimum over these; sorted, minimal elements only
    bool operator==(const MinSet&) const = default;
    bool operator<(const MinSet& o) const;
};

struct NormalForm {
    std::vector<MinSet> alts;  // maximum over these; sorted, maximal elements only
    bool operator==(const NormalForm&) const = default;

    bool is_polynomial() const { return alts.size() == 1 && alts[0].alts.size() == 1; }
    const Polynomial& polynomial() const { return alts[0].alts[0]; }
    static NormalForm of_poly(Polynomial p);
};

NormalForm normalize(const ArithPtr& a);
ArithPtr embed(const NormalForm& nf);
// embed(normalize(a)); canonical representative of a's equivalence class
ArithPtr simplify(const ArithPtr& a);

// ---------------------------------------------------------------------------
// Assumptions and the conservative prover.

enum class TriState { Proved, Disproved, Unknown };

struct Constraint {
    enum class Kind { Eq, Leq };
    Kind kind;
    ArithPtr lhs, rhs;

    static Constraint eq(ArithPtr a, ArithPtr b) { return {Kind::Eq, std::move(a), std::move(b)}; }
    static Constraint leq(ArithPtr a, ArithPtr b) { return {Kind::Leq, std::move(a), std::move(b)}; }
};

using AssumptionSet = std::vector<Constraint>;

std::string to_string(const Constraint& c);

// Proved/Disproved are sound; Unknown carries no claim. Equality is decided
// by normal-form identity after rewriting with the assumption equalities
// (each oriented toward the smaller normal form, capped at 64 steps).
TriState prove_eq(const AssumptionSet& phi, const ArithPtr& a, const ArithPtr& b);

// Sound rule set: monomial-wise domination, the min/max lattice rules,
// transitive chaining through the assumptions, and the +/* congruences.
TriState prove_leq(const AssumptionSet& phi, const ArithPtr& a, const ArithPtr& b);

// Searches for an assignment satisfying phi and violating claim. Fixed
// enumeration: 0..16 exhaustively when the claim has at most 3 variables,
// pseudorandom with a fixed seed afterwards. Deterministic.
std::optional<Assignment> falsify(const AssumptionSet& phi, const Constraint& claim,
                                  std::size_t budget);

bool satisfies(const Constraint& c, const Assignment& sigma);

// Rewrites nf with phi's equalities, oriented large-to-small. Shared with
// the typer, which uses it to eliminate case-local size variables.
NormalForm rewrite_with(const AssumptionSet& phi, NormalForm nf);

}  // namespace latc::arith
