#pragma once

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "latc/arith.hpp"

// AST of the placed lambda calculus: terms, basic types, and the
// (base, size, latency) type triple, plus parser and pretty-printer.
namespace latc::syntax {

using arith::ArithPtr;
using arith::Nat;

struct PeerType {
    std::string name;
    bool operator==(const PeerType&) const = default;
};

struct BasicType;
using BasicPtr = std::shared_ptr<const BasicType>;

struct SizedType {
    BasicPtr base;
    ArithPtr size;
    ArithPtr latency;
};
using SizedPtr = std::shared_ptr<const SizedType>;

enum class BasicKind { Unit, Bool, Nat, List, Fun };

struct BasicType {
    BasicKind kind;
    BasicPtr elem;  // List

    // Fun: forall sizeVar. (argType, argSize) -> result
    std::string sizeVar;
    BasicPtr argType;
    ArithPtr argSize;
    SizedPtr result;
};

BasicPtr unit_type();
BasicPtr bool_type();
BasicPtr nat_type();
BasicPtr list_type(BasicPtr elem);
BasicPtr fun_type(std::string sizeVar, BasicPtr argType, ArithPtr argSize, SizedType result);

struct Pos {
    int line = 0;
    int col = 0;
};

enum class TermKind {
    Var,
    UnitLit,
    BoolLit,
    NatLit,
    Succ,
    Nil,
    Cons,
    CaseList,
    If,
    Lam,
    App,
    Fix,
    Get
};

struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Term {
    TermKind kind;
    Pos pos;

    std::string name;  // Var
    bool boolVal = false;
    Nat natVal;

    BasicPtr annotType;  // Nil element type; Lam/Fix argument basic type
    std::string param;   // Lam/Fix parameter
    std::string sizeVar;  // Lam/Fix argument size variable
    std::string selfVar;  // Fix
    SizedPtr fixResult;   // Fix declared result triple
    std::string headVar, tailVar;  // CaseList cons binders
    PeerType peer;                 // Get target

    // children by role:
    //   Succ/Lam/Fix/Get: a
    //   Cons: a=head b=tail; App: a=fun b=arg
    //   If: a=cond b=then c=else; CaseList: a=scrutinee b=nil c=cons
    TermPtr a, b, c;
};

TermPtr tvar(std::string name, Pos pos = {});
TermPtr tunit(Pos pos = {});
TermPtr tbool(bool v, Pos pos = {});
TermPtr tnat(Nat v, Pos pos = {});
TermPtr tsucc(TermPtr t, Pos pos = {});
TermPtr tnil(BasicPtr elem, Pos pos = {});
TermPtr tcons(TermPtr h, TermPtr t, Pos pos = {});
TermPtr tcase(TermPtr scrut, TermPtr nilBranch, std::string headVar, std::string tailVar,
              TermPtr consBranch, Pos pos = {});
TermPtr tif(TermPtr c, TermPtr t, TermPtr e, Pos pos = {});
TermPtr tlam(std::string param, BasicPtr argType, std::string sizeVar, TermPtr body,
             Pos pos = {});
TermPtr tapp(TermPtr f, TermPtr a, Pos pos = {});
TermPtr tfix(std::string selfVar, std::string param, BasicPtr argType, std::string sizeVar,
             SizedType result, TermPtr body, Pos pos = {});
TermPtr tget(PeerType peer, TermPtr body, Pos pos = {});

bool is_value(const TermPtr& t);
std::set<std::string> free_vars(const TermPtr& t);
// capture-avoiding; bound variables are renamed away from free_vars(v)
TermPtr subst_term(const TermPtr& t, const std::string& x, const TermPtr& v);

struct PlacedDef {
    PeerType peer;
    std::string name;
    SizedType annot;
    TermPtr body;
    Pos pos;
};

struct Program {
    std::vector<PlacedDef> defs;
    PeerType mainPeer;
    TermPtr mainTerm;
    Pos mainPos;
};

// alpha-equivalence over term binders and type-level size binders
bool alpha_equal_term(const TermPtr& a, const TermPtr& b);
bool alpha_equal(const Program& a, const Program& b);
bool basic_equal(const BasicPtr& a, const BasicPtr& b);

struct SyntaxError {
    Pos pos;
    std::string message;
};

struct ParseResult {
    std::optional<Program> program;
    std::vector<SyntaxError> errors;
};

ParseResult parse(std::string_view source);
// arithmetic sub-grammar entry point, used by tests and topology-free tools
ArithPtr parse_arith(std::string_view source);  // throws SyntaxError on bad input

std::string pretty(const Program& p);
std::string pretty(const TermPtr& t);
std::string pretty(const SizedType& t);
std::string pretty(const BasicPtr& b);

}  // namespace latc::syntax
