#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "latc/syntax.hpp"
#include "latc/topology.hpp"

// The typing judgment: synthesizes the (base, size, latency) triple of a
// term placed on a peer, under placed/local environments and a set of
// arithmetic assumptions. Latency bounds for `get` come from the topology;
// `if`/`case` join branches with max; fixpoints must recurse on provably
// smaller sizes.
namespace latc::typer {

using arith::AssumptionSet;
using syntax::PeerType;
using syntax::Pos;
using syntax::SizedType;
using syntax::TermPtr;

struct PlacedInfo {
    PeerType peer;
    SizedType type;
};
using PlacedEnv = std::map<std::string, PlacedInfo>;

struct LocalBinding {
    std::string name;
    SizedType type;
    // set for the fixpoint's own name: recursion discipline applies
    bool isSelf = false;
    std::string selfSizeVar;
};

// lexically scoped; innermost binding wins
class LocalEnv {
  public:
    void bind(LocalBinding b) { stack_.push_back(std::move(b)); }
    void pop() { stack_.pop_back(); }
    const LocalBinding* lookup(const std::string& name) const {
        for (auto it = stack_.rbegin(); it != stack_.rend(); ++it)
            if (it->name == name) return &*it;
        return nullptr;
    }
    bool empty() const { return stack_.empty(); }

  private:
    std::vector<LocalBinding> stack_;
};

enum class ErrKind {
    Mismatch,
    UnboundVar,
    UnprovenBound,
    NonDecreasingRecursion,
    PlacementError,
    ArithUnknown
};

const char* kind_name(ErrKind k);

struct TypeError {
    ErrKind kind;
    Pos pos;
    std::string message;
    std::string unproved;  // rendered constraint when a prover obligation failed
};

std::string render(const TypeError& e, const std::string& file);

struct ProgramTypes {
    std::vector<std::pair<std::string, SizedType>> defs;
    SizedType main;
};

struct CheckResult {
    std::optional<ProgramTypes> types;
    std::vector<TypeError> errors;
    bool ok() const { return errors.empty(); }
};

// Synthesizes the triple of t at peer P; throws TypeError on rejection.
SizedType typecheck_term(const PlacedEnv& gamma, LocalEnv& delta, const AssumptionSet& phi,
                         const PeerType& p, const TermPtr& t, const topo::LatencyMatrix& topo);

// Fixpoint rule: body checked against the declared signature with every
// self-application proved strictly size-decreasing. Throws TypeError.
SizedType check_fix(const PlacedEnv& gamma, LocalEnv& delta, const AssumptionSet& phi,
                    const PeerType& p, const TermPtr& fixTerm, const topo::LatencyMatrix& topo);

// Checks defs in declaration order against their annotations, then main at
// its peer. Collects one error per failing definition.
CheckResult typecheck_program(const syntax::Program& p, const topo::LatencyMatrix& topo);

}  // namespace latc::typer
