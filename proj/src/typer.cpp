#include "latc/typer.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace latc::typer {

using arith::ArithPtr;
using arith::Constraint;
using arith::TriState;
using syntax::BasicKind;
using syntax::BasicPtr;
using syntax::Term;
using syntax::TermKind;

namespace {

[[noreturn]] void reject(ErrKind kind, Pos pos, std::string message, std::string unproved = {}) {
    throw TypeError{kind, pos, std::move(message), std::move(unproved)};
}

void collect_size_vars(const BasicPtr& b, std::set<std::string>& bound,
                       std::set<std::string>& out);

void collect_size_vars(const SizedType& t, std::set<std::string>& bound,
                       std::set<std::string>& out) {
    for (const std::string& v : arith::free_vars(t.size))
        if (!bound.count(v)) out.insert(v);
    for (const std::string& v : arith::free_vars(t.latency))
        if (!bound.count(v)) out.insert(v);
    collect_size_vars(t.base, bound, out);
}

void collect_size_vars(const BasicPtr& b, std::set<std::string>& bound,
                       std::set<std::string>& out) {
    switch (b->kind) {
        case BasicKind::Unit:
        case BasicKind::Bool:
        case BasicKind::Nat:
            return;
        case BasicKind::List:
            collect_size_vars(b->elem, bound, out);
            return;
        case BasicKind::Fun: {
            bool fresh = bound.insert(b->sizeVar).second;
            for (const std::string& v : arith::free_vars(b->argSize))
                if (!bound.count(v)) out.insert(v);
            collect_size_vars(b->argType, bound, out);
            collect_size_vars(*b->result, bound, out);
            if (fresh) bound.erase(b->sizeVar);
            return;
        }
    }
}

std::set<std::string> free_size_vars(const SizedType& t) {
    std::set<std::string> bound, out;
    collect_size_vars(t, bound, out);
    return out;
}

BasicPtr subst_size_basic(const BasicPtr& b, const std::string& x, const ArithPtr& a);

SizedType subst_size(const SizedType& t, const std::string& x, const ArithPtr& a) {
    return SizedType{subst_size_basic(t.base, x, a), arith::substitute(t.size, x, a),
                     arith::substitute(t.latency, x, a)};
}

BasicPtr subst_size_basic(const BasicPtr& b, const std::string& x, const ArithPtr& a) {
    switch (b->kind) {
        case BasicKind::Unit:
        case BasicKind::Bool:
        case BasicKind::Nat:
            return b;
        case BasicKind::List:
            return syntax::list_type(subst_size_basic(b->elem, x, a));
        case BasicKind::Fun: {
            if (b->sizeVar == x) return b;  // shadowed
            return syntax::fun_type(b->sizeVar, subst_size_basic(b->argType, x, a),
                                    arith::substitute(b->argSize, x, a),
                                    subst_size(*b->result, x, a));
        }
    }
    return b;
}

// Renames size variables in b's side to a's side before prover calls.
ArithPtr rename_all(ArithPtr t, const std::map<std::string, std::string>& ren) {
    for (const auto& [from, to] : ren) t = arith::substitute(t, from, arith::variable(to));
    return t;
}

// Structural compatibility of basic types. `exact` demands provable equality
// of all embedded sizes and latencies (branch joins); otherwise the provided
// type may promise less latency than the expected one (annotations,
// argument passing).
bool basic_compat(const BasicPtr& provided, const BasicPtr& expected,
                  const AssumptionSet& phi, bool exact,
                  std::map<std::string, std::string>& ren) {
    if (provided->kind != expected->kind) return false;
    switch (provided->kind) {
        case BasicKind::Unit:
        case BasicKind::Bool:
        case BasicKind::Nat:
            return true;
        case BasicKind::List:
            return basic_compat(provided->elem, expected->elem, phi, exact, ren);
        case BasicKind::Fun: {
            auto saved = ren.find(expected->sizeVar) != ren.end()
                             ? std::optional<std::string>(ren[expected->sizeVar])
                             : std::nullopt;
            ren[expected->sizeVar] = provided->sizeVar;
            bool ok =
                basic_compat(expected->argType, provided->argType, phi, exact, ren) &&
                basic_compat(provided->argType, expected->argType, phi, exact, ren);
            if (ok) {
                ArithPtr expSize = rename_all(expected->argSize, ren);
                ok = arith::prove_eq(phi, provided->argSize, expSize) == TriState::Proved;
            }
            if (ok) {
                ArithPtr expResSize = rename_all(expected->result->size, ren);
                ok = arith::prove_eq(phi, provided->result->size, expResSize) ==
                     TriState::Proved;
            }
            if (ok) {
                ArithPtr expResLat = rename_all(expected->result->latency, ren);
                if (exact)
                    ok = arith::prove_eq(phi, provided->result->latency, expResLat) ==
                         TriState::Proved;
                else
                    ok = arith::prove_leq(phi, provided->result->latency, expResLat) ==
                         TriState::Proved;
            }
            if (ok)
                ok = basic_compat(provided->result->base, expected->result->base, phi, exact,
                                  ren);
            if (saved)
                ren[expected->sizeVar] = *saved;
            else
                ren.erase(expected->sizeVar);
            return ok;
        }
    }
    return false;
}

bool base_join_equal(const BasicPtr& a, const BasicPtr& b, const AssumptionSet& phi) {
    std::map<std::string, std::string> ren;
    return basic_compat(a, b, phi, /*exact=*/true, ren);
}

bool base_arg_compat(const BasicPtr& provided, const BasicPtr& expected,
                     const AssumptionSet& phi) {
    std::map<std::string, std::string> ren;
    return basic_compat(provided, expected, phi, /*exact=*/false, ren);
}

std::string show(const SizedType& t) { return syntax::pretty(t); }

// ---------------------------------------------------------------------------

class Checker {
  public:
    Checker(const PlacedEnv& gamma, const topo::LatencyMatrix& topo)
        : gamma_(gamma), topo_(topo) {}

    std::set<std::string> sizeScope;

    SizedType check(LocalEnv& delta, const AssumptionSet& phi, const PeerType& peer,
                    const TermPtr& t) {
        switch (t->kind) {
            case TermKind::Var: return check_var(delta, peer, t);
            case TermKind::UnitLit:
                return SizedType{syntax::unit_type(), arith::zero(), arith::zero()};
            case TermKind::BoolLit:
                return SizedType{syntax::bool_type(), arith::zero(), arith::zero()};
            case TermKind::NatLit:
                return SizedType{syntax::nat_type(), arith::lit(t->natVal), arith::zero()};
            case TermKind::Succ: {
                SizedType sub = check(delta, phi, peer, t->a);
                if (sub.base->kind != BasicKind::Nat)
                    reject(ErrKind::Mismatch, t->pos,
                           "S expects a Nat, got " + syntax::pretty(sub.base));
                return SizedType{syntax::nat_type(),
                                 arith::simplify(arith::succ(sub.size)), sub.latency};
            }
            case TermKind::Nil:
                return SizedType{syntax::list_type(t->annotType), arith::zero(), arith::zero()};
            case TermKind::Cons: {
                SizedType head = check(delta, phi, peer, t->a);
                SizedType tail = check(delta, phi, peer, t->b);
                if (tail.base->kind != BasicKind::List)
                    reject(ErrKind::Mismatch, t->b->pos,
                           "cons tail must be a list, got " + syntax::pretty(tail.base));
                if (!base_join_equal(head.base, tail.base->elem, phi))
                    reject(ErrKind::Mismatch, t->pos,
                           "cons head type " + syntax::pretty(head.base) +
                               " does not match element type " +
                               syntax::pretty(tail.base->elem));
                return SizedType{tail.base, arith::simplify(arith::succ(tail.size)),
                                 arith::simplify(arith::add(head.latency, tail.latency))};
            }
            case TermKind::If: return check_if(delta, phi, peer, t);
            case TermKind::CaseList: return check_case(delta, phi, peer, t);
            case TermKind::Lam: return check_lam(delta, phi, peer, t);
            case TermKind::App: return check_app(delta, phi, peer, t);
            case TermKind::Fix: return do_check_fix(delta, phi, peer, t);
            case TermKind::Get: return check_get(delta, phi, peer, t);
        }
        reject(ErrKind::Mismatch, t->pos, "unhandled term");
    }

    SizedType do_check_fix(LocalEnv& delta, const AssumptionSet& phi, const PeerType& peer,
                           const TermPtr& t);

  private:
    SizedType check_var(LocalEnv& delta, const PeerType& peer, const TermPtr& t) {
        if (const LocalBinding* b = delta.lookup(t->name)) {
            if (b->isSelf)
                reject(ErrKind::PlacementError, t->pos,
                       "recursive function '" + t->name +
                           "' may only appear applied to an argument");
            return b->type;
        }
        auto it = gamma_.find(t->name);
        if (it != gamma_.end()) {
            if (!(it->second.peer == peer))
                reject(ErrKind::PlacementError, t->pos,
                       "'" + t->name + "' is placed at " + it->second.peer.name +
                           " but accessed at " + peer.name);
            // placed definitions are evaluated to values up front, so a
            // reference costs no latency of its own
            return SizedType{it->second.type.base, it->second.type.size, arith::zero()};
        }
        reject(ErrKind::UnboundVar, t->pos, "unbound variable '" + t->name + "'");
    }

    SizedType check_if(LocalEnv& delta, const AssumptionSet& phi, const PeerType& peer,
                       const TermPtr& t) {
        SizedType cond = check(delta, phi, peer, t->a);
        if (cond.base->kind != BasicKind::Bool)
            reject(ErrKind::Mismatch, t->a->pos,
                   "if condition must be Bool, got " + syntax::pretty(cond.base));
        SizedType thenT = check(delta, phi, peer, t->b);
        SizedType elseT = check(delta, phi, peer, t->c);
        return join_branches(phi, t, cond.latency, thenT, elseT);
    }

    SizedType join_branches(const AssumptionSet& phi, const TermPtr& t,
                            const ArithPtr& scrutLatency, const SizedType& left,
                            const SizedType& right) {
        if (!base_join_equal(left.base, right.base, phi))
            reject(ErrKind::Mismatch, t->pos,
                   "branch types differ: " + syntax::pretty(left.base) + " vs " +
                       syntax::pretty(right.base));
        ArithPtr size = arith::prove_eq(phi, left.size, right.size) == TriState::Proved
                            ? left.size
                            : arith::simplify(arith::amax(left.size, right.size));
        ArithPtr latency = arith::simplify(
            arith::add(scrutLatency, arith::amax(left.latency, right.latency)));
        return SizedType{left.base, size, latency};
    }

    SizedType check_case(LocalEnv& delta, const AssumptionSet& phi, const PeerType& peer,
                         const TermPtr& t) {
        SizedType scrut = check(delta, phi, peer, t->a);
        if (scrut.base->kind != BasicKind::List)
            reject(ErrKind::Mismatch, t->a->pos,
                   "case scrutinee must be a list, got " + syntax::pretty(scrut.base));

        AssumptionSet nilPhi = phi;
        nilPhi.push_back(Constraint::eq(scrut.size, arith::zero()));
        SizedType nilT = check(delta, nilPhi, peer, t->b);
        nilT = eliminate_branch_vars(nilT, nilPhi, {}, t->b->pos);

        std::string headSize = fresh_size_var("h");
        std::string tailSize = fresh_size_var("t");
        sizeScope.insert(headSize);
        sizeScope.insert(tailSize);
        AssumptionSet consPhi = phi;
        consPhi.push_back(Constraint::eq(
            scrut.size, arith::succ(arith::variable(tailSize))));
        delta.bind({t->headVar,
                    SizedType{scrut.base->elem, arith::variable(headSize), arith::zero()}});
        delta.bind({t->tailVar,
                    SizedType{scrut.base, arith::variable(tailSize), arith::zero()}});
        SizedType consT = check(delta, consPhi, peer, t->c);
        delta.pop();
        delta.pop();
        sizeScope.erase(headSize);
        sizeScope.erase(tailSize);
        consT = eliminate_branch_vars(consT, consPhi, {{tailSize, scrut.size}, {headSize, {}}},
                                      t->c->pos);

        return join_branches(phi, t, scrut.latency, nilT, consT);
    }

    // Branch-local size variables must not leak into the joined type: first
    // rewrite with the branch assumptions (exact), then fall back to the
    // scrutinee size as an upper bound for the tail variable. Anything left
    // over has no sound description outside the branch.
    SizedType eliminate_branch_vars(
        SizedType ty, const AssumptionSet& branchPhi,
        const std::vector<std::pair<std::string, ArithPtr>>& bounds, Pos pos) {
        ty.size = arith::embed(arith::rewrite_with(branchPhi, arith::normalize(ty.size)));
        ty.latency = arith::embed(arith::rewrite_with(branchPhi, arith::normalize(ty.latency)));
        for (const auto& [var, upper] : bounds) {
            if (!upper) continue;
            ty.size = arith::substitute(ty.size, var, upper);
            ty.latency = arith::substitute(ty.latency, var, upper);
        }
        ty.size = arith::simplify(ty.size);
        ty.latency = arith::simplify(ty.latency);
        std::set<std::string> leftover;
        for (const auto& [var, upper] : bounds) leftover.insert(var);
        std::set<std::string> used = free_size_vars(ty);
        for (const std::string& v : used) {
            if (v.rfind('$', 0) == 0 && (leftover.count(v) || !sizeScope.count(v)))
                reject(ErrKind::ArithUnknown, pos,
                       "size of the matched list head escapes its branch in type " + show(ty));
        }
        return ty;
    }

    SizedType check_lam(LocalEnv& delta, const AssumptionSet& phi, const PeerType& peer,
                        const TermPtr& t) {
        if (sizeScope.count(t->sizeVar))
            reject(ErrKind::Mismatch, t->pos,
                   "size variable '" + t->sizeVar + "' shadows an enclosing one");
        sizeScope.insert(t->sizeVar);
        delta.bind({t->param,
                    SizedType{t->annotType, arith::variable(t->sizeVar), arith::zero()}});
        SizedType body = check(delta, phi, peer, t->a);
        delta.pop();
        sizeScope.erase(t->sizeVar);
        return SizedType{
            syntax::fun_type(t->sizeVar, t->annotType, arith::variable(t->sizeVar), body),
            arith::zero(), arith::zero()};
    }

    SizedType check_app(LocalEnv& delta, const AssumptionSet& phi, const PeerType& peer,
                        const TermPtr& t) {
        const Term& f = *t->a;
        SizedType funT;
        const LocalBinding* self = nullptr;
        if (f.kind == TermKind::Var) {
            if (const LocalBinding* b = delta.lookup(f.name); b && b->isSelf) {
                self = b;
                funT = b->type;
            }
        }
        if (!self) funT = check(delta, phi, peer, t->a);

        if (funT.base->kind != BasicKind::Fun)
            reject(ErrKind::Mismatch, t->a->pos,
                   "cannot apply a value of type " + syntax::pretty(funT.base));
        const syntax::BasicType& fun = *funT.base;

        SizedType arg = check(delta, phi, peer, t->b);

        if (self) {
            // the recursive step must consume a provably smaller size
            ArithPtr lhs = arith::add(arg.size, arith::lit(1));
            ArithPtr rhs = arith::variable(self->selfSizeVar);
            if (arith::prove_leq(phi, lhs, rhs) != TriState::Proved) {
                Constraint c = Constraint::leq(lhs, rhs);
                reject(ErrKind::NonDecreasingRecursion, t->pos,
                       "recursive call to '" + f.name + "' is not on a smaller argument",
                       arith::to_string(c));
            }
        }

        if (!(fun.argSize->kind == arith::ArithKind::Var && fun.argSize->var == fun.sizeVar))
            reject(ErrKind::Mismatch, t->a->pos,
                   "function type quantifies size " + fun.sizeVar +
                       " but fixes the argument size to " + arith::to_string(fun.argSize) +
                       "; such a function cannot be applied");
        if (!base_arg_compat(arg.base, fun.argType, phi))
            reject(ErrKind::Mismatch, t->b->pos,
                   "argument type " + syntax::pretty(arg.base) + " does not match parameter " +
                       syntax::pretty(fun.argType));

        SizedType res = subst_size(*fun.result, fun.sizeVar, arg.size);
        ArithPtr latency =
            arith::simplify(arith::add(arith::add(funT.latency, arg.latency), res.latency));
        return SizedType{res.base, arith::simplify(res.size), latency};
    }

    SizedType check_get(LocalEnv& delta, const AssumptionSet& phi, const PeerType& peer,
                        const TermPtr& t) {
        if (!topo_.declared(t->peer.name))
            reject(ErrKind::PlacementError, t->pos,
                   "get targets undeclared peer '" + t->peer.name + "'");
        LocalEnv emptyDelta;  // no local bindings travel with the request
        SizedType body = check(emptyDelta, phi, t->peer, t->a);
        // target designator is a static peer type here; its latency summand
        // stays in the sum for rule fidelity
        ArithPtr targetLat = arith::zero();
        ArithPtr latency = arith::add(
            arith::add(arith::add(targetLat, arith::lit(topo_.weight(peer.name, t->peer.name))),
                       body.latency),
            arith::lit(topo_.weight(t->peer.name, peer.name)));
        return SizedType{body.base, body.size, arith::simplify(latency)};
    }

    std::string fresh_size_var(const std::string& hint) {
        return "$" + hint + std::to_string(++freshCounter_);
    }

    const PlacedEnv& gamma_;
    const topo::LatencyMatrix& topo_;
    int freshCounter_ = 0;
};

SizedType Checker::do_check_fix(LocalEnv& delta, const AssumptionSet& phi,
                                const PeerType& peer, const TermPtr& t) {
    if (sizeScope.count(t->sizeVar))
        reject(ErrKind::Mismatch, t->pos,
               "size variable '" + t->sizeVar + "' shadows an enclosing one");
    SizedType declared = *t->fixResult;
    BasicPtr funTy =
        syntax::fun_type(t->sizeVar, t->annotType, arith::variable(t->sizeVar), declared);

    sizeScope.insert(t->sizeVar);
    delta.bind({t->selfVar, SizedType{funTy, arith::zero(), arith::zero()}, /*isSelf=*/true,
                t->sizeVar});
    delta.bind({t->param,
                SizedType{t->annotType, arith::variable(t->sizeVar), arith::zero()}});
    SizedType body = check(delta, phi, peer, t->a);
    delta.pop();
    delta.pop();
    sizeScope.erase(t->sizeVar);

    if (!base_arg_compat(body.base, declared.base, phi))
        reject(ErrKind::Mismatch, t->pos,
               "fix body type " + syntax::pretty(body.base) +
                   " does not match declared result " + syntax::pretty(declared.base));
    if (arith::prove_eq(phi, body.size, declared.size) != TriState::Proved) {
        Constraint c = Constraint::eq(body.size, declared.size);
        reject(ErrKind::UnprovenBound, t->pos,
               "fix body size does not match the declared result size",
               arith::to_string(c));
    }
    if (arith::prove_leq(phi, body.latency, declared.latency) != TriState::Proved) {
        Constraint c = Constraint::leq(body.latency, declared.latency);
        reject(ErrKind::UnprovenBound, t->pos,
               "fix body latency exceeds the declared bound", arith::to_string(c));
    }
    return SizedType{funTy, arith::zero(), arith::zero()};
}

}  // namespace

const char* kind_name(ErrKind k) {
    switch (k) {
        case ErrKind::Mismatch: return "Mismatch";
        case ErrKind::UnboundVar: return "UnboundVar";
        case ErrKind::UnprovenBound: return "UnprovenBound";
        case ErrKind::NonDecreasingRecursion: return "NonDecreasingRecursion";
        case ErrKind::PlacementError: return "PlacementError";
        case ErrKind::ArithUnknown: return "ArithUnknown";
    }
    return "?";
}

std::string render(const TypeError& e, const std::string& file) {
    std::ostringstream os;
    os << "ERROR " << file << ':' << e.pos.line << ':' << e.pos.col << " [" << kind_name(e.kind)
       << "] " << e.message;
    if (!e.unproved.empty()) os << "; unproved: " << e.unproved;
    return os.str();
}

SizedType typecheck_term(const PlacedEnv& gamma, LocalEnv& delta, const AssumptionSet& phi,
                         const PeerType& p, const TermPtr& t,
                         const topo::LatencyMatrix& topo) {
    Checker c(gamma, topo);
    return c.check(delta, phi, p, t);
}

SizedType check_fix(const PlacedEnv& gamma, LocalEnv& delta, const AssumptionSet& phi,
                    const PeerType& p, const TermPtr& fixTerm,
                    const topo::LatencyMatrix& topo) {
    if (fixTerm->kind != TermKind::Fix)
        reject(ErrKind::Mismatch, fixTerm->pos, "check_fix expects a fix term");
    Checker c(gamma, topo);
    return c.do_check_fix(delta, phi, p, fixTerm);
}

CheckResult typecheck_program(const syntax::Program& p, const topo::LatencyMatrix& topo) {
    CheckResult result;
    ProgramTypes types;
    PlacedEnv gamma;

    if (!topo.declared(p.mainPeer.name))
        result.errors.push_back({ErrKind::PlacementError, p.mainPos,
                                 "main peer '" + p.mainPeer.name + "' is not declared", {}});

    for (const syntax::PlacedDef& def : p.defs) {
        if (gamma.count(def.name)) {
            result.errors.push_back({ErrKind::Mismatch, def.pos,
                                     "duplicate definition '" + def.name + "'", {}});
            continue;
        }
        if (!topo.declared(def.peer.name)) {
            result.errors.push_back({ErrKind::PlacementError, def.pos,
                                     "peer '" + def.peer.name + "' is not declared", {}});
            continue;
        }
        if (auto fv = free_size_vars(def.annot); !fv.empty()) {
            result.errors.push_back({ErrKind::Mismatch, def.pos,
                                     "annotation of '" + def.name +
                                         "' mentions unbound size variable '" + *fv.begin() +
                                         "'",
                                     {}});
            continue;
        }
        try {
            Checker checker(gamma, topo);
            LocalEnv delta;
            AssumptionSet phi;
            SizedType syn = checker.check(delta, phi, def.peer, def.body);
            if (!base_arg_compat(syn.base, def.annot.base, phi))
                reject(ErrKind::Mismatch, def.pos,
                       "body of '" + def.name + "' has type " + syntax::pretty(syn.base) +
                           " but is annotated " + syntax::pretty(def.annot.base));
            if (arith::prove_eq(phi, syn.size, def.annot.size) != TriState::Proved) {
                Constraint c = Constraint::eq(syn.size, def.annot.size);
                reject(ErrKind::UnprovenBound, def.pos,
                       "size of '" + def.name + "' does not match its annotation",
                       arith::to_string(c));
            }
            if (arith::prove_leq(phi, syn.latency, def.annot.latency) != TriState::Proved) {
                Constraint c = Constraint::leq(syn.latency, def.annot.latency);
                reject(ErrKind::UnprovenBound, def.pos,
                       "latency of '" + def.name + "' exceeds its annotation",
                       arith::to_string(c));
            }
        } catch (const TypeError& e) {
            result.errors.push_back(e);
        }
        // later definitions check against the annotation either way
        gamma[def.name] = PlacedInfo{def.peer, def.annot};
        types.defs.emplace_back(def.name, def.annot);
    }

    if (topo.declared(p.mainPeer.name)) {
        try {
            Checker checker(gamma, topo);
            LocalEnv delta;
            AssumptionSet phi;
            types.main = checker.check(delta, phi, p.mainPeer, p.mainTerm);
        } catch (const TypeError& e) {
            result.errors.push_back(e);
        }
    }

    if (result.errors.empty()) result.types = std::move(types);
    return result;
}

}  // namespace latc::typer
