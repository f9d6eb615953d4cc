#include "latc/syntax.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace latc::syntax {

namespace {

BasicPtr basic_node(BasicKind k) {
    auto b = std::make_shared<BasicType>();
    b->kind = k;
    return b;
}

std::shared_ptr<Term> term_node(TermKind k, Pos pos) {
    auto t = std::make_shared<Term>();
    t->kind = k;
    t->pos = pos;
    return t;
}

}  // namespace

BasicPtr unit_type() {
    static BasicPtr b = basic_node(BasicKind::Unit);
    return b;
}
BasicPtr bool_type() {
    static BasicPtr b = basic_node(BasicKind::Bool);
    return b;
}
BasicPtr nat_type() {
    static BasicPtr b = basic_node(BasicKind::Nat);
    return b;
}
BasicPtr list_type(BasicPtr elem) {
    auto b = basic_node(BasicKind::List);
    std::const_pointer_cast<BasicType>(b)->elem = std::move(elem);
    return b;
}
BasicPtr fun_type(std::string sizeVar, BasicPtr argType, ArithPtr argSize, SizedType result) {
    auto b = std::make_shared<BasicType>();
    b->kind = BasicKind::Fun;
    b->sizeVar = std::move(sizeVar);
    b->argType = std::move(argType);
    b->argSize = std::move(argSize);
    b->result = std::make_shared<SizedType>(std::move(result));
    return b;
}

TermPtr tvar(std::string name, Pos pos) {
    auto t = term_node(TermKind::Var, pos);
    t->name = std::move(name);
    return t;
}
TermPtr tunit(Pos pos) { return term_node(TermKind::UnitLit, pos); }
TermPtr tbool(bool v, Pos pos) {
    auto t = term_node(TermKind::BoolLit, pos);
    t->boolVal = v;
    return t;
}
TermPtr tnat(Nat v, Pos pos) {
    auto t = term_node(TermKind::NatLit, pos);
    t->natVal = std::move(v);
    return t;
}
TermPtr tsucc(TermPtr sub, Pos pos) {
    auto t = term_node(TermKind::Succ, pos);
    t->a = std::move(sub);
    return t;
}
TermPtr tnil(BasicPtr elem, Pos pos) {
    auto t = term_node(TermKind::Nil, pos);
    t->annotType = std::move(elem);
    return t;
}
TermPtr tcons(TermPtr h, TermPtr tl, Pos pos) {
    auto t = term_node(TermKind::Cons, pos);
    t->a = std::move(h);
    t->b = std::move(tl);
    return t;
}
TermPtr tcase(TermPtr scrut, TermPtr nilBranch, std::string headVar, std::string tailVar,
              TermPtr consBranch, Pos pos) {
    auto t = term_node(TermKind::CaseList, pos);
    t->a = std::move(scrut);
    t->b = std::move(nilBranch);
    t->c = std::move(consBranch);
    t->headVar = std::move(headVar);
    t->tailVar = std::move(tailVar);
    return t;
}
TermPtr tif(TermPtr c, TermPtr th, TermPtr el, Pos pos) {
    auto t = term_node(TermKind::If, pos);
    t->a = std::move(c);
    t->b = std::move(th);
    t->c = std::move(el);
    return t;
}
TermPtr tlam(std::string param, BasicPtr argType, std::string sizeVar, TermPtr body, Pos pos) {
    auto t = term_node(TermKind::Lam, pos);
    t->param = std::move(param);
    t->annotType = std::move(argType);
    t->sizeVar = std::move(sizeVar);
    t->a = std::move(body);
    return t;
}
TermPtr tapp(TermPtr f, TermPtr a, Pos pos) {
    auto t = term_node(TermKind::App, pos);
    t->a = std::move(f);
    t->b = std::move(a);
    return t;
}
TermPtr tfix(std::string selfVar, std::string param, BasicPtr argType, std::string sizeVar,
             SizedType result, TermPtr body, Pos pos) {
    auto t = term_node(TermKind::Fix, pos);
    t->selfVar = std::move(selfVar);
    t->param = std::move(param);
    t->annotType = std::move(argType);
    t->sizeVar = std::move(sizeVar);
    t->fixResult = std::make_shared<SizedType>(std::move(result));
    t->a = std::move(body);
    return t;
}
TermPtr tget(PeerType peer, TermPtr body, Pos pos) {
    auto t = term_node(TermKind::Get, pos);
    t->peer = std::move(peer);
    t->a = std::move(body);
    return t;
}

bool is_value(const TermPtr& t) {
    switch (t->kind) {
        case TermKind::UnitLit:
        case TermKind::BoolLit:
        case TermKind::NatLit:
        case TermKind::Nil:
        case TermKind::Lam:
        case TermKind::Fix:
            return true;
        case TermKind::Succ:
            // S(n) over a literal folds, so it is still a redex
            return is_value(t->a) && t->a->kind != TermKind::NatLit;
        case TermKind::Cons:
            return is_value(t->a) && is_value(t->b);
        default:
            return false;
    }
}

namespace {

void collect_free(const TermPtr& t, std::set<std::string>& bound, std::set<std::string>& out) {
    switch (t->kind) {
        case TermKind::Var:
            if (!bound.count(t->name)) out.insert(t->name);
            return;
        case TermKind::UnitLit:
        case TermKind::BoolLit:
        case TermKind::NatLit:
        case TermKind::Nil:
            return;
        case TermKind::Succ:
        case TermKind::Get:
            collect_free(t->a, bound, out);
            return;
        case TermKind::Cons:
        case TermKind::App:
            collect_free(t->a, bound, out);
            collect_free(t->b, bound, out);
            return;
        case TermKind::If:
            collect_free(t->a, bound, out);
            collect_free(t->b, bound, out);
            collect_free(t->c, bound, out);
            return;
        case TermKind::Lam: {
            bool fresh = bound.insert(t->param).second;
            collect_free(t->a, bound, out);
            if (fresh) bound.erase(t->param);
            return;
        }
        case TermKind::Fix: {
            bool f1 = bound.insert(t->selfVar).second;
            bool f2 = bound.insert(t->param).second;
            collect_free(t->a, bound, out);
            if (f2) bound.erase(t->param);
            if (f1) bound.erase(t->selfVar);
            return;
        }
        case TermKind::CaseList: {
            collect_free(t->a, bound, out);
            collect_free(t->b, bound, out);
            bool f1 = bound.insert(t->headVar).second;
            bool f2 = bound.insert(t->tailVar).second;
            collect_free(t->c, bound, out);
            if (f2) bound.erase(t->tailVar);
            if (f1) bound.erase(t->headVar);
            return;
        }
    }
}

std::string fresh_name(const std::string& base, const std::set<std::string>& avoid) {
    std::string name = base;
    while (avoid.count(name)) name += '\'';
    return name;
}

}  // namespace

std::set<std::string> free_vars(const TermPtr& t) {
    std::set<std::string> bound, out;
    collect_free(t, bound, out);
    return out;
}

TermPtr subst_term(const TermPtr& t, const std::string& x, const TermPtr& v) {
    switch (t->kind) {
        case TermKind::Var:
            return t->name == x ? v : t;
        case TermKind::UnitLit:
        case TermKind::BoolLit:
        case TermKind::NatLit:
        case TermKind::Nil:
            return t;
        case TermKind::Succ:
            return tsucc(subst_term(t->a, x, v), t->pos);
        case TermKind::Get:
            return tget(t->peer, subst_term(t->a, x, v), t->pos);
        case TermKind::Cons:
            return tcons(subst_term(t->a, x, v), subst_term(t->b, x, v), t->pos);
        case TermKind::App:
            return tapp(subst_term(t->a, x, v), subst_term(t->b, x, v), t->pos);
        case TermKind::If:
            return tif(subst_term(t->a, x, v), subst_term(t->b, x, v), subst_term(t->c, x, v),
                       t->pos);
        case TermKind::Lam: {
            if (t->param == x) return t;
            std::string param = t->param;
            TermPtr body = t->a;
            std::set<std::string> fv = free_vars(v);
            if (fv.count(param)) {
                std::set<std::string> avoid = fv;
                auto bodyFv = free_vars(body);
                avoid.insert(bodyFv.begin(), bodyFv.end());
                avoid.insert(x);
                std::string renamed = fresh_name(param, avoid);
                body = subst_term(body, param, tvar(renamed, t->pos));
                param = renamed;
            }
            return tlam(param, t->annotType, t->sizeVar, subst_term(body, x, v), t->pos);
        }
        case TermKind::Fix: {
            if (t->selfVar == x || t->param == x) return t;
            std::string selfVar = t->selfVar, param = t->param;
            TermPtr body = t->a;
            std::set<std::string> fv = free_vars(v);
            if (fv.count(selfVar) || fv.count(param)) {
                std::set<std::string> avoid = fv;
                auto bodyFv = free_vars(body);
                avoid.insert(bodyFv.begin(), bodyFv.end());
                avoid.insert(x);
                if (fv.count(selfVar)) {
                    std::string renamed = fresh_name(selfVar, avoid);
                    avoid.insert(renamed);
                    body = subst_term(body, selfVar, tvar(renamed, t->pos));
                    selfVar = renamed;
                }
                if (fv.count(param)) {
                    std::string renamed = fresh_name(param, avoid);
                    body = subst_term(body, param, tvar(renamed, t->pos));
                    param = renamed;
                }
            }
            return tfix(selfVar, param, t->annotType, t->sizeVar, *t->fixResult,
                        subst_term(body, x, v), t->pos);
        }
        case TermKind::CaseList: {
            TermPtr scrut = subst_term(t->a, x, v);
            TermPtr nilBranch = subst_term(t->b, x, v);
            if (t->headVar == x || t->tailVar == x)
                return tcase(scrut, nilBranch, t->headVar, t->tailVar, t->c, t->pos);
            std::string headVar = t->headVar, tailVar = t->tailVar;
            TermPtr consBranch = t->c;
            std::set<std::string> fv = free_vars(v);
            if (fv.count(headVar) || fv.count(tailVar)) {
                std::set<std::string> avoid = fv;
                auto bodyFv = free_vars(consBranch);
                avoid.insert(bodyFv.begin(), bodyFv.end());
                avoid.insert(x);
                if (fv.count(headVar)) {
                    std::string renamed = fresh_name(headVar, avoid);
                    avoid.insert(renamed);
                    consBranch = subst_term(consBranch, headVar, tvar(renamed, t->pos));
                    headVar = renamed;
                }
                if (fv.count(tailVar)) {
                    std::string renamed = fresh_name(tailVar, avoid);
                    consBranch = subst_term(consBranch, tailVar, tvar(renamed, t->pos));
                    tailVar = renamed;
                }
            }
            return tcase(scrut, nilBranch, headVar, tailVar, subst_term(consBranch, x, v),
                         t->pos);
        }
    }
    return t;
}

// ---------------------------------------------------------------------------
// Alpha-equivalence

namespace {

struct AlphaCtx {
    // maps binder names on each side to a shared fresh index
    std::map<std::string, int> left, right;
    std::map<std::string, int> sizeLeft, sizeRight;
    int next = 0;
    int nextSize = 0;
};

bool arith_alpha(const ArithPtr& a, const ArithPtr& b, const AlphaCtx& ctx) {
    using arith::ArithKind;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case ArithKind::Lit:
            return a->lit == b->lit;
        case ArithKind::Var: {
            auto la = ctx.sizeLeft.find(a->var);
            auto rb = ctx.sizeRight.find(b->var);
            if (la != ctx.sizeLeft.end() || rb != ctx.sizeRight.end())
                return la != ctx.sizeLeft.end() && rb != ctx.sizeRight.end() &&
                       la->second == rb->second;
            return a->var == b->var;
        }
        case ArithKind::Succ:
            return arith_alpha(a->lhs, b->lhs, ctx);
        default:
            return arith_alpha(a->lhs, b->lhs, ctx) && arith_alpha(a->rhs, b->rhs, ctx);
    }
}

bool sized_alpha(const SizedType& a, const SizedType& b, AlphaCtx& ctx);

bool basic_alpha(const BasicPtr& a, const BasicPtr& b, AlphaCtx& ctx) {
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case BasicKind::Unit:
        case BasicKind::Bool:
        case BasicKind::Nat:
            return true;
        case BasicKind::List:
            return basic_alpha(a->elem, b->elem, ctx);
        case BasicKind::Fun: {
            int idx = ctx.nextSize++;
            auto oldA = ctx.sizeLeft.find(a->sizeVar);
            auto oldB = ctx.sizeRight.find(b->sizeVar);
            std::optional<int> savedA, savedB;
            if (oldA != ctx.sizeLeft.end()) savedA = oldA->second;
            if (oldB != ctx.sizeRight.end()) savedB = oldB->second;
            ctx.sizeLeft[a->sizeVar] = idx;
            ctx.sizeRight[b->sizeVar] = idx;
            bool ok = basic_alpha(a->argType, b->argType, ctx) &&
                      arith_alpha(a->argSize, b->argSize, ctx) &&
                      sized_alpha(*a->result, *b->result, ctx);
            if (savedA)
                ctx.sizeLeft[a->sizeVar] = *savedA;
            else
                ctx.sizeLeft.erase(a->sizeVar);
            if (savedB)
                ctx.sizeRight[b->sizeVar] = *savedB;
            else
                ctx.sizeRight.erase(b->sizeVar);
            return ok;
        }
    }
    return false;
}

bool sized_alpha(const SizedType& a, const SizedType& b, AlphaCtx& ctx) {
    return basic_alpha(a.base, b.base, ctx) && arith_alpha(a.size, b.size, ctx) &&
           arith_alpha(a.latency, b.latency, ctx);
}

struct BinderScope {
    AlphaCtx& ctx;
    std::string l, r;
    std::optional<int> savedL, savedR;
    BinderScope(AlphaCtx& ctx, std::string l, std::string r)
        : ctx(ctx), l(std::move(l)), r(std::move(r)) {
        auto itL = ctx.left.find(this->l);
        auto itR = ctx.right.find(this->r);
        if (itL != ctx.left.end()) savedL = itL->second;
        if (itR != ctx.right.end()) savedR = itR->second;
        int idx = ctx.next++;
        ctx.left[this->l] = idx;
        ctx.right[this->r] = idx;
    }
    ~BinderScope() {
        if (savedL)
            ctx.left[l] = *savedL;
        else
            ctx.left.erase(l);
        if (savedR)
            ctx.right[r] = *savedR;
        else
            ctx.right.erase(r);
    }
};

struct SizeBinderScope {
    AlphaCtx& ctx;
    std::string l, r;
    std::optional<int> savedL, savedR;
    SizeBinderScope(AlphaCtx& ctx, std::string l, std::string r)
        : ctx(ctx), l(std::move(l)), r(std::move(r)) {
        auto itL = ctx.sizeLeft.find(this->l);
        auto itR = ctx.sizeRight.find(this->r);
        if (itL != ctx.sizeLeft.end()) savedL = itL->second;
        if (itR != ctx.sizeRight.end()) savedR = itR->second;
        int idx = ctx.nextSize++;
        ctx.sizeLeft[this->l] = idx;
        ctx.sizeRight[this->r] = idx;
    }
    ~SizeBinderScope() {
        if (savedL)
            ctx.sizeLeft[l] = *savedL;
        else
            ctx.sizeLeft.erase(l);
        if (savedR)
            ctx.sizeRight[r] = *savedR;
        else
            ctx.sizeRight.erase(r);
    }
};

bool term_alpha(const TermPtr& a, const TermPtr& b, AlphaCtx& ctx) {
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case TermKind::Var: {
            auto la = ctx.left.find(a->name);
            auto rb = ctx.right.find(b->name);
            if (la != ctx.left.end() || rb != ctx.right.end())
                return la != ctx.left.end() && rb != ctx.right.end() && la->second == rb->second;
            return a->name == b->name;
        }
        case TermKind::UnitLit:
            return true;
        case TermKind::BoolLit:
            return a->boolVal == b->boolVal;
        case TermKind::NatLit:
            return a->natVal == b->natVal;
        case TermKind::Nil:
            return basic_alpha(a->annotType, b->annotType, ctx);
        case TermKind::Succ:
            return term_alpha(a->a, b->a, ctx);
        case TermKind::Get:
            return a->peer == b->peer && term_alpha(a->a, b->a, ctx);
        case TermKind::Cons:
        case TermKind::App:
            return term_alpha(a->a, b->a, ctx) && term_alpha(a->b, b->b, ctx);
        case TermKind::If:
            return term_alpha(a->a, b->a, ctx) && term_alpha(a->b, b->b, ctx) &&
                   term_alpha(a->c, b->c, ctx);
        case TermKind::Lam: {
            SizeBinderScope sz(ctx, a->sizeVar, b->sizeVar);
            if (!basic_alpha(a->annotType, b->annotType, ctx)) return false;
            BinderScope bs(ctx, a->param, b->param);
            return term_alpha(a->a, b->a, ctx);
        }
        case TermKind::Fix: {
            SizeBinderScope sz(ctx, a->sizeVar, b->sizeVar);
            if (!basic_alpha(a->annotType, b->annotType, ctx)) return false;
            if (!sized_alpha(*a->fixResult, *b->fixResult, ctx)) return false;
            BinderScope self(ctx, a->selfVar, b->selfVar);
            BinderScope par(ctx, a->param, b->param);
            return term_alpha(a->a, b->a, ctx);
        }
        case TermKind::CaseList: {
            if (!term_alpha(a->a, b->a, ctx) || !term_alpha(a->b, b->b, ctx)) return false;
            BinderScope h(ctx, a->headVar, b->headVar);
            BinderScope t(ctx, a->tailVar, b->tailVar);
            return term_alpha(a->c, b->c, ctx);
        }
    }
    return false;
}

}  // namespace

bool alpha_equal_term(const TermPtr& a, const TermPtr& b) {
    AlphaCtx ctx;
    return term_alpha(a, b, ctx);
}

bool basic_equal(const BasicPtr& a, const BasicPtr& b) {
    AlphaCtx ctx;
    return basic_alpha(a, b, ctx);
}

bool alpha_equal(const Program& a, const Program& b) {
    if (a.defs.size() != b.defs.size()) return false;
    for (std::size_t i = 0; i < a.defs.size(); ++i) {
        const PlacedDef& da = a.defs[i];
        const PlacedDef& db = b.defs[i];
        AlphaCtx ctx;
        if (!(da.peer == db.peer) || da.name != db.name) return false;
        if (!sized_alpha(da.annot, db.annot, ctx)) return false;
        if (!term_alpha(da.body, db.body, ctx)) return false;
    }
    if (!(a.mainPeer == b.mainPeer)) return false;
    AlphaCtx ctx;
    return term_alpha(a.mainTerm, b.mainTerm, ctx);
}

// ---------------------------------------------------------------------------
// Pretty-printing. parse(pretty(p)) must reproduce p up to alpha-equivalence,
// so parenthesization mirrors the parser's precedence exactly.

namespace {

void print_term(const TermPtr& t, std::ostream& os);

// true when the rightmost unparenthesized spine of t contains a case,
// whose mandatory `|` arm would capture an enclosing case's separator
bool ends_in_open_case(const TermPtr& t) {
    switch (t->kind) {
        case TermKind::CaseList: return true;
        case TermKind::If: return ends_in_open_case(t->c);
        case TermKind::Lam:
        case TermKind::Fix: return ends_in_open_case(t->a);
        default: return false;
    }
}

bool is_atom_form(const TermPtr& t) {
    switch (t->kind) {
        case TermKind::Var:
        case TermKind::UnitLit:
        case TermKind::BoolLit:
        case TermKind::NatLit:
        case TermKind::Succ:
        case TermKind::Nil:
        case TermKind::Cons:
        case TermKind::Get:
            return true;
        default:
            return false;
    }
}

void print_atom(const TermPtr& t, std::ostream& os) {
    if (is_atom_form(t)) {
        print_term(t, os);
    } else {
        os << '(';
        print_term(t, os);
        os << ')';
    }
}

void print_basic(const BasicPtr& b, std::ostream& os) {
    switch (b->kind) {
        case BasicKind::Unit: os << "Unit"; break;
        case BasicKind::Bool: os << "Bool"; break;
        case BasicKind::Nat: os << "Nat"; break;
        case BasicKind::List:
            os << "List[";
            print_basic(b->elem, os);
            os << ']';
            break;
        case BasicKind::Fun:
            os << "forall " << b->sizeVar << ". (";
            print_basic(b->argType, os);
            os << ", " << arith::to_string(b->argSize) << ") -> ";
            os << pretty(*b->result);
            break;
    }
}

void print_term(const TermPtr& t, std::ostream& os) {
    switch (t->kind) {
        case TermKind::Var: os << t->name; break;
        case TermKind::UnitLit: os << "()"; break;
        case TermKind::BoolLit: os << (t->boolVal ? "true" : "false"); break;
        case TermKind::NatLit: os << t->natVal; break;
        case TermKind::Succ:
            os << "S(";
            print_term(t->a, os);
            os << ')';
            break;
        case TermKind::Nil:
            os << "nil[";
            print_basic(t->annotType, os);
            os << ']';
            break;
        case TermKind::Cons:
            os << "cons(";
            print_term(t->a, os);
            os << ", ";
            print_term(t->b, os);
            os << ')';
            break;
        case TermKind::Get:
            os << "get " << t->peer.name << " { ";
            print_term(t->a, os);
            os << " }";
            break;
        case TermKind::App: {
            // application chains print left-assoc; head may itself be an app
            if (t->a->kind == TermKind::App || is_atom_form(t->a)) {
                print_term(t->a, os);
            } else {
                os << '(';
                print_term(t->a, os);
                os << ')';
            }
            os << ' ';
            print_atom(t->b, os);
            break;
        }
        case TermKind::If:
            os << "if ";
            print_term(t->a, os);
            os << " then ";
            print_term(t->b, os);
            os << " else ";
            print_term(t->c, os);
            break;
        case TermKind::Lam:
            os << "fun (" << t->param << " : ";
            print_basic(t->annotType, os);
            os << " @ " << t->sizeVar << ") => ";
            print_term(t->a, os);
            break;
        case TermKind::Fix:
            os << "fix " << t->selfVar << " (" << t->param << " : ";
            print_basic(t->annotType, os);
            os << " @ " << t->sizeVar << ") : " << pretty(*t->fixResult) << " => ";
            print_term(t->a, os);
            break;
        case TermKind::CaseList:
            os << "case ";
            print_term(t->a, os);
            os << " of nil => ";
            // a nested case would swallow this case's cons arm
            if (ends_in_open_case(t->b)) {
                os << '(';
                print_term(t->b, os);
                os << ')';
            } else {
                print_term(t->b, os);
            }
            os << " | cons(" << t->headVar << ", " << t->tailVar << ") => ";
            print_term(t->c, os);
            break;
    }
}

}  // namespace

std::string pretty(const TermPtr& t) {
    std::ostringstream os;
    print_term(t, os);
    return os.str();
}

std::string pretty(const BasicPtr& b) {
    std::ostringstream os;
    print_basic(b, os);
    return os.str();
}

std::string pretty(const SizedType& t) {
    std::ostringstream os;
    os << '(';
    print_basic(t.base, os);
    os << ", " << arith::to_string(t.size) << ", " << arith::to_string(t.latency) << ')';
    return os.str();
}

std::string pretty(const Program& p) {
    std::ostringstream os;
    for (const PlacedDef& d : p.defs) {
        os << "at " << d.peer.name << ": val " << d.name << " : " << pretty(d.annot) << " = "
           << pretty(d.body) << '\n';
    }
    os << "main at " << p.mainPeer.name << " = " << pretty(p.mainTerm) << '\n';
    return os.str();
}

}  // namespace latc::syntax
