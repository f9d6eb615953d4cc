#include "latc/arith.hpp"

#include <algorithm>
#include <cassert>
#include <random>
#include <sstream>

namespace latc::arith {

namespace {

ArithPtr node(ArithKind k, Nat n, std::string v, ArithPtr l, ArithPtr r) {
    auto t = std::make_shared<ArithTerm>();
    t->kind = k;
    t->lit = std::move(n);
    t->var = std::move(v);
    t->lhs = std::move(l);
    t->rhs = std::move(r);
    return t;
}

}  // namespace

ArithPtr lit(Nat n) {
    assert(n >= 0);
    return node(ArithKind::Lit, std::move(n), {}, nullptr, nullptr);
}
ArithPtr zero() { return lit(0); }
ArithPtr variable(std::string name) {
    return node(ArithKind::Var, 0, std::move(name), nullptr, nullptr);
}
ArithPtr succ(ArithPtr a) { return node(ArithKind::Succ, 0, {}, std::move(a), nullptr); }
ArithPtr add(ArithPtr a, ArithPtr b) {
    return node(ArithKind::Add, 0, {}, std::move(a), std::move(b));
}
ArithPtr mul(ArithPtr a, ArithPtr b) {
    return node(ArithKind::Mul, 0, {}, std::move(a), std::move(b));
}
ArithPtr amin(ArithPtr a, ArithPtr b) {
    return node(ArithKind::Min, 0, {}, std::move(a), std::move(b));
}
ArithPtr amax(ArithPtr a, ArithPtr b) {
    return node(ArithKind::Max, 0, {}, std::move(a), std::move(b));
}

bool same_term(const ArithPtr& a, const ArithPtr& b) {
    if (a == b) return true;
    if (!a || !b || a->kind != b->kind) return false;
    switch (a->kind) {
        case ArithKind::Lit: return a->lit == b->lit;
        case ArithKind::Var: return a->var == b->var;
        case ArithKind::Succ: return same_term(a->lhs, b->lhs);
        default: return same_term(a->lhs, b->lhs) && same_term(a->rhs, b->rhs);
    }
}

namespace {

// Rendering follows the surface syntax: * binds tighter than +, both
// left-associative; min/max/S are written applied.
void render(const ArithPtr& a, std::ostream& os, int parentPrec, bool rightChild) {
    int prec = 0;
    switch (a->kind) {
        case ArithKind::Add: prec = 1; break;
        case ArithKind::Mul: prec = 2; break;
        default: prec = 3; break;
    }
    bool parens = prec < 3 && (prec < parentPrec || (prec == parentPrec && rightChild));
    if (parens) os << '(';
    switch (a->kind) {
        case ArithKind::Lit: os << a->lit; break;
        case ArithKind::Var: os << a->var; break;
        case ArithKind::Succ:
            os << "S(";
            render(a->lhs, os, 0, false);
            os << ')';
            break;
        case ArithKind::Add:
            render(a->lhs, os, 1, false);
            os << " + ";
            render(a->rhs, os, 1, true);
            break;
        case ArithKind::Mul:
            render(a->lhs, os, 2, false);
            os << " * ";
            render(a->rhs, os, 2, true);
            break;
        case ArithKind::Min:
        case ArithKind::Max:
            os << (a->kind == ArithKind::Min ? "min(" : "max(");
            render(a->lhs, os, 0, false);
            os << ", ";
            render(a->rhs, os, 0, false);
            os << ')';
            break;
    }
    if (parens) os << ')';
}

}  // namespace

std::string to_string(const ArithPtr& a) {
    std::ostringstream os;
    render(a, os, 0, false);
    return os.str();
}

static void collect_vars(const ArithPtr& a, std::set<std::string>& out) {
    switch (a->kind) {
        case ArithKind::Lit: return;
        case ArithKind::Var: out.insert(a->var); return;
        case ArithKind::Succ: collect_vars(a->lhs, out); return;
        default:
            collect_vars(a->lhs, out);
            collect_vars(a->rhs, out);
    }
}

std::set<std::string> free_vars(const ArithPtr& a) {
    std::set<std::string> out;
    collect_vars(a, out);
    return out;
}

ArithPtr substitute(const ArithPtr& a, const std::string& x, const ArithPtr& b) {
    switch (a->kind) {
        case ArithKind::Lit: return a;
        case ArithKind::Var: return a->var == x ? b : a;
        case ArithKind::Succ: return succ(substitute(a->lhs, x, b));
        case ArithKind::Add: return add(substitute(a->lhs, x, b), substitute(a->rhs, x, b));
        case ArithKind::Mul: return mul(substitute(a->lhs, x, b), substitute(a->rhs, x, b));
        case ArithKind::Min: return amin(substitute(a->lhs, x, b), substitute(a->rhs, x, b));
        case ArithKind::Max: return amax(substitute(a->lhs, x, b), substitute(a->rhs, x, b));
    }
    return a;
}

Nat denote(const ArithPtr& a, const Assignment& sigma) {
    switch (a->kind) {
        case ArithKind::Lit: return a->lit;
        case ArithKind::Var: {
            auto it = sigma.find(a->var);
            if (it == sigma.end()) throw MissingVariable(a->var);
            return it->second;
        }
        case ArithKind::Succ: return denote(a->lhs, sigma) + 1;
        case ArithKind::Add: return denote(a->lhs, sigma) + denote(a->rhs, sigma);
        case ArithKind::Mul: return denote(a->lhs, sigma) * denote(a->rhs, sigma);
        case ArithKind::Min: return std::min(denote(a->lhs, sigma), denote(a->rhs, sigma));
        case ArithKind::Max: return std::max(denote(a->lhs, sigma), denote(a->rhs, sigma));
    }
    throw std::logic_error("denote: bad kind");
}

// ---------------------------------------------------------------------------
// Polynomials

bool Polynomial::operator<(const Polynomial& o) const {
    return std::lexicographical_compare(
        coeffs.begin(), coeffs.end(), o.coeffs.begin(), o.coeffs.end(),
        [](const auto& a, const auto& b) {
            if (a.first != b.first) return a.first < b.first;
            return a.second < b.second;
        });
}

Polynomial Polynomial::constant(Nat n) {
    Polynomial p;
    if (n != 0) p.coeffs[Monomial{}] = std::move(n);
    return p;
}

Polynomial Polynomial::var(const std::string& name) {
    Polynomial p;
    p.coeffs[Monomial{{name}}] = 1;
    return p;
}

Polynomial Polynomial::plus(const Polynomial& o) const {
    Polynomial r = *this;
    for (const auto& [m, c] : o.coeffs) {
        auto& slot = r.coeffs[m];
        slot += c;
        if (slot == 0) r.coeffs.erase(m);
    }
    return r;
}

Polynomial Polynomial::times(const Polynomial& o) const {
    Polynomial r;
    for (const auto& [m1, c1] : coeffs) {
        for (const auto& [m2, c2] : o.coeffs) {
            Monomial m;
            m.vars.reserve(m1.vars.size() + m2.vars.size());
            std::merge(m1.vars.begin(), m1.vars.end(), m2.vars.begin(), m2.vars.end(),
                       std::back_inserter(m.vars));
            r.coeffs[m] += c1 * c2;
        }
    }
    return r;
}

Polynomial Polynomial::scaled(const Nat& k) const {
    Polynomial r;
    if (k == 0) return r;
    for (const auto& [m, c] : coeffs) r.coeffs[m] = c * k;
    return r;
}

bool Polynomial::dominated_by(const Polynomial& o) const {
    for (const auto& [m, c] : coeffs) {
        auto it = o.coeffs.find(m);
        if (it == o.coeffs.end() || it->second < c) return false;
    }
    return true;
}

std::optional<Polynomial> Polynomial::minus(const Polynomial& o) const {
    Polynomial r = *this;
    for (const auto& [m, c] : o.coeffs) {
        auto it = r.coeffs.find(m);
        if (it == r.coeffs.end() || it->second < c) return std::nullopt;
        it->second -= c;
        if (it->second == 0) r.coeffs.erase(it);
    }
    return r;
}

bool MinSet::operator<(const MinSet& o) const {
    return std::lexicographical_compare(alts.begin(), alts.end(), o.alts.begin(), o.alts.end());
}

NormalForm NormalForm::of_poly(Polynomial p) {
    NormalForm nf;
    nf.alts.push_back(MinSet{{std::move(p)}});
    return nf;
}

namespace {

// min M <= min N whenever every alternative of N sits above some
// alternative of M, coefficient-wise.
bool minset_pointwise_leq(const MinSet& m, const MinSet& n) {
    for (const Polynomial& q : n.alts) {
        bool covered = false;
        for (const Polynomial& p : m.alts) {
            if (p.dominated_by(q)) {
                covered = true;
                break;
            }
        }
        if (!covered) return false;
    }
    return true;
}

MinSet canonical_minset(std::vector<Polynomial> polys) {
    std::sort(polys.begin(), polys.end());
    polys.erase(std::unique(polys.begin(), polys.end()), polys.end());
    // keep the minimal elements: a dominated-from-below poly never wins a min
    std::vector<Polynomial> kept;
    for (std::size_t i = 0; i < polys.size(); ++i) {
        bool drop = false;
        for (std::size_t j = 0; j < polys.size(); ++j) {
            if (i != j && polys[j].dominated_by(polys[i])) {
                drop = true;
                break;
            }
        }
        if (!drop) kept.push_back(polys[i]);
    }
    return MinSet{std::move(kept)};
}

NormalForm canonical(std::vector<MinSet> raw) {
    std::vector<MinSet> sets;
    sets.reserve(raw.size());
    for (auto& m : raw) sets.push_back(canonical_minset(std::move(m.alts)));
    std::sort(sets.begin(), sets.end());
    sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
    // keep the maximal min-sets
    std::vector<MinSet> kept;
    for (std::size_t i = 0; i < sets.size(); ++i) {
        bool drop = false;
        for (std::size_t j = 0; j < sets.size(); ++j) {
            if (i != j && minset_pointwise_leq(sets[i], sets[j]) &&
                !minset_pointwise_leq(sets[j], sets[i])) {
                drop = true;
                break;
            }
        }
        if (!drop) kept.push_back(sets[i]);
    }
    // mutually-dominating distinct sets cannot both survive minimization,
    // but guard the degenerate equal-value case deterministically anyway
    if (kept.empty() && !sets.empty()) kept.push_back(sets.front());
    NormalForm nf;
    nf.alts = std::move(kept);
    return nf;
}

NormalForm nf_add(const NormalForm& a, const NormalForm& b) {
    std::vector<MinSet> out;
    for (const MinSet& ma : a.alts)
        for (const MinSet& mb : b.alts) {
            MinSet m;
            for (const Polynomial& p : ma.alts)
                for (const Polynomial& q : mb.alts) m.alts.push_back(p.plus(q));
            out.push_back(std::move(m));
        }
    return canonical(std::move(out));
}

NormalForm nf_mul(const NormalForm& a, const NormalForm& b) {
    std::vector<MinSet> out;
    for (const MinSet& ma : a.alts)
        for (const MinSet& mb : b.alts) {
            MinSet m;
            for (const Polynomial& p : ma.alts)
                for (const Polynomial& q : mb.alts) m.alts.push_back(p.times(q));
            out.push_back(std::move(m));
        }
    return canonical(std::move(out));
}

NormalForm nf_min(const NormalForm& a, const NormalForm& b) {
    // min(max A, max B) = max over pairs of the merged min-sets
    std::vector<MinSet> out;
    for (const MinSet& ma : a.alts)
        for (const MinSet& mb : b.alts) {
            MinSet m = ma;
            m.alts.insert(m.alts.end(), mb.alts.begin(), mb.alts.end());
            out.push_back(std::move(m));
        }
    return canonical(std::move(out));
}

NormalForm nf_max(const NormalForm& a, const NormalForm& b) {
    std::vector<MinSet> out = a.alts;
    out.insert(out.end(), b.alts.begin(), b.alts.end());
    return canonical(std::move(out));
}

}  // namespace

NormalForm normalize(const ArithPtr& a) {
    switch (a->kind) {
        case ArithKind::Lit: return NormalForm::of_poly(Polynomial::constant(a->lit));
        case ArithKind::Var: return NormalForm::of_poly(Polynomial::var(a->var));
        case ArithKind::Succ:
            return nf_add(normalize(a->lhs), NormalForm::of_poly(Polynomial::constant(1)));
        case ArithKind::Add: return nf_add(normalize(a->lhs), normalize(a->rhs));
        case ArithKind::Mul: return nf_mul(normalize(a->lhs), normalize(a->rhs));
        case ArithKind::Min: return nf_min(normalize(a->lhs), normalize(a->rhs));
        case ArithKind::Max: return nf_max(normalize(a->lhs), normalize(a->rhs));
    }
    throw std::logic_error("normalize: bad kind");
}

namespace {

ArithPtr embed_poly(const Polynomial& p) {
    if (p.coeffs.empty()) return zero();
    ArithPtr acc;
    for (const auto& [m, c] : p.coeffs) {
        ArithPtr term;
        if (m.vars.empty()) {
            term = lit(c);
        } else {
            for (const std::string& v : m.vars) {
                term = term ? mul(term, variable(v)) : variable(v);
            }
            if (c != 1) term = mul(lit(c), term);
        }
        acc = acc ? add(acc, term) : term;
    }
    return acc;
}

ArithPtr embed_minset(const MinSet& m) {
    ArithPtr acc;
    for (const Polynomial& p : m.alts) {
        ArithPtr t = embed_poly(p);
        acc = acc ? amin(acc, t) : t;
    }
    return acc;
}

}  // namespace

ArithPtr embed(const NormalForm& nf) {
    ArithPtr acc;
    for (const MinSet& m : nf.alts) {
        ArithPtr t = embed_minset(m);
        acc = acc ? amax(acc, t) : t;
    }
    return acc ? acc : zero();
}

ArithPtr simplify(const ArithPtr& a) { return embed(normalize(a)); }

// ---------------------------------------------------------------------------
// Rewriting with assumption equalities

namespace {

std::size_t nf_weight(const NormalForm& nf) {
    std::size_t w = 0;
    for (const MinSet& m : nf.alts)
        for (const Polynomial& p : m.alts) w += 1 + p.coeffs.size();
    return w;
}

std::string nf_key(const NormalForm& nf) { return to_string(embed(nf)); }

// total order used to orient equalities; smaller is the rewrite target
bool nf_smaller(const NormalForm& a, const NormalForm& b) {
    std::size_t wa = nf_weight(a), wb = nf_weight(b);
    if (wa != wb) return wa < wb;
    return nf_key(a) < nf_key(b);
}

struct Rule {
    NormalForm from, to;  // from is the larger side
    bool polyRule;        // both sides plain polynomials
};

std::vector<Rule> orient_rules(const AssumptionSet& phi) {
    std::vector<Rule> rules;
    for (const Constraint& c : phi) {
        if (c.kind != Constraint::Kind::Eq) continue;
        NormalForm l = normalize(c.lhs), r = normalize(c.rhs);
        if (l == r) continue;
        Rule rule;
        if (nf_smaller(l, r)) {
            rule.from = std::move(r);
            rule.to = std::move(l);
        } else {
            rule.from = std::move(l);
            rule.to = std::move(r);
        }
        rule.polyRule = rule.from.is_polynomial() && rule.to.is_polynomial();
        rules.push_back(std::move(rule));
    }
    return rules;
}

// Subtract k copies of `from` and add k copies of `to`, with k maximal.
// Valid under the assumption from = to.
bool apply_poly_rule(Polynomial& p, const Polynomial& from, const Polynomial& to) {
    if (from.coeffs.empty()) return false;
    std::optional<Nat> k;
    for (const auto& [m, c] : from.coeffs) {
        auto it = p.coeffs.find(m);
        if (it == p.coeffs.end()) return false;
        Nat q = it->second / c;
        if (q == 0) return false;
        if (!k || q < *k) k = q;
    }
    auto reduced = p.minus(from.scaled(*k));
    assert(reduced);
    p = reduced->plus(to.scaled(*k));
    return true;
}

constexpr int kRewriteCap = 64;

}  // namespace

NormalForm rewrite_with(const AssumptionSet& phi, NormalForm nf) {
    std::vector<Rule> rules = orient_rules(phi);
    if (rules.empty()) return nf;
    int steps = 0;
    bool changed = true;
    while (changed && steps < kRewriteCap) {
        changed = false;
        for (const Rule& rule : rules) {
            if (steps >= kRewriteCap) break;
            if (nf == rule.from) {
                nf = rule.to;
                ++steps;
                changed = true;
                continue;
            }
            if (!rule.polyRule) continue;
            for (MinSet& m : nf.alts) {
                for (Polynomial& p : m.alts) {
                    if (apply_poly_rule(p, rule.from.polynomial(), rule.to.polynomial())) {
                        ++steps;
                        changed = true;
                    }
                }
            }
            if (changed) {
                // re-canonicalize after leaf edits
                std::vector<MinSet> sets = std::move(nf.alts);
                nf = canonical(std::move(sets));
            }
        }
    }
    return nf;
}

// ---------------------------------------------------------------------------
// Inequality rules

namespace {

struct LeqFact {
    NormalForm lhs, rhs;
    bool polyFact;
};

struct LeqProver {
    std::vector<LeqFact> facts;
    std::set<std::pair<std::string, std::string>> onPath;

    bool nf_leq(const NormalForm& a, const NormalForm& b, int depth);

    bool minset_leq(const MinSet& m, const MinSet& n, int depth) {
        for (const Polynomial& q : n.alts) {
            bool covered = false;
            for (const Polynomial& p : m.alts) {
                if (poly_leq(p, q, depth)) {
                    covered = true;
                    break;
                }
            }
            if (!covered) return false;
        }
        return true;
    }

    bool poly_leq(const Polynomial& p, const Polynomial& q, int depth);
};

// Greedy multivariate division: p = u*quot + rem over natural coefficients.
std::pair<Polynomial, Polynomial> poly_divide(const Polynomial& p, const Polynomial& u) {
    Polynomial quot, rem = p;
    if (u.coeffs.empty()) return {quot, rem};
    const auto& lead = *u.coeffs.rbegin();  // largest monomial in map order
    bool progress = true;
    while (progress) {
        progress = false;
        for (auto it = rem.coeffs.rbegin(); it != rem.coeffs.rend(); ++it) {
            const Monomial& m = it->first;
            // does lead.first divide m?
            Monomial ratio;
            {
                std::vector<std::string> rest;
                auto needle = lead.first.vars;
                auto hay = m.vars;
                std::size_t ni = 0;
                bool ok = true;
                for (std::size_t hi = 0; hi < hay.size(); ++hi) {
                    if (ni < needle.size() && hay[hi] == needle[ni]) {
                        ++ni;
                    } else {
                        rest.push_back(hay[hi]);
                    }
                }
                if (ni != needle.size()) ok = false;
                if (!ok) continue;
                ratio.vars = std::move(rest);
            }
            // max multiplier that keeps every affected coefficient non-negative
            std::optional<Nat> k;
            for (const auto& [um, uc] : u.coeffs) {
                Monomial target;
                std::merge(um.vars.begin(), um.vars.end(), ratio.vars.begin(), ratio.vars.end(),
                           std::back_inserter(target.vars));
                auto rit = rem.coeffs.find(target);
                Nat avail = rit == rem.coeffs.end() ? Nat(0) : rit->second;
                Nat q = avail / uc;
                if (!k || q < *k) k = q;
            }
            if (!k || *k == 0) continue;
            Polynomial ratioPoly;
            ratioPoly.coeffs[ratio] = *k;
            auto sub = rem.minus(u.times(ratioPoly));
            assert(sub);
            rem = *sub;
            quot = quot.plus(ratioPoly);
            progress = true;
            break;
        }
    }
    return {quot, rem};
}

std::string poly_key(const Polynomial& p) { return to_string(embed_poly(p)); }

bool LeqProver::poly_leq(const Polynomial& p, const Polynomial& q, int depth) {
    if (p.dominated_by(q)) return true;
    if (depth <= 0) return false;
    auto key = std::make_pair(poly_key(p), poly_key(q));
    if (onPath.count(key)) return false;
    onPath.insert(key);
    bool ok = false;
    for (const LeqFact& f : facts) {
        if (f.polyFact) {
            const Polynomial& u = f.lhs.polynomial();
            const Polynomial& v = f.rhs.polynomial();
            // p = u*k + r  ==>  p <= v*k + r, chase the right side
            auto [k, r] = poly_divide(p, u);
            if (!k.coeffs.empty()) {
                Polynomial chased = v.times(k).plus(r);
                if (poly_leq(chased, q, depth - 1)) {
                    ok = true;
                    break;
                }
            }
        }
        // transitivity through the fact as a whole
        NormalForm pn = NormalForm::of_poly(p), qn = NormalForm::of_poly(q);
        if (nf_leq(pn, f.lhs, depth - 1) && nf_leq(f.rhs, qn, depth - 1)) {
            ok = true;
            break;
        }
    }
    onPath.erase(key);
    return ok;
}

bool LeqProver::nf_leq(const NormalForm& a, const NormalForm& b, int depth) {
    for (const MinSet& m : a.alts) {
        bool covered = false;
        for (const MinSet& n : b.alts) {
            if (minset_leq(m, n, depth)) {
                covered = true;
                break;
            }
        }
        if (!covered) return false;
    }
    return true;
}

constexpr int kLeqDepth = 6;
constexpr std::size_t kInternalFalsifyBudget = 5000;

}  // namespace

std::string to_string(const Constraint& c) {
    return to_string(c.lhs) + (c.kind == Constraint::Kind::Eq ? " = " : " <= ") +
           to_string(c.rhs);
}

bool satisfies(const Constraint& c, const Assignment& sigma) {
    Nat l = denote(c.lhs, sigma), r = denote(c.rhs, sigma);
    return c.kind == Constraint::Kind::Eq ? l == r : l <= r;
}

TriState prove_eq(const AssumptionSet& phi, const ArithPtr& a, const ArithPtr& b) {
    NormalForm na = rewrite_with(phi, normalize(a));
    NormalForm nb = rewrite_with(phi, normalize(b));
    if (na == nb) return TriState::Proved;
    if (falsify(phi, Constraint::eq(a, b), kInternalFalsifyBudget)) return TriState::Disproved;
    return TriState::Unknown;
}

TriState prove_leq(const AssumptionSet& phi, const ArithPtr& a, const ArithPtr& b) {
    NormalForm na = rewrite_with(phi, normalize(a));
    NormalForm nb = rewrite_with(phi, normalize(b));
    LeqProver prover;
    for (const Constraint& c : phi) {
        NormalForm l = rewrite_with(phi, normalize(c.lhs));
        NormalForm r = rewrite_with(phi, normalize(c.rhs));
        bool poly = l.is_polynomial() && r.is_polynomial();
        if (c.kind == Constraint::Kind::Eq) {
            prover.facts.push_back({l, r, poly});
            prover.facts.push_back({r, l, poly});
        } else {
            prover.facts.push_back({std::move(l), std::move(r), poly});
        }
    }
    if (prover.nf_leq(na, nb, kLeqDepth)) return TriState::Proved;
    if (falsify(phi, Constraint::leq(a, b), kInternalFalsifyBudget)) return TriState::Disproved;
    return TriState::Unknown;
}

std::optional<Assignment> falsify(const AssumptionSet& phi, const Constraint& claim,
                                  std::size_t budget) {
    std::set<std::string> varSet = free_vars(claim.lhs);
    collect_vars(claim.rhs, varSet);
    for (const Constraint& c : phi) {
        collect_vars(c.lhs, varSet);
        collect_vars(c.rhs, varSet);
    }
    std::vector<std::string> vars(varSet.begin(), varSet.end());

    auto check = [&](const Assignment& sigma) -> bool {
        for (const Constraint& c : phi)
            if (!satisfies(c, sigma)) return false;
        return !satisfies(claim, sigma);
    };

    std::size_t used = 0;
    if (vars.empty()) {
        Assignment sigma;
        if (budget >= 1 && check(sigma)) return sigma;
        return std::nullopt;
    }

    if (vars.size() <= 3) {
        // exhaustive odometer over 0..16, last variable fastest
        std::vector<int> vals(vars.size(), 0);
        bool exhausted = false;
        while (!exhausted) {
            if (used >= budget) return std::nullopt;
            ++used;
            Assignment sigma;
            for (std::size_t i = 0; i < vars.size(); ++i) sigma[vars[i]] = vals[i];
            if (check(sigma)) return sigma;
            exhausted = true;
            for (std::size_t i = vars.size(); i-- > 0;) {
                if (++vals[i] <= 16) {
                    exhausted = false;
                    break;
                }
                vals[i] = 0;
            }
        }
    }

    std::mt19937_64 rng(0x1a7c5eedULL);
    std::size_t draw = 0;
    while (used < budget) {
        ++used;
        ++draw;
        Assignment sigma;
        for (const std::string& v : vars) {
            // mostly small values, with an occasional larger probe
            Nat bound = (draw % 5 == 0) ? 128 : 16;
            sigma[v] = Nat(rng() % (static_cast<std::uint64_t>(bound) + 1));
        }
        if (check(sigma)) return sigma;
    }
    return std::nullopt;
}

}  // namespace latc::arith
