#include "certiplan/pb.h"

#include <algorithm>
#include <cassert>
#include <map>
#include <sstream>

namespace certiplan {

VarId VarPool::intern(std::string_view name) {
    auto it = index_.find(std::string(name));
    if (it != index_.end())
        return it->second;
    VarId id = static_cast<VarId>(names_.size());
    names_.emplace_back(name);
    index_.emplace(names_.back(), id);
    return id;
}

VarId VarPool::lookup(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end())
        throw std::runtime_error("unknown variable: " + std::string(name));
    return it->second;
}

PBConstraint PBConstraint::make(std::vector<Term> terms, long long degree) {
    PBConstraint c;
    c.terms_ = std::move(terms);
    c.degree_ = degree;
    assert(degree >= 0);
    assert(std::is_sorted(c.terms_.begin(), c.terms_.end(),
                          [](const Term &a, const Term &b) { return a.var < b.var; }));
    return c;
}

long long PBConstraint::coef_sum() const {
    long long m = 0;
    for (const Term &t : terms_)
        m += t.coef;
    return m;
}

const Term *PBConstraint::find(VarId v) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), v,
                               [](const Term &t, VarId x) { return t.var < x; });
    if (it != terms_.end() && it->var == v)
        return &*it;
    return nullptr;
}

namespace {

using I128 = __int128;

long long to_ll_checked(I128 v, const char *ctx) {
    if (v > static_cast<I128>(INT64_MAX) || v < static_cast<I128>(INT64_MIN))
        throw CpError(std::string("integer overflow in ") + ctx);
    return static_cast<long long>(v);
}

PBConstraint from_accumulated(std::map<VarId, I128> &acc, I128 deg) {
    std::vector<Term> terms;
    terms.reserve(acc.size());
    I128 coef_sum = 0;
    for (auto &[var, a] : acc) {
        if (a == 0)
            continue;
        if (a > 0) {
            terms.push_back(Term{var, to_ll_checked(a, "normalize"), true});
            coef_sum += a;
        } else {
            // a*x = a + (-a)*~x
            deg -= a;
            terms.push_back(Term{var, to_ll_checked(-a, "normalize"), false});
            coef_sum += -a;
        }
    }
    if (deg <= 0)
        return PBConstraint();
    if (deg > coef_sum)
        return PBConstraint::make({}, 1);
    // keep slack arithmetic overflow-free downstream
    if (coef_sum > (static_cast<I128>(1) << 62))
        throw CpError("constraint coefficients too large");
    return PBConstraint::make(std::move(terms), to_ll_checked(deg, "normalize"));
}

} // namespace

PBConstraint normalize(const std::vector<RawTerm> &raw, long long degree) {
    std::map<VarId, I128> acc;
    I128 deg = degree;
    for (const RawTerm &t : raw) {
        if (t.coef == 0)
            continue;
        if (t.lit.positive) {
            acc[t.lit.var] += t.coef;
        } else {
            // c*~x = c - c*x
            acc[t.lit.var] -= t.coef;
            deg -= t.coef;
        }
    }
    return from_accumulated(acc, deg);
}

PBConstraint renormalize(const PBConstraint &c) {
    std::map<VarId, I128> acc;
    I128 deg = c.degree();
    for (const Term &t : c.terms()) {
        if (t.positive) {
            acc[t.var] += t.coef;
        } else {
            acc[t.var] -= t.coef;
            deg -= t.coef;
        }
    }
    return from_accumulated(acc, deg);
}

bool equal_normalized(const PBConstraint &a, const PBConstraint &b) {
    return renormalize(a) == renormalize(b);
}

PBConstraint negate(const PBConstraint &c) {
    // sum(a_i l_i) <= A - 1  <=>  sum(a_i ~l_i) >= M - A + 1
    std::vector<RawTerm> raw;
    raw.reserve(c.terms().size());
    for (const Term &t : c.terms())
        raw.push_back(RawTerm{t.coef, Lit(t.var, !t.positive)});
    I128 deg = static_cast<I128>(c.coef_sum()) - c.degree() + 1;
    return normalize(raw, to_ll_checked(deg, "negate"));
}

PBConstraint lin_combine(const PBConstraint &a, long long ca,
                         const PBConstraint &b, long long cb) {
    if (ca < 0 || cb < 0)
        throw CpError("linear combination requires non-negative multipliers");
    std::map<VarId, I128> acc;
    I128 deg = 0;
    auto feed = [&](const PBConstraint &c, long long mult) {
        for (const Term &t : c.terms()) {
            I128 w = static_cast<I128>(t.coef) * mult;
            if (t.positive) {
                acc[t.var] += w;
            } else {
                acc[t.var] -= w;
                deg -= w;
            }
        }
        deg += static_cast<I128>(c.degree()) * mult;
    };
    feed(a, ca);
    feed(b, cb);
    return from_accumulated(acc, deg);
}

PBConstraint divide_ceil(const PBConstraint &c, long long divisor) {
    if (divisor < 1)
        throw CpError("division requires a positive divisor");
    auto ceil_div = [divisor](long long v) { return v / divisor + (v % divisor != 0 ? 1 : 0); };
    std::vector<Term> terms;
    terms.reserve(c.terms().size());
    for (const Term &t : c.terms())
        terms.push_back(Term{t.var, ceil_div(t.coef), t.positive});
    return PBConstraint::make(std::move(terms), ceil_div(c.degree()));
}

PBConstraint saturate(const PBConstraint &c) {
    std::vector<Term> terms;
    terms.reserve(c.terms().size());
    for (const Term &t : c.terms()) {
        long long coef = std::min(t.coef, c.degree());
        if (coef > 0)
            terms.push_back(Term{t.var, coef, t.positive});
    }
    return PBConstraint::make(std::move(terms), c.degree());
}

PBConstraint reif_forward(VarId r, const PBConstraint &body) {
    std::vector<RawTerm> raw;
    raw.reserve(body.terms().size() + 1);
    raw.push_back(RawTerm{body.degree(), neg(r)});
    for (const Term &t : body.terms())
        raw.push_back(RawTerm{t.coef, t.lit()});
    return normalize(raw, body.degree());
}

PBConstraint reif_backward(VarId r, const PBConstraint &body) {
    I128 k = static_cast<I128>(body.coef_sum()) - body.degree() + 1;
    long long kk = to_ll_checked(k, "reif_backward");
    std::vector<RawTerm> raw;
    raw.reserve(body.terms().size() + 1);
    raw.push_back(RawTerm{kk, pos(r)});
    for (const Term &t : body.terms())
        raw.push_back(RawTerm{t.coef, Lit(t.var, !t.positive)});
    return normalize(raw, kk);
}

std::vector<PBConstraint> expand_reification(const Reification &r) {
    if (r.body.find(r.var))
        throw std::runtime_error("reification head occurs in its own body");
    switch (r.dir) {
    case ReifDir::Implies:
        return {reif_forward(r.var, r.body)};
    case ReifDir::ImpliedBy:
        return {reif_backward(r.var, r.body)};
    case ReifDir::Iff:
        return {reif_forward(r.var, r.body), reif_backward(r.var, r.body)};
    }
    return {};
}

ProofStep ProofStep::axiom(Lit l) {
    ProofStep s;
    s.kind = Kind::Axiom;
    s.lit = l;
    return s;
}

ProofStep ProofStep::lin(int id1, long long c1, int id2, long long c2) {
    ProofStep s;
    s.kind = Kind::Lin;
    s.id1 = id1;
    s.c1 = c1;
    s.id2 = id2;
    s.c2 = c2;
    return s;
}

ProofStep ProofStep::div(int id, long long c) {
    ProofStep s;
    s.kind = Kind::Div;
    s.id1 = id;
    s.c1 = c;
    return s;
}

ProofStep ProofStep::sat(int id) {
    ProofStep s;
    s.kind = Kind::Sat;
    s.id1 = id;
    return s;
}

ProofStep ProofStep::rup(PBConstraint claimed) {
    ProofStep s;
    s.kind = Kind::Rup;
    s.claimed = std::move(claimed);
    return s;
}

ProofStep ProofStep::red(PBConstraint claimed, std::vector<ProofStep> sub,
                         bool contradiction, int end_id) {
    ProofStep s;
    s.kind = Kind::Red;
    s.claimed = std::move(claimed);
    s.sub = std::move(sub);
    s.sub_contradiction = contradiction;
    s.sub_end_id = end_id;
    return s;
}

std::string constraint_to_text(const PBConstraint &c, const VarPool &pool) {
    std::ostringstream out;
    bool first = true;
    for (const Term &t : c.terms()) {
        if (!first)
            out << ' ';
        first = false;
        out << t.coef << ' ';
        if (!t.positive)
            out << '~';
        out << pool.name(t.var);
    }
    if (!first)
        out << ' ';
    out << ">= " << c.degree();
    return out.str();
}

PBConstraint constraint_from_text(std::string_view text, VarPool &pool) {
    std::istringstream in{std::string(text)};
    std::vector<RawTerm> raw;
    std::string tok;
    bool saw_ge = false;
    long long degree = 0;
    while (in >> tok) {
        if (tok == ">=") {
            if (!(in >> degree))
                throw std::runtime_error("constraint: missing degree after '>='");
            if (in >> tok)
                throw std::runtime_error("constraint: trailing tokens after degree");
            saw_ge = true;
            break;
        }
        long long coef = 0;
        try {
            size_t pos = 0;
            coef = std::stoll(tok, &pos);
            if (pos != tok.size())
                throw std::invalid_argument(tok);
        } catch (const std::exception &) {
            throw std::runtime_error("constraint: expected coefficient, got '" + tok + "'");
        }
        std::string lit_tok;
        if (!(in >> lit_tok))
            throw std::runtime_error("constraint: coefficient without literal");
        bool positive = true;
        std::string_view name = lit_tok;
        if (!name.empty() && name[0] == '~') {
            positive = false;
            name.remove_prefix(1);
        }
        if (name.empty() || name[0] != 'x')
            throw std::runtime_error("constraint: malformed literal '" + lit_tok + "'");
        for (char ch : name)
            if (!(isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '-'))
                throw std::runtime_error("constraint: malformed literal '" + lit_tok + "'");
        raw.push_back(RawTerm{coef, Lit(pool.intern(name), positive)});
    }
    if (!saw_ge)
        throw std::runtime_error("constraint: missing '>='");
    return normalize(raw, degree);
}

} // namespace certiplan
