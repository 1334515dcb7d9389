#include "certiplan/cost_lemmas.h"

#include <cassert>

namespace certiplan {

namespace {

// Pairs every emitted step with its computed constraint so the construction
// can branch on intermediate shapes and stop at the first contradiction.
struct Deriver {
    ScriptBuilder &b;
    VarCatalog &cat;

    struct Val {
        SymRef ref;
        PBConstraint c;
    };

    Val axiom(Lit l) { return {b.axiom(l), PBConstraint::axiom(l)}; }
    Val scope(ConstraintRef r) { return {b.scope(r), encoding_ref_constraint(cat, r)}; }
    Val lin(const Val &x, long long cx, const Val &y, long long cy) {
        return {b.lin(x.ref, cx, y.ref, cy), lin_combine(x.c, cx, y.c, cy)};
    }
    Val sat(const Val &x) { return {b.sat(x.ref), saturate(x.c)}; }
};

ConstraintRef ge_ref(long long k, bool primed, bool fwd) {
    return ConstraintRef{ReifKey{primed ? ReifFamily::Gep : ReifFamily::Ge, k}, fwd};
}

ConstraintRef mm_ref(long long l, bool primed, bool fwd) {
    return ConstraintRef{ReifKey{primed ? ReifFamily::MmGep : ReifFamily::MmGe, l}, fwd};
}

} // namespace

PBConstraint cost_monotone_claim(VarCatalog &cat, long long from, long long to, bool primed) {
    VarId vf = primed ? cat.mmgep(from) : cat.mmge(from);
    VarId vt = primed ? cat.mmgep(to) : cat.mmge(to);
    return normalize({RawTerm{1, neg(vf)}, RawTerm{1, pos(vt)}}, 1);
}

PBConstraint cost_step_claim(VarCatalog &cat, long long l, long long m) {
    return normalize({RawTerm{1, neg(cat.mmge(l))}, RawTerm{1, neg(cat.delta(m))},
                      RawTerm{1, pos(cat.mmgep(l + m))}},
                     1);
}

SymRef emit_cost_ge_implication(ScriptBuilder &b, VarCatalog &cat, LazyCostDecls &decls,
                                long long from, long long to, bool primed) {
    const long long bound = cat.bound();
    long long cf = clip_to_bound(from, bound), ct = clip_to_bound(to, bound);
    if (cf < ct)
        throw std::runtime_error("cost implication with increasing clipped threshold");
    decls.mm.insert(from);
    decls.mm.insert(to);
    decls.ge.insert(cf);
    decls.ge.insert(ct);

    PBConstraint claim = cost_monotone_claim(cat, from, to, primed);
    if (auto hit = b.find_derived(claim))
        return *hit;
    SymRef ref;
    if (cf == ct) {
        // Same clipped value: the two resolutions alone close the negation.
        ref = b.rup(claim);
    } else {
        ref = b.red(claim, true, [&](ScriptBuilder &sb, SymRef negref) -> SymRef {
            Deriver d{sb, cat};
            Deriver::Val ncl{negref, negate(claim)};
            VarId vf = primed ? cat.mmgep(from) : cat.mmge(from);
            VarId vt = primed ? cat.mmgep(to) : cat.mmge(to);
            auto u_from = d.lin(ncl, 1, d.axiom(pos(vt)), 1);  // x_from >= 1
            auto u_to = d.lin(ncl, 1, d.axiom(neg(vf)), 1);    // ~x_to >= 1
            auto ge_hi = d.lin(u_from, 1, d.scope(mm_ref(from, primed, true)), 1);
            auto cur = d.lin(ge_hi, cf, d.scope(ge_ref(cf, primed, true)), 1);
            if (cur.c.is_contradiction())
                return cur.ref;
            long long delta = cf - ct;
            for (int i = 0; i < 63; ++i)
                if (delta & (1LL << i)) {
                    VarId bit = primed ? cat.cost_bit_primed(i) : cat.cost_bit(i);
                    cur = d.lin(cur, 1, d.axiom(neg(bit)), 1LL << i);
                }
            for (int i = 0; i < 63; ++i)
                if (delta & (1LL << i)) {
                    VarId bit = primed ? cat.cost_bit_primed(i) : cat.cost_bit(i);
                    cur = d.lin(cur, 1, d.axiom(pos(bit)), 1LL << i);
                }
            auto ge_lo = d.lin(cur, 1, d.scope(ge_ref(ct, primed, false)), 1);
            if (ge_lo.c.is_contradiction())
                return ge_lo.ref;
            auto ge_lo1 = d.sat(ge_lo);
            auto mm_to = d.lin(ge_lo1, 1, d.scope(mm_ref(to, primed, false)), 1);
            if (mm_to.c.is_contradiction())
                return mm_to.ref;
            auto end = d.lin(mm_to, 1, u_to, 1);
            assert(end.c.is_contradiction());
            return end.ref;
        });
    }
    b.remember(claim, ref);
    return ref;
}

SymRef emit_cost_monotone(ScriptBuilder &b, VarCatalog &cat, LazyCostDecls &decls,
                          long long j, long long k, bool primed) {
    if (k < 0)
        throw std::runtime_error("cost monotone requires k >= 0");
    return emit_cost_ge_implication(b, cat, decls, j + k, j, primed);
}

SymRef emit_cost_step(ScriptBuilder &b, VarCatalog &cat, LazyCostDecls &decls,
                      long long l, long long m) {
    if (m < 0)
        throw std::runtime_error("cost step requires m >= 0");
    const long long bound = cat.bound();
    const long long mc = cat.max_cost_value();
    const long long lo = clip_to_bound(l, bound), hi = clip_to_bound(l + m, bound);
    decls.mm.insert(l);
    decls.mm.insert(l + m);
    decls.ge.insert(lo);
    decls.ge.insert(hi);
    decls.delta.insert(m);

    PBConstraint claim = cost_step_claim(cat, l, m);
    if (auto hit = b.find_derived(claim))
        return *hit;
    SymRef ref;
    if (m > mc) {
        // The difference reification is unsatisfiable at this bit width, so
        // assuming the action's delta closes the negation by itself.
        ref = b.rup(claim);
    } else {
        ref = b.red(claim, true, [&](ScriptBuilder &sb, SymRef negref) -> SymRef {
            Deriver d{sb, cat};
            Deriver::Val ncl{negref, negate(claim)};
            Lit mm_lo = pos(cat.mmge(l));
            Lit dl = pos(cat.delta(m));
            Lit mm_hi_p = pos(cat.mmgep(l + m));
            auto u_mm = d.lin(d.lin(ncl, 1, d.axiom(dl.negated()), 1), 1, d.axiom(mm_hi_p), 1);
            auto partial = d.lin(ncl, 1, d.axiom(mm_lo.negated()), 1);
            auto u_delta = d.lin(partial, 1, d.axiom(mm_hi_p), 1);
            auto u_nhi = d.lin(partial, 1, d.axiom(dl.negated()), 1);

            auto ge_lo = d.lin(u_mm, 1, d.scope(mm_ref(l, false, true)), 1);
            auto e = d.lin(ge_lo, lo, d.scope(ge_ref(lo, false, true)), 1);
            auto dd = d.lin(u_delta, 2,
                            d.scope(ConstraintRef{ReifKey{ReifFamily::DeltaPair, m}, true}), 1);
            auto dge = d.lin(dd, 1, d.axiom(neg(cat.delta_le(m))), 1);
            auto diff = d.lin(dge, m + mc,
                              d.scope(ConstraintRef{ReifKey{ReifFamily::DeltaGe, m}, true}), 1);
            auto f = d.lin(e, 1, diff, 1);
            if (f.c.is_contradiction())
                return f.ref;
            auto ngep = d.lin(u_nhi, 1, d.scope(mm_ref(l + m, true, false)), 1);
            Deriver::Val g =
                hi == 0 ? d.lin(ngep, 1, d.scope(ge_ref(0, true, false)), 1)
                        : d.lin(ngep, mc - hi + 1, d.scope(ge_ref(hi, true, false)), 1);
            if (g.c.is_contradiction())
                return g.ref;
            auto end = d.lin(f, 1, g, 1);
            assert(end.c.is_contradiction());
            return end.ref;
        });
    }
    b.remember(claim, ref);
    return ref;
}

namespace {

GeneratedCostLemma finish_standalone(VarPool &&pool, VarCatalog &cat, ScriptBuilder &b,
                                     LazyCostDecls &&decls, SymRef goal, PBConstraint claim) {
    decls.ge.insert(cat.bound());
    Task trivial; // no variables, no actions: only the cost machinery remains
    ScopeLayout layout = build_lemma_scope(trivial, cat, decls, {}, LemmaKind::Ind);
    GeneratedCostLemma out;
    out.script = b.resolve(layout, goal);
    out.decls = std::move(decls);
    out.claim = std::move(claim);
    out.scope = std::move(layout.db);
    out.pool = std::move(pool);
    return out;
}

} // namespace

GeneratedCostLemma gen_cost_monotone(long long j, long long k, long long bound, bool primed) {
    VarPool pool;
    Task trivial;
    VarCatalog cat(pool, trivial, bound);
    ScriptBuilder b;
    LazyCostDecls decls;
    SymRef goal = emit_cost_monotone(b, cat, decls, j, k, primed);
    PBConstraint claim = cost_monotone_claim(cat, j + k, j, primed);
    return finish_standalone(std::move(pool), cat, b, std::move(decls), goal, std::move(claim));
}

GeneratedCostLemma gen_cost_step(long long l, long long m, long long bound) {
    VarPool pool;
    Task trivial;
    VarCatalog cat(pool, trivial, bound);
    ScriptBuilder b;
    LazyCostDecls decls;
    SymRef goal = emit_cost_step(b, cat, decls, l, m);
    PBConstraint claim = cost_step_claim(cat, l, m);
    return finish_standalone(std::move(pool), cat, b, std::move(decls), goal, std::move(claim));
}

} // namespace certiplan
