#include "certiplan/encoding.h"

#include <algorithm>

namespace certiplan {

std::vector<Reification> TaskEncoding::partition(unsigned mask) const {
    std::vector<Reification> out;
    for (const TaggedReif &tr : reifs)
        if (tr.partitions & mask)
            out.push_back(tr.reif);
    return out;
}

namespace {

PBConstraint state_pattern_body(const Task &t, VarCatalog &cat, const std::vector<int> &members) {
    std::vector<RawTerm> raw;
    size_t m = 0;
    for (int v = 0; v < static_cast<int>(t.num_vars()); ++v) {
        bool in = m < members.size() && members[m] == v;
        if (in)
            ++m;
        raw.push_back(RawTerm{1, Lit(cat.state(v), in)});
    }
    return normalize(raw, static_cast<long long>(t.num_vars()));
}

PBConstraint cost_sum_ge(VarCatalog &cat, bool primed, long long k) {
    std::vector<RawTerm> raw;
    for (int i = 0; i < cat.bit_count(); ++i)
        raw.push_back(RawTerm{1LL << i, pos(primed ? cat.cost_bit_primed(i) : cat.cost_bit(i))});
    return normalize(raw, k);
}

} // namespace

TaskEncoding build_encoding(const Task &t, VarCatalog &cat, const LazyCostDecls &decls) {
    const long long B = cat.bound();
    for (long long k : decls.ge)
        if (k < 0 || k > B)
            throw EncodingError("ge threshold out of range: " + std::to_string(k));
    if (!decls.ge.count(B))
        throw EncodingError("bound threshold not declared");
    for (const Action &a : t.actions)
        if (!decls.delta.count(a.cost))
            throw EncodingError("undeclared delta for action cost " + std::to_string(a.cost));
    for (long long k : decls.delta)
        if (k < 0)
            throw EncodingError("delta value must be non-negative");

    TaskEncoding enc;
    enc.r_init = cat.r_init();
    enc.r_goal = cat.r_goal();
    enc.r_trans = cat.r_trans();
    const long long mc = cat.max_cost_value();

    enc.reifs.push_back(TaggedReif{
        ReifKey{ReifFamily::Init, 0},
        Reification{cat.r_init(), ReifDir::Iff, state_pattern_body(t, cat, t.init)},
        PART_INIT});

    {
        std::vector<RawTerm> raw;
        for (int v : t.goal)
            raw.push_back(RawTerm{1, pos(cat.state(v))});
        enc.reifs.push_back(TaggedReif{
            ReifKey{ReifFamily::Goal, 0},
            Reification{cat.r_goal(), ReifDir::Iff,
                        normalize(raw, static_cast<long long>(t.goal.size()))},
            PART_GOAL});
    }

    for (long long k : decls.delta) {
        {
            std::vector<RawTerm> raw;
            raw.push_back(RawTerm{1, pos(cat.delta_ge(k))});
            raw.push_back(RawTerm{1, pos(cat.delta_le(k))});
            enc.reifs.push_back(TaggedReif{ReifKey{ReifFamily::DeltaPair, k},
                                           Reification{cat.delta(k), ReifDir::Iff, normalize(raw, 2)},
                                           PART_TRANS | PART_GE});
        }
        {
            // primed cost - cost >= k
            std::vector<RawTerm> raw;
            for (int i = 0; i < cat.bit_count(); ++i) {
                raw.push_back(RawTerm{1LL << i, pos(cat.cost_bit_primed(i))});
                raw.push_back(RawTerm{1LL << i, neg(cat.cost_bit(i))});
            }
            enc.reifs.push_back(TaggedReif{ReifKey{ReifFamily::DeltaGe, k},
                                           Reification{cat.delta_ge(k), ReifDir::Iff, normalize(raw, k + mc)},
                                           PART_TRANS | PART_GE});
        }
        {
            // cost - primed cost >= -k
            std::vector<RawTerm> raw;
            for (int i = 0; i < cat.bit_count(); ++i) {
                raw.push_back(RawTerm{1LL << i, pos(cat.cost_bit(i))});
                raw.push_back(RawTerm{1LL << i, neg(cat.cost_bit_primed(i))});
            }
            enc.reifs.push_back(TaggedReif{ReifKey{ReifFamily::DeltaLe, k},
                                           Reification{cat.delta_le(k), ReifDir::Iff, normalize(raw, mc - k)},
                                           PART_TRANS | PART_GE});
        }
    }

    for (long long k : decls.ge)
        enc.reifs.push_back(TaggedReif{ReifKey{ReifFamily::Ge, k},
                                       Reification{cat.ge(k), ReifDir::Iff, cost_sum_ge(cat, false, k)},
                                       PART_INIT | PART_GOAL | PART_TRANS | PART_GE});
    for (long long k : decls.ge)
        enc.reifs.push_back(TaggedReif{ReifKey{ReifFamily::Gep, k},
                                       Reification{cat.gep(k), ReifDir::Iff, cost_sum_ge(cat, true, k)},
                                       PART_TRANS | PART_GE});

    for (int v = 0; v < static_cast<int>(t.num_vars()); ++v) {
        {
            std::vector<RawTerm> raw{RawTerm{1, pos(cat.geq(v))}, RawTerm{1, pos(cat.leq(v))}};
            enc.reifs.push_back(TaggedReif{ReifKey{ReifFamily::Eq, v},
                                           Reification{cat.eq(v), ReifDir::Iff, normalize(raw, 2)},
                                           PART_TRANS});
        }
        {
            std::vector<RawTerm> raw{RawTerm{1, pos(cat.state(v))}, RawTerm{1, neg(cat.state_primed(v))}};
            enc.reifs.push_back(TaggedReif{ReifKey{ReifFamily::Geq, v},
                                           Reification{cat.geq(v), ReifDir::Iff, normalize(raw, 1)},
                                           PART_TRANS});
        }
        {
            std::vector<RawTerm> raw{RawTerm{1, neg(cat.state(v))}, RawTerm{1, pos(cat.state_primed(v))}};
            enc.reifs.push_back(TaggedReif{ReifKey{ReifFamily::Leq, v},
                                           Reification{cat.leq(v), ReifDir::Iff, normalize(raw, 1)},
                                           PART_TRANS});
        }
    }

    for (size_t ai = 0; ai < t.actions.size(); ++ai) {
        const Action &a = t.actions[ai];
        std::vector<RawTerm> raw;
        raw.push_back(RawTerm{1, pos(cat.delta(a.cost))});
        for (int v : a.pre)
            raw.push_back(RawTerm{1, pos(cat.state(v))});
        for (int v : a.add)
            raw.push_back(RawTerm{1, pos(cat.state_primed(v))});
        for (int v : a.del)
            raw.push_back(RawTerm{1, neg(cat.state_primed(v))});
        for (int v = 0; v < static_cast<int>(t.num_vars()); ++v) {
            bool affected = std::binary_search(a.add.begin(), a.add.end(), v) ||
                            std::binary_search(a.del.begin(), a.del.end(), v);
            if (!affected)
                raw.push_back(RawTerm{1, pos(cat.eq(v))});
        }
        raw.push_back(RawTerm{1, neg(cat.gep(cat.bound()))});
        long long degree = 2 + static_cast<long long>(a.pre.size()) +
                           static_cast<long long>(t.num_vars());
        enc.reifs.push_back(TaggedReif{ReifKey{ReifFamily::Act, static_cast<long long>(ai)},
                                       Reification{cat.action(static_cast<int>(ai)),
                                                   ReifDir::Implies, normalize(raw, degree)},
                                       PART_TRANS});
    }

    {
        std::vector<RawTerm> raw;
        for (size_t ai = 0; ai < t.actions.size(); ++ai)
            raw.push_back(RawTerm{1, pos(cat.action(static_cast<int>(ai)))});
        enc.reifs.push_back(TaggedReif{ReifKey{ReifFamily::Trans, 0},
                                       Reification{cat.r_trans(), ReifDir::Iff, normalize(raw, 1)},
                                       PART_TRANS});
    }

    return enc;
}

std::vector<TaggedReif> resolve_placeholders(VarCatalog &cat, const LazyCostDecls &decls) {
    std::vector<TaggedReif> out;
    for (long long l : decls.mm) {
        long long c = clip_to_bound(l, cat.bound());
        if (!decls.ge.count(c))
            throw EncodingError("clip value not declared: ge " + std::to_string(c) +
                                " for mm threshold " + std::to_string(l));
        {
            std::vector<RawTerm> raw{RawTerm{1, pos(cat.ge(c))}};
            out.push_back(TaggedReif{ReifKey{ReifFamily::MmGe, l},
                                     Reification{cat.mmge(l), ReifDir::Iff, normalize(raw, 1)}, 0});
        }
        {
            std::vector<RawTerm> raw{RawTerm{1, pos(cat.gep(c))}};
            out.push_back(TaggedReif{ReifKey{ReifFamily::MmGep, l},
                                     Reification{cat.mmgep(l), ReifDir::Iff, normalize(raw, 1)}, 0});
        }
    }
    return out;
}

PBConstraint prime_constraint(VarCatalog &cat, const PBConstraint &c) {
    std::vector<RawTerm> raw;
    raw.reserve(c.terms().size());
    for (const Term &t : c.terms())
        raw.push_back(RawTerm{t.coef, Lit(cat.prime(t.var), t.positive)});
    return normalize(raw, c.degree());
}

Reification prime_reification(VarCatalog &cat, const Reification &r) {
    return Reification{cat.prime(r.var), r.dir, prime_constraint(cat, r.body)};
}

PBConstraint encoding_ref_constraint(VarCatalog &cat, const ConstraintRef &ref) {
    const long long mc = cat.max_cost_value();
    PBConstraint body;
    VarId head = -1;
    switch (ref.key.family) {
    case ReifFamily::Ge:
        head = cat.ge(ref.key.param);
        body = cost_sum_ge(cat, false, ref.key.param);
        break;
    case ReifFamily::Gep:
        head = cat.gep(ref.key.param);
        body = cost_sum_ge(cat, true, ref.key.param);
        break;
    case ReifFamily::DeltaPair: {
        head = cat.delta(ref.key.param);
        std::vector<RawTerm> raw{RawTerm{1, pos(cat.delta_ge(ref.key.param))},
                                 RawTerm{1, pos(cat.delta_le(ref.key.param))}};
        body = normalize(raw, 2);
        break;
    }
    case ReifFamily::DeltaGe: {
        head = cat.delta_ge(ref.key.param);
        std::vector<RawTerm> raw;
        for (int i = 0; i < cat.bit_count(); ++i) {
            raw.push_back(RawTerm{1LL << i, pos(cat.cost_bit_primed(i))});
            raw.push_back(RawTerm{1LL << i, neg(cat.cost_bit(i))});
        }
        body = normalize(raw, ref.key.param + mc);
        break;
    }
    case ReifFamily::DeltaLe: {
        head = cat.delta_le(ref.key.param);
        std::vector<RawTerm> raw;
        for (int i = 0; i < cat.bit_count(); ++i) {
            raw.push_back(RawTerm{1LL << i, pos(cat.cost_bit(i))});
            raw.push_back(RawTerm{1LL << i, neg(cat.cost_bit_primed(i))});
        }
        body = normalize(raw, mc - ref.key.param);
        break;
    }
    case ReifFamily::MmGe: {
        head = cat.mmge(ref.key.param);
        std::vector<RawTerm> raw{RawTerm{1, pos(cat.ge(clip_to_bound(ref.key.param, cat.bound())))}};
        body = normalize(raw, 1);
        break;
    }
    case ReifFamily::MmGep: {
        head = cat.mmgep(ref.key.param);
        std::vector<RawTerm> raw{RawTerm{1, pos(cat.gep(clip_to_bound(ref.key.param, cat.bound())))}};
        body = normalize(raw, 1);
        break;
    }
    default:
        throw std::runtime_error("encoding_ref_constraint: unsupported family");
    }
    return ref.forward ? reif_forward(head, body) : reif_backward(head, body);
}

int ScopeLayout::id_of(const ConstraintRef &r) const {
    auto it = ids.find({static_cast<int>(r.key.family), r.key.param, r.forward});
    if (it == ids.end())
        throw std::runtime_error("constraint reference not in scope (family " +
                                 std::to_string(static_cast<int>(r.key.family)) + ", param " +
                                 std::to_string(r.key.param) + ")");
    return it->second;
}

bool ScopeLayout::has(const ConstraintRef &r) const {
    return ids.count({static_cast<int>(r.key.family), r.key.param, r.forward}) > 0;
}

void ScopeLayout::add(const ReifKey &key, const Reification &reif) {
    std::vector<PBConstraint> cons = expand_reification(reif);
    bool fwd = reif.dir != ReifDir::ImpliedBy;
    for (PBConstraint &c : cons) {
        int id = db.add(std::move(c));
        ids[{static_cast<int>(key.family), key.param, fwd}] = id;
        fwd = false;
    }
}

ScopeLayout build_lemma_scope(const Task &t, VarCatalog &cat, const LazyCostDecls &decls,
                              const std::vector<Reification> &circuit, LemmaKind kind) {
    unsigned mask = 0;
    switch (kind) {
    case LemmaKind::Init:
        mask = PART_INIT | PART_GE;
        break;
    case LemmaKind::Goal:
        mask = PART_GOAL | PART_GE;
        break;
    case LemmaKind::Ind:
        mask = PART_TRANS | PART_GE;
        break;
    }

    ScopeLayout scope;
    TaskEncoding enc = build_encoding(t, cat, decls);
    for (const TaggedReif &tr : enc.reifs)
        if (tr.partitions & mask)
            scope.add(tr.key, tr.reif);
    for (const TaggedReif &tr : resolve_placeholders(cat, decls))
        scope.add(tr.key, tr.reif);
    for (size_t i = 0; i < circuit.size(); ++i)
        scope.add(ReifKey{ReifFamily::Circuit, static_cast<long long>(i)}, circuit[i]);
    if (kind == LemmaKind::Ind) {
        for (size_t i = 0; i < circuit.size(); ++i)
            scope.add(ReifKey{ReifFamily::CircuitPrimed, static_cast<long long>(i)},
                      prime_reification(cat, circuit[i]));
    }
    return scope;
}

} // namespace certiplan
