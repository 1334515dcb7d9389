#include "certiplan/cert_builder.h"

namespace certiplan {

PBConstraint CertificateBuilder::state_lemma_claim(StateMask s, long long threshold, VarId rh,
                                                   bool primed) {
    std::vector<RawTerm> raw;
    for (size_t v = 0; v < task_.num_vars(); ++v) {
        bool in = (s & (StateMask(1) << v)) != 0;
        VarId var = primed ? cat_.state_primed(static_cast<int>(v)) : cat_.state(static_cast<int>(v));
        raw.push_back(RawTerm{1, Lit(var, !in)});
    }
    raw.push_back(RawTerm{1, neg(primed ? gep_var(threshold) : ge_var(threshold))});
    raw.push_back(RawTerm{1, pos(primed ? cat_.prime(rh) : rh)});
    return normalize(raw, 1);
}

void CertificateBuilder::emit_state_lemma_pair(StateMask s, std::optional<long long> h, VarId rh) {
    long long t = state_threshold(h);
    ind_.rup(state_lemma_claim(s, t, rh, false));
    ind_.rup(state_lemma_claim(s, t, rh, true));
}

PBConstraint lemma_goal(VarCatalog &cat, LemmaKind kind, VarId output) {
    switch (kind) {
    case LemmaKind::Init: {
        // ge_1 may be undeclared (bound 0); the claim only names it.
        VarId ge1 = cat.pool().intern("xge_1");
        return normalize({RawTerm{1, neg(cat.r_init())}, RawTerm{1, pos(ge1)},
                          RawTerm{1, pos(output)}},
                         1);
    }
    case LemmaKind::Goal:
        return normalize({RawTerm{1, neg(cat.r_goal())}, RawTerm{1, neg(output)},
                          RawTerm{1, pos(cat.ge(cat.bound()))}},
                         1);
    case LemmaKind::Ind:
        return normalize({RawTerm{1, neg(output)}, RawTerm{1, neg(cat.r_trans())},
                          RawTerm{1, pos(cat.prime(output))}},
                         1);
    }
    throw std::logic_error("unreachable");
}

} // namespace certiplan
