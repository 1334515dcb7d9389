#ifndef CERTIPLAN_CERT_BUILDER_H
#define CERTIPLAN_CERT_BUILDER_H

#include "certiplan/catalog.h"
#include "certiplan/cost_lemmas.h"
#include "certiplan/encoding.h"
#include "certiplan/script_builder.h"
#include "certiplan/task.h"

#include <optional>

namespace certiplan {

// Shared state while assembling a certificate: the circuit under
// construction, the three lemma script buffers and the threshold
// declarations recorded on the way.
class CertificateBuilder {
public:
    CertificateBuilder(const Task &task, VarCatalog &cat)
        : task_(task), cat_(cat) {
        decls_.ge.insert(0);
        decls_.ge.insert(cat.bound());
        for (const Action &a : task.actions)
            decls_.delta.insert(a.cost);
    }

    const Task &task() const { return task_; }
    VarCatalog &catalog() { return cat_; }
    long long bound() const { return cat_.bound(); }
    LazyCostDecls &decls() { return decls_; }

    int add_circuit_reif(VarId head, PBConstraint body) {
        circuit_.push_back(Reification{head, ReifDir::Iff, std::move(body)});
        return static_cast<int>(circuit_.size()) - 1;
    }
    const std::vector<Reification> &circuit() const { return circuit_; }

    ScriptBuilder &init_buf() { return init_; }
    ScriptBuilder &goal_buf() { return goal_; }
    ScriptBuilder &ind_buf() { return ind_; }

    VarId ge_var(long long k) {
        decls_.ge.insert(k);
        return cat_.ge(k);
    }
    VarId gep_var(long long k) {
        decls_.ge.insert(k);
        return cat_.gep(k);
    }
    VarId mmge_var(long long l) {
        decls_.mm.insert(l);
        decls_.ge.insert(clip_to_bound(l, bound()));
        return cat_.mmge(l);
    }
    VarId mmgep_var(long long l) {
        decls_.mm.insert(l);
        decls_.ge.insert(clip_to_bound(l, bound()));
        return cat_.mmgep(l);
    }

    SymRef ind_cost_step(long long l, long long m) {
        return emit_cost_step(ind_, cat_, decls_, l, m);
    }
    SymRef ind_cost_implication(long long from, long long to, bool primed) {
        return emit_cost_ge_implication(ind_, cat_, decls_, from, to, primed);
    }

    // Threshold of a state lemma: max(0, B - h) with h clipped into 0..B
    // (dead ends clip to B, so their threshold is 0).
    long long state_threshold(std::optional<long long> h) const {
        long long hv = h ? std::min(*h, bound()) : bound();
        return std::max<long long>(0, bound() - hv);
    }

    // The unpacked state lemma: (state literals and ge_T) -> rh.
    PBConstraint state_lemma_claim(StateMask s, long long threshold, VarId rh, bool primed);

    // Emits both the unprimed and the primed state lemma for an evaluated
    // state into the inductivity buffer.
    void emit_state_lemma_pair(StateMask s, std::optional<long long> h, VarId rh);

private:
    const Task &task_;
    VarCatalog &cat_;
    LazyCostDecls decls_;
    std::vector<Reification> circuit_;
    ScriptBuilder init_, goal_, ind_;
};

// Fixed per-lemma goals: the certificate is judged against exactly these.
PBConstraint lemma_goal(VarCatalog &cat, LemmaKind kind, VarId output);

} // namespace certiplan

#endif
