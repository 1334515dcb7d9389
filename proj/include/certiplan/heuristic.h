#ifndef CERTIPLAN_HEURISTIC_H
#define CERTIPLAN_HEURISTIC_H

#include "certiplan/cert_builder.h"
#include "certiplan/task.h"

#include <optional>
#include <string>

namespace certiplan {

// Admissible, consistent heuristic with certificate emission. estimate() is
// called once per distinct state during the search; the provider memoizes
// its evaluations. Once the bound is known, the search drives emission in
// this order: emit_circuit, then emit_goal_lemmas into the goal buffer, then
// emit_state_lemmas and emit_ind_lemmas into the inductivity buffer. Every
// evaluated state must end up with a state lemma (unprimed and primed) and
// every distinct rh variable with goal and inductivity lemmas.
class HeuristicProvider {
public:
    virtual ~HeuristicProvider() = default;
    virtual std::string name() const = 0;
    // nullopt is a dead end.
    virtual std::optional<long long> estimate(StateMask s) = 0;
    virtual void emit_circuit(CertificateBuilder &b) = 0;
    virtual VarId rh_var(StateMask s) const = 0;
    virtual void emit_goal_lemmas(CertificateBuilder &b) = 0;
    virtual void emit_state_lemmas(CertificateBuilder &b) = 0;
    virtual void emit_ind_lemmas(CertificateBuilder &b) = 0;
};

} // namespace certiplan

#endif
