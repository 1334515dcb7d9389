#ifndef CERTIPLAN_HMAX_H
#define CERTIPLAN_HMAX_H

#include "certiplan/heuristic.h"

#include <map>
#include <vector>

namespace certiplan {

// Delete-relaxation reachability costs: per-variable cheapest relaxed
// achievement cost, nullopt when unreachable.
std::vector<std::optional<long long>> hmax_values_raw(const Task &t, StateMask s);
std::optional<long long> hmax_raw(const Task &t, StateMask s);

// Values clipped into 0..bound; wmax additionally truncated at hmax.
struct HmaxEval {
    StateMask state = 0;
    long long hmax = 0;
    std::vector<long long> vmax;
    std::vector<long long> wmax;
};

HmaxEval compute_hmax(const Task &t, StateMask s, long long bound);

class HmaxHeuristic : public HeuristicProvider {
public:
    explicit HmaxHeuristic(const Task &t) : task_(t) {}

    std::string name() const override { return "hmax"; }
    std::optional<long long> estimate(StateMask s) override;
    void emit_circuit(CertificateBuilder &b) override;
    VarId rh_var(StateMask s) const override;
    void emit_goal_lemmas(CertificateBuilder &b) override;
    void emit_state_lemmas(CertificateBuilder &b) override;
    void emit_ind_lemmas(CertificateBuilder &b) override;

private:
    struct EvalRecord {
        StateMask state;
        std::optional<long long> h_raw;
        // filled at emission time
        HmaxEval capped;
        std::vector<VarId> var_heads; // one per task variable
        VarId head = -1;              // the per-state circuit output
    };

    const Task &task_;
    std::vector<EvalRecord> evals_;
    std::map<StateMask, size_t> index_;

    void emit_action_lemma(CertificateBuilder &b, EvalRecord &e, int ai);
};

} // namespace certiplan

#endif
