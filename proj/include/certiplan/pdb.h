#ifndef CERTIPLAN_PDB_H
#define CERTIPLAN_PDB_H

#include "certiplan/heuristic.h"

#include <map>
#include <optional>
#include <vector>

namespace certiplan {

// Projection of the task onto a pattern (subset of its variables). Abstract
// states are bitsets in pattern-variable order, enumerated ascending.
struct PdbTable {
    std::vector<int> pattern; // task variable indices, given order
    std::vector<std::optional<long long>> dist; // per abstract state; nullopt = unreachable

    uint32_t abstract_of(StateMask s) const;
    size_t num_abstract() const { return dist.size(); }
};

// Exact abstract goal distances by backward uniform-cost search from the
// abstract goal states. Guard: pattern size at most 20.
PdbTable build_pdb(const Task &t, const std::vector<int> &pattern);

std::optional<long long> pdb_evaluate(const PdbTable &table, StateMask s);

enum class PdbCertVariant { Naive, Efficient };

class PdbHeuristic : public HeuristicProvider {
public:
    PdbHeuristic(const Task &t, std::vector<int> pattern,
                 PdbCertVariant variant = PdbCertVariant::Naive)
        : task_(t), table_(build_pdb(t, pattern)), variant_(variant) {}

    const PdbTable &table() const { return table_; }

    std::string name() const override { return "pdb"; }
    std::optional<long long> estimate(StateMask s) override;
    void emit_circuit(CertificateBuilder &b) override;
    VarId rh_var(StateMask) const override { return r_pdb_; }
    void emit_goal_lemmas(CertificateBuilder &b) override;
    void emit_state_lemmas(CertificateBuilder &b) override;
    void emit_ind_lemmas(CertificateBuilder &b) override;

private:
    struct AbstractAction {
        uint32_t pre, add, del;
        bool applicable_in(uint32_t s) const { return (s & pre) == pre; }
        uint32_t apply(uint32_t s) const { return (s & ~del) | add; }
        bool consistent_with(uint32_t s) const {
            return (add & ~s) == 0 && (del & s) == 0 && (pre & ~(add | del) & ~s) == 0;
        }
    };

    const Task &task_;
    PdbTable table_;
    PdbCertVariant variant_;
    std::vector<StateMask> eval_order_;
    std::map<StateMask, bool> seen_;

    // circuit variables, filled at emission time
    std::vector<VarId> r_state_;    // per abstract state; -1 when absent
    std::vector<VarId> r_state_ge_; // per abstract state; -1 when absent
    VarId r_pdb_ = -1;
    VarId r_inf_ = -1;
    VarId r_goal_abs_ = -1;
    std::map<std::pair<uint32_t, int>, VarId> r_link_; // consistent (state, action) indicators

    AbstractAction abstract_action(const Action &a) const;
    ProofScript extension_to_states(CertificateBuilder &b, VarId r_alpha, uint32_t fixed_mask,
                                    uint32_t fixed_bits) const;
};

} // namespace certiplan

#endif
