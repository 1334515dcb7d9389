#ifndef CERTIPLAN_PB_CHECK_H
#define CERTIPLAN_PB_CHECK_H

#include "certiplan/pb.h"

#include <functional>
#include <string>
#include <vector>

namespace certiplan {

struct CheckResult {
    bool ok = false;
    std::string diagnostic;

    static CheckResult accept() { return CheckResult{true, ""}; }
    static CheckResult reject(std::string why) { return CheckResult{false, std::move(why)}; }
};

// Unit propagation over a growing constraint set with per-constraint slack
// counters. Assignments are kept on a trail so that RUP probes and Red
// subproof scopes can be undone exactly. Constraints added after attach()
// propagate persistently: they are implied, so their consequences are too.
class Propagator {
public:
    void attach(const std::vector<PBConstraint> &base);

    // Adds a constraint, propagates persistently, returns its 1-based id.
    int add_persistent(PBConstraint c);

    // True iff adding the negation of `claimed` propagates to a conflict
    // from the current assignment. Leaves the state unchanged.
    bool rup_accepts(const PBConstraint &claimed);

    struct Mark {
        size_t n_cons;
        size_t n_trail;
        bool conflicted;
    };
    Mark mark() const;
    void rollback(const Mark &m);

    int size() const { return static_cast<int>(cons_.size()); }
    const PBConstraint &at(int id) const { return cons_.at(static_cast<size_t>(id - 1)); }
    bool conflicted() const { return conflicted_; }

private:
    struct Occ {
        int cons;
        long long coef;
        bool positive;
    };

    std::vector<PBConstraint> cons_;
    std::vector<long long> slack_;
    std::vector<std::vector<Occ>> occ_;
    std::vector<int8_t> val_; // -1 free, 0 false, 1 true
    std::vector<VarId> trail_;
    bool conflicted_ = false;

    void ensure_var(VarId v);
    long long initial_slack(const PBConstraint &c) const;
    bool lit_false(const Lit &l) const {
        int8_t v = val_[static_cast<size_t>(l.var)];
        return v >= 0 && (v == 1) != l.positive;
    }
    bool propagate(std::vector<int> queue);
    void assign(Lit l, std::vector<int> &queue);
    void undo_to(size_t n_trail);
    int push_constraint(PBConstraint c);
    void pop_constraints(size_t n_cons);
};

// One cutting-plane inference against a database; throws CpError on invalid
// scalars and std::out_of_range on unknown ids.
PBConstraint cutting_plane_step(const ConstraintDB &db, const ProofStep &step);

bool check_rup(const ConstraintDB &db, const PBConstraint &claimed);

// Checks a Red step's subproof against db plus the negated claim. The claim
// is accepted if every substep validates and the ending reference names a
// contradiction (empty sum, degree >= 1) or a constraint equal to the claim
// after normalization.
CheckResult check_red(const ConstraintDB &db, const ProofStep &red_step);

// Runs a whole script against a scope database; accepts iff all steps
// validate and the constraint at the goal marker equals `goal` after
// normalization.
CheckResult check_script(const ConstraintDB &scope, const ProofScript &script,
                         const PBConstraint &goal);

// Semantic oracle: true iff every assignment of `vars` satisfying all of db
// also satisfies c. Guard: at most 20 variables. All variables of db and c
// must be listed in vars.
bool implied_by_enumeration(const std::vector<PBConstraint> &db,
                            const PBConstraint &c,
                            const std::vector<VarId> &vars);

bool satisfies(const PBConstraint &c, const std::function<bool(VarId)> &value);

// Derivation for widening a partial-assignment indicator into the disjunction
// of its full extensions: from r_alpha => (conjunction over Y matching alpha)
// and r_beta <= (conjunction over Z matching beta) for every extension beta,
// derives ~r_alpha + sum_beta r_beta >= 1 by staged RUP steps.
//
// `z_vars` fixes the variable order of Z; `alpha` assigns a subset Y of Z;
// `r_beta(bits)` maps the full assignment (bit i = value of z_vars[i]) to its
// indicator variable. The returned script consists of pure RUP steps deriving
// the target with the final step; the goal marker is left at 0 because ids
// depend on the scope size, so callers set it to the final step's id.
ProofScript gen_state_set_extension(
    const std::vector<VarId> &z_vars,
    const std::vector<std::pair<VarId, bool>> &alpha,
    VarId r_alpha,
    const std::function<VarId(uint32_t)> &r_beta);

} // namespace certiplan

#endif
