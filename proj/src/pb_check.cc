#include "certiplan/pb_check.h"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace certiplan {

void Propagator::attach(const std::vector<PBConstraint> &base) {
    cons_.clear();
    slack_.clear();
    occ_.clear();
    val_.clear();
    trail_.clear();
    conflicted_ = false;
    std::vector<int> queue;
    for (const PBConstraint &c : base) {
        queue.push_back(push_constraint(c) - 1);
    }
    if (propagate(std::move(queue)))
        conflicted_ = true;
}

void Propagator::ensure_var(VarId v) {
    size_t need = static_cast<size_t>(v) + 1;
    if (occ_.size() < need) {
        occ_.resize(need);
        val_.resize(need, -1);
    }
}

long long Propagator::initial_slack(const PBConstraint &c) const {
    long long s = -c.degree();
    for (const Term &t : c.terms()) {
        int8_t v = t.var < static_cast<VarId>(val_.size()) ? val_[static_cast<size_t>(t.var)] : -1;
        bool falsified = v >= 0 && (v == 1) != t.positive;
        if (!falsified)
            s += t.coef;
    }
    return s;
}

int Propagator::push_constraint(PBConstraint c) {
    for (const Term &t : c.terms())
        ensure_var(t.var);
    slack_.push_back(initial_slack(c));
    cons_.push_back(std::move(c));
    int idx = static_cast<int>(cons_.size()) - 1;
    for (const Term &t : cons_.back().terms())
        occ_[static_cast<size_t>(t.var)].push_back(Occ{idx, t.coef, t.positive});
    return idx + 1;
}

void Propagator::pop_constraints(size_t n_cons) {
    while (cons_.size() > n_cons) {
        const PBConstraint &c = cons_.back();
        for (const Term &t : c.terms()) {
            auto &lst = occ_[static_cast<size_t>(t.var)];
            assert(!lst.empty() && lst.back().cons == static_cast<int>(cons_.size()) - 1);
            lst.pop_back();
        }
        cons_.pop_back();
        slack_.pop_back();
    }
}

void Propagator::assign(Lit l, std::vector<int> &queue) {
    val_[static_cast<size_t>(l.var)] = l.positive ? 1 : 0;
    trail_.push_back(l.var);
    for (const Occ &o : occ_[static_cast<size_t>(l.var)]) {
        if (o.positive != l.positive) {
            slack_[static_cast<size_t>(o.cons)] -= o.coef;
            queue.push_back(o.cons);
        }
    }
}

void Propagator::undo_to(size_t n_trail) {
    while (trail_.size() > n_trail) {
        VarId v = trail_.back();
        trail_.pop_back();
        int8_t was = val_[static_cast<size_t>(v)];
        val_[static_cast<size_t>(v)] = -1;
        for (const Occ &o : occ_[static_cast<size_t>(v)]) {
            if (o.positive != (was == 1))
                slack_[static_cast<size_t>(o.cons)] += o.coef;
        }
    }
}

bool Propagator::propagate(std::vector<int> queue) {
    size_t head = 0;
    while (head < queue.size()) {
        int cidx = queue[head++];
        long long s = slack_[static_cast<size_t>(cidx)];
        if (s < 0)
            return true;
        const PBConstraint &c = cons_[static_cast<size_t>(cidx)];
        for (const Term &t : c.terms()) {
            if (t.coef > s && val_[static_cast<size_t>(t.var)] < 0)
                assign(t.lit(), queue);
        }
    }
    return false;
}

int Propagator::add_persistent(PBConstraint c) {
    int id = push_constraint(std::move(c));
    if (!conflicted_ && propagate({id - 1}))
        conflicted_ = true;
    return id;
}

bool Propagator::rup_accepts(const PBConstraint &claimed) {
    if (conflicted_)
        return true;
    size_t tmark = trail_.size();
    size_t cmark = cons_.size();
    push_constraint(negate(claimed));
    bool conflict = propagate({static_cast<int>(cons_.size()) - 1});
    undo_to(tmark);
    pop_constraints(cmark);
    return conflict;
}

Propagator::Mark Propagator::mark() const {
    return Mark{cons_.size(), trail_.size(), conflicted_};
}

void Propagator::rollback(const Mark &m) {
    undo_to(m.n_trail);
    pop_constraints(m.n_cons);
    conflicted_ = m.conflicted;
}

PBConstraint cutting_plane_step(const ConstraintDB &db, const ProofStep &step) {
    switch (step.kind) {
    case ProofStep::Kind::Axiom:
        return PBConstraint::axiom(step.lit);
    case ProofStep::Kind::Lin:
        return lin_combine(db.at(step.id1), step.c1, db.at(step.id2), step.c2);
    case ProofStep::Kind::Div:
        return divide_ceil(db.at(step.id1), step.c1);
    case ProofStep::Kind::Sat:
        return saturate(db.at(step.id1));
    default:
        throw CpError("not a cutting-plane step");
    }
}

bool check_rup(const ConstraintDB &db, const PBConstraint &claimed) {
    Propagator p;
    p.attach(db.all());
    return p.rup_accepts(claimed);
}

namespace {

// Shared step executor for scripts and Red subproofs.
class ScriptRunner {
public:
    explicit ScriptRunner(const std::vector<PBConstraint> &scope) { prop_.attach(scope); }

    CheckResult run(const std::vector<ProofStep> &steps, const std::string &path) {
        for (size_t i = 0; i < steps.size(); ++i) {
            std::string label = path + "step " + std::to_string(i + 1);
            CheckResult r = exec(steps[i], label);
            if (!r.ok)
                return r;
        }
        return CheckResult::accept();
    }

    Propagator &prop() { return prop_; }

private:
    Propagator prop_;

    const PBConstraint *fetch(int id, const std::string &label, CheckResult &err) {
        if (id < 1 || id > prop_.size()) {
            err = CheckResult::reject(label + ": reference to unknown id " + std::to_string(id));
            return nullptr;
        }
        return &prop_.at(id);
    }

    CheckResult exec(const ProofStep &st, const std::string &label) {
        CheckResult err = CheckResult::accept();
        switch (st.kind) {
        case ProofStep::Kind::Axiom:
            prop_.add_persistent(PBConstraint::axiom(st.lit));
            return CheckResult::accept();
        case ProofStep::Kind::Lin: {
            const PBConstraint *a = fetch(st.id1, label, err);
            if (!a)
                return err;
            const PBConstraint *b = fetch(st.id2, label, err);
            if (!b)
                return err;
            try {
                prop_.add_persistent(lin_combine(*a, st.c1, *b, st.c2));
            } catch (const CpError &e) {
                return CheckResult::reject(label + " (lin): " + e.what());
            }
            return CheckResult::accept();
        }
        case ProofStep::Kind::Div: {
            const PBConstraint *a = fetch(st.id1, label, err);
            if (!a)
                return err;
            try {
                prop_.add_persistent(divide_ceil(*a, st.c1));
            } catch (const CpError &e) {
                return CheckResult::reject(label + " (div): " + e.what());
            }
            return CheckResult::accept();
        }
        case ProofStep::Kind::Sat: {
            const PBConstraint *a = fetch(st.id1, label, err);
            if (!a)
                return err;
            prop_.add_persistent(saturate(*a));
            return CheckResult::accept();
        }
        case ProofStep::Kind::Rup:
            if (!prop_.rup_accepts(st.claimed))
                return CheckResult::reject(label + " (rup): propagation did not reach a conflict");
            prop_.add_persistent(st.claimed);
            return CheckResult::accept();
        case ProofStep::Kind::Red: {
            Propagator::Mark m = prop_.mark();
            prop_.add_persistent(negate(st.claimed));
            CheckResult sub = run(st.sub, label + ".");
            if (!sub.ok)
                return sub;
            const PBConstraint *endc = fetch(st.sub_end_id, label, err);
            if (!endc)
                return err;
            if (st.sub_contradiction) {
                if (!renormalize(*endc).is_contradiction())
                    return CheckResult::reject(label +
                                               " (red): ending reference is not a contradiction");
            } else {
                if (!equal_normalized(*endc, st.claimed))
                    return CheckResult::reject(label +
                                               " (red): ending reference does not match the claim");
            }
            prop_.rollback(m);
            prop_.add_persistent(st.claimed);
            return CheckResult::accept();
        }
        }
        return CheckResult::reject(label + ": unknown step kind");
    }
};

} // namespace

CheckResult check_red(const ConstraintDB &db, const ProofStep &red_step) {
    if (red_step.kind != ProofStep::Kind::Red)
        return CheckResult::reject("check_red: not a red step");
    try {
        ScriptRunner runner(db.all());
        return runner.run({red_step}, "");
    } catch (const std::exception &e) {
        return CheckResult::reject(std::string("subproof error: ") + e.what());
    }
}

CheckResult check_script(const ConstraintDB &scope, const ProofScript &script,
                         const PBConstraint &goal) {
    try {
        ScriptRunner runner(scope.all());
        CheckResult r = runner.run(script.steps, "");
        if (!r.ok)
            return r;
        if (script.goal_id < 1 || script.goal_id > runner.prop().size())
            return CheckResult::reject("goal marker references unknown id " +
                                       std::to_string(script.goal_id));
        if (!equal_normalized(runner.prop().at(script.goal_id), goal))
            return CheckResult::reject("constraint at goal marker does not match the goal");
        return CheckResult::accept();
    } catch (const std::exception &e) {
        return CheckResult::reject(std::string("script error: ") + e.what());
    }
}

bool satisfies(const PBConstraint &c, const std::function<bool(VarId)> &value) {
    long long lhs = 0;
    for (const Term &t : c.terms())
        if (value(t.var) == t.positive)
            lhs += t.coef;
    return lhs >= c.degree();
}

bool implied_by_enumeration(const std::vector<PBConstraint> &db,
                            const PBConstraint &c,
                            const std::vector<VarId> &vars) {
    if (vars.size() > 20)
        throw std::runtime_error("implied_by_enumeration: more than 20 variables");
    std::unordered_map<VarId, int> pos_of;
    for (size_t i = 0; i < vars.size(); ++i)
        pos_of[vars[i]] = static_cast<int>(i);
    auto covered = [&](const PBConstraint &x) {
        for (const Term &t : x.terms())
            if (!pos_of.count(t.var))
                return false;
        return true;
    };
    for (const PBConstraint &x : db)
        if (!covered(x))
            throw std::runtime_error("implied_by_enumeration: db variable not in var set");
    if (!covered(c))
        throw std::runtime_error("implied_by_enumeration: claim variable not in var set");

    uint32_t limit = 1u << vars.size();
    for (uint32_t bits = 0; bits < limit; ++bits) {
        auto value = [&](VarId v) { return ((bits >> pos_of.at(v)) & 1u) != 0; };
        bool model = true;
        for (const PBConstraint &x : db) {
            if (!satisfies(x, value)) {
                model = false;
                break;
            }
        }
        if (model && !satisfies(c, value))
            return false;
    }
    return true;
}

ProofScript gen_state_set_extension(
    const std::vector<VarId> &z_vars,
    const std::vector<std::pair<VarId, bool>> &alpha,
    VarId r_alpha,
    const std::function<VarId(uint32_t)> &r_beta) {
    if (z_vars.size() > 20)
        throw std::runtime_error("state set extension: more than 20 variables");
    std::unordered_map<VarId, int> zpos;
    for (size_t i = 0; i < z_vars.size(); ++i)
        zpos[z_vars[i]] = static_cast<int>(i);
    uint32_t fixed_mask = 0, fixed_bits = 0;
    for (const auto &[v, b] : alpha) {
        auto it = zpos.find(v);
        if (it == zpos.end())
            throw std::runtime_error("state set extension: alpha variable not in Z");
        fixed_mask |= 1u << it->second;
        if (b)
            fixed_bits |= 1u << it->second;
    }
    std::vector<int> free_idx;
    for (size_t i = 0; i < z_vars.size(); ++i)
        if (!(fixed_mask & (1u << i)))
            free_idx.push_back(static_cast<int>(i));
    int n = static_cast<int>(free_idx.size());

    ProofScript script;
    // Enumerates the 2^k full extensions of a partial assignment in which the
    // last k free variables are unconstrained.
    auto extensions = [&](uint32_t partial_free_bits, int fixed_free_count) {
        std::vector<uint32_t> result;
        int open = n - fixed_free_count;
        for (uint32_t hi = 0; hi < (1u << open); ++hi) {
            uint32_t bits = fixed_bits;
            for (int j = 0; j < fixed_free_count; ++j)
                if (partial_free_bits & (1u << j))
                    bits |= 1u << free_idx[static_cast<size_t>(j)];
            for (int j = 0; j < open; ++j)
                if (hi & (1u << j))
                    bits |= 1u << free_idx[static_cast<size_t>(fixed_free_count + j)];
            result.push_back(bits);
        }
        return result;
    };

    // Level k (k = 1..n): one constraint per assignment of Y plus the first
    // n-k free variables, disjoining the indicators of all full extensions
    // with the complements of the fixed literals.
    for (int k = 1; k <= n; ++k) {
        int kept = n - k;
        for (uint32_t pbits = 0; pbits < (1u << kept); ++pbits) {
            std::vector<RawTerm> raw;
            for (uint32_t full : extensions(pbits, kept))
                raw.push_back(RawTerm{1, pos(r_beta(full))});
            for (const auto &[v, b] : alpha)
                raw.push_back(RawTerm{1, Lit(v, !b)});
            for (int j = 0; j < kept; ++j) {
                bool b = (pbits >> j) & 1u;
                raw.push_back(RawTerm{1, Lit(z_vars[static_cast<size_t>(free_idx[static_cast<size_t>(j)])], !b)});
            }
            script.steps.push_back(ProofStep::rup(normalize(raw, 1)));
        }
    }
    {
        std::vector<RawTerm> raw;
        raw.push_back(RawTerm{1, neg(r_alpha)});
        for (uint32_t full : extensions(0, 0))
            raw.push_back(RawTerm{1, pos(r_beta(full))});
        script.steps.push_back(ProofStep::rup(normalize(raw, 1)));
    }
    return script;
}

} // namespace certiplan
