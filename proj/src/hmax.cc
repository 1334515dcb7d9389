#include "certiplan/hmax.h"

#include <algorithm>
#include <cassert>

namespace certiplan {

std::vector<std::optional<long long>> hmax_values_raw(const Task &t, StateMask s) {
    size_t n = t.num_vars();
    std::vector<std::optional<long long>> value(n);
    for (size_t v = 0; v < n; ++v)
        if (s & (StateMask(1) << v))
            value[v] = 0;
    bool changed = true;
    while (changed) {
        changed = false;
        for (const Action &a : t.actions) {
            long long enable = 0;
            bool reachable = true;
            for (int p : a.pre) {
                if (!value[static_cast<size_t>(p)]) {
                    reachable = false;
                    break;
                }
                enable = std::max(enable, *value[static_cast<size_t>(p)]);
            }
            if (!reachable)
                continue;
            for (int v : a.add) {
                long long cand = enable + a.cost;
                auto &slot = value[static_cast<size_t>(v)];
                if (!slot || cand < *slot) {
                    slot = cand;
                    changed = true;
                }
            }
        }
    }
    return value;
}

std::optional<long long> hmax_raw(const Task &t, StateMask s) {
    auto value = hmax_values_raw(t, s);
    long long h = 0;
    for (int g : t.goal) {
        if (!value[static_cast<size_t>(g)])
            return std::nullopt;
        h = std::max(h, *value[static_cast<size_t>(g)]);
    }
    return h;
}

HmaxEval compute_hmax(const Task &t, StateMask s, long long bound) {
    auto raw = hmax_values_raw(t, s);
    HmaxEval e;
    e.state = s;
    e.vmax.resize(t.num_vars());
    e.wmax.resize(t.num_vars());
    for (size_t v = 0; v < t.num_vars(); ++v)
        e.vmax[v] = raw[v] ? std::min(*raw[v], bound) : bound;
    e.hmax = 0;
    for (int g : t.goal)
        e.hmax = std::max(e.hmax, e.vmax[static_cast<size_t>(g)]);
    for (size_t v = 0; v < t.num_vars(); ++v)
        e.wmax[v] = std::min(e.vmax[v], e.hmax);
    return e;
}

std::optional<long long> HmaxHeuristic::estimate(StateMask s) {
    auto it = index_.find(s);
    if (it == index_.end()) {
        EvalRecord rec;
        rec.state = s;
        rec.h_raw = hmax_raw(task_, s);
        index_[s] = evals_.size();
        evals_.push_back(std::move(rec));
        it = index_.find(s);
    }
    return evals_[it->second].h_raw;
}

VarId HmaxHeuristic::rh_var(StateMask s) const {
    return evals_[index_.at(s)].head;
}

void HmaxHeuristic::emit_circuit(CertificateBuilder &b) {
    const long long B = b.bound();
    VarCatalog &cat = b.catalog();
    for (EvalRecord &e : evals_) {
        e.capped = compute_hmax(task_, e.state, B);
        long long H = e.capped.hmax;
        std::vector<RawTerm> head_body;
        head_body.push_back(RawTerm{1, pos(b.mmge_var(B - H))});
        for (size_t v = 0; v < task_.num_vars(); ++v) {
            VarId rv = cat.fresh_heur_head();
            e.var_heads.push_back(rv);
            std::vector<RawTerm> body{
                RawTerm{1, neg(cat.state(static_cast<int>(v)))},
                RawTerm{1, pos(b.mmge_var(B - H + e.capped.wmax[v]))}};
            b.add_circuit_reif(rv, normalize(body, 1));
            head_body.push_back(RawTerm{1, pos(rv)});
        }
        e.head = cat.fresh_heur_head();
        b.add_circuit_reif(e.head,
                           normalize(head_body, static_cast<long long>(task_.num_vars()) + 1));
    }
}

void HmaxHeuristic::emit_goal_lemmas(CertificateBuilder &b) {
    VarCatalog &cat = b.catalog();
    for (EvalRecord &e : evals_) {
        PBConstraint claim = normalize({RawTerm{1, neg(cat.r_goal())}, RawTerm{1, neg(e.head)},
                                        RawTerm{1, pos(b.ge_var(b.bound()))}},
                                       1);
        b.goal_buf().rup(std::move(claim));
    }
}

void HmaxHeuristic::emit_state_lemmas(CertificateBuilder &b) {
    for (EvalRecord &e : evals_)
        b.emit_state_lemma_pair(e.state, e.h_raw, e.head);
}

void HmaxHeuristic::emit_action_lemma(CertificateBuilder &b, EvalRecord &e, int ai) {
    const Action &a = task_.actions[static_cast<size_t>(ai)];
    VarCatalog &cat = b.catalog();
    const long long B = b.bound();
    const long long H = e.capped.hmax;
    const long long m = a.cost;

    long long wp = 0;
    for (int p : a.pre)
        wp = std::max(wp, e.capped.wmax[static_cast<size_t>(p)]);

    auto per_var_claim = [&](size_t v) {
        return normalize({RawTerm{1, neg(e.head)}, RawTerm{1, neg(cat.action(ai))},
                          RawTerm{1, pos(cat.prime(e.var_heads[v]))}},
                         1);
    };
    PBConstraint closing = normalize({RawTerm{1, neg(e.head)}, RawTerm{1, neg(cat.action(ai))},
                                      RawTerm{1, pos(cat.prime(e.head))}},
                                     1);

    if (wp == H) {
        // The precondition already carries the full estimate, so applying the
        // action would push the successor cost past the bound.
        b.ind_cost_step(B, m);
        b.ind_buf().rup(std::move(closing));
        return;
    }

    b.ind_cost_step(B - H + wp, m);
    b.ind_cost_implication(B - H + wp + m, B - H, true);
    for (size_t v = 0; v < task_.num_vars(); ++v) {
        bool in_add = std::binary_search(a.add.begin(), a.add.end(), static_cast<int>(v));
        bool in_del = std::binary_search(a.del.begin(), a.del.end(), static_cast<int>(v));
        if (in_add) {
            // wmax[v] <= wp + m for added variables.
            b.ind_cost_implication(B - H + wp + m, B - H + e.capped.wmax[v], true);
        } else if (!in_del) {
            b.ind_cost_step(B - H + e.capped.wmax[v], m);
            b.ind_cost_implication(B - H + e.capped.wmax[v] + m, B - H + e.capped.wmax[v], true);
        }
        b.ind_buf().rup(per_var_claim(v));
    }
    b.ind_buf().rup(normalize({RawTerm{1, neg(e.head)}, RawTerm{1, neg(cat.action(ai))},
                               RawTerm{1, pos(b.mmgep_var(B - H))}},
                              1));
    b.ind_buf().rup(std::move(closing));
}

void HmaxHeuristic::emit_ind_lemmas(CertificateBuilder &b) {
    VarCatalog &cat = b.catalog();
    for (EvalRecord &e : evals_) {
        for (size_t ai = 0; ai < task_.actions.size(); ++ai)
            emit_action_lemma(b, e, static_cast<int>(ai));
        b.ind_buf().rup(normalize({RawTerm{1, neg(e.head)}, RawTerm{1, neg(cat.r_trans())},
                                   RawTerm{1, pos(cat.prime(e.head))}},
                                  1));
    }
}

} // namespace certiplan
