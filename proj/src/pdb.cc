#include "certiplan/pdb.h"

#include "certiplan/pb_check.h"

#include <algorithm>
#include <cassert>
#include <queue>

namespace certiplan {

uint32_t PdbTable::abstract_of(StateMask s) const {
    uint32_t bits = 0;
    for (size_t i = 0; i < pattern.size(); ++i)
        if (s & (StateMask(1) << pattern[i]))
            bits |= 1u << i;
    return bits;
}

PdbTable build_pdb(const Task &t, const std::vector<int> &pattern) {
    if (pattern.size() > 20)
        throw std::runtime_error("pattern larger than 20 variables");
    PdbTable table;
    table.pattern = pattern;
    size_t n = size_t(1) << pattern.size();
    table.dist.assign(n, std::nullopt);

    auto project = [&](const std::vector<int> &vars) {
        uint32_t bits = 0;
        for (size_t i = 0; i < pattern.size(); ++i)
            if (std::binary_search(vars.begin(), vars.end(), pattern[i]))
                bits |= 1u << i;
        return bits;
    };

    struct Abs {
        uint32_t pre, add, del;
        long long cost;
    };
    std::vector<Abs> abs;
    for (const Action &a : t.actions)
        abs.push_back(Abs{project(a.pre), project(a.add), project(a.del), a.cost});

    // reverse adjacency: for each forward edge s -> t, remember t <- s
    std::vector<std::vector<std::pair<uint32_t, long long>>> rev(n);
    for (uint32_t s = 0; s < n; ++s) {
        for (const Abs &a : abs) {
            if ((s & a.pre) != a.pre)
                continue;
            uint32_t succ = (s & ~a.del) | a.add;
            rev[succ].push_back({s, a.cost});
        }
    }

    uint32_t goal_bits = project(t.goal);
    struct Entry {
        long long d;
        uint32_t s;
        bool operator>(const Entry &o) const { return d > o.d; }
    };
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
    for (uint32_t s = 0; s < n; ++s)
        if ((s & goal_bits) == goal_bits) {
            table.dist[s] = 0;
            open.push({0, s});
        }
    while (!open.empty()) {
        Entry e = open.top();
        open.pop();
        if (*table.dist[e.s] < e.d)
            continue;
        for (auto [p, cost] : rev[e.s]) {
            long long nd = e.d + cost;
            if (!table.dist[p] || nd < *table.dist[p]) {
                table.dist[p] = nd;
                open.push({nd, p});
            }
        }
    }
    return table;
}

std::optional<long long> pdb_evaluate(const PdbTable &table, StateMask s) {
    return table.dist[table.abstract_of(s)];
}

PdbHeuristic::AbstractAction PdbHeuristic::abstract_action(const Action &a) const {
    auto project = [&](const std::vector<int> &vars) {
        uint32_t bits = 0;
        for (size_t i = 0; i < table_.pattern.size(); ++i)
            if (std::binary_search(vars.begin(), vars.end(), table_.pattern[i]))
                bits |= 1u << i;
        return bits;
    };
    return AbstractAction{project(a.pre), project(a.add), project(a.del)};
}

std::optional<long long> PdbHeuristic::estimate(StateMask s) {
    if (seen_.emplace(s, true).second)
        eval_order_.push_back(s);
    return pdb_evaluate(table_, s);
}

void PdbHeuristic::emit_circuit(CertificateBuilder &b) {
    VarCatalog &cat = b.catalog();
    const long long B = b.bound();
    size_t n = table_.num_abstract();
    r_state_.assign(n, -1);
    r_state_ge_.assign(n, -1);

    auto state_body = [&](uint32_t s_alpha) {
        std::vector<RawTerm> raw;
        for (size_t i = 0; i < table_.pattern.size(); ++i) {
            bool in = (s_alpha >> i) & 1u;
            raw.push_back(RawTerm{1, Lit(cat.state(table_.pattern[i]), in)});
        }
        return normalize(raw, static_cast<long long>(table_.pattern.size()));
    };

    for (uint32_t s = 0; s < n; ++s) {
        bool finite = table_.dist[s].has_value();
        if (variant_ == PdbCertVariant::Efficient && !finite)
            continue;
        r_state_[s] = cat.fresh_heur_head();
        b.add_circuit_reif(r_state_[s], state_body(s));
        long long thr = finite ? B - *table_.dist[s] : 0;
        r_state_ge_[s] = cat.fresh_heur_head();
        b.add_circuit_reif(r_state_ge_[s],
                           normalize({RawTerm{1, pos(r_state_[s])}, RawTerm{1, pos(b.mmge_var(thr))}},
                                     2));
    }

    if (variant_ == PdbCertVariant::Efficient) {
        std::vector<RawTerm> raw;
        long long count = 0;
        for (uint32_t s = 0; s < n; ++s)
            if (r_state_[s] >= 0) {
                raw.push_back(RawTerm{1, neg(r_state_[s])});
                ++count;
            }
        r_inf_ = cat.fresh_heur_head();
        b.add_circuit_reif(r_inf_, normalize(raw, count));
    }

    {
        std::vector<RawTerm> raw;
        if (r_inf_ >= 0)
            raw.push_back(RawTerm{1, pos(r_inf_)});
        for (uint32_t s = 0; s < n; ++s)
            if (r_state_ge_[s] >= 0)
                raw.push_back(RawTerm{1, pos(r_state_ge_[s])});
        r_pdb_ = cat.fresh_heur_head();
        b.add_circuit_reif(r_pdb_, normalize(raw, 1));
    }

    if (variant_ == PdbCertVariant::Efficient) {
        // abstract goal indicator, used by the goal lemma's widening step
        std::vector<RawTerm> raw;
        long long count = 0;
        for (size_t i = 0; i < table_.pattern.size(); ++i)
            if (std::binary_search(task_.goal.begin(), task_.goal.end(), table_.pattern[i])) {
                raw.push_back(RawTerm{1, pos(cat.state(table_.pattern[i]))});
                ++count;
            }
        r_goal_abs_ = cat.fresh_heur_head();
        b.add_circuit_reif(r_goal_abs_, normalize(raw, count));

        // one conjunction indicator per (finite state, consistent action):
        // the literals an application must have left intact
        for (uint32_t s = 0; s < n; ++s) {
            if (!table_.dist[s])
                continue;
            for (size_t ai = 0; ai < task_.actions.size(); ++ai) {
                AbstractAction aa = abstract_action(task_.actions[ai]);
                if (!aa.consistent_with(s))
                    continue;
                std::vector<RawTerm> raw_l;
                long long cnt = 0;
                uint32_t evars = aa.add | aa.del;
                for (size_t i = 0; i < table_.pattern.size(); ++i) {
                    uint32_t bit = 1u << i;
                    bool positive;
                    if (aa.pre & bit)
                        positive = true;
                    else if ((s & bit) && !(evars & bit))
                        positive = true;
                    else if (!(s & bit) && !(evars & bit))
                        positive = false;
                    else
                        continue; // effect variables carry no requirement
                    raw_l.push_back(RawTerm{1, Lit(cat.state(table_.pattern[i]), positive)});
                    ++cnt;
                }
                VarId rl = cat.fresh_heur_head();
                b.add_circuit_reif(rl, normalize(raw_l, cnt));
                r_link_[{s, static_cast<int>(ai)}] = rl;
            }
        }
    }
}

ProofScript PdbHeuristic::extension_to_states(CertificateBuilder &b, VarId r_alpha,
                                              uint32_t fixed_mask, uint32_t fixed_bits) const {
    VarCatalog &cat = b.catalog();
    std::vector<VarId> z_vars;
    for (int v : table_.pattern)
        z_vars.push_back(cat.state(v));
    std::vector<std::pair<VarId, bool>> alpha;
    for (size_t i = 0; i < table_.pattern.size(); ++i)
        if (fixed_mask & (1u << i))
            alpha.push_back({z_vars[i], (fixed_bits >> i) & 1u});
    return gen_state_set_extension(z_vars, alpha, r_alpha, [&](uint32_t bits) {
        VarId r = r_state_[bits];
        if (r < 0)
            throw std::runtime_error("state set extension over unreachable abstract state");
        return r;
    });
}

void PdbHeuristic::emit_goal_lemmas(CertificateBuilder &b) {
    VarCatalog &cat = b.catalog();
    PBConstraint final_claim = normalize({RawTerm{1, neg(cat.r_goal())}, RawTerm{1, neg(r_pdb_)},
                                          RawTerm{1, pos(b.ge_var(b.bound()))}},
                                         1);
    if (variant_ == PdbCertVariant::Naive) {
        b.goal_buf().rup(std::move(final_claim));
        return;
    }
    uint32_t goal_mask = 0, goal_bits = 0;
    for (size_t i = 0; i < table_.pattern.size(); ++i)
        if (std::binary_search(task_.goal.begin(), task_.goal.end(), table_.pattern[i])) {
            goal_mask |= 1u << i;
            goal_bits |= 1u << i;
        }
    b.goal_buf().splice_rups(extension_to_states(b, r_goal_abs_, goal_mask, goal_bits));
    b.goal_buf().rup(
        normalize({RawTerm{1, neg(cat.r_goal())}, RawTerm{1, neg(r_inf_)}}, 1));
    b.goal_buf().rup(std::move(final_claim));
}

void PdbHeuristic::emit_state_lemmas(CertificateBuilder &b) {
    for (StateMask s : eval_order_)
        b.emit_state_lemma_pair(s, pdb_evaluate(table_, s), r_pdb_);
}

void PdbHeuristic::emit_ind_lemmas(CertificateBuilder &b) {
    VarCatalog &cat = b.catalog();
    const long long B = b.bound();
    size_t n = table_.num_abstract();
    bool efficient = variant_ == PdbCertVariant::Efficient;

    auto imp3 = [&](Lit a, Lit bb, Lit c) {
        return normalize({RawTerm{1, a.negated()}, RawTerm{1, bb.negated()}, RawTerm{1, c}}, 1);
    };

    for (uint32_t s = 0; s < n; ++s) {
        if (r_state_[s] < 0)
            continue;
        bool s_finite = table_.dist[s].has_value();
        for (size_t ai = 0; ai < task_.actions.size(); ++ai) {
            AbstractAction aa = abstract_action(task_.actions[ai]);
            if (!aa.applicable_in(s))
                continue;
            uint32_t succ = aa.apply(s);
            bool succ_finite = table_.dist[succ].has_value();
            long long m = task_.actions[ai].cost;
            if (efficient && !succ_finite) {
                // the successor projects outside the backwards-reachable
                // region, so the primed circuit satisfies the catch-all
                b.ind_buf().rup(imp3(pos(r_state_ge_[s]), pos(cat.action(static_cast<int>(ai))),
                                     pos(cat.prime(r_pdb_))));
                continue;
            }
            b.ind_buf().rup(imp3(pos(r_state_[s]), pos(cat.action(static_cast<int>(ai))),
                                 pos(cat.prime(r_state_[succ]))));
            long long thr_s = s_finite ? B - *table_.dist[s] : 0;
            long long thr_t = succ_finite ? B - *table_.dist[succ] : 0;
            b.ind_cost_step(thr_s, m);
            if (thr_s + m != thr_t)
                b.ind_cost_implication(thr_s + m, thr_t, true);
            b.ind_buf().rup(imp3(pos(r_state_ge_[s]), pos(cat.action(static_cast<int>(ai))),
                                 pos(cat.prime(r_pdb_))));
        }
        b.ind_buf().rup(imp3(pos(r_state_ge_[s]), pos(cat.r_trans()), pos(cat.prime(r_pdb_))));
    }

    if (efficient) {
        for (uint32_t s = 0; s < n; ++s) {
            if (!table_.dist[s])
                continue;
            for (size_t ai = 0; ai < task_.actions.size(); ++ai) {
                AbstractAction aa = abstract_action(task_.actions[ai]);
                PBConstraint claim =
                    normalize({RawTerm{1, neg(r_inf_)},
                               RawTerm{1, neg(cat.action(static_cast<int>(ai)))},
                               RawTerm{1, neg(cat.prime(r_state_[s]))}},
                              1);
                if (aa.consistent_with(s)) {
                    VarId rl = r_link_.at({s, static_cast<int>(ai)});
                    uint32_t evars = aa.add | aa.del;
                    uint32_t fixed_mask = 0, fixed_bits = 0;
                    for (size_t i = 0; i < table_.pattern.size(); ++i) {
                        uint32_t bit = 1u << i;
                        if (aa.pre & bit) {
                            fixed_mask |= bit;
                            fixed_bits |= bit;
                        } else if (!(evars & bit)) {
                            fixed_mask |= bit;
                            if (s & bit)
                                fixed_bits |= bit;
                        }
                    }
                    b.ind_buf().splice_rups(extension_to_states(b, rl, fixed_mask, fixed_bits));
                }
                b.ind_buf().rup(std::move(claim));
            }
            b.ind_buf().rup(normalize({RawTerm{1, neg(r_inf_)}, RawTerm{1, neg(cat.r_trans())},
                                       RawTerm{1, neg(cat.prime(r_state_[s]))}},
                                      1));
        }
        b.ind_buf().rup(
            imp3(pos(r_inf_), pos(cat.r_trans()), pos(cat.prime(r_pdb_))));
    }

    b.ind_buf().rup(imp3(pos(r_pdb_), pos(cat.r_trans()), pos(cat.prime(r_pdb_))));
}

} // namespace certiplan
