#include "certiplan/search.h"

#include <algorithm>
#include <cassert>
#include <queue>
#include <unordered_map>

namespace certiplan {

namespace {

struct QueueEntry {
    long long f, h;
    uint64_t seq;
    StateMask state;
    long long g;

    bool operator>(const QueueEntry &o) const {
        if (f != o.f)
            return f > o.f;
        if (h != o.h)
            return h > o.h;
        return seq > o.seq;
    }
};

struct SearchState {
    std::unordered_map<StateMask, long long> g;
    std::unordered_map<StateMask, std::optional<long long>> h;
    std::unordered_map<StateMask, std::pair<StateMask, int>> parent;
    std::unordered_map<StateMask, long long> closed;
    std::vector<std::pair<StateMask, long long>> closed_order;
    std::vector<StateMask> generated_order;
    std::vector<std::pair<long long, long long>> prune_events; // (g_new, g_old)
    size_t expansions = 0;
};

Plan extract_plan(const Task &t, const SearchState &ss, StateMask goal_state, StateMask init) {
    std::vector<std::string> rev;
    StateMask cur = goal_state;
    long long cost = 0;
    while (cur != init) {
        auto it = ss.parent.find(cur);
        if (it == ss.parent.end())
            break;
        const Action &a = t.actions[static_cast<size_t>(it->second.second)];
        rev.push_back(a.name);
        cost += a.cost;
        cur = it->second.first;
    }
    std::reverse(rev.begin(), rev.end());
    return Plan{std::move(rev), cost};
}

} // namespace

PlanResult astar_plan(const Task &t, HeuristicProvider &h, VarPool &pool) {
    if (t.num_vars() > 64)
        throw std::runtime_error("search supports at most 64 variables");

    SearchState ss;
    std::priority_queue<QueueEntry, std::vector<QueueEntry>, std::greater<>> open;
    uint64_t seq = 0;
    StateMask init = mask_of(t.init);
    StateMask goal_mask = mask_of(t.goal);

    auto evaluate = [&](StateMask s) {
        auto it = ss.h.find(s);
        if (it != ss.h.end())
            return it->second;
        std::optional<long long> hv = h.estimate(s);
        ss.h[s] = hv;
        ss.generated_order.push_back(s);
        return hv;
    };

    ss.g[init] = 0;
    if (auto h0 = evaluate(init))
        open.push(QueueEntry{*h0, *h0, seq++, init, 0});

    PlanResult result;
    bool solved = false;
    StateMask goal_state = 0;

    while (!open.empty()) {
        QueueEntry e = open.top();
        open.pop();
        if (ss.closed.count(e.state))
            continue;
        if (e.g != ss.g.at(e.state))
            continue; // superseded by a cheaper path
        long long g = e.g;
        ss.closed[e.state] = g;
        ss.closed_order.push_back({e.state, g});
        if ((e.state & goal_mask) == goal_mask) {
            solved = true;
            goal_state = e.state;
            result.bound = g;
            break;
        }
        ++ss.expansions;
        for (size_t ai = 0; ai < t.actions.size(); ++ai) {
            const Action &a = t.actions[ai];
            auto succ = apply_action(e.state, a);
            if (!succ)
                continue;
            long long ng = g + a.cost;
            auto cit = ss.closed.find(*succ);
            if (cit != ss.closed.end()) {
                if (ng < cit->second)
                    throw ReopeningError("successor of " + std::to_string(e.state) +
                                         " improves a closed state; heuristic is inconsistent");
                ss.prune_events.push_back({ng, cit->second});
                continue;
            }
            auto git = ss.g.find(*succ);
            if (git != ss.g.end()) {
                if (ng >= git->second) {
                    ss.prune_events.push_back({ng, git->second});
                    continue;
                }
                git->second = ng;
                ss.parent[*succ] = {e.state, static_cast<int>(ai)};
                if (auto hv = ss.h.at(*succ))
                    open.push(QueueEntry{ng + *hv, *hv, seq++, *succ, ng});
                continue;
            }
            ss.g[*succ] = ng;
            ss.parent[*succ] = {e.state, static_cast<int>(ai)};
            if (auto hv = evaluate(*succ))
                open.push(QueueEntry{ng + *hv, *hv, seq++, *succ, ng});
            else
                evaluate(*succ); // dead end: evaluated, remains open forever
        }
    }

    result.closed = ss.closed_order.size();
    result.expansions = ss.expansions;
    result.evaluated = ss.generated_order.size();
    result.prune_events = ss.prune_events.size();

    if (!solved) {
        result.status = PlanResult::Status::Unsolvable;
        return result;
    }
    result.status = PlanResult::Status::Solved;
    result.plan = extract_plan(t, ss, goal_state, init);
    assert(result.plan.total_cost == result.bound);

    // ---- certificate construction ----
    const long long B = result.bound;
    VarCatalog cat(pool, t, B);
    CertificateBuilder builder(t, cat);

    h.emit_circuit(builder);
    result.heuristic_circuit_size = builder.circuit().size();

    // one indicator per closed state: the state was reached with at least its
    // final g-value
    std::unordered_map<StateMask, VarId> closed_head;
    for (auto [s, g] : ss.closed_order) {
        std::vector<RawTerm> raw;
        for (size_t v = 0; v < t.num_vars(); ++v)
            raw.push_back(RawTerm{1, Lit(cat.state(static_cast<int>(v)),
                                         (s & (StateMask(1) << v)) != 0)});
        raw.push_back(RawTerm{1, pos(builder.ge_var(g))});
        VarId head = cat.fresh_search_head();
        builder.add_circuit_reif(head, normalize(raw, static_cast<long long>(t.num_vars()) + 1));
        closed_head[s] = head;
    }

    // the invariant: some closed indicator or some open state's heuristic
    // indicator holds
    std::vector<StateMask> open_states;
    for (StateMask s : ss.generated_order)
        if (!ss.closed.count(s))
            open_states.push_back(s);
    result.open_at_end = open_states.size();
    VarId out;
    {
        std::vector<RawTerm> raw;
        for (auto [s, g] : ss.closed_order)
            raw.push_back(RawTerm{1, pos(closed_head.at(s))});
        std::vector<VarId> seen_rh;
        for (StateMask s : open_states) {
            VarId rh = h.rh_var(s);
            if (std::find(seen_rh.begin(), seen_rh.end(), rh) == seen_rh.end()) {
                seen_rh.push_back(rh);
                raw.push_back(RawTerm{1, pos(rh)});
            }
        }
        out = cat.fresh_search_head();
        builder.add_circuit_reif(out, normalize(raw, 1));
    }

    // initial state lemma: a single propagation closes it via the closed
    // indicator of the initial state
    SymRef init_goal_ref = builder.init_buf().rup(lemma_goal(cat, LemmaKind::Init, out));

    // goal lemma: the heuristic's goal lemmas first, then the final claim
    h.emit_goal_lemmas(builder);
    SymRef goal_goal_ref = builder.goal_buf().rup(lemma_goal(cat, LemmaKind::Goal, out));

    // inductivity lemma: duplicate-pruning facts, heuristic lemmas, one block
    // per closed state and action, then the per-state and final claims
    for (auto [g_new, g_old] : ss.prune_events)
        builder.ind_cost_implication(g_new, g_old, true);
    h.emit_state_lemmas(builder);
    h.emit_ind_lemmas(builder);

    for (auto [s, g] : ss.closed_order) {
        bool reached_goal = s == goal_state;
        for (size_t ai = 0; ai < t.actions.size(); ++ai) {
            const Action &a = t.actions[ai];
            auto succ = apply_action(s, a);
            if (!succ)
                continue;
            long long m = a.cost;
            builder.ind_cost_step(g, m);
            if (!reached_goal) {
                long long hat_g = g + m;
                long long target;
                auto cit = ss.closed.find(*succ);
                if (cit != ss.closed.end()) {
                    target = cit->second;
                } else {
                    target = builder.state_threshold(ss.h.at(*succ));
                }
                if (target != 0 && clip_to_bound(hat_g, B) != target)
                    builder.ind_cost_implication(hat_g, target, true);
            }
            builder.ind_buf().rup(normalize({RawTerm{1, neg(closed_head.at(s))},
                                             RawTerm{1, neg(cat.action(static_cast<int>(ai)))},
                                             RawTerm{1, pos(cat.prime(out))}},
                                            1));
        }
        builder.ind_buf().rup(normalize({RawTerm{1, neg(closed_head.at(s))},
                                         RawTerm{1, neg(cat.r_trans())},
                                         RawTerm{1, pos(cat.prime(out))}},
                                        1));
    }
    {
        std::vector<VarId> seen_rh;
        for (StateMask s : open_states) {
            VarId rh = h.rh_var(s);
            if (std::find(seen_rh.begin(), seen_rh.end(), rh) != seen_rh.end())
                continue;
            seen_rh.push_back(rh);
            builder.ind_buf().rup(normalize({RawTerm{1, neg(rh)}, RawTerm{1, neg(cat.r_trans())},
                                             RawTerm{1, pos(cat.prime(out))}},
                                            1));
        }
    }
    SymRef ind_goal_ref = builder.ind_buf().rup(lemma_goal(cat, LemmaKind::Ind, out));

    // declarations are final; resolve the three buffers against their scopes
    Certificate cert;
    cert.bound = B;
    cert.decls = builder.decls();
    cert.circuit = builder.circuit();
    cert.output = out;
    {
        ScopeLayout scope = build_lemma_scope(t, cat, cert.decls, cert.circuit, LemmaKind::Init);
        cert.init_proof = builder.init_buf().resolve(scope, init_goal_ref);
    }
    {
        ScopeLayout scope = build_lemma_scope(t, cat, cert.decls, cert.circuit, LemmaKind::Goal);
        cert.goal_proof = builder.goal_buf().resolve(scope, goal_goal_ref);
    }
    {
        ScopeLayout scope = build_lemma_scope(t, cat, cert.decls, cert.circuit, LemmaKind::Ind);
        cert.ind_proof = builder.ind_buf().resolve(scope, ind_goal_ref);
    }
    result.certificate = std::move(cert);
    return result;
}

} // namespace certiplan
