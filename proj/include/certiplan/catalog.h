#ifndef CERTIPLAN_CATALOG_H
#define CERTIPLAN_CATALOG_H

#include "certiplan/pb.h"
#include "certiplan/task.h"

#include <set>
#include <string>

namespace certiplan {

// Canonical variable namespace for a (task, bound) pair.
//
//   xv_<name> / xvp_<name>    state variables and their primed twins
//   xc_<i> / xcp_<i>          cost bits, i in 0..ceil(log2 max(B,1))
//   xge_<k> / xgep_<k>        cost-at-least-k thresholds, k in 0..B
//   xmmge_<l> / xmmgep_<l>    clipped placeholder thresholds, any integer l
//                             (negative l rendered m<abs>, e.g. m2 for -2)
//   xdelta_<k>[_ge|_le]       cost-difference-is-k triple
//   xeq_/xgeq_/xleq_<name>    frame equality triple per state variable
//   xa_<name>                 action selectors
//   xrI, xrG, xrT             initial-state, goal and transition heads
//   xs_<n>, xh_<n>            fresh circuit heads (search / heuristic);
//                             their primed twins carry a _p suffix
class VarCatalog {
public:
    VarCatalog(VarPool &pool, const Task &task, long long bound);

    VarPool &pool() { return pool_; }
    const VarPool &pool() const { return pool_; }
    long long bound() const { return bound_; }
    int bit_count() const { return bits_; }
    long long max_cost_value() const { return (1LL << bits_) - 1; }

    VarId state(int var) const { return state_[static_cast<size_t>(var)]; }
    VarId state_primed(int var) const { return state_primed_[static_cast<size_t>(var)]; }
    VarId cost_bit(int i) const { return cost_[static_cast<size_t>(i)]; }
    VarId cost_bit_primed(int i) const { return cost_primed_[static_cast<size_t>(i)]; }

    VarId ge(long long k);
    VarId gep(long long k);
    VarId mmge(long long l);
    VarId mmgep(long long l);
    VarId delta(long long k);
    VarId delta_ge(long long k);
    VarId delta_le(long long k);

    VarId eq(int var) const { return eq_[static_cast<size_t>(var)]; }
    VarId geq(int var) const { return geq_[static_cast<size_t>(var)]; }
    VarId leq(int var) const { return leq_[static_cast<size_t>(var)]; }
    VarId action(int ai) const { return action_[static_cast<size_t>(ai)]; }
    VarId r_init() const { return r_init_; }
    VarId r_goal() const { return r_goal_; }
    VarId r_trans() const { return r_trans_; }

    VarId fresh_search_head() { return pool_.intern("xs_" + std::to_string(next_search_++)); }
    VarId fresh_heur_head() { return pool_.intern("xh_" + std::to_string(next_heur_++)); }

    // Namespace-aware priming; throws on prime-forbidden namespaces.
    VarId prime(VarId v);

    static std::string mm_suffix(long long l);

private:
    VarPool &pool_;
    long long bound_;
    int bits_;
    std::vector<VarId> state_, state_primed_, cost_, cost_primed_;
    std::vector<VarId> eq_, geq_, leq_, action_;
    VarId r_init_, r_goal_, r_trans_;
    int next_search_ = 0;
    int next_heur_ = 0;
};

long long clip_to_bound(long long l, long long bound);
int cost_bit_count(long long bound);

} // namespace certiplan

#endif
