#include "certiplan/catalog.h"

#include <algorithm>

namespace certiplan {

int cost_bit_count(long long bound) {
    long long n = std::max<long long>(bound, 1);
    int e = 0;
    while ((1LL << e) < n)
        ++e;
    return e + 1;
}

long long clip_to_bound(long long l, long long bound) {
    return std::min(bound, std::max<long long>(0, l));
}

VarCatalog::VarCatalog(VarPool &pool, const Task &task, long long bound)
    : pool_(pool), bound_(bound), bits_(cost_bit_count(bound)) {
    for (const std::string &v : task.variables)
        state_.push_back(pool_.intern("xv_" + v));
    for (const std::string &v : task.variables)
        state_primed_.push_back(pool_.intern("xvp_" + v));
    for (int i = 0; i < bits_; ++i)
        cost_.push_back(pool_.intern("xc_" + std::to_string(i)));
    for (int i = 0; i < bits_; ++i)
        cost_primed_.push_back(pool_.intern("xcp_" + std::to_string(i)));
    r_init_ = pool_.intern("xrI");
    r_goal_ = pool_.intern("xrG");
    r_trans_ = pool_.intern("xrT");
    for (const std::string &v : task.variables) {
        eq_.push_back(pool_.intern("xeq_" + v));
        geq_.push_back(pool_.intern("xgeq_" + v));
        leq_.push_back(pool_.intern("xleq_" + v));
    }
    for (const Action &a : task.actions)
        action_.push_back(pool_.intern("xa_" + a.name));
}

std::string VarCatalog::mm_suffix(long long l) {
    if (l < 0)
        return "m" + std::to_string(-l);
    return std::to_string(l);
}

VarId VarCatalog::ge(long long k) {
    if (k < 0 || k > bound_)
        throw std::runtime_error("ge threshold out of range: " + std::to_string(k));
    return pool_.intern("xge_" + std::to_string(k));
}

VarId VarCatalog::gep(long long k) {
    if (k < 0 || k > bound_)
        throw std::runtime_error("gep threshold out of range: " + std::to_string(k));
    return pool_.intern("xgep_" + std::to_string(k));
}

VarId VarCatalog::mmge(long long l) { return pool_.intern("xmmge_" + mm_suffix(l)); }
VarId VarCatalog::mmgep(long long l) { return pool_.intern("xmmgep_" + mm_suffix(l)); }

VarId VarCatalog::delta(long long k) {
    if (k < 0)
        throw std::runtime_error("delta value must be non-negative");
    return pool_.intern("xdelta_" + std::to_string(k));
}

VarId VarCatalog::delta_ge(long long k) { return pool_.intern("xdelta_" + std::to_string(k) + "_ge"); }
VarId VarCatalog::delta_le(long long k) { return pool_.intern("xdelta_" + std::to_string(k) + "_le"); }

VarId VarCatalog::prime(VarId v) {
    const std::string &n = pool_.name(v);
    auto starts = [&](const char *p) { return n.rfind(p, 0) == 0; };
    auto ends_p = [&] { return n.size() >= 2 && n.compare(n.size() - 2, 2, "_p") == 0; };
    if (starts("xvp_") || starts("xcp_") || starts("xgep_") || starts("xmmgep_"))
        throw std::runtime_error("variable already primed: " + n);
    if (starts("xv_"))
        return pool_.intern("xvp_" + n.substr(3));
    if (starts("xc_"))
        return pool_.intern("xcp_" + n.substr(3));
    if (starts("xge_"))
        return pool_.intern("xgep_" + n.substr(4));
    if (starts("xmmge_"))
        return pool_.intern("xmmgep_" + n.substr(6));
    if ((starts("xs_") || starts("xh_")) && !ends_p())
        return pool_.intern(n + "_p");
    throw std::runtime_error("variable has no primed twin: " + n);
}

} // namespace certiplan
