#ifndef CERTIPLAN_TESTS_FIXTURES_H
#define CERTIPLAN_TESTS_FIXTURES_H

#include "certiplan/pb.h"
#include "certiplan/task.h"

#include <string>
#include <vector>

namespace certiplan::testing {

// Two-variable chain: a1 makes p, a2 turns p into q. Optimal cost 3.
inline const char *kChainTask = R"(# two-step chain
vars p q
init
goal q
action a1 cost 1
  pre
  add p
  del
end
action a2 cost 2
  pre p
  add q
  del
end
)";

inline Task chain_task() { return parse_task(kChainTask); }

inline PBConstraint c(VarPool &pool, const std::string &text) {
    return constraint_from_text(text, pool);
}

// Collects the distinct variables of a constraint set plus a claim.
inline std::vector<VarId> vars_in(const std::vector<PBConstraint> &db, const PBConstraint &claim) {
    std::vector<VarId> vars;
    auto feed = [&](const PBConstraint &x) {
        for (const Term &t : x.terms())
            if (std::find(vars.begin(), vars.end(), t.var) == vars.end())
                vars.push_back(t.var);
    };
    for (const PBConstraint &x : db)
        feed(x);
    feed(claim);
    return vars;
}

} // namespace certiplan::testing

#endif
