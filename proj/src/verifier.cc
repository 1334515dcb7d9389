#include "certiplan/verifier.h"

#include "certiplan/cert_builder.h"
#include "certiplan/pb_check.h"

#include <set>

namespace certiplan {

namespace {

bool has_suffix(const std::string &s, const std::string &suffix) {
    return s.size() >= suffix.size() &&
           s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

// Circuit bodies may mention only task state variables, cost bits, declared
// thresholds and earlier heads; heads live in the reserved xs_/xh_ namespaces
// and are never primed.
std::string check_circuit(const Task &t, VarCatalog &cat, const Certificate &cert) {
    std::set<VarId> inputs;
    for (size_t v = 0; v < t.num_vars(); ++v)
        inputs.insert(cat.state(static_cast<int>(v)));
    for (int i = 0; i < cat.bit_count(); ++i)
        inputs.insert(cat.cost_bit(i));
    for (long long k : cert.decls.ge)
        inputs.insert(cat.ge(k));
    for (long long l : cert.decls.mm)
        inputs.insert(cat.mmge(l));

    std::set<VarId> heads;
    const VarPool &pool = cat.pool();
    for (size_t i = 0; i < cert.circuit.size(); ++i) {
        const Reification &r = cert.circuit[i];
        const std::string &name = pool.name(r.var);
        bool ns_ok = name.rfind("xs_", 0) == 0 || name.rfind("xh_", 0) == 0;
        if (!ns_ok || has_suffix(name, "_p"))
            return "circuit head outside the reserved namespace: " + name;
        if (inputs.count(r.var) || heads.count(r.var))
            return "circuit head is not fresh: " + name;
        for (const Term &term : r.body.terms()) {
            if (!inputs.count(term.var) && !heads.count(term.var))
                return "circuit body references unavailable variable: " + pool.name(term.var) +
                       " (reification " + std::to_string(i + 1) + ")";
        }
        heads.insert(r.var);
    }
    if (!heads.count(cert.output))
        return "output variable is not a circuit head";
    return "";
}

} // namespace

VerdictReport verify_lower_bound(const Task &t, long long bound, const Certificate &cert,
                                 VarPool &pool) {
    VerdictReport report;
    report.bound = bound;
    if (cert.bound != bound)
        return VerdictReport::reject("certificate bound " + std::to_string(cert.bound) +
                                         " does not match requested bound " + std::to_string(bound),
                                     bound);
    if (bound < 0)
        return VerdictReport::reject("negative bound", bound);
    if (t.num_vars() > 64)
        return VerdictReport::reject("more than 64 state variables", bound);

    VarCatalog cat(pool, t, bound);
    if (std::string err = check_circuit(t, cat, cert); !err.empty())
        return VerdictReport::reject(err, bound);

    struct Item {
        LemmaKind kind;
        const ProofScript *script;
        const char *name;
    };
    const Item items[3] = {{LemmaKind::Init, &cert.init_proof, "init"},
                           {LemmaKind::Goal, &cert.goal_proof, "goal"},
                           {LemmaKind::Ind, &cert.ind_proof, "ind"}};
    for (const Item &item : items) {
        ScopeLayout scope;
        try {
            scope = build_lemma_scope(t, cat, cert.decls, cert.circuit, item.kind);
        } catch (const std::exception &e) {
            return VerdictReport::reject(std::string(item.name) + ": " + e.what(), bound);
        }
        PBConstraint goal = lemma_goal(cat, item.kind, cert.output);
        CheckResult res = check_script(scope.db, *item.script, goal);
        if (!res.ok)
            return VerdictReport::reject(std::string(item.name) + ": " + res.diagnostic, bound);
    }
    report.accepted = true;
    return report;
}

VerdictReport verify_optimality(const Task &t, const Plan &p, const Certificate &cert,
                                VarPool &pool) {
    PlanVerdict v = validate_plan(t, p);
    if (!v.valid()) {
        switch (v.status) {
        case PlanVerdict::Status::StepNotApplicable:
            return VerdictReport::reject("plan step " + std::to_string(v.failing_step + 1) +
                                         " is not applicable");
        case PlanVerdict::Status::GoalNotReached:
            return VerdictReport::reject("plan does not reach the goal");
        case PlanVerdict::Status::UnknownAction:
            return VerdictReport::reject("plan step " + std::to_string(v.failing_step + 1) +
                                         " names an unknown action");
        default:
            return VerdictReport::reject("invalid plan");
        }
    }
    if (cert.bound != v.cost)
        return VerdictReport::reject("certificate bound " + std::to_string(cert.bound) +
                                         " does not match the validated plan cost " +
                                         std::to_string(v.cost),
                                     v.cost);
    return verify_lower_bound(t, v.cost, cert, pool);
}

} // namespace certiplan
