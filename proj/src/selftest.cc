#include "certiplan/selftest.h"

#include "certiplan/hmax.h"
#include "certiplan/mutate.h"
#include "certiplan/pdb.h"
#include "certiplan/search.h"
#include "certiplan/verifier.h"

#include <memory>
#include <sstream>

namespace certiplan {

namespace {

std::string task_tag(int index, const std::string &heuristic) {
    return "task " + std::to_string(index) + " [" + heuristic + "]";
}

// Runs one planner configuration and checks it against the oracle verdict.
void run_one(SelftestResult &res, const Task &t, const OracleResult &oracle, int index,
             const std::string &tag, HeuristicProvider &h) {
    VarPool pool;
    PlanResult pr;
    try {
        pr = astar_plan(t, h, pool);
    } catch (const std::exception &e) {
        res.fail(task_tag(index, tag) + ": planner error: " + e.what());
        return;
    }
    if (oracle.status == OracleResult::Status::Unsolvable) {
        if (pr.status != PlanResult::Status::Unsolvable)
            res.fail(task_tag(index, tag) + ": planner solved an unsolvable task");
        return;
    }
    if (pr.status != PlanResult::Status::Solved) {
        res.fail(task_tag(index, tag) + ": planner failed on a solvable task");
        return;
    }
    if (pr.bound != oracle.cost) {
        res.fail(task_tag(index, tag) + ": cost " + std::to_string(pr.bound) +
                 " differs from optimum " + std::to_string(oracle.cost));
        return;
    }
    PlanVerdict v = validate_plan(t, pr.plan);
    if (!v.valid() || v.cost != pr.bound) {
        res.fail(task_tag(index, tag) + ": emitted plan does not validate at the reported cost");
        return;
    }
    // serialization round trip, then the independent check
    std::string text = serialize(pr.certificate, pool);
    VarPool pool2;
    Certificate cert2;
    try {
        cert2 = parse_certificate(text, pool2);
    } catch (const std::exception &e) {
        res.fail(task_tag(index, tag) + ": certificate does not re-parse: " + e.what());
        return;
    }
    ++res.certificates;
    VerdictReport report = verify_optimality(t, pr.plan, cert2, pool2);
    if (!report.accepted)
        res.fail(task_tag(index, tag) + ": verifier rejected: " + report.diagnostic);
}

} // namespace

SelftestResult run_selftest(uint64_t seed, int count, const RandomTaskParams &params) {
    SelftestResult res;
    std::mt19937_64 rng(seed);
    for (int i = 0; i < count; ++i) {
        Task t = random_task(rng, params);
        std::vector<int> pattern = random_pattern(rng, t);
        OracleResult oracle = optimal_cost_oracle(t);
        if (oracle.status == OracleResult::Status::TooLarge)
            continue;
        ++res.tasks;
        if (oracle.status == OracleResult::Status::Solved) {
            ++res.solvable;
            PlanVerdict w = validate_plan(t, oracle.witness);
            if (!w.valid() || w.cost != oracle.cost)
                res.fail(task_tag(i, "oracle") + ": witness plan does not validate");
        }
        {
            HmaxHeuristic h(t);
            run_one(res, t, oracle, i, "hmax", h);
        }
        {
            PdbHeuristic h(t, pattern, PdbCertVariant::Naive);
            run_one(res, t, oracle, i, "pdb-naive", h);
        }
        {
            PdbHeuristic h(t, pattern, PdbCertVariant::Efficient);
            run_one(res, t, oracle, i, "pdb-efficient", h);
        }
    }
    return res;
}

MutationOutcome run_mutation_battery(uint64_t seed, int mutant_count) {
    MutationOutcome out;
    std::mt19937_64 rng(seed);

    struct BaseCert {
        Task task;
        long long optimum;
        std::string text;
    };
    std::vector<BaseCert> bases;
    int guard = 0;
    while (bases.size() < 12 && guard++ < 400) {
        Task t = random_task(rng);
        OracleResult oracle = optimal_cost_oracle(t);
        if (oracle.status != OracleResult::Status::Solved)
            continue;
        VarPool pool;
        PlanResult pr;
        try {
            if (bases.size() % 2 == 0) {
                HmaxHeuristic h(t);
                pr = astar_plan(t, h, pool);
            } else {
                PdbHeuristic h(t, random_pattern(rng, t),
                               bases.size() % 4 == 1 ? PdbCertVariant::Naive
                                                     : PdbCertVariant::Efficient);
                pr = astar_plan(t, h, pool);
            }
        } catch (const std::exception &) {
            continue;
        }
        if (pr.status != PlanResult::Status::Solved)
            continue;
        bases.push_back(BaseCert{t, oracle.cost, serialize(pr.certificate, pool)});
    }
    if (bases.empty())
        return out;

    for (int i = 0; i < mutant_count; ++i) {
        const BaseCert &base = bases[static_cast<size_t>(rng() % bases.size())];
        // stack one to three edits so repairs cannot hide behind bookkeeping
        std::string mutated = mutate_certificate_text(base.text, rng);
        for (uint64_t extra = rng() % 3; extra > 0; --extra)
            mutated = mutate_certificate_text(mutated, rng);
        if (mutated == base.text)
            continue;
        ++out.mutants;
        VarPool pool;
        Certificate cert;
        try {
            cert = parse_certificate(mutated, pool);
        } catch (const std::exception &) {
            ++out.rejected;
            continue;
        }
        VerdictReport report = verify_lower_bound(base.task, cert.bound, cert, pool);
        if (!report.accepted) {
            ++out.rejected;
            continue;
        }
        if (cert.bound > base.optimum) {
            ++out.accepted_overclaim;
            if (out.overclaims.size() < 5)
                out.overclaims.push_back("mutant " + std::to_string(i) + " claimed bound " +
                                         std::to_string(cert.bound) + " above optimum " +
                                         std::to_string(base.optimum));
        } else {
            ++out.accepted_sound;
        }
    }
    return out;
}

} // namespace certiplan
