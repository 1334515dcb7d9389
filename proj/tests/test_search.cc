#include "certiplan/search.h"

#include "certiplan/hmax.h"
#include "certiplan/pdb.h"
#include "certiplan/random_tasks.h"
#include "certiplan/verifier.h"
#include "fixtures.h"

#include <doctest.h>

#include <random>
#include <sstream>

using namespace certiplan;
using certiplan::testing::chain_task;

namespace {

size_t count_search_heads(const Certificate &cert, const VarPool &pool) {
    size_t n = 0;
    for (const Reification &r : cert.circuit)
        if (pool.name(r.var).rfind("xs_", 0) == 0)
            ++n;
    return n;
}

// Deliberately inconsistent estimator used to exercise the reopening guard.
class InconsistentHeuristic : public HeuristicProvider {
public:
    explicit InconsistentHeuristic(const Task &t) : task_(t) {}
    std::string name() const override { return "inconsistent"; }
    std::optional<long long> estimate(StateMask s) override {
        // huge on one specific intermediate state, zero elsewhere
        return s == StateMask(0b001) ? 50 : 0;
    }
    void emit_circuit(CertificateBuilder &) override { throw std::logic_error("unused"); }
    VarId rh_var(StateMask) const override { throw std::logic_error("unused"); }
    void emit_goal_lemmas(CertificateBuilder &) override { throw std::logic_error("unused"); }
    void emit_state_lemmas(CertificateBuilder &) override { throw std::logic_error("unused"); }
    void emit_ind_lemmas(CertificateBuilder &) override { throw std::logic_error("unused"); }

private:
    const Task &task_;
};

} // namespace

TEST_CASE("optimal plan and verified certificate on the chain task") {
    Task t = chain_task();
    HmaxHeuristic h(t);
    VarPool pool;
    PlanResult r = astar_plan(t, h, pool);
    REQUIRE(r.status == PlanResult::Status::Solved);
    CHECK(r.bound == 3);
    CHECK(r.plan.steps == std::vector<std::string>{"a1", "a2"});
    VerdictReport report = verify_optimality(t, r.plan, r.certificate, pool);
    CHECK(report.accepted);
    // closed-set size equals the number of per-state indicators
    CHECK(count_search_heads(r.certificate, pool) == r.closed + 1); // plus the output head
    // the indicator of the state {p} closed at cost 1, written out in full
    bool found = false;
    for (const Reification &reif : r.certificate.circuit)
        if (constraint_to_text(reif.body, pool) == "1 xv_p 1 ~xv_q 1 xge_1 >= 3")
            found = true;
    CHECK(found);
    // per-evaluation heuristic circuit width: one indicator per variable
    // plus the conjunction head
    CHECK(r.evaluated == 3);
    CHECK(r.heuristic_circuit_size == r.evaluated * (t.num_vars() + 1));
}

TEST_CASE("empty goals and actionless tasks certify at bound zero") {
    Task no_goal = parse_task("vars p q\ninit p\ngoal\n"
                              "action a cost 3\n  pre\n  add q\n  del\nend\n");
    {
        HmaxHeuristic h(no_goal);
        VarPool pool;
        PlanResult r = astar_plan(no_goal, h, pool);
        REQUIRE(r.status == PlanResult::Status::Solved);
        CHECK(r.bound == 0);
        CHECK(verify_optimality(no_goal, r.plan, r.certificate, pool).accepted);
    }
    {
        PdbHeuristic h(no_goal, {}, PdbCertVariant::Naive);
        VarPool pool;
        PlanResult r = astar_plan(no_goal, h, pool);
        REQUIRE(r.status == PlanResult::Status::Solved);
        CHECK(verify_optimality(no_goal, r.plan, r.certificate, pool).accepted);
    }

    Task no_actions = parse_task("vars p\ninit p\ngoal p\n");
    HmaxHeuristic h(no_actions);
    VarPool pool;
    PlanResult r = astar_plan(no_actions, h, pool);
    REQUIRE(r.status == PlanResult::Status::Solved);
    CHECK(r.bound == 0);
    CHECK(verify_optimality(no_actions, r.plan, r.certificate, pool).accepted);

    Task stuck = parse_task("vars p q\ninit p\ngoal q\n");
    HmaxHeuristic h2(stuck);
    VarPool pool2;
    CHECK(astar_plan(stuck, h2, pool2).status == PlanResult::Status::Unsolvable);
}

TEST_CASE("goal inside the initial state yields the trivial certificate") {
    Task t = parse_task("vars p q\ninit q\ngoal q\n"
                        "action a cost 4\n  pre q\n  add p\n  del\nend\n");
    HmaxHeuristic h(t);
    VarPool pool;
    PlanResult r = astar_plan(t, h, pool);
    REQUIRE(r.status == PlanResult::Status::Solved);
    CHECK(r.bound == 0);
    CHECK(r.plan.steps.empty());
    CHECK(r.closed == 1);
    CHECK(r.open_at_end == 0);
    CHECK(verify_optimality(t, r.plan, r.certificate, pool).accepted);
}

TEST_CASE("unsolvable tasks report without a certificate") {
    Task t = parse_task("vars p q\ninit\ngoal q\n"
                        "action a cost 1\n  pre\n  add p\n  del\nend\n");
    HmaxHeuristic h(t);
    VarPool pool;
    PlanResult r = astar_plan(t, h, pool);
    CHECK(r.status == PlanResult::Status::Unsolvable);
}

TEST_CASE("open states contribute their indicators to the final disjunction") {
    // one extra generator action keeps two states open at termination
    Task t = parse_task("vars p q d\ninit\ngoal q\n"
                        "action a1 cost 1\n  pre\n  add p\n  del\nend\n"
                        "action a2 cost 2\n  pre p\n  add q\n  del\nend\n"
                        "action a3 cost 5\n  pre\n  add d\n  del\nend\n");
    HmaxHeuristic h(t);
    VarPool pool;
    PlanResult r = astar_plan(t, h, pool);
    REQUIRE(r.status == PlanResult::Status::Solved);
    CHECK(r.bound == 3);
    CHECK(r.open_at_end == 2);
    const Reification &last = r.certificate.circuit.back();
    CHECK(last.var == r.certificate.output);
    CHECK(last.body.terms().size() == r.closed + r.open_at_end);
    CHECK(verify_optimality(t, r.plan, r.certificate, pool).accepted);
}

TEST_CASE("dead ends stay open and keep the certificate checkable") {
    // dropping p strands the search in a state that cannot reach q
    Task t = parse_task("vars p q\ninit p\ngoal q\n"
                        "action go cost 2\n  pre p\n  add q\n  del\nend\n"
                        "action drop cost 1\n  pre\n  add\n  del p q\nend\n");
    PdbHeuristic h(t, {0, 1}, PdbCertVariant::Naive);
    VarPool pool;
    PlanResult r = astar_plan(t, h, pool);
    REQUIRE(r.status == PlanResult::Status::Solved);
    CHECK(r.bound == 2);
    CHECK(r.open_at_end >= 1); // the stripped state is a dead end, kept open
    CHECK(verify_optimality(t, r.plan, r.certificate, pool).accepted);
}

TEST_CASE("reopening attempts abort with a diagnostic") {
    // the cheap route runs through the state the estimator inflates, so the
    // expensive route closes first and the later improvement must abort
    Task t = parse_task("vars a b g\ninit\ngoal g\n"
                        "action mk_a cost 1\n  pre\n  add a\n  del\nend\n"
                        "action a_to_b cost 1\n  pre a\n  add b\n  del a\nend\n"
                        "action mk_b cost 5\n  pre\n  add b\n  del\nend\n"
                        "action finish cost 100\n  pre b\n  add g\n  del\nend\n");
    InconsistentHeuristic h(t);
    VarPool pool;
    CHECK_THROWS_AS(astar_plan(t, h, pool), ReopeningError);
}

TEST_CASE("certificate emission is byte-deterministic") {
    Task t = chain_task();
    auto run = [&] {
        HmaxHeuristic h(t);
        VarPool pool;
        PlanResult r = astar_plan(t, h, pool);
        REQUIRE(r.status == PlanResult::Status::Solved);
        return serialize(r.certificate, pool);
    };
    CHECK(run() == run());
}

TEST_CASE("duplicate pruning facts appear in the inductivity proof") {
    // the self-loop on {p} and the no-op force duplicate encounters
    Task t = parse_task("vars p q\ninit\ngoal q\n"
                        "action a1 cost 1\n  pre\n  add p\n  del\nend\n"
                        "action a2 cost 2\n  pre p\n  add q\n  del\nend\n"
                        "action loop cost 1\n  pre p\n  add p\n  del\nend\n"
                        "action noop cost 1\n  pre\n  add\n  del\nend\n");
    HmaxHeuristic h(t);
    VarPool pool;
    PlanResult r = astar_plan(t, h, pool);
    REQUIRE(r.status == PlanResult::Status::Solved);
    CHECK(r.prune_events > 0);
    // the corresponding clipped-threshold implication is part of the proof
    std::string text = serialize(r.certificate, pool);
    bool has_impl = text.find("1 ~xmmgep_2 1 xmmgep_1 >= 1") != std::string::npos ||
                    text.find("1 xmmgep_1 1 ~xmmgep_2 >= 1") != std::string::npos;
    CHECK(has_impl);
    CHECK(verify_optimality(t, r.plan, r.certificate, pool).accepted);
}

TEST_CASE("grid navigation task certifies with both heuristics") {
    std::ostringstream s;
    const int n = 4;
    s << "vars key";
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            s << " at_" << i << "_" << j;
    s << "\ninit at_0_0\ngoal key at_" << (n - 1) << "_" << (n - 1) << "\n";
    auto cell = [](int i, int j) { return "at_" + std::to_string(i) + "_" + std::to_string(j); };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i + 1 < n)
                s << "action d_" << i << "_" << j << " cost 1\n  pre " << cell(i, j) << "\n  add "
                  << cell(i + 1, j) << "\n  del " << cell(i, j) << "\nend\n";
            if (j + 1 < n)
                s << "action r_" << i << "_" << j << " cost 1\n  pre " << cell(i, j) << "\n  add "
                  << cell(i, j + 1) << "\n  del " << cell(i, j) << "\nend\n";
        }
    s << "action grab cost 2\n  pre " << cell(1, 1) << "\n  add key\n  del\nend\n";
    Task t = parse_task(s.str());
    {
        HmaxHeuristic h(t);
        VarPool pool;
        PlanResult r = astar_plan(t, h, pool);
        REQUIRE(r.status == PlanResult::Status::Solved);
        CHECK(r.bound == 8);
        CHECK(verify_optimality(t, r.plan, r.certificate, pool).accepted);
    }
    {
        PdbHeuristic h(t, {t.var_index("key")}, PdbCertVariant::Efficient);
        VarPool pool;
        PlanResult r = astar_plan(t, h, pool);
        REQUIRE(r.status == PlanResult::Status::Solved);
        CHECK(r.bound == 8);
        CHECK(verify_optimality(t, r.plan, r.certificate, pool).accepted);
    }
}

TEST_CASE("random sweep matches the oracle for both heuristics") {
    std::mt19937_64 rng(31);
    for (int round = 0; round < 30; ++round) {
        Task t = random_task(rng);
        OracleResult oracle = optimal_cost_oracle(t);
        if (oracle.status == OracleResult::Status::TooLarge)
            continue;
        {
            HmaxHeuristic h(t);
            VarPool pool;
            PlanResult r = astar_plan(t, h, pool);
            if (oracle.status == OracleResult::Status::Solved) {
                REQUIRE(r.status == PlanResult::Status::Solved);
                CHECK(r.bound == oracle.cost);
            } else {
                CHECK(r.status == PlanResult::Status::Unsolvable);
            }
        }
        {
            PdbHeuristic h(t, random_pattern(rng, t), PdbCertVariant::Naive);
            VarPool pool;
            PlanResult r = astar_plan(t, h, pool);
            if (oracle.status == OracleResult::Status::Solved) {
                REQUIRE(r.status == PlanResult::Status::Solved);
                CHECK(r.bound == oracle.cost);
            } else {
                CHECK(r.status == PlanResult::Status::Unsolvable);
            }
        }
    }
}
