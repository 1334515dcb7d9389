#include "certiplan/pb_check.h"

#include "fixtures.h"

#include <doctest.h>

#include <random>

using namespace certiplan;
using certiplan::testing::c;
using certiplan::testing::vars_in;

namespace {

PBConstraint random_constraint(std::mt19937_64 &rng, const std::vector<VarId> &vars) {
    std::vector<RawTerm> raw;
    for (VarId v : vars)
        if (rng() % 100 < 60)
            raw.push_back(RawTerm{static_cast<long long>(rng() % 3 + 1), Lit(v, rng() % 2 == 0)});
    long long deg = static_cast<long long>(rng() % 5);
    return normalize(raw, deg);
}

} // namespace

TEST_CASE("rup acceptance and rejection") {
    VarPool pool;
    ConstraintDB db;
    db.add(c(pool, "1 xx >= 1"));
    db.add(c(pool, "1 ~xx 1 xy >= 1"));
    CHECK(check_rup(db, c(pool, "1 xy >= 1")));

    ConstraintDB db2;
    db2.add(c(pool, "1 xx 1 xy >= 1"));
    CHECK_FALSE(check_rup(db2, c(pool, "1 xx >= 1")));
}

TEST_CASE("rup acceptances are semantically sound") {
    VarPool pool;
    std::vector<VarId> vars;
    for (int i = 0; i < 8; ++i)
        vars.push_back(pool.intern("xv" + std::to_string(i)));
    std::mt19937_64 rng(42);
    int accepted = 0;
    for (int round = 0; round < 400; ++round) {
        ConstraintDB db;
        std::vector<PBConstraint> all;
        int n = 2 + static_cast<int>(rng() % 4);
        for (int i = 0; i < n; ++i) {
            PBConstraint x = random_constraint(rng, vars);
            db.add(x);
            all.push_back(x);
        }
        PBConstraint claim = random_constraint(rng, vars);
        if (check_rup(db, claim)) {
            ++accepted;
            CHECK(implied_by_enumeration(all, claim, vars_in(all, claim)));
        }
    }
    CHECK(accepted > 0);
}

TEST_CASE("cutting plane steps are semantically sound") {
    VarPool pool;
    std::vector<VarId> vars;
    for (int i = 0; i < 6; ++i)
        vars.push_back(pool.intern("xv" + std::to_string(i)));
    std::mt19937_64 rng(43);
    for (int round = 0; round < 400; ++round) {
        ConstraintDB db;
        std::vector<PBConstraint> all;
        for (int i = 0; i < 3; ++i) {
            PBConstraint x = random_constraint(rng, vars);
            db.add(x);
            all.push_back(x);
        }
        ProofStep step = ProofStep::axiom(Lit(vars[rng() % vars.size()], rng() % 2 == 0));
        switch (rng() % 4) {
        case 0:
            break;
        case 1:
            step = ProofStep::lin(1 + static_cast<int>(rng() % 3),
                                  static_cast<long long>(rng() % 3),
                                  1 + static_cast<int>(rng() % 3),
                                  static_cast<long long>(rng() % 3));
            break;
        case 2:
            step = ProofStep::div(1 + static_cast<int>(rng() % 3),
                                  1 + static_cast<long long>(rng() % 3));
            break;
        case 3:
            step = ProofStep::sat(1 + static_cast<int>(rng() % 3));
            break;
        }
        PBConstraint out = cutting_plane_step(db, step);
        CHECK(implied_by_enumeration(all, out, vars_in(all, out)));
    }
}

TEST_CASE("cutting plane steps validate their references") {
    VarPool pool;
    ConstraintDB db;
    db.add(c(pool, "1 xx >= 1"));
    CHECK_THROWS(cutting_plane_step(db, ProofStep::lin(1, 1, 5, 1)));
    CHECK_THROWS_AS(cutting_plane_step(db, ProofStep::div(1, 0)), CpError);
}

TEST_CASE("red accepts a rederived claim and rejects an underived one") {
    VarPool pool;
    VarId x = pool.intern("xx");
    ConstraintDB db;
    // claim x + ~x >= 1, normalized to the trivial constraint, rederived by
    // combining the two literal axioms
    PBConstraint claim = normalize({RawTerm{1, pos(x)}, RawTerm{1, neg(x)}}, 1);
    std::vector<ProofStep> sub;
    sub.push_back(ProofStep::axiom(pos(x)));
    sub.push_back(ProofStep::axiom(neg(x)));
    sub.push_back(ProofStep::lin(2, 1, 3, 1)); // ids: 1 = negation, 2..3 axioms
    ProofStep red = ProofStep::red(claim, sub, false, 4);
    CHECK(check_red(db, red).ok);

    ProofStep bad = ProofStep::red(c(pool, "1 xx >= 1"), {}, false, 1);
    CHECK_FALSE(check_red(db, bad).ok);
}

TEST_CASE("check_script goal matching") {
    VarPool pool;
    ConstraintDB db;
    db.add(c(pool, "1 xx >= 1"));
    // empty script, goal already in the database
    ProofScript empty;
    empty.goal_id = 1;
    CHECK(check_script(db, empty, c(pool, "1 xx >= 1")).ok);

    ProofScript failing;
    failing.steps.push_back(ProofStep::rup(c(pool, "1 xy >= 1")));
    failing.goal_id = 2;
    CheckResult res = check_script(db, failing, c(pool, "1 xy >= 1"));
    CHECK_FALSE(res.ok);
    CHECK(res.diagnostic.find("step 1") != std::string::npos);

    ProofScript ok;
    ok.steps.push_back(ProofStep::rup(c(pool, "2 xx >= 1")));
    ok.goal_id = 2;
    CHECK(check_script(db, ok, c(pool, "2 xx >= 1")).ok);
    // a flipped coefficient in the goal makes it reject
    CHECK_FALSE(check_script(db, ok, c(pool, "1 xx >= 1")).ok);
}

TEST_CASE("implied_by_enumeration basics") {
    VarPool pool;
    std::vector<PBConstraint> db{c(pool, "1 xx >= 1")};
    VarId x = pool.lookup("xx"), y = pool.intern("xy");
    CHECK(implied_by_enumeration(db, c(pool, "1 xx 1 xy >= 1"), {x, y}));
    std::vector<PBConstraint> db2{c(pool, "1 xx 1 xy >= 1")};
    CHECK_FALSE(implied_by_enumeration(db2, c(pool, "1 xx >= 1"), {x, y}));
    std::vector<VarId> too_many(21, x);
    CHECK_THROWS(implied_by_enumeration(db, c(pool, "1 xx >= 1"), too_many));
}
