#include "certiplan/cost_lemmas.h"

#include "certiplan/pb_check.h"

#include <doctest.h>

#include <random>

using namespace certiplan;

namespace {

bool accepted(const GeneratedCostLemma &g) {
    return check_script(g.scope, g.script, g.claim).ok;
}

} // namespace

TEST_CASE("monotone derivations over clipped thresholds") {
    CHECK(accepted(gen_cost_monotone(2, 3, 10)));
    // k = 0 degenerates to a single propagation of the trivial implication
    GeneratedCostLemma same = gen_cost_monotone(4, 0, 10);
    REQUIRE(same.script.steps.size() == 1);
    CHECK(same.script.steps[0].kind == ProofStep::Kind::Rup);
    CHECK(accepted(same));
    // both clips collapse to zero
    GeneratedCostLemma clipped = gen_cost_monotone(-4, 2, 5);
    REQUIRE(clipped.script.steps.size() == 1);
    CHECK(clipped.script.steps[0].kind == ProofStep::Kind::Rup);
    CHECK(accepted(clipped));
    // primed variant
    CHECK(accepted(gen_cost_monotone(1, 4, 7, true)));
}

TEST_CASE("cost step derivations") {
    CHECK(accepted(gen_cost_step(1, 2, 5)));
    CHECK(accepted(gen_cost_step(1, 0, 5)));   // zero-cost action
    CHECK(accepted(gen_cost_step(7, 2, 5)));   // premise already at the bound
    CHECK(accepted(gen_cost_step(-3, 1, 5)));  // negative threshold clips to zero
    CHECK(accepted(gen_cost_step(0, 40, 5)));  // cost exceeds the bit range
}

TEST_CASE("generated derivations accept across a randomized sweep") {
    std::mt19937_64 rng(5);
    for (int round = 0; round < 60; ++round) {
        long long bound = static_cast<long long>(rng() % 64);
        long long j = static_cast<long long>(rng() % 80) - 20;
        long long k = static_cast<long long>(rng() % 10);
        CAPTURE(bound);
        CAPTURE(j);
        CAPTURE(k);
        CHECK(accepted(gen_cost_monotone(j, k, bound)));
        CHECK(accepted(gen_cost_monotone(j, k, bound, true)));
        CHECK(accepted(gen_cost_step(j, k, bound)));
    }
}

TEST_CASE("a mismatched goal is rejected") {
    GeneratedCostLemma g = gen_cost_monotone(2, 3, 10);
    CHECK(check_script(g.scope, g.script, g.claim).ok);
    PBConstraint wrong = normalize({RawTerm{1, neg(g.pool.lookup("xmmge_5"))},
                                    RawTerm{1, pos(g.pool.intern("xmmge_3"))}},
                                   1);
    CHECK_FALSE(check_script(g.scope, g.script, wrong).ok);
}
