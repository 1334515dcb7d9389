#ifndef CERTIPLAN_SELFTEST_H
#define CERTIPLAN_SELFTEST_H

#include "certiplan/random_tasks.h"

#include <cstdint>
#include <string>
#include <vector>

namespace certiplan {

// Randomized end-to-end sweep: plan with every bundled heuristic and
// certificate variant, cross-check the reported cost against the exhaustive
// oracle, and verify every emitted certificate after a serialization round
// trip.
struct SelftestResult {
    int tasks = 0;
    int solvable = 0;
    int certificates = 0;
    int failures = 0;
    std::vector<std::string> messages;

    void fail(std::string msg) {
        ++failures;
        if (messages.size() < 20)
            messages.push_back(std::move(msg));
    }
};

SelftestResult run_selftest(uint64_t seed, int count, const RandomTaskParams &params = {});

// Adversarial battery: mutates serialized certificates and counts any
// accepted mutant whose claimed bound exceeds the oracle optimum.
struct MutationOutcome {
    int mutants = 0;
    int rejected = 0;
    int accepted_sound = 0;
    int accepted_overclaim = 0;
    std::vector<std::string> overclaims;
};

MutationOutcome run_mutation_battery(uint64_t seed, int mutant_count);

} // namespace certiplan

#endif
