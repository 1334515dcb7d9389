#ifndef CERTIPLAN_RANDOM_TASKS_H
#define CERTIPLAN_RANDOM_TASKS_H

#include "certiplan/task.h"

#include <random>

namespace certiplan {

struct RandomTaskParams {
    int max_vars = 8;
    int max_actions = 12;
    long long max_cost = 5;
};

Task random_task(std::mt19937_64 &rng, const RandomTaskParams &params = {});

// Random pattern of at most max_size task variables (possibly empty).
std::vector<int> random_pattern(std::mt19937_64 &rng, const Task &t, int max_size = 3);

} // namespace certiplan

#endif
