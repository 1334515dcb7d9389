#include "certiplan/random_tasks.h"

#include <algorithm>

namespace certiplan {

namespace {

size_t pick(std::mt19937_64 &rng, size_t n) { return static_cast<size_t>(rng() % n); }

bool chance(std::mt19937_64 &rng, int percent) {
    return static_cast<int>(rng() % 100) < percent;
}

} // namespace

Task random_task(std::mt19937_64 &rng, const RandomTaskParams &params) {
    Task t;
    int nv = 2 + static_cast<int>(pick(rng, static_cast<size_t>(params.max_vars - 1)));
    for (int v = 0; v < nv; ++v)
        t.variables.push_back("v" + std::to_string(v));
    int na = 1 + static_cast<int>(pick(rng, static_cast<size_t>(params.max_actions)));
    for (int a = 0; a < na; ++a) {
        Action act;
        act.name = "a" + std::to_string(a);
        act.cost = static_cast<long long>(pick(rng, static_cast<size_t>(params.max_cost + 1)));
        for (int v = 0; v < nv; ++v) {
            if (chance(rng, 25))
                act.pre.push_back(v);
            if (chance(rng, 30))
                act.add.push_back(v);
            else if (chance(rng, 20))
                act.del.push_back(v);
        }
        t.actions.push_back(std::move(act));
    }
    for (int v = 0; v < nv; ++v)
        if (chance(rng, 30))
            t.init.push_back(v);
    int goal_size = 1 + static_cast<int>(pick(rng, 3));
    std::vector<int> perm(static_cast<size_t>(nv));
    for (int v = 0; v < nv; ++v)
        perm[static_cast<size_t>(v)] = v;
    for (size_t i = perm.size(); i > 1; --i)
        std::swap(perm[i - 1], perm[pick(rng, i)]);
    for (int i = 0; i < goal_size && i < nv; ++i)
        t.goal.push_back(perm[static_cast<size_t>(i)]);
    std::sort(t.goal.begin(), t.goal.end());
    return t;
}

std::vector<int> random_pattern(std::mt19937_64 &rng, const Task &t, int max_size) {
    std::vector<int> perm(t.num_vars());
    for (size_t v = 0; v < t.num_vars(); ++v)
        perm[v] = static_cast<int>(v);
    for (size_t i = perm.size(); i > 1; --i)
        std::swap(perm[i - 1], perm[pick(rng, i)]);
    int size = static_cast<int>(pick(rng, static_cast<size_t>(max_size) + 1));
    size = std::min<int>(size, static_cast<int>(t.num_vars()));
    std::vector<int> pattern(perm.begin(), perm.begin() + size);
    return pattern;
}

} // namespace certiplan
