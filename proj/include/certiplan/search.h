#ifndef CERTIPLAN_SEARCH_H
#define CERTIPLAN_SEARCH_H

#include "certiplan/certificate.h"
#include "certiplan/heuristic.h"
#include "certiplan/task.h"

namespace certiplan {

// Raised when a successor would have to be reopened, i.e. the heuristic
// violated its consistency contract.
class ReopeningError : public std::runtime_error {
public:
    explicit ReopeningError(const std::string &what) : std::runtime_error(what) {}
};

struct PlanResult {
    enum class Status { Solved, Unsolvable };
    Status status = Status::Unsolvable;
    Plan plan;
    long long bound = 0;
    Certificate certificate; // meaningful only when solved

    // structural statistics
    size_t closed = 0;
    size_t expansions = 0;
    size_t evaluated = 0;
    size_t open_at_end = 0;
    size_t heuristic_circuit_size = 0;
    size_t prune_events = 0;
};

// Optimal search plus certificate construction. The returned certificate
// names variables from `pool`.
PlanResult astar_plan(const Task &t, HeuristicProvider &h, VarPool &pool);

} // namespace certiplan

#endif
