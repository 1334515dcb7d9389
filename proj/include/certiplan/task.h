#ifndef CERTIPLAN_TASK_H
#define CERTIPLAN_TASK_H

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace certiplan {

class TaskError : public std::runtime_error {
public:
    TaskError(int line, const std::string &what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line(line) {}
    int line;
};

struct Action {
    std::string name;
    std::vector<int> pre, add, del; // variable indices, sorted
    long long cost = 0;
};

// Grounded STRIPS task. Variable and action declaration order is canonical
// and used everywhere downstream.
struct Task {
    std::vector<std::string> variables;
    std::vector<Action> actions;
    std::vector<int> init, goal; // sorted variable indices

    int var_index(std::string_view name) const;
    size_t num_vars() const { return variables.size(); }
};

// States are bitmasks over the task's variables (declaration order); the
// search and oracle support up to 64 variables.
using StateMask = uint64_t;

StateMask mask_of(const std::vector<int> &vars);
std::vector<int> vars_of(StateMask m, size_t num_vars);

StateMask apply_effects(StateMask s, const Action &a);
bool applicable(StateMask s, const Action &a);
// nullopt when the precondition is unmet.
std::optional<StateMask> apply_action(StateMask s, const Action &a);

Task parse_task(std::string_view text);
Task load_task(const std::string &path);

struct Plan {
    std::vector<std::string> steps;
    long long total_cost = 0;
};

Plan load_plan(const std::string &path);
std::string plan_to_text(const Plan &p);

struct PlanVerdict {
    enum class Status { Valid, StepNotApplicable, GoalNotReached, UnknownAction };
    Status status = Status::Valid;
    long long cost = 0;
    size_t failing_step = 0;

    bool valid() const { return status == Status::Valid; }
};

PlanVerdict validate_plan(const Task &t, const Plan &p);

struct OracleResult {
    enum class Status { Solved, Unsolvable, TooLarge };
    Status status = Status::Unsolvable;
    long long cost = 0;
    Plan witness;
};

// Exhaustive uniform-cost search; also returns a witness plan. The guard
// limits the number of distinct states touched.
OracleResult optimal_cost_oracle(const Task &t, size_t state_limit = size_t(1) << 20);

// Optimal residual cost from an arbitrary start state (oracle for heuristic
// admissibility checks).
OracleResult optimal_cost_from(const Task &t, StateMask start,
                               size_t state_limit = size_t(1) << 20);

} // namespace certiplan

#endif
