#include "certiplan/task.h"

#include <algorithm>
#include <fstream>
#include <map>
#include <queue>
#include <sstream>
#include <unordered_map>

namespace certiplan {

int Task::var_index(std::string_view name) const {
    for (size_t i = 0; i < variables.size(); ++i)
        if (variables[i] == name)
            return static_cast<int>(i);
    return -1;
}

StateMask mask_of(const std::vector<int> &vars) {
    StateMask m = 0;
    for (int v : vars)
        m |= StateMask(1) << v;
    return m;
}

std::vector<int> vars_of(StateMask m, size_t num_vars) {
    std::vector<int> out;
    for (size_t i = 0; i < num_vars; ++i)
        if (m & (StateMask(1) << i))
            out.push_back(static_cast<int>(i));
    return out;
}

bool applicable(StateMask s, const Action &a) {
    StateMask pre = mask_of(a.pre);
    return (s & pre) == pre;
}

StateMask apply_effects(StateMask s, const Action &a) {
    return (s & ~mask_of(a.del)) | mask_of(a.add);
}

std::optional<StateMask> apply_action(StateMask s, const Action &a) {
    if (!applicable(s, a))
        return std::nullopt;
    return apply_effects(s, a);
}

namespace {

bool valid_name(std::string_view s) {
    if (s.empty())
        return false;
    char c0 = s[0];
    if (!(isalpha(static_cast<unsigned char>(c0)) || c0 == '_'))
        return false;
    for (char c : s)
        if (!(isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-'))
            return false;
    return true;
}

struct Tokenized {
    int line;
    std::vector<std::string> tokens;
};

std::vector<Tokenized> tokenize_lines(std::string_view text) {
    std::vector<Tokenized> out;
    int line_no = 0;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t end = text.find('\n', pos);
        std::string_view line = text.substr(pos, end == std::string_view::npos ? std::string_view::npos
                                                                               : end - pos);
        ++line_no;
        size_t hash = line.find('#');
        if (hash != std::string_view::npos)
            line = line.substr(0, hash);
        std::istringstream in{std::string(line)};
        Tokenized t{line_no, {}};
        std::string tok;
        while (in >> tok)
            t.tokens.push_back(tok);
        if (!t.tokens.empty())
            out.push_back(std::move(t));
        if (end == std::string_view::npos)
            break;
        pos = end + 1;
    }
    return out;
}

} // namespace

Task parse_task(std::string_view text) {
    Task task;
    std::unordered_map<std::string, int> var_index;
    std::unordered_map<std::string, bool> action_names;

    auto resolve_vars = [&](const Tokenized &t, size_t from) {
        std::vector<int> out;
        for (size_t i = from; i < t.tokens.size(); ++i) {
            const std::string &name = t.tokens[i];
            auto it = var_index.find(name);
            if (it == var_index.end())
                throw TaskError(t.line, "undeclared variable '" + name + "'");
            if (std::find(out.begin(), out.end(), it->second) != out.end())
                throw TaskError(t.line, "duplicate name '" + name + "'");
            out.push_back(it->second);
        }
        std::sort(out.begin(), out.end());
        return out;
    };

    std::vector<Tokenized> lines = tokenize_lines(text);
    size_t i = 0;
    bool saw_vars = false, saw_init = false, saw_goal = false;
    while (i < lines.size()) {
        const Tokenized &t = lines[i];
        const std::string &kw = t.tokens[0];
        if (kw == "vars") {
            if (saw_vars)
                throw TaskError(t.line, "repeated 'vars' section");
            saw_vars = true;
            for (size_t j = 1; j < t.tokens.size(); ++j) {
                const std::string &name = t.tokens[j];
                if (!valid_name(name))
                    throw TaskError(t.line, "invalid variable name '" + name + "'");
                if (var_index.count(name))
                    throw TaskError(t.line, "duplicate name '" + name + "'");
                var_index[name] = static_cast<int>(task.variables.size());
                task.variables.push_back(name);
            }
            ++i;
        } else if (kw == "init") {
            if (!saw_vars)
                throw TaskError(t.line, "'init' before 'vars'");
            if (saw_init)
                throw TaskError(t.line, "repeated 'init' section");
            saw_init = true;
            task.init = resolve_vars(t, 1);
            ++i;
        } else if (kw == "goal") {
            if (!saw_vars)
                throw TaskError(t.line, "'goal' before 'vars'");
            if (saw_goal)
                throw TaskError(t.line, "repeated 'goal' section");
            saw_goal = true;
            task.goal = resolve_vars(t, 1);
            ++i;
        } else if (kw == "action") {
            if (!saw_vars)
                throw TaskError(t.line, "'action' before 'vars'");
            if (t.tokens.size() != 4 || t.tokens[2] != "cost")
                throw TaskError(t.line, "expected 'action <name> cost <nonneg-int>'");
            Action a;
            a.name = t.tokens[1];
            if (!valid_name(a.name))
                throw TaskError(t.line, "invalid action name '" + a.name + "'");
            if (action_names.count(a.name))
                throw TaskError(t.line, "duplicate name '" + a.name + "'");
            action_names[a.name] = true;
            try {
                size_t pos = 0;
                a.cost = std::stoll(t.tokens[3], &pos);
                if (pos != t.tokens[3].size() || a.cost < 0 || a.cost > 1000000000)
                    throw std::invalid_argument(t.tokens[3]);
            } catch (const std::exception &) {
                throw TaskError(t.line, "invalid action cost '" + t.tokens[3] + "'");
            }
            const char *expect[3] = {"pre", "add", "del"};
            std::vector<int> *fields[3] = {&a.pre, &a.add, &a.del};
            for (int f = 0; f < 3; ++f) {
                ++i;
                if (i >= lines.size() || lines[i].tokens[0] != expect[f])
                    throw TaskError(i < lines.size() ? lines[i].line : t.line,
                                    std::string("expected '") + expect[f] + "' line");
                *fields[f] = resolve_vars(lines[i], 1);
            }
            ++i;
            if (i >= lines.size() || lines[i].tokens[0] != "end" || lines[i].tokens.size() != 1)
                throw TaskError(i < lines.size() ? lines[i].line : t.line, "expected 'end'");
            ++i;
            for (int v : a.del)
                if (std::binary_search(a.add.begin(), a.add.end(), v))
                    throw TaskError(t.line, "action '" + a.name + "': variable '" +
                                                task.variables[static_cast<size_t>(v)] +
                                                "' in both add and del");
            task.actions.push_back(std::move(a));
        } else {
            throw TaskError(t.line, "unexpected token '" + kw + "'");
        }
    }
    if (!saw_vars)
        throw TaskError(1, "missing 'vars' section");
    if (!saw_init)
        throw TaskError(1, "missing 'init' section");
    if (!saw_goal)
        throw TaskError(1, "missing 'goal' section");
    return task;
}

Task load_task(const std::string &path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open task file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_task(buf.str());
}

Plan load_plan(const std::string &path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open plan file: " + path);
    Plan p;
    std::string line;
    while (std::getline(in, line)) {
        size_t hash = line.find('#');
        if (hash != std::string::npos)
            line = line.substr(0, hash);
        std::istringstream ls(line);
        std::string tok;
        if (ls >> tok)
            p.steps.push_back(tok);
    }
    return p;
}

std::string plan_to_text(const Plan &p) {
    std::ostringstream out;
    for (const std::string &s : p.steps)
        out << s << '\n';
    return out.str();
}

PlanVerdict validate_plan(const Task &t, const Plan &p) {
    if (t.num_vars() > 64)
        throw std::runtime_error("validate_plan supports at most 64 variables");
    std::unordered_map<std::string, const Action *> by_name;
    for (const Action &a : t.actions)
        by_name[a.name] = &a;
    StateMask s = mask_of(t.init);
    PlanVerdict v;
    for (size_t i = 0; i < p.steps.size(); ++i) {
        auto it = by_name.find(p.steps[i]);
        if (it == by_name.end()) {
            v.status = PlanVerdict::Status::UnknownAction;
            v.failing_step = i;
            return v;
        }
        auto next = apply_action(s, *it->second);
        if (!next) {
            v.status = PlanVerdict::Status::StepNotApplicable;
            v.failing_step = i;
            return v;
        }
        s = *next;
        v.cost += it->second->cost;
    }
    StateMask goal = mask_of(t.goal);
    if ((s & goal) != goal) {
        v.status = PlanVerdict::Status::GoalNotReached;
        v.cost = 0;
        return v;
    }
    v.status = PlanVerdict::Status::Valid;
    return v;
}

namespace {

OracleResult dijkstra(const Task &t, StateMask start, size_t state_limit) {
    if (t.num_vars() > 64)
        throw std::runtime_error("oracle supports at most 64 variables");
    StateMask goal = mask_of(t.goal);
    struct Entry {
        long long g;
        StateMask s;
        bool operator>(const Entry &o) const { return g > o.g; }
    };
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
    std::unordered_map<StateMask, long long> best;
    std::unordered_map<StateMask, std::pair<StateMask, int>> parent;
    open.push({0, start});
    best[start] = 0;
    OracleResult res;
    while (!open.empty()) {
        Entry e = open.top();
        open.pop();
        auto it = best.find(e.s);
        if (it == best.end() || it->second < e.g)
            continue;
        if ((e.s & goal) == goal) {
            res.status = OracleResult::Status::Solved;
            res.cost = e.g;
            StateMask cur = e.s;
            std::vector<std::string> rev;
            while (cur != start) {
                auto pit = parent.find(cur);
                if (pit == parent.end())
                    break;
                rev.push_back(t.actions[static_cast<size_t>(pit->second.second)].name);
                cur = pit->second.first;
            }
            std::reverse(rev.begin(), rev.end());
            res.witness.steps = std::move(rev);
            res.witness.total_cost = e.g;
            return res;
        }
        for (size_t ai = 0; ai < t.actions.size(); ++ai) {
            const Action &a = t.actions[ai];
            auto next = apply_action(e.s, a);
            if (!next)
                continue;
            long long ng = e.g + a.cost;
            auto bit = best.find(*next);
            if (bit == best.end() || ng < bit->second) {
                if (bit == best.end() && best.size() >= state_limit) {
                    res.status = OracleResult::Status::TooLarge;
                    return res;
                }
                best[*next] = ng;
                parent[*next] = {e.s, static_cast<int>(ai)};
                open.push({ng, *next});
            }
        }
    }
    res.status = OracleResult::Status::Unsolvable;
    return res;
}

} // namespace

OracleResult optimal_cost_oracle(const Task &t, size_t state_limit) {
    return dijkstra(t, mask_of(t.init), state_limit);
}

OracleResult optimal_cost_from(const Task &t, StateMask start, size_t state_limit) {
    return dijkstra(t, start, state_limit);
}

} // namespace certiplan
