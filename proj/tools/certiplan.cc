#include "certiplan/certificate.h"
#include "certiplan/hmax.h"
#include "certiplan/pdb.h"
#include "certiplan/search.h"
#include "certiplan/selftest.h"
#include "certiplan/verifier.h"

#include <CLI11.hpp>

#include <iostream>
#include <memory>
#include <sstream>

using namespace certiplan;

namespace {

std::vector<int> parse_pattern(const Task &t, const std::string &csv) {
    std::vector<int> pattern;
    std::istringstream in(csv);
    std::string name;
    while (std::getline(in, name, ',')) {
        if (name.empty())
            continue;
        int v = t.var_index(name);
        if (v < 0)
            throw std::runtime_error("pattern names unknown variable '" + name + "'");
        if (std::find(pattern.begin(), pattern.end(), v) != pattern.end())
            throw std::runtime_error("pattern repeats variable '" + name + "'");
        pattern.push_back(v);
    }
    return pattern;
}

int cmd_plan(const std::string &task_path, const std::string &heuristic,
             const std::string &pattern_csv, const std::string &pdb_cert,
             const std::string &plan_out, const std::string &cert_out) {
    Task t = load_task(task_path);
    std::unique_ptr<HeuristicProvider> h;
    if (heuristic == "hmax") {
        if (!pattern_csv.empty())
            throw std::runtime_error("--pattern is only valid with --heuristic pdb");
        h = std::make_unique<HmaxHeuristic>(t);
    } else if (heuristic == "pdb") {
        PdbCertVariant variant =
            pdb_cert == "efficient" ? PdbCertVariant::Efficient : PdbCertVariant::Naive;
        h = std::make_unique<PdbHeuristic>(t, parse_pattern(t, pattern_csv), variant);
    } else {
        throw std::runtime_error("unknown heuristic '" + heuristic + "'");
    }

    VarPool pool;
    PlanResult result = astar_plan(t, *h, pool);
    if (result.status == PlanResult::Status::Unsolvable) {
        std::cout << "unsolvable\n";
        return 0;
    }
    std::cout << "cost " << result.bound << '\n';
    for (const std::string &step : result.plan.steps)
        std::cout << step << '\n';
    if (!plan_out.empty())
        write_file(plan_out, plan_to_text(result.plan));
    if (!cert_out.empty())
        write_file(cert_out, serialize(result.certificate, pool));
    return 0;
}

int cmd_verify(const std::string &task_path, const std::string &plan_path,
               const std::string &cert_path) {
    Task t = load_task(task_path);
    Plan p = load_plan(plan_path);
    VarPool pool;
    Certificate cert;
    try {
        cert = load_certificate(cert_path, pool);
    } catch (const CertParseError &e) {
        std::cerr << "certificate parse error: " << e.what() << '\n';
        return 1;
    }
    VerdictReport report = verify_optimality(t, p, cert, pool);
    if (report.accepted) {
        std::cout << "accepted: plan of cost " << report.bound << " is optimal\n";
        return 0;
    }
    std::cerr << "rejected: " << report.diagnostic << '\n';
    return 1;
}

int cmd_encode(const std::string &task_path, long long bound, const std::string &ge_csv,
               const std::string &mm_csv) {
    Task t = load_task(task_path);
    LazyCostDecls decls;
    decls.ge.insert(0);
    decls.ge.insert(bound);
    for (const Action &a : t.actions)
        decls.delta.insert(a.cost);
    auto parse_list = [](const std::string &csv, std::set<long long> &into) {
        std::istringstream in(csv);
        std::string tok;
        while (std::getline(in, tok, ','))
            if (!tok.empty())
                into.insert(std::stoll(tok));
    };
    parse_list(ge_csv, decls.ge);
    parse_list(mm_csv, decls.mm);
    for (long long l : decls.mm)
        decls.ge.insert(clip_to_bound(l, bound));

    VarPool pool;
    VarCatalog cat(pool, t, bound);
    TaskEncoding enc = build_encoding(t, cat, decls);
    auto dir_text = [](ReifDir d) {
        return d == ReifDir::Iff ? "<=>" : (d == ReifDir::Implies ? "=>" : "<=");
    };
    std::cout << "# bound " << bound << ", " << cat.bit_count() << " cost bits\n";
    for (const TaggedReif &tr : enc.reifs) {
        std::cout << "reif " << pool.name(tr.reif.var) << ' ' << dir_text(tr.reif.dir) << ' '
                  << constraint_to_text(tr.reif.body, pool) << '\n';
    }
    for (const TaggedReif &tr : resolve_placeholders(cat, decls))
        std::cout << "reif " << pool.name(tr.reif.var) << ' ' << dir_text(tr.reif.dir) << ' '
                  << constraint_to_text(tr.reif.body, pool) << '\n';
    return 0;
}

int cmd_oracle(const std::string &task_path, size_t state_limit) {
    Task t = load_task(task_path);
    OracleResult res = optimal_cost_oracle(t, state_limit);
    switch (res.status) {
    case OracleResult::Status::Solved:
        std::cout << res.cost << '\n';
        return 0;
    case OracleResult::Status::Unsolvable:
        std::cout << "unsolvable\n";
        return 0;
    case OracleResult::Status::TooLarge:
        std::cerr << "state space exceeds the limit\n";
        return 1;
    }
    return 1;
}

int cmd_selftest(uint64_t seed, int count, int mutants) {
    SelftestResult res = run_selftest(seed, count);
    std::cout << "tasks " << res.tasks << ", solvable " << res.solvable << ", certificates "
              << res.certificates << ", failures " << res.failures << '\n';
    for (const std::string &m : res.messages)
        std::cout << "  " << m << '\n';
    if (mutants > 0) {
        MutationOutcome mo = run_mutation_battery(seed + 1, mutants);
        std::cout << "mutants " << mo.mutants << ", rejected " << mo.rejected
                  << ", accepted-sound " << mo.accepted_sound << ", accepted-overclaim "
                  << mo.accepted_overclaim << '\n';
        for (const std::string &m : mo.overclaims)
            std::cout << "  " << m << '\n';
        if (mo.accepted_overclaim > 0)
            return 1;
    }
    return res.failures == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"certifying optimal STRIPS planner and certificate verifier"};
    app.require_subcommand(1);

    std::string task_path, plan_path, cert_path, heuristic = "hmax", pattern, pdb_cert = "naive";
    std::string plan_out, cert_out, ge_csv, mm_csv;
    long long bound = 0;
    size_t state_limit = size_t(1) << 20;
    uint64_t seed = 1;
    int count = 50, mutants = 0;

    CLI::App *plan = app.add_subcommand("plan", "find an optimal plan and emit a certificate");
    plan->add_option("task", task_path)->required();
    plan->add_option("--heuristic", heuristic)->check(CLI::IsMember({"hmax", "pdb"}));
    plan->add_option("--pattern", pattern, "comma-separated variable names (pdb)");
    plan->add_option("--pdb-cert", pdb_cert)->check(CLI::IsMember({"naive", "efficient"}));
    plan->add_option("-o,--plan-out", plan_out);
    plan->add_option("-c,--cert-out", cert_out);

    CLI::App *verify = app.add_subcommand("verify", "check a plan and its optimality certificate");
    verify->add_option("task", task_path)->required();
    verify->add_option("plan", plan_path)->required();
    verify->add_option("certificate", cert_path)->required();

    CLI::App *encode = app.add_subcommand("encode", "dump the canonical task encoding");
    encode->add_option("task", task_path)->required();
    encode->add_option("--bound", bound)->required();
    encode->add_option("--ge", ge_csv, "extra ge thresholds, comma-separated");
    encode->add_option("--mm", mm_csv, "extra clipped thresholds, comma-separated");

    CLI::App *oracle = app.add_subcommand("oracle", "print the exact optimal cost");
    oracle->add_option("task", task_path)->required();
    oracle->add_option("--state-limit", state_limit);

    CLI::App *selftest = app.add_subcommand("selftest", "randomized end-to-end sweep");
    selftest->add_option("--seed", seed);
    selftest->add_option("--count", count);
    selftest->add_option("--mutants", mutants);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (plan->parsed())
            return cmd_plan(task_path, heuristic, pattern, pdb_cert, plan_out, cert_out);
        if (verify->parsed())
            return cmd_verify(task_path, plan_path, cert_path);
        if (encode->parsed())
            return cmd_encode(task_path, bound, ge_csv, mm_csv);
        if (oracle->parsed())
            return cmd_oracle(task_path, state_limit);
        if (selftest->parsed())
            return cmd_selftest(seed, count, mutants);
    } catch (const ReopeningError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
