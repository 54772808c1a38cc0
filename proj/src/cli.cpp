#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "repnet/estimation.hpp"
#include "repnet/planner.hpp"
#include "repnet/scenario.hpp"
#include "repnet/simulator.hpp"

namespace repnet {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw RunError("cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

struct HyperOverrides {
    std::optional<int> steps;
    std::optional<std::uint64_t> seed;
    std::optional<int> depth;
    std::optional<double> gamma;
    std::optional<double> eta;
    std::optional<double> delta;
    std::optional<std::string> scope;
};

void apply(const HyperOverrides& overrides, Hyperparameters& hyper) {
    if (overrides.steps) hyper.horizon = *overrides.steps;
    if (overrides.seed) hyper.seed = *overrides.seed;
    if (overrides.depth) hyper.depth = *overrides.depth;
    if (overrides.gamma) hyper.gamma = *overrides.gamma;
    if (overrides.eta) hyper.eta = *overrides.eta;
    if (overrides.delta) hyper.delta = *overrides.delta;
    if (overrides.scope) {
        if (*overrides.scope == "literal") {
            hyper.scope = UpdateScope::literal;
        } else if (*overrides.scope == "restricted") {
            hyper.scope = UpdateScope::restricted;
        } else {
            throw RunError("scope must be 'literal' or 'restricted'");
        }
    }
}

int run_validate(const std::string& path) {
    ValidationReport report;
    try {
        parse_scenario(read_file(path), &report);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitValidation;
    }
    if (!report.ok()) {
        for (const auto& v : report.violations) {
            std::cout << v.location << ": " << v.message << "\n";
        }
        std::cout << report.violations.size() << " violation(s)\n";
        return kExitValidation;
    }
    std::cout << "ok\n";
    return kExitOk;
}

int run_episode_command(const std::string& path, const std::string& out_dir,
                        const HyperOverrides& overrides) {
    Scenario scenario = parse_scenario(read_file(path));
    Hyperparameters hyper = scenario.hyper;
    apply(overrides, hyper);

    Trace trace = run_episode(scenario, hyper);
    MetricSeries metrics = derive_metrics(trace);

    std::filesystem::create_directories(out_dir);
    auto trace_path = std::filesystem::path(out_dir) / "trace.csv";
    auto metrics_path = std::filesystem::path(out_dir) / "metrics.csv";
    {
        std::ofstream out(trace_path, std::ios::binary);
        if (!out) throw RunError("cannot write " + trace_path.string());
        emit_trace_csv(trace, metrics, out);
    }
    {
        std::ofstream out(metrics_path, std::ios::binary);
        if (!out) throw RunError("cannot write " + metrics_path.string());
        emit_metrics_csv(metrics, out);
    }
    std::cout << "wrote " << trace_path.string() << " (" << trace.records.size() << " records)\n";
    std::cout << "wrote " << metrics_path.string() << "\n";
    return kExitOk;
}

int run_plan(const std::string& path, const std::string& state_name,
             const HyperOverrides& overrides) {
    Scenario scenario = parse_scenario(read_file(path));
    Hyperparameters hyper = scenario.hyper;
    apply(overrides, hyper);

    int state = state_name.empty() ? scenario.initial_state : scenario.state_index(state_name);
    int g = scenario.tracks.observer;
    const AgentKnowledge& knowledge = scenario.knowledge[g];
    EpistemicState theta{{state}, knowledge.action_distribution, knowledge.image};
    PlanResult result = plan(scenario.system, knowledge, theta, hyper);

    std::cout << "agent " << scenario.system.agent_name(g) << ", state "
              << scenario.system.state_name(state) << ", depth " << hyper.depth << "\n";
    for (const auto& [action, q] : result.q_values) {
        std::cout << "  q(" << scenario.system.action_name(action) << ") = " << q << "\n";
    }
    std::cout << "chosen: " << scenario.system.action_name(result.chosen_action) << "\n";
    return kExitOk;
}

}  // namespace

int cli_main(int argc, char** argv) {
    CLI::App app{"Reputation-driven multi-agent planning and simulation"};
    app.require_subcommand(1);

    std::string scenario_path;
    std::string out_dir = "out";
    std::string state_name;
    HyperOverrides overrides;

    auto add_hyper_flags = [&](CLI::App* cmd) {
        cmd->add_option("--depth", overrides.depth, "Planning depth");
        cmd->add_option("--gamma", overrides.gamma, "Discount factor");
        cmd->add_option("--eta", overrides.eta, "Smoothing constant");
        cmd->add_option("--delta", overrides.delta, "Impact mixing weight");
        cmd->add_option("--scope", overrides.scope,
                        "Distribution update scope: literal or restricted");
    };

    auto* validate = app.add_subcommand("validate", "Check a scenario file");
    validate->add_option("scenario", scenario_path, "Scenario file")->required();

    auto* run = app.add_subcommand("run", "Run an episode and write CSV outputs");
    run->add_option("scenario", scenario_path, "Scenario file")->required();
    run->add_option("--steps", overrides.steps, "Number of time-steps");
    run->add_option("--seed", overrides.seed, "Episode seed");
    run->add_option("--out", out_dir, "Output directory");
    add_hyper_flags(run);

    auto* plan_cmd = app.add_subcommand("plan", "Print root q-values for one state");
    plan_cmd->add_option("scenario", scenario_path, "Scenario file")->required();
    plan_cmd->add_option("--state", state_name, "State name (default: start state)");
    add_hyper_flags(plan_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitRuntime;
    }

    try {
        if (validate->parsed()) return run_validate(scenario_path);
        if (run->parsed()) return run_episode_command(scenario_path, out_dir, overrides);
        return run_plan(scenario_path, state_name, overrides);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
}

}  // namespace repnet
