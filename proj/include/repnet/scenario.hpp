#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "repnet/model.hpp"
#include "repnet/simulator.hpp"
#include "repnet/types.hpp"

namespace repnet {

/// Declarative bundle of a world model, per-agent knowledge seeds,
/// controllers, hyperparameters, and metric selections.
struct Scenario {
    std::string name;
    std::string description;
    System system;
    std::vector<AgentKnowledge> knowledge;  // one per agent
    std::vector<ControllerSpec> controllers;
    Hyperparameters hyper;
    int initial_state = 0;
    TrackSpec tracks;

    int agent_index(const std::string& name) const;
    int state_index(const std::string& name) const;
    int action_index(const std::string& name) const;
};

class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line(line) {}
    int line;
};

/// Parses the versioned line-oriented scenario format. Unknown keys are
/// rejected; omitted hyperparameters take the standard defaults. Semantic
/// problems (e.g. a non-stochastic transition row) surface as ParseError with
/// the validation message.
Scenario parse_scenario(const std::string& text);

/// Like parse_scenario, but semantic violations are collected into report
/// instead of thrown; syntax errors still throw.
Scenario parse_scenario(const std::string& text, ValidationReport* report);

/// Re-serializes a scenario; parse(serialize(x)) is equivalent to x.
std::string serialize_scenario(const Scenario& scenario);

/// Writes the trace as CSV: a header row, then one row per record with the
/// declared metric columns appended. Returns the byte count written.
std::size_t emit_trace_csv(const Trace& trace, const MetricSeries& metrics, std::ostream& out);

/// Long-format CSV of every metric series (series, t, value).
std::size_t emit_metrics_csv(const MetricSeries& metrics, std::ostream& out);

/// validate / run / plan subcommands; returns the process exit code
/// (0 success, 1 validation failure, 2 runtime error).
int cli_main(int argc, char** argv);

}  // namespace repnet
