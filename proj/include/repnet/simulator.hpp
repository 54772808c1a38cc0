#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "repnet/model.hpp"
#include "repnet/planner.hpp"
#include "repnet/types.hpp"

namespace repnet {

struct Scenario;

/// Deterministic 53-bit uniform draw on [0, 1). Kept self-contained so traces
/// are reproducible across standard libraries.
class EpisodeRng {
public:
    explicit EpisodeRng(std::uint64_t seed);
    double uniform();

private:
    std::uint64_t next();
    std::uint64_t s_[4];
};

struct ScheduleEntry {
    int t_begin = 0;
    int t_end = 0;
    std::optional<int> state;  // nullopt matches any state
    int action = 0;
};

/// Fixed (time, state) -> action policy for scripted agents. The first
/// matching entry wins; uncovered pairs fall back to the default action.
struct Schedule {
    std::vector<ScheduleEntry> entries;
    int default_action = 0;
};

/// Execution override for a RepNet agent: within [t_begin, t_end) the agent
/// performs this action while its planner output is still recorded.
struct ForcedAction {
    int t_begin = 0;
    int t_end = 0;
    int action = 0;
};

enum class ControllerKind { repnet, scripted };

struct ControllerSpec {
    ControllerKind kind = ControllerKind::scripted;
    Schedule schedule;
    std::vector<ForcedAction> forced;
};

/// One agent turn. Every time-step contains one record per agent, in fixed
/// round-robin order.
struct TraceRecord {
    int t = 0;
    int agent = 0;
    int executed_action = 0;
    int state_before = 0;
    int state_after = 0;
    /// Planner output for RepNet turns; empty for scripted turns.
    std::optional<PlanResult> plan;
    /// Observer's reputation estimate of every agent, after this turn's
    /// learning updates.
    std::vector<double> reputations;
    /// Observer's full action distribution after this turn's updates.
    ActionDistribution observer_ad;
};

/// Metric selections carried along with the trace so derive_metrics and the
/// CSV emitter are pure functions of it.
struct TrackSpec {
    int observer = 0;
    std::vector<std::pair<int, int>> reputation_pairs;        // (g, h) -> REP_g(h)
    std::vector<std::tuple<int, int, int>> ad_entries;        // (h, s, a)
    std::vector<int> offer_actions;                           // counted per window
    std::vector<int> index_actions;                           // ordered, for the average index
};

struct Trace {
    std::vector<TraceRecord> records;
    int num_agents = 0;
    int horizon = 0;
    TrackSpec tracks;
    // Naming carried along so emitters need no System reference.
    std::vector<std::string> agent_names;
    std::vector<std::string> state_names;
    std::vector<std::string> action_names;
};

/// Window width for the windowed metrics, in time-steps.
inline constexpr int kMetricWindow = 5;

struct MetricSeries {
    /// Per-time-step series, indexed by t.
    std::map<std::string, std::vector<double>> per_step;
    /// Per-window series, indexed by window number (t / kMetricWindow).
    std::map<std::string, std::vector<double>> per_window;
};

/// Scripted action lookup: first matching schedule entry, else the default.
int scripted_policy(const Schedule& schedule, int state, int t);

/// Samples the successor state from the objective model using the episode
/// generator. Throws RunError when the row is undefined.
int step_environment(const System& system, int acting, int state, int action, EpisodeRng& rng);

/// One learning step after an observed transition: the action-distribution
/// update followed by the image update, both fed the pre-update inputs.
AgentKnowledge observe_and_learn(const AgentKnowledge& knowledge, const System& system, int acting,
                                 int state, int next_state, const Hyperparameters& hyper);

/// Advances the scenario for hyper.horizon time-steps and records every turn.
/// Bit-reproducible for a fixed seed.
Trace run_episode(const Scenario& scenario, const Hyperparameters& hyper);

/// Reputation / distribution series plus the windowed offer-frequency and
/// average-action-index series.
MetricSeries derive_metrics(const Trace& trace);

}  // namespace repnet
