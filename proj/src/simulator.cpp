#include "repnet/simulator.hpp"

#include <algorithm>
#include <sstream>

#include "repnet/scenario.hpp"

namespace repnet {

// xoshiro256** with a splitmix64-seeded state. Fixed here rather than taken
// from <random> so that traces are identical across standard libraries.
EpisodeRng::EpisodeRng(std::uint64_t seed) {
    std::uint64_t x = seed;
    for (auto& word : s_) {
        x += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = x;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        word = z ^ (z >> 31);
    }
}

std::uint64_t EpisodeRng::next() {
    auto rotl = [](std::uint64_t v, int k) { return (v << k) | (v >> (64 - k)); };
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

double EpisodeRng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

int scripted_policy(const Schedule& schedule, int state, int t) {
    for (const auto& entry : schedule.entries) {
        if (t < entry.t_begin || t >= entry.t_end) continue;
        if (entry.state && *entry.state != state) continue;
        return entry.action;
    }
    return schedule.default_action;
}

int step_environment(const System& system, int acting, int state, int action, EpisodeRng& rng) {
    if (!system.transitions.has_row(acting, state, action)) {
        std::ostringstream msg;
        msg << "no objective transition row for (" << system.agent_name(acting) << ", "
            << system.state_name(state) << ", " << system.action_name(action) << ")";
        throw RunError(msg.str());
    }
    auto row = system.transitions.row(acting, state, action);
    double u = rng.uniform();
    double cumulative = 0.0;
    int last_positive = -1;
    for (int next = 0; next < static_cast<int>(row.size()); ++next) {
        if (row[next] <= 0.0) continue;
        cumulative += row[next];
        last_positive = next;
        if (u < cumulative) return next;
    }
    if (last_positive < 0) {
        throw RunError("objective transition row has no mass");
    }
    return last_positive;
}

AgentKnowledge observe_and_learn(const AgentKnowledge& knowledge, const System& system, int acting,
                                 int state, int next_state, const Hyperparameters& hyper) {
    AgentKnowledge updated = knowledge;
    updated.action_distribution = action_distribution_estimate(
        system, knowledge, state, next_state, hyper.eta, hyper.scope, acting);
    updated.image = image_estimate(system, knowledge.owner.index, knowledge.image, state,
                                   knowledge.action_distribution, hyper.delta);
    return updated;
}

namespace {

std::optional<int> forced_action(const ControllerSpec& controller, int t) {
    for (const auto& f : controller.forced) {
        if (t >= f.t_begin && t < f.t_end) return f.action;
    }
    return std::nullopt;
}

}  // namespace

Trace run_episode(const Scenario& scenario, const Hyperparameters& hyper) {
    const System& system = scenario.system;
    std::vector<AgentKnowledge> knowledge = scenario.knowledge;
    EpisodeRng rng(hyper.seed);

    Trace trace;
    trace.num_agents = system.num_agents;
    trace.horizon = hyper.horizon;
    trace.tracks = scenario.tracks;
    trace.agent_names = system.agent_names;
    trace.state_names = system.state_names;
    trace.action_names = system.action_names;
    trace.records.reserve(static_cast<std::size_t>(hyper.horizon) * system.num_agents);

    const int observer = scenario.tracks.observer;
    int state = scenario.initial_state;

    for (int t = 0; t < hyper.horizon; ++t) {
        for (int g = 0; g < system.num_agents; ++g) {
            const ControllerSpec& controller = scenario.controllers[g];
            TraceRecord record;
            record.t = t;
            record.agent = g;
            record.state_before = state;

            int executed;
            if (controller.kind == ControllerKind::repnet) {
                EpistemicState theta{{state}, knowledge[g].action_distribution,
                                     knowledge[g].image};
                try {
                    record.plan = plan(system, knowledge[g], theta, hyper);
                } catch (const ModelError& e) {
                    throw RunError("t=" + std::to_string(t) + ": " + e.what());
                }
                executed = record.plan->chosen_action;
                if (auto forced = forced_action(controller, t)) executed = *forced;
            } else {
                executed = scripted_policy(controller.schedule, state, t);
            }

            int next_state;
            try {
                next_state = step_environment(system, g, state, executed, rng);
            } catch (const RunError& e) {
                throw RunError("t=" + std::to_string(t) + ": " + e.what());
            }
            record.executed_action = executed;
            record.state_after = next_state;

            for (int h = 0; h < system.num_agents; ++h) {
                if (scenario.controllers[h].kind != ControllerKind::repnet) continue;
                knowledge[h] = observe_and_learn(knowledge[h], system, g, state, next_state, hyper);
            }
            state = next_state;

            record.reputations.resize(system.num_agents);
            for (int h = 0; h < system.num_agents; ++h) {
                record.reputations[h] =
                    reputation(system, observer, h, knowledge[observer].image);
            }
            record.observer_ad = knowledge[observer].action_distribution;
            trace.records.push_back(std::move(record));
        }
    }
    return trace;
}

MetricSeries derive_metrics(const Trace& trace) {
    MetricSeries metrics;
    const TrackSpec& tracks = trace.tracks;
    const int horizon = trace.horizon;
    const int num_windows = (horizon + kMetricWindow - 1) / kMetricWindow;

    // End-of-step snapshots for the per-step series.
    std::vector<const TraceRecord*> last_in_step(horizon, nullptr);
    for (const auto& record : trace.records) last_in_step[record.t] = &record;

    auto named = [](const std::vector<std::string>& names, int index) {
        if (index >= 0 && index < static_cast<int>(names.size())) return names[index];
        return std::to_string(index);
    };

    for (const auto& [g, h] : tracks.reputation_pairs) {
        std::string name =
            "rep[" + named(trace.agent_names, g) + "->" + named(trace.agent_names, h) + "]";
        auto& series = metrics.per_step[name];
        series.resize(horizon, 0.0);
        for (int t = 0; t < horizon; ++t) {
            if (last_in_step[t] != nullptr) series[t] = last_in_step[t]->reputations[h];
        }
    }
    for (const auto& [h, s, a] : tracks.ad_entries) {
        std::string name = "ad[" + named(trace.agent_names, h) + ":" +
                           named(trace.state_names, s) + ":" + named(trace.action_names, a) + "]";
        auto& series = metrics.per_step[name];
        series.resize(horizon, 0.0);
        for (int t = 0; t < horizon; ++t) {
            if (last_in_step[t] != nullptr) series[t] = last_in_step[t]->observer_ad.at(h, s, a);
        }
    }

    if (!tracks.offer_actions.empty()) {
        auto& series = metrics.per_window["offer_frequency"];
        series.resize(num_windows, 0.0);
        for (const auto& record : trace.records) {
            if (std::ranges::find(tracks.offer_actions, record.executed_action) !=
                tracks.offer_actions.end()) {
                series[record.t / kMetricWindow] += 1.0;
            }
        }
        for (double& v : series) v /= kMetricWindow;
    }

    if (tracks.index_actions.size() >= 2) {
        // Preference index from the planner's q-values over the declared
        // actions: the position of the best one, ties to the earliest.
        auto& series = metrics.per_window["average_action"];
        series.resize(num_windows, 0.0);
        std::vector<int> counts(num_windows, 0);
        for (const auto& record : trace.records) {
            if (!record.plan) continue;
            int best = -1;
            double best_q = 0.0;
            for (std::size_t pos = 0; pos < tracks.index_actions.size(); ++pos) {
                auto it = record.plan->q_values.find(tracks.index_actions[pos]);
                if (it == record.plan->q_values.end()) continue;
                if (best < 0 || it->second > best_q) {
                    best = static_cast<int>(pos);
                    best_q = it->second;
                }
            }
            if (best < 0) continue;
            series[record.t / kMetricWindow] += best;
            counts[record.t / kMetricWindow] += 1;
        }
        for (int w = 0; w < num_windows; ++w) {
            if (counts[w] > 0) series[w] /= counts[w];
        }
    }
    return metrics;
}

}  // namespace repnet
