#include "repnet/planner.hpp"

#include <algorithm>
#include <optional>

namespace repnet {

namespace {

/// Resolves the transition route for one root choice: the subjective
/// counterpart where a curve exists, the objective row otherwise.
struct ActionRoute {
    int reported;  // objective identity
    ActionId evaluated;
};

std::optional<ActionRoute> route_for(const System& system, const AgentKnowledge& knowledge, int g,
                                     int s, int action) {
    if (system.action_kinds[action] != ActionKind::objective) return std::nullopt;
    if (auto subj = system.counterpart_map.lookup(action);
        subj && knowledge.subjective.has_any(g, s, *subj)) {
        return ActionRoute{action, {*subj, ActionKind::subjective}};
    }
    if (system.transitions.has_row(g, s, action)) {
        return ActionRoute{action, {action, ActionKind::objective}};
    }
    return std::nullopt;
}

double node_value(const System& system, const AgentKnowledge& knowledge,
                  const EpistemicState& theta, int depth, const Hyperparameters& hyper);

double q_value_impl(const System& system, const AgentKnowledge& knowledge,
                    const EpistemicState& theta, const ActionRoute& route, int depth,
                    const Hyperparameters& hyper) {
    const int g = knowledge.owner.index;
    const int s = theta.state.index;
    double value = perceived_impact(system, g, s, theta.action_distribution, route.reported);
    if (hyper.gamma == 0.0) return value;
    double r_g = reputation(system, g, g, theta.image);
    // Successor payloads depend only on the destination state; build lazily.
    std::vector<std::optional<EpistemicState>> successors(system.num_states);
    double backup = 0.0;
    for (int next = 0; next < system.num_states; ++next) {
        double p = global_transition_or_zero(system, knowledge, g, s, route.evaluated, next, r_g);
        if (p == 0.0) continue;
        if (!successors[next]) {
            successors[next] = successor_epistemic(system, knowledge, theta, next, hyper);
        }
        backup += p * node_value(system, knowledge, *successors[next], depth - 1, hyper);
    }
    return value + hyper.gamma * backup;
}

double node_value(const System& system, const AgentKnowledge& knowledge,
                  const EpistemicState& theta, int depth, const Hyperparameters& hyper) {
    if (depth == 0) return leaf_heuristic(system, knowledge, knowledge.owner.index, theta);
    const int g = knowledge.owner.index;
    const int s = theta.state.index;
    std::optional<double> best;
    for (int a = 0; a < system.num_actions(); ++a) {
        auto route = route_for(system, knowledge, g, s, a);
        if (!route) continue;
        double q = q_value_impl(system, knowledge, theta, *route, depth, hyper);
        if (!best || q > *best) best = q;
    }
    if (!best) {
        throw ModelError("no feasible action for agent " + system.agent_name(g) + " in state " +
                         system.state_name(s));
    }
    return *best;
}

}  // namespace

double perceived_impact(const System& system, int g, int s, const ActionDistribution& ad,
                        int action) {
    double total = system.impact.get(g, g, s, action);
    for (int h = 0; h < system.num_agents; ++h) {
        if (h == g) continue;
        for (int a = 0; a < system.num_actions(); ++a) {
            total += system.impact.get(g, h, s, a) * ad.at(h, s, a);
        }
    }
    return total / system.num_agents;
}

std::vector<int> feasible_actions(const System& system, const AgentKnowledge& knowledge, int g,
                                  int s) {
    std::vector<int> out;
    for (int a = 0; a < system.num_actions(); ++a) {
        if (route_for(system, knowledge, g, s, a)) out.push_back(a);
    }
    return out;
}

double leaf_heuristic(const System& system, const AgentKnowledge& knowledge, int g,
                      const EpistemicState& theta) {
    const int s = theta.state.index;
    std::optional<double> best;
    for (int a : feasible_actions(system, knowledge, g, s)) {
        double pi = perceived_impact(system, g, s, theta.action_distribution, a);
        if (!best || pi > *best) best = pi;
    }
    if (!best) {
        throw ModelError("no feasible action for agent " + system.agent_name(g) + " in state " +
                         system.state_name(s));
    }
    return *best;
}

EpistemicState successor_epistemic(const System& system, const AgentKnowledge& knowledge,
                                   const EpistemicState& theta, int next_state,
                                   const Hyperparameters& hyper) {
    AgentKnowledge current = knowledge;
    current.action_distribution = theta.action_distribution;
    current.image = theta.image;
    const int g = knowledge.owner.index;
    EpistemicState next;
    next.state = {next_state};
    next.action_distribution =
        action_distribution_estimate(system, current, theta.state.index, next_state, hyper.eta,
                                     UpdateScope::restricted, g);
    next.image = image_estimate(system, g, theta.image, theta.state.index,
                                theta.action_distribution, hyper.delta);
    return next;
}

double q_value(const System& system, const AgentKnowledge& knowledge, const EpistemicState& theta,
               int action, int depth, const Hyperparameters& hyper) {
    auto route = route_for(system, knowledge, knowledge.owner.index, theta.state.index, action);
    if (!route) {
        throw ModelError("action " + system.action_name(action) + " is not available in state " +
                         system.state_name(theta.state.index));
    }
    return q_value_impl(system, knowledge, theta, *route, depth, hyper);
}

PlanResult plan(const System& system, const AgentKnowledge& knowledge, const EpistemicState& theta,
                const Hyperparameters& hyper) {
    const int g = knowledge.owner.index;
    const int s = theta.state.index;
    PlanResult result;
    if (hyper.depth == 0) {
        for (int a : feasible_actions(system, knowledge, g, s)) {
            double pi = perceived_impact(system, g, s, theta.action_distribution, a);
            result.q_values[a] = pi;
            if (result.chosen_action < 0 || pi > result.root_value) {
                result.chosen_action = a;
                result.root_value = pi;
            }
        }
    } else {
        for (int a = 0; a < system.num_actions(); ++a) {
            auto route = route_for(system, knowledge, g, s, a);
            if (!route) continue;
            double q = q_value_impl(system, knowledge, theta, *route, hyper.depth, hyper);
            result.q_values[a] = q;
            if (result.chosen_action < 0 || q > result.root_value) {
                result.chosen_action = a;
                result.root_value = q;
            }
        }
    }
    if (result.chosen_action < 0) {
        throw ModelError("no feasible action for agent " + system.agent_name(g) + " in state " +
                         system.state_name(s));
    }
    return result;
}

double expectimax_oracle(const System& system, const AgentKnowledge& knowledge,
                         const EpistemicState& theta, int horizon, const Hyperparameters& hyper) {
    const int g = knowledge.owner.index;
    const int s = theta.state.index;
    std::optional<double> best;
    for (int a : feasible_actions(system, knowledge, g, s)) {
        double pi = perceived_impact(system, g, s, theta.action_distribution, a);
        double value = pi;
        if (horizon > 1) {
            double r_g = reputation(system, g, g, theta.image);
            ActionId evaluated = system.action(a);
            if (auto subj = system.counterpart_map.lookup(a);
                subj && knowledge.subjective.has_any(g, s, *subj)) {
                evaluated = {*subj, ActionKind::subjective};
            }
            double backup = 0.0;
            for (int next = 0; next < system.num_states; ++next) {
                double p =
                    global_transition_or_zero(system, knowledge, g, s, evaluated, next, r_g);
                if (p == 0.0) continue;
                EpistemicState succ = successor_epistemic(system, knowledge, theta, next, hyper);
                backup += p * expectimax_oracle(system, knowledge, succ, horizon - 1, hyper);
            }
            value += hyper.gamma * backup;
        }
        if (!best || value > *best) best = value;
    }
    if (!best) {
        throw ModelError("no feasible action for agent " + system.agent_name(g) + " in state " +
                         system.state_name(s));
    }
    return *best;
}

}  // namespace repnet
