#pragma once

#include <map>
#include <vector>

#include "repnet/estimation.hpp"
#include "repnet/model.hpp"
#include "repnet/types.hpp"

namespace repnet {

/// Outcome of one look-ahead search. The chosen action is reported by its
/// objective identity even when it was evaluated through a subjective
/// counterpart; ties break towards the lowest action index.
struct PlanResult {
    int chosen_action = -1;
    double root_value = 0.0;
    std::map<int, double> q_values;
};

/// Self-impact of the chosen action plus the expected impact of the rest of
/// the network, averaged over the network size.
double perceived_impact(const System& system, int g, int s, const ActionDistribution& ad,
                        int action);

/// Depth-0 value estimate: the best perceived immediate impact available in
/// this epistemic state.
double leaf_heuristic(const System& system, const AgentKnowledge& knowledge, int g,
                      const EpistemicState& theta);

/// The epistemic state one level deeper in the tree: the hypothesized
/// successor state plus the estimation updates applied to the pre-transition
/// distribution and image. Inside planning only the owner's own action is
/// hypothesized, so the distribution update is restricted to self.
EpistemicState successor_epistemic(const System& system, const AgentKnowledge& knowledge,
                                   const EpistemicState& theta, int next_state,
                                   const Hyperparameters& hyper);

/// Value of taking one action and then acting optimally for depth - 1 more
/// levels. Requires depth >= 1.
double q_value(const System& system, const AgentKnowledge& knowledge, const EpistemicState& theta,
               int action, int depth, const Hyperparameters& hyper);

/// Full look-ahead expansion to hyper.depth. Deterministic: no sampling, and
/// ties resolve to the lowest action index.
PlanResult plan(const System& system, const AgentKnowledge& knowledge, const EpistemicState& theta,
                const Hyperparameters& hyper);

/// Naive recursive evaluation of the finite-horizon optimality equations,
/// with no tree reuse. Reference semantics for plan; desk-scale models only.
double expectimax_oracle(const System& system, const AgentKnowledge& knowledge,
                         const EpistemicState& theta, int horizon, const Hyperparameters& hyper);

/// Objective actions the planner may select in state s for agent g: those
/// with a subjective curve (via the counterpart map) or an objective row.
std::vector<int> feasible_actions(const System& system, const AgentKnowledge& knowledge, int g,
                                  int s);

}  // namespace repnet
