#pragma once

#include <vector>

#include "repnet/model.hpp"
#include "repnet/types.hpp"

namespace repnet {

/// delta-weighted bidirectional expected impact between h and i in state s,
/// as estimated by observer g.
double expected_total_impact(const System& system, int g, int h, int i, int s,
                             const ActionDistribution& ad, double delta);

/// Pushes an image value towards +1 for positive impact and towards -1 for
/// negative impact; a zero impact is a fixed point.
double image_update(double value, double impact);

/// Applies image_update with the expected total impact of every ordered agent
/// pair; the diagonal stays pinned at 1. Pure: the input is not modified.
ImageFunction image_estimate(const System& system, int g, const ImageFunction& image, int s,
                             const ActionDistribution& ad, double delta);

/// Image entries about h, each weighted by the observer's image of the
/// opinion holder, averaged. The self-reputation of the only agent in a
/// single-agent network is defined as 0.
double reputation(const System& system, int g, int h, const ImageFunction& image);

/// Row left unchanged by action_distribution_estimate because its Bayes
/// denominator was 0 (possible only with eta = 0).
struct SkippedRow {
    int agent;
    int state;
};

/// Bayes-rule posterior over actions with Laplace smoothing, given the
/// observed transition prev_state -> obs_state. Restricted scope updates only
/// (acting, prev_state); literal scope updates every row.
ActionDistribution action_distribution_estimate(const System& system,
                                                const AgentKnowledge& knowledge, int prev_state,
                                                int obs_state, double eta, UpdateScope scope,
                                                int acting,
                                                std::vector<SkippedRow>* skipped = nullptr);

}  // namespace repnet
