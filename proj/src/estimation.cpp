#include "repnet/estimation.hpp"

#include <algorithm>
#include <vector>

namespace repnet {

double expected_total_impact(const System& system, int g, int h, int i, int s,
                             const ActionDistribution& ad, double delta) {
    (void)g;
    double total = 0.0;
    for (int a = 0; a < system.num_actions(); ++a) {
        total += delta * ad.at(i, s, a) * system.impact.get(h, i, s, a) +
                 (1.0 - delta) * ad.at(h, s, a) * system.impact.get(i, h, s, a);
    }
    return total;
}

double image_update(double value, double impact) {
    if (impact >= 0.0) return value + (1.0 - value) * impact;
    return value + (1.0 + value) * impact;
}

ImageFunction image_estimate(const System& system, int g, const ImageFunction& image, int s,
                             const ActionDistribution& ad, double delta) {
    ImageFunction updated = image;
    for (int h = 0; h < system.num_agents; ++h) {
        for (int i = 0; i < system.num_agents; ++i) {
            if (h == i) {
                updated.set(h, i, 1.0);
                continue;
            }
            double eti = expected_total_impact(system, g, h, i, s, ad, delta);
            updated.set(h, i, image_update(image.at(h, i), eti));
        }
    }
    return updated;
}

double reputation(const System& system, int g, int h, const ImageFunction& image) {
    double sum = 0.0;
    int count = 0;
    for (int i = 0; i < system.num_agents; ++i) {
        if (h == g && i == g) continue;
        sum += image.at(h, i) * image.at(i, g);
        ++count;
    }
    if (count == 0) return 0.0;
    return sum / count;
}

ActionDistribution action_distribution_estimate(const System& system,
                                                const AgentKnowledge& knowledge, int prev_state,
                                                int obs_state, double eta, UpdateScope scope,
                                                int acting,
                                                std::vector<SkippedRow>* skipped) {
    const ActionDistribution& prior = knowledge.action_distribution;
    ActionDistribution posterior = prior;
    const int num_actions = system.num_actions();
    std::vector<double> row(num_actions);

    auto update_row = [&](int h, int s) {
        double r_h = reputation(system, knowledge.owner.index, h, knowledge.image);
        double denom = 0.0;
        for (int a = 0; a < num_actions; ++a) {
            double likelihood = global_transition_or_zero(system, knowledge, h, s,
                                                          system.action(a), obs_state, r_h);
            row[a] = likelihood * prior.at(h, s, a) + eta;
            denom += row[a];
        }
        if (denom <= 0.0) {
            if (skipped != nullptr) skipped->push_back({h, s});
            return;
        }
        for (double& p : row) p /= denom;
        posterior.set_row(h, s, row);
    };

    if (scope == UpdateScope::restricted) {
        update_row(acting, prev_state);
    } else {
        for (int h = 0; h < system.num_agents; ++h) {
            for (int s = 0; s < system.num_states; ++s) {
                update_row(h, s);
            }
        }
    }
    return posterior;
}

}  // namespace repnet
