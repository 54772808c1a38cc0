// Release gate: one line of output per criterion, non-zero exit on any FAIL.
// Criteria 4-6 replay the bundled experiment scenarios and check the
// qualitative shape of the derived metric series.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "../support/random_model.hpp"
#include "repnet/estimation.hpp"
#include "repnet/planner.hpp"
#include "repnet/scenario.hpp"
#include "repnet/simulator.hpp"

using namespace repnet;
using repnet::testing::make_random_model;

namespace {

int failures = 0;

void report(int number, bool ok, const std::string& label) {
    std::printf("criterion %d: %s - %s\n", number, ok ? "PASS" : "FAIL", label.c_str());
    if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

Scenario load(const std::string& file) {
    std::ifstream in(std::string(SCENARIO_DIR) + "/" + file);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_scenario(buffer.str());
}

double window_mean(const std::vector<double>& series, int first, int last) {
    double total = 0.0;
    for (int w = first; w <= last; ++w) total += series[w];
    return total / (last - first + 1);
}

// 1. Look-ahead root value equals the brute-force expectimax evaluation on
//    small random models, within 1e-9, in under 10 seconds total.
void criterion_1() {
    auto start = std::chrono::steady_clock::now();
    std::mt19937_64 rng(424242);
    bool ok = true;
    const int trials = 120;
    for (int trial = 0; trial < trials && ok; ++trial) {
        int agents = 1 + static_cast<int>(rng() % 3);
        int states = 2 + static_cast<int>(rng() % 3);
        int actions = 2 + static_cast<int>(rng() % 2);
        auto m = make_random_model(rng, agents, states, actions, trial % 2 == 0);
        Hyperparameters hyper;
        hyper.depth = static_cast<int>(rng() % 4);
        EpistemicState theta{{static_cast<int>(rng() % states)},
                             m.knowledge[0].action_distribution, m.knowledge[0].image};
        PlanResult result = plan(m.system, m.knowledge[0], theta, hyper);
        double oracle =
            expectimax_oracle(m.system, m.knowledge[0], theta, hyper.depth + 1, hyper);
        if (std::abs(result.root_value - oracle) > 1e-9) ok = false;
    }
    double elapsed = seconds_since(start);
    report(1, ok && elapsed < 10.0,
           "planner root value matches the expectimax oracle within 1e-9 on 120 random models (" +
               std::to_string(elapsed) + " s)");
}

// 2. Estimation unit suite: exact image-update grid, unsmoothed Bayes oracle
//    agreement, and the two refused-trade posterior rows.
void criterion_2() {
    bool ok = true;

    for (int vi = 0; vi <= 20 && ok; ++vi) {
        for (int ii = 0; ii <= 20 && ok; ++ii) {
            double v = -1.0 + 0.1 * vi;
            double i = -1.0 + 0.1 * ii;
            double expected = i >= 0.0 ? v + (1.0 - v) * i : v + (1.0 + v) * i;
            if (image_update(v, i) != expected) ok = false;
        }
    }

    std::mt19937_64 rng(20240819);
    for (int trial = 0; trial < 100 && ok; ++trial) {
        int agents = 2 + static_cast<int>(rng() % 2);
        int states = 2 + static_cast<int>(rng() % 3);
        int actions = 2 + static_cast<int>(rng() % 2);
        auto m = make_random_model(rng, agents, states, actions);
        const AgentKnowledge& k = m.knowledge[0];
        int prev = static_cast<int>(rng() % states);
        int obs = static_cast<int>(rng() % states);
        ActionDistribution out =
            action_distribution_estimate(m.system, k, prev, obs, 0.0, UpdateScope::literal, -1);
        for (int h = 0; h < agents && ok; ++h) {
            for (int s = 0; s < states && ok; ++s) {
                double denom = 0.0;
                std::vector<double> expected(actions);
                for (int a = 0; a < actions; ++a) {
                    expected[a] = m.system.transitions.row(h, s, a)[obs] *
                                  k.action_distribution.at(h, s, a);
                    denom += expected[a];
                }
                for (int a = 0; a < actions; ++a) {
                    if (std::abs(out.at(h, s, a) - expected[a] / denom) > 1e-12) ok = false;
                }
            }
        }
    }

    // Refused trade: B answers an offer at s0 with accept (-> s1) or refuse
    // (-> s2); A starts from a uniform row over B's two actions.
    System sys;
    sys.num_agents = 2;
    sys.num_states = 3;
    sys.action_kinds = {ActionKind::objective, ActionKind::objective};
    sys.transitions.set_row(1, 0, 0, {0, 1, 0});
    sys.transitions.set_row(1, 0, 1, {0, 0, 1});
    AgentKnowledge a;
    a.owner = {0};
    a.action_distribution = ActionDistribution(2, 3, 2);
    a.image = ImageFunction(2);

    ActionDistribution sharp =
        action_distribution_estimate(sys, a, 0, 2, 0.0, UpdateScope::restricted, 1);
    if (std::abs(sharp.at(1, 0, 0) - 0.0) > 1e-12) ok = false;
    if (std::abs(sharp.at(1, 0, 1) - 1.0) > 1e-12) ok = false;

    ActionDistribution smoothed =
        action_distribution_estimate(sys, a, 0, 2, 0.1, UpdateScope::restricted, 1);
    if (std::abs(smoothed.at(1, 0, 0) - 1.0 / 7) > 1e-12) ok = false;
    if (std::abs(smoothed.at(1, 0, 1) - 6.0 / 7) > 1e-12) ok = false;

    report(2, ok,
           "image-update grid exact, unsmoothed Bayes oracle to 1e-12, refusal rows (0, 1) and "
           "(1/7, 6/7)");
}

// 3. Randomized invariants: stochastic rows, bounded and pinned images,
//    bounded reputations, deterministic planning. 1000+ cases per property.
void criterion_3() {
    bool ok = true;
    std::mt19937_64 rng(7777);
    std::uniform_real_distribution<double> u(-1.0, 1.0);

    for (int trial = 0; trial < 1200 && ok; ++trial) {
        double out = image_update(u(rng), u(rng));
        if (out < -1.0 || out > 1.0) ok = false;
    }

    for (int trial = 0; trial < 1000 && ok; ++trial) {
        int agents = 2 + static_cast<int>(rng() % 2);
        int states = 2 + static_cast<int>(rng() % 2);
        auto m = make_random_model(rng, agents, states, 2, trial % 4 == 0);
        const AgentKnowledge& k = m.knowledge[0];
        int prev = static_cast<int>(rng() % states);
        int obs = static_cast<int>(rng() % states);
        double eta = (trial % 2 == 0) ? 0.1 : 0.01;
        UpdateScope scope = (trial % 3 == 0) ? UpdateScope::literal : UpdateScope::restricted;

        ActionDistribution ad =
            action_distribution_estimate(m.system, k, prev, obs, eta, scope, prev % agents);
        for (int h = 0; h < agents && ok; ++h) {
            for (int s = 0; s < states && ok; ++s) {
                double total = 0.0;
                for (int a = 0; a < m.system.num_actions(); ++a) {
                    double p = ad.at(h, s, a);
                    if (p <= 0.0 || p > 1.0) ok = false;
                    total += p;
                }
                if (std::abs(total - 1.0) > 1e-9) ok = false;
            }
        }

        ImageFunction img = image_estimate(m.system, 0, k.image, prev, ad, 0.5);
        for (int h = 0; h < agents && ok; ++h) {
            if (img.at(h, h) != 1.0) ok = false;
            for (int i = 0; i < agents; ++i) {
                if (img.at(h, i) < -1.0 || img.at(h, i) > 1.0) ok = false;
            }
            double rep = reputation(m.system, 0, h, img);
            if (rep < -1.0 || rep > 1.0) ok = false;
        }
    }

    for (int trial = 0; trial < 1000 && ok; ++trial) {
        auto m = make_random_model(rng, 2, 2, 2, trial % 2 == 0);
        Hyperparameters hyper;
        hyper.depth = 2;
        EpistemicState theta{{static_cast<int>(rng() % 2)}, m.knowledge[0].action_distribution,
                             m.knowledge[0].image};
        PlanResult first = plan(m.system, m.knowledge[0], theta, hyper);
        PlanResult second = plan(m.system, m.knowledge[0], theta, hyper);
        if (first.chosen_action != second.chosen_action ||
            first.root_value != second.root_value || first.q_values != second.q_values) {
            ok = false;
        }
    }

    report(3, ok,
           "normalization, boundedness, diagonal pinning, and plan determinism over 1000+ "
           "randomized cases each");
}

// 4. Trading scenario with the reputation-conditioned waiting model: the
//    acceptance estimate tracks the partner's phase, offers collapse during
//    the refusal phase, and self-reputation dips then recovers.
void criterion_4(const MetricSeries& metrics, double elapsed) {
    const auto& accept = metrics.per_step.at("ad[B:s1:accept]");
    const auto& rep = metrics.per_step.at("rep[A->A]");
    const auto& offers = metrics.per_window.at("offer_frequency");

    bool a = accept[20] < 0.5 && accept[80] > accept[20];
    bool b = window_mean(offers, 2, 3) < 0.5 * window_mean(offers, 0, 1);
    bool c = rep[19] < rep[0] && rep[79] > rep[19];

    report(4, a && b && c && elapsed < 5.0,
           "subjective run: acceptance estimate falls then recovers, offer frequency halves, "
           "self-reputation dips and rebuilds (" +
               std::to_string(elapsed) + " s)");
}

// 5. The reputation-conditioned planner stops offering within the refusal
//    phase; the planner using the flat objective model never does.
void criterion_5(const MetricSeries& subjective) {
    Scenario objective = load("exp1_objective.scn");
    MetricSeries metrics = derive_metrics(run_episode(objective, objective.hyper));

    const auto& sub_offers = subjective.per_window.at("offer_frequency");
    const auto& obj_offers = metrics.per_window.at("offer_frequency");
    bool sub_reaches_zero = false;
    bool obj_stays_positive = true;
    for (int w = 0; w < 4; ++w) {
        if (sub_offers[w] == 0.0) sub_reaches_zero = true;
        if (obj_offers[w] <= 0.0) obj_stays_positive = false;
    }
    report(5, sub_reaches_zero && obj_stays_positive,
           "offer frequency reaches 0 in phase 1 with the subjective model, stays positive "
           "without it");
}

// 6. Partner selection: the planner favours the accepting partner in each
//    phase, and keeps favouring B after merely witnessing B's betrayal even
//    as B's reputation collapses.
void criterion_6() {
    auto start = std::chrono::steady_clock::now();
    Scenario sc = load("exp2.scn");
    MetricSeries metrics = derive_metrics(run_episode(sc, sc.hyper));
    double elapsed = seconds_since(start);

    const auto& index = metrics.per_window.at("average_action");
    const auto& rep_b = metrics.per_step.at("rep[A->B]");
    const auto& rep_c = metrics.per_step.at("rep[A->C]");

    bool a = window_mean(index, 0, 5) > 0.5 && rep_c[33] > rep_b[33];
    bool b = window_mean(index, 10, 12) < 0.5;
    bool c = window_mean(index, 14, 19) < 0.5 && rep_b[99] < rep_b[66];

    report(6, a && b && c && elapsed < 5.0,
           "partner preference follows acceptance in phases 1-2, stays on B in phase 3 while "
           "B's reputation falls (" +
               std::to_string(elapsed) + " s)");
}

// 7. Same scenario, same seed: byte-identical trace and metrics CSVs.
void criterion_7(const Scenario& sc) {
    std::string first_trace, first_metrics, second_trace, second_metrics;
    for (int run = 0; run < 2; ++run) {
        Trace trace = run_episode(sc, sc.hyper);
        MetricSeries metrics = derive_metrics(trace);
        std::ostringstream t, m;
        emit_trace_csv(trace, metrics, t);
        emit_metrics_csv(metrics, m);
        (run == 0 ? first_trace : second_trace) = t.str();
        (run == 0 ? first_metrics : second_metrics) = m.str();
    }
    report(7, first_trace == second_trace && first_metrics == second_metrics &&
                  !first_trace.empty(),
           "repeated runs with a fixed seed emit byte-identical CSVs");
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();

    Scenario subjective = load("exp1_subjective.scn");
    auto start = std::chrono::steady_clock::now();
    MetricSeries metrics = derive_metrics(run_episode(subjective, subjective.hyper));
    double elapsed = seconds_since(start);

    criterion_4(metrics, elapsed);
    criterion_5(metrics);
    criterion_6();
    criterion_7(subjective);

    return failures == 0 ? 0 : 1;
}
