#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "repnet/types.hpp"

namespace repnet {

/// Partial mapping from objective actions to their subjective counterparts.
class CounterpartMap {
public:
    void set(int objective_action, int subjective_action);
    std::optional<int> lookup(int objective_action) const;
    const std::map<int, int>& entries() const { return map_; }

private:
    std::map<int, int> map_;
};

/// Sparse impact table. impact(g, h, s, a) is the impact on g caused by h
/// performing a in s. Unset entries are 0.
class ImpactTable {
public:
    void set(int g, int h, int s, int a, double value);
    double get(int g, int h, int s, int a) const;
    const std::map<std::tuple<int, int, int, int>, double>& entries() const { return entries_; }

private:
    std::map<std::tuple<int, int, int, int>, double> entries_;
};

/// Probability rows over successor states, keyed by (agent, state, objective action).
class ObjectiveTransitions {
public:
    void set_row(int agent, int state, int action, std::vector<double> row);
    bool has_row(int agent, int state, int action) const;
    /// Throws ModelError if the row is not defined.
    std::span<const double> row(int agent, int state, int action) const;
    const std::map<std::tuple<int, int, int>, std::vector<double>>& rows() const { return rows_; }

private:
    std::map<std::tuple<int, int, int>, std::vector<double>> rows_;
};

/// One (reputation breakpoint, probability) polyline. Breakpoints must be
/// strictly increasing; queries outside the range clamp to the end values.
struct ReputationCurve {
    std::vector<std::pair<double, double>> points;
    double value_at(double reputation) const;
};

/// Reputation-conditioned transition curves, keyed by
/// (agent, state, subjective action, destination state).
class SubjectiveTransitionSpec {
public:
    void set_curve(int agent, int state, int action, int dest, ReputationCurve curve);
    bool has_any(int agent, int state, int action) const;
    /// Destination -> curve for one (agent, state, action) triple; empty if undefined.
    std::vector<std::pair<int, const ReputationCurve*>> destinations(int agent, int state,
                                                                     int action) const;
    const std::map<std::tuple<int, int, int, int>, ReputationCurve>& curves() const {
        return curves_;
    }

private:
    std::map<std::tuple<int, int, int, int>, ReputationCurve> curves_;
};

/// Per-(agent, state) probability rows over the full action set.
class ActionDistribution {
public:
    ActionDistribution() = default;
    /// Rows start uniform.
    ActionDistribution(int num_agents, int num_states, int num_actions);

    int num_agents() const { return num_agents_; }
    int num_states() const { return num_states_; }
    int num_actions() const { return num_actions_; }

    double at(int agent, int state, int action) const;
    std::span<const double> row(int agent, int state) const;
    void set_row(int agent, int state, std::span<const double> row);

    bool operator==(const ActionDistribution&) const = default;

private:
    int num_agents_ = 0;
    int num_states_ = 0;
    int num_actions_ = 0;
    std::vector<double> p_;
};

/// Img(h, i): what the owner thinks agent i thinks of agent h. The diagonal
/// is fixed at 1.
class ImageFunction {
public:
    ImageFunction() = default;
    /// Off-diagonal entries start at the given value (default neutral 0).
    explicit ImageFunction(int num_agents, double off_diagonal = 0.0);

    int num_agents() const { return num_agents_; }
    double at(int h, int i) const;
    void set(int h, int i, double value);

    bool operator==(const ImageFunction&) const = default;

private:
    int num_agents_ = 0;
    std::vector<double> v_;
};

/// The shared world model: everything that applies to all agents alike.
struct System {
    int num_agents = 0;
    int num_states = 0;
    std::vector<ActionKind> action_kinds;

    std::vector<std::string> agent_names;
    std::vector<std::string> state_names;
    std::vector<std::string> action_names;

    CounterpartMap counterpart_map;
    ImpactTable impact;
    ObjectiveTransitions transitions;

    int num_actions() const { return static_cast<int>(action_kinds.size()); }
    ActionId action(int index) const { return {index, action_kinds.at(index)}; }

    std::string agent_name(int g) const;
    std::string state_name(int s) const;
    std::string action_name(int a) const;
};

/// One agent's private slice: its subjective model and current estimates.
struct AgentKnowledge {
    AgentId owner;
    SubjectiveTransitionSpec subjective;
    ActionDistribution action_distribution;
    ImageFunction image;
};

/// Planner search-node payload.
struct EpistemicState {
    StateId state;
    ActionDistribution action_distribution;
    ImageFunction image;
};

struct Violation {
    std::string location;
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
};

/// Collects every invariant violation in the model; an empty report means the
/// model is well-formed.
ValidationReport validate_system(const System& system,
                                 const std::vector<AgentKnowledge>& knowledge);

/// Interpolated and row-renormalized subjective probability of reaching dest.
/// Throws ModelError if (agent, state, action) has no curves or the row has
/// zero total mass at this reputation.
double subjective_probability(const SubjectiveTransitionSpec& spec, int agent, int state,
                              int action, int dest, double reputation);

/// The combined transition lookup: subjective actions go through the owner's
/// reputation-conditioned curves, objective actions through the shared model.
double global_transition(const System& system, const AgentKnowledge& knowledge, int agent,
                         int state, ActionId action, int dest, double reputation);

/// Like global_transition but treats missing rows/curves as probability 0,
/// for sums over the full action set.
double global_transition_or_zero(const System& system, const AgentKnowledge& knowledge, int agent,
                                 int state, ActionId action, int dest, double reputation);

/// The counterpart of an objective action, if one is defined.
std::optional<int> counterpart(const CounterpartMap& map, int objective_action);

}  // namespace repnet
