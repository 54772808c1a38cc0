#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace repnet {

/// Index of an agent in the network.
struct AgentId {
    int index = 0;
    auto operator<=>(const AgentId&) const = default;
};

/// Index of a physical environment state.
struct StateId {
    int index = 0;
    auto operator<=>(const StateId&) const = default;
};

enum class ActionKind { objective, subjective };

/// Index of an action, tagged with whether it is applied to the environment
/// (objective) or only used during planning (subjective).
struct ActionId {
    int index = 0;
    ActionKind kind = ActionKind::objective;
    auto operator<=>(const ActionId&) const = default;
};

enum class UpdateScope {
    /// Update every (agent, state) row, as the set-comprehension form states.
    literal,
    /// Update only the row of the agent that acted, at the pre-transition state.
    restricted,
};

struct Hyperparameters {
    int depth = 3;
    double gamma = 0.7;
    double eta = 0.1;
    double delta = 0.5;
    int horizon = 100;
    std::uint64_t seed = 0;
    UpdateScope scope = UpdateScope::restricted;
};

/// Malformed or inconsistent model data.
class ModelError : public std::runtime_error {
public:
    explicit ModelError(const std::string& what) : std::runtime_error(what) {}
};

/// Failure while advancing an episode.
class RunError : public std::runtime_error {
public:
    explicit RunError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace repnet
