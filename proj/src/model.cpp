#include "repnet/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace repnet {

namespace {

constexpr double kRowTolerance = 1e-9;

std::string fallback_name(const std::string& prefix, int index,
                          const std::vector<std::string>& names) {
    if (index >= 0 && index < static_cast<int>(names.size()) && !names[index].empty()) {
        return names[index];
    }
    return prefix + std::to_string(index);
}

}  // namespace

std::string System::agent_name(int g) const { return fallback_name("agent", g, agent_names); }
std::string System::state_name(int s) const { return fallback_name("state", s, state_names); }
std::string System::action_name(int a) const { return fallback_name("action", a, action_names); }

void CounterpartMap::set(int objective_action, int subjective_action) {
    map_[objective_action] = subjective_action;
}

std::optional<int> CounterpartMap::lookup(int objective_action) const {
    auto it = map_.find(objective_action);
    if (it == map_.end()) return std::nullopt;
    return it->second;
}

void ImpactTable::set(int g, int h, int s, int a, double value) {
    entries_[{g, h, s, a}] = value;
}

double ImpactTable::get(int g, int h, int s, int a) const {
    auto it = entries_.find({g, h, s, a});
    return it == entries_.end() ? 0.0 : it->second;
}

void ObjectiveTransitions::set_row(int agent, int state, int action, std::vector<double> row) {
    rows_[{agent, state, action}] = std::move(row);
}

bool ObjectiveTransitions::has_row(int agent, int state, int action) const {
    return rows_.contains({agent, state, action});
}

std::span<const double> ObjectiveTransitions::row(int agent, int state, int action) const {
    auto it = rows_.find({agent, state, action});
    if (it == rows_.end()) {
        std::ostringstream msg;
        msg << "no objective transition row for (agent " << agent << ", state " << state
            << ", action " << action << ")";
        throw ModelError(msg.str());
    }
    return it->second;
}

double ReputationCurve::value_at(double reputation) const {
    if (points.empty()) throw ModelError("empty reputation curve");
    if (reputation <= points.front().first) return points.front().second;
    if (reputation >= points.back().first) return points.back().second;
    for (std::size_t k = 1; k < points.size(); ++k) {
        const auto& [r1, p1] = points[k];
        if (reputation <= r1) {
            const auto& [r0, p0] = points[k - 1];
            double w = (reputation - r0) / (r1 - r0);
            return p0 + w * (p1 - p0);
        }
    }
    return points.back().second;
}

void SubjectiveTransitionSpec::set_curve(int agent, int state, int action, int dest,
                                         ReputationCurve curve) {
    curves_[{agent, state, action, dest}] = std::move(curve);
}

bool SubjectiveTransitionSpec::has_any(int agent, int state, int action) const {
    auto it = curves_.lower_bound({agent, state, action, 0});
    return it != curves_.end() && std::get<0>(it->first) == agent &&
           std::get<1>(it->first) == state && std::get<2>(it->first) == action;
}

std::vector<std::pair<int, const ReputationCurve*>> SubjectiveTransitionSpec::destinations(
    int agent, int state, int action) const {
    std::vector<std::pair<int, const ReputationCurve*>> out;
    for (auto it = curves_.lower_bound({agent, state, action, 0}); it != curves_.end(); ++it) {
        if (std::get<0>(it->first) != agent || std::get<1>(it->first) != state ||
            std::get<2>(it->first) != action) {
            break;
        }
        out.emplace_back(std::get<3>(it->first), &it->second);
    }
    return out;
}

ActionDistribution::ActionDistribution(int num_agents, int num_states, int num_actions)
    : num_agents_(num_agents),
      num_states_(num_states),
      num_actions_(num_actions),
      p_(static_cast<std::size_t>(num_agents) * num_states * num_actions,
         num_actions > 0 ? 1.0 / num_actions : 0.0) {}

double ActionDistribution::at(int agent, int state, int action) const {
    return p_[(static_cast<std::size_t>(agent) * num_states_ + state) * num_actions_ + action];
}

std::span<const double> ActionDistribution::row(int agent, int state) const {
    return {p_.data() + (static_cast<std::size_t>(agent) * num_states_ + state) * num_actions_,
            static_cast<std::size_t>(num_actions_)};
}

void ActionDistribution::set_row(int agent, int state, std::span<const double> row) {
    if (static_cast<int>(row.size()) != num_actions_) {
        throw ModelError("action distribution row has wrong length");
    }
    std::copy(row.begin(), row.end(),
              p_.begin() + (static_cast<std::size_t>(agent) * num_states_ + state) * num_actions_);
}

ImageFunction::ImageFunction(int num_agents, double off_diagonal)
    : num_agents_(num_agents),
      v_(static_cast<std::size_t>(num_agents) * num_agents, off_diagonal) {
    for (int i = 0; i < num_agents_; ++i) v_[static_cast<std::size_t>(i) * num_agents_ + i] = 1.0;
}

double ImageFunction::at(int h, int i) const {
    return v_[static_cast<std::size_t>(h) * num_agents_ + i];
}

void ImageFunction::set(int h, int i, double value) {
    v_[static_cast<std::size_t>(h) * num_agents_ + i] = value;
}

std::optional<int> counterpart(const CounterpartMap& map, int objective_action) {
    return map.lookup(objective_action);
}

double subjective_probability(const SubjectiveTransitionSpec& spec, int agent, int state,
                              int action, int dest, double reputation) {
    auto dests = spec.destinations(agent, state, action);
    if (dests.empty()) {
        std::ostringstream msg;
        msg << "no subjective curves for (agent " << agent << ", state " << state << ", action "
            << action << ")";
        throw ModelError(msg.str());
    }
    double total = 0.0;
    double raw = 0.0;
    for (const auto& [d, curve] : dests) {
        double v = curve->value_at(reputation);
        total += v;
        if (d == dest) raw = v;
    }
    if (total <= 0.0) {
        std::ostringstream msg;
        msg << "zero subjective row mass for (agent " << agent << ", state " << state
            << ", action " << action << ") at reputation " << reputation;
        throw ModelError(msg.str());
    }
    return raw / total;
}

double global_transition(const System& system, const AgentKnowledge& knowledge, int agent,
                         int state, ActionId action, int dest, double reputation) {
    if (action.index < 0 || action.index >= system.num_actions()) {
        throw ModelError("unknown action " + std::to_string(action.index));
    }
    if (action.kind == ActionKind::subjective) {
        return subjective_probability(knowledge.subjective, agent, state, action.index, dest,
                                      reputation);
    }
    return system.transitions.row(agent, state, action.index)[dest];
}

double global_transition_or_zero(const System& system, const AgentKnowledge& knowledge, int agent,
                                 int state, ActionId action, int dest, double reputation) {
    if (action.kind == ActionKind::subjective) {
        if (!knowledge.subjective.has_any(agent, state, action.index)) return 0.0;
        return subjective_probability(knowledge.subjective, agent, state, action.index, dest,
                                      reputation);
    }
    if (!system.transitions.has_row(agent, state, action.index)) return 0.0;
    return system.transitions.row(agent, state, action.index)[dest];
}

namespace {

void check_distribution_row(std::span<const double> row, const std::string& location,
                            ValidationReport& report) {
    double sum = 0.0;
    for (double p : row) {
        if (p < 0.0 || p > 1.0) {
            report.violations.push_back({location, "probability out of [0, 1]"});
            return;
        }
        sum += p;
    }
    if (std::abs(sum - 1.0) > kRowTolerance) {
        std::ostringstream msg;
        msg << "row sums to " << sum << ", expected 1";
        report.violations.push_back({location, msg.str()});
    }
}

}  // namespace

ValidationReport validate_system(const System& system,
                                 const std::vector<AgentKnowledge>& knowledge) {
    ValidationReport report;
    const int g_count = system.num_agents;
    const int s_count = system.num_states;
    const int a_count = system.num_actions();

    for (const auto& [obj, subj] : system.counterpart_map.entries()) {
        std::ostringstream loc;
        loc << "counterpart(" << system.action_name(obj) << ")";
        if (obj < 0 || obj >= a_count || system.action_kinds[obj] != ActionKind::objective) {
            report.violations.push_back({loc.str(), "domain entry is not an objective action"});
        }
        if (subj < 0 || subj >= a_count || system.action_kinds[subj] != ActionKind::subjective) {
            report.violations.push_back({loc.str(), "image entry is not a subjective action"});
        }
    }
    {
        std::map<int, int> seen;
        for (const auto& [obj, subj] : system.counterpart_map.entries()) {
            auto [it, inserted] = seen.emplace(subj, obj);
            if (!inserted) {
                std::ostringstream loc;
                loc << "counterpart(" << system.action_name(obj) << ")";
                report.violations.push_back({loc.str(), "counterpart map is not injective"});
            }
        }
    }

    for (const auto& [key, value] : system.impact.entries()) {
        auto [g, h, s, a] = key;
        std::ostringstream loc;
        loc << "impact(" << system.agent_name(g) << ", " << system.agent_name(h) << ", "
            << system.state_name(s) << ", " << system.action_name(a) << ")";
        if (g < 0 || g >= g_count || h < 0 || h >= g_count || s < 0 || s >= s_count || a < 0 ||
            a >= a_count) {
            report.violations.push_back({loc.str(), "index out of range"});
            continue;
        }
        if (value < -1.0 || value > 1.0) {
            report.violations.push_back({loc.str(), "impact out of [-1, 1]"});
        }
    }

    for (const auto& [key, row] : system.transitions.rows()) {
        auto [h, s, a] = key;
        std::ostringstream loc;
        loc << "ot(" << system.agent_name(h) << ", " << system.state_name(s) << ", "
            << system.action_name(a) << ")";
        if (h < 0 || h >= g_count || s < 0 || s >= s_count || a < 0 || a >= a_count) {
            report.violations.push_back({loc.str(), "index out of range"});
            continue;
        }
        if (system.action_kinds[a] != ActionKind::objective) {
            report.violations.push_back({loc.str(), "objective row keyed by subjective action"});
        }
        if (static_cast<int>(row.size()) != s_count) {
            report.violations.push_back({loc.str(), "row has wrong length"});
            continue;
        }
        check_distribution_row(row, loc.str(), report);
    }

    for (const auto& k : knowledge) {
        const std::string owner = system.agent_name(k.owner.index);
        for (const auto& [key, curve] : k.subjective.curves()) {
            auto [h, s, a, d] = key;
            std::ostringstream loc;
            loc << "st(" << owner << ": " << system.agent_name(h) << ", " << system.state_name(s)
                << ", " << system.action_name(a) << ", " << system.state_name(d) << ")";
            if (h < 0 || h >= g_count || s < 0 || s >= s_count || a < 0 || a >= a_count || d < 0 ||
                d >= s_count) {
                report.violations.push_back({loc.str(), "index out of range"});
                continue;
            }
            if (system.action_kinds[a] != ActionKind::subjective) {
                report.violations.push_back({loc.str(), "curve keyed by objective action"});
            }
            if (curve.points.empty()) {
                report.violations.push_back({loc.str(), "curve has no breakpoints"});
                continue;
            }
            for (std::size_t p = 0; p < curve.points.size(); ++p) {
                auto [r, prob] = curve.points[p];
                if (r < -1.0 || r > 1.0) {
                    report.violations.push_back({loc.str(), "breakpoint outside [-1, 1]"});
                }
                if (prob < 0.0 || prob > 1.0) {
                    report.violations.push_back({loc.str(), "curve probability outside [0, 1]"});
                }
                if (p > 0 && curve.points[p - 1].first >= r) {
                    report.violations.push_back(
                        {loc.str(), "breakpoints not strictly increasing"});
                }
            }
        }
        // Renormalized rows must be valid distributions across sampled reputations.
        std::map<std::tuple<int, int, int>, bool> triples;
        for (const auto& [key, curve] : k.subjective.curves()) {
            triples[{std::get<0>(key), std::get<1>(key), std::get<2>(key)}] = true;
        }
        for (const auto& [triple, _] : triples) {
            auto [h, s, a] = triple;
            for (int i = 0; i < 100; ++i) {
                double r = -1.0 + 2.0 * i / 99.0;
                double total = 0.0;
                for (const auto& [d, curve] : k.subjective.destinations(h, s, a)) {
                    total += curve->value_at(r);
                }
                if (total <= 0.0) {
                    std::ostringstream loc;
                    loc << "st(" << owner << ": " << system.agent_name(h) << ", "
                        << system.state_name(s) << ", " << system.action_name(a) << ")";
                    std::ostringstream msg;
                    msg << "zero row mass at reputation " << r;
                    report.violations.push_back({loc.str(), msg.str()});
                    break;
                }
            }
        }

        if (k.action_distribution.num_agents() != g_count ||
            k.action_distribution.num_states() != s_count ||
            k.action_distribution.num_actions() != a_count) {
            report.violations.push_back({"ad(" + owner + ")", "wrong dimensions"});
        } else {
            for (int h = 0; h < g_count; ++h) {
                for (int s = 0; s < s_count; ++s) {
                    std::ostringstream loc;
                    loc << "ad(" << owner << ": " << system.agent_name(h) << ", "
                        << system.state_name(s) << ")";
                    check_distribution_row(k.action_distribution.row(h, s), loc.str(), report);
                }
            }
        }

        if (k.image.num_agents() != g_count) {
            report.violations.push_back({"img(" + owner + ")", "wrong dimensions"});
        } else {
            for (int h = 0; h < g_count; ++h) {
                for (int i = 0; i < g_count; ++i) {
                    double v = k.image.at(h, i);
                    std::ostringstream loc;
                    loc << "img(" << owner << ": " << system.agent_name(h) << ", "
                        << system.agent_name(i) << ")";
                    if (h == i && v != 1.0) {
                        report.violations.push_back({loc.str(), "diagonal entry is not 1"});
                    }
                    if (v < -1.0 || v > 1.0) {
                        report.violations.push_back({loc.str(), "image outside [-1, 1]"});
                    }
                }
            }
        }
    }
    return report;
}

}  // namespace repnet
