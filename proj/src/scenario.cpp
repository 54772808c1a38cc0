#include "repnet/scenario.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <sstream>

namespace repnet {

int Scenario::agent_index(const std::string& name) const {
    auto it = std::ranges::find(system.agent_names, name);
    if (it == system.agent_names.end()) throw ModelError("unknown agent: " + name);
    return static_cast<int>(it - system.agent_names.begin());
}

int Scenario::state_index(const std::string& name) const {
    auto it = std::ranges::find(system.state_names, name);
    if (it == system.state_names.end()) throw ModelError("unknown state: " + name);
    return static_cast<int>(it - system.state_names.begin());
}

int Scenario::action_index(const std::string& name) const {
    auto it = std::ranges::find(system.action_names, name);
    if (it == system.action_names.end()) throw ModelError("unknown action: " + name);
    return static_cast<int>(it - system.action_names.begin());
}

namespace {

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> tokens;
    std::istringstream in(line);
    std::string token;
    while (in >> token) tokens.push_back(token);
    return tokens;
}

class Parser {
public:
    explicit Parser(const std::string& text) : in_(text) {}

    Scenario run() {
        expect_header();
        std::string line;
        while (next_line(line)) {
            auto tokens = tokenize(line);
            if (tokens.empty()) continue;
            if (tokens[0].front() == '[') {
                enter_section(tokens);
                continue;
            }
            dispatch(tokens, line);
        }
        finalize();
        return std::move(scenario_);
    }

private:
    [[noreturn]] void fail(const std::string& message) const { throw ParseError(line_no_, message); }

    bool next_line(std::string& out) {
        while (std::getline(in_, out)) {
            ++line_no_;
            if (auto hash = out.find('#'); hash != std::string::npos) out.erase(hash);
            if (!tokenize(out).empty()) return true;
        }
        return false;
    }

    void expect_header() {
        std::string line;
        if (!next_line(line)) fail("empty scenario");
        auto tokens = tokenize(line);
        if (tokens.size() != 2 || tokens[0] != "repnet-scenario" || tokens[1] != "v1") {
            fail("expected header 'repnet-scenario v1'");
        }
    }

    void enter_section(const std::vector<std::string>& tokens) {
        if (tokens.size() != 1) fail("unexpected tokens after section header");
        static const std::vector<std::string> known = {
            "[agents]",   "[states]",   "[actions]", "[impact]", "[transitions]",
            "[subjective]", "[schedule]", "[init]",    "[track]",  "[hyper]"};
        if (std::ranges::find(known, tokens[0]) == known.end()) {
            fail("unknown section " + tokens[0]);
        }
        section_ = tokens[0];
    }

    void dispatch(const std::vector<std::string>& tokens, const std::string& line) {
        if (section_.empty()) {
            if (tokens[0] == "name" && tokens.size() == 2) {
                scenario_.name = tokens[1];
            } else if (tokens[0] == "description") {
                auto pos = line.find("description");
                scenario_.description = line.substr(pos + 11);
                while (!scenario_.description.empty() && scenario_.description.front() == ' ') {
                    scenario_.description.erase(scenario_.description.begin());
                }
            } else {
                fail("unknown top-level key '" + tokens[0] + "'");
            }
        } else if (section_ == "[agents]") {
            parse_agent(tokens);
        } else if (section_ == "[states]") {
            parse_state(tokens);
        } else if (section_ == "[actions]") {
            parse_action(tokens);
        } else if (section_ == "[impact]") {
            parse_impact(tokens);
        } else if (section_ == "[transitions]") {
            parse_transition(tokens);
        } else if (section_ == "[subjective]") {
            parse_subjective(tokens);
        } else if (section_ == "[schedule]") {
            parse_schedule(tokens);
        } else if (section_ == "[init]") {
            init_lines_.push_back({line_no_, tokens});
        } else if (section_ == "[track]") {
            track_lines_.push_back({line_no_, tokens});
        } else if (section_ == "[hyper]") {
            parse_hyper(tokens);
        }
    }

    void parse_agent(const std::vector<std::string>& tokens) {
        if (tokens.size() != 3 || tokens[0] != "agent") fail("expected: agent <name> <controller>");
        scenario_.system.agent_names.push_back(tokens[1]);
        ControllerSpec controller;
        if (tokens[2] == "repnet") {
            controller.kind = ControllerKind::repnet;
        } else if (tokens[2] == "scripted") {
            controller.kind = ControllerKind::scripted;
        } else {
            fail("controller must be 'repnet' or 'scripted'");
        }
        scenario_.controllers.push_back(controller);
        scenario_.system.num_agents = static_cast<int>(scenario_.system.agent_names.size());
    }

    void parse_state(const std::vector<std::string>& tokens) {
        if (tokens[0] == "start") {
            if (tokens.size() != 2) fail("expected: start <state>");
            start_name_ = tokens[1];
            return;
        }
        if (tokens.size() != 2 || tokens[0] != "state") fail("expected: state <name>");
        scenario_.system.state_names.push_back(tokens[1]);
        scenario_.system.num_states = static_cast<int>(scenario_.system.state_names.size());
    }

    void parse_action(const std::vector<std::string>& tokens) {
        if (tokens[0] == "counterpart") {
            if (tokens.size() != 3) fail("expected: counterpart <objective> <subjective>");
            counterpart_lines_.push_back({line_no_, tokens});
            return;
        }
        if (tokens.size() != 2 || (tokens[0] != "objective" && tokens[0] != "subjective")) {
            fail("expected: objective|subjective <name>");
        }
        scenario_.system.action_names.push_back(tokens[1]);
        scenario_.system.action_kinds.push_back(tokens[0] == "objective" ? ActionKind::objective
                                                                         : ActionKind::subjective);
    }

    int agent(const std::string& name) {
        try {
            return scenario_.agent_index(name);
        } catch (const ModelError& e) {
            fail(e.what());
        }
    }
    int state(const std::string& name) {
        try {
            return scenario_.state_index(name);
        } catch (const ModelError& e) {
            fail(e.what());
        }
    }
    int action(const std::string& name) {
        try {
            return scenario_.action_index(name);
        } catch (const ModelError& e) {
            fail(e.what());
        }
    }
    double number(const std::string& token) {
        try {
            std::size_t used = 0;
            double v = std::stod(token, &used);
            if (used != token.size()) fail("bad number '" + token + "'");
            return v;
        } catch (const std::invalid_argument&) {
            fail("bad number '" + token + "'");
        } catch (const std::out_of_range&) {
            fail("bad number '" + token + "'");
        }
    }
    int integer(const std::string& token) {
        double v = number(token);
        int i = static_cast<int>(v);
        if (static_cast<double>(i) != v) fail("expected an integer, got '" + token + "'");
        return i;
    }

    void parse_impact(const std::vector<std::string>& tokens) {
        if (tokens.size() != 6 || tokens[0] != "impact") {
            fail("expected: impact <g> <h> <state> <action|*> <value>");
        }
        int g = agent(tokens[1]);
        int h = agent(tokens[2]);
        int s = state(tokens[3]);
        double value = number(tokens[5]);
        if (tokens[4] == "*") {
            for (int a = 0; a < scenario_.system.num_actions(); ++a) {
                scenario_.system.impact.set(g, h, s, a, value);
            }
        } else {
            scenario_.system.impact.set(g, h, s, action(tokens[4]), value);
        }
    }

    void parse_transition(const std::vector<std::string>& tokens) {
        if (tokens.size() < 6 || tokens[0] != "ot" || tokens[4] != "->" ||
            (tokens.size() - 5) % 2 != 0) {
            fail("expected: ot <agent> <state> <action> -> <state> <p> [...]");
        }
        int h = agent(tokens[1]);
        int s = state(tokens[2]);
        int a = action(tokens[3]);
        std::vector<double> row(scenario_.system.num_states, 0.0);
        for (std::size_t k = 5; k + 1 < tokens.size(); k += 2) {
            row[state(tokens[k])] = number(tokens[k + 1]);
        }
        scenario_.system.transitions.set_row(h, s, a, std::move(row));
    }

    void parse_subjective(const std::vector<std::string>& tokens) {
        // st <owner> <agent> <state> <action> <dest> : <r> <p> [, <r> <p>]...
        if (tokens.size() < 9 || tokens[0] != "st" || tokens[6] != ":") {
            fail("expected: st <owner> <agent> <state> <action> <dest> : <r> <p>, ...");
        }
        int owner = agent(tokens[1]);
        int h = agent(tokens[2]);
        int s = state(tokens[3]);
        int a = action(tokens[4]);
        int dest = state(tokens[5]);
        ReputationCurve curve;
        std::vector<std::string> rest(tokens.begin() + 7, tokens.end());
        std::vector<double> values;
        for (auto& token : rest) {
            while (!token.empty() && token.back() == ',') token.pop_back();
            if (token.empty()) continue;
            values.push_back(number(token));
        }
        if (values.size() < 2 || values.size() % 2 != 0) fail("curve needs (r, p) pairs");
        for (std::size_t k = 0; k + 1 < values.size(); k += 2) {
            curve.points.emplace_back(values[k], values[k + 1]);
        }
        subjective_lines_.push_back({owner, h, s, a, dest, std::move(curve)});
    }

    void parse_schedule(const std::vector<std::string>& tokens) {
        if (tokens[0] == "default") {
            if (tokens.size() != 3) fail("expected: default <agent> <action>");
            int g = agent(tokens[1]);
            scenario_.controllers[g].schedule.default_action = action(tokens[2]);
            has_default_.resize(scenario_.system.num_agents, false);
            has_default_[g] = true;
            return;
        }
        if (tokens[0] == "force") {
            if (tokens.size() != 5) fail("expected: force <agent> <t0> <t1> <action>");
            int g = agent(tokens[1]);
            scenario_.controllers[g].forced.push_back(
                {integer(tokens[2]), integer(tokens[3]), action(tokens[4])});
            return;
        }
        if (tokens.size() != 6 || tokens[0] != "rule") {
            fail("expected: rule <agent> <t0> <t1> <state|*> <action>");
        }
        int g = agent(tokens[1]);
        ScheduleEntry entry;
        entry.t_begin = integer(tokens[2]);
        entry.t_end = integer(tokens[3]);
        if (tokens[4] != "*") entry.state = state(tokens[4]);
        entry.action = action(tokens[5]);
        scenario_.controllers[g].schedule.entries.push_back(entry);
    }

    void parse_hyper(const std::vector<std::string>& tokens) {
        if (tokens.size() != 2) fail("expected: <key> <value>");
        Hyperparameters& hyper = scenario_.hyper;
        const std::string& key = tokens[0];
        if (key == "depth") {
            hyper.depth = integer(tokens[1]);
            if (hyper.depth < 0) fail("depth must be >= 0");
        } else if (key == "gamma") {
            hyper.gamma = number(tokens[1]);
            if (hyper.gamma < 0.0 || hyper.gamma > 1.0) fail("gamma must be in [0, 1]");
        } else if (key == "eta") {
            hyper.eta = number(tokens[1]);
            if (hyper.eta < 0.0) fail("eta must be >= 0");
        } else if (key == "delta") {
            hyper.delta = number(tokens[1]);
            if (hyper.delta < 0.0 || hyper.delta > 1.0) fail("delta must be in [0, 1]");
        } else if (key == "horizon") {
            hyper.horizon = integer(tokens[1]);
            if (hyper.horizon < 0) fail("horizon must be >= 0");
        } else if (key == "seed") {
            hyper.seed = static_cast<std::uint64_t>(std::stoull(tokens[1]));
        } else if (key == "scope") {
            if (tokens[1] == "literal") {
                hyper.scope = UpdateScope::literal;
            } else if (tokens[1] == "restricted") {
                hyper.scope = UpdateScope::restricted;
            } else {
                fail("scope must be 'literal' or 'restricted'");
            }
        } else {
            fail("unknown hyperparameter '" + key + "'");
        }
    }

    void apply_init(const std::vector<std::string>& tokens) {
        if (tokens[0] == "img") {
            if (tokens.size() != 5) fail("expected: img <owner> <h> <i> <value>");
            int owner = agent(tokens[1]);
            scenario_.knowledge[owner].image.set(agent(tokens[2]), agent(tokens[3]),
                                                 number(tokens[4]));
            return;
        }
        if (tokens[0] == "ad") {
            // ad <owner> <agent> <state> : <action> <p> [...]
            if (tokens.size() < 7 || tokens[4] != ":" || (tokens.size() - 5) % 2 != 0) {
                fail("expected: ad <owner> <agent> <state> : <action> <p> [...]");
            }
            int owner = agent(tokens[1]);
            int h = agent(tokens[2]);
            int s = state(tokens[3]);
            std::vector<double> row(scenario_.system.num_actions(), 0.0);
            for (std::size_t k = 5; k + 1 < tokens.size(); k += 2) {
                row[action(tokens[k])] = number(tokens[k + 1]);
            }
            scenario_.knowledge[owner].action_distribution.set_row(h, s, row);
            return;
        }
        fail("unknown init key '" + tokens[0] + "'");
    }

    void apply_track(const std::vector<std::string>& tokens) {
        TrackSpec& tracks = scenario_.tracks;
        if (tokens[0] == "observer") {
            if (tokens.size() != 2) fail("expected: observer <agent>");
            tracks.observer = agent(tokens[1]);
            observer_set_ = true;
        } else if (tokens[0] == "rep") {
            if (tokens.size() != 3) fail("expected: rep <g> <h>");
            tracks.reputation_pairs.emplace_back(agent(tokens[1]), agent(tokens[2]));
        } else if (tokens[0] == "ad") {
            if (tokens.size() != 4) fail("expected: ad <agent> <state> <action>");
            tracks.ad_entries.emplace_back(agent(tokens[1]), state(tokens[2]), action(tokens[3]));
        } else if (tokens[0] == "offers") {
            for (std::size_t k = 1; k < tokens.size(); ++k) {
                tracks.offer_actions.push_back(action(tokens[k]));
            }
        } else if (tokens[0] == "index") {
            for (std::size_t k = 1; k < tokens.size(); ++k) {
                tracks.index_actions.push_back(action(tokens[k]));
            }
        } else {
            fail("unknown track key '" + tokens[0] + "'");
        }
    }

    void finalize() {
        System& system = scenario_.system;
        if (system.num_agents == 0) throw ParseError(line_no_, "no agents declared");
        if (system.num_states == 0) throw ParseError(line_no_, "no states declared");

        for (const auto& [line, tokens] : counterpart_lines_) {
            line_no_ = line;
            system.counterpart_map.set(action(tokens[1]), action(tokens[2]));
        }

        if (!start_name_.empty()) {
            line_no_ = 0;
            scenario_.initial_state = state(start_name_);
        }

        scenario_.knowledge.reserve(system.num_agents);
        for (int g = 0; g < system.num_agents; ++g) {
            AgentKnowledge k;
            k.owner = {g};
            k.action_distribution =
                ActionDistribution(system.num_agents, system.num_states, system.num_actions());
            k.image = ImageFunction(system.num_agents);
            scenario_.knowledge.push_back(std::move(k));
        }
        for (auto& [owner, h, s, a, dest, curve] : subjective_lines_) {
            scenario_.knowledge[owner].subjective.set_curve(h, s, a, dest, std::move(curve));
        }
        for (const auto& [line, tokens] : init_lines_) {
            line_no_ = line;
            apply_init(tokens);
        }
        for (const auto& [line, tokens] : track_lines_) {
            line_no_ = line;
            apply_track(tokens);
        }
        if (!observer_set_) {
            for (int g = 0; g < system.num_agents; ++g) {
                if (scenario_.controllers[g].kind == ControllerKind::repnet) {
                    scenario_.tracks.observer = g;
                    break;
                }
            }
        }
    }

    std::istringstream in_;
    int line_no_ = 0;
    std::string section_;
    Scenario scenario_;
    std::string start_name_;
    std::vector<std::pair<int, std::vector<std::string>>> counterpart_lines_;
    std::vector<std::pair<int, std::vector<std::string>>> init_lines_;
    std::vector<std::pair<int, std::vector<std::string>>> track_lines_;
    std::vector<std::tuple<int, int, int, int, int, ReputationCurve>> subjective_lines_;
    std::vector<bool> has_default_;
    bool observer_set_ = false;
};

std::string format_number(double v) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.17g", v);
    return buffer;
}

}  // namespace

Scenario parse_scenario(const std::string& text, ValidationReport* report) {
    Parser parser(text);
    Scenario scenario = parser.run();
    ValidationReport local = validate_system(scenario.system, scenario.knowledge);
    if (report != nullptr) {
        *report = std::move(local);
    } else if (!local.ok()) {
        std::ostringstream msg;
        msg << "scenario fails validation:";
        for (const auto& v : local.violations) msg << "\n  " << v.location << ": " << v.message;
        throw ParseError(0, msg.str());
    }
    return scenario;
}

Scenario parse_scenario(const std::string& text) { return parse_scenario(text, nullptr); }

std::string serialize_scenario(const Scenario& scenario) {
    const System& system = scenario.system;
    std::ostringstream out;
    out << "repnet-scenario v1\n";
    if (!scenario.name.empty()) out << "name " << scenario.name << "\n";
    if (!scenario.description.empty()) out << "description " << scenario.description << "\n";

    out << "\n[agents]\n";
    for (int g = 0; g < system.num_agents; ++g) {
        out << "agent " << system.agent_names[g] << " "
            << (scenario.controllers[g].kind == ControllerKind::repnet ? "repnet" : "scripted")
            << "\n";
    }

    out << "\n[states]\n";
    for (const auto& name : system.state_names) out << "state " << name << "\n";
    out << "start " << system.state_names[scenario.initial_state] << "\n";

    out << "\n[actions]\n";
    for (int a = 0; a < system.num_actions(); ++a) {
        out << (system.action_kinds[a] == ActionKind::objective ? "objective " : "subjective ")
            << system.action_names[a] << "\n";
    }
    for (const auto& [obj, subj] : system.counterpart_map.entries()) {
        out << "counterpart " << system.action_names[obj] << " " << system.action_names[subj]
            << "\n";
    }

    out << "\n[impact]\n";
    for (const auto& [key, value] : system.impact.entries()) {
        auto [g, h, s, a] = key;
        out << "impact " << system.agent_names[g] << " " << system.agent_names[h] << " "
            << system.state_names[s] << " " << system.action_names[a] << " "
            << format_number(value) << "\n";
    }

    out << "\n[transitions]\n";
    for (const auto& [key, row] : system.transitions.rows()) {
        auto [h, s, a] = key;
        out << "ot " << system.agent_names[h] << " " << system.state_names[s] << " "
            << system.action_names[a] << " ->";
        for (int next = 0; next < static_cast<int>(row.size()); ++next) {
            if (row[next] != 0.0) {
                out << " " << system.state_names[next] << " " << format_number(row[next]);
            }
        }
        out << "\n";
    }

    out << "\n[subjective]\n";
    for (int owner = 0; owner < system.num_agents; ++owner) {
        for (const auto& [key, curve] : scenario.knowledge[owner].subjective.curves()) {
            auto [h, s, a, dest] = key;
            out << "st " << system.agent_names[owner] << " " << system.agent_names[h] << " "
                << system.state_names[s] << " " << system.action_names[a] << " "
                << system.state_names[dest] << " :";
            for (std::size_t k = 0; k < curve.points.size(); ++k) {
                out << (k == 0 ? " " : ", ") << format_number(curve.points[k].first) << " "
                    << format_number(curve.points[k].second);
            }
            out << "\n";
        }
    }

    out << "\n[schedule]\n";
    for (int g = 0; g < system.num_agents; ++g) {
        const ControllerSpec& controller = scenario.controllers[g];
        for (const auto& entry : controller.schedule.entries) {
            out << "rule " << system.agent_names[g] << " " << entry.t_begin << " " << entry.t_end
                << " " << (entry.state ? system.state_names[*entry.state] : "*") << " "
                << system.action_names[entry.action] << "\n";
        }
        for (const auto& forced : controller.forced) {
            out << "force " << system.agent_names[g] << " " << forced.t_begin << " "
                << forced.t_end << " " << system.action_names[forced.action] << "\n";
        }
        if (controller.kind == ControllerKind::scripted) {
            out << "default " << system.agent_names[g] << " "
                << system.action_names[controller.schedule.default_action] << "\n";
        }
    }

    out << "\n[init]\n";
    for (int owner = 0; owner < system.num_agents; ++owner) {
        const AgentKnowledge& k = scenario.knowledge[owner];
        for (int h = 0; h < system.num_agents; ++h) {
            for (int i = 0; i < system.num_agents; ++i) {
                if (h != i && k.image.at(h, i) != 0.0) {
                    out << "img " << system.agent_names[owner] << " " << system.agent_names[h]
                        << " " << system.agent_names[i] << " " << format_number(k.image.at(h, i))
                        << "\n";
                }
            }
        }
        const double uniform = 1.0 / system.num_actions();
        for (int h = 0; h < system.num_agents; ++h) {
            for (int s = 0; s < system.num_states; ++s) {
                auto row = k.action_distribution.row(h, s);
                if (std::ranges::all_of(row, [&](double p) { return p == uniform; })) continue;
                out << "ad " << system.agent_names[owner] << " " << system.agent_names[h] << " "
                    << system.state_names[s] << " :";
                for (int a = 0; a < system.num_actions(); ++a) {
                    if (row[a] != 0.0) {
                        out << " " << system.action_names[a] << " " << format_number(row[a]);
                    }
                }
                out << "\n";
            }
        }
    }

    out << "\n[track]\n";
    out << "observer " << system.agent_names[scenario.tracks.observer] << "\n";
    for (const auto& [g, h] : scenario.tracks.reputation_pairs) {
        out << "rep " << system.agent_names[g] << " " << system.agent_names[h] << "\n";
    }
    for (const auto& [h, s, a] : scenario.tracks.ad_entries) {
        out << "ad " << system.agent_names[h] << " " << system.state_names[s] << " "
            << system.action_names[a] << "\n";
    }
    if (!scenario.tracks.offer_actions.empty()) {
        out << "offers";
        for (int a : scenario.tracks.offer_actions) out << " " << system.action_names[a];
        out << "\n";
    }
    if (!scenario.tracks.index_actions.empty()) {
        out << "index";
        for (int a : scenario.tracks.index_actions) out << " " << system.action_names[a];
        out << "\n";
    }

    const Hyperparameters& hyper = scenario.hyper;
    out << "\n[hyper]\n";
    out << "depth " << hyper.depth << "\n";
    out << "gamma " << format_number(hyper.gamma) << "\n";
    out << "eta " << format_number(hyper.eta) << "\n";
    out << "delta " << format_number(hyper.delta) << "\n";
    out << "horizon " << hyper.horizon << "\n";
    out << "seed " << hyper.seed << "\n";
    out << "scope " << (hyper.scope == UpdateScope::literal ? "literal" : "restricted") << "\n";
    return out.str();
}

namespace {

std::string csv_number(double v) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.9g", v);
    return buffer;
}

std::string name_of(const std::vector<std::string>& names, int index) {
    if (index >= 0 && index < static_cast<int>(names.size())) return names[index];
    return std::to_string(index);
}

}  // namespace

std::size_t emit_trace_csv(const Trace& trace, const MetricSeries& metrics, std::ostream& out) {
    std::ostringstream buffer;
    buffer << "t,agent,action,state_before,state_after,root_value";
    for (const auto& [name, _] : metrics.per_step) buffer << "," << name;
    for (const auto& [name, _] : metrics.per_window) buffer << "," << name;
    buffer << "\n";

    for (const auto& record : trace.records) {
        buffer << record.t << "," << name_of(trace.agent_names, record.agent) << ","
               << name_of(trace.action_names, record.executed_action) << ","
               << name_of(trace.state_names, record.state_before) << ","
               << name_of(trace.state_names, record.state_after) << ",";
        if (record.plan) buffer << csv_number(record.plan->root_value);
        for (const auto& [_, series] : metrics.per_step) {
            buffer << ",";
            if (record.t < static_cast<int>(series.size())) buffer << csv_number(series[record.t]);
        }
        for (const auto& [_, series] : metrics.per_window) {
            buffer << ",";
            int window = record.t / kMetricWindow;
            if (window < static_cast<int>(series.size())) buffer << csv_number(series[window]);
        }
        buffer << "\n";
    }
    std::string text = buffer.str();
    out << text;
    return text.size();
}

std::size_t emit_metrics_csv(const MetricSeries& metrics, std::ostream& out) {
    std::ostringstream buffer;
    buffer << "series,t,value\n";
    for (const auto& [name, series] : metrics.per_step) {
        for (std::size_t t = 0; t < series.size(); ++t) {
            buffer << name << "," << t << "," << csv_number(series[t]) << "\n";
        }
    }
    for (const auto& [name, series] : metrics.per_window) {
        for (std::size_t w = 0; w < series.size(); ++w) {
            buffer << name << "," << w * kMetricWindow << "," << csv_number(series[w]) << "\n";
        }
    }
    std::string text = buffer.str();
    out << text;
    return text.size();
}

}  // namespace repnet
