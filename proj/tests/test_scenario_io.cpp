#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "repnet/scenario.hpp"
#include "repnet/simulator.hpp"

using namespace repnet;

namespace {

const char* kTradingText = R"(repnet-scenario v1
name mini-trading
description two-agent offer loop

[agents]
agent A repnet
agent B scripted

[states]
state s0
state s1
state s_a
state s_r
start s0

[actions]
objective offer
objective wait
objective accept
objective refuse
subjective wait_s
counterpart wait wait_s

[impact]
impact A B s_a * 0.5
impact A B s_r * -0.5
impact A A s0 offer 0.05

[transitions]
ot A s0 offer -> s1 1
ot A s0 wait -> s0 1
ot A s1 wait -> s1 1
ot A s_a wait -> s0 1
ot A s_r wait -> s0 1
ot B s1 accept -> s_a 1
ot B s1 refuse -> s_r 1
ot B s0 wait -> s0 1
ot B s_a wait -> s_a 1
ot B s_r wait -> s_r 1

[subjective]
st A A s1 wait_s s_a : 0.1 0.111, 0.9 0.2
st A A s1 wait_s s_r : 0.1 0.2, 0.9 0.111

[schedule]
rule B 0 20 s1 refuse
rule B 20 80 s1 accept
default B wait

[init]
img A A B 0.3
ad A B s1 : accept 0.5 refuse 0.5

[track]
observer A
rep A A
ad B s1 accept
offers offer
index offer wait

[hyper]
seed 7
horizon 10
)";

}  // namespace

TEST_CASE("parsing the trading scenario") {
    Scenario sc = parse_scenario(kTradingText);
    CHECK(sc.name == "mini-trading");
    CHECK(sc.description == "two-agent offer loop");
    CHECK(sc.system.num_agents == 2);
    CHECK(sc.system.num_states == 4);
    CHECK(sc.system.num_actions() == 5);
    CHECK(sc.system.action_kinds[4] == ActionKind::subjective);
    CHECK(sc.system.counterpart_map.lookup(sc.action_index("wait")) ==
          sc.action_index("wait_s"));
    CHECK(sc.initial_state == sc.state_index("s0"));
    CHECK(sc.controllers[0].kind == ControllerKind::repnet);
    CHECK(sc.controllers[1].kind == ControllerKind::scripted);
    CHECK(sc.controllers[1].schedule.entries.size() == 2);

    SUBCASE("wildcard impact covers every action") {
        int s_a = sc.state_index("s_a");
        for (int a = 0; a < sc.system.num_actions(); ++a) {
            CHECK(sc.system.impact.get(0, 1, s_a, a) == 0.5);
        }
    }
    SUBCASE("init overrides are applied") {
        CHECK(sc.knowledge[0].image.at(0, 1) == 0.3);
        CHECK(sc.knowledge[0].action_distribution.at(1, sc.state_index("s1"),
                                                     sc.action_index("accept")) == 0.5);
        // Unlisted rows stay uniform.
        CHECK(sc.knowledge[0].action_distribution.at(1, 0, 0) == doctest::Approx(0.2));
    }
    SUBCASE("omitted hyperparameters take the standard defaults") {
        CHECK(sc.hyper.depth == 3);
        CHECK(sc.hyper.gamma == 0.7);
        CHECK(sc.hyper.eta == 0.1);
        CHECK(sc.hyper.delta == 0.5);
        CHECK(sc.hyper.seed == 7);
        CHECK(sc.hyper.horizon == 10);
        CHECK(sc.hyper.scope == UpdateScope::restricted);
    }
    SUBCASE("track selections resolve to indices") {
        CHECK(sc.tracks.observer == 0);
        REQUIRE(sc.tracks.reputation_pairs.size() == 1);
        CHECK(sc.tracks.reputation_pairs[0] == std::pair<int, int>{0, 0});
        CHECK(sc.tracks.offer_actions == std::vector<int>{sc.action_index("offer")});
    }
}

TEST_CASE("parser rejects malformed input") {
    SUBCASE("missing header") {
        CHECK_THROWS_AS((void)parse_scenario("[agents]\nagent A repnet\n"), ParseError);
    }
    SUBCASE("unknown section") {
        CHECK_THROWS_AS((void)parse_scenario("repnet-scenario v1\n[bogus]\n"), ParseError);
    }
    SUBCASE("unknown keyword inside a section") {
        std::string text = kTradingText;
        text += "\n[hyper]\nwarp 9\n";
        CHECK_THROWS_AS((void)parse_scenario(text), ParseError);
    }
    SUBCASE("unknown name reports its line") {
        std::string text = kTradingText;
        text += "\n[impact]\nimpact A Z s0 offer 0.1\n";
        try {
            (void)parse_scenario(text);
            CHECK(false);
        } catch (const ParseError& e) {
            CHECK(e.line > 0);
            CHECK(std::string(e.what()).find("Z") != std::string::npos);
        }
    }
    SUBCASE("non-stochastic transition row is a semantic error") {
        std::string text = kTradingText;
        text += "\n[transitions]\not A s1 offer -> s1 0.8\n";
        CHECK_THROWS_AS((void)parse_scenario(text), ParseError);
        ValidationReport report;
        (void)parse_scenario(text, &report);
        REQUIRE_FALSE(report.ok());
        bool named = false;
        for (const auto& v : report.violations) {
            if (v.location.find("s1") != std::string::npos) named = true;
        }
        CHECK(named);
    }
}

TEST_CASE("serialize/parse round trip is stable") {
    Scenario sc = parse_scenario(kTradingText);
    std::string once = serialize_scenario(sc);
    Scenario again = parse_scenario(once);
    CHECK(serialize_scenario(again) == once);
    // The re-parsed scenario behaves identically.
    Trace a = run_episode(sc, sc.hyper);
    Trace b = run_episode(again, again.hyper);
    REQUIRE(a.records.size() == b.records.size());
    for (std::size_t i = 0; i < a.records.size(); ++i) {
        CHECK(a.records[i].executed_action == b.records[i].executed_action);
        CHECK(a.records[i].state_after == b.records[i].state_after);
    }
}

TEST_CASE("trace CSV emission") {
    Scenario sc = parse_scenario(kTradingText);
    Trace trace = run_episode(sc, sc.hyper);
    MetricSeries metrics = derive_metrics(trace);

    SUBCASE("an empty trace emits only the header") {
        Trace empty;
        empty.tracks = sc.tracks;
        std::ostringstream out;
        emit_trace_csv(empty, derive_metrics(empty), out);
        std::string text = out.str();
        CHECK(text.find("t,agent,action,state_before,state_after,root_value") == 0);
        CHECK(std::count(text.begin(), text.end(), '\n') == 1);
    }
    SUBCASE("one data row per record, constant column count") {
        std::ostringstream out;
        std::size_t bytes = emit_trace_csv(trace, metrics, out);
        std::string text = out.str();
        CHECK(bytes == text.size());
        std::istringstream lines(text);
        std::string line;
        REQUIRE(std::getline(lines, line));
        auto columns = [](const std::string& l) {
            return std::count(l.begin(), l.end(), ',') + 1;
        };
        auto expected = columns(line);
        int rows = 0;
        while (std::getline(lines, line)) {
            CHECK(columns(line) == expected);
            ++rows;
        }
        CHECK(rows == 20);  // 10 steps x 2 agents
    }
    SUBCASE("scripted turns have a blank root value") {
        std::ostringstream out;
        emit_trace_csv(trace, metrics, out);
        std::istringstream lines(out.str());
        std::string line;
        std::getline(lines, line);
        std::getline(lines, line);  // t=0, agent A (planner)
        CHECK(line.find(",,") == std::string::npos);
        std::getline(lines, line);  // t=0, agent B (scripted)
        CHECK(line.find("B,") != std::string::npos);
        CHECK(line.find(",,") != std::string::npos);
    }
    SUBCASE("repeated emission is byte-identical") {
        std::ostringstream a, b;
        emit_trace_csv(trace, metrics, a);
        emit_trace_csv(trace, metrics, b);
        CHECK(a.str() == b.str());
    }
    SUBCASE("metrics CSV is long-format") {
        std::ostringstream out;
        emit_metrics_csv(metrics, out);
        std::istringstream lines(out.str());
        std::string line;
        REQUIRE(std::getline(lines, line));
        CHECK(line == "series,t,value");
        int rows = 0;
        while (std::getline(lines, line)) ++rows;
        // rep[A->A]: 10, ad[B,s1,accept]: 10, offer_frequency: 2, average_action: 2.
        CHECK(rows == 24);
    }
}

TEST_CASE("command line interface") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "repnet_cli_test";
    fs::create_directories(dir);
    fs::path scenario_path = dir / "mini.scn";
    {
        std::ofstream out(scenario_path);
        out << kTradingText;
    }
    auto run_cli = [](std::vector<std::string> args) {
        std::vector<char*> argv;
        args.insert(args.begin(), "repnet");
        for (auto& a : args) argv.push_back(a.data());
        return cli_main(static_cast<int>(argv.size()), argv.data());
    };

    SUBCASE("validate accepts the bundled text") {
        CHECK(run_cli({"validate", scenario_path.string()}) == 0);
    }
    SUBCASE("validate rejects a broken scenario with exit 1") {
        fs::path bad = dir / "bad.scn";
        std::ofstream out(bad);
        out << kTradingText << "\n[transitions]\not A s1 offer -> s1 0.8\n";
        out.close();
        CHECK(run_cli({"validate", bad.string()}) == 1);
    }
    SUBCASE("missing file exits 2") {
        CHECK(run_cli({"run", (dir / "nope.scn").string()}) == 2);
    }
    SUBCASE("run writes deterministic outputs") {
        fs::path out1 = dir / "out1";
        fs::path out2 = dir / "out2";
        REQUIRE(run_cli({"run", scenario_path.string(), "--steps", "10", "--seed", "3", "--out",
                         out1.string()}) == 0);
        REQUIRE(run_cli({"run", scenario_path.string(), "--steps", "10", "--seed", "3", "--out",
                         out2.string()}) == 0);
        auto slurp = [](const fs::path& p) {
            std::ifstream in(p, std::ios::binary);
            std::ostringstream buffer;
            buffer << in.rdbuf();
            return buffer.str();
        };
        std::string trace1 = slurp(out1 / "trace.csv");
        CHECK_FALSE(trace1.empty());
        CHECK(trace1 == slurp(out2 / "trace.csv"));
        CHECK(slurp(out1 / "metrics.csv") == slurp(out2 / "metrics.csv"));
    }
    SUBCASE("plan prints q-values matching the library") {
        CHECK(run_cli({"plan", scenario_path.string(), "--state", "s1", "--depth", "3"}) == 0);
    }
    fs::remove_all(dir);
}
