import pathlib

import pytest

import repnet

EXPERIMENTS = pathlib.Path(__file__).resolve().parents[2] / "experiments"


@pytest.fixture(scope="module")
def scenario():
    text = (EXPERIMENTS / "exp1_subjective.scn").read_text()
    return repnet.parse_scenario(text)


def test_parse_exposes_names(scenario):
    assert scenario.name == "trading-subjective"
    assert scenario.agent_names == ["A", "B"]
    assert "offer" in scenario.action_names
    assert scenario.state_index("s0") == scenario.initial_state


def test_validate_is_clean(scenario):
    assert repnet.validate(scenario) == []


def test_parse_rejects_garbage():
    with pytest.raises(repnet.ScenarioParseError):
        repnet.parse_scenario("not a scenario\n")


def test_serialize_round_trip(scenario):
    text = repnet.serialize_scenario(scenario)
    again = repnet.parse_scenario(text)
    assert repnet.serialize_scenario(again) == text


def test_image_update():
    assert repnet.image_update(0.5, 0.5) == pytest.approx(0.75)
    assert repnet.image_update(-0.5, -0.5) == pytest.approx(-0.75)


def test_plan_returns_q_values(scenario):
    result = repnet.plan(scenario, scenario.agent_index("A"), scenario.initial_state)
    assert result.chosen_action in range(len(scenario.action_names))
    assert result.q_values[result.chosen_action] == pytest.approx(result.root_value)


def test_run_is_deterministic(scenario):
    first = repnet.run(scenario)
    second = repnet.run(scenario)
    assert first["trace_csv"] == second["trace_csv"]
    assert first["metrics_csv"] == second["metrics_csv"]
    assert len(first["per_step"]["rep[A->A]"]) == scenario.hyper.horizon
    assert "offer_frequency" in first["per_window"]


def test_hyper_overrides(scenario):
    hyper = repnet.Hyperparameters()
    hyper.horizon = 5
    hyper.seed = 1
    out = repnet.run(scenario, hyper)
    assert len(out["per_step"]["rep[A->A]"]) == 5
