import json

import pytest

from stratachow.errors import UnknownScenario
from stratachow.scenarios import run_scenario, scenario_names

FAST = [
    "pipeline-glue",
    "stratum-vanishing",
    "z2-independence",
    "m3bar-contains-m3tilde",
    "generator-elimination",
    "relation-audit",
    "c9-derivation",
    "faber-roundtrip",
    "appendix-c-suite",
    "an-class-restrictions",
    "reconstruct-classes",
]


def test_names():
    assert sorted(scenario_names()) == sorted(FAST)


@pytest.mark.parametrize("name", FAST)
def test_scenario_passes(name):
    report = run_scenario(name)
    failed = [s.name for s in report.steps if not s.passed]
    assert report.passed, failed


def test_report_serialises():
    report = run_scenario("z2-independence")
    payload = json.loads(json.dumps(report.to_json()))
    assert payload["pass"] is True
    assert payload["steps"][0]["witness"]
    assert "z2-independence" in report.to_text()


def test_unknown_scenario():
    with pytest.raises(UnknownScenario):
        run_scenario("missing")


def test_oracle_cross_check_is_recorded():
    report = run_scenario("z2-independence", oracle=True)
    assert all(s.oracle is not None for s in report.steps)
    assert all(s.oracle for s in report.steps)
