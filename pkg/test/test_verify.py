import json
import math
from pathlib import Path

import numpy as np
import pytest

from bargfock.config import Command, RunConfig
from bargfock.errors import InvalidArgumentError
from bargfock.fock.norms import equivalence_grid, norm_equivalence_report
from bargfock.verify import SuiteReport, get_all_suites, run_suite, suite_names
from bargfock.verify.functionals import EQUIVALENCE_DEGREE, EQUIVALENCE_FAMILY, equivalence_family, exponential_taylor
from bargfock.verify.report import CheckResult, at_least, at_most, holds

FIXTURES = Path(__file__).parent / "fixtures"


def config(**fields) -> RunConfig:
    return RunConfig(command=Command.VERIFY, **fields)


def test_every_suite_is_registered():
    assert suite_names() == sorted([
        "covering", "embeddings", "hermite-map", "isometry", "narrow", "norm-equivalence",
        "oscillator", "reproducing", "toeplitz-intertwine", "windowtransf",
    ])
    assert all(callable(suite) for suite in get_all_suites().values())


def test_unknown_suite():
    with pytest.raises(InvalidArgumentError, match="covering"):
        run_suite("nosuchsuite", config())


def test_check_helpers():
    assert at_most("a", 1e-7, 1e-6).passed
    assert not at_most("a", math.nan, 1e-6).passed
    assert at_least("b", 4.0, 4.0).passed
    assert not holds("c", True, math.nan, 1.0).passed


def test_report_orders_checks_by_name():
    report = SuiteReport(suite="s", checks=[
        CheckResult(name="b", passed=True, measured=0.0, tolerance=1.0),
        CheckResult(name="a", passed=False, measured=2.0, tolerance=1.0),
    ])
    assert [c.name for c in report.checks] == ["a", "b"]
    assert not report.passed
    assert [c.name for c in report.failures()] == ["a"]
    data = json.loads(report.to_json())
    assert data["schema"] == 1
    assert data["checks"][0] == {"name": "a", "passed": False, "measured": 2.0, "tolerance": 1.0}


def test_covering_suite():
    report = run_suite("covering", config(r_max=6.0))
    assert report.passed
    overlap = next(c for c in report.checks if c.name == "max_overlap")
    assert overlap.measured <= 64


def test_reports_are_deterministic():
    first = run_suite("narrow", config(seed=11)).to_json()
    second = run_suite("narrow", config(seed=11)).to_json()
    assert first == second


def test_narrow_suite():
    assert run_suite("narrow", config()).passed


def test_norm_equivalence_against_frozen_family():
    frozen = json.loads((FIXTURES / "norm_equivalence.json").read_text())
    assert frozen["family_size"] == EQUIVALENCE_FAMILY
    assert frozen["max_degree"] == EQUIVALENCE_DEGREE
    report = run_suite("norm-equivalence", config(seed=frozen["seed"]))
    assert report.passed
    for check in report.checks:
        if check.name.startswith("band_"):
            assert check.measured <= frozen["band"]
        if check.name.startswith("drift_"):
            assert check.measured <= frozen["drift"]


def test_norm_equivalence_ratios_match_frozen_values():
    frozen = json.loads((FIXTURES / "norm_equivalence.json").read_text())
    family = equivalence_family(np.random.default_rng(frozen["seed"]))
    assert len(family) == EQUIVALENCE_DEGREE + 1 + EQUIVALENCE_FAMILY
    grid = equivalence_grid(1)
    for entry in frozen["ratios"]:
        assert (entry["p"], entry["q"]) == (2, 2)
        ratios = [norm_equivalence_report(F, entry["N"], grid).ratio for F in family]
        for measured, stored in ((min(ratios), entry["min"]), (max(ratios), entry["max"])):
            assert abs(measured - stored) <= frozen["drift"] * stored
            assert measured == pytest.approx(stored, rel=1e-5)


@pytest.mark.parametrize("name", suite_names())
def test_every_suite_passes_with_defaults(name):
    report = run_suite(name, config())
    assert report.passed, [c.name for c in report.failures()]


def test_exponential_taylor():
    F = exponential_taylor(0.3, 4)
    assert F.max_degree == 4
    assert F.evaluate(1.0) == pytest.approx(sum(0.3 ** k / math.factorial(k) for k in range(5)))
