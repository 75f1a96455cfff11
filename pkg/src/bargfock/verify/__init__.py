"""
Verification suites: each suite measures a family of identities and reports
every measured value next to its tolerance.
"""
import logging
from typing import Callable

from bargfock.config import RunConfig
from bargfock.errors import InvalidArgumentError
from bargfock.verify import functionals, phase, transforms
from bargfock.verify.report import CheckResult, SuiteReport

logger = logging.getLogger(__name__)

Suite = Callable[[RunConfig], list[CheckResult]]


def get_all_suites() -> dict[str, Suite]:
    """Every registered suite by name"""
    return {**transforms.get_suites(), **phase.get_suites(), **functionals.get_suites()}


def suite_names() -> list[str]:
    return sorted(get_all_suites())


def run_suite(name: str, config: RunConfig) -> SuiteReport:
    """
    Run one suite.

    Raises:
        InvalidArgumentError: unknown suite name
    """
    suites = get_all_suites()
    if name not in suites:
        raise InvalidArgumentError(f"unknown suite {name!r}; known suites: {', '.join(sorted(suites))}")
    logger.info("running suite %s with seed %d", name, config.seed)
    report = SuiteReport(suite=name, checks=suites[name](config))
    for check in report.failures():
        logger.warning("%s/%s failed: measured %.3e, tolerance %.3e", name, check.name, check.measured, check.tolerance)
    return report


__all__ = ['CheckResult', 'SuiteReport', 'get_all_suites', 'run_suite', 'suite_names']
