#!/usr/bin/env python3
"""
Hopf-Lax FEM Test Runner

Runs the unit suites, the acceptance-scale integration suite, or both.
"""

import argparse
import sys
import unittest
from pathlib import Path

ROOT = Path(__file__).parent.parent
sys.path.insert(0, str(ROOT))

INTEGRATION_PATTERN = "test_integration.py"


def _run(suite: unittest.TestSuite) -> int:
    result = unittest.TextTestRunner(verbosity=2).run(suite)
    return 0 if result.wasSuccessful() else 1


def _flatten(suite):
    for item in suite:
        if isinstance(item, unittest.TestSuite):
            yield from _flatten(item)
        else:
            yield item


def discover(pattern: str = "test_*.py") -> unittest.TestSuite:
    return unittest.TestLoader().discover(str(ROOT / "tests"), pattern=pattern, top_level_dir=str(ROOT))


def run_tests() -> int:
    return _run(discover())


def run_unit_tests() -> int:
    """Everything except the integration module."""
    unit = unittest.TestSuite(
        test for test in _flatten(discover())
        if not type(test).__module__.endswith("test_integration")
    )
    return _run(unit)


def run_integration_tests() -> int:
    return _run(discover(INTEGRATION_PATTERN))


def main():
    parser = argparse.ArgumentParser(description="Run Hopf-Lax FEM tests")
    group = parser.add_mutually_exclusive_group()
    group.add_argument("--unit", action="store_true", help="Run unit tests only")
    group.add_argument("--integration", action="store_true", help="Run integration tests only")
    args = parser.parse_args()

    if args.unit:
        sys.exit(run_unit_tests())
    if args.integration:
        sys.exit(run_integration_tests())
    sys.exit(run_tests())


if __name__ == "__main__":
    main()
