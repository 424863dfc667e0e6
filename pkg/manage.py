#!/usr/bin/env python
"""Command-line utility: `test` runs the unittest suites, anything else goes to the CLI."""
import sys
import unittest
from pathlib import Path

BASE_DIR = Path(__file__).resolve().parent
APPS = ("atoms", "radiative", "oracle", "boundary_qed")


def run_tests(labels) -> int:
    loader = unittest.TestLoader()
    suite = unittest.TestSuite()
    for app in labels or APPS:
        suite.addTests(loader.discover(str(BASE_DIR / app), pattern="tests.py", top_level_dir=str(BASE_DIR)))
    result = unittest.TextTestRunner(verbosity=2).run(suite)
    return 0 if result.wasSuccessful() else 1


def main():
    """Run administrative tasks."""
    sys.path.insert(0, str(BASE_DIR))
    argv = sys.argv[1:]
    if argv and argv[0] == "test":
        return run_tests(argv[1:])

    from boundary_qed.cli import main as cli_main

    return cli_main(argv)


if __name__ == '__main__':
    sys.exit(main())
