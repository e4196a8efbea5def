import doctest
from pathlib import Path

import htgroups

ROOT = Path(__file__).resolve().parents[1]


def test_readme_examples():
    result = doctest.testfile(str(ROOT / "README.md"), module_relative=False)
    assert result.attempted > 0 and result.failed == 0


def test_package_docstring_example():
    result = doctest.testmod(htgroups)
    assert result.attempted > 0 and result.failed == 0
