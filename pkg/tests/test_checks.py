import pytest

from qg.checks import CHECKS, run_checks


def test_check_names_are_unique():
    names = [name for name, _ in CHECKS]
    assert len(names) == len(set(names))


@pytest.mark.parametrize("name,passed,error", run_checks(), ids=[n for n, _ in CHECKS])
def test_worked_example(name, passed, error):
    assert passed, error or name
