import warnings

import pytest

from egnh import datasets, inference

_ACCEPTANCE = {}


def record(number: int, passed: bool, detail: str):
    _ACCEPTANCE[number] = (passed, detail)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        passed, detail = _ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if passed else 'FAIL'}  {detail}")


@pytest.fixture(scope="session")
def aarset():
    return datasets.aarset()


@pytest.fixture(scope="session")
def kevlar():
    return datasets.kevlar()


def _quiet_fit(s, **kw):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return inference.fit(s, **kw)


@pytest.fixture(scope="session")
def aarset_fit(aarset):
    return _quiet_fit(aarset)


@pytest.fixture(scope="session")
def kevlar_fit(kevlar):
    return _quiet_fit(kevlar)
