from __future__ import annotations

import pytest

from zetacert.params import BetaCollection, ZetaCollection

# criterion number -> (passed, detail); filled by test_acceptance.py
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


@pytest.fixture(scope="session")
def toy_zeta() -> ZetaCollection:
    return ZetaCollection.toy()


@pytest.fixture(scope="session")
def toy_beta() -> BetaCollection:
    return BetaCollection.toy()


@pytest.fixture(scope="session")
def ref_zeta() -> ZetaCollection:
    return ZetaCollection.reference()


@pytest.fixture(scope="session")
def ref_beta() -> BetaCollection:
    return BetaCollection.reference()


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}")
