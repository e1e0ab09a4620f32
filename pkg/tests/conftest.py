from __future__ import annotations

from pathlib import Path

import pytest

import cotiltkit
from cotiltkit.exactlin import GF, QQ
from cotiltkit.fileformats import load_fixtures, load_module

DATA = Path(cotiltkit.__file__).resolve().parent / "data"
F1009 = GF(1009)


def data_path(*parts: str) -> Path:
    return DATA.joinpath(*parts)


@pytest.fixture(scope="session")
def a4():
    alg, mods, _ = load_fixtures(data_path("fixtures", "a4.json"), QQ)
    return alg, {m.name: m for m in mods}, mods


@pytest.fixture(scope="session")
def nakayama():
    alg, mods, _ = load_fixtures(data_path("fixtures", "nakayama-3-4.json"), QQ)
    return alg, {m.name: m for m in mods}, mods


@pytest.fixture(scope="session")
def a4_dlambda(a4):
    return load_module(data_path("modules", "a4-dlambda.json"), QQ, a4[0])


# --- acceptance summary -------------------------------------------------------------------

_ACCEPTANCE: dict[int, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): numbered acceptance criterion")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    marker = getattr(report, "acceptance", None)
    if marker is not None:
        n, title = marker
        _ACCEPTANCE[n] = (title, "PASS" if report.passed else "FAIL")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    m = item.get_closest_marker("acceptance")
    if m is not None:
        rep.acceptance = (m.args[0], m.args[1])


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_ACCEPTANCE):
        title, verdict = _ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n}: {verdict}  {title}")
