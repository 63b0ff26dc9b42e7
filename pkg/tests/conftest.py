from __future__ import annotations

from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from skewring.config import LabConfig

CORPUS = Path(__file__).resolve().parent.parent / "corpus"
CORPUS_NAMES = sorted(p.stem for p in CORPUS.glob("*.json"))

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def corpus_path(name: str) -> Path:
    return CORPUS / f"{name}.json"


def load_corpus(name: str) -> LabConfig:
    return LabConfig.load(corpus_path(name))


@pytest.fixture(scope="session")
def corpus():
    cache: dict[str, LabConfig] = {}

    def get(name: str) -> LabConfig:
        if name not in cache:
            cache[name] = load_corpus(name)
        return cache[name]

    return get


# ------------------------------------------------------------------ acceptance summary

_ACCEPTANCE: dict[int, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): one of the numbered acceptance criteria")


def pytest_collection_modifyitems(config, items):
    for item in items:
        mark = item.get_closest_marker("acceptance")
        if mark is not None:
            number, title = mark.args
            _ACCEPTANCE.setdefault(number, {"title": title, "outcomes": []})
            item.user_properties.append(("acceptance", number))


def pytest_runtest_logreport(report):
    number = dict(report.user_properties).get("acceptance")
    if number is None:
        return
    if report.when == "call" or report.outcome != "passed":
        _ACCEPTANCE[number]["outcomes"].append(report.outcome)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        entry = _ACCEPTANCE[number]
        outcomes = entry["outcomes"]
        if not outcomes:
            status = "NOT RUN"
        elif all(o == "passed" for o in outcomes):
            status = "PASS"
        else:
            status = "FAIL"
        terminalreporter.write_line(f"[{status}] {number:>2}. {entry['title']}")
