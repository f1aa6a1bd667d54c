from __future__ import annotations

import pytest

from posturekit import ingest

from helpers import make_model


@pytest.fixture(scope="session")
def sphere():
    """The bundled example model (exercised read-only)."""
    return ingest.load_bundled_model()


@pytest.fixture(scope="session")
def sphere_path():
    return str(ingest.bundled_model_path())


@pytest.fixture
def triangle():
    """Three-asset partial model: nodes, infrapod server, infrapod DB,
    all pairwise bidirectional; H3 targets the DB."""
    return make_model(
        assets=("nodes", "infrapod-server", "infrapod-db"),
        links=(
            ("l-n-is", "nodes", "infrapod-server"),
            ("l-n-db", "nodes", "infrapod-db"),
            ("l-is-db", "infrapod-server", "infrapod-db"),
        ),
        entries=("nodes",),
        targets=("infrapod-db",),
        hazard="H3",
        protections=(
            ("ssh-infrapod", "infrapod-server", "nodes"),
            ("db-auth", "infrapod-db"),
            ("db-encryption", "infrapod-db", "infrapod-server"),
        ),
        profile_id="researcher",
    )


# ---------------------------------------------------------------------------
# Acceptance summary: one PASS/FAIL line per criterion at the end of the
# run, regardless of output capturing.
# ---------------------------------------------------------------------------

_acceptance_outcomes: dict[str, str] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    failed_setup = report.when == "setup" and report.outcome != "passed"
    if report.when == "call" or failed_setup:
        name = report.nodeid.split("::")[-1]
        _acceptance_outcomes[name] = report.outcome


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _acceptance_outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _acceptance_outcomes.items():
        verdict = {"passed": "PASS", "skipped": "SKIP"}.get(outcome, "FAIL")
        terminalreporter.write_line(f"ACCEPTANCE {name}: {verdict}")
