from __future__ import annotations

import pytest

from helpers import make_graph


def pytest_runtest_logreport(report):
    # One visible pass/fail line per acceptance criterion.
    if "test_acceptance" in report.nodeid and report.when == "call":
        outcome = "PASS" if report.passed else "FAIL"
        name = report.nodeid.split("::")[-1]
        print(f"\n[acceptance] {outcome} {name}", flush=True)


@pytest.fixture
def demo_graph():
    """Eight clean works (6 publications, 2 datasets), snapshot year 2021."""
    works = [
        ("10.9000/alpha", 2018, "publication", "open"),
        ("10.9000/beta", 2019, "publication", "closed"),
        ("10.9000/gamma", 2020, "publication", "open"),
        ("10.9000/delta", 2020, "dataset", "unknown"),
        ("10.9000/epsilon", 2021, "publication", "open"),
        ("10.9000/zeta", 2021, "publication", "closed"),
        ("10.9000/eta", 2021, "dataset", "open"),
        ("10.9000/theta", 2022, "publication", "unknown"),
    ]
    edges = [
        ("10.9000/gamma", "10.9000/alpha"),
        ("10.9000/gamma", "10.9000/beta"),
        ("10.9000/epsilon", "10.9000/alpha"),
        ("10.9000/epsilon", "10.9000/gamma"),
        ("10.9000/zeta", "10.9000/gamma"),
        ("10.9000/zeta", "10.9000/delta"),
        ("10.9000/eta", "10.9000/delta"),
        ("10.9000/theta", "10.9000/epsilon"),
        ("10.9000/theta", "10.9000/gamma"),
    ]
    return make_graph(works, edges, dataset_year=2021)
