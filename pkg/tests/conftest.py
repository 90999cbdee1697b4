from __future__ import annotations

import functools

import pytest

from trichannel.coloring import vertex_to_edge
from trichannel.corpus import CORPUS_NAMES, corpus_graph
from trichannel.oracle import brute_force_4color
from trichannel.triangulation import random_triangulation

_acceptance = {}


@functools.lru_cache(maxsize=None)
def oracle_coloring(t):
    vc = brute_force_4color(t)
    assert vc is not None
    return vc, vertex_to_edge(t, vc)


@functools.lru_cache(maxsize=None)
def random_corpus(count: int, n_min: int, n_max: int, seed: int = 1):
    """``count`` random triangulations with sizes spread over [n_min, n_max]."""
    out = []
    for i in range(count):
        n = n_min + (i * 7919) % (n_max - n_min + 1)
        out.append(random_triangulation(n, seed * 100_003 + i))
    return tuple(out)


@pytest.fixture(params=CORPUS_NAMES)
def corpus(request):
    return corpus_graph(request.param)


@pytest.fixture(scope="session")
def small_colored():
    """Thirty oracle-colored random triangulations, 8 <= n <= 40."""
    return [(t, oracle_coloring(t)[1]) for t in random_corpus(30, 8, 40)]


def pytest_runtest_logreport(report):
    if "test_acceptance.py" in report.nodeid and report.when == "call":
        _acceptance[report.nodeid] = report
    elif "test_acceptance.py" in report.nodeid and report.failed:
        _acceptance[report.nodeid] = report


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for nodeid, rep in sorted(_acceptance.items(), key=lambda kv: _criterion_number(kv[0])):
        name = nodeid.split("::")[-1]
        status = "PASS" if rep.passed else "FAIL"
        detail = dict(rep.user_properties).get("detail", "")
        terminalreporter.write_line(f"{status}  {name}  {detail}".rstrip())


def _criterion_number(nodeid: str) -> int:
    name = nodeid.split("::")[-1]
    digits = "".join(ch for ch in name.split("_")[1] if ch.isdigit()) if name.count("_") else ""
    return int(digits) if digits else 99
