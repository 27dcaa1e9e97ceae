import json
import random
from pathlib import Path

import pytest

from multinet.corpus import component_corpus, random_components, random_sites
from multinet.expansion import sites_between
from multinet.serialization import structure_from_json

SAMPLES = Path(__file__).resolve().parent.parent / "samples"

_acceptance: dict[int, tuple[bool, str]] = {}


def load_sample(name: str):
    return structure_from_json(json.loads((SAMPLES / name).read_text()))


def sample_text(name: str) -> str:
    return (SAMPLES / name).read_text()


@pytest.fixture
def sample():
    return load_sample


@pytest.fixture
def acceptance():
    def record(number: int, ok: bool, detail: str = ""):
        _acceptance[number] = (ok, detail)
        return ok

    return record


def small_sites():
    """Exhaustive small sites and 10,000 random ones."""
    pool = component_corpus()
    exhaustive = [x for h in pool for g in pool for x in sites_between(h, g, 2)]
    rng = random.Random(20240611)
    rand = random_sites(rng, random_components(rng, 400), 10_000)
    return exhaustive, rand


@pytest.fixture(scope="session")
def expansion_sites():
    return small_sites()


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_acceptance):
        ok, detail = _acceptance[n]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {n}: {detail}")
