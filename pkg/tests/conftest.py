import numpy as np
import pytest

from spiralvar.arc import SampledArc

# Test arcs live on a dyadic lattice (coordinates are multiples of 1/32,
# parameters multiples of 1/16).  Lattice points keep every pairwise
# distance well above the rounding noise of the accumulated variation
# values, which is what lets the exact (tolerance-free) comparisons in the
# property suites stay meaningful.


def lattice_arc(seed: int, max_n: int = 200) -> SampledArc:
    rng = np.random.default_rng(seed)
    n = int(rng.integers(3, max_n + 1))
    steps = rng.integers(-8, 9, size=(n - 1, 2))
    steps[np.all(steps == 0, axis=1)] = (1, 0)
    pts = np.vstack([[0, 0], np.cumsum(steps, axis=0)]) / 32.0
    t = np.cumsum(rng.integers(1, 5, size=n)) / 16.0
    return SampledArc(t, pts.astype(float))


def tiny_arc(seed: int, max_n: int = 12) -> SampledArc:
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, max_n + 1))
    pts = rng.integers(-64, 65, size=(n, 2)) / 16.0
    for i in range(1, n):
        if pts[i, 0] == pts[i - 1, 0] and pts[i, 1] == pts[i - 1, 1]:
            pts[i, 0] += 1 / 16.0
    t = np.cumsum(rng.integers(1, 4, size=n)) / 8.0
    return SampledArc(t, pts.astype(float))


@pytest.fixture
def seg8() -> SampledArc:
    """Unit segment sampled at x = i/8, a fully hand-checkable arc."""
    x = np.arange(9) / 8.0
    return SampledArc(x.copy(), np.column_stack([x, np.zeros(9)]))


# one pass/fail line per acceptance criterion at the end of the run
_ACCEPTANCE: dict[int, str] = {}


def record_acceptance(num: int, detail: str) -> None:
    _ACCEPTANCE[num] = detail


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    outcomes = {}
    for status in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(status, []):
            name = getattr(rep, "nodeid", "")
            if "test_acceptance.py::test_criterion_" in name:
                num = int(name.rsplit("_", 1)[1].split("[")[0])
                outcomes[num] = "PASS" if status == "passed" else "FAIL"
    terminalreporter.write_sep("=", "acceptance summary")
    for num in sorted(_ACCEPTANCE):
        verdict = outcomes.get(num, "NOT RUN")
        terminalreporter.write_line(f"criterion {num}: {verdict} — {_ACCEPTANCE[num]}")
