from __future__ import annotations

from fractions import Fraction as F

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from symcut.valuation import Subcake, Valuation

settings.register_profile(
    "symcut", deadline=None, suppress_health_check=[HealthCheck.too_slow], max_examples=60
)
settings.load_profile("symcut")


# Independent oracles: straight segment sums, no cdf tables or bisection.


def integrate(v: Valuation, a, b) -> F:
    a, b = F(a), F(b)
    total = F(0)
    for lo, hi, d in v.segments:
        left, right = max(lo, a), min(hi, b)
        if left < right:
            total += d * (right - left)
    return total


def integrate_subcake(v: Valuation, X: Subcake) -> F:
    return sum((integrate(v, a, b) for a, b in X.pairs()), F(0))


def scan_cut(v: Valuation, x, a) -> F:
    """Leftmost y with integrate(v, x, y) == a, by walking segments."""
    x, a = F(x), F(a)
    if a == 0:
        return x
    need = a
    for lo, hi, d in v.segments:
        if hi <= x:
            continue
        start = max(lo, x)
        piece = d * (hi - start)
        if piece >= need:
            return start + need / d
        need -= piece
    raise ValueError("infeasible")


def grid_points(denom: int = 12):
    return st.integers(0, denom).map(lambda k: F(k, denom))


@st.composite
def valuations(draw, max_steps: int = 4, denom: int = 12):
    k = draw(st.integers(1, max_steps))
    cuts = sorted(draw(st.sets(st.integers(1, denom - 1), min_size=k - 1, max_size=k - 1)))
    bounds = [F(0)] + [F(c, denom) for c in cuts] + [F(1)]
    weights = draw(st.lists(st.integers(0, 5), min_size=k, max_size=k))
    if not any(weights):
        weights[0] = 1
    mass = sum(w * (b - a) for w, a, b in zip(weights, bounds, bounds[1:]))
    return Valuation(tuple((a, b, w / mass) for w, a, b in zip(weights, bounds, bounds[1:])))


@st.composite
def subcakes(draw, denom: int = 12, max_intervals: int = 3):
    pts = sorted(draw(st.sets(st.integers(0, denom), min_size=2, max_size=2 * max_intervals)))
    if len(pts) % 2:
        pts = pts[:-1]
    return Subcake.from_pairs((F(pts[i], denom), F(pts[i + 1], denom)) for i in range(0, len(pts), 2))


@pytest.fixture
def lebesgue():
    return Valuation.lebesgue()


# one summary line per acceptance criterion, filled in by test_acceptance.py
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[k])
