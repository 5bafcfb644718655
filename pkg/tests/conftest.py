import math
import os
import sys

from hypothesis import settings, strategies as st

from flipgraph.engine import any_triangulation
from flipgraph.geometry import CORNER, FLAT, PUNCTURE, PointConfig

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

RADIUS = 10**6


@st.composite
def convex_configs(draw, min_corners=3, max_corners=8, max_flats=0, max_punctures=0):
    """Corners at distinct whole-degree angles on a large circle, plus optional
    flats at edge midpoints and punctures near the centre."""
    k = draw(st.integers(min_corners, max_corners))
    angles = sorted(draw(st.sets(st.integers(0, 359), min_size=k, max_size=k)))
    # coordinates doubled so edge midpoints are integral
    corners = [
        (2 * round(RADIUS * math.cos(math.radians(a))), 2 * round(RADIUS * math.sin(math.radians(a))))
        for a in angles
    ]
    flat_edges = draw(st.sets(st.integers(0, k - 1), max_size=max_flats)) if max_flats else set()
    pts = []
    for i, (x, y) in enumerate(corners):
        pts.append((x, y, CORNER))
        if i in flat_edges:
            nx, ny = corners[(i + 1) % k]
            pts.append(((x + nx) // 2, (y + ny) // 2, FLAT))
    if max_punctures:
        inner = draw(st.sets(
            st.tuples(st.integers(-RADIUS // 4, RADIUS // 4), st.integers(-RADIUS // 4, RADIUS // 4)),
            max_size=max_punctures,
        ))
        ring = [(x, y) for x, y, _ in pts]
        for x, y in sorted(inner):
            if all(_left(ring[i - 1], ring[i], (x, y)) for i in range(len(ring))):
                pts.append((x, y, PUNCTURE))
    return PointConfig(pts)


def _left(p, q, r):
    return (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0]) > 0


@st.composite
def random_triangulation(draw, config, max_walk=25):
    """A triangulation reached by a random flip walk from a fixed start."""
    T = any_triangulation(config)
    for choice in draw(st.lists(st.integers(0, 10**6), max_size=max_walk)):
        moves = list(config.flips(T))
        if not moves:
            break
        T = moves[choice % len(moves)][2]
    return T


# one line per acceptance criterion, shown at the end of the run even when
# output capture is on
ACCEPTANCE_LINES: list[str] = []


def record(number: int, ok: bool, detail: str) -> None:
    line = f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
