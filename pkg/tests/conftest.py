import os
import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("ci", parent=settings.get_profile("default"), max_examples=200)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

# keep scans single-process inside the suite unless the caller asks otherwise
os.environ.setdefault("RIEMANN_MONO_THREADS", "1")

small_fraction = st.builds(
    Fraction, st.integers(min_value=-40, max_value=40), st.integers(min_value=1, max_value=8)
)
unit_float = st.floats(min_value=0.0, max_value=1.0, allow_nan=False)
poly_coeffs = st.lists(small_fraction, min_size=1, max_size=9)


def random_cubic(rng: random.Random) -> tuple:
    """Rational coefficients in [-10, 10] with denominators up to 12."""
    out = []
    for _ in range(4):
        q = rng.randint(1, 12)
        out.append(Fraction(rng.randint(-10 * q, 10 * q), q))
    return tuple(out)


@pytest.fixture(scope="session")
def cubics():
    rng = random.Random(20240611)
    cs = [random_cubic(rng) for _ in range(1000)]
    # hand-picked shapes so every verdict branch is exercised
    cs[:6] = [
        (Fraction(1),) * 1 + (Fraction(0),) * 3,
        (0, 1, 0, 0),
        (1, -1, 0, 0),
        (0, 0, 1, 0),
        (0, 3, -3, 1),
        (0, 1, -3, 2),
    ]
    return [tuple(Fraction(c) for c in cc) for cc in cs]


ACCEPTANCE: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[key])
