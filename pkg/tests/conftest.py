from __future__ import annotations

import os
from fractions import Fraction

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from singlab.poly import Ring

settings.register_profile(
    "default",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
    derandomize=True,
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

# one pass/fail line per acceptance criterion, filled by test_acceptance.py
ACCEPTANCE_LINES: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])


R3 = Ring(["x", "y", "z"])
R2 = Ring(["x", "y"])

small_coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=3)


def exponents(nvars: int, max_deg: int = 3):
    return st.lists(st.integers(0, max_deg), min_size=nvars, max_size=nvars).map(tuple).filter(
        lambda e: sum(e) <= max_deg
    )


def polynomials(ring: Ring, max_terms: int = 4, max_deg: int = 3, coeffs=small_coeffs):
    return st.dictionaries(exponents(ring.nvars, max_deg), coeffs, max_size=max_terms).map(
        ring.from_dict
    )


def nonzero_polynomials(ring: Ring, **kw):
    return polynomials(ring, **kw).filter(lambda f: not f.is_zero())


def monomials(nvars: int, max_deg: int = 4):
    return st.lists(st.integers(0, max_deg), min_size=nvars, max_size=nvars).map(tuple)


def as_fraction(c):
    return Fraction(c)
