"""Hypothesis strategies shared by the test modules."""
from __future__ import annotations

from fractions import Fraction

from hypothesis import strategies as st

from hwmodules.scalars import QuadInt, QuadRational, Scalar

rationals = st.fractions(max_denominator=50).filter(lambda q: abs(q.numerator) < 10 ** 6)
scalars = st.builds(Scalar, rationals, rationals)
nonzero_scalars = scalars.filter(bool)
quadints = st.builds(QuadInt, st.integers(-10 ** 6, 10 ** 6), st.integers(-10 ** 6, 10 ** 6))
quadrationals = st.builds(QuadRational, rationals, rationals)
small_ints = st.integers(-10, 10)


def fractions(lo=-20, hi=20):
    return st.builds(Fraction, st.integers(lo, hi), st.integers(1, 20))
