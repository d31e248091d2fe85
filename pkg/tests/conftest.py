from fractions import Fraction

import hypothesis.strategies as st
from hypothesis import settings

from riemcurv.scalars import ExactScalar

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

fractions = st.builds(Fraction, st.integers(-30, 30), st.integers(1, 12))


@st.composite
def scalars(draw, max_terms=3):
    n = draw(st.integers(0, max_terms))
    out = ExactScalar()
    for _ in range(n):
        out = out + ExactScalar.monomial(draw(fractions), draw(st.integers(-3, 3)), draw(st.integers(-4, 4)))
    return out


@st.composite
def sparse_series(draw, alphabet, order, max_terms=5, constant=True):
    from riemcurv.series import GradedSeries

    monos = [m for m in alphabet.monomials(order) if constant or any(m)]
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        terms[draw(st.sampled_from(monos))] = ExactScalar.monomial(draw(fractions), draw(st.integers(-1, 1)))
    return GradedSeries(alphabet, order, terms)
