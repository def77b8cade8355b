from fractions import Fraction

from hypothesis import settings, strategies as st

settings.register_profile("default", max_examples=200, deadline=None)
settings.load_profile("default")


@st.composite
def probabilities(draw, max_denominator=60):
    den = draw(st.integers(1, max_denominator))
    num = draw(st.integers(0, den))
    return Fraction(num, den)


tails_days = st.integers(1, 6)
