from fractions import Fraction

from hypothesis import settings, strategies as st

from hvtensor.exact import Scalar

# Derandomized so repeated runs explore the same examples.
settings.register_profile("repo", max_examples=60, deadline=None, derandomize=True)
settings.load_profile("repo")

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)
scalars = st.builds(Scalar, rationals, rationals)
real_scalars = st.builds(Scalar, rationals)
nonzero_scalars = scalars.filter(bool)


def q(x) -> Fraction:
    return Fraction(x)
