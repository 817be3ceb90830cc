"""Hypothesis strategies shared by the property tests."""

import numpy as np
from hypothesis import strategies as st

from kleislian.algebra import Algebra

block_dims = st.lists(st.integers(1, 3), min_size=1, max_size=3).map(tuple)
algebras = block_dims.map(Algebra)
seeds = st.integers(0, 2**32 - 1)


@st.composite
def algebra_and_rng(draw):
    return draw(algebras), np.random.default_rng(draw(seeds))
