import os
import sys

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, os.path.dirname(__file__))

from alglam.random_terms import TermGenerator  # noqa: E402
from alglam.syntax import parse  # noqa: E402

settings.register_profile("default", max_examples=150, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@st.composite
def terms(draw, max_size=20, closed=False):
    seed = draw(st.integers(0, 2**32 - 1))
    size = draw(st.integers(1, max_size))
    return TermGenerator(seed).term(size, closed=closed)


@st.composite
def values(draw, max_size=20, closed=False):
    seed = draw(st.integers(0, 2**32 - 1))
    size = draw(st.integers(1, max_size))
    return TermGenerator(seed).value(size, closed=closed)


@st.composite
def bases(draw, max_size=8, closed=False):
    seed = draw(st.integers(0, 2**32 - 1))
    size = draw(st.integers(1, max_size))
    return TermGenerator(seed).base(size, closed=closed)


@pytest.fixture
def P():
    return parse


U_SRC = "\\x.x"
V_SRC = "\\x.(x) x"
COPY_SRC = "\\x.\\y.((y) x) x"


def pair(m, n):
    return f"\\y.((y) ({m})) ({n})"


COPY_TERM = f"({COPY_SRC}) (({U_SRC}) + {V_SRC})"
