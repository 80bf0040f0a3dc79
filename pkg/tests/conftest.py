import random

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from mctx.theory import FinFn, FinStoch

settings.register_profile(
    "mctx",
    derandomize=True,
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("mctx")


BOOL = FinFn.of(B=2)


def table_of(draw, t, dom, cod):
    n, m = t.carrier(dom), t.carrier(cod)
    return draw(st.lists(st.integers(0, m - 1), min_size=n, max_size=n))


@st.composite
def finfn_theories(draw, atoms=("A", "B", "C"), max_carrier=3):
    return FinFn.of({a: draw(st.integers(1, max_carrier)) for a in atoms})


@st.composite
def objects(draw, atoms=("A", "B", "C"), max_len=2):
    return tuple(draw(st.lists(st.sampled_from(atoms), max_size=max_len)))


@st.composite
def finfn_maps(draw, t, dom, cod):
    return t.morphism(dom, cod, table_of(draw, t, dom, cod))


@st.composite
def finstoch_maps(draw, t, dom, cod):
    rows = t.probe_rows(t.carrier(cod))
    return t.from_rows(dom, cod, [dict(draw(st.sampled_from(rows))) for _ in range(t.carrier(dom))])


def random_map(rng: random.Random, t, dom, cod):
    n, m = t.carrier(dom), t.carrier(cod)
    if isinstance(t, FinStoch):
        rows = t.probe_rows(m)
        return t.from_rows(dom, cod, [dict(rng.choice(rows)) for _ in range(n)])
    return t.morphism(dom, cod, [rng.randrange(m) for _ in range(n)])


@pytest.fixture
def rng():
    return random.Random(20240917)
