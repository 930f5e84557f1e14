"""Shared strategies and helpers for the test suite."""

from __future__ import annotations

import random

import hypothesis.strategies as st
from hypothesis import HealthCheck, settings

from dnfenum.core import Dnf, make_term

settings.register_profile(
    "suite",
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")


@st.composite
def terms(draw, n: int, signed: bool = True, max_width: int | None = None):
    width = draw(st.integers(1, min(max_width or n, n)))
    vs = draw(
        st.lists(st.integers(1, n), min_size=width, max_size=width, unique=True)
    )
    if signed:
        signs = draw(st.lists(st.booleans(), min_size=width, max_size=width))
        lits = [v if s else -v for v, s in zip(vs, signs)]
    else:
        lits = vs
    return make_term(lits)


@st.composite
def dnfs(draw, max_n: int = 10, max_m: int = 12, signed: bool = True, max_width: int | None = None):
    n = draw(st.integers(1, max_n))
    m = draw(st.integers(0, max_m))
    ts = draw(st.lists(terms(n, signed=signed, max_width=max_width), min_size=m, max_size=m))
    return Dnf(n, tuple(dict.fromkeys(ts)))


@st.composite
def monotone_dnfs(draw, max_n: int = 10, max_m: int = 12):
    return draw(dnfs(max_n=max_n, max_m=max_m, signed=False))


@st.composite
def set_families(draw, max_n: int = 9, max_m: int = 9):
    from dnfenum.setunion import SetFamily

    n = draw(st.integers(1, max_n))
    m = draw(st.integers(1, max_m))
    sets = []
    for _ in range(m):
        w = draw(st.integers(0, n))
        vs = draw(st.lists(st.integers(1, n), min_size=w, max_size=w, unique=True))
        sets.append(tuple(sorted(vs)))
    return SetFamily(n, tuple(sets))


def random_dnf(rng: random.Random, n: int, m: int, min_width: int = 1, max_width: int | None = None, signed: bool = True) -> Dnf:
    """Random formula with up to m distinct terms (collisions are dropped)."""
    max_width = max_width or n
    seen = set()
    out = []
    for _ in range(m):
        w = rng.randint(min_width, min(max_width, n))
        vs = rng.sample(range(1, n + 1), w)
        if signed:
            lits = tuple(sorted((v if rng.random() < 0.5 else -v) for v in vs), )
        else:
            lits = tuple(sorted(vs))
        t = make_term(lits)
        if t not in seen:
            seen.add(t)
            out.append(t)
    return Dnf(n, tuple(out))
