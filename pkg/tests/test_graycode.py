"""Gray-code walks and the single-term enumerator."""

import pytest
from hypothesis import given
import hypothesis.strategies as st

from conftest import terms
from dnfenum.core import Dnf, brute_force_models, make_term, mask_from_bits
from dnfenum.graycode import (
    GrayState,
    enum_single_term_dnf,
    enum_term_models,
    gray_flips,
    gray_next,
)
from dnfenum.instrument import StepCounter, measure


def spell_patterns(k: int) -> list[tuple[int, ...]]:
    """Replay the flip schedule over k slots, starting from all zeros."""
    cur = [0] * k
    out = [tuple(cur)]
    for slot in gray_flips(k):
        cur[slot] ^= 1
        out.append(tuple(cur))
    return out


def test_flip_schedule_two_slots():
    assert list(gray_flips(2)) == [0, 1, 0]
    assert spell_patterns(2) == [(0, 0), (1, 0), (1, 1), (0, 1)]


def test_flip_schedule_zero_slots():
    assert list(gray_flips(0)) == []
    assert spell_patterns(0) == [()]


@pytest.mark.parametrize("k", [1, 3, 5])
def test_flip_schedule_visits_everything_once(k):
    pats = spell_patterns(k)
    assert len(pats) == 2 ** k
    assert len(set(pats)) == 2 ** k


def test_gray_next_reports_one_based_slot():
    g = GrayState(0, [0b10, 0b01])
    ctr = StepCounter()
    seen = []
    while (p := gray_next(g, ctr)) is not None:
        seen.append(p)
    assert seen == [1, 2, 1]
    assert g.remaining() == 0
    assert gray_next(g, ctr) is None


def test_enum_term_models_example():
    models = list(enum_term_models(make_term([1, -3]), 3))
    assert models[0] == mask_from_bits("100")  # free variables start at 0
    assert set(models) == {mask_from_bits("100"), mask_from_bits("110")}


def test_enum_term_models_no_free_variables():
    assert list(enum_term_models(make_term([1, -2, 3]), 3)) == [mask_from_bits("101")]


def test_enum_term_models_empty_term():
    models = list(enum_term_models((), 3))
    assert sorted(models) == list(range(8))
    for a, b in zip(models, models[1:]):
        assert (a ^ b).bit_count() == 1


@given(st.data())
def test_matches_oracle_and_flips_once(data):
    n = data.draw(st.integers(1, 10))
    t = data.draw(terms(n))
    d = Dnf(n, (t,))
    models = list(enum_term_models(t, n))
    assert sorted(models) == sorted(brute_force_models(d))
    assert len(set(models)) == len(models)
    for a, b in zip(models, models[1:]):
        assert (a ^ b).bit_count() == 1


@given(st.data())
def test_delay_is_constant(data):
    n = data.draw(st.integers(1, 16))
    t = data.draw(terms(n))
    _, stats = measure(lambda ctr: enum_term_models(t, n, counter=ctr))
    assert stats.max_delay_steps <= 32


def test_single_term_dnf_requires_one_term():
    with pytest.raises(ValueError):
        enum_single_term_dnf(Dnf(2, ((1,), (2,))))
    with pytest.raises(ValueError):
        enum_single_term_dnf(Dnf(2, ()))
    got = list(enum_single_term_dnf(Dnf(2, ((1,),))))
    assert got == list(enum_term_models((1,), 2))
