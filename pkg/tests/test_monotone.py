"""Positive-term specializations: reverse search, delegation, complement walk."""

import math
import random

import pytest
from hypothesis import given, settings

from conftest import monotone_dnfs, random_dnf
from dnfenum.avg import MODE_FAST, enum_avg
from dnfenum.core import Dnf, brute_force_models, mask_from_bits, satisfies
from dnfenum.instrument import measure
from dnfenum.monotone import (
    MonotoneDnf,
    enum_monotone_avg,
    enum_monotone_log,
    enum_monotone_rs,
    minimize_monotone,
    normalize_unate,
)


def all_width_terms(n: int, w: int) -> Dnf:
    """Every term of width w over n variables."""
    import itertools

    return Dnf(n, tuple(tuple(c) for c in itertools.combinations(range(1, n + 1), w)))


def test_monotone_dnf_rejects_negative_literals():
    with pytest.raises(ValueError):
        MonotoneDnf(Dnf(2, ((1, -2),)))
    md = MonotoneDnf(Dnf(2, ((1, 2),)))
    assert md.n == 2 and md.m == 1


def test_normalize_unate_flips_negative_only_variables():
    md, flip = normalize_unate(Dnf(2, ((1, -2),)))
    assert md.dnf.terms == ((1, 2),)
    assert flip == mask_from_bits("01")
    # model mapping: flipped stream equals the original model set
    orig = brute_force_models(Dnf(2, ((1, -2),)))
    mapped = {m ^ flip for m in brute_force_models(md.dnf)}
    assert mapped == orig


def test_normalize_unate_identity_on_monotone():
    d = Dnf(3, ((1, 2), (3,)))
    md, flip = normalize_unate(d)
    assert flip == 0
    assert md.dnf.terms == d.terms


def test_normalize_unate_rejects_mixed_polarity():
    with pytest.raises(ValueError):
        normalize_unate(Dnf(1, ((1,), (-1,))))


@settings(max_examples=100)
@given(monotone_dnfs(max_n=9, max_m=9))
def test_normalize_round_trip_on_random_sign_patterns(md_plain):
    # flip a deterministic subset of variables negative, then normalize back
    n = md_plain.n
    flip_vars = {v for v in range(1, n + 1) if v % 2 == 0}
    signed = Dnf(
        n,
        tuple(tuple(-v if v in flip_vars else v for v in t) for t in md_plain.terms),
    )
    md, flip = normalize_unate(signed)
    assert {m ^ flip for m in brute_force_models(md.dnf)} == brute_force_models(signed)


def test_minimize_absorbs_supersets():
    md = MonotoneDnf(Dnf(2, ((1,), (1, 2))))
    assert minimize_monotone(md).dnf.terms == ((1,),)
    anti = MonotoneDnf(Dnf(3, ((1, 2), (2, 3))))
    assert sorted(minimize_monotone(anti).dnf.terms) == sorted(anti.dnf.terms)


@settings(max_examples=100)
@given(monotone_dnfs(max_n=9, max_m=9))
def test_minimize_keeps_models_and_is_antichain(d):
    md = MonotoneDnf(d)
    mini = minimize_monotone(md)
    assert brute_force_models(mini.dnf) == brute_force_models(d)
    ts = [set(t) for t in mini.dnf.terms]
    for i, a in enumerate(ts):
        for j, b in enumerate(ts):
            if i != j:
                assert not a <= b


def test_reverse_search_example():
    d = Dnf(3, ((1,), (2, 3)))
    got = list(enum_monotone_rs(MonotoneDnf(d)))
    want = {mask_from_bits(b) for b in ["100", "101", "110", "111", "011"]}
    assert set(got) == want
    assert len(got) == 5
    # the first block is one term's lattice, then the fresh leftovers
    assert all(satisfies(Dnf(3, ((1,),)), mk) for mk in got[:4])
    assert got[4] == mask_from_bits("011")


def test_reverse_search_single_full_term():
    d = Dnf(4, ((1, 2, 3, 4),))
    assert list(enum_monotone_rs(MonotoneDnf(d))) == [mask_from_bits("1111")]


def test_model_count_at_least_term_count():
    rng = random.Random(0x3A11)
    for _ in range(50):
        n = rng.randint(1, 10)
        d = random_dnf(rng, n, rng.randint(1, 12), signed=False)
        assert len(brute_force_models(d)) >= d.m


@settings(max_examples=120)
@given(monotone_dnfs(max_n=9, max_m=10))
def test_three_algorithms_agree_with_oracle(d):
    md = MonotoneDnf(d)
    want = sorted(brute_force_models(d))
    rs = list(enum_monotone_rs(md))
    assert sorted(rs) == want
    assert len(set(rs)) == len(rs)
    assert list(enum_monotone_avg(md)) == sorted(want)
    log_stream = list(enum_monotone_log(md))
    assert sorted(log_stream) == want
    assert len(set(log_stream)) == len(log_stream)


def test_monotone_avg_delegates_to_trie_dfs():
    d = Dnf(4, ((1, 2), (3,)))
    assert list(enum_monotone_avg(MonotoneDnf(d))) == list(enum_avg(d, MODE_FAST))


def test_discarded_nodes_were_already_output():
    """A successor is only skipped when its model sits in the trie, i.e. the
    stream already contains it -- that is what makes pruning sound."""
    rng = random.Random(0xD15C)
    checked = 0
    for _ in range(40):
        n = rng.randint(2, 9)
        d = random_dnf(rng, n, rng.randint(2, 8), signed=False)
        md = MonotoneDnf(d)
        emitted: list[int] = []
        discards: list[tuple[int, int]] = []
        gen = enum_monotone_rs(
            md, on_discard=lambda mk: discards.append((mk, len(emitted)))
        )
        for mk in gen:
            emitted.append(mk)
        for mk, k in discards:
            assert mk in set(emitted[:k])
            checked += 1
    assert checked > 50


def test_switch_fires_at_root_for_all_wide_terms():
    n = 6
    d = all_width_terms(n, n - 1)
    sl: list = []
    got = list(enum_monotone_log(MonotoneDnf(d), switch_log=sl))
    assert sorted(got) == sorted(brute_force_models(d))
    assert len(got) == n + 1
    assert sl and sl[0][0] == 0  # re-encoding happened before any branching


def test_no_root_switch_when_complements_are_long():
    # root complement width 9 over n=10: 9 >= log2(1) + 2*log2(10), so the
    # walk starts in branching mode; deeper residuals may still re-encode
    d = Dnf(10, ((1,),))
    sl: list = []
    got = list(enum_monotone_log(MonotoneDnf(d), switch_log=sl))
    assert sorted(got) == sorted(brute_force_models(d))
    assert all(pos > 0 for pos, _, _ in sl)


def test_switch_threshold_is_strict():
    # complements of width-1 terms have length n-1; with two terms the
    # threshold is log2(2) + 2*log2(8) = 7, and 7 < 7 must not fire
    d_edge = Dnf(8, ((1,), (2,)))
    sl: list = []
    list(enum_monotone_log(MonotoneDnf(d_edge), switch_log=sl))
    assert all(pos > 0 for pos, _, _ in sl)
    # width-2 terms: complements have length 6 < 7, so the root re-encodes
    d_fire = Dnf(8, ((1, 2), (3, 4)))
    sl2: list = []
    list(enum_monotone_log(MonotoneDnf(d_fire), switch_log=sl2))
    assert sl2 and sl2[0] == (0, 2, 6)
    thresh = math.log2(2) + 2 * math.log2(8)
    assert sl2[0][2] < thresh <= 8 - 1


def test_reverse_search_memory_holds_all_models():
    d = all_width_terms(8, 4)
    models, stats = measure(lambda ctr: enum_monotone_rs(MonotoneDnf(d), counter=ctr))
    assert stats.peak_aux_memory_estimate >= stats.n_models
    assert stats.peak_aux_memory_estimate <= 2 * (d.n + 1) * stats.n_models
