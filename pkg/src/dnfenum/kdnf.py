"""Bounded-width enumeration with delay independent of the term count.

A shortest term T of the formula supplies at least 2^(N-k) models, walked
by Gray code at constant cost each.  The remaining models split cleanly:
ordering var(T) ascending, every other model agrees with T strictly below
some y in var(T) and disagrees at y.  Each of those blocks is the formula
restricted by that prefix assignment — a smaller instance of the same
problem.  The restrictions for all y are precomputed while the Gray walk
runs, a fixed budget of steps between consecutive outputs, and the budget
arithmetic guarantees construction finishes within (at worst one budget
slice after) the walk.

The hybrid variant hands any frame whose live variable count drops below
lambda*k to the trie-guided enumerator from avg, which is the better
strategy on small dense subproblems.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .avg import _trie_dfs
from .core import Dnf, PartialAssignment, Term
from .graycode import GrayState
from .instrument import StepCounter
from .trie import TermTrie

LAMBDA_DEFAULT = 3.55301

_DONE = object()


def partition_assignments(t: Term) -> tuple[PartialAssignment, list[PartialAssignment]]:
    """The satisfying assignment of t and the per-variable flip prefixes.

    For y in var(t) ascending, the y-th prefix agrees with t strictly below
    y and flips y; together with t's own assignment these classes partition
    all assignments.
    """
    if not t:
        raise ValueError("empty term has no partition")
    one = {abs(lit): (1 if lit > 0 else 0) for lit in t}
    cofs = []
    prefix: dict[int, int] = {}
    for lit in t:
        y = abs(lit)
        block = dict(prefix)
        block[y] = 1 - one[y]
        cofs.append(block)
        prefix[y] = one[y]
    return one, cofs


def choose_min_term(d: Dnf) -> Term:
    """A term of minimum width; ties broken by canonical word order."""
    if d.m == 0:
        raise ValueError("empty formula has no terms")
    from .core import lit_index

    best = None
    best_key = None
    for t in d.terms:
        w = tuple(lit_index(lit) for lit in t)
        key = (len(w), w)
        if best_key is None or key < best_key:
            best_key = key
            best = t
    return best


def _calibrate_A() -> int:
    """Measured steps per (term x literal x block) of cofactor construction.

    Runs the real block builder on a fixed synthetic 3-DNF and divides the
    counted steps by k^2 * m, rounded up.  Deterministic by construction.
    """
    from .core import lit_index

    k0, n0, m0 = 3, 14, 60
    rng = random.Random(0x5EED)
    seen = set()
    terms = []
    while len(terms) < m0:
        vs = rng.sample(range(1, n0 + 1), k0)
        t = tuple(sorted(((v if rng.random() < 0.5 else -v) for v in vs), key=abs))
        if t not in seen:
            seen.add(t)
            terms.append(t)
    d = Dnf(n0, terms)
    ctr = StepCounter()
    tt = TermTrie.from_dnf(d, counter=ctr)
    min_word = tuple(lit_index(lit) for lit in choose_min_term(d))
    frame = _make_frame(tt, 0, tuple(range(1, n0 + 1)), min_word, None, ctr, n0)
    start = ctr.n
    frame.builder = _build_children(frame, None, ctr, n0)
    while next(frame.builder, _DONE) is not _DONE:
        pass
    steps = ctr.n - start
    return math.ceil(steps / (k0 * k0 * m0))


_A_CACHE: int | None = None


def step_constant() -> int:
    global _A_CACHE
    if _A_CACHE is None:
        _A_CACHE = _calibrate_A()
    return _A_CACHE


@dataclass(frozen=True)
class KdnfConfig:
    k: int
    d: int
    A: int
    lam: float = LAMBDA_DEFAULT

    @classmethod
    def for_width(cls, k: int, lam: float = LAMBDA_DEFAULT) -> "KdnfConfig":
        k = max(k, 1)
        return cls(k=k, d=math.ceil(k ** 1.5 * 2 ** (2 * k)), A=step_constant(), lam=lam)

    @classmethod
    def for_formula(cls, d: Dnf, lam: float = LAMBDA_DEFAULT) -> "KdnfConfig":
        return cls.for_width(max((len(t) for t in d.terms), default=1), lam=lam)


class _Frame:
    __slots__ = ("tt", "assign", "unassigned", "min_word", "gray", "emitted", "builder", "children", "path")

    def __init__(self, tt, assign, unassigned, min_word, gray, path):
        self.tt = tt
        self.assign = assign
        self.unassigned = unassigned
        self.min_word = min_word
        self.gray = gray
        self.emitted = False
        self.builder = None
        self.children: list[_Frame] = []
        self.path = path


def _make_frame(tt, assign, unassigned, min_word, cfg, ctr, n, path=()):
    kp = len(min_word)
    mp = tt.root.count
    nu = len(unassigned)
    if cfg is not None:
        # step-budget feasibility: the Gray walk is long enough to pay for
        # the whole construction (holds for every dedup'd bounded-width
        # formula with the default budget)
        assert (cfg.d << (nu - kp)) >= kp * kp * mp, (cfg.d, nu, kp, mp)
    tvars = set()
    start = assign
    for s in min_word:
        v = s // 2 + 1
        tvars.add(v)
        if s & 1:
            start |= 1 << (n - v)
    free = [1 << (n - v) for v in unassigned if v not in tvars]
    ctr.n += nu + 1
    return _Frame(tt, assign, unassigned, min_word, GrayState(start, free), path)


def _build_children(F: _Frame, cfg: KdnfConfig, ctr: StepCounter, n: int):
    """Resumable construction of the flip-prefix restrictions of F.

    Yields once per parent term scanned so the caller can meter steps.
    Each block scans every term against the block's partial assignment,
    dropping falsified terms and stripping satisfied literals; surviving
    words go into a fresh trie that dedups and tracks the new shortest
    term on the fly.
    """
    word = F.min_word
    prefix: dict[int, int] = {}
    for s in word:
        y = s // 2 + 1
        one_y = s & 1
        delta = dict(prefix)
        delta[y] = 1 - one_y
        child_tt = TermTrie(n, counter=ctr)
        minw = None
        min_key = None
        for w in F.tt.iter_words():
            keep = True
            out = []
            for sym in w:
                b = delta.get(sym // 2 + 1)
                if b is None:
                    out.append(sym)
                elif (sym & 1) != b:
                    keep = False
                    break
            ctr.n += len(w) + 2
            if keep:
                tw = tuple(out)
                if tw == ():
                    # fully satisfied term: the block is a tautology
                    child_tt = TermTrie(n, counter=ctr)
                    child_tt.insert(())
                    minw, min_key = (), (0, ())
                    yield
                    break
                if child_tt.insert(tw):
                    key = (len(tw), tw)
                    if min_key is None or key < min_key:
                        min_key, minw = key, tw
            yield
        if child_tt.root.count:
            sub_unassigned = tuple(u for u in F.unassigned if u not in delta)
            sub_assign = F.assign
            for v, b in delta.items():
                if b:
                    sub_assign |= 1 << (n - v)
            ctr.n += len(F.unassigned) + len(delta)
            F.children.append(
                _make_frame(child_tt, sub_assign, sub_unassigned, minw, cfg, ctr, n, F.path + (y,))
            )
            yield
        prefix[y] = one_y


def _enum_kdnf_impl(d: Dnf, cfg: KdnfConfig, ctr: StepCounter, *, hybrid: bool, tag: bool):
    wide = max((len(t) for t in d.terms), default=0)
    if wide > cfg.k:
        raise ValueError(f"term of width {wide} exceeds k={cfg.k}")
    n = d.n
    if d.m == 0:
        def empty():
            return
            yield
        return empty()
    tt = TermTrie.from_dnf(d, counter=ctr)
    from .core import lit_index

    min_word = tuple(lit_index(lit) for lit in choose_min_term(d))
    ctr.n += d.size + 1
    root = _make_frame(tt, 0, tuple(range(1, n + 1)), min_word, cfg, ctr, n)
    budget = cfg.d * cfg.A
    cutoff = cfg.lam * cfg.k
    pc = [None]

    def run_slice(F):
        allowance = budget
        while allowance > 0 and F.builder is not None:
            mark = ctr.n
            if next(F.builder, _DONE) is _DONE:
                F.builder = None
                return
            allowance -= ctr.n - mark

    def gen():
        stack = [root]
        while stack:
            F = stack[-1]
            if not F.emitted and hybrid and len(F.unassigned) < cutoff:
                sub = _trie_dfs(F.tt, list(F.unassigned), F.assign, ctr, fast=True, pc=pc)
                if tag:
                    for mk in sub:
                        yield mk, F.path
                else:
                    yield from sub
                stack.pop()
                continue
            if not F.emitted:
                F.emitted = True
                F.builder = _build_children(F, cfg, ctr, n)
                mask = F.gray.mask
            elif F.gray.i < F.gray.total - 1:
                mask = F.gray.advance(ctr)
            else:
                while F.builder is not None:
                    if next(F.builder, _DONE) is _DONE:
                        F.builder = None
                stack.pop()
                stack.extend(reversed(F.children))
                continue
            run_slice(F)
            p = pc[0]
            ctr.n += (n if p is None else (mask ^ p).bit_count()) + 1
            pc[0] = mask
            yield (mask, F.path) if tag else mask

    return gen()


def enum_kdnf(d: Dnf, cfg: KdnfConfig | None = None, *, counter: StepCounter | None = None):
    """Enumerate sat(d) with delay bounded by the width budget, not by m."""
    ctr = counter if counter is not None else StepCounter()
    if cfg is None:
        cfg = KdnfConfig.for_formula(d)
    return _enum_kdnf_impl(d, cfg, ctr, hybrid=False, tag=False)


def enum_kdnf_hybrid(d: Dnf, cfg: KdnfConfig | None = None, *, counter: StepCounter | None = None):
    """Like enum_kdnf, but small frames switch to the trie-guided DFS."""
    ctr = counter if counter is not None else StepCounter()
    if cfg is None:
        cfg = KdnfConfig.for_formula(d)
    return _enum_kdnf_impl(d, cfg, ctr, hybrid=True, tag=False)


def _kdnf_tagged(d: Dnf, cfg: KdnfConfig | None = None, *, counter: StepCounter | None = None):
    """(mask, frame path) stream for partition testing."""
    ctr = counter if counter is not None else StepCounter()
    if cfg is None:
        cfg = KdnfConfig.for_formula(d)
    return _enum_kdnf_impl(d, cfg, ctr, hybrid=False, tag=True)
