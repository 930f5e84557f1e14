"""Enumeration specialized to monotone (all-positive) DNF.

Monotone structure buys three things over the general algorithms:

* reverse search (enum_monotone_rs): models of each term form a subset
  lattice walked root-to-leaves; a model trie of everything output so far
  prunes whole subtrees, giving delay O(n^2) independent of the term count,
  at the price of storing every model.
* enum_monotone_avg: the trie-guided DFS needs no adaptation — positive
  formulas simply never branch on a negated literal.
* enum_monotone_log (complement phase): once every live term misses fewer
  than log2(m) + 2*log2(n) of the remaining variables, terms are re-encoded
  by the variables they lack.  Restriction work then scales with those
  short complement words, and runs of variables appearing in every term are
  forced to 1 in O(1) by jumping over them.

normalize_unate maps any formula whose variables each occur with a single
polarity onto a monotone one; model streams map back by XOR with the
returned flip mask.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .avg import MODE_FAST, _trie_dfs, enum_avg
from .core import Dnf, Term
from .instrument import StepCounter
from .trie import ARRAY, SORTED_LIST, TermTrie, Trie


@dataclass(frozen=True)
class MonotoneDnf:
    dnf: Dnf
    #: promises the terms form an antichain in canonical sorted order, which
    #: lets minimize_monotone skip its quadratic absorption scan
    minimized: bool = False

    def __post_init__(self):
        for t in self.dnf.terms:
            for lit in t:
                if lit < 0:
                    raise ValueError(f"literal {lit} is negative; formula is not monotone")

    @property
    def n(self) -> int:
        return self.dnf.n

    @property
    def m(self) -> int:
        return self.dnf.m


def _as_mono(d) -> MonotoneDnf:
    if isinstance(d, MonotoneDnf):
        return d
    return MonotoneDnf(d)


def normalize_unate(d: Dnf) -> tuple[MonotoneDnf, int]:
    """Flip single-polarity-negative variables to obtain a monotone formula.

    Returns the monotone formula and the mask of flipped variables; a model
    of the returned formula XOR the mask is a model of the original.
    Raises ValueError when some variable occurs in both polarities.
    """
    pos: set[int] = set()
    neg: set[int] = set()
    for t in d.terms:
        for lit in t:
            (pos if lit > 0 else neg).add(abs(lit))
    both = sorted(pos & neg)
    if both:
        raise ValueError(f"variables {both} occur in both polarities; not unate")
    mask = 0
    for v in neg:
        mask |= 1 << (d.n - v)
    terms = [tuple(sorted(abs(lit) for lit in t)) for t in d.terms]
    return MonotoneDnf(Dnf(d.n, terms)), mask


def minimize_monotone(md: MonotoneDnf, *, counter: StepCounter | None = None) -> MonotoneDnf:
    """Drop every term that contains another term; result is an antichain.

    Output terms are sorted in canonical word order, which downstream
    enumerators rely on.
    """
    if md.minimized:
        return md
    ctr = counter if counter is not None else StepCounter()
    d = md.dnf
    items = []
    for t in d.terms:
        mask = 0
        for lit in t:
            mask |= 1 << (d.n - lit)
        items.append((mask, t))
    items.sort(key=lambda it: (it[0].bit_count(), it[1]))
    kept: list[tuple[int, Term]] = []
    for mask, t in items:
        ok = True
        for km, _ in kept:
            ctr.n += 1
            if km & mask == km:
                ok = False
                break
        if ok:
            kept.append((mask, t))
    ctr.n += len(items) + 1
    terms = sorted(t for _, t in kept)
    return MonotoneDnf(Dnf(d.n, terms), minimized=True)


class _RsNode:
    __slots__ = ("mask", "last", "nxt")

    def __init__(self, mask: int, last: int, nxt):
        self.mask = mask
        self.last = last
        self.nxt = nxt


def enum_monotone_rs(md, *, counter: StepCounter | None = None, on_discard=None):
    """Reverse search over per-term subset lattices with a model trie.

    For each term in order, walks the tree of free-variable subsets rooted
    at the term's characteristic model.  A successor already present in the
    model trie is discarded together with its whole subtree (its models all
    belong to earlier terms); fresh successors are threaded into a pointer
    chain so the walk never revisits a node.  Every visit outputs.
    """
    ctr = counter if counter is not None else StepCounter()
    md = minimize_monotone(_as_mono(md), counter=ctr)
    d = md.dnf
    n = d.n
    model_trie = Trie(2, rep=SORTED_LIST, counter=ctr)
    pc = [None]

    def word_of(mask: int) -> tuple[int, ...]:
        return tuple((mask >> (n - 1 - j)) & 1 for j in range(n))

    def gen():
        for t in d.terms:
            base = 0
            inside = set(t)
            for v in t:
                base |= 1 << (n - v)
            free = [v for v in range(1, n + 1) if v not in inside]
            bits = [1 << (n - v) for v in free]
            ctr.n += n + 1
            cur = _RsNode(base, -1, None)
            while cur is not None:
                mask = cur.mask
                fresh = model_trie.insert(word_of(mask))
                assert fresh, "reverse-search visit repeated a model"
                p = pc[0]
                ctr.n += (n if p is None else (mask ^ p).bit_count()) + 1
                pc[0] = mask
                yield mask
                succs = []
                for j in range(cur.last + 1, len(free)):
                    cand = mask | bits[j]
                    ctr.n += 1
                    if model_trie.search(word_of(cand)) is None:
                        succs.append(_RsNode(cand, j, None))
                    elif on_discard is not None:
                        on_discard(cand)
                for a, b in zip(succs, succs[1:]):
                    a.nxt = b
                if succs:
                    succs[-1].nxt = cur.nxt
                    cur = succs[0]
                else:
                    cur = cur.nxt

    return gen()


def enum_monotone_avg(md, *, counter: StepCounter | None = None):
    """The greedy trie-guided DFS, which needs no monotone adaptation."""
    md = _as_mono(md)
    return enum_avg(md.dnf, MODE_FAST, counter=counter)


def _complement_phase(tt: TermTrie, live: list[int], base_mask: int, pc: list, ctr: StepCounter, n: int):
    """Enumerate the subtree after re-encoding terms by their missing vars.

    The complement trie's alphabet is variable indices.  Setting x to 0
    keeps exactly the terms missing x — the child(x) subtree, a re-root.
    Setting x to 1 keeps everything and strips x from the words that have
    it — a small-into-large merge.  Variables smaller than every root child
    symbol appear in every term, so they are forced to 1 and skipped with
    no trie work at all.
    """
    L = len(live)
    bits = [1 << (n - v) for v in live]
    suf = [0] * (L + 1)
    for i in range(L - 1, -1, -1):
        suf[i] = suf[i + 1] | bits[i]
    idx = {v: i for i, v in enumerate(live)}
    ct = Trie(n + 1, rep=ARRAY, counter=ctr)
    for w in tt.iter_words():
        tvars = [s // 2 + 1 for s in w]
        comp = []
        ti = 0
        for u in live:
            if ti < len(tvars) and tvars[ti] == u:
                ti += 1
            else:
                comp.append(u)
        ctr.n += L + 1
        ct.insert(tuple(comp))
    ctr.n += 2 * L + 2

    def emit(mask):
        p = pc[0]
        ctr.n += (n if p is None else (mask ^ p).bit_count()) + 1
        pc[0] = mask
        return mask

    def walk(i: int, mask: int):
        root = ct.root
        cm = root.cmask
        ctr.n += 1
        if cm == 0:
            # lone fully-shrunk term: every remaining variable is in it
            yield emit(mask | suf[i])
            return
        x = (cm & -cm).bit_length() - 1
        j = idx[x]
        if j > i:
            # vars live[i:j] occur in every term: forced to 1, zero trie work
            mask |= suf[i] ^ suf[j]
            ctr.n += 2
            i = j
        kid = ct._get(root, x)
        ctr.n += 2
        # x -> 0: only the terms missing x survive, already rooted at child(x)
        ct.root = kid
        yield from walk(i + 1, mask)
        ct.root = root
        # x -> 1: every term survives; strip x where present (small into large)
        cnt_x = kid.count
        rest = root.count - cnt_x
        token: list = []
        if cnt_x <= rest:
            ct._pop_child(root, x)
            root.count -= cnt_x
            ctr.n += 1
            token.append(("detach", root, x, kid))
            for w in ct.iter_words(kid):
                if ct.insert(w):
                    token.append(("ins", w))
        else:
            token.append(("root", root))
            ct.root = kid
            if root.word:
                if ct.insert(()):
                    token.append(("ins", ()))
            for s, k2 in ct._child_items(root):
                if s == x:
                    continue
                for w in ct.iter_words(k2):
                    full = (s,) + w
                    if ct.insert(full):
                        token.append(("ins", full))
        yield from walk(i + 1, mask | bits[idx[x]])
        ct.undo(token)

    return walk(0, base_mask)


def enum_monotone_log(md, *, counter: StepCounter | None = None, switch_log: list | None = None):
    """Greedy DFS that re-encodes to complements once all terms are wide.

    Runs enum_monotone_avg's traversal until, at some node, every live term
    misses fewer than log2(live terms) + 2*log2(n) of the remaining
    variables; from there the whole subtree is enumerated on the complement
    trie, whose words are those short miss-lists.
    """
    md = _as_mono(md)
    d = md.dnf
    ctr = counter if counter is not None else StepCounter()
    n = d.n
    log2n2 = 2 * math.log2(n) if n > 1 else 0.0
    tt = TermTrie.from_dnf(d, counter=ctr, track_minlen=True)
    active = list(range(1, n + 1))

    m = tt.root.count
    if m and n - tt.root.minlen < math.log2(m) + log2n2:
        # every term is already wide at the root: re-encode during setup so
        # the complement build is paid before the first output
        if switch_log is not None:
            switch_log.append((0, m, n - tt.root.minlen))
        return _complement_phase(tt, active, 0, [None], ctr, n)

    def hook(tt_, active_, pos, mask, pc):
        n_tau = len(active_) - pos
        m_tau = tt_.root.count
        maxcomp = n_tau - tt_.root.minlen
        ctr.n += 1
        if maxcomp < math.log2(m_tau) + log2n2:
            if switch_log is not None:
                switch_log.append((pos, m_tau, maxcomp))
            return _complement_phase(tt_, active_[pos:], mask, pc, ctr, n)
        return None

    return _trie_dfs(tt, active, 0, ctr, fast=True, node_hook=hook)
