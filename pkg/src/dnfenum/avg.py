"""Trie-guided branching enumeration with amortised output cost.

The driver walks variables in index order, keeping the restricted formula
in a term trie.  Root subtree counts give the three-way split on the next
variable x (terms with -x, with x, with neither), which yields an exact
dead-branch test: a branch survives iff its restriction keeps at least one
term.  Every inner node therefore has a model below it, and the total trie
work can be charged to the models produced.

Two variants:

* enum_avg_slow restricts by strip-and-reinsert only; the work per node is
  proportional to the satisfied side.
* enum_avg_fast greedily re-roots on the satisfied literal's subtree
  whenever the leftover side (terms mentioning neither literal) is strictly
  smaller, so the charged side is always a minority of the current terms.

A formula with m nonempty terms has at least m**GAMMA models, which is what
makes charging trie work against outputs pay off.
"""

from __future__ import annotations

import math

from .core import Dnf
from .instrument import StepCounter
from .trie import TermTrie

#: models >= m**GAMMA for any DNF with m nonempty distinct terms
GAMMA = math.log(2, 3)


def min_models_bound(m: int) -> float:
    """Lower bound on the model count of a DNF with m nonempty terms."""
    return m ** GAMMA


def _trie_dfs(
    tt: TermTrie,
    active: list[int],
    base_mask: int,
    ctr: StepCounter,
    *,
    fast: bool,
    pc: list | None = None,
    node_hook=None,
    branch_log: list | None = None,
):
    """DFS over assignments to `active` guided by the trie `tt`.

    Yields model masks; `base_mask` must be 0 on every active position.
    `pc` is a one-slot list holding the previously emitted mask (shared
    with the caller so nested enumerations count output deltas correctly).
    `node_hook(tt, active, pos, mask, pc)` may return a generator that
    takes over the whole subtree at that node.
    """
    if pc is None:
        pc = [None]
    n = tt.n
    L = len(active)

    def gen():
        if tt.root.count == 0:
            return
        mask = base_mask
        if L == 0:
            p = pc[0]
            ctr.n += (n if p is None else (mask ^ p).bit_count()) + 1
            pc[0] = mask
            yield mask
            return
        counts: list = [None] * L
        chosen = [0] * L
        tokens: list = [None] * L
        pos, trying = 0, 0
        while True:
            if trying == 0 and counts[pos] is None:
                if node_hook is not None:
                    sub = node_hook(tt, active, pos, mask, pc)
                    if sub is not None:
                        yield from sub
                        trying = 2
                        continue
                counts[pos] = tt.counts_for(active[pos])
            if trying <= 1:
                na, nb, rest = counts[pos]
                sat = nb if trying else na
                if sat + rest == 0:
                    trying += 1
                    continue
                v = active[pos]
                # fast only when raising x and the leftover side is the
                # strict minority; ties rebuild (the cheap construction)
                use_fast = fast and trying == 1 and rest < sat
                if use_fast:
                    assert 2 * rest < tt.root.count
                    token = tt.set_variable_fast(v, trying)
                else:
                    token = tt.set_variable(v, trying)
                if branch_log is not None:
                    branch_log.append((v, trying, na, nb, rest, use_fast))
                if trying:
                    mask |= 1 << (n - v)
                tokens[pos] = token
                chosen[pos] = trying
                pos += 1
                if pos == L:
                    p = pc[0]
                    ctr.n += (n if p is None else (mask ^ p).bit_count()) + 1
                    pc[0] = mask
                    yield mask
                    pos -= 1
                    tt.undo(tokens[pos])
                    if chosen[pos]:
                        mask &= ~(1 << (n - active[pos]))
                    trying = chosen[pos] + 1
                    continue
                trying = 0
                continue
            counts[pos] = None
            pos -= 1
            if pos < 0:
                return
            tt.undo(tokens[pos])
            if chosen[pos]:
                mask &= ~(1 << (n - active[pos]))
            trying = chosen[pos] + 1

    return gen()


#: mode tokens for enum_avg (also the CLI --mode values)
MODE_SLOW = "t10"  # strip-and-reinsert on every branch
MODE_FAST = "t11"  # greedy re-rooting when raising a variable


def _prep(d: Dnf, counter: StepCounter | None):
    ctr = counter if counter is not None else StepCounter()
    tt = TermTrie.from_dnf(d, counter=ctr)
    return ctr, tt, list(range(1, d.n + 1))


def enum_avg(
    d: Dnf,
    mode: str = MODE_FAST,
    *,
    counter: StepCounter | None = None,
    branch_log: list | None = None,
    node_hook=None,
):
    """Enumerate sat(d) in lexicographic order (0 before 1 per variable).

    mode "t10" rebuilds the trie on both branches by strip-and-reinsert.
    mode "t11" additionally re-roots on the x subtree when raising x and
    the terms mentioning neither literal are the strict minority, so the
    inserted side never exceeds half the current terms.
    """
    if mode not in (MODE_SLOW, MODE_FAST):
        raise ValueError(f"unknown mode {mode!r}")
    ctr, tt, active = _prep(d, counter)
    return _trie_dfs(
        tt,
        active,
        0,
        ctr,
        fast=mode == MODE_FAST,
        node_hook=node_hook,
        branch_log=branch_log,
    )


def enum_avg_slow(d: Dnf, *, counter: StepCounter | None = None, branch_log: list | None = None):
    return enum_avg(d, MODE_SLOW, counter=counter, branch_log=branch_log)


def enum_avg_fast(d: Dnf, *, counter: StepCounter | None = None, branch_log: list | None = None):
    return enum_avg(d, MODE_FAST, counter=counter, branch_log=branch_log)
