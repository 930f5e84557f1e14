"""Enumerating the unions of a set family.

Given sets S_1..S_m over {1..n}, the targets are all unions of non-empty
subfamilies (the empty set is a target exactly when it is one of the S_i).
The enumerator decides element by element whether it belongs to the union,
keeping the still-usable sets in a trie of sorted element words:

* ruling an element out kills precisely the sets containing it — one
  detached subtree, since by then every live word starts at or after the
  element — followed by an O(m) re-check that the union of survivors still
  covers everything already ruled in;
* ruling it in keeps every set and strips the element from the words that
  start with it, a small-into-large merge.

Both branches restore the trie through the undo log on backtrack, so the
space beyond the family itself stays O(size of the family).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .core import DnfFormatError
from .instrument import StepCounter
from .trie import ARRAY, Trie


@dataclass(frozen=True)
class SetFamily:
    """Sets over {1..n}; duplicates dropped, first occurrence kept."""

    n: int
    sets: tuple[tuple[int, ...], ...]

    def __init__(self, n: int, sets: Iterable[Iterable[int]]):
        if n < 0:
            raise ValueError(f"n must be >= 0, got {n}")
        canon: list[tuple[int, ...]] = []
        seen = set()
        for s in sets:
            t = tuple(sorted(set(s)))
            for e in t:
                if not isinstance(e, int) or not 1 <= e <= n:
                    raise ValueError(f"element {e!r} out of range 1..{n}")
            if t not in seen:
                seen.add(t)
                canon.append(t)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "sets", tuple(canon))

    @property
    def m(self) -> int:
        return len(self.sets)

    def masks(self) -> list[int]:
        """Bit masks of the sets, element e at bit (n - e)."""
        out = []
        for s in self.sets:
            mk = 0
            for e in s:
                mk |= 1 << (self.n - e)
            out.append(mk)
        return out


def parse_sets(text: str) -> SetFamily:
    """Parse the `p sets <n> <m>` format: one set per line, 0-terminated."""
    n = None
    m = None
    header_line = 0
    sets: list[tuple[int, ...]] = []
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            if n is not None:
                raise DnfFormatError(ln, "duplicate header")
            fields = line.split()
            if len(fields) != 4 or fields[1] != "sets":
                raise DnfFormatError(ln, f"expected 'p sets <n> <m>', got {line!r}")
            try:
                n, m = int(fields[2]), int(fields[3])
            except ValueError:
                raise DnfFormatError(ln, f"bad header numbers in {line!r}") from None
            if n < 0 or m < 0:
                raise DnfFormatError(ln, "n and m must be non-negative")
            header_line = ln
            continue
        if n is None:
            raise DnfFormatError(ln, "set line before 'p sets' header")
        try:
            nums = [int(f) for f in line.split()]
        except ValueError:
            raise DnfFormatError(ln, f"non-integer token in {line!r}") from None
        if not nums or nums[-1] != 0:
            raise DnfFormatError(ln, "set line must end with 0")
        elems = nums[:-1]
        for a, b in zip(elems, elems[1:]):
            if b <= a:
                raise DnfFormatError(ln, "elements must be strictly ascending")
        for e in elems:
            if not 1 <= e <= n:
                raise DnfFormatError(ln, f"element {e} out of range 1..{n}")
        sets.append(tuple(elems))
    if n is None:
        raise DnfFormatError(1, "missing 'p sets' header")
    if len(sets) != m:
        raise DnfFormatError(header_line, f"header announces {m} sets, found {len(sets)}")
    return SetFamily(n, sets)


def dumps_sets(fam: SetFamily) -> str:
    lines = [f"p sets {fam.n} {fam.m}"]
    for s in fam.sets:
        lines.append(" ".join(str(e) for e in s) + (" 0" if s else "0"))
    return "\n".join(lines) + "\n"


def brute_force_unions(fam: SetFamily) -> list[int]:
    """All achievable unions as sorted masks, by trying every subfamily."""
    masks = fam.masks()
    out = set()
    for pick in range(1, 1 << fam.m):
        u = 0
        for i in range(fam.m):
            if pick >> i & 1:
                u |= masks[i]
        out.add(u)
    return sorted(out)


def extendable_union(fam: SetFamily, tau: Mapping[int, int]) -> bool:
    """Can a union of a non-empty subfamily agree with the partial choice?

    With U the union of all sets avoiding every element ruled out by tau,
    this holds iff U covers the ruled-in elements and U is non-empty — or
    nothing is ruled in and the family contains the empty set.
    """
    n = fam.n
    zeros = 0
    ones = 0
    for e, b in tau.items():
        if not 1 <= e <= n:
            raise ValueError(f"element {e} out of range 1..{n}")
        if b:
            ones |= 1 << (n - e)
        else:
            zeros |= 1 << (n - e)
    u = 0
    has_empty = False
    for mk in fam.masks():
        if mk & zeros == 0:
            u |= mk
            if mk == 0:
                has_empty = True
    return ones & ~u == 0 and (u != 0 or (ones == 0 and has_empty))


def enum_unions(fam: SetFamily, *, counter: StepCounter | None = None):
    """Enumerate the union masks in ascending order."""
    ctr = counter if counter is not None else StepCounter()
    n = fam.n
    m = fam.m
    masks = fam.masks()
    trie = Trie(n + 1, rep=ARRAY, counter=ctr)
    for i, s in enumerate(fam.sets):
        fresh, leaf = trie.insert_get(s)
        assert fresh is not None
        leaf.data = [i]
    alive = [True] * m
    state = {"live": m}
    pc = [None]

    def merge_in(w: tuple[int, ...], data: list, token: list) -> None:
        fresh, leaf = trie.insert_get(w)
        if fresh is not None:
            token.append(("ins", w))
            leaf.data = list(data)
        else:
            token.append(("data", leaf, leaf.data))
            leaf.data = leaf.data + data

    def kill_subtree(node, died: list) -> None:
        stack = [node]
        seen = 0
        while stack:
            nd = stack.pop()
            seen += 1
            if nd.word:
                for i in nd.data:
                    alive[i] = False
                    died.append(i)
            for _, kid in trie._child_items(nd):
                stack.append(kid)
        ctr.n += seen + len(died) + 1

    def emit(mask: int) -> int:
        p = pc[0]
        ctr.n += (n if p is None else (mask ^ p).bit_count()) + 1
        pc[0] = mask
        return mask

    def walk(e: int, ones: int):
        if e > n:
            if state["live"]:
                yield emit(ones)
            return
        root = trie.root
        kid = trie._get(root, e)
        ctr.n += 1
        # e out of the union: sets containing e die; the survivors' union
        # must still cover the elements already ruled in
        if kid is None:
            yield from walk(e + 1, ones)
        else:
            trie._pop_child(root, e)
            root.count -= kid.count
            token: list = [("detach", root, e, kid)]
            died: list[int] = []
            kill_subtree(kid, died)
            state["live"] -= len(died)
            u = 0
            for i in range(m):
                if alive[i]:
                    u |= masks[i]
            ctr.n += m + 1
            if ones & ~u == 0 and (u != 0 or (ones == 0 and state["live"] > 0)):
                yield from walk(e + 1, ones)
            for i in died:
                alive[i] = True
            state["live"] += len(died)
            trie.undo(token)
        # e in the union: some live set must contain it; every set survives,
        # words starting with e lose it (small side merges into large)
        if kid is not None:
            token = []
            cnt = kid.count
            rest = root.count - cnt
            if cnt <= rest:
                trie._pop_child(root, e)
                root.count -= cnt
                token.append(("detach", root, e, kid))
                ctr.n += 1
                stack = [(kid, ())]
                while stack:
                    nd, w = stack.pop()
                    ctr.n += 1
                    if nd.word:
                        merge_in(w, nd.data, token)
                    for s, k2 in trie._child_items(nd):
                        stack.append((k2, w + (s,)))
            else:
                token.append(("root", root))
                trie.root = kid
                ctr.n += 1
                if root.word:
                    merge_in((), root.data, token)
                for s, k2 in trie._child_items(root):
                    if s == e:
                        continue
                    stack = [(k2, (s,))]
                    while stack:
                        nd, w = stack.pop()
                        ctr.n += 1
                        if nd.word:
                            merge_in(w, nd.data, token)
                        for s2, k3 in trie._child_items(nd):
                            stack.append((k3, w + (s2,)))
            yield from walk(e + 1, ones | 1 << (n - e))
            trie.undo(token)

    return walk(1, 0)
