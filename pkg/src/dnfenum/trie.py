"""Tries over small integer alphabets.

Words are tuples of symbols.  Two child representations are supported:

* ``sorted``: children kept in a sorted list, O(alphabet) per child
  operation.  Used for model tries over the binary alphabet, where ordered
  iteration gives lexicographic minimum extraction.
* ``array``: children in a fixed-size slot array with lazy initialisation.
  A slot holds an index into a stack of (symbol, node) entries and is valid
  only if the entry at that index points back at the symbol, so fresh arrays
  are usable without zeroing.  Child operations are O(1), and any word
  operation visits O(|word|) nodes regardless of alphabet size.

Array nodes store their first child in two dedicated fields and only
allocate the slot array when a second child shows up; long unary chains,
the common case in term tries, stay cheap.

Every node carries the number of words in its subtree, which is what the
enumeration algorithms read to decide how to branch.  :class:`TermTrie`
adds the DNF-specific mutations: restricting a variable in place, either by
reinserting the stripped terms (set_variable) or by re-rooting on the
subtree of one literal and merging the smaller remainder into it
(set_variable_fast).  Both return an undo token; applying tokens in LIFO
order restores the exact prior word set.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Sequence

from .core import Dnf, Term, lit_index
from .instrument import StepCounter

SORTED_LIST = "sorted"
ARRAY = "array"

#: "no words below" sentinel for minlen tracking
NO_WORDS = 1 << 30

# Junk fill for fresh slot arrays.  Validation never trusts slot contents,
# so tests may set this to anything.
_FILL = -0x7EAD


class _Node:
    __slots__ = ("s0", "k0", "arr", "syms", "kids", "word", "count", "minlen", "cmask", "data")

    def __init__(self) -> None:
        self.s0 = -1
        self.k0 = None
        self.arr = None
        self.syms = None
        self.kids = None
        self.word = False
        self.count = 0
        self.minlen = NO_WORDS
        # bitmask of present child symbols: the smallest child is one
        # find-first-set away, a single word operation on small alphabets
        self.cmask = 0
        self.data = None


class Trie:
    def __init__(
        self,
        alphabet: int,
        rep: str = ARRAY,
        counter: StepCounter | None = None,
        track_minlen: bool = False,
    ):
        if rep not in (ARRAY, SORTED_LIST):
            raise ValueError(f"unknown child representation {rep!r}")
        self.alphabet = alphabet
        self.rep = rep
        self.array_rep = rep == ARRAY
        self.counter = counter if counter is not None else StepCounter()
        self.track_minlen = track_minlen
        self.root = _Node()
        self.node_count = 1
        self.counter.nodes += 1
        self._path: list[_Node] = []

    def __len__(self) -> int:
        return self.root.count

    # -- child plumbing ----------------------------------------------------

    def _get(self, node: _Node, s: int) -> _Node | None:
        if self.array_rep:
            if node.s0 == s:
                return node.k0
            syms = node.syms
            if syms is None:
                return None
            i = node.arr[s]
            if 0 <= i < len(syms) and syms[i] == s:
                return node.kids[i]
            return None
        syms = node.syms
        if syms is None:
            return None
        for i, t in enumerate(syms):
            if t == s:
                return node.kids[i]
            if t > s:
                return None
        return None

    def _put(self, node: _Node, s: int, child: _Node) -> None:
        node.cmask |= 1 << s
        if self.array_rep:
            if node.s0 < 0 and node.syms is None:
                node.s0 = s
                node.k0 = child
                return
            if node.syms is None:
                # second child: spill into the lazy array
                node.arr = [_FILL] * self.alphabet
                node.syms = [node.s0]
                node.kids = [node.k0]
                node.arr[node.s0] = 0
                node.s0 = -1
                node.k0 = None
            node.arr[s] = len(node.syms)
            node.syms.append(s)
            node.kids.append(child)
            return
        if node.syms is None:
            node.syms = [s]
            node.kids = [child]
            return
        i = 0
        syms = node.syms
        while i < len(syms) and syms[i] < s:
            i += 1
        syms.insert(i, s)
        node.kids.insert(i, child)

    def _pop_child(self, node: _Node, s: int) -> _Node | None:
        if self.array_rep:
            if node.s0 == s:
                k = node.k0
                node.s0 = -1
                node.k0 = None
                node.cmask &= ~(1 << s)
                return k
            syms = node.syms
            if syms is None:
                return None
            i = node.arr[s]
            if not (0 <= i < len(syms) and syms[i] == s):
                return None
            k = node.kids[i]
            last = len(syms) - 1
            if i != last:
                syms[i] = syms[last]
                node.kids[i] = node.kids[last]
                node.arr[syms[i]] = i
            syms.pop()
            node.kids.pop()
            node.cmask &= ~(1 << s)
            return k
        syms = node.syms
        if syms is None:
            return None
        for i, t in enumerate(syms):
            if t == s:
                k = node.kids[i]
                syms.pop(i)
                node.kids.pop(i)
                node.cmask &= ~(1 << s)
                return k
            if t > s:
                return None
        return None

    def _child_items(self, node: _Node) -> Iterator[tuple[int, _Node]]:
        if node.s0 >= 0:
            yield node.s0, node.k0
        if node.syms:
            yield from zip(node.syms, node.kids)

    def _n_children(self, node: _Node) -> int:
        n = 1 if node.s0 >= 0 else 0
        if node.syms:
            n += len(node.syms)
        return n

    def _recalc_minlen(self, node: _Node) -> None:
        m = 0 if node.word else NO_WORDS
        for _, kid in self._child_items(node):
            self.counter.n += 1
            if kid.minlen + 1 < m:
                m = kid.minlen + 1
        node.minlen = m

    # -- word operations ---------------------------------------------------

    def _check_word(self, word: Sequence[int]) -> None:
        for s in word:
            if not 0 <= s < self.alphabet:
                raise ValueError(f"symbol {s} outside alphabet of size {self.alphabet}")

    def insert(self, word: Sequence[int]) -> bool:
        """Add a word; returns False if it was already present."""
        node, _ = self.insert_get(word)
        return node is not None

    def insert_get(self, word: Sequence[int]) -> tuple[_Node | None, _Node]:
        """Like insert, but returns (leaf-if-new-else-None, leaf)."""
        ctr = self.counter
        node = self.root
        path = self._path
        path.clear()
        path.append(node)
        self._check_word(word)
        made = 0
        for s in word:
            nxt = self._get(node, s)
            if nxt is None:
                nxt = _Node()
                made += 1
                self._put(node, s, nxt)
            node = nxt
            path.append(node)
        ctr.n += len(word) + 1 + made
        if made:
            self.node_count += made
            ctr.nodes += made
        if node.word:
            path.clear()
            return None, node
        node.word = True
        for p in path:
            p.count += 1
        if self.track_minlen:
            total = len(word)
            for i, p in enumerate(path):
                r = total - i
                if r < p.minlen:
                    p.minlen = r
        path.clear()
        return node, node

    def search(self, word: Sequence[int]):
        """The leaf node if the word is present, else None."""
        self._check_word(word)
        node = self.root
        steps = 1
        for s in word:
            node = self._get(node, s)
            steps += 1
            if node is None:
                break
        self.counter.n += steps
        if node is not None and node.word:
            return node
        return None

    def delete(self, word: Sequence[int]) -> bool:
        self._check_word(word)
        ctr = self.counter
        node = self.root
        parents: list[tuple[_Node, int]] = []
        for s in word:
            nxt = self._get(node, s)
            if nxt is None:
                ctr.n += len(parents) + 1
                return False
            parents.append((node, s))
            node = nxt
        ctr.n += len(word) + 1
        if not node.word:
            return False
        node.word = False
        node.count -= 1
        for p, _ in parents:
            p.count -= 1
        pruned = 0
        while parents and node.count == 0:
            p, s = parents.pop()
            self._pop_child(p, s)
            pruned += 1
            node = p
        if pruned:
            self.node_count -= pruned
            ctr.nodes -= pruned
            ctr.n += pruned
        if self.track_minlen:
            self._recalc_minlen(node)
            for p, _ in reversed(parents):
                self._recalc_minlen(p)
        return True

    def iter_words(self, start: _Node | None = None) -> Iterator[tuple[int, ...]]:
        """All words in the subtree, as suffixes relative to `start`.

        Deterministic order: insertion order for array children, symbol
        order for sorted children.  The empty word, if present, comes first.
        """
        ctr = self.counter
        node = self.root if start is None else start
        ctr.n += 1
        if node.word:
            yield ()
        stack = [self._child_items(node)]
        syms: list[int] = []
        while stack:
            nxt = next(stack[-1], None)
            if nxt is None:
                stack.pop()
                if syms:
                    syms.pop()
                continue
            s, kid = nxt
            ctr.n += 1
            syms.append(s)
            if kid.word:
                yield tuple(syms)
            stack.append(self._child_items(kid))

    def min_word(self) -> tuple[tuple[int, ...], _Node] | None:
        """Lexicographically smallest word and its leaf (sorted rep only)."""
        node = self.root
        out: list[int] = []
        ctr = self.counter
        while True:
            ctr.n += 1
            if node.word:
                return tuple(out), node
            if not node.syms:
                return None
            out.append(node.syms[0])
            node = node.kids[0]

    # -- undo log ------------------------------------------------------------

    def snapshot_node(self, node: _Node) -> tuple:
        return (
            node,
            node.s0,
            node.k0,
            node.arr,
            node.syms,
            node.kids,
            node.word,
            node.count,
            node.minlen,
            node.cmask,
        )

    def undo(self, token: list) -> None:
        """Reverse one mutation token; tokens must unwind in LIFO order.

        Ops: ("ins", word) deletes a word inserted at the current root;
        ("detach", parent, sym, child) re-attaches a detached subtree;
        ("root", node) restores a previous root; ("restore", snapshot)
        rewrites one node's fields wholesale; ("data", node, old) puts back
        a leaf's payload list.
        """
        for op in reversed(token):
            tag = op[0]
            if tag == "ins":
                self.delete(op[1])
            elif tag == "detach":
                _, parent, s, child = op
                self._put(parent, s, child)
                parent.count += child.count
                self.counter.n += 1
                if self.track_minlen and child.minlen + 1 < parent.minlen:
                    parent.minlen = child.minlen + 1
            elif tag == "root":
                self.root = op[1]
            elif tag == "data":
                op[1].data = op[2]
            elif tag == "restore":
                (node, s0, k0, arr, syms, kids, word, count, minlen, cmask) = op[1]
                node.s0 = s0
                node.k0 = k0
                node.arr = arr
                node.syms = syms
                node.kids = kids
                node.word = word
                node.count = count
                node.minlen = minlen
                node.cmask = cmask
            else:
                raise ValueError(f"bad undo op {tag!r}")


class TermTrie(Trie):
    """Trie of DNF terms encoded as canonical literal-rank words.

    The words of the trie are exactly the terms of the formula being
    restricted: root subtree counts for the literals of a variable give the
    three-way split (terms with the negated literal, with the positive one,
    with neither) that drives the branching enumerators.
    """

    def __init__(
        self,
        n: int,
        counter: StepCounter | None = None,
        rep: str = ARRAY,
        track_minlen: bool = False,
    ):
        super().__init__(2 * n, rep=rep, counter=counter, track_minlen=track_minlen)
        self.n = n

    @classmethod
    def from_dnf(
        cls,
        d: Dnf,
        counter: StepCounter | None = None,
        rep: str = ARRAY,
        track_minlen: bool = False,
    ) -> "TermTrie":
        tt = cls(d.n, counter=counter, rep=rep, track_minlen=track_minlen)
        for t in d.terms:
            tt.insert(tuple(lit_index(lit) for lit in t))
        return tt

    @property
    def m(self) -> int:
        return self.root.count

    def insert_term(self, t: Term) -> bool:
        return self.insert(tuple(lit_index(lit) for lit in t))

    def decode(self) -> list[Term]:
        """The current word set as canonical terms, sorted in trie order."""
        out = []
        for w in sorted(self.iter_words()):
            out.append(tuple(s // 2 + 1 if s & 1 else -(s // 2 + 1) for s in w))
        return out

    def to_dnf(self) -> Dnf:
        return Dnf(self.n, self.decode())

    def counts_for(self, v: int) -> tuple[int, int, int]:
        """Subtree sizes (terms with -v, with v, with neither) at the root."""
        root = self.root
        a = self._get(root, 2 * v - 2)
        b = self._get(root, 2 * v - 1)
        self.counter.n += 2
        na = a.count if a is not None else 0
        nb = b.count if b is not None else 0
        return na, nb, root.count - na - nb

    # -- in-place restriction with undo -------------------------------------

    def _absorb(self, node: _Node) -> None:
        # an empty term appeared: it absorbs every other term
        node.s0 = -1
        node.k0 = None
        node.arr = None
        node.syms = None
        node.kids = None
        node.word = True
        node.count = 1
        node.minlen = 0
        node.cmask = 0

    def set_variable(self, v: int, b: int) -> list:
        """Restrict x_v := b in place, rebuilding by strip-and-reinsert.

        Terms whose literal on v is falsified are dropped in one detach;
        terms whose literal is satisfied are detached and reinserted without
        it.  Returns an undo token.
        """
        token: list = []
        root = self.root
        if root.word:
            return token
        if b == 1:
            sat, fal = 2 * v - 1, 2 * v - 2
        else:
            sat, fal = 2 * v - 2, 2 * v - 1
        ctr = self.counter
        dead = self._pop_child(root, fal)
        ctr.n += 1
        if dead is not None:
            root.count -= dead.count
            token.append(("detach", root, fal, dead))
        strip = self._pop_child(root, sat)
        ctr.n += 1
        if strip is not None:
            root.count -= strip.count
            token.append(("detach", root, sat, strip))
        if self.track_minlen and (dead is not None or strip is not None):
            self._recalc_minlen(root)
        if strip is not None:
            for w in self.iter_words(strip):
                if not w:
                    token.append(("restore", self.snapshot_node(root)))
                    self._absorb(root)
                    break
                if self.insert(w):
                    token.append(("ins", w))
        return token

    def set_variable_fast(self, v: int, b: int = 1) -> list:
        """Restrict x_v := b by re-rooting on the satisfied literal's subtree.

        The subtree under the satisfied literal already holds exactly the
        stripped surviving terms, so it becomes the new root and only the
        terms mentioning neither literal are copied in.  Cheapest when that
        remainder is the small side; the caller chooses between this and
        set_variable from the subtree counts.
        """
        token: list = []
        root = self.root
        if root.word:
            return token
        if b == 1:
            sat, fal = 2 * v - 1, 2 * v - 2
        else:
            sat, fal = 2 * v - 2, 2 * v - 1
        ctr = self.counter
        base = self._get(root, sat)
        ctr.n += 1
        token.append(("root", root))
        if base is None:
            base = _Node()
            self.node_count += 1
            ctr.nodes += 1
        self.root = base
        if base.word:
            # the term was the bare literal on v: tautology below this point
            if self._n_children(base):
                token.append(("restore", self.snapshot_node(base)))
                self._absorb(base)
            return token
        for s, kid in self._child_items(root):
            if s == sat or s == fal:
                continue
            for w in self.iter_words(kid):
                full = (s,) + w
                if self.insert(full):
                    token.append(("ins", full))
        return token
