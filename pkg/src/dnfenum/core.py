"""DNF formulas over variables x_1..x_n and the operations shared by all enumerators.

Conventions used throughout the package:

* A literal is a nonzero int: ``v`` for the positive literal on variable v,
  ``-v`` for the negated one (1 <= v <= n).
* A term is a conjunction of literals over distinct variables, stored as a
  tuple sorted in canonical literal order (see :func:`lit_index`).
* An assignment (a "model" once it satisfies the formula) is an int mask whose
  binary expansion, zero padded to n digits, is the bit string x_1 x_2 ... x_n.
  Variable v therefore lives at bit position ``n - v``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Mapping

import numpy as np

Term = tuple[int, ...]
PartialAssignment = Mapping[int, int]

BRUTE_FORCE_MAX_VARS = 24


class DnfFormatError(ValueError):
    """Raised for malformed formula text, with a 1-based line number."""

    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


def lit_index(lit: int) -> int:
    """Rank of a literal in the canonical order -x1 < x1 < -x2 < x2 < ...

    The rank doubles as the edge symbol for term tries, so the alphabet of a
    formula on n variables has exactly 2n symbols.
    """
    if lit > 0:
        return 2 * lit - 1
    return -2 * lit - 2


def make_term(lits: Iterable[int]) -> Term:
    """Sort literals canonically and reject repeated or contradictory variables."""
    out = sorted(set(lits), key=lit_index)
    seen = set()
    for lit in out:
        if lit == 0:
            raise ValueError("literal 0 is not allowed")
        v = abs(lit)
        if v in seen:
            raise ValueError(f"variable {v} appears twice in one term")
        seen.add(v)
    return tuple(out)


@dataclass(frozen=True)
class Dnf:
    """A DNF formula: a set of terms interpreted as their disjunction.

    Terms are deduplicated, keeping first occurrence order.  A formula that
    contains the empty term is a tautology over its n variables; the empty
    term absorbs every other term, so the canonical form is then exactly
    ``((),)``.  Variables that appear in no term are free: models are always
    full length-n assignments.
    """

    n: int
    terms: tuple[Term, ...]

    def __init__(self, n: int, terms: Iterable[Iterable[int]]):
        if n < 0:
            raise ValueError("n must be >= 0")
        canon: list[Term] = []
        seen: set[Term] = set()
        for raw in terms:
            t = make_term(raw)
            for lit in t:
                if abs(lit) > n:
                    raise ValueError(f"literal {lit} out of range for n={n}")
            if t == ():
                canon = [()]
                break
            if t not in seen:
                seen.add(t)
                canon.append(t)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "terms", tuple(canon))

    @property
    def m(self) -> int:
        return len(self.terms)

    @cached_property
    def size(self) -> int:
        """Total number of literals, the usual input size ||D||."""
        return sum(len(t) for t in self.terms)

    @cached_property
    def term_masks(self) -> tuple[tuple[int, int], ...]:
        """Per term (pos, neg) bit masks; a satisfies t iff a&pos==pos and a&neg==0."""
        out = []
        for t in self.terms:
            pos = neg = 0
            for lit in t:
                b = 1 << (self.n - abs(lit))
                if lit > 0:
                    pos |= b
                else:
                    neg |= b
            out.append((pos, neg))
        return tuple(out)

    def is_tautology(self) -> bool:
        return self.terms == ((),)

    def __repr__(self) -> str:
        return f"Dnf(n={self.n}, terms={list(self.terms)!r})"


def mask_from_bits(bits: str) -> int:
    """Parse a bit string like '110' into the int mask convention."""
    if bits == "":
        return 0
    if set(bits) - {"0", "1"}:
        raise ValueError(f"not a bit string: {bits!r}")
    return int(bits, 2)


def bits_from_mask(mask: int, n: int) -> str:
    return format(mask, f"0{n}b") if n else ""


def satisfies(d: Dnf, assignment: int) -> bool:
    """True iff the assignment mask is a model of d."""
    for pos, neg in d.term_masks:
        if assignment & pos == pos and not assignment & neg:
            return True
    return False


def _check_partial(d: Dnf, tau: PartialAssignment) -> None:
    for v, b in tau.items():
        if not 1 <= v <= d.n:
            raise ValueError(f"variable {v} out of range for n={d.n}")
        if b not in (0, 1):
            raise ValueError(f"assignment value for x{v} must be 0 or 1, got {b!r}")


def restrict(d: Dnf, tau: PartialAssignment) -> Dnf:
    """The restriction of d under a partial assignment.

    Terms falsified by tau are dropped and assigned variables are stripped
    from the survivors.  A term whose literals are all satisfied becomes the
    empty term, which makes the result a tautology over the remaining
    variables (the Dnf constructor collapses it to the single empty term).
    The result keeps the same n; assigned variables simply no longer occur,
    so models of d compatible with tau are exactly models of the result
    compatible with tau.
    """
    _check_partial(d, tau)
    kept: list[tuple[int, ...]] = []
    for t in d.terms:
        out = []
        for lit in t:
            b = tau.get(abs(lit))
            if b is None:
                out.append(lit)
            elif (lit > 0) != (b == 1):
                break
        else:
            kept.append(tuple(out))
    return Dnf(d.n, kept)


def compatible(mask: int, tau: PartialAssignment, n: int) -> bool:
    """True iff the full assignment agrees with tau on its domain."""
    for v, b in tau.items():
        if (mask >> (n - v)) & 1 != b:
            return False
    return True


def brute_force_models(d: Dnf) -> set[int]:
    """All models of d by exhaustive scan of the 2^n assignments.

    Vectorised, but still a scan: meant as the ground-truth oracle for tests
    and --check-oracle, so it deliberately shares no logic with the
    enumerators.  Refuses n > 24.
    """
    if d.n > BRUTE_FORCE_MAX_VARS:
        raise ValueError(f"brute force limited to n <= {BRUTE_FORCE_MAX_VARS}")
    masks = np.arange(1 << d.n, dtype=np.int64)
    sat = np.zeros(1 << d.n, dtype=bool)
    for pos, neg in d.term_masks:
        sat |= (masks & pos == pos) & (masks & neg == 0)
    return set(np.flatnonzero(sat).tolist())


def parse_dnf(text: str) -> Dnf:
    """Parse the .dnf interchange format.

    Comment lines start with ``c``.  The header ``p dnf <n> <m>`` is followed
    by m term lines, each a list of nonzero literals terminated by 0.
    """
    header: tuple[int, int] | None = None
    terms: list[list[int]] = []
    header_line = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if header is None:
            parts = line.split()
            if len(parts) != 4 or parts[0] != "p" or parts[1] != "dnf":
                raise DnfFormatError(lineno, f"expected 'p dnf <n> <m>', got {line!r}")
            try:
                n, m = int(parts[2]), int(parts[3])
            except ValueError:
                raise DnfFormatError(lineno, f"bad header numbers in {line!r}") from None
            if n < 1 or m < 0:
                raise DnfFormatError(lineno, "need n >= 1 and m >= 0")
            header = (n, m)
            header_line = lineno
            continue
        n, m = header
        if len(terms) >= m:
            raise DnfFormatError(lineno, f"more than {m} term lines")
        try:
            nums = [int(x) for x in line.split()]
        except ValueError:
            raise DnfFormatError(lineno, f"non-integer token in {line!r}") from None
        if not nums or nums[-1] != 0:
            raise DnfFormatError(lineno, "term line must end with 0")
        if 0 in nums[:-1]:
            raise DnfFormatError(lineno, "literal 0 before end of line")
        for lit in nums[:-1]:
            if abs(lit) > n:
                raise DnfFormatError(lineno, f"literal {lit} out of range for n={n}")
        try:
            make_term(nums[:-1])
        except ValueError as e:
            raise DnfFormatError(lineno, str(e)) from None
        terms.append(nums[:-1])
    if header is None:
        raise DnfFormatError(1, "missing 'p dnf' header")
    if len(terms) != header[1]:
        raise DnfFormatError(
            header_line, f"header announces {header[1]} terms, found {len(terms)}"
        )
    return Dnf(header[0], terms)


def dumps_dnf(d: Dnf) -> str:
    """Serialize back to the .dnf format; parse(dumps(d)) == d."""
    lines = [f"p dnf {d.n} {d.m}"]
    for t in d.terms:
        lines.append(" ".join(str(lit) for lit in t) + (" 0" if t else "0"))
    return "\n".join(lines) + "\n"


def term_models_count(t: Term, n: int) -> int:
    """Number of assignments satisfying a single term."""
    return 1 << (n - len(t))


def all_terms(n: int) -> Iterator[Term]:
    """Every nonempty term over n variables, in canonical trie order."""

    def rec(v: int, acc: list[int]) -> Iterator[Term]:
        if acc:
            yield tuple(acc)
        for w in range(v, n + 1):
            for lit in (-w, w):
                acc.append(lit)
                yield from rec(w + 1, acc)
                acc.pop()

    yield from rec(1, [])
