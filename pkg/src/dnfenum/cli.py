"""Command-line front end.

Three entry forms share one executable:

* ``dnfenum [FILE] --algo NAME [flags]`` — enumerate the models of a .dnf
  formula (or the unions of a .sets family with ``--algo setunion``),
  streaming them to stdout.
* ``dnfenum gen --kind KIND --n N [--m M --k K --seed S]`` — write a
  reproducible random instance.
* ``dnfenum sweep --algo NAME --n N --sizes M1,M2,...`` — run one generated
  instance per size and emit a CSV of delay statistics.

Exit codes: 0 success, 2 usage error, 3 unreadable or malformed input,
4 oracle mismatch under ``--check-oracle``.

Output formats: ``bits`` prints one full bit string per model; ``flips``
prints the first model as a bit string and every later model as the
1-based positions in which it differs from its predecessor, which is
enough to replay the bits stream.  Gray-coded algorithms emit single-flip
lines; for the others a line may hold up to n positions.

With ``--stats``, one JSON record goes to stderr.  Delays are measured in
instrumented steps (wall_ns is informational only), and identical inputs,
flags, and seeds give identical step counts and byte-identical streams.
"""

from __future__ import annotations

import argparse
import csv
import itertools
import math
import random
import sys
from typing import Callable, Iterator

from .avg import MODE_FAST, MODE_SLOW, enum_avg
from .classic import enum_flashlight, enum_union_ordered, enum_union_priority
from .core import (
    BRUTE_FORCE_MAX_VARS,
    Dnf,
    DnfFormatError,
    all_terms,
    bits_from_mask,
    brute_force_models,
    dumps_dnf,
    make_term,
    parse_dnf,
)
from .graycode import enum_single_term_dnf
from .instrument import StepCounter, measure
from .kdnf import LAMBDA_DEFAULT, KdnfConfig, enum_kdnf, enum_kdnf_hybrid
from .monotone import (
    enum_monotone_avg,
    enum_monotone_log,
    enum_monotone_rs,
    normalize_unate,
)
from .setunion import (
    SetFamily,
    brute_force_unions,
    dumps_sets,
    enum_unions,
    parse_sets,
)

ALGOS = (
    "term-gray",
    "union-priority",
    "union-ordered",
    "flashlight",
    "kdnf",
    "kdnf-hybrid",
    "avg",
    "monotone-rs",
    "monotone-avg",
    "monotone-log",
    "setunion",
)

GEN_KINDS = ("random", "monotone", "kdnf", "all-terms", "sets")

EXIT_USAGE = 2
EXIT_INPUT = 3
EXIT_ORACLE = 4

#: brute-forcing set unions doubles per set; keep the oracle under a second
ORACLE_MAX_SETS = 20


# -- instance generation -----------------------------------------------------


def _count_terms(n: int, wmax: int, signed: bool) -> int:
    return sum(math.comb(n, w) * ((1 << w) if signed else 1) for w in range(1, wmax + 1))


def _all_candidate_terms(n: int, wmax: int, signed: bool) -> list[tuple[int, ...]]:
    out = []
    for w in range(1, wmax + 1):
        for vs in itertools.combinations(range(1, n + 1), w):
            if signed:
                for signs in itertools.product((1, -1), repeat=w):
                    out.append(make_term(v * s for v, s in zip(vs, signs)))
            else:
                out.append(tuple(vs))
    return out


def generate(kind: str, n: int, m: int | None, k: int = 3, seed: int = 0):
    """Draw a reproducible random instance; returns a Dnf or a SetFamily.

    ``random`` and ``monotone`` draw terms of uniform random width (signed
    and positive respectively), ``kdnf`` draws signed terms of width <= k,
    ``all-terms`` is the fixed family of every nonempty term, and ``sets``
    draws a set family.  Duplicates are redrawn, so instances are uniform
    over distinct draws; asking for more distinct objects than exist fails.
    """
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    rng = random.Random(seed)
    if kind == "all-terms":
        want = 3**n - 1
        if m is not None and m != want:
            raise ValueError(f"the all-terms family on n={n} has exactly {want} terms")
        return Dnf(n, all_terms(n))
    if m is None or m < 0:
        raise ValueError(f"kind {kind!r} needs m >= 0")
    if kind == "sets":
        total = 1 << n
        if m > total:
            raise ValueError(f"m={m} exceeds the number of distinct sets ({total})")
        if 3 * m >= total and total <= 1 << 20:
            pool = [tuple(e for e in range(1, n + 1) if mk >> (n - e) & 1) for mk in range(total)]
            return SetFamily(n, rng.sample(pool, m))
        seen = set()
        out = []
        while len(out) < m:
            s = tuple(e for e in range(1, n + 1) if rng.random() < 0.5)
            if s not in seen:
                seen.add(s)
                out.append(s)
        return SetFamily(n, out)
    if kind == "random":
        wmax, signed = n, True
    elif kind == "monotone":
        wmax, signed = n, False
    elif kind == "kdnf":
        if k < 1:
            raise ValueError(f"k must be >= 1, got {k}")
        wmax, signed = min(k, n), True
    else:
        raise ValueError(f"unknown kind {kind!r}")
    total = _count_terms(n, wmax, signed)
    if m > total:
        raise ValueError(f"m={m} exceeds the number of distinct terms ({total})")
    if 3 * m >= total and total <= 1 << 20:
        return Dnf(n, rng.sample(_all_candidate_terms(n, wmax, signed), m))
    seen = set()
    out = []
    while len(out) < m:
        w = rng.randint(1, wmax)
        vs = rng.sample(range(1, n + 1), w)
        t = make_term(v if not signed or rng.random() < 0.5 else -v for v in vs)
        if t not in seen:
            seen.add(t)
            out.append(t)
    return Dnf(n, out)


# -- enumerate ---------------------------------------------------------------


class _StreamWriter:
    """Batches model lines so a million-model run is not a million writes."""

    def __init__(self, n: int, fmt: str, out):
        self.n = n
        self.fmt = fmt
        self.out = out
        self.prev: int | None = None
        self.buf: list[str] = []

    def __call__(self, mask: int) -> None:
        n = self.n
        if self.fmt == "bits" or self.prev is None:
            self.buf.append(bits_from_mask(mask, n))
        else:
            diff = mask ^ self.prev
            pos = []
            while diff:
                b = diff & -diff
                pos.append(n - b.bit_length() + 1)
                diff ^= b
            pos.reverse()
            self.buf.append(" ".join(map(str, pos)))
        self.prev = mask
        if len(self.buf) >= 4096:
            self.flush()

    def flush(self) -> None:
        if self.buf:
            self.out.write("\n".join(self.buf) + "\n")
            self.buf.clear()


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _make_factory(args, obj) -> Callable[[StepCounter], Iterator[int]]:
    """Bind an algorithm to a parsed instance; raises ValueError on misuse."""
    algo = args.algo
    if algo == "setunion":
        if not isinstance(obj, SetFamily):
            raise ValueError("--algo setunion needs a .sets family")
        return lambda ctr: enum_unions(obj, counter=ctr)
    d = obj
    if not isinstance(d, Dnf):
        raise ValueError(f"--algo {algo} needs a .dnf formula")
    if algo == "term-gray":
        if d.m != 1:
            raise ValueError(f"--algo term-gray needs exactly one term, got {d.m}")
        return lambda ctr: enum_single_term_dnf(d, counter=ctr)
    if algo == "union-priority":
        return lambda ctr: enum_union_priority(d, counter=ctr)
    if algo == "union-ordered":
        return lambda ctr: enum_union_ordered(d, counter=ctr)
    if algo == "flashlight":
        return lambda ctr: enum_flashlight(d, counter=ctr)
    if algo in ("kdnf", "kdnf-hybrid"):
        wmax = max((len(t) for t in d.terms), default=1)
        if args.k is not None and args.k < wmax:
            raise ValueError(f"--k {args.k} is below the maximum term width {wmax}")
        cfg = KdnfConfig.for_width(args.k if args.k is not None else wmax, lam=args.lam)
        fn = enum_kdnf if algo == "kdnf" else enum_kdnf_hybrid
        return lambda ctr: fn(d, cfg, counter=ctr)
    if algo == "avg":
        return lambda ctr: enum_avg(d, args.mode, counter=ctr)
    # the monotone family accepts any unate formula: single-polarity
    # negative variables are flipped on the way in and the models on the
    # way out, which changes neither deltas nor step counts
    md, flip = normalize_unate(d)
    fn = {
        "monotone-rs": enum_monotone_rs,
        "monotone-avg": enum_monotone_avg,
        "monotone-log": enum_monotone_log,
    }[algo]
    if not flip:
        return lambda ctr: fn(md, counter=ctr)

    def factory(ctr):
        gen = fn(md, counter=ctr)
        return (mask ^ flip for mask in gen)

    return factory


def _check_against_oracle(obj, models: list[int], stream=sys.stderr) -> bool:
    if isinstance(obj, SetFamily):
        expect = set(brute_force_unions(obj))
        what = "unions"
    else:
        expect = brute_force_models(obj)
        what = "models"
    got = set(models)
    if len(models) != len(got):
        print(f"dnfenum: oracle mismatch: {len(models) - len(got)} duplicate {what}", file=stream)
        return False
    if got != expect:
        extra = len(got - expect)
        missing = len(expect - got)
        print(
            f"dnfenum: oracle mismatch: {missing} missing and {extra} spurious {what}",
            file=stream,
        )
        return False
    return True


def _cmd_run(argv: list[str]) -> int:
    p = argparse.ArgumentParser(
        prog="dnfenum",
        description="Enumerate the models of a DNF formula (or the unions of a set family).",
    )
    p.add_argument("file", nargs="?", default="-", help="input file, '-' for stdin")
    p.add_argument("--algo", required=True, choices=ALGOS)
    p.add_argument("--mode", choices=(MODE_SLOW, MODE_FAST), default=MODE_FAST,
                   help="branching strategy for --algo avg")
    p.add_argument("--k", type=int, default=None, help="width bound for --algo kdnf")
    p.add_argument("--lambda", dest="lam", type=float, default=LAMBDA_DEFAULT,
                   help="frame-size cutoff factor for --algo kdnf-hybrid")
    p.add_argument("--count", action="store_true", help="print only the model count")
    p.add_argument("--limit", type=int, default=None, help="stop after this many models")
    p.add_argument("--stats", action="store_true", help="emit a JSON stats record to stderr")
    p.add_argument("--format", choices=("bits", "flips"), default="bits")
    p.add_argument("--check-oracle", action="store_true",
                   help="verify the output against the brute-force oracle")
    args = p.parse_args(argv)
    if args.limit is not None and args.limit < 0:
        p.error("--limit must be >= 0")
    if args.check_oracle and args.limit is not None:
        p.error("--check-oracle needs the full stream, not --limit")

    try:
        text = _read_input(args.file)
    except OSError as e:
        print(f"dnfenum: cannot read {args.file}: {e}", file=sys.stderr)
        return EXIT_INPUT
    try:
        obj = parse_sets(text) if args.algo == "setunion" else parse_dnf(text)
        factory = _make_factory(args, obj)
    except (DnfFormatError, ValueError) as e:
        print(f"dnfenum: {e}", file=sys.stderr)
        return EXIT_INPUT
    if args.check_oracle:
        if isinstance(obj, SetFamily):
            if obj.m > ORACLE_MAX_SETS:
                print(f"dnfenum: --check-oracle needs m <= {ORACLE_MAX_SETS} sets", file=sys.stderr)
                return EXIT_INPUT
        elif obj.n > BRUTE_FORCE_MAX_VARS:
            print(f"dnfenum: --check-oracle needs n <= {BRUTE_FORCE_MAX_VARS}", file=sys.stderr)
            return EXIT_INPUT

    sink = None if args.count else _StreamWriter(obj.n, args.format, sys.stdout)
    models, stats = measure(factory, limit=args.limit, collect=args.check_oracle, sink=sink)
    if sink is not None:
        sink.flush()
    if args.count:
        print(stats.n_models)
    if args.stats:
        print(stats.to_json(), file=sys.stderr)
    if args.check_oracle and not _check_against_oracle(obj, models):
        return EXIT_ORACLE
    return 0


# -- gen ---------------------------------------------------------------------


def _write_output(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _cmd_gen(argv: list[str]) -> int:
    p = argparse.ArgumentParser(prog="dnfenum gen", description="Generate a random instance.")
    p.add_argument("--kind", required=True, choices=GEN_KINDS)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--k", type=int, default=3, help="width bound for --kind kdnf")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--out", default="-")
    args = p.parse_args(argv)
    if args.m is None and args.kind != "all-terms":
        p.error(f"--kind {args.kind} needs --m")
    try:
        obj = generate(args.kind, args.n, args.m, k=args.k, seed=args.seed)
    except ValueError as e:
        print(f"dnfenum: {e}", file=sys.stderr)
        return EXIT_INPUT
    _write_output(args.out, dumps_sets(obj) if isinstance(obj, SetFamily) else dumps_dnf(obj))
    return 0


# -- sweep -------------------------------------------------------------------


def _default_kind(algo: str) -> str:
    if algo == "setunion":
        return "sets"
    if algo.startswith("monotone"):
        return "monotone"
    if algo in ("kdnf", "kdnf-hybrid"):
        return "kdnf"
    return "random"


def _cmd_sweep(argv: list[str]) -> int:
    p = argparse.ArgumentParser(
        prog="dnfenum sweep",
        description="Generate one instance per size, enumerate, and emit CSV delay stats.",
    )
    p.add_argument("--algo", required=True, choices=ALGOS)
    p.add_argument("--kind", choices=GEN_KINDS, default=None,
                   help="instance family (default chosen from --algo)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--sizes", required=True,
                   help="comma-separated m values; empty string for a header-only CSV")
    p.add_argument("--seed", type=int, default=0, help="instance i uses seed+i")
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--mode", choices=(MODE_SLOW, MODE_FAST), default=MODE_FAST)
    p.add_argument("--lambda", dest="lam", type=float, default=LAMBDA_DEFAULT)
    p.add_argument("--limit", type=int, default=None)
    p.add_argument("--check-oracle", action="store_true")
    p.add_argument("-o", "--out", default="-")
    args = p.parse_args(argv)
    kind = args.kind if args.kind is not None else _default_kind(args.algo)
    try:
        sizes = [int(s) for s in args.sizes.split(",") if s.strip()]
    except ValueError:
        p.error(f"bad --sizes value {args.sizes!r}")
    if args.check_oracle and args.limit is not None:
        p.error("--check-oracle needs the full stream, not --limit")

    rows = []
    for i, m in enumerate(sizes):
        genk = args.k if args.k is not None else 3
        try:
            obj = generate(kind, args.n, m, k=genk, seed=args.seed + i)
            factory = _make_factory(args, obj)
        except ValueError as e:
            print(f"dnfenum: size {m}: {e}", file=sys.stderr)
            return EXIT_INPUT
        if args.check_oracle:
            if isinstance(obj, SetFamily):
                if obj.m > ORACLE_MAX_SETS:
                    print(f"dnfenum: --check-oracle needs m <= {ORACLE_MAX_SETS} sets", file=sys.stderr)
                    return EXIT_INPUT
            elif obj.n > BRUTE_FORCE_MAX_VARS:
                print(f"dnfenum: --check-oracle needs n <= {BRUTE_FORCE_MAX_VARS}", file=sys.stderr)
                return EXIT_INPUT
        models, stats = measure(factory, limit=args.limit, collect=args.check_oracle)
        if args.check_oracle and not _check_against_oracle(obj, models):
            print(f"dnfenum: sweep failed at size {m}", file=sys.stderr)
            return EXIT_ORACLE
        rows.append(
            (m, args.n, stats.n_models, stats.avg_delay_steps, stats.max_delay_steps, stats.wall_ns)
        )

    out = sys.stdout if args.out == "-" else open(args.out, "w", encoding="utf-8", newline="")
    try:
        w = csv.writer(out)
        w.writerow(["m", "n", "n_models", "avg_delay_steps", "max_delay_steps", "wall_ns"])
        w.writerows(rows)
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


def main(argv: list[str] | None = None) -> int:
    args = list(sys.argv[1:]) if argv is None else list(argv)
    if args[:1] == ["gen"]:
        return _cmd_gen(args[1:])
    if args[:1] == ["sweep"]:
        return _cmd_sweep(args[1:])
    return _cmd_run(args)


if __name__ == "__main__":
    sys.exit(main())
