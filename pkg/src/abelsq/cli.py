"""Command-line entry point: ``abelsq <command> ...``.

Exit codes: 0 success, 1 a check or cross-method comparison failed,
2 usage error, 3 a resource cap was hit.
"""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterable

from abelsq import __version__
from abelsq.constructions import layered_factor_prefix, layered_prefix, triple_block
from abelsq.contfrac import DEFAULT_PRECISION_CAP, ContinuedFraction
from abelsq.counting import density_rows, spectrum, stable_spectrum
from abelsq.discrepancy import discrepancy, discrepancy_bound
from abelsq.errors import BudgetError, ResourceCapError
from abelsq.explore import DEFAULT_BUDGET, MAX_SEARCH_LEN, canonical_count, max_as_search, random_word_statistic
from abelsq.regular import DATA_FILE, default_recurrence_system, thue_morse_representation, tm_f_linear_rep_range
from abelsq.report import FORMATS, Report
from abelsq.sturmian import SturmianSpec, interval_partition, sturmian_as_counts, sturmian_prefix
from abelsq.thuemorse import LETTER_MAP, tm_prefix, tm_square_counts
from abelsq.verify import SUITES, run_suite
from abelsq.words import Word, infer_alphabet

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3
METHODS = ("brute", "matrix", "recurrence", "interval-formula", "all")


class UsageError(ValueError):
    pass


# ---------------------------------------------------------------------------
# word selectors


@dataclass
class WordSource:
    """A selected word: finite words have ``text``; infinite ones a prefix function."""

    label: str
    prefix: Callable[[int], Word] | None = None
    finite: Word | None = None
    angle: ContinuedFraction | None = None
    meta: dict | None = None

    @property
    def infinite(self) -> bool:
        return self.finite is None

    def take(self, length: int | None) -> Word:
        if self.finite is not None:
            return self.finite if length is None else self.finite[:length]
        if length is None:
            raise UsageError(f"--length is required for the infinite word {self.label!r}")
        return self.prefix(length)


def parse_word(selector: str, precision_cap: int = DEFAULT_PRECISION_CAP) -> WordSource:
    kind, _, arg = selector.partition(":")
    if kind == "tm":
        return WordSource("tm", tm_prefix, meta={"letters": "0/1", "letter_map": LETTER_MAP})
    if kind in ("fib", "sturmian"):
        cf = ContinuedFraction.parse("fib" if kind == "fib" else arg)
        x = cf.certified(precision_cap)
        spec = SturmianSpec(cf)
        return WordSource(selector, lambda n: sturmian_prefix(spec, n, alpha=x), angle=cf,
                          meta={"alpha": str(cf), "rho": "alpha", "convention": "s"})
    if kind == "triple":
        try:
            n = int(arg)
        except ValueError:
            raise UsageError(f"bad block size in {selector!r}") from None
        return WordSource(selector, finite=triple_block(n))
    if kind == "layered":
        return WordSource("layered", layered_prefix)
    if kind == "file":
        try:
            text = "".join(Path(arg).read_text(encoding="utf-8").split())
        except OSError as exc:
            raise UsageError(f"cannot read {arg}: {exc.strerror}") from None
        return WordSource(selector, finite=Word.from_string(text, infer_alphabet(text)))
    raise UsageError(f"unknown word selector {selector!r}")


def parse_range(text: str, top: int | None = None) -> list[int]:
    """``a..b``, ``a,b,c`` or ``all`` (needs ``top``)."""
    text = text.strip()
    if text == "all":
        if top is None:
            raise UsageError("'all' needs a finite word")
        return list(range(1, top + 1))
    out: list[int] = []
    try:
        for part in text.split(","):
            if ".." in part:
                lo, hi = part.split("..")
                out.extend(range(int(lo), int(hi) + 1))
            else:
                out.append(int(part))
    except ValueError:
        raise UsageError(f"bad range {text!r}") from None
    if any(v < 0 for v in out):
        raise UsageError("ranges must be non-negative")
    return sorted(set(out))


def pool_map(fn: Callable, items: Iterable, threads: int) -> list:
    """Order-preserving map over independent rows."""
    items = list(items)
    if threads <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as ex:
        return list(ex.map(fn, items))


def _config(args: argparse.Namespace) -> dict:
    return {k: v for k, v in sorted(vars(args).items()) if k not in ("func",) and v is not None}


# ---------------------------------------------------------------------------
# commands


def cmd_generate(args) -> tuple[int, str]:
    src = parse_word(args.word, args.precision_cap)
    return EXIT_OK, str(src.take(args.length)) + "\n"


def _tm_methods(orders: list[int], method: str, args) -> Report:
    rep = Report("count", _config(args), ["order", "length"])
    top = max(orders)
    cols: dict[str, dict[int, int]] = {}
    if method in ("brute", "all"):
        counts, cert = tm_square_counts(top)
        cols["brute"] = counts
        rep.provenance["brute"] = {"prefix_len": cert.prefix_len, "checked_len": cert.checked_len}
    if method in ("matrix", "all"):
        cols["matrix"] = tm_f_linear_rep_range(top)
        rep.provenance["matrix"] = {"data_file": DATA_FILE, "version": thue_morse_representation().version}
    if method in ("recurrence", "all"):
        system = default_recurrence_system()
        cols["recurrence"] = {n: system(n) for n in orders}
        rep.provenance["recurrence"] = {"repairs": [r.description for r in system.repairs]}
    rep.columns += list(cols)
    for n in orders:
        vals = [cols[c][n] for c in cols]
        rep.rows.append([n, 2 * n] + vals)
        if len(set(vals)) > 1:
            rep.ok = False
            rep.messages.append(f"methods disagree at order {n}: {dict(zip(cols, vals))}")
    if method == "all":
        rep.columns.append("agree")
        for row in rep.rows:
            row.append(len(set(row[2:])) == 1)
    return rep


def cmd_count(args) -> tuple[int, str]:
    src = parse_word(args.word, args.precision_cap)
    method = args.method
    if args.orders is not None:
        if src.label != "tm":
            raise UsageError("--orders applies to --word tm; use --lengths for other words")
        orders = [n for n in parse_range(args.orders) if n >= 1]
        if not orders:
            raise UsageError("no positive orders requested")
        if method == "interval-formula":
            raise UsageError("interval-formula applies to Sturmian words")
        rep = _tm_methods(orders, method, args)
        return (EXIT_OK if rep.ok else EXIT_FAIL), rep.render(args.format)

    finite_len = len(src.finite) if src.finite is not None else None
    lengths = parse_range(args.lengths or "all", finite_len)
    if not lengths:
        raise UsageError("no lengths requested")
    top = max(lengths)
    rep = Report("count", _config(args), ["length"])
    rep.provenance["word"] = {"selector": src.label, **(src.meta or {})}
    cols: dict[str, dict[int, int]] = {}
    if src.finite is not None:
        if method not in ("brute", "all"):
            raise UsageError(f"method {method!r} is not available for a finite word")
        if top > finite_len:
            raise UsageError(f"length {top} exceeds the word length {finite_len}")
        spec = spectrum(src.finite)
        cols["brute"] = {m: spec.count(m) for m in lengths}
        rep.provenance["word_length"] = finite_len
    else:
        if method == "recurrence" or method == "matrix":
            if src.label != "tm":
                raise UsageError(f"method {method!r} applies to --word tm only")
        if method == "interval-formula" and src.angle is None:
            raise UsageError("interval-formula applies to Sturmian words")
        want_brute = method in ("brute", "all")
        if want_brute:
            spec, cert = stable_spectrum(src.prefix, top, prefix_cap=args.prefix_cap)
            cols["brute"] = {m: spec.count(m) for m in lengths}
            rep.provenance["stability"] = {"prefix_len": cert.prefix_len, "checked_len": cert.checked_len}
        if src.angle is not None and method in ("interval-formula", "all"):
            f = sturmian_as_counts(src.angle, top, x=src.angle.certified(args.precision_cap),
                                   precision_cap=args.precision_cap)
            cols["interval-formula"] = {m: f.get(m, 0) for m in lengths}
        if src.label == "tm" and method in ("matrix", "recurrence", "all"):
            half = [m // 2 for m in lengths if m >= 2 and m % 2 == 0]
            if method in ("matrix", "all") and half:
                lin = tm_f_linear_rep_range(max(half))
                cols["matrix"] = {m: (lin[m // 2] if m >= 2 and m % 2 == 0 else 0) for m in lengths}
            if method in ("recurrence", "all") and half:
                system = default_recurrence_system()
                cols["recurrence"] = {m: (system(m // 2) if m >= 2 and m % 2 == 0 else 0) for m in lengths}
    rep.columns += list(cols)
    for m in lengths:
        vals = [cols[c][m] for c in cols]
        rep.rows.append([m] + vals)
        if len(set(vals)) > 1:
            rep.ok = False
            rep.messages.append(f"methods disagree at length {m}: {dict(zip(cols, vals))}")
    if method == "all" and len(cols) > 1:
        rep.columns.append("agree")
        for row in rep.rows:
            row.append(len(set(row[1:])) == 1)
    return (EXIT_OK if rep.ok else EXIT_FAIL), rep.render(args.format)


def cmd_verify(args) -> tuple[int, str]:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    rep = Report("verify", _config(args), ["suite", "check", "ok", "counterexample"])
    for name in names:
        res = run_suite(name, args.max_len)
        for c in res.checks:
            rep.rows.append([name, c.label, c.ok, c.detail])
        rep.ok &= res.ok
    return (EXIT_OK if rep.ok else EXIT_FAIL), rep.render(args.format)


def cmd_density(args) -> tuple[int, str]:
    src = parse_word(args.word, args.precision_cap)
    if src.finite is not None:
        raise UsageError("density needs an infinite word")
    n_max = args.n_max
    if n_max < 2:
        raise UsageError("--n-max must be at least 2")
    method = args.method or ("interval-formula" if src.angle is not None else "brute")
    rep = Report("density", _config(args), ["n", "cumulative", "ratio"])
    if method == "interval-formula":
        if src.angle is None:
            raise UsageError("interval-formula applies to Sturmian words")
        counts = sturmian_as_counts(src.angle, n_max, precision_cap=args.precision_cap)
        rep.provenance["method"] = "interval-formula"
    elif method == "brute":
        if src.label == "layered":
            # lengths <= n_max are settled once the prefix holds w_k with 2^k >= n_max
            spec = spectrum(layered_factor_prefix(n_max))
            counts = {m: spec.count(m) for m in range(2, n_max + 1, 2)}
            rep.provenance["prefix_len"] = spec.length
        else:
            spec, cert = stable_spectrum(src.prefix, n_max, prefix_cap=args.prefix_cap)
            counts = dict(spec.counts)
            rep.provenance["stability"] = {"prefix_len": cert.prefix_len, "checked_len": cert.checked_len}
        rep.provenance["method"] = "brute"
    else:
        raise UsageError(f"density supports brute or interval-formula, not {method!r}")
    step = args.step or 2
    rows = density_rows(counts, n_max)
    rep.rows = [[n, c, r] for n, c, r in rows if n > 0 and (n % step == 0 or n == rows[-1][0])]
    return EXIT_OK, rep.render(args.format)


def decade_points(n_max: int) -> list[int]:
    pts, p = [], 10
    while p <= n_max:
        pts.append(p)
        p *= 10
    if not pts or pts[-1] != n_max:
        pts.append(n_max)
    return pts


def cmd_discrepancy(args) -> tuple[int, str]:
    cf = ContinuedFraction.parse(args.alpha)
    if cf.a0 != 0:
        raise UsageError("alpha must lie in (0, 1)")
    if args.N < 1:
        raise UsageError("--N must be positive")
    Ns = parse_range(args.points) if args.points else decade_points(args.N)
    K = cf.bound if cf.periodic else None
    rep = Report("discrepancy", _config(args), ["x", "y", "bound", "exact"])
    rep.provenance["partial_quotient_bound"] = K

    def row(N: int) -> list:
        d = discrepancy(cf, N, args.precision_cap)
        c0, c1 = d.scaled
        bound = discrepancy_bound(N, K) if K else float("nan")
        return [N, float(N * d.hi), bound, f"{c0} {'-' if c1 < 0 else '+'} {abs(c1)}*alpha"]

    rep.rows = pool_map(row, Ns, args.threads)
    if K:
        bad = [r[0] for r in rep.rows if not r[1] <= r[2]]
        if bad:
            rep.ok = False
            rep.messages.append(f"bound exceeded at N = {bad}")
    return (EXIT_OK if rep.ok else EXIT_FAIL), rep.render(args.format)


def cmd_search(args) -> tuple[int, str]:
    # refuse before any work: the largest row decides whether the budget suffices
    if args.max_len > MAX_SEARCH_LEN:
        raise BudgetError(f"length must lie in 1..{MAX_SEARCH_LEN}")
    need = max(canonical_count(args.max_len, 2), canonical_count(args.max_len, args.sigma))
    if need > args.budget:
        raise BudgetError(f"{need} canonical words at length {args.max_len} exceed the search budget of {args.budget}")
    rep = Report("search", _config(args), ["n", "binary_max", f"sigma{args.sigma}_max", "binary_witness",
                                             f"sigma{args.sigma}_witness", "binary_ge"])

    def row(n: int) -> list:
        b = max_as_search(n, 2, args.budget, kind=args.kind)
        s = max_as_search(n, args.sigma, args.budget, kind=args.kind)
        return [n, b.maximum, s.maximum, b.witness, s.witness, b.maximum >= s.maximum]

    rep.rows = pool_map(row, range(1, args.max_len + 1), args.threads)
    rep.provenance["kind"] = args.kind
    return EXIT_OK, rep.render(args.format)


def cmd_random(args) -> tuple[int, str]:
    ns = parse_range(args.ns)
    stat = random_word_statistic(ns, args.samples, args.seed)
    rep = Report("random", _config(args), ["n", "mean_total"])
    rep.rows = [[n, m] for n, m in stat.means.items()]
    rep.provenance = {"seed": stat.seed, "samples": stat.samples, "generator": "numpy PCG64",
                      "fitted_exponent": stat.exponent}
    text = rep.render(args.format)
    if args.format != "json":
        sys.stderr.write(f"seed={stat.seed} fitted_exponent={stat.exponent:.6f}\n")
    return EXIT_OK, text


def cmd_partition(args) -> tuple[int, str]:
    cf = ContinuedFraction.parse(args.alpha)
    if cf.a0 != 0:
        raise UsageError("alpha must lie in (0, 1)")
    part = interval_partition(cf, args.n, precision_cap=args.precision_cap)
    if args.format == "csv":
        return EXIT_OK, part.to_csv()
    rep = Report("partition", _config(args), ["index", "lo", "hi", "lo_exact", "hi_exact", "factor", "tag"])
    rep.rows = [[iv.index, iv.left.preview, iv.right.preview, iv.left.exact, iv.right.exact, iv.factor, iv.tag]
                for iv in part.intervals]
    return EXIT_OK, rep.render(args.format)


# ---------------------------------------------------------------------------


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="csv")
    common.add_argument("--seed", type=int)
    common.add_argument("--threads", type=_positive, default=1)
    common.add_argument("--prefix-cap", type=_positive, default=1 << 20,
                        help="largest prefix tried by the doubling protocol")
    common.add_argument("--precision-cap", type=_positive, default=DEFAULT_PRECISION_CAP,
                        help="largest enclosure precision in bits")

    p = argparse.ArgumentParser(prog="abelsq", description="Count distinct abelian-square factors of words.")
    p.add_argument("--version", action="version", version=f"abelsq {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", parents=[common], help="print a prefix of a word")
    g.add_argument("--word", required=True)
    g.add_argument("--length", type=int)
    g.set_defaults(func=cmd_generate)

    c = sub.add_parser("count", parents=[common], help="abelian-square counts per length or order")
    c.add_argument("--word", required=True)
    c.add_argument("--lengths")
    c.add_argument("--orders")
    c.add_argument("--method", choices=METHODS, default="brute")
    c.set_defaults(func=cmd_count)

    v = sub.add_parser("verify", parents=[common], help="run invariant suites")
    v.add_argument("--suite", choices=["all"] + list(SUITES), default="all")
    v.add_argument("--max-len", type=_positive)
    v.set_defaults(func=cmd_verify)

    d = sub.add_parser("density", parents=[common], help="cumulative counts against n^2")
    d.add_argument("--word", required=True)
    d.add_argument("--n-max", type=int, required=True)
    d.add_argument("--method", choices=("brute", "interval-formula"))
    d.add_argument("--step", type=_positive, help="emit every step-th length")
    d.set_defaults(func=cmd_density)

    q = sub.add_parser("discrepancy", parents=[common], help="N*D_N of ({k alpha}) against the bound")
    q.add_argument("--alpha", required=True)
    q.add_argument("--N", type=int, required=True)
    q.add_argument("--points", help="explicit N values instead of decades")
    q.set_defaults(func=cmd_discrepancy)

    s = sub.add_parser("search", parents=[common], help="exhaustive maxima, binary against sigma letters")
    s.add_argument("--max-len", type=_positive, required=True)
    s.add_argument("--sigma", type=_positive, default=3)
    s.add_argument("--kind", choices=("distinct", "inequivalent"), default="distinct")
    s.add_argument("--budget", type=_positive, default=DEFAULT_BUDGET)
    s.set_defaults(func=cmd_search)

    r = sub.add_parser("random", parents=[common], help="mean counts of random binary words")
    r.add_argument("--ns", default="64,128,256,512")
    r.add_argument("--samples", type=_positive, default=200)
    r.set_defaults(func=cmd_random)

    t = sub.add_parser("partition", parents=[common], help="interval partition with factors and tags")
    t.add_argument("--alpha", required=True)
    t.add_argument("--n", type=_positive, required=True)
    t.set_defaults(func=cmd_partition)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)  # exits with status 2 on usage errors
    try:
        code, text = args.func(args)
    except (ResourceCapError, BudgetError) as exc:
        sys.stderr.write(f"abelsq: resource cap: {exc}\n")
        return EXIT_CAP
    except (UsageError, ValueError, KeyError) as exc:
        sys.stderr.write(f"abelsq: error: {exc}\n")
        return EXIT_USAGE
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
