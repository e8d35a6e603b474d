"""Named invariant suites, runnable from the command line.

Each suite pairs a library routine with a deliberately naive route and
reports every check with a counterexample when one fails.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from abelsq.constructions import layered_structure_checks
from abelsq.contfrac import GOLDEN, SILVER, ContinuedFraction
from abelsq.counting import inequivalent_spectrum, spectrum
from abelsq.discrepancy import discrepancy, discrepancy_bound, discrepancy_quadratic
from abelsq.explore import canonical_words
from abelsq.factors import ENGINES
from abelsq.regular import (
    TranscriptionError,
    default_recurrence_system,
    rules_from_data,
    base_order_counts,
    tm_f_linear_rep,
    tm_f_linear_rep_range,
    validate_and_repair,
)
from abelsq.sturmian import (
    HEAVY,
    LIGHT,
    SturmianSpec,
    formula_vs_words,
    interval_partition,
    sturmian_as_counts,
    sturmian_prefix,
)
from abelsq.thuemorse import (
    tm_complexity,
    tm_complexity_recurrence,
    tm_f_closed_forms,
    tm_faa_fab_range,
    tm_is_abelian_square_at,
    tm_prefix,
    tm_square_counts,
)
from abelsq.words import (
    Alphabet,
    Word,
    distinct_factors,
    is_abelian_k_power,
    is_abelian_square,
    is_balanced,
    parikh,
    period_and_exponent,
)

FIB_AS_COUNTS = (1, 3, 5, 1, 9, 5, 5, 15, 3, 13, 13, 5, 25, 9, 15, 25, 1, 27)
STURMIAN_ANGLES = (GOLDEN, SILVER, ContinuedFraction(0, (), (1, 2)))


@dataclass
class Check:
    label: str
    ok: bool
    detail: str = ""


@dataclass
class SuiteResult:
    name: str
    checks: list[Check] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def add(self, label: str, ok: bool, detail: str = "") -> None:
        self.checks.append(Check(label, bool(ok), "" if ok else detail))

    def first_failure(self) -> Check | None:
        return next((c for c in self.checks if not c.ok), None)


def _first(items, pred) -> object | None:
    return next((x for x in items if not pred(x)), None)


def _binary_words(n: int):
    for bits in itertools.product("ab", repeat=n):
        yield "".join(bits)


def naive_spectrum(text: str) -> dict[int, int]:
    """Distinct abelian squares per even length by string sets and letter counters."""
    out = {}
    for m in range(2, len(text) + 1, 2):
        found = {text[i:i + m] for i in range(len(text) - m + 1)
                 if Counter(text[i:i + m // 2]) == Counter(text[i + m // 2:i + m])}
        if found:
            out[m] = len(found)
    return out


# ---------------------------------------------------------------------------


def suite_words(max_len: int = 8) -> SuiteResult:
    res = SuiteResult("words")
    bad = None
    for sigma in (1, 2, 3):
        alpha = Alphabet.of_size(sigma)
        for n in range(1, max_len + 1):
            for row in canonical_words(n, sigma):
                w = Word(row, alpha)
                text = str(w)
                for m in range(1, n + 1):
                    naive = {text[i:i + m] for i in range(n - m + 1)}
                    for engine in ENGINES:
                        got = {f.text(w) for f in distinct_factors(w, m, engine)}
                        if got != naive:
                            bad = bad or f"{text!r} m={m} engine={engine}"
    res.add(f"dedup engines equal naive string sets (sigma<=3, n<={max_len})", bad is None, str(bad))
    bad = None
    for n in range(1, max_len + 1):
        for text in _binary_words(n):
            p, e = period_and_exponent(text)
            q = next(q for q in range(1, n + 1) if all(text[i] == text[i + q] for i in range(n - q)))
            if p != q or e != Fraction(n, q):
                bad = bad or text
    res.add(f"period is the least naive period (binary, n<={max_len})", bad is None, str(bad))
    res.add("parikh sums to length", all(sum(parikh(t)) == len(t) for t in ("", "abaab", "aabbab")))
    return res


def suite_abelian_count(max_len: int = 12) -> SuiteResult:
    res = SuiteResult("abelian-count")
    bad = ineq_bad = mono_bad = None
    for n in range(1, max_len + 1):
        for text in _binary_words(n):
            spec = spectrum(text)
            if spec.counts != naive_spectrum(text):
                bad = bad or text
            ineq = inequivalent_spectrum(text)
            if any(ineq.count(m) > spec.count(m) for m in spec.counts):
                ineq_bad = ineq_bad or text
            if n == max_len:
                pre = spectrum(text[:-1])
                if any(pre.count(m) > spec.count(m) for m in pre.counts):
                    mono_bad = mono_bad or text
    res.add(f"spectrum equals naive enumeration (all binary words, n<={max_len})", bad is None, str(bad))
    res.add("inequivalent <= distinct per length", ineq_bad is None, str(ineq_bad))
    res.add("prefix counts are monotone", mono_bad is None, str(mono_bad))
    return res


def suite_thue_morse(n_max: int = 256, rec_max: int = 2048) -> SuiteResult:
    res = SuiteResult("thue-morse")
    brute, cert = tm_square_counts(n_max)
    table = base_order_counts()
    res.add("order counts 1..20 by enumeration", all(brute[n] == table[n] for n in table),
            str({n: (brute[n], table[n]) for n in table if brute[n] != table[n]}))
    lin = tm_f_linear_rep_range(max(n_max, rec_max))
    miss = _first(range(1, n_max + 1), lambda n: brute[n] == lin[n])
    res.add(f"enumeration equals matrix product for n<={n_max} (prefix {cert.prefix_len})", miss is None,
            f"n={miss}")
    try:
        report = validate_and_repair(rules_from_data())
        res.add(f"every transcribed rule holds or is repaired ({len(report.repairs)} repaired)", True)
    except TranscriptionError as exc:
        res.add("every transcribed rule holds or is repaired", False, str(exc))
    system = default_recurrence_system()
    miss = _first(range(1, rec_max + 1), lambda n: system(n) == lin[n])
    res.add(f"recurrences equal matrix product for n<={rec_max}", miss is None, f"n={miss}")
    for k in range(1, 9):
        a, b = tm_f_closed_forms(k)
        ok = tm_f_linear_rep(4**k - 1) == a and tm_f_linear_rep(3 * 2**k) == b
        res.add(f"closed forms at k={k}", ok, f"k={k}")
    miss = _first(range(0, 65), lambda n: tm_complexity(n) == tm_complexity_recurrence(n))
    res.add("factor complexity recurrence equals enumeration for n<=64", miss is None, f"n={miss}")
    t = tm_prefix(512)
    bad = next(((i, n) for i in range(256) for n in range(1, 33)
                if tm_is_abelian_square_at(i, n) != is_abelian_square(t[i:i + 2 * n])), None)
    res.add("defect predicate equals direct Parikh test", bad is None, str(bad))
    return res


def suite_tm_letter_classes(n_max: int = 200) -> SuiteResult:
    res = SuiteResult("tm-letter-classes")
    rows = tm_faa_fab_range(n_max)
    bad = _first(rows, lambda n: 3 * min(rows[n]) >= tm_complexity_recurrence(n))
    res.add(f"f_aa, f_ab >= p(n)/3 for 2<=n<={n_max}", bad is None, f"n={bad} {rows.get(bad)}")
    bad = _first(rows, lambda n: min(rows[n]) >= n - 1)
    res.add(f"f_aa, f_ab >= n-1 for 2<=n<={n_max}", bad is None, f"n={bad} {rows.get(bad)}")
    return res


def balanced_words(max_len: int) -> list[str]:
    """All balanced binary words of length <= max_len (balance is inherited by factors, so extend)."""
    level, out = [""], []
    for _ in range(max_len):
        level = [u + c for u in level for c in "ab" if is_balanced(u + c)]
        out.extend(level)
    return out


def suite_balanced_powers(max_len: int = 16, k_max: int = 4) -> SuiteResult:
    res = SuiteResult("lemma-bal")
    words = balanced_words(max_len)
    bad = None
    for text in words:
        pa, pb = parikh(text)
        for k in range(2, k_max + 1):
            if (pa % k == 0 and pb % k == 0) != is_abelian_k_power(text, k):
                bad = bad or (text, k)
    res.add(f"P(w) = 0 mod k iff abelian k-power ({len(words)} balanced words, n<={max_len}, k<={k_max})",
            bad is None, str(bad))
    return res


def suite_power_bound(u_len: int = 6, k_max: int = 5) -> SuiteResult:
    res = SuiteResult("power-bound")
    bad = None
    for n in range(1, u_len + 1):
        for u in _binary_words(n):
            for k in range(1, k_max + 1):
                w = u * k
                if spectrum(w).total * k > len(w) ** 2:
                    bad = bad or (u, k)
    res.add(f"AS(u^k) <= |u^k|^2/k for |u|<={u_len}, k<={k_max}", bad is None, str(bad))
    return res


def suite_layered(m_max: int = 64) -> SuiteResult:
    res = SuiteResult("layered")
    rep = layered_structure_checks(m_max)
    res.add(f"at most 4 right special factors per length <= {m_max}", rep.max_right_special <= 4,
            f"max {rep.max_right_special}")
    res.add("right special factors match the shape templates", not rep.bad_shapes, str(rep.bad_shapes))
    res.add("a^(2^k) occurs for k<=6", all(rep.witnesses.values()), str(rep.witnesses))
    return res


def suite_sturmian(n_max: int = 60) -> SuiteResult:
    res = SuiteResult("sturmian")
    counts = sturmian_as_counts(GOLDEN, 36)
    res.add("Fibonacci counts for even n = 2..36", tuple(counts[n] for n in range(2, 37, 2)) == FIB_AS_COUNTS, str(counts))
    for cf in STURMIAN_ANGLES:
        check = formula_vs_words(cf, n_max)
        res.add(f"formula equals enumeration for {cf}, even n<={n_max}", check.ok, str(check.mismatches))
        x = cf.certified()
        prefix = sturmian_prefix(SturmianSpec(cf), 2000, alpha=x)
        res.add(f"prefix balanced for {cf}", is_balanced(prefix))
        bad = []
        for n in range(1, n_max + 1):
            part = interval_partition(cf, n, x=x)
            lo, hi = part.length_enclosure()
            if not lo <= 1 <= hi:
                bad.append((n, "lengths"))
            if len(set(part.factors)) != n + 1:
                bad.append((n, "distinct"))
            if set(part.factors) != {f.text(prefix) for f in distinct_factors(prefix, n)}:
                bad.append((n, "factor set"))
            fl = x.floor_affine(0, n)
            for iv in part.intervals:
                a = iv.factor.count("a")
                if (iv.tag == LIGHT and a != fl) or (iv.tag == HEAVY and a != fl + 1):
                    bad.append((n, iv.index, "tag"))
                if is_abelian_square(iv.factor) != (n % 2 == 0 and a % 2 == 0):
                    bad.append((n, iv.index, "square-parity"))
            if n % 2 == 0:
                squares = sum(is_abelian_square(f) for f in part.factors)
                if squares != sturmian_as_counts(cf, n, x=x)[n]:
                    bad.append((n, "count"))
        res.add(f"partitions consistent for {cf}, n<={n_max}", not bad, str(bad[:5]))
    return res


def suite_discrepancy(n_max: int = 200, decades: int = 4) -> SuiteResult:
    res = SuiteResult("discrepancy")
    for cf in (GOLDEN, SILVER):
        bad = _first([1, 2, 3, 5, 10, 50, 100, n_max],
                     lambda N: discrepancy(cf, N).scaled == discrepancy_quadratic(cf, N).scaled)
        res.add(f"critical-set value equals pair enumeration for {cf}", bad is None, f"N={bad}")
    values = []
    for k in range(1, decades + 1):
        N = 10**k
        d = discrepancy(GOLDEN, N)
        values.append(d.hi)
        res.add(f"N*D_N within bound at N=10^{k}", float(N * d.hi) <= discrepancy_bound(N, 1),
                f"{float(N * d.hi)} > {discrepancy_bound(N, 1)}")
    res.add("D_N decreases across decades", all(a > b for a, b in zip(values, values[1:])), str(values))
    return res


SUITES: dict[str, Callable[..., SuiteResult]] = {
    "words": suite_words,
    "abelian-count": suite_abelian_count,
    "thue-morse": suite_thue_morse,
    "tm-letter-classes": suite_tm_letter_classes,
    "lemma-bal": suite_balanced_powers,
    "power-bound": suite_power_bound,
    "layered": suite_layered,
    "sturmian": suite_sturmian,
    "discrepancy": suite_discrepancy,
}

# the --max-len flag maps onto each suite's size parameter
SIZE_PARAM = {
    "words": "max_len",
    "abelian-count": "max_len",
    "thue-morse": "n_max",
    "tm-letter-classes": "n_max",
    "lemma-bal": "max_len",
    "power-bound": "u_len",
    "layered": "m_max",
    "sturmian": "n_max",
    "discrepancy": "n_max",
}


def run_suite(name: str, max_len: int | None = None) -> SuiteResult:
    if name not in SUITES:
        raise KeyError(name)
    kwargs = {} if max_len is None else {SIZE_PARAM[name]: max_len}
    return SUITES[name](**kwargs)
