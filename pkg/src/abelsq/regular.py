"""The order-n abelian-square count of Thue-Morse as a 2-regular sequence.

Two evaluators share the data file ``data/tm_linrep_v1.json``: the rank-11
linear representation (digit-indexed matrix products) and the system of
recurrences modulo 8, 16 and 32.  Recurrence rules are checked one by one
against a reference before use; see :func:`validate_and_repair`.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from math import lcm
from typing import Callable, Iterable

import numpy as np

DATA_FILE = "tm_linrep_v1.json"


class TranscriptionError(ArithmeticError):
    """Matrix or recurrence data produced a value that cannot be a count."""


def _load_data() -> dict:
    with resources.files("abelsq").joinpath("data").joinpath(DATA_FILE).open("r", encoding="utf-8") as fh:
        return json.load(fh)


def _frac_vec(xs) -> tuple[Fraction, ...]:
    return tuple(Fraction(x) for x in xs)


@dataclass(frozen=True)
class LinearRepresentation:
    v: tuple[Fraction, ...]
    M0: tuple[tuple[Fraction, ...], ...]
    M1: tuple[tuple[Fraction, ...], ...]
    w: tuple[Fraction, ...]
    version: str = ""

    def __post_init__(self):
        r = len(self.v)
        if len(self.w) != r or any(len(M) != r or any(len(row) != r for row in M) for M in (self.M0, self.M1)):
            raise ValueError("inconsistent dimensions in linear representation")

    @property
    def rank(self) -> int:
        return len(self.v)

    @classmethod
    def thue_morse(cls) -> "LinearRepresentation":
        d = _load_data()
        return cls(_frac_vec(d["v"]), tuple(_frac_vec(r) for r in d["M0"]),
                   tuple(_frac_vec(r) for r in d["M1"]), _frac_vec(d["w"]), d["version"])

    def evaluate_digits(self, digits: str) -> Fraction:
        row = list(self.v)
        r = self.rank
        for d in digits:
            M = self.M1 if d == "1" else self.M0
            row = [sum(row[i] * M[i][j] for i in range(r) if row[i]) for j in range(r)]
        return sum(a * b for a, b in zip(row, self.w))

    def evaluate(self, n: int) -> Fraction:
        if n < 0:
            raise ValueError("n must be non-negative")
        return self.evaluate_digits(bin(n)[2:] if n else "")

    def scaled_integer_form(self) -> tuple[int, np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        """(S, v, S*M0, S*M1, w) with integer object arrays; requires integral v and w."""
        dens = [x.denominator for M in (self.M0, self.M1) for row in M for x in row]
        S = lcm(*dens)
        if any(x.denominator != 1 for x in self.v + self.w):
            raise ValueError("integer form needs integral v and w")
        to_obj = lambda M: np.array([[int(x * S) for x in row] for row in M], dtype=object)
        return (S, np.array([int(x) for x in self.v], dtype=object), to_obj(self.M0), to_obj(self.M1),
                np.array([int(x) for x in self.w], dtype=object))


@lru_cache(maxsize=1)
def thue_morse_representation() -> LinearRepresentation:
    return LinearRepresentation.thue_morse()


def _as_count(value: Fraction, n: int, source: str) -> int:
    if value.denominator != 1:
        raise TranscriptionError(f"{source} gave non-integer value {value} at n={n}")
    return int(value)


def tm_f_linear_rep(n: int) -> int:
    """f(n) as v * M_{a1} ... M_{ai} * w over the binary digits of n (most significant first)."""
    if n < 1:
        raise ValueError("order must be positive (f(0) is not defined by the representation's count)")
    return _as_count(thue_morse_representation().evaluate(n), n, "linear representation")


def tm_f_linear_rep_range(n_max: int) -> dict[int, int]:
    """f(1..n_max) sharing row-vector prefixes level by level, in scaled integer arithmetic."""
    if n_max < 1:
        return {}
    S, v, SM0, SM1, w = thue_morse_representation().scaled_integer_form()
    out: dict[int, int] = {}
    rows = np.array([v.dot(SM1)], dtype=object)  # n = 1
    first, level = 1, 1
    while first <= n_max:
        scale = S**level
        vals = rows.dot(w)
        for k, val in enumerate(vals):
            n = first + k
            if n > n_max:
                break
            q, rem = divmod(int(val), scale)
            if rem:
                raise TranscriptionError(f"linear representation gave non-integer value at n={n}")
            out[n] = q
        if 2 * first > n_max:
            break
        nxt = np.empty((2 * rows.shape[0], rows.shape[1]), dtype=object)
        nxt[0::2] = rows.dot(SM0)
        nxt[1::2] = rows.dot(SM1)
        rows, first, level = nxt, 2 * first, level + 1
    return out


# ---------------------------------------------------------------------------
# recurrences


@dataclass(frozen=True)
class Rule:
    """f(modulus*n + residue) = sum coef * f(A*n + B); a ``None`` coefficient could not be transcribed."""

    modulus: int
    residue: int
    terms: tuple[tuple[Fraction | None, int, int], ...]
    note: str = ""

    @property
    def label(self) -> str:
        return f"f({self.modulus}n+{self.residue})"

    @property
    def complete(self) -> bool:
        return all(c is not None for c, _, _ in self.terms)

    def lhs(self, n: int) -> int:
        return self.modulus * n + self.residue

    def apply(self, n: int, f: Callable[[int], int | Fraction]) -> Fraction:
        if not self.complete:
            raise ValueError(f"{self.label} has an unresolved coefficient")
        return sum((c * f(A * n + B) for c, A, B in self.terms), Fraction(0))

    def terminates(self) -> bool:
        """All right-hand arguments are below the left-hand one for every n >= 1."""
        return all(A * n + B < self.lhs(n) for _, A, B in self.terms for n in (1, 2)) and \
            all(A <= self.modulus for _, A, B in self.terms)


def rules_from_data() -> list[Rule]:
    rules = []
    for r in _load_data()["recurrences"]:
        terms = tuple((None if c is None else Fraction(c), A, B) for c, A, B in r["terms"])
        rules.append(Rule(r["modulus"], r["residue"], terms))
    return rules


def base_order_counts() -> dict[int, int]:
    return {int(k): v for k, v in _load_data()["base_values"].items()}


@dataclass
class RuleCheck:
    rule: Rule
    instances: list[int]
    failures: list[int]

    @property
    def ok(self) -> bool:
        return not self.failures


def check_rule(rule: Rule, reference: Callable[[int], int], instances: Iterable[int]) -> RuleCheck:
    inst = list(instances)
    if not rule.complete:
        return RuleCheck(rule, inst, inst)
    bad = [n for n in inst if rule.apply(n, reference) != reference(rule.lhs(n))]
    return RuleCheck(rule, inst, bad)


# candidate right-hand terms for repairs: every argument shape used by the rule set
REPAIR_BASIS = ((2, 0), (2, 1), (4, 0), (4, 1), (4, 2), (4, 3), (8, 1), (8, 2), (8, 3), (8, 4), (8, 5),
                (8, 7), (16, 1), (16, 2), (16, 10))


@dataclass
class Repair:
    original: Rule
    repaired: Rule
    description: str


def repair_rule(rule: Rule, reference: Callable[[int], int], instances: Iterable[int]) -> Repair | None:
    """Recover one coefficient (unreadable, wrong, or missing term) from reference values.

    Every other coefficient is kept as transcribed; the single unknown is
    solved on one instance and must then hold on all instances.
    """
    inst = list(instances)
    candidates: list[tuple[int, int, int | None]] = []  # (A, B, index of existing term or None)
    for k, (c, A, B) in enumerate(rule.terms):
        if c is None:
            candidates.insert(0, (A, B, k))
        else:
            candidates.append((A, B, k))
    present = {(A, B) for _, A, B in rule.terms}
    for A, B in REPAIR_BASIS:
        if (A, B) not in present and A * 1 + B < rule.lhs(1):
            candidates.append((A, B, None))
    for A, B, k in candidates:
        base_terms = [t for j, t in enumerate(rule.terms) if j != k]
        if any(c is None for c, _, _ in base_terms):
            continue
        coef = _solve_single(rule, base_terms, A, B, reference, inst)
        if coef is None:
            continue
        new_terms = list(rule.terms)
        if k is None:
            new_terms.append((coef, A, B))
            what = f"added missing term {coef} f({A}n+{B})"
        else:
            old = rule.terms[k][0]
            new_terms[k] = (coef, A, B)
            what = f"coefficient of f({A}n+{B}) {'recovered' if old is None else f'changed from {old}'} -> {coef}"
        fixed = replace(rule, terms=tuple(new_terms), note=what)
        if check_rule(fixed, reference, inst).ok:
            return Repair(rule, fixed, f"{rule.label}: {what}")
    return None


def _solve_single(rule, base_terms, A, B, reference, inst) -> Fraction | None:
    coef = None
    for n in inst:
        rest = sum((c * reference(a * n + b) for c, a, b in base_terms), Fraction(0))
        target = reference(rule.lhs(n)) - rest
        x = reference(A * n + B)
        if x == 0:
            if target != 0:
                return None
            continue
        val = Fraction(target, 1) / x
        if coef is None:
            coef = val
        elif coef != val:
            return None
    return coef


@dataclass
class RecurrenceSystem:
    rules: list[Rule]
    base: dict[int, int] = field(default_factory=base_order_counts)
    fallback: Callable[[int], int] = tm_f_linear_rep
    repairs: list[Repair] = field(default_factory=list)

    def __post_init__(self):
        self._by_modulus = sorted({r.modulus for r in self.rules})
        self._index = {(r.modulus, r.residue): r for r in self.rules}
        self._memo: dict[int, int] = {}
        self.fallback_used: set[int] = set()

    @classmethod
    def thue_morse(cls, validated: bool = True, **kwargs) -> "RecurrenceSystem":
        rules = rules_from_data()
        if not validated:
            return cls(rules)
        report = validate_and_repair(rules, **kwargs)
        return cls(report.rules, repairs=report.repairs)

    def coverage_problems(self, period: int = 32) -> list[int]:
        """Residues mod ``period`` not covered exactly once."""
        bad = []
        for x in range(period):
            hits = sum(1 for r in self.rules if x % r.modulus == r.residue)
            if hits != 1:
                bad.append(x)
        return bad

    def rule_for(self, x: int) -> Rule:
        for M in self._by_modulus:
            rule = self._index.get((M, x % M))
            if rule is not None:
                return rule
        raise LookupError(f"no recurrence covers argument {x}")

    def __call__(self, n: int) -> int:
        if n < 1:
            raise ValueError("order must be positive")
        if n in self._memo:
            return self._memo[n]
        # ascending fill keeps the recursion shallow
        for x in range(max(self._memo, default=0) + 1, n + 1):
            self._memo[x] = self._compute(x)
        return self._memo[n]

    def _compute(self, x: int) -> int:
        if x in self.base:
            return self.base[x]
        rule = self.rule_for(x)
        k = (x - rule.residue) // rule.modulus
        if k < 1:
            self.fallback_used.add(x)
            return self.fallback(x)
        return _as_count(rule.apply(k, self.__call__), x, rule.label)


@dataclass
class ValidationReport:
    checks: list[RuleCheck]
    repairs: list[Repair]
    rules: list[Rule]
    unrepaired: list[Rule]


def validate_and_repair(rules: list[Rule], instances: Iterable[int] = range(1, 21),
                        reference: Callable[[int], int] | None = None,
                        repair_reference: Callable[[int], int] | None = None) -> ValidationReport:
    """Check each rule on ``instances`` against ``reference`` (brute force by default).

    Failing rules are re-derived against ``repair_reference`` (the linear
    representation by default) and must then pass ``reference`` as well.
    """
    inst = list(instances)
    if reference is None:
        from abelsq.thuemorse import tm_square_counts
        top = max(r.lhs(max(inst)) for r in rules)
        brute, _ = tm_square_counts(top)
        reference = brute.__getitem__
    if repair_reference is None:
        repair_reference = _linear_rep_cached
    checks, repairs, final, unrepaired = [], [], [], []
    for rule in rules:
        check = check_rule(rule, reference, inst)
        checks.append(check)
        if check.ok:
            final.append(rule)
            continue
        fix = repair_rule(rule, repair_reference, inst)
        if fix is not None and check_rule(fix.repaired, reference, inst).ok:
            repairs.append(fix)
            final.append(fix.repaired)
        else:
            unrepaired.append(rule)
    if unrepaired:
        raise TranscriptionError("unrepairable recurrences: " + ", ".join(r.label for r in unrepaired))
    return ValidationReport(checks, repairs, final, unrepaired)


@lru_cache(maxsize=None)
def _linear_rep_cached(n: int) -> int:
    return tm_f_linear_rep(n)


_DEFAULT_SYSTEM: RecurrenceSystem | None = None


def default_recurrence_system() -> RecurrenceSystem:
    global _DEFAULT_SYSTEM
    if _DEFAULT_SYSTEM is None:
        _DEFAULT_SYSTEM = RecurrenceSystem.thue_morse()
    return _DEFAULT_SYSTEM


def tm_f_recurrence(n: int, system: RecurrenceSystem | None = None) -> int:
    return (system or default_recurrence_system())(n)
