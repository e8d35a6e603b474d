from fractions import Fraction

import pytest

from abelsq.regular import (
    LinearRepresentation,
    RecurrenceSystem,
    Rule,
    TranscriptionError,
    check_rule,
    repair_rule,
    rules_from_data,
    base_order_counts,
    thue_morse_representation,
    tm_f_linear_rep,
    tm_f_linear_rep_range,
    tm_f_recurrence,
    validate_and_repair,
)
from abelsq.thuemorse import tm_f_bruteforce, tm_square_counts

ORDER_COUNTS = (2, 4, 4, 10, 8, 24, 10, 22, 12, 36, 20, 52, 24, 54, 20, 46, 24, 72, 32, 76)


@pytest.fixture(scope="module")
def brute():
    counts, _ = tm_square_counts(1024)
    return counts


def test_data_file_invariants():
    rep = thue_morse_representation()
    assert rep.rank == 11
    assert rep.version == "1"
    assert rep.v == tuple(Fraction(int(i == 0)) for i in range(11))
    assert rep.w == tuple(Fraction(x) for x in (1,) + ORDER_COUNTS[:10])  # f(0) = 1 seeds the empty word
    assert tuple(base_order_counts()[n] for n in range(1, 21)) == ORDER_COUNTS


def test_linear_rep_matches_brute_force(brute):
    assert all(tm_f_linear_rep(n) == brute[n] for n in range(1, 257))
    assert tm_f_linear_rep_range(600) == {n: brute[n] for n in range(1, 601)}


def test_linear_rep_digit_order():
    rep = thue_morse_representation()
    assert rep.evaluate_digits("110") == rep.evaluate(6) == 24


def test_linear_rep_rejects_zero():
    with pytest.raises(ValueError):
        tm_f_linear_rep(0)


def test_linear_rep_detects_bad_data():
    rep = thue_morse_representation()
    broken = LinearRepresentation(rep.v, rep.M0, rep.M1, tuple(x + Fraction(1, 3) for x in rep.w), rep.version)
    assert broken.evaluate(5) != int(broken.evaluate(5))


def test_transcribed_rules_fail_exactly_twice(brute):
    failing = [r.label for r in rules_from_data() if not check_rule(r, brute.__getitem__, range(1, 21)).ok]
    assert failing == ["f(16n+4)", "f(16n+7)"]


def test_validation_repairs_the_two_rules():
    report = validate_and_repair(rules_from_data())
    assert [r.description for r in report.repairs] == [
        "f(16n+4): coefficient of f(16n+1) recovered -> 1/2",
        "f(16n+7): added missing term 1 f(8n+4)",
    ]
    assert not report.unrepaired
    assert len(report.rules) == 17


def test_repaired_rule_content(brute):
    rule = next(r for r in rules_from_data() if r.label == "f(16n+7)")
    fix = repair_rule(rule, brute.__getitem__, range(1, 21))
    assert (Fraction(1), 8, 4) in fix.repaired.terms
    assert check_rule(fix.repaired, brute.__getitem__, range(1, 30)).ok


def test_unrepairable_rule_raises():
    bogus = Rule(16, 4, ((Fraction(1), 2, 0), (Fraction(1), 2, 0)))
    with pytest.raises(TranscriptionError):
        validate_and_repair([bogus], instances=range(1, 4),
                            reference=lambda n: n * n, repair_reference=lambda n: n * n * n)


def test_rule_system_covers_and_terminates():
    system = RecurrenceSystem(validate_and_repair(rules_from_data()).rules, fallback=tm_f_bruteforce)
    assert system.coverage_problems() == []
    assert all(r.terminates() for r in system.rules)


def test_recurrence_matches_linear_rep_independently(brute):
    system = RecurrenceSystem(validate_and_repair(rules_from_data()).rules, fallback=tm_f_bruteforce)
    lin = tm_f_linear_rep_range(3000)
    assert all(system(n) == lin[n] for n in range(1, 3001))
    assert all(system(n) == brute[n] for n in range(1, 601))


def test_default_recurrence_entry_point():
    assert [tm_f_recurrence(n) for n in range(1, 21)] == list(ORDER_COUNTS)
    with pytest.raises(ValueError):
        tm_f_recurrence(0)


def test_unvalidated_system_is_wrong_somewhere():
    raw = RecurrenceSystem.thue_morse(validated=False)
    with pytest.raises((ValueError, ArithmeticError)):
        [raw(n) for n in range(1, 200)]
