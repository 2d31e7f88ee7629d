"""Acceptance suite: every criterion exact, one printed line per criterion.

Run with `pytest tests/test_acceptance.py -s` to see the PASS/FAIL lines
as they happen (pytest captures them otherwise).
"""

import itertools
import math
import time

from polygram.checks import known_counterexample_point
from polygram.grammar import (
    FamilyKind,
    family_grammar,
    iterate_family,
    iterate_steps,
    surrogate_operator,
)
from polygram.polyring import A, B, P, Polynomial, U, V, X, Y, Z
from polygram.stability import (
    lemma_gate,
    specialization_suite,
    stirling_second_table,
    sturm_report,
    verify_gessel_stanley,
    verify_tn_identity,
)
from polygram.structures import (
    WordFamily,
    bell_number,
    coefficient_table,
    double_factorial_odd,
    enumerate_family,
    serialize_word,
    structure_count,
    weight_polynomial,
)

term = Polynomial.term
var = Polynomial.variable


def report(criterion: int, passed: bool, description: str) -> None:
    status = "PASS" if passed else "FAIL"
    print(f"ACCEPTANCE {criterion:02d} {status}: {description}")
    assert passed, f"criterion {criterion} failed: {description}"


def all_ones(p: Polynomial) -> int:
    return int(p.specialize({v: 1 for v in p.variables()}).constant_term())


def test_criterion_01_oracle_equality():
    bounds = {
        (WordFamily.PERMUTATION, FamilyKind.EULERIAN_MULTI): 6,
        (WordFamily.PARTITION, FamilyKind.PARTITION_MULTI): 8,
        (WordFamily.STIRLING, FamilyKind.STIRLING2_MULTI): 5,
        (WordFamily.MARKED_STIRLING, FamilyKind.MARKED_MULTI): 5,
        (WordFamily.LEGENDRE, FamilyKind.LEGENDRE): 3,
    }
    start = time.perf_counter()
    equal = all(
        iterate_family(kind, n) == weight_polynomial(family, n)
        for (family, kind), top in bounds.items()
        for n in range(1, top + 1)
    )
    elapsed = time.perf_counter() - start
    report(
        1,
        equal and elapsed < 60,
        f"grammar = enumeration for all five families ({elapsed:.1f}s)",
    )


def test_criterion_02_displayed_polynomials():
    checks = []
    checks.append(
        iterate_family(FamilyKind.PARTITION_UNI, 3)
        == term(1, [A(0), B(0)])
        + term(3, [A(0), B(0), B(0)])
        + term(1, [A(0), B(0), B(0), B(0)])
    )
    eulerian = {
        1: term(1, [X(1), Y(1)]),
        2: term(1, [X(2), Y(2), Y(1)]) + term(1, [X(1), X(2), Y(2)]),
        3: (
            term(1, [X(3), Y(3), Y(2), Y(1)])
            + term(1, [X(2), X(3), Y(3), Y(1)])
            + term(2, [X(2), Y(2), X(3), Y(3)])
            + term(1, [X(1), X(3), Y(3), Y(2)])
            + term(1, [X(1), X(2), X(3), Y(3)])
        ),
    }
    for n, expected in eulerian.items():
        checks.append(iterate_family(FamilyKind.EULERIAN_MULTI, n) == expected)
    stirling = {
        1: term(1, [X(1), Z(1), Y(1)]),
        2: (
            term(1, [X(2), Z(2), Y(2), Z(1), Y(1)])
            + term(1, [X(1), X(2), Z(2), Y(2), Y(1)])
            + term(1, [X(1), Z(1), X(2), Z(2), Y(2)])
        ),
    }
    for n, expected in stirling.items():
        checks.append(iterate_family(FamilyKind.STIRLING2_MULTI, n) == expected)
    checks.append(
        iterate_family(FamilyKind.LEGENDRE, 1)
        == term(1, [X(1), Z(1), U(1), V(1)]) + term(1, [X(1), Y(1), Z(1), U(1)])
    )
    words = {serialize_word(w) for w in enumerate_family(WordFamily.MARKED_STIRLING, 2)}
    checks.append(words == {"2 2 1 1", "1 2 2 1", "1 1 2 2", "1 1* 2 2"})
    report(2, all(checks), "displayed polynomials and word lists reproduced verbatim")


def test_criterion_03_counts():
    checks = []
    for n in range(1, 7):
        checks.append(
            sum(1 for _ in enumerate_family(WordFamily.PERMUTATION, n))
            == math.factorial(n)
        )
    for n, expected in enumerate([1, 2, 5, 15, 52], start=1):
        checks.append(
            sum(1 for _ in enumerate_family(WordFamily.PARTITION, n)) == expected
        )
        checks.append(bell_number(n) == expected)
    for n in range(1, 6):
        mass = all_ones(iterate_family(FamilyKind.STIRLING2_MULTI, n))
        checks.append(mass == double_factorial_odd(n))
        checks.append(
            sum(1 for _ in enumerate_family(WordFamily.STIRLING, n))
            == double_factorial_odd(n)
        )
    checks.append(all_ones(iterate_family(FamilyKind.STIRLING2_MULTI, 3)) == 15)
    for n, expected in enumerate([1, 4, 26, 236], start=1):
        checks.append(structure_count(WordFamily.MARKED_STIRLING, n) == expected)
        checks.append(all_ones(iterate_family(FamilyKind.MARKED_MULTI, n)) == expected)
    by_words = sum(1 for _ in enumerate_family(WordFamily.LEGENDRE, 2))
    by_grammar = all_ones(iterate_family(FamilyKind.LEGENDRE, 2))
    checks.append(by_words == 40 and by_grammar == 40)
    report(3, all(checks), "factorials, Bell, double factorials, 1/4/26/236, 40 both ways")


def test_criterion_04_second_order_row():
    expected = {1: 1, 2: 8, 3: 6}
    by_enumeration = coefficient_table(WordFamily.STIRLING, 3, "des")
    cubic = iterate_family(FamilyKind.STIRLING2_UNI, 3)
    by_grammar = {
        m: int(cubic.coefficient({X(0): 7 - m, Y(0): m})) for m in (1, 2, 3)
    }
    report(
        4,
        by_enumeration == expected and by_grammar == expected,
        "second-order eulerian row (1, 8, 6) by enumeration and by grammar",
    )


def test_criterion_05_doubling_identity():
    ok = all(verify_tn_identity(n) for n in range(1, 7))
    report(5, ok, "marked descent polynomial equals 2^(n-k) C(n,k) x^k for n <= 6")


def test_criterion_06_series_identity():
    ok = all(verify_gessel_stanley(k, 8) for k in range(1, 5))
    report(6, ok, "series of C_k(x)/(1-x)^(2k+1) matches the Stirling numbers, k <= 4")


def test_criterion_07_real_rootedness():
    start = time.perf_counter()
    checks = []
    for n in range(1, 7):
        suite = specialization_suite(n, names=("An", "Cn", "Sn", "Tn"))
        for name, poly in suite.items():
            verdict = sturm_report(poly)
            checks.append(verdict.all_real)
            if name == "Cn":
                checks.append(verdict.distinct and verdict.all_nonpositive)
    for n in range(1, 4):
        suite = specialization_suite(n, names=("Bn", "Mn"))
        for name, poly in suite.items():
            verdict = sturm_report(poly)
            checks.append(verdict.all_real)
            if name == "Bn":
                checks.append(verdict.distinct and verdict.all_nonpositive)
    elapsed = time.perf_counter() - start
    report(
        7,
        all(checks) and elapsed < 30,
        f"exact Sturm verdicts on all six specializations ({elapsed:.1f}s)",
    )


def test_criterion_08_symmetry_and_equidistribution():
    checks = []
    x, y, z = X(0), Y(0), Z(0)
    for n in range(1, 7):
        fold = {}
        for i in range(1, n + 1):
            fold[X(i)] = x
            fold[Y(i)] = y
            fold[Z(i)] = z
        tri = iterate_family(FamilyKind.STIRLING2_MULTI, n).specialize(fold)
        for perm in itertools.permutations((x, y, z)):
            checks.append(tri.specialize(dict(zip((x, y, z), perm))) == tri)
    for n in range(1, 6):
        histograms = [
            coefficient_table(WordFamily.STIRLING, n, stat)
            for stat in ("asc", "des", "plat")
        ]
        checks.append(histograms[0] == histograms[1] == histograms[2])
    report(8, all(checks), "three-variable symmetry (n <= 6), equidistribution (n <= 5)")


def test_criterion_09_operator_machinery():
    checks = []
    for n in range(1, 6):
        s_n = iterate_steps(FamilyKind.PARTITION_MULTI, n)
        checks.append(
            family_grammar(FamilyKind.PARTITION_MULTI, n + 1).derive(s_n)
            == surrogate_operator("partition_multi", n + 1).apply(s_n)
        )
    for n in range(1, 4):
        f_odd = iterate_steps(FamilyKind.LEGENDRE, 2 * n - 1)
        checks.append(
            family_grammar(FamilyKind.LEGENDRE, 2 * n).derive(f_odd)
            == surrogate_operator("legendre_even", n).apply(f_odd)
        )
    off = var(A(0)) + var(B(1))
    checks.append(
        family_grammar(FamilyKind.PARTITION_MULTI, 2).derive(off)
        != surrogate_operator("partition_multi", 2).apply(off)
    )
    product = (var(A(0)) + var(P(0))) * (var(B(1)) + var(P(1)))
    expanded = family_grammar(FamilyKind.PARTITION_MULTI, 2).derive(product)
    expected = (
        term(1, [A(0), B(1), B(2)])
        + term(1, [A(0), P(1), B(2)])
        + term(1, [A(0), B(2)])
        + term(1, [P(0), B(2)])
    )
    checks.append(expanded == expected)
    checks.append(expanded.evaluate(known_counterexample_point()).is_zero)
    report(9, all(checks), "surrogates match on-sequence, differ off, exact zero certified")


def test_criterion_10_lemma_gates():
    start = time.perf_counter()
    checks = []
    for n in range(1, 4):
        cases = [
            (
                family_grammar(FamilyKind.STIRLING2_MULTI, n + 1),
                [f(i) for i in range(n + 1) for f in (X, Y, Z)],
            ),
            (
                family_grammar(FamilyKind.EULERIAN_MULTI, n + 1),
                [f(i) for i in range(n + 1) for f in (X, Y)],
            ),
            (
                family_grammar(FamilyKind.MARKED_MULTI, n + 1),
                [f(i) for i in range(n + 1) for f in (X, Y, Z)],
            ),
            (
                family_grammar(FamilyKind.LEGENDRE, 2 * n - 1),
                [f(i) for i in range(n) for f in (X, Y, Z, U, V)],
            ),
            (
                surrogate_operator("partition_multi", n + 1),
                [A(0)] + [B(i) for i in range(1, n + 1)],
            ),
            (
                surrogate_operator("legendre_even", n),
                [f(i) for i in range(n) for f in (X, Y, Z, U, V)] + [V(n), U(n)],
            ),
        ]
        for op, variables in cases:
            gate = lemma_gate(op, variables, 10000, 42)
            checks.append(gate.witness is None and not gate.is_identically_zero)
    raw = lemma_gate(
        family_grammar(FamilyKind.PARTITION_MULTI, 2),
        [A(0), B(1)],
        10000,
        42,
        inject=[known_counterexample_point()],
    )
    checks.append(raw.witness is not None)
    elapsed = time.perf_counter() - start
    report(
        10,
        all(checks) and elapsed < 60,
        f"18 operators clean at 10^4 samples, raw step falsified ({elapsed:.1f}s)",
    )


def test_criterion_11_divisibility():
    checks = []
    for n in range(1, 4):
        odd = iterate_steps(FamilyKind.LEGENDRE, 2 * n - 1)
        checks.append(
            all(
                U(n) in {v for v, _ in mono} and V(n) in {v for v, _ in mono}
                for mono in odd.terms
            )
        )
        even = iterate_steps(FamilyKind.LEGENDRE, 2 * n)
        checks.append(all(U(n) in {v for v, _ in mono} for mono in even.terms))
    report(11, all(checks), "barred-step outputs divisible by u_n v_n and then u_n")


def test_criterion_12_multiaffine():
    bounds = {
        FamilyKind.EULERIAN_MULTI: 6,
        FamilyKind.PARTITION_MULTI: 8,
        FamilyKind.STIRLING2_MULTI: 5,
        FamilyKind.MARKED_MULTI: 5,
        FamilyKind.LEGENDRE: 3,
    }
    ok = all(
        iterate_family(kind, n).is_multiaffine()
        for kind, top in bounds.items()
        for n in range(1, top + 1)
    )
    ok = ok and all(
        iterate_steps(FamilyKind.LEGENDRE, step).is_multiaffine()
        for step in range(1, 7)
    )
    report(12, ok, "every multivariate family output within bounds is multiaffine")
