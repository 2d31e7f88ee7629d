"""Named verification suites wired for the CLI and the acceptance tests.

Every check is exact: polynomial identities are structural equalities,
root verdicts come from Sturm sequences, and the sampling checks run a
fixed deterministic point stream.  Each check returns a pass flag plus a
human-readable detail string; the runner adds wall-clock timing.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .grammar import (
    FamilyKind,
    family_grammar,
    iterate_family,
    iterate_steps,
    surrogate_operator,
)
from .polyring import A, B, GaussianRational, P, Polynomial, U, V, Variable, X, Y, Z
from .stability import (
    lemma_gate,
    specialization_suite,
    sturm_report,
    verify_gessel_stanley,
    verify_tn_identity,
)
from .structures import (
    WordFamily,
    bell_number,
    coefficient_table,
    double_factorial_odd,
    enumerate_family,
    serialize_word,
    structure_count,
    weight_polynomial,
)


@dataclass
class CheckOptions:
    family: str | None = None
    n: int | None = None
    r: int | None = None
    samples: int = 10000
    seed: int = 42


@dataclass
class CheckResult:
    name: str
    passed: bool
    details: str
    seconds: float

    def to_json_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "details": self.details,
            "seconds": round(self.seconds, 3),
        }


KIND_FOR_FAMILY = {
    WordFamily.PERMUTATION: FamilyKind.EULERIAN_MULTI,
    WordFamily.PARTITION: FamilyKind.PARTITION_MULTI,
    WordFamily.STIRLING: FamilyKind.STIRLING2_MULTI,
    WordFamily.MARKED_STIRLING: FamilyKind.MARKED_MULTI,
    WordFamily.LEGENDRE: FamilyKind.LEGENDRE,
}

ORACLE_BOUNDS = {
    WordFamily.PERMUTATION: 6,
    WordFamily.PARTITION: 8,
    WordFamily.STIRLING: 5,
    WordFamily.MARKED_STIRLING: 5,
    WordFamily.LEGENDRE: 3,
}


def _ok(details: str) -> tuple[bool, str]:
    return True, details


def _fail(details: str) -> tuple[bool, str]:
    return False, details


def check_oracle(options: CheckOptions) -> tuple[bool, str]:
    """Grammar output equals the enumeration weight sum, exactly."""
    if options.family is not None:
        families = [WordFamily.parse(options.family)]
    else:
        families = list(ORACLE_BOUNDS)
    tried = []
    for family in families:
        top = options.n if options.n is not None else ORACLE_BOUNDS[family]
        kind = KIND_FOR_FAMILY[family]
        for n in range(1, top + 1):
            if iterate_family(kind, n) != weight_polynomial(family, n):
                return _fail(f"{family.value} order {n}: grammar != enumeration")
        tried.append(f"{family.value}<={top}")
    return _ok("; ".join(tried))


def _displayed_partition_cubed() -> Polynomial:
    a, b = A(0), B(0)
    return (
        Polynomial.term(1, [a, b])
        + Polynomial.term(3, [a, b, b])
        + Polynomial.term(1, [a, b, b, b])
    )


def _displayed_eulerian() -> dict[int, Polynomial]:
    t = Polynomial.term
    return {
        1: t(1, [X(1), Y(1)]),
        2: t(1, [X(2), Y(2), Y(1)]) + t(1, [X(1), X(2), Y(2)]),
        3: (
            t(1, [X(3), Y(3), Y(2), Y(1)])
            + t(1, [X(2), X(3), Y(3), Y(1)])
            + t(2, [X(2), Y(2), X(3), Y(3)])
            + t(1, [X(1), X(3), Y(3), Y(2)])
            + t(1, [X(1), X(2), X(3), Y(3)])
        ),
    }


def _displayed_stirling() -> dict[int, Polynomial]:
    t = Polynomial.term
    return {
        1: t(1, [X(1), Z(1), Y(1)]),
        2: (
            t(1, [X(2), Z(2), Y(2), Z(1), Y(1)])
            + t(1, [X(1), X(2), Z(2), Y(2), Y(1)])
            + t(1, [X(1), Z(1), X(2), Z(2), Y(2)])
        ),
    }


def _displayed_legendre_one() -> Polynomial:
    t = Polynomial.term
    return t(1, [X(1), Z(1), U(1), V(1)]) + t(1, [X(1), Y(1), Z(1), U(1)])


def check_displays(options: CheckOptions) -> tuple[bool, str]:
    """Reproduce the small displayed polynomials and word lists verbatim."""
    if iterate_family(FamilyKind.PARTITION_UNI, 3) != _displayed_partition_cubed():
        return _fail("cubed partition polynomial mismatch")
    for n, expected in _displayed_eulerian().items():
        if iterate_family(FamilyKind.EULERIAN_MULTI, n) != expected:
            return _fail(f"multivariate eulerian order {n} mismatch")
    for n, expected in _displayed_stirling().items():
        if iterate_family(FamilyKind.STIRLING2_MULTI, n) != expected:
            return _fail(f"multivariate stirling order {n} mismatch")
    if iterate_family(FamilyKind.LEGENDRE, 1) != _displayed_legendre_one():
        return _fail("legendre order 1 mismatch")
    words = {serialize_word(w) for w in enumerate_family(WordFamily.MARKED_STIRLING, 2)}
    if words != {"2 2 1 1", "1 2 2 1", "1 1 2 2", "1 1* 2 2"}:
        return _fail(f"marked words of order 2: {sorted(words)}")
    return _ok("partition cube, eulerian 1..3, stirling 1..2, legendre 1, marked order 2")


def _all_ones_value(p: Polynomial) -> int:
    ones = {v: 1 for v in p.variables()}
    return int(p.specialize(ones).constant_term())


def check_counts(options: CheckOptions) -> tuple[bool, str]:
    """Structure counts against closed forms, via both computation paths."""
    import math

    for n in range(1, 7):
        if sum(1 for _ in enumerate_family(WordFamily.PERMUTATION, n)) != math.factorial(n):
            return _fail(f"permutation count at {n}")
    bells = [1, 2, 5, 15, 52]
    for n, expected in enumerate(bells, start=1):
        if sum(1 for _ in enumerate_family(WordFamily.PARTITION, n)) != expected:
            return _fail(f"partition count at {n}")
        if bell_number(n) != expected:
            return _fail(f"bell number at {n}")
    for n in range(1, 6):
        expected = double_factorial_odd(n)
        if sum(1 for _ in enumerate_family(WordFamily.STIRLING, n)) != expected:
            return _fail(f"stirling count at {n}")
        if _all_ones_value(iterate_family(FamilyKind.STIRLING2_MULTI, n)) != expected:
            return _fail(f"stirling grammar mass at {n}")
    if double_factorial_odd(3) != 15:
        return _fail("double factorial sanity")
    schroeder = [1, 4, 26, 236]
    for n, expected in enumerate(schroeder, start=1):
        if structure_count(WordFamily.MARKED_STIRLING, n) != expected:
            return _fail(f"marked count at {n}")
        if _all_ones_value(iterate_family(FamilyKind.MARKED_MULTI, n)) != expected:
            return _fail(f"marked grammar mass at {n}")
    by_words = sum(1 for _ in enumerate_family(WordFamily.LEGENDRE, 2))
    by_grammar = _all_ones_value(iterate_family(FamilyKind.LEGENDRE, 2))
    if by_words != 40 or by_grammar != 40:
        return _fail(f"legendre order 2 counts {by_words}/{by_grammar}")
    return _ok("factorials, bells, odd double factorials, 1/4/26/236, 40 both ways")


def check_eulerian_row(options: CheckOptions) -> tuple[bool, str]:
    """Second-order Eulerian row (1, 8, 6) by enumeration and by grammar."""
    expected = {1: 1, 2: 8, 3: 6}
    if coefficient_table(WordFamily.STIRLING, 3, "des") != expected:
        return _fail("enumeration row differs from (1, 8, 6)")
    cubic = iterate_family(FamilyKind.STIRLING2_UNI, 3)
    x, y = X(0), Y(0)
    by_grammar = {
        m: int(cubic.coefficient({x: 7 - m, y: m})) for m in (1, 2, 3)
    }
    if by_grammar != expected:
        return _fail(f"grammar row {by_grammar}")
    univariate = specialization_suite(3, names=("Cn",))["Cn"]
    wanted = Polynomial.zero()
    for k, c in expected.items():
        wanted = wanted + Polynomial.term(c, [X(0)] * k)
    if univariate != wanted:
        return _fail("specialized row mismatch")
    return _ok("row (1, 8, 6) via enumeration, univariate grammar and specialization")


def check_tn_identity(options: CheckOptions) -> tuple[bool, str]:
    top = options.n if options.n is not None else 6
    for n in range(1, top + 1):
        if not verify_tn_identity(n):
            return _fail(f"identity fails at order {n}")
    return _ok(f"orders 1..{top}")


def check_gessel_stanley(options: CheckOptions) -> tuple[bool, str]:
    kmax = options.n if options.n is not None else 4
    for k in range(1, kmax + 1):
        if not verify_gessel_stanley(k, 8):
            return _fail(f"series mismatch at k = {k}")
    return _ok(f"k 1..{kmax}, series order 8")


STURM_BOUNDS = {"An": 6, "Cn": 6, "Sn": 6, "Tn": 6, "Bn": 3, "Mn": 3}
_STRICT_FAMILIES = ("Cn", "Bn")


def check_sturm(options: CheckOptions) -> tuple[bool, str]:
    """Real-rootedness verdicts for the univariate specializations."""
    if options.family is not None:
        if options.family not in STURM_BOUNDS:
            raise ValueError(f"unknown sturm family: {options.family!r}")
        wanted = {options.family: options.n or STURM_BOUNDS[options.family]}
    else:
        wanted = dict(STURM_BOUNDS)
        if options.n is not None:
            wanted = {name: min(top, options.n) for name, top in wanted.items()}
    lines = []
    for name, top in wanted.items():
        for n in range(1, top + 1):
            poly = specialization_suite(n, names=(name,))[name]
            report = sturm_report(poly)
            if not report.all_real:
                return _fail(f"{name} at order {n} is not real-rooted")
            if name in _STRICT_FAMILIES and not (
                report.distinct and report.all_nonpositive
            ):
                return _fail(f"{name} at order {n} fails distinct/nonpositive")
        lines.append(f"{name}<={top}")
    return _ok("; ".join(lines))


def check_symmetry(options: CheckOptions) -> tuple[bool, str]:
    """Trivariate Stirling polynomial invariant under all six swaps."""
    import itertools

    top = options.n if options.n is not None else 6
    x, y, z = X(0), Y(0), Z(0)
    for n in range(1, top + 1):
        multi = iterate_family(FamilyKind.STIRLING2_MULTI, n)
        fold: dict[Variable, object] = {}
        for i in range(n + 1):
            fold[X(i)] = x
            fold[Y(i)] = y
            fold[Z(i)] = z
        tri = multi.specialize(fold)
        for perm in itertools.permutations((x, y, z)):
            swapped = tri.specialize(dict(zip((x, y, z), perm)))
            if swapped != tri:
                return _fail(f"order {n}: not symmetric under {perm}")
    return _ok(f"orders 1..{top}, all six permutations")


def check_equidistribution(options: CheckOptions) -> tuple[bool, str]:
    top = options.n if options.n is not None else 5
    for n in range(1, top + 1):
        tables = [
            coefficient_table(WordFamily.STIRLING, n, stat)
            for stat in ("asc", "des", "plat")
        ]
        if not (tables[0] == tables[1] == tables[2]):
            return _fail(f"order {n}: ascent/descent/plateau histograms differ")
    return _ok(f"orders 1..{top}")


def check_operator_equivalence(options: CheckOptions) -> tuple[bool, str]:
    """Surrogates agree with grammar steps on the sequence, not off it."""
    for n in range(1, 6):
        s_n = iterate_steps(FamilyKind.PARTITION_MULTI, n)
        lhs = family_grammar(FamilyKind.PARTITION_MULTI, n + 1).derive(s_n)
        rhs = surrogate_operator("partition_multi", n + 1).apply(s_n)
        if lhs != rhs:
            return _fail(f"partition surrogate differs at order {n}")
    for n in range(1, 4):
        f_odd = iterate_steps(FamilyKind.LEGENDRE, 2 * n - 1)
        lhs = family_grammar(FamilyKind.LEGENDRE, 2 * n).derive(f_odd)
        rhs = surrogate_operator("legendre_even", n).apply(f_odd)
        if lhs != rhs:
            return _fail(f"legendre surrogate differs at order {n}")
    off = Polynomial.variable(A(0)) + Polynomial.variable(B(1))
    d2 = family_grammar(FamilyKind.PARTITION_MULTI, 2).derive(off)
    t2 = surrogate_operator("partition_multi", 2).apply(off)
    if d2 == t2:
        return _fail("step 2 and its surrogate agree off the sequence")
    return _ok("partition orders 1..5, legendre orders 1..3, off-sequence differs")


def known_counterexample_point() -> dict[Variable, GaussianRational]:
    """The exact upper-half-plane zero of the raw partition step-2 gate."""
    half_i = Fraction(1, 2)
    return {
        A(0): GaussianRational(Fraction(-1, 2), half_i),
        B(1): GaussianRational(Fraction(-1), half_i),
        P(1): GaussianRational(Fraction(-1), half_i),
        P(0): GaussianRational(Fraction(0), Fraction(1)),
        B(2): GaussianRational(Fraction(0), Fraction(1)),
    }


def _counterexample_polynomial() -> Polynomial:
    t = Polynomial.term
    return (
        t(1, [A(0), B(1), B(2)])
        + t(1, [A(0), P(1), B(2)])
        + t(1, [A(0), B(2)])
        + t(1, [P(0), B(2)])
    )


def check_counterexample(options: CheckOptions) -> tuple[bool, str]:
    """The raw partition step 2 is not stability preserving: exact zero."""
    gate = lemma_gate(
        family_grammar(FamilyKind.PARTITION_MULTI, 2),
        [A(0), B(1)],
        samples=0,
        seed=options.seed,
        inject=[known_counterexample_point()],
    )
    if gate.polynomial != _counterexample_polynomial():
        return _fail(f"unexpected expansion: {gate.polynomial}")
    if gate.witness is None:
        return _fail("known zero not certified")
    value = gate.polynomial.evaluate(gate.witness.point)
    if not value.is_zero:
        return _fail("witness value is not exactly zero")
    if not all(v.im > 0 for v in gate.witness.point.values()):
        return _fail("witness leaves the upper half plane")
    return _ok("zero certified at the known Gaussian-rational point")


def _gate_cases(top: int):
    for n in range(1, top + 1):
        yield (
            f"stirling2_multi step {n + 1}",
            family_grammar(FamilyKind.STIRLING2_MULTI, n + 1),
            [f(i) for i in range(n + 1) for f in (X, Y, Z)],
        )
        yield (
            f"eulerian_multi step {n + 1}",
            family_grammar(FamilyKind.EULERIAN_MULTI, n + 1),
            [f(i) for i in range(n + 1) for f in (X, Y)],
        )
        yield (
            f"marked_multi step {n + 1}",
            family_grammar(FamilyKind.MARKED_MULTI, n + 1),
            [f(i) for i in range(n + 1) for f in (X, Y, Z)],
        )
        yield (
            f"legendre step {2 * n - 1}",
            family_grammar(FamilyKind.LEGENDRE, 2 * n - 1),
            [f(i) for i in range(n) for f in (X, Y, Z, U, V)],
        )
        yield (
            f"partition surrogate {n + 1}",
            surrogate_operator("partition_multi", n + 1),
            [A(0)] + [B(i) for i in range(1, n + 1)],
        )
        yield (
            f"legendre surrogate {n}",
            surrogate_operator("legendre_even", n),
            [f(i) for i in range(n) for f in (X, Y, Z, U, V)] + [V(n), U(n)],
        )


def check_lemma_gate(options: CheckOptions) -> tuple[bool, str]:
    """No upper-half-plane zero for the stability-preserving operators."""
    top = options.n if options.n is not None else 3
    ran = 0
    for label, op, variables in _gate_cases(top):
        gate = lemma_gate(op, variables, options.samples, options.seed)
        if gate.is_identically_zero:
            return _fail(f"{label}: gate polynomial vanished")
        if gate.witness is not None:
            return _fail(f"{label}: unexpected witness {gate.witness.to_json_dict()}")
        ran += 1
    raw = lemma_gate(
        family_grammar(FamilyKind.PARTITION_MULTI, 2),
        [A(0), B(1)],
        options.samples,
        options.seed,
        inject=[known_counterexample_point()],
    )
    if raw.witness is None:
        return _fail("raw partition step 2: known witness not found")
    return _ok(f"{ran} operators clean at {options.samples} samples; raw step flagged")


def check_divisibility(options: CheckOptions) -> tuple[bool, str]:
    """Barred-step outputs all contain u_n (and v_n after the odd step)."""
    top = options.n if options.n is not None else 3
    for n in range(1, top + 1):
        odd = iterate_steps(FamilyKind.LEGENDRE, 2 * n - 1)
        for mono in odd.terms:
            present = {var for var, _ in mono}
            if U(n) not in present or V(n) not in present:
                return _fail(f"order {n} odd step monomial misses u{n} v{n}")
        even = iterate_steps(FamilyKind.LEGENDRE, 2 * n)
        for mono in even.terms:
            if U(n) not in {var for var, _ in mono}:
                return _fail(f"order {n} even step monomial misses u{n}")
    return _ok(f"orders 1..{top}")


def check_multiaffine(options: CheckOptions) -> tuple[bool, str]:
    budgets = {
        FamilyKind.EULERIAN_MULTI: 6,
        FamilyKind.PARTITION_MULTI: 8,
        FamilyKind.STIRLING2_MULTI: 5,
        FamilyKind.MARKED_MULTI: 5,
        FamilyKind.LEGENDRE: 3,
    }
    for kind, top in budgets.items():
        for n in range(1, top + 1):
            if not iterate_family(kind, n).is_multiaffine():
                return _fail(f"{kind.value} order {n} is not multiaffine")
    for step in range(1, 7):
        if not iterate_steps(FamilyKind.LEGENDRE, step).is_multiaffine():
            return _fail(f"legendre intermediate step {step} is not multiaffine")
    return _ok("all multivariate family outputs within bounds")


CHECKS: dict[str, Callable[[CheckOptions], tuple[bool, str]]] = {
    "oracle": check_oracle,
    "displays": check_displays,
    "counts": check_counts,
    "eulerian-row": check_eulerian_row,
    "tn-identity": check_tn_identity,
    "gessel-stanley": check_gessel_stanley,
    "sturm": check_sturm,
    "symmetry": check_symmetry,
    "equidistribution": check_equidistribution,
    "operator-equivalence": check_operator_equivalence,
    "counterexample": check_counterexample,
    "lemma-gate": check_lemma_gate,
    "divisibility": check_divisibility,
    "multiaffine": check_multiaffine,
}


def run_check(name: str, options: CheckOptions | None = None) -> CheckResult:
    if name not in CHECKS:
        raise ValueError(f"unknown check: {name!r}")
    options = options or CheckOptions()
    start = time.perf_counter()
    passed, details = CHECKS[name](options)
    return CheckResult(name, passed, details, time.perf_counter() - start)


def run_checks(
    names: Sequence[str] | None = None, options: CheckOptions | None = None
) -> list[CheckResult]:
    if not names or names == ["all"]:
        names = list(CHECKS)
    return [run_check(name, options) for name in names]
