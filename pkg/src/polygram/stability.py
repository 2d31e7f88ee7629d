"""Exact real-rootedness certification and stability falsification.

Univariate real-rootedness is decided by Sturm sequences run with exact
rational arithmetic on the square-free part, so repeated roots cannot
produce sign anomalies; root counts with multiplicity come from the
gcd chain p, gcd(p, p'), gcd of that with its derivative, and so on.

Multivariate stability (nonvanishing whenever every variable has positive
imaginary part) is undecidable by sampling, so this module only falsifies:
it draws deterministic Gaussian-rational points in the open upper half
plane and reports an exact zero as a Witness.  Absence of a witness is
evidence, not proof.  The lemma gate applies an operator to a product of
variable-plus-partner binomials and hunts for upper-half-plane zeros of
the result; operators that preserve stability never yield one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

from .grammar import FamilyKind, Grammar, LinearDiffOp, iterate_family
from .polyring import (
    A,
    B,
    GaussianRational,
    P,
    Polynomial,
    U,
    V,
    Variable,
    X,
    Y,
    Z,
)
from .structures import WordFamily, coefficient_table


class ZeroPolynomialError(ValueError):
    """Sturm reports are undefined for the zero polynomial."""


class NotUnivariateError(ValueError):
    """Raised when a univariate operation receives a multivariate input."""


# --------------------------------------------------------------------------
# Sturm machinery on dense Fraction coefficient lists (ascending powers)
# --------------------------------------------------------------------------


def _normalize(c: list[Fraction]) -> list[Fraction]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _degree(c: Sequence[Fraction]) -> int:
    return len(c) - 1


def _derivative(c: Sequence[Fraction]) -> list[Fraction]:
    return _normalize([c[i] * i for i in range(1, len(c))])


def _remainder(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    r = list(a)
    db, lead = _degree(b), b[-1]
    while _normalize(r) and _degree(r) >= db:
        shift = _degree(r) - db
        q = r[-1] / lead
        for i in range(db + 1):
            r[shift + i] -= q * b[i]
        r.pop()
        _normalize(r)
    return r


def _monic(c: Sequence[Fraction]) -> list[Fraction]:
    if not c:
        return []
    lead = c[-1]
    return [x / lead for x in c]


def _gcd(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    a, b = _normalize(list(a)), _normalize(list(b))
    while b:
        a, b = b, _normalize(_remainder(a, b))
    return _monic(a)


def _div_exact(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    r = list(a)
    db, lead = _degree(b), b[-1]
    q = [Fraction(0)] * (len(a) - db)
    while _normalize(r) and _degree(r) >= db:
        shift = _degree(r) - db
        coeff = r[-1] / lead
        q[shift] = coeff
        for i in range(db + 1):
            r[shift + i] -= coeff * b[i]
        r.pop()
        _normalize(r)
    if _normalize(r):
        raise ArithmeticError("division was not exact")
    return _normalize(q)


def _sturm_chain(c: Sequence[Fraction]) -> list[list[Fraction]]:
    chain = [_normalize(list(c))]
    d = _derivative(c)
    if d:
        chain.append(d)
        while _degree(chain[-1]) > 0:
            rem = _normalize(_remainder(chain[-2], chain[-1]))
            if not rem:
                break
            chain.append([-x for x in rem])
    return chain


def _sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


def _variations(signs: Iterable[int]) -> int:
    nonzero = [s for s in signs if s != 0]
    return sum(1 for a, b in zip(nonzero, nonzero[1:]) if a * b < 0)


def _count_real_roots(square_free: Sequence[Fraction]) -> int:
    """Distinct real roots of a square-free polynomial, by Sturm."""
    if _degree(square_free) < 1:
        return 0
    chain = _sturm_chain(square_free)
    at_minus_inf = [_sign(s[-1]) * (-1 if _degree(s) % 2 else 1) for s in chain]
    at_plus_inf = [_sign(s[-1]) for s in chain]
    return _variations(at_minus_inf) - _variations(at_plus_inf)


def _count_nonpositive_roots(square_free: Sequence[Fraction]) -> int:
    """Distinct real roots in (-inf, 0] of a square-free polynomial."""
    if _degree(square_free) < 1:
        return 0
    c = list(square_free)
    at_zero = 0
    if c[0] == 0:
        at_zero = 1
        c = _normalize(c[1:])
        if _degree(c) < 1:
            return at_zero
    chain = _sturm_chain(c)
    at_minus_inf = [_sign(s[-1]) * (-1 if _degree(s) % 2 else 1) for s in chain]
    at_origin = [_sign(s[0]) for s in chain]
    return at_zero + _variations(at_minus_inf) - _variations(at_origin)


def _univariate_coeffs(p: Polynomial) -> list[int]:
    variables = p.variables()
    if len(variables) > 1:
        raise NotUnivariateError(f"polynomial has variables {variables}")
    degree = p.total_degree()
    coeffs = [0] * (degree + 1)
    for mono, coeff in p.terms.items():
        exp = mono[0][1] if mono else 0
        coeffs[exp] = int(coeff)
    return coeffs


@dataclass(frozen=True)
class RootReport:
    """Exact verdict on the real roots of a univariate integer polynomial."""

    degree: int
    all_real: bool
    distinct: bool
    all_nonpositive: bool
    real_root_count: int

    def to_json_dict(self, name: str) -> dict:
        return {
            "polynomial": name,
            "all_real": self.all_real,
            "distinct": self.distinct,
            "all_nonpositive": self.all_nonpositive,
        }


def sturm_report(p: Polynomial) -> RootReport:
    """Count real roots (with multiplicity) over the reals and (-inf, 0].

    all_real holds exactly when every complex root is real; distinct when
    gcd(p, p') is constant; all_nonpositive when no real root is positive.
    """
    if p.is_zero:
        raise ZeroPolynomialError("the zero polynomial has no root report")
    coeffs = [Fraction(c) for c in _univariate_coeffs(p)]
    degree = _degree(coeffs)
    total = 0
    nonpositive = 0
    first_gcd_degree = 0
    g = coeffs
    first = True
    while _degree(g) > 0:
        common = _gcd(g, _derivative(g))
        if first:
            first_gcd_degree = _degree(common)
            first = False
        square_free = _div_exact(g, common)
        total += _count_real_roots(square_free)
        nonpositive += _count_nonpositive_roots(square_free)
        g = common
    return RootReport(
        degree=degree,
        all_real=(total == degree),
        distinct=(first_gcd_degree == 0),
        all_nonpositive=(nonpositive == total),
        real_root_count=total,
    )


# --------------------------------------------------------------------------
# Deterministic counter-based point sampling
# --------------------------------------------------------------------------

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15


def _splitmix64(z: int) -> int:
    z = (z + _GAMMA) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)

MAX_DENOMINATOR = 64
REAL_BOUND = 10
IMAG_BOUND = 10


# A coordinate triple (re_num, im_num, den) stands for (re_num + im_num*i)/den.
Triple = tuple


def _sample_triples(count: int, seed: int, index: int) -> list[Triple]:
    key = _splitmix64(_splitmix64(seed & _MASK64) ^ (index & _MASK64))
    out = []
    for j in range(count):
        h1 = _splitmix64(key ^ (3 * j + 1))
        h2 = _splitmix64(key ^ (3 * j + 2))
        h3 = _splitmix64(key ^ (3 * j + 3))
        den = 1 + h1 % MAX_DENOMINATOR
        re_num = h2 % (2 * REAL_BOUND * den + 1) - REAL_BOUND * den
        im_num = 1 + h3 % (IMAG_BOUND * den)
        out.append((re_num, im_num, den))
    return out


def _triple_to_gaussian(t: Triple) -> GaussianRational:
    return GaussianRational(Fraction(t[0], t[2]), Fraction(t[1], t[2]))


def sample_point(
    variables: Sequence[Variable], seed: int, index: int
) -> dict[Variable, GaussianRational]:
    """Point number `index` of the stream keyed by `seed`.

    Coordinates are Gaussian rationals with real part in [-10, 10],
    imaginary part in (0, 10] and denominators at most 64.  The point
    depends only on (seed, index) and the order of `variables`, never on
    how many other points were drawn.
    """
    triples = _sample_triples(len(variables), seed, index)
    return {v: _triple_to_gaussian(t) for v, t in zip(variables, triples)}


@dataclass(frozen=True)
class Witness:
    """An exact upper-half-plane zero of a polynomial."""

    point: Mapping[Variable, GaussianRational]

    def __post_init__(self):
        object.__setattr__(self, "point", dict(self.point))
        if not all(value.im > 0 for value in self.point.values()):
            raise ValueError("witness coordinates must have positive imaginary part")

    def to_json_dict(self) -> dict:
        return {
            "witness": {
                str(v): [str(val.re), str(val.im)]
                for v, val in sorted(self.point.items())
            }
        }


def _in_upper_half_plane(point: Mapping[Variable, GaussianRational]) -> bool:
    return all(value.im > 0 for value in point.values())


def sample_falsify(
    p: Polynomial,
    samples: int,
    seed: int,
    inject: Sequence[Mapping[Variable, object]] = (),
) -> Witness | None:
    """Search for an exact upper-half-plane zero of p.

    Injected points are tried first (in order), then `samples` points from
    the deterministic stream.  Returns the first exact zero found.
    """
    if p.is_zero:
        raise ZeroPolynomialError("cannot falsify the zero polynomial")
    variables = p.variables()
    for raw in inject:
        point = {v: GaussianRational.of(val) for v, val in raw.items()}
        if not _in_upper_half_plane(point):
            continue
        if p.evaluate(point).is_zero:
            return Witness(point)
    for i in range(samples):
        point = sample_point(variables, seed, i)
        if p.evaluate(point).is_zero:
            return Witness(point)
    return None


# --------------------------------------------------------------------------
# The lemma gate
# --------------------------------------------------------------------------


def partner_map(variables: Iterable[Variable]) -> dict[Variable, Variable]:
    """Pair each variable with a fresh partner-family variable."""
    ordered = sorted(set(variables))
    if any(v.family.name == "P" for v in ordered):
        raise ValueError("partner family cannot itself be gated")
    return {v: P(k) for k, v in enumerate(ordered)}


@dataclass(frozen=True)
class GateResult:
    polynomial: Polynomial
    is_identically_zero: bool
    witness: Witness | None
    partners: Mapping[Variable, Variable]


def _operator_parts(
    op: Union[Grammar, LinearDiffOp], variables: Sequence[Variable]
) -> tuple[Polynomial, list[tuple[Polynomial, Variable]]]:
    # Restricting derivative targets to the gated variables is sound: the
    # test product depends on no other variable, so those partials vanish.
    if isinstance(op, Grammar):
        scalar = Polynomial.zero()
        terms = [(op.rule(v), v) for v in variables if not op.rule(v).is_zero]
    else:
        scalar = op.scalar
        wanted = set(variables)
        terms = [(c, v) for c, v in op.derivative_terms if v in wanted]
    return scalar, terms


def _apply_operator(op: Union[Grammar, LinearDiffOp], p: Polynomial) -> Polynomial:
    return op.derive(p) if isinstance(op, Grammar) else op.apply(p)


def _tmul(p: Triple, q: Triple) -> Triple:
    return (
        p[0] * q[0] - p[1] * q[1],
        p[0] * q[1] + p[1] * q[0],
        p[2] * q[2],
    )


def _tadd(p: Triple, q: Triple) -> Triple:
    if p[2] == q[2]:
        a, b, d = p[0] + q[0], p[1] + q[1], p[2]
    else:
        a = p[0] * q[2] + q[0] * p[2]
        b = p[1] * q[2] + q[1] * p[2]
        d = p[2] * q[2]
    g = math.gcd(math.gcd(a, b), d)
    if g > 1:
        return (a // g, b // g, d // g)
    return (a, b, d)


_T_ONE: Triple = (1, 0, 1)


def _compile_plan(p: Polynomial, slot: Mapping[Variable, int]):
    return [
        (int(coeff), tuple((slot[var], e) for var, e in mono))
        for mono, coeff in p.terms.items()
    ]


def _eval_plan(plan, coords) -> Triple:
    total = None
    for coeff, powers in plan:
        t: Triple = (coeff, 0, 1)
        for s, e in powers:
            c = coords[s]
            for _ in range(e):
                t = _tmul(t, c)
        total = t if total is None else _tadd(total, t)
    return total if total is not None else (0, 0, 1)


class _FactoredGate:
    """Evaluates op(product of (v + partner_v)) without expanding it.

    The value equals scalar * F + sum of coeff_w * (F / f_w) with
    F = product of the binomial factors; the arithmetic runs on exact
    integer triples (re, im, den), so the zero test is exact.
    """

    def __init__(self, scalar, terms, variables, partners, all_vars):
        self.scalar = scalar
        self.terms = terms
        self.variables = list(variables)
        self.partners = partners
        self.all_vars = list(all_vars)
        slot = {v: k for k, v in enumerate(self.all_vars)}
        self.pair_slots = [(slot[v], slot[partners[v]]) for v in self.variables]
        self.scalar_plan = None if scalar.is_zero else _compile_plan(scalar, slot)
        index_of = {v: i for i, v in enumerate(self.variables)}
        self.term_plans = [
            (_compile_plan(coeff, slot), index_of[target]) for coeff, target in terms
        ]

    def is_zero_at_triples(self, coords: Sequence[Triple]) -> bool:
        m = len(self.pair_slots)
        factors = [_tadd(coords[sv], coords[sp]) for sv, sp in self.pair_slots]
        prefix = [_T_ONE] * (m + 1)
        for i in range(m):
            prefix[i + 1] = _tmul(prefix[i], factors[i])
        suffix = [_T_ONE] * (m + 1)
        for i in range(m - 1, -1, -1):
            suffix[i] = _tmul(suffix[i + 1], factors[i])
        total = None
        if self.scalar_plan is not None:
            total = _tmul(_eval_plan(self.scalar_plan, coords), prefix[m])
        for plan, i in self.term_plans:
            piece = _tmul(_eval_plan(plan, coords), _tmul(prefix[i], suffix[i + 1]))
            total = piece if total is None else _tadd(total, piece)
        return total is None or (total[0] == 0 and total[1] == 0)

    def value_at(self, point: Mapping[Variable, GaussianRational]) -> GaussianRational:
        """Exact rational-arithmetic evaluation of the same formula."""
        from .polyring import GR_ZERO

        factors = {v: point[v] + point[self.partners[v]] for v in self.variables}
        full = GaussianRational.of(1)
        for f in factors.values():
            full = full * f
        total = GR_ZERO
        if not self.scalar.is_zero:
            total = total + self.scalar.evaluate(point) * full
        for coeff, target in self.terms:
            cofactor = GaussianRational.of(1)
            for v in self.variables:
                if v != target:
                    cofactor = cofactor * factors[v]
            total = total + coeff.evaluate(point) * cofactor
        return total


def lemma_gate(
    op: Union[Grammar, LinearDiffOp],
    variables: Iterable[Variable],
    samples: int,
    seed: int,
    inject: Sequence[Mapping[Variable, object]] = (),
) -> GateResult:
    """Apply op to the product of (v + partner_v) and hunt for a UHP zero.

    Returns the expanded polynomial, whether it is identically zero, and
    the first Witness found over the deterministic sample stream (injected
    points first).  Fast evaluation uses the factored form; a hit is
    re-verified with exact rational arithmetic before it is reported.
    """
    base = sorted(set(variables))
    partners = partner_map(base)
    product = Polynomial.one()
    for v in base:
        product = product * (Polynomial.variable(v) + Polynomial.variable(partners[v]))
    expanded = _apply_operator(op, product)
    if expanded.is_zero:
        return GateResult(expanded, True, None, partners)

    scalar, terms = _operator_parts(op, base)
    all_vars = sorted(set(expanded.variables()) | set(base) | set(partners.values()))
    gate = _FactoredGate(scalar, terms, base, partners, all_vars)

    for raw in inject:
        point = {v: GaussianRational.of(val) for v, val in raw.items()}
        if not _in_upper_half_plane(point):
            continue
        if expanded.evaluate(point).is_zero:
            return GateResult(expanded, False, Witness(point), partners)
    for i in range(samples):
        coords = _sample_triples(len(all_vars), seed, i)
        if gate.is_zero_at_triples(coords):
            point = {v: _triple_to_gaussian(t) for v, t in zip(all_vars, coords)}
            if not gate.value_at(point).is_zero:
                raise AssertionError("integer and rational evaluations disagree")
            return GateResult(expanded, False, Witness(point), partners)
    return GateResult(expanded, False, None, partners)


# --------------------------------------------------------------------------
# Specializations and the classical identities
# --------------------------------------------------------------------------

SUITE_NAMES = ("An", "Cn", "Tn", "Bn", "Mn", "Sn")


def specialization_suite(
    n: int, names: Sequence[str] | None = None
) -> dict[str, Polynomial]:
    """Univariate polynomials obtained from the multivariate families.

    An: ascents/descents over permutations, x_i -> 1, y_i -> x.
    Cn: plain Stirling words, x_i = z_i -> 1, y_i -> x.
    Tn: marked Stirling words, same substitution.
    Bn: barred words, y_i = v_i -> x and x_i = z_i = u_i -> 1 (descents).
    Mn: barred words, v_i -> x, all others -> 1 (barred descents; the
        constant term is genuine, some words have none).
    Sn: partitions, a -> 1 and b_i -> x (block counts).

    Every output is univariate in x0.
    """
    if n < 1:
        raise ValueError("order must be at least 1")
    wanted = tuple(names) if names is not None else SUITE_NAMES
    unknown = set(wanted) - set(SUITE_NAMES)
    if unknown:
        raise ValueError(f"unknown suite names: {sorted(unknown)}")
    x = X(0)
    out: dict[str, Polynomial] = {}
    indices = range(n + 1)
    if "An" in wanted:
        poly = iterate_family(FamilyKind.EULERIAN_MULTI, n)
        sub: dict[Variable, object] = {X(i): 1 for i in indices}
        sub.update({Y(i): x for i in indices})
        out["An"] = poly.specialize(sub)
    if "Cn" in wanted or "Tn" in wanted:
        sub = {X(i): 1 for i in indices}
        sub.update({Z(i): 1 for i in indices})
        sub.update({Y(i): x for i in indices})
        if "Cn" in wanted:
            out["Cn"] = iterate_family(FamilyKind.STIRLING2_MULTI, n).specialize(sub)
        if "Tn" in wanted:
            out["Tn"] = iterate_family(FamilyKind.MARKED_MULTI, n).specialize(sub)
    if "Bn" in wanted or "Mn" in wanted:
        poly = iterate_family(FamilyKind.LEGENDRE, n)
        if "Bn" in wanted:
            sub = {X(i): 1 for i in indices}
            sub.update({Z(i): 1 for i in indices})
            sub.update({U(i): 1 for i in indices})
            sub.update({Y(i): x for i in indices})
            sub.update({V(i): x for i in indices})
            out["Bn"] = poly.specialize(sub)
        if "Mn" in wanted:
            sub = {X(i): 1 for i in indices}
            sub.update({Y(i): 1 for i in indices})
            sub.update({Z(i): 1 for i in indices})
            sub.update({U(i): 1 for i in indices})
            sub.update({V(i): x for i in indices})
            out["Mn"] = poly.specialize(sub)
    if "Sn" in wanted:
        poly = iterate_family(FamilyKind.PARTITION_MULTI, n)
        sub = {A(0): 1}
        sub.update({B(i): x for i in range(1, n + 1)})
        out["Sn"] = poly.specialize(sub)
    return {name: out[name] for name in wanted}


def verify_tn_identity(n: int) -> bool:
    """Marked-word descent polynomial versus 2^(n-k) C(n,k) x^k, exactly.

    The left side comes from the grammar engine, the right side from the
    enumeration of plain Stirling words, so the two computation paths stay
    independent.
    """
    tn = specialization_suite(n, names=("Tn",))["Tn"]
    table = coefficient_table(WordFamily.STIRLING, n, "des")
    x = X(0)
    rhs = Polynomial.zero()
    for k, count in table.items():
        rhs = rhs + Polynomial.term(2 ** (n - k) * count, [x] * k)
    return tn == rhs


def stirling_second_table(nmax: int) -> list[list[int]]:
    """S[n][k] by the recurrence S(n,k) = k S(n-1,k) + S(n-1,k-1)."""
    table = [[0] * (nmax + 1) for _ in range(nmax + 1)]
    table[0][0] = 1
    for n in range(1, nmax + 1):
        for k in range(1, n + 1):
            table[n][k] = k * table[n - 1][k] + table[n - 1][k - 1]
    return table


def verify_gessel_stanley(k: int, order: int) -> bool:
    """Series check: C_k(x) / (1-x)^(2k+1) = sum of S(n+k, n) x^n.

    C_k comes from the descent histogram over Stirling words of order k;
    the Stirling numbers of the second kind come from their recurrence.
    The expansion uses (1-x)^-(2k+1) = sum of binom(n+2k, 2k) x^n.
    """
    if k < 1 or order < 1:
        raise ValueError("k and order must be positive")
    ck = coefficient_table(WordFamily.STIRLING, k, "des")
    stirling = stirling_second_table(order + k)
    for n in range(order + 1):
        series = sum(
            count * math.comb(n - j + 2 * k, 2 * k)
            for j, count in ck.items()
            if j <= n
        )
        if series != stirling[n + k][n]:
            return False
    return True
