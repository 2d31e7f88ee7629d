"""Formal derivatives induced by substitution grammars.

A grammar is a finite map from variables to polynomial right-hand sides.
It induces a derivative D that is linear, obeys the Leibniz rule, and sends
a variable to its rule (variables without a rule derive to zero).  Nine
built-in families produce, step by step, the generating polynomials of
permutations, set partitions, Stirling permutations and their marked and
barred variants; iterating a family's steps from its seed grows the
polynomial whose monomials are the weights of the underlying structures.

First-order linear differential operators (a scalar plus a sum of
coefficient times partial derivative terms) are provided as well; they act
as drop-in replacements for particular grammar steps on the generated
sequence and are the objects fed to the stability gates.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from types import MappingProxyType
from typing import Iterable, Mapping

from .polyring import A, B, Mono, Polynomial, U, V, Variable, X, Y, Z, _mono_mul


class Grammar:
    """Substitution rules inducing a formal derivative."""

    __slots__ = ("_rules",)

    def __init__(self, rules: Mapping[Variable, Polynomial]):
        self._rules = dict(rules)

    @property
    def rules(self) -> Mapping[Variable, Polynomial]:
        return MappingProxyType(self._rules)

    def rule(self, v: Variable) -> Polynomial:
        return self._rules.get(v, Polynomial.zero())

    def derive(self, p: Polynomial) -> Polynomial:
        """D(p) = sum over ruled variables v of (dp/dv) * rule(v)."""
        out: dict[Mono, object] = {}
        for mono, coeff in p.terms.items():
            for i, (var, e) in enumerate(mono):
                rhs = self._rules.get(var)
                if rhs is None:
                    continue
                base = mono[:i] + ((var, e - 1),) * (e > 1) + mono[i + 1:]
                c = coeff * e
                for rmono, rcoeff in rhs.terms.items():
                    m = _mono_mul(base, rmono)
                    out[m] = out.get(m, 0) + c * rcoeff
        return Polynomial(out)

    def __repr__(self) -> str:
        inner = ", ".join(f"{v} -> {p}" for v, p in sorted(self._rules.items()))
        return f"Grammar({inner})"


@dataclass(frozen=True)
class LinearDiffOp:
    """First-order operator p -> scalar*p + sum of coeff * dp/dtarget."""

    scalar: Polynomial
    derivative_terms: tuple[tuple[Polynomial, Variable], ...]

    def apply(self, p: Polynomial) -> Polynomial:
        # Accumulate every contribution into one dict; building the result
        # with repeated polynomial additions would copy it per target.
        out: dict[Mono, object] = {}
        if not self.scalar.is_zero:
            for m1, c1 in self.scalar.terms.items():
                for m2, c2 in p.terms.items():
                    m = _mono_mul(m1, m2)
                    out[m] = out.get(m, 0) + c1 * c2
        coeff_of: dict[Variable, Polynomial] = {}
        for coeff, target in self.derivative_terms:
            coeff_of[target] = coeff_of.get(target, Polynomial.zero()) + coeff
        if coeff_of:
            for mono, c in p.terms.items():
                for i, (var, e) in enumerate(mono):
                    cp = coeff_of.get(var)
                    if cp is None:
                        continue
                    base = mono[:i] + ((var, e - 1),) * (e > 1) + mono[i + 1:]
                    ce = c * e
                    for rmono, rcoeff in cp.terms.items():
                        m = _mono_mul(base, rmono)
                        out[m] = out.get(m, 0) + ce * rcoeff
        return Polynomial(out)


class FamilyKind(str, Enum):
    """The built-in grammar families."""

    PARTITION_UNI = "partition_uni"
    EULERIAN_UNI = "eulerian_uni"
    STIRLING2_UNI = "stirling2_uni"
    MARKED_UNI = "marked_uni"
    PARTITION_MULTI = "partition_multi"
    EULERIAN_MULTI = "eulerian_multi"
    STIRLING2_MULTI = "stirling2_multi"
    LEGENDRE = "legendre"
    MARKED_MULTI = "marked_multi"

    @classmethod
    def parse(cls, name: str) -> "FamilyKind":
        try:
            return cls(name.replace("-", "_").lower())
        except ValueError:
            raise ValueError(f"unknown grammar family: {name!r}") from None


_SEEDS = {
    FamilyKind.PARTITION_UNI: A(0),
    FamilyKind.EULERIAN_UNI: X(0),
    FamilyKind.STIRLING2_UNI: X(0),
    FamilyKind.MARKED_UNI: X(0),
    FamilyKind.PARTITION_MULTI: A(0),
    FamilyKind.EULERIAN_MULTI: X(0),
    FamilyKind.STIRLING2_MULTI: Z(0),
    FamilyKind.LEGENDRE: X(0),
    FamilyKind.MARKED_MULTI: Z(0),
}


def family_seed(kind: FamilyKind) -> Variable:
    return _SEEDS[kind]


def steps_for_order(kind: FamilyKind, n: int) -> int:
    """Number of derivative steps realizing order n (2n for legendre)."""
    return 2 * n if kind is FamilyKind.LEGENDRE else n


def _mono(*vs: Variable) -> Polynomial:
    return Polynomial.term(1, vs)


def family_grammar(kind: FamilyKind, step: int) -> Grammar:
    """The grammar applied at the given step (steps count from 1)."""
    if step < 1:
        raise ValueError("grammar steps count from 1")
    if kind is FamilyKind.PARTITION_UNI:
        return Grammar({A(0): _mono(A(0), B(0)), B(0): _mono(B(0))})
    if kind is FamilyKind.EULERIAN_UNI:
        xy = _mono(X(0), Y(0))
        return Grammar({X(0): xy, Y(0): xy})
    if kind is FamilyKind.STIRLING2_UNI:
        xxy = _mono(X(0), X(0), Y(0))
        return Grammar({X(0): xxy, Y(0): xxy})
    if kind is FamilyKind.MARKED_UNI:
        xxy = _mono(X(0), X(0), Y(0))
        return Grammar({X(0): xxy, Y(0): 2 * xxy})
    if kind is FamilyKind.PARTITION_MULTI:
        rules = {A(0): _mono(A(0), B(step))}
        for i in range(1, step):
            rules[B(i)] = _mono(B(step))
        return Grammar(rules)
    if kind is FamilyKind.EULERIAN_MULTI:
        rhs = _mono(X(step), Y(step))
        rules = {}
        for i in range(step):
            rules[X(i)] = rhs
            rules[Y(i)] = rhs
        return Grammar(rules)
    if kind in (FamilyKind.STIRLING2_MULTI, FamilyKind.MARKED_MULTI):
        rhs = _mono(X(step), Y(step), Z(step))
        marked = kind is FamilyKind.MARKED_MULTI
        rules = {}
        for i in range(step):
            rules[X(i)] = rhs
            rules[Y(i)] = 2 * rhs if marked else rhs
            rules[Z(i)] = rhs
        return Grammar(rules)
    if kind is FamilyKind.LEGENDRE:
        m = (step + 1) // 2
        if step % 2 == 1:
            rhs = _mono(U(m), V(m))
            rules = {}
            for i in range(m):
                for fam in (X, Y, Z, U, V):
                    rules[fam(i)] = rhs
            return Grammar(rules)
        rhs = _mono(X(m), Y(m), Z(m))
        rules = {}
        for i in range(m):
            for fam in (X, Y, Z, U, V):
                rules[fam(i)] = rhs
        rules[U(m)] = _mono(X(m), Z(m), U(m))
        rules[V(m)] = rhs
        return Grammar(rules)
    raise ValueError(f"unknown kind: {kind}")


def iterate_steps(kind: FamilyKind, steps: int) -> Polynomial:
    """Apply the family's derivative steps 1..steps to the seed."""
    if steps < 0:
        raise ValueError("step count must be nonnegative")
    p = Polynomial.variable(family_seed(kind))
    for s in range(1, steps + 1):
        p = family_grammar(kind, s).derive(p)
    return p


def iterate_family(kind: FamilyKind, n: int) -> Polynomial:
    """Generating polynomial of order n (the bare seed for n = 0)."""
    if n < 0:
        raise ValueError("order must be nonnegative")
    return iterate_steps(kind, steps_for_order(kind, n))


class SurrogateKind(str, Enum):
    PARTITION_MULTI = "partition_multi"
    LEGENDRE_EVEN = "legendre_even"

    @classmethod
    def parse(cls, name: str) -> "SurrogateKind":
        try:
            return cls(name.replace("-", "_").lower())
        except ValueError:
            raise ValueError(f"unknown surrogate kind: {name!r}") from None


def surrogate_operator(kind: SurrogateKind | str, n: int) -> LinearDiffOp:
    """Stability-preserving replacement for a grammar step.

    partition_multi at step n: b_n * (1 + sum over i < n of d/db_i); agrees
    with the grammar step on the generated partition polynomials.

    legendre_even at order n: x_n z_n plus x_n y_n z_n times the sum of
    partials over every lower-index variable and v_n; agrees with grammar
    step 2n on the output of step 2n-1.
    """
    kind = SurrogateKind.parse(kind) if isinstance(kind, str) else kind
    if n < 1:
        raise ValueError("surrogate steps count from 1")
    if kind is SurrogateKind.PARTITION_MULTI:
        scalar = _mono(B(n))
        terms = tuple((scalar, B(i)) for i in range(1, n))
        return LinearDiffOp(scalar, terms)
    scalar = _mono(X(n), Z(n))
    coeff = _mono(X(n), Y(n), Z(n))
    targets: list[Variable] = []
    for i in range(n):
        for fam in (X, Y, Z, U, V):
            targets.append(fam(i))
    targets.append(V(n))
    return LinearDiffOp(scalar, tuple((coeff, t) for t in targets))
