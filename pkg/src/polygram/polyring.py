"""Exact sparse multivariate polynomial arithmetic over the integers.

A polynomial maps monomials to nonzero arbitrary-precision integer
coefficients.  A monomial is a tuple of (variable, exponent) pairs, sorted
by variable, with every stored exponent positive; the empty tuple is the
constant monomial.  Variables are (family, index) pairs drawn from eight
named families, and the order (family first, then index) is fixed: every
canonical form in this package, including the JSON serialization, relies
on it.

Rational numbers enter only at the boundaries: evaluation is over exact
Gaussian rationals (complex numbers with Fraction real and imaginary
parts), and specialization accepts rational images but by default insists
that the result still has integer coefficients.

All values are immutable after construction and all operations are pure,
so polynomials may be shared freely between threads.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import IntEnum
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Mapping, NamedTuple, Union


class UnassignedVariableError(ValueError):
    """Raised when an evaluation point misses a variable of the polynomial."""


class NonIntegerCoefficientError(ValueError):
    """Raised when an operation would produce non-integer coefficients
    without the caller opting into rational output."""


class Family(IntEnum):
    """Variable families.  Declaration order fixes the global variable order.

    P is the partner family: it never occurs in generated polynomials and
    is reserved for the auxiliary variables paired with ordinary ones in
    stability gates.
    """

    X = 0
    Y = 1
    Z = 2
    U = 3
    V = 4
    A = 5
    B = 6
    P = 7


class Variable(NamedTuple):
    family: Family
    index: int

    def __str__(self) -> str:
        return f"{self.family.name.lower()}{self.index}"

    def __repr__(self) -> str:
        return str(self)

    @classmethod
    def parse(cls, name: str) -> "Variable":
        """Inverse of str(): 'x1' -> Variable(Family.X, 1)."""
        try:
            family = Family[name[0].upper()]
            index = int(name[1:])
        except (KeyError, ValueError, IndexError):
            raise ValueError(f"not a variable name: {name!r}") from None
        if index < 0:
            raise ValueError(f"negative variable index in {name!r}")
        return cls(family, index)


def X(i: int) -> Variable:
    return Variable(Family.X, i)


def Y(i: int) -> Variable:
    return Variable(Family.Y, i)


def Z(i: int) -> Variable:
    return Variable(Family.Z, i)


def U(i: int) -> Variable:
    return Variable(Family.U, i)


def V(i: int) -> Variable:
    return Variable(Family.V, i)


def A(i: int) -> Variable:
    return Variable(Family.A, i)


def B(i: int) -> Variable:
    return Variable(Family.B, i)


def P(i: int) -> Variable:
    return Variable(Family.P, i)


# A monomial in canonical form: (variable, exponent) pairs sorted by
# variable, exponents all positive.  () is the constant monomial.
Mono = tuple


def _mono_from_map(exps: Mapping[Variable, int]) -> Mono:
    items = tuple(sorted((v, e) for v, e in exps.items() if e != 0))
    for _, e in items:
        if e < 0:
            raise ValueError("negative exponent")
    return items


def _mono_mul(a: Mono, b: Mono) -> Mono:
    if not a:
        return b
    if not b:
        return a
    # Merge of two sorted pair lists; the inputs are canonical already.
    out = []
    i = j = 0
    la, lb = len(a), len(b)
    while i < la and j < lb:
        va, ea = a[i]
        vb, eb = b[j]
        if va == vb:
            out.append((va, ea + eb))
            i += 1
            j += 1
        elif va < vb:
            out.append(a[i])
            i += 1
        else:
            out.append(b[j])
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return tuple(out)


def _mono_degree(m: Mono) -> int:
    return sum(e for _, e in m)


def _mono_key(m: Mono):
    # Graded order: total degree first, then pairwise comparison of the
    # sorted (variable, exponent) list.  Any fixed total order would do;
    # this one is cheap and deterministic.
    return (_mono_degree(m), m)


Coefficient = Union[int, Fraction]
Scalar = Union[int, Fraction]


@dataclass(frozen=True)
class GaussianRational:
    """Exact complex number with rational real and imaginary parts."""

    re: Fraction
    im: Fraction

    def __post_init__(self):
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))

    @classmethod
    def of(cls, value) -> "GaussianRational":
        if isinstance(value, GaussianRational):
            return value
        return cls(Fraction(value), Fraction(0))

    @property
    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __add__(self, other):
        other = GaussianRational.of(other)
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-GaussianRational.of(other))

    def __rsub__(self, other):
        return GaussianRational.of(other) + (-self)

    def __mul__(self, other):
        other = GaussianRational.of(other)
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def reciprocal(self) -> "GaussianRational":
        norm = self.re * self.re + self.im * self.im
        if norm == 0:
            raise ZeroDivisionError("reciprocal of zero")
        return GaussianRational(self.re / norm, -self.im / norm)

    def __truediv__(self, other):
        return self * GaussianRational.of(other).reciprocal()

    def __pow__(self, n: int) -> "GaussianRational":
        if n < 0:
            return self.reciprocal() ** (-n)
        result = GaussianRational(Fraction(1), Fraction(0))
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def __str__(self) -> str:
        if self.im == 0:
            return str(self.re)
        return f"{self.re}{'+' if self.im >= 0 else '-'}{abs(self.im)}i"


GR_ZERO = GaussianRational(Fraction(0), Fraction(0))
GR_ONE = GaussianRational(Fraction(1), Fraction(0))
GR_I = GaussianRational(Fraction(0), Fraction(1))


class Polynomial:
    """Immutable sparse polynomial.

    Coefficients are integers; Fraction coefficients appear only in the
    result of specialize(..., allow_rational=True) and are normalized back
    to int whenever the denominator is 1.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Mono, Coefficient] | None = None):
        clean: dict[Mono, Coefficient] = {}
        if terms:
            for mono, coeff in terms.items():
                if coeff:
                    if type(coeff) is not int and coeff.denominator == 1:
                        coeff = int(coeff)
                    clean[mono] = coeff
        object.__setattr__(self, "_terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    # ---- constructors -------------------------------------------------

    @classmethod
    def zero(cls) -> "Polynomial":
        return cls()

    @classmethod
    def one(cls) -> "Polynomial":
        return cls({(): 1})

    @classmethod
    def constant(cls, c: Coefficient) -> "Polynomial":
        return cls({(): c})

    @classmethod
    def variable(cls, v: Variable) -> "Polynomial":
        return cls({((v, 1),): 1})

    @classmethod
    def term(cls, coeff: Coefficient, variables: Iterable[Variable] = ()) -> "Polynomial":
        """Single term coeff * product of the given variables (with repeats)."""
        exps: dict[Variable, int] = {}
        for v in variables:
            exps[v] = exps.get(v, 0) + 1
        return cls({_mono_from_map(exps): coeff})

    @classmethod
    def monomial(cls, exps: Mapping[Variable, int], coeff: Coefficient = 1) -> "Polynomial":
        return cls({_mono_from_map(exps): coeff})

    # ---- inspection ---------------------------------------------------

    @property
    def terms(self) -> Mapping[Mono, Coefficient]:
        return MappingProxyType(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def variables(self) -> tuple[Variable, ...]:
        seen: set[Variable] = set()
        for mono in self._terms:
            for v, _ in mono:
                seen.add(v)
        return tuple(sorted(seen))

    def degree_in(self, v: Variable) -> int:
        best = 0
        for mono in self._terms:
            for var, e in mono:
                if var == v and e > best:
                    best = e
        return best

    def total_degree(self) -> int:
        if not self._terms:
            return 0
        return max(_mono_degree(m) for m in self._terms)

    def is_multiaffine(self) -> bool:
        return all(e <= 1 for mono in self._terms for _, e in mono)

    def coefficient(self, exps: Mapping[Variable, int]) -> Coefficient:
        return self._terms.get(_mono_from_map(exps), 0)

    def constant_term(self) -> Coefficient:
        return self._terms.get((), 0)

    def canonical_terms(self) -> list[tuple[Mono, Coefficient]]:
        """Terms sorted in the canonical (graded) order."""
        return sorted(self._terms.items(), key=lambda item: _mono_key(item[0]))

    # ---- arithmetic ---------------------------------------------------

    @staticmethod
    def _coerce(value) -> "Polynomial":
        if isinstance(value, Polynomial):
            return value
        if isinstance(value, (int, Fraction)):
            return Polynomial.constant(value)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other):
        other = Polynomial._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self._terms)
        for mono, coeff in other._terms.items():
            out[mono] = out.get(mono, 0) + coeff
        return Polynomial(out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = Polynomial._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return Polynomial._coerce(other) + (-self)

    def __mul__(self, other):
        other = Polynomial._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out: dict[Mono, Coefficient] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = _mono_mul(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Polynomial":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = Polynomial.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            h = hash(frozenset(self._terms.items()))
            object.__setattr__(self, "_hash", h)
        return h

    # ---- calculus and substitution -------------------------------------

    def partial_derivative(self, v: Variable) -> "Polynomial":
        """Formal partial derivative with respect to v."""
        out: dict[Mono, Coefficient] = {}
        for mono, coeff in self._terms.items():
            for i, (var, e) in enumerate(mono):
                if var != v:
                    continue
                rest = mono[:i] + ((var, e - 1),) * (e > 1) + mono[i + 1:]
                out[rest] = out.get(rest, 0) + coeff * e
                break
        return Polynomial(out)

    def specialize(
        self,
        assignment: Mapping[Variable, Union[Scalar, Variable]],
        allow_rational: bool = False,
    ) -> "Polynomial":
        """Simultaneous substitution of variables by exact scalars or variables.

        Variables absent from the assignment stay symbolic.  Substitution is
        simultaneous: images are never re-substituted, so diagonalizing
        y -> x while also sending x -> 1 leaves the new x alone.
        """
        out: dict[Mono, Coefficient] = {}
        for mono, coeff in self._terms.items():
            scalar = Fraction(coeff)
            exps: dict[Variable, int] = {}
            for var, e in mono:
                image = assignment.get(var, var)
                if isinstance(image, Variable):
                    exps[image] = exps.get(image, 0) + e
                else:
                    scalar *= Fraction(image) ** e
            if scalar == 0:
                continue
            m = _mono_from_map(exps)
            out[m] = out.get(m, 0) + scalar
        if not allow_rational:
            bad = [c for c in out.values() if Fraction(c).denominator != 1]
            if bad:
                raise NonIntegerCoefficientError(
                    f"specialization produced non-integer coefficient {bad[0]}"
                )
        return Polynomial(out)

    def evaluate(self, point: Mapping[Variable, object]) -> GaussianRational:
        """Exact value at a point assigning every variable of the polynomial.

        Point values may be GaussianRational, Fraction or int.
        """
        coerced = {v: GaussianRational.of(val) for v, val in point.items()}
        total = GR_ZERO
        for mono, coeff in self._terms.items():
            value = GaussianRational(Fraction(coeff), Fraction(0))
            for var, e in mono:
                try:
                    value = value * (coerced[var] ** e)
                except KeyError:
                    raise UnassignedVariableError(f"no value for {var}") from None
            total = total + value
        return total

    # ---- serialization --------------------------------------------------

    def to_json(self) -> str:
        """Canonical JSON form.  Equal polynomials serialize identically."""
        terms = []
        for mono, coeff in self.canonical_terms():
            if Fraction(coeff).denominator != 1:
                raise NonIntegerCoefficientError(
                    "canonical JSON requires integer coefficients"
                )
            terms.append({"coeff": str(int(coeff)), "mono": {str(v): e for v, e in mono}})
        return json.dumps({"terms": terms}, separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> "Polynomial":
        data = json.loads(text)
        out: dict[Mono, Coefficient] = {}
        for item in data["terms"]:
            coeff = int(item["coeff"])
            exps = {Variable.parse(name): int(e) for name, e in item["mono"].items()}
            mono = _mono_from_map(exps)
            out[mono] = out.get(mono, 0) + coeff
        return cls(out)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for mono, coeff in reversed(self.canonical_terms()):
            factors = [f"{v}" + (f"^{e}" if e > 1 else "") for v, e in mono]
            if not factors:
                parts.append(str(coeff))
            elif coeff == 1:
                parts.append("*".join(factors))
            elif coeff == -1:
                parts.append("-" + "*".join(factors))
            else:
                parts.append("*".join([str(coeff)] + factors))
        text = " + ".join(parts)
        return text.replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"Polynomial({self})"
