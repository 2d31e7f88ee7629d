"""Brute-force enumeration of the combinatorial structures and their statistics.

This module is the independent oracle for the grammar engine: it builds the
actual permutations, multiset permutations, barred and marked words and set
partitions, reads their statistics off the definitions, and sums the
resulting weight monomials.  Grammar output and enumeration output must
agree exactly, and the tests insist on it.

Conventions, used uniformly:

* words carry virtual 0-sentinels before the first and after the last
  letter, so position 1 is always an ascent and the last position is
  always a descent;
* barred and marked letters compare by value only (a barred letter neither
  exceeds nor is exceeded by its unbarred twin);
* "first" and "second" occurrence in barred words count unbarred copies
  only.

Each family has two independent enumeration paths: incremental insertion
(inserting n, nn, or the barred letter and nn, mirroring how the grammars
grow structures) and generate-and-filter over raw multiset permutations.
Both paths are exposed so the tests can check they agree.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Iterator, Mapping, NamedTuple, Sequence

from .polyring import A, B, Polynomial, U, V, Variable, X, Y, Z


class InvalidWordError(ValueError):
    """Raised when a word violates its family's validity condition."""


class Letter(NamedTuple):
    value: int
    barred: bool = False
    marked: bool = False

    def __str__(self) -> str:
        return f"{self.value}" + ("'" if self.barred else "") + ("*" if self.marked else "")


Word = tuple  # tuple[Letter, ...]
SetPartition = tuple  # tuple[tuple[int, ...], ...], blocks ordered by minima


class WordFamily(str, Enum):
    PERMUTATION = "permutation"
    PARTITION = "partition"
    STIRLING = "stirling"
    R_STIRLING = "r_stirling"
    LEGENDRE = "legendre"
    MARKED_STIRLING = "marked_stirling"

    @classmethod
    def parse(cls, name: str) -> "WordFamily":
        try:
            return cls(name.replace("-", "_").lower())
        except ValueError:
            raise ValueError(f"unknown structure family: {name!r}") from None


def serialize_word(word: Word) -> str:
    return " ".join(str(letter) for letter in word)


def serialize_partition(partition: SetPartition) -> str:
    return ",".join("{" + " ".join(str(v) for v in block) + "}" for block in partition)


# --------------------------------------------------------------------------
# Incremental-insertion enumeration (primary path)
# --------------------------------------------------------------------------


def _permutation_children(w: Word, k: int) -> Iterator[Word]:
    letter = (Letter(k),)
    for g in range(len(w) + 1):
        yield w[:g] + letter + w[g:]


def _block_children(w: Word, k: int, r: int) -> Iterator[Word]:
    block = tuple(Letter(k) for _ in range(r))
    for g in range(len(w) + 1):
        yield w[:g] + block + w[g:]


def _marked_children(w: Word, k: int) -> Iterator[Word]:
    # Gap g sits after letter g (gap 0 is the front).  At a strict-descent
    # gap the letter before it is an unmarked second occurrence; inserting
    # kk there makes it markable, so that gap yields two children.
    pair = (Letter(k), Letter(k))
    n = len(w)
    for g in range(n + 1):
        yield w[:g] + pair + w[g:]
        if g >= 1:
            nxt = w[g].value if g < n else 0
            if w[g - 1].value > nxt:
                marked = w[g - 1]._replace(marked=True)
                yield w[: g - 1] + (marked,) + pair + w[g:]


def _legendre_children(w: Word, k: int) -> Iterator[Word]:
    bar = (Letter(k, barred=True),)
    pair = (Letter(k), Letter(k))
    for g1 in range(len(w) + 1):
        mid = w[:g1] + bar + w[g1:]
        for g2 in range(len(mid) + 1):
            yield mid[:g2] + pair + mid[g2:]


def _partition_children(p: SetPartition, k: int) -> Iterator[SetPartition]:
    for j in range(len(p)):
        yield p[:j] + (p[j] + (k,),) + p[j + 1:]
    yield p + ((k,),)


def enumerate_family(
    family: WordFamily, n: int, r: int | None = None
) -> Iterator[Word | SetPartition]:
    """All structures of order n, by incremental insertion, in a fixed order."""
    family = WordFamily(family)
    if n < 1:
        raise ValueError("order must be at least 1")
    if family is WordFamily.R_STIRLING:
        if r is None or r < 1:
            raise ValueError("r_stirling requires r >= 1")
    elif r is not None:
        raise ValueError(f"{family.value} takes no r parameter")

    if family is WordFamily.PARTITION:
        level: list = [()]
        expand = _partition_children
    else:
        level = [()]
        expand = {
            WordFamily.PERMUTATION: _permutation_children,
            WordFamily.STIRLING: lambda w, k: _block_children(w, k, 2),
            WordFamily.R_STIRLING: lambda w, k: _block_children(w, k, r),
            WordFamily.MARKED_STIRLING: _marked_children,
            WordFamily.LEGENDRE: _legendre_children,
        }[family]
    for k in range(1, n + 1):
        level = [child for parent in level for child in expand(parent, k)]
    return iter(level)


# --------------------------------------------------------------------------
# Generate-and-filter enumeration (independent second path)
# --------------------------------------------------------------------------


def _multiset_permutations(items: Sequence) -> Iterator[tuple]:
    items = sorted(items)
    n = len(items)

    def rec(remaining: list, prefix: tuple) -> Iterator[tuple]:
        if len(prefix) == n:
            yield prefix
            return
        prev = None
        for i, item in enumerate(remaining):
            if item == prev:
                continue
            prev = item
            yield from rec(remaining[:i] + remaining[i + 1:], prefix + (item,))

    return rec(list(items), ())


def is_valid(family: WordFamily, obj, n: int, r: int | None = None) -> bool:
    """Family validity predicate, stated directly from the definitions."""
    family = WordFamily(family)
    if family is WordFamily.PERMUTATION:
        values = [l.value for l in obj]
        return sorted(values) == list(range(1, n + 1)) and not any(
            l.barred or l.marked for l in obj
        )
    if family in (WordFamily.STIRLING, WordFamily.R_STIRLING):
        rr = 2 if family is WordFamily.STIRLING else r
        values = [l.value for l in obj]
        if sorted(values) != sorted(list(range(1, n + 1)) * rr):
            return False
        if any(l.barred or l.marked for l in obj):
            return False
        return _between_equal_pairs_ok(values, strict=False)
    if family is WordFamily.MARKED_STIRLING:
        values = [l.value for l in obj]
        if sorted(values) != sorted(list(range(1, n + 1)) * 2):
            return False
        if any(l.barred for l in obj):
            return False
        if not _between_equal_pairs_ok(values, strict=False):
            return False
        eligible = set(_markable_positions(values))
        return all(i in eligible for i, l in enumerate(obj) if l.marked)
    if family is WordFamily.LEGENDRE:
        if any(l.marked for l in obj):
            return False
        unbarred = sorted(l.value for l in obj if not l.barred)
        barred = sorted(l.value for l in obj if l.barred)
        if unbarred != sorted(list(range(1, n + 1)) * 2) or barred != list(
            range(1, n + 1)
        ):
            return False
        for i, li in enumerate(obj):
            if li.barred:
                continue
            for k in range(i + 1, len(obj)):
                if obj[k].value == li.value and not obj[k].barred:
                    if any(obj[j].value <= li.value for j in range(i + 1, k)):
                        return False
        return True
    if family is WordFamily.PARTITION:
        elements = sorted(v for block in obj for v in block)
        if elements != list(range(1, n + 1)):
            return False
        if any(list(block) != sorted(block) for block in obj):
            return False
        minima = [block[0] for block in obj]
        return minima == sorted(minima)
    raise ValueError(f"unknown family: {family}")


def _between_equal_pairs_ok(values: Sequence[int], strict: bool) -> bool:
    # Everything between the first and last copy of a value must be at
    # least that value (strictly greater when each value has two copies).
    first: dict[int, int] = {}
    last: dict[int, int] = {}
    for i, v in enumerate(values):
        first.setdefault(v, i)
        last[v] = i
    for v in first:
        for k in range(first[v] + 1, last[v]):
            if values[k] < v or (strict and values[k] == v):
                return False
    return True


def _markable_positions(values: Sequence[int]) -> Iterator[int]:
    # 0-based positions holding a second occurrence followed by a larger
    # value (the end sentinel 0 never qualifies).
    seen: dict[int, int] = {}
    for i, v in enumerate(values):
        seen[v] = seen.get(v, 0) + 1
        nxt = values[i + 1] if i + 1 < len(values) else 0
        if seen[v] == 2 and v < nxt:
            yield i


def _restricted_growth_strings(n: int) -> Iterator[tuple[int, ...]]:
    def rec(prefix: tuple[int, ...], maxblock: int) -> Iterator[tuple[int, ...]]:
        if len(prefix) == n:
            yield prefix
            return
        for b in range(maxblock + 2):
            yield from rec(prefix + (b,), max(maxblock, b))

    return rec((), -1)


def enumerate_by_filter(
    family: WordFamily, n: int, r: int | None = None
) -> list[Word | SetPartition]:
    """Second enumeration path: raw candidates filtered by validity."""
    family = WordFamily(family)
    if family is WordFamily.PARTITION:
        out = []
        for rgs in _restricted_growth_strings(n):
            blocks: dict[int, list[int]] = {}
            for i, b in enumerate(rgs):
                blocks.setdefault(b, []).append(i + 1)
            out.append(tuple(tuple(block) for _, block in sorted(blocks.items())))
        return out
    if family is WordFamily.PERMUTATION:
        return [
            tuple(Letter(v) for v in perm)
            for perm in itertools.permutations(range(1, n + 1))
        ]
    if family in (WordFamily.STIRLING, WordFamily.R_STIRLING):
        rr = 2 if family is WordFamily.STIRLING else r
        if rr is None or rr < 1:
            raise ValueError("r_stirling requires r >= 1")
        pool = sorted(list(range(1, n + 1)) * rr)
        return [
            tuple(Letter(v) for v in values)
            for values in _multiset_permutations(pool)
            if _between_equal_pairs_ok(values, strict=False)
        ]
    if family is WordFamily.MARKED_STIRLING:
        out = []
        for word in enumerate_by_filter(WordFamily.STIRLING, n):
            values = [l.value for l in word]
            eligible = list(_markable_positions(values))
            for size in range(len(eligible) + 1):
                for chosen in itertools.combinations(eligible, size):
                    marked = set(chosen)
                    out.append(
                        tuple(
                            l._replace(marked=(i in marked))
                            for i, l in enumerate(word)
                        )
                    )
        return out
    if family is WordFamily.LEGENDRE:
        pool = [Letter(v) for v in range(1, n + 1) for _ in range(2)] + [
            Letter(v, barred=True) for v in range(1, n + 1)
        ]
        return [
            word
            for word in _multiset_permutations(pool)
            if is_valid(WordFamily.LEGENDRE, word, n)
        ]
    raise ValueError(f"unknown family: {family}")


# --------------------------------------------------------------------------
# Statistics
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class StatSets:
    """Index sets of the word statistics (1-based positions)."""

    asc: frozenset = frozenset()
    des: frozenset = frozenset()
    plat: frozenset = frozenset()
    jplat: Mapping[int, frozenset] = field(default_factory=dict)
    ls_x: frozenset = frozenset()
    ls_y: frozenset = frozenset()
    ls_z: frozenset = frozenset()
    ls_u: frozenset = frozenset()
    ls_v: frozenset = frozenset()


def statistics(word: Word, family: WordFamily, r: int | None = None) -> StatSets:
    """All statistic index sets defined for the family.

    Comparisons are on letter values only, with 0-sentinels at both ends.
    """
    family = WordFamily(family)
    n_letters = len(word)
    if n_letters == 0:
        raise ValueError("empty word")
    values = [0] + [l.value for l in word] + [0]

    def asc_set():
        return frozenset(i for i in range(1, n_letters + 1) if values[i - 1] < values[i])

    def des_set():
        return frozenset(i for i in range(1, n_letters + 1) if values[i] > values[i + 1])

    def plat_set():
        return frozenset(i for i in range(1, n_letters + 1) if values[i - 1] == values[i])

    if family is WordFamily.PERMUTATION:
        return StatSets(asc=asc_set(), des=des_set())
    if family in (WordFamily.STIRLING, WordFamily.MARKED_STIRLING):
        return StatSets(asc=asc_set(), des=des_set(), plat=plat_set())
    if family is WordFamily.R_STIRLING:
        if r is None or r < 1:
            raise ValueError("r_stirling requires r >= 1")
        seen: dict[int, int] = {}
        jplat: dict[int, set[int]] = {j: set() for j in range(1, r)}
        for i in range(1, n_letters + 1):
            v = values[i]
            seen[v] = seen.get(v, 0) + 1
            if i < n_letters and values[i + 1] == v:
                jplat[seen[v]].add(i)
        return StatSets(
            asc=asc_set(),
            des=des_set(),
            jplat={j: frozenset(s) for j, s in jplat.items()},
        )
    if family is WordFamily.LEGENDRE:
        seen_unbarred: dict[int, int] = {}
        ls_x, ls_y, ls_z, ls_u, ls_v = set(), set(), set(), set(), set()
        for i in range(1, n_letters + 1):
            letter = word[i - 1]
            weak_rise = values[i - 1] <= values[i]
            fall = values[i] > values[i + 1]
            if letter.barred:
                if weak_rise:
                    ls_u.add(i)
                if fall:
                    ls_v.add(i)
            else:
                seen_unbarred[letter.value] = seen_unbarred.get(letter.value, 0) + 1
                if weak_rise:
                    (ls_x if seen_unbarred[letter.value] == 1 else ls_z).add(i)
                if fall:
                    ls_y.add(i)
        return StatSets(
            des=frozenset(ls_y | ls_v),
            ls_x=frozenset(ls_x),
            ls_y=frozenset(ls_y),
            ls_z=frozenset(ls_z),
            ls_u=frozenset(ls_u),
            ls_v=frozenset(ls_v),
        )
    raise ValueError(f"statistics undefined for family: {family}")


# --------------------------------------------------------------------------
# Weights, generating polynomials and coefficient tables
# --------------------------------------------------------------------------


def structure_weight(
    family: WordFamily, obj, r: int | None = None, n: int | None = None
) -> Polynomial:
    """The grammatical-labeling weight monomial of one structure."""
    family = WordFamily(family)
    if family is WordFamily.PARTITION:
        return Polynomial.term(1, [A(0)] + [B(max(block)) for block in obj])
    stats = statistics(obj, family, r)
    values = [l.value for l in obj]
    factors: list[Variable] = []
    if family is WordFamily.PERMUTATION:
        factors += [X(values[i - 1]) for i in stats.asc]
        factors += [Y(values[i - 1]) for i in stats.des]
    elif family in (WordFamily.STIRLING, WordFamily.MARKED_STIRLING):
        factors += [X(values[i - 1]) for i in stats.asc]
        factors += [Y(values[i - 1]) for i in stats.des]
        factors += [Z(values[i - 1]) for i in stats.plat]
    elif family is WordFamily.R_STIRLING:
        if n is None:
            n = max(values)
        factors += [X(values[i - 1]) for i in stats.des]
        factors += [Y(values[i - 1]) for i in stats.asc]
        for j, positions in stats.jplat.items():
            factors += [Z(j * (n + 1) + values[i - 1]) for i in positions]
    elif family is WordFamily.LEGENDRE:
        factors += [X(values[i - 1]) for i in stats.ls_x]
        factors += [Y(values[i - 1]) for i in stats.ls_y]
        factors += [Z(values[i - 1]) for i in stats.ls_z]
        factors += [U(values[i - 1]) for i in stats.ls_u]
        factors += [V(values[i - 1]) for i in stats.ls_v]
    else:
        raise ValueError(f"unknown family: {family}")
    return Polynomial.term(1, factors)


def weight_polynomial(family: WordFamily, n: int, r: int | None = None) -> Polynomial:
    """Sum of weight monomials over every structure of order n.

    For r_stirling the j-plateau variable of value v is encoded as the
    Z-family variable with index j*(n+1) + v; the offset is injective for
    values 1..n.
    """
    family = WordFamily(family)
    total: dict = {}
    for obj in enumerate_family(family, n, r):
        for mono, coeff in structure_weight(family, obj, r, n).terms.items():
            total[mono] = total.get(mono, 0) + coeff
    return Polynomial(total)


def weight_polynomial_univariate(kind: str, n: int) -> Polynomial:
    """Enumeration-side counterpart of the univariate grammar families.

    partition_uni collects a*b^blocks; eulerian_uni collects
    x^ascents * y^descents; the two Stirling kinds collect
    x^(ascents+plateaux) * y^descents over plain and marked words.
    """
    from .grammar import FamilyKind

    kind = FamilyKind.parse(kind) if isinstance(kind, str) else kind
    if n == 0:
        from .grammar import family_seed

        return Polynomial.variable(family_seed(kind))
    total: dict = {}

    def add(mono_poly: Polynomial):
        for mono, coeff in mono_poly.terms.items():
            total[mono] = total.get(mono, 0) + coeff

    if kind is FamilyKind.PARTITION_UNI:
        for p in enumerate_family(WordFamily.PARTITION, n):
            add(Polynomial.term(1, [A(0)] + [B(0)] * len(p)))
    elif kind is FamilyKind.EULERIAN_UNI:
        for w in enumerate_family(WordFamily.PERMUTATION, n):
            s = statistics(w, WordFamily.PERMUTATION)
            add(Polynomial.term(1, [X(0)] * len(s.asc) + [Y(0)] * len(s.des)))
    elif kind in (FamilyKind.STIRLING2_UNI, FamilyKind.MARKED_UNI):
        fam = (
            WordFamily.STIRLING
            if kind is FamilyKind.STIRLING2_UNI
            else WordFamily.MARKED_STIRLING
        )
        for w in enumerate_family(fam, n):
            s = statistics(w, fam)
            add(
                Polynomial.term(
                    1, [X(0)] * (len(s.asc) + len(s.plat)) + [Y(0)] * len(s.des)
                )
            )
    else:
        raise ValueError(f"no univariate enumeration for kind: {kind}")
    return Polynomial(total)


_STAT_NAMES = ("des", "asc", "plat", "barred_des", "blocks")


def coefficient_table(
    family: WordFamily, n: int, stat: str = "des", r: int | None = None
) -> dict[int, int]:
    """Histogram of one statistic over the enumeration."""
    family = WordFamily(family)
    if stat not in _STAT_NAMES:
        raise ValueError(f"unknown statistic: {stat!r}")
    table: dict[int, int] = {}

    def bump(k: int):
        table[k] = table.get(k, 0) + 1

    if family is WordFamily.PARTITION:
        if stat != "blocks":
            raise ValueError("partitions support only the 'blocks' statistic")
        for p in enumerate_family(family, n):
            bump(len(p))
        return dict(sorted(table.items()))
    if stat == "blocks":
        raise ValueError("'blocks' applies to partitions only")
    if stat == "barred_des" and family is not WordFamily.LEGENDRE:
        raise ValueError("'barred_des' applies to legendre words only")
    for w in enumerate_family(family, n, r):
        s = statistics(w, family, r)
        if stat == "des":
            bump(len(s.des))
        elif stat == "asc":
            bump(len(s.asc))
        elif stat == "plat":
            if family not in (WordFamily.STIRLING, WordFamily.MARKED_STIRLING):
                raise ValueError(f"'plat' undefined for {family.value}")
            bump(len(s.plat))
        else:
            bump(len(s.ls_v))
    return dict(sorted(table.items()))


# --------------------------------------------------------------------------
# Counting helpers
# --------------------------------------------------------------------------


def bell_number(n: int) -> int:
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for value in row:
            nxt.append(nxt[-1] + value)
        row = nxt
    return row[0]


def double_factorial_odd(n: int) -> int:
    """(2n-1)!! for n >= 0."""
    out = 1
    for k in range(1, n + 1):
        out *= 2 * k - 1
    return out


def structure_count(family: WordFamily, n: int, r: int | None = None) -> int:
    """Closed-form structure counts (marked words are counted by listing)."""
    family = WordFamily(family)
    if family is WordFamily.PERMUTATION:
        return math.factorial(n)
    if family is WordFamily.PARTITION:
        return bell_number(n)
    if family is WordFamily.STIRLING:
        return double_factorial_odd(n)
    if family is WordFamily.R_STIRLING:
        if r is None or r < 1:
            raise ValueError("r_stirling requires r >= 1")
        out = 1
        for k in range(1, n + 1):
            out *= r * (k - 1) + 1
        return out
    if family is WordFamily.LEGENDRE:
        out = 1
        for k in range(1, n + 1):
            out *= (3 * k - 2) * (3 * k - 1)
        return out
    if family is WordFamily.MARKED_STIRLING:
        return sum(1 for _ in enumerate_family(family, n))
    raise ValueError(f"unknown family: {family}")
