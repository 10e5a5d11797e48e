"""Multi-index arithmetic and enumeration of multi-index partitions.

A multi-index is a plain tuple of nonnegative ints.  A partition of a
multi-index v is a multiset of nonzero multi-indices (the "columns")
summing, with multiplicities, to v.  Columns are stored in strictly
increasing lexicographic order together with their multiplicities.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterator

# Resource guard: enumeration cost grows super-exponentially in |v|.
MAX_TOTAL_ORDER = 20
MAX_DIMENSION = 8


class OrderOverflowError(ValueError):
    """Requested order or dimension exceeds the configured cap."""


def check_index(v: tuple[int, ...], max_order: int = MAX_TOTAL_ORDER,
                max_dim: int = MAX_DIMENSION) -> None:
    if len(v) < 1 or len(v) > max_dim:
        raise OrderOverflowError(f"dimension {len(v)} outside [1, {max_dim}]")
    if any(e < 0 for e in v):
        raise ValueError(f"negative entry in multi-index {v}")
    if sum(v) > max_order:
        raise OrderOverflowError(f"|{v}| = {sum(v)} exceeds cap {max_order}")


def total(v: tuple[int, ...]) -> int:
    """|v| = sum of the entries."""
    return sum(v)


def mi_factorial(v: tuple[int, ...]) -> int:
    """v! = product of entrywise factorials."""
    out = 1
    for e in v:
        out *= math.factorial(e)
    return out


def leq(k: tuple[int, ...], v: tuple[int, ...]) -> bool:
    """Componentwise partial order k <= v."""
    return len(k) == len(v) and all(a <= b for a, b in zip(k, v))


def sub(v: tuple[int, ...], k: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(a - b for a, b in zip(v, k))


def add(v: tuple[int, ...], k: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(a + b for a, b in zip(v, k))


def multi_binomial(v: tuple[int, ...], k: tuple[int, ...]) -> int:
    """Product of entrywise binomial coefficients; 0 when k is not <= v."""
    if len(k) != len(v):
        raise ValueError("dimension mismatch")
    if not leq(k, v):
        return 0
    out = 1
    for a, b in zip(v, k):
        out *= math.comb(a, b)
    return out


def iter_indices(d: int, max_total: int) -> Iterator[tuple[int, ...]]:
    """All multi-indices of dimension d with |v| <= max_total, by |v| then lex."""
    for n in range(max_total + 1):
        yield from iter_indices_of_total(d, n)


def iter_indices_of_total(d: int, n: int) -> Iterator[tuple[int, ...]]:
    """All multi-indices of dimension d with |v| = n, lexicographically."""
    if d == 1:
        yield (n,)
        return
    for first in range(n + 1):
        for rest in iter_indices_of_total(d - 1, n - first):
            yield (first, *rest)


@dataclass(frozen=True)
class MultiIndexPartition:
    """Partition of a multi-index: distinct nonzero columns with multiplicities.

    columns are strictly increasing lexicographically; sum(r_j * col_j) is
    the partitioned index.
    """

    columns: tuple[tuple[int, ...], ...]
    multiplicities: tuple[int, ...]

    def length(self) -> int:
        """Number of columns counted with multiplicity, l(lambda)."""
        return sum(self.multiplicities)

    def index(self) -> tuple[int, ...]:
        """The multi-index this partitions."""
        d = len(self.columns[0]) if self.columns else 0
        v = [0] * d
        for col, r in zip(self.columns, self.multiplicities):
            for i, e in enumerate(col):
                v[i] += r * e
        return tuple(v)

    def multiplicity_factorial(self) -> int:
        out = 1
        for r in self.multiplicities:
            out *= math.factorial(r)
        return out

    def column_factorial(self) -> int:
        out = 1
        for col, r in zip(self.columns, self.multiplicities):
            out *= mi_factorial(col) ** r
        return out


def partitions(v: tuple[int, ...], max_order: int = MAX_TOTAL_ORDER) -> Iterator[MultiIndexPartition]:
    """Stream every partition of v exactly once, deterministically.

    Recursive descent over candidate columns in decreasing lexicographic
    order; remaining budget prunes the search so no dedup pass is needed.
    """
    check_index(v, max_order=max_order)
    d = len(v)
    if all(e == 0 for e in v):
        yield MultiIndexPartition((), ())
        return

    def candidates(remaining: tuple[int, ...]) -> list[tuple[int, ...]]:
        cols = [c for c in product(*(range(e + 1) for e in remaining))
                if any(c)]
        cols.sort(reverse=True)
        return cols

    def descend(remaining: tuple[int, ...], bound: tuple[int, ...] | None,
                acc: list[tuple[tuple[int, ...], int]]) -> Iterator[MultiIndexPartition]:
        if not any(remaining):
            cols = tuple(c for c, _ in reversed(acc))
            mults = tuple(r for _, r in reversed(acc))
            yield MultiIndexPartition(cols, mults)
            return
        for col in candidates(remaining):
            if bound is not None and col >= bound:
                continue
            rem = remaining
            r = 0
            while leq(col, rem):
                rem = sub(rem, col)
                r += 1
                acc.append((col, r))
                yield from descend(rem, col, acc)
                acc.pop()

    yield from descend(v, None, [])


def partition_weight(lam: MultiIndexPartition, v: tuple[int, ...]) -> Fraction:
    """The combinatorial coefficient v! / (m(lambda)! * lambda!).

    Always a positive integer for a genuine partition of v.
    """
    if lam.index() != v and not (not lam.columns and not any(v)):
        raise ValueError(f"{lam} is not a partition of {v}")
    return Fraction(mi_factorial(v),
                    lam.multiplicity_factorial() * lam.column_factorial())


def parse_index(text: str) -> tuple[int, ...]:
    """Parse the text form "(v1,...,vd)" (parentheses optional)."""
    body = text.strip().strip("()")
    if not body:
        raise ValueError(f"empty multi-index: {text!r}")
    return tuple(int(part) for part in body.split(","))


def format_index(v: tuple[int, ...]) -> str:
    return "(" + ",".join(str(e) for e in v) + ")"
