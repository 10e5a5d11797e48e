"""Umbral d-tuples as joint moment arrays and the evaluation functional.

A tuple is identified with its joint moments {g_v : |v| <= N}; similar
tuples are equal values, and products across distinct tuples factor by
construction, so uncorrelated copies need no explicit representation.
Moments may be exact rationals or Poly values in declared parameters.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Sequence

from . import multiindex as mi
from .polynomials import Coefficient, Poly, as_coefficient, coeff_is_zero
from .series import (OrderMismatchError, TruncatedSeries, reciprocal,
                     series_compose, series_exp, series_log, series_reversion,
                     series_subst, vector_reversion)


@lru_cache(maxsize=None)
def _partitions_of(v: tuple[int, ...]) -> tuple[mi.MultiIndexPartition, ...]:
    return tuple(mi.partitions(v))


def falling_factorial(p: Coefficient, length: int) -> Coefficient:
    """(p)_l = p (p - 1) ... (p - l + 1), with (p)_0 = 1."""
    out: Coefficient = Fraction(1)
    for i in range(length):
        out = out * (p - i)
    return out


class UmbraTuple:
    """A d-tuple of umbral monomials given by its joint moment array."""

    __slots__ = ("dim", "order", "moments")

    def __init__(self, dim: int, order: int,
                 moments: Mapping[tuple[int, ...], Coefficient]):
        zero = (0,) * dim
        ms = {}
        for v, c in moments.items():
            v = tuple(v)
            if len(v) != dim:
                raise ValueError(f"moment index {v} has wrong dimension")
            if mi.total(v) > order:
                continue
            c = as_coefficient(c)
            if not coeff_is_zero(c):
                ms[v] = c
        if ms.get(zero, Fraction(0)) != 1:
            raise ValueError("moment array must be unital: g_0 = 1")
        self.dim = dim
        self.order = order
        self.moments = ms

    # -- evaluation ---------------------------------------------------

    def eval_power(self, v: tuple[int, ...]) -> Coefficient:
        """E[mu^v] = g_v; a hard error beyond the truncation order."""
        v = tuple(v)
        if len(v) != self.dim:
            raise ValueError(f"index {v} has wrong dimension (d={self.dim})")
        if mi.total(v) > self.order:
            raise OrderMismatchError(
                f"moment of order {mi.total(v)} exceeds truncation {self.order}")
        return self.moments.get(v, Fraction(0))

    def indices(self):
        return mi.iter_indices(self.dim, self.order)

    def _check(self, other: "UmbraTuple") -> None:
        if self.dim != other.dim or self.order != other.order:
            raise OrderMismatchError("tuples live in different rings")

    def __eq__(self, other) -> bool:
        if not isinstance(other, UmbraTuple):
            return NotImplemented
        return (self.dim, self.order) == (other.dim, other.order) and \
            all(self.eval_power(v) == other.eval_power(v) for v in self.indices())

    def __repr__(self) -> str:
        shown = {v: c for v, c in sorted(self.moments.items(),
                                         key=lambda kv: (mi.total(kv[0]), kv[0]))}
        return f"UmbraTuple(d={self.dim}, N={self.order}, {shown})"

    # -- series bridge ------------------------------------------------

    def to_series(self) -> TruncatedSeries:
        return TruncatedSeries(self.dim, self.order, self.moments)

    @classmethod
    def from_series(cls, f: TruncatedSeries) -> "UmbraTuple":
        if f.constant_term() != 1:
            raise ValueError("generating function must have constant term 1")
        return cls(f.dim, f.order, f.coeffs)

    def component_series(self, i: int) -> TruncatedSeries:
        """Marginal gf of the i-th monomial, living in its own slot z_i."""
        out = {}
        for k in range(self.order + 1):
            v = tuple(k if j == i else 0 for j in range(self.dim))
            out[v] = self.eval_power(v)
        return TruncatedSeries(self.dim, self.order, out)

    def specialize(self, mapping: Mapping[str, Fraction | int]) -> "UmbraTuple":
        """Substitute parameter values into Poly moments."""
        def fix(c: Coefficient) -> Coefficient:
            if isinstance(c, Poly):
                c = c.subs(mapping)
                if c.is_constant():
                    return c.constant_value()
            return c
        return UmbraTuple(self.dim, self.order,
                          {v: fix(c) for v, c in self.moments.items()})

    # -- auxiliary-umbra constructions --------------------------------

    def tuple_sum(self, other: "UmbraTuple") -> "UmbraTuple":
        """Sum of uncorrelated tuples: binomial convolution of moments."""
        self._check(other)
        out = {}
        for v in self.indices():
            acc: Coefficient = Fraction(0)
            for k in _sub_indices(v):
                acc = acc + mi.multi_binomial(v, k) * _mul(
                    self.eval_power(k), other.eval_power(mi.sub(v, k)))
            out[v] = acc
        return UmbraTuple(self.dim, self.order, out)

    def __add__(self, other: "UmbraTuple") -> "UmbraTuple":
        return self.tuple_sum(other)

    def disjoint_sum(self, other: "UmbraTuple") -> "UmbraTuple":
        """Moments add for v != 0; gf is f + g - 1."""
        self._check(other)
        out = dict(self.moments)
        zero = (0,) * self.dim
        for v, c in other.moments.items():
            if v != zero:
                out[v] = out.get(v, Fraction(0)) + c
        return UmbraTuple(self.dim, self.order, out)

    def scale(self, c: Coefficient) -> "UmbraTuple":
        """Scalar rescaling: g_v -> c^{|v|} g_v."""
        c = as_coefficient(c)
        return UmbraTuple(self.dim, self.order,
                          {v: (c ** mi.total(v)) * g for v, g in self.moments.items()})

    def linear_map(self, matrix: Sequence[Sequence[Coefficient]]) -> "UmbraTuple":
        """Tuple transformed by a matrix: f(nu C^T, z) = f(nu, z C)."""
        d = self.dim
        if len(matrix) != d or any(len(row) != d for row in matrix):
            raise ValueError(f"matrix must be {d}x{d}")
        inners = []
        for j in range(d):
            coeffs = {}
            for i in range(d):
                e = tuple(1 if r == i else 0 for r in range(d))
                coeffs[e] = coeffs.get(e, 0) + as_coefficient(matrix[i][j])
            inners.append(TruncatedSeries(d, self.order, coeffs))
        return UmbraTuple.from_series(series_subst(self.to_series(), inners))

    def _dot_moments(self, factor_of_length) -> dict:
        out = {}
        for v in self.indices():
            acc: Coefficient = Fraction(1) if not any(v) else Fraction(0)
            if any(v):
                for lam in _partitions_of(v):
                    w = mi.partition_weight(lam, v)
                    prod: Coefficient = w * factor_of_length(lam.length())
                    for col, r in zip(lam.columns, lam.multiplicities):
                        prod = _mul(prod, self.eval_power(col) ** r)
                    acc = acc + prod
            out[v] = acc
        return out

    def dot_n(self, n: int) -> "UmbraTuple":
        """n-fold sum of uncorrelated copies; gf f^n."""
        if n < 0:
            raise ValueError("dot_n needs n >= 0; use inverse_umbra for -1")
        return UmbraTuple(self.dim, self.order,
                          self._dot_moments(lambda l: falling_factorial(n, l)))

    def dot_t(self, t: Coefficient | str) -> "UmbraTuple":
        """Dot-product with a parameter: moments are polynomials in t."""
        p = Poly.var(t) if isinstance(t, str) else as_coefficient(t)
        return UmbraTuple(self.dim, self.order,
                          self._dot_moments(lambda l: falling_factorial(p, l)))

    def dot_t_beta(self, t: Coefficient | str) -> "UmbraTuple":
        """Composition-style dot-product: t^{l(lambda)} replaces (t)_{l(lambda)}."""
        p = Poly.var(t) if isinstance(t, str) else as_coefficient(t)
        return UmbraTuple(self.dim, self.order,
                          self._dot_moments(lambda l: p ** l))

    def inverse_umbra(self) -> "UmbraTuple":
        """The -1 dot-product: gf is the reciprocal series."""
        return UmbraTuple.from_series(reciprocal(self.to_series()))

    def cumulant_tuple(self) -> "UmbraTuple":
        """Tuple whose moments are the joint cumulants: gf 1 + log f."""
        one = TruncatedSeries.one(self.dim, self.order)
        return UmbraTuple.from_series(one + series_log(self.to_series()))

    @classmethod
    def from_cumulants(cls, c: "UmbraTuple") -> "UmbraTuple":
        """Inverse of cumulant_tuple: gf exp(f_c - 1)."""
        one = TruncatedSeries.one(c.dim, c.order)
        return cls.from_series(series_exp(c.to_series() - one))


def _mul(a: Coefficient, b: Coefficient) -> Coefficient:
    return a * b


@lru_cache(maxsize=None)
def _sub_indices_cached(v: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    from itertools import product
    return tuple(product(*(range(e + 1) for e in v)))


def _sub_indices(v: tuple[int, ...]):
    return _sub_indices_cached(tuple(v))


# -- composition of univariate umbrae --------------------------------

def dot_umbra(gamma: UmbraTuple, alpha: UmbraTuple) -> UmbraTuple:
    """gamma . alpha for univariate umbrae: gf f(gamma, log f(alpha, z))."""
    if gamma.dim != 1 or alpha.dim != 1:
        raise ValueError("dot_umbra is defined for univariate umbrae")
    return UmbraTuple.from_series(
        series_compose(gamma.to_series(), series_log(alpha.to_series())))


def dot_beta_tuple(gamma: UmbraTuple, nu: UmbraTuple) -> UmbraTuple:
    """gamma . beta . nu with univariate gamma and a d-tuple nu.

    gf f(gamma, f(nu, z) - 1); reduces to dot_t_beta when gamma has the
    moments t^k.
    """
    if gamma.dim != 1:
        raise ValueError("outer umbra must be univariate")
    inner = nu.to_series() - TruncatedSeries.one(nu.dim, nu.order)
    return UmbraTuple.from_series(series_compose(gamma.to_series(), inner))


def compositional_inverse(alpha: UmbraTuple) -> UmbraTuple:
    """Umbra whose gf is the series reversion of f(alpha, z)."""
    if alpha.dim != 1:
        raise ValueError("compositional inverse of a single umbra is univariate")
    return UmbraTuple.from_series(series_reversion(alpha.to_series()))


def multivariate_comp_inverse(nu: UmbraTuple) -> UmbraTuple:
    """The d-tuple inverse: components invert the map z -> (f_i(z) - 1).

    Component series of nu are the marginals, each in its own slot; the
    inverse components then decouple and the returned joint tuple takes
    independent components (joint gf = product of component gfs).
    """
    comps = [nu.component_series(i) for i in range(nu.dim)]
    inv = invert_component_series(comps)
    joint = TruncatedSeries.one(nu.dim, nu.order)
    for g in inv:
        joint = joint * g
    if nu.dim == 1:
        joint = inv[0]
    return UmbraTuple.from_series(joint)


def invert_component_series(comps: Sequence[TruncatedSeries]) -> list[TruncatedSeries]:
    """Vector compositional inverse of component generating functions."""
    return vector_reversion(comps)


def compose_component(outer: TruncatedSeries,
                      comps: Sequence[TruncatedSeries]) -> TruncatedSeries:
    """Substitute z_i -> comps[i] - 1 into the d-variate outer series."""
    one = TruncatedSeries.one(comps[0].dim, comps[0].order)
    return series_subst(outer, [c - one for c in comps])


# -- special umbrae ---------------------------------------------------

def augmentation(order: int, dim: int = 1) -> UmbraTuple:
    """All moments zero: gf 1."""
    return UmbraTuple(dim, order, {(0,) * dim: 1})


def unity(order: int, dim: int = 1) -> UmbraTuple:
    """All moments one: gf e^{z_1 + ... + z_d}."""
    return UmbraTuple(dim, order, {v: 1 for v in mi.iter_indices(dim, order)})


def singleton(order: int) -> UmbraTuple:
    """Moments (1, 1, 0, 0, ...): gf 1 + z."""
    ms = {(0,): 1, (1,): 1} if order >= 1 else {(0,): 1}
    return UmbraTuple(1, order, ms)


def singleton_component(order: int, dim: int, i: int) -> UmbraTuple:
    """The tuple with gf 1 + z_i (singleton in slot i, augmentation elsewhere)."""
    e = tuple(1 if j == i else 0 for j in range(dim))
    return UmbraTuple(dim, order, {(0,) * dim: 1, e: 1})


def bell(order: int) -> UmbraTuple:
    """Moments are the Bell numbers: gf exp(e^z - 1)."""
    ez1 = unity(order).to_series() - TruncatedSeries.one(1, order)
    return UmbraTuple.from_series(series_exp(ez1))


def gaussian_delta(order: int) -> UmbraTuple:
    """gf 1 + z^2/2: second moment 1, all others zero."""
    ms = {(0,): 1}
    if order >= 2:
        ms[(2,)] = 1
    return UmbraTuple(1, order, ms)


def gaussian_delta_tuple(order: int, dim: int) -> UmbraTuple:
    """Multivariate version: gf 1 + z z^T / 2."""
    ms = {(0,) * dim: 1}
    if order >= 2:
        for i in range(dim):
            ms[tuple(2 if j == i else 0 for j in range(dim))] = 1
    return UmbraTuple(dim, order, ms)


def bernoulli_umbra(order: int) -> UmbraTuple:
    """Moments are the Bernoulli numbers: gf z / (e^z - 1)."""
    # (e^z - 1)/z  =  sum z^k / (k+1)!,  then take the reciprocal
    f = TruncatedSeries(1, order, {(k,): Fraction(1, k + 1) for k in range(order + 1)})
    return UmbraTuple.from_series(reciprocal(f))


def euler_umbra(order: int) -> UmbraTuple:
    """Moments are the Euler (secant) numbers: gf 2 e^z / (e^{2z} + 1)."""
    # 2 e^z / (e^{2z} + 1) = sech z = 1 / cosh z
    cosh = TruncatedSeries(1, order,
                           {(k,): 1 for k in range(0, order + 1, 2)})
    return UmbraTuple.from_series(reciprocal(cosh))


def comonotone_tuple(univariate: UmbraTuple, dim: int) -> UmbraTuple:
    """Joint tuple (mu, ..., mu) of identical copies of one umbra.

    Components share support, so joint moments collapse to single-umbra
    moments of the total degree: g_v = m_{|v|}.
    """
    if univariate.dim != 1:
        raise ValueError("need a univariate umbra")
    order = univariate.order
    return UmbraTuple(dim, order,
                      {v: univariate.eval_power((mi.total(v),))
                       for v in mi.iter_indices(dim, order)})
