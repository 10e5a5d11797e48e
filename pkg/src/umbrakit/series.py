"""Truncated exponential formal power series in d variables.

Coefficients are exact rationals (or Poly values for parameterized
series).  A series stores the exponential coefficients g_v, i.e. it
denotes  sum_v g_v z^v / v!  cut at total degree N.  The arithmetic
kernel works on ordinary coefficients a_v = g_v / v! and converts back,
which turns the binomial convolution into a plain Cauchy product.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Mapping, Sequence

from .multiindex import add, iter_indices, mi_factorial, total
from .polynomials import Coefficient, Poly, as_coefficient, coeff_is_zero


class OrderMismatchError(ValueError):
    """Operands live in different truncation rings."""


class TruncatedSeries:
    """Multivariate egf truncated at a fixed total order."""

    __slots__ = ("dim", "order", "coeffs")

    def __init__(self, dim: int, order: int,
                 coeffs: Mapping[tuple[int, ...], Coefficient] | None = None):
        if dim < 1 or order < 0:
            raise ValueError(f"bad ring parameters d={dim}, N={order}")
        cs = {}
        for v, c in (coeffs or {}).items():
            v = tuple(v)
            if len(v) != dim:
                raise ValueError(f"index {v} has wrong dimension (d={dim})")
            if total(v) > order:
                continue
            c = as_coefficient(c)
            if not coeff_is_zero(c):
                cs[v] = c
        self.dim = dim
        self.order = order
        self.coeffs = cs

    # -- basics -------------------------------------------------------

    @classmethod
    def one(cls, dim: int, order: int) -> "TruncatedSeries":
        return cls(dim, order, {(0,) * dim: 1})

    @classmethod
    def zero(cls, dim: int, order: int) -> "TruncatedSeries":
        return cls(dim, order, {})

    @classmethod
    def variable(cls, dim: int, order: int, i: int) -> "TruncatedSeries":
        """The series z_i (exponential coefficient 1 on the i-th unit index)."""
        e = tuple(1 if j == i else 0 for j in range(dim))
        return cls(dim, order, {e: 1})

    def get(self, v: tuple[int, ...]) -> Coefficient:
        if total(v) > self.order:
            raise OrderMismatchError(f"|{v}| exceeds truncation order {self.order}")
        return self.coeffs.get(tuple(v), Fraction(0))

    def constant_term(self) -> Coefficient:
        return self.coeffs.get((0,) * self.dim, Fraction(0))

    def _check_ring(self, other: "TruncatedSeries") -> None:
        if self.dim != other.dim or self.order != other.order:
            raise OrderMismatchError(
                f"ring mismatch: (d={self.dim}, N={self.order}) vs "
                f"(d={other.dim}, N={other.order})")

    def ordinary(self) -> dict[tuple[int, ...], Coefficient]:
        return {v: c * Fraction(1, mi_factorial(v)) for v, c in self.coeffs.items()}

    @classmethod
    def from_ordinary(cls, dim: int, order: int,
                      coeffs: Mapping[tuple[int, ...], Coefficient]) -> "TruncatedSeries":
        return cls(dim, order,
                   {v: c * mi_factorial(v) for v, c in coeffs.items()})

    def map_coeffs(self, fn: Callable[[Coefficient], Coefficient]) -> "TruncatedSeries":
        return TruncatedSeries(self.dim, self.order,
                               {v: fn(c) for v, c in self.coeffs.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        if self.dim != other.dim or self.order != other.order:
            return False
        keys = set(self.coeffs) | set(other.coeffs)
        return all(self.coeffs.get(k, 0) == other.coeffs.get(k, 0) for k in keys)

    def __repr__(self) -> str:
        inner = ", ".join(f"{v}: {c}" for v, c in sorted(self.coeffs.items(),
                                                         key=lambda kv: (total(kv[0]), kv[0])))
        return f"TruncatedSeries(d={self.dim}, N={self.order}, {{{inner}}})"

    # -- ring operations ----------------------------------------------

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check_ring(other)
        out = dict(self.coeffs)
        for v, c in other.coeffs.items():
            out[v] = out.get(v, Fraction(0)) + c
        return TruncatedSeries(self.dim, self.order, out)

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return self + (-other)

    def __neg__(self) -> "TruncatedSeries":
        return self.map_coeffs(lambda c: -c)

    def scale(self, c: Coefficient) -> "TruncatedSeries":
        return self.map_coeffs(lambda x: x * c)

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check_ring(other)
        a, b = self.ordinary(), other.ordinary()
        out: dict[tuple[int, ...], Coefficient] = {}
        for v1, c1 in a.items():
            n1 = total(v1)
            for v2, c2 in b.items():
                if n1 + total(v2) > self.order:
                    continue
                v = add(v1, v2)
                out[v] = out.get(v, Fraction(0)) + c1 * c2
        return TruncatedSeries.from_ordinary(self.dim, self.order, out)

    def __pow__(self, n: int) -> "TruncatedSeries":
        if n < 0:
            raise ValueError("negative power; use reciprocal")
        out = TruncatedSeries.one(self.dim, self.order)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out


def series_exp(f: TruncatedSeries) -> TruncatedSeries:
    """exp of a series with zero constant term (pass f - 1 for a gf)."""
    if not coeff_is_zero(f.constant_term()):
        raise ValueError("series_exp needs zero constant term")
    out = TruncatedSeries.one(f.dim, f.order)
    term = TruncatedSeries.one(f.dim, f.order)
    for k in range(1, f.order + 1):
        term = (term * f).scale(Fraction(1, k))
        out = out + term
    return out


def series_log(f: TruncatedSeries) -> TruncatedSeries:
    """log of a series with constant term 1; result has zero constant term."""
    if f.constant_term() != 1:
        raise ValueError("series_log needs constant term 1")
    g = f - TruncatedSeries.one(f.dim, f.order)
    out = TruncatedSeries.zero(f.dim, f.order)
    power = TruncatedSeries.one(f.dim, f.order)
    for k in range(1, f.order + 1):
        power = power * g
        out = out + power.scale(Fraction((-1) ** (k + 1), k))
    return out


def reciprocal(f: TruncatedSeries) -> TruncatedSeries:
    """Multiplicative inverse of a series with constant term 1."""
    if f.constant_term() != 1:
        raise ValueError("reciprocal needs constant term 1")
    g = f - TruncatedSeries.one(f.dim, f.order)
    out = TruncatedSeries.one(f.dim, f.order)
    power = TruncatedSeries.one(f.dim, f.order)
    for k in range(1, f.order + 1):
        power = power * g
        out = out + power.scale(Fraction((-1) ** k))
    return out


def series_pow(f: TruncatedSeries, e: Coefficient) -> TruncatedSeries:
    """f**e for a series with constant term 1 and any rational or Poly e."""
    return series_exp(series_log(f).scale(e))


def series_subst(f: TruncatedSeries,
                 inners: Sequence[TruncatedSeries]) -> TruncatedSeries:
    """Substitute z_i -> inners[i] into f; every inner must vanish at 0.

    The inners share one target ring, which becomes the result's ring.
    """
    if len(inners) != f.dim:
        raise ValueError(f"need {f.dim} inner series, got {len(inners)}")
    tgt = inners[0]
    for h in inners:
        tgt._check_ring(h)
        if not coeff_is_zero(h.constant_term()):
            raise ValueError("inner series must have zero constant term")
    out = TruncatedSeries.zero(tgt.dim, tgt.order)
    # cache powers of each inner
    pows: list[list[TruncatedSeries]] = []
    for h in inners:
        ps = [TruncatedSeries.one(tgt.dim, tgt.order)]
        for _ in range(f.order):
            ps.append(ps[-1] * h)
        pows.append(ps)
    for v, c in f.ordinary().items():
        term = TruncatedSeries.one(tgt.dim, tgt.order).scale(c)
        for i, k in enumerate(v):
            if k:
                term = term * pows[i][k]
        out = out + term
    return out


def series_compose(outer: TruncatedSeries, inner: TruncatedSeries) -> TruncatedSeries:
    """Composition g(h) with univariate outer g and zero-constant inner h."""
    if outer.dim != 1:
        raise ValueError("outer series must be univariate")
    return series_subst(outer, [inner])


def derivative(f: TruncatedSeries) -> TruncatedSeries:
    """d/dz of a univariate series (result truncated at the same order)."""
    if f.dim != 1:
        raise ValueError("derivative implemented for univariate series")
    out = {}
    for (k,), c in f.ordinary().items():
        if k >= 1:
            out[(k - 1,)] = c * k
    return TruncatedSeries.from_ordinary(1, f.order, out)


def divide(num: TruncatedSeries, den: TruncatedSeries) -> TruncatedSeries:
    """num / den for univariate den with invertible rational constant term."""
    c0 = den.constant_term()
    if coeff_is_zero(c0):
        raise ValueError("division by series with zero constant term")
    inv0 = Fraction(1) / c0
    return num * reciprocal(den.scale(inv0)).scale(inv0)


def series_reversion(f: TruncatedSeries) -> TruncatedSeries:
    """Compositional inverse relative to 1 + z.

    For univariate f = 1 + a1 z + ... with a1 != 0, returns the series
    g = 1 + G(z) with (f - 1)(G(z)) = z, so that f(g - 1) = 1 + z.
    Newton iteration on the series equation; quadratic convergence in
    the number of correct orders.
    """
    if f.dim != 1:
        raise ValueError("reversion implemented for univariate series")
    one = TruncatedSeries.one(1, f.order)
    F = f - one
    a1 = F.get((1,))
    if coeff_is_zero(a1):
        raise ValueError("no compositional inverse: first-order coefficient is zero")
    z = TruncatedSeries.variable(1, f.order, 0)
    dF = derivative(F)
    g = z.scale(Fraction(1) / a1)
    steps = max(1, f.order.bit_length() + 1)
    for _ in range(steps):
        res = series_subst(F, [g]) - z
        g = g - divide(res, series_subst(dF, [g]))
    return one + g


def vector_reversion(fs: Sequence[TruncatedSeries]) -> list[TruncatedSeries]:
    """Formal inverse of the vector map z -> (f_1(z)-1, ..., f_d(z)-1).

    Each f_i is a d-variate series with constant term 1; the Jacobian of
    the map at 0 must be invertible.  Returns series g_i = 1 + G_i with
    (f_i - 1)(G_1, ..., G_d) = z_i, solved order by order.
    """
    d = len(fs)
    order = fs[0].order
    for f in fs:
        fs[0]._check_ring(f)
        if f.dim != d:
            raise ValueError("component series dimension must match tuple size")
        if f.constant_term() != 1:
            raise ValueError("component series must have constant term 1")
    unit = lambda i: tuple(1 if j == i else 0 for j in range(d))
    jac = [[fs[i].ordinary().get(unit(j), Fraction(0)) for j in range(d)]
           for i in range(d)]
    jinv = _invert_matrix(jac)

    # G_i as ordinary-coefficient dicts, built degree by degree
    G = [{unit(j): jinv[i][j] for j in range(d)} for i in range(d)]
    Fs = [f - TruncatedSeries.one(d, order) for f in fs]
    for deg in range(2, order + 1):
        gs = [TruncatedSeries.from_ordinary(d, order, g) for g in G]
        for i in range(d):
            res = series_subst(Fs[i], gs)  # should equal z_i through deg-1
            err = res.ordinary()
            for v in iter_indices(d, order):
                if total(v) != deg:
                    continue
                e = err.get(v, Fraction(0))
                if coeff_is_zero(e):
                    continue
                # correction term propagates through the Jacobian inverse
                for j in range(d):
                    c = jinv[j][i] * e
                    if not coeff_is_zero(c):
                        G[j][v] = G[j].get(v, Fraction(0)) - c
    one = TruncatedSeries.one(d, order)
    return [one + TruncatedSeries.from_ordinary(d, order, g) for g in G]


def _invert_matrix(m: list[list[Fraction]]) -> list[list[Fraction]]:
    """Exact Gauss-Jordan inverse; raises on a singular matrix."""
    d = len(m)
    a = [[Fraction(m[i][j]) for j in range(d)] + [Fraction(int(i == j)) for j in range(d)]
         for i in range(d)]
    for col in range(d):
        piv = next((r for r in range(col, d) if a[r][col] != 0), None)
        if piv is None:
            raise ValueError("singular first-order coefficient matrix")
        a[col], a[piv] = a[piv], a[col]
        inv = Fraction(1) / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(d):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[d:] for row in a]
