"""Named symbolic Levy processes as parameterized moment-array factories.

A process is the family {t . mu} for a one-step tuple mu; we store the
one-step joint moments exactly and the time-parameterized moments as
polynomials in t.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Mapping, Sequence

from . import multiindex as mi
from .polynomials import Poly
from .series import TruncatedSeries, series_exp, series_pow, series_reversion
from .umbrae import (UmbraTuple, bernoulli_umbra, comonotone_tuple,
                     euler_umbra, gaussian_delta, gaussian_delta_tuple,
                     singleton, unity)

KINDS = ("brownian", "poisson", "gamma", "inverse_gaussian",
         "bernoulli_neg", "euler_half", "custom")


class UnsupportedProcessError(ValueError):
    """Requested process has no computable moment representation."""


@dataclass(frozen=True)
class ProcessSpec:
    kind: str
    dim: int
    order: int
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind == "m_stable":
            raise UnsupportedProcessError(
                "m-stable processes have divergent moment generating "
                "functions; no moment-level construction exists")
        if self.kind not in KINDS:
            raise ValueError(f"unknown process kind {self.kind!r}")
        if self.dim < 1 or self.order < 0:
            raise ValueError("bad dimension or order")


@dataclass(frozen=True)
class SymbolicProcess:
    spec: ProcessSpec
    one_step: UmbraTuple          # moments of the unit-time marginal
    time_tuple: UmbraTuple        # moments of X_t as polynomials in t

    @property
    def time_parameter(self) -> str:
        return "t"

    def at_time(self, t: Fraction | int) -> UmbraTuple:
        return self.time_tuple.specialize({"t": t})


def _lift(univariate: UmbraTuple, dim: int) -> UmbraTuple:
    if dim == 1:
        return univariate
    return comonotone_tuple(univariate, dim)


def brownian_one_step(C: Sequence[Sequence[Fraction]], order: int) -> UmbraTuple:
    """Unit-time nonstandard Brownian marginal: gf exp(z Sigma z^T / 2)."""
    d = len(C)
    delta = gaussian_delta_tuple(order, d).linear_map(C)
    one = TruncatedSeries.one(d, order)
    return UmbraTuple.from_series(series_exp(delta.to_series() - one))


def poisson_one_step(rate: Fraction, order: int) -> UmbraTuple:
    """gf exp(rate (e^z - 1))."""
    if rate <= 0:
        raise ValueError("poisson rate must be positive")
    ez1 = unity(order).to_series() - TruncatedSeries.one(1, order)
    return UmbraTuple.from_series(series_exp(ez1.scale(rate)))


def gamma_one_step(shape: Fraction, scale: Fraction, order: int) -> UmbraTuple:
    """gf (1 - scale z)^(-shape), expanded as a binomial series.

    Convention external to the moment-representation theory: shape-scale
    gamma with mean shape*scale.
    """
    if shape <= 0 or scale <= 0:
        raise ValueError("gamma shape and scale must be positive")
    base = TruncatedSeries(1, order, {(0,): 1, (1,): -scale} if order >= 1 else {(0,): 1})
    return UmbraTuple.from_series(series_pow(base, Fraction(-shape)))


def ig_quadratic(a: Fraction, b: Fraction, order: int) -> UmbraTuple:
    """The quadratic umbra whose compositional inverse builds the IG gf.

    Built in the singleton/Gaussian disjoint-sum shape c*chi .+ s*delta
    with a declared square root s (s^2 rewritten to a rational), so that
    reversion followed by exp yields exp{(b/a)[1 - sqrt(1 - 2 a^2 z / b)]}.
    """
    if a <= 0 or b <= 0:
        raise ValueError("inverse Gaussian parameters must be positive")
    chi_part = singleton(order).scale(Fraction(1) / a)
    s = Poly.var("s")
    delta_part = gaussian_delta(order).scale(s)
    quad = chi_part.disjoint_sum(delta_part)
    fixed = {v: c.reduce_power("s", 2, Poly.const(Fraction(-1, 1) / b))
             if isinstance(c, Poly) else c
             for v, c in quad.moments.items()}
    return UmbraTuple(1, order, fixed).specialize({})


def inverse_gaussian_one_step(a: Fraction, b: Fraction, order: int) -> UmbraTuple:
    """Unit-time IG(a, b) marginal via series reversion of the quadratic."""
    quad = ig_quadratic(a, b, order)
    fbar = series_reversion(quad.to_series())
    one = TruncatedSeries.one(1, order)
    return UmbraTuple.from_series(series_exp(fbar - one))


def inverse_gaussian_closed_form(a: Fraction, b: Fraction, order: int) -> TruncatedSeries:
    """Independent expansion of exp{(b/a)[1 - sqrt(1 - 2 a^2 z / b)]}.

    The square root is the binomial series with rational coefficients;
    no reversion is involved.
    """
    w = Fraction(2) * a * a / b          # sqrt argument is 1 - w z
    root = {}
    for k in range(order + 1):
        # binom(1/2, k) * (-w)^k, as the ordinary coefficient of z^k
        c = Fraction(1)
        half = Fraction(1, 2)
        for i in range(k):
            c = c * (half - i) / (i + 1)
        root[(k,)] = c * (-w) ** k
    sqrt_series = TruncatedSeries.from_ordinary(1, order, root)
    exponent = (TruncatedSeries.one(1, order) - sqrt_series).scale(b / a)
    return series_exp(exponent)


def ig_gf_check(a: Fraction, b: Fraction, order: int) -> bool:
    """True iff the reversion-based IG gf matches the closed form exactly."""
    return inverse_gaussian_one_step(a, b, order).to_series() == \
        inverse_gaussian_closed_form(a, b, order)


def bernoulli_neg_one_step(order: int, dim: int) -> UmbraTuple:
    """One step of the {-t . iota} family: the inverse of the Bernoulli tuple.

    Univariate moments are 1/(k+1), the moments of a uniform(0,1) r.v.
    """
    return _lift(bernoulli_umbra(order).inverse_umbra(), dim)


def euler_half_one_step(order: int, dim: int) -> UmbraTuple:
    """One step of the {(1/2)[t . (u - 1 . eta)]} family.

    Univariate moments are 1/2 for every k >= 1: a Bernoulli(1/2) r.v.
    """
    eta = euler_umbra(order)
    one_step = unity(order).tuple_sum(eta.inverse_umbra()).scale(Fraction(1, 2))
    return _lift(one_step, dim)


def load_custom_moments(path: str | Path) -> UmbraTuple:
    """Load a moment array from the JSON moment-sequence format."""
    data = json.loads(Path(path).read_text())
    return moments_from_json(data)


def moments_from_json(data: Mapping) -> UmbraTuple:
    from .polynomials import parse_poly
    d, order = int(data["d"]), int(data["order"])
    moments = {}
    for key, val in data["moments"].items():
        v = mi.parse_index(key)
        if "/" in val or val.lstrip("-").isdigit():
            try:
                moments[v] = Fraction(val)
                continue
            except ValueError:
                pass
        moments[v] = parse_poly(val)
    return UmbraTuple(d, order, moments)


def moments_to_json(mu: UmbraTuple, params: Sequence[str] = ()) -> dict:
    return {
        "d": mu.dim,
        "order": mu.order,
        "params": list(params),
        "moments": {mi.format_index(v): str(mu.eval_power(v))
                    for v in mu.indices()},
    }


def build(spec: ProcessSpec) -> SymbolicProcess:
    """Construct the symbolic process for a validated spec."""
    d, order, p = spec.dim, spec.order, spec.params
    if spec.kind == "brownian":
        C = p.get("C")
        if C is None:
            C = [[Fraction(int(i == j)) for j in range(d)] for i in range(d)]
        C = [[Fraction(x) for x in row] for row in C]
        one_step = brownian_one_step(C, order)
    elif spec.kind == "poisson":
        one_step = _lift(poisson_one_step(Fraction(p.get("rate", 1)), order), d)
    elif spec.kind == "gamma":
        one_step = _lift(gamma_one_step(Fraction(p.get("shape", 1)),
                                        Fraction(p.get("scale", 1)), order), d)
    elif spec.kind == "inverse_gaussian":
        one_step = _lift(inverse_gaussian_one_step(
            Fraction(p.get("a", 1)), Fraction(p.get("b", 1)), order), d)
    elif spec.kind == "bernoulli_neg":
        one_step = bernoulli_neg_one_step(order, d)
    elif spec.kind == "euler_half":
        one_step = euler_half_one_step(order, d)
    elif spec.kind == "custom":
        one_step = load_custom_moments(p["path"])
        if one_step.dim != d or one_step.order < order:
            raise ValueError("custom moment file does not match spec")
    else:  # pragma: no cover - guarded by ProcessSpec
        raise UnsupportedProcessError(spec.kind)
    return SymbolicProcess(spec, one_step, one_step.dot_t("t"))
