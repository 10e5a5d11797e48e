"""Closed-form generation of the classical polynomial families.

Generalized Hermite, multivariate Bernoulli, multivariate Euler, and
Levy-Sheffer systems, each with an independent generating-function
expansion oracle and a harmonicity check against its driving process.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from . import multiindex as mi
from .harmonic import verify_harmonicity
from .polynomials import Coefficient, Poly, as_coefficient
from .processes import (bernoulli_neg_one_step, brownian_one_step,
                        euler_half_one_step)
from .series import TruncatedSeries, series_exp, series_pow, series_subst
from .umbrae import (UmbraTuple, bernoulli_umbra, comonotone_tuple,
                     compose_component, euler_umbra, gaussian_delta_tuple,
                     invert_component_series, unity)


def _x_names(d: int) -> tuple[str, ...]:
    return tuple(f"x{i + 1}" for i in range(d))


def _time(t: Coefficient | str) -> Poly | Fraction:
    if isinstance(t, str):
        return Poly.var(t)
    return as_coefficient(t)


def _shift_family(one_step: UmbraTuple, v: tuple[int, ...],
                  t: Coefficient | str) -> Poly:
    """E[(x + t . mu)^v] expanded into a Poly in x1..xd (and t)."""
    v = tuple(v)
    shifted = one_step.dot_t(_time(t))
    names = _x_names(one_step.dim)
    out = Poly.const(0)
    for k in mi.iter_indices(one_step.dim, mi.total(v)):
        if not mi.leq(k, v):
            continue
        mono = Poly.const(mi.multi_binomial(v, k))
        for name, e in zip(names, k):
            mono = mono * Poly.var(name) ** e
        out = out + mono * shifted.eval_power(mi.sub(v, k))
    return out


def covariance_from_factor(C: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
    d = len(C)
    return [[sum((Fraction(C[i][k]) * Fraction(C[j][k]) for k in range(d)),
                 Fraction(0)) for j in range(d)] for i in range(d)]


def hermite(v: tuple[int, ...], C: Sequence[Sequence[Fraction]],
            t: Coefficient | str = "t") -> Poly:
    """Generalized Hermite polynomial for covariance CC^T, as a Poly."""
    v = tuple(v)
    C = [[Fraction(x) for x in row] for row in C]
    one_step = brownian_one_step(C, mi.total(v))
    # E[(x - t.mu)^v]: shift by the process with t negated
    return _shift_family(one_step, v, -_time(t))


def hermite_gf_oracle(v: tuple[int, ...], C: Sequence[Sequence[Fraction]],
                      t: Coefficient | str = "t") -> Poly:
    """Coefficient of z^v/v! in exp{x z^T - (t/2) z Sigma z^T}."""
    v = tuple(v)
    d = len(C)
    order = mi.total(v)
    sigma = covariance_from_factor(C)
    tt = _time(t)
    arg = {}
    for i in range(d):
        e = tuple(1 if j == i else 0 for j in range(d))
        arg[e] = Poly.var(f"x{i + 1}")
    for i in range(d):
        for j in range(d):
            if sigma[i][j]:
                e = tuple((2 if k == i else 0) if i == j else
                          (1 if k in (i, j) else 0) for k in range(d))
                arg[e] = arg.get(e, Poly.const(0)) \
                    - tt * sigma[i][j] * Fraction(mi.mi_factorial(e), 2)
    f = series_exp(TruncatedSeries(d, order, arg))
    c = f.get(v)
    return c if isinstance(c, Poly) else Poly.const(c)


def hermite_scaling_identity(v: tuple[int, ...],
                             C: Sequence[Sequence[Fraction]]) -> bool:
    """The t . beta . (delta C^T) form equals 1 . beta . (delta (sqrt(t) C^T)).

    sqrt(t) is a declared symbol r with the rewrite r^2 -> t.
    """
    v = tuple(v)
    d = len(C)
    order = max(mi.total(v), 1)
    direct = hermite(v, C, "t")

    r = Poly.var("r")
    Cr = [[r * Fraction(x) for x in row] for row in C]
    delta = gaussian_delta_tuple(order, d).linear_map(Cr)
    one = TruncatedSeries.one(d, order)
    one_step = UmbraTuple.from_series(series_exp(delta.to_series() - one))
    scaled = _shift_family(one_step, v, -1)
    scaled = scaled.reduce_power("r", 2, Poly.var("t"))
    return direct == scaled


def bernoulli_tuple(order: int, d: int) -> UmbraTuple:
    """The d-tuple of identical Bernoulli-number umbrae."""
    return comonotone_tuple(bernoulli_umbra(order), d) if d > 1 else bernoulli_umbra(order)


def euler_difference_tuple(order: int, d: int) -> UmbraTuple:
    """The tuple (1/2)(eta - u) driving the Euler family shift."""
    eta = euler_umbra(order)
    diff = eta.tuple_sum(unity(order).inverse_umbra()).scale(Fraction(1, 2))
    return comonotone_tuple(diff, d) if d > 1 else diff


def bernoulli(v: tuple[int, ...], t: Coefficient | str = "t", d: int | None = None) -> Poly:
    """Multivariate Bernoulli polynomial E[(x + t . iota)^v]."""
    v = tuple(v)
    d = d or len(v)
    return _shift_family(bernoulli_tuple(mi.total(v), d), v, t)


def euler(v: tuple[int, ...], t: Coefficient | str = "t", d: int | None = None) -> Poly:
    """Multivariate Euler polynomial E[(x + (t/2) . (eta - u))^v]."""
    v = tuple(v)
    d = d or len(v)
    return _shift_family(euler_difference_tuple(mi.total(v), d), v, t)


def _classical_gf_oracle(base: TruncatedSeries, v: tuple[int, ...],
                         t: Coefficient | str) -> Poly:
    """Coefficient of z^v/v! in f(base, z)^t exp(x1 z1 + ... + xd zd)."""
    d, order = base.dim, base.order
    tt = _time(t)
    shift = {}
    for i in range(d):
        e = tuple(1 if j == i else 0 for j in range(d))
        shift[e] = Poly.var(f"x{i + 1}")
    f = series_pow(base, tt) * series_exp(TruncatedSeries(d, order, shift))
    c = f.get(tuple(v))
    return c if isinstance(c, Poly) else Poly.const(c)


def bernoulli_gf_oracle(v: tuple[int, ...], t: Coefficient | str = "t",
                        d: int | None = None) -> Poly:
    v = tuple(v)
    d = d or len(v)
    return _classical_gf_oracle(bernoulli_tuple(mi.total(v), d).to_series(), v, t)


def euler_gf_oracle(v: tuple[int, ...], t: Coefficient | str = "t",
                    d: int | None = None) -> Poly:
    v = tuple(v)
    d = d or len(v)
    return _classical_gf_oracle(euler_difference_tuple(mi.total(v), d).to_series(), v, t)


# -- Levy-Sheffer systems ---------------------------------------------

def levy_sheffer(mu: UmbraTuple, nu: UmbraTuple, k: tuple[int, ...],
                 t: Coefficient | str = "t") -> Poly:
    """V_k(x, t) = E[(t . mu + (x1 + ... + xd) . beta . nu)^k].

    The x-sum enters as one auxiliary scalar parameter through the
    composition dot-product and is re-expanded afterwards.
    """
    k = tuple(k)
    mu._check(nu)
    a = mu.dot_t(_time(t))
    b = nu.dot_t_beta(Poly.var("_xsum"))
    acc = Poly.const(0)
    for j in mi.iter_indices(mu.dim, mi.total(k)):
        if not mi.leq(j, k):
            continue
        term = mi.multi_binomial(k, j) * as_coefficient(a.eval_power(j)) \
            * as_coefficient(b.eval_power(mi.sub(k, j)))
        acc = acc + term
    xsum = Poly.const(0)
    for name in _x_names(mu.dim):
        xsum = xsum + Poly.var(name)
    if not isinstance(acc, Poly):
        acc = Poly.const(acc)
    return acc.subs({"_xsum": xsum})


def levy_sheffer_gf_oracle(mu: UmbraTuple, nu: UmbraTuple, k: tuple[int, ...],
                           t: Coefficient | str = "t") -> Poly:
    """Coefficient of z^k/k! in [g(z)]^t exp{(x1+...+xd)[h(z) - 1]}."""
    k = tuple(k)
    d, order = mu.dim, mu.order
    xsum = Poly.const(0)
    for name in _x_names(d):
        xsum = xsum + Poly.var(name)
    g_t = series_pow(mu.to_series(), _time(t))
    h1 = nu.to_series() - TruncatedSeries.one(d, order)
    f = g_t * series_exp(h1.scale(xsum))
    c = f.get(k)
    return c if isinstance(c, Poly) else Poly.const(c)


def _collapse_exchangeable(tup: UmbraTuple) -> UmbraTuple | None:
    """The univariate umbra m with g_v = m_{|v|}, if the array collapses."""
    probe = {}
    for v in mi.iter_indices(tup.dim, tup.order):
        n = mi.total(v)
        g = tup.eval_power(v)
        if probe.setdefault(n, g) != g:
            return None
    return UmbraTuple(1, tup.order, {(k,): g for k, g in probe.items()})


def levy_sheffer_process_one_step(mu: UmbraTuple, nu: UmbraTuple) -> UmbraTuple:
    """One step of the process that makes the Levy-Sheffer family harmonic.

    For d = 1 the driver composes mu with the compositional inverse of
    nu; the family carries the x-shift with a plus sign, so the harmonic
    process is the inverse of that composition (exactly as the Bernoulli
    family is harmonic for the negated Bernoulli process).

    For d > 1 the family depends on x only through x1 + ... + xd, so a
    driving process exists only when both moment arrays are exchangeable
    and comonotone (joint moments depend on |v| alone).  Everything then
    collapses to the univariate pair, and the one step is the comonotone
    lift of the univariate driver rescaled by 1/d so that the component
    sum carries the full drift.  Outside that class no Levy process makes
    the family harmonic: already for f(nu, z) = (1+z1)(1+z2) and
    f(mu, z) = exp(z1+z2) the members V_(0,2) and V_(1,1) differ by
    x1 + x2, so their expectations cannot both vanish.
    """
    if mu.dim == 1:
        comps = [nu.component_series(i) for i in range(nu.dim)]
        inv = invert_component_series(comps)
        pi = UmbraTuple.from_series(compose_component(mu.to_series(), inv))
        return pi.inverse_umbra()
    m = _collapse_exchangeable(mu)
    n = _collapse_exchangeable(nu)
    if m is None or n is None:
        raise ValueError(
            "no driving process exists for d > 1 unless both moment arrays "
            "are exchangeable-comonotone (joint moments depend only on |v|)")
    one_d = levy_sheffer_process_one_step(m, n)
    d = mu.dim
    return comonotone_tuple(one_d, d).scale(Fraction(1, d))


def poly_to_coeff_map(p: Poly, d: int) -> dict[tuple[int, ...], Poly]:
    """Split a Poly in x1..xd (and t) into x-monomial -> Q[t] coefficients."""
    names = _x_names(d)
    out: dict[tuple[int, ...], Poly] = {}
    work = [(p, ())]
    for name in names:
        nxt = []
        for q, prefix in work:
            for e in range(q.degree(name) + 1):
                c = q.coefficient(name, e)
                if not c.is_zero() or e == 0:
                    nxt.append((c, prefix + (e,)))
        work = nxt
    for q, k in work:
        if not q.is_zero():
            out[k] = q
    if not out:
        out[(0,) * d] = Poly.const(0)
    return out


def levy_sheffer_tsh_check(mu: UmbraTuple, nu: UmbraTuple,
                           max_order: int) -> bool:
    """Exact harmonicity of every V_k, |k| <= max_order, for the pair."""
    one_step = levy_sheffer_process_one_step(mu, nu)
    for k in mi.iter_indices(mu.dim, max_order):
        vk = levy_sheffer(mu, nu, k)
        ok, _ = verify_harmonicity(one_step, poly_to_coeff_map(vk, mu.dim))
        if not ok:
            return False
    return True


def bernoulli_tsh_check(max_order: int, d: int = 1) -> bool:
    """Harmonicity of B_v^(t) against the negated Bernoulli family, plus
    the vanishing of E[B_v^(t)] along the process."""
    one_step = bernoulli_neg_one_step(max_order, d)
    for v in mi.iter_indices(d, max_order):
        p = bernoulli(v, "t", d)
        coeffs = poly_to_coeff_map(p, d)
        ok, _ = verify_harmonicity(one_step, coeffs)
        if not ok:
            return False
        if any(v) and not _expectation_vanishes(one_step, coeffs):
            return False
    return True


def euler_tsh_check(max_order: int, d: int = 1) -> bool:
    one_step = euler_half_one_step(max_order, d)
    for v in mi.iter_indices(d, max_order):
        p = euler(v, "t", d)
        coeffs = poly_to_coeff_map(p, d)
        ok, _ = verify_harmonicity(one_step, coeffs)
        if not ok:
            return False
        if any(v) and not _expectation_vanishes(one_step, coeffs):
            return False
    return True


def _expectation_vanishes(one_step: UmbraTuple,
                          coeffs: dict[tuple[int, ...], Poly]) -> bool:
    forward = one_step.dot_t(Poly.var("t"))
    acc = Poly.const(0)
    for k, p_k in coeffs.items():
        acc = acc + p_k * as_coefficient(forward.eval_power(k))
    return acc.is_zero()
