"""Time-space harmonic polynomials: construction, verification, decomposition.

A polynomial family member Q_v(x, t) is stored as its coefficient map
k -> q_k(t) over x^k with k <= v.  Verification of the martingale-style
identity is a formal basis computation: powers of the conditioning tuple
are opaque symbols and both sides are normalized in that basis, giving a
decidable exact equality in Q[t, s].
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from . import multiindex as mi
from .polynomials import Coefficient, Poly, as_coefficient, coeff_is_zero
from .series import OrderMismatchError
from .umbrae import UmbraTuple, _sub_indices

CoeffMap = dict[tuple[int, ...], Poly]


@dataclass(frozen=True)
class TshPolynomial:
    """Q_v(x, t) = sum_{k <= v} q_k(t) x^k with q_v = 1 and q_k(0) = 0."""

    dim: int
    index: tuple[int, ...]
    coeffs: Mapping[tuple[int, ...], Poly]

    def coefficient(self, k: tuple[int, ...]) -> Poly:
        return self.coeffs.get(tuple(k), Poly.const(0))

    def as_polynomial(self, names: tuple[str, ...] | None = None) -> Poly:
        """Expand into a single Poly in x1..xd and t."""
        if names is None:
            names = tuple(f"x{i + 1}" for i in range(self.dim))
        out = Poly.const(0)
        for k, q in self.coeffs.items():
            term = q
            for name, e in zip(names, k):
                term = term * Poly.var(name) ** e
            out = out + term
        return out

    def specialize_time(self, t: Fraction | int) -> CoeffMap:
        return {k: q.subs({"t": t}) for k, q in self.coeffs.items()}


@dataclass(frozen=True)
class ConditionalPolynomial:
    """Formal expansion sum_j c_j(t, s) * (s . mu)^j; the basis powers of
    the conditioning tuple are never evaluated."""

    dim: int
    terms: Mapping[tuple[int, ...], Poly]

    def coefficient(self, j: tuple[int, ...]) -> Poly:
        return self.terms.get(tuple(j), Poly.const(0))


def _as_time_poly(c: Coefficient) -> Poly:
    c = as_coefficient(c)
    return c if isinstance(c, Poly) else Poly.const(c)


def tsh_polynomial(mu: UmbraTuple, v: tuple[int, ...]) -> TshPolynomial:
    """The basis polynomial Q_v(x, t) built from the moments of x - t.mu."""
    v = tuple(v)
    if mi.total(v) > mu.order:
        raise OrderMismatchError(f"|{v}| exceeds tuple order {mu.order}")
    neg = mu.dot_t(-Poly.var("t"))
    coeffs: CoeffMap = {}
    for k in _sub_indices(v):
        coeffs[k] = mi.multi_binomial(v, k) * _as_time_poly(neg.eval_power(mi.sub(v, k)))
    return TshPolynomial(mu.dim, v, coeffs)


def conditional_eval(mu: UmbraTuple, v: tuple[int, ...],
                     t: str = "t", s: str = "s") -> ConditionalPolynomial:
    """E[(t.mu)^v | s.mu] expanded over the formal basis (s.mu)^j."""
    v = tuple(v)
    if mi.total(v) > mu.order:
        raise OrderMismatchError(f"|{v}| exceeds tuple order {mu.order}")
    diff = mu.dot_t(Poly.var(t) - Poly.var(s))
    terms: CoeffMap = {}
    for k in _sub_indices(v):
        c = mi.multi_binomial(v, k) * _as_time_poly(diff.eval_power(mi.sub(v, k)))
        if not c.is_zero():
            terms[k] = c
    return ConditionalPolynomial(mu.dim, terms)


def _lhs_basis(mu: UmbraTuple, coeffs: Mapping[tuple[int, ...], Poly]) -> CoeffMap:
    """Basis expansion of E[P(t.mu, t) | s.mu] for P = sum p_k(t) x^k."""
    diff = mu.dot_t(Poly.var("t") - Poly.var("s"))
    basis: CoeffMap = {}
    for k, p_k in coeffs.items():
        p_k = _as_time_poly(p_k)
        if p_k.is_zero():
            continue
        for j in _sub_indices(k):
            c = mi.multi_binomial(k, j) * _as_time_poly(diff.eval_power(mi.sub(k, j)))
            add = p_k * c
            if not add.is_zero():
                basis[j] = basis.get(j, Poly.const(0)) + add
    return basis


def verify_harmonicity(mu: UmbraTuple,
                       coeffs: Mapping[tuple[int, ...], Coefficient]
                       ) -> tuple[bool, dict | None]:
    """Exact check of E(P(t.mu, t) | s.mu) = P(s.mu, s) in Q[t, s].

    P is given by its coefficient map k -> p_k(t).  Returns the verdict
    and, on failure, a certificate naming the first differing basis index
    together with both Q[t, s] coefficients.
    """
    coeffs = {tuple(k): _as_time_poly(c) for k, c in coeffs.items()}
    lhs = _lhs_basis(mu, coeffs)
    keys = sorted(set(lhs) | set(coeffs), key=lambda j: (mi.total(j), j))
    for j in keys:
        left = lhs.get(j, Poly.const(0))
        right = coeffs.get(j, Poly.const(0)).subs({"t": Poly.var("s")})
        if left != right:
            return False, {"index": j, "conditional": str(left),
                           "expected": str(right)}
    return True, None


def verify_tsh_polynomial(mu: UmbraTuple, q: TshPolynomial) -> tuple[bool, dict | None]:
    return verify_harmonicity(mu, q.coeffs)


def expected_value_zero(mu: UmbraTuple, v: tuple[int, ...]) -> bool:
    """Cor.-style check: sum_k q_k(t) E[(t.mu)^k] is the zero polynomial."""
    v = tuple(v)
    if not any(v):
        raise ValueError("v = 0 is excluded: Q_0 = 1 has expectation 1")
    q = tsh_polynomial(mu, v)
    forward = mu.dot_t(Poly.var("t"))
    acc = Poly.const(0)
    for k, q_k in q.coeffs.items():
        acc = acc + q_k * _as_time_poly(forward.eval_power(k))
    return acc.is_zero()


@dataclass(frozen=True)
class RecursionReport:
    index: tuple[int, ...]
    proof_version_holds: bool
    printed_version_holds: bool
    first_mismatch: tuple[int, ...] | None


def coefficient_recursion_check(mu: UmbraTuple, v: tuple[int, ...]) -> RecursionReport:
    """Check the coefficient recursion relating q_k(t - 1) to the moments.

    Two candidate identities are evaluated: the derivation form
    q_k(t-1) = sum_{k<=i<=v} binom(i,k) g_{i-k} q_i(t), which holds, and
    the alternative form with g_j q_j(t) inside the sum, whose status is
    reported (it fails in general).
    """
    v = tuple(v)
    q = tsh_polynomial(mu, v)
    shift = {"t": Poly.var("t") - 1}
    proof_ok, printed_ok = True, True
    mismatch = None
    for k in _sub_indices(v):
        target = q.coefficient(k).subs(shift)
        proof_sum = Poly.const(0)
        printed_sum = Poly.const(0)
        for i in _sub_indices(v):
            if not mi.leq(k, i):
                continue
            b = mi.multi_binomial(i, k)
            proof_sum = proof_sum + b * _as_time_poly(mu.eval_power(mi.sub(i, k))) * q.coefficient(i)
            printed_sum = printed_sum + b * _as_time_poly(mu.eval_power(i)) * q.coefficient(i)
        if target != proof_sum:
            proof_ok = False
            if mismatch is None:
                mismatch = k
        if k != v and target != printed_sum:
            # the alternative form is only claimed for k strictly below v
            printed_ok = False
    return RecursionReport(v, proof_ok, printed_ok, mismatch)


@dataclass(frozen=True)
class Decomposition:
    coefficients: dict[tuple[int, ...], Fraction]
    residual: dict[tuple[int, ...], Poly]

    @property
    def exact(self) -> bool:
        return not self.residual


def decompose(coeffs: Mapping[tuple[int, ...], Coefficient],
              mu: UmbraTuple) -> Decomposition:
    """Solve P = sum c_k Q_k by unitriangular back-substitution.

    Indices are processed in decreasing total order; each Q_k has unit
    leading coefficient, so c_k is read off the residual directly.  A
    nonzero final residual certifies that P is not time-space harmonic.
    """
    residual: CoeffMap = {tuple(k): _as_time_poly(c)
                          for k, c in coeffs.items()}
    closure = set()
    for k in residual:
        closure.update(_sub_indices(k))
    order = sorted(closure, key=lambda k: (mi.total(k), k), reverse=True)
    out: dict[tuple[int, ...], Fraction] = {}
    for k in order:
        p_k = residual.get(k, Poly.const(0))
        if p_k.is_zero():
            continue
        c = p_k.subs({"t": 0})
        if c.is_zero():
            continue
        c_val = c.constant_value()
        out[k] = c_val
        q = tsh_polynomial(mu, k)
        for j, q_j in q.coeffs.items():
            residual[j] = residual.get(j, Poly.const(0)) - c_val * q_j
    leftovers = {k: p for k, p in residual.items() if not p.is_zero()}
    return Decomposition(out, leftovers)


def tsh_to_json(q: TshPolynomial) -> dict:
    return {
        "v": mi.format_index(q.index),
        "d": q.dim,
        "coeffs": {mi.format_index(k): str(c) for k, c in sorted(
            q.coeffs.items(), key=lambda kv: (mi.total(kv[0]), kv[0]))},
    }


def tsh_from_json(data: Mapping) -> TshPolynomial:
    from .polynomials import parse_poly
    v = mi.parse_index(data["v"])
    coeffs = {mi.parse_index(k): parse_poly(c)
              for k, c in data["coeffs"].items()}
    return TshPolynomial(int(data.get("d", len(v))), v, coeffs)


def tsh_to_latex(q: TshPolynomial) -> str:
    """LaTeX rendering of Q_v(x, t) for tables."""
    parts = []
    for k in sorted(q.coeffs, key=lambda k: (mi.total(k), k), reverse=True):
        c = q.coeffs[k]
        mono = "".join(
            (f"x_{{{i + 1}}}" if e == 1 else f"x_{{{i + 1}}}^{{{e}}}")
            for i, e in enumerate(k) if e)
        c_str = str(c)
        if mono and c_str == "1":
            parts.append(mono)
        elif mono:
            parts.append(f"({c_str})\\, {mono}")
        else:
            parts.append(c_str)
    body = " + ".join(parts) if parts else "0"
    return body.replace("+ -", "- ").replace("^", "^")
