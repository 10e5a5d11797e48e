from fractions import Fraction

import pytest

from umbrakit import multiindex as mi
from umbrakit.families import (bernoulli, bernoulli_gf_oracle,
                               bernoulli_tsh_check, bernoulli_tuple, euler,
                               euler_gf_oracle, euler_tsh_check, hermite,
                               hermite_gf_oracle, hermite_scaling_identity,
                               levy_sheffer, levy_sheffer_gf_oracle,
                               levy_sheffer_process_one_step,
                               levy_sheffer_tsh_check, poly_to_coeff_map)
from umbrakit.polynomials import Poly
from umbrakit.processes import build, ProcessSpec
from umbrakit.umbrae import (UmbraTuple, augmentation, comonotone_tuple,
                             singleton, unity)

t = Poly.var("t")
x1, x2 = Poly.var("x1"), Poly.var("x2")

I1 = [[Fraction(1)]]
I2 = [[Fraction(1), Fraction(0)], [Fraction(0), Fraction(1)]]


def test_hermite_d1_closed_forms():
    assert hermite((2,), I1) == x1 ** 2 - t
    assert hermite((3,), I1) == x1 ** 3 - 3 * t * x1
    assert hermite((2,), I1, 1) == x1 ** 2 - 1
    # t = 0 gives plain monomials
    assert hermite((3,), I1, 0) == x1 ** 3


def test_hermite_d2():
    assert hermite((1, 1), I2) == x1 * x2   # Sigma off-diagonal is zero
    C = [[Fraction(1), Fraction(0)], [Fraction(1), Fraction(1)]]
    got = hermite((1, 1), C)
    assert got == hermite_gf_oracle((1, 1), C)
    assert got.coefficient("t", 1) == Poly.const(-1)  # Sigma_12 = 1


@pytest.mark.parametrize("v,C", [((2,), I1), ((3,), I1), ((4,), I1),
                                 ((2, 0), I2), ((1, 1), I2), ((2, 2), I2),
                                 ((2, 1), [[Fraction(2), Fraction(1)],
                                           [Fraction(0), Fraction(1)]])])
def test_hermite_matches_gf_oracle(v, C):
    assert hermite(v, C) == hermite_gf_oracle(v, C)


@pytest.mark.parametrize("v,C", [((2,), I1), ((0,), I1), ((2, 0), I2),
                                 ((1, 1), [[Fraction(1), Fraction(1)],
                                           [Fraction(0), Fraction(2)]])])
def test_hermite_scaling_identity(v, C):
    assert hermite_scaling_identity(v, C)


def test_bernoulli_classical_values():
    assert bernoulli((1,), 1) == x1 - Fraction(1, 2)
    assert bernoulli((2,), 1) == x1 ** 2 - x1 + Fraction(1, 6)
    assert bernoulli((3,), 0) == x1 ** 3
    # B_v(0) at x = 0 are the Bernoulli numbers themselves at t = 1
    b4 = bernoulli((4,), 1).subs({"x1": 0})
    assert b4 == Fraction(-1, 30)


def test_euler_classical_values():
    assert euler((1,), 1) == x1 - Fraction(1, 2)
    assert euler((2,), 1) == x1 ** 2 - x1
    assert euler((2,), 0) == x1 ** 2


@pytest.mark.parametrize("v", [(1,), (2,), (3,), (4,)])
def test_bernoulli_euler_match_gf_oracles_d1(v):
    assert bernoulli(v) == bernoulli_gf_oracle(v)
    assert euler(v) == euler_gf_oracle(v)


@pytest.mark.parametrize("v", [(1, 1), (2, 1), (2, 2)])
def test_bernoulli_euler_match_gf_oracles_d2(v):
    assert bernoulli(v) == bernoulli_gf_oracle(v)
    assert euler(v) == euler_gf_oracle(v)


def test_bernoulli_tuple_moments():
    bt = bernoulli_tuple(4, 2)
    # comonotone: joint moments collapse to Bernoulli numbers by |v|
    assert bt.eval_power((1, 1)) == Fraction(1, 6)
    assert bt.eval_power((1, 0)) == Fraction(-1, 2)


def test_family_harmonicity_checks():
    assert bernoulli_tsh_check(4, 1)
    assert euler_tsh_check(4, 1)
    assert bernoulli_tsh_check(2, 2)
    assert euler_tsh_check(2, 2)


def test_levy_sheffer_examples():
    N = 4
    eps, chi, u = augmentation(N), singleton(N), unity(N)
    # mu = eps, nu = chi: V_k = x^k
    for k in range(4):
        assert levy_sheffer(eps, chi, (k,)) == x1 ** k
    # mu = nu = u: V_1 = t + x
    assert levy_sheffer(u, u, (1,)) == t + x1
    # mu = eps, nu = u: V_2 = x^2 + x
    assert levy_sheffer(eps, u, (2,)) == x1 ** 2 + x1


@pytest.mark.parametrize("pair", ["gamma-chi", "u-u", "eps-u"])
def test_levy_sheffer_matches_gf_oracle(pair):
    N = 4
    mus = {
        "gamma-chi": (build(ProcessSpec("gamma", 1, N, {"shape": Fraction(2),
                                                        "scale": Fraction(1)})).one_step,
                      singleton(N)),
        "u-u": (unity(N), unity(N)),
        "eps-u": (augmentation(N), unity(N)),
    }
    mu, nu = mus[pair]
    for k in range(N + 1):
        assert levy_sheffer(mu, nu, (k,)) == levy_sheffer_gf_oracle(mu, nu, (k,))


def test_levy_sheffer_tsh_d1():
    N = 4
    mu = build(ProcessSpec("gamma", 1, N, {"shape": Fraction(1),
                                           "scale": Fraction(1)})).one_step
    assert levy_sheffer_tsh_check(mu, singleton(N), 3)
    assert levy_sheffer_tsh_check(unity(N), unity(N), 3)


def test_levy_sheffer_tsh_d2():
    N = 3
    u2 = unity(N, 2)
    # comonotone chi-like tuple: joint gf 1 + z1 + z2
    chi2 = comonotone_tuple(singleton(N), 2)
    assert levy_sheffer_tsh_check(u2, chi2, 3)
    # comonotone Poisson-style pair also collapses and verifies
    pois = comonotone_tuple(
        build(ProcessSpec("poisson", 1, N, {"rate": Fraction(1)})).one_step, 2)
    assert levy_sheffer_tsh_check(pois, comonotone_tuple(unity(N), 2), 2)


def test_levy_sheffer_d2_requires_comonotone_arrays():
    # with product-independent components (gf (1+z1)(1+z2)) the family
    # members V_(0,2) and V_(1,1) differ by x1 + x2, so no Levy process
    # can make both harmonic; the construction refuses such inputs
    N = 3
    prod_chi = UmbraTuple(2, N, {v: Fraction(1) for v in mi.iter_indices(2, N)
                                 if all(e <= 1 for e in v)})
    with pytest.raises(ValueError):
        levy_sheffer_process_one_step(unity(N, 2), prod_chi)


def test_levy_sheffer_process_reduction():
    # nu = chi makes the driving process t.mu itself (inverse of inverse)
    N = 4
    mu = build(ProcessSpec("poisson", 1, N, {"rate": Fraction(1)})).one_step
    pi = levy_sheffer_process_one_step(mu, singleton(N))
    assert pi == mu.inverse_umbra()


def test_poly_to_coeff_map():
    p = x1 ** 2 * x2 + 3 * t * x1 - 1
    m = poly_to_coeff_map(p, 2)
    assert m[(2, 1)] == 1
    assert m[(1, 0)] == 3 * t
    assert m[(0, 0)] == -1
    assert poly_to_coeff_map(Poly.const(0), 1) == {(0,): Poly.const(0)}
