import cmath
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from finite_physics.arith import ModElem, factorize, find_primitive_root
from finite_physics.errors import InvalidInput
from finite_physics.gauss import (U_SCALE, V_SCALE, GaussSumSpec, admissible_nus,
                                  gauss_sum_bruteforce, gauss_sum_closed_form, omega_of,
                                  periodicity_check, scale_nu, scaled_gauss_sum, xi_of)
from finite_physics.universe import SearchConfig, search_universe

from conftest import primes_upto

U577 = search_universe(SearchConfig(B=2, K=1, extra_divisors=(288,)))


def naive_gauss(p, xi, nu):
    """Oracle: term-by-term pow, no tables or chunking."""
    return sum(pow(xi, n * n, p) for n in range(nu * nu)) % p


def test_p17_bruteforce(u17):
    xi = ModElem(9, 17)
    assert u17.epsilon ** 2 == xi
    assert gauss_sum_bruteforce(17, xi, 2) == ModElem(1, 17)
    assert (1 + 9 + 16 + 9) % 17 == 1


def test_p17_closed_form(u17):
    assert gauss_sum_closed_form(u17, 2) == ModElem(1, 17)
    assert gauss_sum_closed_form(u17, 2) == gauss_sum_bruteforce(17, xi_of(u17, 2), 2)


def test_p577_nu2():
    eps = U577.epsilon
    assert gauss_sum_bruteforce(577, eps ** 72, 2) == 2 * eps ** 72


@pytest.mark.parametrize("nu", [1, 3, 0])
def test_bad_nu_rejected(nu):
    with pytest.raises(InvalidInput):
        gauss_sum_bruteforce(577, U577.epsilon ** 72, nu)


def test_nu_not_dividing_rejected():
    with pytest.raises(InvalidInput):
        gauss_sum_bruteforce(577, U577.epsilon, 8)


def test_wrong_order_xi_rejected():
    # eps**144 has order 4, not 2*2**2 = 8
    with pytest.raises(InvalidInput):
        gauss_sum_bruteforce(577, U577.epsilon ** 144, 2)
    with pytest.raises(InvalidInput):
        periodicity_check(577, U577.epsilon ** 144, 2, 1)


def test_omega_needs_8_divides():
    p = 13
    fake = U577.__class__(p=p, l=1, i=1, mu=1, iota=1, epsilon=find_primitive_root(p),
                          u=12, v=12, mode="B", B=1, K=1)
    with pytest.raises(InvalidInput):
        gauss_sum_closed_form(fake, 2)


def test_periodicity_examples():
    assert periodicity_check(17, ModElem(9, 17), 2, 3)
    assert periodicity_check(577, U577.epsilon ** 72, 2, 0)


def test_admissible_nus():
    assert admissible_nus(577) == [2, 4, 6, 12]
    assert admissible_nus(17) == [2]
    assert admissible_nus(13) == []


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([p for p in primes_upto(20000) if (p - 1) % 8 == 0]))
def test_bruteforce_matches_naive_and_closed_form(p):
    eps = find_primitive_root(p)
    for nu in admissible_nus(p):
        xi = eps ** ((p - 1) // (2 * nu * nu))
        brute = gauss_sum_bruteforce(p, xi, nu)
        assert brute.residue == naive_gauss(p, xi.residue, nu)
        assert brute == nu * eps ** ((p - 1) // 8)
        # squaring sanity: the square is +-nu^2 times a primitive 4th root
        omega2 = eps ** ((p - 1) // 4)
        assert brute * brute in (nu * nu * omega2, -(nu * nu * omega2))


def test_workers_do_not_change_sum():
    p = 40961  # 2**13 * 5 + 1
    eps = find_primitive_root(p)
    nu = max(admissible_nus(p))
    xi = eps ** ((p - 1) // (2 * nu * nu))
    assert gauss_sum_bruteforce(p, xi, nu, workers=2) == gauss_sum_bruteforce(p, xi, nu)


def test_large_prime_python_path():
    # a prime above 2**31 with 8 | p-1 exercises the pure-Python loop
    p = next(q for q in range((1 << 31) + 1, (1 << 31) + 10**6, 8)
             if pow(3, q - 1, q) == 1 and factorize(q) == {q: 1})
    eps = find_primitive_root(p)
    nu = 2
    xi = eps ** ((p - 1) // 8)
    assert gauss_sum_bruteforce(p, xi, nu).residue == naive_gauss(p, xi.residue, nu)


@pytest.mark.parametrize("a, scale, nu, image", [
    (1, V_SCALE, 2, cmath.exp(1j * math.pi / 4)),
    (1, U_SCALE, 12, 1),
    (Fraction(1, 4), V_SCALE, 4, 2 * cmath.exp(1j * math.pi / 4)),
    (4, U_SCALE, 6, 0.5),
])
def test_scaled_examples(a, scale, nu, image):
    r = scaled_gauss_sum(GaussSumSpec(a, scale, U577))
    assert r.match and r.nu == nu
    assert abs(r.place_image - image) <= 1e-12
    assert r.exact_sum.residue == naive_gauss(577, (U577.epsilon ** (576 // (2 * nu * nu))).residue, nu)


@pytest.mark.parametrize("a, scale", [(Fraction(1, 4), U_SCALE), (4, V_SCALE), (2, U_SCALE),
                                      (9, V_SCALE)])
def test_inadmissible_scaled(a, scale):
    with pytest.raises(InvalidInput):
        scale_nu(GaussSumSpec(a, scale, U577))


def test_u_and_v_differ_by_iota():
    ru = scaled_gauss_sum(GaussSumSpec(1, U_SCALE, U577))
    rv = scaled_gauss_sum(GaussSumSpec(1, V_SCALE, U577))
    # nu_U = iota * nu_V, so the closed forms differ by exactly iota
    assert ru.nu == U577.iota * rv.nu
    assert ru.exact_sum == U577.iota * rv.exact_sum


@pytest.mark.parametrize("a", [1, Fraction(1, 4), 4, Fraction(9, 4), Fraction(1, 9)])
def test_image_shape_by_scale(a):
    for scale in (U_SCALE, V_SCALE):
        try:
            r = scaled_gauss_sum(GaussSumSpec(a, scale, U577))
        except InvalidInput:
            continue
        if scale == U_SCALE:
            assert r.place_image.real > 0 and abs(r.place_image.imag) <= 1e-12
        else:
            assert abs(cmath.phase(r.place_image) - math.pi / 4) <= 1e-12


def test_negative_sign_orientation():
    r = scaled_gauss_sum(GaussSumSpec(1, V_SCALE, U577, sign=-1))
    assert r.match
    assert abs(r.place_image - cmath.exp(-1j * math.pi / 4)) <= 1e-12
    # over one period the -a sum is nu * omega**-1
    assert r.exact_sum == 2 * omega_of(U577).inverse()


@pytest.mark.parametrize("bad", [dict(scale="W"), dict(sign=2)])
def test_gauss_sum_spec_rejects_bad_fields(bad):
    kw = dict(a=1, scale=V_SCALE, params=U577)
    kw.update(bad)
    with pytest.raises(InvalidInput):
        GaussSumSpec(**kw)


def test_non_square_a_rejected():
    with pytest.raises(InvalidInput, match="square"):
        scale_nu(GaussSumSpec(2, V_SCALE, U577))
