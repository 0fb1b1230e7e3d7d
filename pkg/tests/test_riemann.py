import cmath
import io
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import special

from finite_physics.errors import InvalidInput
from finite_physics.gauss import U_SCALE, V_SCALE
from finite_physics.riemann import (CSV_COLUMNS, TruncatedSumSpec, convergence_study,
                                    errors_nonincreasing, fresnel_oracle, gaussian_oracle,
                                    read_convergence_csv, tail_cancellation_report,
                                    truncated_sum, wick_rotation_check,
                                    write_convergence_csv)
from finite_physics.universe import SearchConfig, search_universe

U577 = search_universe(SearchConfig(B=2, K=1, extra_divisors=(288,)))


def erf_oracle(a, l):
    return math.erf(l * math.sqrt(math.pi * a)) / math.sqrt(a)


def fresnel_special(a, l):
    s, c = special.fresnel(l * math.sqrt(2 * a))
    return 2 * complex(c, -s) / math.sqrt(2 * a)


def fresnel_series(l, terms=80):
    """2 * int_0^l exp(-i pi x^2) dx from the exponential power series."""
    total, term = 0j, complex(l)
    for k in range(terms):
        total += term / (2 * k + 1)
        term *= -1j * math.pi * l * l / (k + 1)
    return 2 * total


def test_mesh_one_hand_expansion():
    value = truncated_sum(TruncatedSumSpec(1, 3, 1, U_SCALE))
    expected = 1 + 2 * math.exp(-math.pi) + 2 * math.exp(-4 * math.pi) + 2 * math.exp(-9 * math.pi)
    assert value == pytest.approx(expected, abs=1e-15)


def test_fine_mesh_real_scale():
    value = truncated_sum(TruncatedSumSpec(1, 3, 10**4, U_SCALE))
    assert abs(value - erf_oracle(1, 3)) <= 1e-3
    assert abs(value - 0.99999998) <= 1e-3


def test_fine_mesh_imaginary_scale():
    value = truncated_sum(TruncatedSumSpec(1, 10, 10**4, V_SCALE))
    assert abs(value - fresnel_oracle(1, 10)) <= 1e-2


@pytest.mark.parametrize("kw", [dict(a=0), dict(l_cut=0), dict(mesh_mu=0), dict(scale="X")])
def test_truncated_sum_spec_rejects_bad_fields(kw):
    args = dict(a=1, l_cut=1, mesh_mu=1, scale=U_SCALE)
    args.update(kw)
    with pytest.raises(InvalidInput):
        TruncatedSumSpec(**args)


@pytest.mark.parametrize("a, l", [(1, 3), (4, 10), (Fraction(1, 4), 2), (1, 0.5), (9, 1)])
def test_gaussian_oracle_vs_erf(a, l):
    assert gaussian_oracle(a, l) == pytest.approx(erf_oracle(float(a), l), abs=1e-12)


def test_gaussian_oracle_edges():
    assert abs(gaussian_oracle(4, 10) - 0.5) <= 1e-9
    assert gaussian_oracle(1, 0) == 0
    assert gaussian_oracle(1, 50) <= 1


@given(st.floats(0.05, 20), st.floats(0, 20), st.floats(0, 20))
def test_gaussian_oracle_monotone_and_bounded(a, l1, l2):
    lo, hi = sorted((l1, l2))
    g_lo, g_hi = gaussian_oracle(a, lo), gaussian_oracle(a, hi)
    assert g_lo <= g_hi + 1e-13
    assert g_hi <= 1 / math.sqrt(a) + 1e-13


def test_fresnel_oracle_series_at_l1():
    assert abs(fresnel_oracle(1, 1) - fresnel_series(1.0)) <= 1e-12


@pytest.mark.parametrize("a, l", [(1, 1), (1, 10), (1, 40), (Fraction(1, 4), 7), (4, 3.3), (2, 25)])
def test_fresnel_oracle_vs_special(a, l):
    assert abs(fresnel_oracle(a, l) - fresnel_special(float(a), l)) <= 1e-11


def test_fresnel_oracle_limit():
    target = cmath.exp(-1j * math.pi / 4)
    errs = [abs(fresnel_oracle(1, l) - target) for l in (10, 100, 1000)]
    assert errs[0] > errs[1] > errs[2]
    assert fresnel_oracle(1, 0) == 0


def test_convergence_real_scale_coarse():
    rows = convergence_study(1, U_SCALE, 3, [1, 2, 10, 100, 1000])
    assert errors_nonincreasing(rows)
    # the Gaussian Riemann sum converges at least as fast as 1/mu
    assert rows[1].abs_error <= rows[0].abs_error / 2


def test_convergence_single_mesh():
    assert len(convergence_study(1, U_SCALE, 3, [10])) == 1


def test_convergence_imaginary_scale():
    rows = convergence_study(1, V_SCALE, 5, [100, 1000])
    assert rows[1].abs_error < rows[0].abs_error


def test_convergence_requires_ascending():
    with pytest.raises(InvalidInput):
        convergence_study(1, U_SCALE, 3, [100, 10])


def test_csv_round_trip():
    rows = convergence_study(1, V_SCALE, 2, [10, 100])
    buf = io.StringIO()
    write_convergence_csv(rows, buf)
    header = buf.getvalue().splitlines()[0]
    assert header == ",".join(CSV_COLUMNS)
    back = read_convergence_csv(io.StringIO(buf.getvalue()))
    assert back == rows


@settings(max_examples=40, deadline=None)
@given(st.fractions(min_value=Fraction(1, 16), max_value=16, max_denominator=16),
       st.integers(1, 4), st.integers(1, 300))
def test_real_scale_positive_and_symmetric(a, l, mu):
    full = truncated_sum(TruncatedSumSpec(a, l, mu, U_SCALE))
    assert full.imag == 0 and full.real > 0
    x = [(n / mu) for n in range(0, l * mu + 1)]
    half = math.fsum(math.exp(-float(a) * math.pi * t * t) for t in x)
    assert abs(full.real - (2 * half - 1) / mu) <= 1e-14 * max(1.0, full.real)


def test_workers_do_not_change_sum():
    spec = TruncatedSumSpec(1, 40, 5000, V_SCALE)
    assert truncated_sum(spec, workers=3) == truncated_sum(spec)


def test_tail_real_scale():
    rep = tail_cancellation_report(U577, 1, U_SCALE, l=3, mu=10**4)
    assert not rep.conjugated
    assert rep.full_image == pytest.approx(1)
    assert rep.tail_estimate <= 1e-2


def test_tail_imaginary_scale():
    rep = tail_cancellation_report(U577, 1, V_SCALE, l=40, mu=10**3)
    assert rep.conjugated
    assert abs(cmath.exp(1j * math.pi / 4) - rep.truncated.conjugate()) <= 1e-1
    assert rep.tail_estimate <= 1e-1


def test_tail_empty_domain():
    rep = tail_cancellation_report(U577, 1, U_SCALE, l=0)
    assert rep.tail_estimate == abs(rep.full_image)


def test_wick_examples():
    assert wick_rotation_check(1, 0, 10) == 0
    # n = 10, mu = 10: term_U = e^{-pi}, term_V = -1
    tu = math.exp(-math.pi)
    assert abs(cmath.exp(1j * math.log(tu)) + 1) <= 1e-15
    assert wick_rotation_check(1, 1, 10) <= 1e-15
    assert wick_rotation_check(1, 3, 100) <= 1e-12


def test_wick_underflow_rejected():
    with pytest.raises(InvalidInput):
        wick_rotation_check(1, 30, 10)
