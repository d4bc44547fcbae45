import numpy as np
import pytest
from hypothesis import given, strategies as st
from hypothesis.extra.numpy import arrays

from conftest import EX1_G1, scalar
from psdfactor.matpoly import (MatPoly, coeff_max_diff, det_at, eval_poly, gram, psd_on_grid,
                               reverse, shift_reflect)

finite = st.floats(-3, 3, allow_nan=False, allow_infinity=False)


@st.composite
def polys(draw, max_n=4, max_deg=6):
    n = draw(st.integers(1, max_n))
    d = draw(st.integers(0, max_deg))
    return MatPoly(draw(arrays(float, (d + 1, n, n), elements=finite)))


def test_eval_example(q_ex1):
    np.testing.assert_array_equal(eval_poly(q_ex1, 0.0), np.eye(2))
    # hand sum I + Q1 + Q2
    np.testing.assert_allclose(eval_poly(q_ex1, 1.0), [[5, -7], [-7, 13]])


@given(polys())
def test_eval_at_zero_is_constant(p):
    np.testing.assert_array_equal(eval_poly(p, 0.0), p.coeffs[0])


def test_eval_matches_power_sum():
    rng = np.random.default_rng(3)
    p = MatPoly(rng.normal(size=(5, 3, 3)))
    x = 0.37
    direct = sum(C * x ** i for i, C in enumerate(p.coeffs))
    np.testing.assert_allclose(eval_poly(p, x), direct, rtol=1e-13)


def test_gram_examples(q_ex1):
    g = MatPoly.from_list([np.eye(2), EX1_G1])
    q = gram(g)
    assert q.symmetric
    assert coeff_max_diff(q, q_ex1) == 0.0

    ident = gram(MatPoly.constant(np.eye(3)))
    np.testing.assert_array_equal(ident.coeffs, np.eye(3)[None])

    np.testing.assert_array_equal(gram(scalar(1, 1)).coeffs.ravel(), [1, 2, 1])


@given(polys(max_deg=4))
def test_gram_symmetric(g):
    q = gram(g)
    assert q.degree == 2 * g.degree
    assert q.is_symmetric()


def test_gram_evaluates_to_product():
    rng = np.random.default_rng(7)
    g = MatPoly(rng.uniform(-1, 1, size=(4, 3, 3)))
    q = gram(g)
    for x in rng.uniform(-5, 5, size=100):
        Gx = eval_poly(g, x)
        want = Gx.T @ Gx
        assert np.max(np.abs(eval_poly(q, x) - want)) <= 1e-10 * np.max(np.abs(want))


def test_reverse_examples():
    np.testing.assert_array_equal(reverse(scalar(1, 2, 3)).coeffs.ravel(), [3, 2, 1])


@given(polys())
def test_reverse_involution(p):
    np.testing.assert_array_equal(reverse(reverse(p)).coeffs, p.coeffs)


@given(polys(max_n=3, max_deg=5), st.floats(0.5, 2.0))
def test_reverse_evaluation(p, x):
    want = x ** p.degree * eval_poly(p, 1.0 / x)
    got = eval_poly(reverse(p), x)
    scale = np.max(np.abs(p.coeffs)) * (1 + 2.0 ** p.degree) * (p.degree + 1)
    assert np.max(np.abs(got - want)) <= 1e-9 * scale


def test_shift_reflect_examples(q_ex1):
    p = scalar(1, 2, 3, 4)
    np.testing.assert_array_equal(shift_reflect(p, 0.0).coeffs.ravel(), [1, -2, 3, -4])
    # direct evaluation both ways
    np.testing.assert_allclose(eval_poly(shift_reflect(q_ex1, 2.0), 0.3),
                               eval_poly(q_ex1, 1.7), rtol=1e-13)


@given(polys(max_deg=6), st.floats(-3, 3))
def test_shift_reflect_involution(p, x0):
    back = shift_reflect(shift_reflect(p, x0), x0)
    scale = 1 + np.max(np.abs(p.coeffs))
    assert np.max(np.abs(back.coeffs - p.coeffs)) <= 1e-12 * scale * (1 + abs(x0)) ** (2 * p.degree)


def test_shift_reflect_keeps_degree():
    p = MatPoly(np.zeros((5, 2, 2)))
    assert shift_reflect(p, 1.5).degree == 4


def test_det_at(q_ex1):
    assert det_at(q_ex1, 0.0) == pytest.approx(1.0)
    assert det_at(MatPoly.constant(np.zeros((2, 2))), 0.4) == 0.0
    # det [[5, -7], [-7, 13]] = 65 - 49
    assert det_at(q_ex1, 1.0) == pytest.approx(16.0)


def test_psd_on_grid(q_ex1):
    assert psd_on_grid(q_ex1, np.arange(-10, 10.25, 0.5), 1e-10)
    assert not psd_on_grid(scalar(-1), [0.0, 1.0], 1e-10)
    assert psd_on_grid(scalar(0, 0, 1), [-1.0, 0.0, 1.0], 1e-10)


def test_symmetric_flag_is_checked():
    with pytest.raises(ValueError):
        MatPoly.from_list([[[1, 2], [0, 1]]], symmetric=True)


def test_trailing_zero_coefficients_kept():
    p = MatPoly.from_list([np.eye(2), np.zeros((2, 2)), np.zeros((2, 2))])
    assert p.degree == 2


def test_bad_shapes_rejected():
    with pytest.raises(ValueError):
        MatPoly(np.zeros((2, 2, 3)))
