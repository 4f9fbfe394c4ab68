import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_element
from fuzzylc.calculus import (
    FeasibilityError,
    OneForm,
    TensorSquare,
    TwoForm,
    d0,
    d1,
    d_basis,
    d_oracle,
    d_oracle_full,
    de_oracle,
    detect_orientation,
    junk_identification_residual,
    junk_space,
    one_form_span_check,
    tensor,
    two_form_space_check,
    wedge1,
    wedge_tensor,
)
from fuzzylc.linalg import kron
from fuzzylc.triple import build_triple

TOL = 1e-10
ORACLE_TOL = 1e-8


def random_one_form(rng, d):
    return OneForm(np.stack([random_element(rng, d) for _ in range(3)]))


def test_d0_coordinates(t1, rng):
    a = random_element(rng, t1.dimK)
    da = d0(t1, a)
    for k in range(3):
        assert np.allclose(da.coords[k], t1.X[k] @ a - a @ t1.X[k])


def test_d0_operator_is_commutator(t2, rng):
    a = random_element(rng, t2.dimK)
    op = t2.D @ t2.rep(a) - t2.rep(a) @ t2.D
    assert np.allclose(d0(t2, a).operator(), op, atol=TOL)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_d0_leibniz(seed):
    t = build_triple(2)
    rng = np.random.default_rng(seed)
    a, b = random_element(rng, t.dimK), random_element(rng, t.dimK)
    lhs = d0(t, a @ b)
    rhs = d0(t, a).rmul(b) + d0(t, b).lmul(a)
    assert np.max(np.abs(lhs.coords - rhs.coords)) < TOL


@pytest.mark.parametrize("j, k, m, sign", [(0, 1, 2, 1), (1, 0, 2, -1), (1, 2, 0, 1), (2, 0, 1, 1), (0, 2, 1, -1)])
def test_wedge_basis(j, k, m, sign):
    w = wedge1(OneForm.basis(j, 1), OneForm.basis(k, 1))
    assert np.array_equal(w.coords, sign * TwoForm.basis(m, 1).coords)


@pytest.mark.parametrize("k", range(3))
def test_wedge_self_vanishes(k):
    assert np.array_equal(wedge1(OneForm.basis(k, 1), OneForm.basis(k, 1)).coords, np.zeros((3, 1, 1)))


def test_wedge_slides_coefficients(t1, rng):
    a, b = random_element(rng, 4), random_element(rng, 4)
    w = wedge1(OneForm.basis(0, 4, a), OneForm.basis(1, 4, b))
    assert np.allclose(w.coords[2], a @ b)
    assert np.allclose(w.coords[:2], 0)


def test_wedge_kills_symmetric_tensors():
    S = TensorSquare.from_scalars(np.array([[1, 2, 3], [2, 5, 4], [3, 4, 0]]), 2)
    assert np.allclose(wedge_tensor(S).coords, 0)


def test_tensor_of_basis():
    T = tensor(OneForm.basis(1, 1), OneForm.basis(2, 1))
    assert np.array_equal(T.coords, TensorSquare.basis(1, 2, 1).coords)


@pytest.mark.parametrize("m", range(3))
def test_d_of_basis(t1, m):
    assert np.allclose(d1(t1, OneForm.basis(m, 4)).coords, d_basis(m, 4).coords)
    assert np.allclose(d_basis(m, 4).coords, -TwoForm.basis(m, 4).coords)


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(0, 3))
def test_d_squared_zero(seed, N):
    t = build_triple(N)
    a = random_element(np.random.default_rng(seed), t.dimK)
    assert np.max(np.abs(d1(t, d0(t, a)).coords)) < TOL


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_graded_leibniz(seed):
    t = build_triple(2)
    rng = np.random.default_rng(seed)
    a = random_element(rng, t.dimK)
    x = random_one_form(rng, t.dimK)
    # d(a x) = da ^ x + a dx
    lhs = d1(t, x.lmul(a))
    rhs = wedge1(d0(t, a), x) + d1(t, x).lmul(a)
    assert np.max(np.abs(lhs.coords - rhs.coords)) < TOL
    # d(x a) = dx a - x ^ da
    lhs = d1(t, x.rmul(a))
    rhs = d1(t, x).rmul(a) - wedge1(x, d0(t, a))
    assert np.max(np.abs(lhs.coords - rhs.coords)) < TOL


@pytest.mark.parametrize("N, span, junk", [(0, 0, 0), (1, 48, 16), (2, 243, 81)])
def test_oracle_dimensions(N, span, junk):
    t = build_triple(N)
    assert one_form_span_check(t) == span
    assert len(junk_space(t)) == junk


@pytest.mark.parametrize("N", [1, 2])
def test_junk_is_y_tensor_one(N):
    assert junk_identification_residual(build_triple(N)) < ORACLE_TOL


def test_junk_example(t1, rng):
    # every junk operator has the shape Y (x) 1
    for w in junk_space(t1):
        blocks = w.reshape(4, 2, 4, 2)
        Y = blocks[:, 0, :, 0]
        assert np.allclose(w, kron(Y, np.eye(2)), atol=ORACLE_TOL)


@pytest.mark.parametrize("N", [1, 2])
def test_two_form_space(N):
    t = build_triple(N)
    assert two_form_space_check(t) == (3 * t.dimA, 0)


@pytest.mark.parametrize("m", range(3))
def test_de_oracle(t1, m):
    assert np.max(np.abs(de_oracle(t1, m).coords - d_basis(m, 4).coords)) < ORACLE_TOL


def test_detect_orientation():
    assert detect_orientation() == 1


def test_d_oracle_on_e1_times_a(t1, rng):
    a = random_element(rng, t1.dimK)
    x = OneForm.basis(0, t1.dimK, a)
    res = d_oracle_full(t1, x)
    assert res.representation_residual < ORACLE_TOL
    assert res.decomposition_residual < ORACLE_TOL
    assert np.max(np.abs(res.two_form.coords - d1(t1, x).coords)) < ORACLE_TOL


@pytest.mark.parametrize("N", [1, 2])
def test_d_oracle_matches_d1(N):
    t = build_triple(N)
    x = random_one_form(np.random.default_rng(7), t.dimK)
    assert np.max(np.abs(d_oracle(t, x).coords - d1(t, x).coords)) < ORACLE_TOL


def test_feasibility_cap():
    t = build_triple(3)
    with pytest.raises(FeasibilityError):
        junk_space(t)
    with pytest.raises(FeasibilityError):
        one_form_span_check(t)
    with pytest.raises(FeasibilityError):
        de_oracle(build_triple(2), 0, cap=1)


def test_form_arithmetic(rng):
    x, y = random_one_form(rng, 3), random_one_form(rng, 3)
    assert np.allclose((x + y - y).coords, x.coords)
    assert np.allclose((-x).coords, x.scale(-1).coords)
    a = random_element(rng, 3)
    T = tensor(x, y)
    assert np.allclose(tensor(x.lmul(a), y).coords, T.lmul(a).coords)
    assert np.allclose(tensor(x, y.rmul(a)).coords, T.rmul(a).coords)
    assert np.allclose(tensor(x.rmul(a), y).coords, tensor(x, y.lmul(a)).coords)
