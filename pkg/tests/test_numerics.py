"""Projection geometry kernel: eigendecomposition, meets, joins, rank policy."""

import numpy as np
import pytest

from stonework.errors import NotHermitian, NotProjection
from stonework.numerics import (
    Tolerance,
    hermitian_eig,
    is_projection,
    max_abs,
    proj_join,
    proj_meet,
    projection_rank,
)


def line_projector(v):
    v = np.asarray(v, dtype=complex)
    return np.outer(v, np.conj(v)) / np.vdot(v, v).real


def joint_fixed_space_dim(p, q, eps=1e-9):
    """Oracle for the meet: dimension of {v : Pv = v and Qv = v}, found from
    the null space of the stacked system [(I-P); (I-Q)]."""
    n = p.shape[0]
    stacked = np.vstack([np.eye(n) - p, np.eye(n) - q])
    s = np.linalg.svd(stacked, compute_uv=False)
    return int(np.sum(s <= eps * max(1.0, s[0])))


def test_tolerance_guard():
    with pytest.raises(ValueError):
        Tolerance(1e-2)
    Tolerance(0.0)


def test_eig_identity():
    w, v = hermitian_eig(np.eye(2, dtype=complex))
    assert np.allclose(w, [1.0, 1.0])
    assert np.allclose(v @ np.conj(v.T), np.eye(2), atol=1e-12)


def test_eig_diagonal():
    w, v = hermitian_eig(np.diag([1.0, 2.0]).astype(complex))
    assert w.tolist() == [1.0, 2.0]
    # eigenvectors match e1, e2 up to phase
    assert abs(abs(v[0, 0]) - 1.0) < 1e-12
    assert abs(abs(v[1, 1]) - 1.0) < 1e-12


def test_eig_reconstruction_oracle(rng):
    # 200 random Hermitian matrices, n <= 8: sum of lambda_i v_i v_i* rebuilds H
    for _ in range(200):
        n = rng.integer(2, 8)
        h = rng.hermitian(n)
        w, v = hermitian_eig(h)
        rebuilt = (v * w) @ np.conj(v.T)
        assert max_abs(rebuilt - h) <= 1e-9
        assert max_abs(h @ v - v * w) <= 1e-6 * max(1.0, max_abs(h))
        assert max_abs(np.conj(v.T) @ v - np.eye(n)) <= 1e-6
        assert np.all(np.diff(w) >= 0)


def test_eig_rejects_non_hermitian():
    with pytest.raises(NotHermitian):
        hermitian_eig(np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex))
    with pytest.raises(NotHermitian):
        hermitian_eig(np.zeros((2, 3), dtype=complex))


def test_is_projection_examples():
    assert is_projection(np.zeros((3, 3), dtype=complex))
    # idempotent Hermitian by hand: [[.5,.5],[.5,.5]]^2 = itself
    half = np.full((2, 2), 0.5, dtype=complex)
    assert is_projection(half)
    assert not is_projection(np.array([[1.0, 1.0], [0.0, 1.0]], dtype=complex))


def test_meet_idempotent_and_orthogonal_lines():
    p = line_projector([1, 0])
    q = line_projector([0, 1])
    assert max_abs(proj_meet(p, p) - p) <= 1e-12
    assert max_abs(proj_meet(p, q)) <= 1e-12


def test_meet_of_distinct_lines_is_zero():
    p = line_projector([1, 1])
    q = line_projector([1, 0])
    assert joint_fixed_space_dim(p, q) == 0  # oracle agrees
    assert max_abs(proj_meet(p, q)) <= 1e-9


def test_meet_rejects_non_projection():
    with pytest.raises(NotProjection):
        proj_meet(np.array([[0.5, 0.0], [0.0, 1.0]], dtype=complex), np.eye(2, dtype=complex))


def test_join_examples(rng):
    q = line_projector([0, 1])
    assert max_abs(proj_join(np.zeros((2, 2), dtype=complex), q) - q) <= 1e-12
    p = line_projector([1, 0])
    assert max_abs(proj_join(p, q) - np.eye(2)) <= 1e-9
    # two random rank-1 projections in C^3 join to rank 2
    for _ in range(20):
        a = rng.projection(3, 1)
        b = rng.projection(3, 1)
        j = proj_join(a, b)
        assert projection_rank(j, Tolerance(1e-8)) == 2


def test_meet_is_greatest_lower_bound(rng, tol):
    # R <= P, R <= Q, and any projection below both is below the meet
    for _ in range(200):
        n = rng.integer(2, 6)
        p = rng.projection(n, rng.integer(1, n))
        q = rng.projection(n, rng.integer(1, n))
        r = proj_meet(p, q, tol)
        assert is_projection(r, Tolerance(1e-7))
        assert max_abs(r @ p - r) <= 1e-8
        assert max_abs(r @ q - r) <= 1e-8
        assert joint_fixed_space_dim(p, q) == projection_rank(r, Tolerance(1e-7))
        # sub-range lower bound: compress the meet to a random subspace of it
        k = projection_rank(r, Tolerance(1e-7))
        if k:
            w, v = hermitian_eig(r)
            sub = v[:, -1:]  # a line inside the meet
            low = sub @ np.conj(sub.T)
            assert max_abs(low @ r - low) <= 1e-8


def test_meet_join_unitary_compatibility(rng, tol):
    for _ in range(50):
        n = rng.integer(2, 5)
        p = rng.projection(n, rng.integer(0, n))
        q = rng.projection(n, rng.integer(0, n))
        u = rng.unitary(n)
        conj = lambda x: u @ x @ np.conj(u.T)
        assert max_abs(conj(proj_meet(p, q, tol)) - proj_meet(conj(p), conj(q), tol)) <= 1e-8
        assert max_abs(conj(proj_join(p, q, tol)) - proj_join(conj(p), conj(q), tol)) <= 1e-8


def test_de_morgan(rng, tol):
    for _ in range(50):
        n = rng.integer(2, 5)
        p = rng.projection(n, rng.integer(0, n))
        q = rng.projection(n, rng.integer(0, n))
        eye = np.eye(n, dtype=complex)
        lhs = proj_join(p, q, tol)
        rhs = eye - proj_meet(eye - p, eye - q, tol)
        assert max_abs(lhs - rhs) <= 1e-6
