"""The fibered matrix algebra acting on the Hilbert module.

An operator is one n x n complex matrix per point of the space. Products,
adjoints and projections are all fiberwise; the center sits inside as the
scalar multiples of the identity fiber by a center element. Central carriers,
abelian-projection detection with generator extraction, partial isometries and
range transport complete the layer the Stone-spectrum machinery runs on.
"""

from __future__ import annotations

import numpy as np

from .center import CenterElement, StoneSpace
from .errors import (
    CarrierMismatch,
    DimensionMismatch,
    NotAbelian,
    NotPartialIsometry,
    NotProjection,
    NotSubordinate,
)
from .hilbert_module import ModuleElement, _unitize, inner
from .numerics import (
    DEFAULT_TOL,
    Tolerance,
    hermitize,
    max_abs,
    stacked_join,
    stacked_meet,
)


class FiberedOperator:
    """One square complex matrix per point of the space."""

    __slots__ = ("space", "values")

    def __init__(self, space: StoneSpace, values):
        arr = np.array(values, dtype=np.complex128)
        if arr.ndim != 3 or arr.shape[0] != space.points or arr.shape[1] != arr.shape[2]:
            raise DimensionMismatch(
                f"expected shape ({space.points}, n, n), got {arr.shape}"
            )
        if not np.all(np.isfinite(arr)):
            raise ValueError("operator entries must be finite")
        arr.setflags(write=False)
        object.__setattr__(self, "space", space)
        object.__setattr__(self, "values", arr)

    def __setattr__(self, name, value):
        raise AttributeError("FiberedOperator is immutable")

    @property
    def n(self) -> int:
        return self.values.shape[1]

    def fiber(self, omega: int) -> np.ndarray:
        return self.values[omega].copy()

    def _check(self, other: "FiberedOperator"):
        if self.space != other.space or self.n != other.n:
            raise DimensionMismatch("operators have different shapes")

    def __add__(self, other):
        self._check(other)
        return FiberedOperator(self.space, self.values + other.values)

    def __sub__(self, other):
        self._check(other)
        return FiberedOperator(self.space, self.values - other.values)

    def __neg__(self):
        return FiberedOperator(self.space, -self.values)

    def __matmul__(self, other):
        self._check(other)
        return FiberedOperator(self.space, self.values @ other.values)

    def __mul__(self, alpha):
        """Central multiplication by a center element, or plain scalar scaling."""
        if isinstance(alpha, CenterElement):
            if alpha.space != self.space:
                raise DimensionMismatch("center element lives over a different space")
            return FiberedOperator(self.space, self.values * alpha.values[:, None, None])
        return FiberedOperator(self.space, self.values * alpha)

    __rmul__ = __mul__

    def apply(self, a: ModuleElement) -> ModuleElement:
        if a.space != self.space or a.n != self.n:
            raise DimensionMismatch("operator and module element have different shapes")
        return ModuleElement(self.space, np.einsum("mij,mj->mi", self.values, a.values))

    def is_projection(self, tol: Tolerance = DEFAULT_TOL) -> bool:
        v = self.values
        herm = max_abs(v - np.conj(np.swapaxes(v, 1, 2)))
        idem = max_abs(v @ v - v)
        return herm <= tol.eps and idem <= tol.eps

    def is_unitary(self, tol: Tolerance = DEFAULT_TOL) -> bool:
        eye = np.eye(self.n, dtype=np.complex128)
        v = self.values
        vh = np.conj(np.swapaxes(v, 1, 2))
        return max_abs(vh @ v - eye) <= tol.eps and max_abs(v @ vh - eye) <= tol.eps

    def allclose(self, other: "FiberedOperator", eps: float = DEFAULT_TOL.eps) -> bool:
        self._check(other)
        return max_abs(self.values - other.values) <= eps

    def norm_max(self) -> float:
        return max_abs(self.values)

    def __repr__(self):
        return f"FiberedOperator(points={self.space.points}, n={self.n})"


def identity(space: StoneSpace, n: int) -> FiberedOperator:
    return FiberedOperator(space, np.broadcast_to(np.eye(n, dtype=np.complex128), (space.points, n, n)).copy())


def zero_operator(space: StoneSpace, n: int) -> FiberedOperator:
    return FiberedOperator(space, np.zeros((space.points, n, n)))


def central_operator(g: CenterElement, n: int) -> FiberedOperator:
    """The central element g embedded as g times the identity fiber."""
    eye = np.eye(n, dtype=np.complex128)
    return FiberedOperator(g.space, g.values[:, None, None] * eye)


def adjoint(t: FiberedOperator) -> FiberedOperator:
    """Fiberwise conjugate transpose; the pairing adjoint for the module inner product."""
    return FiberedOperator(t.space, np.conj(np.swapaxes(t.values, 1, 2)))


def require_projection(p: FiberedOperator, tol: Tolerance = DEFAULT_TOL, what: str = "operator"):
    if not p.is_projection(tol):
        raise NotProjection(f"{what} is not a fiberwise projection at eps={tol.eps}")


def fibered_meet(p: FiberedOperator, q: FiberedOperator, tol: Tolerance = DEFAULT_TOL) -> FiberedOperator:
    """Fiberwise projection onto the intersection of the two ranges."""
    p._check(q)
    require_projection(p, tol, "left argument")
    require_projection(q, tol, "right argument")
    return FiberedOperator(p.space, stacked_meet(p.values, q.values, tol))


def fibered_join(p: FiberedOperator, q: FiberedOperator, tol: Tolerance = DEFAULT_TOL) -> FiberedOperator:
    """Fiberwise projection onto the sum of the two ranges."""
    p._check(q)
    require_projection(p, tol, "left argument")
    require_projection(q, tol, "right argument")
    return FiberedOperator(p.space, stacked_join(p.values, q.values, tol))


def central_carrier(p: FiberedOperator, tol: Tolerance = DEFAULT_TOL) -> CenterElement:
    """Smallest central projection dominating p: flags the fibers where p lives.

    Exact {0,1} values by construction.
    """
    require_projection(p, tol)
    flags = np.array(
        [1.0 if max_abs(p.values[k]) > tol.eps else 0.0 for k in p.space],
        dtype=np.complex128,
    )
    return CenterElement(p.space, flags)


def fiber_ranks(p: FiberedOperator) -> list[int]:
    """Rank of each fiber of a projection, counted from its eigenvalues."""
    w = np.linalg.eigvalsh(hermitize(p.values))
    return [int(np.count_nonzero(row > 0.5)) for row in w]


def is_abelian_projection(p: FiberedOperator, tol: Tolerance = DEFAULT_TOL) -> bool:
    """A projection is abelian exactly when every fiber has rank at most one."""
    require_projection(p, tol)
    return all(r <= 1 for r in fiber_ranks(p))


def phase_fix(v: np.ndarray, eps: float = DEFAULT_TOL.eps) -> np.ndarray:
    """Rotate a vector so its first component of modulus > eps is real positive."""
    for x in v:
        if abs(x) > eps:
            return v * (np.conj(x) / abs(x))
    return v


def abelian_generator(p: FiberedOperator, tol: Tolerance = DEFAULT_TOL) -> ModuleElement:
    """A module element generating the range of an abelian projection.

    Per nonzero fiber this is the top eigenvector, phase-fixed so the first
    component of modulus > eps is real positive, and adjusted to exact unit
    norm; the self inner product then equals the central carrier exactly.
    """
    if not is_abelian_projection(p, tol):
        raise NotAbelian("operator is not an abelian projection")
    out = np.zeros((p.space.points, p.n), dtype=np.complex128)
    for k in p.space:
        fib = p.values[k]
        if max_abs(fib) <= tol.eps:
            continue
        w, vecs = np.linalg.eigh(hermitize(fib))
        out[k] = _unitize(phase_fix(vecs[:, -1], tol.eps))
    return ModuleElement(p.space, out)


def diagonal_sum_projection(coeffs: list[CenterElement]) -> FiberedOperator:
    """Weighted sum of the canonical rank-one projections: the diagonal operator.

    The result is a projection exactly when every coefficient is a projection
    in the center, in which case its central carrier is the pointwise join of
    the coefficients.
    """
    space = coeffs[0].space
    for c in coeffs[1:]:
        if c.space != space:
            raise DimensionMismatch("coefficients live over different spaces")
    n = len(coeffs)
    fibers = np.zeros((space.points, n, n), dtype=np.complex128)
    for k, c in enumerate(coeffs):
        fibers[:, k, k] = c.values
    return FiberedOperator(space, fibers)


def is_partial_isometry(theta: FiberedOperator, tol: Tolerance = DEFAULT_TOL) -> bool:
    return (adjoint(theta) @ theta).is_projection(tol)


def leq_projection(p: FiberedOperator, q: FiberedOperator, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Range inclusion for projections: p <= q iff pq = p within eps."""
    return max_abs((p @ q).values - p.values) <= tol.eps


def transport(theta: FiberedOperator, p: FiberedOperator, tol: Tolerance = DEFAULT_TOL) -> FiberedOperator:
    """Conjugate a subordinate projection through a partial isometry.

    For p below the initial projection of theta, the result projects onto the
    image of the range of p under theta.
    """
    theta._check(p)
    initial = adjoint(theta) @ theta
    if not initial.is_projection(tol):
        raise NotPartialIsometry("theta* theta is not a projection")
    require_projection(p, tol)
    if not leq_projection(p, initial, tol):
        raise NotSubordinate("projection is not below the initial projection of theta")
    return FiberedOperator(theta.space, hermitize((theta @ p @ adjoint(theta)).values))


def equivalence_partial_isometry(
    e: FiberedOperator, f: FiberedOperator, tol: Tolerance = DEFAULT_TOL
) -> FiberedOperator:
    """A partial isometry with initial projection e and final projection f.

    Both arguments must be abelian projections with the same central carrier;
    the isometry maps the generating line of e onto that of f, fiber by fiber,
    and vanishes off the common carrier.
    """
    e._check(f)
    if not (is_abelian_projection(e, tol) and is_abelian_projection(f, tol)):
        raise NotAbelian("both arguments must be abelian projections")
    ce = central_carrier(e, tol)
    cf = central_carrier(f, tol)
    if not np.array_equal(ce.values, cf.values):
        raise CarrierMismatch("central carriers differ")
    from .hilbert_module import ket_bra

    gen_e = abelian_generator(e, tol)
    gen_f = abelian_generator(f, tol)
    return ket_bra(gen_f, gen_e)


def carrier_of_generator(a: ModuleElement) -> CenterElement:
    """The self inner product of a normalized generator, as the carrier it determines."""
    return inner(a, a)
