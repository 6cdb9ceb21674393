"""Finite meet-closed families of fibered projections and their filter machinery.

A FiniteLattice is an explicit list of projections closed under meet and join,
always containing the zero and identity operators, with the order relation and
the meet/join tables precomputed. Quasipoints (maximal filter bases) of such a
lattice are exactly the up-sets of its atoms, which turns the maximality
clause of the filter-base definition into an exhaustively checkable statement:
adding any non-member to an up-set of an atom forces a zero meet.
"""

from __future__ import annotations

import numpy as np

from .errors import (
    Ambiguous,
    ClosureExplosion,
    EmptyFilter,
    NotMember,
    StoneworkError,
)
from .matrix_algebra import (
    FiberedOperator,
    fibered_join,
    fibered_meet,
    identity,
    require_projection,
    zero_operator,
)
from .numerics import DEFAULT_TOL, Tolerance, max_abs

#: Matching distance below which two numeric lattice nodes are the same node.
DEDUP_EPS = 1e-9


class FiniteLattice:
    """Explicit finite projection lattice with precomputed order and tables."""

    def __init__(self, elements: list[FiberedOperator], tol: Tolerance = DEFAULT_TOL):
        self.elements = list(elements)
        self.tol = tol
        self._build_tables()

    # -- construction ---------------------------------------------------

    def _build_tables(self):
        k = len(self.elements)
        stack = np.stack([e.values for e in self.elements])  # (k, m, n, n)
        prod = np.einsum("imab,jmbc->ijmac", stack, stack)
        diff = prod - stack[:, None]
        self.leq = np.max(np.abs(diff), axis=(2, 3, 4)) <= self.tol.eps
        self.zero_index = self._locate_constant(0.0)
        self.one_index = self._locate_constant(1.0)
        self.meet_table = self._extrema_table(self.leq)
        self.join_table = self._extrema_table(self.leq.T)

    def _locate_constant(self, diag: float):
        n = self.elements[0].n
        eye = np.eye(n, dtype=np.complex128) * diag
        for i, e in enumerate(self.elements):
            if max_abs(e.values - eye) <= DEDUP_EPS:
                return i
        raise StoneworkError("lattice is missing its zero or unit element")

    def _extrema_table(self, leq: np.ndarray) -> np.ndarray:
        """meet_table when fed the order, join_table when fed its transpose.

        For each pair (i, j): the common lower bounds are cands[c] = leq[c,i]
        & leq[c,j]; the table entry is the unique bound dominating all others.
        """
        k = leq.shape[0]
        if k > 256:
            return self._extrema_table_big(leq)
        cands = leq[:, :, None] & leq[:, None, :]  # (c, i, j)
        # bad[c, i, j]: some candidate d is not below c
        not_leq = (~leq).astype(np.uint32)
        counts = np.tensordot(not_leq, cands.astype(np.uint32).reshape(k, -1), axes=([0], [0]))
        bad = counts.reshape(k, k, k) > 0
        is_max = cands & ~bad
        hits = is_max.sum(axis=0)
        if not np.all(hits == 1):
            raise StoneworkError(
                "order tables are inconsistent; the element family is not closed"
            )
        return np.argmax(is_max, axis=0).astype(np.intp)

    def _extrema_table_big(self, leq: np.ndarray) -> np.ndarray:
        k = leq.shape[0]
        table = np.empty((k, k), dtype=np.intp)
        for i in range(k):
            common = leq[:, [i]] & leq  # (c, j)
            for j in range(i, k):
                cands = np.nonzero(common[:, j])[0]
                sub = leq[np.ix_(cands, cands)]
                best = np.nonzero(sub.all(axis=0))[0]
                if best.size != 1:
                    raise StoneworkError(
                        "order tables are inconsistent; the element family is not closed"
                    )
                table[i, j] = table[j, i] = cands[best[0]]
        return table

    # -- queries ----------------------------------------------------------

    def __len__(self):
        return len(self.elements)

    @property
    def space(self):
        return self.elements[0].space

    @property
    def n(self):
        return self.elements[0].n

    def index_of(self, op: FiberedOperator, eps: float = DEDUP_EPS):
        for i, e in enumerate(self.elements):
            if max_abs(e.values - op.values) <= eps:
                return i
        raise NotMember("operator is not a node of this lattice")

    def atoms(self) -> list[int]:
        out = []
        for i in range(len(self.elements)):
            if i == self.zero_index:
                continue
            below = [
                j
                for j in range(len(self.elements))
                if j not in (i, self.zero_index) and self.leq[j, i]
            ]
            if not below:
                out.append(i)
        return out

    def up_set(self, i: int) -> frozenset:
        return frozenset(int(j) for j in np.nonzero(self.leq[i])[0])


class Filter:
    """A subset of lattice nodes forming a filter base (no zero, downward directed)."""

    __slots__ = ("lattice", "members")

    def __init__(self, lattice: FiniteLattice, members):
        self.lattice = lattice
        self.members = frozenset(int(i) for i in members)

    def __contains__(self, i: int) -> bool:
        return i in self.members

    def __iter__(self):
        return iter(sorted(self.members))

    def __len__(self):
        return len(self.members)

    def __eq__(self, other):
        return (
            isinstance(other, Filter)
            and self.lattice is other.lattice
            and self.members == other.members
        )

    def __hash__(self):
        return hash((id(self.lattice), self.members))

    def min_member(self) -> int:
        """The member below every other member (exists for any finite filter base)."""
        if not self.members:
            raise EmptyFilter("filter has no members")
        leq = self.lattice.leq
        for i in self.members:
            if all(leq[i, j] for j in self.members):
                return i
        raise StoneworkError("member set is not downward directed")

    def __repr__(self):
        return f"Filter({sorted(self.members)})"


def meet_closure(
    generators: list[FiberedOperator],
    cap: int = 4096,
    tol: Tolerance = DEFAULT_TOL,
) -> FiniteLattice:
    """Smallest family containing the generators, zero and one, closed under
    meet and join, deduplicated at DEDUP_EPS. Raises ClosureExplosion past ``cap``."""
    if not generators:
        raise ValueError("need at least one generator")
    space = generators[0].space
    n = generators[0].n
    for g in generators:
        require_projection(g, tol, "generator")
        if g.space != space or g.n != n:
            raise StoneworkError("generators have mixed shapes")

    elems: list[FiberedOperator] = []

    def add(op: FiberedOperator) -> int:
        for i, e in enumerate(elems):
            if max_abs(e.values - op.values) <= DEDUP_EPS:
                return i
        elems.append(op)
        if len(elems) > cap:
            raise ClosureExplosion(f"closure exceeded cap of {cap} elements")
        return len(elems) - 1

    zero_i = add(zero_operator(space, n))
    one_i = add(identity(space, n))
    for g in generators:
        add(g)

    i = 0
    while i < len(elems):
        a = elems[i]
        for j in range(i + 1):
            if i == j:
                continue
            if zero_i in (i, j) or one_i in (i, j):
                continue  # meets/joins with the bounds add nothing new
            b = elems[j]
            add(fibered_meet(a, b, tol))
            add(fibered_join(a, b, tol))
        i += 1
    return FiniteLattice(elems, tol)


def enumerate_quasipoints(lattice: FiniteLattice) -> list[Filter]:
    """All maximal filter bases of the lattice: the up-sets of its atoms."""
    return [Filter(lattice, lattice.up_set(t)) for t in lattice.atoms()]


def trunk(b: Filter, e: int) -> Filter:
    """The members of a filter sitting below a designated member."""
    if e not in b.members:
        raise NotMember(f"element {e} is not a member of the filter")
    leq = b.lattice.leq
    return Filter(b.lattice, {i for i in b.members if leq[i, e]})


def extend_trunk(lattice: FiniteLattice, t: Filter) -> Filter:
    """The unique quasipoint containing a trunk, when there is only one.

    The trunk's minimum determines the candidates: the quasipoints containing
    the trunk are the up-sets of the atoms below that minimum. With several
    candidates the extension is ambiguous.
    """
    if t.lattice is not lattice:
        raise NotMember("trunk belongs to a different lattice")
    low = t.min_member()
    if low == lattice.zero_index:
        raise EmptyFilter("trunk contains the zero element")
    cands = [a for a in lattice.atoms() if lattice.leq[a, low]]
    if len(cands) == 1:
        return Filter(lattice, lattice.up_set(cands[0]))
    raise Ambiguous(
        f"{len(cands)} quasipoints contain the trunk; its minimum is not an atom"
    )


def stone_base_set(lattice: FiniteLattice, a: int) -> frozenset:
    """The base set of the Stone topology at a node: quasipoints containing it."""
    if not (0 <= a < len(lattice)):
        raise NotMember(f"no lattice node {a}")
    return frozenset(
        Filter(lattice, lattice.up_set(t)) for t in lattice.atoms() if lattice.leq[t, a]
    )


def isolated_points(lattice: FiniteLattice) -> frozenset:
    """Quasipoints that are alone in some base set; all of them, for finite lattices."""
    out = set()
    for t in lattice.atoms():
        b = Filter(lattice, lattice.up_set(t))
        for a in range(len(lattice)):
            bs = stone_base_set(lattice, a)
            if bs == {b}:
                out.add(b)
                break
    return frozenset(out)


# -- exhaustive Def-style validation ------------------------------------------


def is_filter_base(lattice: FiniteLattice, members) -> bool:
    """No zero, and every pair of members dominates some member through its meet."""
    idx = np.fromiter((int(i) for i in members), dtype=np.intp)
    if idx.size == 0 or lattice.zero_index in idx:
        return False
    meets = lattice.meet_table[np.ix_(idx, idx)].ravel()
    covered = lattice.leq[np.ix_(idx, meets)].any(axis=0)
    return bool(covered.all())


def is_quasipoint(lattice: FiniteLattice, members) -> bool:
    """Filter base that cannot be extended by any non-member: the maximality
    clause checked exhaustively over the whole lattice."""
    base = frozenset(int(i) for i in members)
    if not is_filter_base(lattice, base):
        return False
    for x in range(len(lattice)):
        if x in base:
            continue
        if is_filter_base(lattice, base | {x}):
            return False
    return True
