"""Finite lattices: closure, quasipoint enumeration, trunks, Stone base sets."""

import numpy as np
import pytest

from stonework import center as ct

from stonework import lattice as lt
from stonework import matrix_algebra as ma
from stonework.errors import Ambiguous, ClosureExplosion, NotMember
from stonework.numerics import max_abs


def diag_projection(space, *subsets):
    return ma.diagonal_sum_projection([ct.char_fn(space, s) for s in subsets])


def line_op(space, vec):
    v = np.asarray(vec, dtype=complex)
    v = v / np.linalg.norm(v)
    fib = np.outer(v, np.conj(v))
    return ma.FiberedOperator(space, np.stack([fib for _ in space]))


def boolean_lattice(atoms):
    space = ct.StoneSpace(atoms)
    gens = [ma.central_operator(ct.char_fn(space, [k]), 1) for k in space]
    return lt.meet_closure(gens, cap=2 ** atoms + 2)


def brute_force_quasipoints(lattice):
    """Oracle: every filter base of a finite lattice is contained in the
    up-set of its minimum, so the maximal ones are found by checking every
    up-set of every nonzero element against the definition directly."""
    out = set()
    for i in range(len(lattice)):
        if i == lattice.zero_index:
            continue
        members = lattice.up_set(i)
        if lt.is_quasipoint(lattice, members):
            out.add(frozenset(members))
    return out


def test_meet_closure_two_bounds():
    space = ct.StoneSpace(1)
    lat = lt.meet_closure([ma.zero_operator(space, 2), ma.identity(space, 2)])
    assert len(lat) == 2


def test_meet_closure_commuting_pair_is_boolean(rng):
    # two commuting diagonal projections generate at most 16 elements, all of
    # which are products of the generators and their complements
    space = ct.StoneSpace(2)
    p = diag_projection(space, [0], [0, 1])
    q = diag_projection(space, [1], [0])
    lat = lt.meet_closure([p, q])
    assert len(lat) <= 16
    # oracle: closure of {p, q} inside the commutative algebra of diagonal
    # 0/1 matrices: every element is a pointwise Boolean combination
    eye = np.eye(2, dtype=complex)
    atoms = []
    for bp in (p.values, eye - p.values):
        for bq in (q.values, eye - q.values):
            atoms.append(bp * bq)  # diagonal product = meet
    for e in lat.elements:
        # every lattice node is a sum of some of the four minimal atoms
        best = None
        for bits in range(16):
            acc = np.zeros_like(e.values)
            for j in range(4):
                if bits >> j & 1:
                    acc = acc + atoms[j]
            acc = np.clip(acc.real, 0, 1).astype(complex)
            if max_abs(acc - e.values) <= 1e-9:
                best = bits
                break
        assert best is not None


def test_meet_closure_two_lines():
    space = ct.StoneSpace(1)
    p = line_op(space, [1, 0])
    q = line_op(space, [1, 1])
    lat = lt.meet_closure([p, q])
    assert len(lat) == 4  # zero, the two lines, identity


def test_meet_closure_cap():
    with pytest.raises(ClosureExplosion):
        boolean = [
            ma.central_operator(ct.char_fn(ct.StoneSpace(4), [k]), 1) for k in range(4)
        ]
        lt.meet_closure(boolean, cap=5)


def test_quasipoints_of_boolean_algebras():
    for atoms in (1, 2, 3):
        lat = boolean_lattice(atoms)
        points = lt.enumerate_quasipoints(lat)
        assert len(points) == atoms
        assert {frozenset(b.members) for b in points} == brute_force_quasipoints(lat)


def test_quasipoints_of_two_line_lattice():
    space = ct.StoneSpace(1)
    lat = lt.meet_closure([line_op(space, [1, 0]), line_op(space, [0, 1])])
    points = lt.enumerate_quasipoints(lat)
    assert len(points) == 2
    assert {frozenset(b.members) for b in points} == brute_force_quasipoints(lat)


def test_two_element_lattice_single_quasipoint():
    space = ct.StoneSpace(1)
    lat = lt.meet_closure([ma.identity(space, 2)])
    points = lt.enumerate_quasipoints(lat)
    assert len(points) == 1
    assert points[0].members == {lat.one_index}


def test_quasipoint_axioms_exhaustive():
    lat = boolean_lattice(3)
    for b in lt.enumerate_quasipoints(lat):
        assert lt.is_quasipoint(lat, b.members)
        # upward and meet closure of the member set
        for i in b.members:
            for j in b.members:
                assert lat.meet_table[i, j] in b.members
            for j in range(len(lat)):
                if lat.leq[i, j]:
                    assert j in b.members


def test_trunk_examples():
    lat = boolean_lattice(3)
    b = lt.enumerate_quasipoints(lat)[0]
    atom = b.min_member()
    assert lt.trunk(b, lat.one_index).members == b.members
    assert lt.trunk(b, atom).members == {atom}
    # a middle element: the trunk is the interval [atom, e]
    middles = [e for e in b.members if e not in (atom, lat.one_index)]
    e = middles[0]
    expected = {i for i in b.members if lat.leq[i, e]}
    assert lt.trunk(b, e).members == expected
    with pytest.raises(NotMember):
        lt.trunk(b, lat.zero_index)


def test_extend_trunk_round_trip():
    for atoms in (2, 3, 4):
        lat = boolean_lattice(atoms)
        for b in lt.enumerate_quasipoints(lat):
            for e in b.members:
                assert lt.extend_trunk(lat, lt.trunk(b, e)) == b


def test_extend_trunk_ambiguous():
    lat = boolean_lattice(2)
    with pytest.raises(Ambiguous):
        lt.extend_trunk(lat, lt.Filter(lat, {lat.one_index}))


def test_extend_trunk_unique_through_non_atom():
    # chain lattice 0 < p < 1: the trunk {1} has a unique quasipoint below
    space = ct.StoneSpace(1)
    p = line_op(space, [1, 0])
    lat = lt.meet_closure([p])
    assert len(lat) == 3
    b = lt.extend_trunk(lat, lt.Filter(lat, {lat.one_index}))
    assert b.members == lat.up_set(lat.index_of(p))


def test_stone_base_sets():
    lat = boolean_lattice(3)
    points = set(lt.enumerate_quasipoints(lat))
    assert lt.stone_base_set(lat, lat.one_index) == points
    assert lt.stone_base_set(lat, lat.zero_index) == frozenset()
    for t in lat.atoms():
        assert lt.stone_base_set(lat, t) == {lt.Filter(lat, lat.up_set(t))}
    # base sets respect meets, exactly
    for i in range(len(lat)):
        for j in range(len(lat)):
            assert lt.stone_base_set(lat, lat.meet_table[i, j]) == (
                lt.stone_base_set(lat, i) & lt.stone_base_set(lat, j)
            )


def test_isolated_points():
    lat3 = boolean_lattice(3)
    assert lt.isolated_points(lat3) == frozenset(lt.enumerate_quasipoints(lat3))
    space = ct.StoneSpace(1)
    lat1 = lt.meet_closure([ma.identity(space, 2)])
    assert lt.isolated_points(lat1) == frozenset(lt.enumerate_quasipoints(lat1))


def test_maximality_rejects_every_extension():
    # Def-style check: adding any non-member to a quasipoint breaks the axioms
    lat = boolean_lattice(3)
    for b in lt.enumerate_quasipoints(lat):
        for x in range(len(lat)):
            if x in b.members:
                continue
            assert not lt.is_filter_base(lat, set(b.members) | {x})


def test_filter_min_member():
    lat = boolean_lattice(3)
    b = lt.enumerate_quasipoints(lat)[1]
    low = b.min_member()
    assert all(lat.leq[low, i] for i in b.members)
