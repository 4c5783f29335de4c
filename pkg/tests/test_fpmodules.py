import pytest

from twistcap.errors import CompositionNonzero, NotChainMap
from twistcap.fpmodules import (FPModule, ModuleMap, homology_presentation,
                                induced_map, is_exact_at, is_isomorphism)
from twistcap.matrices import ExactMatrix
from twistcap.rings import Q, Z, Zmod

from oracles import RP2_FACETS, boundary_matrix


def imat(rows):
    return ExactMatrix(Z, rows)


def empty_in(ring, n):
    """No incoming boundaries: an n x 0 matrix."""
    return ExactMatrix.zeros(ring, n, 0)


def test_fpmodule_normal_forms():
    # Z^2 with relation 2*e0 -> Z + Z/2
    rel = imat([[2], [0]])
    m = FPModule(Z, 2, rel)
    assert m.normal_form == (1, (2,))
    assert str(m) == "Z + Z/2"
    assert m == FPModule(Z, 2, imat([[0], [2]]))

    trivial = FPModule(Z, 0)
    assert trivial.is_trivial and str(trivial) == "0"


def test_circle_h1_free_rank_one():
    rows, edges, _ = boundary_matrix([(0, 1), (1, 2), (0, 2)], 1)
    d1 = imat(rows)
    pres = homology_presentation(empty_in(Z, len(edges)), d1)
    assert pres.module.normal_form == (1, ())
    # the cycle basis really is a cycle
    cycle = pres.cycles.column(0)
    assert pres.is_cycle(cycle)


def test_both_zero_gives_free_rank():
    d_in = ExactMatrix.zeros(Z, 5, 2)
    d_out = ExactMatrix.zeros(Z, 3, 5)
    pres = homology_presentation(d_in, d_out)
    assert pres.module.normal_form == (5, ())


def test_rp2_h1_is_z2():
    rows2, tris, edges = boundary_matrix(RP2_FACETS, 2)
    rows1, _, verts = boundary_matrix(RP2_FACETS, 1)
    assert (len(edges), len(tris)) == (15, 10)
    assert (len(verts), len(edges)) == (6, 15)
    pres = homology_presentation(imat(rows2), imat(rows1))
    assert pres.module.normal_form == (0, (2,))


def test_composition_nonzero_rejected():
    d_in = imat([[1], [0]])
    d_out = imat([[1, 0]])
    with pytest.raises(CompositionNonzero):
        homology_presentation(d_in, d_out)


def test_induced_identity_and_doubling():
    rows, edges, _ = boundary_matrix([(0, 1), (1, 2), (0, 2)], 1)
    d1 = imat(rows)
    pres = homology_presentation(empty_in(Z, len(edges)), d1)

    ident = induced_map(ExactMatrix.identity(Z, 3), pres, pres)
    res = is_isomorphism(ident)
    assert res.isomorphism

    doubling = induced_map(ExactMatrix.identity(Z, 3).scale(2), pres, pres)
    res = is_isomorphism(doubling)
    assert not res.isomorphism
    assert res.cokernel_witness is not None
    # cokernel of multiplication by 2 on Z is Z/2: witness is an odd class
    stack = ExactMatrix.hstack([doubling.matrix, pres.module.relations])
    assert ExactMatrix.from_columns(
        Z, [res.cokernel_witness], 1).rows == 1


def test_inclusion_into_contractible_is_zero():
    circle_rows, edges, _ = boundary_matrix([(0, 1), (1, 2), (0, 2)], 1)
    disk2, _, disk_edges = boundary_matrix([(0, 1, 2)], 2)
    disk1, _, _ = boundary_matrix([(0, 1, 2)], 1)
    circle = homology_presentation(empty_in(Z, 3), imat(circle_rows))
    disk = homology_presentation(imat(disk2), imat(disk1))
    assert disk.module.is_trivial
    incl = induced_map(ExactMatrix.identity(Z, 3), circle, disk)
    assert incl.is_zero()


def test_not_chain_map_detected():
    rows, _, _ = boundary_matrix([(0, 1), (1, 2), (0, 2)], 1)
    d1 = imat(rows)
    pres0 = homology_presentation(d1, ExactMatrix.zeros(Z, 0, 3))  # H_0 data
    pres1 = homology_presentation(empty_in(Z, 3), d1)
    bad = ExactMatrix(Z, [[1, 0, 0], [0, 0, 0], [0, 0, 0]])
    with pytest.raises(NotChainMap):
        induced_map(bad, pres1, pres1)
    # sanity: H_0 of the circle is Z
    assert pres0.module.normal_form == (1, ())


def test_is_isomorphism_on_torsion_module():
    rel = imat([[2], [0]])
    m = FPModule(Z, 2, rel)
    ident = ModuleMap(m, m, ExactMatrix.identity(Z, 2))
    assert is_isomorphism(ident).isomorphism
    # tripling the free generator (e1) is injective but not surjective
    triple = ModuleMap(m, m, imat([[1, 0], [0, 3]]))
    assert not is_isomorphism(triple).isomorphism
    # tripling the torsion generator (e0, order 2) is the identity there
    assert is_isomorphism(ModuleMap(m, m, imat([[3, 0], [0, 1]]))).isomorphism


def test_is_isomorphism_modular_and_rational():
    ring = Zmod(6)
    m = FPModule(ring, 1)
    times5 = ModuleMap(m, m, ExactMatrix(ring, [[5]]))
    assert is_isomorphism(times5).isomorphism
    times2 = ModuleMap(m, m, ExactMatrix(ring, [[2]]))
    res = is_isomorphism(times2)
    assert not res.isomorphism

    mq = FPModule(Q, 2)
    f = ModuleMap(mq, mq, ExactMatrix(Q, [[1, 1], [0, 1]]))
    assert is_isomorphism(f).isomorphism


def test_exactness_checker():
    # 0 -> Z --2--> Z --proj--> Z/2 -> 0 is exact at the middle Z
    zmod2 = FPModule(Z, 1, imat([[2]]))
    free = FPModule(Z, 1)
    times2 = ModuleMap(free, free, imat([[2]]))
    proj = ModuleMap(free, zmod2, imat([[1]]))
    assert is_exact_at(times2, proj)
    times4 = ModuleMap(free, free, imat([[4]]))
    assert not is_exact_at(times4, proj)
