import pytest

from twistcap.complexes import Subcomplex, corpus
from twistcap.errors import NotACover, UnknownName
from twistcap.localsystems import constant_system, orientation_system
from twistcap.mv import (CoverPair, diagram6_check, mv_cohomology,
                         mv_homology, mv_splitting, named_cover,
                         named_diagram6)
from twistcap.rings import Q, Z, Zmod


def module_at(report, label):
    return report.modules[report.node_labels.index(label)]


def test_octahedron_hemispheres_recovers_sphere_homology():
    M, pair = named_cover("octahedron", "hemispheres")
    report = mv_homology(pair, constant_system(M, Z))
    assert report.all_exact
    assert module_at(report, "H_2(X)").normal_form == (1, ())
    assert module_at(report, "H_1(A^B)").normal_form == (1, ())  # the band
    assert module_at(report, "H_2(A)+H_2(B)").is_trivial


def test_torus_cylinders_recovers_h1():
    M, pair = named_cover("torus", "cylinders")
    report = mv_homology(pair, constant_system(M, Z))
    assert report.all_exact
    assert module_at(report, "H_1(X)").normal_form == (2, ())
    assert module_at(report, "H_2(X)").normal_form == (1, ())


def test_klein_columns_twisted_exact():
    M, pair = named_cover("klein", "cylinders")
    for ring in (Z, Zmod(3)):
        w = orientation_system(M, ring)
        report = mv_homology(pair, w)
        assert report.all_exact
        co = mv_cohomology(pair, w)
        assert co.all_exact


@pytest.mark.parametrize("ring", [Z, Zmod(3)])
def test_all_named_covers_exact_both_ways(ring):
    for cname, covname in (("octahedron", "hemispheres"),
                           ("torus", "cylinders"), ("klein", "cylinders")):
        M, pair = named_cover(cname, covname)
        G = constant_system(M, ring)
        assert mv_homology(pair, G).all_exact, (cname, ring)
        assert mv_cohomology(pair, G).all_exact, (cname, ring)


def test_disjoint_pieces_degenerate_to_additivity():
    M = corpus("circle")
    # A = one edge, B = everything else; actually make them overlap-free:
    # use two disjoint closed arcs of the triangle? The triangle's edges all
    # share vertices, so take A = closure of one edge, B = closure of the
    # other two; A^B = two points.
    A = Subcomplex(M, [(0, 1)])
    B = Subcomplex(M, [(1, 2), (0, 2)])
    pair = CoverPair(M, A, B)
    report = mv_homology(pair, constant_system(M, Z))
    assert report.all_exact
    assert module_at(report, "H_0(A^B)").normal_form == (2, ())


def test_relative_cover_pair_exact():
    M, pair0 = named_cover("octahedron", "hemispheres")
    C = Subcomplex(M, [(0,)])
    D = Subcomplex(M, [(1,)])
    pair = CoverPair(M, pair0.A, pair0.B, C, D)
    G = constant_system(M, Z)
    assert mv_homology(pair, G).all_exact
    assert mv_cohomology(pair, G).all_exact


def test_cover_pair_validation():
    M = corpus("sphere2")
    A = Subcomplex(M, [(0, 1, 2)])
    with pytest.raises(NotACover):
        CoverPair(M, A, A)
    with pytest.raises(UnknownName):
        named_cover("torus", "hemispheres")


def test_splitting_exhaustive_basis_cochains():
    for cname, covname in (("octahedron", "hemispheres"),
                           ("torus", "cylinders"), ("klein", "cylinders")):
        M, pair = named_cover(cname, covname)
        G = constant_system(M, Z)
        from twistcap.chains import pair_complex
        inter_pc = pair_complex(M, G, pool=pair.AB)
        for k in range(M.dimension + 1):
            length = inter_pc.length(k)
            for j in range(length):
                alpha = tuple(1 if i == j else 0 for i in range(length))
                beta, gamma = mv_splitting(pair, G, k, alpha)
                # mv_splitting re-checks phi(beta, gamma) == alpha internally
        assert True


def test_splitting_zero_and_outside_c():
    M, pair = named_cover("octahedron", "hemispheres")
    G = constant_system(M, Z)
    from twistcap.chains import pair_complex
    inter_pc = pair_complex(M, G, pool=pair.AB)
    zero = tuple(0 for _ in range(inter_pc.length(1)))
    beta, gamma = mv_splitting(pair, G, 1, zero)
    assert not any(beta) and not any(gamma)
    # C and D are empty here, so gamma is always zero
    one = tuple(1 for _ in range(inter_pc.length(1)))
    beta, gamma = mv_splitting(pair, G, 1, one)
    assert not any(gamma)


def test_connecting_naturality_for_nested_torus_covers():
    # enlarging both strips in the necklace gives a second cover; the
    # connecting squares with the induced maps must commute
    M = corpus("torus")
    A = [tuple(sorted((i % 7, (i + 1) % 7, (i + 3) % 7))) for i in range(7)]
    B = [tuple(sorted((i % 7, (i + 2) % 7, (i + 3) % 7))) for i in range(7)]
    small_u = [A[0], B[1], A[1], B[2], A[2], B[3], A[3]]
    small_v = [B[4], A[4], B[5], A[5], B[6], A[6], B[0]]
    big_u = small_u + [B[4]]
    big_v = small_v + [A[0]]
    pair1 = CoverPair(M, Subcomplex(M, small_u), Subcomplex(M, small_v))
    pair2 = CoverPair(M, Subcomplex(M, big_u), Subcomplex(M, big_v))
    G = constant_system(M, Z)
    from twistcap.chains import pair_complex, transfer_matrix
    from twistcap.fpmodules import homology_presentation, induced_map
    from twistcap.mv import _MVSpaces, _connecting_homology
    sp1 = _MVSpaces(pair1, G)
    sp2 = _MVSpaces(pair2, G)
    h2_x = sp1.homology(sp1.whole, 2)       # same for both (whole torus)
    h1_int1 = sp1.homology(sp1.inter, 1)
    h1_int2 = sp2.homology(sp2.inter, 1)
    d1 = _connecting_homology(sp1, 2, h2_x, h1_int1)
    d2 = _connecting_homology(sp2, 2, h2_x, h1_int2)
    incl = induced_map(transfer_matrix(sp1.inter, sp2.inter, 1),
                       h1_int1, h1_int2)
    assert incl.compose(d1).equals(d2)


@pytest.mark.parametrize("ring", [Z, Zmod(3), Q])
def test_diagram6_torus(ring):
    cfg = named_diagram6("torus")
    M = cfg["complex"]
    G = constant_system(M, ring)
    report = diagram6_check(M, cfg["U"], cfg["V"], cfg["K"], cfg["L"], G, ring)
    assert report.square_left and report.square_right
    assert report.connecting_ok
    assert report.connecting_sign in (-1, 1)


def test_diagram6_sphere():
    cfg = named_diagram6("sphere")
    M = cfg["complex"]
    G = constant_system(M, Z)
    report = diagram6_check(M, cfg["U"], cfg["V"], cfg["K"], cfg["L"], G, Z)
    assert report.square_left and report.square_right and report.connecting_ok


def test_diagram6_klein_twisted():
    cfg = named_diagram6("klein")
    M = cfg["complex"]
    G = orientation_system(M, Z)
    report = diagram6_check(M, cfg["U"], cfg["V"], cfg["K"], cfg["L"], G, Z)
    assert report.square_left and report.square_right
    assert report.connecting_ok


def test_diagram6_sign_stable_across_rings_and_representatives():
    cfg = named_diagram6("torus")
    M = cfg["complex"]
    signs = set()
    for ring in (Z, Zmod(3)):
        G = constant_system(M, ring)
        for seed in (None, 7):
            report = diagram6_check(M, cfg["U"], cfg["V"], cfg["K"], cfg["L"],
                                    G, ring, resample_seed=seed)
            assert report.all_verified
            if report.connecting_sign is not None:
                signs.add(report.connecting_sign)
    assert len(signs) == 1
