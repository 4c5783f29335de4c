import pytest

from twistcap.chains import fundamental_class_direct, pair_complex
from twistcap.complexes import FullSubcomplex, corpus, validate
from twistcap.covers import (build_double_cover, check_split_exactness,
                             deck_chain_matrix, lemma1_check, lemma2_check,
                             orient_cover, phi_identify, split_maps)
from twistcap.errors import NotSignSystem, TwoIsZero
from twistcap.localsystems import (constant_system, is_trivializable,
                                   orientation_system)
from twistcap.rings import Q, Z, Zmod


def cover_of(name, ring=Z):
    M = corpus(name)
    return build_double_cover(M, orientation_system(M, ring))


def components(cx):
    adj = cx.facet_adjacency()
    seen = set()
    comps = 0
    for f in cx.facets:
        if f in seen:
            continue
        comps += 1
        stack = [f]
        seen.add(f)
        while stack:
            g = stack.pop()
            for h, _ in adj[g]:
                if h not in seen:
                    seen.add(h)
                    stack.append(h)
    return comps


def test_trivial_cover_of_sphere_is_two_spheres():
    c = cover_of("sphere2")
    assert c.total.vertex_count == 8
    assert components(c.total) == 2
    assert c.total.euler_characteristic() == 4


def test_rp2_cover_is_a_sphere():
    c = cover_of("rp2")
    assert c.total.f_vector() == (12, 30, 20)
    assert components(c.total) == 1
    assert c.total.euler_characteristic() == 2
    assert validate(c.total).closed_pseudomanifold


def test_klein_cover_is_a_torus():
    c = cover_of("klein")
    assert components(c.total) == 1
    assert c.total.euler_characteristic() == 0
    assert is_trivializable(orientation_system(c.total, Z))[0]


def test_connectivity_matches_orientability():
    for name in ("sphere2", "torus", "rp2", "klein", "sphere3"):
        M = corpus(name)
        omega = orientation_system(M, Z)
        c = build_double_cover(M, omega)
        trivial, _ = is_trivializable(omega)
        assert (components(c.total) == 2) == trivial


def test_reject_non_sign_systems():
    M = corpus("rp2")
    with pytest.raises(NotSignSystem):
        build_double_cover(M, constant_system(M, Z, 2))


@pytest.mark.parametrize("name", ["sphere2", "rp2", "klein", "torus", "sphere3"])
def test_lemma1_deck_reverses_orientation(name):
    assert lemma1_check(cover_of(name), Z)


def test_components_project_to_opposite_orientations():
    M = corpus("sphere2")
    c = cover_of("sphere2")
    orientation = orient_cover(c)
    nu = fundamental_class_direct(M, Z)
    base_pc = pair_complex(M, nu.system)
    idx = base_pc.index(2)
    projected = {}
    for facet, sign in orientation.facet_signs.items():
        base = c.project(facet)
        sheet = c.sheet([v for v in facet if c.projection[v] == base[0]][0])
        from twistcap.covers import projection_parity
        projected.setdefault(sheet, [0] * base_pc.length(2))
        projected[sheet][idx[base]] += sign * projection_parity(c, facet)
    assert tuple(projected[0]) == nu.chain
    assert tuple(projected[1]) == tuple(-x for x in nu.chain)


@pytest.mark.parametrize("ring", [Z, Zmod(3)])
@pytest.mark.parametrize("name", ["rp2", "torus", "klein"])
def test_split_sequences_exact(name, ring):
    c = cover_of(name)
    for K in (None, FullSubcomplex(corpus(name), {0})):
        split = split_maps(c, ring, K)
        for k, verdict in check_split_exactness(split).items():
            assert verdict["seq1"], (name, ring, k)
            assert verdict["seq2"], (name, ring, k)


def test_split_eigenvector_algebra():
    c = cover_of("rp2")
    split = split_maps(c, Z)
    for d in split.degrees.values():
        assert (d.delta @ d.incl_plus).is_zero()
        assert (d.sigma @ d.incl_minus).is_zero()
    # one antisymmetric generator per base triangle
    assert split.degrees[2].incl_minus.cols == 10


def test_split_refuses_mod2():
    c = cover_of("rp2")
    with pytest.raises(TwoIsZero):
        split_maps(c, Zmod(2))


def test_sigma_image_is_sum_of_lifts():
    c = cover_of("rp2")
    ring = Z
    split = split_maps(c, ring)
    d = split.degrees[2]
    tau = deck_chain_matrix(c, ring, 2)
    n2 = d.sigma.rows
    for j in range(0, n2, 7):
        e = [0] * n2
        e[j] = 1
        assert d.sigma.apply(e) == tuple(x + y for x, y in
                                         zip(e, tau.apply(e)))


@pytest.mark.parametrize("ring", [Z, Zmod(3), Q])
@pytest.mark.parametrize("name", ["rp2", "klein", "sphere2"])
def test_phi_is_boundary_commuting_iso(name, ring):
    c = cover_of(name)
    for K in (None, FullSubcomplex(corpus(name), {1})):
        phi = phi_identify(c, ring, K)
        assert phi.boundary_commutes
        assert phi.degreewise_iso


def test_phi_representative_swap_flips_sign():
    c = cover_of("rp2")
    split = split_maps(c, Z)
    d = split.degrees[2]
    # the generator over a base simplex evaluates to +1 on the canonical
    # lift; the deck image of that generator is its negation
    base = d.orbit_bases[0]
    col = d.incl_minus.column(0)
    total_pc_len = len(col)
    tau = deck_chain_matrix(c, Z, 2)
    swapped = tau.apply(col)
    assert swapped == tuple(-x for x in col)
    rep = c.canonical_lift(base)
    idx = pair_complex(c.total, constant_system(c.total, Z)).index(2)
    from twistcap.covers import projection_parity
    assert col[idx[rep]] == projection_parity(c, rep)
    assert total_pc_len == 20  # both lifts of each of the 10 base triangles


@pytest.mark.parametrize("name", ["sphere2", "rp2", "klein", "torus"])
@pytest.mark.parametrize("ring", [Z, Zmod(3)])
def test_lemma2_pushforward_vanishes(name, ring):
    M = corpus(name)
    for K in (None, FullSubcomplex(M, {0})):
        assert lemma2_check(M, ring, K)


def test_cover_export_roundtrips_as_complex():
    from twistcap.complexes import loads_complex
    from twistcap.covers import dumps_cover
    c = cover_of("rp2")
    text = dumps_cover(c)
    assert "sheet" in text
    assert loads_complex(text) == c.total  # annotations are comments
