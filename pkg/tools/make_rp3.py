"""Generate the corpus triangulation of real projective 3-space.

Construction: the boundary of the 4-dimensional cross-polytope is a centrally
symmetric 3-sphere; its barycentric subdivision quotients cleanly by the
antipodal map (no chain of faces meets its own antipode), giving a 40-vertex
triangulation of RP^3.  Greedy edge contractions subject to the link condition
    link(u) in link(v) == link(uv)
then shrink it while staying a triangulated manifold.  The result is printed
as a facet literal for twistcap.complexes, and re-validated structurally and
homologically here.

Run:  python3 tools/make_rp3.py
"""

import sys
from itertools import combinations

sys.path.insert(0, "src")

from twistcap.complexes import SimplicialComplex, validate  # noqa: E402
from twistcap.chains import homology  # noqa: E402
from twistcap.localsystems import constant_system, orientation_system, \
    is_trivializable  # noqa: E402
from twistcap.rings import Z  # noqa: E402


def cross_polytope_boundary():
    # vertex i = +e_i, vertex i+4 = -e_i
    facets = []
    for signs in range(16):
        facets.append(tuple(sorted(i + (4 if signs >> i & 1 else 0)
                                   for i in range(4))))
    return SimplicialComplex(8, facets)


def barycentric_quotient(cx):
    faces = [s for k in range(cx.dimension + 1) for s in cx.faces(k)]
    fid = {s: i for i, s in enumerate(faces)}

    def antipode_face(s):
        return tuple(sorted((v + 4) % 8 for v in s))

    # antipodal orbit representatives
    rep = {}
    reps = []
    for s in faces:
        a = antipode_face(s)
        r = min(s, a)
        if r not in rep:
            rep[r] = len(reps)
            reps.append(r)
        rep[s] = rep[r]

    tets = set()
    for T in cx.faces(3):
        for t in combinations(T, 3):
            for e in combinations(t, 2):
                for v in e:
                    chain = ((v,), e, t, T)
                    labels = tuple(sorted(rep[c] for c in chain))
                    assert len(set(labels)) == 4, "quotient not simplicial"
                    tets.add(labels)
    n = len(reps)
    return SimplicialComplex(n, sorted(tets))


def links_of(cx):
    link = {}
    for k in range(1, cx.dimension + 1):
        for s in cx.faces(k):
            for v in s:
                link.setdefault((v,), set()).add(tuple(x for x in s if x != v))
            for e in combinations(s, 2):
                if k >= 2:
                    link.setdefault(e, set()).add(
                        tuple(x for x in s if x not in e))
    return link


def contractible(cx, link, u, v):
    lu = link.get((u,), set())
    lv = link.get((v,), set())
    luv = {s for s in link.get((u, v), set()) if s}
    both = {s for s in lu & lv if s}
    return both == luv


def contract(cx, u, v):
    # collapse v onto u
    facets = set()
    for f in cx.faces(3):
        if u in f and v in f:
            continue
        g = tuple(sorted(u if x == v else x for x in f))
        if len(set(g)) != 4:
            return None
        facets.add(g)
    used = sorted({x for f in facets for x in f})
    relabel = {x: i for i, x in enumerate(used)}
    return SimplicialComplex(len(used),
                             [tuple(relabel[x] for x in f) for f in facets])


def shrink(cx):
    while True:
        link = links_of(cx)
        progress = False
        for (u, v) in cx.faces(1):
            if contractible(cx, link, u, v):
                smaller = contract(cx, u, v)
                if smaller is None:
                    continue
                rep = validate(smaller)
                if rep.closed_pseudomanifold and rep.links_validated:
                    cx = smaller
                    progress = True
                    break
        if not progress:
            return cx


def check(cx):
    rep = validate(cx)
    assert rep.closed_pseudomanifold and rep.links_validated
    assert rep.euler_characteristic == 0
    const = constant_system(cx, Z)
    hs = [homology(cx, const, k).module.normal_form for k in range(4)]
    assert hs[0] == (1, ()), hs
    assert hs[1] == (0, (2,)), hs
    assert hs[2] == (0, ()), hs
    assert hs[3] == (1, ()), hs
    assert is_trivializable(orientation_system(cx, Z))[0]


def main():
    sphere = cross_polytope_boundary()
    assert validate(sphere).closed_pseudomanifold
    quotient = barycentric_quotient(sphere)
    print(f"quotient: {quotient.f_vector()}", file=sys.stderr)
    check(quotient)
    small = shrink(quotient)
    print(f"shrunk:   {small.f_vector()}", file=sys.stderr)
    check(small)
    facets = sorted(small.maximal_simplices)
    print("_RP3_FACETS = (")
    for i in range(0, len(facets), 4):
        row = ", ".join(str(f) for f in facets[i:i + 4])
        print(f"    {row},")
    print(")")


if __name__ == "__main__":
    main()
