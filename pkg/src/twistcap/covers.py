"""Double covers from rank-1 sign systems.

Points of the cover are (vertex, sheet); sheet 0 over a vertex stands for the
reference local orientation there, sheet 1 for its negation.  A base simplex
lifts by propagating sheets along its edges with the sign system; the deck
map swaps sheets.  The chosen orientation of the cover assigns each lifted
facet the sign

    (-1)^sheet(leading base vertex) * base facet sign * projection parity

which is exactly "the orientation the point names": the deck image then
carries the opposite sign on the nose, and the two sheets of an orientable
base project to opposite base orientations.

The +/- splitting maps Sigma, Delta, the orbit bases of the symmetric and
antisymmetric chains, and the identification of the antisymmetric complex
with the twisted chains of the base all live here.
"""

from __future__ import annotations

from dataclasses import dataclass

from .chains import pair_complex, relative_killed, transfer_matrix
from .complexes import FullSubcomplex, SimplicialComplex, star_signs, validate
from .errors import (IncoherentCover, NotSignSystem, TwistcapError, TwoIsZero)
from .fpmodules import homology_presentation
from .localsystems import (LocalSystem, constant_system, validate_flatness)
from .matrices import ExactMatrix, SmithSolver, is_invertible, kernel
from .rings import RingSpec


def _perm_parity(seq) -> int:
    """Sign of the permutation sorting seq (distinct entries)."""
    inv = 0
    n = len(seq)
    for i in range(n):
        for j in range(i + 1, n):
            if seq[i] > seq[j]:
                inv += 1
    return -1 if inv % 2 else 1


class DoubleCover:
    __slots__ = ("base", "total", "projection", "deck", "cocycle", "signs",
                 "_lift_cache", "_cache")

    def __init__(self, base, total, projection, deck, cocycle, signs):
        self.base = base
        self.total = total
        self.projection = projection
        self.deck = deck
        self.cocycle = cocycle
        self.signs = signs
        self._lift_cache = {}
        self._cache = {}

    def sheet(self, total_vertex: int) -> int:
        return 0 if total_vertex < self.base.vertex_count else 1

    def canonical_lift(self, simplex):
        """The lift carrying sheet 0 at the simplex's lowest vertex."""
        s = tuple(simplex)
        cached = self._lift_cache.get(s)
        if cached is None:
            n = self.base.vertex_count
            v0 = s[0]
            verts = [v0]
            for v in s[1:]:
                sign = self.signs[(v0, v)] if v0 < v else self.signs[(v, v0)]
                verts.append(v + (n if sign < 0 else 0))
            cached = tuple(sorted(verts))
            self._lift_cache[s] = cached
        return cached

    def other_lift(self, simplex):
        return self.deck_image(self.canonical_lift(simplex))

    def deck_image(self, total_simplex):
        return tuple(sorted(self.deck[v] for v in total_simplex))

    def project(self, total_simplex):
        return tuple(sorted(self.projection[v] for v in total_simplex))

    def lift_vertices(self, vertex_set):
        n = self.base.vertex_count
        return frozenset(v + s * n for v in vertex_set for s in (0, 1))


_cover_cache: dict = {}


def build_double_cover(M: SimplicialComplex, omega: LocalSystem) -> DoubleCover:
    """Construct the two-sheeted cover defined by a flat sign system."""
    key = (id(M), id(omega))
    hit = _cover_cache.get(key)
    if hit is not None and hit[1] is M and hit[2] is omega:
        return hit[0]
    if omega.base != M or not omega.is_sign_system():
        raise NotSignSystem("double covers need a rank-1 +-1 system on the base")
    ok, witness = validate_flatness(omega)
    if not ok:
        raise NotSignSystem(f"sign system is not flat at {witness}")
    n = M.vertex_count
    signs = {e: omega.edge_sign(*e) for e in M.faces(1)}
    maximal = []
    for s in M.maximal_simplices:
        s = tuple(sorted(s))
        v0 = s[0]
        lift = [v0]
        for v in s[1:]:
            sign = signs[(v0, v)] if v0 < v else signs[(v, v0)]
            lift.append(v + (n if sign < 0 else 0))
        flipped = [(v + n) % (2 * n) for v in lift]
        maximal.append(tuple(sorted(lift)))
        maximal.append(tuple(sorted(flipped)))
    total = SimplicialComplex(2 * n, maximal)
    projection = tuple(v % n for v in range(2 * n))
    deck = tuple((v + n) % (2 * n) for v in range(2 * n))
    cover = DoubleCover(M, total, projection, deck, omega, signs)
    _check_cover_invariants(cover)
    _cover_cache[key] = (cover, M, omega)
    return cover


def _check_cover_invariants(cover):
    for v in range(cover.total.vertex_count):
        if cover.deck[cover.deck[v]] != v or cover.deck[v] == v:
            raise IncoherentCover("deck map is not a free involution")
        if cover.projection[cover.deck[v]] != cover.projection[v]:
            raise IncoherentCover("projection does not commute with the deck map")
    for k in range(cover.base.dimension + 1):
        if len(cover.total.faces(k)) != 2 * len(cover.base.faces(k)):
            raise IncoherentCover(f"lift count wrong in dimension {k}")


def projection_parity(cover, total_simplex) -> int:
    """Parity of reordering the ascending lift into base-vertex order."""
    return _perm_parity([cover.projection[v] for v in total_simplex])


@dataclass(frozen=True)
class CoverOrientation:
    cover: DoubleCover
    facet_signs: dict

    def cycle_vector(self, ring: RingSpec):
        pc = pair_complex(self.cover.total, constant_system(self.cover.total, ring))
        n = self.cover.total.dimension
        idx = pc.index(n)
        vec = [ring.zero] * pc.length(n)
        for facet, sign in self.facet_signs.items():
            vec[idx[facet]] = ring.from_int(sign)
        return tuple(vec)


def _calibrated_sign(cover, facet) -> int:
    base_facet = cover.project(facet)
    v0 = base_facet[0]
    lift_of_v0 = [v for v in facet if cover.projection[v] == v0][0]
    sheet = cover.sheet(lift_of_v0)
    w = star_signs(cover.base, v0)[base_facet]
    return (-1) ** sheet * w * projection_parity(cover, facet)


def orient_cover(cover: DoubleCover) -> CoverOrientation:
    """Coherent orientation by sign-BFS, seeded with the sheet calibration.

    Seeds are deterministic: the lexicographically first facet of each
    component, carrying the positive orientation in the sheet calibration.
    The BFS result is cross-checked against the calibration facet by facet;
    a mismatch means the sheet bookkeeping is broken upstream.
    """
    cached = cover._cache.get("orientation")
    if cached is not None:
        return cached
    total = cover.total
    report = validate(total)
    if not report.is_pure or not report.each_ridge_in_two_facets:
        raise IncoherentCover("cover total space is not a closed pseudomanifold")
    adj = total.facet_adjacency()
    signs = {}
    for facet in total.faces(total.dimension):
        if facet in signs:
            continue
        signs[facet] = _calibrated_sign(cover, facet)
        stack = [facet]
        while stack:
            f = stack.pop()
            s = signs[f]
            for g, ridge in adj[f]:
                t = -s * _ridge_sign(f, ridge) * _ridge_sign(g, ridge)
                if g in signs:
                    if signs[g] != t:
                        raise IncoherentCover("cover admits no coherent orientation")
                else:
                    signs[g] = t
                    stack.append(g)
    for facet, sign in signs.items():
        if sign != _calibrated_sign(cover, facet):
            raise IncoherentCover("coherent orientation drifts from sheet calibration")
    orientation = CoverOrientation(cover, signs)
    cover._cache["orientation"] = orientation
    return orientation


def _ridge_sign(facet, ridge):
    for i, v in enumerate(facet):
        if v not in ridge:
            return -1 if i % 2 else 1
    raise TwistcapError(f"{ridge} is not a ridge of {facet}")


def lift_full_subcomplex(cover, K: FullSubcomplex | None):
    if K is None:
        return None
    return FullSubcomplex(cover.total, cover.lift_vertices(K.vertex_subset))


def dumps_cover(cover: DoubleCover) -> str:
    """Total space in the complex file format, plus sheet annotations.

    The annotations are comments, so the output loads back as a plain
    complex; the sheet block records the covering structure for readers.
    """
    from .complexes import dumps_complex
    lines = [dumps_complex(cover.total).rstrip("\n")]
    lines.append("# sheets: total vertex = base vertex + sheet * base_count")
    for v in range(cover.total.vertex_count):
        lines.append(f"# vertex {v} over {cover.projection[v]} sheet {cover.sheet(v)}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# chain maps of the deck transformation and the projection
# ---------------------------------------------------------------------------

def vertex_map_chain_matrix(vmap, ring, k, src_pc, dst_pc) -> ExactMatrix:
    """Chain map induced by a simplicial vertex map (with parity signs)."""
    didx = dst_pc.index(k)
    rows = dst_pc.length(k)
    data = [[ring.zero] * src_pc.length(k) for _ in range(rows)]
    for j, s in enumerate(src_pc.space(k)):
        image = [vmap[v] for v in s]
        if len(set(image)) != len(image):
            continue  # degenerate, contributes zero
        parity = _perm_parity(image)
        pos = didx.get(tuple(sorted(image)))
        if pos is None:
            continue
        data[pos][j] = ring.from_int(parity)
    m = ExactMatrix._raw(ring, data)
    m.cols = src_pc.length(k)
    return m


def deck_chain_matrix(cover, ring, k, pc=None) -> ExactMatrix:
    if pc is None:
        pc = pair_complex(cover.total, constant_system(cover.total, ring))
    return vertex_map_chain_matrix(cover.deck, ring, k, pc, pc)


def projection_chain_matrix(cover, ring, k, src_pc, dst_pc) -> ExactMatrix:
    return vertex_map_chain_matrix(cover.projection, ring, k, src_pc, dst_pc)


def lemma1_check(cover, ring) -> bool:
    """Deck image of the chosen orientation cycle equals its exact negation."""
    orientation = orient_cover(cover)
    z = orientation.cycle_vector(ring)
    tau = deck_chain_matrix(cover, ring, cover.total.dimension)
    return tau.apply(z) == tuple(ring.normalize(-x) for x in z)


# ---------------------------------------------------------------------------
# the +/- splitting and the identification with twisted base chains
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DegreeSplit:
    sigma: ExactMatrix
    delta: ExactMatrix
    incl_plus: ExactMatrix
    incl_minus: ExactMatrix
    orbit_bases: tuple  # base simplices indexing the orbit generators


@dataclass(frozen=True)
class SplitMaps:
    cover: DoubleCover
    ring: RingSpec
    K: FullSubcomplex | None
    degrees: dict


def split_maps(cover, ring, K: FullSubcomplex | None = None) -> SplitMaps:
    """Sigma = 1 + tau, Delta = 1 - tau, and the C^+/C^- orbit bases.

    Works on the relative chains of (cover | preimage of K) in every degree.
    The orbit generators are base-ordered: the generator over a base simplex
    is parity * (rep -+ parity_eps * deck(rep)) with rep the canonical lift,
    so the antisymmetric basis matches the twisted chains of the base with
    coefficient +1.
    """
    if not ring.two_is_nonzero:
        raise TwoIsZero("the +/- splitting needs 2 != 0 in the ring")
    Ktilde = lift_full_subcomplex(cover, K)
    total_pc = pair_complex(cover.total, constant_system(cover.total, ring),
                            killed=relative_killed(cover.total, Ktilde))
    base_pc_space = pair_complex(cover.base, constant_system(cover.base, ring),
                                 killed=relative_killed(cover.base, K))
    degrees = {}
    for k in range(cover.base.dimension + 1):
        tau = deck_chain_matrix(cover, ring, k, total_pc)
        ident = ExactMatrix.identity(ring, total_pc.length(k))
        sigma = ident + tau
        delta = ident - tau
        idx = total_pc.index(k)
        plus_cols, minus_cols = [], []
        orbit_bases = base_pc_space.space(k)
        for b in orbit_bases:
            rep = cover.canonical_lift(b)
            other = cover.deck_image(rep)
            parity = projection_parity(cover, rep)
            eps = parity * projection_parity(cover, other)
            pcol = [ring.zero] * total_pc.length(k)
            mcol = list(pcol)
            pcol[idx[rep]] = ring.from_int(parity)
            pcol[idx[other]] = ring.from_int(parity * eps)
            mcol[idx[rep]] = ring.from_int(parity)
            mcol[idx[other]] = ring.from_int(-parity * eps)
            plus_cols.append(tuple(pcol))
            minus_cols.append(tuple(mcol))
        incl_plus = ExactMatrix.from_columns(ring, plus_cols, total_pc.length(k))
        incl_minus = ExactMatrix.from_columns(ring, minus_cols, total_pc.length(k))
        degrees[k] = DegreeSplit(sigma, delta, incl_plus, incl_minus,
                                 tuple(orbit_bases))
    return SplitMaps(cover, ring, K, degrees)


def _same_column_span(A: ExactMatrix, B: ExactMatrix) -> bool:
    return (SmithSolver(A).solve_matrix(B) is not None
            and SmithSolver(B).solve_matrix(A) is not None)


def _injective(A: ExactMatrix) -> bool:
    return kernel(A).cols == 0


def check_split_exactness(split: SplitMaps) -> dict:
    """Degreewise exactness of both short sequences.

    Sequence (1): 0 -> C^- -> C --Sigma--> C^+ -> 0
    Sequence (2): 0 -> C^+ -> C --Delta--> C^- -> 0
    """
    out = {}
    for k, d in split.degrees.items():
        seq1 = (_injective(d.incl_minus)
                and _same_column_span(kernel(d.sigma), d.incl_minus)
                and _same_column_span(d.sigma, d.incl_plus))
        seq2 = (_injective(d.incl_plus)
                and _same_column_span(kernel(d.delta), d.incl_plus)
                and _same_column_span(d.delta, d.incl_minus))
        out[k] = {"seq1": seq1, "seq2": seq2}
    return out


@dataclass(frozen=True)
class PhiData:
    matrices: dict        # degree -> orbit coords -> twisted relative coords
    boundary_commutes: bool
    degreewise_iso: bool


def phi_identify(cover, ring, K: FullSubcomplex | None = None) -> PhiData:
    """The identification of antisymmetric cover chains with twisted chains.

    With canonical (sheet-0-at-leading-vertex) orbit representatives and
    base-ordered generators, the matrix in each degree is the identity on
    matching coordinates; the substance is that it commutes with the two
    boundary operators, which is checked exactly.
    """
    if not ring.two_is_nonzero:
        raise TwoIsZero("the identification needs 2 != 0 in the ring")
    split = split_maps(cover, ring, K)
    twisted_pc = pair_complex(cover.base, cover_sign_system(cover, ring),
                              killed=relative_killed(cover.base, K))
    matrices = {}
    commutes = True
    iso = True
    for k in sorted(split.degrees):
        d = split.degrees[k]
        twisted_space = twisted_pc.space(k)
        if tuple(d.orbit_bases) != tuple(twisted_space):
            raise TwistcapError("orbit ordering drifted from twisted coordinates")
        phi = ExactMatrix.identity(ring, len(twisted_space))
        matrices[k] = phi
        iso = iso and is_invertible(phi)
        # boundary on the antisymmetric complex, written in orbit coordinates
        total_boundary = _total_boundary(split, cover, ring, k)
        if k == 0:
            gamma_bnd = ExactMatrix.zeros(ring, 0, len(d.orbit_bases))
            phi_prev = ExactMatrix.identity(ring, 0)
        else:
            prev = split.degrees[k - 1]
            gamma_bnd = SmithSolver(prev.incl_minus).solve_matrix(
                total_boundary @ d.incl_minus)
            if gamma_bnd is None:
                raise TwistcapError("antisymmetric chains are not boundary-closed")
            phi_prev = matrices[k - 1]
        if (twisted_pc.boundary(k) @ phi) != (phi_prev @ gamma_bnd):
            commutes = False
    return PhiData(matrices, commutes, iso)


def _total_boundary(split, cover, ring, k):
    Ktilde = lift_full_subcomplex(cover, split.K)
    total_pc = pair_complex(cover.total, constant_system(cover.total, ring),
                            killed=relative_killed(cover.total, Ktilde))
    return total_pc.boundary(k)


def cover_sign_system(cover, ring) -> LocalSystem:
    """The defining sign cocycle of the cover, over the requested ring."""
    key = ("sign_system", ring)
    cached = cover._cache.get(key)
    if cached is None:
        transport = {e: ExactMatrix(ring, [[ring.from_int(sign)]])
                     for e, sign in cover.signs.items()}
        cached = LocalSystem(cover.base, ring, 1, transport)
        cover._cache[key] = cached
    return cached


def lemma2_check(M, ring, K: FullSubcomplex | None = None) -> bool:
    """Pushforward of the cover's fundamental class vanishes in H_n(M|K)."""
    from .chains import pushforward  # cycle-free at runtime
    from .localsystems import orientation_system

    omega = orientation_system(M, ring)
    cover = build_double_cover(M, omega)
    orientation = orient_cover(cover)
    z = orientation.cycle_vector(ring)

    n = M.dimension
    Ktilde = lift_full_subcomplex(cover, K)
    abs_pc = pair_complex(cover.total, constant_system(cover.total, ring))
    rel_pc = pair_complex(cover.total, constant_system(cover.total, ring),
                          killed=relative_killed(cover.total, Ktilde))
    z_rel = transfer_matrix(abs_pc, rel_pc, n).apply(z)
    src = homology_presentation(rel_pc.boundary(n + 1), rel_pc.boundary(n))
    coords = src.class_vector(z_rel)
    if coords is None:
        raise TwistcapError("cover orientation cycle is not a relative cycle")
    pmap = pushforward(cover, ring, K)
    return pmap.target.is_zero_class(pmap.apply(coords))
