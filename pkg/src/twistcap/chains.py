"""Twisted simplicial chain and cochain complexes and fundamental classes.

Coefficients of a k-chain sit in the fiber at the leading (lowest) vertex of
each k-simplex.  The boundary of g*sigma keeps g with sign (-1)^i on the face
dropping vertex i >= 1; the face dropping vertex 0 carries the coefficient
through the inverse transport along sigma's leading edge.  The coboundary is
the unique convention that makes the cap boundary identity hold on the nose:

    delta c (sigma) = T[v0<-v1](c(face_0)) + sum_{i>=1} (-1)^i c(face_i)

Relative pairs use full-subcomplex complements: C(M|K) = C(M)/C(complement K).
Both constructions of the twisted fundamental class live here as well.
"""

from __future__ import annotations

from .complexes import (FullSubcomplex, SimplicialComplex, Subcomplex,
                        star_signs, validate)
from .errors import (FlatnessViolation, NotClosedPseudomanifold,
                     TwistcapError, TwoIsZero)
from .fpmodules import (HomologyPresentation, ModuleMap, homology_presentation,
                        induced_map)
from .localsystems import (LocalSystem, constant_system, orientation_system,
                           validate_flatness)
from .matrices import ExactMatrix


class NotAFundamentalCycle(TwistcapError):
    """Raised when the requested coefficient system admits no such cycle."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class PairComplex:
    """Chain/cochain matrices of (pool, killed) with twisted coefficients.

    pool defaults to the whole complex; killed to nothing.  Coordinates at
    degree k are the k-simplices of pool not in killed, in lexicographic
    order, with one fiber block of size rank each.
    """

    def __init__(self, base: SimplicialComplex, system: LocalSystem,
                 pool: Subcomplex | None = None,
                 killed: Subcomplex | None = None):
        if system.base != base:
            raise TwistcapError("system lives on a different complex")
        ok, witness = validate_flatness(system)
        if not ok:
            raise FlatnessViolation(f"system is not flat at triangle {witness}")
        self.base = base
        self.system = system
        self.ring = system.ring
        self.rank = system.rank
        self.pool = pool
        self.killed = killed
        self._spaces: dict[int, tuple] = {}
        self._index: dict[int, dict] = {}
        self._boundary: dict[int, ExactMatrix] = {}
        self._coboundary: dict[int, ExactMatrix] = {}

    # -- coordinates ------------------------------------------------------

    def space(self, k: int):
        if k not in self._spaces:
            if k < 0 or k > self.base.dimension:
                simplices = ()
            elif self.pool is None:
                simplices = self.base.faces(k)
                if self.killed is not None:
                    simplices = tuple(s for s in simplices
                                      if not self.killed.contains(s))
            else:
                simplices = tuple(sorted(self.pool.faces(k)))
                if self.killed is not None:
                    simplices = tuple(s for s in simplices
                                      if not self.killed.contains(s))
            self._spaces[k] = simplices
            self._index[k] = {s: i for i, s in enumerate(simplices)}
        return self._spaces[k]

    def index(self, k: int):
        self.space(k)
        return self._index[k]

    def length(self, k: int) -> int:
        return len(self.space(k)) * self.rank

    def zero_vector(self, k: int):
        return (self.ring.zero,) * self.length(k)

    def basis_vector(self, k: int, simplex, fiber_index=0):
        pos = self.index(k)[tuple(simplex)] * self.rank + fiber_index
        vec = [self.ring.zero] * self.length(k)
        vec[pos] = self.ring.one
        return tuple(vec)

    def coefficient(self, k, vector, simplex):
        """The fiber block of `vector` at `simplex`."""
        pos = self.index(k)[tuple(simplex)] * self.rank
        return tuple(vector[pos:pos + self.rank])

    # -- matrices ---------------------------------------------------------

    def boundary(self, k: int) -> ExactMatrix:
        """d_k : C_k -> C_{k-1}."""
        if k not in self._boundary:
            self._boundary[k] = self._assemble_boundary(k)
        return self._boundary[k]

    def coboundary(self, k: int) -> ExactMatrix:
        """delta_k : C^k -> C^{k+1}."""
        if k not in self._coboundary:
            self._coboundary[k] = self._assemble_coboundary(k)
        return self._coboundary[k]

    def _assemble_boundary(self, k: int) -> ExactMatrix:
        ring, r = self.ring, self.rank
        rows_sx = self.space(k - 1)
        cols_sx = self.space(k)
        ridx = self.index(k - 1)
        data = [[ring.zero] * (len(cols_sx) * r) for _ in range(len(rows_sx) * r)]
        for j, s in enumerate(cols_sx):
            for i in range(len(s)):
                face = s[:i] + s[i + 1:]
                pos = ridx.get(face)
                if pos is None:
                    continue
                if i == 0:
                    block = self.system.transport(s[1], s[0])
                    for a in range(r):
                        row = data[pos * r + a]
                        for b in range(r):
                            row[j * r + b] = block.data[a][b]
                else:
                    sign = ring.from_int(-1 if i % 2 else 1)
                    for a in range(r):
                        data[pos * r + a][j * r + a] = sign
        m = ExactMatrix._raw(ring, data)
        m.cols = len(cols_sx) * r
        return m

    def _assemble_coboundary(self, k: int) -> ExactMatrix:
        ring, r = self.ring, self.rank
        rows_sx = self.space(k + 1)
        cols_sx = self.space(k)
        cidx = self.index(k)
        data = [[ring.zero] * (len(cols_sx) * r) for _ in range(len(rows_sx) * r)]
        for i_row, s in enumerate(rows_sx):
            for i in range(len(s)):
                face = s[:i] + s[i + 1:]
                pos = cidx.get(face)
                if pos is None:
                    continue
                if i == 0:
                    block = self.system.transport(s[0], s[1])
                    for a in range(r):
                        row = data[i_row * r + a]
                        for b in range(r):
                            row[pos * r + b] = ring.normalize(
                                row[pos * r + b] + block.data[a][b])
                else:
                    sign = ring.from_int(-1 if i % 2 else 1)
                    for a in range(r):
                        row = data[i_row * r + a]
                        row[pos * r + a] = ring.normalize(row[pos * r + a] + sign)
        m = ExactMatrix._raw(ring, data)
        m.cols = len(cols_sx) * r
        return m

    def verify_squares(self):
        """d o d = 0 and delta o delta = 0 in every degree."""
        for k in range(self.base.dimension + 2):
            if not (self.boundary(k) @ self.boundary(k + 1)).is_zero():
                raise FlatnessViolation(f"boundary squared != 0 at degree {k + 1}")
        for k in range(-1, self.base.dimension + 1):
            if not (self.coboundary(k + 1) @ self.coboundary(k)).is_zero():
                raise FlatnessViolation(f"coboundary squared != 0 at degree {k}")
        return True


_pair_cache: dict = {}


def pair_complex(base, system, pool=None, killed=None) -> PairComplex:
    """Memoized PairComplex; keys use object identity plus subcomplex value."""
    key = (id(base), id(system), pool, killed)
    pc = _pair_cache.get(key)
    if pc is None:
        pc = PairComplex(base, system, pool, killed)
        _pair_cache[key] = (pc, base, system)  # keep referents alive
        return pc
    return pc[0]


def relative_killed(M: SimplicialComplex, K: FullSubcomplex | None):
    if K is None:
        return None
    comp = K.complement().as_subcomplex()
    return None if comp.is_empty() else comp


def chain_complex(M, G, K: FullSubcomplex | None = None) -> PairComplex:
    pc = pair_complex(M, G, killed=relative_killed(M, K))
    pc.verify_squares()
    return pc


def cochain_complex(M, G, K: FullSubcomplex | None = None) -> PairComplex:
    return chain_complex(M, G, K)


def relative_pair(M, G, K: FullSubcomplex) -> PairComplex:
    """C(M|K) = C(M) / C(complement of K)."""
    return chain_complex(M, G, K)


# one implementation carries both the chain and the cochain matrices
TwistedChainComplex = PairComplex
TwistedCochainComplex = PairComplex


def homology(M, G, k, K: FullSubcomplex | None = None) -> HomologyPresentation:
    pc = pair_complex(M, G, killed=relative_killed(M, K))
    return homology_presentation(pc.boundary(k + 1), pc.boundary(k))


def cohomology(M, G, k, K: FullSubcomplex | None = None) -> HomologyPresentation:
    pc = pair_complex(M, G, killed=relative_killed(M, K))
    return homology_presentation(pc.coboundary(k - 1), pc.coboundary(k))


def transfer_matrix(src: PairComplex, dst: PairComplex, k: int) -> ExactMatrix:
    """Identity-block matrix matching shared simplices.

    Covers inclusion of a subcomplex pair into a larger one and quotient
    projections alike: coordinates present on both sides map by the identity,
    everything else to zero.  Both sides must share base, system and ring.
    """
    if src.system is not dst.system and (src.base != dst.base
                                         or src.rank != dst.rank
                                         or src.ring != dst.ring):
        raise TwistcapError("transfer between unrelated complexes")
    ring, r = src.ring, src.rank
    rows = dst.length(k)
    didx = dst.index(k)
    data = [[ring.zero] * src.length(k) for _ in range(rows)]
    for j, s in enumerate(src.space(k)):
        pos = didx.get(s)
        if pos is None:
            continue
        for a in range(r):
            data[pos * r + a][j * r + a] = ring.one
    m = ExactMatrix._raw(ring, data)
    m.cols = src.length(k)
    return m


# ---------------------------------------------------------------------------
# fundamental classes
# ---------------------------------------------------------------------------

class FundamentalClassData:
    """A twisted top cycle plus access to its relative restrictions."""

    def __init__(self, base, ring, system, chain, label):
        self.base = base
        self.ring = ring
        self.system = system
        self.chain = chain
        self.label = label
        self._pc = pair_complex(base, system)

    @property
    def degree(self):
        return self.base.dimension

    def restriction(self, K: FullSubcomplex):
        """The image of the cycle in the relative pair C(M|K)."""
        rel = pair_complex(self.base, self.system, killed=relative_killed(self.base, K))
        n = self.degree
        proj = transfer_matrix(self._pc, rel, n)
        return proj.apply(self.chain)

    def relative_presentation(self, K: FullSubcomplex) -> HomologyPresentation:
        return homology(self.base, self.system, self.degree, K)

    def class_in(self, presentation: HomologyPresentation, K=None):
        vec = self.chain if K is None else self.restriction(K)
        coords = presentation.class_vector(vec)
        if coords is None:
            raise TwistcapError("fundamental chain is not a cycle in the pair")
        return coords


def fundamental_class_direct(M, ring, system=None) -> FundamentalClassData:
    """Assemble the twisted fundamental cycle facet by facet.

    Each facet enters with the sign comparing its canonical ordering against
    the reference orientation at its leading vertex.  With the orientation
    system this is always a cycle; with any other system the boundary defect
    is reported as a witness.
    """
    report = validate(M)
    if not report.closed_pseudomanifold:
        raise NotClosedPseudomanifold("fundamental classes need a closed pseudomanifold")
    if system is None:
        system = orientation_system(M, ring)
    pc = pair_complex(M, system)
    if pc.rank != 1:
        raise TwistcapError("fundamental cycles use a rank-1 system")
    n = M.dimension
    vec = [ring.zero] * pc.length(n)
    idx = pc.index(n)
    for facet in M.faces(n):
        sign = star_signs(M, facet[0])[facet]
        vec[idx[facet]] = ring.from_int(sign)
    vec = tuple(vec)
    defect = pc.boundary(n).apply(vec)
    if any(x != ring.zero for x in defect):
        raise NotAFundamentalCycle(
            "facet signs do not close up over this system", witness=defect)
    return FundamentalClassData(M, ring, system, vec, "direct")


def fundamental_class_via_cover(M, ring) -> FundamentalClassData:
    """Push the oriented double cover's fundamental cycle through phi."""
    if not ring.two_is_nonzero:
        raise TwoIsZero("the +/- splitting needs 2 != 0 in the ring")
    from . import covers  # local import: covers builds on this module

    omega = orientation_system(M, ring)
    cover = covers.build_double_cover(M, omega)
    orientation = covers.orient_cover(cover)
    z = orientation.cycle_vector(ring)

    total_pc = pair_complex(cover.total, constant_system(cover.total, ring))
    n = M.dimension
    tau = covers.deck_chain_matrix(cover, ring, n)
    if tau.apply(z) != tuple(ring.normalize(-x) for x in z):
        raise TwistcapError("deck transformation does not negate the cover cycle")

    base_pc = pair_complex(M, omega)
    idx_total = total_pc.index(n)
    vec = [ring.zero] * base_pc.length(n)
    for pos, facet in enumerate(M.faces(n)):
        rep = cover.canonical_lift(facet)
        parity = covers.projection_parity(cover, rep)
        coeff = z[idx_total[rep]]
        vec[pos] = ring.normalize(parity * coeff)
    return FundamentalClassData(M, ring, omega, tuple(vec), "via-cover")


def vertex_generator_check(nu: FundamentalClassData, vertex: int) -> bool:
    """The image of nu in H_n(M|{x}) generates that rank-one module."""
    K = FullSubcomplex(nu.base, {vertex})
    pres = nu.relative_presentation(K)
    coords = nu.class_in(pres, K)
    return pres.module.generates(coords)


def pushforward(cover, ring, K: FullSubcomplex | None = None) -> ModuleMap:
    """p_* on top relative homology, as a map of presented modules."""
    from . import covers as cov

    M = cover.base
    n = M.dimension
    const_total = constant_system(cover.total, ring)
    const_base = constant_system(M, ring)
    Ktilde = cov.lift_full_subcomplex(cover, K)
    top_pc = pair_complex(cover.total, const_total,
                          killed=relative_killed(cover.total, Ktilde))
    base_pc = pair_complex(M, const_base, killed=relative_killed(M, K))
    proj = cov.projection_chain_matrix(cover, ring, n, top_pc, base_pc)
    src = homology_presentation(top_pc.boundary(n + 1), top_pc.boundary(n))
    dst = homology_presentation(base_pc.boundary(n + 1), base_pc.boundary(n))
    return induced_map(proj, src, dst)


def inclusion_restriction(nu: FundamentalClassData, K1: FullSubcomplex,
                          K2: FullSubcomplex) -> bool:
    """Quotient-map image of nu_{K2} equals nu_{K1} in H_n(M|K1)."""
    if not K1.issubset(K2):
        raise TwistcapError("K1 must be contained in K2")
    M, n = nu.base, nu.degree
    pc2 = pair_complex(M, nu.system, killed=relative_killed(M, K2))
    pc1 = pair_complex(M, nu.system, killed=relative_killed(M, K1))
    proj = transfer_matrix(pc2, pc1, n)
    pres1 = homology_presentation(pc1.boundary(n + 1), pc1.boundary(n))
    image = proj.apply(nu.restriction(K2))
    a = pres1.class_vector(image)
    b = pres1.class_vector(nu.restriction(K1))
    if a is None or b is None:
        raise TwistcapError("restrictions are not cycles")
    return pres1.module.classes_equal(a, b)
