"""Flat local coefficient systems on a simplicial complex.

A system assigns an invertible transport matrix to every edge; flatness over
every triangle is the combinatorial composition law of a functor on the
fundamental groupoid.  Transports follow one direction convention everywhere:
``transport(u, v)`` carries the fiber at the *later* endpoint of the edge path
u -> v back to the fiber at u.  The reverse direction is always the stored
inverse.

The orientation system is the rank-1 sign system whose edge signs record
whether carrying a local orientation along the edge reverses it; it is
trivializable exactly when the complex is orientable.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .complexes import SimplicialComplex, star_signs, validate
from .errors import (BaseMismatch, NotClosedPseudomanifold, RingMismatch,
                     SystemFormatError, TwistcapError)
from .matrices import ExactMatrix, inverse, is_invertible, kernel
from .rings import Q, RingSpec, Zmod, parse_ring


class LocalSystem:
    __slots__ = ("base", "ring", "rank", "_transport", "_inverse_cache",
                 "_path_cache")

    def __init__(self, base: SimplicialComplex, ring: RingSpec, rank: int,
                 transport: dict):
        if rank < 1:
            raise TwistcapError("rank must be positive")
        edges = set(base.faces(1))
        cleaned = {}
        for edge, mat in transport.items():
            e = tuple(edge)
            if e not in edges:
                raise TwistcapError(f"{e} is not an edge of the base complex")
            if mat.ring != ring or mat.rows != rank or mat.cols != rank:
                raise TwistcapError(f"transport at {e} has wrong shape or ring")
            if not is_invertible(mat):
                raise TwistcapError(f"transport at {e} is not invertible")
            cleaned[e] = mat
        ident = ExactMatrix.identity(ring, rank)
        for e in edges:
            cleaned.setdefault(e, ident)
        self.base = base
        self.ring = ring
        self.rank = rank
        self._transport = cleaned
        self._inverse_cache = {}
        self._path_cache = {}

    def transport(self, u: int, v: int) -> ExactMatrix:
        """Fiber map fiber(v) -> fiber(u) along the edge between u and v."""
        if u < v:
            return self._transport[(u, v)]
        key = (v, u)
        cached = self._inverse_cache.get(key)
        if cached is None:
            cached = inverse(self._transport[key])
            self._inverse_cache[key] = cached
        return cached

    def path_transport(self, vertices) -> ExactMatrix:
        """Composite transport along consecutive vertices, later -> earlier."""
        key = tuple(vertices)
        cached = self._path_cache.get(key)
        if cached is None:
            cached = ExactMatrix.identity(self.ring, self.rank)
            for u, v in zip(key, key[1:]):
                cached = cached @ self.transport(u, v)
            self._path_cache[key] = cached
        return cached

    def edge_items(self):
        return sorted(self._transport.items())

    def is_sign_system(self) -> bool:
        if self.rank != 1:
            return False
        one = self.ring.one
        minus = self.ring.from_int(-1)
        return all(m.data[0][0] in (one, minus)
                   for m in self._transport.values())

    def edge_sign(self, u: int, v: int) -> int:
        """+-1 for rank-1 sign systems."""
        val = self.transport(u, v).data[0][0]
        return 1 if val == self.ring.one else -1

    def __repr__(self):
        return f"LocalSystem(rank={self.rank}, ring={self.ring})"


def constant_system(base, ring, rank=1) -> LocalSystem:
    key = ("constant_system", ring, rank)
    cached = base._cache.get(key)
    if cached is None:
        cached = LocalSystem(base, ring, rank, {})
        base._cache[key] = cached
    return cached


def validate_flatness(system: LocalSystem):
    """Check T[u<-v] @ T[v<-w] == T[u<-w] on every triangle.

    Returns (True, None) or (False, first failing 2-simplex).
    """
    for tri in system.base.faces(2):
        u, v, w = tri
        if system.transport(u, v) @ system.transport(v, w) != system.transport(u, w):
            return False, tri
    return True, None


def orientation_system(base, ring) -> LocalSystem:
    """The rank-1 orientation sign system of a closed pseudomanifold.

    The fiber at a vertex is calibrated by its reference facet; the edge sign
    compares that calibration across any facet containing the edge.  Flatness
    and independence of the facet choice are exercised by the tests.
    """
    key = ("orientation_system", ring)
    cached = base._cache.get(key)
    if cached is not None:
        return cached
    report = validate(base)
    if not report.closed_pseudomanifold:
        raise NotClosedPseudomanifold(
            "orientation system needs a closed pseudomanifold")
    transport = {}
    for (u, v) in base.faces(1):
        facet = _lowest_facet_containing(base, u, v)
        sign = star_signs(base, u)[facet] * star_signs(base, v)[facet]
        transport[(u, v)] = ExactMatrix(ring, [[ring.from_int(sign)]])
    system = LocalSystem(base, ring, 1, transport)
    base._cache[key] = system
    return system


def _lowest_facet_containing(base, u, v):
    for f in base.facets:
        if u in f and v in f:
            return f
    raise TwistcapError(f"edge ({u},{v}) lies in no facet")


def orientation_edge_signs(base):
    """Plain +-1 edge signs of the orientation system (ring-independent)."""
    cache = base._cache.get("orientation_signs")
    if cache is None:
        report = validate(base)
        if not report.closed_pseudomanifold:
            raise NotClosedPseudomanifold(
                "orientation signs need a closed pseudomanifold")
        cache = {}
        for (u, v) in base.faces(1):
            facet = _lowest_facet_containing(base, u, v)
            cache[(u, v)] = star_signs(base, u)[facet] * star_signs(base, v)[facet]
        base._cache["orientation_signs"] = cache
    return cache


def tensor(G: LocalSystem, Gp: LocalSystem) -> LocalSystem:
    if G.base != Gp.base:
        raise BaseMismatch("tensor factors live on different complexes")
    if G.ring != Gp.ring:
        raise RingMismatch("tensor factors over different rings")
    transport = {e: G._transport[e].kron(Gp._transport[e])
                 for e in G.base.faces(1)}
    return LocalSystem(G.base, G.ring, G.rank * Gp.rank, transport)


def holonomy(system: LocalSystem, loop) -> ExactMatrix:
    """Ordered product of edge transports around a closed vertex loop."""
    loop = list(loop)
    if loop[0] != loop[-1]:
        loop = loop + [loop[0]]
    return system.path_transport(loop)


@dataclass(frozen=True)
class Holonomy:
    loop: tuple
    matrix: ExactMatrix

    @classmethod
    def around(cls, system: LocalSystem, loop) -> "Holonomy":
        loop = tuple(loop)
        return cls(loop, holonomy(system, loop))


def gauge_transform(system: LocalSystem, gauge: dict) -> LocalSystem:
    """Change fiber bases: T'[u<-v] = g_u^{-1} @ T[u<-v] @ g_v."""
    inv = {v: inverse(g) for v, g in gauge.items()}
    ident = ExactMatrix.identity(system.ring, system.rank)
    transport = {}
    for (u, v), mat in system._transport.items():
        gu = inv.get(u, ident)
        gv = gauge.get(v, ident)
        transport[(u, v)] = gu @ mat @ gv
    return LocalSystem(system.base, system.ring, system.rank, transport)


def is_trivializable(system: LocalSystem):
    """Spanning-tree gauge fixing.

    Returns (True, gauge) where the gauge turns every transport into the
    identity, or (False, None) when some non-tree edge survives.
    """
    base = system.base
    ident = ExactMatrix.identity(system.ring, system.rank)
    gauge = {}
    adj = {v: [] for v in range(base.vertex_count)}
    for (u, v) in base.faces(1):
        adj[u].append(v)
        adj[v].append(u)
    for root in range(base.vertex_count):
        if root in gauge:
            continue
        gauge[root] = ident
        stack = [root]
        while stack:
            u = stack.pop()
            for v in adj[u]:
                if v not in gauge:
                    # make the tree edge's gauged transport the identity
                    gauge[v] = inverse(system.transport(u, v)) @ gauge[u]
                    stack.append(v)
    gauged = gauge_transform(system, gauge)
    for _, mat in gauged.edge_items():
        if mat != ident:
            return False, None
    return True, gauge


# ---------------------------------------------------------------------------
# seeded random flat systems
# ---------------------------------------------------------------------------

def random_sign_cocycle(base: SimplicialComplex, seed: int) -> dict:
    """A random +-1 edge assignment whose product around every triangle is +1.

    Solutions form the mod-2 cocycle space: kernel of the triangle-edge
    incidence matrix over Z/2.  A seeded combination of kernel generators is
    returned as a dict edge -> sign.
    """
    edges = base.faces(1)
    eidx = base.face_index(1)
    tris = base.faces(2)
    ring2 = Zmod(2)
    if tris:
        rows = [[0] * len(edges) for _ in tris]
        for i, (u, v, w) in enumerate(tris):
            for e in ((u, v), (v, w), (u, w)):
                rows[i][eidx[e]] = 1
        K = kernel(ExactMatrix(ring2, rows))
    else:
        K = ExactMatrix.identity(ring2, len(edges))
    rng = random.Random(seed)
    combo = [0] * len(edges)
    for j in range(K.cols):
        if rng.randrange(2):
            col = K.column(j)
            combo = [(a + b) % 2 for a, b in zip(combo, col)]
    return {e: (-1 if combo[eidx[e]] else 1) for e in edges}


def _random_gauge_matrix(ring, rank, rng) -> ExactMatrix:
    """A unit-determinant matrix built from a few elementary operations."""
    rows = [[ring.one if i == j else ring.zero for j in range(rank)]
            for i in range(rank)]
    m = ExactMatrix(ring, rows)
    for _ in range(3):
        i = rng.randrange(rank)
        j = rng.randrange(rank)
        if i == j:
            continue
        coeff = ring.from_int(rng.choice((-2, -1, 1, 2)))
        elem = [[ring.one if a == b else ring.zero for b in range(rank)]
                for a in range(rank)]
        elem[i][j] = coeff
        m = m @ ExactMatrix(ring, elem)
    return m


def random_flat_system(base, ring, rank, seed) -> LocalSystem:
    """Seeded flat system: a direct sum of random sign cocycles conjugated by
    a random vertex gauge.  Flatness is inherited from the cocycle condition
    and preserved by the gauge."""
    rng = random.Random((seed, rank, str(ring)).__repr__())
    signs = [random_sign_cocycle(base, rng.randrange(2 ** 30))
             for _ in range(rank)]
    transport = {}
    for e in base.faces(1):
        diag = [[ring.from_int(signs[i][e]) if i == j else ring.zero
                 for j in range(rank)] for i in range(rank)]
        transport[e] = ExactMatrix(ring, diag)
    system = LocalSystem(base, ring, rank, transport)
    if rank == 1:
        return system
    gauge = {v: _random_gauge_matrix(ring, rank, rng)
             for v in range(base.vertex_count)}
    return gauge_transform(system, gauge)


# ---------------------------------------------------------------------------
# file format
# ---------------------------------------------------------------------------

def loads_local_system(text: str, base: SimplicialComplex) -> LocalSystem:
    ring = None
    rank = None
    transport = {}
    pending_edge = None
    pending_rows = []
    pending_line = 0

    def flush():
        nonlocal pending_edge, pending_rows
        if pending_edge is not None:
            if len(pending_rows) != rank:
                raise SystemFormatError(
                    pending_line, f"edge block needs {rank} rows")
            transport[pending_edge] = ExactMatrix(ring, pending_rows)
            pending_edge, pending_rows = None, []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if tokens[0] == "ring":
            if ring is not None:
                raise SystemFormatError(lineno, "duplicate ring line")
            try:
                ring = parse_ring(" ".join(tokens[1:]))
            except TwistcapError as exc:
                raise SystemFormatError(lineno, str(exc))
            continue
        if tokens[0] == "rank":
            if rank is not None:
                raise SystemFormatError(lineno, "duplicate rank line")
            if len(tokens) != 2 or not tokens[1].isdigit() or int(tokens[1]) < 1:
                raise SystemFormatError(lineno, "rank must be a positive integer")
            rank = int(tokens[1])
            continue
        if tokens[0] == "edge":
            if ring is None or rank is None:
                raise SystemFormatError(lineno, "ring and rank must precede edges")
            flush()
            if len(tokens) != 3:
                raise SystemFormatError(lineno, "expected 'edge u v'")
            try:
                u, v = int(tokens[1]), int(tokens[2])
            except ValueError:
                raise SystemFormatError(lineno, "edge endpoints must be integers")
            if not u < v:
                raise SystemFormatError(lineno, "edge endpoints must satisfy u < v")
            if (u, v) not in base.face_index(1):
                raise SystemFormatError(lineno, f"({u},{v}) is not an edge of the complex")
            if (u, v) in transport:
                raise SystemFormatError(lineno, f"duplicate edge ({u},{v})")
            pending_edge = (u, v)
            pending_line = lineno
            pending_rows = []
            continue
        if pending_edge is None:
            raise SystemFormatError(lineno, f"unexpected line {line!r}")
        if len(tokens) != rank:
            raise SystemFormatError(lineno, f"matrix row needs {rank} entries")
        row = []
        for t in tokens:
            try:
                row.append(_parse_entry(t, ring))
            except ValueError:
                raise SystemFormatError(lineno, f"bad ring element {t!r}")
        pending_rows.append(row)
        if len(pending_rows) == rank:
            flush()
    flush()
    if ring is None or rank is None:
        raise SystemFormatError(0, "missing ring or rank header")
    try:
        return LocalSystem(base, ring, rank, transport)
    except TwistcapError as exc:
        raise SystemFormatError(0, str(exc))


def _parse_entry(token: str, ring: RingSpec):
    if "/" in token:
        if ring != Q:
            raise ValueError(token)
        num, den = token.split("/", 1)
        return Fraction(int(num), int(den))
    return ring.normalize(int(token))


def load_local_system(path, base) -> LocalSystem:
    with open(path, "r", encoding="utf-8") as fh:
        return loads_local_system(fh.read(), base)


def dumps_local_system(system: LocalSystem) -> str:
    ring = system.ring
    if ring == Q:
        head = "ring Q"
    elif ring.kind == "Zmod":
        head = f"ring Zmod {ring.modulus}"
    else:
        head = "ring Z"
    lines = [head, f"rank {system.rank}"]
    ident = ExactMatrix.identity(ring, system.rank)
    for (u, v), mat in system.edge_items():
        if mat == ident:
            continue
        lines.append(f"edge {u} {v}")
        for row in mat.data:
            lines.append(" ".join(str(x) for x in row))
    return "\n".join(lines) + "\n"
