"""Finite abstract simplicial complexes and the built-in manifold corpus.

Vertices are 0..n-1 with their natural order; every simplex is stored as an
ascending tuple, so each simplex has exactly one canonical ordering.  That
single convention is what later makes boundary signs, cap products and chain
maps unambiguous.

Closed-pseudomanifold validation, dual-graph walks comparing local
orientations, full subcomplexes and their complements, and a fixed corpus of
triangulated manifolds all live here.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import (ComplexFormatError, DisconnectedStar, NotInStar,
                     TwistcapError, UnknownName)


class SimplicialComplex:
    """Abstract complex, closed under faces, immutable after construction."""

    def __init__(self, vertex_count: int, simplices):
        if vertex_count <= 0:
            raise TwistcapError("vertex_count must be positive")
        self.vertex_count = vertex_count
        by_dim: dict[int, set] = {}
        gens = set()
        for s in simplices:
            t = tuple(sorted(set(s)))
            if len(t) != len(tuple(s)):
                raise TwistcapError(f"repeated vertex in simplex {tuple(s)}")
            if not t:
                raise TwistcapError("empty simplex")
            if t[0] < 0 or t[-1] >= vertex_count:
                raise TwistcapError(f"vertex out of range in {t}")
            gens.add(t)
        for t in gens:
            for size in range(1, len(t) + 1):
                for f in combinations(t, size):
                    by_dim.setdefault(size - 1, set()).add(f)
        if not by_dim:
            raise TwistcapError("complex needs at least one simplex")
        covered = {v for (v,) in by_dim.get(0, ())}
        if covered != set(range(vertex_count)):
            missing = sorted(set(range(vertex_count)) - covered)
            raise TwistcapError(f"vertices {missing} lie in no simplex")
        self._faces = {k: tuple(sorted(v)) for k, v in by_dim.items()}
        self._index = {k: {s: i for i, s in enumerate(fs)}
                       for k, fs in self._faces.items()}
        self.dimension = max(self._faces)
        maximal = set()
        for k in sorted(self._faces, reverse=True):
            for s in self._faces[k]:
                if not any(set(s) < set(m) for m in maximal):
                    maximal.add(s)
        self.maximal_simplices = frozenset(maximal)
        self._cache: dict = {}

    # -- queries -----------------------------------------------------------

    def faces(self, k: int):
        return self._faces.get(k, ())

    def face_index(self, k: int):
        return self._index.get(k, {})

    @property
    def facets(self):
        """Top-dimensional faces (equal to the maximal ones when pure)."""
        return self.faces(self.dimension)

    def __contains__(self, simplex):
        t = tuple(simplex)
        return self._index.get(len(t) - 1, {}).get(t) is not None

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * len(fs) for k, fs in self._faces.items())

    def f_vector(self):
        return tuple(len(self.faces(k)) for k in range(self.dimension + 1))

    def __eq__(self, other):
        return (isinstance(other, SimplicialComplex)
                and self.vertex_count == other.vertex_count
                and self.maximal_simplices == other.maximal_simplices)

    def __hash__(self):
        return hash((self.vertex_count, self.maximal_simplices))

    def __repr__(self):
        return (f"SimplicialComplex(dim={self.dimension}, "
                f"f={self.f_vector()})")

    # -- derived structure ---------------------------------------------------

    def ridge_to_facets(self):
        """Map (n-1)-face -> tuple of containing n-faces."""
        cached = self._cache.get("ridge_map")
        if cached is None:
            n = self.dimension
            m: dict[tuple, list] = {r: [] for r in self.faces(n - 1)}
            for f in self.faces(n):
                for i in range(len(f)):
                    m[f[:i] + f[i + 1:]].append(f)
            cached = {r: tuple(fs) for r, fs in m.items()}
            self._cache["ridge_map"] = cached
        return cached

    def facet_adjacency(self):
        """Facet -> list of (neighbour facet, shared ridge)."""
        cached = self._cache.get("facet_adjacency")
        if cached is None:
            adj = {f: [] for f in self.facets}
            for ridge, fs in self.ridge_to_facets().items():
                if len(fs) == 2:
                    a, b = fs
                    adj[a].append((b, ridge))
                    adj[b].append((a, ridge))
            cached = {f: tuple(v) for f, v in adj.items()}
            self._cache["facet_adjacency"] = cached
        return cached

    def vertex_link(self, v: int):
        """The link of v, relabelled to its own ascending vertex set."""
        link_faces = set()
        verts = set()
        for k, fs in self._faces.items():
            if k == 0:
                continue
            for s in fs:
                if v in s:
                    t = tuple(x for x in s if x != v)
                    link_faces.add(t)
                    verts.update(t)
        if not link_faces:
            return None
        order = {x: i for i, x in enumerate(sorted(verts))}
        return SimplicialComplex(len(order),
                                 [tuple(order[x] for x in s) for s in link_faces])


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ManifoldReport:
    dimension: int
    is_pure: bool
    each_ridge_in_two_facets: bool
    dual_graph_connected: bool
    links_validated: bool
    euler_characteristic: int

    @property
    def closed_pseudomanifold(self) -> bool:
        return (self.is_pure and self.each_ridge_in_two_facets
                and self.dual_graph_connected)


def validate(complex: SimplicialComplex) -> ManifoldReport:
    cached = complex._cache.get("report")
    if cached is not None:
        return cached
    n = complex.dimension
    is_pure = all(len(s) == n + 1 for s in complex.maximal_simplices)
    ridge_ok = all(len(fs) == 2 for fs in complex.ridge_to_facets().values()) \
        if n >= 1 else False
    connected = _facets_connected(complex)
    links_ok = all(_link_is_closed_pm(complex.vertex_link(v), n - 1)
                   for v in range(complex.vertex_count)) if n >= 1 else False
    report = ManifoldReport(n, is_pure, ridge_ok, connected, links_ok,
                            complex.euler_characteristic())
    complex._cache["report"] = report
    return report


def _facets_connected(complex) -> bool:
    facets = complex.facets
    if not facets:
        return False
    adj = complex.facet_adjacency()
    seen = {facets[0]}
    stack = [facets[0]]
    while stack:
        f = stack.pop()
        for g, _ in adj[f]:
            if g not in seen:
                seen.add(g)
                stack.append(g)
    return len(seen) == len(facets)


def _link_is_closed_pm(link, expected_dim) -> bool:
    if link is None:
        return False
    if expected_dim == 0:
        return (link.dimension == 0 and link.vertex_count == 2)
    if link.dimension != expected_dim:
        return False
    if not all(len(s) == expected_dim + 1 for s in link.maximal_simplices):
        return False
    if not all(len(fs) == 2 for fs in link.ridge_to_facets().values()):
        return False
    if not _facets_connected(link):
        return False
    return all(_link_is_closed_pm(link.vertex_link(v), expected_dim - 1)
               for v in range(link.vertex_count))


@dataclass(frozen=True)
class DualGraph:
    """Facet-adjacency graph; edges are labelled by the shared ridge."""
    nodes: tuple
    edges: tuple  # (facet_a, facet_b, ridge) with facet_a < facet_b

    def ridge_labels_unique(self) -> bool:
        labels = [ridge for _, _, ridge in self.edges]
        return len(labels) == len(set(labels))


def dual_graph(complex: SimplicialComplex) -> DualGraph:
    edges = []
    for ridge, facets in complex.ridge_to_facets().items():
        if len(facets) == 2:
            a, b = sorted(facets)
            edges.append((a, b, ridge))
    return DualGraph(tuple(complex.facets), tuple(sorted(edges)))


# ---------------------------------------------------------------------------
# orientation walks in vertex stars
# ---------------------------------------------------------------------------

def _ridge_sign(facet, ridge):
    """(-1)^i where facet drops its i-th vertex to give the ridge."""
    for i, v in enumerate(facet):
        if v not in ridge:
            return -1 if i % 2 else 1
    raise TwistcapError(f"{ridge} is not a ridge of {facet}")


def star_component_walk(complex, vertex, facet_a, facet_b):
    """Relative orientation sign between two facets of a vertex star.

    Walks the dual graph restricted to facets containing `vertex`, flipping
    the sign across each ridge according to whether the boundary-induced
    orientations agree.  Path independence holds in manifold stars and is
    exercised by the tests.
    """
    fa, fb = tuple(facet_a), tuple(facet_b)
    for f in (fa, fb):
        if vertex not in f or f not in complex.face_index(complex.dimension):
            raise NotInStar(f"facet {f} does not contain vertex {vertex}")
    signs = _star_signs_from(complex, vertex, fa)
    if fb not in signs:
        raise DisconnectedStar(
            f"facets {fa} and {fb} lie in different components of star({vertex})")
    return signs[fb]


def _star_signs_from(complex, vertex, start):
    adj = complex.facet_adjacency()
    signs = {start: 1}
    stack = [start]
    while stack:
        f = stack.pop()
        s = signs[f]
        for g, ridge in adj[f]:
            if vertex not in g or vertex not in ridge:
                continue
            t = -s * _ridge_sign(f, ridge) * _ridge_sign(g, ridge)
            if g in signs:
                if signs[g] != t:
                    raise DisconnectedStar(
                        f"star of vertex {vertex} is not orientably consistent")
            else:
                signs[g] = t
                stack.append(g)
    return signs


def star_signs(complex, vertex):
    """Signs of every facet in star(vertex) against the reference facet.

    The reference is the lexicographically first facet containing the vertex;
    this fixed choice calibrates orientation fibers across the library.
    """
    cache = complex._cache.setdefault("star_signs", {})
    if vertex not in cache:
        ref = reference_facet(complex, vertex)
        cache[vertex] = _star_signs_from(complex, vertex, ref)
    return cache[vertex]


def reference_facet(complex, vertex):
    for f in complex.facets:
        if vertex in f:
            return f
    raise NotInStar(f"vertex {vertex} lies in no facet")


# ---------------------------------------------------------------------------
# subcomplexes
# ---------------------------------------------------------------------------

class Subcomplex:
    """A face-closed set of simplices of an ambient complex."""

    __slots__ = ("ambient", "_faces")

    def __init__(self, ambient: SimplicialComplex, simplices):
        closure: dict[int, set] = {}
        for s in simplices:
            t = tuple(s)
            if t not in ambient:
                raise TwistcapError(f"{t} is not a simplex of the ambient complex")
            for size in range(1, len(t) + 1):
                for f in combinations(t, size):
                    closure.setdefault(size - 1, set()).add(f)
        self.ambient = ambient
        self._faces = {k: frozenset(v) for k, v in closure.items()}

    def faces(self, k):
        return self._faces.get(k, frozenset())

    def all_faces(self):
        for k in sorted(self._faces):
            yield from sorted(self._faces[k])

    def contains(self, simplex) -> bool:
        t = tuple(simplex)
        return t in self._faces.get(len(t) - 1, ())

    def is_empty(self) -> bool:
        return not self._faces

    def union(self, other: "Subcomplex") -> "Subcomplex":
        self._check(other)
        out = Subcomplex.__new__(Subcomplex)
        out.ambient = self.ambient
        keys = set(self._faces) | set(other._faces)
        out._faces = {k: self.faces(k) | other.faces(k) for k in keys}
        return out

    def intersection(self, other: "Subcomplex") -> "Subcomplex":
        self._check(other)
        out = Subcomplex.__new__(Subcomplex)
        out.ambient = self.ambient
        faces = {}
        for k in set(self._faces) & set(other._faces):
            common = self.faces(k) & other.faces(k)
            if common:
                faces[k] = common
        out._faces = faces
        return out

    def issubset(self, other: "Subcomplex") -> bool:
        return all(self.faces(k) <= other.faces(k) for k in self._faces)

    def _check(self, other):
        if self.ambient != other.ambient:
            raise TwistcapError("subcomplexes of different ambient complexes")

    def __eq__(self, other):
        return (isinstance(other, Subcomplex) and self.ambient == other.ambient
                and self._faces == other._faces)

    def __hash__(self):
        return hash((self.ambient,
                     tuple(sorted((k, tuple(sorted(v)))
                                  for k, v in self._faces.items()))))

    def vertices(self):
        return frozenset(v for (v,) in self.faces(0))


def empty_subcomplex(ambient) -> Subcomplex:
    s = Subcomplex.__new__(Subcomplex)
    s.ambient = ambient
    s._faces = {}
    return s


def whole_subcomplex(ambient) -> Subcomplex:
    return Subcomplex(ambient, ambient.maximal_simplices)


def closed_star(ambient, vertex_set) -> Subcomplex:
    vs = set(vertex_set)
    gens = [s for k in range(ambient.dimension + 1)
            for s in ambient.faces(k) if vs.intersection(s)]
    if not gens:
        return empty_subcomplex(ambient)
    return Subcomplex(ambient, gens)


class FullSubcomplex:
    """All ambient simplices spanned by a chosen vertex subset."""

    __slots__ = ("ambient", "vertex_subset")

    def __init__(self, ambient: SimplicialComplex, vertex_subset):
        vs = frozenset(vertex_subset)
        for v in vs:
            if not (0 <= v < ambient.vertex_count):
                raise TwistcapError(f"vertex {v} out of range")
        self.ambient = ambient
        self.vertex_subset = vs

    def simplices(self, k):
        vs = self.vertex_subset
        return tuple(s for s in self.ambient.faces(k) if vs.issuperset(s))

    def contains(self, simplex) -> bool:
        return self.vertex_subset.issuperset(simplex)

    def complement(self) -> "FullSubcomplex":
        rest = frozenset(range(self.ambient.vertex_count)) - self.vertex_subset
        return FullSubcomplex(self.ambient, rest)

    def as_subcomplex(self) -> Subcomplex:
        gens = [s for k in range(self.ambient.dimension + 1)
                for s in self.simplices(k)]
        if not gens:
            return empty_subcomplex(self.ambient)
        return Subcomplex(self.ambient, gens)

    def issubset(self, other: "FullSubcomplex") -> bool:
        return (self.ambient == other.ambient
                and self.vertex_subset <= other.vertex_subset)

    def __eq__(self, other):
        return (isinstance(other, FullSubcomplex)
                and self.ambient == other.ambient
                and self.vertex_subset == other.vertex_subset)

    def __hash__(self):
        return hash((self.ambient, self.vertex_subset))

    def __repr__(self):
        return f"FullSubcomplex({sorted(self.vertex_subset)})"


def complement(K: FullSubcomplex) -> FullSubcomplex:
    return K.complement()


# ---------------------------------------------------------------------------
# file format
# ---------------------------------------------------------------------------

def loads_complex(text: str) -> SimplicialComplex:
    declared_dim = None
    simplices = []
    max_vertex = -1
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if declared_dim is None:
            if tokens[0] != "dim" or len(tokens) != 2:
                raise ComplexFormatError(lineno, "expected 'dim <n>'")
            try:
                declared_dim = int(tokens[1])
            except ValueError:
                raise ComplexFormatError(lineno, f"bad dimension {tokens[1]!r}")
            if declared_dim < 0:
                raise ComplexFormatError(lineno, "dimension must be >= 0")
            continue
        if tokens[0] != "simplex":
            raise ComplexFormatError(lineno, f"expected 'simplex ...', got {tokens[0]!r}")
        try:
            verts = [int(t) for t in tokens[1:]]
        except ValueError:
            raise ComplexFormatError(lineno, "vertices must be integers")
        if not verts:
            raise ComplexFormatError(lineno, "empty simplex")
        if any(v < 0 for v in verts):
            raise ComplexFormatError(lineno, "vertices must be non-negative")
        if any(a >= b for a, b in zip(verts, verts[1:])):
            raise ComplexFormatError(lineno, "vertices must be strictly ascending")
        if len(verts) > declared_dim + 1:
            raise ComplexFormatError(
                lineno, f"simplex of dimension {len(verts) - 1} exceeds dim {declared_dim}")
        simplices.append(tuple(verts))
        max_vertex = max(max_vertex, verts[-1])
    if declared_dim is None:
        raise ComplexFormatError(0, "missing 'dim <n>' header")
    if not simplices:
        raise ComplexFormatError(0, "no simplices listed")
    try:
        cx = SimplicialComplex(max_vertex + 1, simplices)
    except TwistcapError as exc:
        raise ComplexFormatError(0, str(exc))
    if cx.dimension != declared_dim:
        raise ComplexFormatError(
            0, f"declared dim {declared_dim} but simplices have dimension {cx.dimension}")
    return cx


def load_complex(path) -> SimplicialComplex:
    with open(path, "r", encoding="utf-8") as fh:
        return loads_complex(fh.read())


def dumps_complex(complex: SimplicialComplex) -> str:
    lines = [f"dim {complex.dimension}"]
    for s in sorted(complex.maximal_simplices, key=lambda t: (len(t), t)):
        lines.append("simplex " + " ".join(str(v) for v in s))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# corpus
# ---------------------------------------------------------------------------

_CORPUS_NAMES = ("circle", "sphere2", "torus", "rp2", "klein", "rp3", "sphere3")

_RP2_FACETS = ((0, 1, 4), (0, 1, 5), (0, 2, 3), (0, 2, 4), (0, 3, 5),
               (1, 2, 3), (1, 2, 5), (1, 3, 4), (2, 4, 5), (3, 4, 5))


def _grid_torus(nx: int, ny: int) -> SimplicialComplex:
    def vid(x, y):
        return (y % ny) * nx + (x % nx)

    tris = []
    cells = {}
    for x in range(nx):
        for y in range(ny):
            a, b = vid(x, y), vid(x + 1, y)
            c, d = vid(x, y + 1), vid(x + 1, y + 1)
            pair = (tuple(sorted((a, b, d))), tuple(sorted((a, d, c))))
            cells[(x, y)] = pair
            tris.extend(pair)
    cx = SimplicialComplex(nx * ny, tris)
    cx._cache["grid_cells"] = cells
    return cx


def _grid_klein(nx: int, ny: int) -> SimplicialComplex:
    # x wraps with a flip in y, y wraps straight:
    # (nx, y) ~ (0, -y), (x, ny) ~ (x, 0)
    def vid(x, y):
        if x >= nx:
            x -= nx
            y = -y
        return (y % ny) * nx + x

    tris = []
    cells = {}
    for x in range(nx):
        for y in range(ny):
            a, b = vid(x, y), vid(x + 1, y)
            c, d = vid(x, y + 1), vid(x + 1, y + 1)
            pair = (tuple(sorted((a, b, d))), tuple(sorted((a, d, c))))
            cells[(x, y)] = pair
            tris.extend(pair)
    cx = SimplicialComplex(nx * ny, tris)
    cx._cache["grid_cells"] = cells
    return cx


def _octahedron() -> SimplicialComplex:
    # opposite vertex pairs (0,1), (2,3), (4,5)
    tris = [(a, b, c) for a in (0, 1) for b in (2, 3) for c in (4, 5)]
    return SimplicialComplex(6, tris)


def _torus7() -> SimplicialComplex:
    tris = set()
    for i in range(7):
        tris.add(tuple(sorted((i, (i + 1) % 7, (i + 3) % 7))))
        tris.add(tuple(sorted((i, (i + 2) % 7, (i + 3) % 7))))
    return SimplicialComplex(7, tris)


# Real projective 3-space, frozen from tools/make_rp3.py: the antipodal
# quotient of the barycentrically subdivided 16-cell boundary, shrunk by
# admissible edge contractions.  Validated by the test suite (closed
# orientable pseudomanifold, H_* = [Z, Z/2, 0, Z]).
_RP3_FACETS = (
    (0, 1, 2, 3), (0, 1, 2, 6), (0, 1, 3, 5), (0, 1, 5, 9),
    (0, 1, 6, 9), (0, 2, 3, 4), (0, 2, 4, 8), (0, 2, 6, 8),
    (0, 3, 4, 7), (0, 3, 5, 7), (0, 4, 7, 10), (0, 4, 8, 10),
    (0, 5, 7, 10), (0, 5, 9, 10), (0, 6, 8, 10), (0, 6, 9, 10),
    (1, 2, 3, 10), (1, 2, 6, 7), (1, 2, 7, 10), (1, 3, 5, 8),
    (1, 3, 8, 10), (1, 4, 5, 8), (1, 4, 5, 9), (1, 4, 6, 7),
    (1, 4, 6, 9), (1, 4, 7, 10), (1, 4, 8, 10), (2, 3, 4, 9),
    (2, 3, 9, 10), (2, 4, 5, 8), (2, 4, 5, 9), (2, 5, 6, 7),
    (2, 5, 6, 8), (2, 5, 7, 10), (2, 5, 9, 10), (3, 4, 6, 7),
    (3, 4, 6, 9), (3, 5, 6, 7), (3, 5, 6, 8), (3, 6, 8, 10),
    (3, 6, 9, 10),
)


def _rp3() -> SimplicialComplex:
    verts = 1 + max(v for f in _RP3_FACETS for v in f)
    return SimplicialComplex(verts, _RP3_FACETS)


_corpus_cache: dict[str, SimplicialComplex] = {}


def corpus(name: str) -> SimplicialComplex:
    """A validated, version-stable triangulation from the built-in corpus."""
    if name not in _CORPUS_NAMES:
        raise UnknownName(f"unknown corpus entry {name!r}; "
                          f"choose from {', '.join(_CORPUS_NAMES)}")
    if name not in _corpus_cache:
        if name == "circle":
            cx = SimplicialComplex(3, [(0, 1), (1, 2), (0, 2)])
        elif name == "sphere2":
            cx = SimplicialComplex(4, combinations(range(4), 3))
        elif name == "sphere3":
            cx = SimplicialComplex(5, combinations(range(5), 4))
        elif name == "torus":
            cx = _torus7()
        elif name == "rp2":
            cx = SimplicialComplex(6, _RP2_FACETS)
        elif name == "klein":
            cx = _grid_klein(3, 3)
        else:
            cx = _rp3()
        _corpus_cache[name] = cx
    return _corpus_cache[name]


_EXTRA_NAMES = ("octahedron", "torus4", "klein4")
_extra_cache: dict[str, SimplicialComplex] = {}


def named_complex(name: str) -> SimplicialComplex:
    """Corpus entries plus the auxiliary complexes used by cover checks."""
    if name in _CORPUS_NAMES:
        return corpus(name)
    if name not in _EXTRA_NAMES:
        raise UnknownName(f"unknown complex {name!r}")
    if name not in _extra_cache:
        if name == "octahedron":
            _extra_cache[name] = _octahedron()
        elif name == "torus4":
            _extra_cache[name] = _grid_torus(4, 4)
        else:
            _extra_cache[name] = _grid_klein(4, 3)
    return _extra_cache[name]
