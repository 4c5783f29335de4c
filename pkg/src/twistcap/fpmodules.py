"""Finitely presented modules, induced maps, and isomorphism certificates.

An FPModule is generators plus a relation matrix; its normal form (free rank
and divisibility-chain torsion) comes from the Smith form of the relations and
is the notion of equality used everywhere.  A HomologyPresentation adds the
lifting data -- a generating set of cycles in chain coordinates -- so that
homology classes can be moved between the abstract module and actual chains.

Maps between presented modules are matrices on generators carrying a witness
that relations land in relations.  is_isomorphism certifies bijectivity with a
two-sided inverse, or returns an explicit kernel/cokernel witness.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import CompositionNonzero, NotChainMap, TwistcapError
from .matrices import (ExactMatrix, SmithSolver, kernel, kernel_with_relations,
                       smith_normal_form)
from .rings import INTEGERS, MODULAR, RingSpec


class FPModule:
    """Module given by generators and relations, normalized eagerly."""

    def __init__(self, ring: RingSpec, generator_count: int,
                 relations: ExactMatrix | None = None):
        if relations is None:
            relations = ExactMatrix.zeros(ring, generator_count, 0)
        if relations.rows != generator_count or relations.ring != ring:
            raise TwistcapError("relation matrix shape/ring mismatch")
        self.ring = ring
        self.generator_count = generator_count
        self.relations = relations
        snf = smith_normal_form(relations)
        diag = [d for d in snf.diagonal() if d != ring.zero]
        self.free_rank = generator_count - len(diag)
        self.torsion = tuple(ring.canonical_generator(d) for d in diag
                             if not ring.is_unit(d))
        self._rel_solver = SmithSolver(relations)

    @property
    def normal_form(self):
        return (self.free_rank, self.torsion)

    def __eq__(self, other):
        return (isinstance(other, FPModule) and self.ring == other.ring
                and self.normal_form == other.normal_form)

    def __hash__(self):
        return hash((self.ring, self.normal_form))

    def __str__(self):
        ring = self.ring
        if ring.kind == INTEGERS:
            free = "Z"
        elif ring.kind == MODULAR:
            free = f"Z/{ring.modulus}"
        else:
            free = "Q"
        parts = []
        if self.free_rank == 1:
            parts.append(free)
        elif self.free_rank > 1:
            base = f"({free})" if "/" in free else free
            parts.append(f"{base}^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"<FPModule {self} over {self.ring}>"

    @property
    def is_trivial(self):
        return self.free_rank == 0 and not self.torsion

    # -- class arithmetic on generator coordinates -----------------------

    def is_zero_class(self, coords) -> bool:
        return self._rel_solver.solve_vector(coords) is not None

    def classes_equal(self, a, b) -> bool:
        diff = [self.ring.normalize(x - y) for x, y in zip(a, b)]
        return self.is_zero_class(diff)

    def generates(self, coords) -> bool:
        """True when the single class `coords` generates the whole module."""
        col = ExactMatrix.from_columns(self.ring, [coords], self.generator_count)
        stacked = ExactMatrix.hstack([col, self.relations])
        snf = smith_normal_form(stacked)
        diag = snf.diagonal()
        units = sum(1 for d in diag if self.ring.is_unit(d))
        return units == self.generator_count


class HomologyPresentation:
    """FPModule together with a cycle basis in chain coordinates."""

    def __init__(self, module: FPModule, cycles: ExactMatrix,
                 d_in: ExactMatrix, d_out: ExactMatrix):
        self.module = module
        self.cycles = cycles
        self.d_in = d_in
        self.d_out = d_out
        self._cycle_solver = SmithSolver(cycles)
        self._d_in_solver = None

    @property
    def ring(self):
        return self.module.ring

    @property
    def chain_rank(self):
        return self.cycles.rows

    def class_vector(self, chain):
        """Coordinates of a cycle on the module generators; None if not a cycle."""
        return self._cycle_solver.solve_vector(chain)

    def chain_of_class(self, coords):
        return self.cycles.apply(coords)

    def is_cycle(self, chain) -> bool:
        z = self.ring.zero
        return all(x == z for x in self.d_out.apply(chain))

    def is_zero_class(self, chain) -> bool:
        coords = self.class_vector(chain)
        if coords is None:
            raise TwistcapError("chain is not a cycle")
        return self.module.is_zero_class(coords)

    def chains_homologous(self, a, b) -> bool:
        diff = tuple(self.ring.normalize(x - y) for x, y in zip(a, b))
        return self.is_zero_class(diff)

    def boundary_solver(self) -> SmithSolver:
        if self._d_in_solver is None:
            self._d_in_solver = SmithSolver(self.d_in)
        return self._d_in_solver


def homology_presentation(d_in: ExactMatrix, d_out: ExactMatrix) -> HomologyPresentation:
    """ker(d_out) / im(d_in) as a presented module with cycle lifts."""
    if d_in.ring != d_out.ring:
        raise TwistcapError("boundary matrices over different rings")
    if d_out.cols != d_in.rows:
        raise TwistcapError("middle chain dimension mismatch")
    if not (d_out @ d_in).is_zero():
        raise CompositionNonzero("d_out @ d_in != 0")
    ring = d_in.ring
    K, Krel = kernel_with_relations(d_out)
    X = SmithSolver(K).solve_matrix(d_in)
    if X is None:
        raise TwistcapError("image does not lie in the kernel generators")
    relations = ExactMatrix.hstack([X, Krel])
    module = FPModule(ring, K.cols, relations)
    return HomologyPresentation(module, K, d_in, d_out)


@dataclass(frozen=True)
class ModuleMap:
    source: FPModule
    target: FPModule
    matrix: ExactMatrix
    witness: ExactMatrix | None = None

    def apply(self, coords):
        return self.matrix.apply(coords)

    def compose(self, other: "ModuleMap") -> "ModuleMap":
        """self after other (matrix product self @ other)."""
        if other.target is not self.source and other.target != self.source:
            raise TwistcapError("composition mismatch")
        return ModuleMap(other.source, self.target, self.matrix @ other.matrix)

    def is_zero(self) -> bool:
        solver = self.target._rel_solver
        return all(solver.solve_vector(self.matrix.column(j)) is not None
                   for j in range(self.matrix.cols))

    def equals(self, other: "ModuleMap") -> bool:
        if self.source != other.source or self.target != other.target:
            return False
        diff = self.matrix - other.matrix
        solver = self.target._rel_solver
        return all(solver.solve_vector(diff.column(j)) is not None
                   for j in range(diff.cols))


def induced_map(f_chain: ExactMatrix, src: HomologyPresentation,
                dst: HomologyPresentation) -> ModuleMap:
    """The map on homology induced by a chain-level matrix.

    Checks that f sends cycles to cycles and boundaries to boundaries against
    the stored boundary data, and stores the well-definedness witness.
    """
    if f_chain.cols != src.chain_rank or f_chain.rows != dst.chain_rank:
        raise TwistcapError("chain map shape mismatch")
    mapped_cycles = f_chain @ src.cycles
    if not (dst.d_out @ mapped_cycles).is_zero():
        raise NotChainMap("cycles do not map to cycles")
    if src.d_in.cols and dst.boundary_solver().solve_matrix(f_chain @ src.d_in) is None:
        raise NotChainMap("boundaries do not map to boundaries")
    M = dst._cycle_solver.solve_matrix(mapped_cycles)
    if M is None:
        raise NotChainMap("mapped cycle escapes the target kernel")
    witness = dst.module._rel_solver.solve_matrix(M @ src.module.relations)
    if witness is None:
        raise NotChainMap("relations do not map into relations")
    return ModuleMap(src.module, dst.module, M, witness)


@dataclass(frozen=True)
class IsoResult:
    isomorphism: bool
    inverse: ExactMatrix | None = None
    kernel_witness: tuple | None = None
    cokernel_witness: tuple | None = None

    def __bool__(self):
        return self.isomorphism


def is_isomorphism(f: ModuleMap) -> IsoResult:
    """Certify bijectivity of a well-defined map of presented modules.

    The certificate is a two-sided inverse modulo relations; failure returns
    an explicit nonzero kernel class or a cokernel generator.
    """
    ring = f.matrix.ring
    ts = f.source.generator_count
    tt = f.target.generator_count
    stacked = ExactMatrix.hstack([f.matrix, f.target.relations])
    snf = smith_normal_form(stacked)
    units = sum(1 for d in snf.diagonal() if ring.is_unit(d))
    if units < tt:
        idx = units  # first non-unit pivot position marks a cokernel class
        usolve = SmithSolver(snf.U)
        e = [ring.zero] * tt
        e[idx] = ring.one
        witness = usolve.solve_vector(e)
        return IsoResult(False, cokernel_witness=tuple(witness))

    ker_gens = kernel(stacked)
    src_rel = f.source._rel_solver
    for j in range(ker_gens.cols):
        p = ker_gens.column(j)[:ts]
        if src_rel.solve_vector(p) is None:
            return IsoResult(False, kernel_witness=tuple(p))

    solver = SmithSolver(stacked)
    cols = []
    for i in range(tt):
        e = [ring.zero] * tt
        e[i] = ring.one
        sol = solver.solve_vector(e)
        cols.append(sol[:ts])
    N = ExactMatrix.from_columns(ring, cols, ts)

    ident_s = ExactMatrix.identity(ring, ts)
    ident_t = ExactMatrix.identity(ring, tt)
    if (src_rel.solve_matrix((N @ f.matrix) - ident_s) is None
            or f.target._rel_solver.solve_matrix((f.matrix @ N) - ident_t) is None):
        raise TwistcapError("inverse certificate failed verification")
    return IsoResult(True, inverse=N)


def composition_is_zero(first: ModuleMap, second: ModuleMap) -> bool:
    return second.compose(first).is_zero()


def kernel_inside_image(incoming: ModuleMap, outgoing: ModuleMap) -> bool:
    """ker(outgoing) subset of im(incoming), in the shared middle module."""
    ring = incoming.matrix.ring
    middle = outgoing.source
    t = middle.generator_count
    stacked = ExactMatrix.hstack([outgoing.matrix, outgoing.target.relations])
    ker_gens = kernel(stacked)
    image = ExactMatrix.hstack([incoming.matrix, middle.relations])
    solver = SmithSolver(image)
    for j in range(ker_gens.cols):
        p = ker_gens.column(j)[:t]
        if solver.solve_vector(p) is None:
            return False
    return True


def is_exact_at(incoming: ModuleMap, outgoing: ModuleMap) -> bool:
    return composition_is_zero(incoming, outgoing) and kernel_inside_image(
        incoming, outgoing)
