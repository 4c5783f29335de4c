"""The corpus-wide acceptance battery.

Ten checks, each a pure function returning (passed, detail); everything runs
at tolerance zero.  The CLI's corpus-all subcommand and the test suite both
drive this module, so the command line and pytest certify the same thing.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .cap import boundary_identity_check, cap_setting, verify_duality
from .chains import (fundamental_class_direct, fundamental_class_via_cover,
                     homology, pair_complex)
from .complexes import FullSubcomplex, corpus
from .covers import (build_double_cover, check_split_exactness, lemma1_check,
                     lemma2_check, phi_identify, split_maps)
from .localsystems import (constant_system, orientation_system,
                           random_flat_system)
from .matrices import ExactMatrix, smith_normal_form
from .mv import diagram6_check, mv_cohomology, mv_homology, mv_splitting, \
    named_cover, named_diagram6
from .rings import Q, RingSpec, Z, Zmod

CORPUS = ("circle", "sphere2", "torus", "rp2", "klein", "rp3", "sphere3")
RINGS = (Z, Zmod(3), Q)
COVER_RINGS = (Z, Zmod(3))
NONORIENTABLE = ("rp2", "klein")


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def system_family(M, ring: RingSpec, seed: int):
    yield "constant-1", constant_system(M, ring, 1)
    yield "constant-2", constant_system(M, ring, 2)
    yield "orientation", orientation_system(M, ring)
    yield "random-flat-2", random_flat_system(M, ring, 2, seed)


def check_structural(seed=0) -> CheckResult:
    """d o d = 0 and delta o delta = 0 over the whole corpus grid."""
    failures = []
    count = 0
    for name in CORPUS:
        M = corpus(name)
        for ring in RINGS:
            for label, G in system_family(M, ring, seed):
                count += 1
                try:
                    pair_complex(M, G).verify_squares()
                except Exception as exc:  # noqa: BLE001 - recorded verbatim
                    failures.append(f"{name}/{ring}/{label}: {exc}")
    detail = f"{count} chain complexes, {len(failures)} failures"
    if failures:
        detail += "; first: " + failures[0]
    return CheckResult("structural d2=0 delta2=0", not failures, detail)


def check_lemma1() -> CheckResult:
    """Deck image of the chosen orientation cycle is its exact negation."""
    names = NONORIENTABLE + ("sphere2",)
    bad = []
    for name in names:
        M = corpus(name)
        cover = build_double_cover(M, orientation_system(M, Z))
        if not lemma1_check(cover, Z):
            bad.append(name)
    return CheckResult("lemma 1 deck reversal", not bad,
                       f"checked {', '.join(names)}"
                       + (f"; failed {bad}" if bad else ""))


def _k_choices(M):
    return (None, FullSubcomplex(M, {0}))


def check_lemma2() -> CheckResult:
    """Pushforward of the cover class vanishes in H_n(M|K)."""
    bad = []
    count = 0
    for name in CORPUS:
        M = corpus(name)
        for ring in COVER_RINGS:
            for K in _k_choices(M):
                count += 1
                if not lemma2_check(M, ring, K):
                    bad.append(f"{name}/{ring}/K={K}")
    return CheckResult("lemma 2 pushforward vanishes", not bad,
                       f"{count} cases" + (f"; failed {bad}" if bad else ""))


def check_sequences_and_phi() -> CheckResult:
    """Sequences (1),(2) exact degreewise; phi a boundary-commuting iso."""
    bad = []
    count = 0
    for name in CORPUS:
        M = corpus(name)
        cover = build_double_cover(M, orientation_system(M, Z))
        for ring in COVER_RINGS:
            for K in _k_choices(M):
                count += 1
                split = split_maps(cover, ring, K)
                verdicts = check_split_exactness(split)
                if not all(v["seq1"] and v["seq2"] for v in verdicts.values()):
                    bad.append(f"{name}/{ring}: splitting sequences")
                phi = phi_identify(cover, ring, K)
                if not (phi.boundary_commutes and phi.degreewise_iso):
                    bad.append(f"{name}/{ring}: phi")
    return CheckResult("splitting sequences and phi", not bad,
                       f"{count} cases" + (f"; failed {bad}" if bad else ""))


def check_fundamental_class() -> CheckResult:
    """Direct and via-cover constructions agree; the class generates."""
    bad = []
    for name in CORPUS:
        M = corpus(name)
        for ring in COVER_RINGS:
            direct = fundamental_class_direct(M, ring)
            via = fundamental_class_via_cover(M, ring)
            pres = homology(M, direct.system, M.dimension)
            a = pres.class_vector(direct.chain)
            b = pres.class_vector(via.chain)
            if a is None or b is None or not pres.module.classes_equal(a, b):
                bad.append(f"{name}/{ring}: constructions disagree")
            if pres.module.normal_form != (1, ()):
                bad.append(f"{name}/{ring}: H_n not free rank 1")
            elif not pres.module.generates(a):
                bad.append(f"{name}/{ring}: class does not generate")
    return CheckResult("fundamental class agreement", not bad,
                       f"{len(CORPUS) * len(COVER_RINGS)} cases"
                       + (f"; failed {bad}" if bad else ""))


def check_cap_identity(trials=100, seed=0) -> CheckResult:
    """Seeded random pairs satisfy the pinned cap boundary identity exactly."""
    bad = 0
    count = 0
    first = None
    for name in CORPUS:
        M = corpus(name)
        n_dim = M.dimension
        for ring in RINGS:
            for label, G in system_family(M, ring, seed):
                Gp = orientation_system(M, ring)
                cochain_pc, chain_pc, _ = cap_setting(M, G, Gp)
                rng = random.Random((seed, name, str(ring), label).__repr__())
                for _ in range(trials):
                    k = rng.randint(0, n_dim)
                    n = rng.randint(k, n_dim)
                    c = tuple(ring.from_int(rng.randint(-3, 3))
                              for _ in range(cochain_pc.length(k)))
                    a = tuple(ring.from_int(rng.randint(-3, 3))
                              for _ in range(chain_pc.length(n)))
                    ok, _diff = boundary_identity_check(M, G, Gp, k, n, c, a)
                    count += 1
                    if not ok:
                        bad += 1
                        first = first or f"{name}/{ring}/{label} k={k} n={n}"
    detail = f"{count} pairs, {bad} failures"
    if first:
        detail += f"; first: {first}"
    return CheckResult("cap boundary identity", bad == 0, detail)


def check_duality(seed=0) -> CheckResult:
    """The duality map is an isomorphism in every degree, everywhere."""
    bad = []
    spot = []
    for name in CORPUS:
        M = corpus(name)
        for ring in RINGS:
            for label, G in system_family(M, ring, seed):
                report = verify_duality(M, G, ring)
                if not report.all_verified:
                    rowinfo = [(r.degree, str(r.left), str(r.right))
                               for r in report.rows if not r.verdict]
                    bad.append(f"{name}/{ring}/{label}: {rowinfo}")
                if name == "rp2" and ring == Z and label == "constant-1":
                    spot.append([r.left.normal_form for r in report.rows]
                                == [(1, ()), (0, ()), (0, (2,))])
                    spot.append([r.right.normal_form for r in report.rows]
                                == [(1, ()), (0, ()), (0, (2,))])
    M = corpus("klein")
    w = orientation_system(M, Z)
    klein_rows = verify_duality(M, w, Z).rows
    spot.append(klein_rows[1].left.normal_form == (1, (2,)))
    spot.append(klein_rows[1].right.normal_form == (1, (2,)))
    ok = not bad and all(spot)
    detail = (f"{len(CORPUS) * len(RINGS) * 4} reports"
              + ("" if all(spot) else "; spot values wrong")
              + (f"; failed {bad[:2]}" if bad else ""))
    return CheckResult("duality isomorphism", ok, detail)


def check_mayer_vietoris() -> CheckResult:
    """Both sequences exact on the three covers; splitting identity exact."""
    bad = []
    for cname, covname, twisted in (("octahedron", "hemispheres", False),
                                    ("torus", "cylinders", False),
                                    ("klein", "cylinders", True)):
        M, pair = named_cover(cname, covname)
        for ring in COVER_RINGS:
            G = orientation_system(M, ring) if twisted \
                else constant_system(M, ring)
            if not mv_homology(pair, G).all_exact:
                bad.append(f"{cname}/{ring}: homology")
            if not mv_cohomology(pair, G).all_exact:
                bad.append(f"{cname}/{ring}: cohomology")
            inter_pc = pair_complex(M, G, pool=pair.AB)
            for k in range(M.dimension + 1):
                for j in range(inter_pc.length(k)):
                    alpha = tuple(ring.one if i == j else ring.zero
                                  for i in range(inter_pc.length(k)))
                    mv_splitting(pair, G, k, alpha)  # raises on failure
    return CheckResult("mayer-vietoris exactness + splitting", not bad,
                       "3 covers x 2 rings, splitting exhaustive"
                       + (f"; failed {bad}" if bad else ""))


def check_diagram6() -> CheckResult:
    """Cap squares commute exactly; connecting block sign single and stable."""
    bad = []
    signs = set()
    for name in ("torus", "sphere", "klein"):
        cfg = named_diagram6(name)
        M = cfg["complex"]
        twisted = name == "klein"
        for ring in COVER_RINGS:
            G = orientation_system(M, ring) if twisted \
                else constant_system(M, ring)
            for rep_seed in (None, 11):
                report = diagram6_check(M, cfg["U"], cfg["V"], cfg["K"],
                                        cfg["L"], G, ring,
                                        resample_seed=rep_seed)
                if not (report.square_left and report.square_right):
                    bad.append(f"{name}/{ring}/seed={rep_seed}: cap squares")
                if not report.connecting_ok:
                    bad.append(f"{name}/{ring}/seed={rep_seed}: connecting")
                if report.connecting_sign is not None:
                    signs.add(report.connecting_sign)
    if len(signs) > 1:
        bad.append(f"inconsistent connecting signs {sorted(signs)}")
    sign = signs.pop() if len(signs) == 1 else None
    detail = f"observed connecting sign: {sign:+d}" if sign is not None \
        else "connecting sign unobservable"
    return CheckResult("diagram (6) blocks", not bad,
                       detail + (f"; failed {bad}" if bad else ""))


def _fraction_rank(rows):
    """Independent rank oracle: plain fraction Gaussian elimination."""
    m = [[Fraction(x) for x in row] for row in rows]
    if not m:
        return 0
    rank = 0
    ncols = len(m[0])
    for col in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][col]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = 1 / m[rank][col]
        m[rank] = [x * inv for x in m[rank]]
        for i in range(len(m)):
            if i != rank and m[i][col]:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        rank += 1
    return rank


def check_smith_kernel(count=1000, seed=0) -> CheckResult:
    """U A V = D with units and a divisibility chain on random matrices,
    cross-checked against an independent rational rank."""
    rng = random.Random(seed)
    bad = 0
    first = None
    for idx in range(count):
        r = rng.randint(1, 8)
        c = rng.randint(1, 8)
        rows = [[rng.randint(-20, 20) for _ in range(c)] for _ in range(r)]
        A = ExactMatrix(Z, rows)
        snf = smith_normal_form(A)
        ok = snf.verify(A) and snf.nonzero_count() == _fraction_rank(rows)
        if not ok:
            bad += 1
            first = first or f"matrix #{idx}"
    detail = f"{count} matrices, {bad} failures"
    if first:
        detail += f"; first: {first}"
    return CheckResult("smith normal form kernel", bad == 0, detail)


def run_all(seed=0, trials=100):
    return [
        check_structural(seed),
        check_lemma1(),
        check_lemma2(),
        check_sequences_and_phi(),
        check_fundamental_class(),
        check_cap_identity(trials, seed),
        check_duality(seed),
        check_mayer_vietoris(),
        check_diagram6(),
        check_smith_kernel(1000, seed),
    ]
