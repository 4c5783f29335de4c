"""Batch front door: load complexes and systems, run checks, emit reports.

Every run is deterministic given its options and seed: reports carry a
self-describing header with the artifact version, ring, and input digests,
and never include timestamps.  Exit codes: 0 when all requested checks pass,
1 on a check failure (with a machine-readable FAIL line in the body), 2 on
usage or input-format errors.
"""

from __future__ import annotations

import argparse
import hashlib
import os
import sys

from . import acceptance
from .cap import boundary_identity_check, cap_setting, verify_duality
from .chains import (fundamental_class_direct, fundamental_class_via_cover,
                     homology, pair_complex)
from .complexes import (FullSubcomplex, dumps_complex, load_complex,
                        named_complex, validate)
from .covers import (build_double_cover, check_split_exactness, lemma1_check,
                     lemma2_check, phi_identify, split_maps)
from .errors import ComplexFormatError, SystemFormatError, TwistcapError, \
    UnknownName
from .localsystems import (constant_system, dumps_local_system,
                           is_trivializable, load_local_system,
                           orientation_system, random_flat_system)
from .mv import (diagram6_check, diagram6_names, mv_cohomology, mv_homology,
                 mv_splitting, named_cover, named_diagram6)
from .rings import parse_ring

VERSION = "0.1.0"

BUILTIN_COMPLEXES = ("circle", "sphere2", "torus", "rp2", "klein", "rp3",
                     "sphere3", "octahedron", "torus4", "klein4")


def _digest(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()[:12]


def _resolve_complex(spec: str):
    if spec in BUILTIN_COMPLEXES:
        cx = named_complex(spec)
        return cx, spec, _digest(dumps_complex(cx))
    if os.path.exists(spec):
        cx = load_complex(spec)
        return cx, os.path.basename(spec), _digest(dumps_complex(cx))
    raise UnknownName(f"unknown complex {spec!r} (not a builtin, not a file)")


def _resolve_system(spec: str, cx, ring, seed: int):
    parts = spec.split(":")
    name = parts[0]
    if name == "constant":
        rank = int(parts[1]) if len(parts) > 1 else 1
        return constant_system(cx, ring, rank), spec
    if name == "orientation":
        return orientation_system(cx, ring), spec
    if name == "random-flat":
        sseed = int(parts[1]) if len(parts) > 1 else seed
        rank = int(parts[2]) if len(parts) > 2 else 2
        return random_flat_system(cx, ring, rank, sseed), f"random-flat:{sseed}:{rank}"
    if os.path.exists(spec):
        system = load_local_system(spec, cx)
        if system.ring != ring:
            raise TwistcapError(
                f"system file ring {system.ring} does not match --ring {ring}")
        return system, _digest(dumps_local_system(system))
    raise UnknownName(f"unknown system {spec!r}")


class Report:
    def __init__(self, args, command, **meta):
        self.fmt = args.format
        self.lines = [f"# twistcap {VERSION}"]
        fields = " ".join(f"{k}={v}" for k, v in meta.items())
        self.lines.append(f"# command={command} {fields}")
        self.failed = False

    def row(self, *cells):
        sep = "\t" if self.fmt == "tsv" else "  "
        self.lines.append(sep.join(str(c) for c in cells))

    def check(self, label, ok, detail=""):
        self.row(label, "ok" if ok else "FAIL", detail)
        if not ok:
            self.failed = True

    def block(self, text):
        self.lines.extend(text.rstrip("\n").split("\n"))

    def finish(self) -> int:
        self.lines.append(f"# result={'fail' if self.failed else 'pass'}")
        print("\n".join(self.lines))
        return 1 if self.failed else 0


def _add_common(p, system=True):
    p.add_argument("--complex", required=True,
                   help="corpus name (%s) or a complex file" %
                   ", ".join(BUILTIN_COMPLEXES))
    if system:
        p.add_argument("--system", default="constant",
                       help="constant[:rank] | orientation | "
                            "random-flat[:seed[:rank]] | file path")
    p.add_argument("--ring", default="Z", help="Z | Q | Z/<m>")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("tsv", "plain"), default="tsv")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="twistcap",
        description="Twisted simplicial homology, orientation double covers, "
                    "and machine-checked duality.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="closed-pseudomanifold report")
    _add_common(p, system=False)

    p = sub.add_parser("orientation", help="orientability and cover census")
    _add_common(p, system=False)

    p = sub.add_parser("fundamental-class",
                       help="both constructions and their agreement")
    _add_common(p, system=False)

    p = sub.add_parser("lemma1", help="deck map reverses the cover orientation")
    _add_common(p, system=False)

    p = sub.add_parser("lemma2", help="pushforward of the cover class vanishes")
    _add_common(p, system=False)

    p = sub.add_parser("phi-check",
                       help="splitting sequences and the identification phi")
    _add_common(p, system=False)

    p = sub.add_parser("cap-identity", help="random cap boundary identities")
    _add_common(p)
    p.add_argument("--trials", type=int, default=100)

    p = sub.add_parser("verify-duality", help="duality verdict per degree")
    _add_common(p)

    p = sub.add_parser("check-mv", help="Mayer-Vietoris exactness + splitting")
    _add_common(p)
    p.add_argument("--cover", required=True,
                   help="hemispheres (octahedron) | cylinders (torus, klein)")

    p = sub.add_parser("diagram6", help="cap-compatibility diagram blocks")
    p.add_argument("--config", required=True, choices=diagram6_names())
    p.add_argument("--system", default="constant")
    p.add_argument("--ring", default="Z")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("tsv", "plain"), default="tsv")

    p = sub.add_parser("corpus-all", help="the full acceptance battery")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--format", choices=("tsv", "plain"), default="tsv")

    return parser


def _cmd_validate(args):
    cx, name, digest = _resolve_complex(args.complex)
    rep = Report(args, "validate", complex=name, complex_digest=digest)
    r = validate(cx)
    rep.row("dimension", r.dimension)
    rep.row("f_vector", ",".join(str(x) for x in cx.f_vector()))
    rep.row("euler_characteristic", r.euler_characteristic)
    rep.check("is_pure", r.is_pure)
    rep.check("each_ridge_in_two_facets", r.each_ridge_in_two_facets)
    rep.check("dual_graph_connected", r.dual_graph_connected)
    rep.check("links_validated", r.links_validated)
    rep.check("closed_pseudomanifold", r.closed_pseudomanifold)
    return rep.finish()


def _cmd_orientation(args):
    cx, name, digest = _resolve_complex(args.complex)
    ring = parse_ring(args.ring)
    rep = Report(args, "orientation", complex=name, complex_digest=digest,
                 ring=ring)
    omega = orientation_system(cx, ring)
    trivial, _ = is_trivializable(omega)
    cover = build_double_cover(cx, omega)
    adj = cover.total.facet_adjacency()
    seen = set()
    comps = 0
    for f in cover.total.facets:
        if f not in seen:
            comps += 1
            stack = [f]
            seen.add(f)
            while stack:
                g = stack.pop()
                for h, _ in adj[g]:
                    if h not in seen:
                        seen.add(h)
                        stack.append(h)
    rep.row("orientable", trivial)
    rep.row("cover_components", comps)
    rep.row("cover_euler_characteristic", cover.total.euler_characteristic())
    rep.check("census_agreement", (comps == 2) == trivial,
              "cover disconnected iff orientation system trivializable")
    return rep.finish()


def _cmd_fundamental_class(args):
    cx, name, digest = _resolve_complex(args.complex)
    ring = parse_ring(args.ring)
    rep = Report(args, "fundamental-class", complex=name,
                 complex_digest=digest, ring=ring)
    nu = fundamental_class_direct(cx, ring)
    pres = homology(cx, nu.system, cx.dimension)
    coords = pres.class_vector(nu.chain)
    rep.row("H_n(M; M_R)", pres.module)
    rep.check("direct_cycle", coords is not None)
    rep.check("generates", pres.module.generates(coords))
    if ring.two_is_nonzero:
        via = fundamental_class_via_cover(cx, ring)
        other = pres.class_vector(via.chain)
        rep.check("via_cover_agrees", pres.module.classes_equal(coords, other),
                  "Lemma 2 route equals the direct construction")
    else:
        rep.row("via_cover_agrees", "skipped", "ring has 2 = 0")
    return rep.finish()


def _cmd_lemma1(args):
    cx, name, digest = _resolve_complex(args.complex)
    ring = parse_ring(args.ring)
    rep = Report(args, "lemma1", complex=name, complex_digest=digest, ring=ring)
    cover = build_double_cover(cx, orientation_system(cx, ring))
    rep.check("deck_reverses_orientation", lemma1_check(cover, ring),
              "Lemma 1: tau(z) = -z on the chosen orientation cycle")
    return rep.finish()


def _cmd_lemma2(args):
    cx, name, digest = _resolve_complex(args.complex)
    ring = parse_ring(args.ring)
    rep = Report(args, "lemma2", complex=name, complex_digest=digest, ring=ring)
    for label, K in (("K=all", None), ("K=vertex0", FullSubcomplex(cx, {0}))):
        ok = lemma2_check(cx, ring, K)
        rep.check(label, ok, "Lemma 2: pushforward class is zero" if ok
                  else "Lemma 2: nonzero pushforward class")
    return rep.finish()


def _cmd_phi_check(args):
    cx, name, digest = _resolve_complex(args.complex)
    ring = parse_ring(args.ring)
    rep = Report(args, "phi-check", complex=name, complex_digest=digest,
                 ring=ring)
    cover = build_double_cover(cx, orientation_system(cx, ring))
    for label, K in (("K=all", None), ("K=vertex0", FullSubcomplex(cx, {0}))):
        split = split_maps(cover, ring, K)
        verdicts = check_split_exactness(split)
        for k in sorted(verdicts):
            rep.check(f"{label} degree={k} seq(1)", verdicts[k]["seq1"])
            rep.check(f"{label} degree={k} seq(2)", verdicts[k]["seq2"])
        phi = phi_identify(cover, ring, K)
        rep.check(f"{label} phi_boundary_commutes", phi.boundary_commutes)
        rep.check(f"{label} phi_iso", phi.degreewise_iso)
    return rep.finish()


def _cmd_cap_identity(args):
    import random
    cx, name, digest = _resolve_complex(args.complex)
    ring = parse_ring(args.ring)
    system, syslabel = _resolve_system(args.system, cx, ring, args.seed)
    rep = Report(args, "cap-identity", complex=name, complex_digest=digest,
                 system=syslabel, ring=ring, seed=args.seed,
                 trials=args.trials)
    Gp = orientation_system(cx, ring)
    cochain_pc, chain_pc, _ = cap_setting(cx, system, Gp)
    rng = random.Random(args.seed)
    failures = 0
    for _ in range(args.trials):
        k = rng.randint(0, cx.dimension)
        n = rng.randint(k, cx.dimension)
        c = tuple(ring.from_int(rng.randint(-3, 3))
                  for _ in range(cochain_pc.length(k)))
        a = tuple(ring.from_int(rng.randint(-3, 3))
                  for _ in range(chain_pc.length(n)))
        ok, _diff = boundary_identity_check(cx, system, Gp, k, n, c, a)
        failures += 0 if ok else 1
    rep.check("cap_boundary_identity", failures == 0,
              f"trials={args.trials} failures={failures}")
    return rep.finish()


def _cmd_verify_duality(args):
    cx, name, digest = _resolve_complex(args.complex)
    ring = parse_ring(args.ring)
    system, syslabel = _resolve_system(args.system, cx, ring, args.seed)
    rep = Report(args, "verify-duality", complex=name, complex_digest=digest,
                 system=syslabel, ring=ring, seed=args.seed)
    report = verify_duality(cx, system, ring)
    rep.block(report.to_tsv() if args.format == "tsv"
              else report.to_tsv().replace("\t", "  "))
    if not report.all_verified:
        rep.failed = True
        bad = [r.degree for r in report.rows if not r.verdict]
        rep.row("FAIL", "duality", f"degrees {bad} not isomorphisms")
    return rep.finish()


def _cmd_check_mv(args):
    if args.complex not in ("octahedron", "torus", "klein"):
        raise UnknownName(f"no built-in cover for complex {args.complex!r}")
    cx, pair = named_cover(args.complex, args.cover)
    ring = parse_ring(args.ring)
    system, syslabel = _resolve_system(args.system, cx, ring, args.seed)
    rep = Report(args, "check-mv", complex=args.complex, cover=args.cover,
                 system=syslabel, ring=ring)
    hom = mv_homology(pair, system)
    coh = mv_cohomology(pair, system)
    rep.check("homology_exact", hom.all_exact)
    rep.check("cohomology_exact", coh.all_exact)
    splitting_ok = True
    inter_pc = pair_complex(cx, system, pool=pair.AB)
    for k in range(cx.dimension + 1):
        for j in range(inter_pc.length(k)):
            alpha = tuple(ring.one if i == j else ring.zero
                          for i in range(inter_pc.length(k)))
            try:
                mv_splitting(pair, system, k, alpha)
            except TwistcapError:
                splitting_ok = False
    rep.check("splitting_equation", splitting_ok, "exhaustive basis cochains")
    if rep.failed:
        rep.row("FAIL", "mayer-vietoris", "see rows above")
    return rep.finish()


def _cmd_diagram6(args):
    cfg = named_diagram6(args.config)
    cx = cfg["complex"]
    ring = parse_ring(args.ring)
    system, syslabel = _resolve_system(args.system, cx, ring, args.seed)
    args.format = getattr(args, "format", "tsv")
    rep = Report(args, "diagram6", config=args.config, system=syslabel,
                 ring=ring, seed=args.seed)
    report = diagram6_check(cx, cfg["U"], cfg["V"], cfg["K"], cfg["L"],
                            system, ring, resample_seed=args.seed or None)
    rep.block(report.to_tsv() if args.format == "tsv"
              else report.to_tsv().replace("\t", "  "))
    if not report.all_verified:
        rep.failed = True
        rep.row("FAIL", "diagram6", "a block failed to commute")
    return rep.finish()


def _cmd_corpus_all(args):
    rep = Report(args, "corpus-all", seed=args.seed, trials=args.trials)
    for result in acceptance.run_all(seed=args.seed, trials=args.trials):
        rep.check(result.name, result.passed, result.detail)
    return rep.finish()


_HANDLERS = {
    "validate": _cmd_validate,
    "orientation": _cmd_orientation,
    "fundamental-class": _cmd_fundamental_class,
    "lemma1": _cmd_lemma1,
    "lemma2": _cmd_lemma2,
    "phi-check": _cmd_phi_check,
    "cap-identity": _cmd_cap_identity,
    "verify-duality": _cmd_verify_duality,
    "check-mv": _cmd_check_mv,
    "diagram6": _cmd_diagram6,
    "corpus-all": _cmd_corpus_all,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _HANDLERS[args.command](args)
    except (ComplexFormatError, SystemFormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except UnknownName as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except TwistcapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
