"""Command-line surface.

Commands: classify, walls, graph, stability, kernel-line, kit, cross,
representative, verify.  Rationals are given as "p/q" strings; the marked
point z1 defaults to 2 and can be overridden with --z1 or the HIGGS_Z1
environment variable.  Exit codes: 0 success, 1 verification failure,
2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import serial, verify
from .assembly import assembly_kit, glue, hn_strata, wall_cross
from .bundles import MarkedPoints, Splitting, higgs_divisor, kernel_line
from .canonical import (
    UnrealizableError,
    block_representative,
    hitchin_representative,
    orbit_representative,
)
from .chambergeom import wall_crossing_graph
from .exact import ProjPoint
from .serial import dumps
from .stability import (
    component_label,
    destabilizing_search,
    predicted_stability,
    stratum_label,
)
from .weights import (
    Chamber,
    MarkSubset,
    OnWalls,
    classify,
    parse_chamber,
    wall_list,
)


class UsageError(Exception):
    pass


def _parse_beta(text: str) -> tuple:
    parts = text.split(",")
    if len(parts) != 4:
        raise UsageError("--beta needs four comma-separated rationals")
    return tuple(Fraction(p.strip()) for p in parts)


def _default_z1(args) -> Fraction:
    if getattr(args, "z1", None):
        return Fraction(args.z1)
    env = os.environ.get("HIGGS_Z1")
    return Fraction(env) if env else Fraction(2)


def _parse_subset(text: str) -> MarkSubset:
    digits = [ch for ch in text if ch in "1234"]
    return MarkSubset.of(*(int(ch) for ch in digits))


def cmd_classify(args) -> int:
    beta = _parse_beta(args.beta)
    outcome = classify(beta, args.parity)
    if isinstance(outcome, OnWalls):
        if args.format == "json":
            sys.stdout.write(dumps(serial.onwalls_json(outcome)))
        else:
            print("on walls: " + ", ".join(str(w) for w in outcome.walls))
        return 0
    if args.format == "json":
        sys.stdout.write(dumps(serial.chamber_json(outcome)))
    else:
        suffix = f" (type {outcome.type_tag})" if outcome.kind == "interior" else ""
        print(outcome.serialize() + suffix)
    return 0


def cmd_walls(args) -> int:
    walls = wall_list(args.parity)
    if args.format == "json":
        sys.stdout.write(dumps([serial.wall_json(w) for w in walls]))
    else:
        for w in walls:
            print(f"{w}  {w.kind}  (= {w.partner})")
    return 0


def cmd_graph(args) -> int:
    graph = wall_crossing_graph(args.parity)
    if args.format == "dot":
        sys.stdout.write(serial.graph_dot(graph))
    else:
        payload = {
            "parity": graph.parity,
            "nodes": [serial.chamber_json(c) | {"id": c.serialize()} for c in graph.nodes],
            "edges": [
                {
                    "a": graph.nodes[i].serialize(),
                    "b": graph.nodes[j].serialize(),
                    "wall": serial.wall_json(w),
                }
                for i, j, w in graph.edges
            ],
        }
        sys.stdout.write(dumps(payload))
    return 0


def _load_qph(path: str):
    with open(path) as fh:
        return serial.parse_qph(json.load(fh))


def cmd_stability(args) -> int:
    qph = _load_qph(args.input)
    beta = _parse_beta(args.beta)
    verdict = destabilizing_search(qph, beta)
    label = component_label(qph)
    stratum = stratum_label(qph)
    outcome = classify(beta, qph.splitting.parity)
    payload = {
        "verdict": serial.verdict_json(verdict),
        "stratum": str(stratum),
        "component": str(label),
    }
    if isinstance(outcome, OnWalls):
        payload["chamber"] = None
        payload["on_walls"] = [str(w) for w in outcome.walls]
    else:
        predicted = predicted_stability(label, outcome)
        payload["chamber"] = outcome.serialize()
        payload["predicted_stable"] = predicted
        payload["agreement"] = predicted == verdict.is_stable
    if args.format == "json":
        sys.stdout.write(dumps(payload))
    else:
        for key, value in payload.items():
            print(f"{key}: {value}")
    return 0


def cmd_kernel_line(args) -> int:
    qph = _load_qph(args.input)
    line = kernel_line(qph.phi, qph.splitting)
    sigma, k = higgs_divisor(qph.phi, qph.splitting)
    payload = {
        "degree": line.j,
        "s1": serial.form_json(line.s1),
        "s2": None if line.s2 is None else serial.form_json(line.s2),
        "divisor": serial.form_json(sigma),
        "divisor_degree": k,
        "degree_bound_ok": 2 * (line.j + 1) >= qph.splitting.d,
    }
    sys.stdout.write(dumps(payload))
    return 0


def cmd_kit(args) -> int:
    chamber = parse_chamber(args.chamber)
    kit = assembly_kit(chamber, m=args.m)
    if args.format == "dot":
        sys.stdout.write(serial.kit_dot(glue(kit)))
    else:
        payload = serial.kit_json(kit)
        payload["glued"] = {
            "components": list(glue(kit).components),
            "edges": list(glue(kit).edges),
        }
        payload["hn_strata"] = [
            {
                "delta": s.delta,
                "splitting": str(s.splitting),
                "nonempty": s.nonempty,
                "dim": s.dimension,
                "nodes": s.nodal_singularities,
            }
            for s in hn_strata(chamber, m=args.m)
        ]
        sys.stdout.write(dumps(payload))
    return 0


def cmd_cross(args) -> int:
    c1 = parse_chamber(getattr(args, "from"))
    c2 = parse_chamber(args.to)
    xmap = wall_cross(c1, c2, m=args.m)
    payload = {
        "from": c1.serialize(),
        "to": c2.serialize(),
        "wall": str(xmap.wall),
        "exchanged": [list(pair) for pair in xmap.exchanged],
        "fixed": list(xmap.fixed),
    }
    sys.stdout.write(dumps(payload))
    return 0


def cmd_representative(args) -> int:
    marks = MarkedPoints(_default_z1(args))
    splitting = Splitting(args.m1, args.m2)
    subset = _parse_subset(args.subset or "")
    if args.kind == "hitchin":
        qph = hitchin_representative(splitting, marks, subset, Fraction(args.q))
    elif args.kind == "block":
        modulus = None
        if args.modulus is not None:
            modulus = (
                ProjPoint.infinity()
                if args.modulus.strip() == "inf"
                else Fraction(args.modulus)
            )
        qph = block_representative(args.block, subset, splitting, marks, modulus)
    elif args.kind == "orbit":
        qph = orbit_representative(subset, splitting, marks)
    else:
        raise UsageError(f"unknown representative kind {args.kind!r}")
    sys.stdout.write(dumps(serial.qph_json(qph)))
    return 0


def cmd_verify(args) -> int:
    results = verify.run_all(seed=args.seed, samples=args.samples, deep=args.deep)
    sys.stdout.write(verify.report(results))
    return 0 if all(r.passed for r in results) else 1


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="higgs4p", description=__doc__)
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="locate a weight vector among the chambers")
    p.add_argument("--beta", required=True)
    p.add_argument("--parity", choices=("even", "odd"), required=True)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(fn=cmd_classify)

    p = sub.add_parser("walls", help="list the canonical semi-stability walls")
    p.add_argument("--parity", choices=("even", "odd"), required=True)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(fn=cmd_walls)

    p = sub.add_parser("graph", help="emit the wall-crossing graph")
    p.add_argument("--parity", choices=("even", "odd"), required=True)
    p.add_argument("--format", choices=("dot", "json"), default="dot")
    p.set_defaults(fn=cmd_graph)

    p = sub.add_parser("stability", help="stability verdict for a model point")
    p.add_argument("--input", required=True, help="path to a model-point JSON file")
    p.add_argument("--beta", required=True)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(fn=cmd_stability)

    p = sub.add_parser("kernel-line", help="invariant line of a nilpotent field")
    p.add_argument("--input", required=True)
    p.set_defaults(fn=cmd_kernel_line)

    p = sub.add_parser("kit", help="nilpotent-cone assembly kit of a chamber")
    p.add_argument("--chamber", required=True)
    p.add_argument("--m", type=int, default=0)
    p.add_argument("--format", choices=("dot", "json"), default="json")
    p.set_defaults(fn=cmd_kit)

    p = sub.add_parser("cross", help="wall-crossing map between adjacent chambers")
    p.add_argument("--from", required=True)
    p.add_argument("--to", required=True)
    p.add_argument("--m", type=int, default=0)
    p.set_defaults(fn=cmd_cross)

    p = sub.add_parser("representative", help="canonical representative of a component")
    p.add_argument("--kind", choices=("hitchin", "block", "orbit"), required=True)
    p.add_argument("--m1", type=int, required=True)
    p.add_argument("--m2", type=int, required=True)
    p.add_argument("--subset", default="", help="marked points, e.g. '12'")
    p.add_argument("--block", choices=("K", "L"))
    p.add_argument("--q", default="1")
    p.add_argument("--modulus")
    p.add_argument("--z1")
    p.set_defaults(fn=cmd_representative)

    p = sub.add_parser("verify", help="run the randomized verification harness")
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--parity", choices=("even", "odd", "both"), default="both")
    p.add_argument("--deep", action="store_true")
    p.set_defaults(fn=cmd_verify)

    return top


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (UsageError, UnrealizableError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
