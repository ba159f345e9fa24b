"""JSON and DOT emitters, plus parsing of the model-point schema.

Rationals serialize as "p/q" strings (denominator omitted when 1), points
as "[a:b]", forms as {"deg": n, "coeffs": [...]}; an absent w slot is null.
All JSON is emitted key-sorted so identical inputs give identical bytes.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .assembly import AssemblyKit, D4Configuration
from .bundles import (
    BinaryForm,
    HiggsField,
    MarkedPoints,
    QuasiParabolicHiggs,
    Splitting,
    quasi_parabolic,
)
from .chambergeom import WallCrossingGraph
from .exact import ProjPoint
from .stability import Verdict
from .weights import Chamber, OnWalls, Wall


def rat(x: Fraction) -> str:
    return str(Fraction(x))


def form_json(f: BinaryForm):
    return {"deg": f.degree, "coeffs": [rat(c) for c in f.coeffs]}


def parse_form(obj) -> BinaryForm:
    return BinaryForm(obj["deg"], tuple(Fraction(c) for c in obj["coeffs"]))


def qph_json(qph: QuasiParabolicHiggs) -> dict:
    return {
        "m1": qph.splitting.m1,
        "m2": qph.splitting.m2,
        "z1": rat(qph.marks.z1),
        "flags": [[rat(f.a), rat(f.b)] for f in qph.flags],
        "u": form_json(qph.phi.u),
        "v": form_json(qph.phi.v),
        "w": None if qph.phi.w is None else form_json(qph.phi.w),
    }


def parse_qph(obj) -> QuasiParabolicHiggs:
    splitting = Splitting(obj["m1"], obj["m2"])
    marks = MarkedPoints(Fraction(obj["z1"]))
    flags = tuple(ProjPoint(Fraction(a), Fraction(b)) for a, b in obj["flags"])
    phi = HiggsField(
        splitting.delta,
        parse_form(obj["u"]),
        parse_form(obj["v"]),
        None if obj.get("w") is None else parse_form(obj["w"]),
    )
    return quasi_parabolic(splitting, marks, flags, phi)


def chamber_json(c: Chamber) -> dict:
    if c.kind == "interior":
        return {
            "kind": "interior",
            "parity": c.parity,
            "sets": [str(s) for s in c.sets],
            "type": c.type_tag,
        }
    return {"kind": "exterior", "parity": c.parity, "set": str(c.subset)}


def wall_json(w: Wall) -> dict:
    return {
        "subset": str(w.subset),
        "level": w.level,
        "kind": w.kind,
        "parity": w.parity,
        "identified_with": {"subset": str(w.partner.subset), "level": w.partner.level},
    }


def verdict_json(v: Verdict) -> dict:
    return {
        "verdict": v.kind,
        "witnesses": [[str(s), j] for s, j in v.witnesses],
    }


def onwalls_json(o: OnWalls) -> dict:
    return {"on_walls": [wall_json(w) for w in o.walls]}


def kit_json(kit: AssemblyKit) -> dict:
    return {
        "chamber": kit.chamber.serialize(),
        "central": {
            "label": kit.central.label,
            "delta": kit.central.delta,
            "iso": kit.central.iso_type,
            "points": sorted(kit.central.points),
        },
        "tails": [
            {
                "subset": str(t.subset),
                "parts": [
                    {"label": str(p.label), "delta": p.delta, "iso": p.iso_type}
                    for p in t.parts
                ],
                "attach": t.attach_point,
                "fixed_point": t.fixed_point,
            }
            for t in sorted(kit.tails, key=lambda t: t.subset.mask)
        ],
    }


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


# ---------------------------------------------------------------------------
# DOT emitters

def graph_dot(graph: WallCrossingGraph) -> str:
    lines = [f'graph wall_crossing_{graph.parity} {{']
    for c in graph.nodes:
        name = json.dumps(c.serialize())
        if c.kind == "exterior":
            attrs = "shape=square"
        elif c.type_tag == "A":
            attrs = 'shape=circle style=filled fillcolor=white'
        else:
            attrs = 'shape=circle style=filled fillcolor=black fontcolor=white'
        lines.append(f"  {name} [{attrs}];")
    for i, j, w in graph.edges:
        a = json.dumps(graph.nodes[i].serialize())
        b = json.dumps(graph.nodes[j].serialize())
        lines.append(f'  {a} -- {b} [label="{w}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def kit_dot(cfg: D4Configuration) -> str:
    lines = [f'graph d4_configuration {{', '  label="%s";' % cfg.chamber.serialize()]
    central = cfg.edges[0][0] if cfg.edges else None
    for name, iso in cfg.components:
        shape = "doublecircle" if name == central else "circle"
        lines.append(f'  {json.dumps(name)} [shape={shape} label={json.dumps(name)}];')
    for a, b, point in cfg.edges:
        lines.append(f'  {json.dumps(a)} -- {json.dumps(b)} [label={json.dumps(point)}];')
    lines.append("}")
    return "\n".join(lines) + "\n"
