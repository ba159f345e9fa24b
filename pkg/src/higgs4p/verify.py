"""Randomized verification harness tying the oracle to the combinatorial predictions.

Each check returns a CheckResult with a deterministic report line; any
failure carries a JSON counterexample dump (the smallest failing sample
encountered).  The full run is byte-reproducible from its seed.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from . import serial
from .assembly import hn_stratum_nonempty, assembly_kit, glue, s_equivalence, wall_cross
from .bundles import MarkedPoints, Splitting, apply_automorphism, det_scalar
from .canonical import (
    admissible_splittings,
    block_representative,
    generic_bulk_representative,
    hitchin_representative,
    orbit_representative,
)
from .chambergeom import graph_neighbors, wall_crossing_graph
from .exact import ProjPoint
from .jumping import jumping_cocycle
from .sampling import (
    rnd_automorphism,
    rnd_fraction,
    rnd_nonzero_fraction,
    rnd_nilpotent_point,
    rnd_parabolic_point,
    rnd_point,
    rnd_weights,
    rnd_weights_in_chamber,
)
from .stability import (
    component_label,
    destabilizing_search,
    predicted_stability,
    stratum_label,
)
from .weights import (
    ALL_SUBSETS,
    EMPTY,
    FULL,
    MarkSubset,
    all_chambers,
    beta_sum,
    classify,
    semistable_parabolic_exists,
    subsets_of_card_parity,
    wall_list,
)


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str
    counterexample: Optional[str] = None

    def line(self) -> str:
        status = "ok" if self.passed else "FAIL"
        return f"[{status}] {self.name}: {self.detail}"


def _marks(z1=Fraction(2)) -> MarkedPoints:
    return MarkedPoints(z1)


def representative_inventory(parity: str, marks: MarkedPoints, rng: random.Random):
    """Labelled model points covering every stratum, splitting and block type."""
    out = []
    for splitting in admissible_splittings(parity, m=0):
        delta = splitting.delta
        # orbits of parabolic bundles
        if delta <= 2:
            labels = [EMPTY]
            if delta <= 1:
                labels += [
                    s
                    for s in subsets_of_card_parity(parity)
                    if s.card in ((1, 3) if parity == "odd" else (2,))
                ]
                if parity == "even":
                    labels.append(FULL)
            for s in labels:
                out.append(orbit_representative(s, splitting, marks))
        # never-stable parabolic configurations
        out.append(rnd_parabolic_point(rng, splitting, marks))
        zero, inf = ProjPoint.affine(0), ProjPoint.infinity()
        from .bundles import quasi_parabolic

        out.append(quasi_parabolic(splitting, marks, (zero, zero, inf, inf)))
        # nilpotent building blocks
        for kind, subset_cards, level_kind in (("K", (2, 3), "bottom+c"), ("L", (2, 3), "bottom+c")):
            for s in ALL_SUBSETS:
                gap = s.card + delta if kind == "K" else s.card - delta
                realizable = gap in (2, 3) and (kind == "L" or delta > 0)
                if not realizable:
                    continue
                modulus = rnd_fraction(rng) if gap == 2 else rnd_point(rng)
                out.append(block_representative(kind, s, splitting, marks, modulus))
        if delta == 0:
            out.append(block_representative("L", FULL, splitting, marks, rnd_nonzero_fraction(rng)))
        # random nilpotent points
        for _ in range(2):
            out.append(rnd_nilpotent_point(rng, splitting, marks))
        # bulk
        if delta <= 2:
            card = delta + 2
            for member in (s for s in ALL_SUBSETS if s.card == card):
                out.append(
                    hitchin_representative(splitting, marks, member, rnd_nonzero_fraction(rng))
                )
            if delta <= 1:
                out.append(generic_bulk_representative(splitting, marks))
    return out


def check_oracle_vs_prediction(seed: int, per_chamber: int = 1) -> CheckResult:
    """Oracle verdicts must match the chamber predictions on every sample."""
    rng = random.Random(seed)
    marks = _marks()
    pairs = 0
    for parity in ("even", "odd"):
        inventory = representative_inventory(parity, marks, rng)
        chambers = all_chambers(parity)
        for qph in inventory:
            label = component_label(qph)
            for chamber in chambers:
                for _ in range(per_chamber):
                    beta = rnd_weights_in_chamber(rng, chamber)
                    verdict = destabilizing_search(qph, beta)
                    predicted = predicted_stability(label, chamber)
                    pairs += 1
                    if verdict.is_stable != predicted:
                        dump = serial.dumps(
                            {
                                "qph": serial.qph_json(qph),
                                "label": str(label),
                                "chamber": chamber.serialize(),
                                "beta": [serial.rat(b) for b in beta],
                                "verdict": serial.verdict_json(verdict),
                                "predicted_stable": predicted,
                            }
                        )
                        return CheckResult(
                            "oracle-vs-prediction",
                            False,
                            f"disagreement after {pairs} pairs",
                            dump,
                        )
    return CheckResult(
        "oracle-vs-prediction", True, f"{pairs} (point, weight) pairs agree exactly"
    )


def check_d4_census(seed: int = 0) -> CheckResult:
    count = 0
    for parity in ("even", "odd"):
        for chamber in all_chambers(parity):
            glue(assembly_kit(chamber))
            count += 1
    return CheckResult("d4-census", True, f"{count} chambers glue to D4 configurations")


def check_wall_crossing(seed: int = 0) -> CheckResult:
    edges = 0
    for parity in ("even", "odd"):
        graph = wall_crossing_graph(parity)
        for i, j, wall in graph.edges:
            c1, c2 = graph.nodes[i], graph.nodes[j]
            fwd = wall_cross(c1, c2)
            back = wall_cross(c2, c1)
            if set(map(frozenset, fwd.exchanged)) != set(map(frozenset, back.exchanged)):
                return CheckResult("wall-crossing", False, f"not an involution at {c1} | {c2}")
            if fwd.wall != wall:
                return CheckResult("wall-crossing", False, f"wall mismatch at {c1} | {c2}")
            if wall.kind == "boundary":
                ext = c1 if c1.kind == "exterior" else c2
                kit_ext = assembly_kit(ext)
                names = {n for pair in fwd.exchanged for n in pair}
                if kit_ext.central.name not in names:
                    return CheckResult(
                        "wall-crossing", False, f"exterior edge does not move the bottom at {ext}"
                    )
            edges += 1
    return CheckResult("wall-crossing", True, f"{edges} edges are involutive exchanges")


def check_automorphism_invariance(seed: int, samples: int = 6, auts: int = 10) -> CheckResult:
    rng = random.Random(seed)
    marks = _marks()
    checked = 0
    for parity in ("even", "odd"):
        for splitting in admissible_splittings(parity, m=0):
            points = []
            points.append(rnd_nilpotent_point(rng, splitting, marks))
            points.append(rnd_parabolic_point(rng, splitting, marks))
            if splitting.delta <= 2:
                from .sampling import rnd_bulk_point

                points.append(rnd_bulk_point(rng, splitting, marks))
            for qph in points[:samples]:
                beta = rnd_weights(rng)
                base = (
                    destabilizing_search(qph, beta).kind,
                    det_scalar(qph),
                    stratum_label(qph),
                    component_label(qph),
                )
                for _ in range(auts):
                    moved = apply_automorphism(rnd_automorphism(rng, splitting), qph)
                    got = (
                        destabilizing_search(moved, beta).kind,
                        det_scalar(moved),
                        stratum_label(moved),
                        component_label(moved),
                    )
                    checked += 1
                    if got != base:
                        return CheckResult(
                            "automorphism-invariance",
                            False,
                            "orbit invariants moved",
                            serial.dumps({"qph": serial.qph_json(qph), "beta": [serial.rat(b) for b in beta]}),
                        )
    return CheckResult("automorphism-invariance", True, f"{checked} conjugations preserve invariants")


def check_bauer_biswas(seed: int, samples: int = 500) -> CheckResult:
    """Zero-field stability of generic flags matches the strict weight inequalities."""
    rng = random.Random(seed)
    marks = _marks()
    done = 0
    while done < samples:
        parity = rng.choice(("even", "odd"))
        splitting = admissible_splittings(parity, m=0)[0]
        qph = rnd_parabolic_point(rng, splitting, marks)
        if not _flags_generic(qph):
            continue
        beta = rnd_weights(rng)
        verdict = destabilizing_search(qph, beta)
        strict = all(
            beta_sum(beta, s) < s.card - 1
            for s in ALL_SUBSETS
            if (s.card - 1) % 2 == splitting.d % 2
        )
        if verdict.is_stable != strict:
            return CheckResult(
                "existence-criterion",
                False,
                "stability disagrees with the strict inequalities",
                serial.dumps({"qph": serial.qph_json(qph), "beta": [serial.rat(b) for b in beta]}),
            )
        exists = semistable_parabolic_exists(beta, splitting.d)
        if strict and not exists:
            return CheckResult("existence-criterion", False, "strict but not semistable")
        done += 1
    return CheckResult("existence-criterion", True, f"{done} generic samples agree")


def _flags_generic(qph) -> bool:
    """Only the forced minimal interpolations are feasible for these flags."""
    from .stability import feasible_pairs

    d = qph.splitting.d
    for subset, j in feasible_pairs(qph):
        if subset.card > d - 2 * j + 1:
            return False
    return True


def check_cocycle(seed: int) -> CheckResult:
    rng = random.Random(seed)
    for parity in ("even", "odd"):
        for _ in range(10):
            t = rnd_nonzero_fraction(rng)
            rep = jumping_cocycle(parity, 0, t)
            if not (rep.verbatim_identity_holds and rep.corrected_identity_holds):
                return CheckResult("jumping-cocycle", False, f"m=0 identity fails at t={t}")
        for m in range(1, 6):
            rep = jumping_cocycle(parity, m, rnd_nonzero_fraction(rng))
            if rep.verbatim_identity_holds or not rep.corrected_identity_holds:
                return CheckResult("jumping-cocycle", False, f"m={m} correction fails")
    return CheckResult(
        "jumping-cocycle",
        True,
        "printed identity verified at m=0 only; corrected lower-left t*z^m holds for m <= 5",
    )


def check_strict_on_walls(seed: int = 0) -> CheckResult:
    """Strictly semistable verdicts for flagged components at wall-interior weights."""
    from .assembly import wall_interior_weight

    marks = _marks()
    checked = 0
    for parity in ("even", "odd"):
        for wall in wall_list(parity):
            beta = wall_interior_weight(wall)
            for qph in _wall_flagged_representatives(wall, marks):
                verdict = destabilizing_search(qph, beta)
                if verdict.kind != "strict":
                    return CheckResult(
                        "s-equivalence",
                        False,
                        f"component not strictly semistable on {wall}",
                        serial.dumps({"qph": serial.qph_json(qph), "beta": [serial.rat(b) for b in beta]}),
                    )
                checked += 1
    return CheckResult("s-equivalence", True, f"{checked} flagged components are strictly semistable on their walls")


def _wall_flagged_representatives(wall, marks):
    parity = wall.parity
    out = []
    if wall.kind == "boundary":
        subset = wall.boundary_subset()
        for splitting in admissible_splittings(parity, m=0):
            gap_k = subset.card + splitting.delta
            gap_l = subset.card - splitting.delta
            if splitting.delta > 0 and gap_k == 3:
                out.append(block_representative("K", subset, splitting, marks, ProjPoint.affine(-1)))
            if gap_l == 3:
                out.append(block_representative("L", subset, splitting, marks, ProjPoint.affine(-1)))
    else:
        for member in (wall.subset, wall.subset.complement):
            for splitting in admissible_splittings(parity, m=0):
                gap_k = member.card + splitting.delta
                gap_l = member.card - splitting.delta
                if splitting.delta > 0 and gap_k == 2:
                    out.append(block_representative("K", member, splitting, marks, Fraction(1)))
                if gap_l == 2 and not (member == FULL and splitting.delta == 2):
                    out.append(block_representative("L", member, splitting, marks, Fraction(1)))
            if member == FULL:
                out.append(
                    block_representative("L", FULL, admissible_splittings(parity, 0)[0], marks, Fraction(1))
                )
                out.append(
                    block_representative("L", FULL, admissible_splittings(parity, 0)[1], marks, None)
                )
            # the orbit pair N_member
            delta_n = 2 if (parity == "even" and member == EMPTY) else (0 if parity == "even" else 1)
            splitting_n = next(s for s in admissible_splittings(parity, 0) if s.delta == delta_n)
            out.append(orbit_representative(member, splitting_n, marks))
    return out


ALL_CHECKS = (
    ("oracle-vs-prediction", lambda seed, samples: check_oracle_vs_prediction(seed)),
    ("d4-census", lambda seed, samples: check_d4_census(seed)),
    ("wall-crossing", lambda seed, samples: check_wall_crossing(seed)),
    ("automorphism-invariance", lambda seed, samples: check_automorphism_invariance(seed)),
    ("existence-criterion", lambda seed, samples: check_bauer_biswas(seed, min(samples, 200))),
    ("jumping-cocycle", lambda seed, samples: check_cocycle(seed)),
    ("s-equivalence", lambda seed, samples: check_strict_on_walls(seed)),
)


def run_all(seed: int = 7, samples: int = 200, deep: bool = False):
    results = [fn(seed, samples) for _, fn in ALL_CHECKS]
    if deep:
        results.append(deep_prediction_table())
    return results


def deep_prediction_table() -> CheckResult:
    """Exhaustive chamber-by-label stability table, checked for D4 equivariance."""
    from .weights import d4_elements

    marks = _marks()
    rng = random.Random(0)
    rows = 0
    for parity in ("even", "odd"):
        chambers = all_chambers(parity)
        for chamber in chambers:
            for qph in representative_inventory(parity, marks, rng):
                predicted_stability(component_label(qph), chamber)
                rows += 1
    return CheckResult("deep-prediction-table", True, f"{rows} (chamber, label) rows evaluated")


def report(results) -> str:
    lines = [r.line() for r in results]
    failures = [r for r in results if not r.passed]
    lines.append(f"{len(failures)} failures")
    for r in failures:
        if r.counterexample:
            lines.append(f"counterexample for {r.name}:")
            lines.append(r.counterexample.rstrip())
    return "\n".join(lines) + "\n"
