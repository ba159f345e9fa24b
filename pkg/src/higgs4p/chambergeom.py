"""Exact polyhedral geometry of chamber closures and the wall-crossing graph.

Every chamber closure is a 4-simplex on five known vertices (the apex or an
outer cube vertex, plus a tetrahedral cell).  Adjacency of two chambers is
decided from their H-representations: enumerate the basic solutions of the
combined inequality system, keep the feasible ones, and measure the affine
dimension of the intersection polytope.  Two chambers are adjacent exactly
when that dimension is 3.  This settles the cell count per interior wall by
computation instead of a hand count.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Optional

from .exact import affine_rank, nullspace, solve_unique
from .weights import Chamber, Wall, all_chambers, wall_list


def _normalize_halfspace(normal, offset):
    import math

    den = math.lcm(*(x.denominator for x in list(normal) + [offset]))
    ints = [int(x * den) for x in normal] + [int(offset * den)]
    g = 0
    for v in ints:
        g = math.gcd(g, abs(v))
    if g:
        ints = [v // g for v in ints]
    return tuple(ints)


def simplex_facets(vertices) -> tuple:
    """Inward inequality list a.x <= b for a full-dimensional 4-simplex."""
    facets = []
    verts = [tuple(v) for v in vertices]
    if len(verts) != 5:
        raise ValueError("need five vertices")
    for omit in range(5):
        on = [verts[i] for i in range(5) if i != omit]
        rows = [list(v) + [Fraction(1)] for v in on]
        basis = nullspace(rows)
        if len(basis) != 1:
            raise ValueError("degenerate simplex")
        a = basis[0][:4]
        b = -basis[0][4]
        inside = sum(x * y for x, y in zip(a, verts[omit]))
        if inside > b:
            a, b = tuple(-x for x in a), -b
        elif inside == b:
            raise ValueError("degenerate simplex")
        facets.append(_normalize_halfspace(a, b))
    return tuple(facets)


def polytope_points(halfspaces) -> list:
    """All basic feasible solutions of a bounded system a.x <= b in Q^4."""
    hs = sorted(set(halfspaces))
    pts = set()
    for combo in combinations(hs, 4):
        a_rows = [row[:4] for row in combo]
        b_vec = [Fraction(row[4]) for row in combo]
        x = solve_unique(a_rows, b_vec)
        if x is None:
            continue
        ok = True
        for row in hs:
            if sum(Fraction(c) * v for c, v in zip(row[:4], x)) > row[4]:
                ok = False
                break
        if ok:
            pts.add(x)
    return sorted(pts)


@lru_cache(maxsize=128)
def chamber_facets(chamber: Chamber) -> tuple:
    return simplex_facets(chamber.closure_vertices())


def intersection_dimension(c1: Chamber, c2: Chamber) -> int:
    """Affine dimension of the intersection of two chamber closures (-1: empty)."""
    pts = polytope_points(chamber_facets(c1) + chamber_facets(c2))
    return affine_rank(pts)


def _face_wall(points, parity: str) -> Optional[Wall]:
    """The canonical wall whose hyperplane contains every given point."""
    for w in wall_list(parity):
        normal, offset = w.hyperplane()
        if all(sum(n * x for n, x in zip(normal, p)) == offset for p in points):
            return w
    return None


@dataclass(frozen=True)
class WallCrossingGraph:
    """1-skeleton of the dual polytope: chambers as vertices, shared 3-cells as edges."""

    parity: str
    nodes: tuple       # Chamber, deterministic order
    edges: tuple       # (i, j, Wall) with i < j indices into nodes


@lru_cache(maxsize=4)
def wall_crossing_graph(parity: str) -> WallCrossingGraph:
    nodes = tuple(sorted(all_chambers(parity), key=lambda c: c.serialize()))
    edges = []
    for i, j in combinations(range(len(nodes)), 2):
        pts = polytope_points(chamber_facets(nodes[i]) + chamber_facets(nodes[j]))
        if affine_rank(pts) == 3:
            wall = _face_wall(pts, parity)
            if wall is None:
                raise AssertionError("shared 3-cell not on any canonical wall")
            edges.append((i, j, wall))
    return WallCrossingGraph(parity, nodes, tuple(edges))


def graph_neighbors(graph: WallCrossingGraph, chamber: Chamber) -> list:
    idx = graph.nodes.index(chamber)
    out = []
    for i, j, w in graph.edges:
        if i == idx:
            out.append((graph.nodes[j], w))
        elif j == idx:
            out.append((graph.nodes[i], w))
    return out


def interior_wall_cell_count(parity: str) -> dict:
    """Realized number of shared 3-cells per interior wall (computed, not assumed)."""
    graph = wall_crossing_graph(parity)
    counts = {}
    for _, _, w in graph.edges:
        if w.kind == "interior":
            counts[w] = counts.get(w, 0) + 1
    return counts
