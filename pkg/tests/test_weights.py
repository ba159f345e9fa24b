"""Weight polytope combinatorics: walls, chambers, partition sets, symmetries."""

import itertools
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from higgs4p.weights import (
    ALL_SUBSETS,
    APEX,
    EMPTY,
    FULL,
    Chamber,
    CubeFace,
    D4Element,
    MarkSubset,
    OnWalls,
    PartitionSet,
    Wall,
    all_chambers,
    beta_sum,
    beta_to_su2,
    classify,
    d4_apply,
    d4_elements,
    iota_of,
    neighbor_across_wall,
    parity_swap,
    parse_chamber,
    partition_pairs,
    partition_set_table,
    semistable_parabolic_exists,
    subsets_of_card_parity,
    vertex_of_subset,
    wall_list,
)

unit_weights = st.fractions(min_value=F(1, 97), max_value=F(96, 97), max_denominator=97)
weight_vectors = st.tuples(unit_weights, unit_weights, unit_weights, unit_weights)


def S(*elts):
    return MarkSubset.of(*elts)


class TestBetaSum:
    def test_symmetric(self):
        assert beta_sum((F(1, 2),) * 4, S(1, 3)) == 0

    def test_direct(self):
        beta = (F(1, 10), F(2, 10), F(3, 10), F(5, 10))
        assert beta_sum(beta, S(1, 2)) == F(-1, 2)

    def test_full(self):
        beta = (F(1, 7), F(2, 7), F(3, 7), F(4, 7))
        assert beta_sum(beta, FULL) == sum(beta)

    @given(weight_vectors)
    @settings(max_examples=30, deadline=None)
    def test_complement_antisymmetry(self, beta):
        for sub in ALL_SUBSETS:
            assert beta_sum(beta, sub) + beta_sum(beta, sub.complement) == 0

    @given(weight_vectors)
    @settings(max_examples=30, deadline=None)
    def test_monotone(self, beta):
        for sub in ALL_SUBSETS:
            for i in range(1, 5):
                if not sub.contains(i):
                    bigger = sub.union(S(i))
                    assert beta_sum(beta, sub) <= beta_sum(beta, bigger)


class TestVertices:
    def test_pair(self):
        assert vertex_of_subset(S(1, 2)) == (0, 0, 1, 1)

    def test_empty_and_full(self):
        assert vertex_of_subset(EMPTY) == (1, 1, 1, 1)
        assert vertex_of_subset(FULL) == (0, 0, 0, 0)

    def test_parity(self):
        for sub in ALL_SUBSETS:
            ones = sum(vertex_of_subset(sub))
            assert ones % 2 == sub.card % 2


class TestWalls:
    def test_counts(self):
        for parity in ("even", "odd"):
            walls = wall_list(parity)
            assert len(walls) == 12
            assert sum(1 for w in walls if w.kind == "boundary") == 8
            assert sum(1 for w in walls if w.kind == "interior") == 4

    def test_even_table(self):
        walls = set(wall_list("even"))
        for i in range(1, 5):
            assert Wall(S(i), -2) in walls
            assert Wall.canonical(S(*(set(range(1, 5)) - {i})), 0) in walls
        assert Wall(EMPTY, -2) in walls
        assert Wall.canonical(S(1, 2), 0) in walls

    def test_odd_table(self):
        walls = set(wall_list("odd"))
        assert Wall(EMPTY, -3) in walls
        assert Wall.canonical(FULL, 1) in walls
        for pair in itertools.combinations(range(1, 5), 2):
            assert Wall.canonical(S(*pair), -1) in walls
        for i in range(1, 5):
            assert Wall.canonical(S(i), -1) in walls

    def test_identifications_symbolic(self):
        # H_{I,k} and H_{I^c,-k} carry opposite normals and offsets
        for parity in ("even", "odd"):
            for w in wall_list(parity):
                n1, b1 = w.hyperplane()
                n2, b2 = w.partner.hyperplane()
                assert tuple(-x for x in n1) == n2 and -b1 == b2
                assert w.partner.level == -w.level

    def test_canonical_is_smallest_mask(self):
        for parity in ("even", "odd"):
            for w in wall_list(parity):
                assert w.subset.mask <= w.partner.subset.mask


class TestPartitionSets:
    def test_counts_and_types(self):
        for parity in ("even", "odd"):
            table = partition_set_table(parity)
            assert len(table) == 16
            assert sum(1 for ps in table if ps.type_tag == "A") == 8
            assert sum(1 for ps in table if ps.type_tag == "B") == 8

    def test_even_type_b_cells(self):
        # {0, pairs through i} sits on the boundary wall of the singleton {i}
        for i in range(1, 5):
            others = sorted(set(range(1, 5)) - {i})
            sets = (EMPTY,) + tuple(S(i, j) for j in others)
            ps = PartitionSet(sets)
            assert ps.type_tag == "B"
            assert ps.cell == Wall.canonical(S(i), -2)

    def test_even_type_a_cells(self):
        for i in range(1, 5):
            others = sorted(set(range(1, 5)) - {i})
            sets = (EMPTY,) + tuple(S(a, b) for a, b in itertools.combinations(others, 2))
            ps = PartitionSet(sets)
            assert ps.type_tag == "A"
            assert ps.cell == CubeFace(i, 1)

    def test_odd_type_b_cells(self):
        ps = PartitionSet(tuple(S(i) for i in range(1, 5)))
        assert ps.cell == Wall(EMPTY, -3)
        ps2 = PartitionSet(tuple(S(*(set(range(1, 5)) - {i})) for i in range(1, 5)))
        assert ps2.cell == Wall.canonical(FULL, 1)
        ps3 = PartitionSet((S(1), S(2), S(1, 2, 4), S(1, 2, 3)))
        assert ps3.cell == Wall.canonical(S(1, 2), -1)

    def test_odd_type_a_cells(self):
        ps = PartitionSet((S(1), S(1, 3, 4), S(1, 2, 4), S(1, 2, 3)))
        assert ps.type_tag == "A"
        assert ps.cell == CubeFace(1, 0)

    def test_complement_closure_within_type(self):
        for parity in ("even", "odd"):
            table = partition_set_table(parity)
            for ps in table:
                comp = PartitionSet(tuple(s.complement for s in ps.sets))
                assert comp in table
                assert comp.type_tag == ps.type_tag


class TestClassify:
    def test_interior_type_b(self):
        c = classify((F(1, 10), F(2, 10), F(3, 10), F(5, 10)), "even")
        assert c.kind == "interior"
        assert set(c.sets) == {FULL, S(1, 2), S(1, 3), S(2, 3)}
        assert c.type_tag == "B"

    def test_exterior(self):
        c = classify((F(9, 10), F(1, 20), F(1, 20), F(1, 20)), "even")
        assert c == Chamber.exterior(S(2, 3, 4), "even")

    def test_odd_interior_type_a(self):
        c = classify((F(1, 2), F(1, 2), F(1, 2), F(1, 4)), "odd")
        assert set(c.sets) == {S(4), S(2, 3, 4), S(1, 3, 4), S(1, 2, 4)}
        assert c.type_tag == "A"

    def test_center_on_all_interior_walls(self):
        out = classify((F(1, 2),) * 4, "even")
        assert isinstance(out, OnWalls)
        assert len(out.walls) == 4
        assert all(w.kind == "interior" for w in out.walls)

    def test_degenerate_weight(self):
        with pytest.raises(ValueError):
            classify((F(0), F(1, 2), F(1, 2), F(1, 2)), "even")

    @given(weight_vectors)
    @settings(max_examples=60, deadline=None)
    def test_exterior_at_most_one_violation(self, beta):
        for parity in ("even", "odd"):
            swap = "odd" if parity == "even" else "even"
            violated = [
                s for s in subsets_of_card_parity(swap)
                if beta_sum(beta, s) < s.card - 3
            ]
            assert len(violated) <= 1

    @given(weight_vectors)
    @settings(max_examples=40, deadline=None)
    def test_locally_constant(self, beta):
        # the midpoint towards a close-by second point in the same chamber
        out = classify(beta, "even")
        if isinstance(out, OnWalls):
            return
        nudged = tuple(b + (F(1, 2) - b) / 1000 for b in beta)
        mid = tuple((a + b) / 2 for a, b in zip(beta, nudged))
        for probe in (nudged, mid):
            moved = classify(probe, "even")
            if not isinstance(moved, OnWalls):
                sides_a = {s for s in subsets_of_card_parity("even")
                           if beta_sum(beta, s) < s.card - 2}
                sides_b = {s for s in subsets_of_card_parity("even")
                           if beta_sum(probe, s) < s.card - 2}
                if sides_a == sides_b and out.kind == moved.kind:
                    if out.kind == "interior":
                        assert set(out.sets) == set(moved.sets)

    def test_interior_rows_match_table(self):
        for parity in ("even", "odd"):
            table = {ps.sets for ps in partition_set_table(parity)}
            for c in all_chambers(parity):
                if c.kind == "interior":
                    assert c.sets in table


class TestNeighbor:
    def test_flip_rule(self):
        c = parse_chamber("int:even:{1234,12,13,23}")
        w = Wall.canonical(S(1, 2), 0)
        c2 = neighbor_across_wall(c, w)
        assert set(c2.sets) == {FULL, S(3, 4), S(1, 3), S(2, 3)}
        assert c2.type_tag == "A"

    def test_exterior_partner(self):
        ext = Chamber.exterior(S(2, 3, 4), "even")
        w = Wall.canonical(S(2, 3, 4), 0)
        inner = neighbor_across_wall(ext, w)
        assert set(inner.sets) == {FULL, S(3, 4), S(2, 4), S(2, 3)}
        assert inner.type_tag == "B"

    def test_involution(self):
        for parity in ("even", "odd"):
            for c in all_chambers(parity):
                walls = wall_list(parity)
                for w in walls:
                    try:
                        c2 = neighbor_across_wall(c, w)
                    except ValueError:
                        continue
                    assert neighbor_across_wall(c2, w) == c
                    if c.kind == "interior" == c2.kind:
                        assert c.type_tag != c2.type_tag

    def test_iota(self):
        assert iota_of(S(2, 3, 4)) == frozenset({FULL, S(3, 4), S(2, 4), S(2, 3)})


class TestD4:
    def test_transposition_moves_exterior(self):
        g = D4Element((2, 1, 3, 4), EMPTY)
        c = Chamber.exterior(S(2, 3, 4), "even")
        assert d4_apply(g, c) == Chamber.exterior(S(1, 3, 4), "even")

    def test_double_reflection_fixes_apex(self):
        g = D4Element((1, 2, 3, 4), S(1, 2))
        assert g.apply_weights(APEX) == APEX

    def test_odd_flip_rejected(self):
        with pytest.raises(ValueError):
            D4Element((1, 2, 3, 4), S(1))

    def test_orbit_sizes(self):
        elements = list(d4_elements())
        assert len(elements) == 192
        for parity in ("even", "odd"):
            chambers = all_chambers(parity)
            for tag, expected in (("exterior", 8), ("A", 8), ("B", 8)):
                family = [c for c in chambers if c.type_tag == tag]
                orbit = {d4_apply(g, family[0]).serialize() for g in elements}
                assert orbit == {c.serialize() for c in family}
                assert len(orbit) == expected

    @given(st.integers(0, 191), st.integers(0, 191), weight_vectors)
    @settings(max_examples=40, deadline=None)
    def test_group_action(self, i, j, beta):
        elements = list(d4_elements())
        g, h = elements[i], elements[j]
        lhs = g.apply_weights(h.apply_weights(beta))
        rhs = g.compose(h).apply_weights(beta)
        assert lhs == rhs
        assert g.inverse().apply_weights(g.apply_weights(beta)) == tuple(beta)

    @given(st.integers(0, 191), weight_vectors)
    @settings(max_examples=40, deadline=None)
    def test_equivariant_classification(self, i, beta):
        g = list(d4_elements())[i]
        for parity in ("even", "odd"):
            out = classify(beta, parity)
            moved = classify(g.apply_weights(beta), parity)
            if isinstance(out, OnWalls):
                assert isinstance(moved, OnWalls)
            else:
                assert moved == d4_apply(g, out)

    def test_parity_swap(self):
        c = parse_chamber("int:even:{1234,12,13,23}")
        swapped = parity_swap(c, 1)
        assert swapped.parity == "odd"
        beta = (F(1, 10), F(2, 10), F(3, 10), F(5, 10))
        flipped = parity_swap(beta, 1)
        assert classify(flipped, "odd") == parity_swap(classify(beta, "even"), 1)


class TestExistenceCriterion:
    def test_even_true(self):
        assert semistable_parabolic_exists((F(1, 10), F(2, 10), F(3, 10), F(5, 10)), 0)

    def test_even_false(self):
        assert not semistable_parabolic_exists((F(9, 10), F(1, 20), F(1, 20), F(1, 20)), 0)

    def test_odd_center(self):
        assert semistable_parabolic_exists((F(1, 2),) * 4, 1)


class TestSU2:
    def test_half(self):
        pairs = beta_to_su2((F(1, 2),) * 4)
        assert pairs[0] == (F(1, 4), F(3, 4))

    def test_rejects_zero(self):
        with pytest.raises(ValueError):
            beta_to_su2((F(0), F(1, 2), F(1, 2), F(1, 2)))

    @given(weight_vectors)
    @settings(max_examples=30, deadline=None)
    def test_roundtrip(self, beta):
        for b, (a1, a2) in zip(beta, beta_to_su2(beta)):
            assert a2 - a1 == b
            assert 0 < a1 < F(1, 2)


def test_chamber_serialization_roundtrip():
    for parity in ("even", "odd"):
        for c in all_chambers(parity):
            assert parse_chamber(c.serialize()) == c
    assert parse_chamber("ext:odd:{}") == Chamber.exterior(EMPTY, "odd")
