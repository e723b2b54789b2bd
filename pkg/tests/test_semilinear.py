from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from valdim import semilinear as sl
from valdim.errors import ParseError, SemanticError
from valdim.lowerset import NEG_INF


def grid(lo, hi, denom):
    return [F(i, denom) for i in range(lo * denom, hi * denom + 1)]


def dnf_atoms(f):
    return [[str(a) for a in b.atoms] for b in sl.normalize_dnf(f)]


class TestParser:
    def test_conjunction(self):
        f = sl.parse_formula("x1 < x2 & x2 <= 1")
        assert isinstance(f, sl.And) and len(f.parts) == 2
        assert f.arity == 2

    def test_negated_equality(self):
        f = sl.parse_formula("!(2*x1 - x2 = 0)")
        assert isinstance(f, sl.Not)
        assert f.holds((F(1), F(1))) and not f.holds((F(1), F(2)))

    def test_disjunction(self):
        f = sl.parse_formula("x1 < 1 | x1 > 3")
        assert isinstance(f, sl.Or)

    def test_rational_constants(self):
        f = sl.parse_formula("2*x1 <= 3/2")
        assert f.holds((F(3, 4),)) and not f.holds((F(7, 8),))

    def test_syntax_error_position(self):
        with pytest.raises(ParseError) as err:
            sl.parse_formula("x1 < ")
        assert err.value.position is not None

    def test_unknown_variable(self):
        with pytest.raises(SemanticError):
            sl.parse_formula("x1 < x5", arity=2)

    def test_non_integer_coefficient(self):
        with pytest.raises(ParseError):
            sl.parse_formula("1/2*x1 < 1")

    def test_exists_sugar(self):
        f = sl.parse_formula("exists x2 (x1 < x2 & x2 <= 1)")
        assert f.arity == 2
        assert f.holds((F(0), F(99))) and not f.holds((F(1), F(0)))


class TestNormalizeDnf:
    def test_single_atom(self):
        assert len(sl.normalize_dnf(sl.parse_formula("x1 < 1"))) == 1

    def test_two_disjuncts(self):
        assert len(sl.normalize_dnf(sl.parse_formula("x1 = 0 | x1 = 1"))) == 2

    def test_negation_covers_line(self):
        f = sl.parse_formula("!(x1 < 0 & x1 > 1)")
        union = sl.Or.of(*[b.to_formula() for b in sl.normalize_dnf(f)])
        for x in grid(-2, 2, 4):
            assert union.holds((x,)) == f.holds((x,)) == True  # noqa: E712

    def test_empty_disjuncts_pruned(self):
        f = sl.parse_formula("(x1 < 0 & x1 > 0) | x1 = 5")
        assert len(sl.normalize_dnf(f)) == 1


class TestEmptiness:
    def test_contradictory_pair(self):
        b = sl.normalize_dnf(sl.parse_formula("x1 < 0 & x1 >= 0"), 1)
        assert b == []

    def test_strict_cycle(self):
        system = sl.BasicSet(
            tuple(
                a.atom
                for a in [sl.atom((1, -1), "<", 0), sl.atom((-1, 1), "<", 0)]
            ),
            2,
        )
        assert sl.is_empty(system)

    def test_narrow_band_feasible_with_witness(self):
        b = sl.normalize_dnf(sl.parse_formula("x1 < x2 & x2 < x1 + 1"))[0]
        assert not sl.is_empty(b)
        w = sl.sample_point(b)
        assert w is not None and b.holds(w)


class TestProject:
    def test_transitivity(self):
        f = sl.parse_formula("x1 < x2 & x2 < 1")
        assert dnf_atoms(sl.project(f, [0])) == [["x1 < 1"]]

    def test_divisibility(self):
        f = sl.parse_formula("2*x2 = x1")
        p = sl.project(f, [0])
        assert sl.normalize_dnf(p)[0].atoms == ()

    def test_sandwich_equality(self):
        f = sl.parse_formula("x1 <= x2 & x2 <= x1 & x2 < 0")
        p = sl.project(f, [0])
        for x in grid(-2, 2, 4):
            assert p.holds((x,)) == (x < 0)

    def test_projection_of_empty(self):
        f = sl.parse_formula("x1 < 0 & x1 > 0")
        p = sl.project(f, [0])
        assert isinstance(p, sl.Bool) and not p.value

    def test_project_basic_empty_contract(self):
        # contradiction purely among kept coordinates must still yield None
        b = sl.BasicSet(
            (
                sl.LinearAtom((0, 1, 0), "<", F(0)),
                sl.LinearAtom((0, 1, 0), "=", F(0)),
            ),
            3,
        )
        assert sl.project_basic(b, [0, 1]) is None

    def test_zero_denominator_rejected(self):
        with pytest.raises(ParseError):
            sl.parse_formula("x1 < 1/0")


class TestOneVarCanonical:
    def test_interval_and_point(self):
        t = sl.one_var_canonical(sl.parse_formula("(0 < x1 & x1 < 1) | x1 = 2"))
        assert (t.M, t.N) == (1, 1)
        assert t.boundary == (F(0), F(1), F(2))

    def test_half_line(self):
        t = sl.one_var_canonical(sl.parse_formula("x1 <= 0"))
        assert (t.M, t.N) == (1, 0)
        assert t.intervals == ((None, False, F(0), True),)

    def test_punctured_ray(self):
        t = sl.one_var_canonical(sl.parse_formula("x1 < 1 & !(x1 = 0)"))
        assert (t.M, t.N) == (2, 0)
        assert t.intervals == (
            (None, False, F(0), False),
            (F(0), False, F(1), False),
        )

    def test_merging_adjacent_pieces(self):
        t = sl.one_var_canonical(sl.parse_formula("x1 < 0 | x1 = 0 | (0 < x1 & x1 < 1)"))
        assert (t.M, t.N) == (1, 0)
        assert t.intervals == ((None, False, F(1), False),)

    def test_arity_guard(self):
        with pytest.raises(ValueError):
            sl.one_var_canonical(sl.parse_formula("x1 < x2"))


class TestCellDecompose:
    def test_open_interval(self):
        cells = sl.cell_decompose(sl.parse_formula("0 < x1 & x1 < 1"))
        assert [c.signature for c in cells] == [(1,)]

    def test_graph_cell(self):
        cells = sl.cell_decompose(sl.parse_formula("0 < x1 & x1 < 1 & x2 = x1"))
        assert [c.signature for c in cells] == [(1, 0)]
        cell = cells[0]
        for x in grid(0, 1, 8):
            for y in grid(0, 1, 8):
                member = 0 < x < 1 and y == x
                assert cell.contains((x, y)) == member

    def test_band_cell(self):
        f = sl.parse_formula("0 < x1 & x1 < 1 & x1 < x2 & x2 < x1 + 1")
        cells = sl.cell_decompose(f)
        assert [c.signature for c in cells] == [(1, 1)]
        for x in grid(0, 1, 8):
            for y in grid(0, 2, 8):
                assert cells[0].contains((x, y)) == f.holds((x, y))

    def test_cells_partition_on_grid(self):
        f = sl.parse_formula("x2 <= x1 | x1 = 0")
        cells = sl.cell_decompose(f)
        for x in grid(-1, 1, 4):
            for y in grid(-1, 1, 4):
                hits = sum(c.contains((x, y)) for c in cells)
                assert hits == (1 if f.holds((x, y)) else 0)

    def test_cell_consistency_and_sample(self):
        f = sl.parse_formula("x1 < x2 & x2 < x1 + 1 & 0 <= x1")
        for c in sl.cell_decompose(f):
            assert c.is_consistent()
            assert c.contains(c.sample())


class TestDimension:
    def test_full_plane(self):
        f = sl.parse_formula("x1 = x1 | x1 < x2")
        assert sl.dimension(f) == 2 == sl.dimension_via_projection(f)

    def test_diagonal(self):
        f = sl.parse_formula("x2 = x1")
        assert sl.dimension(f) == 1 == sl.dimension_via_projection(f)

    def test_union_rule(self):
        f = sl.parse_formula("x2 = x1 | (0 < x1 & x1 < 1 & 0 < x2 & x2 < 1)")
        assert sl.dimension(f) == 2

    def test_empty(self):
        f = sl.parse_formula("x1 < 0 & x1 > 0")
        assert sl.dimension(f) == NEG_INF == sl.dimension_via_projection(f)

    def test_point(self):
        f = sl.parse_formula("x1 = 0 & x2 = 5")
        assert sl.dimension(f) == 0 == sl.dimension_via_projection(f)


class TestClosure:
    def test_relaxes_strict_faces(self):
        c = sl.closure(sl.parse_formula("0 < x1 & x1 <= 1"))
        assert dnf_atoms(c) == [["-x1 <= 0", "x1 <= 1"]]

    def test_empty_dropped_not_relaxed(self):
        c = sl.closure(sl.parse_formula("x1 < 0 & x1 >= 0"))
        assert isinstance(c, sl.Bool) and not c.value

    def test_half_plane(self):
        c = sl.closure(sl.parse_formula("x1 < x2"))
        assert dnf_atoms(c) == [["x1 - x2 <= 0"]]

    def test_idempotent_and_extensive(self):
        f = sl.parse_formula("(0 < x1 & x1 < 1) | x1 = 3")
        c = sl.closure(f)
        assert sl.normalize_dnf(sl.closure(c)) == sl.normalize_dnf(c)
        diff = sl.And.of(f, sl.Not.of(c))
        assert all(sl.is_empty(b) for b in sl.normalize_dnf(diff, 1))


class TestIsPolyhedral:
    def test_union_of_closed_halflines(self):
        ok, witness = sl.is_polyhedral(sl.parse_formula("x1 <= 0 | x1 >= 1"))
        assert ok and len(witness) == 2

    def test_open_halfline(self):
        ok, witness = sl.is_polyhedral(sl.parse_formula("x1 < 0"))
        assert not ok and witness is None

    def test_closure_is_always_polyhedral(self):
        f = sl.parse_formula("(x1 < x2 & x2 < 1) | 2*x1 > 3")
        ok, witness = sl.is_polyhedral(sl.closure(f))
        assert ok
        assert all(b.is_weak() for b in witness)

    def test_hidden_closedness(self):
        # strict presentation of a closed set
        ok, _ = sl.is_polyhedral(sl.parse_formula("x1 < 0 | x1 = 0 | x1 > 0"))
        assert ok


class TestProductAndFrontier:
    def test_product_dimension_adds(self):
        f = sl.parse_formula("0 < x1 & x1 < 1")          # dim 1
        g = sl.parse_formula("x1 = 0 & 0 < x2 & x2 < 1")  # dim 1 in the plane
        fp = sl.And.of(
            sl.atom((1, 0, 0), ">", 0),
            sl.atom((1, 0, 0), "<", 1),
            sl.atom((0, 1, 0), "=", 0),
            sl.atom((0, 0, 1), ">", 0),
            sl.atom((0, 0, 1), "<", 1),
        )
        assert sl.dimension(f) + sl.dimension(g) == sl.dimension(fp) == 2

    def test_frontier_drops_dimension(self):
        f = sl.parse_formula("0 < x1 & x1 < 1 & 0 < x2 & x2 < 1")
        frontier = sl.And.of(sl.closure(f), sl.Not.of(f))
        assert sl.dimension(frontier) == 1 < sl.dimension(f)


class TestJson:
    def test_cell_round_trip(self):
        f = sl.parse_formula("0 < x1 & x1 < 1 & x2 = x1")
        for c in sl.cell_decompose(f):
            assert sl.cell_from_json(sl.cell_to_json(c)) == c


rationals = st.fractions(min_value=-4, max_value=4, max_denominator=2)


def atoms_strategy(n):
    coeffs = st.tuples(*[st.integers(-3, 3)] * n).filter(any)
    rel = st.sampled_from(["<", "<=", "=", ">=", ">"])
    return st.builds(sl.atom, coeffs, rel, rationals)


def systems_strategy(n):
    return st.lists(atoms_strategy(n), min_size=1, max_size=4).map(
        lambda parts: sl.BasicSet(
            tuple(p.atom for p in parts if isinstance(p, sl.Atom)), n
        )
    )


@settings(max_examples=80, deadline=None)
@given(systems_strategy(2))
def test_emptiness_verdict_matches_witness(b):
    if sl.is_empty(b):
        assert sl.sample_point(b) is None
    else:
        w = sl.sample_point(b)
        assert w is not None and b.holds(w)


@settings(max_examples=60, deadline=None)
@given(systems_strategy(2))
def test_closure_contains_and_relaxes(b):
    f = b.to_formula()
    cl = sl.closure(f)
    inside_not_closed = sl.And.of(f, sl.Not.of(cl))
    assert all(sl.is_empty(d) for d in sl.normalize_dnf(inside_not_closed, 2))
    ok, _ = sl.is_polyhedral(cl)
    assert ok


@settings(max_examples=60, deadline=None)
@given(systems_strategy(3), st.permutations([0, 1, 2]))
def test_projection_sample_points_are_shadows(b, order):
    keep = sorted(order[:2])
    p = sl.project_basic(b, keep)
    if p is None:
        assert sl.is_empty(b)
        return
    w = sl.sample_point(b)
    assert w is not None
    assert p.holds(tuple(w[i] for i in keep))
