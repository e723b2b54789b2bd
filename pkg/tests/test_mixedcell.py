import random
from fractions import Fraction as F

import pytest

from valdim import semilinear as sl
from valdim.errors import ParseError, SemanticError
from valdim.lowerset import dim_nat, principal
from valdim.mixedcell import (
    INFINITY,
    FactoredPoly,
    GammaPermutation,
    GammaTranslation,
    GammaUnimodular,
    KTranslation,
    PuiseuxElement,
    apply_bijection,
    mixed_cell_decompose,
    mixed_dimension,
    mixed_dimension_via_fibers,
    monomial_decompose,
    parse_mixed_formula,
    piece_k_dimension,
    project_to_gamma,
    valuation,
)

T = PuiseuxElement.of((1, 1))
ZERO = PuiseuxElement()
ONE = PuiseuxElement.constant(1)


def pe(*terms):
    return PuiseuxElement.of(*terms)


class TestPuiseux:
    def test_valuation_examples(self):
        assert valuation(pe((F(1, 2), 2), (1, 1))) == F(1, 2)
        assert valuation(ZERO) is INFINITY
        assert valuation(pe((-1, 1), (0, 1))) == -1

    def test_arithmetic_cancels(self):
        a = pe((0, 1), (1, 2))
        b = pe((1, 2), (2, -1))
        assert (a - b).terms == ((F(0), F(1)), (F(2), F(1)))
        assert (a - a).is_zero()

    def test_infinity_order(self):
        assert F(100) < INFINITY
        assert not (INFINITY < INFINITY)
        assert INFINITY <= INFINITY

    def test_factored_poly_guards(self):
        with pytest.raises(ValueError):
            FactoredPoly(0, ())
        with pytest.raises(ValueError):
            FactoredPoly(1, ((ZERO, 1), (ZERO, 2)))
        with pytest.raises(ValueError):
            FactoredPoly(1, ((ZERO, 0),))

    def test_valuation_at(self):
        f = FactoredPoly(1, ((ZERO, 1), (T, 1)))
        x = pe((F(1, 2), 1))
        assert f.valuation_at(x) == F(1, 2) + F(1, 2)
        assert f.valuation_at(T) is INFINITY


class TestMonomialDecompose:
    def sample_many(self, rng, pieces, count=100):
        pts = []
        for piece, _ in pieces:
            pts.append(piece.sample())
        while len(pts) < count:
            terms = [
                (F(rng.randint(-2, 6), rng.choice([1, 2])), F(rng.randint(-3, 3)))
                for _ in range(rng.randint(0, 3))
            ]
            pts.append(PuiseuxElement.of(*terms))
        return pts[:count]

    def check_oracle(self, polys, pieces, points):
        for x in points:
            hits = [(p, v) for p, v in pieces if p.contains(x)]
            assert len(hits) == 1, f"{x} lies in {len(hits)} pieces"
            piece, vals = hits[0]
            rho = piece.rho_of(x)
            for f, mv in zip(polys, vals):
                assert f.valuation_at(x) == mv.value(rho)

    def test_quadratic_with_roots_zero_and_t(self):
        f = FactoredPoly(1, ((ZERO, 1), (T, 1)))
        pieces = monomial_decompose([f])
        index = {
            (p.kind, p.lo, p.hi, p.radius): v[0] for p, v in pieces
        }
        # far annulus: slope 2
        outer = index[("annulus", None, F(1), None)]
        assert (outer.const, outer.slope) == (F(0), 2)
        # inner ball around 0 minus the point: slope 1, constant 1
        inner = index[("annulus", F(1), None, None)]
        assert (inner.const, inner.slope) == (F(1), 1)
        # generic sphere at the critical radius: value 2
        sphere = index[("sphere", None, None, F(1))]
        assert sphere.value(F(1)) == F(2)
        rng = random.Random(7)
        self.check_oracle([f], pieces, self.sample_many(rng, pieces))

    def test_single_linear(self):
        f = FactoredPoly(1, ((ZERO, 1),))
        pieces = monomial_decompose([f])
        kinds = sorted(p.kind for p, _ in pieces)
        assert kinds == ["annulus", "points"]
        annulus = next(v for p, v in pieces if p.kind == "annulus")
        assert (annulus[0].const, annulus[0].slope) == (F(0), 1)

    def test_translation_invariance(self):
        f = FactoredPoly(1, ((ZERO, 1), (T, 1)))
        g = FactoredPoly(1, ((ONE, 1), (ONE + T, 1)))
        pf = monomial_decompose([f])
        pg = monomial_decompose([g])
        rng = random.Random(11)
        points = self.sample_many(rng, pf)
        for x in points:
            assert g.valuation_at(x + ONE) == f.valuation_at(x)
        self.check_oracle([g], pg, [x + ONE for x in points])
        # inside the root cluster (radius >= 1) the translated pieces keep
        # their shape and valuations; outside, tracking 0 refines g's line
        def cluster_pieces(pieces, centers):
            rows = []
            for p, v in pieces:
                if p.kind == "sphere" and p.center in centers and p.radius >= 1:
                    rows.append(("sphere", str(p.radius), v))
                elif p.kind == "annulus" and p.center in centers and p.lo is not None and p.lo >= 1:
                    rows.append(("annulus", f"{p.lo}:{p.hi}", v))
            return sorted(rows)

        assert cluster_pieces(pf, {ZERO, T}) == cluster_pieces(pg, {ONE, ONE + T})

    def test_multiple_polys_share_pieces(self):
        f = FactoredPoly(1, ((ZERO, 2),))
        g = FactoredPoly(3, ((T, 1), (pe((2, 1)), 1)))
        pieces = monomial_decompose([f, g])
        rng = random.Random(13)
        self.check_oracle([f, g], pieces, self.sample_many(rng, pieces))


class TestPieceKDimension:
    def test_point_list(self):
        pieces = monomial_decompose([FactoredPoly(1, ((ZERO, 1), (T, 1)))])
        for p, _ in pieces:
            expected = 0 if p.kind == "points" else 1
            assert piece_k_dimension(p) == expected


class TestMixedParser:
    def test_valuation_atom(self):
        f = parse_mixed_formula("v((x)*(x - t)) + 2*g1 <= 3/2", 1)
        assert f.n_gamma == 1

    def test_bare_linear_factor(self):
        f = parse_mixed_formula("v(x - 1 - t) >= 1", 0)
        [atom] = f.atoms()
        assert atom.poly.roots[0][0] == ONE + T

    def test_zero_test_inf(self):
        f = parse_mixed_formula("v(x) = inf", 1)
        assert f.holds(ZERO, (F(0),)) and not f.holds(T, (F(0),))

    def test_two_polys_rejected(self):
        with pytest.raises(SemanticError):
            parse_mixed_formula("v(x) < v(x - 1)", 0)

    def test_inf_must_stand_alone(self):
        with pytest.raises(ParseError):
            parse_mixed_formula("v(x) < inf + 1", 0)

    def test_weights_fold(self):
        f = parse_mixed_formula("2*v(x) - v(x) < 1", 0)
        [atom] = f.atoms()
        assert atom.weight == 1


class TestMixedCells:
    def test_graph_over_annulus(self):
        f = parse_mixed_formula("g1 = v(x) & 0 < v(x) & v(x) < 1", 1)
        cells = mixed_cell_decompose(f)
        assert len(cells) == 1
        c = cells[0]
        assert c.kdim == 1 and c.gamma_signature == (0,)
        assert c.dim_pair() == (1, 0)

    def test_product_cell(self):
        f = parse_mixed_formula("v(x) >= 0 & 0 < g1 & g1 < 1", 1)
        dims = {c.dim_pair() for c in mixed_cell_decompose(f)}
        assert max(dims) == (1, 1)
        assert mixed_dimension(f) == principal((1, 1))

    def test_point_base_full_fiber(self):
        f = parse_mixed_formula("v(x) = inf", 1)
        assert mixed_dimension(f) == principal((0, 1))

    def test_partition_on_samples(self):
        f = parse_mixed_formula(
            "(v(x - t) > 1 & g1 <= v(x)) | (g1 = 0 & v(x) < 0)", 1
        )
        cells = mixed_cell_decompose(f)
        rng = random.Random(3)
        xs = [ZERO, T, ONE, T + pe((2, 1)), pe((-1, 1)), pe((F(3, 2), 1))]
        while len(xs) < 40:
            terms = [
                (F(rng.randint(-2, 4), rng.choice([1, 2])), F(rng.randint(-2, 2)))
                for _ in range(rng.randint(0, 2))
            ]
            xs.append(PuiseuxElement.of(*terms))
        for x in xs:
            for g in ([F(0)], [F(1)], [F(-1, 2)], [F(2)]):
                inside = [c for c in cells if c.contains(x, tuple(g))]
                assert len(inside) == (1 if f.holds(x, tuple(g)) else 0)

    def test_cell_samples_members(self):
        f = parse_mixed_formula("g1 <= v(x) & v(x - t) = 1 & g1 > -2", 1)
        for c in mixed_cell_decompose(f):
            x, gamma = c.sample()
            assert c.contains(x, gamma)
            assert f.holds(x, gamma)


class TestMixedDimension:
    def test_hesitation_example(self):
        f = parse_mixed_formula(
            "(v(x - 1) = inf & 0 < g1 & g1 < 1 & 0 < g2 & g2 < 1)"
            " | (v(x) >= 0 & g1 = 0 & g2 = 0)",
            2,
        )
        d = mixed_dimension(f)
        assert d.maxima == ((0, 2), (1, 0))
        assert dim_nat(d) == 2
        assert mixed_dimension_via_fibers(f) == d

    def test_full_space(self):
        f = parse_mixed_formula("v(x) >= 0 & g1 = g1 & g2 = g2", 2)
        assert mixed_dimension(f) == principal((1, 2))

    def test_empty(self):
        f = parse_mixed_formula("v(x) < 0 & v(x) > 0", 1)
        assert mixed_dimension(f).is_empty()

    def test_fiber_route_agrees(self):
        f = parse_mixed_formula("g1 < v(x) & v(x) < 1 & g1 > -1", 1)
        assert mixed_dimension(f) == mixed_dimension_via_fibers(f)


class TestProjectToGamma:
    def test_graph_projects_to_interval(self):
        f = parse_mixed_formula("g1 = v(x) & 0 < v(x) & v(x) < 1", 1)
        p = project_to_gamma(f)
        for g in [F(-1), F(0), F(1, 2), F(1), F(2)]:
            assert p.holds((g,)) == (0 < g < 1)
        assert sl.dimension(p) == 1  # one more than the fiber dimension 0

    def test_equal_coordinates(self):
        f = parse_mixed_formula("g1 = v(x) & g2 = v(x)", 2)
        p = project_to_gamma(f)
        assert sl.dimension(p) == 1
        assert p.holds((F(5), F(5))) and not p.holds((F(1), F(2)))

    def test_pinned_radius(self):
        f = parse_mixed_formula("v(x) = 0 & g1 = v(x)", 1)
        p = project_to_gamma(f)
        assert sl.dimension(p) == 0
        assert p.holds((F(0),)) and not p.holds((F(1),))


class TestBijections:
    def setup_method(self):
        self.f = parse_mixed_formula("g1 = v(x) & g2 <= 2*v(x) & 0 < v(x)", 2)
        self.dim = mixed_dimension(self.f)

    def test_swap(self):
        g = apply_bijection(
            parse_mixed_formula("g1 = v(x)", 2), GammaPermutation((1, 0))
        )
        [atom] = g.atoms()
        assert atom.gcoeffs == (0, 1)

    def test_k_translation(self):
        g = apply_bijection(
            parse_mixed_formula("v(x) = 0", 0), KTranslation(T)
        )
        [atom] = g.atoms()
        assert atom.poly.roots[0][0] == -T  # v(x + t) = 0

    def test_gamma_translation(self):
        f = parse_mixed_formula("0 < g1 & g1 < 1", 1)
        g = apply_bijection(f, GammaTranslation((F(1),)))
        assert g.holds(ZERO, (F(3, 2),)) and not g.holds(ZERO, (F(1, 2),))

    def test_invariance(self):
        for b in (
            GammaPermutation((1, 0)),
            GammaTranslation((F(1), F(-1, 2))),
            GammaUnimodular(((1, 1), (0, 1))),
            KTranslation(T),
        ):
            assert mixed_dimension(apply_bijection(self.f, b)) == self.dim

    def test_non_unimodular_rejected(self):
        with pytest.raises(SemanticError):
            apply_bijection(self.f, GammaUnimodular(((2, 0), (0, 1))))


class TestDimensionLaws:
    def test_union_is_join(self):
        from valdim.lowerset import join
        from valdim.mixedcell import MOr

        f = parse_mixed_formula("g1 = v(x) & 0 < v(x) & v(x) < 1", 1)
        g = parse_mixed_formula("v(x - t) = inf & g1 < 0", 1)
        u = MOr.of(f, g)
        assert mixed_dimension(u) == join(mixed_dimension(f), mixed_dimension(g))

    def test_random_unions(self):
        from valdim import verify
        from valdim.lowerset import join
        from valdim.mixedcell import MOr

        rng = random.Random(42)
        for _ in range(10):
            polys = [verify.random_factored_poly(rng, 3)]
            f = verify.random_mixed_formula(rng, 1, polys)
            g = verify.random_mixed_formula(rng, 1, polys)
            assert mixed_dimension(MOr.of(f, g)) == join(
                mixed_dimension(f), mixed_dimension(g)
            )

    def test_group_block_product_adds(self):
        # appending an independent block of group coordinates adds its
        # dimension to the group component
        from valdim.lowerset import add, principal
        from valdim.mixedcell import MAnd

        f = parse_mixed_formula("g1 = v(x) & 0 < v(x) & v(x) < 1", 3)
        block = parse_mixed_formula("0 < g2 & g2 < 1 & g3 = 0", 3)
        product = MAnd.of(f, block)
        assert mixed_dimension(product) == add(
            mixed_dimension(parse_mixed_formula("g1 = v(x) & 0 < v(x) & v(x) < 1", 1)),
            principal((0, 1)),
        )


class TestProjectToGammaPointwise:
    """project_to_gamma must agree with an existential over concrete
    valued points.  Per piece the candidate radii are the translated
    atoms' breakpoints inside the window plus midpoints and one point
    toward each end; a member of the piece at each candidate radius
    decides the existential by direct evaluation of the mixed formula,
    independent of the elimination path."""

    def _exists_x(self, f, gamma):
        from valdim.mixedcell.engine import piece_formulas

        n = f.n_gamma
        for piece, g in piece_formulas(f):
            if piece.kind in ("points", "sphere"):
                if f.holds(piece.sample(), gamma):
                    return True
                continue
            values = set()
            for atom in g.atoms():
                c = atom.coeffs[0]
                if c == 0:
                    continue
                rest = sum(atom.coeffs[1 + i] * gamma[i] for i in range(n))
                rho = (atom.rhs - rest) / c
                if (piece.lo is None or piece.lo < rho) and (
                    piece.hi is None or rho < piece.hi
                ):
                    values.add(rho)
            ordered = sorted(values)
            cands = list(ordered)
            cands.extend((a + b) / 2 for a, b in zip(ordered, ordered[1:]))
            if ordered:
                first, last = ordered[0], ordered[-1]
                cands.append(first - 1 if piece.lo is None else (piece.lo + first) / 2)
                cands.append(last + 1 if piece.hi is None else (last + piece.hi) / 2)
            else:
                cands.append(None)  # any interior point decides the window
            for rho in cands:
                if rho is not None and (
                    (piece.lo is not None and rho <= piece.lo)
                    or (piece.hi is not None and rho >= piece.hi)
                ):
                    continue
                x = piece.sample() if rho is None else piece.sample(rho=rho)
                if f.holds(x, gamma):
                    return True
        return False

    def test_agreement_on_gamma_grid(self):
        from valdim import semilinear as sl

        formulas = [
            parse_mixed_formula("g1 = v(x) & 0 < v(x) & v(x) < 1", 1),
            parse_mixed_formula("2*v(x - t) <= g1 & v(x) < 2", 1),
            parse_mixed_formula("(v(x) = inf & g1 < 0) | g1 = v(x - 1)", 1),
        ]
        grid = [F(i, 4) for i in range(-8, 9)]
        for f in formulas:
            p = project_to_gamma(f)
            for g in grid:
                assert p.holds((g,)) == self._exists_x(f, (g,)), (f, g)


class TestOpenCells:
    """A mixed cell is open in the product exactly when its dimension pair
    is (1, n): open pieces are clopen in the valued line, and the gamma
    fiber must be an open box.  Certified at sample points with exact
    perturbation sizes computed from the cell data."""

    def _epsilon(self, cell, x, gamma):
        eps = F(1)
        point = (cell.piece.rho_of(x), *gamma) if cell.piece.kind != "points" else gamma
        for k, (i, spec) in enumerate(zip(cell.fiber.signature, cell.fiber.bounds)):
            if i == 0:
                continue
            lo, hi = spec
            prefix = point[:k]
            if not isinstance(lo, str) and hasattr(lo, "value"):
                eps = min(eps, (point[k] - lo.value(prefix)) / 2)
            if not isinstance(hi, str) and hasattr(hi, "value"):
                eps = min(eps, (hi.value(prefix) - point[k]) / 2)
        return eps

    def test_openness_matches_dimension_pair(self):
        formulas = [
            ("v(x) >= 0 & 0 < g1 & g1 < 1", 1),
            ("g1 = v(x) & 0 < v(x) & v(x) < 1", 1),
            ("v(x) = inf & 0 < g1 & g1 < 1", 1),
            ("v(x - t) = 1 & -1 < g1 & g1 < 1", 1),
        ]
        for text, n in formulas:
            f = parse_mixed_formula(text, n)
            for cell in mixed_cell_decompose(f):
                x, gamma = cell.sample()
                should_be_open = cell.dim_pair() == (1, n)
                eps = self._epsilon(cell, x, gamma)
                stays = True
                for j in range(n):
                    for sign in (1, -1):
                        moved = tuple(
                            g + (sign * eps if k == j else 0)
                            for k, g in enumerate(gamma)
                        )
                        stays = stays and cell.contains(x, moved)
                # a deep valued perturbation never leaves a non-point piece
                deep = x + pe((F(50), F(1)))
                stays = stays and cell.contains(deep, gamma)
                assert stays == should_be_open


class TestProjectionBounds:
    def test_per_cell_bound(self):
        f = parse_mixed_formula(
            "(g1 < v(x) & v(x) < g1 + 1) | (v(x - t) > 2 & g1 = 0)", 1
        )
        for c in mixed_cell_decompose(f):
            d = sum(c.gamma_signature)
            limit = d + 1 if c.kdim == 1 else d
            pd = sl.dimension(c.gamma_projection())
            assert pd <= limit

    def test_shift_bound(self):
        from valdim.lowerset import shift_closure

        f = parse_mixed_formula("g1 = v(x) & g2 = v(x - t)", 2)
        pd = sl.dimension(project_to_gamma(f))
        assert pd <= dim_nat(shift_closure(mixed_dimension(f)))
