import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from macgap.binom_core import op_lower
from macgap.polyspace import (
    GRat,
    Hyperplane,
    Poly,
    PolyFormatError,
    PolySubspace,
    coefficient_rows,
    exact_rank,
    format_grat,
    format_poly,
    green_suite,
    image_span_dim,
    mono,
    monomial_basis,
    parse_grat,
    parse_poly,
    random_hyperplane,
    restrict,
    rng_for,
    subspace_rank,
    verify_green,
    verify_restriction_theorem,
    veronese_components,
    veronese_suite,
)


def rank_by_division(rows):
    """Independent oracle: plain Gaussian elimination with exact division,
    on (re, im) Fraction pairs."""
    mat = [[(c.re, c.im) for c in row] for row in rows]
    rank = 0
    for col in range(len(mat[0]) if mat else 0):
        piv = next(
            (i for i in range(rank, len(mat)) if mat[i][col] != (0, 0)), None
        )
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        pa, pb = mat[rank][col]
        nrm = pa * pa + pb * pb
        inv = (pa / nrm, -pb / nrm)
        for i in range(rank + 1, len(mat)):
            fa, fb = mat[i][col]
            if (fa, fb) == (0, 0):
                continue
            ra = fa * inv[0] - fb * inv[1]
            rb = fa * inv[1] + fb * inv[0]
            mat[i] = [
                (
                    xa - (ra * ya - rb * yb),
                    xb - (ra * yb + rb * ya),
                )
                for (xa, xb), (ya, yb) in zip(mat[i], mat[rank])
            ]
        rank += 1
    return rank


grat_st = st.builds(
    GRat,
    st.fractions(min_value=-5, max_value=5, max_denominator=12),
    st.fractions(min_value=-5, max_value=5, max_denominator=12),
)


@st.composite
def poly_st(draw, n_vars=None, degree=None, nonzero=False):
    nv = n_vars if n_vars is not None else draw(st.integers(2, 3))
    d = degree if degree is not None else draw(st.integers(1, 3))
    basis = monomial_basis(nv, d)
    pairs = draw(
        st.lists(
            st.tuples(st.sampled_from(basis), grat_st),
            min_size=1 if nonzero else 0,
            max_size=len(basis),
        )
    )
    p = Poly(nv, d, dict(pairs))
    if nonzero and p.is_zero:
        p = mono(nv, basis[0])
    return p


class TestGRat:
    def test_coercion(self):
        assert GRat(2).re == Fraction(2)
        assert GRat("1/3").re == Fraction(1, 3)

    def test_field_ops(self):
        i = GRat(0, 1)
        assert i * i == GRat(-1)
        a = GRat(Fraction(1, 2), Fraction(3, 4))
        b = GRat(Fraction(-2), Fraction(1, 3))
        assert (a * b) / b == a
        assert a + (-a) == GRat()
        assert a.conjugate().conjugate() == a

    def test_division_by_zero(self):
        with pytest.raises(ZeroDivisionError):
            GRat(1) / GRat()

    @given(grat_st)
    def test_text_round_trip(self, c):
        assert parse_grat(format_grat(c)) == c

    def test_format_examples(self):
        assert format_grat(GRat(Fraction(-2, 3))) == "-2/3"
        assert format_grat(GRat(Fraction(1, 2), Fraction(5))) == "1/2,5/1"

    @pytest.mark.parametrize("bad", ["", ",", "1/0", "a/b", "1/2,3/4,5"])
    def test_parse_rejects(self, bad):
        with pytest.raises(PolyFormatError):
            parse_grat(bad)


class TestPoly:
    def test_validation(self):
        with pytest.raises(ValueError):
            Poly(2, 2, {(1, 0): GRat(1)})  # degree mismatch
        with pytest.raises(ValueError):
            Poly(2, 2, {(1, 1, 0): GRat(1)})  # wrong length
        with pytest.raises(ValueError):
            Poly(2, 1, {(2, -1): GRat(1)})

    def test_zero_drops(self):
        p = Poly(2, 2, {(2, 0): GRat(0), (1, 1): GRat(3)})
        assert list(p.coeffs) == [(1, 1)]
        assert not p.is_zero

    def test_add_cancellation(self):
        p = mono(2, (1, 1), 2)
        q = mono(2, (1, 1), -2)
        assert (p + q).is_zero
        assert (p + q).degree == 2

    def test_degree_mismatch_add(self):
        with pytest.raises(ValueError):
            mono(2, (1, 0)) + mono(2, (1, 1))

    def test_mul(self):
        p = mono(2, (1, 0)) + mono(2, (0, 1))
        sq = p * p
        assert sq.degree == 2
        assert sq.coeffs[(1, 1)] == GRat(2)

    def test_scalar_mul(self):
        p = mono(3, (1, 1, 0), 3)
        assert (p * 2).coeffs[(1, 1, 0)] == GRat(6)
        assert (Fraction(1, 3) * p).coeffs[(1, 1, 0)] == GRat(1)

    def test_evaluate(self):
        p = mono(2, (2, 0)) + mono(2, (0, 2), -1)
        vals = [GRat(3), GRat(2)]
        assert p.evaluate(vals) == GRat(5)
        i = GRat(0, 1)
        assert mono(2, (1, 1)).evaluate([i, i]) == GRat(-1)

    def test_conjugate_coeffs(self):
        p = mono(2, (1, 0), GRat(1, 2))
        assert p.conjugate_coeffs().coeffs[(1, 0)] == GRat(1, -2)


class TestMonomialBasis:
    def test_order_two_vars(self):
        assert monomial_basis(2, 1) == [(1, 0), (0, 1)]

    @pytest.mark.parametrize(
        "n_vars,d,count", [(3, 2, 6), (4, 3, 20), (1, 5, 1), (3, 0, 1)]
    )
    def test_counts(self, n_vars, d, count):
        basis = monomial_basis(n_vars, d)
        assert len(basis) == count
        assert len(basis) == math.comb(n_vars - 1 + d, d)
        assert all(sum(e) == d for e in basis)
        assert basis == sorted(basis, reverse=True)

    def test_rejects(self):
        with pytest.raises(ValueError):
            monomial_basis(0, 2)


class TestPolyText:
    @settings(max_examples=150)
    @given(poly_st())
    def test_round_trip(self, p):
        text = format_poly(p)
        q = parse_poly(text, n_vars=p.n_vars, degree=p.degree)
        assert q == p
        assert format_poly(q) == text

    def test_zero_needs_context(self):
        assert parse_poly("0", n_vars=3, degree=2).is_zero
        with pytest.raises(PolyFormatError):
            parse_poly("0")

    def test_merges_duplicate_terms(self):
        p = parse_poly("1/2 1 1; 1/2 1 1")
        assert p.coeffs[(1, 1)] == GRat(1)

    @pytest.mark.parametrize(
        "bad",
        ["", "1/2", "x 1 2", "1/0 1 1", "1/2 1 x", "1/2 1 -1", "1/1 1 0; 1/1 2 0"],
    )
    def test_rejects(self, bad):
        with pytest.raises(PolyFormatError):
            parse_poly(bad)

    def test_dimension_checks(self):
        with pytest.raises(PolyFormatError):
            parse_poly("1/1 1 0", n_vars=3)
        with pytest.raises(PolyFormatError):
            parse_poly("1/1 1 0", degree=2)


def plane(ints, pivot=None):
    coeffs = tuple(GRat(v) for v in ints)
    if pivot is None:
        pivot = next(i for i, v in enumerate(ints) if v)
    return Hyperplane(coeffs, pivot)


class TestRestrict:
    def test_kills_pivot_square(self):
        assert restrict(mono(3, (2, 0, 0)), plane([1, 0, 0])).is_zero

    def test_diagonal(self):
        got = restrict(mono(3, (1, 1, 0)), plane([1, -1, 0]))
        assert got == mono(2, (2, 0))

    def test_expansion(self):
        p = mono(3, (2, 0, 0)) + mono(3, (0, 1, 1))
        got = restrict(p, plane([1, 1, 1]))
        want = mono(2, (2, 0)) + mono(2, (1, 1), 3) + mono(2, (0, 2))
        assert got == want

    def test_pivot_validation(self):
        with pytest.raises(ValueError):
            Hyperplane((GRat(0), GRat(1)), 0)
        with pytest.raises(ValueError):
            Hyperplane((GRat(1),), 1)
        with pytest.raises(ValueError):
            restrict(mono(2, (1, 0)), plane([1, 0, 0]))
        with pytest.raises(ValueError):
            restrict(mono(1, (2,)), Hyperplane((GRat(1),), 0))

    @settings(max_examples=80, deadline=None)
    @given(
        p=poly_st(n_vars=3, degree=2),
        q=poly_st(n_vars=3, degree=2),
        a=grat_st,
        b=grat_st,
        data=st.data(),
    )
    def test_linearity(self, p, q, a, b, data):
        ints = data.draw(
            st.lists(st.integers(-4, 4), min_size=3, max_size=3).filter(any)
        )
        H = plane(ints)
        lhs = restrict(p.scale(a) + q.scale(b), H)
        rhs = restrict(p, H).scale(a) + restrict(q, H).scale(b)
        assert lhs == rhs


class TestExactRank:
    def test_known_int_ranks(self):
        rows = [
            [GRat(2), GRat(0), GRat(1)],
            [GRat(0), GRat(3), GRat(1)],
            [GRat(4), GRat(6), GRat(4)],
        ]
        assert exact_rank(rows) == 2

    def test_zero_and_empty(self):
        assert exact_rank([]) == 0
        assert exact_rank([[GRat(), GRat()]]) == 0

    def test_complex_dependency(self):
        i = GRat(0, 1)
        rows = [[GRat(1), i], [i, GRat(-1)]]
        assert exact_rank(rows) == 1
        rows = [[GRat(1), i], [i, GRat(1)]]
        assert exact_rank(rows) == 2

    def test_update_applies_to_rows_with_zero_leading_entry(self):
        # regression shape: middle row has a zero in the pivot column but
        # must still be rescaled for later exact divisions
        rows = [
            [GRat(2), GRat(1), GRat(1)],
            [GRat(0), GRat(3), GRat(5)],
            [GRat(2), GRat(7), GRat(11)],
        ]
        assert exact_rank(rows) == rank_by_division(rows)

    @settings(max_examples=120, deadline=None)
    @given(
        st.lists(
            st.lists(st.integers(-6, 6), min_size=4, max_size=4),
            min_size=1,
            max_size=6,
        )
    )
    def test_matches_division_oracle_int(self, ints):
        rows = [[GRat(v) for v in row] for row in ints]
        assert exact_rank(rows) == rank_by_division(rows)

    @settings(max_examples=120, deadline=None)
    @given(
        st.lists(
            st.lists(
                st.tuples(st.integers(-4, 4), st.integers(-4, 4)),
                min_size=3,
                max_size=3,
            ),
            min_size=1,
            max_size=5,
        )
    )
    def test_matches_division_oracle_gauss(self, pairs):
        rows = [[GRat(a, b) for a, b in row] for row in pairs]
        assert exact_rank(rows) == rank_by_division(rows)

    @settings(max_examples=60, deadline=None)
    @given(
        st.lists(
            st.lists(
                st.tuples(
                    st.fractions(min_value=-3, max_value=3, max_denominator=8),
                    st.fractions(min_value=-3, max_value=3, max_denominator=8),
                ),
                min_size=3,
                max_size=3,
            ),
            min_size=1,
            max_size=4,
        )
    )
    def test_matches_division_oracle_rational(self, pairs):
        rows = [[GRat(a, b) for a, b in row] for row in pairs]
        assert exact_rank(rows) == rank_by_division(rows)


class TestSubspaceRank:
    def test_full_space(self):
        for n_vars, d in [(2, 3), (3, 2)]:
            W = PolySubspace(n_vars, d, veronese_components(n_vars, d))
            assert subspace_rank(W) == math.comb(n_vars - 1 + d, d)

    def test_duplicates(self):
        W = PolySubspace(
            2, 2, [mono(2, (2, 0)), mono(2, (2, 0)), mono(2, (1, 1))]
        )
        assert subspace_rank(W) == 2

    def test_planted_dependency(self):
        p1 = mono(4, (2, 0, 0, 0))
        p2 = mono(4, (1, 1, 0, 0)) + mono(4, (0, 0, 2, 0))
        p3 = mono(4, (0, 1, 0, 1))
        p4 = mono(4, (0, 0, 0, 2)) + mono(4, (1, 0, 1, 0))
        p5 = p1 + p2.scale(GRat(2)) - p3
        assert subspace_rank(PolySubspace(4, 2, [p1, p2, p3, p4, p5])) == 4

    def test_mixed_degree_rejected(self):
        W = PolySubspace(2, 2, [mono(2, (2, 0)), mono(2, (1, 0))])
        with pytest.raises(ValueError):
            subspace_rank(W)

    def test_rank_never_grows_under_restriction(self):
        rng = rng_for(11, "shrink")
        for _ in range(25):
            nv = rng.randint(3, 4)
            d = rng.randint(1, 3)
            basis = monomial_basis(nv, d)
            polys = []
            for _ in range(rng.randint(1, 6)):
                coeffs = {
                    e: GRat(rng.randint(-5, 5)) for e in basis if rng.random() < 0.5
                }
                polys.append(Poly(nv, d, coeffs))
            W = PolySubspace(nv, d, polys)
            H = random_hyperplane(rng, nv)
            restricted = [restrict(p, H) for p in polys]
            assert exact_rank(
                coefficient_rows(restricted, nv - 1, d)
            ) <= subspace_rank(W)


class TestGreen:
    def test_full_space_trivial(self):
        W = PolySubspace(3, 2, veronese_components(3, 2))
        rec = verify_green(W, plane([1, 2, 3]))
        assert (rec.c, rec.c_h, rec.bound) == (0, 0, 0)
        assert rec.holds

    def test_codim_one_restricts_onto(self):
        # dropping one monomial still covers the restricted space for a
        # general hyperplane: the bound 1_<d> = 0 forces c_h = 0
        basis = monomial_basis(3, 2)[:-1]
        W = PolySubspace(3, 2, [mono(3, e) for e in basis])
        rng = rng_for(3, "codim1")
        recs = [
            verify_green(W, random_hyperplane(rng, 3)) for _ in range(10)
        ]
        assert op_lower(1, 2) == 0
        assert min(r.c_h for r in recs) == 0

    def test_tight_instance(self):
        # W = span{z0^2, z1^2} in the 6-dim degree-2 space on P^2: c = 4,
        # bound = 4_<2> = 1, and no hyperplane can push c_h below 1
        W = PolySubspace(3, 2, [mono(3, (2, 0, 0)), mono(3, (0, 2, 0))])
        rng = rng_for(5, "tight")
        recs = [verify_green(W, random_hyperplane(rng, 3)) for _ in range(12)]
        best = min(r.c_h for r in recs)
        assert recs[0].c == 4
        assert recs[0].bound == 1
        assert best == 1

    def test_suite_smoke(self):
        report = green_suite(ns=(2,), ds=(2,), subspaces=8, trials=6, seed=2)
        assert report.ok
        assert report.subspace_count == 8
        assert report.checks == 48

    def test_suite_deterministic(self):
        a = green_suite(ns=(2,), ds=(3,), subspaces=4, trials=5, seed=9,
                        keep_records=True)
        b = green_suite(ns=(2,), ds=(3,), subspaces=4, trials=5, seed=9,
                        keep_records=True)
        assert a.records == b.records


class TestImageSpan:
    def test_veronese(self):
        for n_vars, d in [(2, 2), (3, 2), (3, 3)]:
            comps = veronese_components(n_vars, d)
            assert image_span_dim(comps) == math.comb(n_vars - 1 + d, d) - 1

    def test_dependency(self):
        comps = [
            mono(2, (2, 0)),
            mono(2, (1, 1)),
            mono(2, (0, 2)),
            mono(2, (2, 0)) + mono(2, (0, 2)),
        ]
        assert image_span_dim(comps) == 2

    def test_all_zero_rejected(self):
        with pytest.raises(ValueError):
            image_span_dim([Poly(2, 2, {})])
        with pytest.raises(ValueError):
            image_span_dim([])


class TestRestrictionTheorem:
    def test_veronese_equality(self):
        rec = verify_restriction_theorem(veronese_components(3, 2), trials=6, seed=1)
        assert rec.N == 5
        assert rec.bound == 2
        assert rec.holds
        assert set(rec.dims) == {2}

    def test_linear_embedding(self):
        comps = veronese_components(3, 1)
        rec = verify_restriction_theorem(comps, trials=5, seed=4)
        assert rec.N == 2 and rec.bound == 1
        assert rec.max_dim == 1 and rec.holds

    def test_trial_validation(self):
        with pytest.raises(ValueError):
            verify_restriction_theorem(veronese_components(3, 1), trials=0)

    def test_veronese_suite_smoke(self):
        report = veronese_suite(max_n=3, max_degree=3, trials=2, seed=0)
        assert report.ok
        assert report.checks == 18


class TestSeeding:
    def test_substreams_stable(self):
        assert rng_for(7, "x").random() == rng_for(7, "x").random()
        assert rng_for(7, "x").random() != rng_for(7, "y").random()

    def test_hyperplane_sampler_never_zero(self):
        rng = rng_for(0, "h")
        for _ in range(200):
            H = random_hyperplane(rng, 3)
            assert any(H.coeffs)
            assert H.coeffs[H.pivot]
