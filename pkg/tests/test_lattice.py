import itertools
import math
from fractions import Fraction

import pytest
import sympy
from hypothesis import assume, given, settings, strategies as st

from blindcounter.lattice import (
    AffineTranslate,
    DimensionError,
    grid_coverage_check,
    integer_dependence,
    is_independent,
    kernel_basis,
    rank,
)


class TestIndependence:
    def test_examples(self):
        assert is_independent([(1, 0), (0, 1)])
        assert not is_independent([(1, 2), (2, 4)])
        # third = first - second
        assert not is_independent([(1, 1, 0), (0, 1, 1), (1, 0, -1)])

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            is_independent([(1, 0), (1,)])

    @settings(max_examples=300, deadline=None)
    @given(
        st.integers(1, 4).flatmap(
            lambda cols: st.lists(
                st.lists(st.integers(-3, 3), min_size=cols, max_size=cols), min_size=1, max_size=4
            )
        )
    )
    def test_agrees_with_sympy_rank(self, rows):
        assert rank(rows) == sympy.Matrix(rows).rank()
        assert is_independent(rows) == (sympy.Matrix(rows).rank() == len(rows))


class TestIntegerDependence:
    def test_examples(self):
        assert integer_dependence([(2,), (3,)]).coefficients == (3, -2)
        assert integer_dependence([(1, 0), (0, 1), (1, 1)]).coefficients == (1, 1, -1)
        assert integer_dependence([(1,), (0,)]).coefficients == (0, 1)

    def test_examples_match_sympy_kernel(self):
        # 1-dimensional kernels: the primitive generator is unique up to sign
        for vecs in ([(2,), (3,)], [(1, 0), (0, 1), (1, 1)], [(1,), (0,)]):
            cols = sympy.Matrix(vecs).T
            (null,) = cols.nullspace()
            den = sympy.ilcm(*[x.q for x in null])
            ints = [int(x * den) for x in null]
            g = math.gcd(*ints)
            ints = [x // g for x in ints]
            if next(x for x in ints if x) < 0:
                ints = [-x for x in ints]
            assert integer_dependence(vecs).coefficients == tuple(ints)

    def test_independent_input_rejected(self):
        with pytest.raises(DimensionError):
            integer_dependence([(1, 0), (0, 1)])

    def test_zero_counters(self):
        cert = integer_dependence([(), ()])
        assert any(cert.coefficients)
        assert cert.verify([(), ()])

    @settings(max_examples=300, deadline=None)
    @given(
        st.integers(1, 3).flatmap(
            lambda m: st.integers(m + 1, m + 3).flatmap(
                lambda k: st.lists(
                    st.lists(st.integers(-4, 4), min_size=m, max_size=m), min_size=k, max_size=k
                )
            )
        )
    )
    def test_certificate_is_exact(self, vecs):
        cert = integer_dependence(vecs)
        m = len(vecs[0])
        assert any(cert.coefficients)
        for r in range(m):
            assert sum(a * v[r] for a, v in zip(cert.coefficients, vecs)) == 0
        assert math.gcd(*[abs(a) for a in cert.coefficients if a]) == 1
        assert next(a for a in cert.coefficients if a) > 0
        assert cert.verify(vecs)

    def test_kernel_basis_dimension(self):
        vecs = [(1, 2), (2, 4), (0, 1), (3, 3)]
        assert len(kernel_basis(vecs)) == len(vecs) - sympy.Matrix(vecs).T.rank()


class TestGridCoverage:
    def test_two_axis_lines(self):
        lines = [AffineTranslate.of((0, 1), [(1, 0)]), AffineTranslate.of((1, 0), [(0, 1)])]
        report = grid_coverage_check(2, lines)
        # direct enumeration of {1,2,3}^2
        grid = list(itertools.product(range(1, 4), repeat=2))
        assert report.k == 3
        assert report.counts == [sum(y == 1 for _, y in grid), sum(x == 1 for x, _ in grid)] == [3, 3]
        assert report.uncovered == min(p for p in grid if p[0] != 1 and p[1] != 1) == (2, 2)

    def test_diagonal(self):
        report = grid_coverage_check(2, [AffineTranslate.of((0, 0), [(1, 1)])])
        grid = list(itertools.product(range(1, 3), repeat=2))
        assert report.k == 2
        assert report.counts == [sum(x == y for x, y in grid)] == [2]
        assert report.uncovered in {(1, 2), (2, 1)}
        assert report.uncovered == (1, 2)

    def test_full_rank_rejected(self):
        with pytest.raises(DimensionError):
            grid_coverage_check(1, [AffineTranslate.of((0,), [(1,)])])

    def test_point_translate(self):
        report = grid_coverage_check(2, [AffineTranslate.of(("1/2", 1))])
        assert report.counts == [0]
        assert report.uncovered == (1, 1)

    @settings(max_examples=100, deadline=None)
    @given(st.data())
    def test_random_configurations(self, data):
        n = data.draw(st.integers(1, 3))
        m = data.draw(st.integers(0, n - 1))
        r = data.draw(st.integers(1, 4))
        rat = st.builds(Fraction, st.integers(-3, 3), st.integers(1, 3))
        translates = []
        for _ in range(r):
            base = data.draw(st.lists(rat, min_size=n, max_size=n))
            span = data.draw(st.lists(st.lists(rat, min_size=n, max_size=n), min_size=m, max_size=m))
            translates.append(AffineTranslate.of(base, span))
        report = grid_coverage_check(n, translates)
        k = r + 1
        assert report.k == k
        for t, c in zip(translates, report.counts):
            assert c <= k ** t.dim <= k ** m
        assert report.uncovered is not None
        assert all(1 <= x <= k for x in report.uncovered)
        assert not any(t.contains(report.uncovered) for t in translates)
        assert r * k**m < k**n
