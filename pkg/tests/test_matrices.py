"""Exact matrix layer: arithmetic, Smith normal form contract, and the
lattice helpers built on it."""

import pytest
from hypothesis import given, settings, strategies as st

from snckit.matrices import (
    IntMatrix,
    in_column_span,
    kernel_basis,
    preimage_generators,
    snf,
    solve,
    solve_matrix,
)

matrices = st.integers(0, 5).flatmap(
    lambda r: st.integers(0, 5).flatmap(
        lambda c: st.lists(
            st.lists(st.integers(-9, 9), min_size=c, max_size=c),
            min_size=r, max_size=r,
        ).map(lambda rows: IntMatrix.from_rows(rows, cols=c))
    )
)


class TestIntMatrix:
    def test_construction_and_access(self):
        m = IntMatrix.from_rows([[1, 2, 3], [4, 5, 6]])
        assert (m.rows, m.cols) == (2, 3)
        assert m[1, 2] == 6
        assert m.row(0) == (1, 2, 3)
        assert m.col(2) == (3, 6)
        assert m.transpose().to_rows() == [[1, 4], [2, 5], [3, 6]]

    def test_rejects_float_entries(self):
        with pytest.raises(TypeError):
            IntMatrix.from_rows([[1.5]])

    def test_empty_shapes_are_legal(self):
        z = IntMatrix.zeros(3, 0)
        assert z.cols == 0
        assert (z @ IntMatrix.zeros(0, 2)).to_rows() == [[0, 0], [0, 0], [0, 0]]

    def test_matmul_and_apply(self):
        a = IntMatrix.from_rows([[1, 2], [3, 4]])
        b = IntMatrix.from_rows([[0, 1], [1, 0]])
        assert (a @ b).to_rows() == [[2, 1], [4, 3]]
        assert a.apply([1, 1]) == (3, 7)

    def test_power(self):
        a = IntMatrix.from_rows([[1, 1], [0, 1]])
        assert a.power(5).to_rows() == [[1, 5], [0, 1]]
        assert a.power(0).is_identity()

    def test_det(self):
        assert IntMatrix.from_rows([[2, 0], [1, 3]]).det() == 6
        assert IntMatrix.from_rows([[0, 1], [1, 0]]).det() == -1
        assert IntMatrix.identity(0).det() == 1

    @given(matrices)
    @settings(max_examples=60, deadline=None)
    def test_det_matches_sympy(self, m):
        sympy = pytest.importorskip("sympy")
        if not m.is_square():
            return
        flat = [x for row in m.to_rows() for x in row]
        assert m.det() == int(sympy.Matrix(m.rows, m.cols, flat).det())


def assert_snf_contract(m: IntMatrix):
    s = snf(m)
    assert s.u @ m @ s.v == s.d
    assert s.u @ s.u_inv == IntMatrix.identity(m.rows)
    assert s.v @ s.v_inv == IntMatrix.identity(m.cols)
    assert abs(s.u.det()) == 1
    assert abs(s.v.det()) == 1
    diag = s.diagonal()
    for i in range(m.rows):
        for j in range(m.cols):
            if i != j:
                assert s.d[i, j] == 0
    assert all(d >= 0 for d in diag)
    nonzero = [d for d in diag if d != 0]
    assert list(diag[: len(nonzero)]) == nonzero, "zeros must trail"
    for a, b in zip(nonzero, nonzero[1:]):
        assert b % a == 0


class TestSnf:
    def test_diagonal_example(self):
        s = snf(IntMatrix.from_rows([[2, 4, 4], [-6, 6, 12], [10, 4, 16]]))
        assert s.diagonal() == (2, 2, 156)

    def test_zero_and_empty(self):
        assert snf(IntMatrix.zeros(2, 3)).diagonal() == (0, 0)
        assert snf(IntMatrix.zeros(0, 4)).diagonal() == ()

    @given(matrices)
    @settings(max_examples=150, deadline=None)
    def test_contract_random(self, m):
        assert_snf_contract(m)

    @given(matrices)
    @settings(max_examples=60, deadline=None)
    def test_invariant_factors_match_sympy(self, m):
        sympy = pytest.importorskip("sympy")
        from sympy.matrices.normalforms import smith_normal_form

        ours = [d for d in snf(m).diagonal() if d != 0]
        if m.rows == 0 or m.cols == 0:
            assert ours == []
            return
        flat = [x for row in m.to_rows() for x in row]
        theirs = smith_normal_form(sympy.Matrix(m.rows, m.cols, flat))
        sd = [abs(int(theirs[i, i])) for i in range(min(m.rows, m.cols))]
        assert ours == [d for d in sd if d != 0]

    def test_deterministic(self):
        m = IntMatrix.from_rows([[3, 1, 4], [1, 5, 9], [2, 6, 5]])
        first = snf(m)
        second = snf(IntMatrix.from_rows(m.to_rows()))
        assert first.u == second.u and first.v == second.v


class TestSolvers:
    def test_solve_unique(self):
        a = IntMatrix.from_rows([[2, 0], [0, 3]])
        assert solve(a, [4, 9]) == (2, 3)
        assert solve(a, [1, 0]) is None

    def test_solve_underdetermined_prefers_zero_free_coords(self):
        a = IntMatrix.from_rows([[1, 1]])
        x = solve(a, [5])
        assert x is not None and a.apply(x) == (5,)

    def test_solve_matrix(self):
        a = IntMatrix.from_rows([[1, 2], [0, 1]])
        b = IntMatrix.from_rows([[3], [1]])
        x = solve_matrix(a, b)
        assert a @ x == b

    @given(matrices, st.lists(st.integers(-4, 4), min_size=0, max_size=5))
    @settings(max_examples=80, deadline=None)
    def test_solve_verifies(self, a, x):
        if len(x) != a.cols:
            return
        b = a.apply(x)
        y = solve(a, b)
        assert y is not None
        assert a.apply(y) == b

    def test_kernel_basis_spans_kernel(self):
        a = IntMatrix.from_rows([[1, 2, 3], [2, 4, 6]])
        k = kernel_basis(a)
        assert k.cols == 2
        assert (a @ k).is_zero()
        # saturation: (1, 1, -1) is in the kernel, so in the span
        assert in_column_span(k, [1, 1, -1])

    def test_preimage_generators(self):
        # vectors x with a.x divisible by 3 in both coordinates
        a = IntMatrix.from_rows([[1, 0], [0, 1]])
        lattice = IntMatrix.from_rows([[3, 0], [0, 3]])
        g = preimage_generators(a, lattice)
        for j in range(g.cols):
            col = g.col(j)
            assert col[0] % 3 == 0 and col[1] % 3 == 0
        assert in_column_span(g, [3, 0])
        assert in_column_span(g, [0, 3])
        assert not in_column_span(g, [1, 0])

    @given(matrices)
    @settings(max_examples=60, deadline=None)
    def test_kernel_random(self, a):
        k = kernel_basis(a)
        assert (a @ k).is_zero()
