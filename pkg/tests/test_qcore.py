"""Unit tests for the 2x2 Hermitian linear-algebra core."""

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from conftest import spinors
from spinstat import (
    HermitianOp,
    Spinor,
    apply,
    eigensystem,
    expectation,
    inner_product,
    outer_product,
    trace_product,
)

INV_SQRT2 = 1.0 / math.sqrt(2.0)


class TestSpinor:
    def test_auto_normalizes(self):
        s = Spinor(3.0, 4.0j)
        assert_allclose(abs(s.a0) ** 2 + abs(s.a1) ** 2, 1.0, atol=1e-15)
        assert_allclose(s.a0, 0.6, atol=1e-15)

    def test_rejects_zero_vector(self):
        with pytest.raises(ValueError):
            Spinor(0.0, 0.0)

    def test_rejects_non_finite(self):
        with pytest.raises(ValueError):
            Spinor(complex(math.nan, 0.0), 1.0)
        with pytest.raises(ValueError):
            Spinor(1.0, complex(math.inf, 0.0))

    @given(spinors())
    def test_bloch_vector_is_unit(self, s):
        bx, by, bz = s.bloch()
        assert_allclose(bx * bx + by * by + bz * bz, 1.0, atol=1e-12)

    def test_bloch_cardinal_states(self):
        assert_allclose(Spinor(1.0, 0.0).bloch(), (0.0, 0.0, 1.0), atol=1e-15)
        assert_allclose(Spinor(0.0, 1.0).bloch(), (0.0, 0.0, -1.0), atol=1e-15)
        assert_allclose(Spinor(INV_SQRT2, INV_SQRT2).bloch(), (1.0, 0.0, 0.0), atol=1e-15)
        assert_allclose(Spinor(INV_SQRT2, 1.0j * INV_SQRT2).bloch(), (0.0, 1.0, 0.0), atol=1e-15)


class TestHermitianOp:
    def test_matrix_is_hermitian(self):
        op = HermitianOp(1.0, -2.0, 0.5 + 0.25j)
        m = op.matrix
        assert_allclose(m, m.conj().T, atol=0)

    def test_from_matrix_round_trip(self):
        op = HermitianOp(0.3, 0.7, -0.1 + 0.2j)
        again = HermitianOp.from_matrix(op.matrix)
        assert again == op

    def test_from_matrix_rejects_non_hermitian(self):
        with pytest.raises(ValueError):
            HermitianOp.from_matrix(np.array([[0.0, 1.0], [0.0, 0.0]]))

    def test_algebra_matches_numpy(self):
        a = HermitianOp(1.0, 2.0, 1.0 - 0.5j)
        b = HermitianOp(-0.5, 0.25, 0.125j)
        assert_allclose((a + b).matrix, a.matrix + b.matrix, atol=0)
        assert_allclose((a - b).matrix, a.matrix - b.matrix, atol=0)
        assert_allclose((2.5 * a).matrix, 2.5 * a.matrix, atol=0)
        assert_allclose(a.square().matrix, a.matrix @ a.matrix, atol=1e-15)

    def test_trace(self):
        assert HermitianOp(1.5, -0.5, 1.0j).trace == 1.0
        assert HermitianOp.identity().trace == 2.0


class TestProducts:
    def test_inner_product_conjugates_first_argument(self):
        x = Spinor(1.0, 0.0)
        y = Spinor(0.0, 1.0j)
        lhs = inner_product(x, y)
        rhs = inner_product(y, x)
        assert_allclose(lhs, rhs.conjugate(), atol=1e-15)

    @given(spinors())
    def test_outer_product_is_rank_one_projector(self, s):
        proj = outer_product(s)
        assert_allclose(proj.square().matrix, proj.matrix, atol=1e-14)
        assert_allclose(proj.trace, 1.0, atol=1e-14)
        assert_allclose(expectation(proj, s), 1.0, atol=1e-12)

    @given(spinors(), spinors())
    def test_expectation_via_apply(self, x, y):
        op = outer_product(y)
        v0, v1 = apply(op, x)
        quad = (x.a0.conjugate() * v0 + x.a1.conjugate() * v1).real
        assert_allclose(expectation(op, x), quad, atol=1e-12)

    def test_trace_product_matches_numpy(self):
        a = HermitianOp(1.0, 2.0, 0.5 - 0.75j)
        b = HermitianOp(-1.0, 0.5, 0.25 + 0.1j)
        assert_allclose(trace_product(a, b), np.trace(a.matrix @ b.matrix).real, atol=1e-14)


class TestEigensystem:
    def test_diagonal_operator(self):
        es = eigensystem(HermitianOp(2.0, -1.0))
        assert es.eigenvalue_plus == 2.0
        assert es.eigenvalue_minus == -1.0
        assert not es.degenerate
        assert_allclose(abs(inner_product(es.eigvec_plus, es.eigvec_minus)), 0.0, atol=1e-15)

    def test_degenerate_flag(self):
        es = eigensystem(HermitianOp(1.0, 1.0))
        assert es.degenerate
        assert es.eigenvalue_plus == es.eigenvalue_minus == 1.0

    @given(
        st.tuples(
            st.floats(-5, 5, allow_nan=False),
            st.floats(-5, 5, allow_nan=False),
            st.floats(-5, 5, allow_nan=False),
            st.floats(-5, 5, allow_nan=False),
        )
    )
    def test_matches_numpy_eigh(self, parts):
        m00, m11, re01, im01 = parts
        op = HermitianOp(m00, m11, complex(re01, im01))
        es = eigensystem(op)
        expected = np.linalg.eigvalsh(op.matrix)
        assert_allclose(sorted([es.eigenvalue_minus, es.eigenvalue_plus]), expected, atol=1e-12)
        if not es.degenerate:
            for val, vec in ((es.eigenvalue_plus, es.eigvec_plus), (es.eigenvalue_minus, es.eigvec_minus)):
                v0, v1 = apply(op, vec)
                assert_allclose([v0, v1], [val * vec.a0, val * vec.a1], atol=1e-10)
