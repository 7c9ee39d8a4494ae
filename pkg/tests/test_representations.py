import numpy as np
import pytest
from hypothesis import given, settings

from quantions.core import OMEGA, ZERO, FourVector, Quantion, met_norm, minkowski_dot, null_tetrad
from quantions.representations import (
    CausalityViolation,
    CurrentClass,
    LeftQuantion,
    act_left,
    act_right,
    classify_current,
    left_rep,
    state_from_json,
    state_to_json,
    zovko_current,
)

from .conftest import matrix_of, quantions, random_quantion


def dense_left(q):
    a = matrix_of(q)
    out = np.zeros((4, 4), dtype=complex)
    out[0:2, 0:2] = a
    out[2:4, 2:4] = a
    return out


class TestLeftRep:
    def test_unit(self):
        np.testing.assert_array_equal(left_rep(OMEGA).matrix, np.eye(4))

    def test_block_form(self, rng):
        q = random_quantion(rng)
        np.testing.assert_array_equal(left_rep(q).matrix, dense_left(q))
        assert left_rep(q).quantion == q

    def test_null_projection(self):
        l, n, m, mbar = null_tetrad()
        assert left_rep(l) @ left_rep(m) == left_rep(m)
        assert left_rep(m) @ left_rep(l) == left_rep(ZERO)
        assert left_rep(l) @ left_rep(l) == left_rep(l)

    def test_homomorphism(self, rng):
        for _ in range(1000):
            p, q = random_quantion(rng), random_quantion(rng)
            lhs = (left_rep(p) @ left_rep(q)).matrix
            rhs = left_rep(p * q).matrix
            assert np.linalg.norm(lhs - rhs) <= 1e-12 * max(1.0, p.norm() * q.norm())

    @settings(max_examples=200)
    @given(quantions)
    def test_faithful(self, q):
        assert np.linalg.norm(left_rep(q).matrix) == pytest.approx(np.sqrt(2) * q.norm(), rel=1e-12, abs=1e-300)

    def test_read_only(self):
        with pytest.raises(ValueError):
            left_rep(OMEGA).matrix[0, 0] = 2

    @pytest.mark.parametrize(
        "matrix",
        [np.eye(3), np.diag([1, 1, 1, 2]), np.eye(4) + np.eye(4, k=2)],
        ids=["shape", "unequal-blocks", "off-diagonal"],
    )
    def test_rejects_non_block(self, matrix):
        with pytest.raises(ValueError):
            LeftQuantion(matrix)


class TestActions:
    def test_projector_on_ket(self):
        l, *_ = null_tetrad()
        psi = np.array([0, 0, 1, 0])
        np.testing.assert_array_equal(act_left(left_rep(l), psi), dense_left(l) @ psi)
        np.testing.assert_array_equal(act_left(left_rep(l), psi), psi)
        np.testing.assert_array_equal(act_left(left_rep(l), [0, 0, 0, 1]), np.zeros(4))

    def test_left_composition(self, rng):
        for _ in range(200):
            p, q = random_quantion(rng), random_quantion(rng)
            psi = rng.standard_normal(4) + 1j * rng.standard_normal(4)
            np.testing.assert_allclose(
                act_left(left_rep(p), act_left(left_rep(q), psi)), act_left(left_rep(p * q), psi), atol=1e-12
            )

    def test_right_composition(self, rng):
        for _ in range(200):
            p, q = random_quantion(rng), random_quantion(rng)
            phi = rng.standard_normal(4) + 1j * rng.standard_normal(4)
            np.testing.assert_allclose(act_right(act_right(phi, p), q), act_right(phi, p * q), atol=1e-12)

    def test_left_and_right_commute_on_sandwich(self, rng):
        # (phi L(p)) (L(q) psi) == phi (L(p) L(q)) psi
        p, q = random_quantion(rng), random_quantion(rng)
        phi = rng.standard_normal(4) + 1j * rng.standard_normal(4)
        psi = rng.standard_normal(4) + 1j * rng.standard_normal(4)
        lhs = act_right(phi, p) @ act_left(left_rep(q), psi)
        rhs = phi @ dense_left(p) @ dense_left(q) @ psi
        assert abs(lhs - rhs) <= 1e-12 * max(1.0, abs(rhs))


class TestStates:
    def test_round_trip(self):
        values = [1.0, -2.0, 0.5, 0.0, -0.25, 3.0, 0.0, 1.0]
        psi = state_from_json(values)
        np.testing.assert_array_equal(psi, [1 - 2j, 0.5, -0.25 + 3j, 1j])
        assert state_to_json(psi) == values

    @pytest.mark.parametrize("values", [[1] * 7, [True] + [0] * 7, ["1"] + [0] * 7, [float("nan")] + [0] * 7])
    def test_rejects(self, values):
        with pytest.raises(ValueError):
            state_from_json(values)


class TestCurrent:
    def test_unit_is_timelike(self):
        j, cls = zovko_current(OMEGA)
        assert tuple(j) == (1.0, 0.0, 0.0, 0.0)
        assert cls is CurrentClass.TIMELIKE_FUTURE

    def test_null_tetrad_vector(self):
        _, _, m, _ = null_tetrad()
        j, cls = zovko_current(m)
        assert tuple(j) == (0.5, 0.0, 0.0, -0.5)
        assert cls is CurrentClass.NULL_FUTURE

    def test_zero(self):
        j, cls = zovko_current(ZERO)
        assert tuple(j) == (0.0, 0.0, 0.0, 0.0)
        assert cls is CurrentClass.ZERO

    def test_interval_is_squared_determinant(self, rng):
        for _ in range(1000):
            q = random_quantion(rng)
            j, _ = zovko_current(q)
            assert minkowski_dot(j, j) == pytest.approx(abs(met_norm(q)) ** 2, rel=1e-9, abs=1e-12 * q.norm() ** 4)

    @settings(max_examples=300)
    @given(quantions)
    def test_never_spacelike_or_past(self, q):
        _, cls = zovko_current(q)
        assert cls in set(CurrentClass)

    def test_null_iff_singular(self, rng):
        for _ in range(200):
            u = rng.standard_normal(2) + 1j * rng.standard_normal(2)
            v = rng.standard_normal(2) + 1j * rng.standard_normal(2)
            q = Quantion.from_matrix(np.outer(u, v))
            assert zovko_current(q)[1] is CurrentClass.NULL_FUTURE
            q2 = Quantion.from_matrix(np.outer(u, v) + 0.1 * np.eye(2))
            assert zovko_current(q2)[1] is CurrentClass.TIMELIKE_FUTURE

    @pytest.mark.parametrize(
        "j", [FourVector(0.0, 1.0, 0.0, 0.0), FourVector(-1.0, 0.0, 0.0, 0.0), FourVector(1.0, 2.0, 0.0, 0.0)]
    )
    def test_violation(self, j):
        with pytest.raises(CausalityViolation):
            classify_current(j)
