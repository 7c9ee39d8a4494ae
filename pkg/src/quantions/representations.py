"""The left algebra of quantions acting on 4-component states."""

from __future__ import annotations

from enum import Enum
from numbers import Number
from typing import Sequence

import numpy as np

from .core import FourVector, Quantion, beta_mul, minkowski_dot, star, to_four_vector

# Relative threshold on (j, j) / j0**2 below which a current counts as null.
NULL_CURRENT_EPS = 1e-12

_I2 = np.eye(2)


class LeftQuantion:
    """A 4x4 matrix ``diag(A, A)`` with ``A`` a quantion."""

    __slots__ = ("matrix",)

    def __init__(self, matrix):
        m = np.array(matrix, dtype=complex)
        if m.shape != (4, 4):
            raise ValueError(f"expected a 4x4 matrix, got shape {m.shape}")
        if np.any(m[:2, 2:]) or np.any(m[2:, :2]) or not np.array_equal(m[:2, :2], m[2:, 2:]):
            raise ValueError("matrix is not of the block form diag(A, A)")
        m.setflags(write=False)
        self.matrix = m

    @property
    def quantion(self) -> Quantion:
        return Quantion.from_matrix(self.matrix[:2, :2])

    def __matmul__(self, other):
        if isinstance(other, LeftQuantion):
            return LeftQuantion(self.matrix @ other.matrix)
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, LeftQuantion):
            return NotImplemented
        return bool(np.array_equal(self.matrix, other.matrix))

    __hash__ = None

    def __repr__(self):
        return f"LeftQuantion({self.quantion!r})"


def left_rep(q: Quantion) -> LeftQuantion:
    return LeftQuantion(np.kron(_I2, q.matrix))


def act_left(Q: LeftQuantion, psi) -> np.ndarray:
    """Act on a ket (column 4-vector)."""
    return Q.matrix @ np.asarray(psi, dtype=complex)


def act_right(phi, q: Quantion) -> np.ndarray:
    """Act on a bra (row 4-vector): ``phi -> phi L(q)``.

    Successive actions compose as ``act_right(act_right(phi, p), q) ==
    act_right(phi, p * q)``.
    """
    return np.asarray(phi, dtype=complex) @ left_rep(q).matrix


def state_from_json(values: Sequence[float]) -> np.ndarray:
    """A 4-component state from 8 interleaved real/imaginary numbers."""
    values = list(values)
    if len(values) != 8 or any(isinstance(v, bool) or not isinstance(v, Number) for v in values):
        raise ValueError("a state needs 8 numbers")
    psi = np.array([complex(values[k], values[k + 1]) for k in range(0, 8, 2)])
    if not np.all(np.isfinite(psi)):
        raise ValueError("state components must be finite")
    return psi


def state_to_json(psi) -> list[float]:
    out = []
    for z in np.asarray(psi, dtype=complex):
        out.extend((float(z.real), float(z.imag)))
    return out


class CurrentClass(str, Enum):
    TIMELIKE_FUTURE = "timelike_future"
    NULL_FUTURE = "null_future"
    ZERO = "zero"


class CausalityViolation(AssertionError):
    """A current came out spacelike or past-pointing; q+q can never do that."""


def classify_current(j: FourVector) -> CurrentClass:
    if j.p0 == j.p1 == j.p2 == j.p3 == 0.0:
        return CurrentClass.ZERO
    jj = minkowski_dot(j, j)
    scale = j.p0 * j.p0
    if j.p0 <= 0 or jj < -NULL_CURRENT_EPS * scale:
        raise CausalityViolation(f"current {j} is not future causal")
    if jj <= NULL_CURRENT_EPS * scale:
        return CurrentClass.NULL_FUTURE
    return CurrentClass.TIMELIKE_FUTURE


def zovko_current(q: Quantion) -> tuple[FourVector, CurrentClass]:
    """The current ``j = q+ q`` and its causal class."""
    j = to_four_vector(beta_mul(star(q), q))
    return j, classify_current(j)
