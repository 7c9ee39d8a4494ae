"""Quantions: 2x2 complex matrices with the beta product.

A quantion ``{a, b, c, d}`` is stored with the fixed layout

    [[a, c],
     [b, d]]

so the first column is ``(a, b)`` and the second is ``(c, d)``.  Under this
layout the metric dual ``{d, -b, -c, a}`` is the adjugate and the star
``{a*, c*, b*, d*}`` is the conjugate transpose.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from numbers import Number
from typing import Iterable, Sequence

import numpy as np

# Relative tolerance for identity residuals (scaled by operand norms).
TOL = 1e-10
# |M(q)| <= NULL_EPS * ||q||_F**2 puts q on the null cone.
NULL_EPS = 1e-12
# Allowed deviation from hermiticity, relative to ||q||_F.
HERMITIAN_TOL = 1e-10


class NullDivisor(ZeroDivisionError):
    """Raised when inverting a quantion whose metric norm vanishes."""


class NotHermitian(ValueError):
    """Raised when a real quantion was required."""


def _finite(z: complex) -> bool:
    return math.isfinite(z.real) and math.isfinite(z.imag)


@dataclass(frozen=True)
class Quantion:
    """Immutable quantion ``{a, b, c, d}``; see the module docstring for the layout."""

    a: complex = 0j
    b: complex = 0j
    c: complex = 0j
    d: complex = 0j

    def __post_init__(self):
        for name in ("a", "b", "c", "d"):
            z = complex(getattr(self, name))
            if not _finite(z):
                raise ValueError(f"quantion component {name} is not finite: {z!r}")
            object.__setattr__(self, name, z)

    # construction / conversion

    @classmethod
    def from_matrix(cls, m) -> Quantion:
        m = np.asarray(m)
        if m.shape != (2, 2):
            raise ValueError(f"expected a 2x2 matrix, got shape {m.shape}")
        return cls(m[0, 0], m[1, 0], m[0, 1], m[1, 1])

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.a, self.c], [self.b, self.d]], dtype=complex)

    @property
    def components(self) -> tuple[complex, complex, complex, complex]:
        return (self.a, self.b, self.c, self.d)

    @classmethod
    def from_json(cls, values: Sequence[float]) -> Quantion:
        """Build from ``[Re a, Im a, Re b, Im b, Re c, Im c, Re d, Im d]``."""
        values = list(values)
        if len(values) != 8:
            raise ValueError(f"a quantion needs 8 numbers, got {len(values)}")
        for v in values:
            if isinstance(v, bool) or not isinstance(v, Number):
                raise ValueError(f"not a number: {v!r}")
        parts = [complex(values[k], values[k + 1]) for k in range(0, 8, 2)]
        return cls(*parts)

    def to_json(self) -> list[float]:
        out = []
        for z in self.components:
            out.extend((z.real, z.imag))
        return out

    # arithmetic

    def __add__(self, other):
        if not isinstance(other, Quantion):
            return NotImplemented
        return Quantion(self.a + other.a, self.b + other.b, self.c + other.c, self.d + other.d)

    def __sub__(self, other):
        if not isinstance(other, Quantion):
            return NotImplemented
        return Quantion(self.a - other.a, self.b - other.b, self.c - other.c, self.d - other.d)

    def __neg__(self):
        return Quantion(-self.a, -self.b, -self.c, -self.d)

    def __mul__(self, other):
        if isinstance(other, Quantion):
            return beta_mul(self, other)
        if isinstance(other, Number):
            return Quantion(self.a * other, self.b * other, self.c * other, self.d * other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, Number):
            return Quantion(other * self.a, other * self.b, other * self.c, other * self.d)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, Number):
            return Quantion(self.a / other, self.b / other, self.c / other, self.d / other)
        return NotImplemented

    def norm(self) -> float:
        """Frobenius norm of the matrix."""
        return math.sqrt(sum(abs(z) ** 2 for z in self.components))

    def is_real(self, tol: float = HERMITIAN_TOL) -> bool:
        """True when the quantion is hermitian (a real quantion) within ``tol``."""
        dev = max(abs(self.a.imag), abs(self.d.imag), abs(self.b - self.c.conjugate()))
        return dev <= tol * self.norm()

    def __repr__(self):
        return f"Quantion(a={self.a!r}, b={self.b!r}, c={self.c!r}, d={self.d!r})"


@dataclass(frozen=True)
class FourVector:
    """Real four-vector with signature (+, -, -, -)."""

    p0: float = 0.0
    p1: float = 0.0
    p2: float = 0.0
    p3: float = 0.0

    def __post_init__(self):
        for name in ("p0", "p1", "p2", "p3"):
            v = float(getattr(self, name))
            if not math.isfinite(v):
                raise ValueError(f"four-vector component {name} is not finite")
            object.__setattr__(self, name, v)

    def __iter__(self):
        return iter((self.p0, self.p1, self.p2, self.p3))

    def dot(self, other: FourVector) -> float:
        return minkowski_dot(self, other)

    def to_json(self) -> list[float]:
        return list(self)


OMEGA = Quantion(1, 0, 0, 1)
ZERO = Quantion()
E1 = Quantion(0, 1, 1, 0)
E2 = Quantion(0, 1j, -1j, 0)
E3 = Quantion(1, 0, 0, -1)

METRIC = np.diag([1.0, -1.0, -1.0, -1.0])


def minkowski_dot(u: Iterable, v: Iterable):
    """Bilinear Minkowski product; no complex conjugation is applied."""
    u0, u1, u2, u3 = u
    v0, v1, v2, v3 = v
    return u0 * v0 - u1 * v1 - u2 * v2 - u3 * v3


def beta_mul(p: Quantion, q: Quantion) -> Quantion:
    a, b, c, d = p.a, p.b, p.c, p.d
    z, u, v, w = q.a, q.b, q.c, q.d
    return Quantion(a * z + c * u, b * z + d * u, a * v + c * w, b * v + d * w)


def _levi_civita() -> np.ndarray:
    eps = np.zeros((4, 4, 4, 4))
    for perm in itertools.permutations(range(4)):
        inversions = sum(perm[i] > perm[j] for i in range(4) for j in range(i + 1, 4))
        eps[perm] = -1.0 if inversions % 2 else 1.0
    return eps


_EPS = _levi_civita()
_OMEGA_VEC = np.array([1.0, 0.0, 0.0, 0.0])


def hodge_dual_3(x, y, z) -> np.ndarray:
    """Hodge dual of the trivector ``x ^ y ^ z`` as a contravariant vector.

    Convention: eps_{0123} = +1, the trivector fills the first three slots of
    eps and the remaining index is raised with the Minkowski metric.
    """
    lower = np.einsum("nrsm,n,r,s->m", _EPS, x, y, z)
    return METRIC @ lower


def beta_geometric(u, v) -> np.ndarray:
    """The beta product computed from Minkowski/Hodge data alone.

    ``u`` and ``v`` are complex tetrad components ``(q0, q1, q2, q3)`` with
    Omega fixed to ``(1, 0, 0, 0)``:

        u beta v = (Omega,u) v + (Omega,v) u - (u,v) Omega - i *(Omega ^ u ^ v)
    """
    u = np.asarray(u, dtype=complex)
    v = np.asarray(v, dtype=complex)
    om = _OMEGA_VEC
    return (
        minkowski_dot(om, u) * v
        + minkowski_dot(om, v) * u
        - minkowski_dot(u, v) * om
        - 1j * hodge_dual_3(om, u, v)
    )


def pauli_decompose(q: Quantion) -> tuple[complex, complex, complex, complex]:
    """Coefficients of ``q`` on the tetrad ``(Omega, e1, e2, e3)``."""
    return (
        (q.a + q.d) / 2,
        (q.b + q.c) / 2,
        (q.b - q.c) / 2j,
        (q.a - q.d) / 2,
    )


def from_tetrad_components(q0, q1, q2, q3) -> Quantion:
    return Quantion(q0 + q3, q1 + 1j * q2, q1 - 1j * q2, q0 - q3)


def star(q: Quantion) -> Quantion:
    return Quantion(q.a.conjugate(), q.c.conjugate(), q.b.conjugate(), q.d.conjugate())


def sharp(q: Quantion) -> Quantion:
    return Quantion(q.d, -q.b, -q.c, q.a)


def met_norm(q: Quantion) -> complex:
    return q.a * q.d - q.b * q.c


def is_null(q: Quantion, eps: float = NULL_EPS) -> bool:
    return abs(met_norm(q)) <= eps * q.norm() ** 2


def inverse(q: Quantion) -> Quantion:
    """``q^-1 = q# / M(q)``; raises :class:`NullDivisor` on the null cone."""
    m = met_norm(q)
    if abs(m) <= NULL_EPS * q.norm() ** 2:
        raise NullDivisor(f"metric norm {m!r} vanishes; quantion has no inverse")
    return sharp(q) / m


def to_four_vector(q: Quantion) -> FourVector:
    if not q.is_real():
        raise NotHermitian(f"{q!r} is not a real quantion")
    return FourVector(
        (q.a.real + q.d.real) / 2,
        q.b.real,
        q.b.imag,
        (q.a.real - q.d.real) / 2,
    )


def from_four_vector(p: FourVector) -> Quantion:
    p0, p1, p2, p3 = p
    z = complex(p1, p2)
    return Quantion(p0 + p3, z, z.conjugate(), p0 - p3)


def alg_norm(q: Quantion) -> FourVector:
    """The algebraic norm ``A(q) = q* q`` as a four-vector."""
    return to_four_vector(beta_mul(star(q), q))


def null_tetrad() -> tuple[Quantion, Quantion, Quantion, Quantion]:
    """Return ``(l, n, m, mbar)`` built from the tetrad."""
    l = 0.5 * (OMEGA + E3)
    n = 0.5 * (OMEGA - E3)
    m = 0.5 * (E1 + 1j * E2)
    mbar = 0.5 * (E1 - 1j * E2)
    return l, n, m, mbar


def hamilton_product(h, k) -> tuple[float, float, float, float]:
    h0, h1, h2, h3 = h
    k0, k1, k2, k3 = k
    return (
        h0 * k0 - h1 * k1 - h2 * k2 - h3 * k3,
        h0 * k1 + h1 * k0 + h2 * k3 - h3 * k2,
        h0 * k2 - h1 * k3 + h2 * k0 + h3 * k1,
        h0 * k3 + h1 * k2 - h2 * k1 + h3 * k0,
    )


def quaternion_embed(h) -> Quantion:
    """Map a real quaternion into the quantions.

    The units go to ``-i e_k``; this orientation is the one for which the map
    is multiplicative (``i j = k``) given the Pauli-type tetrad table.
    """
    h0, h1, h2, h3 = (float(x) for x in h)
    return h0 * OMEGA + (-1j * h1) * E1 + (-1j * h2) * E2 + (-1j * h3) * E3
