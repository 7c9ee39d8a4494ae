"""Polynomial observables in one canonical pair (x, p).

Coefficients live on a grid ``c[..., i, j]`` for the monomial ``x**i p**j``;
leading axes are a batch, so a whole sample of polynomials is one object.
Integer grids are kept as int64 and every operation checks a coefficient
bound up front, so arithmetic is either exact or raises ``OverflowError``.
"""

from __future__ import annotations

from numbers import Integral, Number

import numpy as np

_INT_LIMIT = float(2**62)


def _valid_mask(size: int) -> np.ndarray:
    i, j = np.indices((size, size))
    return i + j < size


class PolyObservable:
    """Polynomial ``sum c[i, j] x**i p**j`` with total degree at most ``cap``."""

    __slots__ = ("coeffs", "cap")

    def __init__(self, coeffs, cap: int | None = None):
        c = np.asarray(coeffs)
        if c.ndim < 2 or c.shape[-1] != c.shape[-2]:
            raise ValueError(f"coefficient grid must be square in its last two axes, got {c.shape}")
        if c.dtype == bool or not np.issubdtype(c.dtype, np.number):
            raise TypeError(f"coefficients must be numeric, got {c.dtype}")
        if np.issubdtype(c.dtype, np.integer):
            c = c.astype(np.int64)
        elif not np.issubdtype(c.dtype, np.complexfloating):
            c = c.astype(np.float64)
        if cap is None:
            cap = c.shape[-1] - 1
        if cap < 0:
            raise ValueError("degree cap must be non-negative")
        size = cap + 1
        if c.shape[-1] > size:
            if np.any(c[..., size:, :]) or np.any(c[..., :, size:]):
                raise ValueError(f"polynomial exceeds degree cap {cap}")
            c = c[..., :size, :size]
        elif c.shape[-1] < size:
            c = _pad(c, size)
        if np.any(c[..., ~_valid_mask(size)]):
            raise ValueError(f"polynomial exceeds degree cap {cap}")
        if not np.all(np.isfinite(c)):
            raise ValueError("coefficients must be finite")
        self.coeffs = c
        self.cap = cap

    # construction

    @classmethod
    def from_dict(cls, terms: dict[tuple[int, int], Number], cap: int | None = None) -> PolyObservable:
        deg = max((i + j for i, j in terms), default=0)
        cap = deg if cap is None else cap
        grid = np.zeros((cap + 1, cap + 1), dtype=np.result_type(*terms.values()) if terms else np.int64)
        for (i, j), v in terms.items():
            grid[i, j] += v
        return cls(grid, cap)

    @classmethod
    def monomial(cls, i: int, j: int, coeff: Number = 1) -> PolyObservable:
        return cls.from_dict({(i, j): coeff})

    @classmethod
    def constant(cls, value: Number = 1) -> PolyObservable:
        return cls(np.array([[value]]), 0)

    @classmethod
    def stack(cls, polys) -> PolyObservable:
        polys = list(polys)
        cap = max(q.cap for q in polys)
        return cls(np.stack([_pad(q.coeffs, cap + 1) for q in polys]), cap)

    # introspection

    @property
    def batch_shape(self) -> tuple[int, ...]:
        return self.coeffs.shape[:-2]

    @property
    def is_exact(self) -> bool:
        return np.issubdtype(self.coeffs.dtype, np.integer)

    def __getitem__(self, index) -> PolyObservable:
        if not self.batch_shape:
            raise TypeError("not a batched polynomial")
        return PolyObservable(self.coeffs[index], self.cap)

    def __len__(self):
        if not self.batch_shape:
            raise TypeError("not a batched polynomial")
        return self.batch_shape[0]

    def degree(self) -> int:
        """Actual total degree (-1 for the zero polynomial); unbatched only."""
        i, j = np.nonzero(self.coeffs)
        return int((i + j).max()) if len(i) else -1

    def norm(self):
        """Euclidean norm of the coefficient grid, per batch entry."""
        return np.sqrt(np.sum(np.abs(self.coeffs).astype(float) ** 2, axis=(-2, -1)))

    def evaluate(self, x, p):
        size = self.cap + 1
        xs = np.asarray(x) ** np.arange(size)
        ps = np.asarray(p) ** np.arange(size)
        return np.einsum("...ij,i,j->...", self.coeffs, xs, ps)

    def _l1(self) -> np.ndarray:
        return np.sum(np.abs(self.coeffs).astype(float), axis=(-2, -1))

    def _guard(self, bound) -> None:
        if self.is_exact and np.any(np.asarray(bound) >= _INT_LIMIT):
            raise OverflowError("exact polynomial arithmetic would overflow int64")

    # arithmetic

    def __add__(self, other):
        if isinstance(other, Number):
            other = PolyObservable.constant(other)
        if not isinstance(other, PolyObservable):
            return NotImplemented
        cap = max(self.cap, other.cap)
        if self.is_exact and other.is_exact:
            self._guard(self._l1() + other._l1())
        return PolyObservable(_pad(self.coeffs, cap + 1) + _pad(other.coeffs, cap + 1), cap)

    __radd__ = __add__

    def __neg__(self):
        return PolyObservable(-self.coeffs, self.cap)

    def __sub__(self, other):
        if isinstance(other, Number):
            other = PolyObservable.constant(other)
        if not isinstance(other, PolyObservable):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, PolyObservable):
            return _product(self, other)
        if isinstance(other, Number):
            if isinstance(other, Integral):
                self._guard(self._l1() * abs(int(other)))
            return PolyObservable(self.coeffs * other, self.cap)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, Number):
            return self * other
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, Number):
            other = PolyObservable.constant(other)
        if not isinstance(other, PolyObservable):
            return NotImplemented
        size = max(self.cap, other.cap) + 1
        a, b = _pad(self.coeffs, size), _pad(other.coeffs, size)
        return a.shape == b.shape and bool(np.all(a == b))

    __hash__ = None

    def __repr__(self):
        if self.batch_shape:
            return f"PolyObservable(batch={self.batch_shape}, cap={self.cap})"
        terms = {(int(i), int(j)): self.coeffs[i, j].item() for i, j in zip(*np.nonzero(self.coeffs))}
        return f"PolyObservable({terms}, cap={self.cap})"

    # calculus

    def dx(self) -> PolyObservable:
        size = self.cap + 1
        if size == 1:
            return PolyObservable(np.zeros_like(self.coeffs), 0)
        self._guard(self._l1() * self.cap)
        d = self.coeffs[..., 1:, :-1] * np.arange(1, size)[:, None]
        return PolyObservable(d, self.cap - 1)

    def dp(self) -> PolyObservable:
        size = self.cap + 1
        if size == 1:
            return PolyObservable(np.zeros_like(self.coeffs), 0)
        self._guard(self._l1() * self.cap)
        d = self.coeffs[..., :-1, 1:] * np.arange(1, size)[None, :]
        return PolyObservable(d, self.cap - 1)


def _pad(c: np.ndarray, size: int) -> np.ndarray:
    n = c.shape[-1]
    if n == size:
        return c
    if n > size:
        return c[..., :size, :size]
    widths = [(0, 0)] * (c.ndim - 2) + [(0, size - n), (0, size - n)]
    return np.pad(c, widths)


def _product(f: PolyObservable, g: PolyObservable) -> PolyObservable:
    if f.is_exact and g.is_exact:
        f._guard(f._l1() * g._l1())
    F, G = f.coeffs, g.coeffs
    m, n = F.shape[-1], G.shape[-1]
    batch = np.broadcast_shapes(F.shape[:-2], G.shape[:-2])
    out = np.zeros(batch + (m + n - 1, m + n - 1), dtype=np.result_type(F, G))
    for i in range(m):
        for j in range(m - i):
            out[..., i : i + n, j : j + n] += F[..., i, j, None, None] * G
    return PolyObservable(out, f.cap + g.cap)


def poisson_bracket(f: PolyObservable, g: PolyObservable) -> PolyObservable:
    """Canonical bracket ``df/dx dg/dp - df/dp dg/dx``."""
    return f.dx() * g.dp() - f.dp() * g.dx()


X = PolyObservable.monomial(1, 0)
P = PolyObservable.monomial(0, 1)
