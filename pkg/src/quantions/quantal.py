"""Quantal algebras: a symmetric product sigma, an antisymmetric product alpha
and the flag ``a`` in {-1, 0, +1}.

Three families of realizations are provided:

* ``hermitian_algebra(n, +1)``: hermitian matrices, sigma = {f,g}/2 and
  alpha = [f,g]/(2i) (elliptic).
* ``hermitian_algebra(n, -1)`` / ``realsym_algebra(n)``: real symmetric
  matrices, sigma = {f,g}/2 and alpha = [f,g]/2 (hyperbolic).
* ``poisson_algebra(D)``: polynomials in (x, p) with the ordinary product
  and the canonical bracket (parabolic).

All identity checks accept either single elements or batches (a leading
axis of stacked matrices, or a batched :class:`PolyObservable`) and return
residuals relative to the product of the operand norms.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, replace
from typing import Any, Callable, NamedTuple, Sequence

import numpy as np

from .poly import PolyObservable, poisson_bracket

DEFAULT_TOL = 1e-10
KERNEL_RTOL = 1e-10
IDENTITIES = ("jacobi", "leibniz", "petersen", "assoc_beta", "closure")


@dataclass(frozen=True)
class BiAlgebra:
    """A concrete realization of a quantal algebra.

    Attributes
    ----------
    id:
        Short name, e.g. ``"hermitian:2"``.
    a:
        The Petersen parameter.
    sigma, alpha:
        The symmetric and antisymmetric bilinear products.
    unit:
        The unit ``e`` of sigma.
    sampler:
        ``sampler(rng)`` draws one random element.
    norm:
        Norm used to make residuals relative; works on batches.
    stack:
        Turns a list of elements into one batch.
    dim:
        Real dimension of the element space.
    matrix_size:
        ``n`` for realizations on ``n x n`` matrices, ``None`` otherwise.
    reference:
        Optional ``(sigma, alpha)`` pair the products must reproduce; set on
        composed algebras and checked as the ``closure`` identity.
    """

    id: str
    a: int
    sigma: Callable[[Any, Any], Any]
    alpha: Callable[[Any, Any], Any]
    unit: Any
    sampler: Callable[[np.random.Generator], Any]
    norm: Callable[[Any], Any]
    stack: Callable[[list], Any]
    dim: int
    matrix_size: int | None = None
    reference: tuple[Callable, Callable] | None = None

    def __post_init__(self):
        if self.a not in (-1, 0, 1):
            raise ValueError(f"a must be -1, 0 or +1, got {self.a!r}")

    def sample(self, rng: np.random.Generator):
        return self.sampler(rng)


# matrix realizations


def _frobenius(x):
    return np.linalg.norm(np.asarray(x), axis=(-2, -1))


def jordan(f, g):
    return (f @ g + g @ f) / 2


def lie_elliptic(f, g):
    return (f @ g - g @ f) / 2j


def lie_split(f, g):
    return (f @ g - g @ f) / 2


def _hermitian_sampler(n):
    def sample(rng):
        x = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        return (x + x.conj().T) / 2

    return sample


def _symmetric_sampler(n):
    def sample(rng):
        x = rng.standard_normal((n, n))
        return (x + x.T) / 2

    return sample


def hermitian_algebra(n: int, a: int = 1) -> BiAlgebra:
    """Matrix realization of size ``n``; ``a=+1`` hermitian, ``a=-1`` real symmetric."""
    if not 2 <= n <= 8:
        raise ValueError(f"matrix size must be between 2 and 8, got {n}")
    if a == 1:
        return BiAlgebra(
            id=f"hermitian:{n}",
            a=1,
            sigma=jordan,
            alpha=lie_elliptic,
            unit=np.eye(n, dtype=complex),
            sampler=_hermitian_sampler(n),
            norm=_frobenius,
            stack=np.stack,
            dim=n * n,
            matrix_size=n,
        )
    if a == -1:
        return BiAlgebra(
            id=f"realsym:{n}",
            a=-1,
            sigma=jordan,
            alpha=lie_split,
            unit=np.eye(n),
            sampler=_symmetric_sampler(n),
            norm=_frobenius,
            stack=np.stack,
            dim=n * (n + 1) // 2,
            matrix_size=n,
        )
    raise ValueError(f"matrix realizations exist for a = +1 or -1, got {a!r}")


def realsym_algebra(n: int) -> BiAlgebra:
    return hermitian_algebra(n, -1)


def scalar_algebra(a: int = 1) -> BiAlgebra:
    """The trivial one-dimensional algebra (real multiples of 1)."""
    return BiAlgebra(
        id="scalar",
        a=a,
        sigma=jordan,
        alpha=lie_elliptic if a == 1 else lie_split,
        unit=np.eye(1),
        sampler=lambda rng: rng.standard_normal((1, 1)),
        norm=_frobenius,
        stack=np.stack,
        dim=1,
        matrix_size=1,
    )


# parabolic realization


def _poly_sampler(degree: int, spread: int = 3):
    mask = np.add.outer(np.arange(degree + 1), np.arange(degree + 1)) <= degree

    def sample(rng):
        grid = rng.integers(-spread, spread + 1, size=(degree + 1, degree + 1))
        return PolyObservable(np.where(mask, grid, 0), degree)

    return sample


def poisson_algebra(degree: int) -> BiAlgebra:
    """Polynomials of degree <= ``degree`` with the Poisson bracket (a = 0)."""
    if degree < 2:
        raise ValueError(f"degree cap must be at least 2, got {degree}")
    return BiAlgebra(
        id=f"poisson:{degree}",
        a=0,
        sigma=lambda f, g: f * g,
        alpha=poisson_bracket,
        unit=PolyObservable.constant(1),
        sampler=_poly_sampler(degree),
        norm=lambda f: f.norm(),
        stack=PolyObservable.stack,
        dim=(degree + 1) * (degree + 2) // 2,
    )


def mutate_alpha(A: BiAlgebra, factor: float) -> BiAlgebra:
    """Copy of ``A`` whose alpha is multiplied by ``factor`` (for sensitivity tests)."""
    alpha = A.alpha
    return replace(A, id=f"{A.id}~alpha*{factor:g}", alpha=lambda f, g: factor * alpha(f, g))


def with_a(A: BiAlgebra, a: int) -> BiAlgebra:
    """Copy of ``A`` checked against a different Petersen parameter."""
    if a == A.a:
        return A
    return replace(A, id=f"{A.id}@a={a:+d}", a=a)


# identities


def _relative(A: BiAlgebra, residual, *operands):
    num = np.asarray(A.norm(residual), dtype=float)
    den = np.ones_like(num)
    for x in operands:
        den = den * np.asarray(A.norm(x), dtype=float)
    out = np.divide(num, den, out=np.zeros_like(num), where=den > 0)
    return float(out) if out.ndim == 0 else out


def check_jacobi(A: BiAlgebra, f, g, h):
    """Relative residual of ``(f a g) a h + (g a h) a f + (h a f) a g``."""
    al = A.alpha
    res = al(al(f, g), h) + al(al(g, h), f) + al(al(h, f), g)
    return _relative(A, res, f, g, h)


def check_leibniz(A: BiAlgebra, g, f, h):
    """Relative residual of ``g a (f s h) - (g a f) s h - f s (g a h)``."""
    al, sg = A.alpha, A.sigma
    res = al(g, sg(f, h)) - sg(al(g, f), h) - sg(f, al(g, h))
    return _relative(A, res, g, f, h)


def associator(A: BiAlgebra, f, g, h):
    sg = A.sigma
    return sg(sg(f, g), h) - sg(f, sg(g, h))


def check_petersen(A: BiAlgebra, f, g, h):
    """Relative residual of ``[f,g,h]_sigma - a g a (h a f)``."""
    al = A.alpha
    res = associator(A, f, g, h) - A.a * al(g, al(h, f))
    return _relative(A, res, f, g, h)


def beta_from(A: BiAlgebra, f, g):
    """External complexification ``f s g + i f a g`` (elliptic algebras only)."""
    if A.a != 1:
        raise ValueError(f"beta needs an elliptic algebra (a = +1), {A.id} has a = {A.a}")
    return A.sigma(f, g) + 1j * A.alpha(f, g)


def check_assoc_beta(A: BiAlgebra, f, g, h):
    res = beta_from(A, beta_from(A, f, g), h) - beta_from(A, f, beta_from(A, g, h))
    return _relative(A, res, f, g, h)


def check_closure(A: BiAlgebra, f, g):
    """Deviation of sigma and alpha from ``A.reference``, relative to ``|f||g|``."""
    if A.reference is None:
        raise ValueError(f"{A.id} has no reference products")
    ref_sigma, ref_alpha = A.reference
    rs = _relative(A, A.sigma(f, g) - ref_sigma(f, g), f, g)
    ra = _relative(A, A.alpha(f, g) - ref_alpha(f, g), f, g)
    return np.maximum(rs, ra)


# composition


def _matrix_units(n: int) -> np.ndarray:
    return np.eye(n * n).reshape(n * n, n, n)


def _structure(product, n: int) -> np.ndarray:
    units = _matrix_units(n)
    return np.array([[product(ei, ej) for ej in units] for ei in units])


def _unit_coefficients(X, n1: int, n2: int) -> np.ndarray:
    # row index i*n2 + k, column j*n2 + l  ->  C[(i,j), (k,l)]
    X = np.asarray(X)
    lead = X.shape[:-2]
    t = X.reshape(lead + (n1, n2, n1, n2))
    t = np.moveaxis(t, -3, -2)  # (..., i, j, k, l)
    return t.reshape(lead + (n1 * n1, n2 * n2))


def _from_unit_tensor(R, n1: int, n2: int) -> np.ndarray:
    # R[..., i, j, k, l] -> matrix with row i*n2 + k, column j*n2 + l
    lead = R.shape[:-4]
    t = np.moveaxis(R, -2, -3)
    return t.reshape(lead + (n1 * n2, n1 * n2))


def _tensor_product(first, second, n1: int, n2: int):
    s1 = first.reshape(n1 * n1, n1 * n1, n1, n1)
    s2 = second.reshape(n2 * n2, n2 * n2, n2, n2)

    def product(X, Y):
        cx = _unit_coefficients(X, n1, n2)
        cy = _unit_coefficients(Y, n1, n2)
        r = np.einsum("...pr,...qs,pqij,rskl->...ijkl", cx, cy, s1, s2, optimize=True)
        return _from_unit_tensor(r, n1, n2)

    return product


def compose(A1: BiAlgebra, A2: BiAlgebra) -> BiAlgebra:
    """Algebra of the composite system on Kronecker-product matrices.

    Products follow the composability rule

        sigma_T = sigma1 (x) sigma2 - a alpha1 (x) alpha2
        alpha_T = alpha1 (x) sigma2 + sigma1 (x) alpha2

    extended bilinearly: each operand is expanded on the matrix units of the
    two factors and the structure constants of both factors are contracted.
    """
    if A1.a != A2.a:
        raise ValueError(f"cannot compose a = {A1.a} with a = {A2.a}")
    if A1.matrix_size is None or A2.matrix_size is None:
        raise ValueError("composition needs matrix realizations on both sides")
    n1, n2, a = A1.matrix_size, A2.matrix_size, A1.a
    S1, S2 = _structure(A1.sigma, n1), _structure(A2.sigma, n2)
    L1, L2 = _structure(A1.alpha, n1), _structure(A2.alpha, n2)
    ss = _tensor_product(S1, S2, n1, n2)
    ll = _tensor_product(L1, L2, n1, n2)
    ls = _tensor_product(L1, S2, n1, n2)
    sl = _tensor_product(S1, L2, n1, n2)

    def sigma(X, Y):
        return ss(X, Y) - a * ll(X, Y)

    def alpha(X, Y):
        return ls(X, Y) + sl(X, Y)

    def sampler(rng):
        terms = int(rng.integers(1, 4))
        return sum(np.kron(A1.sample(rng), A2.sample(rng)) for _ in range(terms))

    reference = None
    if a == 1:
        reference = (jordan, lie_elliptic)
    elif a == -1:
        reference = (jordan, lie_split)

    return BiAlgebra(
        id=f"{A1.id}*{A2.id}",
        a=a,
        sigma=sigma,
        alpha=alpha,
        unit=np.kron(A1.unit, A2.unit),
        sampler=sampler,
        norm=_frobenius,
        stack=np.stack,
        dim=A1.dim * A2.dim,
        matrix_size=n1 * n2,
        reference=reference,
    )


# J map and centralizer


def jj_check(A: BiAlgebra, J) -> float:
    """``|J J + e|`` using the ambient matrix product."""
    if A.matrix_size is None:
        raise ValueError(f"{A.id} has no ambient matrix product")
    J = np.asarray(J)
    return float(np.linalg.norm(J @ J + A.unit))


def _flatten(x) -> np.ndarray:
    if isinstance(x, PolyObservable):
        return x.coeffs
    return np.asarray(x)


def _pad_square(x: np.ndarray, size: int) -> np.ndarray:
    # polynomial grids of different caps share one coordinate system
    extra = size - x.shape[-1]
    return np.pad(x, [(0, extra), (0, extra)]) if extra else x


def centralizer(A: BiAlgebra, J, basis: Sequence) -> list:
    """Basis of ``{f in span(basis) : J alpha f = 0}``.

    The map ``f -> alpha(J, f)`` is assembled column by column over
    ``basis`` and its kernel read off from the SVD; singular values at or
    below ``KERNEL_RTOL * s_max`` count as zero.
    """
    basis = list(basis)
    if not basis:
        raise ValueError("centralizer needs a non-empty basis")
    images = [_flatten(A.alpha(J, b)) for b in basis]
    size = max(im.shape[-1] for im in images)
    M = np.stack([_pad_square(im, size).ravel() for im in images], axis=1)
    _, s, vh = np.linalg.svd(M)
    smax = s[0] if s.size else 0.0
    if smax == 0.0:
        return list(basis)
    rank = int(np.sum(s > KERNEL_RTOL * smax))
    kernel = vh[rank:].conj()
    return [sum(coef * b for coef, b in zip(row, basis)) for row in kernel]


# Kahler structure of a Hermitian inner product


class KahlerParts(NamedTuple):
    G: float
    W: float


def kahler_decompose(phi, psi, hbar: float = 1.0) -> KahlerParts:
    """Split ``<phi, psi> = (G + i W) / (2 hbar)`` into the metric and symplectic parts."""
    phi = np.asarray(phi, dtype=complex)
    psi = np.asarray(psi, dtype=complex)
    if phi.shape != psi.shape:
        raise ValueError(f"dimension mismatch: {phi.shape} vs {psi.shape}")
    if hbar <= 0:
        raise ValueError("hbar must be positive")
    inner = np.vdot(phi, psi)
    return KahlerParts(2 * hbar * inner.real, 2 * hbar * inner.imag)


def kahler_residual(phi, psi, hbar: float = 1.0) -> float:
    """``|G(phi, psi) - W(phi, J psi)|`` with J = multiplication by i."""
    g = kahler_decompose(phi, psi, hbar).G
    w = kahler_decompose(phi, 1j * np.asarray(psi, dtype=complex), hbar).W
    return abs(g - w)


# suite runner


@dataclass(frozen=True)
class VerificationReport:
    algebra: str
    identity: str
    samples: int
    seed: int
    tol: float
    max_residual: float
    verdict: str

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def applicable_identities(A: BiAlgebra) -> list[str]:
    names = ["jacobi", "leibniz", "petersen"]
    if A.a == 1:
        names.append("assoc_beta")
    if A.reference is not None:
        names.append("closure")
    return names


def sample_triple(A: BiAlgebra, seed: int, k: int):
    """Sample ``k`` of the stream for ``seed``; independent of every other sample."""
    rng = np.random.default_rng([seed, k])
    return A.sample(rng), A.sample(rng), A.sample(rng)


def _evaluate(A: BiAlgebra, f, g, h, identity: str):
    if identity == "jacobi":
        return check_jacobi(A, f, g, h)
    if identity == "leibniz":
        return check_leibniz(A, g, f, h)
    if identity == "petersen":
        return check_petersen(A, f, g, h)
    if identity == "assoc_beta":
        return check_assoc_beta(A, f, g, h)
    if identity == "closure":
        return check_closure(A, f, g)
    raise ValueError(f"unknown identity {identity!r}")


def _chunk_maxima(A: BiAlgebra, seed: int, start: int, stop: int, names: list[str]) -> dict[str, float]:
    triples = [sample_triple(A, seed, k) for k in range(start, stop)]
    f, g, h = (A.stack([t[i] for t in triples]) for i in range(3))
    return {name: float(np.max(_evaluate(A, f, g, h, name))) for name in names}


def run_suite(
    A: BiAlgebra,
    samples: int,
    seed: int,
    tol: float = DEFAULT_TOL,
    *,
    workers: int = 1,
    chunk_size: int = 1024,
) -> list[VerificationReport]:
    """Check every applicable identity on ``samples`` seeded random triples.

    Sample ``k`` is drawn from its own generator seeded by ``(seed, k)`` and
    chunks are reduced with ``max``, so the reports depend only on
    ``(A, samples, seed, tol)`` and not on ``workers`` or ``chunk_size``.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    if tol <= 0:
        raise ValueError("tol must be positive")
    names = applicable_identities(A)
    bounds = [(s, min(s + chunk_size, samples)) for s in range(0, samples, chunk_size)]
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda b: _chunk_maxima(A, seed, *b, names), bounds))
    else:
        parts = [_chunk_maxima(A, seed, *b, names) for b in bounds]
    reports = []
    for name in names:
        worst = max(p[name] for p in parts)
        reports.append(
            VerificationReport(
                algebra=A.id,
                identity=name,
                samples=samples,
                seed=seed,
                tol=tol,
                max_residual=worst,
                verdict="pass" if worst <= tol else "fail",
            )
        )
    return reports
