"""Points and tangent vectors of the Grassmann manifold ``M_r``.

A point is a rank-``r`` orthogonal projection ``a`` on ``C^n``; the tangent
space at ``a`` is the Hermitian part of the Peirce ``1/2``-space ``Z_1/2(a)``,
i.e. Hermitian ``u`` with ``a u a = 0`` and ``(I-a) u (I-a) = 0``.

A frame for ``a`` is an orthonormal family ``alpha_1..alpha_r`` spanning the
range of ``a``; its atoms ``a_k = alpha_k alpha_k*`` are minimal projections
summing to ``a``.  A tangent vector decomposes as
``u = sum_k alpha_k xi_k* + xi_k alpha_k*`` with ``xi_k = u alpha_k`` orthogonal
to the range of ``a``; choosing the frame from the singular value
decomposition of the off-diagonal block gives the spectral decomposition
``u = sum_k rho_k u_k`` into orthogonal minimal tripotents.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import sampling
from .errors import DimensionError, NotProjectionError, NotTangentError, ValidationError
from .triple_core import (
    DEFAULT_TOL,
    HALF,
    adjoint,
    as_matrix,
    is_tripotent,
    jordan_product,
    levi_form,
    opnorm,
    peirce_project,
    triple_product,
)


@dataclass(frozen=True, eq=False)
class Projection:
    """A validated rank-``r`` orthogonal projection.

    Build instances with :func:`make_projection`; the constructor does not
    validate.  ``symmetrization_residual`` records how far the raw input was
    from Hermitian before it was replaced by its Hermitian part.
    """

    matrix: np.ndarray
    rank: int
    tol: float = DEFAULT_TOL
    symmetrization_residual: float = 0.0

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    @cached_property
    def range_basis(self) -> np.ndarray:
        """Orthonormal basis (``n x r``) of the range, from a Hermitian eigendecomposition."""
        _, vecs = np.linalg.eigh(self.matrix)
        return vecs[:, self.n - self.rank:]

    @property
    def complement(self) -> np.ndarray:
        return np.eye(self.n) - self.matrix

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.matrix, dtype=dtype)


def projection_residuals(matrix) -> dict:
    """Hermiticity and idempotency residuals of a raw matrix, plus its eigenvalue rank."""
    m = as_matrix(matrix)
    h = 0.5 * (m + adjoint(m))
    eig = np.linalg.eigvalsh(h)
    return {
        "hermiticity": opnorm(m - adjoint(m)),
        "idempotency": opnorm(h @ h - h),
        "clustering": float(np.max(np.minimum(np.abs(eig), np.abs(eig - 1.0)))),
        "rank": int(np.count_nonzero(eig > 0.5)),
    }


def make_projection(matrix, tol: float = DEFAULT_TOL) -> Projection:
    """Validate ``matrix`` as an orthogonal projection of positive rank.

    The input is replaced by its Hermitian part ``(z + z*)/2``; the size of
    that adjustment is kept in ``symmetrization_residual``.
    """
    if isinstance(matrix, Projection):
        matrix = matrix.matrix
    m = as_matrix(matrix, "projection")
    scale = tol * (1.0 + opnorm(m))
    herm = opnorm(m - adjoint(m))
    if herm > scale:
        raise NotProjectionError(f"not Hermitian: ||z - z*|| = {herm:.3e} > {scale:.3e}")
    h = 0.5 * (m + adjoint(m))
    idem = opnorm(h @ h - h)
    if idem > scale:
        raise NotProjectionError(f"not idempotent: ||z^2 - z|| = {idem:.3e} > {scale:.3e}")
    eig = np.linalg.eigvalsh(h)
    spread = float(np.max(np.minimum(np.abs(eig), np.abs(eig - 1.0))))
    if spread > 2.0 * scale:
        raise NotProjectionError(f"eigenvalues not clustered at {{0, 1}} (spread {spread:.3e})")
    rank = int(np.count_nonzero(eig > 0.5))
    if rank == 0:
        raise NotProjectionError("zero projection is not a point of any M_r, r >= 1")
    return Projection(h, rank, tol, herm)


def _rank_one(alpha: np.ndarray, tol: float) -> Projection:
    return Projection(np.outer(alpha, alpha.conj()), 1, tol)


def random_projection(n: int, r: int, seed=None, tol: float = DEFAULT_TOL) -> Projection:
    """Projection ``V V*`` onto the span of ``r`` orthonormalized complex Gaussian columns."""
    if not 1 <= r <= n:
        raise ValidationError(f"rank must satisfy 1 <= r <= n, got r={r}, n={n}")
    rng = sampling.rng_from(seed)
    v, _ = np.linalg.qr(sampling.complex_gaussian(rng, (n, r)))
    return make_projection(v @ adjoint(v), tol)


def same_point(p: Projection, q: Projection) -> bool:
    if p is q:
        return True
    if p.matrix.shape != q.matrix.shape:
        return False
    return opnorm(p.matrix - q.matrix) <= max(p.tol, q.tol) * 2.0


def _require_same_base(p: Projection, q: Projection, what: str = "base") -> None:
    if not same_point(p, q):
        raise ValidationError(f"{what} mismatch: objects are attached to different projections")


@dataclass(frozen=True, eq=False)
class Frame:
    """Orthonormal vectors ``alpha_k`` (columns of ``vectors``) spanning ``range(base)``."""

    base: Projection
    atoms: tuple
    vectors: np.ndarray

    @property
    def rank(self) -> int:
        return len(self.atoms)

    def __len__(self) -> int:
        return len(self.atoms)


def _columns(vectors) -> np.ndarray:
    if isinstance(vectors, (list, tuple)):
        if not vectors:
            return np.zeros((0, 0), dtype=complex)
        return np.column_stack([np.asarray(x, dtype=complex).ravel() for x in vectors])
    return np.asarray(vectors, dtype=complex)


def make_frame(base: Projection, vectors, tol: float | None = None) -> Frame:
    """Validate ``vectors`` (``n x r``, or a list of ``r`` vectors) as a frame for ``base``."""
    tol = base.tol if tol is None else tol
    v = _columns(vectors)
    if v.ndim != 2 or v.shape != (base.n, base.rank):
        raise DimensionError(f"frame needs {base.rank} vectors of length {base.n}")
    if opnorm(adjoint(v) @ v - np.eye(base.rank)) > tol:
        raise ValidationError("frame vectors are not orthonormal")
    if opnorm(base.matrix @ v - v) > tol:
        raise ValidationError("frame vectors are not in the range of the base projection")
    atoms = tuple(_rank_one(v[:, k], tol) for k in range(base.rank))
    if opnorm(sum(x.matrix for x in atoms) - base.matrix) > tol * (1.0 + base.rank):
        raise ValidationError("frame atoms do not sum to the base projection")
    return Frame(base, atoms, v)


def _fix_phases(v: np.ndarray) -> np.ndarray:
    # make the largest entry of each column real positive (deterministic output)
    idx = np.argmax(np.abs(v), axis=0)
    piv = v[idx, np.arange(v.shape[1])]
    return v * (np.abs(piv) / piv)


def frame_for(a: Projection) -> Frame:
    """Some frame for ``a``: the eigenvectors of ``a`` with eigenvalue near 1.

    Callers may rely only on the frame invariants, not on which frame is returned.
    """
    return make_frame(a, _fix_phases(a.range_basis.copy()))


def random_frame(a: Projection, seed=None) -> Frame:
    """Frame obtained by rotating :func:`frame_for` with a random ``r x r`` unitary."""
    w = sampling.random_unitary(a.rank, seed)
    return make_frame(a, frame_for(a).vectors @ w)


@dataclass(frozen=True, eq=False)
class TangentVector:
    """Hermitian ``u`` in ``Z_1/2(base)``."""

    base: Projection
    matrix: np.ndarray

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.matrix, dtype=dtype)


def tangent_residual(a: Projection, u) -> float:
    """``||2{a a u} - u||``: distance of ``u`` from the Peirce 1/2-space of ``a``."""
    u = as_matrix(u, "u")
    return opnorm(2.0 * triple_product(a.matrix, a.matrix, u) - u)


def make_tangent(a: Projection, matrix, tol: float | None = None) -> TangentVector:
    """Validate ``matrix`` as a tangent vector at ``a``."""
    tol = a.tol if tol is None else tol
    u = as_matrix(matrix, "tangent")
    if u.shape != a.matrix.shape:
        raise DimensionError(f"tangent shape {u.shape} does not match base {a.matrix.shape}")
    scale = tol * (1.0 + opnorm(u))
    if opnorm(u - adjoint(u)) > scale:
        raise NotTangentError("tangent vector is not Hermitian")
    res = tangent_residual(a, u)
    if res > scale:
        raise NotTangentError(f"not in Z_1/2(a): ||2{{aau}} - u|| = {res:.3e}")
    return TangentVector(a, 0.5 * (u + adjoint(u)))


def zero_tangent(a: Projection) -> TangentVector:
    return TangentVector(a, np.zeros_like(a.matrix))


def tangent_project(a: Projection, z) -> TangentVector:
    """Hermitian part of ``P_1/2(a) z``; idempotent."""
    z = as_matrix(z, "z")
    if z.shape != a.matrix.shape:
        raise DimensionError(f"shape {z.shape} does not match base {a.matrix.shape}")
    p = peirce_project(a, HALF, 0.5 * (z + adjoint(z)))
    return TangentVector(a, 0.5 * (p + adjoint(p)))


def random_tangent(a: Projection, seed=None, norm: float | None = None) -> TangentVector:
    """Random tangent at ``a``; rescaled to operator norm ``norm`` when given."""
    g = sampling.random_matrix(a.n, seed)
    b = a.complement @ g @ a.matrix
    u = b + adjoint(b)
    if norm is not None:
        size = opnorm(u)
        u = u * (norm / size) if size > 0 else u
    return TangentVector(a, u)


def _xi_matrix(xis, n: int, r: int) -> np.ndarray:
    x = _columns(xis)
    if x.shape != (n, r):
        raise DimensionError(f"expected {r} vectors of length {n}")
    return x


def tangent_from_xi(frame: Frame, xis, tol: float | None = None) -> TangentVector:
    """``u = sum_k alpha_k xi_k* + xi_k alpha_k*`` for ``xi_k`` orthogonal to ``range(a)``.

    ``xis`` is an ``n x r`` array of columns or a list of ``r`` vectors.
    """
    a = frame.base
    tol = a.tol if tol is None else tol
    x = _xi_matrix(xis, a.n, a.rank)
    for k in range(a.rank):
        if np.linalg.norm(a.matrix @ x[:, k]) > tol * (1.0 + np.linalg.norm(x[:, k])):
            raise ValidationError(f"xi_{k + 1} is not orthogonal to the range of the base")
    v = frame.vectors
    u = v @ adjoint(x) + x @ adjoint(v)
    return TangentVector(a, 0.5 * (u + adjoint(u)))


def xi_from_tangent(frame: Frame, u: TangentVector) -> np.ndarray:
    """Columns ``xi_k = u alpha_k`` (an ``n x r`` array)."""
    _require_same_base(frame.base, u.base)
    return u.matrix @ frame.vectors


@dataclass(frozen=True, eq=False)
class SpectralData:
    """``u = sum_k rho_k u_k`` with ``u_k = alpha_k xi_k* + xi_k alpha_k*``, ``rho`` ascending."""

    base: Projection
    singular_values: np.ndarray
    tripotents: tuple
    alphas: np.ndarray
    xis: np.ndarray

    @property
    def s(self) -> int:
        return len(self.singular_values)

    def reconstruct(self) -> np.ndarray:
        out = np.zeros_like(self.base.matrix)
        for rho, x in zip(self.singular_values, self.tripotents):
            out = out + rho * x
        return out


def spectral_decompose(u: TangentVector, tol: float | None = None) -> SpectralData:
    """Spectral decomposition of a tangent vector into orthogonal minimal tripotents.

    Computed from the SVD of the block ``B = (I - a) u a``: right singular
    vectors lie in ``range(a)``, left ones in its orthogonal complement.
    Singular values below ``tol * ||u||`` are dropped, so ``s <= r``.
    """
    a = u.base
    tol = a.tol if tol is None else tol
    block = a.complement @ u.matrix @ a.matrix
    w, sv, vh = np.linalg.svd(block)
    size = sv[0] if sv.size else 0.0
    cutoff = tol * size if size > 0 else tol
    keep = [k for k in range(min(a.rank, sv.size)) if sv[k] >= cutoff and sv[k] > 0]
    keep.reverse()
    rho = sv[keep].astype(float)
    alphas = vh[keep].conj().T
    xis = w[:, keep]
    trips = tuple(
        np.outer(alphas[:, k], xis[:, k].conj()) + np.outer(xis[:, k], alphas[:, k].conj())
        for k in range(len(keep))
    )
    return SpectralData(a, rho, trips, alphas, xis)


def _complete(a: Projection, alphas: np.ndarray) -> np.ndarray:
    """Orthonormal completion of ``alphas`` to a basis of ``range(a)``."""
    s = alphas.shape[1]
    if s == a.rank:
        return alphas
    v = frame_for(a).vectors
    rest = v - alphas @ (adjoint(alphas) @ v) if s else v
    q, _, _ = np.linalg.svd(rest, full_matrices=False)
    return np.hstack([alphas, _fix_phases(q[:, : a.rank - s])])


def associated_frame(u: TangentVector, spectral: SpectralData | None = None) -> Frame:
    """Frame whose first ``s`` atoms come from the spectral decomposition of ``u``.

    The remaining ``r - s`` atoms complete the frame inside ``range(a)``.
    """
    sd = spectral_decompose(u) if spectral is None else spectral
    a = u.base
    alphas = a.matrix @ sd.alphas
    return make_frame(a, _complete(a, alphas))


def minimal_tripotent_half(alpha, xi, tol: float = DEFAULT_TOL) -> np.ndarray:
    """``alpha xi* + xi alpha*`` for orthonormal ``alpha``, ``xi``."""
    alpha = np.asarray(alpha, dtype=complex).ravel()
    xi = np.asarray(xi, dtype=complex).ravel()
    if alpha.shape != xi.shape:
        raise DimensionError("alpha and xi must have the same length")
    if abs(np.linalg.norm(alpha) - 1.0) > tol or abs(np.linalg.norm(xi) - 1.0) > tol:
        raise ValidationError("alpha and xi must be unit vectors")
    if abs(np.vdot(alpha, xi)) > tol:
        raise ValidationError("alpha and xi must be orthogonal")
    return np.outer(alpha, xi.conj()) + np.outer(xi, alpha.conj())


def are_orthogonal_tripotents(x, y, tol: float = DEFAULT_TOL) -> bool:
    """``x`` and ``y`` are orthogonal iff ``x y* = 0 = y* x``."""
    x, y = as_matrix(x, "x"), as_matrix(y, "y")
    if x.shape != y.shape:
        raise DimensionError(f"dimension mismatch: {x.shape} vs {y.shape}")
    return opnorm(x @ adjoint(y)) <= tol and opnorm(adjoint(y) @ x) <= tol


def lambda_coefficients(frame: Frame, b: Projection) -> np.ndarray:
    """``lambda_k`` with ``Q(a_k) b = lambda_k a_k``, i.e. ``alpha_k* b alpha_k``."""
    if b.n != frame.base.n:
        raise DimensionError(f"dimension mismatch: {frame.base.n} vs {b.n}")
    v = frame.vectors
    lam = np.real(np.einsum("ik,ij,jk->k", v.conj(), b.matrix, v))
    return np.clip(lam, 0.0, 1.0)


def compression(a: Projection, b: Projection) -> np.ndarray:
    """``V* b V`` for an orthonormal basis ``V`` of ``range(a)``."""
    v = a.range_basis
    return adjoint(v) @ b.matrix @ v


def is_in_normal_nbhd(a: Projection, b: Projection, eps: float = 1e-10) -> bool:
    """True iff ``P_1(a) b`` is invertible in ``Z_1(a)`` (smallest singular value >= eps)."""
    if a.n != b.n:
        raise DimensionError(f"dimension mismatch: {a.n} vs {b.n}")
    if a.rank != b.rank:
        raise ValidationError(f"rank mismatch: {a.rank} vs {b.rank}")
    sv = np.linalg.svd(compression(a, b), compute_uv=False)
    return bool(sv[-1] >= eps)


def metric(a: Projection, u: TangentVector, v: TangentVector, frame: Frame | None = None) -> float:
    """Riemann metric ``(1/r) sum_k Re <u_k, v_k>_{a_k}``.

    ``u_k = P_1/2(a_k) u`` are the components over a frame; by default the
    frame associated to ``u``.  The value does not depend on the frame.
    """
    _require_same_base(a, u.base)
    _require_same_base(a, v.base)
    if frame is None:
        frame = associated_frame(u)
    else:
        _require_same_base(a, frame.base, "frame base")
    total = 0.0
    for atom in frame.atoms:
        uk = peirce_project(atom, HALF, u.matrix)
        vk = peirce_project(atom, HALF, v.matrix)
        total += levi_form(atom, vk, uk, tol=max(a.tol, 1e-10)).real
    return total / a.rank


def tangent_norm(u: TangentVector) -> float:
    return float(np.sqrt(max(metric(u.base, u, u), 0.0)))


def jordan_algebra_basis(a_k, u_k, tol: float = DEFAULT_TOL) -> tuple:
    """Basis ``(a_k, u_k, u_k^(2))`` of the real Jordan algebra generated by ``(a_k, u_k)``.

    ``u_k^(2) = {u_k a_k u_k}``.
    """
    p = a_k if isinstance(a_k, Projection) else make_projection(a_k, tol)
    if p.rank != 1:
        raise ValidationError("a_k must be a minimal (rank-1) projection")
    x = as_matrix(u_k, "u_k")
    if not is_tripotent(x, tol):
        raise ValidationError("u_k is not a tripotent")
    if tangent_residual(p, x) > tol * (1.0 + opnorm(x)):
        raise ValidationError("u_k is not in Z_1/2(a_k)")
    return p.matrix, x, jordan_product(p.matrix, x, x)


__all__ = [
    "Projection",
    "Frame",
    "TangentVector",
    "SpectralData",
    "make_projection",
    "projection_residuals",
    "random_projection",
    "make_frame",
    "frame_for",
    "random_frame",
    "make_tangent",
    "zero_tangent",
    "tangent_project",
    "tangent_residual",
    "random_tangent",
    "tangent_from_xi",
    "xi_from_tangent",
    "spectral_decompose",
    "associated_frame",
    "minimal_tripotent_half",
    "are_orthogonal_tripotents",
    "lambda_coefficients",
    "compression",
    "is_in_normal_nbhd",
    "metric",
    "tangent_norm",
    "jordan_algebra_basis",
    "same_point",
]
