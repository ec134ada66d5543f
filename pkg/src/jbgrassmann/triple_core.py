"""JB*-triple structure of the full matrix algebra L(C^n).

The triple product is ``{x y z} = (x y* z + z y* x) / 2``.  Everything in this
module is built from that product: the box operator ``a□b``, the quadratic
operator ``Q(e)``, Peirce projections of a tripotent, joint Peirce components
of an orthogonal tripotent family, the Jordan product relative to a
tripotent, and the Levi form at a minimal tripotent.

Matrices are plain complex ``numpy`` arrays.  Validation tolerances are
relative with an additive floor, ``tol * (1 + ||.||)``, where ``||.||`` is the
operator norm (largest singular value).
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import DimensionError, NotTripotentError, ValidationError

DEFAULT_TOL = 1e-10

HALF = 0.5
PEIRCE_INDICES = (1, HALF, 0)


def default_tol() -> float:
    """Default validation tolerance, overridable through ``JBT_TOL``."""
    value = os.environ.get("JBT_TOL")
    if value:
        return float(value)
    return DEFAULT_TOL


def as_matrix(x, name: str = "matrix") -> np.ndarray:
    """Return ``x`` as a square, finite, complex ndarray."""
    arr = np.asarray(getattr(x, "matrix", x), dtype=complex)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise DimensionError(f"{name} must be square, got shape {arr.shape}")
    if arr.shape[0] == 0:
        raise DimensionError(f"{name} must be non-empty")
    if not np.all(np.isfinite(arr)):
        raise ValidationError(f"{name} has non-finite entries")
    return arr


def _same_shape(*mats: np.ndarray) -> None:
    shape = mats[0].shape
    for m in mats[1:]:
        if m.shape != shape:
            raise DimensionError(f"dimension mismatch: {shape} vs {m.shape}")


def opnorm(x) -> float:
    """Operator norm (largest singular value)."""
    x = np.asarray(getattr(x, "matrix", x))
    if x.size == 0:
        return 0.0
    if x.ndim == 1:
        return float(np.linalg.norm(x))
    return float(np.linalg.norm(x, 2))


def adjoint(x: np.ndarray) -> np.ndarray:
    return x.conj().T


def triple_product(x, y, z) -> np.ndarray:
    """``{x y z} = (x y* z + z y* x) / 2``.

    Symmetric complex-linear in ``x`` and ``z``, conjugate-linear in ``y``.
    """
    x, y, z = as_matrix(x, "x"), as_matrix(y, "y"), as_matrix(z, "z")
    _same_shape(x, y, z)
    ys = adjoint(y)
    return 0.5 * (x @ ys @ z + z @ ys @ x)


def box_apply(a, b, z) -> np.ndarray:
    """Apply the box operator ``a□b`` to ``z``, i.e. ``{a b z}``."""
    return triple_product(a, b, z)


def q_apply(e, z) -> np.ndarray:
    """``Q(e) z = {e z e} = e z* e`` (conjugate-linear in ``z``)."""
    return triple_product(e, z, e)


def is_tripotent(e, tol: float = DEFAULT_TOL) -> bool:
    e = as_matrix(e, "e")
    return opnorm(triple_product(e, e, e) - e) <= tol * (1.0 + opnorm(e))


@dataclass(frozen=True, eq=False)
class Tripotent:
    """A validated tripotent ``{e e e} = e`` (a partial isometry in L(H))."""

    matrix: np.ndarray
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        m = as_matrix(self.matrix, "tripotent")
        if not is_tripotent(m, self.tol):
            res = opnorm(triple_product(m, m, m) - m)
            raise NotTripotentError(f"{{eee}} - e has norm {res:.3e} > tol")
        object.__setattr__(self, "matrix", m)

    @property
    def n(self) -> int:
        return self.matrix.shape[0]


def tripotent_matrix(e, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Matrix of ``e``, validating it as a tripotent unless already validated.

    Accepts a :class:`Tripotent`, any object carrying a validated ``matrix``
    attribute (projections, frames' atoms), or a raw array.
    """
    if isinstance(e, Tripotent) or hasattr(e, "matrix"):
        return as_matrix(e.matrix, "e")
    return Tripotent(e, tol).matrix


def _peirce_index(k) -> float:
    if isinstance(k, str):
        key = k.strip().lower()
        if key in ("half", "1/2", "0.5", "½"):
            return HALF
        if key in ("1", "one"):
            return 1
        if key in ("0", "zero"):
            return 0
        raise ValidationError(f"invalid Peirce index {k!r}")
    if isinstance(k, (int, float, Fraction, np.integer, np.floating)):
        if k == 1:
            return 1
        if k == 0:
            return 0
        if k == Fraction(1, 2):
            return HALF
    raise ValidationError(f"invalid Peirce index {k!r}; expected 1, 1/2 or 0")


def _q_squared(e: np.ndarray, z: np.ndarray) -> np.ndarray:
    return q_apply(e, q_apply(e, z))


def peirce_project(e, k, z, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Peirce projection ``P_k(e) z`` for ``k`` in ``{1, 1/2, 0}``.

    Uses ``P_1 = Q(e)^2``, ``P_1/2 = 2(e□e - Q(e)^2)`` and
    ``P_0 = Id - 2 e□e + Q(e)^2``.
    """
    k = _peirce_index(k)
    e = tripotent_matrix(e, tol)
    z = as_matrix(z, "z")
    _same_shape(e, z)
    q2 = _q_squared(e, z)
    if k == 1:
        return q2
    ee = box_apply(e, e, z)
    if k == HALF:
        return 2.0 * (ee - q2)
    return z - 2.0 * ee + q2


def peirce_decompose(e, z, tol: float = DEFAULT_TOL):
    """Return ``(z1, z_half, z0)``, the Peirce components of ``z`` relative to ``e``."""
    e = tripotent_matrix(e, tol)
    z = as_matrix(z, "z")
    _same_shape(e, z)
    q2 = _q_squared(e, z)
    ee = box_apply(e, e, z)
    return q2, 2.0 * (ee - q2), z - 2.0 * ee + q2


def check_orthogonal_family(family: Sequence[np.ndarray], tol: float = DEFAULT_TOL) -> None:
    """Raise unless ``e_i□e_j = 0`` for all ``i != j``.

    ``a□b`` vanishes identically iff ``a b* = 0`` and ``b* a = 0``.
    """
    for i, x in enumerate(family):
        for y in family[i + 1:]:
            scale = tol * (1.0 + opnorm(x) * opnorm(y))
            if opnorm(x @ adjoint(y)) > scale or opnorm(adjoint(y) @ x) > scale:
                raise ValidationError("tripotent family is not pairwise orthogonal")


def joint_peirce_project(frame, i: int, j: int, z, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Component ``Z_ij`` of ``z`` for an orthogonal family ``e_1, ..., e_r``.

    Indices run over ``0..r``; index 0 is the annihilator of the family:

    * ``Z_ii = P_1(e_i)``
    * ``Z_ij = P_1/2(e_i) P_1/2(e_j)`` for ``i != j``, both ``>= 1``
    * ``Z_i0 = P_1/2(e_i) prod_{j != i} P_0(e_j)``
    * ``Z_00 = prod_j P_0(e_j)``

    Summing over ``i <= j`` reconstructs ``z``.
    """
    family = [tripotent_matrix(e, tol) for e in getattr(frame, "atoms", frame)]
    r = len(family)
    check_orthogonal_family(family, tol)
    if not (0 <= i <= r and 0 <= j <= r):
        raise ValidationError(f"Peirce indices ({i}, {j}) out of range 0..{r}")
    z = as_matrix(z, "z")
    if family:
        _same_shape(family[0], z)
    i, j = min(i, j), max(i, j)
    if i == 0 and j == 0:
        out = z
        for e in family:
            out = peirce_project(e, 0, out)
        return out
    if i == 0:
        out = z
        for k, e in enumerate(family, start=1):
            out = peirce_project(e, HALF if k == j else 0, out)
        return out
    if i == j:
        return peirce_project(family[i - 1], 1, z)
    return peirce_project(family[i - 1], HALF, peirce_project(family[j - 1], HALF, z))


def jordan_product(e, x, y) -> np.ndarray:
    """Jordan product ``x ∘ y = {x e y}`` relative to ``e``."""
    return triple_product(x, e, y)


def sharp(e, x, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Involution ``x# = {e x e}`` of the JB*-algebra ``Z_1(e)``."""
    e = tripotent_matrix(e, tol)
    x = as_matrix(x, "x")
    _same_shape(e, x)
    if opnorm(peirce_project(e, 1, x) - x) > tol * (1.0 + opnorm(x)):
        raise ValidationError("x is not in Z_1(e)")
    return q_apply(e, x)


def tripotent_rank(e) -> int:
    """Rank by counting singular values above 1/2."""
    s = np.linalg.svd(as_matrix(e, "e"), compute_uv=False)
    return int(np.count_nonzero(s > 0.5))


def is_minimal(e, tol: float = DEFAULT_TOL) -> bool:
    # in L(H) the minimal tripotents are exactly the rank-1 partial isometries
    e = as_matrix(e, "e")
    return is_tripotent(e, tol) and tripotent_rank(e) == 1


def levi_form(e, u, v, tol: float = DEFAULT_TOL) -> complex:
    """Levi form at a minimal tripotent: the scalar ``c`` with ``{e u v} = c e``.

    ``c`` equals ``<v, u>_e`` in the usual notation; it is conjugate-symmetric
    in ``(u, v)`` and positive definite on ``Z_1/2(e)``.
    """
    e = tripotent_matrix(e, tol)
    if tripotent_rank(e) != 1:
        raise ValidationError("Levi form needs a minimal (rank-1) tripotent")
    u, v = as_matrix(u, "u"), as_matrix(v, "v")
    _same_shape(e, u, v)
    for name, w in (("u", u), ("v", v)):
        if opnorm(peirce_project(e, HALF, w) - w) > tol * (1.0 + opnorm(w)):
            raise ValidationError(f"{name} is not in Z_1/2(e)")
    w = triple_product(e, u, v)
    # for e = alpha alpha* this is alpha* w alpha
    c = np.vdot(e, w) / np.vdot(e, e)
    residual = opnorm(w - c * e)
    if residual > tol * (1.0 + opnorm(u) * opnorm(v)):
        raise ValidationError(f"{{euv}} is not a multiple of e (residual {residual:.3e})")
    return complex(c)


def commutator_generator(e, u) -> np.ndarray:
    """``Ω = u e - e u``; for a projection ``e`` and Hermitian ``u``, ``k_u z = [Ω, z]``."""
    e, u = as_matrix(e, "e"), as_matrix(u, "u")
    _same_shape(e, u)
    return u @ e - e @ u


def k_operator_apply(e, u, z) -> np.ndarray:
    """Apply the inner derivation ``k_u = 2(u□e - e□u)`` to ``z``."""
    return 2.0 * (box_apply(u, e, z) - box_apply(e, u, z))
