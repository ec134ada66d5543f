"""Geodesics, exponential and logarithm maps, distance and symmetries of ``M_r``.

Along a geodesic every atom of the frame associated to the initial velocity
rotates independently in its own 2-plane::

    gamma(t) = sum_k cos^2(rho_k t) a_k + sin(2 rho_k t)/2 u_k + sin^2(rho_k t) u_k^(2)
               + (atoms of the frame with rho_k = 0)

where ``u = sum_k rho_k u_k`` is the spectral decomposition of the velocity
and ``u_k^(2) = {u_k a_k u_k}``.  The geodesic from ``a`` to ``b`` uses the
principal angles ``theta_k`` (``cos^2 theta_k = lambda_k``) as rates, and the
Riemann distance is ``(1/sqrt r) ||theta||_2``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Callable

import numpy as np
from scipy.linalg import null_space

from .errors import DimensionError, DomainError, NotInNormalNeighbourhoodError, ValidationError
from .manifold import (
    Frame,
    Projection,
    TangentVector,
    associated_frame,
    compression,
    make_frame,
    make_projection,
    metric,
    same_point,
    spectral_decompose,
    tangent_project,
)
from .triple_core import adjoint, as_matrix, jordan_product, opnorm, peirce_decompose

log = logging.getLogger(__name__)

# below this the off-diagonal block is treated as exactly zero
_STATIONARY_CUTOFF = 64 * np.finfo(float).eps


@dataclass(frozen=True, eq=False)
class GeodesicSpec:
    """Closed-form description of a geodesic.

    ``components`` holds ``(a_k, u_k, rate_k)`` triples for the moving atoms,
    ``stationary_atoms`` the remaining atoms of the frame.
    """

    base: Projection
    components: tuple
    stationary_atoms: tuple

    @cached_property
    def _squares(self) -> tuple:
        return tuple(jordan_product(atom.matrix, x, x) for atom, x, _ in self.components)

    @cached_property
    def _fixed(self) -> np.ndarray:
        out = np.zeros_like(self.base.matrix)
        for atom in self.stationary_atoms:
            out = out + atom.matrix
        return out

    @property
    def rates(self) -> np.ndarray:
        return np.array([rate for _, _, rate in self.components], dtype=float)

    def matrix_at(self, t: float) -> np.ndarray:
        """Unvalidated matrix ``gamma(t)``."""
        if not self.components:
            # constant geodesic: return the base itself, not its frame resummed
            return self.base.matrix.copy()
        out = self._fixed.copy()
        for (atom, x, rate), sq in zip(self.components, self._squares):
            c, s = np.cos(rate * t), np.sin(rate * t)
            out += (c * c) * atom.matrix + (s * c) * x + (s * s) * sq
        return out

    def point(self, t: float) -> Projection:
        if not self.components:
            return self.base
        return make_projection(self.matrix_at(t), self.base.tol)

    def __call__(self, t: float) -> Projection:
        return self.point(t)

    def velocity(self, t: float = 0.0) -> np.ndarray:
        """Exact derivative of :meth:`matrix_at`."""
        out = np.zeros_like(self.base.matrix)
        for (atom, x, rate), sq in zip(self.components, self._squares):
            out += rate * (-np.sin(2 * rate * t) * atom.matrix + np.cos(2 * rate * t) * x
                           + np.sin(2 * rate * t) * sq)
        return out


def _check_base(a: Projection, u: TangentVector) -> None:
    if not same_point(a, u.base):
        raise ValidationError("tangent vector is not attached to the given base point")


def geodesic_spec(a: Projection, u: TangentVector) -> GeodesicSpec:
    """Geodesic through ``a`` with initial velocity ``u`` (rates are the singular values of ``u``)."""
    _check_base(a, u)
    sd = spectral_decompose(u)
    frame = associated_frame(u, sd)
    s = sd.s
    comps = tuple(
        (frame.atoms[k], sd.tripotents[k], float(sd.singular_values[k])) for k in range(s)
    )
    return GeodesicSpec(a, comps, frame.atoms[s:])


def geodesic_point(a: Projection, u: TangentVector, t: float) -> Projection:
    return geodesic_spec(a, u).point(t)


def exp_map(a: Projection, u: TangentVector) -> Projection:
    """``Exp_a(u) = gamma_{a,u}(1)``, defined for ``||u|| < pi/2``."""
    spec = geodesic_spec(a, u)
    rho_max = float(spec.rates.max()) if spec.components else 0.0
    if rho_max >= np.pi / 2:
        raise DomainError(f"||u|| = {rho_max:.6g} >= pi/2: outside the injectivity domain")
    if rho_max >= 1.0:
        log.info("exp_map: ||u|| = %.6g lies outside the unit ball but below pi/2", rho_max)
    return spec.point(1.0)


@dataclass(frozen=True, eq=False)
class ConnectData:
    """Data of the unique geodesic from ``source`` to ``target``.

    ``angles`` is aligned with ``frame.atoms`` and ascending; the first
    ``r - s`` atoms are stationary (angle 0) and ``tripotents`` belong to the
    last ``s`` atoms.
    """

    frame: Frame
    tripotents: tuple
    angles: np.ndarray
    source: Projection
    target: Projection

    @property
    def s(self) -> int:
        return len(self.tripotents)

    @property
    def moving_angles(self) -> np.ndarray:
        return self.angles[len(self.angles) - self.s:]

    @cached_property
    def geodesic(self) -> GeodesicSpec:
        r, s = len(self.angles), self.s
        comps = tuple(
            (self.frame.atoms[r - s + k], self.tripotents[k], float(self.moving_angles[k]))
            for k in range(s)
        )
        return GeodesicSpec(self.source, comps, self.frame.atoms[: r - s])

    def velocity(self) -> np.ndarray:
        out = np.zeros_like(self.source.matrix)
        for theta, x in zip(self.moving_angles, self.tripotents):
            out = out + theta * x
        return out


def _check_pair(a: Projection, b: Projection) -> None:
    if a.n != b.n:
        raise DimensionError(f"dimension mismatch: {a.n} vs {b.n}")
    if a.rank != b.rank:
        raise ValidationError(f"rank mismatch: {a.rank} vs {b.rank}")


def connect(a: Projection, b: Projection, eps: float = 1e-10) -> ConnectData:
    """Unique geodesic joining ``a`` to ``b`` for ``b`` in the normal neighbourhood of ``a``.

    The frame diagonalizes the compression of ``b`` to ``range(a)``
    (eigenvalues ``lambda_k = cos^2 theta_k``); in that frame the off-diagonal
    block ``(I - a) b a`` maps ``alpha_k`` to ``cos theta_k sin theta_k xi_k``,
    which yields the tripotents ``u_k`` of the spectral decomposition of
    ``P_1/2(a) b``.
    """
    _check_pair(a, b)
    v = a.range_basis
    lam, w = np.linalg.eigh(compression(a, b))
    lam = np.clip(lam, 0.0, 1.0)
    if lam[0] < eps:
        bad = v @ w[:, lam < eps]
        raise NotInNormalNeighbourhoodError(
            f"b is not in the normal neighbourhood of a: P_1(a)b is singular "
            f"({bad.shape[1]} antipodal direction(s), principal angle pi/2); "
            "the connecting geodesic is not unique"
        )
    alphas = a.matrix @ (v @ w)
    off = a.complement @ b.matrix @ alphas
    # ||(I - a) b alpha_k|| = cos(theta_k) sin(theta_k), lambda_k = cos(theta_k)^2
    coupling = np.linalg.norm(off, axis=0)
    angles = np.arctan2(coupling, lam)
    moving = coupling > _STATIONARY_CUTOFF
    angles[~moving] = 0.0
    order = np.argsort(angles, kind="stable")
    order = np.concatenate([order[~moving[order]], order[moving[order]]])
    alphas, off, coupling, angles = alphas[:, order], off[:, order], coupling[order], angles[order]
    s = int(np.count_nonzero(moving))
    r = a.rank
    trips = []
    for k in range(r - s, r):
        alpha, xi = alphas[:, k], off[:, k] / coupling[k]
        trips.append(np.outer(alpha, xi.conj()) + np.outer(xi, alpha.conj()))
    frame = make_frame(a, alphas)
    return ConnectData(frame, tuple(trips), angles, a, b)


def log_map(a: Projection, b: Projection) -> TangentVector:
    """Initial velocity of the geodesic with ``gamma(0) = a`` and ``gamma(1) = b``."""
    u = connect(a, b).velocity()
    return TangentVector(a, 0.5 * (u + adjoint(u)))


def separation_angles(a: Projection, b: Projection) -> np.ndarray:
    """Ascending angles between ``range(a)`` and ``range(b)``.

    Cosines are the singular values of ``V_a* V_b``; the matching sines are the
    lengths of the components of the principal vectors of ``b`` orthogonal to
    ``range(a)``, and ``theta = atan2(sin, cos)``.  Angles of ``pi/2`` are
    allowed, so this is defined on all of ``M_r x M_r``.
    """
    _check_pair(a, b)
    vb = b.range_basis
    _, cos, qh = np.linalg.svd(adjoint(a.range_basis) @ vb)
    principal = vb @ adjoint(qh)
    sin = np.linalg.norm(a.complement @ principal, axis=0)
    return np.sort(np.arctan2(sin, np.clip(cos, 0.0, 1.0)))


def distance(a: Projection, b: Projection) -> float:
    """Riemann distance ``(1/sqrt r) (sum_k theta_k^2)^(1/2)``."""
    _check_pair(a, b)
    if a is b or np.array_equal(a.matrix, b.matrix):
        return 0.0
    theta = separation_angles(a, b)
    return float(np.linalg.norm(theta) / np.sqrt(a.rank))


def midpoint(a: Projection, b: Projection) -> Projection:
    return connect(a, b).geodesic.point(0.5)


def peirce_symmetry(a: Projection, z):
    """Peirce symmetry ``z1 + z_half + z0 -> z1 - z_half + z0`` with center ``a``.

    Projections are mapped to projections (returned as :class:`Projection`).
    """
    zm = as_matrix(z, "z")
    if zm.shape != a.matrix.shape:
        raise DimensionError(f"dimension mismatch: {a.matrix.shape} vs {zm.shape}")
    z1, zh, z0 = peirce_decompose(a, zm)
    out = z1 - zh + z0
    if isinstance(z, Projection):
        return make_projection(out, z.tol)
    return out


def transport_automorphism(a: Projection, b: Projection) -> np.ndarray:
    """Unitary ``w`` with ``w a w* = b``.

    ``z -> w z w*`` is a triple automorphism of L(C^n) carrying ``a`` to ``b``.
    """
    _check_pair(a, b)
    ua = np.hstack([a.range_basis, null_space(adjoint(a.range_basis))])
    ub = np.hstack([b.range_basis, null_space(adjoint(b.range_basis))])
    return ub @ adjoint(ua)


def apply_automorphism(w: np.ndarray, z) -> np.ndarray:
    z = as_matrix(z, "z")
    return w @ z @ adjoint(w)


Curve = Callable[[float], object]


def _sample(curve: Curve, t: float) -> Projection:
    p = curve(t)
    if isinstance(p, Projection):
        return p
    return make_projection(p, tol=1e-8)


def velocity(curve: Curve, t: float, h: float = 1e-4) -> TangentVector:
    """Central-difference velocity, projected to the tangent space at ``curve(t)``."""
    here = _sample(curve, t)
    d = (_sample(curve, t + h).matrix - _sample(curve, t - h).matrix) / (2 * h)
    return tangent_project(here, d)


def covariant_acceleration(curve: Curve, t: float, h: float = 1e-3) -> TangentVector:
    """``P_1/2(gamma) gamma''`` from a central second difference with one Richardson step.

    Vanishes (up to discretization error) exactly on geodesics.
    """
    here = _sample(curve, t)

    def second(step):
        plus, minus = _sample(curve, t + step).matrix, _sample(curve, t - step).matrix
        return (plus - 2 * here.matrix + minus) / step**2

    accel = (4 * second(h / 2) - second(h)) / 3
    return tangent_project(here, accel)


def curve_length(curve: Curve, t0: float = 0.0, t1: float = 1.0, samples: int = 1000) -> float:
    """Polygonal length: chord speeds measured in the metric at chord midpoints."""
    ts = np.linspace(t0, t1, samples + 1)
    dt = ts[1] - ts[0]
    pts = [_sample(curve, t).matrix for t in ts]
    total = 0.0
    for k in range(samples):
        mid = _sample(curve, 0.5 * (ts[k] + ts[k + 1]))
        chord = tangent_project(mid, (pts[k + 1] - pts[k]) / dt)
        total += np.sqrt(max(metric(mid, chord, chord), 0.0)) * dt
    return float(total)


__all__ = [
    "GeodesicSpec",
    "ConnectData",
    "geodesic_spec",
    "geodesic_point",
    "exp_map",
    "connect",
    "log_map",
    "separation_angles",
    "distance",
    "midpoint",
    "peirce_symmetry",
    "transport_automorphism",
    "apply_automorphism",
    "velocity",
    "covariant_acceleration",
    "curve_length",
]
