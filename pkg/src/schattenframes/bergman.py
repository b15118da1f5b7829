"""Truncated Bergman space of the unit disk: reproducing kernels, hyperbolic
sampling lattices, Mobius-invariant quadrature, a subharmonicity stencil, and
the kernel-integral criterion for Schatten membership.

The space of analytic functions square-integrable against normalized area
measure dA has reproducing kernel K(z, w) = 1/(1 - z conj(w))^2 and
orthonormal basis e_n(z) = sqrt(n+1) z^n; everything here works with the
degree-d truncation spanned by e_0..e_{d-1}.  The Mobius-invariant measure is
dlambda = dA / (1-|w|^2)^2.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .frames import Frame, make_frame
from .linalg import as_matrix

__all__ = [
    "TruncatedBergman",
    "DiskQuadrature",
    "SamplingLattice",
    "SamplingFrameReport",
    "HSIdentityReport",
    "SamplingChainReport",
    "SubharmonicityReport",
    "bergman_kernel",
    "kernel_coefficients",
    "kernel_truncation_defect",
    "bergman_metric",
    "min_pairwise_separation",
    "r_lattice",
    "sampling_frame",
    "disk_quadrature",
    "monomial_gram",
    "integral_criterion",
    "sampling_comparison",
    "hs_identity_check",
    "subharmonicity_check",
]


def _check_in_disk(*points) -> None:
    for z in points:
        if abs(z) >= 1.0:
            raise ValueError(f"point {z} is not in the open unit disk")


@dataclass(frozen=True)
class TruncatedBergman:
    """Degree-d truncation spanned by the monomial ONB sqrt(n+1) z^n."""

    degree: int

    @property
    def onb_scaling(self) -> np.ndarray:
        return np.sqrt(np.arange(1, self.degree + 1, dtype=float))

    def evaluate(self, coeffs, z: complex) -> complex:
        """Value at z of the function with the given ONB coefficients."""
        coeffs = np.asarray(coeffs, dtype=np.complex128).reshape(-1)
        if coeffs.size != self.degree:
            raise ValueError(f"expected {self.degree} coefficients, got {coeffs.size}")
        powers = z ** np.arange(self.degree)
        return complex(np.sum(coeffs * self.onb_scaling * powers))


def bergman_kernel(z: complex, w: complex) -> complex:
    """Reproducing kernel K(z, w) = 1/(1 - z conj(w))^2."""
    _check_in_disk(z, w)
    return 1.0 / (1.0 - z * np.conj(w)) ** 2


def _coefficient_matrix(points: np.ndarray, degree: int, normalized: bool) -> np.ndarray:
    """Rows are ONB coefficients of K_w (or k_w) at each point."""
    n = np.arange(degree)
    base = np.sqrt(n + 1.0) * np.conj(points)[:, None] ** n
    if normalized:
        base = base * (1.0 - np.abs(points) ** 2)[:, None]
    return base


def kernel_coefficients(w: complex, d: int, normalized: bool = True) -> np.ndarray:
    """ONB coefficients of the (normalized) reproducing kernel at w.

    For the normalized kernel k_w = K_w / sqrt(K(w, w)) the n-th entry is
    (1-|w|^2) sqrt(n+1) conj(w)^n; without normalization the (1-|w|^2)
    factor is dropped.  See `kernel_truncation_defect` for the discarded
    tail mass.
    """
    _check_in_disk(w)
    if d < 1:
        raise ValueError(f"d must be >= 1, got {d}")
    return _coefficient_matrix(np.array([w]), d, normalized)[0]


def kernel_truncation_defect(w: complex, d: int) -> float:
    """Tail mass ||k_w||^2 - (truncated coefficient mass), in closed form.

    Equals (1-|w|^2)^2 sum_{n>=d} (n+1)|w|^(2n); the geometric tail sum is
    x^d (d(1-x) + 1) / (1-x)^2 with x = |w|^2.
    """
    _check_in_disk(w)
    x = abs(w) ** 2
    if x == 0.0:
        return 0.0
    tail = x**d * (d * (1.0 - x) + 1.0) / (1.0 - x) ** 2
    return float((1.0 - x) ** 2 * tail)


def bergman_metric(z: complex, w: complex) -> float:
    """Hyperbolic distance (1/2) log((1+rho)/(1-rho)) = atanh(rho).

    rho is the pseudo-hyperbolic distance |(z - w)/(1 - conj(z) w)|; the
    metric is Mobius invariant, symmetric, and zero only at z = w.
    """
    _check_in_disk(z, w)
    rho = abs((z - w) / (1.0 - np.conj(z) * w))
    return float(np.arctanh(rho))


def min_pairwise_separation(points: np.ndarray) -> float:
    """Brute-force minimum Bergman distance over all point pairs."""
    pts = np.asarray(points, dtype=np.complex128).reshape(-1)
    if pts.size < 2:
        return float("inf")
    z = pts[:, None]
    w = pts[None, :]
    rho = np.abs((z - w) / (1.0 - np.conj(z) * w))
    beta = np.arctanh(np.clip(rho, 0.0, 1.0 - 1e-16))
    iu = np.triu_indices(pts.size, k=1)
    return float(np.min(beta[iu]))


@dataclass(frozen=True)
class SamplingLattice:
    """Points in the disk, pairwise separated in the Bergman metric."""

    points: np.ndarray
    separation: float


def _ring_count(radius: float, separation: float) -> int:
    """Largest angular count keeping same-ring neighbors >= separation apart."""
    rho_target = np.tanh(separation)
    r2 = radius * radius
    # cos(angle) at which the pseudo-hyperbolic gap equals the target
    u = (2.0 * r2 - rho_target**2 * (1.0 + r2 * r2)) / (2.0 * r2 * (1.0 - rho_target**2))
    if u >= 1.0:
        return 1
    if u < -1.0:
        # even antipodal points fall short of the target
        return 1
    theta = float(np.arccos(u))
    return max(1, int(np.floor(2.0 * np.pi / theta)))


def r_lattice(separation: float, rmax: float) -> SamplingLattice:
    """Concentric-ring lattice with pairwise Bergman separation >= separation.

    Ring radii sit at hyperbolic distance `separation` from each other
    starting at the origin (so inter-ring separation holds at any angle);
    the angular spacing on each ring is chosen from the same-ring distance
    formula.  A tiny padding absorbs rounding so the brute-force pairwise
    check holds strictly; it runs at construction.
    """
    if separation <= 0:
        raise ValueError(f"separation must be positive, got {separation}")
    if not 0 < rmax < 1:
        raise ValueError(f"rmax must lie in (0, 1), got {rmax}")
    padded = separation * (1.0 + 1e-9) + 1e-12
    points = [0.0 + 0.0j]
    ring = 1
    while np.tanh(ring * padded) <= rmax:
        radius = float(np.tanh(ring * padded))
        m = _ring_count(radius, padded)
        offsets = 2.0 * np.pi * np.arange(m) / m + (np.pi / m) * (ring % 2)
        points.extend(radius * np.exp(1j * offsets))
        ring += 1
    pts = np.asarray(points, dtype=np.complex128)
    measured = min_pairwise_separation(pts)
    if measured < separation:
        raise AssertionError(
            f"lattice construction violated separation: {measured} < {separation}"
        )
    pts.flags.writeable = False
    return SamplingLattice(points=pts, separation=separation)


@dataclass(frozen=True)
class SamplingFrameReport:
    degree: int
    count: int
    separation: float
    lower_bound: float
    upper_bound: float
    condition: float


def sampling_frame(lattice: SamplingLattice, d: int) -> tuple[Frame, SamplingFrameReport]:
    """Frame of normalized kernels at the lattice points, with bounds report.

    Fails with diagnostics when the lattice is too sparse to span degree d.
    """
    if d < 1:
        raise ValueError(f"d must be >= 1, got {d}")
    if lattice.points.size == 0:
        raise ValueError("lattice is empty")
    coeffs = _coefficient_matrix(lattice.points, d, normalized=True)
    try:
        frame = make_frame(coeffs.T)
    except ValueError as exc:
        raise ValueError(
            f"lattice too sparse for degree {d} "
            f"({lattice.points.size} points, separation {lattice.separation}): {exc}"
        ) from exc
    report = SamplingFrameReport(
        degree=d,
        count=frame.count,
        separation=lattice.separation,
        lower_bound=frame.lower_bound,
        upper_bound=frame.upper_bound,
        condition=frame.condition,
    )
    return frame, report


@dataclass(frozen=True)
class DiskQuadrature:
    """Nodes and dA-weights on |w| <= rmax (dA normalized to unit disk area).

    The dlambda weights divide by (1-|w|^2)^2.  Total dA mass is rmax^2.
    """

    nodes: np.ndarray
    weights_da: np.ndarray
    rmax: float

    @property
    def weights_dlambda(self) -> np.ndarray:
        return self.weights_da / (1.0 - np.abs(self.nodes) ** 2) ** 2


def disk_quadrature(n_radial: int, n_angular: int, rmax: float) -> DiskQuadrature:
    """Tensor rule: Gauss-Legendre in r^2 on [0, rmax^2] x uniform angles.

    Exact for integrands whose angular average is a polynomial of degree
    <= 2 n_radial - 1 in r^2, provided the angular frequencies present are
    smaller than n_angular in absolute value (the uniform rule integrates
    e^(ij theta) to zero exactly for 0 < |j| < n_angular).
    """
    if n_radial < 1 or n_angular < 1:
        raise ValueError("node counts must be >= 1")
    if not 0 < rmax < 1:
        raise ValueError(f"rmax must lie in (0, 1), got {rmax}")
    x, v = np.polynomial.legendre.leggauss(n_radial)
    t = 0.5 * rmax**2 * (x + 1.0)
    vt = 0.5 * rmax**2 * v
    theta = 2.0 * np.pi * np.arange(n_angular) / n_angular
    nodes = (np.sqrt(t)[:, None] * np.exp(1j * theta)[None, :]).ravel()
    weights = np.repeat(vt / n_angular, n_angular)
    mass = float(np.sum(weights))
    if abs(mass - rmax**2) > 1e-10:
        raise AssertionError(f"quadrature mass {mass} != rmax^2 {rmax**2}")
    nodes.flags.writeable = False
    weights.flags.writeable = False
    return DiskQuadrature(nodes=nodes, weights_da=weights, rmax=rmax)


def monomial_gram(quad: DiskQuadrature, degree: int) -> np.ndarray:
    """Quadrature Gram matrix of the monomial ONB on |w| <= rmax.

    The exact value is diag(rmax^(2n+2)): orthogonality is killed by the
    angular rule and the diagonal carries the truncated radial mass.
    """
    basis = np.sqrt(np.arange(1, degree + 1)) * quad.nodes[:, None] ** np.arange(degree)
    return (basis.conj() * quad.weights_da[:, None]).T @ basis


def _transformed_norms(t: np.ndarray, quad: DiskQuadrature, normalized: bool) -> np.ndarray:
    coeffs = _coefficient_matrix(quad.nodes, t.shape[1], normalized)
    return np.linalg.norm(coeffs @ t.T, axis=1)


def integral_criterion(t, p: float, quad: DiskQuadrature) -> float:
    """Quadrature value of the dlambda integral of ||T k_w||^p.

    Finiteness of this integral over the whole disk forces Schatten-p
    membership for 0 < p <= 2 and follows from it for p >= 2; at fixed
    rmax < 1 the value is a truncated surrogate (see `sampling_comparison`
    for the lattice-sum side of the chain).
    """
    t = as_matrix(t)
    if p <= 0:
        raise ValueError(f"p must be positive, got {p}")
    if t.shape[0] != t.shape[1]:
        raise ValueError("operator must be square")
    norms = _transformed_norms(t, quad, normalized=True)
    return float(np.sum(quad.weights_dlambda * norms**p))


@dataclass(frozen=True)
class SamplingChainReport:
    """Measured constant in (lattice sum) <= C * (dlambda integral)."""

    separation: float
    rmax: float
    points_used: int
    lattice_sum: float
    integral: float
    constant: float


def sampling_comparison(
    t, p: float, quad: DiskQuadrature, lattice: SamplingLattice
) -> SamplingChainReport:
    """Compare the lattice sum of ||T k_w||^p against the dlambda integral.

    Separated lattices control the sum by a constant multiple of the
    integral (the metric balls around lattice points are disjoint); the
    constant is not explicit, so it is measured and reported.  Only lattice
    points inside the quadrature radius enter the sum.
    """
    t = as_matrix(t)
    if p <= 0:
        raise ValueError(f"p must be positive, got {p}")
    inside = lattice.points[np.abs(lattice.points) <= quad.rmax]
    coeffs = _coefficient_matrix(inside, t.shape[1], normalized=True)
    lattice_sum = float(np.sum(np.linalg.norm(coeffs @ t.T, axis=1) ** p))
    integral = integral_criterion(t, p, quad)
    constant = lattice_sum / integral if integral > 0 else float("inf")
    return SamplingChainReport(
        separation=lattice.separation,
        rmax=quad.rmax,
        points_used=int(inside.size),
        lattice_sum=lattice_sum,
        integral=integral,
        constant=constant,
    )


@dataclass(frozen=True)
class HSIdentityReport:
    """The two Hilbert-Schmidt integrals against the squared HS norm.

    ``integral_dlambda`` uses the normalized kernel against dlambda,
    ``integral_da`` the unnormalized kernel against dA; the integrands agree
    pointwise by algebra.  ``mode_closed_form`` is
    sum_n ||T e_n||^2 rmax^(2n+2) and ``truncation_bound`` the mass the
    rmax cutoff discards from ||T||_2^2.
    """

    integral_dlambda: float
    integral_da: float
    pointwise_dev: float
    hs_norm_sq: float
    mode_closed_form: float
    truncation_bound: float
    passed: bool


def hs_identity_check(t, quad: DiskQuadrature, tol: float = 1e-10) -> HSIdentityReport:
    """Check the Hilbert-Schmidt kernel-integral identity under quadrature."""
    t = as_matrix(t)
    if t.shape[0] != t.shape[1]:
        raise ValueError("operator must be square")
    d = t.shape[1]
    norm_k = _transformed_norms(t, quad, normalized=True)
    norm_big = _transformed_norms(t, quad, normalized=False)
    integrand_dlambda = norm_k**2 / (1.0 - np.abs(quad.nodes) ** 2) ** 2
    integrand_da = norm_big**2
    scale = np.maximum(integrand_da, 1e-300)
    pointwise_dev = float(np.max(np.abs(integrand_dlambda - integrand_da) / scale))
    integral_dlambda = float(np.sum(quad.weights_da * integrand_dlambda))
    integral_da = float(np.sum(quad.weights_da * integrand_da))
    col_norms_sq = np.linalg.norm(t, axis=0) ** 2
    hs_sq = float(np.sum(col_norms_sq))
    masses = quad.rmax ** (2.0 * np.arange(1, d + 1))
    closed = float(np.sum(col_norms_sq * masses))
    truncation = float(np.sum(col_norms_sq * (1.0 - masses)))
    budget = tol * max(1.0, hs_sq)
    passed = (
        pointwise_dev <= 1e-12
        and abs(integral_dlambda - integral_da) <= budget
        and abs(integral_da - closed) <= budget
        and abs(integral_da - hs_sq) <= truncation + budget
    )
    return HSIdentityReport(
        integral_dlambda=integral_dlambda,
        integral_da=integral_da,
        pointwise_dev=pointwise_dev,
        hs_norm_sq=hs_sq,
        mode_closed_form=closed,
        truncation_bound=truncation,
        passed=passed,
    )


@dataclass(frozen=True)
class SubharmonicityReport:
    """Minimum five-point discrete Laplacian of ||T K_w||^p on a grid."""

    min_laplacian: float
    location: complex
    tolerance: float
    max_value: float
    grid_step: float
    rmax: float
    passed: bool


def subharmonicity_check(
    t,
    p: float,
    grid_step: float = 0.01,
    rmax: float = 0.9,
    machine_factor: float = 1.0,
) -> SubharmonicityReport:
    """Verify that w -> ||T K_w||^p has a nonnegative discrete Laplacian.

    The function is subharmonic for every p > 0 (it is the p-th power of the
    norm of an antianalytic vector-valued polynomial), so the five-point
    stencil minimum should only dip below zero by the discretization budget
    tol = 1e-6 (1 + max F)(1 + 1/grid_step^2) machine_factor.
    """
    t = as_matrix(t)
    if p <= 0:
        raise ValueError(f"p must be positive, got {p}")
    if t.shape[0] != t.shape[1]:
        raise ValueError("operator must be square")
    if not 0 < rmax < 1:
        raise ValueError(f"rmax must lie in (0, 1), got {rmax}")
    if grid_step <= 0 or grid_step > rmax:
        raise ValueError("grid_step must be positive and small relative to rmax")
    axis = np.arange(-rmax, rmax + grid_step / 2.0, grid_step)
    re, im = np.meshgrid(axis, axis, indexing="ij")
    w = re + 1j * im
    inside = np.abs(w) <= rmax
    values = np.full(w.shape, np.nan)
    pts = w[inside]
    coeffs = _coefficient_matrix(pts, t.shape[1], normalized=False)
    values[inside] = np.linalg.norm(coeffs @ t.T, axis=1) ** p
    lap = (
        values[2:, 1:-1]
        + values[:-2, 1:-1]
        + values[1:-1, 2:]
        + values[1:-1, :-2]
        - 4.0 * values[1:-1, 1:-1]
    ) / grid_step**2
    valid = np.isfinite(lap)
    if not np.any(valid):
        raise ValueError("no grid point has a full five-point stencil inside the disk")
    max_f = float(np.nanmax(values))
    tol = 1e-6 * (1.0 + max_f) * (1.0 + 1.0 / grid_step**2) * machine_factor
    flat = np.where(valid, lap, np.inf)
    idx = np.unravel_index(int(np.argmin(flat)), flat.shape)
    min_lap = float(flat[idx])
    location = complex(w[1:-1, 1:-1][idx])
    return SubharmonicityReport(
        min_laplacian=min_lap,
        location=location,
        tolerance=tol,
        max_value=max_f,
        grid_step=grid_step,
        rmax=rmax,
        passed=min_lap >= -tol,
    )
