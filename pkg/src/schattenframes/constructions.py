"""Explicit operators and frames that separate the p >= 2 and p <= 2 regimes.

Infinite-dimensional divergence statements are replaced by growth-in-
truncation diagnostics: a positive series is classified from its partial
sums at a fixed grid of truncations (``GrowthSeries``).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .frames import Frame, make_frame, synthesis
from .linalg import as_matrix, psd_sqrt, svd

__all__ = [
    "GrowthSeries",
    "ScaledCopiesFrame",
    "DoubleSumDemo",
    "ConjugationFamily",
    "DEFAULT_GRID",
    "growth_series",
    "log_weight_vector",
    "log_weight_norm_series",
    "rank_one",
    "divergence_demo_sum_norms",
    "scaled_copies_frame",
    "compose_with_synthesis",
    "nonvanishing_direction",
    "diag_divergence_frame",
    "truncated_shift",
    "divergence_demo_double_sum",
    "conjugations",
]

#: Default truncation grid for growth diagnostics.
DEFAULT_GRID = (100, 1_000, 10_000, 100_000)

#: Verdict thresholds: a series is bounded-like when the last decade adds
#: less than STALL_FRACTION of the running sum, or when increments collapse
#: geometrically (successive ratios all <= GEOMETRIC_RATIO).
STALL_FRACTION = 0.01
GEOMETRIC_RATIO = 0.5


@dataclass(frozen=True)
class GrowthSeries:
    """Partial sums of a nonnegative series at increasing truncations."""

    truncations: tuple[int, ...]
    partial_sums: np.ndarray
    verdict: str

    @property
    def increment_ratios(self) -> np.ndarray:
        """Ratios of successive partial-sum increments (length len-2)."""
        inc = np.diff(self.partial_sums)
        with np.errstate(divide="ignore", invalid="ignore"):
            return np.where(inc[:-1] > 0, inc[1:] / inc[:-1], 0.0)


def _verdict(partial_sums: np.ndarray) -> str:
    s = np.asarray(partial_sums, dtype=float)
    if s.size < 2:
        raise ValueError("need at least two truncations for a growth verdict")
    if np.any(np.diff(s) < -1e-12 * max(1.0, float(s[-1]))):
        raise ValueError("partial sums of a nonnegative series must be nondecreasing")
    stalled = (s[-1] - s[-2]) <= STALL_FRACTION * s[-2]
    inc = np.diff(s)
    ratios = inc[1:] / np.where(inc[:-1] > 0, inc[:-1], np.inf)
    collapsing = ratios.size > 0 and bool(np.all(ratios <= GEOMETRIC_RATIO))
    return "bounded_trend" if stalled or collapsing else "divergent_trend"


def growth_series(terms: np.ndarray, truncations=DEFAULT_GRID) -> GrowthSeries:
    """Classify a nonnegative term sequence from its partial sums.

    `terms` must cover the largest truncation.
    """
    terms = np.asarray(terms, dtype=float)
    truncs = tuple(int(n) for n in truncations)
    if any(n < 1 for n in truncs) or list(truncs) != sorted(set(truncs)):
        raise ValueError("truncations must be strictly increasing positive integers")
    if terms.size < truncs[-1]:
        raise ValueError(f"need {truncs[-1]} terms, got {terms.size}")
    if np.any(terms < 0):
        raise ValueError("terms must be nonnegative")
    cumulative = np.cumsum(terms)
    partial = cumulative[np.asarray(truncs) - 1]
    return GrowthSeries(
        truncations=truncs, partial_sums=partial, verdict=_verdict(partial)
    )


def log_weight_vector(d: int) -> np.ndarray:
    """Entries 1/(sqrt(n) log(n+1)), n = 1..d (natural log).

    The squared entries are summable, so the vectors have a finite norm
    limit, while the entries themselves fail to be p-summable for p < 2.
    """
    if d < 1:
        raise ValueError(f"d must be >= 1, got {d}")
    n = np.arange(1, d + 1, dtype=float)
    return 1.0 / (np.sqrt(n) * np.log(n + 1.0))


def log_weight_norm_series(d_grid=DEFAULT_GRID) -> GrowthSeries:
    """Partial sums of 1/(n log^2(n+1)): the convergent control series."""
    d_max = int(max(d_grid))
    return growth_series(log_weight_vector(d_max) ** 2, d_grid)


def rank_one(h) -> np.ndarray:
    """The rank-one operator x -> <x, h> h, as the matrix h h*."""
    h = np.asarray(h, dtype=np.complex128).reshape(-1)
    if not np.any(h):
        raise ValueError("rank_one needs a nonzero vector")
    return np.outer(h, h.conj())


def divergence_demo_sum_norms(p: float, d_grid=DEFAULT_GRID) -> GrowthSeries:
    """Norm sums of the log-weight rank-one operator over the standard basis.

    With h_d the truncated log-weight vector and T = h_d h_d*, the sum over
    the basis is ||h_d||^p * sum_{n<=d} (sqrt(n) log(n+1))^(-p), which grows
    without bound for every 0 < p < 2.  p >= 2 is rejected: there the series
    comparison degenerates (use `log_weight_norm_series` as the convergent
    p = 2 control).
    """
    if not 0 < p < 2:
        raise ValueError(f"this divergence demo needs 0 < p < 2, got p = {p}")
    d_max = int(max(d_grid))
    a = log_weight_vector(d_max)
    norm_factor = np.cumsum(a**2) ** (p / 2.0)
    partial = np.cumsum(a**p) * norm_factor
    truncs = tuple(int(n) for n in d_grid)
    sums = partial[np.asarray(truncs) - 1]
    return GrowthSeries(truncations=truncs, partial_sums=sums, verdict=_verdict(sums))


_LAMBDA_SPECS = ("power", "power_log", "constant")


def _lambda_values(lambda_spec: str, p: float, n_terms: int) -> np.ndarray:
    n = np.arange(1, n_terms + 1, dtype=float)
    if lambda_spec == "power":
        return n ** (-1.0 / p)
    if lambda_spec == "power_log":
        return (n * np.log(n + 1.0)) ** (-1.0 / p)
    if lambda_spec == "constant":
        return np.ones(n_terms)
    raise ValueError(f"unknown lambda spec {lambda_spec!r}, expected one of {_LAMBDA_SPECS}")


@dataclass(frozen=True)
class ScaledCopiesFrame:
    """Frame of repeated scaled basis vectors taming a slow singular decay.

    For a nonincreasing positive sequence `values` (target singular values),
    p > 2 and epsilon > 0, the scales delta_n satisfy
    delta_n^(p-2) = values_n^epsilon and each scaled basis vector
    delta_n e_n is repeated counts_n = round(1/delta_n^2) times.  Then
    counts_n delta_n^2 stays in [1/2, 2] (so the family is a frame with
    bounds in that interval) and

        sum_n counts_n delta_n^p values_n^p
            = sum_n (counts_n delta_n^2) values_n^(p+epsilon),

    which converges whenever `values` is (p+epsilon)-summable even though
    the p-th power series diverges.
    """

    values: np.ndarray
    p: float
    epsilon: float
    scales: np.ndarray
    counts: np.ndarray
    frame: Frame

    def power_sum_identity(self) -> tuple[float, float]:
        """Both sides of the exact rebalancing identity, independently."""
        lhs = float(np.sum(self.counts * self.scales**self.p * self.values**self.p))
        rhs = float(
            np.sum((self.counts * self.scales**2) * self.values ** (self.p + self.epsilon))
        )
        return lhs, rhs


def scaled_copies_frame(
    p: float, epsilon: float, n_terms: int, lambda_spec: str = "power"
) -> ScaledCopiesFrame:
    """Build the scaled-copies frame for the named singular-value spec."""
    if p <= 2:
        raise ValueError(f"scaled copies need p > 2 (the scale exponent degenerates), got {p}")
    if epsilon <= 0:
        raise ValueError(f"epsilon must be positive, got {epsilon}")
    if n_terms < 1:
        raise ValueError(f"n_terms must be >= 1, got {n_terms}")
    values = _lambda_values(lambda_spec, p, n_terms)
    scales = values ** (epsilon / (p - 2.0))
    counts = np.maximum(np.round(1.0 / scales**2), 1.0)
    products = counts * scales**2
    if np.any(products < 0.5) or np.any(products > 2.0):
        raise ValueError("count-scale products escaped [1/2, 2]; bad lambda spec?")
    index = np.repeat(np.arange(n_terms), counts.astype(int))
    matrix = np.zeros((n_terms, index.size), dtype=np.complex128)
    matrix[index, np.arange(index.size)] = scales[index]
    frame = make_frame(matrix)
    return ScaledCopiesFrame(
        values=values,
        p=p,
        epsilon=epsilon,
        scales=scales,
        counts=counts,
        frame=frame,
    )


def compose_with_synthesis(t, frame: Frame) -> np.ndarray:
    """The composition T A of an operator with the frame's synthesis matrix.

    Column n of the result is T f_n, so norm sums of the composition over the
    coefficient-space standard basis equal norm sums of T over the frame.
    """
    t = as_matrix(t)
    a = synthesis(frame).matrix
    if t.shape[1] != a.shape[0]:
        raise ValueError(f"operator acts on C^{t.shape[1]}, frame lives in C^{a.shape[0]}")
    return t @ a


def nonvanishing_direction(t) -> np.ndarray:
    """A unit vector h with <T h, h> != 0 for a nonzero operator.

    Tries the top left-singular vector first (a vanishing pairing there is
    nongeneric), then deterministically scans standard basis vectors and
    their two-element mixtures (e_i +- e_j)/sqrt(2), (e_i +- i e_j)/sqrt(2),
    returning the candidate with the largest pairing.  These quadratic-form
    samples determine every matrix entry, so they cannot all vanish unless
    T = 0.
    """
    t = as_matrix(t)
    if t.shape[0] != t.shape[1]:
        raise ValueError("need a square operator")
    d = t.shape[0]
    scale = float(np.abs(t).max())
    if scale == 0.0:
        raise ValueError("the zero operator has no nonvanishing direction")
    top = svd(t).left_vectors[:, 0]
    if abs(np.vdot(top, t @ top)) > 1e-8 * scale:
        return top
    best, best_val = None, 0.0
    eye = np.eye(d, dtype=np.complex128)
    candidates = [eye[:, i] for i in range(d)]
    for i in range(d):
        for j in range(i + 1, d):
            for coef in (1.0, -1.0, 1j, -1j):
                candidates.append((eye[:, i] + coef * eye[:, j]) / np.sqrt(2.0))
    for h in candidates:
        val = abs(np.vdot(h, t @ h))
        if val > best_val:
            best, best_val = h, val
    if best is None or best_val <= 1e-14 * scale:
        raise ValueError("could not find a direction with a nonvanishing pairing")
    return best


def diag_divergence_frame(t, copies: int) -> Frame:
    """Standard basis plus log-weighted copies of a nonvanishing direction.

    The appended vectors are h / (sqrt(n) log(n+1)), n = 1..copies, whose
    diagonal pairings <T e'_n, e'_n> = <T h, h> / (n log^2(n+1)) fail to be
    p-summable for p < 1 as copies grows.  Bounds are (1, 1 + g) with g the
    partial sum of 1/(n log^2(n+1)) (for dim >= 2).
    """
    t = as_matrix(t)
    if copies < 1:
        raise ValueError(f"copies must be >= 1, got {copies}")
    h = nonvanishing_direction(t)
    d = t.shape[0]
    weights = log_weight_vector(copies)
    extra = h[:, None] * weights[None, :]
    return make_frame(np.hstack([np.eye(d, dtype=np.complex128), extra]))


def truncated_shift(d: int) -> np.ndarray:
    """Truncated unilateral shift: e_n -> e_{n+1}, e_d -> 0.

    Every diagonal pairing <T e_n, e_n> vanishes while d-1 singular values
    equal 1, so diagonal sums carry no norm information without a
    positivity assumption.
    """
    if d < 2:
        raise ValueError(f"d must be >= 2, got {d}")
    m = np.zeros((d, d), dtype=np.complex128)
    m[np.arange(1, d), np.arange(d - 1)] = 1.0
    return m


@dataclass(frozen=True)
class DoubleSumDemo:
    """Operator with geometric singular values but heavy-tailed entries."""

    matrix: np.ndarray
    reflector: np.ndarray
    double_series: GrowthSeries
    norm_series: GrowthSeries


def _reflector_first_column(d: int) -> tuple[np.ndarray, np.ndarray, float]:
    """Normalized log-weight vector h1, reflector direction v, and beta."""
    h1 = log_weight_vector(d)
    h1 = h1 / np.linalg.norm(h1)
    v = -h1.copy()
    v[0] += 1.0
    beta = 2.0 / float(np.dot(v, v))
    return h1, v, beta


def _double_sum_closed_form(d: int, p: float) -> float:
    """Entrywise p-sum of the demo operator at dimension d, in O(d).

    The reflector U = I - beta v v^T maps e_1 to h1; column sums of |U|^p
    reduce to the scalar profile of v, so the full double sum
    sum_k 2^(-kp) sum_n |U[n,k]|^p needs no d x d matrix.
    """
    h1, v, beta = _reflector_first_column(d)
    geometric = 2.0 ** (-p * np.arange(1, d + 1, dtype=float))
    column_sums = np.empty(d)
    column_sums[0] = float(np.sum(np.abs(h1) ** p))
    if d > 1:
        vk = v[1:]
        v_psum = float(np.sum(np.abs(v) ** p))
        column_sums[1:] = np.abs(beta * vk) ** p * (v_psum - np.abs(vk) ** p) + np.abs(
            1.0 - beta * vk**2
        ) ** p
    return float(np.sum(geometric * column_sums))


def divergence_demo_double_sum(d: int, p: float, d_grid=DEFAULT_GRID) -> DoubleSumDemo:
    """Operator T e_n-expansion demo: bounded norms, divergent double sums.

    T maps the reflected basis {h_n} (h_1 the normalized log-weight vector)
    to the standard basis with geometric weights 2^(-n): its singular values
    are exactly 2^(-n), so partial sums of ||T||_p^p stay bounded, while the
    entrywise double sums over the standard basis inherit the log-weight
    tail of h_1 and diverge for 0 < p < 2.

    Returns the explicit matrix at dimension `d` together with the two growth
    series over `d_grid` (each grid point rebuilds the construction at that
    dimension; the closed-form column sums avoid materializing the matrix).
    """
    if not 0 < p < 2:
        raise ValueError(f"this divergence demo needs 0 < p < 2, got p = {p}")
    if d < 2:
        raise ValueError(f"d must be >= 2, got {d}")
    if d > 4096:
        raise ValueError("explicit matrix capped at d = 4096; use the growth series")
    h1, v, beta = _reflector_first_column(d)
    reflector = np.eye(d) - beta * np.outer(v, v)
    weights = 2.0 ** (-np.arange(1, d + 1, dtype=float))
    matrix = (weights[:, None] * reflector).astype(np.complex128)
    truncs = tuple(int(n) for n in d_grid)
    double_sums = np.array([_double_sum_closed_form(g, p) for g in truncs])
    double_series = GrowthSeries(
        truncations=truncs, partial_sums=double_sums, verdict=_verdict(double_sums)
    )
    norm_terms = 2.0 ** (-p * np.arange(1, truncs[-1] + 1, dtype=float))
    norm_series = growth_series(norm_terms, truncs)
    return DoubleSumDemo(
        matrix=matrix,
        reflector=reflector,
        double_series=double_series,
        norm_series=norm_series,
    )


@dataclass(frozen=True)
class ConjugationFamily:
    """Frame conjugates and powers with exact transfer identities.

    ``analysis`` is A* T A on coefficient space (its diagonal reproduces the
    frame pairings <T f_n, f_n> entry by entry); ``sandwich`` is
    A (A* T A) A* = S T S with S the frame operator; ``square`` is T* T
    (whose pairings are ||T f_n||^2); ``root`` is the PSD square root of T
    when requested.
    """

    analysis: np.ndarray
    sandwich: np.ndarray
    square: np.ndarray
    root: np.ndarray | None


def conjugations(t, frame: Frame, include_root: bool = False) -> ConjugationFamily:
    """Conjugate T by the synthesis operator and form its square/root."""
    t = as_matrix(t)
    if t.shape[0] != t.shape[1] or t.shape[0] != frame.dim:
        raise ValueError(
            f"operator shape {t.shape} incompatible with frame dimension {frame.dim}"
        )
    a = frame.vectors
    analysis = a.conj().T @ t @ a
    sandwich = a @ analysis @ a.conj().T
    square = t.conj().T @ t
    root = psd_sqrt(t, tol=1e-10) if include_root else None
    return ConjugationFamily(analysis=analysis, sandwich=sandwich, square=square, root=root)
