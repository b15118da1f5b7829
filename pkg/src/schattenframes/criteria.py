"""Frame-sum functionals and sup/inf certificates for the Schatten norm.

The six sums characterize membership of an operator T in the Schatten class
S_p through a frame {f_n}:

* ``sum_norms``        sum_n ||T f_n||^p
* ``sum_diag``         sum_n |<T f_n, f_n>|^p
* ``sum_double``       sum_n sum_k |<T f_n, f_k>|^p
* ``weighted_norms``   sum_n ||f_n||^(2-p) ||T f_n||^p
* ``weighted_diag``    sum_n ||f_n||^(2(1-p)) <T f_n, f_n>^p   (T PSD)
* ``weighted_double``  sum_n ||f_n||^(2-p) sum_k |<T f_n, f_k>|^p

For p >= 2 the norm sums over frames with upper bound <= 1 stay below
||T||_p^p and the supremum attains it; for p <= 2 the sums over Parseval
frames stay above and the infimum attains it.  The extremum is attained at
the singular-vector (or eigenvector) basis, which the certificates evaluate
as an exact witness alongside a seeded sampling ensemble.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .frames import (
    Frame,
    canonical_parseval,
    make_frame,
    random_frame,
    random_onb,
    rescale_lower_bound_one,
    rescale_upper_bound_one,
)
from .linalg import as_matrix, hermitian_defect, hermitian_eigen, schatten_norm, svd

__all__ = [
    "SumReport",
    "CertificateReport",
    "DoubleSumComparison",
    "EndpointReport",
    "sum_norms",
    "sum_diag",
    "sum_double",
    "weighted_sum",
    "double_sum_comparison",
    "certify_norm_formula",
    "certify_diag_formula",
    "certify_double_formula",
    "endpoint_suites",
]

WEIGHTED_KINDS = ("weighted_norms", "weighted_diag", "weighted_double")
SUM_KINDS = ("norms", "diag", "double") + WEIGHTED_KINDS

#: p-range per weighted kind; rejections quote these.
_WEIGHTED_RANGE = {
    "weighted_norms": (0.0, 2.0),
    "weighted_diag": (0.0, 1.0),
    "weighted_double": (0.0, 2.0),
}


@dataclass(frozen=True)
class SumReport:
    """Value of one frame-sum functional with its parameters."""

    kind: str
    p: float
    value: float
    frame_id: str | None = None
    operator_id: str | None = None


@dataclass(frozen=True)
class CertificateReport:
    """Sampled extremal value of a frame-sum against the exact norm.

    ``direction`` is ``sup_below`` (every sampled sum must stay below
    ``norm_value`` + tolerance) or ``inf_above`` (stay above - tolerance).
    ``witness_value`` is the sum at the analytically extremal basis, which
    must equal ``norm_value`` for ``equality_witness`` to hold.
    """

    tag: str
    p: float
    trials: int
    direction: str
    extremal_value: float
    norm_value: float
    witness_value: float | None
    equality_witness: bool
    tolerance: float
    passed: bool


def _check_dims(t: np.ndarray, frame: Frame) -> None:
    if t.shape[1] != frame.dim:
        raise ValueError(f"operator acts on C^{t.shape[1]}, frame lives in C^{frame.dim}")


def _check_p(p: float) -> None:
    if p <= 0:
        raise ValueError(f"p must be positive, got {p}")


def _psd_or_raise(t: np.ndarray, what: str) -> np.ndarray:
    """Eigenvalues of t, rejecting non-Hermitian or indefinite input."""
    defect = hermitian_defect(t)
    if defect > 1e-10:
        raise ValueError(f"{what} requires a Hermitian matrix (defect {defect:.3e})")
    w = np.linalg.eigvalsh(0.5 * (t + t.conj().T))
    if w[0] < -1e-10 * max(1.0, abs(w[-1])):
        raise ValueError(f"{what} requires a PSD matrix (min eigenvalue {w[0]:.3e})")
    return w


def sum_norms(t, frame: Frame, p: float) -> SumReport:
    """sum_n ||T f_n||^p."""
    t = as_matrix(t)
    _check_p(p)
    _check_dims(t, frame)
    norms = np.linalg.norm(t @ frame.vectors, axis=0)
    return SumReport(kind="norms", p=p, value=float(np.sum(norms**p)))


def _diag_values(t: np.ndarray, frame: Frame) -> np.ndarray:
    """The pairings <T f_n, f_n> down the frame."""
    return np.einsum("in,in->n", frame.vectors.conj(), t @ frame.vectors)


def sum_diag(t, frame: Frame, p: float) -> SumReport:
    """sum_n |<T f_n, f_n>|^p for a general operator."""
    t = as_matrix(t)
    _check_p(p)
    _check_dims(t, frame)
    vals = np.abs(_diag_values(t, frame))
    return SumReport(kind="diag", p=p, value=float(np.sum(vals**p)))


def sum_double(t, frame: Frame, p: float) -> SumReport:
    """sum_n sum_k |<T f_n, f_k>|^p."""
    t = as_matrix(t)
    _check_p(p)
    _check_dims(t, frame)
    cross = frame.vectors.conj().T @ (t @ frame.vectors)  # [k, n] = <T f_n, f_k>
    return SumReport(kind="double", p=p, value=float(np.sum(np.abs(cross) ** p)))


def _real_psd_diag(t: np.ndarray, frame: Frame) -> np.ndarray:
    """<T f_n, f_n> as nonnegative reals, asserting the imaginary defect."""
    vals = _diag_values(t, frame)
    if np.any(np.abs(vals.imag) > 1e-10 * (1.0 + np.abs(vals))):
        raise ValueError("diagonal pairings of a Hermitian matrix must be real")
    return np.maximum(vals.real, 0.0)


def weighted_sum(kind: str, t, frame: Frame, p: float) -> SumReport:
    """Vector-norm-weighted variants of the three sums.

    Zero frame vectors contribute 0 by convention.  ``weighted_diag``
    requires T PSD; p must lie in the kind's valid range.
    """
    if kind not in WEIGHTED_KINDS:
        raise ValueError(f"unknown weighted kind {kind!r}, expected one of {WEIGHTED_KINDS}")
    t = as_matrix(t)
    _check_p(p)
    _check_dims(t, frame)
    lo, hi = _WEIGHTED_RANGE[kind]
    if not (lo < p <= hi):
        raise ValueError(f"{kind} is defined for {lo} < p <= {hi}, got p = {p}")
    lengths = np.linalg.norm(frame.vectors, axis=0)
    nonzero = lengths > 0.0
    if kind == "weighted_diag":
        _psd_or_raise(t, "weighted_diag")
        vals = _real_psd_diag(t, frame)
        weights = np.zeros_like(lengths)
        weights[nonzero] = lengths[nonzero] ** (2.0 * (1.0 - p))
        value = float(np.sum(weights[nonzero] * vals[nonzero] ** p))
    elif kind == "weighted_norms":
        norms = np.linalg.norm(t @ frame.vectors, axis=0)
        value = float(
            np.sum(lengths[nonzero] ** (2.0 - p) * norms[nonzero] ** p)
        )
    else:  # weighted_double
        cross = np.abs(frame.vectors.conj().T @ (t @ frame.vectors)) ** p
        inner_sums = np.sum(cross, axis=0)  # over k, for each n
        value = float(np.sum(lengths[nonzero] ** (2.0 - p) * inner_sums[nonzero]))
    return SumReport(kind=kind, p=p, value=value)


@dataclass(frozen=True)
class DoubleSumComparison:
    """Double sum against the norm sum with explicit frame-bound constants.

    For p >= 2 the double sum is at most C2^(p/2) times the norm sum; for
    p <= 2 it is at least C1^(p/2) times the norm sum; at p = 2 both hold
    (with equality for Parseval frames).  The constants attach to the
    mathematically forced bound (upper frame bound above, lower below).
    """

    p: float
    double_sum: float
    norm_sum: float
    upper_constant: float | None
    lower_constant: float | None
    tolerance: float
    passed: bool


def double_sum_comparison(t, frame: Frame, p: float, tol: float = 1e-9) -> DoubleSumComparison:
    """Check the two-sided comparison between double and norm sums."""
    t = as_matrix(t)
    _check_p(p)
    _check_dims(t, frame)
    lhs = sum_double(t, frame, p).value
    rhs = sum_norms(t, frame, p).value
    c1, c2 = frame.bounds
    scale = max(1.0, lhs, rhs)
    ok = True
    upper = lower = None
    if p >= 2:
        upper = c2 ** (p / 2.0)
        ok = ok and lhs <= upper * rhs + tol * scale
    if p <= 2:
        lower = c1 ** (p / 2.0)
        ok = ok and lhs >= lower * rhs - tol * scale
    return DoubleSumComparison(
        p=p,
        double_sum=lhs,
        norm_sum=rhs,
        upper_constant=upper,
        lower_constant=lower,
        tolerance=tol,
        passed=ok,
    )


def _trial_frames(dim: int, trials: int, seed: int, parseval: bool):
    """Yield seeded trial frames: ONBs plus random frames, regime-rescaled.

    Per-trial seeds are seed + trial index, so results do not depend on
    evaluation order.  For the sup regime frames are rescaled to upper bound
    1; for the inf regime (``parseval=True``) they are Parseval-projected.
    """
    for i in range(trials):
        trial_seed = seed + i
        onb = random_onb(dim, trial_seed)
        count = dim + (i % dim) + 1
        raw = random_frame(dim, count, condition_target=100.0, seed=trial_seed)
        if parseval:
            yield onb
            yield canonical_parseval(raw)
        else:
            yield onb
            yield rescale_upper_bound_one(raw)


def _witness_budget(p: float, n_terms: int, term_scale: float) -> float:
    """Rounding allowance for a sum of n p-th powers of computed pairings.

    Each pairing carries absolute rounding error ~ delta = O(eps * scale).
    For p < 1 the power map amplifies a zero-crossing error to delta^p,
    which dominates witness sums whose off-diagonal terms vanish exactly in
    the algebra.
    """
    delta = 64.0 * np.finfo(float).eps * max(term_scale, 1e-300)
    if p <= 1.0:
        per_term = delta**p
    else:
        per_term = p * (term_scale + delta) ** (p - 1.0) * delta
    return n_terms * per_term


def _certificate(
    tag: str,
    p: float,
    trials: int,
    direction: str,
    sampled: list[float],
    norm_value: float,
    witness_value: float | None,
    tol: float,
    witness_budget: float = 0.0,
) -> CertificateReport:
    scale = max(1.0, norm_value)
    if direction == "sup_below":
        extremal = max(sampled)
        direction_ok = extremal <= norm_value + tol * scale
    else:
        extremal = min(sampled)
        direction_ok = extremal >= norm_value - tol * scale
    witness_ok = (
        witness_value is not None
        and abs(witness_value - norm_value) <= tol * scale + witness_budget
    )
    return CertificateReport(
        tag=tag,
        p=p,
        trials=trials,
        direction=direction,
        extremal_value=float(extremal),
        norm_value=float(norm_value),
        witness_value=witness_value,
        equality_witness=witness_ok,
        tolerance=tol,
        passed=direction_ok and (witness_value is None or witness_ok),
    )


def certify_norm_formula(
    t, p: float, trials: int = 200, seed: int = 0, tol: float = 1e-9
) -> CertificateReport:
    """Certify the norm-sum formula for ||T||_p^p.

    Parameters
    ----------
    t : array_like
        The operator under test (square).
    p : float
        Schatten exponent; p >= 2 engages the sup regime over frames with
        upper bound <= 1, p < 2 the inf regime over Parseval frames.
    trials : int
        Number of sampled ONBs (an equal number of random frames is added).
    seed : int
        Base seed; trial seeds are seed + index.
    tol : float
        Tolerance for the direction check and the equality witness.

    The right-singular-vector basis is evaluated as the exact witness:
    there ||T e_n|| equals the n-th singular value, so the sum equals
    ||T||_p^p in finite dimension.
    """
    t = as_matrix(t)
    _check_p(p)
    if trials < 1:
        raise ValueError("trials must be >= 1")
    dim = t.shape[1]
    sup_regime = p >= 2
    sampled = [
        sum_norms(t, f, p).value
        for f in _trial_frames(dim, trials, seed, parseval=not sup_regime)
    ]
    decomposition = svd(t)
    norm_value = float(np.sum(decomposition.singular_values**p))
    witness = sum_norms(t, make_frame(decomposition.right_vectors), p).value
    top = float(decomposition.singular_values[0])
    budget = _witness_budget(p, dim, top)
    tag = "norm_sum_sup" if sup_regime else "norm_sum_inf"
    direction = "sup_below" if sup_regime else "inf_above"
    return _certificate(tag, p, trials, direction, sampled, norm_value, witness, tol, budget)


def certify_diag_formula(
    t,
    p: float,
    trials: int = 200,
    seed: int = 0,
    tol: float = 1e-9,
    direction: str | None = None,
) -> CertificateReport:
    """Certify the diagonal-sum formula for a self-adjoint operator.

    The sup regime (p >= 1, any Hermitian T) samples sum_diag over frames
    with upper bound <= 1.  The inf regime (0 < p <= 1, T PSD) samples the
    plain diagonal sum over Parseval frames and the weighted variant over
    frames with lower bound >= 1, taking the smaller.  The eigenvector basis
    witnesses equality with sum |lambda_n|^p.  Non-Hermitian input is
    rejected: without self-adjointness the equality fails.
    """
    t = as_matrix(t)
    _check_p(p)
    defect = hermitian_defect(t)
    if defect > 1e-10:
        raise ValueError(
            f"diagonal-sum certificates need a Hermitian operator (defect {defect:.3e})"
        )
    if direction is None:
        direction = "inf_above" if p <= 1 and _is_psd(t) else "sup_below"
    if direction == "sup_below" and p < 1:
        raise ValueError("the sup-regime diagonal formula needs p >= 1")
    if direction == "inf_above":
        if p > 1:
            raise ValueError("the inf-regime diagonal formula needs 0 < p <= 1")
        _psd_or_raise(t, "the inf-regime diagonal formula")
    dim = t.shape[1]
    eigvals, eigvecs = hermitian_eigen(0.5 * (t + t.conj().T))
    witness = sum_diag(t, make_frame(eigvecs), p).value
    norm_value = float(np.sum(np.abs(eigvals) ** p))
    budget = _witness_budget(p, dim, float(np.max(np.abs(eigvals))) if dim else 0.0)
    sampled = []
    if direction == "sup_below":
        for f in _trial_frames(dim, trials, seed, parseval=False):
            sampled.append(sum_diag(t, f, p).value)
        tag = "diag_sum_sup"
    else:
        for i in range(trials):
            sampled.append(sum_diag(t, random_onb(dim, seed + i), p).value)
            raw = random_frame(dim, dim + (i % dim) + 1, 100.0, seed + i)
            sampled.append(sum_diag(t, canonical_parseval(raw), p).value)
            sampled.append(
                weighted_sum("weighted_diag", t, rescale_lower_bound_one(raw), p).value
            )
        tag = "diag_sum_inf"
    return _certificate(tag, p, trials, direction, sampled, norm_value, witness, tol, budget)


def certify_double_formula(
    t,
    p: float,
    trials: int = 200,
    seed: int = 0,
    tol: float = 1e-9,
) -> CertificateReport:
    """Certify the double-sum formula.

    For p >= 2 (any T) the sampled double sums over frames with upper bound
    <= 1 must stay below ||T||_p^p; for 0 < p <= 2 (Hermitian T) the sums
    over Parseval frames must stay above.  When T is Hermitian its
    eigenvector basis gives the exact witness sum |lambda_n|^p; for
    non-Hermitian T in the sup regime the extremal value is only recorded.
    """
    t = as_matrix(t)
    _check_p(p)
    hermitian = hermitian_defect(t) <= 1e-10
    if p >= 2:
        direction, tag = "sup_below", "double_sum_sup"
    else:
        if not hermitian:
            raise ValueError("the inf-regime double-sum formula needs a Hermitian operator")
        direction, tag = "inf_above", "double_sum_inf"
    dim = t.shape[1]
    decomposition = svd(t)
    norm_value = float(np.sum(decomposition.singular_values**p))
    budget = _witness_budget(p, dim * dim, float(decomposition.singular_values[0]))
    witness = None
    if hermitian:
        _, eigvecs = hermitian_eigen(0.5 * (t + t.conj().T))
        witness = sum_double(t, make_frame(eigvecs), p).value
    sampled = [
        sum_double(t, f, p).value
        for f in _trial_frames(dim, trials, seed, parseval=direction == "inf_above")
    ]
    return _certificate(tag, p, trials, direction, sampled, norm_value, witness, tol, budget)


def _is_psd(t: np.ndarray) -> bool:
    if hermitian_defect(t) > 1e-10:
        return False
    w = np.linalg.eigvalsh(0.5 * (t + t.conj().T))
    return bool(w[0] >= -1e-10 * max(1.0, abs(w[-1])))


@dataclass(frozen=True)
class EndpointReport:
    """Trace-class and Hilbert-Schmidt endpoint checks over sampled frames.

    The p = 1 suite (PSD T only) checks the enclosure
    C1 ||T||_1 <= sum <T f_n, f_n> <= C2 ||T||_1 per frame; the p = 2 suite
    checks sum ||T f_n||^2 = trace(T* T S) exactly, which places the sum in
    [C1, C2] * ||T||_2^2.
    """

    trials: int
    trace_checked: bool
    trace_margin: float
    hs_identity_dev: float
    hs_enclosure_margin: float
    passed: bool


def endpoint_suites(t, trials: int = 200, seed: int = 0, tol: float = 1e-9) -> EndpointReport:
    """Run the p = 1 and p = 2 endpoint suites over seeded arbitrary frames."""
    t = as_matrix(t)
    dim = t.shape[1]
    psd = _is_psd(t)
    trace_norm_value = None
    if psd:
        w = np.linalg.eigvalsh(0.5 * (t + t.conj().T))
        trace_norm_value = float(np.sum(np.maximum(w, 0.0)))
    hs_sq = schatten_norm(t, 2) ** 2
    gram = t.conj().T @ t
    trace_margin = np.inf
    hs_dev = 0.0
    hs_margin = np.inf
    ok = True
    for i in range(trials):
        frame = random_frame(dim, dim + (i % dim) + 1, 100.0, seed + i)
        c1, c2 = frame.bounds
        if psd:
            diag_total = float(np.sum(_real_psd_diag(t, frame)))
            lo, hi = c1 * trace_norm_value, c2 * trace_norm_value
            scale = max(1.0, hi)
            margin = min(diag_total - lo, hi - diag_total) / scale
            trace_margin = min(trace_margin, margin)
            ok = ok and diag_total >= lo - tol * scale and diag_total <= hi + tol * scale
        norm_total = sum_norms(t, frame, 2).value
        via_trace = float(np.real(np.trace(gram @ frame.frame_operator)))
        dev = abs(norm_total - via_trace) / max(1.0, abs(via_trace))
        hs_dev = max(hs_dev, dev)
        ok = ok and dev <= 1e-10
        lo2, hi2 = c1 * hs_sq, c2 * hs_sq
        scale2 = max(1.0, hi2)
        hs_margin = min(hs_margin, min(norm_total - lo2, hi2 - norm_total) / scale2)
        ok = ok and norm_total >= lo2 - tol * scale2 and norm_total <= hi2 + tol * scale2
    return EndpointReport(
        trials=trials,
        trace_checked=psd,
        trace_margin=float(trace_margin) if psd else float("nan"),
        hs_identity_dev=float(hs_dev),
        hs_enclosure_margin=float(hs_margin),
        passed=ok,
    )
