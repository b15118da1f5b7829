"""Finite frames: frame operators, exact frame bounds, synthesis operators
with certified norm estimates, canonical Parseval rescaling, and seeded
generators for random orthonormal bases and random frames.

A family {f_n} in C^d is a frame when C1 ||f||^2 <= sum_n |<f, f_n>|^2 <=
C2 ||f||^2 for all f with C1 > 0; in finite dimension the optimal bounds are
the extreme eigenvalues of the frame operator S = sum_n f_n f_n*.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import as_matrix, hermitian_eigen, operator_norm

__all__ = [
    "Frame",
    "SynthesisOperator",
    "SynthesisCertificate",
    "make_frame",
    "synthesis",
    "certify_synthesis",
    "canonical_parseval",
    "rescale_upper_bound_one",
    "rescale_lower_bound_one",
    "random_onb",
    "random_frame",
    "union_frame",
]

#: A family is accepted as a frame when lambda_min(S) > SPANNING_TOL * lambda_max(S).
SPANNING_TOL = 1e-10


@dataclass(frozen=True)
class Frame:
    """An ordered frame with cached frame operator and optimal bounds.

    `vectors` has shape (dim, count); column k is the k-th frame vector.
    Repeated vectors are allowed and meaningful (families keep multiplicity).
    Instances are immutable; arrays are marked read-only at construction.
    """

    dim: int
    vectors: np.ndarray
    frame_operator: np.ndarray
    lower_bound: float
    upper_bound: float

    @property
    def count(self) -> int:
        return self.vectors.shape[1]

    @property
    def bounds(self) -> tuple[float, float]:
        return (self.lower_bound, self.upper_bound)

    @property
    def condition(self) -> float:
        return self.upper_bound / self.lower_bound

    def is_parseval(self, tol: float = 1e-9) -> bool:
        """True when both optimal bounds are 1 within `tol`."""
        return abs(self.lower_bound - 1.0) <= tol and abs(self.upper_bound - 1.0) <= tol


@dataclass(frozen=True)
class SynthesisOperator:
    """The operator sending the k-th coefficient basis vector to f_k.

    Its matrix is exactly the frame's (dim, count) vector array, so
    A A* equals the frame operator.
    """

    matrix: np.ndarray

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def count(self) -> int:
        return self.matrix.shape[1]


def _coerce_vectors(vectors, dim: int | None) -> np.ndarray:
    """Stack input vectors as columns of a (dim, count) complex matrix."""
    if isinstance(vectors, Frame):
        a = vectors.vectors
    elif isinstance(vectors, SynthesisOperator):
        a = vectors.matrix
    elif isinstance(vectors, np.ndarray) and vectors.ndim == 2:
        a = vectors
    else:
        cols = [np.asarray(v, dtype=np.complex128).reshape(-1) for v in vectors]
        if not cols:
            raise ValueError("a frame needs at least one vector")
        lengths = {c.shape[0] for c in cols}
        if len(lengths) != 1:
            raise ValueError(f"vectors have inconsistent lengths {sorted(lengths)}")
        a = np.column_stack(cols)
    a = np.asarray(a, dtype=np.complex128)
    if dim is not None and a.shape[0] != dim:
        raise ValueError(f"vectors have length {a.shape[0]}, expected dim {dim}")
    return a


def make_frame(vectors, dim: int | None = None, tol: float | None = None) -> Frame:
    """Build a Frame from a vector family, computing operator and bounds.

    `vectors` may be a sequence of length-`dim` vectors or a (dim, count)
    array whose columns are the vectors.  Fails when the family does not span:
    lambda_min(S) must exceed `tol` (default SPANNING_TOL * lambda_max(S)).
    """
    a = _coerce_vectors(vectors, dim)
    a = as_matrix(a)
    d = a.shape[0]
    s = a @ a.conj().T
    s = 0.5 * (s + s.conj().T)
    w, _ = hermitian_eigen(s)
    c2 = float(w[0])
    c1 = float(w[-1])
    threshold = tol if tol is not None else SPANNING_TOL * max(c2, 1e-300)
    if c1 <= threshold:
        raise ValueError(
            f"family does not span C^{d}: lambda_min(S) = {c1:.3e} <= tol {threshold:.3e}"
        )
    s.flags.writeable = False
    return Frame(dim=d, vectors=a, frame_operator=s, lower_bound=c1, upper_bound=c2)


def synthesis(frame: Frame) -> SynthesisOperator:
    """Synthesis operator of a frame (columns are the frame vectors)."""
    return SynthesisOperator(matrix=frame.vectors)


@dataclass(frozen=True)
class SynthesisCertificate:
    """Measured synthesis-operator properties with pass/fail verdict.

    Certifies C1 <= ||A||^2 <= C2, invertibility of A A* (lambda_min = C1 > 0),
    and the analysis identity ||A* f||^2 = sum_n |<f, f_n>|^2 on seeded probes.
    `rank` is the numerical rank of A (A itself is generally not injective,
    e.g. for frames with repeated vectors).
    """

    dim: int
    count: int
    lower_bound: float
    upper_bound: float
    op_norm_sq: float
    min_eig_frame_operator: float
    analysis_identity_dev: float
    rank: int
    tolerance: float
    passed: bool
    failures: tuple[str, ...]


def certify_synthesis(
    frame: Frame, tol: float = 1e-9, n_probes: int = 200, seed: int = 0
) -> SynthesisCertificate:
    """Certify the synthesis operator's norm bracket and analysis identity."""
    a = frame.vectors
    c1, c2 = frame.bounds
    op2 = operator_norm(a) ** 2
    failures = []
    scale = max(1.0, c2)
    if not (c1 - tol * scale <= op2 <= c2 + tol * scale):
        failures.append(f"||A||^2 = {op2:.6e} outside [{c1:.6e}, {c2:.6e}]")
    if not c1 > 0:
        failures.append(f"frame operator not invertible: lambda_min = {c1:.3e}")
    rng = np.random.default_rng(seed)
    probes = rng.standard_normal((frame.dim, n_probes)) + 1j * rng.standard_normal(
        (frame.dim, n_probes)
    )
    probes /= np.linalg.norm(probes, axis=0)
    # ||A* f||^2 via the matrix product, sum_n |<f, f_n>|^2 via columnwise pairings
    direct = np.linalg.norm(a.conj().T @ probes, axis=0) ** 2
    pairings = np.einsum("in,ij->nj", a.conj(), probes)
    analysis = np.sum(np.abs(pairings) ** 2, axis=0)
    dev = float(np.max(np.abs(analysis - direct) / np.maximum(analysis, 1e-300)))
    if dev > 1e-10:
        failures.append(f"analysis identity deviation {dev:.3e}")
    # frame inequality on the probes
    lo = float(np.min(analysis))
    hi = float(np.max(analysis))
    if lo < c1 * (1 - 1e-10) - tol or hi > c2 * (1 + 1e-10) + tol:
        failures.append(f"probe sums [{lo:.6e}, {hi:.6e}] escape bounds [{c1}, {c2}]")
    svals = np.linalg.svd(a, compute_uv=False)
    rank = int(np.sum(svals > 1e-12 * (svals[0] if svals.size else 1.0)))
    return SynthesisCertificate(
        dim=frame.dim,
        count=frame.count,
        lower_bound=c1,
        upper_bound=c2,
        op_norm_sq=op2,
        min_eig_frame_operator=c1,
        analysis_identity_dev=dev,
        rank=rank,
        tolerance=tol,
        passed=not failures,
        failures=tuple(failures),
    )


def canonical_parseval(frame: Frame) -> Frame:
    """Apply S^(-1/2) to every vector; the result is a Parseval frame."""
    w, v = hermitian_eigen(frame.frame_operator)
    inv_root = (v * (1.0 / np.sqrt(w))) @ v.conj().T
    return make_frame(inv_root @ frame.vectors)


def rescale_upper_bound_one(frame: Frame) -> Frame:
    """Divide all vectors by sqrt(C2); new bounds are (C1/C2, 1)."""
    return make_frame(frame.vectors / np.sqrt(frame.upper_bound))


def rescale_lower_bound_one(frame: Frame) -> Frame:
    """Divide all vectors by sqrt(C1); new bounds are (1, C2/C1)."""
    return make_frame(frame.vectors / np.sqrt(frame.lower_bound))


def _phase_fix(q: np.ndarray) -> np.ndarray:
    """Rotate each column so its first nonzero entry is real positive."""
    q = q.copy()
    for j in range(q.shape[1]):
        col = q[:, j]
        nz = np.nonzero(np.abs(col) > 1e-14)[0]
        if nz.size:
            pivot = col[nz[0]]
            q[:, j] = col * (np.conj(pivot) / np.abs(pivot))
    return q


def random_onb(dim: int, seed: int) -> Frame:
    """Seeded random orthonormal basis of C^dim as a Frame.

    Orthonormalizes a complex Gaussian matrix; a fixed phase convention
    (first nonzero entry of each column real positive) makes the output
    reproducible across platforms.
    """
    if dim < 1:
        raise ValueError(f"dim must be >= 1, got {dim}")
    rng = np.random.default_rng(seed)
    z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, _ = np.linalg.qr(z)
    return make_frame(_phase_fix(q))


def random_frame(dim: int, count: int, condition_target: float, seed: int) -> Frame:
    """Seeded random frame with condition number C2/C1 <= condition_target.

    Blends an ONB multiset (enough seeded random orthonormal bases to supply
    `count` vectors) with a random perturbation, pulling the result toward its
    Parseval projection until the condition target is met.  A target of
    exactly 1 returns the Parseval projection itself.
    """
    if count < dim:
        raise ValueError(f"count {count} must be >= dim {dim}")
    if condition_target < 1.0:
        raise ValueError(f"condition_target must be >= 1, got {condition_target}")
    rng = np.random.default_rng(seed)
    n_bases = -(-count // dim)
    blocks = [random_onb(dim, int(rng.integers(0, 2**62))).vectors for _ in range(n_bases)]
    base = np.hstack(blocks)[:, :count]
    g = rng.standard_normal((dim, count)) + 1j * rng.standard_normal((dim, count))
    raw = base + (0.25 / np.sqrt(dim)) * g
    frame = make_frame(raw)
    if condition_target == 1.0:
        return canonical_parseval(frame)
    if frame.condition <= condition_target:
        return frame
    parseval = canonical_parseval(frame).vectors
    for attempt in range(1, 51):
        t = 2.0**-attempt
        candidate = (1.0 - t) * parseval + t * raw
        try:
            blended = make_frame(candidate)
        except ValueError:
            continue
        if blended.condition <= condition_target:
            return blended
    raise ValueError(
        f"could not reach condition target {condition_target} after 50 attempts"
    )


def union_frame(a: Frame, b) -> Frame:
    """Concatenate two families; the frame operator is the sum of operators.

    `b` may be a Frame or a raw vector family (so zero vectors and other
    non-spanning families can be appended to an existing frame).
    """
    vb = _coerce_vectors(b, None)
    if vb.shape[0] != a.dim:
        raise ValueError(f"dimension mismatch: {a.dim} vs {vb.shape[0]}")
    return make_frame(np.hstack([a.vectors, vb]))
