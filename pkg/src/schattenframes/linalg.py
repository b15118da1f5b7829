"""Dense complex linear algebra: Hermitian eigensystems, singular value
decompositions, Schatten p-norms, positive square roots and powers, and the
self-adjoint splittings used by the frame criteria.

All operations are pure functions of their inputs; returned containers hold
read-only arrays and are safe to share between threads.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "SpectralData",
    "SelfAdjointParts",
    "as_matrix",
    "inner",
    "hermitian_defect",
    "hermitian_eigen",
    "svd",
    "singular_values",
    "schatten_norm",
    "operator_norm",
    "psd_sqrt",
    "psd_power",
    "self_adjoint_parts",
    "positive_four_parts",
    "trace_pairing",
]

#: Absolute tolerance for structural checks (hermiticity, PSD clamps).
STRUCTURAL_TOL = 1e-12

#: Relative rank cutoff for singular vectors: lambda_n > RANK_TOL * lambda_1.
RANK_TOL = 1e-12


def as_matrix(a) -> np.ndarray:
    """Validate and return `a` as a read-only complex128 2-d array.

    Rejects empty shapes and non-finite entries.
    """
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim == 1:
        m = m.reshape(-1, 1)
    if m.ndim != 2 or m.shape[0] < 1 or m.shape[1] < 1:
        raise ValueError(f"expected a nonempty 2-d matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix entries must be finite (no NaN/inf)")
    m = m.copy()
    m.flags.writeable = False
    return m


def inner(x: np.ndarray, y: np.ndarray) -> complex:
    """Inner product <x, y>, linear in x and conjugate-linear in y."""
    return complex(np.vdot(y, x))


def hermitian_defect(h: np.ndarray) -> float:
    """Max-entry deviation of `h` from its conjugate transpose."""
    h = np.asarray(h)
    return float(np.abs(h - h.conj().T).max())


@dataclass(frozen=True)
class SpectralData:
    """Canonical decomposition T = sum_n s_n <., e_n> u_n.

    `singular_values` is nonincreasing with zeros retained up to
    min(rows, cols); `left_vectors` holds the u_n as columns and
    `right_vectors` the e_n, each family orthonormal.
    """

    singular_values: np.ndarray
    left_vectors: np.ndarray
    right_vectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        """Rebuild the matrix from its factors."""
        return (self.left_vectors * self.singular_values) @ self.right_vectors.conj().T


@dataclass(frozen=True)
class SelfAdjointParts:
    """Splitting T = t1 + i*t2 into Hermitian parts."""

    t1: np.ndarray
    t2: np.ndarray

    def reconstruct(self) -> np.ndarray:
        return self.t1 + 1j * self.t2


def hermitian_eigen(h, tol: float = STRUCTURAL_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (nonincreasing) and orthonormal eigenvectors of a Hermitian matrix.

    Rejects inputs whose hermiticity defect exceeds `tol` in max norm.
    Solver non-convergence surfaces as `numpy.linalg.LinAlgError`.
    """
    h = as_matrix(h)
    if h.shape[0] != h.shape[1]:
        raise ValueError(f"matrix must be square, got shape {h.shape}")
    defect = hermitian_defect(h)
    if defect > tol:
        raise ValueError(f"matrix is not Hermitian: defect {defect:.3e} > tol {tol:.3e}")
    w, v = np.linalg.eigh(0.5 * (h + h.conj().T))
    order = np.argsort(w)[::-1]
    return w[order].copy(), v[:, order].copy()


def _complete_orthonormal(columns: np.ndarray, rows: int, want: int) -> np.ndarray:
    """Extend orthonormal `columns` (rows x r) to `want` orthonormal columns.

    Candidates are standard basis vectors; a modified Gram-Schmidt pass keeps
    the result orthonormal to machine precision.
    """
    cols = [columns[:, j].copy() for j in range(columns.shape[1])]
    e = 0
    while len(cols) < want:
        if e >= rows:
            raise np.linalg.LinAlgError("failed to complete orthonormal family")
        cand = np.zeros(rows, dtype=np.complex128)
        cand[e] = 1.0
        e += 1
        for c in cols:
            cand -= np.vdot(c, cand) * c
        norm = np.linalg.norm(cand)
        if norm > 0.5:
            cols.append(cand / norm)
    out = np.column_stack(cols) if cols else np.zeros((rows, 0), dtype=np.complex128)
    # second MGS sweep to wash out first-order loss of orthogonality
    for j in range(out.shape[1]):
        for i in range(j):
            out[:, j] -= np.vdot(out[:, i], out[:, j]) * out[:, i]
        out[:, j] /= np.linalg.norm(out[:, j])
    return out


def svd(t) -> SpectralData:
    """Singular value decomposition via the Gram matrix route.

    The singular values are the square roots of the (clamped) eigenvalues of
    T*T, nonincreasing, with zeros retained up to min(rows, cols).  Vectors on
    the opposite side are obtained by applying T and normalizing, completed to
    an orthonormal family where the singular value falls below the rank cutoff.

    Eigenvalues below the Gram resolution floor max(rows, cols) * eps * mu_1
    are reported as exact zeros: they are indistinguishable from rounding
    noise, and for p < 1 that noise would otherwise leak into p-th power sums.
    """
    t = as_matrix(t)
    rows, cols = t.shape
    k = min(rows, cols)
    # Gram matrix on the smaller side keeps the eigenproblem at size k.
    if cols <= rows:
        gram = t.conj().T @ t
    else:
        gram = t @ t.conj().T
    mu, vecs = np.linalg.eigh(0.5 * (gram + gram.conj().T))
    mu = np.maximum(mu[::-1][:k], 0.0)
    vecs = vecs[:, ::-1][:, :k]
    if mu.size:
        noise_floor = max(rows, cols) * np.finfo(float).eps * mu[0]
        mu[mu <= noise_floor] = 0.0
    s = np.sqrt(mu)
    cutoff = RANK_TOL * (s[0] if s.size else 0.0)
    r = int(np.sum(s > cutoff))
    if cols <= rows:
        right = vecs
        left_known = t @ right[:, :r] / np.where(s[:r] == 0.0, 1.0, s[:r])
        left = _complete_orthonormal(left_known, rows, k)
    else:
        left = vecs
        right_known = t.conj().T @ left[:, :r] / np.where(s[:r] == 0.0, 1.0, s[:r])
        right = _complete_orthonormal(right_known, cols, k)
    s = s.copy()
    for arr in (s, left, right):
        arr.flags.writeable = False
    return SpectralData(singular_values=s, left_vectors=left, right_vectors=right)


def singular_values(t) -> np.ndarray:
    """Nonincreasing singular values of `t` (zeros retained)."""
    return svd(t).singular_values


def schatten_norm(t, p: float) -> float:
    """Schatten p-norm (sum of p-th powers of singular values)^(1/p), p > 0."""
    if p <= 0:
        raise ValueError(f"p must be positive, got {p}")
    s = singular_values(t)
    return float(np.sum(s**p) ** (1.0 / p))


def operator_norm(t) -> float:
    """Largest singular value."""
    s = singular_values(t)
    return float(s[0]) if s.size else 0.0


def psd_sqrt(s, tol: float = STRUCTURAL_TOL) -> np.ndarray:
    """Hermitian PSD square root of a Hermitian PSD matrix.

    Eigenvalues in [-tol, 0) are clamped to zero; anything below -tol is
    rejected with the most negative eigenvalue in the message.
    """
    w, v = hermitian_eigen(s, tol=max(tol, STRUCTURAL_TOL))
    if w.size and w[-1] < -tol:
        raise ValueError(f"matrix is not PSD: most negative eigenvalue {w[-1]:.3e}")
    root = (v * np.sqrt(np.maximum(w, 0.0))) @ v.conj().T
    return 0.5 * (root + root.conj().T)


def psd_power(s, p: float, tol: float = STRUCTURAL_TOL) -> np.ndarray:
    """Hermitian PSD power s^p formed in the eigenbasis, p > 0."""
    if p <= 0:
        raise ValueError(f"p must be positive, got {p}")
    w, v = hermitian_eigen(s, tol=max(tol, STRUCTURAL_TOL))
    if w.size and w[-1] < -tol:
        raise ValueError(f"matrix is not PSD: most negative eigenvalue {w[-1]:.3e}")
    powered = (v * np.maximum(w, 0.0) ** p) @ v.conj().T
    return 0.5 * (powered + powered.conj().T)


def self_adjoint_parts(t) -> SelfAdjointParts:
    """Split a square matrix as T = T1 + i*T2 with T1, T2 Hermitian."""
    t = as_matrix(t)
    if t.shape[0] != t.shape[1]:
        raise ValueError(f"matrix must be square, got shape {t.shape}")
    t1 = 0.5 * (t + t.conj().T)
    t2 = (t - t.conj().T) / 2j
    t2 = 0.5 * (t2 + t2.conj().T)
    return SelfAdjointParts(t1=t1, t2=t2)


def _sign_split(h: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Split a Hermitian matrix into its positive and negative parts."""
    w, v = hermitian_eigen(h)
    plus = (v * np.maximum(w, 0.0)) @ v.conj().T
    minus = (v * np.maximum(-w, 0.0)) @ v.conj().T
    return 0.5 * (plus + plus.conj().T), 0.5 * (minus + minus.conj().T)


def positive_four_parts(s) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Write S = (S1 - S2) + i(S3 - S4) with each part Hermitian PSD.

    S1/S2 are the positive/negative parts of the Hermitian component of S,
    S3/S4 those of the skew component.
    """
    parts = self_adjoint_parts(s)
    s1, s2 = _sign_split(parts.t1)
    s3, s4 = _sign_split(parts.t2)
    return s1, s2, s3, s4


def trace_pairing(t, s) -> complex:
    """Trace of the product T S for square matrices of matching dimension."""
    t = as_matrix(t)
    s = as_matrix(s)
    if t.shape[0] != t.shape[1] or t.shape != s.shape:
        raise ValueError(f"expected matching square matrices, got {t.shape} and {s.shape}")
    return complex(np.trace(t @ s))
