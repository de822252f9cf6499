"""Hodge Laplacians on cochains, spectra, harmonic projectors, heat traces.

The inner product is the identity on oriented simplices, so the adjoint
of the coboundary d = boundary^T is the boundary itself and deck matrices
are orthogonal.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .complexes import SimplicialComplex, ComplexError, boundary_matrix, betti_exact

ZERO_EIGENVALUE_FACTOR = 1e-8
REVIEW_BAND_FACTOR = 10.0


class SpectralError(RuntimeError):
    pass


class ZeroThresholdError(SpectralError):
    """Spectral kernel count disagrees with the exact Betti oracle."""


@dataclass(frozen=True)
class SpectralPackage:
    degree: int
    eigenvalues: np.ndarray   # ascending
    eigenvectors: np.ndarray  # orthonormal columns
    zero_threshold: float

    @property
    def kernel_dimension(self) -> int:
        return int(np.sum(self.eigenvalues < self.zero_threshold))

    @property
    def review_flag(self) -> bool:
        """True when an eigenvalue sits within a factor 10 of the threshold."""
        lam = self.eigenvalues
        lo = self.zero_threshold / REVIEW_BAND_FACTOR
        hi = self.zero_threshold * REVIEW_BAND_FACTOR
        return bool(np.any((lam >= lo) & (lam <= hi)))


@dataclass(frozen=True)
class HarmonicProjector:
    degree: int
    matrix: np.ndarray
    kernel_dimension: int
    review_flag: bool


def laplacian(K: SimplicialComplex, k: int, dtype=np.int64) -> np.ndarray:
    """Combinatorial Hodge Laplacian d^T d + d d^T in degree k."""
    if not 0 <= k <= K.dimension:
        raise ComplexError(f"degree {k} out of range 0..{K.dimension}")
    m = K.n_simplices(k)
    L = np.zeros((m, m), dtype=dtype)
    if k >= 1:
        Dk = boundary_matrix(K, k).astype(dtype)
        L += Dk.T @ Dk
    if k + 1 <= K.dimension:
        Dk1 = boundary_matrix(K, k + 1).astype(dtype)
        L += Dk1 @ Dk1.T
    return L


def spectrum(delta: np.ndarray, degree: int = -1) -> SpectralPackage:
    """Eigendecomposition of a symmetric PSD matrix with invariant checks."""
    delta = np.asarray(delta, dtype=float)
    if delta.size:
        scale = np.abs(delta).max()
        if np.abs(delta - delta.T).max() > 1e-12 * max(1.0, scale):
            raise SpectralError("input matrix is not symmetric")
    try:
        lam, V = np.linalg.eigh(delta)
    except np.linalg.LinAlgError as err:  # pragma: no cover
        raise SpectralError(f"eigendecomposition failed: {err}") from err
    scale = np.abs(delta).max() if delta.size else 0.0
    if delta.size:
        recon = np.abs((V * lam) @ V.T - delta).max()
        if recon > 1e-9 * (1.0 + scale):
            raise SpectralError(f"reconstruction error {recon:g} too large")
        orth = np.abs(V.T @ V - np.eye(len(lam))).max()
        if orth > 1e-9:
            raise SpectralError(f"orthonormality defect {orth:g} too large")
        if lam[0] < -1e-9 * (1.0 + scale):
            raise SpectralError(f"negative eigenvalue {lam[0]:g}")
    lam_max = float(lam[-1]) if lam.size else 0.0
    threshold = ZERO_EIGENVALUE_FACTOR * max(1.0, lam_max)
    return SpectralPackage(degree, lam, V, threshold)


def harmonic_projector(
    S: SpectralPackage, expected_betti: int | None = None
) -> HarmonicProjector:
    """Orthogonal projector onto the numerical kernel.

    When the exact Betti number is supplied, a kernel-count mismatch is a
    hard error: the zero threshold is cross-validated, never trusted.
    """
    kdim = S.kernel_dimension
    if expected_betti is not None and kdim != expected_betti:
        raise ZeroThresholdError(
            f"degree {S.degree}: spectral kernel dimension {kdim} != exact "
            f"Betti number {expected_betti} (threshold {S.zero_threshold:g})"
        )
    V0 = S.eigenvectors[:, :kdim]
    P = V0 @ V0.T
    return HarmonicProjector(S.degree, P, kdim, S.review_flag)


def heat_trace(S: SpectralPackage, t: float) -> float:
    """Trace of exp(-t * Delta) through the eigendecomposition."""
    if t <= 0:
        raise ValueError("t must be positive")
    return float(np.exp(-t * S.eigenvalues).sum())


def heat_operator(S: SpectralPackage, t: float) -> np.ndarray:
    if t <= 0:
        raise ValueError("t must be positive")
    return (S.eigenvectors * np.exp(-t * S.eigenvalues)) @ S.eigenvectors.T


def mckean_singer_defect(K: SimplicialComplex, t: float) -> float:
    """|alternating heat-trace sum - Euler characteristic|."""
    total = 0.0
    for k in range(K.dimension + 1):
        total += (-1) ** k * heat_trace(spectrum(laplacian(K, k), k), t)
    return abs(total - K.euler_characteristic())


def spectral_betti(K: SimplicialComplex, k: int) -> int:
    """Kernel dimension of the degree-k Laplacian, cross-checked exactly."""
    S = spectrum(laplacian(K, k), k)
    proj = harmonic_projector(S, expected_betti=betti_exact(K, k))
    return proj.kernel_dimension
