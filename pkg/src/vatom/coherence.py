"""Reduced atomic density matrix and the l1-norm coherence measure.

Density matrices are plain 3x3 complex numpy arrays in the basis
{|C>, |B>, |A>} (index 0 = |C>, regardless of how excited the state is).
"""

from __future__ import annotations

import numpy as np

from .dynamics import AmplitudeVector

__all__ = [
    "density_from_amplitudes",
    "l1_coherence",
    "check_density_matrix",
    "min_eigenvalue",
]


def density_from_amplitudes(amp: AmplitudeVector, tol: float = 1e-10) -> np.ndarray:
    """Atomic density matrix with the reservoir excitation traced into rho[0,0].

    The ground-state population picks up the derived reservoir weight
    1 - |d_a|^2 - |d_b|^2 - |d_c|^2, so the trace is 1 even for the
    sub-normalised amplitudes produced by a weak measurement.  A squared
    norm above 1 + tol means the caller handed over an unphysical state
    and is rejected.
    """
    norm_sq = amp.norm_sq
    if norm_sq > 1.0 + tol:
        raise ValueError(
            f"amplitude vector has squared norm {norm_sq!r} > 1; "
            "only normalised or sub-normalised states have a physical density matrix"
        )
    d_a, d_b, d_c = amp.d_a, amp.d_b, amp.d_c
    rho = np.empty((3, 3), dtype=complex)
    rho[0, 0] = amp.reservoir_weight + abs(d_c) ** 2
    rho[1, 1] = abs(d_b) ** 2
    rho[2, 2] = abs(d_a) ** 2
    rho[0, 1] = d_c * d_b.conjugate()
    rho[0, 2] = d_c * d_a.conjugate()
    rho[1, 2] = d_b * d_a.conjugate()
    rho[1, 0] = rho[0, 1].conjugate()
    rho[2, 0] = rho[0, 2].conjugate()
    rho[2, 1] = rho[1, 2].conjugate()
    return rho


def l1_coherence(rho: np.ndarray) -> float:
    """Sum of the moduli of all off-diagonal entries (both triangles)."""
    mags = np.abs(rho)
    return float(mags.sum() - np.trace(mags))


def min_eigenvalue(rho: np.ndarray) -> float:
    """Smallest eigenvalue of a Hermitian matrix."""
    return float(np.linalg.eigvalsh(rho)[0])


def check_density_matrix(
    rho: np.ndarray,
    trace_tol: float = 1e-10,
    herm_tol: float = 1e-12,
    psd_tol: float = 1e-10,
) -> None:
    """Raise ValueError unless rho is Hermitian, unit-trace and positive semidefinite."""
    rho = np.asarray(rho)
    if rho.shape != (3, 3):
        raise ValueError(f"expected a 3x3 matrix, got shape {rho.shape}")
    herm_err = float(np.abs(rho - rho.conj().T).max())
    if herm_err > herm_tol:
        raise ValueError(f"matrix is not Hermitian: max |rho - rho^dagger| = {herm_err:g}")
    trace_err = abs(complex(np.trace(rho)) - 1.0)
    if trace_err > trace_tol:
        raise ValueError(f"trace differs from 1 by {trace_err:g}")
    lowest = min_eigenvalue(0.5 * (rho + rho.conj().T))
    if lowest < -psd_tol:
        raise ValueError(f"matrix is not positive semidefinite: min eigenvalue {lowest:g}")
