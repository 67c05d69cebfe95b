"""Weak measurement before the evolution, measurement reversal after it.

Protocol: at t = 0 the (normalised) atomic state is hit with a weak
measurement that scales the excited amplitudes by sqrt(1-p), sqrt(1-q).
The state then evolves under the cavity dynamics, and at the readout
time a reversing measurement is applied and the result renormalised.

The single most error-prone convention, stated once and relied on
everywhere: the weak measurement does NOT renormalise.  The amplitude
vector it returns has squared norm below 1 and the deficit is carried by
the derived reservoir weight, i.e. it is immediately lumped into the
ground/reservoir population of any density matrix built from the state.
Trace 1 is restored only by the reversal's explicit normalisation
factor; nothing renormalises in between.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dynamics import (
    AmplitudeVector,
    SystemParams,
    apply_propagator,
    evolve_amplitudes,
    propagator_limit,
)

__all__ = [
    "MeasurementStrengths",
    "weak_operator",
    "reversal_operator",
    "apply_weak_measurement",
    "normalization_factor",
    "apply_reversal",
    "protocol_state",
    "protocol_steady_state",
]


@dataclass(frozen=True)
class MeasurementStrengths:
    """Weak (p, q) and reversing (p_r, q_r) measurement strengths, each in [0, 1).

    p/p_r act on |B>'s row of the measurement operators, q/q_r on |A>'s.
    The symmetric case p == q, p_r == q_r is the common one; use
    :meth:`symmetric` for it.
    """

    p: float = 0.0
    q: float = 0.0
    p_r: float = 0.0
    q_r: float = 0.0

    def __post_init__(self):
        for name in ("p", "q", "p_r", "q_r"):
            value = getattr(self, name)
            if not (0.0 <= value < 1.0):
                raise ValueError(f"{name} must lie in [0, 1), got {value!r}")

    @classmethod
    def symmetric(cls, p: float = 0.0, p_r: float = 0.0) -> "MeasurementStrengths":
        return cls(p=p, q=p, p_r=p_r, q_r=p_r)


def weak_operator(strengths: MeasurementStrengths) -> np.ndarray:
    """Weak measurement operator diag(1, sqrt(1-p), sqrt(1-q)) in {|C>,|B>,|A>}."""
    return np.diag([1.0, math.sqrt(1.0 - strengths.p), math.sqrt(1.0 - strengths.q)]).astype(complex)


def reversal_operator(strengths: MeasurementStrengths) -> np.ndarray:
    """Reversing operator diag(sqrt((1-p_r)(1-q_r)), sqrt(1-q_r), sqrt(1-p_r))."""
    p_r, q_r = strengths.p_r, strengths.q_r
    return np.diag(
        [math.sqrt((1.0 - p_r) * (1.0 - q_r)), math.sqrt(1.0 - q_r), math.sqrt(1.0 - p_r)]
    ).astype(complex)


def apply_weak_measurement(
    amp: AmplitudeVector, strengths: MeasurementStrengths
) -> AmplitudeVector:
    """Scale the excited amplitudes by sqrt(1-q) / sqrt(1-p); no renormalisation.

    The input must be a normalised t = 0 state (the measurement happens
    before any evolution, while the reservoir is still empty).
    """
    if not amp.is_normalized(1e-10):
        raise ValueError(
            f"weak measurement expects a normalised state, got squared norm {amp.norm_sq!r}"
        )
    return AmplitudeVector(
        d_a=amp.d_a * math.sqrt(1.0 - strengths.q),
        d_b=amp.d_b * math.sqrt(1.0 - strengths.p),
        d_c=amp.d_c,
    )


def _reversal_diagonal(
    amp: AmplitudeVector, strengths: MeasurementStrengths
) -> tuple[float, float, float]:
    # Unnormalised diagonal of the reversed matrix; the reservoir weight
    # rides along with the ground population in the first entry.
    p_r, q_r = strengths.p_r, strengths.q_r
    e_ground = (amp.reservoir_weight + abs(amp.d_c) ** 2) * (1.0 - p_r) * (1.0 - q_r)
    e_b = abs(amp.d_b) ** 2 * (1.0 - q_r)
    e_a = abs(amp.d_a) ** 2 * (1.0 - p_r)
    return e_ground, e_b, e_a


def normalization_factor(amp: AmplitudeVector, strengths: MeasurementStrengths) -> float:
    """Trace of the un-normalised reversed matrix (the factor the state is divided by)."""
    c1 = math.fsum(_reversal_diagonal(amp, strengths))
    if c1 <= 0.0:
        raise ValueError(f"normalisation factor {c1!r} is not positive; state is corrupted")
    return c1


def apply_reversal(amp: AmplitudeVector, strengths: MeasurementStrengths) -> np.ndarray:
    """Reversed, renormalised density matrix built from evolved amplitudes.

    Equivalent to sandwiching the lumped-reservoir density matrix with
    the reversing operator and dividing by its trace, but written
    directly on the amplitudes so the trace is 1 by construction.
    """
    e_ground, e_b, e_a = _reversal_diagonal(amp, strengths)
    c1 = e_ground + e_b + e_a
    if c1 <= 0.0:
        raise ValueError(f"normalisation factor {c1!r} is not positive; state is corrupted")
    p_r, q_r = strengths.p_r, strengths.q_r
    m_ground = math.sqrt((1.0 - p_r) * (1.0 - q_r))
    m_b = math.sqrt(1.0 - q_r)
    m_a = math.sqrt(1.0 - p_r)
    rho = np.empty((3, 3), dtype=complex)
    rho[0, 0] = e_ground / c1
    rho[1, 1] = e_b / c1
    rho[2, 2] = e_a / c1
    rho[0, 1] = amp.d_c * amp.d_b.conjugate() * (m_ground * m_b) / c1
    rho[0, 2] = amp.d_c * amp.d_a.conjugate() * (m_ground * m_a) / c1
    rho[1, 2] = amp.d_b * amp.d_a.conjugate() * (m_b * m_a) / c1
    rho[1, 0] = rho[0, 1].conjugate()
    rho[2, 0] = rho[0, 2].conjugate()
    rho[2, 1] = rho[1, 2].conjugate()
    return rho


def protocol_state(
    initial: AmplitudeVector,
    params: SystemParams,
    strengths: MeasurementStrengths,
    t: float,
) -> np.ndarray:
    """Density matrix after measure -> evolve to ``t`` -> reverse -> renormalise.

    With all strengths zero this reduces exactly to the bare evolved
    density matrix.
    """
    measured = apply_weak_measurement(initial, strengths)
    evolved = evolve_amplitudes(measured, params, t)
    return apply_reversal(evolved, strengths)


def protocol_steady_state(
    initial: AmplitudeVector,
    params: SystemParams,
    strengths: MeasurementStrengths,
) -> np.ndarray:
    """Exact t -> infinity limit of :func:`protocol_state`."""
    measured = apply_weak_measurement(initial, strengths)
    settled = apply_propagator(propagator_limit(params), measured)
    return apply_reversal(settled, strengths)
