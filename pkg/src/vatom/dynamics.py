"""Closed-form amplitude dynamics of a V-type atom in a lossy cavity.

A three-level atom with two excited states |A>, |B> decays into its
ground state |C> through a single damped cavity mode.  Tracing out the
cavity/environment with a Lorentzian coupling spectrum of width ``kappa``
centred at detuning ``delta`` from the atomic transition leaves the two
excited-state amplitudes obeying a Volterra equation with a single
exponential memory kernel.  Interference between the two decay channels
is controlled by ``theta`` (parallel dipoles at 1, perpendicular at 0).

Because the kernel is one complex exponential, the evolution is exactly
solvable: the symmetric/antisymmetric amplitude combinations propagate
with the two branch factors ``g_plus``/``g_minus``, and the lab-frame
amplitudes mix through ``q1``/``q2``.

Basis ordering used throughout the package: index 0 = |C>, 1 = |B>,
2 = |A>.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

__all__ = [
    "SystemParams",
    "AmplitudeVector",
    "PropagatorPair",
    "complex_rate",
    "memory_kernel",
    "propagator",
    "propagator_limit",
    "apply_propagator",
    "evolve_amplitudes",
]

# Below this, cosh/sinhc are evaluated by series to dodge 0/0 at a
# degenerate branch rate; above ~200 the hyperbolics are re-expressed as
# explicit exponentials so cosh cannot overflow at large t.
_SERIES_THRESHOLD = 1e-6
_EXP_FORM_THRESHOLD = 200.0


@dataclass(frozen=True)
class SystemParams:
    """Physical rates of the atom-cavity system (all in the same inverse-time unit).

    gamma0: spontaneous decay rate of both excited states (> 0)
    kappa:  spectral width of the cavity-environment coupling (> 0)
    delta:  detuning of the cavity eigenfrequency from the atomic transition
    theta:  interference parameter between the two decay channels, |theta| <= 1
    """

    gamma0: float
    kappa: float
    delta: float = 0.0
    theta: float = 0.0

    def __post_init__(self):
        for name in ("gamma0", "kappa", "delta", "theta"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value!r}")
        if self.gamma0 <= 0.0:
            raise ValueError(f"gamma0 must be positive, got {self.gamma0}")
        if self.kappa <= 0.0:
            raise ValueError(f"kappa must be positive, got {self.kappa}")
        if abs(self.theta) > 1.0:
            raise ValueError(f"|theta| must not exceed 1, got {self.theta}")


@dataclass(frozen=True)
class AmplitudeVector:
    """Probability amplitudes (d_a, d_b, d_c) of |A>, |B>, |C>.

    The reservoir weight is derived, not stored: it is whatever part of
    unit norm the three atomic amplitudes do not carry.  A freshly
    measured state is deliberately sub-normalised (squared norm < 1) and
    the deficit shows up here; see :mod:`vatom.measurement`.
    """

    d_a: complex
    d_b: complex
    d_c: complex = 0j

    def __post_init__(self):
        object.__setattr__(self, "d_a", complex(self.d_a))
        object.__setattr__(self, "d_b", complex(self.d_b))
        object.__setattr__(self, "d_c", complex(self.d_c))

    @classmethod
    def from_angles(cls, alpha: float, beta: float = 0.0) -> "AmplitudeVector":
        """Pure excited-state superposition cos(alpha)|A> + e^{i beta} sin(alpha)|B>."""
        return cls(math.cos(alpha), cmath.exp(1j * beta) * math.sin(alpha), 0j)

    @property
    def norm_sq(self) -> float:
        return abs(self.d_a) ** 2 + abs(self.d_b) ** 2 + abs(self.d_c) ** 2

    @property
    def reservoir_weight(self) -> float:
        return 1.0 - self.norm_sq

    def is_normalized(self, tol: float = 1e-10) -> bool:
        return abs(self.norm_sq - 1.0) <= tol


@dataclass(frozen=True)
class PropagatorPair:
    """Branch propagators g_plus/g_minus and the derived mixing factors.

    q1/q2 are defined exactly as the half sum/difference, so the
    decomposition identity q1**2 - q2**2 == g_plus * g_minus holds by
    construction.
    """

    g_plus: complex
    g_minus: complex

    @property
    def q1(self) -> complex:
        return 0.5 * (self.g_plus + self.g_minus)

    @property
    def q2(self) -> complex:
        return 0.5 * (self.g_plus - self.g_minus)


def complex_rate(params: SystemParams, branch: int) -> complex:
    """Principal-branch rate sqrt((kappa + i delta)^2 - 2 gamma0 (1 +- theta) kappa).

    ``branch`` is +1 or -1 and selects the symmetric/antisymmetric decay
    channel.  Callers must not depend on the sign of the root: every
    consumer in this module is an even function of it.
    """
    if branch not in (+1, -1):
        raise ValueError(f"branch must be +1 or -1, got {branch!r}")
    kid = complex(params.kappa, params.delta)
    radicand = kid * kid - 2.0 * params.gamma0 * (1.0 + branch * params.theta) * params.kappa
    return cmath.sqrt(radicand)


def memory_kernel(params: SystemParams, tau: float) -> tuple[complex, complex]:
    """Exponential memory kernel (f, f_cross) at time lag ``tau`` >= 0.

    f(tau) = (gamma0 kappa / 2) exp(-(kappa + i delta) tau) is the
    Fourier transform of the Lorentzian coupling spectrum evaluated in
    the rotating frame of the atomic transition; the cross-channel
    kernel is theta * f.
    """
    if tau < 0.0:
        raise ValueError(f"tau must be non-negative, got {tau}")
    f = 0.5 * params.gamma0 * params.kappa * cmath.exp(complex(-params.kappa, -params.delta) * tau)
    return f, params.theta * f


def _branch_factor(kid: complex, rate: complex, t: float) -> complex:
    # g(t) = e^{-kid t/2} [cosh(rate t/2) + (kid t/2) sinhc(rate t/2)],
    # written so that no path divides by the rate itself.
    lam = 0.5 * kid * t
    x = 0.5 * rate * t
    if abs(x) < _SERIES_THRESHOLD:
        # cosh x ~ 1 + x^2/2, sinhc x ~ 1 + x^2/6; error O(|x|^4) < 1e-24
        return cmath.exp(-lam) * (1.0 + 0.5 * x * x + lam * (1.0 + x * x / 6.0))
    if abs(x.real) > _EXP_FORM_THRESHOLD:
        # cosh would overflow; regroup into pure exponentials whose real
        # exponents are <= 0 because Re(rate) <= kappa for |theta| <= 1.
        beta = lam / x
        return 0.5 * (1.0 + beta) * cmath.exp(x - lam) + 0.5 * (1.0 - beta) * cmath.exp(-x - lam)
    return cmath.exp(-lam) * (cmath.cosh(x) + lam * (cmath.sinh(x) / x))


def propagator(
    params: SystemParams,
    t: float,
    rates: tuple[complex, complex] | None = None,
) -> PropagatorPair:
    """Branch propagators at time ``t`` >= 0.

    ``rates`` overrides the internally computed pair of complex rates
    (plus branch first); the result is invariant under negating either
    rate, which is how the square-root branch ambiguity stays harmless.
    """
    if t < 0.0:
        raise ValueError(f"t must be non-negative, got {t}")
    if rates is None:
        rates = (complex_rate(params, +1), complex_rate(params, -1))
    kid = complex(params.kappa, params.delta)
    return PropagatorPair(
        g_plus=_branch_factor(kid, rates[0], t),
        g_minus=_branch_factor(kid, rates[1], t),
    )


def propagator_limit(params: SystemParams) -> PropagatorPair:
    """t -> infinity limit of the propagator pair.

    Each branch factor decays to zero unless its decay channel is shut
    off entirely (1 +- theta == 0), in which case it is identically 1:
    at theta = 1 the antisymmetric combination is decoherence-free, at
    theta = -1 the symmetric one.
    """
    g_plus = 1.0 + 0j if (1.0 + params.theta) == 0.0 else 0j
    g_minus = 1.0 + 0j if (1.0 - params.theta) == 0.0 else 0j
    return PropagatorPair(g_plus=g_plus, g_minus=g_minus)


def apply_propagator(pair: PropagatorPair, amp: AmplitudeVector) -> AmplitudeVector:
    """Mix the excited-state amplitudes with q1/q2; the ground amplitude is frozen."""
    q1, q2 = pair.q1, pair.q2
    return AmplitudeVector(
        d_a=q1 * amp.d_a + q2 * amp.d_b,
        d_b=q2 * amp.d_a + q1 * amp.d_b,
        d_c=amp.d_c,
    )


def evolve_amplitudes(initial: AmplitudeVector, params: SystemParams, t: float) -> AmplitudeVector:
    """Closed-form amplitudes at time ``t`` for the given initial amplitudes.

    Accepts sub-normalised inputs unchanged (the evolution is linear),
    which is exactly what the measurement protocol needs.
    """
    return apply_propagator(propagator(params, t), initial)
