"""Independent numerical integration of the memory-kernel amplitude equation.

Everything in :mod:`vatom.dynamics` is a closed-form claim; this module
checks those claims by integrating the underlying Volterra equation

    dD_m/dt = - sum_n  integral_0^t f_mn(t - t') D_n(t') dt',   m, n in {A, B}

with two schemes that share no code with the closed form:

``rk4-auxiliary``
    The kernel is a single exponential, so the history integral
    F_m(t) = integral_0^t exp(-(kappa + i delta)(t - t')) D_m(t') dt'
    satisfies a local ODE.  The resulting 4-component linear system
    (D_A, D_B, F_A, F_B) is stepped with classical fixed-step RK4.

``trapezoid-volterra``
    Direct history-summation quadrature of the integral with composite
    trapezoidal weights and an implicit trapezoidal update, O(N^2).  It
    never uses the auxiliary-variable reduction, so it also checks the
    integral form itself.

The ground amplitude never appears in the kernel equation and is held
constant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dynamics import AmplitudeVector, SystemParams, evolve_amplitudes

__all__ = [
    "METHOD_RK4",
    "METHOD_TRAPEZOID",
    "OracleConfig",
    "AmplitudeSeries",
    "OracleComparison",
    "oracle_integrate",
    "compare_closed_form",
    "verification_cases",
]

METHOD_RK4 = "rk4-auxiliary"
METHOD_TRAPEZOID = "trapezoid-volterra"

# At most this many samples are stored per trajectory; the integrator
# substeps between them.
_MAX_SAMPLES = 2000


@dataclass(frozen=True)
class OracleConfig:
    """Fixed-step integration settings.

    Fixed steps (rather than an adaptive solver) keep error reports
    reproducible run to run, which matters more than speed here.
    """

    step_size: float
    max_time: float
    method: str = METHOD_RK4

    def __post_init__(self):
        if self.step_size <= 0.0:
            raise ValueError(f"step_size must be positive, got {self.step_size}")
        if self.max_time <= 0.0:
            raise ValueError(f"max_time must be positive, got {self.max_time}")
        if self.method not in (METHOD_RK4, METHOD_TRAPEZOID):
            raise ValueError(f"unknown method {self.method!r}")

    @staticmethod
    def default_step(params: SystemParams, method: str = METHOD_RK4) -> float:
        """Step that resolves the fastest rate/oscillation with a wide margin."""
        scale = max(params.gamma0, params.kappa, abs(params.delta), 1.0)
        return (0.01 if method == METHOD_RK4 else 0.02) / scale

    @classmethod
    def for_params(
        cls, params: SystemParams, max_time: float, method: str = METHOD_RK4
    ) -> "OracleConfig":
        return cls(step_size=cls.default_step(params, method), max_time=max_time, method=method)


@dataclass
class AmplitudeSeries:
    """Sampled trajectory: strictly increasing times starting at 0."""

    times: np.ndarray
    d_a: np.ndarray
    d_b: np.ndarray
    d_c: np.ndarray

    def __len__(self) -> int:
        return len(self.times)

    def amplitude(self, i: int) -> AmplitudeVector:
        return AmplitudeVector(self.d_a[i], self.d_b[i], self.d_c[i])


@dataclass(frozen=True)
class OracleComparison:
    """Worst disagreement between the closed form and one integration method."""

    method: str
    max_abs_error: float
    worst_time: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.max_abs_error <= self.tolerance


def _sample_stride(n_steps: int) -> int:
    return max(1, -(-n_steps // _MAX_SAMPLES))  # ceil division


def _check_finite(value: complex, t: float) -> None:
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        raise RuntimeError(
            f"integration produced a non-finite amplitude at t = {t:g}; "
            "the step size is too large for these parameters"
        )


def _integrate_rk4(initial: AmplitudeVector, params: SystemParams, cfg: OracleConfig):
    h = cfg.step_size
    n_steps = max(1, math.ceil(cfg.max_time / h - 1e-9))
    stride = _sample_stride(n_steps)
    c = -0.5 * params.gamma0 * params.kappa
    m = complex(-params.kappa, -params.delta)
    th = params.theta

    d_a, d_b = initial.d_a, initial.d_b
    f_a = f_b = 0j
    times = [0.0]
    out_a = [d_a]
    out_b = [d_b]
    for i in range(n_steps):
        k1a = c * (f_a + th * f_b)
        k1b = c * (th * f_a + f_b)
        k1fa = d_a + m * f_a
        k1fb = d_b + m * f_b

        a2 = d_a + 0.5 * h * k1a
        b2 = d_b + 0.5 * h * k1b
        fa2 = f_a + 0.5 * h * k1fa
        fb2 = f_b + 0.5 * h * k1fb
        k2a = c * (fa2 + th * fb2)
        k2b = c * (th * fa2 + fb2)
        k2fa = a2 + m * fa2
        k2fb = b2 + m * fb2

        a3 = d_a + 0.5 * h * k2a
        b3 = d_b + 0.5 * h * k2b
        fa3 = f_a + 0.5 * h * k2fa
        fb3 = f_b + 0.5 * h * k2fb
        k3a = c * (fa3 + th * fb3)
        k3b = c * (th * fa3 + fb3)
        k3fa = a3 + m * fa3
        k3fb = b3 + m * fb3

        a4 = d_a + h * k3a
        b4 = d_b + h * k3b
        fa4 = f_a + h * k3fa
        fb4 = f_b + h * k3fb
        k4a = c * (fa4 + th * fb4)
        k4b = c * (th * fa4 + fb4)
        k4fa = a4 + m * fa4
        k4fb = b4 + m * fb4

        sixth = h / 6.0
        d_a += sixth * (k1a + 2.0 * (k2a + k3a) + k4a)
        d_b += sixth * (k1b + 2.0 * (k2b + k3b) + k4b)
        f_a += sixth * (k1fa + 2.0 * (k2fa + k3fa) + k4fa)
        f_b += sixth * (k1fb + 2.0 * (k2fb + k3fb) + k4fb)

        step = i + 1
        if step % stride == 0 or step == n_steps:
            t = step * h
            _check_finite(d_a, t)
            _check_finite(d_b, t)
            times.append(t)
            out_a.append(d_a)
            out_b.append(d_b)
    return times, out_a, out_b


def _integrate_trapezoid(initial: AmplitudeVector, params: SystemParams, cfg: OracleConfig):
    h = cfg.step_size
    n_steps = max(1, math.ceil(cfg.max_time / h - 1e-9))
    stride = _sample_stride(n_steps)
    c = 0.5 * params.gamma0 * params.kappa
    th = params.theta

    # kernel phases on the step lattice: f(j h) = c * phases[j]
    phases = np.exp(complex(-params.kappa, -params.delta) * h * np.arange(n_steps + 1))

    d = np.zeros((n_steps + 1, 2), dtype=complex)
    d[0] = (initial.d_a, initial.d_b)
    # channel mixing [[1, th], [th, 1]] applied to the history once, so each
    # step only needs plain dot products against the kernel phases
    mixed = np.zeros((n_steps + 1, 2), dtype=complex)
    mixed[0] = (d[0, 0] + th * d[0, 1], th * d[0, 0] + d[0, 1])

    # implicit trapezoidal update: the new point appears inside its own
    # history integral with weight h/2, giving a constant 2x2 system
    lhs = np.eye(2, dtype=complex) + (h * h / 4.0) * c * np.array([[1.0, th], [th, 1.0]])
    lhs_inv = np.linalg.inv(lhs)

    deriv = np.zeros(2, dtype=complex)  # the integral term at the current node
    times = [0.0]
    out = [d[0].copy()]
    for n in range(n_steps):
        # trapezoid weights over history nodes 0..n evaluated at t_{n+1}
        partial = 0.5 * phases[n + 1] * mixed[0]
        if n >= 1:
            partial = partial + phases[1 : n + 1][::-1] @ mixed[1 : n + 1]
        future = -c * h * partial
        rhs = d[n] + 0.5 * h * (deriv + future)
        d[n + 1] = lhs_inv @ rhs
        mixed[n + 1] = (d[n + 1, 0] + th * d[n + 1, 1], th * d[n + 1, 0] + d[n + 1, 1])
        deriv = future - c * (h / 2.0) * mixed[n + 1]

        step = n + 1
        if step % stride == 0 or step == n_steps:
            t = step * h
            _check_finite(complex(d[step, 0]), t)
            _check_finite(complex(d[step, 1]), t)
            times.append(t)
            out.append(d[step].copy())
    return times, [row[0] for row in out], [row[1] for row in out]


def oracle_integrate(
    initial: AmplitudeVector, params: SystemParams, cfg: OracleConfig
) -> AmplitudeSeries:
    """Integrate the memory-kernel equation; returns a sampled trajectory.

    Parameters
    ----------
    initial : AmplitudeVector
        state at t = 0 (may be sub-normalised)
    params : SystemParams
        physical rates
    cfg : OracleConfig
        step size, horizon and method

    Returns
    -------
    AmplitudeSeries
        amplitudes on a grid of at most ~2000 sample times including 0
        and the final time; d_c is constant by construction.
    """
    if cfg.method == METHOD_RK4:
        times, out_a, out_b = _integrate_rk4(initial, params, cfg)
    else:
        times, out_a, out_b = _integrate_trapezoid(initial, params, cfg)
    n = len(times)
    return AmplitudeSeries(
        times=np.asarray(times),
        d_a=np.asarray(out_a, dtype=complex),
        d_b=np.asarray(out_b, dtype=complex),
        d_c=np.full(n, complex(initial.d_c)),
    )


def compare_closed_form(
    initial: AmplitudeVector,
    params: SystemParams,
    cfg: OracleConfig,
    tolerance: float = 1e-6,
) -> OracleComparison:
    """Max |closed form - integrated| over the sampled grid, A and B components."""
    series = oracle_integrate(initial, params, cfg)
    worst = 0.0
    worst_time = 0.0
    for i, t in enumerate(series.times):
        exact = evolve_amplitudes(initial, params, float(t))
        err = max(abs(series.d_a[i] - exact.d_a), abs(series.d_b[i] - exact.d_b))
        if err > worst:
            worst = err
            worst_time = float(t)
    return OracleComparison(
        method=cfg.method, max_abs_error=worst, worst_time=worst_time, tolerance=tolerance
    )


def verification_cases() -> list[tuple[str, AmplitudeVector, SystemParams, float]]:
    """The standard closed-form-vs-oracle grid: (label, initial, params, horizon).

    Two coupling regimes (weak: kappa = 1, gamma0 = 0.1, horizon 100;
    strong: gamma0 = 1, kappa = 0.1, horizon 10) crossed with four
    detunings, three interference values and three initial states.
    """
    s = math.sqrt(0.5)
    initials = [
        ("maximal", AmplitudeVector(s, s, 0.0)),
        ("partial", AmplitudeVector(0.5, math.sqrt(3.0) / 2.0, 0.0)),
        ("excited-b", AmplitudeVector(0.0, 1.0, 0.0)),
    ]
    regimes = [
        ("weak", 0.1, 1.0, 100.0),
        ("strong", 1.0, 0.1, 10.0),
    ]
    cases = []
    for regime, gamma0, kappa, horizon in regimes:
        for delta in (0.0, 5.0, 10.0, 20.0):
            for theta in (0.0, 0.5, 1.0):
                params = SystemParams(gamma0=gamma0, kappa=kappa, delta=delta, theta=theta)
                for name, initial in initials:
                    label = f"{regime} delta={delta:g} theta={theta:g} {name}"
                    cases.append((label, initial, params, horizon))
    return cases
