"""Scenario runner: coherence time series, event detection, sweeps, figures.

A scenario bundles an initial state, physical rates, measurement
strengths and a sampling grid.  Running one produces the conditioned
density matrix and its l1 coherence on that grid; event detection then
reports coherence deaths (dips below threshold), births (revivals above
the hysteresis level) and the settled long-time value.

Figure conventions: every tabulated parameter set quotes rates in units
of the cavity linewidth, i.e. kappa = 1, with gamma0 = 0.1 in the weak
coupling regime and gamma0 = 10 in the strong coupling regime.
Detunings and times are in the same units.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .coherence import l1_coherence
from .dynamics import AmplitudeVector, SystemParams
from .measurement import MeasurementStrengths, protocol_state

__all__ = [
    "Scenario",
    "ScenarioResult",
    "Birth",
    "EventReport",
    "run_scenario",
    "detect_events",
    "time_to_half",
    "SweepRow",
    "sweep",
    "write_series_csv",
    "write_sweep_csv",
    "parse_scenario_file",
    "parse_sweep_file",
    "FIGURES",
    "FigureSpec",
    "FigureCurve",
    "reproduce_figure",
    "INITIAL_STATES",
    "weak_params",
    "strong_params",
]

CSV_HEADER = "t,xi,rho11,rho22,rho33,re_rho12,im_rho12,re_rho13,im_rho13,re_rho23,im_rho23"

_KAPPA = 1.0
_WEAK_GAMMA0 = 0.1
_STRONG_GAMMA0 = 10.0
_WEAK_TMAX = 100.0
_STRONG_TMAX = 15.0
_DEFAULT_POINTS = 2000

INITIAL_STATES = {
    "maximal": AmplitudeVector(math.sqrt(0.5), math.sqrt(0.5), 0.0),
    "partial": AmplitudeVector(0.5, math.sqrt(3.0) / 2.0, 0.0),
    "excited-b": AmplitudeVector(0.0, 1.0, 0.0),
}


def weak_params(theta: float = 0.0, delta: float = 0.0) -> SystemParams:
    """Weak-coupling rates (gamma0/kappa = 0.1, kappa = 1)."""
    return SystemParams(gamma0=_WEAK_GAMMA0, kappa=_KAPPA, delta=delta, theta=theta)


def strong_params(theta: float = 0.0, delta: float = 0.0) -> SystemParams:
    """Strong-coupling rates (gamma0/kappa = 10, kappa = 1)."""
    return SystemParams(gamma0=_STRONG_GAMMA0, kappa=_KAPPA, delta=delta, theta=theta)


@dataclass(frozen=True)
class Scenario:
    """One reproducible run: initial state, rates, strengths, time grid.

    ``alpha``/``beta`` record the construction angles when the initial
    state was given that way (needed by angle sweeps); they are None for
    explicit amplitude triples.
    """

    initial: AmplitudeVector
    params: SystemParams
    strengths: MeasurementStrengths = field(default_factory=MeasurementStrengths)
    t_max: float = 10.0
    num_points: int = _DEFAULT_POINTS
    alpha: float | None = None
    beta: float | None = None

    def __post_init__(self):
        if not self.initial.is_normalized(1e-10):
            raise ValueError(
                f"initial state must be normalised, got squared norm {self.initial.norm_sq!r}"
            )
        if self.t_max <= 0.0:
            raise ValueError(f"t_max must be positive, got {self.t_max}")
        if self.num_points < 2:
            raise ValueError(f"num_points must be at least 2, got {self.num_points}")

    @classmethod
    def from_angles(
        cls,
        alpha: float,
        beta: float = 0.0,
        *,
        params: SystemParams,
        strengths: MeasurementStrengths | None = None,
        t_max: float = 10.0,
        num_points: int = _DEFAULT_POINTS,
    ) -> "Scenario":
        return cls(
            initial=AmplitudeVector.from_angles(alpha, beta),
            params=params,
            strengths=strengths or MeasurementStrengths(),
            t_max=t_max,
            num_points=num_points,
            alpha=alpha,
            beta=beta,
        )


@dataclass
class ScenarioResult:
    """Sampled protocol output: times, l1 coherence and density matrices."""

    times: np.ndarray
    coherence: np.ndarray
    rhos: np.ndarray  # shape (n, 3, 3), complex

    def __len__(self) -> int:
        return len(self.times)


def run_scenario(scenario: Scenario) -> ScenarioResult:
    """Evaluate the measurement protocol on the scenario's time grid."""
    times = np.linspace(0.0, scenario.t_max, scenario.num_points)
    rhos = np.empty((len(times), 3, 3), dtype=complex)
    xi = np.empty(len(times))
    for i, t in enumerate(times):
        rho = protocol_state(scenario.initial, scenario.params, scenario.strengths, float(t))
        rhos[i] = rho
        xi[i] = l1_coherence(rho)
    return ScenarioResult(times=times, coherence=xi, rhos=rhos)


# ----------------------------------------------------------------------
# event detection


@dataclass(frozen=True)
class Birth:
    t_birth: float
    peak_value: float
    t_peak: float


@dataclass
class EventReport:
    """Coherence deaths, births and the settled long-time value.

    A death is a completed (enter, exit) interval: the coherence dropped
    below threshold and later revived.  A terminal decay that never
    re-rises is not an event, so exit always equals the matching birth
    time.
    """

    deaths: list[tuple[float, float]]
    births: list[Birth]
    steady_value: float | None


def _refine_peak(times: np.ndarray, values: np.ndarray, i: int) -> tuple[float, float]:
    # parabola through the three samples bracketing a discrete maximum;
    # assumes a uniform grid
    if i <= 0 or i >= len(times) - 1:
        return float(times[i]), float(values[i])
    left, mid, right = values[i - 1], values[i], values[i + 1]
    curvature = left - 2.0 * mid + right
    if curvature >= 0.0:
        return float(times[i]), float(values[i])
    h = times[i] - times[i - 1]
    offset = 0.5 * (left - right) / curvature
    peak = mid - 0.125 * (left - right) ** 2 / curvature
    return float(times[i] + offset * h), float(peak)


def detect_events(
    result: ScenarioResult,
    death_threshold: float = 1e-3,
    hysteresis_factor: float = 10.0,
) -> EventReport:
    """Hysteresis detector for coherence sudden death and birth.

    A death begins when the coherence drops below ``death_threshold``
    after having been above ``hysteresis_factor * death_threshold``; it
    becomes an event only when the coherence climbs back above that
    higher level (the matching birth).  A monotone decay towards zero
    therefore reports nothing.  A series that starts below the death
    threshold (an incoherent initial state) is low from the start, so
    its first climb is a birth with no recorded death.  The steady value
    is the mean of the final 5% of samples when their relative spread is
    below 1e-3.
    """
    t = result.times
    xi = result.coherence
    high = hysteresis_factor * death_threshold

    events: list[tuple[str, int]] = []
    low = bool(xi[0] < death_threshold)
    armed = bool(xi[0] >= high)
    for i in range(1, len(xi)):
        if low:
            if xi[i] >= high:
                events.append(("birth", i))
                low = False
                armed = True
        elif xi[i] < death_threshold:
            if armed:
                events.append(("death", i))
            low = True
            armed = False

    deaths: list[tuple[float, float]] = []
    births: list[Birth] = []
    for k, (kind, i) in enumerate(events):
        if kind == "death":
            for other_kind, j in events[k + 1 :]:
                if other_kind == "birth":
                    deaths.append((float(t[i]), float(t[j])))
                    break
        else:
            stop = len(xi)
            for other_kind, j in events[k + 1 :]:
                if other_kind == "death":
                    stop = j
                    break
            segment = slice(i, stop)
            arg = i + int(np.argmax(xi[segment]))
            t_peak, peak = _refine_peak(t, xi, arg)
            births.append(Birth(t_birth=float(t[i]), peak_value=peak, t_peak=t_peak))

    tail = xi[-max(2, math.ceil(0.05 * len(xi))) :]
    mean = float(tail.mean())
    spread = float(tail.max() - tail.min())
    steady = mean if spread <= 1e-3 * max(abs(mean), 1e-12) else None
    return EventReport(deaths=deaths, births=births, steady_value=steady)


def time_to_half(result: ScenarioResult) -> float | None:
    """First time the coherence falls to half its initial value (interpolated)."""
    xi = result.coherence
    if xi[0] <= 0.0:
        return None
    target = 0.5 * xi[0]
    for i in range(1, len(xi)):
        if xi[i] <= target:
            t0, t1 = result.times[i - 1], result.times[i]
            y0, y1 = xi[i - 1], xi[i]
            if y1 == y0:
                return float(t1)
            return float(t0 + (target - y0) * (t1 - t0) / (y1 - y0))
    return None


# ----------------------------------------------------------------------
# parameter sweeps

_SWEEP_AXES = (
    "alpha",
    "beta",
    "gamma0",
    "gamma0_over_kappa",
    "kappa",
    "delta",
    "theta",
    "p",
    "q",
    "p_r",
    "q_r",
)


@dataclass
class SweepRow:
    values: dict[str, float]
    steady_value: float | None
    first_peak: float | None
    death_count: int
    t_half: float | None


def _scenario_with(base: Scenario, assignments: dict[str, float]) -> Scenario:
    params = {
        "gamma0": base.params.gamma0,
        "kappa": base.params.kappa,
        "delta": base.params.delta,
        "theta": base.params.theta,
    }
    strengths = {
        "p": base.strengths.p,
        "q": base.strengths.q,
        "p_r": base.strengths.p_r,
        "q_r": base.strengths.q_r,
    }
    for key in ("kappa", "delta", "theta"):
        if key in assignments:
            params[key] = assignments[key]
    if "gamma0" in assignments:
        params["gamma0"] = assignments["gamma0"]
    if "gamma0_over_kappa" in assignments:
        params["gamma0"] = assignments["gamma0_over_kappa"] * params["kappa"]
    # the bare weak/reversing strengths follow the symmetric convention
    # unless the q-type strength is pinned explicitly
    if "p" in assignments:
        strengths["p"] = assignments["p"]
        if "q" not in assignments:
            strengths["q"] = assignments["p"]
    if "q" in assignments:
        strengths["q"] = assignments["q"]
    if "p_r" in assignments:
        strengths["p_r"] = assignments["p_r"]
        if "q_r" not in assignments:
            strengths["q_r"] = assignments["p_r"]
    if "q_r" in assignments:
        strengths["q_r"] = assignments["q_r"]

    alpha, beta = base.alpha, base.beta
    initial = base.initial
    if "alpha" in assignments or "beta" in assignments:
        if "alpha" in assignments:
            alpha = assignments["alpha"]
        if "beta" in assignments:
            beta = assignments["beta"]
        if alpha is None:
            raise ValueError("sweeping beta requires an angle-form initial state")
        beta = 0.0 if beta is None else beta
        initial = AmplitudeVector.from_angles(alpha, beta)
    return Scenario(
        initial=initial,
        params=SystemParams(**params),
        strengths=MeasurementStrengths(**strengths),
        t_max=base.t_max,
        num_points=base.num_points,
        alpha=alpha,
        beta=beta,
    )


def sweep(
    base: Scenario,
    axes: dict[str, list[float]],
    death_threshold: float = 1e-3,
    hysteresis_factor: float = 10.0,
) -> list[SweepRow]:
    """Run the scenario over the cartesian product of the axis values.

    Rows come out in lexicographic order: axes sorted by name, each
    axis's values in the order given.  Every row is an independent run.
    """
    if not axes or any(len(values) == 0 for values in axes.values()):
        raise ValueError("sweep grid must have at least one axis with at least one value")
    for name in axes:
        if name not in _SWEEP_AXES:
            raise ValueError(f"unknown sweep axis {name!r}; allowed: {', '.join(_SWEEP_AXES)}")
    names = sorted(axes)
    rows = []
    for combo in itertools.product(*(axes[name] for name in names)):
        assignments = dict(zip(names, combo))
        scenario = _scenario_with(base, assignments)
        result = run_scenario(scenario)
        report = detect_events(result, death_threshold, hysteresis_factor)
        rows.append(
            SweepRow(
                values=assignments,
                steady_value=report.steady_value,
                first_peak=report.births[0].peak_value if report.births else None,
                death_count=len(report.deaths),
                t_half=time_to_half(result),
            )
        )
    return rows


# ----------------------------------------------------------------------
# CSV / script output


def _fmt(value: float) -> str:
    return format(value, ".17g")


def write_series_csv(result: ScenarioResult, path: Path | str) -> None:
    """Write one curve as CSV (LF line endings, 17 significant digits)."""
    lines = [CSV_HEADER]
    for i in range(len(result)):
        rho = result.rhos[i]
        fields = (
            result.times[i],
            result.coherence[i],
            rho[0, 0].real,
            rho[1, 1].real,
            rho[2, 2].real,
            rho[0, 1].real,
            rho[0, 1].imag,
            rho[0, 2].real,
            rho[0, 2].imag,
            rho[1, 2].real,
            rho[1, 2].imag,
        )
        lines.append(",".join(_fmt(float(v)) for v in fields))
    Path(path).write_text("\n".join(lines) + "\n", newline="\n")


def write_sweep_csv(rows: list[SweepRow], path: Path | str) -> None:
    if not rows:
        raise ValueError("no sweep rows to write")
    names = sorted(rows[0].values)
    header = names + ["steady_value", "first_peak", "death_count", "t_half"]
    lines = [",".join(header)]
    for row in rows:
        # axis values are user-supplied; the shortest round-trip form reads best
        fields = [repr(row.values[name]) for name in names]
        for metric in (row.steady_value, row.first_peak):
            fields.append("" if metric is None else _fmt(metric))
        fields.append(str(row.death_count))
        fields.append("" if row.t_half is None else _fmt(row.t_half))
        lines.append(",".join(fields))
    Path(path).write_text("\n".join(lines) + "\n", newline="\n")


# ----------------------------------------------------------------------
# scenario / sweep files (flat "key = value" text)

_SCENARIO_KEYS = {
    "alpha",
    "beta",
    "d_a",
    "d_b",
    "d_c",
    "gamma0",
    "kappa",
    "delta",
    "theta",
    "p",
    "q",
    "p_r",
    "q_r",
    "t_max",
    "num_points",
}


def _parse_kv_text(text: str) -> dict[str, str]:
    values: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key in values:
            raise ValueError(f"line {lineno}: duplicate key {key!r}")
        values[key] = value
    return values


def _build_scenario(values: dict[str, str], allow_axes: bool):
    axes: dict[str, list[float]] = {}
    scalars: dict[str, str] = {}
    for key, value in values.items():
        if key not in _SCENARIO_KEYS and not (allow_axes and key == "gamma0_over_kappa"):
            raise ValueError(f"unknown key {key!r}")
        if "," in value:
            if not allow_axes:
                raise ValueError(f"key {key!r} has a value list; lists are only valid in sweeps")
            if key not in _SWEEP_AXES:
                raise ValueError(f"key {key!r} cannot be swept")
            axes[key] = [float(part) for part in value.split(",")]
            scalars[key] = value.split(",")[0].strip()
        else:
            scalars[key] = value

    def get_float(key: str, default: float | None = None) -> float:
        if key in scalars:
            return float(scalars[key])
        if default is None:
            raise ValueError(f"missing required key {key!r}")
        return default

    angle_form = "alpha" in scalars
    triple_form = any(k in scalars for k in ("d_a", "d_b", "d_c"))
    if angle_form and triple_form:
        raise ValueError("give either alpha/beta or d_a/d_b/d_c, not both")
    if not angle_form and not triple_form:
        raise ValueError("missing initial state: give alpha (and optional beta) or d_a/d_b/d_c")

    params = SystemParams(
        gamma0=get_float("gamma0"),
        kappa=get_float("kappa"),
        delta=get_float("delta", 0.0),
        theta=get_float("theta", 0.0),
    )
    p = get_float("p", 0.0)
    p_r = get_float("p_r", 0.0)
    strengths = MeasurementStrengths(
        p=p, q=get_float("q", p), p_r=p_r, q_r=get_float("q_r", p_r)
    )
    t_max = get_float("t_max")
    num_points = int(scalars.get("num_points", _DEFAULT_POINTS))

    if angle_form:
        scenario = Scenario.from_angles(
            get_float("alpha"),
            get_float("beta", 0.0),
            params=params,
            strengths=strengths,
            t_max=t_max,
            num_points=num_points,
        )
    else:
        initial = AmplitudeVector(
            complex(scalars.get("d_a", "0").replace(" ", "")),
            complex(scalars.get("d_b", "0").replace(" ", "")),
            complex(scalars.get("d_c", "0").replace(" ", "")),
        )
        scenario = Scenario(
            initial=initial,
            params=params,
            strengths=strengths,
            t_max=t_max,
            num_points=num_points,
        )
    if allow_axes and (("alpha" in axes or "beta" in axes) and scenario.alpha is None):
        raise ValueError("sweeping alpha/beta requires an angle-form initial state")
    return scenario, axes


def parse_scenario_file(path: Path | str) -> Scenario:
    """Read one scenario from a flat key = value text file.

    Keys: alpha/beta (radians) or d_a/d_b/d_c (complex literals like
    0.5+0.1j), gamma0, kappa, delta, theta, p, q, p_r, q_r, t_max,
    num_points.  q and q_r default to p and p_r; '#' starts a comment.
    """
    scenario, _ = _build_scenario(_parse_kv_text(Path(path).read_text()), allow_axes=False)
    return scenario


def parse_sweep_file(path: Path | str) -> tuple[Scenario, dict[str, list[float]]]:
    """Read a base scenario plus swept axes (comma-separated value lists)."""
    scenario, axes = _build_scenario(_parse_kv_text(Path(path).read_text()), allow_axes=True)
    if not axes:
        raise ValueError("sweep file has no axis with a comma-separated value list")
    return scenario, axes


# ----------------------------------------------------------------------
# figure reproduction


@dataclass(frozen=True)
class FigureCurve:
    label: str
    scenario: Scenario


@dataclass(frozen=True)
class FigureSpec:
    fig_id: str
    description: str
    curves: tuple[FigureCurve, ...]


def _panel_scenario(column: str, initial_name: str, theta, delta, p, p_r) -> Scenario:
    params_fn = weak_params if column == "weak" else strong_params
    t_max = _WEAK_TMAX if column == "weak" else _STRONG_TMAX
    return Scenario(
        initial=INITIAL_STATES[initial_name],
        params=params_fn(theta=theta, delta=delta),
        strengths=MeasurementStrengths.symmetric(p=p, p_r=p_r),
        t_max=t_max,
        num_points=_DEFAULT_POINTS,
    )


def _build_figures() -> dict[str, FigureSpec]:
    figures: dict[str, FigureSpec] = {}

    # initial-state phase maps (strong coupling, no interference, no measurement)
    beta_slices = tuple(
        FigureCurve(
            label=f"beta={k / 8:g}pi",
            scenario=Scenario.from_angles(
                math.pi / 4,
                k * math.pi / 8,
                params=strong_params(),
                t_max=_STRONG_TMAX,
            ),
        )
        for k in range(9)
    )
    figures["2a"] = FigureSpec(
        "2a", "coherence vs (beta, t) at alpha = pi/4; flat along beta", beta_slices
    )
    alpha_slices = tuple(
        FigureCurve(
            label=f"alpha={k / 8:g}pi",
            scenario=Scenario.from_angles(
                k * math.pi / 8,
                0.0,
                params=strong_params(),
                t_max=_STRONG_TMAX,
            ),
        )
        for k in range(9)
    )
    figures["2b"] = FigureSpec(
        "2b", "coherence vs (alpha, t) at beta = 0; period pi in alpha", alpha_slices
    )

    rows = (("a", "b", "maximal"), ("c", "d", "partial"), ("e", "f", "excited-b"))

    def add_family(number, varied, values, fixed):
        # per-panel interference: figures 4-6 use theta = 0 on the
        # maximal-coherent row and theta = 1 elsewhere
        for weak_letter, strong_letter, initial_name in rows:
            for letter, column in ((weak_letter, "weak"), (strong_letter, "strong")):
                curves = []
                for value in values:
                    settings = dict(fixed)
                    if settings.get("theta") == "per-row":
                        settings["theta"] = 0.0 if initial_name == "maximal" else 1.0
                    settings[varied] = value
                    curves.append(
                        FigureCurve(
                            label=f"{varied}={value:g}",
                            scenario=_panel_scenario(column, initial_name, **settings),
                        )
                    )
                fig_id = f"{number}{letter}"
                figures[fig_id] = FigureSpec(
                    fig_id,
                    f"{initial_name} initial state, {column} coupling, varying {varied}",
                    tuple(curves),
                )

    add_family("3", "theta", (0.0, 0.3, 0.7, 1.0), dict(delta=0.0, p=0.0, p_r=0.0))
    add_family("4", "p", (0.0, 0.2, 0.5, 0.9), dict(theta="per-row", delta=0.0, p_r=0.0))
    add_family("5", "p_r", (0.0, 0.2, 0.5, 0.9), dict(theta="per-row", delta=0.0, p=0.0))
    add_family("6", "delta", (0.0, 5.0, 10.0, 20.0), dict(theta="per-row", p=0.0, p_r=0.9))
    return figures


FIGURES = _build_figures()


def _slug(label: str) -> str:
    return label.replace("=", "_").replace(".", "p").replace("/", "-")


def _plot_script(fig_id: str, entries: list[tuple[str, str]]) -> str:
    lines = [
        f"# gnuplot script for figure {fig_id}; render with: gnuplot fig{fig_id}.gp",
        'set datafile separator ","',
        'set xlabel "t  [1/kappa]"',
        'set ylabel "l1-norm coherence"',
        "set key top right",
        "set terminal pngcairo size 960,640",
        f'set output "fig{fig_id}.png"',
    ]
    parts = [
        f'"{name}" skip 1 using 1:2 with lines title "{label}"' for name, label in entries
    ]
    lines.append("plot \\")
    lines.append(", \\\n".join("  " + part for part in parts))
    return "\n".join(lines) + "\n"


def reproduce_figure(fig_id: str, out_dir: Path | str = ".") -> list[Path]:
    """Write one CSV per curve of the requested figure plus a gnuplot script.

    Returns the written paths (curves first, script last).
    """
    if fig_id not in FIGURES:
        known = ", ".join(sorted(FIGURES))
        raise ValueError(f"unknown figure id {fig_id!r}; known ids: {known}")
    spec = FIGURES[fig_id]
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []
    entries: list[tuple[str, str]] = []
    for curve in spec.curves:
        name = f"fig{fig_id}_{_slug(curve.label)}.csv"
        write_series_csv(run_scenario(curve.scenario), out / name)
        written.append(out / name)
        entries.append((name, curve.label))
    script = out / f"fig{fig_id}.gp"
    script.write_text(_plot_script(fig_id, entries), newline="\n")
    written.append(script)
    return written
