import math

import numpy as np
import pytest

from vatom.dynamics import AmplitudeVector
from vatom.measurement import MeasurementStrengths
from vatom.scenarios import (
    CSV_HEADER,
    FIGURES,
    INITIAL_STATES,
    Scenario,
    ScenarioResult,
    detect_events,
    parse_scenario_file,
    parse_sweep_file,
    reproduce_figure,
    run_scenario,
    strong_params,
    sweep,
    time_to_half,
    weak_params,
    write_series_csv,
    write_sweep_csv,
)

SQ3 = math.sqrt(3.0)


def figure_curve(fig_id, label):
    for curve in FIGURES[fig_id].curves:
        if curve.label == label:
            return curve
    raise KeyError(label)


class TestScenarioValidation:
    def test_rejects_unnormalised_initial(self):
        with pytest.raises(ValueError, match="normalised"):
            Scenario(
                initial=AmplitudeVector(0.5, 0.5, 0.0),
                params=weak_params(),
                t_max=10.0,
            )

    def test_rejects_tiny_grid(self):
        with pytest.raises(ValueError, match="num_points"):
            Scenario(
                initial=INITIAL_STATES["maximal"],
                params=weak_params(),
                t_max=10.0,
                num_points=1,
            )

    def test_rejects_nonpositive_horizon(self):
        with pytest.raises(ValueError, match="t_max"):
            Scenario(initial=INITIAL_STATES["maximal"], params=weak_params(), t_max=0.0)


class TestRunScenario:
    def test_series_shape_and_start(self):
        s = Scenario(
            initial=INITIAL_STATES["maximal"], params=weak_params(), t_max=5.0, num_points=64
        )
        result = run_scenario(s)
        assert len(result) == 64
        assert result.times[0] == 0.0 and result.times[-1] == pytest.approx(5.0)
        assert result.coherence[0] == pytest.approx(1.0, abs=1e-12)

    def test_phase_independence_without_interference(self):
        base = None
        for beta in (0.0, math.pi / 4, math.pi / 2, math.pi):
            s = Scenario.from_angles(
                math.pi / 4, beta, params=strong_params(), t_max=10.0, num_points=400
            )
            xi = run_scenario(s).coherence
            if base is None:
                base = xi
            else:
                assert np.max(np.abs(xi - base)) < 1e-12

    def test_pure_excited_a_has_no_coherence(self):
        s = Scenario.from_angles(
            math.pi / 2, 0.0, params=strong_params(), t_max=10.0, num_points=256
        )
        assert np.max(run_scenario(s).coherence) < 1e-12

    def test_coherence_scales_with_sin_two_alpha(self):
        reference = run_scenario(
            Scenario.from_angles(
                math.pi / 4, 0.0, params=strong_params(), t_max=10.0, num_points=128
            )
        ).coherence
        for alpha in (math.pi / 12, math.pi / 8, math.pi / 6, 3 * math.pi / 8):
            xi = run_scenario(
                Scenario.from_angles(
                    alpha, 0.0, params=strong_params(), t_max=10.0, num_points=128
                )
            ).coherence
            scale = abs(math.sin(2 * alpha))
            assert np.max(np.abs(xi - scale * reference)) < 1e-10

    def test_incoherent_state_builds_up_to_half(self):
        s = Scenario(
            initial=INITIAL_STATES["excited-b"],
            params=weak_params(theta=1.0),
            t_max=100.0,
        )
        result = run_scenario(s)
        assert result.coherence[0] == 0.0
        assert result.coherence[-1] == pytest.approx(0.5, abs=1e-3)


class TestDetectEvents:
    @staticmethod
    def synthetic(values):
        values = np.asarray(values, dtype=float)
        times = np.linspace(0.0, 1.0, len(values))
        n = len(values)
        return ScenarioResult(times=times, coherence=values, rhos=np.zeros((n, 3, 3), complex))

    def test_constant_zero_has_no_events_and_zero_steady(self):
        report = detect_events(self.synthetic(np.zeros(100)))
        assert report.deaths == [] and report.births == []
        assert report.steady_value == 0.0

    def test_terminal_decay_is_not_an_event(self):
        values = np.exp(-np.linspace(0.0, 20.0, 400))
        report = detect_events(self.synthetic(values))
        assert report.deaths == [] and report.births == []

    def test_dip_and_revival_is_one_death_one_birth(self):
        t = np.linspace(0.0, 1.0, 501)
        values = np.abs(np.cos(2 * math.pi * t)) * np.where(t < 0.8, 1.0, 0.0)
        report = detect_events(self.synthetic(values))
        # two full dips while alive, then the terminal cutoff is silent
        assert len(report.deaths) == 2
        assert len(report.births) == 2
        enter, exit_ = report.deaths[0]
        assert enter < exit_ == report.births[0].t_birth

    def test_strong_coupling_revivals(self):
        result = run_scenario(figure_curve("3b", "theta=1").scenario)
        report = detect_events(result)
        assert len(report.births) == 4
        first = report.births[0]
        assert first.peak_value == pytest.approx(0.3656, abs=2e-3)
        assert first.t_peak == pytest.approx(1.006, abs=5e-3)
        assert report.deaths[0][0] < first.t_birth <= first.t_peak
        assert report.steady_value is None

    def test_steady_value_of_settling_curve(self):
        result = run_scenario(figure_curve("5e", "p_r=0.9").scenario)
        report = detect_events(result)
        assert report.steady_value == pytest.approx(10 / 11, abs=1e-3)


class TestTimeToHalf:
    def test_exponential_half_time(self):
        t = np.linspace(0.0, 1.0, 2001)
        values = np.exp(-t / 0.2)
        n = len(t)
        result = ScenarioResult(times=t, coherence=values, rhos=np.zeros((n, 3, 3), complex))
        assert time_to_half(result) == pytest.approx(0.2 * math.log(2.0), abs=1e-5)

    def test_none_for_zero_start(self):
        result = TestDetectEvents.synthetic(np.zeros(10))
        assert time_to_half(result) is None

    def test_none_when_never_crossing(self):
        result = TestDetectEvents.synthetic(np.ones(10))
        assert time_to_half(result) is None


class TestSweep:
    BASE = Scenario(
        initial=INITIAL_STATES["maximal"],
        params=weak_params(),
        t_max=100.0,
        num_points=1000,
    )

    def test_rejects_empty_grid(self):
        with pytest.raises(ValueError):
            sweep(self.BASE, {})
        with pytest.raises(ValueError):
            sweep(self.BASE, {"theta": []})

    def test_rejects_unknown_axis(self):
        with pytest.raises(ValueError, match="unknown sweep axis"):
            sweep(self.BASE, {"flux": [1.0]})

    def test_singleton_matches_direct_run(self):
        rows = sweep(self.BASE, {"theta": [1.0]})
        assert len(rows) == 1
        direct = run_scenario(
            Scenario(
                initial=self.BASE.initial,
                params=weak_params(theta=1.0),
                t_max=100.0,
                num_points=1000,
            )
        )
        assert rows[0].t_half == pytest.approx(time_to_half(direct))
        assert rows[0].values == {"theta": 1.0}

    def test_rows_in_lexicographic_axis_order(self):
        rows = sweep(self.BASE, {"theta": [0.0, 1.0], "delta": [0.0, 5.0]}, 1e-3)
        combos = [(r.values["delta"], r.values["theta"]) for r in rows]
        assert combos == [(0.0, 0.0), (0.0, 1.0), (5.0, 0.0), (5.0, 1.0)]

    def test_interference_speeds_up_decay(self):
        rows = sweep(self.BASE, {"theta": [0.0, 0.3, 0.7, 1.0]})
        halves = [row.t_half for row in rows]
        assert all(h is not None for h in halves)
        assert all(b < a for a, b in zip(halves, halves[1:]))

    def test_reversal_strength_raises_steady_value(self):
        base = Scenario(
            initial=INITIAL_STATES["excited-b"],
            params=weak_params(theta=1.0),
            t_max=100.0,
            num_points=1000,
        )
        rows = sweep(base, {"p_r": [0.0, 0.2, 0.5, 0.9]})
        steadies = [row.steady_value for row in rows]
        assert all(s is not None for s in steadies)
        assert all(b > a for a, b in zip(steadies, steadies[1:]))
        # closed-form limit 1 / (2 - p_r)
        for row, p_r in zip(rows, (0.0, 0.2, 0.5, 0.9)):
            assert row.steady_value == pytest.approx(1.0 / (2.0 - p_r), abs=1e-3)

    def test_symmetric_strength_convention(self):
        rows = sweep(self.BASE, {"p": [0.5]})
        assert rows[0].values == {"p": 0.5}
        # q follows p unless pinned separately
        scenario = None
        from vatom.scenarios import _scenario_with

        scenario = _scenario_with(self.BASE, {"p": 0.5})
        assert scenario.strengths.q == 0.5
        scenario = _scenario_with(self.BASE, {"p": 0.5, "q": 0.1})
        assert scenario.strengths.q == 0.1

    def test_ratio_axis_sets_gamma0(self):
        from vatom.scenarios import _scenario_with

        scenario = _scenario_with(self.BASE, {"gamma0_over_kappa": 10.0})
        assert scenario.params.gamma0 == pytest.approx(10.0)

    def test_angle_axis_requires_angle_form(self):
        with pytest.raises(ValueError, match="angle-form"):
            sweep(self.BASE, {"beta": [0.0, 1.0]})


class TestCsvOutput:
    def test_header_and_determinism(self, tmp_path):
        s = Scenario(
            initial=INITIAL_STATES["partial"],
            params=strong_params(theta=1.0, delta=20.0),
            strengths=MeasurementStrengths.symmetric(p_r=0.9),
            t_max=5.0,
            num_points=50,
        )
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        write_series_csv(run_scenario(s), a)
        write_series_csv(run_scenario(s), b)
        assert a.read_bytes() == b.read_bytes()
        lines = a.read_text().splitlines()
        assert lines[0] == CSV_HEADER
        assert len(lines) == 51
        assert b"\r" not in a.read_bytes()

    def test_sweep_csv(self, tmp_path):
        base = Scenario(
            initial=INITIAL_STATES["maximal"],
            params=weak_params(),
            t_max=50.0,
            num_points=500,
        )
        rows = sweep(base, {"theta": [0.0, 1.0]})
        out = tmp_path / "sweep.csv"
        write_sweep_csv(rows, out)
        lines = out.read_text().splitlines()
        assert lines[0] == "theta,steady_value,first_peak,death_count,t_half"
        assert len(lines) == 3


class TestScenarioFiles:
    def test_parse_angle_form(self, tmp_path):
        text = """
        # incoherent initial state, strong reversal
        alpha = 1.5707963267948966
        gamma0 = 0.1
        kappa = 1
        theta = 1
        p_r = 0.9
        t_max = 100
        num_points = 500
        """
        path = tmp_path / "s.txt"
        path.write_text(text)
        s = parse_scenario_file(path)
        assert s.params.theta == 1.0
        assert s.strengths.p_r == 0.9 and s.strengths.q_r == 0.9  # q_r follows p_r
        assert s.initial.d_b == pytest.approx(1.0)
        assert s.num_points == 500

    def test_parse_explicit_triple(self, tmp_path):
        path = tmp_path / "s.txt"
        path.write_text(
            "d_a = 0.5\nd_b = 0.5+0.5j\nd_c = 0.5\ngamma0 = 1\nkappa = 1\nt_max = 5\n"
        )
        s = parse_scenario_file(path)
        assert s.initial.d_b == 0.5 + 0.5j
        assert s.alpha is None

    def test_rejects_unknown_key(self, tmp_path):
        path = tmp_path / "s.txt"
        path.write_text("alpha = 1\ngamma0 = 1\nkappa = 1\nt_max = 5\nflux = 2\n")
        with pytest.raises(ValueError, match="unknown key"):
            parse_scenario_file(path)

    def test_rejects_value_list_outside_sweep(self, tmp_path):
        path = tmp_path / "s.txt"
        path.write_text("alpha = 1\ngamma0 = 1\nkappa = 1\nt_max = 5\ntheta = 0, 1\n")
        with pytest.raises(ValueError, match="lists"):
            parse_scenario_file(path)

    def test_rejects_missing_initial(self, tmp_path):
        path = tmp_path / "s.txt"
        path.write_text("gamma0 = 1\nkappa = 1\nt_max = 5\n")
        with pytest.raises(ValueError, match="initial state"):
            parse_scenario_file(path)

    def test_parse_sweep_file(self, tmp_path):
        path = tmp_path / "sweep.txt"
        path.write_text(
            "alpha = 0.785398\ngamma0 = 0.1\nkappa = 1\nt_max = 50\n"
            "theta = 0, 0.3, 0.7, 1\n"
        )
        base, axes = parse_sweep_file(path)
        assert axes == {"theta": [0.0, 0.3, 0.7, 1.0]}
        assert base.params.theta == 0.0

    def test_sweep_file_requires_an_axis(self, tmp_path):
        path = tmp_path / "sweep.txt"
        path.write_text("alpha = 0.785\ngamma0 = 0.1\nkappa = 1\nt_max = 50\n")
        with pytest.raises(ValueError, match="no axis"):
            parse_sweep_file(path)


class TestFigureTable:
    def test_all_panels_present(self):
        expected = {"2a", "2b"}
        for number in "3456":
            expected.update(f"{number}{letter}" for letter in "abcdef")
        assert set(FIGURES) == expected

    def test_interference_family(self):
        spec = FIGURES["3b"]
        assert [c.label for c in spec.curves] == [
            "theta=0",
            "theta=0.3",
            "theta=0.7",
            "theta=1",
        ]
        for curve in spec.curves:
            p = curve.scenario.params
            assert p.gamma0 == 10.0 and p.kappa == 1.0 and p.delta == 0.0
            assert curve.scenario.strengths == MeasurementStrengths()
            assert curve.scenario.t_max == 15.0
        assert FIGURES["3a"].curves[0].scenario.params.gamma0 == 0.1
        assert FIGURES["3a"].curves[0].scenario.t_max == 100.0

    def test_initial_state_rows(self):
        assert FIGURES["3a"].curves[0].scenario.initial == INITIAL_STATES["maximal"]
        assert FIGURES["3c"].curves[0].scenario.initial == INITIAL_STATES["partial"]
        assert FIGURES["3e"].curves[0].scenario.initial == INITIAL_STATES["excited-b"]

    def test_weak_measurement_family(self):
        spec = FIGURES["4d"]
        assert [c.label for c in spec.curves] == ["p=0", "p=0.2", "p=0.5", "p=0.9"]
        for curve, p in zip(spec.curves, (0.0, 0.2, 0.5, 0.9)):
            s = curve.scenario.strengths
            assert s.p == p and s.q == p and s.p_r == 0.0
            assert curve.scenario.params.theta == 1.0
        # the maximal-coherent row runs without interference
        assert FIGURES["4a"].curves[0].scenario.params.theta == 0.0

    def test_reversal_family(self):
        spec = FIGURES["5e"]
        for curve, p_r in zip(spec.curves, (0.0, 0.2, 0.5, 0.9)):
            s = curve.scenario.strengths
            assert s.p == 0.0 and s.p_r == p_r and s.q_r == p_r

    def test_detuning_family(self):
        spec = FIGURES["6d"]
        assert [c.label for c in spec.curves] == [
            "delta=0",
            "delta=5",
            "delta=10",
            "delta=20",
        ]
        for curve, delta in zip(spec.curves, (0.0, 5.0, 10.0, 20.0)):
            assert curve.scenario.params.delta == delta
            assert curve.scenario.strengths.p_r == 0.9
            assert curve.scenario.params.theta == 1.0

    def test_phase_maps(self):
        assert len(FIGURES["2a"].curves) == 9
        assert FIGURES["2a"].curves[0].scenario.alpha == pytest.approx(math.pi / 4)
        assert FIGURES["2b"].curves[4].scenario.alpha == pytest.approx(math.pi / 2)


class TestReproduceFigure:
    def test_unknown_id(self, tmp_path):
        with pytest.raises(ValueError, match="unknown figure id"):
            reproduce_figure("7a", tmp_path)

    def test_detuned_partial_curve_peaks_near_quoted_maximum(self, tmp_path):
        paths = reproduce_figure("6d", tmp_path)
        csvs = [p for p in paths if p.suffix == ".csv"]
        assert len(csvs) == 4
        data = np.genfromtxt(
            tmp_path / "fig6d_delta_20.csv", delimiter=",", names=True
        )
        idx = int(np.argmax(data["xi"]))
        assert data["xi"][idx] == pytest.approx(0.98, abs=0.01)
        assert data["t"][idx] == pytest.approx(3.2, abs=0.1)
        script = (tmp_path / "fig6d.gp").read_text()
        assert "fig6d_delta_20.csv" in script

    def test_reversal_steady_value(self, tmp_path):
        reproduce_figure("5e", tmp_path)
        data = np.genfromtxt(tmp_path / "fig5e_p_r_0p9.csv", delimiter=",", names=True)
        assert data["xi"][-1] == pytest.approx(10 / 11, abs=1e-3)

    def test_phase_map_flat_along_beta(self, tmp_path):
        paths = reproduce_figure("2a", tmp_path)
        csvs = [p for p in paths if p.suffix == ".csv"]
        assert len(csvs) == 9
        reference = np.genfromtxt(csvs[0], delimiter=",", names=True)["xi"]
        for path in csvs[1:]:
            xi = np.genfromtxt(path, delimiter=",", names=True)["xi"]
            assert np.max(np.abs(xi - reference)) < 1e-12


class TestGridRefinement:
    def test_metrics_stable_under_doubling(self):
        curve = figure_curve("3b", "theta=1")
        coarse = detect_events(run_scenario(curve.scenario))
        fine_scenario = Scenario(
            initial=curve.scenario.initial,
            params=curve.scenario.params,
            strengths=curve.scenario.strengths,
            t_max=curve.scenario.t_max,
            num_points=2 * curve.scenario.num_points,
        )
        fine = detect_events(run_scenario(fine_scenario))
        assert abs(coarse.births[0].peak_value - fine.births[0].peak_value) < 1e-4

        settle = figure_curve("5e", "p_r=0.9")
        coarse_steady = detect_events(run_scenario(settle.scenario)).steady_value
        fine_steady = detect_events(
            run_scenario(
                Scenario(
                    initial=settle.scenario.initial,
                    params=settle.scenario.params,
                    strengths=settle.scenario.strengths,
                    t_max=settle.scenario.t_max,
                    num_points=2 * settle.scenario.num_points,
                )
            )
        ).steady_value
        assert abs(coarse_steady - fine_steady) < 1e-6
