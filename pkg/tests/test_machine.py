"""Full state machine: sleep/wake cycles, monitoring, re-triggering."""

import pytest

from sunwire import parse_scenario, run_simulation


def scenario_text(**overrides):
    base = {
        "name": "machine-test",
        "duration_s": 86400,
        "strategy": "sts",
    }
    base.update(overrides)
    return "\n".join(f"{k} = {v}" for k, v in base.items())


def phases_of(records):
    seq = []
    for r in records:
        if not seq or seq[-1] != r.phase:
            seq.append(r.phase)
    return seq


class TestNightOnly:
    def test_robot_never_leaves_sleep(self):
        text = scenario_text(duration_s=20000,
                             **{"envelope.sunrise_s": 50000,
                                "envelope.sunset_s": 60000})
        report, records = run_simulation(parse_scenario(text))
        assert report.trials == 0
        assert report.distance_m == 0.0
        assert phases_of(records) == ["Sleep"]
        assert all(r.event in ("measure",) for r in records)

    def test_fixed_matches_sts_at_night(self):
        kwargs = {"duration_s": 20000, "envelope.sunrise_s": 50000,
                  "envelope.sunset_s": 60000}
        rep_sts, recs_sts = run_simulation(parse_scenario(scenario_text(**kwargs)))
        rep_fix, recs_fix = run_simulation(
            parse_scenario(scenario_text(strategy="fixed", **kwargs)))
        assert rep_sts.harvested_j == rep_fix.harvested_j
        assert rep_sts.consumed_j == rep_fix.consumed_j
        assert rep_sts.net_j == rep_fix.net_j
        assert rep_sts.distance_m == rep_fix.distance_m == 0.0
        assert [r.row() for r in recs_sts] == [r.row() for r in recs_fix]


class TestSingleDay:
    def test_phase_sequence_and_coarse_first(self):
        text = scenario_text(
            **{"shadow.1.center0_m": 4.0, "shadow.1.width_m": 3.0,
               "shadow.1.penumbra_m": 1.0, "shadow.1.drift_mps": 0.0002})
        report, records = run_simulation(parse_scenario(text))
        seq = phases_of(records)
        assert seq[0] == "Sleep"
        assert seq[1] == "Searching"
        assert seq[2] == "Monitoring"
        assert seq[-1] == "Sleep"
        # Strict alternation between searches and monitoring in between.
        middle = seq[3:-1]
        for i, phase in enumerate(middle):
            assert phase == ("Searching" if i % 2 == 0 else "Monitoring")
        assert report.trial_summaries[0].dx_m == 7.8
        for t in report.trial_summaries[1:]:
            assert t.dx_m == 2.25

    def test_wake_fires_above_threshold(self):
        report, records = run_simulation(parse_scenario(scenario_text()))
        wakes = [r for r in records if r.event == "wake"]
        assert wakes and wakes[0].p_w > 0.05
        # No measurement before the wake ever exceeded the gate.
        for r in records:
            if r.t_s >= wakes[0].t_s:
                break
            if r.event == "measure":
                assert r.p_w <= 0.05

    def test_short_bright_window_runs_exactly_one_coarse_trial(self):
        # A static tent under a near-flat bright window, ending before the
        # monitored power can decay past the re-trigger margin: exactly one
        # trial, at the coarse step.
        text = "\n".join([
            "name = one-trial",
            "duration_s = 7200",
            "envelope.sunrise_s = -39600",
            "envelope.sunset_s = 46800",
            "envelope.diffuse_floor_w = 0.0",
            "shadow.1.center0_m = -24.0",
            "shadow.1.width_m = 40.0",
            "shadow.1.penumbra_m = 16.0",
            "shadow.1.opacity = 1.0",
            "shadow.2.center0_m = 48.0",
            "shadow.2.width_m = 40.0",
            "shadow.2.penumbra_m = 16.0",
            "shadow.2.opacity = 1.0",
        ])
        report, records = run_simulation(parse_scenario(text))
        trial_starts = [r for r in records if r.event == "trial_start"]
        assert len(trial_starts) == 1
        assert trial_starts[0].dx_m == 7.8
        assert report.trials == 1
        assert phases_of(records)[-1] == "Monitoring"

    def test_monitoring_cadence(self):
        report, records = run_simulation(parse_scenario(scenario_text()))
        mon = [r for r in records if r.event == "measure" and r.phase == "Monitoring"]
        gaps = [b.t_s - a.t_s for a, b in zip(mon, mon[1:])]
        # Monitor samples inside one monitoring stretch are one period apart.
        assert any(abs(g - 60.0) < 1e-6 for g in gaps)
        for g in gaps:
            assert g >= 60.0 - 1e-6


class TestRetrigger:
    def retrigger_scenario(self):
        # Bright, nearly flat envelope window; a tent peak at 12 m and an
        # opaque band drifting from 2 m toward it.
        return parse_scenario("\n".join([
            "name = retrigger-test",
            "duration_s = 14400",
            "envelope.sunrise_s = -36000",
            "envelope.sunset_s = 50400",
            "envelope.peak_power_w = 5.0",
            "envelope.diffuse_floor_w = 0.07",
            "shadow.1.center0_m = -20.0",
            "shadow.1.width_m = 40.0",
            "shadow.1.penumbra_m = 12.0",
            "shadow.1.opacity = 1.0",
            "shadow.2.center0_m = 36.0",
            "shadow.2.width_m = 40.0",
            "shadow.2.penumbra_m = 4.0",
            "shadow.2.opacity = 1.0",
            "shadow.3.center0_m = 2.0",
            "shadow.3.width_m = 3.0",
            "shadow.3.penumbra_m = 0.5",
            "shadow.3.drift_mps = 0.0015",
            "shadow.3.opacity = 1.0",
        ]))

    def test_shadow_drift_forces_retrigger(self):
        report, records = run_simulation(self.retrigger_scenario())
        retrigs = [r for r in records if r.event == "retrigger"]
        assert len(retrigs) >= 1
        assert report.trials >= 2

    def test_retrigger_fires_at_first_qualifying_sample(self):
        _, records = run_simulation(self.retrigger_scenario())
        first = next(r for r in records if r.event == "retrigger")
        for r in records:
            if r.t_s >= first.t_s:
                break
            if r.event == "measure" and r.phase == "Monitoring":
                # Launch predicate must have been false on every earlier
                # monitored sample.
                assert not (r.p_w < r.g_best_w - r.g_best_w * 0.2)
        assert first.p_w < first.g_best_w - first.g_best_w * 0.2

    def test_retriggered_trials_use_fine_step(self):
        report, _ = run_simulation(self.retrigger_scenario())
        assert report.trial_summaries[0].dx_m == 7.8
        assert all(t.dx_m == 2.25 for t in report.trial_summaries[1:])


class TestDuskAndDawn:
    def test_sleep_event_after_sunset(self):
        _, records = run_simulation(parse_scenario(scenario_text()))
        sleeps = [r for r in records if r.event == "sleep"]
        assert sleeps
        assert sleeps[-1].t_s > 64800.0 - 3600.0

    def eclipse_scenario(self, extra=""):
        # Bright flat window with a tent at 12 m; a wire-wide opaque band
        # sweeps across mid-run, dropping power below the wake gate, then
        # clears again: the machine sleeps through the eclipse and re-wakes.
        text = "\n".join([
            "name = eclipse-test",
            "duration_s = 25000",
            "envelope.sunrise_s = -36000",
            "envelope.sunset_s = 61000",
            "envelope.peak_power_w = 5.0",
            "envelope.diffuse_floor_w = 0.0",
            "shadow.1.center0_m = -20.0",
            "shadow.1.width_m = 40.0",
            "shadow.1.penumbra_m = 12.0",
            "shadow.1.opacity = 1.0",
            "shadow.2.center0_m = 36.0",
            "shadow.2.width_m = 40.0",
            "shadow.2.penumbra_m = 4.0",
            "shadow.2.opacity = 1.0",
            "shadow.3.center0_m = -25.0",
            "shadow.3.width_m = 40.0",
            "shadow.3.drift_mps = 0.003",
            "shadow.3.opacity = 1.0",
        ])
        if extra:
            text += "\n" + extra
        return parse_scenario(text)

    def test_g_best_retained_across_sleep_by_default(self):
        _, records = run_simulation(self.eclipse_scenario())
        wakes = [r for r in records if r.event == "wake"]
        assert len(wakes) >= 2
        assert wakes[0].g_best_w == 0.0
        assert wakes[-1].g_best_w > 0.0

    def test_g_best_reset_on_wake_when_configured(self):
        _, records = run_simulation(
            self.eclipse_scenario(extra="sts.reset_g_best_on_wake = true"))
        wakes = [r for r in records if r.event == "wake"]
        assert len(wakes) >= 2
        assert all(w.g_best_w == 0.0 for w in wakes)
