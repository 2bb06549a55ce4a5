import io
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from twinclock.errors import RindlerWedgeError
from twinclock.experiment import (
    HardwareConstraints,
    feasibility_check,
    mirror_accelerations,
    mirror_worldlines,
    proper_length_residuals,
    rigid_worldline,
)
from twinclock.kinematics import CavitySetup, TrajectorySpec, kinematic_summary

V = 1.1994e8


@pytest.fixture
def cavity():
    return CavitySetup(0.011, V)


@pytest.fixture
def trip():
    return TrajectorySpec(1.7e15, 1e-9, 0.0, 1)


@pytest.fixture
def working_point():
    return TrajectorySpec(1.7e15, 1e-9, 0.0, 500)


class TestWorldlines:
    def test_static(self, cavity):
        wl = mirror_worldlines(cavity, TrajectorySpec(0.0, 1e-9, 1e-9, 2), 1e-11)
        assert np.all(wl.left_position == -0.0055)
        assert np.all(wl.right_position == 0.0055)
        assert not wl.left_velocity.any() and not wl.right_velocity.any()

    def test_sampling(self, cavity, trip):
        wl = mirror_worldlines(cavity, trip, 1e-12)
        assert len(wl.sample_times) == 4001
        assert wl.sample_times[-1] == pytest.approx(4e-9, rel=1e-12)

    def test_returns_home(self, cavity, trip):
        wl = mirror_worldlines(cavity, trip, 1e-12)
        assert wl.left_position[-1] == pytest.approx(-0.0055, abs=1e-15)
        assert abs(wl.right_velocity[-1]) < 1e-6

    def test_mirror_accelerations(self, cavity, trip):
        trailing, leading = mirror_accelerations(cavity, trip)
        h = 1.7e15 * 0.011 / V**2
        assert trailing / leading == pytest.approx((1 + h / 2) / (1 - h / 2), rel=1e-14)
        assert trailing / leading == pytest.approx(1.0013, abs=1e-4)

    def test_segment_end_times(self, cavity, trip):
        h = 1.7e15 * 0.011 / V**2
        left = rigid_worldline(cavity, trip, -0.0055)
        right = rigid_worldline(cavity, trip, +0.0055)
        assert left.pieces[0].duration == pytest.approx(1e-9 * (1 - h / 2), rel=1e-13)
        assert right.pieces[0].duration == pytest.approx(1e-9 * (1 + h / 2), rel=1e-13)
        assert right.pieces[0].duration - left.pieces[0].duration == pytest.approx(h * 1e-9, rel=1e-10)

    def test_equal_rapidities(self, cavity):
        traj = TrajectorySpec(1.7e15, 1e-9, 3e-10, 1)
        left = rigid_worldline(cavity, traj, -0.0055)
        right = rigid_worldline(cavity, traj, +0.0055)
        for p, q in zip(left.pieces, right.pieces):
            assert p.w0 == pytest.approx(q.w0, abs=1e-15)
        # boundary events lie on a common simultaneity line: dt = L sinh(w) / v
        for p, q in zip(left.pieces, right.pieces):
            assert q.t0 - p.t0 == pytest.approx(0.011 * math.sinh(p.w0) / V, abs=1e-24)

    @pytest.mark.parametrize("ti", [0.0, 5e-10])
    def test_joins_continuous(self, cavity, ti):
        traj = TrajectorySpec(1.7e15, 1e-9, ti, 1)
        for offset in (-0.0055, 0.0, 0.0055):
            for dx, du in rigid_worldline(cavity, traj, offset).joint_jumps():
                assert dx <= 1e-12 * 0.011
                assert du <= 1e-12 * V

    @pytest.mark.parametrize("ti", [0.0, 5e-10])
    def test_born_rigid(self, cavity, ti):
        traj = TrajectorySpec(1.7e15, 1e-9, ti, 2)
        wl = mirror_worldlines(cavity, traj, 1e-12)
        assert np.max(np.abs(proper_length_residuals(cavity, traj, wl))) <= 1e-12

    def test_peak_displacement(self, cavity, working_point):
        wl = mirror_worldlines(cavity, working_point, 1e-11)
        peak = np.max(np.abs(wl.left_position + 0.0055))
        assert peak == pytest.approx(1.7e-3, rel=1e-2)
        center_peak = kinematic_summary(cavity, working_point).max_displacement
        assert peak == pytest.approx(center_peak, rel=5e-3)

    def test_velocity_below_light(self, cavity, trip):
        wl = mirror_worldlines(cavity, trip, 1e-12)
        assert np.max(np.abs(wl.left_velocity)) == pytest.approx(0.01417 * V, rel=1e-3)

    def test_beyond_horizon(self, cavity, trip):
        with pytest.raises(RindlerWedgeError):
            rigid_worldline(cavity, trip, -1e3)

    def test_bad_dt(self, cavity, trip):
        with pytest.raises(ValueError):
            mirror_worldlines(cavity, trip, 0.0)

    @settings(max_examples=15, deadline=None)
    @given(st.floats(1e13, 5e15), st.floats(2e-10, 2e-9), st.floats(0, 1e-9))
    def test_rigidity_property(self, a, ta, ti):
        cavity = CavitySetup(0.011, V)
        traj = TrajectorySpec(a, ta, ti, 1)
        wl = mirror_worldlines(cavity, traj, traj.trip_duration / 97)
        assert np.max(np.abs(proper_length_residuals(cavity, traj, wl))) <= 1e-11


class TestCsv:
    def test_format(self, cavity, trip):
        text = mirror_worldlines(cavity, trip, 1e-9).to_csv()
        lines = text.split("\n")
        assert lines[0] == "time_s,left_pos_m,right_pos_m,left_vel_mps,right_vel_mps"
        assert "\r" not in text and text.endswith("\n")
        assert len(lines) == 1 + 5 + 1
        first = lines[1].split(",")
        assert first == ["0", "-0.0055", "0.0055", "0", "0"]
        digits = lines[2].split(",")[1].lstrip("-").replace(".", "").split("e")[0].lstrip("0")
        assert len(digits) <= 12

    def test_meta_and_stream(self, cavity, trip):
        buf = io.StringIO()
        assert mirror_worldlines(cavity, trip, 1e-9).to_csv(buf, meta="run 1") is None
        assert buf.getvalue().startswith("# run 1\ntime_s,")


class TestFeasibility:
    def test_working_point_passes(self, cavity, working_point):
        report = feasibility_check(cavity, working_point)
        assert report.passed, report.as_dict()
        assert report["total_time"].value == pytest.approx(2e-6, rel=1e-12)
        assert report["displacement"].value == pytest.approx(1.7e-3, rel=1e-3)
        assert report.peak_mirror_acceleration == pytest.approx(1.7e15 / (1 - 0.5 * 1.3e-3), rel=1e-4)

    def test_excess_acceleration(self, cavity):
        report = feasibility_check(cavity, TrajectorySpec(4e17, 1e-9, 0.0, 1))
        assert not report.passed
        assert not report["acceleration"].passed
        assert not report["displacement"].passed

    def test_no_motion(self, cavity):
        report = feasibility_check(cavity, TrajectorySpec(0.0, 1e-9, 0.0, 10))
        assert report.passed
        assert report["displacement"].value == 0.0

    def test_short_segment(self, cavity):
        report = feasibility_check(cavity, TrajectorySpec(1e15, 5e-10, 0.0, 1))
        assert not report["segment_time"].passed

    def test_total_time(self, cavity):
        assert not feasibility_check(cavity, TrajectorySpec(1e15, 1e-9, 0.0, 501))["total_time"].passed

    def test_plasma(self, cavity, working_point):
        top = 20 * cavity.omega_1
        good = feasibility_check(cavity, working_point, HardwareConstraints(plasma_frequency=2 * top))
        assert good["plasma_vs_modes"].passed and good["plasma_vs_switching"].passed
        bad = feasibility_check(cavity, working_point, HardwareConstraints(plasma_frequency=0.5 * top))
        assert not bad["plasma_vs_modes"].passed and not bad.passed
        assert "plasma_vs_modes" not in feasibility_check(cavity, working_point).as_dict()["constraints"]

    def test_outside_wedge_reported(self):
        report = feasibility_check(CavitySetup(1.0, 1.0), TrajectorySpec(3.0, 1.0))
        assert not report["rindler_wedge"].passed
        assert report.peak_mirror_acceleration == math.inf

    def test_with_worldlines(self, cavity, trip):
        report = feasibility_check(cavity, trip, dt=1e-10)
        assert report.worldlines is not None
        assert len(report.worldlines.sample_times) == 41

    def test_bad_constraints(self):
        with pytest.raises(ValueError):
            HardwareConstraints(max_displacement=0.0)
        with pytest.raises(ValueError):
            HardwareConstraints(plasma_frequency=-1.0)

    def test_as_dict(self, cavity, working_point):
        d = feasibility_check(cavity, working_point).as_dict()
        assert set(d["constraints"]) == {"rindler_wedge", "acceleration", "displacement",
                                         "total_time", "segment_time"}
        assert d["passed"] is True
