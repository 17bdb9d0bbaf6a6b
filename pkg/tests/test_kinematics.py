import numpy as np
import pytest

from relational_qm.kinematics import (C_KM_S, Event, FrameTransform,
                                      blockworld_scenario, composition_gap,
                                      interval, round_trip_residual, transform)


BOOST = FrameTransform(0.6 * C_KM_S, "lorentz")


def test_worked_numbers_are_exact():
    assert BOOST.gamma == 1.25
    e2 = transform(Event(0.0, 1000.0), BOOST)
    assert abs(e2.t - (-0.0025)) <= 1e-9 * 0.0025
    assert abs(e2.x - 1250.0) <= 1e-9 * 1250.0
    e3 = transform(Event(0.002, 1000.0), BOOST)
    assert e3.t == 0.0
    assert abs(e3.x - 800.0) <= 1e-9 * 800.0


def test_zero_velocity_is_identity():
    e = Event(1.25, -37.5)
    for kind in ("lorentz", "k4", "galilean"):
        out = transform(e, FrameTransform(0.0, kind))
        assert out == e


def test_superluminal_lorentz_rejected():
    with pytest.raises(ValueError, match="c"):
        FrameTransform(C_KM_S, "lorentz")
    FrameTransform(2 * C_KM_S, "k4")  # fine, no gamma


def test_unknown_kind_rejected():
    with pytest.raises(ValueError):
        FrameTransform(0.0, "euclidean")


def test_lorentz_preserves_interval():
    rng = np.random.default_rng(2)
    for _ in range(50):
        e = Event(rng.uniform(-1, 1), rng.uniform(-2e5, 2e5))
        f = FrameTransform(rng.uniform(-0.9, 0.9) * C_KM_S, "lorentz")
        i0, i1 = interval(e), interval(transform(e, f))
        scale = max(abs(i0), abs(i1), 1.0)
        assert abs(i0 - i1) <= 1e-9 * scale


def test_k4_breaks_interval():
    e = Event(0.0, 1000.0)
    f = FrameTransform(0.6 * C_KM_S, "k4")
    assert abs(interval(e) - interval(transform(e, f))) > 1.0


def test_k4_approaches_galilean_as_c_grows():
    e = Event(0.004, 1500.0)
    v = 0.6 * C_KM_S
    prev_gap = None
    for c_scale in (1.0, 10.0, 100.0, 10000.0):
        f = FrameTransform(v, "k4", c=C_KM_S * c_scale)
        g = FrameTransform(v, "galilean", c=C_KM_S * c_scale)
        gap = abs(transform(e, f).t - transform(e, g).t)   # exactly vx/c^2
        if prev_gap is not None:
            assert gap < prev_gap
        prev_gap = gap
    assert prev_gap < 1e-10


def test_round_trips():
    rng = np.random.default_rng(9)
    for _ in range(30):
        e = Event(rng.uniform(-0.01, 0.01), rng.uniform(-5e3, 5e3))
        v = rng.uniform(-0.8, 0.8) * C_KM_S
        for kind in ("lorentz", "galilean"):
            assert round_trip_residual(e, FrameTransform(v, kind)) <= \
                1e-9 * max(abs(e.t), abs(e.x) / C_KM_S, 1e-12)
        f = FrameTransform(v, "k4")
        bound = (v / C_KM_S) ** 2 * max(abs(e.t), abs(e.x) / C_KM_S) * 4.0
        assert round_trip_residual(e, f) <= bound


def test_composition_gap_values():
    a = 1000.0
    assert composition_gap(a, FrameTransform(0.6 * C_KM_S, "galilean")) == 0.0
    assert composition_gap(0.0, BOOST) == 0.0
    k4 = FrameTransform(0.6 * C_KM_S, "k4")
    assert composition_gap(a, k4) == pytest.approx(0.6 * 1000.0 / C_KM_S, abs=1e-15)
    assert composition_gap(a, BOOST) == pytest.approx(1.25 * 0.002, rel=1e-12)


def test_composition_gap_matches_explicit_composition():
    # cross-check by composing transform() calls by hand
    a, f = 1000.0, FrameTransform(0.6 * C_KM_S, "k4")
    translate_then_boost = transform(Event(0.0, 0.0 + a), f)
    boosted = transform(Event(0.0, 0.0), f)
    boost_then_translate = Event(boosted.t, boosted.x + a)
    assert composition_gap(a, f) == boost_then_translate.t - translate_then_boost.t


def test_blockworld_scenario_table():
    scn = blockworld_scenario()
    assert scn["gamma"] == 1.25
    rows = {r["event"]: r for r in scn["events"]}
    assert rows[2]["girls"] == {"T": -0.0025, "X": 1250.0}
    assert rows[3]["girls"] == {"T": 0.0, "X": 800.0}
    assert rows[1]["boys"] == {"t": 0.0, "x": 0.0}
    notes = " ".join(scn["notes"])
    assert "800 km" in notes
    assert "Bob at t = 0" in notes and "0.002" in notes
