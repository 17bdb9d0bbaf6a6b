"""Inertial coordinate transforms: Lorentz, weakly relativistic (K4), Galilean.

Units are seconds and kilometers with c = 300000 km/s exactly, so the
worked five-observer simultaneity scenario reproduces its round numbers
bit for bit.  The K4 transform keeps the simultaneity-breaking vx/c^2 term
but drops the gamma factor; Galilean keeps absolute time.
"""

from __future__ import annotations

from dataclasses import dataclass

C_KM_S = 300000.0


@dataclass(frozen=True)
class Event:
    t: float  # seconds
    x: float  # kilometers


@dataclass(frozen=True)
class FrameTransform:
    v: float                 # km/s, velocity of the new frame in the old one
    kind: str = "lorentz"    # lorentz | k4 | galilean
    c: float = C_KM_S

    def __post_init__(self):
        if self.kind not in ("lorentz", "k4", "galilean"):
            raise ValueError(f"unknown transform kind {self.kind!r}")
        if self.kind == "lorentz" and abs(self.v) >= self.c:
            raise ValueError(f"|v| = {abs(self.v)} km/s >= c for a Lorentz boost")

    @property
    def gamma(self):
        return 1.0 / (1.0 - (self.v / self.c) ** 2) ** 0.5

    def inverse(self):
        """v -> -v substitution; exact inverse for Lorentz and Galilean only."""
        return FrameTransform(-self.v, self.kind, self.c)


def transform(e: Event, f: FrameTransform) -> Event:
    v, c = f.v, f.c
    if f.kind == "lorentz":
        g = f.gamma
        return Event(g * (e.t - v * e.x / c**2), g * (e.x - v * e.t))
    if f.kind == "k4":
        return Event(e.t - v * e.x / c**2, e.x - v * e.t)
    return Event(e.t, e.x - v * e.t)


def round_trip_residual(e: Event, f: FrameTransform) -> float:
    """max(|dt|, |dx|/c) after boosting there and back (v -> -v).

    Zero for Lorentz and Galilean; O((v/c)^2) for K4, whose transforms do
    not form a group.
    """
    back = transform(transform(e, f), f.inverse())
    return max(abs(back.t - e.t), abs(back.x - e.x) / f.c)


def interval(e: Event, c: float = C_KM_S) -> float:
    """c^2 t^2 - x^2 in km^2."""
    return (c * e.t) ** 2 - e.x**2


def composition_gap(a: float, f: FrameTransform) -> float:
    """Time displacement exposing boost/translation non-commutativity.

    Applies (boost then translate by a) and (translate by a then boost) to
    the origin event and returns the difference of the resulting time
    coordinates: gamma*v*a/c^2 for Lorentz, v*a/c^2 for K4, identically 0
    for Galilean.
    """
    origin = Event(0.0, 0.0)
    boost_first = transform(origin, f)
    boost_first = Event(boost_first.t, boost_first.x + a)
    translate_first = transform(Event(origin.t, origin.x + a), f)
    return boost_first.t - translate_first.t


def blockworld_scenario():
    """The five-observer simultaneity table.

    Boys' frame coordinates (t, x); girls' frame (T, X) at relative speed
    0.6c.  Event 1: Joe meets Sara; event 2: Bob meets Kim; event 3: Bob
    meets Alice.  The returned dict carries the three events in both
    frames plus the derived co-realness chain notes.
    """
    f = FrameTransform(0.6 * C_KM_S, "lorentz")
    events = {
        1: (Event(0.0, 0.0), "Joe meets Sara"),
        2: (Event(0.0, 1000.0), "Bob meets Kim"),
        3: (Event(0.002, 1000.0), "Bob meets Alice"),
    }
    rows = []
    for label, (e, who) in events.items():
        girls = transform(e, f)
        rows.append({
            "event": label,
            "who": who,
            "boys": {"t": e.t, "x": e.x},
            "girls": {"T": girls.t, "X": girls.x},
        })
    girls2 = rows[1]["girls"]
    girls3 = rows[2]["girls"]
    # at T = 0 Joe is at Sara (X = 0) and Bob is at Alice (event 3), so the
    # girls measure the boys' separation as event 3's X coordinate
    boys_separation = girls3["X"] - 0.0
    notes = [
        f"gamma = {f.gamma}",
        f"boys' separation seen by girls: {boys_separation:g} km, not 1000 km "
        f"(Bob at X = {girls3['X']:g} km when Joe at X = 0, both at T = 0; "
        f"Alice at {girls3['X']:g} km, Kim at {girls2['X']:g} km)",
        "events 1 and 2 are simultaneous for the boys (t = 0); "
        "events 1 and 3 are simultaneous for the girls (T = 0)",
        "co-realness chain: Kim at T = 0 shares realness with Kim at T = -0.0025 s "
        "(the past is as real as the present)",
        "co-realness chain: Bob at t = 0 shares realness with Bob at t = 0.002 s "
        "(the future is as real as the present)",
    ]
    return {"relative_speed_km_s": f.v, "gamma": f.gamma, "events": rows,
            "notes": notes}
