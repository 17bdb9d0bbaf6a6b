"""Matplotlib renderings for the report path.

Each function takes the already-computed report payload and a target path
and writes a PNG; nothing here recomputes physics.
"""

from __future__ import annotations

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from .bench import SETTING_ANGLES_DEG, bell_agreement


def _save(fig, path):
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def figure_mzi(payload, path):
    fig, ax = plt.subplots(figsize=(5, 3.2))
    if "probabilities" in payload:
        labels = payload["channels"]
        probs = payload["probabilities"]
    else:
        labels = list(payload["photon_probabilities"])
        probs = list(payload["photon_probabilities"].values())
    ax.bar(labels, probs, color="#3b6ea5")
    ax.set_ylabel("click probability")
    ax.set_ylim(0, 1.05)
    ax.set_title(payload.get("bench", "bench"))
    for x, p in enumerate(probs):
        ax.text(x, p + 0.02, f"{p:.4g}", ha="center", fontsize=8)
    return _save(fig, path)


def figure_born(rows, path):
    ns = [r[0] for r in rows]
    vals = [r[1] for r in rows]
    fig, ax = plt.subplots(figsize=(5, 3.2))
    ax.semilogy(ns, vals, "o-", color="#3b6ea5", label="I(n)")
    ax.axhline(1.0, color="#a53b3b", lw=1, label="I = 1")
    ax.set_xlabel("exponent n")
    ax.set_ylabel("phase-averaged ratio I(n)")
    ax.set_xticks(ns)
    ax.legend()
    ax.set_title("probability exponent: only n = 2 balances")
    return _save(fig, path)


def figure_bell(state, path):
    deltas = np.linspace(0.0, 360.0, 361)
    curve = [bell_agreement(state, 0.0, d) for d in deltas]
    fig, ax = plt.subplots(figsize=(5, 3.2))
    ax.plot(deltas, curve, color="#3b6ea5")
    for name, angle in SETTING_ANGLES_DEG.items():
        ax.axvline(angle, color="#999999", lw=0.8, ls=":")
        ax.text(angle, 1.02, name, ha="center", fontsize=8)
    ax.axhline(5.0 / 9.0, color="#a53b3b", lw=1, ls="--",
               label="local instruction-set floor 5/9")
    ax.set_xlabel("setting separation (degrees)")
    ax.set_ylabel("agreement probability")
    ax.set_ylim(0, 1.1)
    ax.legend(loc="lower right", fontsize=8)
    return _save(fig, path)


def figure_lorentz(scenario, path):
    fig, ax = plt.subplots(figsize=(5, 3.6))
    for row in scenario["events"]:
        t, x = row["boys"]["t"], row["boys"]["x"]
        ax.plot(x, t * 1000.0, "o", color="#3b6ea5")
        ax.annotate(f"event {row['event']}\n(T={row['girls']['T']:g}s, "
                    f"X={row['girls']['X']:g}km)",
                    (x, t * 1000.0), textcoords="offset points", xytext=(8, 4),
                    fontsize=7)
    ax.set_xlabel("x (km, boys' frame)")
    ax.set_ylabel("t (ms, boys' frame)")
    ax.set_title("simultaneity scenario; girls' coordinates annotated")
    return _save(fig, path)


def figure_twinslit(payload, path):
    edges = np.asarray(payload["bin_edges"], dtype=float)
    counts = np.asarray(payload["counts"], dtype=float)
    centers = 0.5 * (edges[1:] + edges[:-1])
    fig, ax = plt.subplots(figsize=(5, 3.2))
    ax.bar(centers, counts, width=edges[1] - edges[0], color="#3b6ea5")
    ax.set_xlabel("transverse position at final surface")
    ax.set_ylabel("terminating events")
    ax.set_title(f"first events at depth {payload['depth_fraction']:.2f} L, "
                 f"visibility {payload['visibility']:.3f}")
    return _save(fig, path)


def figure_transition(curve, path):
    fracs = [c[0] for c in curve]
    vis = [c[1] for c in curve]
    fig, ax = plt.subplots(figsize=(5, 3.2))
    ax.plot(fracs, vis, "o-", color="#3b6ea5")
    ax.set_xlabel("first-event depth (fraction of L)")
    ax.set_ylabel("fringe visibility")
    ax.set_ylim(0, 1.05)
    ax.set_title("quantum-to-classical transition")
    return _save(fig, path)
