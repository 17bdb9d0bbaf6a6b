"""relational-qm command line front end.

Subcommands map one-to-one onto the library modules; `--json` / `--csv`
select the output format, `--figure PATH` additionally renders the
matplotlib view of the same payload, and `report` writes the whole set
(JSON + CSV + PNG per result) into a directory.  Exit codes: 0 success,
1 validation problems (bad scripts, bad arguments), 2 internal errors.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

import numpy as np

from . import bench, born, contraction, figures, groups, kinematics, sampler
from .dsl import Diagnostic, parse_bench
from .reporting import complex_pairs, dump_csv, dump_json


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(1)


def _resolve_seed(value):
    if value is not None:
        return value
    return int(os.environ.get("RELATIONAL_QM_SEED", "0"))


# ----------------------------------------------------------------------
# Payload builders (shared by the CLI and the golden-file tests)
# ----------------------------------------------------------------------

def mzi_payload(config, name="bench"):
    if config.box_pairs:
        joint = bench.run_joint(config)
        return joint_payload(joint, name)
    mode = bench.run_bench(config)
    probs = bench.click_distribution(mode)
    return {
        "bench": name,
        "channels": list(mode.channels),
        "amplitudes": complex_pairs(mode.amplitudes),
        "probabilities": [float(p) for p in probs],
    }


def joint_payload(joint, name="bench"):
    post = {}
    for outcome, state in joint.post_selected.items():
        post[outcome] = None if state is None else {
            "basis": list(joint.branch_labels),
            "amplitudes": complex_pairs(state),
        }
    table = {f"{label}|{outcome}": float(p)
             for (label, outcome), p in sorted(joint.joint.items())}
    return {
        "bench": name,
        "atoms": list(joint.atoms),
        "photon_probabilities": {k: float(v)
                                 for k, v in joint.photon_probabilities.items()},
        "joint": table,
        "post_selected_state": post,
    }


def ifm_payload(placement="lower"):
    joint = bench.run_ifm(placement=placement)
    payload = joint_payload(joint, f"ifm ({placement} arm holds the Z+ box)")
    atom_d2 = joint.post_selected["D2"]
    payload["post_d2_x_plus_probability"] = \
        bench.post_selected_x_plus_probability(atom_d2)
    return payload


def qle_payload():
    joint = bench.run_qle()
    payload = joint_payload(joint, "qle")
    state = joint.post_selected["D2"]
    target = bench.epr_state()
    flipped = target * np.array([1.0, 1.0, 1.0, -1.0])
    payload["post_d2_fidelity_with_epr"] = float(abs(target @ state) ** 2)
    payload["post_d2_fidelity_with_relative_minus_epr"] = \
        float(abs(flipped @ state) ** 2)
    return payload


def bell_payload():
    state = bench.epr_state()
    settings = bench.SETTING_ANGLES_DEG
    matrix = {f"{a}|{b}": bench.bell_agreement(state, sa, sb)
              for a, sa in settings.items() for b, sb in settings.items()}
    return {
        "state": "epr",
        "settings_deg": dict(settings),
        "agreement": matrix,
        "random_settings_agreement": bench.random_settings_agreement(state),
        "local_instruction_set_bound": bench.local_instruction_bound(),
    }


def born_payload(max_n, seed, trials=1000):
    rows = born.exponent_table(max_n)
    winners = sorted(born.find_born_exponent(max_n, 1e-6))
    (w1, w2, w3, phi), gap = born.octonion_nonassociativity_witness(seed)
    return {
        "max_n": max_n,
        "table": [{"n": n, "integral": i, "distance_from_one": d}
                  for n, i, d in rows],
        "satisfying_exponents": winners,
        "norm_multiplicativity_residuals": {
            name: born.norm_multiplicativity(name, trials, seed)
            for name in ("complex", "quaternion", "octonion")},
        "octonion_witness": {
            "psi1": [float(x) for x in w1],
            "psi2": [float(x) for x in w2],
            "psi3": [float(x) for x in w3],
            "phi": [float(x) for x in phi],
            "norm_gap": gap,
        },
    }


def lorentz_payload():
    scenario = kinematics.blockworld_scenario()
    rows = [{"event": r["event"], "boys": r["boys"], "girls": r["girls"]}
            for r in scenario["events"]]
    return {
        "relative_speed_km_s": scenario["relative_speed_km_s"],
        "gamma": scenario["gamma"],
        "events": rows,
        "notes": scenario["notes"],
    }


def contract_payload():
    params = contraction.ContractionParams()
    poincare = contraction.poincare_algebra()
    contracted = contraction.contract(poincare, params)
    galilean = contraction.contract(contraction.galilean_algebra(), params)
    import sympy as sp
    return {
        "before": poincare.nonzero_lines(),
        "after": contracted.nonzero_lines(),
        "ccr": {
            "P1_Q1": sp.sstr(contraction.ccr_check(contracted, params, 1, 1)),
            "P1_Q2": sp.sstr(contraction.ccr_check(contracted, params, 1, 2)),
        },
        "galilean_control_P1_Q1":
            sp.sstr(contraction.ccr_check(galilean, params, 1, 1)),
        "weyl_phase_a_v":
            sp.sstr(contraction.weyl_phase(sp.Symbol("a", positive=True),
                                           sp.Symbol("v", positive=True),
                                           contracted, params)),
    }


def twinslit_payload(depth_fraction, trials, seed, bins):
    geom = sampler.TwinSlitGeometry()
    res = sampler.transition_experiment(geom, depth_fraction * geom.length,
                                        trials, seed, bins)
    return {
        "depth_fraction": res["depth_fraction"],
        "trials": res["trials"],
        "events_in_region": res["events_in_region"],
        "bin_edges": [float(e) for e in res["bin_edges"]],
        "counts": [int(c) for c in res["counts"]],
        "visibility": res["visibility"],
    }, res


# ----------------------------------------------------------------------
# Emission helpers
# ----------------------------------------------------------------------

def _emit(payload, args, csv_rows=None, csv_header=None):
    if getattr(args, "csv", False) and csv_rows is not None:
        text = dump_csv(csv_rows, csv_header)
    else:
        text = dump_json(payload)
    out = getattr(args, "out", None)
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _maybe_figure(args, render, *render_args):
    path = getattr(args, "figure", None)
    if path:
        render(*render_args, path)


def _add_io_options(sub, seeded=False):
    sub.add_argument("--json", action="store_true", help="emit JSON (default)")
    sub.add_argument("--csv", action="store_true", help="emit CSV rows")
    sub.add_argument("--out", help="write the report to this file")
    sub.add_argument("--figure", help="render the matplotlib view to this PNG")
    if seeded:
        sub.add_argument("--seed", type=int, default=None,
                         help="PRNG seed (default: $RELATIONAL_QM_SEED or 0)")


def build_parser():
    parser = _Parser(prog="relational-qm",
                     description="symmetry-based quantum toolkit")
    subs = parser.add_subparsers(dest="command")

    p = subs.add_parser("lorentz", help="five-observer simultaneity table")
    _add_io_options(p)

    p = subs.add_parser("contract", help="bracket tables before/after c->infinity")
    p.add_argument("--json", action="store_true", help="structured output")
    p.add_argument("--out", help="write the report to this file")

    p = subs.add_parser("density", help="density matrix from irrep averages")
    p.add_argument("--group", default="s3", choices=["z2", "z4", "s3", "q8"])
    p.add_argument("--irrep", default=None, help="irrep name (default: largest)")
    p.add_argument("--group-file", default=None,
                   help="load group + rep from the text import format")
    _add_io_options(p, seeded=True)

    p = subs.add_parser("mzi", help="run a bench script")
    p.add_argument("script", help="bench script path")
    _add_io_options(p)

    p = subs.add_parser("ifm", help="interaction-free measurement bench")
    p.add_argument("--placement", default="lower", choices=["lower", "upper"])
    _add_io_options(p)

    p = subs.add_parser("qle", help="two-atom post-selection bench")
    _add_io_options(p)

    p = subs.add_parser("bell", help="Stern-Gerlach agreement table")
    _add_io_options(p)

    p = subs.add_parser("born", help="probability-exponent scan")
    p.add_argument("--max-n", type=int, default=10)
    _add_io_options(p, seeded=True)

    p = subs.add_parser("twinslit", help="first-event transition histogram")
    p.add_argument("--depth", type=float, default=0.95,
                   help="first-event depth as a fraction of L")
    p.add_argument("--trials", type=int, default=100000)
    p.add_argument("--bins", type=int, default=25)
    p.add_argument("--events-csv", default=None,
                   help="also write the raw per-trial events to this CSV")
    _add_io_options(p, seeded=True)

    p = subs.add_parser("report", help="write the full JSON/CSV/PNG report set")
    p.add_argument("--out-dir", required=True)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--benches", default=None,
                   help="directory of bench scripts (default: ./benches)")
    return parser


# ----------------------------------------------------------------------
# Command implementations
# ----------------------------------------------------------------------

def _cmd_lorentz(args):
    payload = lorentz_payload()
    rows = [(r["event"], r["boys"]["t"], r["boys"]["x"],
             r["girls"]["T"], r["girls"]["X"]) for r in payload["events"]]
    _emit(payload, args, rows, ("event", "t_s", "x_km", "T_s", "X_km"))
    _maybe_figure(args, figures.figure_lorentz, payload)
    return 0


def _cmd_contract(args):
    payload = contract_payload()
    if getattr(args, "json", False):
        text = dump_json(payload)
    else:
        lines = ["non-zero brackets before contraction:"]
        lines += [f"  {l}" for l in payload["before"]]
        lines.append("non-zero brackets after contraction:")
        lines += [f"  {l}" for l in payload["after"]]
        lines.append(f"[P1,Q1] = ({payload['ccr']['P1_Q1']}) * I")
        lines.append(f"[P1,Q2] = ({payload['ccr']['P1_Q2']}) * I")
        lines.append("galilean control [P1,Q1] = "
                     f"({payload['galilean_control_P1_Q1']}) * I")
        lines.append(f"exchange phase exponent = {payload['weyl_phase_a_v']}")
        text = "\n".join(lines) + "\n"
    if getattr(args, "out", None):
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_density(args):
    seed = _resolve_seed(args.seed)
    if args.group_file:
        _, rep = groups.load_group_text(Path(args.group_file).read_text())
    else:
        corpus = {"z2": groups.z2_irreps, "z4": groups.z4_irreps,
                  "s3": groups.s3_irreps, "q8": groups.q8_irreps}[args.group]()
        name = args.irrep or max(corpus, key=lambda n: corpus[n].dim)
        if name not in corpus:
            raise ValueError(f"unknown irrep {name!r}; have {sorted(corpus)}")
        rep = corpus[name]
    rng = np.random.default_rng(seed)
    psi = rng.standard_normal(rep.dim) + 1j * rng.standard_normal(rep.dim)
    psi /= np.linalg.norm(psi)
    avgs = groups.averages_from_state(rep, psi)
    rho = groups.reconstruct_density(rep, avgs)
    consistency = max(abs(groups.expectation(rho, rep.matrix(g)) - avgs.values[g])
                      for g in rep.group.elements)
    projector = np.outer(psi, psi.conj())
    payload = {
        "group": rep.group.name,
        "irrep": rep.name,
        "dim": rep.dim,
        "orthogonality_residual": groups.verify_orthogonality(rep),
        "averages": {g: complex_pairs([v])[0] for g, v in avgs.values.items()},
        "rho": [complex_pairs(row) for row in rho.matrix],
        "hermiticity_defect": rho.hermiticity_defect(),
        "projector_distance": float(np.max(np.abs(rho.matrix - projector))),
        "trace_consistency": float(consistency),
    }
    rows = [(g, v[0], v[1]) for g, v in payload["averages"].items()]
    _emit(payload, args, rows, ("element", "avg_re", "avg_im"))
    return 0


def _cmd_mzi(args):
    text = Path(args.script).read_text()
    config = parse_bench(text)
    if isinstance(config, Diagnostic):
        sys.stderr.write(f"{args.script}: {config}\n")
        return 1
    payload = mzi_payload(config, Path(args.script).stem)
    if "probabilities" in payload:
        rows = list(zip(payload["channels"], payload["probabilities"]))
        header = ("channel", "probability")
    else:
        rows = list(payload["photon_probabilities"].items())
        header = ("outcome", "probability")
    _emit(payload, args, rows, header)
    _maybe_figure(args, figures.figure_mzi, payload)
    return 0


def _cmd_ifm(args):
    payload = ifm_payload(args.placement)
    rows = list(payload["photon_probabilities"].items())
    _emit(payload, args, rows, ("outcome", "probability"))
    _maybe_figure(args, figures.figure_mzi, payload)
    return 0


def _cmd_qle(args):
    payload = qle_payload()
    rows = list(payload["photon_probabilities"].items())
    _emit(payload, args, rows, ("outcome", "probability"))
    _maybe_figure(args, figures.figure_mzi, payload)
    return 0


def _cmd_bell(args):
    payload = bell_payload()
    rows = [(k, v) for k, v in payload["agreement"].items()]
    rows.append(("random", payload["random_settings_agreement"]))
    rows.append(("local_bound", payload["local_instruction_set_bound"]))
    _emit(payload, args, rows, ("settings", "agreement"))
    _maybe_figure(args, figures.figure_bell, bench.epr_state())
    return 0


def _cmd_born(args):
    payload = born_payload(args.max_n, _resolve_seed(args.seed))
    rows = [(r["n"], r["integral"], r["distance_from_one"])
            for r in payload["table"]]
    _emit(payload, args, rows, ("n", "integral", "distance_from_one"))
    _maybe_figure(args, figures.figure_born,
                  [(r["n"], r["integral"], r["distance_from_one"])
                   for r in payload["table"]])
    return 0


def _cmd_twinslit(args):
    if not (0.0 < args.depth < 1.0):
        raise ValueError("--depth is a fraction of L in (0, 1)")
    seed = _resolve_seed(args.seed)
    payload, res = twinslit_payload(args.depth, args.trials, seed, args.bins)
    rows = list(zip(payload["bin_edges"][:-1], payload["bin_edges"][1:],
                    payload["counts"]))
    _emit(payload, args, rows, ("bin_lo", "bin_hi", "count"))
    if args.events_csv:
        event_rows = zip(range(res["trials"]), res["first_events"],
                         res["families"], res["terminations"])
        Path(args.events_csv).write_text(
            dump_csv(event_rows, ("trial", "first_event", "family", "termination")))
    _maybe_figure(args, figures.figure_twinslit, payload)
    return 0


def _cmd_report(args):
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    seed = _resolve_seed(args.seed)
    bench_dir = Path(args.benches) if args.benches else Path("benches")

    def write(stem, payload, rows, header, render=None, render_arg=None):
        (out / f"{stem}.json").write_text(dump_json(payload))
        (out / f"{stem}.csv").write_text(dump_csv(rows, header))
        if render is not None:
            render(render_arg if render_arg is not None else payload,
                   out / f"{stem}.png")

    payload = lorentz_payload()
    write("lorentz", payload,
          [(r["event"], r["boys"]["t"], r["boys"]["x"], r["girls"]["T"],
            r["girls"]["X"]) for r in payload["events"]],
          ("event", "t_s", "x_km", "T_s", "X_km"), figures.figure_lorentz)

    payload = contract_payload()
    write("contract", payload,
          [(line,) for line in payload["before"] + payload["after"]],
          ("bracket",))

    for script in sorted(bench_dir.glob("*.bench")):
        config = parse_bench(script.read_text())
        if isinstance(config, Diagnostic):
            raise ValueError(f"{script}: {config}")
        payload = mzi_payload(config, script.stem)
        if "probabilities" in payload:
            rows = list(zip(payload["channels"], payload["probabilities"]))
            header = ("channel", "probability")
        else:
            rows = list(payload["photon_probabilities"].items())
            header = ("outcome", "probability")
        write(f"mzi_{script.stem}", payload, rows, header, figures.figure_mzi)

    payload = ifm_payload()
    write("ifm", payload, list(payload["photon_probabilities"].items()),
          ("outcome", "probability"), figures.figure_mzi)
    payload = qle_payload()
    write("qle", payload, list(payload["photon_probabilities"].items()),
          ("outcome", "probability"), figures.figure_mzi)

    payload = bell_payload()
    rows = list(payload["agreement"].items())
    write("bell", payload, rows, ("settings", "agreement"),
          figures.figure_bell, bench.epr_state())

    payload = born_payload(20, seed)
    write("born", payload,
          [(r["n"], r["integral"], r["distance_from_one"])
           for r in payload["table"]],
          ("n", "integral", "distance_from_one"), figures.figure_born,
          [(r["n"], r["integral"], r["distance_from_one"])
           for r in payload["table"]])

    geom = sampler.TwinSlitGeometry()
    curve = []
    for frac in sampler.DEFAULT_DEPTHS:
        payload, _ = twinslit_payload(frac, 100000, seed, 25)
        curve.append((frac, payload["visibility"]))
        write(f"twinslit_{int(round(frac * 100)):02d}", payload,
              list(zip(payload["bin_edges"][:-1], payload["bin_edges"][1:],
                       payload["counts"])),
              ("bin_lo", "bin_hi", "count"), figures.figure_twinslit)
    figures.figure_transition(curve, out / "twinslit_transition.png")
    (out / "twinslit_transition.json").write_text(dump_json(
        {"depth_fractions": [c[0] for c in curve],
         "visibilities": [c[1] for c in curve]}))
    return 0


_COMMANDS = {
    "lorentz": _cmd_lorentz,
    "contract": _cmd_contract,
    "density": _cmd_density,
    "mzi": _cmd_mzi,
    "ifm": _cmd_ifm,
    "qle": _cmd_qle,
    "bell": _cmd_bell,
    "born": _cmd_born,
    "twinslit": _cmd_twinslit,
    "report": _cmd_report,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.command is None:
        parser.print_usage(sys.stderr)
        return 1
    try:
        return _COMMANDS[args.command](args)
    except (ValueError, OSError) as exc:
        sys.stderr.write(f"relational-qm {args.command}: {exc}\n")
        return 1
    except Exception as exc:  # internal faults are distinguished from bad input
        sys.stderr.write(f"relational-qm {args.command}: internal error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
