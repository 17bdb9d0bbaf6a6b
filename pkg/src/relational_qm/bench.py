"""Symmetry-operator optical bench: Mach-Zehnder configurations, spins, Bell.

The photon lives in the two translation eigenchannels |1> (detected at D1,
eigenvalue e^{-ika}) and |2> (detected at D2, eigenvalue e^{+ika}).  The
bench elements are the 2-dim irrep matrices of one-dimensional
translations and reflections,

    T(a) = diag(e^{-ika}, e^{ika})
    S(a) = antidiag(e^{-2ika}, e^{2ika})
    Q(a0) = (I - i S(a0)) / sqrt(2),   a0 = pi/(4k)

with Q the first beam splitter and its adjoint the second.  A blocked arm
routes its amplitude into an orthogonal absorbed channel, and the second
beam splitter acts block-diagonally (adjoint on the live channels,
identity on absorbed ones), reproducing the printed three-component
blocked-bench vectors.

Arm bookkeeping: the mirror stage applies S at the parameter where its
phases are unity, i.e. an exact swap of mode labels.  Between the mirrors
and the second beam splitter the lower arm carries |2> and the upper arm
|1>; before the mirrors the map is reversed.  Blockers and atom boxes in
the shipped benches sit between the mirrors and BS2.

Spin-1/2 measurement chains use the real rotation matrix
[[cos(t/2), -sin(t/2)], [sin(t/2), cos(t/2)]]; the three Stern-Gerlach
orientations Z, Gamma, Delta sit at 0, 120 and 240 degrees.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

ATOL = 1e-12

SETTING_ANGLES_DEG = {"Z": 0.0, "Gamma": 120.0, "Delta": 240.0}


class BenchError(ValueError):
    """Malformed bench configuration."""


# ----------------------------------------------------------------------
# Operators
# ----------------------------------------------------------------------

def translation(a: float, k: float = 1.0) -> np.ndarray:
    return np.diag([np.exp(-1j * k * a), np.exp(1j * k * a)])


def reflection(a: float, k: float = 1.0) -> np.ndarray:
    return np.array([[0.0, np.exp(-2j * k * a)],
                     [np.exp(2j * k * a), 0.0]])


def beam_splitter(k: float = 1.0) -> np.ndarray:
    """Q(a0) = (I - i S(a0))/sqrt(2) at a0 = pi/(4k).

    At that parameter S(a0) = [[0,-i],[i,0]] exactly, so Q is the real
    matrix (1/sqrt(2))[[1,-1],[1,1]]; it is built from exact constants to
    keep shipped-bench amplitudes free of rounding junk.
    """
    del k  # a0 scales with 1/k, the matrix does not
    s = 1.0 / np.sqrt(2.0)
    return np.array([[s, -s], [s, s]], dtype=complex)


def mirror_stage(k: float = 1.0) -> np.ndarray:
    """Reflection at a = pi/k, where both phases are unity: an exact swap."""
    del k
    return np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)


MIRROR_PARAMETER = np.pi  # times 1/k; reflection(pi/k, k) == mirror_stage()


# ----------------------------------------------------------------------
# Bench configuration
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class BoxPair:
    """An atom's two measurement boxes; the named box sits in `arm`.

    `state` is the Z eigenvalue whose box is inside the interferometer;
    the partner box is outside the photon paths.  An atom prepared X+ puts
    amplitude 1/sqrt(2) in each box, so the in-arm branch blocks the arm.
    """
    name: str
    arm: str          # "upper" | "lower"
    state: str        # "Z+" | "Z-"


@dataclass(frozen=True)
class BenchConfig:
    """Ordered optical bench: source, optional splitters, mirrors, occupants.

    `elements` is the composition order as parsed: tuples like
    ("source", name), ("beamsplitter", name), ("mirror", name, arm),
    ("block", arm), ("boxes", BoxPair), ("detector", name).
    """
    elements: tuple
    k: float = 1.0

    @property
    def box_pairs(self):
        return tuple(e[1] for e in self.elements if e[0] == "boxes")

    @property
    def blocked_arms(self):
        return tuple(e[1] for e in self.elements if e[0] == "block")

    @property
    def detectors(self):
        return tuple(e[1] for e in self.elements if e[0] == "detector")

    def validate(self):
        sources = [e for e in self.elements if e[0] == "source"]
        if len(sources) != 1:
            raise BenchError(f"expected exactly one source, found {len(sources)}")
        if not self.detectors:
            raise BenchError("bench has no detectors")
        splitters = [e for e in self.elements if e[0] == "beamsplitter"]
        if len(splitters) > 2:
            raise BenchError("more than two beamsplitters")
        occupied = {}
        for e in self.elements:
            if e[0] == "block":
                occupied.setdefault(e[1], []).append("block")
            elif e[0] == "boxes":
                occupied.setdefault(e[1].arm, []).append(e[1].name)
        for arm, who in occupied.items():
            if len(who) > 1:
                raise BenchError(f"{arm} arm occupied more than once: {who}")
        return self


@dataclass(frozen=True)
class ModeVector:
    """Final amplitudes over the ordered channel basis."""
    channels: tuple
    amplitudes: np.ndarray

    def probabilities(self):
        return np.abs(self.amplitudes) ** 2


def click_distribution(m: ModeVector) -> np.ndarray:
    """Componentwise squared moduli; the norm must already be 1."""
    p = m.probabilities()
    total = float(p.sum())
    if abs(total - 1.0) > ATOL:
        raise ValueError(f"mode vector is not normalized: sum p = {total!r}")
    return p


# ----------------------------------------------------------------------
# Canonical configurations
# ----------------------------------------------------------------------

def _mzi_elements(extra=(), k=1.0):
    elems = [("source", "S"), ("beamsplitter", "BS1"),
             ("mirror", "M1", "upper"), ("mirror", "M2", "lower")]
    elems.extend(extra)
    elems.extend([("beamsplitter", "BS2"), ("detector", "D1"), ("detector", "D2")])
    return BenchConfig(tuple(elems), k)


def fig11(k=1.0):
    """Plain balanced interferometer: every photon reaches D1."""
    return _mzi_elements(k=k)


def fig12a(k=1.0):
    """Lower arm blocked between mirrors and BS2."""
    return _mzi_elements([("block", "lower")], k=k)


def fig12b(k=1.0):
    """Upper arm blocked between mirrors and BS2."""
    return _mzi_elements([("block", "upper")], k=k)


def fig13(k=1.0, placement="lower"):
    """One atom's Z+ box in an arm: interaction-free spin measurement."""
    return _mzi_elements([("boxes", BoxPair("atom1", placement, "Z+"))], k=k)


def fig14(k=1.0):
    """Two atoms: Z1+ box in the lower arm, Z2- box in the upper arm."""
    return _mzi_elements([("boxes", BoxPair("atom1", "lower", "Z+")),
                          ("boxes", BoxPair("atom2", "upper", "Z-"))], k=k)


# ----------------------------------------------------------------------
# Photon-only runs
# ----------------------------------------------------------------------

_INV_SQRT2 = 1.0 / np.sqrt(2.0)

# Both canonical beam splitters are (1/sqrt(2)) times a Gaussian-integer
# matrix, and the sqrt(2) factors cancel pairwise in a balanced bench.
# The engine therefore evolves exact integer amplitudes plus a count of
# pending 1/sqrt(2) factors per channel, so the plain interferometer
# yields literally (1, 0) and blocked-bench probabilities are exact
# dyadic rationals.
_BS_INT = np.array([[1, -1], [1, 1]], dtype=complex)
_BS_INT_ADJ = _BS_INT.conj().T
_SWAP_INT = np.array([[0, 1], [1, 0]], dtype=complex)


def _scale(value: complex, half_powers: int) -> complex:
    out = value * 0.5 ** (half_powers // 2)
    return out * _INV_SQRT2 if half_powers % 2 else out


def _run_photon_exact(config: BenchConfig, blocked_arms):
    """Integer-amplitude bench composition with the given arms blocked.

    Returns (channels, integer amplitudes, per-channel 1/sqrt(2) powers).
    Blocking happens at the position of the block/boxes element in the
    composition order; each blocked arm gets its own absorbed channel.
    The arm<->mode map starts as {upper: |2>, lower: |1>} at BS1's output
    and the mirror stage swaps it.
    """
    config.validate()
    blocked_arms = set(blocked_arms)
    n_bs_seen = 0
    arm_to_mode = None          # valid only between the beam splitters
    live = np.array([1.0 + 0j, 0.0])
    live_power = 0              # pending factors of 1/sqrt(2) on live modes
    absorbed = []               # (channel label, integer amplitude, power)
    mirror_arms = set()

    for e in config.elements:
        kind = e[0]
        if kind == "source":
            continue
        if kind == "beamsplitter":
            n_bs_seen += 1
            live = (_BS_INT if n_bs_seen == 1 else _BS_INT_ADJ) @ live
            live_power += 1
            # lower arm carries |1> until the mirror swap hands it |2>
            arm_to_mode = {"upper": 1, "lower": 0} if n_bs_seen == 1 else None
            continue
        if kind == "mirror":
            if arm_to_mode is None:
                raise BenchError(f"mirror {e[1]} is not between beam splitters")
            mirror_arms.add(e[2])
            if len(mirror_arms) == 2:
                live = _SWAP_INT @ live
                arm_to_mode = {"upper": arm_to_mode["lower"],
                               "lower": arm_to_mode["upper"]}
                mirror_arms = set()
            continue
        if kind in ("block", "boxes"):
            arm = e[1] if kind == "block" else e[1].arm
            if arm_to_mode is None:
                raise BenchError(f"{kind} in {arm} arm is a dangling arm "
                                 "(not between beam splitters)")
            if arm in blocked_arms:
                mode = arm_to_mode[arm]
                absorbed.append((f"abs_{arm}", live[mode], live_power))
                live = live.copy()
                live[mode] = 0.0
            continue
        if kind == "detector":
            continue
        raise BenchError(f"unknown element {e!r}")
    if mirror_arms:
        raise BenchError(f"unpaired mirror in {sorted(mirror_arms)} arm")

    channels = ["D1", "D2"]
    ints = [live[0], live[1]]
    powers = [live_power, live_power]
    for label, amp, power in absorbed:
        channels.append("D3" if len(absorbed) == 1 else label)
        ints.append(amp)
        powers.append(power)
    return tuple(channels), np.array(ints, dtype=complex), tuple(powers)


def _run_photon(config: BenchConfig, blocked_arms) -> ModeVector:
    channels, ints, powers = _run_photon_exact(config, blocked_arms)
    amps = np.array([_scale(a, p) for a, p in zip(ints, powers)], dtype=complex)
    return ModeVector(channels, amps)


def run_bench(config: BenchConfig) -> ModeVector:
    """Photon amplitudes for a bench whose blocks are all unconditional.

    Benches containing atom boxes are conditional objects; use run_joint
    (or run_ifm / run_qle) for those.
    """
    if config.box_pairs:
        raise BenchError("bench contains atom boxes; use run_joint for the "
                         "atom-photon state")
    return _run_photon(config, config.blocked_arms)


# ----------------------------------------------------------------------
# Spin states and rotations
# ----------------------------------------------------------------------

def spin_rotation(theta: float) -> np.ndarray:
    """Half-angle rotation taking one Stern-Gerlach basis into another."""
    c, s = np.cos(theta / 2.0), np.sin(theta / 2.0)
    return np.array([[c, -s], [s, c]])


Z_PLUS = np.array([1.0, 0.0])
Z_MINUS = np.array([0.0, 1.0])
X_PLUS = (Z_PLUS + Z_MINUS) / np.sqrt(2.0)


def epr_state() -> np.ndarray:
    """(|Z+ Z+> + |Z- Z->)/sqrt(2) over the basis (++, +-, -+, --)."""
    return np.array([1.0, 0.0, 0.0, 1.0]) / np.sqrt(2.0)


# ----------------------------------------------------------------------
# Joint atom-photon runs (interaction-free measurement, quantum liar)
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class JointResult:
    """Atom-photon outcome table for a bench with atom boxes.

    branches: per atomic Z-configuration, the photon ModeVector and the
    branch amplitude.  photon_probabilities collapses the absorbed
    channels into one "absorbed" bucket.  post_selected maps each photon
    outcome to the normalized atom state (None when unreachable).
    """
    atoms: tuple
    branch_labels: tuple
    joint: dict
    photon_probabilities: dict
    post_selected: dict

    def conditional_atom_probability(self, photon_outcome, atom_branch):
        """P(atom branch | photon outcome) from the joint table."""
        p_click = self.photon_probabilities[photon_outcome]
        if p_click == 0:
            raise ValueError(f"conditioning on zero-probability {photon_outcome}")
        return self.joint.get((atom_branch, photon_outcome), 0.0) / p_click


def run_joint(config: BenchConfig) -> JointResult:
    """Entangle X+ atoms with the photon via their in-arm boxes.

    Each atom starts as (|Z+> + |Z->)/sqrt(2); the branch whose Z value
    matches its in-arm box blocks that arm.  The photon then runs through
    the bench per branch and the amplitudes tensor together.
    """
    config.validate()
    pairs = config.box_pairs
    if not pairs:
        raise BenchError("bench has no atom boxes")
    atoms = tuple(p.name for p in pairs)
    branch_labels = tuple("".join(c) for c in itertools.product("+-", repeat=len(pairs)))
    n_atoms = len(pairs)

    joint = {}
    photon_probs = {"D1": 0.0, "D2": 0.0, "absorbed": 0.0}
    d_amplitudes = {"D1": {}, "D2": {}}
    for zvals in itertools.product("+-", repeat=n_atoms):
        label = "".join(zvals)
        blocked = list(config.blocked_arms)
        blocked += [p.arm for p, z in zip(pairs, zvals) if p.state == f"Z{z}"]
        channels, ints, powers = _run_photon_exact(config, blocked)
        for ch, amp_int, power in zip(channels, ints, powers):
            outcome = ch if ch in ("D1", "D2") else "absorbed"
            # exact dyadic probability: |int|^2 * (1/2)^(power + atoms)
            prob = abs(amp_int) ** 2 * 0.5 ** (power + n_atoms)
            joint[(label, outcome)] = joint.get((label, outcome), 0.0) + prob
            photon_probs[outcome] += prob
            if outcome in d_amplitudes:
                d_amplitudes[outcome][label] = (
                    d_amplitudes[outcome].get(label, 0.0)
                    + _scale(amp_int, power + n_atoms))

    post_selected = {}
    for outcome, amps in d_amplitudes.items():
        vec = np.array([amps.get(label, 0.0) for label in branch_labels],
                       dtype=complex)
        norm = np.linalg.norm(vec)
        post_selected[outcome] = vec / norm if norm > ATOL else None
    return JointResult(atoms, branch_labels, joint, photon_probs, post_selected)


def run_ifm(atom=None, placement: str = "lower", k: float = 1.0) -> JointResult:
    """Interaction-free Z measurement: one X+ atom, Z+ box in `placement` arm.

    A D2 click certifies the blocking branch without photon absorption:
    the post-selected atom state is |Z+> exactly, so a subsequent X
    measurement yields X+ with probability one half.
    """
    if atom is not None:
        atom = np.asarray(atom, dtype=float)
        if not np.allclose(atom, X_PLUS, atol=ATOL):
            raise ValueError("interaction-free run expects the X+ preparation")
        if abs(np.linalg.norm(atom) - 1.0) > ATOL:
            raise ValueError("atom state is not normalized")
    return run_joint(fig13(k=k, placement=placement))


def run_qle(k: float = 1.0) -> JointResult:
    """Two-atom bench: Z1+ box in the lower arm, Z2- box in the upper arm."""
    return run_joint(fig14(k=k))


def post_selected_x_plus_probability(atom_state) -> float:
    """P(X+) for a single-atom state in the Z basis."""
    return float(abs(X_PLUS @ np.asarray(atom_state)) ** 2)


# ----------------------------------------------------------------------
# Bell / Mermin correlations
# ----------------------------------------------------------------------

def bell_agreement(state, angle_a_deg: float, angle_b_deg: float) -> float:
    """Probability both Stern-Gerlach outcomes agree for a two-atom state.

    Each side is measured in the basis rotated by its setting angle; the
    state is given over the product Z basis (++, +-, -+, --).
    """
    state = np.asarray(state, dtype=complex)
    if state.shape != (4,):
        raise ValueError("expected a two-atom state over the 4-dim product basis")
    ra = spin_rotation(np.deg2rad(angle_a_deg))
    rb = spin_rotation(np.deg2rad(angle_b_deg))
    agree = 0.0
    for ia, ib in ((0, 0), (1, 1)):
        basis_vec = np.kron(ra[:, ia], rb[:, ib])
        agree += abs(basis_vec.conj() @ state) ** 2
    return float(agree)


def random_settings_agreement(state, settings=SETTING_ANGLES_DEG) -> float:
    """Exact agreement probability under independent uniform settings."""
    angles = list(settings.values())
    total = 0.0
    for a in angles:
        for b in angles:
            total += bell_agreement(state, a, b)
    return total / len(angles) ** 2


def local_instruction_bound(n_settings: int = 3) -> float:
    """Minimum same-answer rate over all deterministic instruction sets.

    Perfect same-setting correlation forces both atoms to carry identical
    instruction lists; exhaustive enumeration of the 2^n lists gives the
    floor for random independent settings (5/9 for three settings).
    """
    best = 1.0
    for instr in itertools.product((+1, -1), repeat=n_settings):
        agree = sum(1 for i in range(n_settings) for j in range(n_settings)
                    if instr[i] == instr[j])
        best = min(best, agree / n_settings**2)
    return best
