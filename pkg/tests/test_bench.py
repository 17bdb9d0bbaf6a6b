import itertools

import numpy as np
import pytest

from relational_qm import bench as B


def _unitary(m):
    return np.allclose(m.conj().T @ m, np.eye(m.shape[0]), atol=1e-12)


def test_operator_forms():
    k, a = 2.0, 0.37
    t = B.translation(a, k)
    assert np.allclose(t, np.diag([np.exp(-1j * k * a), np.exp(1j * k * a)]))
    s = B.reflection(a, k)
    assert s[0, 0] == 0 and s[1, 1] == 0
    assert np.isclose(s[0, 1], np.exp(-2j * k * a))
    for m in (t, s, B.beam_splitter(k), B.mirror_stage(k)):
        assert _unitary(m)


def test_beam_splitter_is_reflection_combination():
    for k in (1.0, 2.0, 5.5):
        a0 = np.pi / (4.0 * k)
        expected = (np.eye(2) - 1j * B.reflection(a0, k)) / np.sqrt(2.0)
        assert np.allclose(B.beam_splitter(k), expected, atol=1e-12)


def test_mirror_stage_is_unit_phase_reflection():
    for k in (1.0, 3.0):
        assert np.allclose(B.mirror_stage(k), B.reflection(np.pi / k, k),
                           atol=1e-12)


def test_mirror_leaves_split_state_invariant():
    psi = np.array([1.0, 1.0]) / np.sqrt(2.0)
    out = B.reflection(B.MIRROR_PARAMETER, 1.0) @ psi
    # proportional to psi: zero component orthogonal to it
    assert abs(out @ np.array([1.0, -1.0])) < 1e-12
    assert abs(abs(out @ psi) - 1.0) < 1e-12


def test_plain_bench_amplitudes_exact():
    mode = B.run_bench(B.fig11())
    assert mode.channels == ("D1", "D2")
    assert mode.amplitudes[0] == 1.0 + 0.0j
    assert mode.amplitudes[1] == 0.0 + 0.0j
    assert B.click_distribution(mode).tolist() == [1.0, 0.0]


def test_blocked_bench_amplitudes():
    mode = B.run_bench(B.fig12a())
    assert mode.channels == ("D1", "D2", "D3")
    assert np.allclose(mode.amplitudes, [0.5, -0.5, 1 / np.sqrt(2)], atol=1e-15)
    assert np.allclose(B.click_distribution(mode), [0.25, 0.25, 0.5], atol=1e-12)
    mode_b = B.run_bench(B.fig12b())
    assert np.allclose(mode_b.amplitudes, [0.5, 0.5, 1 / np.sqrt(2)], atol=1e-15)


def test_blocker_destroys_destructive_interference():
    assert B.click_distribution(B.run_bench(B.fig11()))[1] == 0.0
    for cfg in (B.fig12a(), B.fig12b()):
        assert B.click_distribution(B.run_bench(cfg))[1] > 0.0


def test_composed_open_bench_is_unitary_and_norm_preserving():
    q = B.beam_splitter()
    total = q.conj().T @ B.mirror_stage() @ q
    assert _unitary(total)
    for cfg in (B.fig11(), B.fig12a(), B.fig12b()):
        p = B.click_distribution(B.run_bench(cfg))
        assert abs(p.sum() - 1.0) < 1e-12


def test_click_distribution_rejects_unnormalized():
    bad = B.ModeVector(("D1", "D2"), np.array([1.0, 1.0], dtype=complex))
    with pytest.raises(ValueError, match="normalized"):
        B.click_distribution(bad)


def test_run_bench_refuses_boxes():
    with pytest.raises(B.BenchError, match="boxes"):
        B.run_bench(B.fig13())


def test_config_validation():
    cfg = B.BenchConfig((("source", "S"), ("source", "T"), ("detector", "D1")))
    with pytest.raises(B.BenchError, match="source"):
        cfg.validate()
    cfg = B.BenchConfig((("source", "S"),))
    with pytest.raises(B.BenchError, match="detector"):
        cfg.validate()
    cfg = B.BenchConfig((("source", "S"), ("beamsplitter", "B1"),
                         ("block", "lower"), ("block", "lower"),
                         ("detector", "D1")))
    with pytest.raises(B.BenchError, match="occupied"):
        cfg.validate()


# ----------------------------------------------------------------------
# Brute-force oracle for the atom-photon benches: explicit tensor state
# ----------------------------------------------------------------------

def _oracle_photon(blocked_arms):
    """(d1, d2, absorbed...) amplitudes built from first principles."""
    q = np.array([[1, -1], [1, 1]], dtype=complex) / np.sqrt(2.0)
    swap = np.array([[0, 1], [1, 0]], dtype=complex)
    live = swap @ (q @ np.array([1.0, 0.0]))
    absorbed = []
    # after the mirrors: upper arm carries mode 0, lower arm mode 1
    for arm in ("upper", "lower"):
        if arm in blocked_arms:
            idx = {"upper": 0, "lower": 1}[arm]
            absorbed.append(live[idx])
            live = live.copy()
            live[idx] = 0.0
    out = q.conj().T @ live
    return out[0], out[1], absorbed


def test_ifm_against_tensor_oracle():
    joint = B.run_ifm()
    # atom X+ branches: Z+ blocks the lower arm, Z- leaves the bench open
    amp = 1.0 / np.sqrt(2.0)
    d1p, d2p, absp = _oracle_photon({"lower"})
    d1m, d2m, absm = _oracle_photon(set())
    expect = {
        ("+", "D1"): abs(amp * d1p) ** 2,
        ("+", "D2"): abs(amp * d2p) ** 2,
        ("+", "absorbed"): sum(abs(amp * a) ** 2 for a in absp),
        ("-", "D1"): abs(amp * d1m) ** 2,
        ("-", "D2"): abs(amp * d2m) ** 2,
    }
    for key, val in expect.items():
        assert joint.joint.get(key, 0.0) == pytest.approx(val, abs=1e-12)
    assert joint.photon_probabilities["D2"] == 0.125
    assert joint.photon_probabilities["D1"] == 0.625
    assert joint.photon_probabilities["absorbed"] == 0.25


def test_ifm_post_selection():
    joint = B.run_ifm()
    post = joint.post_selected["D2"]
    # |Z+> exactly, up to global phase
    assert abs(abs(post[0]) - 1.0) < 1e-12 and abs(post[1]) < 1e-12
    assert B.post_selected_x_plus_probability(post) == pytest.approx(0.5, abs=1e-12)
    # conditioning on D1 leans towards the open branch
    post_d1 = joint.post_selected["D1"]
    assert abs(post_d1[1]) > abs(post_d1[0])
    assert joint.conditional_atom_probability("D2", "+") == pytest.approx(1.0)


def test_ifm_upper_placement():
    joint = B.run_ifm(placement="upper")
    assert joint.photon_probabilities["D2"] == 0.125
    post = joint.post_selected["D2"]
    assert abs(abs(post[0]) - 1.0) < 1e-12


def test_ifm_rejects_non_xplus_atom():
    with pytest.raises(ValueError, match="X\\+"):
        B.run_ifm(atom=np.array([1.0, 0.0]))


def test_qle_against_tensor_oracle():
    joint = B.run_qle()
    amp = 0.5  # (1/sqrt2)^2 per atomic branch
    cases = {"++": {"lower"}, "+-": {"lower", "upper"},
             "-+": set(), "--": {"upper"}}
    p_d2 = 0.0
    for label, blocked in cases.items():
        d1, d2, absorbed = _oracle_photon(blocked)
        assert joint.joint.get((label, "D1"), 0.0) == \
            pytest.approx(abs(amp * d1) ** 2, abs=1e-12)
        assert joint.joint.get((label, "D2"), 0.0) == \
            pytest.approx(abs(amp * d2) ** 2, abs=1e-12)
        p_d2 += abs(amp * d2) ** 2
    assert p_d2 == pytest.approx(0.125, abs=1e-15)
    assert joint.photon_probabilities["D2"] == 0.125
    # the doubly-blocked branch never clicks
    assert joint.joint[("+-", "D1")] == 0.0
    assert joint.joint[("+-", "D2")] == 0.0


def test_qle_post_selected_state_is_maximally_entangled():
    post = B.run_qle().post_selected["D2"]
    # the two one-arm-blocked branches reach D2 with opposite amplitudes
    # (forced by the open bench's exact dark port), so the conditioned
    # state is the relative-minus Bell state
    target = B.epr_state() * np.array([1.0, 1.0, 1.0, -1.0])
    assert abs(target @ post) ** 2 == pytest.approx(1.0, abs=1e-10)
    rho_atom1 = np.zeros((2, 2), dtype=complex)
    vec = post.reshape(2, 2)
    rho_atom1 = vec @ vec.conj().T
    assert np.allclose(np.linalg.eigvalsh(rho_atom1), [0.5, 0.5], atol=1e-12)


def test_qle_joint_table_is_bayes_consistent():
    joint = B.run_qle()
    p_branch = 0.25
    for outcome, p_out in joint.photon_probabilities.items():
        if p_out == 0.0:
            continue
        for label in joint.branch_labels:
            cell = joint.joint.get((label, outcome), 0.0)
            # P(branch|outcome) P(outcome) == P(outcome|branch) P(branch)
            lhs = joint.conditional_atom_probability(outcome, label) * p_out
            rhs = (cell / p_branch) * p_branch
            assert lhs == pytest.approx(rhs, abs=1e-14)
            assert lhs == pytest.approx(cell, abs=1e-14)


def test_bell_agreement_values():
    state = B.epr_state()
    for name, angle in B.SETTING_ANGLES_DEG.items():
        assert B.bell_agreement(state, angle, angle) == pytest.approx(1.0, abs=1e-12)
    assert B.bell_agreement(state, 0.0, 120.0) == pytest.approx(0.25, abs=1e-12)
    assert B.bell_agreement(state, 120.0, 240.0) == pytest.approx(0.25, abs=1e-12)
    # generic separation follows cos^2(delta/2)
    assert B.bell_agreement(state, 30.0, 90.0) == \
        pytest.approx(np.cos(np.deg2rad(30.0)) ** 2, abs=1e-12)


def test_random_settings_agreement_below_local_bound():
    state = B.epr_state()
    agreement = B.random_settings_agreement(state)
    assert agreement == pytest.approx(0.5, abs=1e-12)
    bound = B.local_instruction_bound()
    assert bound == pytest.approx(5.0 / 9.0, abs=1e-15)
    assert agreement < bound


def test_local_bound_enumeration_is_exhaustive():
    # recompute the floor by hand over the 8 instruction sets
    floors = []
    for instr in itertools.product((1, -1), repeat=3):
        agree = sum(instr[i] == instr[j] for i in range(3) for j in range(3))
        floors.append(agree / 9.0)
    assert len(floors) == 8
    assert min(floors) == B.local_instruction_bound()


def test_bell_agreement_requires_two_atom_state():
    with pytest.raises(ValueError):
        B.bell_agreement(np.array([1.0, 0.0]), 0.0, 0.0)


def test_spin_rotation_is_special_orthogonal():
    for theta in (0.0, 0.5, 2.1):
        r = B.spin_rotation(theta)
        assert np.allclose(r.T @ r, np.eye(2), atol=1e-12)
        assert np.linalg.det(r) == pytest.approx(1.0, abs=1e-12)
