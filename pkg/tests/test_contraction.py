import numpy as np
import pytest
import sympy as sp

from relational_qm import contraction as C


@pytest.fixture(scope="module")
def poincare():
    return C.poincare_algebra()


@pytest.fixture(scope="module")
def contracted(poincare):
    return C.contract(poincare)


def test_rotation_brackets(poincare):
    assert poincare.bracket("J1", "J2") == {"J3": sp.I}
    assert poincare.bracket("J2", "J1") == {"J3": -sp.I}
    assert poincare.bracket("J2", "K1") == {"K3": -sp.I}
    assert poincare.bracket("J3", "T1") == {"T2": sp.I}


def test_boost_translation_brackets(poincare):
    # the sign here is the Jacobi-consistent one; see the module docstring
    assert poincare.bracket("T1", "K1") == {"T0": sp.I * C.EPS}
    assert poincare.bracket("T1", "K2") == {}
    assert poincare.bracket("T0", "K2") == {"T2": sp.I}
    assert poincare.bracket("K1", "K2") == {"J3": -sp.I * C.EPS}
    assert poincare.bracket("T1", "T2") == {}


def test_exactly_six_bracket_families(poincare):
    families = set()
    for (a, b), combo in poincare.brackets.items():
        if combo:
            families.add((a[0], b[0]) if a[0] <= b[0] else (b[0], a[0]))
    # J-J, J-K, J-T, K-K, K-T0/K-Tm are distinguished by the T label itself
    assert families == {("J", "J"), ("J", "K"), ("J", "T"), ("K", "K"), ("K", "T")}


def test_antisymmetry_everywhere(poincare, contracted):
    for alg in (poincare, contracted):
        for a in alg.basis:
            for b in alg.basis:
                fwd = alg.bracket(a, b)
                bwd = alg.bracket(b, a)
                assert set(fwd) == set(bwd)
                for t, c in fwd.items():
                    assert sp.simplify(c + bwd[t]) == 0


def test_jacobi_exact(poincare, contracted):
    assert poincare.jacobi_defects() == []
    assert contracted.jacobi_defects() == []
    assert C.galilean_algebra().jacobi_defects() == []


def test_contracted_brackets(contracted):
    assert contracted.bracket("K1", "K2") == {}
    assert contracted.bracket("M", "K1") == {}
    assert contracted.bracket("T1", "K1") == {"M": sp.I / C.HBAR}
    assert contracted.bracket("T1", "K2") == {}
    assert contracted.bracket("J1", "J2") == {"J3": sp.I}
    assert contracted.bracket("J1", "K2") == {"K3": sp.I}
    assert contracted.bracket("J1", "T2") == {"T3": sp.I}


def test_m_is_central(contracted):
    assert contracted.is_central("M")


def test_contraction_is_bracketwise_limit(poincare):
    # spot-check the limit construction independently of contract()
    hbar = C.HBAR
    # [M, K1] before the limit: hbar*eps*[T0,K1] = i*hbar*eps*T1 -> 0
    combo = poincare.bracket_combo({"T0": hbar * C.EPS}, {"K1": sp.Integer(1)})
    assert combo == {"T1": sp.I * hbar * C.EPS}
    assert sp.limit(combo["T1"], C.EPS, 0) == 0
    # [T1, K1] lands on T0 with coefficient i*eps = i*(hbar*eps)/hbar -> (i/hbar) M
    combo = poincare.bracket("T1", "K1")
    assert sp.limit(combo["T0"] / (hbar * C.EPS), C.EPS, 0) == sp.I / hbar
    # [K1, K2] -> 0
    combo = poincare.bracket("K1", "K2")
    assert sp.limit(combo["J3"], C.EPS, 0) == 0


def test_ccr_symbolic(contracted):
    params = C.ContractionParams()
    assert sp.simplify(C.ccr_check(contracted, params, 1, 1)
                       + sp.I * C.HBAR) == 0
    assert C.ccr_check(contracted, params, 1, 2) == 0
    assert C.ccr_check(contracted, params, 2, 2) == C.ccr_check(contracted, params, 1, 1)


def test_ccr_numeric_params(poincare):
    params = C.ContractionParams(hbar=2.5, mass=3.0)
    con = C.contract(poincare, params)
    val = complex(C.ccr_check(con, params, 1, 1))
    assert val == pytest.approx(-2.5j, abs=1e-15)


def test_galilean_control_has_no_ccr():
    gal = C.galilean_algebra()
    assert gal.bracket("T1", "K1") == {}
    con = C.contract(gal)
    assert C.ccr_check(con, C.ContractionParams(), 1, 1) == 0


def test_ccr_coefficient_tracks_boost_translation_bracket(poincare):
    # the canonical commutator is proportional to the [T_m,K_n] structure
    # constant: zeroing it (absolute simultaneity) kills the commutator,
    # doubling it doubles the commutator
    def with_tk_scale(scale):
        br = {}
        for (a, b), combo in poincare.brackets.items():
            if {a[0], b[0]} == {"T", "K"} and a != "T0" and b != "T0":
                combo = {t: c * scale for t, c in combo.items()}
            br[(a, b)] = dict(combo)
        return C.LieAlgebra(f"tk_scaled_{scale}", poincare.basis, br)

    params = C.ContractionParams()
    base = C.ccr_check(C.contract(poincare, params), params, 1, 1)
    zeroed = C.ccr_check(C.contract(with_tk_scale(0), params), params, 1, 1)
    doubled = C.ccr_check(C.contract(with_tk_scale(2), params), params, 1, 1)
    assert zeroed == 0
    assert sp.simplify(doubled - 2 * base) == 0


def test_singular_contraction_raises():
    alg = C.LieAlgebra("pole", ("T0", "A", "B"),
                       {("A", "B"): {"T0": 1 / C.EPS}})
    with pytest.raises(C.AlgebraError, match="singular"):
        C.contract(alg)


def test_weyl_phase_symbolic(contracted):
    a, v = sp.symbols("a v", positive=True)
    params = C.ContractionParams()
    phase = C.weyl_phase(a, v, contracted, params)
    assert sp.simplify(phase - sp.I * a * v * C.MASS / C.HBAR) == 0
    assert sp.Abs(phase) == a * v * C.MASS / C.HBAR
    assert C.weyl_phase(0, v, contracted, params) == 0
    assert sp.simplify(C.weyl_phase(2 * a, v, contracted, params)
                       - 2 * phase) == 0


def test_weyl_phase_rejects_noncentral(poincare):
    with pytest.raises(C.AlgebraError, match="central"):
        C.weyl_phase(1, 1, poincare)


def test_nilpotent_rep_reproduces_brackets():
    for hbar, mass in ((1.0, 1.0), (2.5, 3.0), (0.7, 0.2)):
        params = C.ContractionParams(hbar=hbar, mass=mass)
        assert C.nilpotent_rep_bracket_defect(params) < 1e-14


def test_nilpotent_weyl_matches_closed_form():
    rng = np.random.default_rng(17)
    for _ in range(10):
        a, v, mass, hbar = rng.uniform(0.1, 3.0, size=4)
        params = C.ContractionParams(hbar=hbar, mass=mass)
        phi = C.weyl_phase_nilpotent(a, v, params)
        assert abs(phi - a * v * mass / hbar) < 1e-12


def test_dump_format(poincare, contracted):
    lines = poincare.nonzero_lines()
    assert "[J1,J2] = (I)*J3" in lines
    assert any(line.startswith("[K1,T1] = ") and "T0" in line for line in lines)
    after = contracted.nonzero_lines()
    assert any("M" in line and "hbar" in line for line in after)
    assert not any("T0" in line for line in after)
