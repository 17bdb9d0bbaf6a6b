"""Contraction of the relativistic spacetime symmetry algebra.

The ten-generator algebra of rotations J_m, boosts K_m, time translation
T0 and space translations T_m is stored as exact structure constants over
the contraction parameter eps = 1/c^2 (Gaussian rationals in eps, with the
imaginary unit kept symbolic via sympy).  Taking eps -> 0 after the
rescaling eps*T0 -> M/hbar yields the nonrelativistic algebra in which M
is central, boosts commute, and

    [T_m, K_n] = (i/hbar) delta_mn M

survives.  With P_m = hbar*T_m and Q_n = -(hbar/m)*K_n this is exactly the
canonical commutation relation [P_m, Q_n] = -i*hbar*delta_mn*I, and it
vanishes identically when the boost-translation bracket is switched off
first (absolute simultaneity): the commutator structure of quantum
mechanics is carried entirely by that one bracket family.

Sign convention (fixed here, once): generators are hermitian and brackets
carry the physicist i, so [J1,J2] = i*J3.  The boost-translation family is
[T_m, K_n] = +(i/c^2) delta_mn T0; this is the unique sign for which the
Jacobi identity closes given [T0,K_n] = i*T_n and [K_m,K_n] = -(i/c^2)J_k,
and it reproduces both the canonical commutator above and the exchange
phase U_K U_T = U_T U_K * exp(+i*a*v*m/hbar).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np
import sympy as sp

EPS = sp.Symbol("eps", nonnegative=True)   # 1/c^2
HBAR = sp.Symbol("hbar", positive=True)
MASS = sp.Symbol("m", positive=True)


class AlgebraError(ValueError):
    """Raised for malformed bracket tables or singular contractions."""


@dataclass(frozen=True)
class ContractionParams:
    """Physical scales entering the rescaling and the canonical pair.

    hbar and mass may be sympy symbols (exact results) or floats.
    """

    hbar: object = HBAR
    mass: object = MASS

    def __post_init__(self):
        for label, v in (("hbar", self.hbar), ("mass", self.mass)):
            if isinstance(v, (int, float)) and v <= 0:
                raise ValueError(f"{label} must be positive")


def _simp(expr):
    return sp.cancel(sp.together(sp.expand(expr)))


@dataclass(frozen=True)
class LieAlgebra:
    """Basis labels plus antisymmetric structure constants over eps.

    brackets maps ordered pairs (a, b) to {target: coefficient}; only one
    orientation needs to be supplied, the other is filled in by
    antisymmetry.  Coefficients are sympy expressions in EPS.
    """

    name: str
    basis: tuple
    brackets: Mapping = field(default_factory=dict)

    def __post_init__(self):
        full = {}
        for (a, b), combo in self.brackets.items():
            if a not in self.basis or b not in self.basis:
                raise AlgebraError(f"bracket [{a},{b}] uses unknown generators")
            combo = {t: sp.sympify(c) for t, c in combo.items()
                     if sp.sympify(c) != 0}
            for t in combo:
                if t not in self.basis:
                    raise AlgebraError(f"bracket [{a},{b}] targets unknown {t}")
            if (b, a) in full:
                mirror = {t: _simp(-c) for t, c in full[(b, a)].items()}
                if mirror != combo:
                    raise AlgebraError(f"antisymmetry violated on [{a},{b}]")
            full[(a, b)] = combo
            full.setdefault((b, a), {t: _simp(-c) for t, c in combo.items()})
        object.__setattr__(self, "brackets", full)

    def bracket(self, a, b):
        """[a, b] as {target: coefficient}; empty dict means zero."""
        return dict(self.brackets.get((a, b), {}))

    def bracket_combo(self, combo_a, combo_b):
        """Bracket of two linear combinations {gen: coeff}."""
        out = {}
        for a, ca in combo_a.items():
            for b, cb in combo_b.items():
                for t, c in self.bracket(a, b).items():
                    out[t] = _simp(out.get(t, 0) + ca * cb * c)
        return {t: c for t, c in out.items() if c != 0}

    def is_central(self, x):
        return all(not self.bracket(x, y) for y in self.basis)

    def jacobi_defects(self):
        """All triples where sum_cyc [a,[b,c]] fails to vanish identically."""
        bad = []
        for a, b, c in itertools.combinations(self.basis, 3):
            total = {}
            for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
                inner = self.bracket(y, z)
                outer = self.bracket_combo({x: sp.Integer(1)}, inner)
                for t, coeff in outer.items():
                    total[t] = _simp(total.get(t, 0) + coeff)
            residue = {t: coeff for t, coeff in total.items() if _simp(coeff) != 0}
            if residue:
                bad.append(((a, b, c), residue))
        return bad

    def nonzero_lines(self):
        """Dump lines `[a,b] = coeff*target`, one per independent bracket."""
        lines = []
        seen = set()
        for a, b in itertools.combinations(self.basis, 2):
            if (a, b) in seen:
                continue
            combo = self.bracket(a, b)
            if combo:
                terms = " + ".join(f"({sp.sstr(c)})*{t}" for t, c in sorted(combo.items()))
                lines.append(f"[{a},{b}] = {terms}")
            seen.add((a, b))
        return lines


_CYCLIC = [(1, 2, 3), (2, 3, 1), (3, 1, 2)]


def poincare_algebra() -> LieAlgebra:
    """The ten-generator algebra with boosts, rotations and translations.

    Non-zero families (m,n,k cyclic over 1,2,3; eps = 1/c^2):
        [J_m,J_n] = i J_k        [J_m,K_n] = i K_k       [J_m,T_n] = i T_k
        [K_m,K_n] = -i eps J_k   [T0,K_n] = i T_n        [T_m,K_n] = i eps delta_mn T0
    """
    basis = ("J1", "J2", "J3", "K1", "K2", "K3", "T0", "T1", "T2", "T3")
    br = {}
    i = sp.I
    # all six epsilon_mnk components, so non-cyclic pairs like [J2,K1] get
    # their own sign rather than the antisymmetric mirror of [J1,K2]
    for m, n, k, s in _epsilon_pairs():
        br[(f"J{m}", f"J{n}")] = {f"J{k}": i * s}
        br[(f"J{m}", f"K{n}")] = {f"K{k}": i * s}
        br[(f"J{m}", f"T{n}")] = {f"T{k}": i * s}
        br[(f"K{m}", f"K{n}")] = {f"J{k}": -i * s * EPS}
    for n in (1, 2, 3):
        br[("T0", f"K{n}")] = {f"T{n}": i}
        br[(f"T{n}", f"K{n}")] = {"T0": i * EPS}
    return LieAlgebra("poincare", basis, br)


def _epsilon_pairs():
    """All (m,n,k,sign) with sign = epsilon_mnk != 0."""
    out = []
    for m, n, k in _CYCLIC:
        out.append((m, n, k, 1))
        out.append((n, m, k, -1))
    return out


def galilean_algebra() -> LieAlgebra:
    """The absolute-simultaneity control: eps set to 0 before any rescaling."""
    base = poincare_algebra()
    br = {}
    for (a, b), combo in base.brackets.items():
        newc = {t: _simp(c.subs(EPS, 0)) for t, c in combo.items()}
        newc = {t: c for t, c in newc.items() if c != 0}
        if newc:
            br[(a, b)] = newc
    return LieAlgebra("galilean", base.basis, br)


def contract(alg: LieAlgebra, params: ContractionParams = ContractionParams()) -> LieAlgebra:
    """eps -> 0 limit after the rescaling M = hbar * eps * T0.

    Every contracted structure constant is literally the eps -> 0 limit of
    the corresponding rescaled rational function; a pole raises
    AlgebraError naming the singular bracket.
    """
    if "T0" not in alg.basis:
        raise AlgebraError("contraction expects a T0 generator to rescale")
    hbar = sp.sympify(params.hbar)
    new_basis = tuple(("M" if b == "T0" else b) for b in alg.basis)
    # old-generator combos realizing the new basis before the limit
    realize = {b: ({"T0": hbar * EPS} if b == "M" else {b: sp.Integer(1)})
               for b in new_basis}
    br = {}
    for a, b in itertools.combinations(new_basis, 2):
        combo = alg.bracket_combo(realize[a], realize[b])
        # express any T0 component back through M = hbar*eps*T0
        expressed = {}
        for t, c in combo.items():
            if t == "T0":
                expressed["M"] = _simp(expressed.get("M", 0) + c / (hbar * EPS))
            else:
                expressed[t] = _simp(expressed.get(t, 0) + c)
        limited = {}
        for t, c in expressed.items():
            lim = sp.limit(c, EPS, 0)
            if lim in (sp.oo, -sp.oo, sp.zoo) or lim.has(sp.oo):
                raise AlgebraError(
                    f"bracket [{a},{b}] is singular at eps=0: coefficient {c}")
            if lim != 0:
                limited[t] = lim
        if limited:
            br[(a, b)] = limited
    return LieAlgebra(alg.name + "_contracted", new_basis, br)


def ccr_check(contracted: LieAlgebra, params: ContractionParams = ContractionParams(),
              m: int = 1, n: int = 1):
    """[P_m, Q_n] with P_m = hbar*T_m and Q_n = -(hbar/mass)*K_n.

    Returns the scalar multiplying the identity (M is read as mass*I).
    On the contracted relativistic algebra this is -i*hbar*delta_mn; on the
    contracted absolute-simultaneity algebra it is 0.
    """
    hbar = sp.sympify(params.hbar)
    mass = sp.sympify(params.mass)
    combo = contracted.bracket_combo({f"T{m}": hbar}, {f"K{n}": -hbar / mass})
    scalar = sp.Integer(0)
    for t, c in combo.items():
        if t == "M":
            scalar += c * mass
        else:
            raise AlgebraError(f"[P{m},Q{n}] has a non-central component on {t}")
    return sp.simplify(scalar)


def weyl_phase(a, v, contracted: LieAlgebra,
               params: ContractionParams = ContractionParams()):
    """Exchange-phase exponent for U_T = exp(-i a T1) and U_K = exp(-i v K1).

    Because [T1, K1] is central, exp(A)exp(B) = exp(B)exp(A)exp([A,B])
    holds exactly, giving U_K U_T = U_T U_K * exp(phase).  The returned
    exponent is the scalar [(-i v K1), (-i a T1)] with M read as mass*I;
    its magnitude is a*v*mass/hbar.  Raises if the commutator is not
    central.
    """
    combo = contracted.bracket("T1", "K1")
    for t in combo:
        if not contracted.is_central(t):
            raise AlgebraError(f"[T1,K1] lands on non-central generator {t}")
    mass = sp.sympify(params.mass)
    a, v = sp.sympify(a), sp.sympify(v)
    # [A,B] = (-i v)(-i a)[K1,T1] = a*v*[T1,K1]
    scalar = sp.Integer(0)
    for t, c in combo.items():
        scalar += a * v * c * (mass if t == "M" else sp.Integer(1))
    return sp.simplify(scalar)


# ----------------------------------------------------------------------
# Finite-dimensional cross-check: 3x3 strictly-upper-triangular matrices
# ----------------------------------------------------------------------

def _expm_nilpotent(n):
    # exact for strictly upper triangular 3x3: n^3 = 0
    return np.eye(3, dtype=complex) + n + n @ n / 2.0


def heisenberg_rep(params: ContractionParams):
    """Numeric 3x3 nilpotent rep of the contracted triple {T1, K1, M}.

    T1 -> X, K1 -> (mass/hbar) Y, M -> -i*mass*Z with [X,Y] = Z central and
    Z standing for i times the identity in exchange-phase computations.
    Requires numeric hbar and mass.
    """
    hbar = float(params.hbar)
    mass = float(params.mass)
    x = np.zeros((3, 3), dtype=complex); x[0, 1] = 1.0
    y = np.zeros((3, 3), dtype=complex); y[1, 2] = 1.0
    z = np.zeros((3, 3), dtype=complex); z[0, 2] = 1.0
    return {"T1": x, "K1": (mass / hbar) * y, "M": -1j * mass * z, "_Z": z}


def nilpotent_rep_bracket_defect(params: ContractionParams) -> float:
    """Max deviation of the matrix brackets from (i/hbar)*delta*M and centrality.

    Zero up to a couple of ulps (the two evaluation paths of mass/hbar may
    round differently).
    """
    rep = heisenberg_rep(params)
    hbar = float(params.hbar)
    t1, k1, m = rep["T1"], rep["K1"], rep["M"]
    comm = t1 @ k1 - k1 @ t1
    defect = np.max(np.abs(comm - (1j / hbar) * m))
    for other in (t1, k1):
        defect = max(defect, np.max(np.abs(m @ other - other @ m)))
    return float(defect)


def weyl_phase_nilpotent(a: float, v: float, params: ContractionParams) -> float:
    """Exchange phase recovered from exact polynomial exponentials.

    Returns the real number phi with U_K U_T = U_T U_K (I + phi*Z); under
    the Z = i*identity reading the exchange phase is exp(i*phi), so phi
    equals a*v*mass/hbar.  Raises if the two orderings differ by anything
    other than a central factor.
    """
    rep = heisenberg_rep(params)
    u_t = _expm_nilpotent(-1j * a * rep["T1"])
    u_k = _expm_nilpotent(-1j * v * rep["K1"])
    lhs = u_k @ u_t
    rhs = u_t @ u_k
    # rhs is unipotent, invert exactly: (I+N)^-1 = I - N + N^2
    n = rhs - np.eye(3)
    rhs_inv = np.eye(3) - n + n @ n
    central = lhs @ rhs_inv - np.eye(3)
    off = central.copy()
    off[0, 2] = 0.0
    if np.max(np.abs(off)) > 1e-12:
        raise AlgebraError("orderings differ by a non-central factor")
    return float(np.real(central[0, 2]))
