"""Finite-group representation machinery.

A quantum experiment's density matrix can be rebuilt from nothing but the
unitary irrep matrices D(g) of its symmetry group and their measured
averages <D(g)>:

    rho = (n/N) * sum_g D(g^-1) <D(g)>

where n is the irrep dimension and N the group order.  This module holds
the finite-group plumbing (multiplication table, inverses, validation),
the orthogonality check that underwrites the reconstruction, and the
reconstruction itself, together with a small corpus of groups exhibiting
1- and 2-dimensional irreps: Z2, Z4, S3 (= dihedral D3) and Q8.

All matrices are dense complex numpy arrays.  Everything is immutable
after construction and all operations are pure functions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

# Exact algebraic identities hold to ATOL_EXACT in double precision on
# these tiny matrices; chained computations (averages -> rho -> traces)
# get the looser ATOL_CHAIN.
ATOL_EXACT = 1e-12
ATOL_CHAIN = 1e-10


class GroupValidationError(ValueError):
    """Raised when a group table or representation fails its invariants."""


@dataclass(frozen=True)
class FiniteGroup:
    """A finite group given by labels and an explicit multiplication table.

    Parameters
    ----------
    name : str
        Display name.
    elements : tuple of str
        Element labels; the identity must be among them.
    table : mapping (g, h) -> gh
        Complete multiplication table on labels.

    Closure, identity uniqueness, two-sided inverses and associativity are
    all verified on construction (associativity exhaustively, which is fine
    for the shipped orders <= 24).
    """

    name: str
    elements: tuple
    table: Mapping
    identity: str = field(init=False)
    inverse: Mapping = field(init=False)

    def __post_init__(self):
        elems = self.elements
        for g in elems:
            for h in elems:
                if (g, h) not in self.table:
                    raise GroupValidationError(f"{self.name}: missing product ({g},{h})")
                if self.table[(g, h)] not in elems:
                    raise GroupValidationError(
                        f"{self.name}: product ({g},{h}) leaves the element set")
        identities = [e for e in elems
                      if all(self.table[(e, g)] == g and self.table[(g, e)] == g
                             for g in elems)]
        if len(identities) != 1:
            raise GroupValidationError(
                f"{self.name}: expected exactly one identity, found {identities}")
        object.__setattr__(self, "identity", identities[0])
        inv = {}
        for g in elems:
            partners = [h for h in elems
                        if self.table[(g, h)] == self.identity
                        and self.table[(h, g)] == self.identity]
            if len(partners) != 1:
                raise GroupValidationError(f"{self.name}: no two-sided inverse for {g}")
            inv[g] = partners[0]
        object.__setattr__(self, "inverse", inv)
        for a in elems:
            for b in elems:
                for c in elems:
                    if self.table[(self.table[(a, b)], c)] != self.table[(a, self.table[(b, c)])]:
                        raise GroupValidationError(
                            f"{self.name}: associativity fails on ({a},{b},{c})")

    @property
    def order(self):
        return len(self.elements)

    def mul(self, g, h):
        return self.table[(g, h)]

    def inv(self, g):
        return self.inverse[g]


@dataclass(frozen=True)
class GroupRep:
    """A unitary irrep: one n x n matrix per group element.

    Construction verifies unitarity, D(e) = I, and the homomorphism
    D(g)D(h) = D(gh); a failure raises naming the offending pair.
    """

    group: FiniteGroup
    name: str
    matrices: Mapping

    def __post_init__(self):
        mats = {g: np.asarray(m, dtype=complex) for g, m in self.matrices.items()}
        object.__setattr__(self, "matrices", mats)
        n = self.dim
        eye = np.eye(n)
        for g in self.group.elements:
            if g not in mats:
                raise GroupValidationError(f"{self.name}: no matrix for {g}")
            m = mats[g]
            if m.shape != (n, n):
                raise GroupValidationError(f"{self.name}: matrix for {g} has shape {m.shape}")
            if not np.allclose(m.conj().T @ m, eye, atol=ATOL_EXACT):
                raise GroupValidationError(f"{self.name}: D({g}) is not unitary")
        if not np.allclose(mats[self.group.identity], eye, atol=ATOL_EXACT):
            raise GroupValidationError(f"{self.name}: D(identity) != I")
        for g in self.group.elements:
            for h in self.group.elements:
                if not np.allclose(mats[g] @ mats[h], mats[self.group.mul(g, h)],
                                   atol=ATOL_EXACT):
                    raise GroupValidationError(
                        f"{self.name}: homomorphism fails on pair ({g},{h})")

    @property
    def dim(self):
        return next(iter(self.matrices.values())).shape[0]

    def matrix(self, g):
        return self.matrices[g]


@dataclass(frozen=True)
class AverageSet:
    """Measured (or state-derived) averages <D(g)>, one complex number per g."""

    values: Mapping

    def conjugate_symmetric(self, group, atol=ATOL_EXACT):
        """True when <D(g^-1)> = conj(<D(g)>) for every g."""
        return all(abs(self.values[group.inv(g)] - np.conj(self.values[g])) <= atol
                   for g in group.elements)


@dataclass(frozen=True)
class DensityMatrix:
    matrix: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "matrix", np.asarray(self.matrix, dtype=complex))

    @property
    def dim(self):
        return self.matrix.shape[0]

    def hermiticity_defect(self):
        return float(np.max(np.abs(self.matrix - self.matrix.conj().T)))

    def eigenvalues(self):
        return np.linalg.eigvalsh(self.matrix)


def verify_orthogonality(rep: GroupRep) -> float:
    """Maximum residual of the irrep orthogonality sum.

    Returns max over (k,j,l,m) of

        | sum_g (n/N) [D(g^-1)]_kj [D(g)]_lm  -  delta_jl delta_km |

    which vanishes (to ATOL_EXACT) exactly when the matrices form a single
    unitary irrep.
    """
    g_order = rep.group.order
    n = rep.dim
    inv_stack = np.stack([rep.matrix(rep.group.inv(g)) for g in rep.group.elements])
    fwd_stack = np.stack([rep.matrix(g) for g in rep.group.elements])
    # sums[k,j,l,m] = sum_g (n/N) D(g^-1)_kj D(g)_lm
    sums = np.einsum("gkj,glm->kjlm", inv_stack, fwd_stack) * (n / g_order)
    delta = np.eye(n)
    target = np.einsum("jl,km->kjlm", delta, delta)
    return float(np.max(np.abs(sums - target)))


def averages_from_state(rep: GroupRep, psi) -> AverageSet:
    """Ideal click-frequency averages <psi|D(g)|psi> for a pure state."""
    psi = np.asarray(psi, dtype=complex)
    if psi.shape != (rep.dim,):
        raise ValueError(f"state has length {psi.shape}, irrep dimension is {rep.dim}")
    norm = np.linalg.norm(psi)
    if abs(norm - 1.0) > ATOL_EXACT:
        raise ValueError(f"state is not normalized: |psi| = {norm!r}")
    values = {g: complex(psi.conj() @ rep.matrix(g) @ psi) for g in rep.group.elements}
    return AverageSet(values)


def reconstruct_density(rep: GroupRep, avgs: AverageSet) -> DensityMatrix:
    """Density matrix (n/N) sum_g D(g^-1) <D(g)>.

    Hermiticity is automatic for conjugate-symmetric average sets because
    the sum pairs each g with its inverse.  When the averages came from a
    pure state on the irrep itself (the multiplicity-one situation), the
    result is the rank-one projector onto that state.
    """
    missing = [g for g in rep.group.elements if g not in avgs.values]
    if missing:
        raise ValueError(f"averages missing for elements: {missing}")
    n = rep.dim
    rho = np.zeros((n, n), dtype=complex)
    for g in rep.group.elements:
        rho += rep.matrix(rep.group.inv(g)) * avgs.values[g]
    rho *= n / rep.group.order
    return DensityMatrix(rho)


def expectation(rho: DensityMatrix, operator) -> complex:
    """Tr{rho D} for a symmetry operator D."""
    operator = np.asarray(operator, dtype=complex)
    if operator.shape != rho.matrix.shape:
        raise ValueError(
            f"dimension mismatch: rho is {rho.matrix.shape}, operator is {operator.shape}")
    return complex(np.trace(rho.matrix @ operator))


# ----------------------------------------------------------------------
# Shipped group corpus
# ----------------------------------------------------------------------

def _group_from_products(name, elements, product):
    table = {(g, h): product(g, h) for g in elements for h in elements}
    return FiniteGroup(name, tuple(elements), table)


def z2():
    return _group_from_products("Z2", ["e", "a"],
                                lambda g, h: "e" if g == h else "a")


def z2_irreps(group=None):
    g = group or z2()
    return {
        "trivial": GroupRep(g, "trivial", {"e": [[1]], "a": [[1]]}),
        "sign": GroupRep(g, "sign", {"e": [[1]], "a": [[-1]]}),
    }


def z4():
    elements = ["g0", "g1", "g2", "g3"]
    return _group_from_products(
        "Z4", elements,
        lambda a, b: f"g{(int(a[1]) + int(b[1])) % 4}")


def z4_irreps(group=None):
    g = group or z4()
    reps = {}
    for j in range(4):
        mats = {f"g{k}": [[1j ** (j * k)]] for k in range(4)}
        reps[f"chi{j}"] = GroupRep(g, f"chi{j}", mats)
    return reps


def _rotation2(theta):
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[c, -s], [s, c]])


def s3():
    """Dihedral group of the triangle: rotations r0,r1,r2 and reflections s0,s1,s2."""
    mats = {}
    flip = np.diag([1.0, -1.0])
    for k in range(3):
        mats[f"r{k}"] = _rotation2(2 * np.pi * k / 3)
        mats[f"s{k}"] = _rotation2(2 * np.pi * k / 3) @ flip
    elements = list(mats)

    def product(a, b):
        prod = mats[a] @ mats[b]
        for label, m in mats.items():
            if np.allclose(prod, m, atol=1e-9):
                return label
        raise AssertionError("dihedral closure")

    group = _group_from_products("S3", elements, product)
    return group, mats


def s3_irreps(group=None, mats=None):
    if group is None:
        group, mats = s3()
    trivial = {g: [[1]] for g in group.elements}
    sign = {g: [[1]] if g.startswith("r") else [[-1]] for g in group.elements}
    return {
        "trivial": GroupRep(group, "trivial", trivial),
        "sign": GroupRep(group, "sign", sign),
        "standard": GroupRep(group, "standard", mats),
    }


def q8():
    """Quaternion group {±1, ±i, ±j, ±k} via its faithful 2-dim matrices."""
    eye = np.eye(2, dtype=complex)
    mi = np.array([[1j, 0], [0, -1j]])
    mj = np.array([[0, 1], [-1, 0]], dtype=complex)
    mk = np.array([[0, 1j], [1j, 0]])
    mats = {"1": eye, "-1": -eye, "i": mi, "-i": -mi,
            "j": mj, "-j": -mj, "k": mk, "-k": -mk}
    elements = list(mats)

    def product(a, b):
        prod = mats[a] @ mats[b]
        for label, m in mats.items():
            if np.allclose(prod, m, atol=1e-12):
                return label
        raise AssertionError("quaternion closure")

    group = _group_from_products("Q8", elements, product)
    return group, mats


def q8_irreps(group=None, mats=None):
    if group is None:
        group, mats = q8()
    # The three sign characters have kernels {±1,±i}, {±1,±j}, {±1,±k}.
    def sign_char(kept):
        return {g: [[1]] if g.strip("-") in ("1", kept) else [[-1]]
                for g in group.elements}

    return {
        "trivial": GroupRep(group, "trivial", {g: [[1]] for g in group.elements}),
        "sign_i": GroupRep(group, "sign_i", sign_char("i")),
        "sign_j": GroupRep(group, "sign_j", sign_char("j")),
        "sign_k": GroupRep(group, "sign_k", sign_char("k")),
        "spinor": GroupRep(group, "spinor", mats),
    }


def shipped_irreps():
    """All irreps of the shipped corpus, keyed by 'group/irrep'."""
    out = {}
    for name, reps in [("Z2", z2_irreps()), ("Z4", z4_irreps()),
                       ("S3", s3_irreps()), ("Q8", q8_irreps())]:
        for rep_name, rep in reps.items():
            out[f"{name}/{rep_name}"] = rep
    return out


# ----------------------------------------------------------------------
# Import format for user-supplied groups
# ----------------------------------------------------------------------

def load_group_text(text):
    """Parse a group plus one representation from the plain-text format.

    Line 1: whitespace-separated element labels (identity inferred).
    Next N lines: multiplication table rows; row for g lists g*h for each
    h in header order.
    Next line: the representation dimension n.
    Next N lines: one per element in header order, the label followed by
    n*n entries as `re,im` pairs, row-major.

    Returns (FiniteGroup, GroupRep).
    """
    lines = [ln.strip() for ln in text.splitlines()
             if ln.strip() and not ln.strip().startswith("#")]
    if not lines:
        raise GroupValidationError("empty group file")
    elements = lines[0].split()
    n_elems = len(elements)
    if len(lines) < 1 + n_elems + 1 + n_elems:
        raise GroupValidationError("truncated group file")
    table = {}
    for i, g in enumerate(elements):
        row = lines[1 + i].split()
        if len(row) != n_elems:
            raise GroupValidationError(f"table row for {g} has {len(row)} entries")
        for h, prod in zip(elements, row):
            table[(g, h)] = prod
    group = FiniteGroup("imported", tuple(elements), table)
    dim = int(lines[1 + n_elems])
    mats = {}
    for i in range(n_elems):
        parts = lines[2 + n_elems + i].split()
        label, entries = parts[0], parts[1:]
        if label != elements[i]:
            raise GroupValidationError(
                f"matrix rows out of order: expected {elements[i]}, got {label}")
        if len(entries) != dim * dim:
            raise GroupValidationError(f"matrix for {label} needs {dim * dim} entries")
        vals = [complex(float(p.split(",")[0]), float(p.split(",")[1])) for p in entries]
        mats[label] = np.array(vals, dtype=complex).reshape(dim, dim)
    rep = GroupRep(group, "imported", mats)
    return group, rep


def dump_group_text(rep: GroupRep):
    """Inverse of load_group_text for the shipped corpus (round-trip aid)."""
    group = rep.group
    lines = [" ".join(group.elements)]
    for g in group.elements:
        lines.append(" ".join(group.mul(g, h) for h in group.elements))
    lines.append(str(rep.dim))
    for g in group.elements:
        flat = rep.matrix(g).reshape(-1)
        lines.append(g + " " + " ".join(f"{z.real:.17g},{z.imag:.17g}" for z in flat))
    return "\n".join(lines) + "\n"
