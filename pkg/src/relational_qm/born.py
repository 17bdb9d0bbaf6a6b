"""Probability-exponent machinery and normed-algebra instances.

If the probability carried by an amplitude psi is |psi|^n and relative
phases are uniformly uncertain, averaging the two-path probability over
the relative phase forces

    I(n) = (2^n / 2pi) * integral_0^pi |cos(alpha)|^n d(alpha) = 1.

I(n) is evaluated by adaptive Simpson quadrature (split at pi/2 where the
odd-n integrand has its kink); the even values tie to the factorial
identity (2m)!/(2(m!)^2), the odd ones to a closed form that keeps a
stray pi, and n = 2 is the unique solution: the squared-modulus rule.

The amplitude candidates allowed by norm composition |psi*phi| =
|psi||phi| are the reals, complexes, quaternions and octonions; the three
complex-and-up instances are provided here as explicit multiplication
tables.  Octonion norms do compose, but mixing multiplication with
addition exposes the non-associativity that disqualifies them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


# ----------------------------------------------------------------------
# Adaptive Simpson quadrature
# ----------------------------------------------------------------------

def _simpson(fa, fm, fb, a, b):
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb)


def _adaptive(f, a, b, fa, fm, fb, whole, tol, depth):
    m = 0.5 * (a + b)
    lm, rm = 0.5 * (a + m), 0.5 * (m + b)
    flm, frm = f(lm), f(rm)
    left = _simpson(fa, flm, fm, a, m)
    right = _simpson(fm, frm, fb, m, b)
    if depth <= 0 or abs(left + right - whole) <= 15.0 * tol:
        return left + right + (left + right - whole) / 15.0
    return (_adaptive(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)
            + _adaptive(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1))


def adaptive_simpson(f, a, b, tol=1e-12, max_depth=40):
    fa, fb, fm = f(a), f(b), f(0.5 * (a + b))
    whole = _simpson(fa, fm, fb, a, b)
    return _adaptive(f, a, b, fa, fm, fb, whole, tol, max_depth)


def phase_avg_integral(n: int) -> float:
    """I(n) = (2^n/2pi) * integral_0^pi |cos alpha|^n d(alpha).

    The prefactor is folded into the integrand so the quadrature tolerance
    bounds the absolute error of I(n) itself (< 1e-9 up to n ~ 20).
    """
    if n < 0:
        raise ValueError("exponent must be a non-negative integer")
    scale = 2.0 ** n / (2.0 * math.pi)

    def integrand(alpha):
        return scale * abs(math.cos(alpha)) ** n

    half = math.pi / 2.0
    return (adaptive_simpson(integrand, 0.0, half, tol=2e-10)
            + adaptive_simpson(integrand, half, math.pi, tol=2e-10))


def find_born_exponent(max_n: int, tol: float = 1e-6):
    """All exponents n <= max_n with |I(n) - 1| < tol; this is {2}."""
    if max_n < 2:
        return set()
    return {n for n in range(max_n + 1) if abs(phase_avg_integral(n) - 1.0) < tol}


def factorial_identity(m: int) -> float:
    """(2m)! / (2 (m!)^2), computed in log space; equals I(2m)."""
    if m < 1:
        raise ValueError("m must be a positive integer")
    return math.exp(math.lgamma(2 * m + 1) - math.log(2.0) - 2.0 * math.lgamma(m + 1))


def odd_exponent_closed_form(m: int) -> float:
    """I(2m+1) = (2^{2m+1}/2pi) * 2^{2m+1} (m!)^2 / (2m+1)!.

    The leftover pi never cancels, so no odd exponent satisfies I = 1.
    """
    if m < 0:
        raise ValueError("m must be a non-negative integer")
    log_val = (2 * (2 * m + 1)) * math.log(2.0) - math.log(2.0 * math.pi) \
        + 2.0 * math.lgamma(m + 1) - math.lgamma(2 * m + 2)
    return math.exp(log_val)


def exponent_table(max_n: int):
    """Rows (n, I(n), |I(n)-1|) for the report path."""
    return [(n, phase_avg_integral(n), abs(phase_avg_integral(n) - 1.0))
            for n in range(max_n + 1)]


# ----------------------------------------------------------------------
# Division algebras from multiplication tables
# ----------------------------------------------------------------------

# Fano-plane cyclic triples (e_i e_j = e_k, cyclically) fixing the
# octonion table; every unordered pair of imaginary units appears in
# exactly one line.
OCTONION_TRIPLES = ((1, 2, 4), (2, 3, 5), (3, 4, 6), (4, 5, 7),
                    (5, 6, 1), (6, 7, 2), (7, 1, 3))


def _tensor_from_triples(dim, triples):
    t = np.zeros((dim, dim, dim))
    t[0, 0, 0] = 1.0
    for i in range(1, dim):
        t[0, i, i] = 1.0
        t[i, 0, i] = 1.0
        t[i, i, 0] = -1.0
    for a, b, c in triples:
        for i, j, k in ((a, b, c), (b, c, a), (c, a, b)):
            t[i, j, k] = 1.0
            t[j, i, k] = -1.0
    return t


@dataclass(frozen=True)
class DivisionAlgebra:
    """Real coefficient algebra with product from a structure tensor."""

    name: str
    dim: int
    tensor: np.ndarray

    def multiply(self, x, y):
        """Product; broadcasts over leading axes of shape (..., dim)."""
        return np.einsum("...i,...j,ijk->...k", x, y, self.tensor)

    @staticmethod
    def norm(x):
        return np.sqrt(np.sum(np.asarray(x) ** 2, axis=-1))

    def sample(self, rng, count):
        return rng.standard_normal((count, self.dim))


COMPLEX = DivisionAlgebra("complex", 2, _tensor_from_triples(2, ()))
QUATERNION = DivisionAlgebra("quaternion", 4, _tensor_from_triples(4, ((1, 2, 3),)))
OCTONION = DivisionAlgebra("octonion", 8, _tensor_from_triples(8, OCTONION_TRIPLES))

ALGEBRAS = {a.name: a for a in (COMPLEX, QUATERNION, OCTONION)}


def norm_multiplicativity(algebra, trials: int = 1000, seed: int = 0) -> float:
    """Max residual of ||xy| - |x||y|| over random pairs; ~1e-10 for all three."""
    alg = ALGEBRAS[algebra] if isinstance(algebra, str) else algebra
    rng = np.random.default_rng(seed)
    x = alg.sample(rng, trials)
    y = alg.sample(rng, trials)
    lhs = alg.norm(alg.multiply(x, y))
    rhs = alg.norm(x) * alg.norm(y)
    return float(np.max(np.abs(lhs - rhs)))


def associativity_with_addition_residuals(algebra, trials: int, seed: int = 0):
    """| |a(bc)+d| - |(ab)c+d| | over random quadruples of unit vectors."""
    alg = ALGEBRAS[algebra] if isinstance(algebra, str) else algebra
    rng = np.random.default_rng(seed)
    vecs = [alg.sample(rng, trials) for _ in range(4)]
    vecs = [v / alg.norm(v)[..., None] for v in vecs]
    a, b, c, d = vecs
    lhs = alg.norm(alg.multiply(a, alg.multiply(b, c)) + d)
    rhs = alg.norm(alg.multiply(alg.multiply(a, b), c) + d)
    return np.abs(lhs - rhs)


def octonion_nonassociativity_witness(seed: int = 0, max_draws: int = 1000,
                                      gap: float = 0.01):
    """A quadruple (p1, p2, p3, phi) with | |p1(p2 p3)+phi| - |(p1 p2)p3+phi| | > gap.

    Random search must succeed within max_draws; exhaustion would falsify
    non-associativity and raises.
    """
    rng = np.random.default_rng(seed)
    for _ in range(max_draws):
        quad = [v / OCTONION.norm(v) for v in OCTONION.sample(rng, 4)]
        p1, p2, p3, phi = quad
        lhs = OCTONION.norm(OCTONION.multiply(p1, OCTONION.multiply(p2, p3)) + phi)
        rhs = OCTONION.norm(OCTONION.multiply(OCTONION.multiply(p1, p2), p3) + phi)
        if abs(lhs - rhs) > gap:
            return tuple(quad), float(abs(lhs - rhs))
    raise RuntimeError("no non-associativity witness found; search exhausted")


def octonion_basis_witness():
    """Exact basis witness under the shipped table: e1(e2 e3) = -(e1 e2)e3.

    With phi = e6 the two sum norms are 2 and 0.
    """
    e = np.eye(8)
    p1, p2, p3, phi = e[1], e[2], e[3], e[6]
    lhs = OCTONION.norm(OCTONION.multiply(p1, OCTONION.multiply(p2, p3)) + phi)
    rhs = OCTONION.norm(OCTONION.multiply(OCTONION.multiply(p1, p2), p3) + phi)
    return (p1, p2, p3, phi), float(lhs), float(rhs)
