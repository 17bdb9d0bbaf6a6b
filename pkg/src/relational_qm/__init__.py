"""Symmetry-based quantum mechanics toolkit.

Subpackages cover: finite-group irreps and density-matrix reconstruction
(groups), the c->infinity contraction carrying the canonical commutator
(contraction), Lorentz/weakly-relativistic/Galilean kinematics
(kinematics), symmetry-operator optical benches with interaction-free
measurement and two-atom post-selection (bench), the probability-exponent
argument and its normed-algebra instances (born), the first-event twin
slit sampler (sampler), and the bench script language plus CLI (dsl, cli).
"""

__version__ = "0.1.0"
