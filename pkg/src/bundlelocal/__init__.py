"""Exact local invariants of moduli spaces of semistable bundles on curves:
tangent spaces, tangent cones, multiplicities and invariant rings at
non-stable points, each closed form paired with a brute-force oracle."""

__version__ = "0.1.0"
