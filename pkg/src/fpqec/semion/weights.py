"""Scalar weights of the double-semion state sum.

omega is the nontrivial Z2 group 3-cocycle; rho^x are the irreducible
tube-algebra representations labelling the four anyon types.
"""

from __future__ import annotations

ANYONS = ("1", "s", "sbar", "ssbar")


def omega(a, b, c):
    """Tetrahedron weight (-1)^(abc) for bits a, b, c."""
    return -1.0 if (a & b & c) else 1.0


def rho(x, g, h):
    """Tube-segment weight of anyon x on loop variable g, length variable h."""
    if x == "1":
        return 1.0 + 0j if g == 0 else 0j
    if x == "s":
        return 1j ** h if g == 1 else 0j
    if x == "sbar":
        return (-1j) ** h if g == 1 else 0j
    if x == "ssbar":
        return (-1.0 + 0j) ** h if g == 0 else 0j
    raise ValueError(f"unknown anyon label {x!r}")


def rho_tube_sum(g, h):
    """Normalized sum over all tube segments: (1/2) sum_x rho^x(g, h).

    The 1/2 is the state-sum weight of the summed-over loop holonomy; with
    it the sum collapses the tube to delta_{h,0} exactly.
    """
    return sum(rho(x, g, h) for x in ANYONS) / 2.0
