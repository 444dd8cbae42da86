"""Shared test helpers: the literal per-coloring reference sum.

``naive_statesum`` evaluates the state sum exactly as written: every
edge/face coloring in turn, multiplying delta weights.  It is deliberately
independent of both shipped engines (no admissibility shortcut, no numpy)
and is only usable on tiny inputs.
"""

import itertools
from fractions import Fraction

from cmtop.statesum import Coloring, delta, face_holonomy, tet_obstruction


def naive_statesum(cm, c) -> Fraction:
    g, h = cm.g, cm.h
    k = c.counts
    E, F = k.k1, k.k2
    total = 0
    for ec in itertools.product(range(g.order), repeat=E):
        for hc in itertools.product(range(h.order), repeat=F):
            coloring = Coloring(ec, hc)
            weight = 1
            for f in range(F):
                weight *= delta(g, face_holonomy(cm, c, coloring, f))
                if weight == 0:
                    break
            if weight == 0:
                continue
            for t in range(k.k3):
                weight *= delta(h, tet_obstruction(cm, c, coloring, t))
                if weight == 0:
                    break
            total += weight
    prefactor = (Fraction(g.order) ** (-k.k0 + k.k1 - k.k2)
                 * Fraction(h.order) ** (k.k0 - k.k1 + k.k2 - k.k3))
    per_simplex = Fraction(1, g.order) ** E * Fraction(1, h.order) ** F
    return prefactor * per_simplex * total
