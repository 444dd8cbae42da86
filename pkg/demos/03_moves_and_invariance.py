"""Rewrite triangulations with Pachner and boundary moves and watch the
invariant stay put while the simplex counts change.

Run from the repository root:  python3 demos/03_moves_and_invariance.py
"""

import random

from cmtop import MoveDescriptor, apply, enumerate_applicable, invariant, relabel
from cmtop import fixtures

cm = fixtures.crossed_module("z4_to_z2")
tet = fixtures.single_tet()
base = invariant(cm, tet)
print(f"start: single tet {tet.counts.as_tuple()}, Z = {base.value}")

print()
print("== a little tour: B13, then B22, then P14 ==")
c = tet
for m in (MoveDescriptor("B13", 3, 5),):
    c = apply(c, m)
    print(f"after {m.kind} on face {m.target}: counts {c.counts.as_tuple()}, "
          f"Z = {invariant(cm, c).value}")
flip = enumerate_applicable(c, "B22")[0]
c = apply(c, flip)
print(f"after B22 flipping edge {flip.target}: counts {c.counts.as_tuple()}, "
      f"Z = {invariant(cm, c).value}")
c = apply(c, MoveDescriptor("P14", 0))
print(f"after P14 on tet 0: counts {c.counts.as_tuple()}, "
      f"Z = {invariant(cm, c).value}")

print()
print("== moves on a singular complex (the solid torus) ==")
torus = fixtures.solid_torus()
cm3 = fixtures.crossed_module("id_z3")
print(f"start: counts {torus.counts.as_tuple()}, Z = {invariant(cm3, torus).value}")
moved = apply(torus, MoveDescriptor("P14", 1))
print(f"P14 inside: counts {moved.counts.as_tuple()}, "
      f"Z = {invariant(cm3, moved).value}")
bdry = torus.boundary_face_indices()
moved = apply(torus, MoveDescriptor("B13", bdry[0]))
print(f"B13 on the boundary torus: counts {moved.counts.as_tuple()}, "
      f"Z = {invariant(cm3, moved).value}")

print()
print("== total-order independence: shuffle the vertex labels ==")
rng = random.Random(0)
s3c = fixtures.s3_boundary_4simplex()
cmw = fixtures.crossed_module("trivh_z2")
want = invariant(cmw, s3c).value
ids = list(s3c.vertices)
for trial in range(5):
    shuffled = ids[:]
    rng.shuffle(shuffled)
    z = invariant(cmw, relabel(s3c, dict(zip(ids, shuffled)))).value
    assert z == want
print(f"5 random relabelings of S^3: all give Z = {want}")
