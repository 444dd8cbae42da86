"""Compute the state-sum invariant on the shipped manifolds.

The value factors as N * |G|^a * |H|^b where N counts admissible
colorings, a = -(number of vertices) and b = vertices - edges.  The disk
D^3 always gives |H|/|G|; the solid torus gives 1 for the identity and
trivial-H modules; S^2 x [0,1] gives |H| |ker bnd| / |G|.

Run from the repository root:  python3 demos/02_state_sum.py
"""

from fractions import Fraction

from cmtop import brute_force_invariant, invariant
from cmtop import fixtures

print("== the disk: one tetrahedron ==")
tet = fixtures.single_tet()
print(f"counts (V,E,F,T) = {tet.counts.as_tuple()}, "
      f"{len(tet.boundary_face_indices())} boundary faces")
for name in fixtures.CM_NAMES:
    cm = fixtures.crossed_module(name)
    fast = invariant(cm, tet)
    slow = brute_force_invariant(cm, tet)
    assert fast.value == slow.value == Fraction(cm.h.order, cm.g.order)
    print(f"  {name:10s} -> {fast}   (= |H|/|G|, both engines agree)")

print()
print("== singular fixtures: the smallest triangulations of these manifolds ==")
for cname, cm_names in [
    ("solid_torus", ("id_z2", "id_z3", "trivh_s3", "z4_to_z2")),
    ("s2_interval", ("id_z2", "id_z3", "z4_to_z2", "trivh_z3")),
]:
    c = fixtures.COMPLEXES[cname]()
    print(f"{cname}: counts {c.counts.as_tuple()}")
    for name in cm_names:
        cm = fixtures.crossed_module(name)
        v = invariant(cm, c)
        ker = len(cm.kernel_of_boundary())
        print(f"  {name:10s} -> Z = {v.value}   (|ker bnd| = {ker})")

print()
print("== Dijkgraaf-Witten reduction: trivial H counts flat colorings ==")
for name in ("trivh_z2", "trivh_z3", "trivh_s3"):
    cm = fixtures.crossed_module(name)
    v = invariant(cm, fixtures.single_tet())
    print(f"  {name}: N = {v.admissible_count} = |G|^3, Z = {v.value} = 1/|G|")

print()
print("== closed manifold for contrast: S^3 as the boundary of the 4-simplex ==")
s3 = fixtures.s3_boundary_4simplex()
v = brute_force_invariant(fixtures.crossed_module("trivh_z2"), s3)
print(f"  Z(S^3) over trivh_z2 = {v.value} (Hom(pi_1, G) count / |G| = 1/2)")
