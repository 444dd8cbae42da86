"""Crossed modules (H -> G, ▷) over finite table groups.

A crossed module here is a boundary homomorphism from H to G together with
a left G-action on H by automorphisms, satisfying

  (2)  bnd(x ▷ y) = x bnd(y) x^-1          for all x in G, y in H
  (3)  y -> x ▷ y is an automorphism of H   for each x in G

plus the left-action laws e ▷ y = y and (x1 x2) ▷ y = x1 ▷ (x2 ▷ y).
The G-on-G action is conjugation by definition and is not stored.

The Peiffer identity bnd(y) ▷ y' = y y' y^-1 is a separate, opt-in strict
check: it is standard in the literature but absent from the definition this
package follows, and some valid inputs here genuinely fail it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .groups import (
    FiniteGroup,
    GroupHom,
    build_aut_group,
    build_trivial,
    kernel,
)


@dataclass(frozen=True)
class Violation:
    """One violated axiom with a witness tuple of element indices."""

    axiom: str
    witness: tuple[int, ...]
    detail: str

    def __str__(self) -> str:
        return f"{self.axiom} at {self.witness}: {self.detail}"


@dataclass(frozen=True)
class CrossedModule:
    h: FiniteGroup
    g: FiniteGroup
    boundary: GroupHom
    action: np.ndarray  # shape (|G|, |H|); action[x][y] = x |> y
    name: str = "cm"

    def __post_init__(self):
        if self.action.shape != (self.g.order, self.h.order):
            raise ValueError(
                f"action table shape {self.action.shape} != ({self.g.order}, {self.h.order})")
        if self.boundary.source is not self.h or self.boundary.target is not self.g:
            raise ValueError("boundary must map h to g")
        self.action.setflags(write=False)

    def act(self, x: int, y: int) -> int:
        """x ▷ y."""
        return int(self.action[x, y])

    def bnd(self, y: int) -> int:
        return self.boundary.map[y]

    def kernel_of_boundary(self) -> frozenset[int]:
        return kernel(self.boundary)

    def image_of_boundary(self) -> frozenset[int]:
        return frozenset(self.boundary.map)

    def kernel_is_central(self) -> bool:
        ker = self.kernel_of_boundary()
        return all(self.h.mul(k, y) == self.h.mul(y, k)
                   for k in ker for y in range(self.h.order))

    def __repr__(self) -> str:
        return f"CrossedModule({self.name!r}, |H|={self.h.order}, |G|={self.g.order})"


def _make(h, g, boundary_images, action, name) -> CrossedModule:
    hom = GroupHom.from_map(h, g, boundary_images)
    arr = np.asarray(action, dtype=np.int64)
    return CrossedModule(h=h, g=g, boundary=hom, action=arr, name=name)


def make_crossed_module(
    h: FiniteGroup,
    g: FiniteGroup,
    boundary_images: Iterable[int],
    action: Sequence[Sequence[int]] | np.ndarray,
    name: str = "cm",
    *,
    strict_peiffer: bool = False,
) -> CrossedModule:
    """Build a crossed module and raise if any axiom fails."""
    cm = _make(h, g, boundary_images, action, name)
    report = validate(cm, strict_peiffer=strict_peiffer)
    if report:
        raise ValueError("invalid crossed module: " + "; ".join(map(str, report[:3])))
    return cm


def validate(cm: CrossedModule, strict_peiffer: bool = False) -> list[Violation]:
    """Check every axiom exhaustively; return all violations with witnesses.

    Re-checks the boundary homomorphism property too, so a table mutated
    after construction is still caught.
    """
    h, g = cm.h, cm.g
    act = cm.action
    bnd = cm.boundary.map
    out: list[Violation] = []

    if act.shape != (g.order, h.order):
        return [Violation("shape", act.shape, "action table has wrong shape")]
    if act.min() < 0 or act.max() >= h.order:
        x, y = map(int, np.argwhere((act < 0) | (act >= h.order))[0])
        return [Violation("range", (x, y), f"action entry {act[x, y]} outside H")]

    if len(bnd) != h.order or bnd[0] != 0:
        out.append(Violation("boundary-identity", (0,), "bnd(e_H) != e_G"))
    for a in range(h.order):
        for b in range(h.order):
            if bnd[h.mul(a, b)] != g.mul(bnd[a], bnd[b]):
                out.append(Violation(
                    "boundary-hom", (a, b),
                    f"bnd({a}*{b})={bnd[h.mul(a, b)]} but bnd({a})*bnd({b})={g.mul(bnd[a], bnd[b])}"))

    for y in range(h.order):
        if act[0, y] != y:
            out.append(Violation("left-action-identity", (y,), f"e_G |> {y} = {act[0, y]}"))
    for x1 in range(g.order):
        for x2 in range(g.order):
            x12 = g.mul(x1, x2)
            for y in range(h.order):
                if act[x12, y] != act[x1, act[x2, y]]:
                    out.append(Violation(
                        "left-action-compose", (x1, x2, y),
                        f"({x1}{x2}) |> {y} != {x1} |> ({x2} |> {y})"))

    # Def 2.1(2): bnd(x |> y) = x bnd(y) x^-1
    for x in range(g.order):
        for y in range(h.order):
            if bnd[act[x, y]] != g.conj(x, bnd[y]):
                out.append(Violation(
                    "equivariance", (x, y),
                    f"bnd({x} |> {y}) = {bnd[act[x, y]]} != conj = {g.conj(x, bnd[y])}"))

    # Def 2.1(3): each f_x is an automorphism of H
    for x in range(g.order):
        row = act[x]
        if len(set(int(v) for v in row)) != h.order:
            out.append(Violation("action-bijective", (x,), "f_x is not a bijection"))
            continue
        for y1 in range(h.order):
            for y2 in range(h.order):
                if row[h.mul(y1, y2)] != h.mul(int(row[y1]), int(row[y2])):
                    out.append(Violation(
                        "action-multiplicative", (x, y1, y2),
                        f"f_{x}({y1}*{y2}) != f_{x}({y1})*f_{x}({y2})"))

    if strict_peiffer:
        for y in range(h.order):
            for y2 in range(h.order):
                if act[bnd[y], y2] != h.conj(y, y2):
                    out.append(Violation(
                        "peiffer", (y, y2),
                        f"bnd({y}) |> {y2} = {act[bnd[y], y2]} != {y}{y2}{y}^-1 = {h.conj(y, y2)}"))
    return out


def act(cm: CrossedModule, x: int, y: int) -> int:
    if not (0 <= x < cm.g.order and 0 <= y < cm.h.order):
        raise IndexError("element index out of range")
    return cm.act(x, y)


def conjugation_cm(h: FiniteGroup, name: str | None = None) -> CrossedModule:
    """The (H, Aut(H)) example: G = Aut(H), bnd(y) = conjugation by y,
    x |> y applies the x-th automorphism."""
    g, bijections = build_aut_group(h)
    index = {b: i for i, b in enumerate(bijections)}
    boundary = [index[tuple(h.conj(y, z) for z in range(h.order))] for y in range(h.order)]
    action = [list(b) for b in bijections]
    return make_crossed_module(
        h, g, boundary, action, name or f"conj({h.name})", strict_peiffer=True)


def identity_cm(g: FiniteGroup, name: str | None = None) -> CrossedModule:
    """H = G, bnd = id, action = conjugation."""
    action = [[g.conj(x, y) for y in range(g.order)] for x in range(g.order)]
    return make_crossed_module(
        g, g, range(g.order), action, name or f"id({g.name})", strict_peiffer=True)


def trivial_h_cm(g: FiniteGroup, name: str | None = None) -> CrossedModule:
    """H trivial; the state sum then counts flat G-colorings
    (the Dijkgraaf-Witten specialization)."""
    h = build_trivial()
    action = [[0] for _ in range(g.order)]
    return make_crossed_module(
        h, g, [0], action, name or f"trivH({g.name})", strict_peiffer=True)


def reduction_cm(h: FiniteGroup, g: FiniteGroup, boundary_images: Iterable[int],
                 name: str = "reduction") -> CrossedModule:
    """A crossed module with the given boundary and the trivial action.

    Valid only when the image of the boundary is central in G and H is
    abelian; make_crossed_module raises otherwise.
    """
    action = [list(range(h.order)) for _ in range(g.order)]
    return make_crossed_module(h, g, boundary_images, action, name, strict_peiffer=True)
