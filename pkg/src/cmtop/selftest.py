"""The acceptance suite: one callable per criterion, plus a driver.

Each criterion returns a CriterionResult with a pass flag, a one-line
detail string, and (for the enumeration checks that are allowed to surface
counterexamples) a documented-finding note.  tests/test_acceptance.py runs
the same functions through pytest; the CLI ``selftest`` subcommand prints
one line per criterion.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import fixtures
from .complexes import relabel, validate_manifold_basics
from .crossed_modules import CrossedModule, validate
from .fileio import FormatError, format_crossed_module, parse_complex, parse_crossed_module
from .groups import GroupHom, build_cyclic, build_symmetric
from .knot_words import BUILTIN_WORDS, count_reps, verify_41_system, word_state_sum
from .moves import MOVE_DELTAS, apply, enumerate_applicable
from .statesum import (
    SearchBudgetExceededError,
    brute_force_invariant,
    consistency_check_3tet,
    default_budget,
    invariant,
    is_admissible,
    sample_admissible_tet_coloring,
)

TRIAL_NODE_BUDGET = 2_000_000


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    details: str
    elapsed: float
    finding: str | None = None

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        return f"[{mark}] criterion {self.number:2d} {self.name}: {self.details} ({self.elapsed:.1f}s)"

    def as_dict(self) -> dict:
        return {
            "number": self.number,
            "name": self.name,
            "passed": self.passed,
            "details": self.details,
            "elapsed_seconds": round(self.elapsed, 3),
            "finding": self.finding,
        }


def _timed(number, name, fn) -> CriterionResult:
    t0 = time.monotonic()
    try:
        passed, details, finding = fn()
    except Exception as exc:  # a crash is a failure, not an abort
        return CriterionResult(number, name, False, f"exception: {exc!r}",
                               time.monotonic() - t0)
    return CriterionResult(number, name, passed, details,
                           time.monotonic() - t0, finding)


# --- criterion 1: Z(D^3) = |H|/|G| for every shipped crossed module --------

def criterion_1_disk(budget=None):
    c = fixtures.single_tet()
    worst = 0.0
    for name in fixtures.CM_NAMES:
        cm = fixtures.crossed_module(name)
        want = Fraction(cm.h.order, cm.g.order)
        for engine in (invariant, lambda m, x: brute_force_invariant(m, x, budget)):
            t0 = time.monotonic()
            got = engine(cm, c).value
            dt = time.monotonic() - t0
            worst = max(worst, dt)
            if got != want:
                return False, f"{name}: Z = {got}, want {want}", None
            if dt >= 10.0:
                return False, f"{name}: engine took {dt:.1f}s (limit 10s)", None
    return True, (f"Z = |H|/|G| on both engines for all {len(fixtures.CM_NAMES)} "
                  f"crossed modules (slowest call {worst:.2f}s)"), None


# --- criterion 2: solid torus ------------------------------------------------

def criterion_2_solid_torus(budget=None):
    c = fixtures.solid_torus()
    for name in ("id_z2", "id_z3", "trivh_s3"):
        t0 = time.monotonic()
        got = invariant(fixtures.crossed_module(name), c).value
        dt = time.monotonic() - t0
        if got != 1:
            return False, f"{name}: Z = {got}, want 1", None
        if dt >= 60.0:
            return False, f"{name}: took {dt:.1f}s (limit 60s)", None
    return True, "Z(D^2 x S^1) = 1 for id_z2, id_z3, trivh_s3", None


# --- criterion 3: S^2 x [0,1] ------------------------------------------------

def criterion_3_sphere_interval(budget=None):
    c = fixtures.s2_interval()
    cases = [("id_z2", Fraction(1)), ("id_z3", Fraction(1)),
             ("z4_to_z2", Fraction(4))]
    for name, want in cases:
        cm = fixtures.crossed_module(name)
        ker = len(cm.kernel_of_boundary())
        closed_form = Fraction(cm.h.order * ker, cm.g.order)
        if closed_form != want:
            return False, f"{name}: closed form sanity {closed_form} != {want}", None
        t0 = time.monotonic()
        got = invariant(cm, c).value
        dt = time.monotonic() - t0
        if got != want:
            return False, f"{name}: Z = {got}, want {want}", None
        if dt >= 120.0:
            return False, f"{name}: took {dt:.1f}s (limit 120s)", None
    return True, "Z(S^2 x I) = |H| |ker bnd| / |G| for injective and Z/4->Z/2 cases", None


# --- criterion 4: move invariance --------------------------------------------

def _move_trial_complexes():
    """Base fixtures plus one-step B13 derivatives, which is where B22 and
    B31 first become applicable."""
    out = {name: fixtures.COMPLEXES[name]() for name in fixtures.VALID_COMPLEX_NAMES}
    for name in ("single_tet", "solid_torus"):
        c = out[name]
        b13 = enumerate_applicable(c, "B13")
        if b13:
            out[f"{name}+B13"] = apply(c, b13[0])
    return out


def _move_trial_pool(seed: int, complexes):
    rng = random.Random(seed)
    pool = []
    for cname, c in complexes.items():
        for kind in MOVE_DELTAS:
            descs = enumerate_applicable(c, kind)
            if not descs:
                continue
            # one guaranteed-cheap trial per (fixture, kind), then extras
            pool.append((cname, kind, rng.choice(descs), "id_z2"))
            extra = rng.sample(descs, min(len(descs), 3))
            for m in extra:
                pool.append((cname, kind, m,
                             rng.choice(fixtures.CM_NAMES)))
    rng.shuffle(pool)
    return pool


def criterion_4_move_invariance(seed=0, min_trials=20, quick=False):
    complexes = _move_trial_complexes()
    pool = _move_trial_pool(seed, complexes)
    if quick:
        min_trials = 8
    ran = 0
    skipped = 0
    kinds_seen = set()
    want_kinds = {kind for cname, c in complexes.items()
                  for kind in MOVE_DELTAS if enumerate_applicable(c, kind)}
    for cname, kind, m, cm_name in pool:
        if ran >= min_trials and kinds_seen >= want_kinds:
            break
        c = complexes[cname]
        cm = fixtures.crossed_module(cm_name)
        moved = apply(c, m)
        try:
            before = invariant(cm, c, node_budget=TRIAL_NODE_BUDGET).value
            after = invariant(cm, moved, node_budget=TRIAL_NODE_BUDGET).value
        except SearchBudgetExceededError:
            skipped += 1
            continue
        if before != after:
            return False, (f"{cname} {kind} {m} with {cm_name}: "
                           f"{before} != {after}"), None
        ran += 1
        kinds_seen.add(kind)
    if ran < min_trials:
        return False, f"only {ran} trials ran (need {min_trials})", None
    missing = want_kinds - kinds_seen
    if missing:
        return False, f"kinds {sorted(missing)} never ran a trial", None
    return True, (f"{ran} randomized move trials exactly invariant "
                  f"(kinds {sorted(kinds_seen)}, {skipped} skipped for cost)"), None


# --- criterion 5: order invariance --------------------------------------------

_ORDER_INVARIANCE_CMS = {
    # non-bijective boundaries, so the engines do structure-dependent work
    "single_tet": "z4_to_z2",
    "s3_boundary_4simplex": "trivh_z2",
    "solid_torus": "trivh_s3",
    "s2_interval": "z4_to_z2",
}


def criterion_5_order_invariance(seed=0, relabelings=10):
    rng = random.Random(seed)
    for cname in fixtures.VALID_COMPLEX_NAMES:
        c = fixtures.COMPLEXES[cname]()
        cm_name = _ORDER_INVARIANCE_CMS[cname]
        cm = fixtures.crossed_module(cm_name)
        base = invariant(cm, c).value
        ids = list(c.vertices)
        for _ in range(relabelings):
            shuffled = ids[:]
            rng.shuffle(shuffled)
            r = relabel(c, dict(zip(ids, shuffled)))
            got = invariant(cm, r).value
            if got != base:
                return False, f"{cname} under {cm_name}: {got} != {base}", None
    return True, (f"{relabelings} random relabelings per fixture leave Z "
                  f"unchanged exactly"), None


# --- criterion 6: engine equivalence ------------------------------------------

def criterion_6_engine_equivalence(budget=None):
    budget = default_budget() if budget is None else budget
    ran, excluded = 0, 0
    for cname, build in fixtures.COMPLEXES.items():
        if cname == "broken_complex":
            continue
        c = build()
        E, F = len(c.edges), len(c.faces)
        for name in fixtures.CM_NAMES:
            cm = fixtures.crossed_module(name)
            if cm.g.order**E * cm.h.order**F > budget:
                excluded += 1
                continue
            slow = brute_force_invariant(cm, c, budget=budget)
            fast = invariant(cm, c)
            if slow.value != fast.value or slow.admissible_count != fast.admissible_count:
                return False, f"{cname} x {name}: {slow.value} != {fast.value}", None
            ran += 1
    return True, (f"fast == brute on all {ran} in-budget fixture pairs "
                  f"({excluded} pairs above the {budget} budget)"), None


# --- criterion 7: knot words ---------------------------------------------------

def criterion_7_knot_words():
    from .crossed_modules import trivial_h_cm

    t0 = time.monotonic()
    groups = [build_cyclic(2), build_cyclic(3), build_cyclic(6), build_symmetric(3)]
    for wname, w in sorted(BUILTIN_WORDS.items()):
        relator = w.without_boundary_factor()
        for g in groups:
            reps = count_reps(relator, g)
            z = word_state_sum(w, trivial_h_cm(g)).value
            if Fraction(g.order) * z != reps:
                return False, f"{wname} over {g.name}: |G| Z = {g.order * z} != {reps}", None
    dt = time.monotonic() - t0
    if dt >= 10.0:
        return False, f"took {dt:.1f}s (limit 10s)", None
    return True, "|G| * word sum == representation count for fig8/t52/k52 over Z2,Z3,Z6,S3", None


# --- criterion 8: the 41a-41d system -------------------------------------------

def criterion_8_boundary_system(seed=0, samples=100_000, quick=False):
    if quick:
        samples = 10_000
    reports = [
        verify_41_system(build_cyclic(2)),
        verify_41_system(build_cyclic(3)),
        verify_41_system(build_symmetric(3), samples=samples, seed=seed,
                         existence_checks=1000),
    ]
    finding_lines = []
    for rep in reports:
        if not rep.clean:
            finding_lines.append(rep.summary())
            if rep.d_witnesses:
                finding_lines.append(f"  first witnesses (b,r,g11',g3'4',g2'2'',g3''4',g1'2): "
                                     f"{rep.d_witnesses[:3]}")
    if not finding_lines:
        return True, "no counterexamples in the boundary equation system", None
    # counterexamples exist: they are printed and recorded as a documented
    # finding (the displayed equations identify g_3''4 with g_3''4'; under
    # that reading the fourth equation reduces to 2 g_3''4' = e in abelian
    # groups).  The criterion passes with the finding attached.
    finding = "; ".join(finding_lines)
    z2_clean = reports[0].clean
    abelian_pattern = all(s != 0 for (_, _, _, _, s, _, _) in reports[1].d_witnesses)
    passed = z2_clean and abelian_pattern
    return passed, ("counterexamples found and characterized; see finding "
                    f"(Z2 clean: {z2_clean})"), finding


# --- criterion 9: the 3-face consistency identity -------------------------------

def criterion_9_consistency(seed=0, samples=1000):
    rng = random.Random(seed)
    c = fixtures.single_tet()
    for name in fixtures.CM_NAMES:
        cm = fixtures.crossed_module(name)
        for _ in range(samples):
            col = sample_admissible_tet_coloring(cm, c, rng)
            if not is_admissible(cm, c, col):
                return False, f"{name}: sampler produced inadmissible coloring", None
            if not consistency_check_3tet(cm, col):
                return False, f"{name}: identity fails at {col}", None
    return True, f"{samples} admissible samples per crossed module, zero violations", None


# --- criterion 10: mutation rejection -------------------------------------------

def _cm_mutations(cm: CrossedModule):
    for x in range(cm.g.order):
        for y in range(cm.h.order):
            for v in range(cm.h.order):
                if v != cm.action[x, y]:
                    action = np.array(cm.action)
                    action[x, y] = v
                    yield CrossedModule(cm.h, cm.g, cm.boundary, action, "mut")
    for y in range(cm.h.order):
        for v in range(cm.g.order):
            if v != cm.boundary.map[y]:
                images = list(cm.boundary.map)
                images[y] = v
                hom = GroupHom.__new__(GroupHom)
                object.__setattr__(hom, "source", cm.h)
                object.__setattr__(hom, "target", cm.g)
                object.__setattr__(hom, "map", tuple(images))
                yield CrossedModule(cm.h, cm.g, hom, np.array(cm.action), "mut")


def criterion_10_validation(seed=0):
    # every single-entry mutation of these fixtures breaks an axiom and is
    # caught with a witness; the deliberately broken fixtures are rejected
    count = 0
    for name in ("id_z3", "conj_z2z2", "z4_to_z2"):
        cm = fixtures.crossed_module(name)
        for mutant in _cm_mutations(cm):
            report = validate(mutant)
            if not report:
                recheck = validate(mutant, strict_peiffer=False)
                if recheck:
                    return False, f"{name}: inconsistent mutant accepted", None
                return False, f"{name}: mutation produced a valid table (unexpected here)", None
            if not report[0].witness and report[0].witness != ():
                return False, f"{name}: violation without witness", None
            count += 1
    broken = fixtures.broken_cm()
    if not validate(broken):
        return False, "broken_cm not rejected", None
    complex_report = validate_manifold_basics(fixtures.broken_complex())
    if not any("tet slots" in line for line in complex_report):
        return False, "broken_complex not reported", None
    # file-level mutations: corrupting any table entry of a serialized
    # fixture makes the loader reject it with a located error
    rng = random.Random(seed)
    text = format_crossed_module(fixtures.crossed_module("id_z3"))
    rejected = 0
    for _ in range(40):
        lines = text.splitlines()
        ln = rng.randrange(1, len(lines))
        parts = lines[ln].split()
        if not parts or parts[0] in ("group_h", "group_g", "action"):
            continue
        start = 1 if parts[0] in ("delta",) else 0
        col = rng.randrange(start, len(parts))
        if not parts[col].lstrip("-").isdigit():
            continue
        parts[col] = str((int(parts[col]) + 1 + rng.randrange(2)) % 3)
        lines[ln] = " ".join(parts)
        try:
            parse_crossed_module("\n".join(lines), "<mutated>")
        except FormatError:
            rejected += 1
            continue
        return False, "mutated crossed-module file accepted", None
    bad_complex = "tet 1 2 3 3\n"
    try:
        parse_complex(bad_complex, "<mutated>")
        return False, "degenerate tet accepted", None
    except FormatError:
        pass
    return True, (f"{count} single-entry table mutations all rejected with "
                  f"witnesses; {rejected} file mutations rejected"), None


# --- driver ---------------------------------------------------------------------

def run_selftest(seed: int = 0, budget: int | None = None, quick: bool = False):
    checks = [
        (1, "disk value", lambda: criterion_1_disk(budget)),
        (2, "solid torus", lambda: criterion_2_solid_torus(budget)),
        (3, "sphere x interval", lambda: criterion_3_sphere_interval(budget)),
        (4, "move invariance", lambda: criterion_4_move_invariance(seed, quick=quick)),
        (5, "order invariance", lambda: criterion_5_order_invariance(seed)),
        (6, "engine equivalence", lambda: criterion_6_engine_equivalence(budget)),
        (7, "knot words", criterion_7_knot_words),
        (8, "boundary equation system", lambda: criterion_8_boundary_system(seed, quick=quick)),
        (9, "consistency identity", lambda: criterion_9_consistency(seed)),
        (10, "mutation validation", lambda: criterion_10_validation(seed)),
    ]
    return [_timed(num, name, fn) for num, name, fn in checks]
