"""Text file formats for groups, crossed modules and complexes.

Group file (whitespace separated, '#' comments):

    group <name> <order>
    <order rows of <order> products, row a = a*b for b = 0..order-1>

Crossed module file:

    cmod <name>
    group_h file <relative-path>     | group_h inline <name> <order>
                                     |   <order table rows>
    group_g file <relative-path>     | group_g inline <name> <order> ...
    delta  <|H| images in G>
    action
    <|G| rows of |H| entries>

Complex file, simplicial mode: one `tet v0 v1 v2 v3` line per tet.
Delta mode: `vertex <id>` (optional, for isolated vertices),
`edge <id> <tail> <head>`, `face <id> <e01> <e02> <e12>`,
`tet <id> <f012> <f013> <f023> <f123>`.  Entity ids are arbitrary
integers local to the file; in-memory indices follow declaration order.
Vertex ids are nonnegative integers, total order = numeric order.

Loaders validate everything and raise FormatError with the line number.
"""

from __future__ import annotations

import io
from pathlib import Path

from .complexes import ComplexBuilder, ComplexStructureError, OrderedComplex, from_tet_list
from .crossed_modules import CrossedModule, make_crossed_module
from .groups import FiniteGroup, GroupTableError


class FormatError(ValueError):
    """Malformed fixture file; message carries file and line."""


def _lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def _fail(source: str, lineno: int, msg: str):
    raise FormatError(f"{source}:{lineno}: {msg}")


# ---------------------------------------------------------------------------
# groups
# ---------------------------------------------------------------------------

def parse_group(text: str, source: str = "<group>") -> FiniteGroup:
    rows: list[list[int]] = []
    name = None
    order = None
    for lineno, tokens in _lines(text):
        if name is None:
            if tokens[0] != "group" or len(tokens) != 3:
                _fail(source, lineno, "expected header 'group <name> <order>'")
            name = tokens[1]
            try:
                order = int(tokens[2])
            except ValueError:
                _fail(source, lineno, f"order {tokens[2]!r} is not an integer")
            continue
        try:
            row = [int(t) for t in tokens]
        except ValueError:
            _fail(source, lineno, f"non-integer table entry in {tokens}")
        if len(row) != order:
            _fail(source, lineno, f"expected {order} entries, got {len(row)}")
        rows.append(row)
    if name is None:
        _fail(source, 0, "empty group file")
    if len(rows) != order:
        _fail(source, 0, f"expected {order} table rows, got {len(rows)}")
    try:
        return FiniteGroup.from_table(rows, name)
    except GroupTableError as exc:
        raise FormatError(f"{source}: {exc}") from exc


def load_group(path: str | Path) -> FiniteGroup:
    p = Path(path)
    return parse_group(p.read_text(), str(p))


def format_group(g: FiniteGroup) -> str:
    out = io.StringIO()
    out.write(f"group {g.name} {g.order}\n")
    for a in range(g.order):
        out.write(" ".join(str(int(x)) for x in g.table[a]) + "\n")
    return out.getvalue()


# ---------------------------------------------------------------------------
# crossed modules
# ---------------------------------------------------------------------------

def parse_crossed_module(text: str, source: str = "<cmod>", base_dir: str | Path = ".",
                         strict_peiffer: bool = True) -> CrossedModule:
    """Parse and validate; axiom violations are reported with witnesses.

    strict_peiffer adds the Peiffer identity to the checks (warn-only when
    disabled, since the definition used here does not require it).
    """
    name = None
    groups: dict[str, FiniteGroup] = {}
    delta: list[int] | None = None
    action_rows: list[list[int]] = []
    mode = None  # None | ("inline", key, order, rows) | "action"
    for lineno, tokens in _lines(text):
        if isinstance(mode, tuple):
            key, order, rows = mode[1], mode[2], mode[3]
            rows.append(tokens)
            if len(rows) == order:
                table_text = f"group {mode[4]} {order}\n" + "\n".join(
                    " ".join(r) for r in rows)
                groups[key] = parse_group(table_text, f"{source}:{key}")
                mode = None
            continue
        if mode == "action":
            try:
                action_rows.append([int(t) for t in tokens])
            except ValueError:
                _fail(source, lineno, f"non-integer action entry in {tokens}")
            continue
        if name is None:
            if tokens[0] != "cmod" or len(tokens) != 2:
                _fail(source, lineno, "expected header 'cmod <name>'")
            name = tokens[1]
            continue
        if tokens[0] in ("group_h", "group_g"):
            key = tokens[0][-1]
            if len(tokens) >= 2 and tokens[1] == "file":
                groups[key] = load_group(Path(base_dir) / tokens[2])
            elif len(tokens) >= 4 and tokens[1] == "inline":
                mode = ("inline", key, int(tokens[3]), [], tokens[2])
            else:
                _fail(source, lineno, f"expected '{tokens[0]} file <path>' or "
                                      f"'{tokens[0]} inline <name> <order>'")
        elif tokens[0] == "delta":
            try:
                delta = [int(t) for t in tokens[1:]]
            except ValueError:
                _fail(source, lineno, "non-integer delta image")
        elif tokens[0] == "action":
            mode = "action"
        else:
            _fail(source, lineno, f"unexpected directive {tokens[0]!r}")
    for key in ("h", "g"):
        if key not in groups:
            _fail(source, 0, f"missing group_{key}")
    if delta is None:
        _fail(source, 0, "missing delta line")
    h, g = groups["h"], groups["g"]
    if len(delta) != h.order:
        _fail(source, 0, f"delta has {len(delta)} images, |H| = {h.order}")
    if len(action_rows) != g.order or any(len(r) != h.order for r in action_rows):
        _fail(source, 0, f"action block must be {g.order} rows of {h.order} entries")
    try:
        return make_crossed_module(h, g, delta, action_rows, name,
                                   strict_peiffer=strict_peiffer)
    except ValueError as exc:
        raise FormatError(f"{source}: {exc}") from exc


def load_crossed_module(path: str | Path, strict_peiffer: bool = True) -> CrossedModule:
    p = Path(path)
    return parse_crossed_module(p.read_text(), str(p), p.parent,
                                strict_peiffer=strict_peiffer)


def format_crossed_module(cm: CrossedModule) -> str:
    out = io.StringIO()
    out.write(f"cmod {cm.name}\n")
    for key, grp in (("h", cm.h), ("g", cm.g)):
        out.write(f"group_{key} inline {grp.name} {grp.order}\n")
        for a in range(grp.order):
            out.write(" ".join(str(int(x)) for x in grp.table[a]) + "\n")
    out.write("delta " + " ".join(str(x) for x in cm.boundary.map) + "\n")
    out.write("action\n")
    for x in range(cm.g.order):
        out.write(" ".join(str(int(y)) for y in cm.action[x]) + "\n")
    return out.getvalue()


# ---------------------------------------------------------------------------
# complexes
# ---------------------------------------------------------------------------

def parse_complex(text: str, source: str = "<complex>") -> OrderedComplex:
    parsed = list(_lines(text))
    if not parsed:
        _fail(source, 0, "empty complex file")
    for lineno, tokens in parsed:
        if tokens[0] not in ("tet", "vertex", "edge", "face"):
            _fail(source, lineno, f"unexpected line {' '.join(tokens)!r}")
    # delta mode announces itself with vertex/edge/face lines or 6-token tets
    if any(t[0] != "tet" or len(t) == 6 for _, t in parsed):
        return _parse_delta_mode(text, source)
    tets = []
    for lineno, tokens in parsed:
        if len(tokens) != 5:
            _fail(source, lineno, "simplicial tet line needs 4 vertex ids")
        try:
            tets.append(tuple(int(t) for t in tokens[1:]))
        except ValueError:
            _fail(source, lineno, f"non-integer vertex id in {tokens}")
    try:
        return from_tet_list(tets)
    except ValueError as exc:
        raise FormatError(f"{source}: {exc}") from exc


def _parse_delta_mode(text: str, source: str) -> OrderedComplex:
    b = ComplexBuilder()
    edge_ids: dict[int, int] = {}
    face_ids: dict[int, int] = {}

    def resolve(table, key, lineno, kind):
        if key not in table:
            _fail(source, lineno, f"unknown {kind} id {key}")
        return table[key]

    for lineno, tokens in _lines(text):
        kind = tokens[0]
        try:
            ids = [int(t) for t in tokens[1:]]
        except ValueError:
            _fail(source, lineno, f"non-integer id in {tokens}")
        try:
            if kind == "vertex" and len(ids) == 1:
                b.add_vertex(ids[0])
            elif kind == "edge" and len(ids) == 3:
                if ids[0] in edge_ids:
                    _fail(source, lineno, f"duplicate edge id {ids[0]}")
                edge_ids[ids[0]] = b.add_edge(ids[1], ids[2])
            elif kind == "face" and len(ids) == 4:
                if ids[0] in face_ids:
                    _fail(source, lineno, f"duplicate face id {ids[0]}")
                face_ids[ids[0]] = b.add_face(
                    *(resolve(edge_ids, e, lineno, "edge") for e in ids[1:]))
            elif kind == "tet" and len(ids) == 5:
                b.add_tet(*(resolve(face_ids, f, lineno, "face") for f in ids[1:]))
            else:
                _fail(source, lineno,
                      f"malformed {kind} line (got {len(ids)} ids)")
        except ComplexStructureError as exc:
            raise FormatError(f"{source}:{lineno}: {exc}") from exc
    return b.build()


def load_complex(path: str | Path) -> OrderedComplex:
    p = Path(path)
    return parse_complex(p.read_text(), str(p))


def format_complex(c: OrderedComplex) -> str:
    out = io.StringIO()
    if c.simplicial:
        for locs in c.tet_locals:
            out.write("tet " + " ".join(str(v) for v in locs) + "\n")
        return out.getvalue()
    for v in c.vertices:
        out.write(f"vertex {v}\n")
    for i, (t, h) in enumerate(c.edges):
        out.write(f"edge {i} {t} {h}\n")
    for i, (e01, e02, e12) in enumerate(c.faces):
        out.write(f"face {i} {e01} {e02} {e12}\n")
    for i, slots in enumerate(c.tets):
        out.write(f"tet {i} " + " ".join(str(f) for f in slots) + "\n")
    return out.getvalue()
