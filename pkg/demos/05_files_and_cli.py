"""Serialize fixtures to the text formats and drive the command line.

Run from the repository root:  python3 demos/05_files_and_cli.py
"""

import tempfile
from pathlib import Path

from cmtop import fixtures
from cmtop.cli import main
from cmtop.fileio import format_complex, format_crossed_module, format_group, load_complex

workdir = Path(tempfile.mkdtemp(prefix="cmtop_demo_"))
print(f"writing fixture files under {workdir}")

grp = workdir / "s3.grp"
grp.write_text(format_group(fixtures.group("s3")))
print(f"\n== {grp.name} (first lines) ==")
print("\n".join(grp.read_text().splitlines()[:3]))

cmod = workdir / "z4_to_z2.cmod"
cmod.write_text(format_crossed_module(fixtures.crossed_module("z4_to_z2")))
print(f"\n== {cmod.name} ==")
print(cmod.read_text().rstrip())

tri = workdir / "solid_torus.tri"
tri.write_text(format_complex(fixtures.solid_torus()))
print(f"\n== {tri.name} (delta mode: slots, loops and identified faces) ==")
print(tri.read_text().rstrip())

back = load_complex(tri)
print(f"\nround trip: counts {back.counts.as_tuple()}")

print("\n== the same things through the CLI ==")
for argv in (
    ["validate-cm", str(cmod)],
    ["validate-complex", str(tri)],
    ["invariant", "--complex", str(tri), "--cm", str(cmod)],
    ["invariant", "--complex", "single_tet", "--cm", "id_z2", "--engine", "brute"],
    ["reps", "--group", str(grp), "--builtin", "t52"],
):
    print(f"$ cmtop {' '.join(argv)}")
    code = main(argv)
    assert code == 0, argv
