"""Regenerate the pattern-built machine files from their splice specs.

    python scripts/build_machines.py [--check]

With --check nothing is written; the exit status says whether the shipped
files are current.
"""
import argparse
import sys
from pathlib import Path

from thompsonf.formats import dump_machine
from thompsonf.patterns import SPLICE_SPECS

MACHINE_DIR = Path(__file__).resolve().parent.parent / "src" / "thompsonf" / "machines"


def render(spec) -> str:
    header = (
        f"; generated by scripts/build_machines.py\n"
        f"; conv(z x w, z y w) with z ~ {spec.z or 'empty'}, x = {spec.x or 'empty'}, "
        f"y = {spec.y or 'empty'}, w ~ {spec.w or 'empty'}\n"
    )
    return header + dump_machine(spec.build())


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--check", action="store_true")
    ap.add_argument("--out", type=Path, default=MACHINE_DIR)
    args = ap.parse_args(argv)
    stale = []
    for name, spec in SPLICE_SPECS.items():
        path = args.out / f"{name}.cam"
        text = render(spec)
        if args.check:
            if not path.exists() or path.read_text() != text:
                stale.append(name)
        else:
            path.write_text(text)
            print(f"wrote {path.name}: {len(spec.build().states)} states")
    if stale:
        print("stale:", " ".join(stale))
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
