"""Run every verification suite and write the report.

    python scripts/run_verification.py [--radius 7] [--out report.txt]

The report has one PASS/FAIL line per suite, the first few failure
witnesses, and a JSON summary block at the end.
"""
import argparse
import sys
import time
from dataclasses import fields

from thompsonf.verification import VerifyConfig, run_all


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for f in fields(VerifyConfig):
        flag = "--" + f.name.replace("_", "-")
        if f.type in (bool, "bool"):
            ap.add_argument("--no-" + f.name, dest=f.name, action="store_false")
        else:
            ap.add_argument(flag, type=int, default=f.default)
    ap.add_argument("--out", help="also write the report here")
    args = ap.parse_args(argv)
    config = VerifyConfig(**{f.name: getattr(args, f.name) for f in fields(VerifyConfig)})

    t0 = time.perf_counter()
    report = run_all(config)
    text = report.to_text()
    sys.stdout.write(text)
    print(f"elapsed: {time.perf_counter() - t0:.1f}s", file=sys.stderr)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    return 0 if report.ok else 1


if __name__ == "__main__":
    sys.exit(main())
