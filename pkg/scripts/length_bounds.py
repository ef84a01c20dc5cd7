"""Compare word length, Burillo's D and the encoded length D' on a ball.

    python scripts/length_bounds.py [--radius 7] [--show 10]

Prints how often D <= D' <= 2D and D' <= D <= 2D' hold, the extreme ratios,
and the smallest elements where the first ordering breaks.
"""
import argparse
from fractions import Fraction

from thompsonf.encoding import encode
from thompsonf.group import ball, burillo_D, encoded_length, format_word, nf_to_word


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--radius", type=int, default=7)
    ap.add_argument("--show", type=int, default=10)
    args = ap.parse_args(argv)

    dist = ball(args.radius)
    forward = reverse = 0
    broken = []
    ratios = []
    for nf, l in dist.items():
        d, dp = burillo_D(nf), encoded_length(nf)
        forward += d <= dp <= 2 * d
        reverse += dp <= d <= 2 * dp
        if not d <= dp <= 2 * d:
            broken.append((l, dp, format_word(nf_to_word(nf)), d, encode(nf)))
        if d:
            ratios.append(Fraction(dp, d))
    n = len(dist)
    print(f"elements: {n}")
    print(f"D <= D' <= 2D holds for {forward}/{n}")
    print(f"D' <= D <= 2D' holds for {reverse}/{n}")
    print(f"D'/D ranges over [{min(ratios)}, {max(ratios)}]")
    for l, dp, word, d, code in sorted(broken)[: args.show]:
        print(f"  l={l} D={d} D'={dp}  {word}  ({code})")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
