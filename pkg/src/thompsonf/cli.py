"""Command-line front end.

Exit status: 0 on success, 1 on a domain error (bad word, failed
verification, missing machine), 2 on a usage error.
"""
from __future__ import annotations

import argparse
import os
import re
import sys

from . import structure
from .automata import ENUM_CAP, enumerate_accepted
from .encoding import decode, encode, format_convolution
from .formats import export_dot
from .group import GeneratorLetter, format_word, multiply, nf_to_word, parse_normal_form, parse_word
from .structure import (
    MACHINE_DIR_ENV,
    accepting_cases,
    load_machine,
    machine_names,
    multiplier_apply,
    word_to_normal_form,
)
from .verification import VerifyConfig, run_all

_GEN = re.compile(r"^x([01])(?:(inv)|\^(-?1))?$")


def parse_generator(text: str) -> GeneratorLetter:
    """``x0``, ``x1inv``, ``x1^-1`` and the like."""
    m = _GEN.match(text.strip())
    if m is None:
        raise ValueError(f"unknown generator {text!r}; use x0, x0inv, x1 or x1inv")
    sign = -1 if m.group(2) or m.group(3) == "-1" else 1
    return GeneratorLetter(int(m.group(1)), sign)


def _nf_text(nf) -> str:
    return format_word(nf_to_word(nf))


def cmd_reduce(args):
    print(_nf_text(parse_normal_form(args.word)))


def cmd_encode(args):
    print(encode(parse_normal_form(args.word)))


def cmd_decode(args):
    print(_nf_text(decode(args.symbols)))


def cmd_mult(args):
    print(_nf_text(multiply(parse_normal_form(args.word), parse_generator(args.gen))))


def cmd_member(args):
    cases = accepting_cases(parse_generator(args.gen), args.u, args.v,
                            patches=not args.no_patches)
    print(f"accept ({'; '.join(cases)})" if cases else "reject")


def cmd_apply(args):
    print(multiplier_apply(args.u, parse_generator(args.gen), patches=not args.no_patches))


def cmd_nf(args):
    print(word_to_normal_form(parse_word(args.word), patches=not args.no_patches))


def cmd_verify(args):
    config = VerifyConfig(
        language_max_len=args.max_len,
        ball_radius=args.radius,
        len_cap=args.len_cap,
        p_max=args.p_max,
        m_max=args.m_max,
        patches=not args.no_patches,
    )
    report = run_all(config)
    text = report.to_text()
    sys.stdout.write(text)
    if args.report:
        with open(args.report, "w") as fh:
            fh.write(text)
    return 0 if report.ok else 1


def _machine(name: str):
    if name not in machine_names():
        raise KeyError(f"unknown machine {name!r}; known: {' '.join(machine_names())}")
    return load_machine(name)


def cmd_export_dot(args):
    sys.stdout.write(export_dot(_machine(args.name)))


def cmd_enumerate(args):
    m = _machine(args.name)
    if args.max_len > ENUM_CAP:
        raise ValueError(f"max length is capped at {ENUM_CAP}")
    words = enumerate_accepted(m, args.max_len)
    if m.alphabet and isinstance(m.alphabet[0], tuple):
        lines = [format_convolution(w) for w in words]
    else:
        lines = ["".join(w) for w in words]
    for line in sorted(lines, key=lambda s: (len(s), s)):
        print(line)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="thompsonf", description=__doc__.splitlines()[0])
    ap.add_argument("--machines", metavar="DIR",
                    help=f"machine definition directory (default: ${MACHINE_DIR_ENV} "
                         "or the bundled files)")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("reduce", help="normal form of a generator word")
    p.add_argument("word", help="tokens like 'x1^1 x0^-2'; empty or 'e' is the identity")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("encode", help="normal-form word over {a,b,#} of a generator word")
    p.add_argument("word")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("decode", help="generator normal form of a word over {a,b,#}")
    p.add_argument("symbols")
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("mult", help="exact product of a word and one generator")
    p.add_argument("word")
    p.add_argument("gen", help="x0, x0inv, x1 or x1inv")
    p.set_defaults(func=cmd_mult)

    p = sub.add_parser("member", help="is (u, v) in the multiplier language of gen?")
    p.add_argument("gen")
    p.add_argument("u")
    p.add_argument("v")
    p.set_defaults(func=cmd_member)

    p = sub.add_parser("apply", help="normal form of u * gen read off the machines")
    p.add_argument("u")
    p.add_argument("gen")
    p.set_defaults(func=cmd_apply)

    p = sub.add_parser("nf", help="normal form of a word in x0^+-1, x1^+-1 via the machines")
    p.add_argument("word")
    p.set_defaults(func=cmd_nf)

    p = sub.add_parser("verify", help="run the verification sweeps")
    defaults = VerifyConfig()
    p.add_argument("--max-len", type=int, default=defaults.language_max_len)
    p.add_argument("--radius", type=int, default=defaults.ball_radius)
    p.add_argument("--len-cap", type=int, default=defaults.len_cap)
    p.add_argument("--p-max", type=int, default=defaults.p_max)
    p.add_argument("--m-max", type=int, default=defaults.m_max)
    p.add_argument("--report", metavar="FILE")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("export-dot", help="Graphviz text for a shipped machine")
    p.add_argument("name")
    p.set_defaults(func=cmd_export_dot)

    p = sub.add_parser("enumerate", help="accepted words up to a length")
    p.add_argument("name")
    p.add_argument("max_len", type=int)
    p.set_defaults(func=cmd_enumerate)

    for name in ("member", "apply", "nf", "verify"):
        sub.choices[name].add_argument("--no-patches", action="store_true",
                                       help="leave out the gap-filling machines")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.machines:
        os.environ[MACHINE_DIR_ENV] = args.machines
    try:
        return args.func(args) or 0
    except (ValueError, KeyError, structure.NoResultError, structure.AmbiguousResultError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
