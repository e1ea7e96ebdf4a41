"""Command-line front end.

Exit status: 0 on success, 1 on a domain error (for instance a value that
is not representable), 2 on a usage error.  Results go to stdout (or
``--out``), diagnostics to stderr.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .approximation import approximation_checks, cut_approximation, export_approximation
from .blip import (
    EXAMPLE_KINDS,
    blip_scan,
    generate_example_language,
    max_left_iteration,
    prefix_set,
)
from .checks import SUITES, run_suites
from .errors import DigitOutOfRange, InvalidBase, RatBaseError
from .monoid import MonoidSpec, monoid_language, threshold, translate_cover
from .numeration import (
    as_word,
    evaluate,
    format_word,
    parse_qvalue,
    parse_word,
    represent_integer,
    represent_value,
    validate_base,
)
from .transducers import add, build_converter, build_incrementer, export_transducer, run
from .tree import enumerate_tree, export_tree, suffix_residue


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _nonneg(text):
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text}")
    return value


def _positive(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, required=True, help="base numerator")
    common.add_argument("--q", type=int, required=True, help="base denominator")
    common.add_argument("--out", metavar="FILE", help="write results to FILE instead of stdout")

    def fmt(sub, choices=("text", "json")):
        sub.add_argument("--format", choices=choices, default="text")

    parser = _Parser(prog="ratbase", description="Rational base numeration toolkit.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subs = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = subs.add_parser("repr", parents=[common], help="representation of an integer")
    sp.add_argument("n", type=_nonneg)
    fmt(sp)

    sp = subs.add_parser("eval", parents=[common], help="value of a word")
    sp.add_argument("word")
    sp.add_argument("--alphabet", type=_positive, help="alphabet size (default p)")
    fmt(sp)

    sp = subs.add_parser("value-repr", parents=[common], help="representation of a value num/q^exp")
    sp.add_argument("value")
    fmt(sp)

    sp = subs.add_parser("add", parents=[common], help="sum of two words")
    sp.add_argument("u")
    sp.add_argument("v")
    fmt(sp)

    sp = subs.add_parser("converter", parents=[common], help="converter from A_n to A_p")
    sp.add_argument("--n", type=_positive, required=True, help="input alphabet size")
    sp.add_argument("--state-cap", type=_positive, default=10**6)
    fmt(sp, ("text", "json", "dot"))

    sp = subs.add_parser("incrementer", parents=[common], help="incrementer adding the value of a word")
    sp.add_argument("word")
    sp.add_argument("--state-cap", type=_positive, default=10**6)
    fmt(sp, ("text", "json", "dot"))

    sp = subs.add_parser("run", parents=[common], help="run a converter or incrementer on a word")
    which = sp.add_mutually_exclusive_group(required=True)
    which.add_argument("--converter", type=_positive, metavar="N")
    which.add_argument("--incrementer", metavar="WORD")
    sp.add_argument("word")
    fmt(sp)

    sp = subs.add_parser("tree", parents=[common], help="tree of integer representations")
    sp.add_argument("--depth", type=_nonneg, required=True)
    sp.add_argument("--depth-cap", type=_positive, default=40)
    fmt(sp, ("text", "json", "dot"))

    sp = subs.add_parser("suffix-residue", parents=[common], help="residue class of a suffix")
    sp.add_argument("word")
    fmt(sp)

    sp = subs.add_parser("blip-scan", parents=[common], help="bounded left-iteration scan of a sample")
    src = sp.add_mutually_exclusive_group(required=True)
    src.add_argument("--lpq", type=_nonneg, metavar="LEN", help="integer representations up to LEN digits")
    src.add_argument("--words-file", metavar="FILE", help="one word per line")
    src.add_argument("--example", choices=EXAMPLE_KINDS)
    src.add_argument("--generators", help="monoid generators, comma separated")
    sp.add_argument("--size", type=_positive, default=8, help="example family size")
    sp.add_argument("--j-size", type=_positive, help="second index cap of fij_family")
    sp.add_argument("--max-len", type=_positive, default=12, help="monoid word length")
    sp.add_argument("--max-uv", type=_positive, default=4)
    sp.add_argument("--min-i", type=_positive, default=3)
    sp.add_argument("--not-closed", action="store_true",
                    help="sample is not prefix-closed; scan its prefix set")
    fmt(sp)

    sp = subs.add_parser("max-iter", parents=[common], help="exact maximal left iteration")
    sp.add_argument("u")
    sp.add_argument("v")
    sp.add_argument("--cap", type=_positive, default=64)
    fmt(sp)

    sp = subs.add_parser("threshold", parents=[common], help="threshold m_k for n/q^k")
    sp.add_argument("--k", type=_nonneg, required=True)
    sp.add_argument("--k-cap", type=_positive, default=16)
    fmt(sp)

    sp = subs.add_parser("cover", parents=[common], help="translate cover of a finitely generated monoid")
    sp.add_argument("--generators", required=True)
    fmt(sp)

    sp = subs.add_parser("monoid-lang", parents=[common], help="representations of a monoid")
    sp.add_argument("--generators", required=True)
    sp.add_argument("--max-len", type=_positive, required=True)
    fmt(sp)

    sp = subs.add_parser("approx", parents=[common], help="depth-k cut automaton")
    sp.add_argument("--k", type=_positive, required=True)
    sp.add_argument("--include-short", action="store_true", help="also accept representations shorter than k")
    sp.add_argument("--show-dead", action="store_true", help="draw the dead state")
    sp.add_argument("--check-len", type=_positive, help="run consistency checks up to this length")
    sp.add_argument("--depth-cap", type=_positive, default=40)
    fmt(sp, ("text", "json", "dot"))

    sp = subs.add_parser("check", parents=[common], help="run invariant suites")
    sp.add_argument("--suite", choices=["all", *SUITES], default="all")
    fmt(sp)
    return parser


def _generators(base, text):
    if not text.strip():
        raise UsageError("--generators: empty list")
    try:
        values = [parse_qvalue(t, base.q) for t in text.split(",")]
    except ValueError as exc:
        raise UsageError(f"--generators: {exc}") from None
    try:
        return MonoidSpec(base, tuple(values))
    except ValueError as exc:
        raise UsageError(f"--generators: {exc}") from None


def _word(base, text, flag, n=None):
    try:
        return as_word(parse_word(text), n or base.p)
    except DigitOutOfRange:
        raise
    except ValueError as exc:
        raise UsageError(f"{flag}: {exc}") from None


def _transducer_text(t) -> str:
    lines = [f"states {len(t.states)}  input A_{t.input_alphabet_size}  output A_{t.output_alphabet_size}"]
    for s in t.states:
        label = ",".join(map(str, s)) if isinstance(s, tuple) else str(s)
        final = format_word(t.final_out[s], t.output_alphabet_size) if s in t.final_out else None
        edges = " ".join(f"{a}|{t.eta[s, a]}->{_label(t.delta[s, a])}" for a in range(t.input_alphabet_size))
        lines.append(f"{label}\tfinal={'ε' if final == '' else final}\t{edges}")
    return "\n".join(lines) + "\n"


def _label(s):
    return ",".join(map(str, s)) if isinstance(s, tuple) else str(s)


def _sorted_words(words):
    return sorted(words, key=lambda w: (len(w), w.digits))


def dispatch(args, base) -> tuple[str, int]:
    cmd = args.command
    f = args.format
    p = base.p

    if cmd == "repr":
        w = represent_integer(base, args.n)
        return (json.dumps({"n": args.n, "word": str(w)}) + "\n") if f == "json" else f"{w}\n", 0

    if cmd == "eval":
        w = _word(base, args.word, "word", args.alphabet)
        x = evaluate(base, w)
        return (json.dumps({"word": str(w), "value": str(x)}) + "\n") if f == "json" else f"{x}\n", 0

    if cmd == "value-repr":
        try:
            x = parse_qvalue(args.value, base.q)
        except ValueError as exc:
            raise UsageError(f"value: {exc}") from None
        w = represent_value(base, x)
        return (json.dumps({"value": str(x), "word": str(w)}) + "\n") if f == "json" else f"{w}\n", 0

    if cmd == "add":
        r = add(base, _word(base, args.u, "u"), _word(base, args.v, "v"))
        return (json.dumps({"u": args.u, "v": args.v, "sum": str(r)}) + "\n") if f == "json" else f"{r}\n", 0

    if cmd in ("converter", "incrementer"):
        if cmd == "converter":
            if args.n < 2:
                raise UsageError("--n: converter needs n >= 2")
            t = build_converter(base, args.n, cap=args.state_cap)
        else:
            t = build_incrementer(base, _word(base, args.word, "word"), cap=args.state_cap)
        if f == "text":
            return _transducer_text(t), 0
        out = export_transducer(t, f)
        return out if out.endswith("\n") else out + "\n", 0

    if cmd == "run":
        if args.converter is not None:
            if args.converter < 2:
                raise UsageError("--converter: needs n >= 2")
            t = build_converter(base, args.converter)
        else:
            t = build_incrementer(base, _word(base, args.incrementer, "--incrementer"))
        u = _word(base, args.word, "word", t.input_alphabet_size)
        r = run(t, u)
        return (json.dumps({"input": str(u), "output": str(r)}) + "\n") if f == "json" else f"{r}\n", 0

    if cmd == "tree":
        root = enumerate_tree(base, args.depth, cap=args.depth_cap)
        if f == "text":
            lines = [f"{n.depth}\t{n.value}\t{represent_integer(base, n.value)}" for n in root.walk()]
            return "\n".join(lines) + "\n", 0
        return export_tree(root, f) + ("" if f == "dot" else "\n"), 0

    if cmd == "suffix-residue":
        u = _word(base, args.word, "word")
        if not u.digits:
            raise UsageError("word: suffix must be non-empty")
        n, mod = suffix_residue(base, u)
        if f == "json":
            return json.dumps({"suffix": str(u), "residue": n, "modulus": mod}) + "\n", 0
        return f"{n} mod {mod}\n", 0

    if cmd == "blip-scan":
        closed = not args.not_closed
        if args.lpq is not None:
            sample = [represent_integer(base, n.value) for n in enumerate_tree(base, args.lpq).walk()]
        elif args.words_file:
            with open(args.words_file) as fh:
                # an empty line is the empty word
                sample = [parse_word(line) for line in fh]
        elif args.example:
            sample = generate_example_language(args.example, args.size, args.j_size)
        else:
            sample = prefix_set(monoid_language(_generators(base, args.generators), args.max_len))
        report = blip_scan(sample, args.max_uv, args.min_i, prefix_closed=closed)
        if f == "json":
            return report.to_jsonl(), 0
        head = f"pairs {len(report)}  bounds |uv|<={args.max_uv} min_i={args.min_i} length<={report.iteration_cap}\n"
        body = "".join(f"{format_word(e.u, p) or 'ε'}\t{format_word(e.v, p)}\t{e.max_i}\n" for e in report.pairs)
        return head + body, 0

    if cmd == "max-iter":
        u = _word(base, args.u, "u")
        v = _word(base, args.v, "v")
        if not v.digits:
            raise UsageError("v: must be non-empty")
        i, capped = max_left_iteration(base, u, v, args.cap)
        if f == "json":
            return json.dumps({"u": str(u), "v": str(v), "max_i": i, "capped": capped}) + "\n", 0
        return f"max_i={i} capped={str(capped).lower()}\n", 0

    if cmd == "threshold":
        m, bound = threshold(base, args.k, cap=args.k_cap)
        if f == "json":
            return json.dumps({"k": args.k, "m_k": m, "guarantee": bound}) + "\n", 0
        return f"m_k={m} guarantee={bound}\n", 0

    if cmd == "cover":
        cover = translate_cover(_generators(base, args.generators))
        if f == "json":
            return "".join(json.dumps({"residue": i, "offset": None if g is None else str(g)}) + "\n"
                           for i, g in enumerate(cover.offsets)), 0
        lines = [f"k={cover.k}"] + [f"{i}\t{g if g is not None else '-'}" for i, g in enumerate(cover.offsets)]
        return "\n".join(lines) + "\n", 0

    if cmd == "monoid-lang":
        words = _sorted_words(monoid_language(_generators(base, args.generators), args.max_len))
        if f == "json":
            return "".join(json.dumps({"word": str(w), "value": str(evaluate(base, w))}) + "\n" for w in words), 0
        return "".join(f"{w}\n" for w in words), 0

    if cmd == "approx":
        cut = cut_approximation(base, args.k, include_short=args.include_short, cap=args.depth_cap)
        if f == "text":
            lines = [f"k={cut.k} live_states={len(cut.live_states)} frontier={len(cut.frontier)}"]
            for s, a, t in sorted(cut.tree_edges(), key=lambda e: (str(e[0]).zfill(8), e[1])):
                lines.append(f"{s}\t{a}\t{t}")
            out = "\n".join(lines) + "\n"
        else:
            out = export_approximation(cut, f, show_dead=args.show_dead)
            out = out if out.endswith("\n") else out + "\n"
        if args.check_len is not None:
            if args.check_len < args.k:
                raise UsageError("--check-len: must be at least --k")
            rep = approximation_checks(base, args.k, args.check_len)
            status = 0 if rep.ok else 1
            if f == "json":
                out += json.dumps({"long_words_accepted": rep.long_words_accepted,
                                   "checked": rep.long_words_checked,
                                   "refines": {str(k): v for k, v in rep.refines_deeper.items()},
                                   "acceptance": rep.acceptance,
                                   "witness": None if rep.overapproximation_witness is None
                                   else str(rep.overapproximation_witness)}) + "\n"
            elif f == "text":
                out += f"long words accepted: {rep.long_words_accepted} ({rep.long_words_checked} checked)\n"
                for k2, ok in rep.refines_deeper.items():
                    out += f"contains cut_{args.k} >= cut_{k2}: {ok}\n"
                for n, acc, tot in rep.acceptance:
                    out += f"length {n}: accepted {acc}, representations {tot}\n"
                out += f"accepted non-integer word: {rep.overapproximation_witness}\n"
            return out, status
        return out, 0

    if cmd == "check":
        names = list(SUITES) if args.suite == "all" else [args.suite]
        rows = run_suites(base, names)
        failed = any(r[2] == "FAIL" for r in rows)
        if f == "json":
            return "".join(json.dumps({"suite": s, "check": c, "status": st, "detail": d}) + "\n"
                           for s, c, st, d, _ in rows), int(failed)
        width = max(len(f"{s}/{c}") for s, c, *_ in rows)
        lines = [f"{(s + '/' + c).ljust(width)}  {st}  {d}" for s, c, st, d, _ in rows]
        lines.append(f"{'overall'.ljust(width)}  {'FAIL' if failed else 'PASS'}")
        return "\n".join(lines) + "\n", int(failed)

    raise UsageError(f"unknown command {cmd}")


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"ratbase: error: {exc}", file=sys.stderr)
        return 2
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    try:
        base = validate_base(args.p, args.q)
    except InvalidBase as exc:
        print(f"ratbase: error: --p/--q: {exc}", file=sys.stderr)
        return 2
    try:
        out, status = dispatch(args, base)
    except UsageError as exc:
        print(f"ratbase {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except RatBaseError as exc:
        print(f"ratbase {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return status


if __name__ == "__main__":
    sys.exit(main())
