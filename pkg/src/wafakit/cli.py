"""Command-line interface.

Subcommands: ``eval`` (run an automaton on a word or tree), ``runs``
(run-tree report with optional DOT and PNG diagrams), ``convert``
(behavior-checked constructions between the models), and ``decide``
(zeroness/equivalence over the rationals).

Exit codes: 0 success, 2 parse error, 3 evaluation error, 4 internal
verification failure, 5 resource limit.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import poly_automata, serialize, transforms, wafa as wafa_mod, wfta as wfta_mod
from .diagrams import run_dot, run_figure, wafa_dot
from .errors import (
    CarrierError,
    CarrierMismatchError,
    ParseError,
    ResourceLimitError,
    ShapeError,
    ToolkitError,
    VerificationError,
)
from .poly_automata import Pa
from .trees import enumerate_terms
from .wafa import Wafa
from .wfta import StepFunction, Wfta

EXIT_PARSE = 2
EXIT_EVAL = 3
EXIT_VERIFY = 4
EXIT_RESOURCE = 5


def _positive(value: str) -> int:
    try:
        n = int(value)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not an integer: {value!r}") from exc
    if n <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return n


def _load(path: str):
    if not os.path.exists(path):
        raise ParseError(f"no such file: {path}")
    return serialize.load_path(path)


def _load_tree(text: str):
    if os.path.exists(text):
        with open(text, "r", encoding="utf-8") as fh:
            text = fh.read()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid tree JSON: {exc}") from exc
    return serialize.decode_term(doc)


def _write_output(text: str, out: str | None):
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


# -- eval -------------------------------------------------------------------


def cmd_eval(args) -> int:
    obj = _load(args.input)
    if isinstance(obj, Wafa):
        if args.word is None:
            raise ParseError("alternating automata read words; pass --word")
        word = serialize.parse_word(obj.alphabet, args.word)
        value = wafa_mod.behavior(obj, word)
        print(obj.ring.format_value(value))
    elif isinstance(obj, Pa):
        if args.word is None:
            raise ParseError("polynomial automata read words; pass --word")
        word = serialize.parse_word(obj.alphabet, args.word)
        value = poly_automata.behavior(obj, word)
        print(obj.ring.format_value(value))
    elif isinstance(obj, Wfta):
        if args.tree is None:
            raise ParseError("tree automata read trees; pass --tree")
        t = _load_tree(args.tree)
        value = wfta_mod.behavior(obj, t)
        print(obj.ring.format_value(value))
    elif isinstance(obj, StepFunction):
        if args.tree is None:
            raise ParseError("step functions read trees; pass --tree")
        value = wfta_mod.step_eval(obj, _load_tree(args.tree))
        print(obj.ring.format_value(value))
    else:
        raise ParseError("document is not evaluable")
    return 0


# -- runs --------------------------------------------------------------------


def cmd_runs(args) -> int:
    obj = _load(args.input)
    if not isinstance(obj, Wafa):
        raise ParseError("the runs report needs an alternating automaton")
    A = obj
    if not wafa_mod.diagnose(A).nice:
        A = wafa_mod.make_nice(A)
        print("note: input normalized to a nice automaton", file=sys.stderr)
    word = serialize.parse_word(A.alphabet, args.word)
    ring = A.ring
    truncated = False
    runs = []
    try:
        for run in wafa_mod.enumerate_runs(A, word, cap=args.cap):
            runs.append(run)
    except ResourceLimitError:
        truncated = True
    lines = ["run\tweight"]
    total = ring.zero
    for i, run in enumerate(runs, start=1):
        w = wafa_mod.run_weight(run)
        total = ring.add(total, w)
        lines.append(f"{i}\t{ring.format_value(w)}")
    lines.append(f"runs\t{len(runs)}")
    lines.append(f"sum\t{ring.format_value(total)}")
    if truncated:
        lines.append("truncated\tcap exceeded, listing is partial")
    print("\n".join(lines))
    if args.dot:
        os.makedirs(args.dot, exist_ok=True)
        for i, run in enumerate(runs, start=1):
            with open(os.path.join(args.dot, f"run_{i:03d}.dot"), "w", encoding="utf-8") as fh:
                fh.write(run_dot(run))
    if args.figures:
        os.makedirs(args.figures, exist_ok=True)
        for i, run in enumerate(runs, start=1):
            run_figure(run, os.path.join(args.figures, f"run_{i:03d}.png"))
    if truncated:
        return EXIT_RESOURCE
    return 0


# -- convert -------------------------------------------------------------------


def _all_words(letters, max_len):
    out = [()]
    layer = [()]
    for _ in range(max_len):
        layer = [w + (a,) for w in layer for a in letters]
        out.extend(layer)
    return out


def _check(label: str, ok: bool):
    if not ok:
        raise VerificationError(f"behavior check failed: {label}")


def _verify_wafa_pair(A: Wafa, B: Wafa, depth: int):
    for w in _all_words(A.alphabet, depth):
        _check(
            f"word {''.join(w) or 'ε'}",
            A.ring.equal(wafa_mod.behavior(A, w), wafa_mod.behavior(B, w)),
        )


def cmd_convert(args) -> int:
    obj = _load(args.input)
    depth = args.verify_depth
    hom = _load(args.hom) if args.hom else None
    target = args.to
    rank = None

    if target in ("nice", "equalized", "purely-polynomial"):
        if not isinstance(obj, Wafa):
            raise ParseError(f"--to {target} needs an alternating automaton")
        out = wafa_mod.make_nice(obj)
        if target == "equalized":
            out = wafa_mod.equalize(out)
        elif target == "purely-polynomial":
            out = wafa_mod.make_purely_polynomial(out)
        _verify_wafa_pair(obj, out, depth)
        doc = serialize.encode_wafa(out)
    elif target == "wfta":
        if not isinstance(obj, Wafa):
            raise ParseError("--to wfta needs an alternating automaton")
        tv = transforms.wafa_to_wfta(obj)
        for w in _all_words(obj.alphabet, depth):
            _check(
                f"word {''.join(w) or 'ε'}",
                obj.ring.equal(
                    wafa_mod.behavior(obj, w),
                    wfta_mod.behavior(tv.wfta, tv.hom.apply_word(w)),
                ),
            )
        doc = serialize.encode_wfta(tv.wfta)
    elif target == "wafa":
        if isinstance(obj, Pa):
            out = poly_automata.pa_to_wafa(obj)
            for w in _all_words(obj.alphabet, depth):
                _check(
                    f"word {''.join(w) or 'ε'}",
                    obj.ring.equal(
                        poly_automata.behavior(obj, w),
                        wafa_mod.behavior(out, tuple(reversed(w))),
                    ),
                )
        elif isinstance(obj, Wfta):
            if hom is None:
                raise ParseError("--to wafa from a tree automaton needs --hom")
            out = transforms.wfta_hom_to_wafa(obj, hom)
            for w in _all_words(out.alphabet, depth):
                _check(
                    f"word {''.join(w) or 'ε'}",
                    obj.ring.equal(
                        wafa_mod.behavior(out, w),
                        wfta_mod.behavior(obj, hom.apply_word(w)),
                    ),
                )
        else:
            raise ParseError("--to wafa needs a polynomial or tree automaton")
        doc = serialize.encode_wafa(out)
    elif target == "pa":
        if not isinstance(obj, Wafa):
            raise ParseError("--to pa needs an alternating automaton")
        out = poly_automata.wafa_to_pa(obj)
        for w in _all_words(obj.alphabet, depth):
            _check(
                f"word {''.join(w) or 'ε'}",
                obj.ring.equal(
                    wafa_mod.behavior(obj, w),
                    poly_automata.behavior(out, tuple(reversed(w))),
                ),
            )
        doc = serialize.encode_pa(out)
    elif target == "nivat":
        if isinstance(obj, Wafa):
            view = transforms.nivat_wafa_decompose(obj)
            d = view.decomposition
            rank = view.rank
            for w in _all_words(obj.alphabet, depth):
                t = view.translation.hom.apply_word(w)
                _check(
                    f"word {''.join(w) or 'ε'}",
                    obj.ring.equal(
                        wafa_mod.behavior(obj, w), transforms.preimage_sum(d, t)
                    ),
                )
        elif isinstance(obj, Wfta):
            d = transforms.nivat_decompose(obj)
            trees = [t for t in enumerate_terms(obj.alphabet, 2 * depth + 1)][:200]
            for t in trees:
                _check(
                    f"tree {t.to_text()}",
                    obj.ring.equal(
                        wfta_mod.behavior(obj, t), transforms.preimage_sum(d, t)
                    ),
                )
        else:
            raise ParseError("--to nivat needs an alternating or tree automaton")
        doc = serialize.encode_nivat(d, rank)
    else:
        raise ParseError(f"unknown conversion target {target!r}")

    if args.format == "dot":
        if doc.get("kind") != "wafa":
            raise ParseError("dot output is only available for alternating automata")
        _write_output(wafa_dot(serialize.decode_wafa(doc)), args.output)
    else:
        _write_output(serialize.dumps(doc), args.output)
    return 0


# -- decide ----------------------------------------------------------------------


def cmd_decide(args) -> int:
    budget = args.budget
    try:
        if args.equiv:
            left = _load(args.equiv[0])
            right = _load(args.equiv[1])
            if isinstance(left, Wafa) and isinstance(right, Wafa):
                rep = poly_automata.wafa_equivalence_report(left, right, budget)
            elif isinstance(left, Pa) and isinstance(right, Pa):
                rep = poly_automata.pa_equivalence_report(left, right, budget)
            else:
                raise ParseError("equivalence needs two automata of the same kind")
            verdict = "equivalent" if rep.zero else "inequivalent"
        else:
            obj = _load(args.zeroness)
            if isinstance(obj, Wafa):
                rep = poly_automata.wafa_zeroness_report(obj, budget)
            elif isinstance(obj, Pa):
                rep = poly_automata.pa_zeroness_report(obj, budget)
            else:
                raise ParseError("zeroness needs an alternating or polynomial automaton")
            verdict = "zero" if rep.zero else "nonzero"
    except ResourceLimitError:
        print(json.dumps({"result": "unknown", "reason": "resource limit"}, sort_keys=True))
        return EXIT_RESOURCE
    out = {
        "result": verdict,
        "basis_size": rep.basis_size,
        "chain_depth": rep.chain_depth,
    }
    if rep.witness is not None:
        out["witness"] = "".join(rep.witness) if all(len(a) == 1 for a in rep.witness) else list(rep.witness)
    print(json.dumps(out, sort_keys=True))
    return 0


# -- entry ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wafakit",
        description="Weighted alternating, tree, and polynomial automata toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="evaluate an automaton on a word or tree")
    p_eval.add_argument("input", help="automaton document (JSON)")
    p_eval.add_argument("--word", help="input word; empty string for the empty word")
    p_eval.add_argument("--tree", help="input tree (inline JSON or a file path)")
    p_eval.set_defaults(func=cmd_eval)

    p_runs = sub.add_parser("runs", help="list run trees, their weights, and the sum")
    p_runs.add_argument("input")
    p_runs.add_argument("--word", required=True)
    p_runs.add_argument("--cap", type=_positive, default=wafa_mod.DEFAULT_RUN_CAP)
    p_runs.add_argument("--dot", metavar="DIR", help="write one DOT file per run")
    p_runs.add_argument("--figures", metavar="DIR", help="write one PNG figure per run")
    p_runs.set_defaults(func=cmd_runs)

    p_conv = sub.add_parser("convert", help="translate between the automaton models")
    p_conv.add_argument("input")
    p_conv.add_argument(
        "--to",
        required=True,
        choices=["wfta", "wafa", "pa", "nivat", "nice", "equalized", "purely-polynomial"],
    )
    p_conv.add_argument("--hom", help="homomorphism document when required")
    p_conv.add_argument("--verify-depth", type=_positive, default=3)
    p_conv.add_argument("--format", choices=["json", "dot"], default="json")
    p_conv.add_argument("-o", "--output", help="output path (default stdout)")
    p_conv.set_defaults(func=cmd_convert)

    p_dec = sub.add_parser("decide", help="zeroness / equivalence over the rationals")
    group = p_dec.add_mutually_exclusive_group(required=True)
    group.add_argument("--zeroness", metavar="FILE")
    group.add_argument("--equiv", nargs=2, metavar=("A", "B"))
    p_dec.add_argument("--budget", type=_positive, default=poly_automata.DEFAULT_BUDGET)
    p_dec.set_defaults(func=cmd_decide)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except VerificationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except ResourceLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (CarrierError, CarrierMismatchError, ShapeError, KeyError, ToolkitError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_EVAL
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


def entry():  # console script
    raise SystemExit(main())


if __name__ == "__main__":
    entry()
