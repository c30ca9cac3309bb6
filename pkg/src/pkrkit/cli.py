"""Command-line entry point.

Exit status: 0 for a true verdict or a passing check, 1 for false or
failing, 2 for usage errors, 3 when a cap is exceeded, 4 on parse errors.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path
from typing import Any, Callable, Sequence

from . import default_logic as dl
from . import formats, limits, oracles, reductions
from .circuit import BooleanCircuit, identity
from .errors import CapacityError, CircuitError, EvaluationError, ParseError, PreconditionError
from .preservation import Semantics, SemanticsTag, check_model_preservation, check_theorem_preservation
from .syntax import parse_formula, split_atoms, to_text

EXIT_TRUE, EXIT_FALSE, EXIT_USAGE, EXIT_CAPACITY, EXIT_PARSE = 0, 1, 2, 3, 4

FORMALISMS = ("pl", "circ", "gcwa", "default", "default-credulous", "sm", "sbr", "widtio")
REDUCTIONS = (
    "etherington", "circ-to-default", "gcwa-to-pl", "widtio-to-pl",
    "qbf-skeptical", "qbf-credulous", "kernel",
)
_CAP_FLAGS = {
    "models": "--model-cap", "positive_clauses": "--clause-cap", "defaults": "--search-cap",
    "stable": "--stable-cap", "revision": "--revision-cap", "oracle": "--oracle-cap",
}


class UsageError(Exception):
    pass


def _load(kind: str, path: str, **kwargs) -> Any:
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None
    try:
        return formats.PARSERS[kind](text, **kwargs)
    except ParseError as e:
        raise ParseError(e.reason, e.line, e.column, source=path) from None


def _tag(formalism: str, payload: Any) -> SemanticsTag:
    kind = "default" if formalism == "default-credulous" else formalism
    return SemanticsTag(Semantics(kind), payload)


def _emit(args, text: str, record: dict) -> None:
    if args.format == "records":
        sys.stdout.write(json.dumps(record, sort_keys=True) + "\n")
    else:
        sys.stdout.write(text)


def _verdict(flag: bool) -> str:
    return "true" if flag else "false"


# ----------------------------------------------------------------- commands


def cmd_solve(args) -> int:
    payload = _load(args.formalism, args.kb)
    query = parse_formula(args.query)
    if args.formalism == "default-credulous":
        verdict = dl.credulous_entails(payload, query)
    else:
        verdict = _tag(args.formalism, payload).entails(query)
    _emit(args, f"{_verdict(verdict)}\n",
          {"command": "solve", "formalism": args.formalism, "query": to_text(query), "verdict": verdict})
    return EXIT_TRUE if verdict else EXIT_FALSE


def cmd_model_check(args) -> int:
    payload = _load(args.formalism, args.kb)
    model = frozenset(split_atoms(args.model))
    tag = _tag(args.formalism, payload)
    unknown = sorted(model - set(tag.atoms))
    if unknown:
        raise EvaluationError(unknown[0])
    verdict = tag.satisfied_by(model)
    ordered = [a for a in tag.atoms if a in model]
    _emit(args, f"{_verdict(verdict)}\n",
          {"command": "model-check", "formalism": args.formalism, "model": ordered, "verdict": verdict})
    return EXIT_TRUE if verdict else EXIT_FALSE


# (file name, format key, object)
TranslateOutput = list[tuple[str, str, Any]]


def translate(name: str, source: Any) -> TranslateOutput:
    """Run reduction ``name`` and list the files it produces."""
    if name == "etherington":
        out = reductions.etherington(source)
        return [("target.circ", "circ", out.target), ("circuit.txt", "circuit", out.circuit)]
    if name == "circ-to-default":
        return [("target.default", "default", reductions.circ_to_default(source))]
    if name == "gcwa-to-pl":
        return [("target.pl", "pl", reductions.gcwa_to_pl(source))]
    if name == "widtio-to-pl":
        return [("target.pl", "pl", reductions.widtio_to_pl(source))]
    if name == "qbf-skeptical":
        dt, model = reductions.qbf_to_skeptical_mc(source)
        return [("target.default", "default", dt), ("model.txt", "model", model)]
    if name == "qbf-credulous":
        dt, query = reductions.qbf_to_credulous_inf(source)
        return [("target.default", "default", dt), ("query.txt", "query", query)]
    if name == "kernel":
        return [("program.lp", "sm", reductions.kernel_program(source.n)),
                ("query.txt", "query", reductions.kernel_query(source))]
    raise UsageError(f"unknown reduction {name!r}")


TRANSLATE_INPUT = {
    "etherington": "default", "circ-to-default": "pl", "gcwa-to-pl": "gcwa", "widtio-to-pl": "widtio",
    "qbf-skeptical": "qbf", "qbf-credulous": "qbf", "kernel": "graph",
}


def render(kind: str, obj: Any, outputs: TranslateOutput) -> str:
    if kind == "model":
        alphabet = next((o.atoms for _, k, o in outputs if k == "default"), ())
        return formats.write_model(obj, alphabet)
    return formats.write(obj)


def cmd_translate(args) -> int:
    extra = {"pad": True} if args.pad and TRANSLATE_INPUT[args.reduction] == "qbf" else {}
    source = _load(TRANSLATE_INPUT[args.reduction], args.input, **extra)
    outputs = translate(args.reduction, source)
    records = []
    for filename, kind, obj in outputs:
        text = render(kind, obj, outputs)
        if args.out:
            target = Path(args.out) / filename
            target.parent.mkdir(parents=True, exist_ok=True)
            target.write_text(text)
            records.append({"file": str(target), "format": kind})
            if args.format == "text":
                sys.stdout.write(f"wrote {target}\n")
        else:
            records.append({"file": filename, "format": kind, "content": text})
            if args.format == "text":
                sys.stdout.write(f"== {filename}\n{text}")
    if args.format == "records":
        for r in records:
            sys.stdout.write(json.dumps(r, sort_keys=True) + "\n")
    return EXIT_TRUE


def _side(text: str) -> tuple[str, str]:
    formalism, sep, path = text.partition(":")
    allowed = [f for f in FORMALISMS if f != "default-credulous"]
    if not sep or formalism not in allowed:
        raise UsageError(f"expected FORMALISM:PATH with FORMALISM in {', '.join(allowed)}, got {text!r}")
    return formalism, path


def cmd_verify(args) -> int:
    lf, lpath = _side(args.left)
    rf, rpath = _side(args.right)
    left = _tag(lf, _load(lf, lpath))
    right = _tag(rf, _load(rf, rpath))
    circuit: BooleanCircuit = _load("circuit", args.circuit) if args.circuit else identity(left.atoms)
    if args.mode == "model":
        report = check_model_preservation(left, right, circuit)
    else:
        report = check_theorem_preservation(left, right, circuit, clause_length=args.clause_length,
                                            random_count=args.random_count, seed=args.seed)
    sys.stdout.write(report.to_records() if args.format == "records" else report.to_text())
    return EXIT_TRUE if report.passed else EXIT_FALSE


def cmd_oracle(args) -> int:
    if args.problem == "kernel":
        g = _load("graph", args.input)
        found, witness = oracles.has_kernel(g)
        shown = sorted(witness) if witness is not None else None
        text = f"kernel: {_verdict(found)}\n" + (f"witness: {' '.join(map(str, shown))}\n" if found else "")
        _emit(args, text, {"command": "oracle", "problem": "kernel", "verdict": found, "witness": shown})
    else:
        q = _load("qbf", args.input, pad=args.pad)
        witness = oracles.qbf_witness(q)
        found = witness is not None
        shown = [a for a in q.existential if a in witness] if found else None
        text = f"valid: {_verdict(found)}\n" + (f"witness: {' '.join(shown)}\n" if found else "")
        _emit(args, text, {"command": "oracle", "problem": "qbf", "verdict": found, "witness": shown})
    return EXIT_TRUE if found else EXIT_FALSE


_PARAM_RE = re.compile(r"n=(\d+)(?:\.\.(\d+))?\Z")


def parse_param(text: str) -> range:
    m = _PARAM_RE.match(text)
    if not m:
        raise UsageError(f"expected --param n=LOW..HIGH or n=VALUE, got {text!r}")
    low = int(m.group(1))
    high = int(m.group(2) or low)
    if high < low:
        raise UsageError(f"empty parameter range {text!r}")
    return range(low, high + 1)


def cmd_sweep(args) -> int:
    rows = reductions.reduction_size_report(args.reduction, parse_param(args.param))
    if args.format == "records":
        for r in rows:
            sys.stdout.write(json.dumps({"reduction": args.reduction, "n": r.param, "input": r.input_size,
                                         "output": r.output_size, "atoms": r.atoms, "items": r.items},
                                        sort_keys=True) + "\n")
    else:
        header = ("n", "input", "output", "atoms", "items")
        table = [header] + [tuple(str(v) for v in (r.param, r.input_size, r.output_size, r.atoms, r.items))
                            for r in rows]
        widths = [max(len(row[i]) for row in table) for i in range(len(header))]
        for row in table:
            sys.stdout.write("  ".join(cell.rjust(w) for cell, w in zip(row, widths)) + "\n")
    return EXIT_TRUE


def cmd_selftest(args) -> int:
    from .acceptance import run_battery

    only = None
    if args.only:
        try:
            only = {int(x) for x in args.only.split(",")}
        except ValueError:
            raise UsageError(f"--only expects comma-separated criterion numbers, got {args.only!r}") from None
    results = run_battery(only=only, seed=args.seed)
    for r in results:
        if args.format == "records":
            sys.stdout.write(json.dumps(r.record(), sort_keys=True) + "\n")
        else:
            sys.stdout.write(r.line() + "\n")
        sys.stdout.flush()
    return EXIT_TRUE if all(r.passed for r in results) else EXIT_FALSE


# ------------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "records"), default="text",
                        help="human-readable text or one JSON record per line")
    common.add_argument("--seed", type=int, default=0, help="seed for randomised query universes")
    for cap, flag in _CAP_FLAGS.items():
        common.add_argument(flag, type=int, dest=f"cap_{cap}", metavar="N",
                            help=f"override the {cap.replace('_', ' ')} cap")

    parser = argparse.ArgumentParser(prog="pkrkit", description="Propositional knowledge representation toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", parents=[common], help="decide KB |- query under a formalism")
    p.add_argument("formalism", choices=FORMALISMS)
    p.add_argument("kb")
    p.add_argument("--query", required=True)
    p.set_defaults(run=cmd_solve)

    p = sub.add_parser("model-check", parents=[common], help="decide M |= KB under a formalism")
    p.add_argument("formalism", choices=FORMALISMS)
    p.add_argument("kb")
    p.add_argument("--model", required=True, help='true atoms, e.g. "p q"; "" for the empty model')
    p.set_defaults(run=cmd_model_check)

    p = sub.add_parser("translate", parents=[common], help="run a reduction and write its outputs")
    p.add_argument("reduction", choices=REDUCTIONS)
    p.add_argument("input")
    p.add_argument("--out", help="directory for the output files; stdout when omitted")
    p.add_argument("--pad", action="store_true", help="pad short QBF clauses with fresh universal variables")
    p.set_defaults(run=cmd_translate)

    p = sub.add_parser("verify", parents=[common], help="check model or theorem preservation")
    p.add_argument("--left", required=True, metavar="F:PATH")
    p.add_argument("--right", required=True, metavar="F:PATH")
    p.add_argument("--circuit", help="circuit file; identity over the left alphabet when omitted")
    p.add_argument("--mode", choices=("model", "theorem"), default="model")
    p.add_argument("--clause-length", type=int, default=2)
    p.add_argument("--random-count", type=int, default=50)
    p.set_defaults(run=cmd_verify)

    p = sub.add_parser("oracle", parents=[common], help="brute-force ground truth")
    p.add_argument("problem", choices=("kernel", "qbf"))
    p.add_argument("input")
    p.add_argument("--pad", action="store_true", help="pad short QBF clauses with fresh universal variables")
    p.set_defaults(run=cmd_oracle)

    p = sub.add_parser("sweep", parents=[common], help="tabulate reduction sizes over a parameter range")
    p.add_argument("reduction", choices=reductions.SWEEPS)
    p.add_argument("--param", default="n=1..3", help="n=LOW..HIGH")
    p.set_defaults(run=cmd_sweep)

    p = sub.add_parser("selftest", parents=[common], help="run the acceptance battery")
    p.add_argument("--only", help="comma-separated criterion numbers")
    p.set_defaults(run=cmd_selftest)
    return parser


def _guarded(run: Callable[[Any], int], args) -> int:
    try:
        return run(args)
    except CapacityError as e:
        sys.stderr.write(f"pkrkit: capacity: {e} (raise it with {_CAP_FLAGS[e.cap]})\n")
        return EXIT_CAPACITY
    except ParseError as e:
        sys.stderr.write(f"pkrkit: parse error: {e}\n")
        return EXIT_PARSE
    except (UsageError, PreconditionError, EvaluationError, CircuitError) as e:
        sys.stderr.write(f"pkrkit: {e}\n")
        return EXIT_USAGE


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_TRUE
    caps = {cap: getattr(args, f"cap_{cap}") for cap in _CAP_FLAGS if getattr(args, f"cap_{cap}") is not None}
    for cap, value in caps.items():
        if value < 0:
            sys.stderr.write(f"pkrkit: {_CAP_FLAGS[cap]} must be non-negative\n")
            return EXIT_USAGE
    with limits.override(**caps):
        return _guarded(args.run, args)


if __name__ == "__main__":
    sys.exit(main())
