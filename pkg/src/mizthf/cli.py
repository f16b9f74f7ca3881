"""Command line front end.

Subcommands mirror the pipeline: ``check`` runs the well-formedness
pass, ``translate`` shows the higher-order form of one statement,
``emit`` assembles a THF0 problem from a conjecture and axiom files,
``match`` recovers a scheme instantiation, and ``prove`` hands an
emitted problem to an external prover and reads back its SZS status.

Exit status: 0 success, 1 diagnostics or no match or not proved,
2 usage and I/O errors.
"""

from __future__ import annotations

import argparse
import re
import subprocess
import sys
import tempfile
from pathlib import Path

from . import hol, thf
from .mizar import MStatement, Signature, SourceError, well_formed
from .parser import parse_signature, parse_statement
from .patterns import MatchError, recover_scheme_instantiation
from .thfcheck import check_thf
from .translate import TranslationError, translate_statement


def _fail(message: str, code: int) -> int:
    print(message, file=sys.stderr)
    return code


def _read(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _load_signature(path: str) -> Signature:
    return parse_signature(_read(path))


def _load_statement(path: str, sig: Signature) -> MStatement:
    return parse_statement(_read(path), sig)


def _positioned(path: str, err: SourceError) -> str:
    if err.line is not None:
        return f"{path}:{err.line}:{err.col}: {err}"
    return f"{path}: {err}"


def _axiom_name(path: str, statement: MStatement, taken: set[str]) -> str:
    base = statement.name or re.sub(r"\W", "_", Path(path).stem) or "ax"
    name, n = base, 1
    while name in taken:
        n += 1
        name = f"{base}_{n}"
    taken.add(name)
    return name


def cmd_check(args: argparse.Namespace) -> int:
    sig = _load_signature(args.sig)
    status = 0
    for path in args.files:
        try:
            statement = _load_statement(path, sig)
        except SourceError as e:
            print(_positioned(path, e), file=sys.stderr)
            status = 1
            continue
        diags = well_formed(statement, sig)
        for d in diags:
            print(f"{path}: {d}", file=sys.stderr)
        if diags:
            status = 1
    return status


def _translate_file(path: str, sig: Signature,
                    max_arity: int) -> tuple[MStatement, hol.Term]:
    statement = _load_statement(path, sig)
    diags = well_formed(statement, sig)
    if diags:
        raise SourceError("; ".join(str(d) for d in diags))
    return statement, translate_statement(statement, sig,
                                          max_arity=max_arity)


def cmd_translate(args: argparse.Namespace) -> int:
    sig = _load_signature(args.sig)
    try:
        _, term = _translate_file(args.file, sig, args.max_arity)
    except SourceError as e:
        return _fail(_positioned(args.file, e), 1)
    print(hol.show_term(term))
    return 0


def _assemble(args: argparse.Namespace,
              sig: Signature) -> thf.Problem:
    axioms: list[tuple[str, hol.Term]] = []
    taken: set[str] = set()
    for path in args.axiom or []:
        statement, term = _translate_file(path, sig, args.max_arity)
        axioms.append((_axiom_name(path, statement, taken), term))
    _, conjecture = _translate_file(args.file, sig, args.max_arity)
    name = Path(args.file).stem
    return thf.assemble_problem(conjecture, axioms, sig, name=name)


def cmd_emit(args: argparse.Namespace) -> int:
    sig = _load_signature(args.sig)
    try:
        problem = _assemble(args, sig)
    except SourceError as e:
        return _fail(str(e), 1)
    text = thf.emit_thf(problem)
    diags = check_thf(text)
    if diags:
        for d in diags:
            print(f"emitted problem: {d}", file=sys.stderr)
        return 1
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


def cmd_match(args: argparse.Namespace) -> int:
    sig = _load_signature(args.sig)
    try:
        scheme_stmt, scheme = _translate_file(args.scheme, sig,
                                              args.max_arity)
        _, conjecture = _translate_file(args.file, sig, args.max_arity)
    except SourceError as e:
        return _fail(str(e), 1)
    k = args.strip if args.strip is not None else len(scheme_stmt.prefix)
    try:
        found = recover_scheme_instantiation(scheme, conjecture, k)
    except MatchError as e:
        return _fail(f"no instantiation: {e}", 1)
    for meta, value in found.substitution.items():
        print(f"{meta.name} := {hol.show_term(value)}")
    for condition in found.side_conditions:
        print(f"side condition: {hol.show_term(condition)}")
    return 0


def cmd_prove(args: argparse.Namespace) -> int:
    sig = _load_signature(args.sig)
    try:
        problem = _assemble(args, sig)
    except SourceError as e:
        return _fail(str(e), 1)
    text = thf.emit_thf(problem)
    with tempfile.NamedTemporaryFile(
            "w", suffix=".p", delete=False, encoding="utf-8") as handle:
        handle.write(text)
        path = handle.name
    try:
        run = subprocess.run(
            [args.prover, path], capture_output=True, text=True,
            timeout=args.timeout)
    except subprocess.TimeoutExpired:
        return _fail(f"prover timed out after {args.timeout}s", 1)
    output = run.stdout + run.stderr
    match = re.search(r"SZS status (\w+)", output)
    status = match.group(1) if match else "Unknown"
    print(f"SZS status {status}")
    return 0 if status == "Theorem" else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mizthf",
        description="translate Mizar-style statements to THF0 and "
                    "recover scheme instantiations")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--sig", required=True,
                       help="signature file naming the constants")
        p.add_argument("--max-arity", type=int, default=6, metavar="N",
                       help="largest comprehension binder count "
                            "(default 6)")

    p = sub.add_parser("check", help="report well-formedness diagnostics")
    p.add_argument("files", nargs="+")
    common(p)
    p.set_defaults(run=cmd_check)

    p = sub.add_parser("translate",
                       help="print the higher-order form of a statement")
    p.add_argument("file")
    common(p)
    p.set_defaults(run=cmd_translate)

    p = sub.add_parser("emit", help="write a THF0 problem")
    p.add_argument("file", help="conjecture statement")
    common(p)
    p.add_argument("--axiom", action="append", metavar="FILE",
                   help="statement to include as an axiom (repeatable)")
    p.add_argument("--out", metavar="PATH",
                   help="output file (default stdout)")
    p.set_defaults(run=cmd_emit)

    p = sub.add_parser("match",
                       help="recover how a scheme instantiates to a "
                            "conjecture")
    p.add_argument("scheme", help="scheme statement")
    p.add_argument("file", help="ground conjecture statement")
    common(p)
    p.add_argument("--strip", type=int, metavar="K",
                   help="outer universals to open (default: the "
                        "scheme's prefix length)")
    p.set_defaults(run=cmd_match)

    p = sub.add_parser("prove", help="emit and run an external prover")
    p.add_argument("file", help="conjecture statement")
    common(p)
    p.add_argument("--axiom", action="append", metavar="FILE")
    p.add_argument("--prover", required=True,
                   help="prover executable accepting a THF file")
    p.add_argument("--timeout", type=float, default=30.0, metavar="S")
    p.set_defaults(run=cmd_prove)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.run(args)
    except OSError as e:
        return _fail(str(e), 2)
    except SourceError as e:
        return _fail(str(e), 1)
    except (TranslationError, thf.UndeclaredConstant, hol.HolTypeError) as e:
        return _fail(str(e), 1)


if __name__ == "__main__":
    sys.exit(main())
