"""Command-line surface.

Commands read an ice-quiver-with-potential document (JSON) from a file or
'-' for stdin, and print canonical JSON (or a plain-text rendering with
--format text).  Identical inputs and flags produce byte-identical output.

Exit codes: 0 success, 1 validation failure, 2 parse error, 3 precondition
violation.
"""

from __future__ import annotations

import argparse
import sys

from . import io as docio
from .algebra import Potential, default_truncation, potential_validate
from .errors import (IceQuiverError, ParseError, PreconditionError,
                     TruncationTooSmall, ValidationFailure)
from .jacobian import hom_dims_matrix, rigidity, truncated_algebra
from .mutation import check_involution, mutate, nondegeneracy_search
from .quiver import IceQuiver

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_PARSE = 2
EXIT_PRECONDITION = 3


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--truncate", type=int, default=None,
                        help="degree bound N (default: max(4, 2*maxdeg(W)+2))")
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--seed", type=int, default=0,
                        help="seed for sample harnesses (reserved)")

    parser = argparse.ArgumentParser(
        prog="icequiver",
        description="Exact computations with ice quivers with potential.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, **kwargs):
        p = sub.add_parser(name, parents=[common], **kwargs)
        return p

    p = add("validate", help="validate a document")
    p.add_argument("file")
    p = add("reduce", help="reduce an ice quiver with potential")
    p.add_argument("file")
    p = add("mutate", help="mutate at a vertex or a sequence of vertices")
    p.add_argument("file")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--at", type=int)
    group.add_argument("--seq", type=str)
    p = add("fz", help="extended Fomin-Zelevinsky mutation of the ice quiver")
    p.add_argument("file")
    p.add_argument("--at", type=int, required=True)
    p = add("jacobian", help="truncated frozen Jacobian dimension matrix")
    p.add_argument("file")
    p = add("rigid", help="rigidity of the potential up to the bound")
    p.add_argument("file")
    p = add("involution", help="check the double-mutation comparison at a vertex")
    p.add_argument("file")
    p.add_argument("--at", type=int, required=True)
    p = add("nondeg", help="bounded non-degeneracy search")
    p.add_argument("file")
    p.add_argument("--depth", type=int, required=True)
    p = add("dimer-import", help="convert a dimer document to an IQP document")
    p.add_argument("file")
    p = add("serve", help="run the HTTP session API")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8512)
    return parser


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise ParseError(str(e), path) from None


def _load_iqp(path: str):
    q, w = docio.parse_iqp(_read(path))
    return q, w


def _truncation(args, w: Potential) -> int:
    return args.truncate if args.truncate is not None else default_truncation(w)


def _text_iqp(q: IceQuiver, w: Potential) -> str:
    lines = ["vertices:"]
    for v in q.vertices:
        lines.append(f"  {v.id}{' [frozen]' if v.frozen else ''}")
    lines.append("arrows:")
    for a in q.arrows:
        frozen = " [frozen]" if a.frozen else ""
        lines.append(f"  {a.id}: {a.tail} -> {a.head}{frozen}")
    lines.append("potential:")
    if w.is_zero():
        lines.append("  0")
    for word, c in sorted(w.terms.items(), key=lambda t: (len(t[0]), t[0].arrows)):
        lines.append(f"  {c} * {''.join(word.arrows)}")
    return "\n".join(lines) + "\n"


def _emit_iqp(args, q, w) -> str:
    if args.format == "text":
        return _text_iqp(q, w)
    return docio.serialize_iqp(q, w)


def _emit(args, payload: dict, text: str) -> str:
    return text if args.format == "text" else docio.dumps_canonical(payload)


def run_command(argv: list[str]) -> tuple[int, str]:
    """Execute one CLI invocation; returns (exit code, output document)."""
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _dispatch(args)
    except ParseError as e:
        return EXIT_PARSE, f"parse error: {e}\n"
    except ValidationFailure as e:
        return EXIT_VALIDATION, "validation failure:\n" + "".join(
            f"  {v}\n" for v in e.violations)
    except (PreconditionError, TruncationTooSmall) as e:
        return EXIT_PRECONDITION, f"precondition violation: {e}\n"
    except IceQuiverError as e:
        return EXIT_PRECONDITION, f"error: {e}\n"


def _dispatch(args) -> tuple[int, str]:
    cmd = args.command
    if cmd == "serve":
        from .service import serve
        serve(args.host, args.port)
        return EXIT_OK, ""

    if cmd == "dimer-import":
        model = docio.parse_dimer(_read(args.file))
        from .dimer import dimer_potential, dual_ice_quiver
        q, _ = dual_ice_quiver(model)
        w = dimer_potential(model, q)
        return EXIT_OK, _emit_iqp(args, q, w)

    q, w = _load_iqp(args.file)

    if cmd == "validate":
        violations = q.validate() + potential_validate(q, w)
        payload = {"valid": not violations, "violations": violations}
        text = "valid\n" if not violations else "".join(
            f"{v}\n" for v in violations)
        return (EXIT_OK if not violations else EXIT_VALIDATION,
                _emit(args, payload, text))

    q.require_valid()
    from .algebra import require_valid_potential
    require_valid_potential(q, w)
    n = _truncation(args, w)

    if cmd == "reduce":
        from .reduction import reduce_iqp
        out = reduce_iqp(q, w, n)
        return EXIT_OK, _emit_iqp(args, out.quiver, out.potential)

    if cmd == "mutate":
        seq = [args.at] if args.at is not None else [
            int(x) for x in args.seq.split(",") if x != ""]
        cur_q, cur_w = q, w
        for k in seq:
            step = mutate(cur_q, cur_w, k, n)
            cur_q, cur_w = step.quiver, step.potential
        return EXIT_OK, _emit_iqp(args, cur_q, cur_w)

    if cmd == "fz":
        return EXIT_OK, _emit_iqp(args, q.fz_mutate(args.at), Potential.zero())

    if cmd == "jacobian":
        algebra = truncated_algebra(q, w, n)
        ids = list(q.vertex_ids)
        payload = {
            "truncation": n,
            "vertices": ids,
            "matrix": hom_dims_matrix(algebra),
            "total": algebra.total_dim(),
        }
        text_lines = [f"truncation {n}", f"total dimension {algebra.total_dim()}"]
        for i, row in zip(ids, payload["matrix"]):
            text_lines.append(f"  from {i}: " + " ".join(str(x) for x in row))
        return EXIT_OK, _emit(args, payload, "\n".join(text_lines) + "\n")

    if cmd == "rigid":
        report = rigidity(q, w, n)
        payload = {
            "rigid": report.rigid,
            "bound": report.bound,
            "witness": list(report.witness.arrows) if report.witness else None,
        }
        text = (f"RigidUpTo({report.bound})\n" if report.rigid
                else f"NotRigid({''.join(report.witness.arrows)})\n")
        return EXIT_OK, _emit(args, payload, text)

    if cmd == "involution":
        report = check_involution(q, w, args.at, n)
        payload = {
            "quiver_match": report.quiver_match,
            "potential_match": report.potential_match,
            "dims_match": report.dims_match,
        }
        text = (f"quiver_match={report.quiver_match} "
                f"potential_match={report.potential_match} "
                f"dims_match={report.dims_match}\n")
        return EXIT_OK, _emit(args, payload, text)

    if cmd == "nondeg":
        report = nondegeneracy_search(q, w, args.depth, n)
        payload = {
            "ok_to_depth": report.ok_to_depth,
            "depth": report.depth,
            "failing_sequence": report.failing_sequence,
        }
        text = ("ok\n" if report.ok_to_depth
                else f"fails after {report.failing_sequence}\n")
        return EXIT_OK, _emit(args, payload, text)

    raise PreconditionError(f"unknown command {cmd!r}")


def main() -> None:
    code, output = run_command(sys.argv[1:])
    if output:
        sys.stdout.write(output)
    sys.exit(code)


if __name__ == "__main__":
    main()
