"""Command line interface.

Exit codes: 0 success, 1 a mathematical check failed, 2 bad input
(unreadable file, parse error, unknown catalog name, bad parameter use).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import catalog
from .errors import (
    ParametricNotSupported,
    ParseError,
    QcalcError,
)
from .exterior import (
    Flag,
    Form,
    LieAlgebra,
    cohomology_dim,
    search_flag,
    substitute_form,
    verify_flag,
)
from .family import ALL_VALUES, solve_family
from .parser import AlgebraDocument, form_text, parse
from .qc import QCFrame
from .report import SAMPLE_TUPLES, build_report
from .scalars import Poly, scalar_str, substitute


class _InputError(QcalcError):
    """Problem with the invocation or the input document (exit code 2)."""


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    fmt = _resolve_format(args)
    try:
        return args.handler(args, fmt)
    except ParseError as e:
        _emit_error(e.message, fmt, line=e.line, col=e.col)
        return 2
    except (_InputError, ParametricNotSupported) as e:
        _emit_error(str(e), fmt)
        return 2
    except OSError as e:
        _emit_error(str(e), fmt)
        return 2
    except QcalcError as e:
        _emit_error(str(e), fmt)
        return 1


def _resolve_format(args) -> str:
    fmt = getattr(args, "format", None)
    if fmt:
        return fmt
    env = os.environ.get("QCALC_FORMAT", "")
    if env in ("json", "text"):
        return env
    return "text"


def _emit_error(message: str, fmt: str, line: int | None = None, col: int | None = None) -> None:
    if fmt == "json":
        err: dict = {"message": message}
        if line is not None:
            err["line"] = line
            err["col"] = col
        print(json.dumps({"error": err}, indent=2), file=sys.stderr)
    else:
        where = f"line {line}, col {col}: " if line is not None else ""
        print(f"error: {where}{message}", file=sys.stderr)


def _emit(obj: dict, fmt: str, text_lines) -> None:
    if fmt == "json":
        print(json.dumps(obj, indent=2))
    else:
        for line in text_lines(obj):
            print(line)


# ---------------------------------------------------------------------------
# argument plumbing


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="qcalc",
        description="Exact invariants of 7-dimensional quaternionic-contact Lie algebras.",
    )
    sub = top.add_subparsers(dest="command", required=True)

    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("json", "text"), help="output format (default: QCALC_FORMAT or text)")

    src = argparse.ArgumentParser(add_help=False, parents=[fmt])
    src.add_argument("file", nargs="?", help="structure-equation file")
    src.add_argument("--catalog", dest="catalog_name", metavar="NAME", help="use a built-in algebra")
    src.add_argument("--param", metavar="NAME=VALUE", help="specialize the parameter, e.g. mu=-1")

    p = sub.add_parser("check", parents=[src], help="validate the Jacobi identity and qc structure")
    p.set_defaults(handler=_cmd_check)

    p = sub.add_parser("report", parents=[src], help="compute the full invariant report")
    p.set_defaults(handler=_cmd_report)

    p = sub.add_parser("wqc", parents=[src], help="evaluate the conformal curvature tensor")
    p.set_defaults(handler=_cmd_wqc)

    p = sub.add_parser("cohomology", parents=[src], help="Betti numbers of the Chevalley-Eilenberg complex")
    p.add_argument("--k", type=int, default=None, help="single degree to compute")
    p.set_defaults(handler=_cmd_cohomology)

    flag = sub.add_parser("flag", help="ascending invariant flags")
    fsub = flag.add_subparsers(dest="flag_command", required=True)
    p = fsub.add_parser("verify", parents=[src], help="verify the flag declared in the document")
    p.set_defaults(handler=_cmd_flag_verify)
    p = fsub.add_parser("search", parents=[src], help="search for an invariant flag")
    p.set_defaults(handler=_cmd_flag_search)

    family = sub.add_parser("family", help="one-parameter families")
    fsub = family.add_subparsers(dest="family_command", required=True)
    p = fsub.add_parser("solve", parents=[src], help="parameter values satisfying the Jacobi identity")
    p.set_defaults(handler=_cmd_family_solve)

    cat = sub.add_parser("catalog", help="built-in algebras")
    csub = cat.add_subparsers(dest="catalog_command", required=True)
    p = csub.add_parser("list", parents=[fmt], help="list catalog names")
    p.set_defaults(handler=_cmd_catalog_list)
    p = csub.add_parser("show", parents=[fmt], help="print a catalog source")
    p.add_argument("name")
    p.set_defaults(handler=_cmd_catalog_show)

    return top


def _load_document(args) -> AlgebraDocument:
    if args.catalog_name and args.file:
        raise _InputError("give either a file or --catalog, not both")
    if args.catalog_name:
        try:
            text = catalog.source(args.catalog_name)
        except KeyError:
            raise _InputError(f"unknown catalog algebra {args.catalog_name!r}") from None
        return parse(text)
    if args.file:
        with open(args.file, encoding="utf-8") as fh:
            return parse(fh.read())
    raise _InputError("provide a structure-equation file or --catalog NAME")


def _parse_param(args, doc: AlgebraDocument) -> Fraction | None:
    if not args.param:
        return None
    if "=" not in args.param:
        raise _InputError("--param expects NAME=VALUE, e.g. --param mu=-1")
    name, _, text = args.param.partition("=")
    if doc.param is None:
        raise _InputError(f"{doc.name} has no parameter")
    if name != doc.param:
        raise _InputError(f"{doc.name} has parameter {doc.param!r}, not {name!r}")
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise _InputError(f"cannot read {text!r} as a rational number") from None


def _load_specialized(args) -> tuple[AlgebraDocument, LieAlgebra, QCFrame | None]:
    """Load the document and apply --param, requiring a parameter-free result."""
    doc = _load_document(args)
    value = _parse_param(args, doc)
    g = doc.to_algebra()
    frame = doc.to_frame()
    if value is not None:
        g = g.substitute(value)
        if frame is not None:
            frame = _substitute_frame(frame, value)
    if g.parametric:
        raise ParametricNotSupported(
            f"{g.name} is parametric; specialize it with --param {doc.param}=VALUE"
        )
    return doc, g, frame


def _substitute_frame(frame: QCFrame, value: Fraction) -> QCFrame:
    return QCFrame(
        frame.dim,
        frame.horizontal,
        frame.vertical,
        frame.etas,
        frame.xis,
        tuple(substitute_form(o, value) for o in frame.omegas),
        frame.scale,
    )


def _substitute_flag(flag: Flag, value: Fraction) -> Flag:
    levels = tuple(
        tuple(tuple(substitute(x, value) for x in row) for row in level)
        for level in flag.levels
    )
    return Flag(flag.dim, levels)


def _flag_is_parametric(flag: Flag) -> bool:
    return any(
        isinstance(x, Poly) for level in flag.levels for row in level for x in row
    )


def _bool(x) -> str:
    if x is None:
        return "n/a"
    return "true" if x else "false"


# ---------------------------------------------------------------------------
# subcommands


def _cmd_check(args, fmt: str) -> int:
    from .qc import check_bi1, check_compatibility

    _, g, frame = _load_specialized(args)
    out: dict = {"name": g.name, "jacobi": g.is_valid, "qc_valid": None, "bi1": None}
    ok = g.is_valid
    if ok and frame is not None:
        out["qc_valid"] = check_compatibility(g, frame)
        if out["qc_valid"]:
            out["bi1"] = check_bi1(g, frame)[0]
        ok = bool(out["qc_valid"] and out["bi1"])

    def lines(o):
        yield f"name: {o['name']}"
        yield f"jacobi: {_bool(o['jacobi'])}"
        yield f"qc structure: {_bool(o['qc_valid'])}"
        yield f"vertical duality conditions: {_bool(o['bi1'])}"

    _emit(out, fmt, lines)
    return 0 if ok else 1


def _cmd_report(args, fmt: str) -> int:
    _, g, frame = _load_specialized(args)
    report, ok = build_report(g, frame)

    def lines(o):
        yield f"name: {o['name']}"
        yield f"jacobi: {_bool(o['jacobi'])}"
        yield f"qc structure: {_bool(o['qc_valid'])}"
        yield f"vertical duality conditions: {_bool(o['bi1'])}"
        yield f"scalar curvature S: {o['S'] if o['S'] is not None else 'n/a'}"
        if o["T0"] is not None:
            yield "traceless torsion T0:"
            for row in o["T0"]:
                yield "  " + "  ".join(row)
        if o["torsion_endos"] is not None:
            for r, m in enumerate(o["torsion_endos"], start=1):
                yield f"torsion endomorphism for vertical direction {r}:"
                for row in m:
                    yield "  " + "  ".join(row)
        yield f"torsion nonzero: {_bool(o['torsion_nonzero'])}"
        yield f"fundamental 4-form closed: {_bool(o['dOmega_zero'])}"
        yield f"vertical distribution integrable: {_bool(o['vertical_integrable'])}"
        for label, samples in (("R", o["R_samples"]), ("Wqc", o["wqc_samples"])):
            if samples is not None:
                for s in samples:
                    idx = ",".join(str(i) for i in s["idx"])
                    yield f"{label}[{idx}] = {s['value']}"
        yield f"qc conformally flat: {_bool(o['conformally_flat'])}"
        if o["audit"] is not None:
            for c in o["audit"]:
                yield f"audit {c['name']}: {'pass' if c['passed'] else 'FAIL'}"
        if o["fingerprint"] is not None:
            fp = o["fingerprint"]
            yield "betti numbers: " + " ".join(str(b) for b in fp["betti"])
            yield f"nilpotent: {_bool(fp['nilpotent'])}"
            yield f"solvable: {_bool(fp['solvable'])}"

    _emit(report, fmt, lines)
    return 0 if ok else 1


def _cmd_wqc(args, fmt: str) -> int:
    from .biquard import run_pipeline
    from .conformal import is_qc_conformally_flat, wqc_tensor

    _, g, frame = _load_specialized(args)
    if frame is None:
        raise _InputError(f"{g.name} has no qc block")
    if not g.is_valid:
        raise QcalcError(f"{g.name} does not satisfy the Jacobi identity")
    p = run_pipeline(g, frame)
    w = wqc_tensor(p.riem, p.t0, p.s_value, p.frame)
    samples = []
    for a, b, c, dd in SAMPLE_TUPLES:
        samples.append(
            {"idx": [a, b, c, dd], "value": scalar_str(w[a - 1][b - 1][c - 1][dd - 1])}
        )
    out = {
        "name": g.name,
        "conformally_flat": is_qc_conformally_flat(w),
        "samples": samples,
    }

    def lines(o):
        yield f"name: {o['name']}"
        for s in o["samples"]:
            idx = ",".join(str(i) for i in s["idx"])
            yield f"Wqc[{idx}] = {s['value']}"
        yield f"qc conformally flat: {_bool(o['conformally_flat'])}"

    _emit(out, fmt, lines)
    return 0


def _cmd_cohomology(args, fmt: str) -> int:
    _, g, frame = _load_specialized(args)
    if not g.is_valid:
        raise QcalcError(f"{g.name} does not satisfy the Jacobi identity")
    if args.k is not None:
        if not 0 <= args.k <= g.dim:
            raise _InputError(f"degree {args.k} outside 0..{g.dim}")
        out = {"name": g.name, "k": args.k, "betti": cohomology_dim(g, args.k)}

        def lines(o):
            yield f"b{o['k']}({o['name']}) = {o['betti']}"

        _emit(out, fmt, lines)
        return 0
    out = {"name": g.name, "betti": [cohomology_dim(g, k) for k in range(g.dim + 1)]}

    def lines(o):
        for k, b in enumerate(o["betti"]):
            yield f"b{k}({o['name']}) = {b}"

    _emit(out, fmt, lines)
    return 0


def _cmd_flag_verify(args, fmt: str) -> int:
    doc = _load_document(args)
    value = _parse_param(args, doc)
    g = doc.to_algebra()
    flag = doc.to_flag()
    if flag is None:
        raise _InputError(f"{doc.name} declares no flag")
    if value is not None:
        g = g.substitute(value)
        flag = _substitute_flag(flag, value)
    if g.parametric or _flag_is_parametric(flag):
        raise ParametricNotSupported(
            f"{g.name} is parametric; specialize it with --param {doc.param}=VALUE"
        )
    if not g.is_valid:
        raise QcalcError(f"{g.name} does not satisfy the Jacobi identity")
    verified, reason = verify_flag(g, flag)
    out = {"name": g.name, "verified": verified, "reason": reason}

    def lines(o):
        yield f"name: {o['name']}"
        yield f"flag verified: {_bool(o['verified'])}"
        if o["reason"]:
            yield f"reason: {o['reason']}"

    _emit(out, fmt, lines)
    return 0 if verified else 1


def _flag_level_texts(flag: Flag) -> list[list[str]]:
    out = []
    for level in flag.levels:
        forms = [
            Form.make(flag.dim, 1, {(j,): c for j, c in enumerate(row, start=1)})
            for row in level
        ]
        out.append([form_text(f) for f in forms])
    return out


def _cmd_flag_search(args, fmt: str) -> int:
    _, g, _ = _load_specialized(args)
    if not g.is_valid:
        raise QcalcError(f"{g.name} does not satisfy the Jacobi identity")
    found = search_flag(g)
    out = {
        "name": g.name,
        "found": found is not None,
        "flag": None if found is None else _flag_level_texts(found),
    }

    def lines(o):
        yield f"name: {o['name']}"
        if o["flag"] is None:
            yield "no invariant flag exists"
        else:
            for i, level in enumerate(o["flag"], start=1):
                yield f"V{i} = " + ", ".join(level)

    _emit(out, fmt, lines)
    return 0


def _cmd_family_solve(args, fmt: str) -> int:
    doc = _load_document(args)
    if args.param:
        raise _InputError("family solve determines the parameter; drop --param")
    if doc.param is None:
        raise _InputError(f"{doc.name} has no parameter to solve for")
    fam = doc.to_algebra()
    roots = solve_family(fam)
    if roots is ALL_VALUES:
        out: dict = {"name": fam.name, "param": doc.param, "roots": "all"}
    else:
        ordered = sorted(roots)
        out = {
            "name": fam.name,
            "param": doc.param,
            "roots": [scalar_str(r) for r in ordered],
        }

    def lines(o):
        if o["roots"] == "all":
            yield f"{o['param']}: every rational value satisfies the Jacobi identity"
        elif not o["roots"]:
            yield f"{o['param']}: no rational value satisfies the Jacobi identity"
        else:
            yield f"{o['param']} in {{" + ", ".join(o["roots"]) + "}"

    _emit(out, fmt, lines)
    return 0


def _cmd_catalog_list(args, fmt: str) -> int:
    out = {"names": catalog.names()}

    def lines(o):
        yield from o["names"]

    _emit(out, fmt, lines)
    return 0


def _cmd_catalog_show(args, fmt: str) -> int:
    try:
        text = catalog.source(args.name)
    except KeyError:
        raise _InputError(f"unknown catalog algebra {args.name!r}") from None
    if fmt == "json":
        print(json.dumps({"name": args.name, "source": text}, indent=2))
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
