"""Command-line front end.

Exit codes: 0 ok, 1 verification mismatch, 2 inapplicable case, 3 parse/domain error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from typing import List, Optional

from . import sw
from .expr import ParseError, evaluate, parse
from .kunneth import chern_from_character, grr_pushforward
from .ring import GradedElement, SWCalcError, format_rational, to_text
from .spaces import InapplicableCaseError, SymmetricProduct, integrate, parse_space
from .verify import SUITES, run_suite

EXIT_OK, EXIT_MISMATCH, EXIT_INAPPLICABLE, EXIT_ERROR = 0, 1, 2, 3


def _num(q):
    q = Fraction(q)
    return q.numerator if q.denominator == 1 else format_rational(q)


def _emit(record: dict, fmt: str, text: str) -> str:
    if fmt == "json":
        return json.dumps(record, separators=(",", ":"))
    if fmt == "csv":
        flat = {}
        for key, val in record.items():
            if isinstance(val, dict):
                for k2, v2 in val.items():
                    flat[f"{key}.{k2}"] = v2
            else:
                flat[key] = "" if val is None else val
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=list(flat), lineterminator="\n")
        writer.writeheader()
        writer.writerow(flat)
        return buf.getvalue().rstrip("\n")
    return text


def _sw_text(res: sw.SWResult) -> str:
    out = format_rational(Fraction(res.value))
    if res.breakdown:
        parts = ", ".join(f"{k}={format_rational(Fraction(v))}" for k, v in res.breakdown.items())
        out += f" ({parts})"
    return out


def _cmd_eval(args) -> str:
    space = parse_space(args.space)
    result = evaluate(parse(args.expr), space)
    if isinstance(result, GradedElement):
        record = {"space": space.label, "kind": "class", "result": to_text(result)}
        text = to_text(result)
    else:
        record = {"space": space.label, "kind": "number", "result": _num(result)}
        text = format_rational(result)
    return _emit(record, args.format, text)


def _cmd_sw(args) -> str:
    kind = args.kind
    if kind == "elliptic-regular":
        res = sw.sw_elliptic_regular(args.pg, args.a)
    elif kind == "elliptic":
        res = sw.sw_elliptic(sw.EllipticSpec(args.chi, args.g, args.d))
    elif kind == "ruled":
        res = sw.sw_ruled_b2_total(args.g, args.d)
    elif kind == "ruled-general":
        res = sw.sw_ruled_general(sw.RuledSpec(args.g, args.a, args.b))
    else:
        res = sw.sw_section_invariant(args.g, args.d)
    return _emit(res.to_json_dict(), args.format, _sw_text(res))


def _cmd_segre(args) -> str:
    cls = sw.segre_w1d(args.g, args.d)
    record = {"g": args.g, "d": args.d, "class": to_text(cls)}
    text = to_text(cls)
    if 2 * args.d + 1 == args.g:
        from .spaces import Jacobian

        number = integrate(cls, Jacobian(args.g))
        record["degree"] = _num(number)
        text += f"\ndegree: {format_rational(number)}"
    return _emit(record, args.format, text)


def _cmd_grr(args) -> str:
    space = SymmetricProduct(args.g, args.d)
    r = Fraction(args.r)
    ch = grr_pushforward(args.chi, args.n, space, r)
    c = chern_from_character(ch)
    record = {"space": space.label, "chern_character": to_text(ch), "total_chern": to_text(c)}
    return _emit(record, args.format, to_text(c))


def _cmd_dims(args) -> str:
    if args.kind == "elliptic":
        h0, h1, h2 = sw.elliptic_cohomology_dims(args.pg, args.a)
        record = {"h0": h0, "h1": h1, "h2": h2}
    elif args.kind == "ruled":
        spec = sw.RuledSpec(args.g, args.a, args.b)
        sw_dim, hilb = sw.expected_dims(spec)
        record = {"d": spec.d, "sw_dim": sw_dim, "hilbert_dim": _num(hilb)}
    else:
        tangent, obstruction = sw.hilbert_dims(args.b, args.g, args.d, args.r)
        record = {"tangent_dim": tangent, "obstruction_dim": obstruction}
    text = " ".join(f"{k}={v}" for k, v in record.items())
    return _emit(record, args.format, text)


def _cmd_verify(args, out) -> int:
    checks = run_suite(args.suite)
    failed = [c for c in checks if not c.ok]
    if args.format == "json":
        rows = [{"suite": c.suite, "case": c.case, "ok": c.ok, "detail": c.detail} for c in checks]
        print(json.dumps({"passed": not failed, "checks": rows}, separators=(",", ":")), file=out)
    elif args.format == "csv":
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["suite", "case", "ok", "detail"])
        for c in checks:
            writer.writerow([c.suite, c.case, c.ok, c.detail])
    else:
        for c in checks:
            line = f"{'PASS' if c.ok else 'FAIL'} {c.suite}: {c.case}"
            print(line + (f"  [{c.detail}]" if c.detail else ""), file=out)
        print(f"{len(checks) - len(failed)}/{len(checks)} checks passed", file=out)
    return EXIT_MISMATCH if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")

    p = argparse.ArgumentParser(prog="swcalc", description="Exact intersection theory for SW invariants.")
    sub = p.add_subparsers(dest="command", required=True)

    ev = sub.add_parser("eval", parents=[common], help="evaluate an expression over a model space")
    ev.add_argument("expr")
    ev.add_argument("--space", required=True, help="P(a), Cd(g,d), Jac(g) or AxB")

    swp = sub.add_parser("sw", help="Seiberg-Witten invariant pipelines")
    swsub = swp.add_subparsers(dest="kind", required=True)
    er = swsub.add_parser("elliptic-regular", parents=[common], help="E(n) style surface, h^{0,2} = p_g")
    er.add_argument("--pg", type=int, required=True)
    er.add_argument("--a", type=int, required=True)
    el = swsub.add_parser("elliptic", parents=[common], help="elliptic surface over a genus g curve")
    el.add_argument("--chi", type=int, required=True)
    el.add_argument("--g", type=int, required=True)
    el.add_argument("--d", type=int, required=True)
    ru = swsub.add_parser("ruled", parents=[common], help="b=2 component sum")
    ru.add_argument("--g", type=int, required=True)
    ru.add_argument("--d", type=int, required=True)
    rg = swsub.add_parser("ruled-general", parents=[common], help="class aF + bS on a ruled surface")
    rg.add_argument("--g", type=int, required=True)
    rg.add_argument("--a", type=int, required=True)
    rg.add_argument("--b", type=int, required=True)
    se = swsub.add_parser("section", parents=[common], help="invariant of the section class via Segre")
    se.add_argument("--g", type=int, required=True)
    se.add_argument("--d", type=int, default=None)

    sg = sub.add_parser("segre", parents=[common], help="class of W_{1,d}(V)")
    sg.add_argument("--g", type=int, required=True)
    sg.add_argument("--d", type=int, required=True)

    gr = sub.add_parser("grr", parents=[common], help="total Chern class of pi_2! O(D) over C_d")
    gr.add_argument("--chi", type=int, required=True)
    gr.add_argument("--g", type=int, required=True)
    gr.add_argument("--d", type=int, required=True)
    gr.add_argument("--n", type=int, default=0)
    gr.add_argument("--r", default="0", help="Todd coefficient of the fiber class (rational)")

    dm = sub.add_parser("dims", help="dimension counts")
    dmsub = dm.add_subparsers(dest="kind", required=True)
    de = dmsub.add_parser("elliptic", parents=[common], help="h^0, h^1, h^2 of O(aF)")
    de.add_argument("--pg", type=int, required=True)
    de.add_argument("--a", type=int, required=True)
    dr = dmsub.add_parser("ruled", parents=[common], help="SW and Hilbert expected dimensions")
    dr.add_argument("--g", type=int, required=True)
    dr.add_argument("--a", type=int, required=True)
    dr.add_argument("--b", type=int, required=True)
    dh = dmsub.add_parser("hilbert", parents=[common], help="Hilbert scheme dimensions")
    dh.add_argument("--b", type=int, required=True)
    dh.add_argument("--g", type=int, required=True)
    dh.add_argument("--d", type=int, required=True)
    dh.add_argument("--r", type=int, required=True)

    vf = sub.add_parser("verify", parents=[common], help="run verification sweeps")
    vf.add_argument("--suite", choices=tuple(SUITES) + ("all",), default="all")
    return p


def _error(kind: str, exc: Exception, err) -> None:
    record = {"error": kind, "message": str(exc)}
    if isinstance(exc, ParseError):
        record["offset"] = exc.offset
        record["expected"] = list(exc.expected)
    print(json.dumps(record, separators=(",", ":")), file=err)


def main(argv: Optional[List[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    handlers = {"eval": _cmd_eval, "sw": _cmd_sw, "segre": _cmd_segre, "grr": _cmd_grr, "dims": _cmd_dims}
    try:
        if args.command == "verify":
            return _cmd_verify(args, out)
        print(handlers[args.command](args), file=out)
        return EXIT_OK
    except sw.VerificationError as exc:
        _error("verification-mismatch", exc, err)
        return EXIT_MISMATCH
    except InapplicableCaseError as exc:
        _error("inapplicable-case", exc, err)
        return EXIT_INAPPLICABLE
    except ParseError as exc:
        _error("parse-error", exc, err)
        return EXIT_ERROR
    except (SWCalcError, ValueError, ZeroDivisionError) as exc:
        _error("domain-error", exc, err)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
