"""Command-line surface.

Exact-output conventions: rationals travel as "p/q" literals, rational
functions as the {"num": [...], "den": [...]} coefficient schema, and every
command produces byte-identical output on identical invocations (fixed
orderings, no timestamps).

Exit codes: 0 on success, 2 on a precondition violation (bad input, bad
range), 3 on an internal invariant breach.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from .errors import InvariantError, PreconditionError
from .gstruct import KType, ktypes_up_to, ordered_basis, slot_parity, transition_matrix
from .intertwiner import (
    a_matrix,
    eigenvalue_mu,
    normalization,
    classify as classify_point,
    reducibility,
    reducibility_scan,
    special_subrep,
)
from .lattice import STYLES, build_lattice, render_ascii, render_svg, write_lattice_csv
from .linalg import RFMatrix
from .poly import rational_from_str, rational_to_str
from .ratfunc import RatFunc, ratfunc_to_json
from .verify import SUITES, pmap, run_suites


def _matrix_json(matrix: RFMatrix) -> dict:
    return {
        "rows": matrix.rows,
        "cols": matrix.cols,
        "entries": [[ratfunc_to_json(e) for e in row] for row in matrix.entries],
    }


def _ktype_json(kt: KType) -> dict:
    return {"n": kt.n, "m": kt.m}


def _dump(payload: dict) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _parse_ktype(text: str) -> KType:
    parts = text.split(",")
    if len(parts) != 2:
        raise PreconditionError(f"expected a K-type as n,m, got {text!r}")
    try:
        n, m = int(parts[0]), int(parts[1])
    except ValueError as exc:
        raise PreconditionError(f"expected integers in {text!r}") from exc
    return KType(n, m)


def _require_occurs(kt: KType) -> KType:
    if not kt.exists():
        raise PreconditionError(f"K-type {kt} does not occur (empty weight lattice)")
    return kt


# -- commands -----------------------------------------------------------------


def cmd_transition(args) -> int:
    src = _require_occurs(_parse_ktype(args.source))
    tgt = _require_occurs(_parse_ktype(args.target))
    matrix = transition_matrix(src, tgt, args.param)
    payload = {
        "from": _ktype_json(src),
        "to": _ktype_json(tgt),
        "param": args.param,
        "matrix": _matrix_json(matrix),
    }
    _emit(_dump(payload), args.out)
    return 0


def cmd_basis(args) -> int:
    kt = _require_occurs(KType(args.n, args.m))
    vectors = []
    for j, vec in enumerate(ordered_basis(kt.n, kt.m)):
        vectors.append(
            {
                "slot": j,
                "kind": "v" if j % 2 == 0 else "v'",
                "k": j // 2,
                "parity": slot_parity(kt.n, kt.m, j),
                "coeffs": [
                    {"weight": a, "value": ratfunc_to_json(c)} for a, c in vec.items()
                ],
            }
        )
    _emit(_dump({"ktype": _ktype_json(kt), "vectors": vectors}), args.out)
    return 0


def cmd_eigenvalues(args) -> int:
    kt = _require_occurs(KType(args.n, args.m))
    slots = []
    for j in range(kt.a + 1):
        eps = slot_parity(kt.n, kt.m, j)
        if args.eps is not None and eps != args.eps:
            continue
        value = eigenvalue_mu(kt.n, kt.m, j, normalization(eps))
        slots.append({"j": j, "eps": eps, "value": ratfunc_to_json(value)})
    payload = {"ktype": _ktype_json(kt), "slots": slots}
    if args.json:
        _emit(_dump(payload), args.out)
    else:
        lines = [f"eigenvalues at {kt}:"]
        for j in range(kt.a + 1):
            eps = slot_parity(kt.n, kt.m, j)
            if args.eps is not None and eps != args.eps:
                continue
            lines.append(f"  slot {j} (eps={eps}): {eigenvalue_mu(kt.n, kt.m, j)}")
        _emit("\n".join(lines) + "\n", args.out)
    return 0


def cmd_amatrix(args) -> int:
    kt = _require_occurs(KType(args.n, args.m))
    block = a_matrix(kt.n, kt.m, args.eps, normalization(args.eps))
    payload = {
        "ktype": _ktype_json(kt),
        "eps": args.eps,
        "slots": list(block.slots),
        "matrix": _matrix_json(block.entries),
    }
    _emit(_dump(payload), args.out)
    return 0


def cmd_reducibility(args) -> int:
    s0 = rational_from_str(args.s)
    verdict = reducibility(args.eps, s0)
    payload = {
        "eps": args.eps,
        "s": rational_to_str(s0),
        "reducible": verdict.reducible,
        "witness": verdict.witness,
    }
    if args.scan:
        witnesses = reducibility_scan(args.eps, s0, args.bound)
        payload["scan_bound"] = args.bound
        payload["scan"] = [
            {"ktype": _ktype_json(w.ktype), "slot": w.slot, "order": w.order}
            for w in witnesses
        ]
    _emit(_dump(payload), args.out)
    return 0


def cmd_classify(args) -> int:
    s_value = "axis" if args.s == "axis" else rational_from_str(args.s)
    labels = classify_point(args.eps, s_value)
    payload = {
        "eps": args.eps,
        "s": args.s if args.s == "axis" else rational_to_str(Fraction(s_value)),
        "labels": list(labels),
    }
    _emit(_dump(payload), args.out)
    return 0


def cmd_subrep(args) -> int:
    info = special_subrep(args.name, args.k)
    members = info.members_within(args.bound)
    payload = {
        "name": info.name,
        "eps": info.eps,
        "s": rational_to_str(info.s0),
        "level": info.level,
        "description": info.description,
        "expected_pattern": info.pattern,
        "bound": args.bound,
        "members": [_ktype_json(kt) for kt in members],
    }
    _emit(_dump(payload), args.out)
    return 0


def cmd_verify(args) -> int:
    suites = None
    if args.suites is not None:
        suites = [s for s in args.suites.split(",") if s]
    report = run_suites(args.nmax, suites)
    if args.json:
        _emit(_dump(report.to_json()), args.out)
    else:
        _emit(report.to_text() + "\n", args.out)
    return 0


def cmd_lattice(args) -> int:
    s0 = rational_from_str(args.s)
    diagram = build_lattice(args.eps, s0, args.bound)
    if args.format == "ascii":
        _emit(render_ascii(diagram), args.out)
        return 0
    # svg: write the figure, with the delimited table alongside it
    if not args.out:
        raise PreconditionError("svg output needs --out PATH for the figure file")
    render_svg(diagram, args.out)
    csv_path = str(Path(args.out).with_suffix(".csv"))
    write_lattice_csv(diagram, csv_path)
    sys.stdout.write(f"wrote {args.out} and {csv_path}\n")
    return 0


def _table_rows(args) -> list[dict]:
    rows = []
    ktypes = list(ktypes_up_to(args.nmax))

    if args.query == "eigenvalues":

        def build(kt: KType) -> list[dict]:
            out = []
            for j in range(kt.a + 1):
                eps = slot_parity(kt.n, kt.m, j)
                if args.eps is not None and eps != args.eps:
                    continue
                out.append(
                    {
                        "n": kt.n,
                        "m": kt.m,
                        "j": j,
                        "eps": eps,
                        "value": eigenvalue_mu(kt.n, kt.m, j),
                    }
                )
            return out

    else:  # valuations
        if args.s is None:
            raise PreconditionError("the valuations table needs --s P/Q")
        s0 = rational_from_str(args.s)

        def build(kt: KType) -> list[dict]:
            out = []
            for j in range(kt.a + 1):
                eps = slot_parity(kt.n, kt.m, j)
                if args.eps is not None and eps != args.eps:
                    continue
                out.append(
                    {
                        "n": kt.n,
                        "m": kt.m,
                        "j": j,
                        "eps": eps,
                        "value": eigenvalue_mu(kt.n, kt.m, j).valuation(s0),
                    }
                )
            return out

    for chunk in pmap(build, ktypes):
        rows.extend(chunk)
    rows.sort(key=lambda r: (r["n"], r["m"], r["j"]))
    return rows


def cmd_table(args) -> int:
    rows = _table_rows(args)
    if args.format == "json":
        payload = {
            "query": args.query,
            "nmax": args.nmax,
            "rows": [
                {
                    **{k: row[k] for k in ("n", "m", "j", "eps")},
                    "value": ratfunc_to_json(row["value"])
                    if isinstance(row["value"], RatFunc)
                    else row["value"],
                }
                for row in rows
            ],
        }
        if args.s is not None:
            payload["s"] = rational_to_str(rational_from_str(args.s))
        _emit(_dump(payload), args.out)
    else:
        lines = ["n,m,j,eps,value"]
        for row in rows:
            lines.append(f"{row['n']},{row['m']},{row['j']},{row['eps']},\"{row['value']}\"")
        _emit("\n".join(lines) + "\n", args.out)
    return 0


# -- parser ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="g2ks",
        description=(
            "exact K-type, transition and intertwiner computations for the "
            "degenerate principal series of split G2"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("transition", help="transition matrix between neighbouring K-types")
    p.add_argument("--from", dest="source", required=True, metavar="N,M")
    p.add_argument("--to", dest="target", required=True, metavar="N,M")
    p.add_argument("--param", choices=("s", "3-s"), default="s")
    p.add_argument("--out")
    p.set_defaults(func=cmd_transition)

    p = sub.add_parser("basis", help="interleaved basis of a multiplicity space")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_basis)

    p = sub.add_parser("eigenvalues", help="intertwiner eigenvalues at a K-type")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--eps", type=int, choices=(0, 1))
    p.add_argument("--json", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_eigenvalues)

    p = sub.add_parser("amatrix", help="intertwiner matrix block of one series")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--eps", type=int, choices=(0, 1), required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_amatrix)

    p = sub.add_parser("reducibility", help="closed reducibility criterion, optional scan")
    p.add_argument("--s", required=True, metavar="P/Q")
    p.add_argument("--eps", type=int, choices=(0, 1), required=True)
    p.add_argument("--scan", action="store_true")
    p.add_argument("--bound", type=int, default=24)
    p.add_argument("--out")
    p.set_defaults(func=cmd_reducibility)

    p = sub.add_parser("classify", help="classification labels at a parameter point")
    p.add_argument("--s", required=True, metavar="P/Q|axis")
    p.add_argument("--eps", type=int, choices=(0, 1), required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("subrep", help="named subrepresentation data")
    p.add_argument(
        "--name", required=True, choices=("ladder", "double-ladder", "double_ladder", "lds", "qds")
    )
    p.add_argument("--k", type=int)
    p.add_argument("--bound", type=int, default=24)
    p.add_argument("--out")
    p.set_defaults(func=cmd_subrep)

    p = sub.add_parser("verify", help="run the verification suites")
    p.add_argument("--nmax", type=int, default=8)
    p.add_argument("--suites", help=f"comma-separated subset of: {','.join(SUITES)}")
    p.add_argument("--json", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("lattice", help="K-type lattice diagram with vanishing orders")
    p.add_argument("--eps", type=int, choices=(0, 1), required=True)
    p.add_argument("--s", required=True, metavar="P/Q")
    p.add_argument("--bound", "--nmax", dest="bound", type=int, default=24)
    p.add_argument("--format", "--style", dest="format", choices=STYLES, default="ascii")
    p.add_argument("--out")
    p.set_defaults(func=cmd_lattice)

    p = sub.add_parser("table", help="bulk eigenvalue/valuation tables")
    p.add_argument("--query", required=True, choices=("eigenvalues", "valuations"))
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--nmax", type=int, default=12)
    p.add_argument("--eps", type=int, choices=(0, 1))
    p.add_argument("--s", metavar="P/Q")
    p.add_argument("--out")
    p.set_defaults(func=cmd_table)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InvariantError as exc:
        print(f"internal invariant breach: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
