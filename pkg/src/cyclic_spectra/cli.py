"""Command-line front end: spectrum | verify | cumulants | limits | idcheck.

Output is machine-readable (JSON or CSV) and deterministic for a fixed seed.
Exit codes: 0 success, 2 argument/parse error, 3 identity or pipeline mismatch.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction

from . import graphs
from .cumulants import (
    MomentData,
    boolean_cumulants,
    cyclic_boolean_cumulants,
    h_coefficients,
)
from .limits import beta_table, carleman_check, cb_id_classify
from .models import eigensolve
from .transforms import SpectrumReport, extract_spectrum, spectral_data
from .verify import SUITES, run_suite

SCHEMA = "cyclic-spectra/1"
ORACLE_VERTEX_LIMIT = 512

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_MISMATCH = 3


def _emit(args, payload: dict) -> None:
    if args.format == "json":
        text = json.dumps(payload, indent=2, sort_keys=True)
    else:
        text = _to_csv(payload)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _to_csv(payload: dict) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    rows = payload.get("rows")
    if rows:
        writer.writerow(payload["columns"])
        for row in rows:
            writer.writerow(row)
    else:
        for key in sorted(payload):
            if key != "schema":
                writer.writerow([key, payload[key]])
    return buf.getvalue().rstrip("\n")


def _parse_graph_arg(tokens: list[str]) -> tuple[graphs.RootedGraph, str]:
    """--family accepts 'name:param' or 'star-of/comb-of name:param'."""
    if len(tokens) == 2 and tokens[0] in ("star-of", "comb-of"):
        return graphs.named(tokens[1]), tokens[1]
    if len(tokens) == 1:
        if os.path.exists(tokens[0]):
            with open(tokens[0]) as fh:
                text = fh.read()
            if tokens[0].endswith(".json"):
                return graphs.graph_from_json(text), tokens[0]
            return graphs.parse_graph_text(text), tokens[0]
        return graphs.named(tokens[0]), tokens[0]
    raise ValueError(f"bad --family specification: {' '.join(tokens)}")


def _spectrum_entries(report: SpectrumReport) -> list[list]:
    return [[v, m] for v, m in report.entries]


def cmd_spectrum(args) -> int:
    try:
        base, label = _parse_graph_arg(args.family)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    from .convolutions import nfold_comb_transforms, nfold_star_transforms

    sd = spectral_data(base)
    fold = args.fold
    if args.product == "star":
        pair = nfold_star_transforms(sd, fold)
        dim = fold * (sd.dim - 1) + 1
        product_graph = graphs.nfold_star(base, fold)
    else:
        pair = nfold_comb_transforms(sd, fold)
        dim = sd.dim**fold
        product_graph = graphs.nfold_comb(base, fold)
    report = extract_spectrum(pair.rc, dim)
    payload = {
        "schema": SCHEMA,
        "command": "spectrum",
        "family": label,
        "fold": fold,
        "product": args.product,
        "dim": dim,
        "columns": ["eigenvalue", "multiplicity", "oracle_diff"],
    }
    rows = [[v, m, None] for v, m in report.entries]
    status = EXIT_OK
    if dim <= args.oracle_max:
        oracle = eigensolve(graphs.adjacency(product_graph.graph).astype(float))
        payload["oracle"] = _spectrum_entries(oracle)
        if [m for _, m in oracle.entries] != [m for _, m in report.entries]:
            status = EXIT_MISMATCH
            payload["mismatch"] = "multiplicity structure differs"
        else:
            diffs = [
                abs(a - b) for (a, _), (b, _) in zip(report.entries, oracle.entries)
            ]
            rows = [
                [v, m, d]
                for (v, m), d in zip(report.entries, diffs)
            ]
            if max(diffs, default=0.0) > 1e-9:
                status = EXIT_MISMATCH
                payload["mismatch"] = f"max eigenvalue diff {max(diffs)}"
    payload["rows"] = rows
    _emit(args, payload)
    return status


def cmd_verify(args) -> int:
    if args.suite not in SUITES:
        print(f"error: unknown suite {args.suite!r}", file=sys.stderr)
        return EXIT_USAGE
    result = run_suite(
        args.suite,
        trials=args.trials,
        max_vertices=args.max_vertices,
        seed=args.seed,
        threads=_thread_count(),
    )
    payload = {
        "schema": SCHEMA,
        "command": "verify",
        "suite": args.suite,
        "trials": result.trials,
        "passed": result.passed,
        "failed": result.failed,
        "columns": ["trial", "ok", "detail"],
        "rows": [[c["trial"], c["ok"], c["detail"]] for c in result.certificates],
    }
    _emit(args, payload)
    if result.failed:
        cert_path = args.certificate or "mismatch_certificate.json"
        with open(cert_path, "w") as fh:
            json.dump(
                {
                    "schema": SCHEMA,
                    "suite": args.suite,
                    "failures": [c for c in result.certificates if not c["ok"]],
                },
                fh,
                indent=2,
                sort_keys=True,
            )
        print(f"mismatch certificate written to {cert_path}", file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_OK


def _parse_fraction_list(text: str) -> list[Fraction]:
    return [Fraction(tok) for tok in text.split(",") if tok]


def cmd_cumulants(args) -> int:
    try:
        phi = _parse_fraction_list(args.phi)
        omega = _parse_fraction_list(args.omega)
    except (ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    order = args.order
    if not phi or not omega:
        print("error: empty moment list", file=sys.stderr)
        return EXIT_USAGE
    # short tables repeat periodically, so '0,1' encodes an alternating sequence
    phi = [phi[n % len(phi)] for n in range(order)]
    omega = [omega[n % len(omega)] for n in range(order)]
    data = MomentData(phi, omega)
    bs = boolean_cumulants(data)
    cs = cyclic_boolean_cumulants(data)
    hs = h_coefficients(data)
    payload = {
        "schema": SCHEMA,
        "command": "cumulants",
        "order": order,
        "columns": ["n", "c_n", "h_n", "b_n"],
        "rows": [
            [n + 1, str(cs[n]), str(hs[n]), str(bs[n])] for n in range(order)
        ],
    }
    _emit(args, payload)
    return EXIT_OK


def _limits_comb_payload(args) -> dict:
    from .limits import comb_limit_moment, finite_n_comb_moment
    from .models import matrix_power_moments

    import numpy as np

    base, label = _parse_graph_arg([args.family])
    mat = np.array(graphs.adjacency(base.graph), dtype=object)
    if base.root != 0:  # state moments are read at coordinate 0
        perm = [base.root] + [v for v in range(base.n) if v != base.root]
        mat = mat[np.ix_(perm, perm)]
    count = max(args.k_max, args.n_max) + 2
    psi, tr = matrix_power_moments(mat, count)
    d = base.n
    rows = []
    for k in range(1, args.k_max + 1):
        limit = comb_limit_moment(d, k, psi, tr)
        for n in range(1, args.n_max + 1):
            value = finite_n_comb_moment(d, n, k, psi, tr) / Fraction(d) ** n
            rows.append([n, k, str(value), str(limit), abs(float(value - limit))])
    return {
        "schema": SCHEMA,
        "command": "limits",
        "table": "comb",
        "family": label,
        "columns": ["N", "k", "value", "limit", "abs_err"],
        "rows": rows,
    }


def _limits_gap_payload(args) -> dict:
    from .limits import spectral_gap_report

    base, label = _parse_graph_arg([args.family])
    deg = base.root_degree()
    rows = spectral_gap_report(spectral_data(base), deg, args.n_max)
    return {
        "schema": SCHEMA,
        "command": "limits",
        "table": "gap",
        "family": label,
        "columns": ["N", "largest", "smallest", "largest_mult", "smallest_mult", "bulk_max"],
        "rows": [
            [r.n, r.largest, r.smallest, r.largest_mult, r.smallest_mult, r.bulk_max]
            for r in rows
        ],
    }


def cmd_limits(args) -> int:
    if args.table == "comb":
        _emit(args, _limits_comb_payload(args))
        return EXIT_OK
    if args.table == "gap":
        _emit(args, _limits_gap_payload(args))
        return EXIT_OK
    if args.table == "beta":
        table = beta_table(args.n)
        payload = {
            "schema": SCHEMA,
            "command": "limits",
            "table": "beta",
            "columns": ["n", "beta_n"],
            "rows": [[n, str(v)] for n, v in enumerate(table.values)],
        }
    elif args.table == "carleman":
        ok, partial = carleman_check(args.n)
        payload = {
            "schema": SCHEMA,
            "command": "limits",
            "table": "carleman",
            "bound_holds": ok,
            "columns": ["n", "partial_sum"],
            "rows": [[n + 1, s] for n, s in enumerate(partial)],
        }
    elif args.table == "clt":
        from .limits import clt_report

        base, label = _parse_graph_arg([args.family])
        sd = spectral_data(base)
        deg = base.root_degree()
        sizes = [n for n in (1, 2, 4, 8, 16, 32, 64, 128, 256) if n <= args.n_max]
        rows = []
        for k in range(1, args.n + 1):
            report = clt_report(sd, deg, k, sizes)
            for n, value in report.finite_n_values:
                rows.append(
                    [k, n, value, report.phi_limit, str(report.omega_limit)]
                )
        payload = {
            "schema": SCHEMA,
            "command": "limits",
            "table": "clt",
            "family": label,
            "columns": ["k", "N", "omega_value", "phi_limit", "omega_limit"],
            "rows": rows,
        }
    else:
        print(f"error: unknown limits table {args.table!r}", file=sys.stderr)
        return EXIT_USAGE
    _emit(args, payload)
    return EXIT_OK


def _parse_spectrum(text: str) -> SpectrumReport:
    entries = []
    for chunk in text.split(","):
        value, _, mult = chunk.partition(":")
        entries.append((float(Fraction(value)), int(mult)))
    entries.sort()
    dim = sum(m for _, m in entries)
    return SpectrumReport(tuple(entries), dim)


def cmd_idcheck(args) -> int:
    try:
        spectrum = _parse_spectrum(args.spectrum)
        weights = [float(Fraction(w)) for w in args.weights.split(",")]
        verdict = cb_id_classify(spectrum, weights)
    except (ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    payload = {
        "schema": SCHEMA,
        "command": "idcheck",
        "divisible": verdict.divisible,
        "case": verdict.case,
        "reason": verdict.reason,
    }
    if verdict.alpha is not None:
        payload["alpha"] = verdict.alpha
    if verdict.beta is not None:
        payload["beta"] = verdict.beta
    _emit(args, payload)
    return EXIT_OK


def _thread_count() -> int:
    raw = os.environ.get("CYCLIC_SPECTRA_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cyclic-spectra",
        description="Exact spectral calculus for star and comb products of rooted graphs",
    )
    parser.add_argument("--format", choices=("json", "csv"), default="json")
    parser.add_argument("--output", help="write output to a file instead of stdout")
    # accept the output flags on either side of the subcommand
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument(
        "--format", choices=("json", "csv"), default=argparse.SUPPRESS
    )
    shared.add_argument("--output", default=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("spectrum", help="spectrum of an iterated product", parents=[shared])
    sp.add_argument("--family", nargs="+", required=True,
                    help="graph family 'name:param', a file path, or 'star-of name:param'")
    sp.add_argument("--fold", type=int, default=1)
    sp.add_argument("--product", choices=("star", "comb"), default="star")
    sp.add_argument("--oracle-max", type=int, default=ORACLE_VERTEX_LIMIT,
                    help="run the dense eigensolver when the product has at most this many vertices")
    sp.set_defaults(func=cmd_spectrum)

    vf = sub.add_parser("verify", help="run a randomized identity suite", parents=[shared])
    vf.add_argument("suite", choices=sorted(SUITES))
    vf.add_argument("--trials", type=int, default=100)
    vf.add_argument("--max-vertices", type=int, default=8)
    vf.add_argument("--seed", type=int, default=0)
    vf.add_argument("--certificate", help="where to write the mismatch certificate")
    vf.set_defaults(func=cmd_verify)

    cm = sub.add_parser("cumulants", help="cumulant tables from moment sequences", parents=[shared])
    cm.add_argument("--phi", required=True, help="comma-separated state moments")
    cm.add_argument("--omega", required=True, help="comma-separated trace moments")
    cm.add_argument("--order", type=int, default=8)
    cm.set_defaults(func=cmd_cumulants)

    lm = sub.add_parser("limits", help="limit tables", parents=[shared])
    lm.add_argument("table", choices=("beta", "carleman", "clt", "comb", "gap"))
    lm.add_argument("--n", type=int, default=7)
    lm.add_argument("--family", default="complete:2",
                    help="base rooted graph for comb/gap tables")
    lm.add_argument("--k-max", type=int, default=6)
    lm.add_argument("--n-max", type=int, default=12)
    lm.set_defaults(func=cmd_limits)

    ic = sub.add_parser("idcheck", help="classify a spectrum for divisibility", parents=[shared])
    ic.add_argument("--spectrum", required=True, help="'value:mult,value:mult,...'")
    ic.add_argument("--weights", required=True, help="state weights per entry")
    ic.set_defaults(func=cmd_idcheck)
    return parser


_VALUE_FLAGS = ("--spectrum", "--weights", "--phi", "--omega")


def _join_negative_values(argv: list[str]) -> list[str]:
    # let values like "-1:1,1:1" follow their flag without confusing argparse
    out = []
    skip = False
    for tok, nxt in zip(argv, argv[1:] + [""]):
        if skip:
            skip = False
            continue
        if tok in _VALUE_FLAGS and nxt.startswith("-"):
            out.append(f"{tok}={nxt}")
            skip = True
        else:
            out.append(tok)
    return out


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    if argv is None:
        argv = sys.argv[1:]
    try:
        args = parser.parse_args(_join_negative_values(list(argv)))
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
