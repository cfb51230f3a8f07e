"""Command-line front end: series expansion, identity verification, q-series
tables, the insertion bijection, and oracle comparison.

Exit codes: 0 success / all checks pass, 1 identity or oracle mismatch,
2 usage error.  All parameters are flags with documented defaults; there are
no config files.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import identities, oracle
from .hydra import compositions_by_local_minima, enriched_trees, hydra_R
from .languages import LANGUAGE_KINDS, SetSpec, build_language, sigma
from .qseries import CLOSED_FORMS, closed_form
from .series import Series, Window, WindowError
from .trees import format_tree, insertion_tree, preorder_word

DEFAULT_L = 5
DEFAULT_K = 14
DEFAULT_Q = 20


def _usage(message: str) -> SystemExit:
    print(f"error: {message}", file=sys.stderr)
    return SystemExit(2)

SERIES_KINDS = LANGUAGE_KINDS + (
    "hydra-R",
    "trees-pi",
    "branchless-trees",
    "compositions-by-minima",
)


def _window(args) -> Window:
    return Window(args.L, args.K, getattr(args, "O", 0))


def _setspec(text: str) -> SetSpec:
    try:
        return SetSpec.parse(text)
    except ValueError as exc:
        raise _usage(str(exc)) from exc


def _build_series(args) -> Series:
    window = _window(args)
    kind = args.series
    params = {}
    if args.set is not None:
        params["set"] = _setspec(args.set)
    if args.m is not None:
        params["m"] = args.m
    try:
        if kind == "hydra-R":
            return hydra_R(params.get("m"), window)
        if kind == "trees-pi":
            from .languages import partitions_max_part

            return enriched_trees(partitions_max_part(params.get("m"), window), window)
        if kind == "branchless-trees":
            if "set" not in params:
                raise _usage("branchless-trees needs --set")
            lang = Series.one(window) + sigma(params["set"], window)
            return enriched_trees(lang, window)
        if kind == "compositions-by-minima":
            return compositions_by_local_minima(window)
        return build_language(kind, params, window)
    except KeyError as exc:
        raise _usage(f"{kind} needs parameter {exc}") from exc
    except (ValueError, WindowError) as exc:
        raise _usage(str(exc)) from exc


def _cmd_expand(args) -> int:
    series = _build_series(args)
    if args.format == "json":
        print(series.dumps())
    else:
        win = series.window
        print(f"# window L={win.max_len} K={win.max_letter} O={win.min_letter}")
        for w, c in sorted(series.terms.items()):
            print(f"{','.join(map(str, w)) or '-'}\t{c}")
    return 0


def _cmd_verify(args) -> int:
    overrides = {
        k: getattr(args, k)
        for k in ("L", "K", "Q", "m", "nmax", "kmax")
        if getattr(args, k, None) is not None
    }
    try:
        if args.all:
            reports = identities.run_all(**overrides)
        elif args.id:
            reports = [identities.run_identity(args.id, **overrides)]
        else:
            raise _usage("verify needs --id or --all")
    except KeyError as exc:
        raise _usage(f"unknown identity {exc}") from exc
    except ValueError as exc:
        raise _usage(str(exc)) from exc
    if args.format == "json":
        print(identities.reports_to_json(reports))
    else:
        for r in reports:
            print(r.to_text())
    return 0 if all(r.passed for r in reports) else 1


def _cmd_qtable(args) -> int:
    params = {}
    if args.set is not None:
        params["set"] = _setspec(args.set)
    if args.m is not None:
        params["m"] = args.m
    try:
        zq = closed_form(args.form, params, args.zmax, args.qmax)
    except (ValueError, KeyError, WindowError) as exc:
        raise _usage(str(exc)) from exc
    if args.format == "json":
        print(json.dumps(zq.to_json_dict(), indent=2))
    else:
        sys.stdout.write(zq.to_tsv())
    return 0


def _cmd_bijection(args) -> int:
    try:
        word = tuple(int(p) for p in args.composition.split(","))
    except ValueError as exc:
        raise _usage(f"malformed composition {args.composition!r}") from exc
    try:
        tree = insertion_tree(word)
    except ValueError as exc:
        raise _usage(str(exc)) from exc
    back = preorder_word(tree)
    print(format_tree(tree))
    print(f"preorder: {','.join(map(str, back))}")
    if back != word:
        print("round trip FAILED")
        return 1
    print("round trip ok")
    return 0


ORACLE_KINDS = {
    "m-distinct": ("Pm", "m"),
    "compositions-max-diff": ("Cm", "m"),
    "partitions-rises": ("PS", "set"),
    "compositions-diff-not-in": ("CShat", "set"),
    "compositions-by-minima": ("LocalMinima", None),
}


def _cmd_oracle_compare(args) -> int:
    if args.kind not in ORACLE_KINDS:
        raise _usage(f"unknown oracle kind {args.kind!r}")
    form, pname = ORACLE_KINDS[args.kind]
    params = {}
    cparams = {}
    if pname == "m":
        if args.m is None:
            raise _usage(f"{args.kind} needs --m")
        cparams["m"] = args.m
        params["m"] = args.m - 1 if args.kind == "compositions-max-diff" else args.m
    elif pname == "set":
        if args.set is None:
            raise _usage(f"{args.kind} needs --set")
        params["set"] = cparams["set"] = _setspec(args.set)
    try:
        table = oracle.count_table(args.kind, params, args.nmax)
        zq = closed_form(form, cparams, args.nmax, args.nmax)
    except ValueError as exc:
        raise _usage(str(exc)) from exc
    if args.dump:
        sys.stdout.write(table.to_tsv())
    tmax = args.nmax if args.kind == "compositions-by-minima" else 0
    witness = identities._table_vs_zq(table, zq, args.nmax, args.nmax, tmax)
    if witness is None:
        print(f"oracle-compare {args.kind}: pass (n <= {args.nmax})")
        return 0
    print(f"oracle-compare {args.kind}: FAIL at {witness}")
    return 1


def _cmd_list_identities(args) -> int:
    for ident in identities.REGISTRY.values():
        defaults = " ".join(f"{k}={v}" for k, v in sorted(ident.defaults.items()))
        print(f"{ident.id}\t{defaults}\t{ident.description}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hydraseries",
        description="Exact noncommutative series, hydra continued fractions, "
        "and certified q-series identities.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("expand", help="expand a named series on a window")
    p.add_argument("--series", required=True, choices=SERIES_KINDS)
    p.add_argument("--m", type=int, help="family parameter (omit for the unbounded form)")
    p.add_argument("--set", help='set spec: "odd", "m..", "m..n", "{a,b,c}", '
                                 '"l mod m", "l mod m, no-zero"')
    p.add_argument("--L", type=int, default=DEFAULT_L, help="max word length")
    p.add_argument("--K", type=int, default=DEFAULT_K, help="max letter index")
    p.add_argument("--O", type=int, default=0, help="min letter index")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.set_defaults(func=_cmd_expand)

    p = sub.add_parser("verify", help="check identities from the catalog")
    p.add_argument("--id", help="identity id (see list-identities)")
    p.add_argument("--all", action="store_true", help="run the whole catalog")
    p.add_argument("--L", type=int)
    p.add_argument("--K", type=int)
    p.add_argument("--Q", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--nmax", type=int)
    p.add_argument("--kmax", type=int)
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("qtable", help="emit a closed-form q-series table")
    p.add_argument("--form", required=True, choices=CLOSED_FORMS)
    p.add_argument("--m", type=int)
    p.add_argument("--set")
    p.add_argument("--zmax", type=int, default=DEFAULT_L)
    p.add_argument("--qmax", type=int, default=DEFAULT_Q)
    p.add_argument("--format", choices=("tsv", "json"), default="tsv")
    p.set_defaults(func=_cmd_qtable)

    p = sub.add_parser("bijection", help="insertion tree of a cyclic composition")
    p.add_argument("--composition", required=True, help="comma-separated parts")
    p.set_defaults(func=_cmd_bijection)

    p = sub.add_parser("oracle-compare", help="closed form vs brute-force counts")
    p.add_argument("--kind", required=True, choices=sorted(ORACLE_KINDS))
    p.add_argument("--m", type=int)
    p.add_argument("--set")
    p.add_argument("--nmax", type=int, default=12)
    p.add_argument("--dump", action="store_true", help="print the count table TSV")
    p.set_defaults(func=_cmd_oracle_compare)

    p = sub.add_parser("list-identities", help="list the identity catalog")
    p.set_defaults(func=_cmd_list_identities)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
