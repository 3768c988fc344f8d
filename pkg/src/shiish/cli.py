"""Command-line entry point.

List outputs are JSON lines with a summary object on the last line; csv and
pretty renderings carry the same data.  Exit codes: 0 success, 1 falsified
verification, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from contextlib import nullcontext

from .arrangement import (ArrangementSpec, LimitExceeded, enumerate_regions,
                          is_relatively_bounded, label_census, region_records)
from .centers import (DEFAULT_DISTRIBUTION_LIMIT, DEFAULT_SWEEP_LIMIT, center,
                      conjecture_sweep, ipf_distribution,
                      parking_reverse_center_distribution, pf_center_distribution,
                      reverse_center)
from .charpoly import ValidationMismatch, compute_charpoly
from .graphs import (augmented_of, dfs_burn, enumerate_arborescences,
                     enumerate_parking_functions, laplacian, reduced_determinant)
from .shi import ValidPair, invert_ell, label_ell, label_lambda

JOBS_ENV = "SHIISH_JOBS"


class UsageError(Exception):
    pass


class Falsified(Exception):
    pass


def _int_list(text: str) -> list:
    text = text.strip()
    if not text:
        return []
    try:
        return [int(v) for v in text.split(",")]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}")


def _intervals(text: str) -> list:
    out = []
    for part in filter(None, (p.strip() for p in text.split(","))):
        try:
            b, e = part.split("-")
            out.append((int(b), int(e)))
        except ValueError:
            raise UsageError(f"bad interval {part!r}; write b-e")
    return out


def _spec(args) -> ArrangementSpec:
    if args.n is None:
        raise UsageError("--n is required")
    if args.shi:
        if args.x is not None:
            raise UsageError("--shi and --x are exclusive")
        return ArrangementSpec.shi(args.n)
    if args.x is None:
        raise UsageError("give --x (comma list, empty for Ish) or --shi")
    return ArrangementSpec(args.n, frozenset(_int_list(args.x)))


def _header(spec):
    return {"n": spec.n, "x": list(spec.x)}


# -- subcommands: each returns (records, summary) ---------------------------

def cmd_regions(args):
    spec = _spec(args)
    regions = enumerate_regions(spec, jobs=args.jobs,
                                limit=args.n if args.allow_large else 6)
    recs = region_records(regions, spec)
    bounded = 0
    for rec, r in zip(recs, regions):
        rec["bounded"] = is_relatively_bounded(r, spec)
        bounded += rec["bounded"]
    return recs, {**_header(spec), "regions": len(regions), "bounded": bounded}


def cmd_labels(args):
    spec = _spec(args)
    regions = enumerate_regions(spec, jobs=args.jobs,
                                limit=args.n if args.allow_large else 6)
    counts, bijective = label_census(spec, regions)
    recs = [{"label": list(a), "regions": c} for a, c in sorted(counts.items())]
    return recs, {**_header(spec), "regions": len(regions), "distinct": len(counts),
                  "bijective": bijective}


def cmd_charpoly(args):
    spec = _spec(args)
    cp = compute_charpoly(spec, jobs=args.jobs, limit=args.n if args.allow_large else 6)
    return [], {**_header(spec), **cp.as_json()}


def cmd_burn(args):
    spec = _spec(args)
    trace = dfs_burn(augmented_of(spec), _int_list(args.a))
    out = {**_header(spec), "a": _int_list(args.a)}
    if args.trace:
        out.update(trace.as_json())
    else:
        out.update(burnt_vertices=list(trace.burnt_vertices), fits=trace.fits)
    return [], out


def cmd_laplacian(args):
    spec = _spec(args)
    gbar = augmented_of(spec)
    rows = laplacian(gbar).to_rows()
    recs = [{"vertex": i, "row": list(r)} for i, r in enumerate(rows)]
    return recs, {**_header(spec), "reduced_determinant": reduced_determinant(gbar)}


def cmd_arborescences(args):
    spec = _spec(args)
    gbar = augmented_of(spec)
    trees = enumerate_arborescences(gbar, limit=spec.n + 1 if args.allow_large else 9)
    recs = [] if args.count else [{"tree": [a.as_list() for a in t]} for t in trees]
    return recs, {**_header(spec), "arborescences": len(trees)}


def cmd_parking(args):
    spec = _spec(args)
    if spec.n > 7 and not args.allow_large:
        raise LimitExceeded(f"n={spec.n} > 7 needs --allow-large")
    pfs = enumerate_parking_functions(augmented_of(spec), method=args.method)
    recs = [] if args.count else [{"a": list(a)} for a in pfs]
    return recs, {**_header(spec), "parking_functions": len(pfs)}


def cmd_center(args):
    b = _int_list(args.b)
    res = center(b)
    return [], {"b": b, "center": sorted(res.member_set), "length": res.length}


def cmd_reverse_center(args):
    a = _int_list(args.a)
    res = reverse_center(a)
    return [], {"a": a, "reverse_center": sorted(res.member_set), "length": res.length}


def _dist_json(d):
    return {"by_length": list(d.counts), "zero_length": d.zero_length, "total": d.total}


def cmd_distribution(args):
    if args.n is None:
        raise UsageError("--n is required")
    if args.x is None and not args.shi:
        kw = dict(limit=DEFAULT_DISTRIBUTION_LIMIT, allow_large=args.allow_large)
        pf = pf_center_distribution(args.n, **kw)
        ipf = ipf_distribution(args.n, **kw)
        recs = [{"kind": "pf_center", **_dist_json(pf)}, {"kind": "ipf_reverse_center", **_dist_json(ipf)}]
        return recs, {"n": args.n, "equal": pf.counts == ipf.counts}
    spec = _spec(args)
    if spec.n > DEFAULT_DISTRIBUTION_LIMIT and not args.allow_large:
        raise LimitExceeded(f"n={spec.n} needs --allow-large")
    d = parking_reverse_center_distribution(spec)
    return [], {**_header(spec), **_dist_json(d)}


def cmd_verify_conjecture(args):
    if args.n is None:
        raise UsageError("--n is required")
    rep = conjecture_sweep(args.n, jobs=args.jobs, limit=DEFAULT_SWEEP_LIMIT,
                           allow_large=args.allow_large)
    data = rep.as_json()
    recs = data["distributions"]
    summary = {"n": args.n, "subsets": len(recs),
               "verdict": "equal" if rep.all_equal else "differ"}
    if not rep.all_equal:
        raise Falsified((recs, summary))
    return recs, summary


def cmd_shi_label(args):
    p = ValidPair(_int_list(args.w), _intervals(args.intervals))
    fn = label_ell if args.style == "ell" else label_lambda
    return [], {"w": list(p.w), "intervals": [list(iv) for iv in p.intervals],
                "style": args.style, "label": list(fn(p))}


def cmd_shi_invert(args):
    a = _int_list(args.a)
    p = invert_ell(a, args.n, allow_slow=args.allow_large)
    return [], {"a": a, "w": list(p.w), "intervals": [list(iv) for iv in p.intervals]}


# -- output ------------------------------------------------------------------

def _flat(v):
    if isinstance(v, (list, tuple)):
        return " ".join(_flat(x) for x in v)
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def emit(records, summary, fmt, out):
    if fmt == "json":
        for r in records:
            out.write(json.dumps(r) + "\n")
        out.write(json.dumps({"summary": summary}) + "\n")
    elif fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        if records:
            keys = list(records[0])
            w.writerow(keys)
            for r in records:
                w.writerow([_flat(r.get(k)) for k in keys])
            w.writerow([])
        w.writerow(list(summary))
        w.writerow([_flat(v) for v in summary.values()])
    else:
        for r in records:
            out.write("  ".join(f"{k}={_flat(v)}" for k, v in r.items()) + "\n")
        width = max((len(k) for k in summary), default=0)
        for k, v in summary.items():
            out.write(f"{k:<{width}} : {_flat(v)}\n")


# -- parser ------------------------------------------------------------------

def _default_jobs():
    try:
        return max(1, int(os.environ.get(JOBS_ENV, "1")))
    except ValueError:
        return 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "pretty"), default="json")
    common.add_argument("--jobs", type=int, default=_default_jobs(),
                        help=f"worker processes (default ${JOBS_ENV} or 1)")
    common.add_argument("--allow-large", action="store_true",
                        help="acknowledge long runs past the default size limits")
    common.add_argument("--output", "-o", help="write to this file instead of stdout")

    arr = argparse.ArgumentParser(add_help=False, parents=[common])
    arr.add_argument("--n", type=int)
    arr.add_argument("--x", help="comma-separated Shi indices; empty string for Ish")
    arr.add_argument("--shi", action="store_true", help="X = {2, ..., n-1}")

    parser = argparse.ArgumentParser(prog="shiish",
                                     description="Shi/Ish interpolating arrangements and parking functions.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, parents, help_):
        p = sub.add_parser(name, parents=parents, help=help_)
        p.set_defaults(func=fn)
        return p

    add("regions", cmd_regions, [arr], "enumerate regions with witnesses and labels")
    add("labels", cmd_labels, [arr], "label census of the regions")
    add("charpoly", cmd_charpoly, [arr], "characteristic polynomial by point counting")
    p = add("burn", cmd_burn, [arr], "run the DFS burning algorithm")
    p.add_argument("--a", required=True)
    p.add_argument("--trace", action="store_true")
    add("laplacian", cmd_laplacian, [arr], "Laplacian and reduced determinant")
    for name, fn, help_ in (("arborescences", cmd_arborescences, "spanning arborescences from 0"),
                            ("parking", cmd_parking, "G^X-parking functions")):
        p = add(name, fn, [arr], help_)
        g = p.add_mutually_exclusive_group()
        g.add_argument("--count", action="store_true")
        g.add_argument("--list", action="store_true")
        if name == "parking":
            p.add_argument("--method", choices=("dfs", "vectorized"), default="dfs")
    p = add("center", cmd_center, [common], "center of b in [n]^n")
    p.add_argument("--b", required=True)
    p = add("reverse-center", cmd_reverse_center, [common], "reverse center of a")
    p.add_argument("--a", required=True)
    add("distribution", cmd_distribution, [arr],
        "center-length distributions; with --x/--shi, over G^X-parking functions")
    p = add("verify-conjecture", cmd_verify_conjecture, [common],
            "compare reverse-center distributions over every X")
    p.add_argument("--n", type=int)

    shi = sub.add_parser("shi", help="valid pairs of the Shi arrangement")
    shisub = shi.add_subparsers(dest="shi_command", required=True)
    p = shisub.add_parser("label", parents=[common], help="label of a valid pair")
    p.add_argument("--w", required=True)
    p.add_argument("--intervals", default="", help="e.g. 1-4,2-7,4-9")
    p.add_argument("--style", choices=("ell", "lambda"), default="ell")
    p.set_defaults(func=cmd_shi_label)
    p = shisub.add_parser("invert", parents=[common], help="valid pair with a given ell-label")
    p.add_argument("--a", required=True)
    p.add_argument("--n", type=int)
    p.set_defaults(func=cmd_shi_invert)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "jobs", 1) < 1:
        parser.error("--jobs must be positive")
    status = 0
    try:
        records, summary = args.func(args)
    except Falsified as exc:
        records, summary = exc.args[0]
        status = 1
    except (UsageError, LimitExceeded, ValueError, LookupError) as exc:
        print(f"shiish: error: {exc}", file=sys.stderr)
        return 2
    except ValidationMismatch as exc:
        print(f"shiish: verification failed: {exc}", file=sys.stderr)
        return 1
    ctx = open(args.output, "w") if args.output else nullcontext(sys.stdout)
    with ctx as out:
        emit(records, summary, args.format, out)
    return status


if __name__ == "__main__":
    sys.exit(main())
