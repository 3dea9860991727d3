"""Command line drivers: ``operadlab soul|zp|perm|cochain|verify``.

Reports go to stdout as JSON (sorted keys, so identical configs give
identical bytes) or CSV; the wall-clock time goes to stderr only.

Exit codes: 0 pass, 1 failed assertion, 2 bad input, 3 resource bound.
"""
from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import os
import sys
import time
from fractions import Fraction
from pathlib import Path

from .operads.base import MAX_CAP, ResourceBound

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_RESOURCE = 0, 1, 2, 3

# lower-case command line names of the catalog operads
NAMES = {"ass": "Ass", "uass": "uAss", "com": "Com", "lie": "Lie", "sym": "Sym", "mag": "Mag",
         "umag": "uMag", "prelie": "preLie", "d": "D"}
NON_SIGMA = {"Ass": "uAss", "Mag": "uMag"}


class InputError(ValueError):
    pass


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else x.numerator
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def _cap(value: str) -> int:
    c = int(value)
    if not 2 <= c <= MAX_CAP:
        raise argparse.ArgumentTypeError(f"cap must lie in [2, {MAX_CAP}]")
    return c


# -- optional file cache ---------------------------------------------------------

def _cache_path(kind: str, payload) -> Path | None:
    root = os.environ.get("OPERADLAB_CACHE")
    if not root:
        return None
    key = hashlib.sha256(json.dumps([kind, payload], sort_keys=True).encode()).hexdigest()
    return Path(root) / f"{kind}-{key[:32]}.json"


def _cached(kind: str, payload, compute):
    path = _cache_path(kind, payload)
    if path is not None and path.exists():
        return json.loads(path.read_text())
    value = _jsonable(compute())
    if path is not None:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(value, sort_keys=True))
    return value


# -- commands ----------------------------------------------------------------

def _table(tab) -> list:
    rows = tab.rows()
    for r in rows:
        r["arity"] = r["degree"] + 1
    return rows


def _load_presentation(path: str):
    from .operads.free import Presentation

    try:
        data = json.loads(Path(path).read_text())
        return Presentation.from_json(data)
    except OSError as e:
        raise InputError(f"cannot read {path}: {e}") from None
    except (KeyError, TypeError, ValueError) as e:
        raise InputError(f"invalid presentation {path}: {e}") from None


def _operad_name(name: str) -> str:
    key = name.lower()
    if key not in NAMES:
        raise InputError(f"unknown operad {name!r}; choose from {sorted(NAMES)} or give a presentation file")
    return NAMES[key]


def cmd_soul(args) -> dict:
    from .exactlin.complexes import cohomology_dims
    from .liecplx import nonsigma_soul_complex, presentation_chi, soul_complex, soul_cohomology
    from .operads.catalog import catalog

    cap = args.cap or 6
    if os.path.exists(args.operad):
        p = _load_presentation(args.operad)
        if args.non_sigma and p.E.symmetric:
            raise InputError("--non-sigma needs a presentation with \"symmetric\": false")

        def compute():
            try:
                T, chi = presentation_chi(p, cap)
            except ValueError as e:
                raise InputError(f"presentation rejected: {e}") from None
            c = (nonsigma_soul_complex if not p.E.symmetric else soul_complex)(T, chi, cap, "soul")
            return _table(cohomology_dims(c))

        rows = _cached("soul", [p.to_json(), cap], compute)
        label = args.operad
    else:
        name = _operad_name(args.operad)
        if args.non_sigma and catalog(name, 2).P.symmetric:
            if name not in NON_SIGMA:
                raise InputError(f"{name} has no non-symmetric version in the catalog")
            name = NON_SIGMA[name]
        rows = _cached("soul", [name, cap], lambda: _table(soul_cohomology(name, cap)))
        label = name
    return {"operad": label, "cap": cap, "table": rows,
            "reliable_cohomology": [r["h_dim"] for r in rows if r["reliable"]]}


def cmd_zp(args) -> dict:
    from .cupnat import zp_solve

    name = _operad_name(args.operad)
    n = args.n
    if n < 1 or n + 1 > MAX_CAP:
        raise InputError(f"-n must lie in [1, {MAX_CAP - 1}]")
    basis = zp_solve(name, n, args.cap if args.cap and args.cap > n else None)
    terms = [[{"p": repr(p), "p_dual": repr(q), "coeff": c} for (p, q), c in sorted(v.items(), key=repr)]
             for v in basis]
    return {"operad": name, "n": n, "dim": len(basis), "basis": _jsonable(terms)}


def cmd_perm(args) -> dict:
    from .exactlin.complexes import cohomology_dims
    from .permcplx import block_table, perm_complex

    m = args.arity or args.cap or 5
    if not 1 <= m <= MAX_CAP:
        raise InputError(f"--arity must lie in [1, {MAX_CAP}]")
    out = {"arity": m, "table": _table(cohomology_dims(perm_complex(m)))}
    if args.blocks:
        out["blocks"] = block_table(m)
        out["blocks_match"] = all(r["sizes"] == r["expected_sizes"] for r in out["blocks"])
    return out


def cmd_cochain(args) -> dict:
    from .cochain import InvalidAlgebra, PAlgebra, cohomology_of_algebra, validate_algebra

    cap = args.cap or 4
    try:
        text = Path(args.algebra).read_text()
    except OSError as e:
        raise InputError(f"cannot read {args.algebra}: {e}") from None
    try:
        A = PAlgebra.from_json(text, cap)
    except (KeyError, TypeError, ValueError) as e:
        raise InputError(f"invalid algebra file: {e}") from None
    if args.operad and _operad_name(args.operad) != A.operad:
        raise InputError(f"algebra file is over {A.operad}, not {args.operad}")
    try:
        problem = validate_algebra(A)
    except InvalidAlgebra as e:
        problem = str(e)
    if problem:
        raise InputError(f"algebra does not satisfy the {A.operad} relations: {problem}")
    tab = cohomology_of_algebra(A, cap)
    return {"operad": A.operad, "dim": A.dim, "cap": cap, "table": _table(tab)}


def _suite(spec: str):
    from .acceptance import CRITERIA, QUICK

    if spec == "all":
        return sorted(CRITERIA)
    if spec == "quick":
        return list(QUICK)
    try:
        nums = [int(x) for x in spec.split(",") if x.strip()]
    except ValueError:
        raise InputError(f"--suite takes all, quick or a comma list of numbers, not {spec!r}") from None
    bad = [k for k in nums if k not in CRITERIA]
    if bad or not nums:
        raise InputError(f"unknown criteria {bad}")
    return nums


def cmd_verify(args) -> dict:
    from .acceptance import CRITERIA

    results = []
    for k in _suite(args.suite):
        r = CRITERIA[k](seed=args.seed) if k == 9 else CRITERIA[k]()
        print(r.line(), file=sys.stderr)
        results.append(r.as_dict())
    failed = [r["criterion"] for r in results if not r["passed"]]
    return {"suite": args.suite, "results": _jsonable(results), "failed": failed, "passed": not failed}


COMMANDS = {"soul": cmd_soul, "zp": cmd_zp, "perm": cmd_perm, "cochain": cmd_cochain, "verify": cmd_verify}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cap", type=_cap, default=None, help=f"arity cap, 2..{MAX_CAP}")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--seed", type=int, default=0, help="seed for random algebra sampling")
    common.add_argument("--limit-mb", type=int, default=None, help="address-space limit in MiB")

    ap = argparse.ArgumentParser(prog="operadlab", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)
    p = sub.add_parser("soul", parents=[common], help="soul complex of an operad")
    p.add_argument("operad", help="catalog name or presentation JSON file")
    p.add_argument("--non-sigma", action="store_true")
    p = sub.add_parser("zp", parents=[common], help="basis of the cup-product space Z_P(n)")
    p.add_argument("operad")
    p.add_argument("-n", type=int, required=True)
    p = sub.add_parser("perm", parents=[common], help="permutation complex and its blocks")
    p.add_argument("--arity", type=int, default=None)
    p.add_argument("--blocks", action="store_true")
    p = sub.add_parser("cochain", parents=[common], help="cohomology of an algebra")
    p.add_argument("--operad", default=None)
    p.add_argument("--algebra", required=True, help="algebra JSON file")
    p = sub.add_parser("verify", parents=[common], help="run the acceptance checks")
    p.add_argument("--suite", default="all", help="all, quick or a comma list like 1,4,9")
    return ap


def _csv(report: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if "table" in report:
        cols = ["arity", "degree", "dim", "rank_out", "rank_in", "h_dim", "reliable"]
        w.writerow(cols)
        for r in report["table"]:
            w.writerow([r[c] for c in cols])
    elif "results" in report:
        w.writerow(["criterion", "passed", "title"])
        for r in report["results"]:
            w.writerow([r["criterion"], r["passed"], r["title"]])
    else:
        w.writerow(["n", "dim"])
        w.writerow([report["n"], report["dim"]])
    return buf.getvalue()


def _limit_memory(mb):
    if mb is None:
        return
    import resource

    limit = mb * 1024 * 1024
    resource.setrlimit(resource.RLIMIT_AS, (limit, limit))


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    t0 = time.perf_counter()
    config = {"cap": args.cap, "format": args.format, "seed": args.seed, "limit_mb": args.limit_mb}
    try:
        _limit_memory(args.limit_mb)
        result = COMMANDS[args.command](args)
    except InputError as e:
        print(f"input error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except (ResourceBound, MemoryError) as e:
        print(f"resource bound: {e or 'out of memory'}", file=sys.stderr)
        return EXIT_RESOURCE
    report = {"command": args.command, "argv": list(sys.argv[1:] if argv is None else argv),
              "config": config, "result": result}
    if args.format == "csv":
        sys.stdout.write(_csv(result))
    else:
        sys.stdout.write(json.dumps(_jsonable(report), sort_keys=True, indent=1) + "\n")
    print(f"wall-clock {time.perf_counter() - t0:.2f}s", file=sys.stderr)
    if args.command == "verify" and not result["passed"]:
        return EXIT_FAIL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
