"""Command line front end.

Subcommands: table, zeta, dims, kcomplex, stalk, verify-all.
Exit codes: 0 success, 1 internal assertion, 2 invalid configuration,
3 theorem-check mismatch, 4 budget exceeded.  stdout carries results,
stderr diagnostics; identical configurations produce byte-identical JSON.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import cohomology as coh
from . import complexes as cx
from . import flagenum, slopes, weyl
from .errors import (
    BudgetExceededError,
    ConfigError,
    InternalCheckError,
    PerdomError,
    TheoremCheckError,
)
from .weyl import ParabolicType

ENV_BUDGET = "PERDOM_BUDGET"


def _parse_g(args) -> slopes.SlopeFunction:
    if getattr(args, "drinfeld", None) is not None:
        if getattr(args, "g", None):
            raise ConfigError("give either --g or --drinfeld, not both")
        return slopes.drinfeld(args.drinfeld)
    spec = getattr(args, "g", None)
    if not spec:
        raise ConfigError("a slope function is required (--g or --drinfeld)")
    if spec.startswith("@"):
        with open(spec[1:], "r", encoding="utf-8") as fh:
            return slopes.parse_g_config(json.load(fh))
    try:
        values = [Fraction(part.strip()) for part in spec.split(",") if part.strip()]
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"cannot parse slope values from {spec!r}") from exc
    if not values:
        raise ConfigError("empty slope value list")
    return slopes.from_values(values)


def _parse_n_range(spec: str | None) -> tuple[int, ...]:
    if not spec:
        return ()
    out: list[int] = []
    try:
        for part in spec.split(","):
            part = part.strip()
            if ".." in part:
                lo, hi = part.split("..", 1)
                out.extend(range(int(lo), int(hi) + 1))
            elif part:
                out.append(int(part))
    except ValueError as exc:
        raise ConfigError(f"cannot parse extension degrees from {spec!r}") from exc
    if not out:
        raise ConfigError(f"empty extension-degree range {spec!r}")
    if any(n < 1 for n in out):
        raise ConfigError("extension degrees must be >= 1")
    return tuple(dict.fromkeys(out))


def _budget(args) -> int:
    if getattr(args, "budget", None) is not None:
        return args.budget
    env = os.environ.get(ENV_BUDGET)
    if env:
        try:
            return int(env)
        except ValueError as exc:
            raise ConfigError(f"bad {ENV_BUDGET} value {env!r}") from exc
    return flagenum.DEFAULT_BUDGET


def _emit_json(payload, path: str | None):
    if path is None:
        return
    text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _emit_md(text: str, path: str | None):
    if path is None:
        return
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _resolve_d(args) -> int:
    if getattr(args, "d", None):
        return args.d
    return _parse_g(args).d


# -- subcommands ----------------------------------------------------------------


def cmd_table(args) -> int:
    g = _parse_g(args)
    family = slopes.parse_family(args.family)
    ns = _parse_n_range(args.n)
    open_table = coh.table_open(g, family)
    closed_table = coh.table_closed(g, family)
    md = (
        f"## open stratum (d={g.d}, q={args.q}, family {family.describe()})\n\n"
        + coh.table_markdown(open_table, args.q)
        + "\n## closed complement\n\n"
        + coh.table_markdown(closed_table, args.q)
    )
    sys.stdout.write(md)
    if ns:
        sys.stdout.write("\n## traces\n\n")
        for n in ns:
            o = coh.trace_prediction(open_table, args.q, n)
            c = coh.trace_prediction(closed_table, args.q, n)
            sys.stdout.write(f"n={n}: open {o}, closed {c}, total {o + c}\n")
    payload = {
        "open": coh.table_json(open_table, args.q, ns),
        "closed": coh.table_json(closed_table, args.q, ns),
    }
    _emit_json(payload, args.json)
    _emit_md(md, args.md)
    return 0


def _zeta_one(task):
    g, family, q, n, budget = task
    predicted_open, predicted_closed, total = coh.predicted_counts(g, family, q, n)
    report = flagenum.count_points(g, family, q, n, budget=budget)
    return {
        "n": n,
        "predicted_open": predicted_open,
        "predicted_closed": predicted_closed,
        "predicted_total": predicted_open + predicted_closed,
        "cell_total": total,
        "enumerated_open": report.in_open,
        "enumerated_closed": report.in_y,
        "enumerated_total": report.total,
    }


def cmd_zeta(args) -> int:
    g = _parse_g(args)
    family = slopes.parse_family(args.family)
    ns = _parse_n_range(args.n) or (1,)
    budget = _budget(args)
    tasks = [(g, family, args.q, n, budget) for n in ns]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(pool.map(_zeta_one, tasks))
    else:
        rows = [_zeta_one(t) for t in tasks]
    ok = True
    for row in rows:
        match = (
            row["predicted_open"] == row["enumerated_open"]
            and row["predicted_closed"] == row["enumerated_closed"]
            and row["predicted_total"] == row["enumerated_total"]
            and row["cell_total"] == row["enumerated_total"]
        )
        ok = ok and match
        sys.stdout.write(
            f"n={row['n']}: open {row['predicted_open']}/{row['enumerated_open']} "
            f"closed {row['predicted_closed']}/{row['enumerated_closed']} "
            f"total {row['predicted_total']}/{row['enumerated_total']} "
            f"[{'ok' if match else 'MISMATCH'}]\n"
        )
    _emit_json({"d": g.d, "q": args.q, "rows": rows, "pass": ok}, args.json)
    if not ok:
        raise TheoremCheckError("predicted and enumerated counts disagree")
    return 0


def _all_parabolic_subsets(d: int):
    from itertools import combinations

    pool = range(1, d)
    for r in range(d):
        for gens in combinations(pool, r):
            yield ParabolicType.from_gens(d, gens)


def cmd_dims(args) -> int:
    d = _resolve_d(args)
    rows = []
    for ptype in _all_parabolic_subsets(d):
        di = coh.dim_induced(ptype, args.q)
        dv = coh.check_dim_v(ptype, args.q) if args.oracle else coh.dim_v(ptype, args.q)
        rows.append(
            {
                "I": list(ptype.gens),
                "composition": list(ptype.composition()),
                "dim_induced": di,
                "dim_v": dv,
            }
        )
        sys.stdout.write(
            f"I={list(ptype.gens)} composition={list(ptype.composition())} "
            f"dim_i={di} dim_v={dv}\n"
        )
    _emit_json({"d": d, "q": args.q, "oracle": bool(args.oracle), "rows": rows}, args.json)
    return 0


def _kcomplex_one(task):
    ptype, q, signs = task
    if signs == "position":
        return cx.verify_K(ptype, q)
    # corruption hook: build with the broken sign reading (raises at the
    # composition-zero validation)
    cx.build_K(ptype, q, signs=signs)
    raise InternalCheckError("corrupted sign convention unexpectedly composed to zero")


def _corruptible(ptype: ParabolicType) -> bool:
    """Complexes with a single differential cannot witness a broken sign."""
    return len(ptype.complement()) >= 2


def cmd_kcomplex(args) -> int:
    d = _resolve_d(args)
    q = args.q
    if args.i0:
        gens = [int(x) for x in args.i0.split(",") if x.strip()]
        subsets = [ParabolicType.from_gens(d, gens)]
    else:
        subsets = [p for p in _all_parabolic_subsets(d) if not p.is_full]
    signs = "index" if args.corrupt_signs else "position"
    if args.corrupt_signs:
        subsets = [p for p in subsets if _corruptible(p)]
        if not subsets:
            raise ConfigError("the sign-corruption hook needs a complex with two differentials")
    tasks = [(ptype, q, signs) for ptype in subsets]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            reports = list(pool.map(_kcomplex_one, tasks))
    else:
        reports = [_kcomplex_one(t) for t in tasks]
    ok = True
    for rep in reports:
        ok = ok and rep.passed
        sys.stdout.write(
            f"I0={list(rep.i0.gens)} dims={list(rep.dims)} homology={list(rep.homology)} "
            f"[{'ok' if rep.passed else 'FAIL'}]\n"
        )
    _emit_json({"d": d, "q": q, "reports": [r.as_json() for r in reports], "pass": ok}, args.json)
    if not ok:
        raise TheoremCheckError("induction-complex homology check failed")
    return 0


def cmd_stalk(args) -> int:
    g = _parse_g(args)
    family = slopes.parse_family(args.family)
    if not family.within_ss:
        raise ConfigError("stalk checks need a family of positive degrees")
    ns = _parse_n_range(args.n) or (1,)
    budget = _budget(args)
    all_ok = True
    rows = []
    for n in ns:
        flags = list(flagenum.enumerate_flags(g, args.q, n, budget=budget))
        in_y = 0
        failed = 0
        for flag in flags:
            rep = cx.stalk_report(flag, family)
            if rep.in_y:
                in_y += 1
                if not rep.passed:
                    failed += 1
        all_ok = all_ok and failed == 0
        rows.append({"n": n, "flags": len(flags), "in_y": in_y, "failed": failed})
        sys.stdout.write(
            f"n={n}: {len(flags)} flags, {in_y} on the closed stratum, "
            f"{failed} stalk failures\n"
        )
    _emit_json({"d": g.d, "q": args.q, "rows": rows, "pass": all_ok}, args.json)
    if not all_ok:
        raise TheoremCheckError("a stalk complex failed to contract")
    return 0


# -- verify-all -----------------------------------------------------------------


def _suite_dims(quick: bool):
    return ((2, 3) if quick else (2, 3, 4))


def _suite_slope_functions(d: int):
    """A regular and a non-regular slope function in dimension d."""
    regular = slopes.from_values(range(-(d - 1), d, 2))  # arithmetic, zero sum
    out = [regular]
    if d >= 3:
        out.append(slopes.from_values([1] * (d - 1) + [-(d - 1)]))
    return out


def cmd_verify_all(args) -> int:
    family = slopes.parse_family(args.family)
    if not family.within_ss:
        raise ConfigError(
            f"verify-all needs a family of positive degrees, got {family.describe()}"
        )
    quick = args.quick
    qs = (2,) if quick else (2, 3)
    failures: list[str] = []
    lines: list[str] = []

    def check(name: str, ok: bool):
        lines.append(f"{'PASS' if ok else 'FAIL'} {name}")
        sys.stdout.write(lines[-1] + "\n")
        if not ok:
            failures.append(name)

    ss = slopes.ClosedFamily.semistable()

    # coset/subfunction bijection with order reversal
    ok = True
    for d in _suite_dims(quick):
        for g in _suite_slope_functions(d):
            for i in range(1, d):
                slopes.kappa(i, g.mu)  # raises on failure
    check("prefix-map bijection and order reversal", ok)

    # parabolic monotonicity along left multiplication, and the length bound
    ok = True
    for d in _suite_dims(quick):
        for g in _suite_slope_functions(d):
            mu = g.mu
            reps = weyl.kostant_reps(mu)
            for w in reps:
                delta = set(slopes.delta_w(w, mu, ss))
                if len(set(range(1, d)) - delta) > weyl.length(w):
                    ok = False
                for i in range(1, d):
                    sw = weyl.compose(weyl.simple_reflection(i, d), w)
                    if weyl.is_kostant(sw, mu) and weyl.length(sw) == weyl.length(w) + 1:
                        delta_sw = set(slopes.delta_w(sw, mu, ss))
                        if not delta_sw <= delta or not (delta - delta_sw) <= {i}:
                            ok = False
    check("parabolic sets shrink along the order, with the length bound", ok)

    # vanishing below the top of the open table
    rng = random.Random(20_2108)
    ok = True
    for _ in range(20 if not quick else 6):
        d = rng.randint(2, 6 if not quick else 4)
        g = slopes.random_slope_function(rng, d)
        if not coh.vanishing_check(coh.table_open(g, ss)).ok:
            ok = False
    check("low-degree vanishing with a single Steinberg top", ok)

    # representation dimensions, two routes
    ok = True
    for d in _suite_dims(quick):
        for q in qs:
            for ptype in _all_parabolic_subsets(d):
                coh.check_dim_v(ptype, q)  # raises on mismatch
    check("Steinberg dimensions agree across both routes", ok)

    # induction complexes
    signs = "index" if args.corrupt_signs else "position"
    ok = True
    grid = [(d, q) for d in (2, 3) for q in qs]
    if not quick:
        grid.append((4, 2))
    for d, q in grid:
        for ptype in _all_parabolic_subsets(d):
            if ptype.is_full:
                continue
            if signs == "index" and not _corruptible(ptype):
                continue
            rep = _kcomplex_one((ptype, q, signs))
            ok = ok and rep.passed
    check("induction complex homology concentrated on top", ok)

    # stalk contractions over the closed stratum
    g = slopes.from_values([2, 1, -3])
    ok = True
    for n in (1,) if quick else (1, 2):
        for flag in flagenum.enumerate_flags(g, 2, n):
            rep = cx.stalk_report(flag, family)
            if rep.in_y and not rep.passed:
                ok = False
    check("stalk complexes contract with a witness", ok)

    # closed-stratum cell counts against the coset-length generating sum
    ok = True
    for i in range(1, 3):
        ptype = ParabolicType.from_gens(3, [j for j in range(1, 3) if j != i])
        geometric = cx.closed_stratum_count(g, ss, ptype, 2)
        predicted = sum(2 ** weyl.length(w) for w in coh.omega_set(g, ss, ptype))
        if geometric != predicted:
            ok = False
    check("closed-stratum cell counts match the length generating sum", ok)

    _emit_json({"checks": lines, "pass": not failures}, args.json)
    if failures:
        raise TheoremCheckError(f"{len(failures)} verification groups failed")
    return 0


# -- parser ----------------------------------------------------------------------


def _add_common(sub, *, g=True, q=True, family=False, n=False, budget=False, jobs=False):
    if g:
        sub.add_argument("--g", help='slope values "2,1,-3" (fractions allowed) or @config.json')
        sub.add_argument("--drinfeld", type=int, metavar="D",
                         help="hyperplane-complement slope function in dimension D")
    if q:
        sub.add_argument("--q", type=int, required=True, help="prime size of the base field")
    if family:
        sub.add_argument("--family", default="ss", help='"ss" or "ge:NUM/DEN"')
    if n:
        sub.add_argument("--n", help='extension degrees, e.g. "2" or "1..3"')
    if budget:
        sub.add_argument("--budget", type=int,
                         help=f"work budget (default {flagenum.DEFAULT_BUDGET}, env {ENV_BUDGET})")
    if jobs:
        sub.add_argument("--jobs", type=int, default=1, help="parallel worker processes")
    sub.add_argument("--json", metavar="PATH", help="write a JSON report (- for stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="perdom",
        description="cohomology tables and point counts for period domains over finite fields",
        epilog=(
            "exit codes: 0 success, 1 internal assertion, 2 invalid config, "
            "3 theorem-check mismatch, 4 budget exceeded"
        ),
    )
    subs = parser.add_subparsers(dest="command")

    p = subs.add_parser("table", help="predicted cohomology tables (open and closed)")
    _add_common(p, family=True, n=True)
    p.add_argument("--md", metavar="PATH", help="write the markdown table")
    p.set_defaults(func=cmd_table)

    p = subs.add_parser("zeta", help="trace predictions vs. brute-force point counts")
    _add_common(p, family=True, n=True, budget=True, jobs=True)
    p.set_defaults(func=cmd_zeta)

    p = subs.add_parser("dims", help="representation dimensions for all parabolic types")
    _add_common(p)
    p.add_argument("--d", type=int, help="ambient dimension (alternative to --g)")
    p.add_argument("--oracle", action="store_true",
                   help="also run the exact-rank route and compare")
    p.set_defaults(func=cmd_dims)

    p = subs.add_parser("kcomplex", help="verify induction-complex homology")
    _add_common(p, jobs=True)
    p.add_argument("--d", type=int, help="ambient dimension (alternative to --g)")
    p.add_argument("--i0", help='reflection subset, e.g. "1,2" (default: all proper subsets)')
    p.add_argument("--corrupt-signs", action="store_true", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_kcomplex)

    p = subs.add_parser("stalk", help="stalk acyclicity and contraction witnesses")
    _add_common(p, family=True, n=True, budget=True)
    p.set_defaults(func=cmd_stalk)

    p = subs.add_parser("verify-all", help="run the consolidated verification suite")
    p.add_argument("--family", default="ss", help='"ss" or "ge:NUM/DEN"')
    p.add_argument("--quick", action="store_true", help="reduced grid for smoke testing")
    p.add_argument("--corrupt-signs", action="store_true", help=argparse.SUPPRESS)
    p.add_argument("--json", metavar="PATH", help="write a JSON report (- for stdout)")
    p.set_defaults(func=cmd_verify_all)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not hasattr(args, "func"):
        parser.print_help(sys.stderr)
        return 2
    try:
        return args.func(args)
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except TheoremCheckError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except InternalCheckError as exc:
        print(f"internal check failed: {exc}", file=sys.stderr)
        return exc.exit_code
    except PerdomError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
