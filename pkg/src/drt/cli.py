"""drt: construct, verify, rank, and stress-test doubly regular tournaments.

Report-emitting subcommands print a single JSON object to stdout:

    {schema_version, tool_version, command, inputs, results, wall_time_ms}

`inputs` maps each input path to its sha256; `results` is deterministic given
the same inputs and seed (wall_time_ms is the one field outside that
contract).  `--pretty` renders the same payload as aligned text.  Exit codes:
0 all checks pass, 1 a verdict failed or a violation was found, 2 usage or
parse errors.  DRT_THREADS caps the worker count of the sampling paths; it
never changes any output.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from pathlib import Path
from typing import NoReturn

from . import __version__
from .diffset import (
    CandidateSet,
    classify,
    format_diffset,
    is_shds,
    paley_set,
    parse_diffset,
)
from .discrepancy import (
    SWEEP_CAP,
    check_sigma_gap,
    check_theorem_bound,
    exhaustive_mixing_check,
    mask_vertices,
    sampled_mixing_check,
)
from .groups import format_group_spec, make_field
from .ranking import (
    DP_CAP,
    RankingResult,
    exact_max_consistent,
    heuristic_rank,
    random_baseline,
)
from .tourney import (
    Tournament,
    cayley_tournament,
    format_tournament,
    is_doubly_regular,
    parse_tournament,
    random_tournament,
    verify_gram_identities,
)

PIPELINE_RANK_CAP = 20
PIPELINE_SAMPLES = 20_000


def _usage_fail(message: str) -> NoReturn:
    print(f"drt: error: {message}", file=sys.stderr)
    raise SystemExit(2)


def _threads_from_env() -> int:
    raw = os.environ.get("DRT_THREADS", "").strip()
    if not raw:
        return 1
    try:
        value = int(raw)
    except ValueError:
        _usage_fail(f"DRT_THREADS must be an integer, got {raw!r}")
    if value < 1:
        _usage_fail(f"DRT_THREADS must be >= 1, got {value}")
    return value


def _read_text(path: str, inputs: dict[str, str]) -> str:
    try:
        data = Path(path).read_bytes()
    except OSError as e:
        _usage_fail(str(e))
    inputs[path] = hashlib.sha256(data).hexdigest()
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError:
        _usage_fail(f"{path}: not valid UTF-8 text")


def _load_diffset(path: str, inputs: dict[str, str]) -> CandidateSet:
    try:
        return parse_diffset(_read_text(path, inputs))
    except ValueError as e:
        _usage_fail(f"{path}: {e}")


def _load_tournament(path: str, inputs: dict[str, str]) -> Tournament:
    try:
        return parse_tournament(_read_text(path, inputs))
    except ValueError as e:
        _usage_fail(f"{path}: {e}")


def _write_output(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _emit(command: str, inputs: dict[str, str], results: dict,
          started: float, pretty: bool) -> None:
    report = {
        "schema_version": 1,
        "tool_version": __version__,
        "command": command,
        "inputs": inputs,
        "results": results,
        "wall_time_ms": round((time.perf_counter() - started) * 1000, 3),
    }
    if pretty:
        lines: list[tuple[str, object]] = []
        _flatten("", report, lines)
        width = max(len(k) for k, _ in lines)
        for key, value in lines:
            print(f"{key:<{width}}  {value}")
    else:
        print(json.dumps(report, sort_keys=True))


def _flatten(prefix: str, obj, lines: list[tuple[str, object]]) -> None:
    if isinstance(obj, dict):
        if not obj:
            lines.append((prefix.rstrip("."), "{}"))
        for key in sorted(obj):
            _flatten(f"{prefix}{key}.", obj[key], lines)
    elif isinstance(obj, (list, tuple)):
        lines.append((prefix.rstrip("."), " ".join(str(v) for v in obj)))
    else:
        lines.append((prefix.rstrip("."), obj))


def _verdict_dict(v) -> dict:
    return {"ok": v.ok, "reason": v.reason}


def _rank_dict(t: Tournament, r: RankingResult) -> dict:
    total = t.n * (t.n - 1) // 2
    return {
        "n": t.n,
        "value": r.value,
        "ratio": r.value / total if total else None,
        "method": r.method,
        "ranking": list(r.ranking),
        "work": r.work,
    }


def _mixing_dict(t: Tournament, report) -> dict:
    worst = None
    if report.worst_pair is not None:
        worst = {
            "A": mask_vertices(report.worst_pair[0]),
            "B": mask_vertices(report.worst_pair[1]),
        }
    return {
        "n": t.n,
        "method": report.method,
        "pairs_checked": report.pairs_checked,
        "violations": report.violations,
        "max_normalized": {
            "numerator": report.max_numerator,
            "denominator": report.max_denominator,
            "value": report.max_normalized,
        },
        "worst_pair": worst,
    }


# ---------------------------------------------------------------- diffset


def cmd_diffset_paley(args) -> int:
    try:
        field = make_field(args.p, args.k)
        d = paley_set(field)
    except ValueError as e:
        _usage_fail(str(e))
    _write_output(format_diffset(d), args.output)
    return 0


def cmd_diffset_verify(args) -> int:
    started = time.perf_counter()
    inputs: dict[str, str] = {}
    d = _load_diffset(args.file, inputs)
    verdict = is_shds(d)
    results = {
        "group": format_group_spec(d.group.moduli),
        "n": d.group.order,
        "size": len(d.elements),
        "indices": list(d.indices),
        "shds": _verdict_dict(verdict),
    }
    _emit("diffset verify", inputs, results, started, args.pretty)
    return 0 if verdict.ok else 1


def cmd_diffset_classify(args) -> int:
    started = time.perf_counter()
    inputs: dict[str, str] = {}
    sets = [_load_diffset(path, inputs) for path in args.files]
    groups = {format_group_spec(d.group.moduli) for d in sets}
    if len(groups) > 1:
        _usage_fail(f"all sets must share one group, got {sorted(groups)}")
    try:
        classes = classify(sets, budget=args.budget)
    except ValueError as e:
        _usage_fail(str(e))
    results = {
        "files": list(args.files),
        "class_count": len(classes),
        "classes": classes,
    }
    _emit("diffset classify", inputs, results, started, args.pretty)
    return 0


# ---------------------------------------------------------------- tourney


def cmd_tourney_cayley(args) -> int:
    inputs: dict[str, str] = {}
    d = _load_diffset(args.file, inputs)
    try:
        t = cayley_tournament(d)
    except ValueError as e:
        print(f"drt: {e}", file=sys.stderr)
        return 1
    _write_output(format_tournament(t), args.output)
    return 0


def cmd_tourney_verify(args) -> int:
    started = time.perf_counter()
    inputs: dict[str, str] = {}
    t = _load_tournament(args.file, inputs)
    try:
        dr = is_doubly_regular(t)
    except ValueError as e:
        _usage_fail(str(e))
    gram = verify_gram_identities(t)
    results = {
        "n": t.n,
        "doubly_regular": _verdict_dict(dr),
        "gram": _verdict_dict(gram),
    }
    _emit("tourney verify", inputs, results, started, args.pretty)
    return 0 if dr.ok and gram.ok else 1


def cmd_tourney_random(args) -> int:
    try:
        t = random_tournament(args.n, args.seed)
    except ValueError as e:
        _usage_fail(str(e))
    _write_output(format_tournament(t), args.output)
    return 0


# ---------------------------------------------------------------- rank


def cmd_rank_exact(args) -> int:
    started = time.perf_counter()
    inputs: dict[str, str] = {}
    t = _load_tournament(args.file, inputs)
    try:
        r = exact_max_consistent(t, cap=args.cap)
    except ValueError as e:
        _usage_fail(str(e))
    _emit("rank exact", inputs, _rank_dict(t, r), started, args.pretty)
    return 0


def cmd_rank_heuristic(args) -> int:
    started = time.perf_counter()
    inputs: dict[str, str] = {}
    t = _load_tournament(args.file, inputs)
    r = heuristic_rank(t, strategy=args.strategy)
    _emit("rank heuristic", inputs, _rank_dict(t, r), started, args.pretty)
    return 0


def cmd_rank_baseline(args) -> int:
    started = time.perf_counter()
    try:
        summary = random_baseline(args.n, args.trials, args.seed, cap=args.cap)
    except ValueError as e:
        _usage_fail(str(e))
    results = {
        "n": summary.n,
        "trials": summary.trials,
        "seed": summary.seed,
        "min_value": summary.min_value,
        "max_value": summary.max_value,
        "min_ratio": summary.min_ratio,
        "mean_ratio": summary.mean_ratio,
        "max_ratio": summary.max_ratio,
        "max_epsilon": summary.max_epsilon,
    }
    _emit("rank baseline", {}, results, started, args.pretty)
    return 0


# ---------------------------------------------------------------- discrepancy


def cmd_discrepancy_sweep(args) -> int:
    started = time.perf_counter()
    inputs: dict[str, str] = {}
    t = _load_tournament(args.file, inputs)
    try:
        report = exhaustive_mixing_check(t, cap=args.cap)
    except ValueError as e:
        _usage_fail(str(e))
    _emit("discrepancy sweep", inputs, _mixing_dict(t, report), started, args.pretty)
    return 1 if report.violations else 0


def cmd_discrepancy_sample(args) -> int:
    started = time.perf_counter()
    inputs: dict[str, str] = {}
    t = _load_tournament(args.file, inputs)
    try:
        report = sampled_mixing_check(
            t, args.samples, args.seed, threads=_threads_from_env()
        )
    except ValueError as e:
        _usage_fail(str(e))
    results = _mixing_dict(t, report)
    results["seed"] = args.seed
    _emit("discrepancy sample", inputs, results, started, args.pretty)
    return 1 if report.violations else 0


def cmd_discrepancy_bounds(args) -> int:
    started = time.perf_counter()
    inputs: dict[str, str] = {}
    t = _load_tournament(args.file, inputs)
    if t.n <= args.cap:
        r = exact_max_consistent(t, cap=args.cap)
    else:
        r = heuristic_rank(t, strategy="local-search")
    c_value = args.c_value if args.c_value is not None else r.value
    gap = check_sigma_gap(t, r.ranking)
    try:
        theorem = check_theorem_bound(t, c_value)
    except ValueError as e:
        _usage_fail(str(e))
    results = {
        "n": t.n,
        "c_value": c_value,
        "c_method": "given" if args.c_value is not None else r.method,
        "sigma_gap": {"gap": gap.gap, "bound": gap.bound, "holds": gap.holds},
        "theorem": {
            "lhs": theorem.lhs,
            "rhs": theorem.rhs,
            "holds": theorem.holds,
            "vacuous": theorem.vacuous,
        },
    }
    _emit("discrepancy bounds", inputs, results, started, args.pretty)
    return 0 if gap.holds and theorem.holds else 1


# ---------------------------------------------------------------- pipeline


def cmd_pipeline_paley(args) -> int:
    started = time.perf_counter()
    try:
        field = make_field(args.p, args.k)
        d = paley_set(field)
    except ValueError as e:
        _usage_fail(str(e))
    n = field.order
    shds = is_shds(d)
    ok = shds.ok
    results: dict = {
        "group": format_group_spec(d.group.moduli),
        "q": n,
        "n": n,
        "shds": _verdict_dict(shds),
    }
    t = cayley_tournament(d)
    dr = is_doubly_regular(t)
    gram = verify_gram_identities(t)
    ok = ok and dr.ok and gram.ok
    results["doubly_regular"] = _verdict_dict(dr)
    results["gram"] = _verdict_dict(gram)

    if n <= args.rank_cap:
        r = exact_max_consistent(t)
        results["rank"] = _rank_dict(t, r)
    else:
        r = heuristic_rank(t, strategy="local-search")
        results["rank"] = {
            "skipped": f"exact ranking skipped (n = {n} > cap {args.rank_cap})",
            "lower_bound": _rank_dict(t, r),
        }

    if n <= args.sweep_cap:
        mixing = exhaustive_mixing_check(t, cap=args.sweep_cap)
    else:
        mixing = sampled_mixing_check(
            t, args.samples, args.seed, threads=_threads_from_env()
        )
    ok = ok and mixing.violations == 0
    results["mixing"] = _mixing_dict(t, mixing)

    gap = check_sigma_gap(t, r.ranking)
    theorem = check_theorem_bound(t, r.value)
    ok = ok and gap.holds and theorem.holds
    results["sigma_gap"] = {"gap": gap.gap, "bound": gap.bound, "holds": gap.holds}
    results["theorem"] = {
        "lhs": theorem.lhs,
        "rhs": theorem.rhs,
        "holds": theorem.holds,
        "vacuous": theorem.vacuous,
    }
    _emit("pipeline paley", {}, results, started, args.pretty)
    return 0 if ok else 1


# ---------------------------------------------------------------- parser


def _add_pretty(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--pretty", action="store_true", help="render the report as aligned text"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="drt",
        description="doubly regular tournaments: construction, verification,"
        " ranking, and mixing checks",
    )
    parser.add_argument(
        "--version", action="version", version=f"drt {__version__}"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    diffset = sub.add_parser("diffset", help="difference-set construction and checks")
    dsub = diffset.add_subparsers(dest="subcommand", required=True)
    p = dsub.add_parser("paley", help="emit the Paley set of F_{p^k} as a diffset file")
    p.add_argument("--p", type=int, required=True, help="prime characteristic")
    p.add_argument("--k", type=int, default=1, help="extension degree (default 1)")
    p.add_argument("-o", "--output", help="write here instead of stdout")
    p.set_defaults(func=cmd_diffset_paley)
    p = dsub.add_parser("verify", help="full skew-difference-set check")
    p.add_argument("file")
    _add_pretty(p)
    p.set_defaults(func=cmd_diffset_verify)
    p = dsub.add_parser("classify", help="group diffset files into equivalence classes")
    p.add_argument("files", nargs="+")
    p.add_argument(
        "--budget", type=int, default=10_000_000,
        help="refuse automorphism groups larger than this (default 1e7)",
    )
    _add_pretty(p)
    p.set_defaults(func=cmd_diffset_classify)

    tourney = sub.add_parser("tourney", help="tournament construction and checks")
    tsub = tourney.add_subparsers(dest="subcommand", required=True)
    p = tsub.add_parser("cayley", help="build the Cayley tournament of a skew set")
    p.add_argument("file", help="diffset file")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_tourney_cayley)
    p = tsub.add_parser("verify", help="double regularity and product identities")
    p.add_argument("file", help="tournament file")
    _add_pretty(p)
    p.set_defaults(func=cmd_tourney_verify)
    p = tsub.add_parser("random", help="seeded uniform random tournament")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_tourney_random)

    rank = sub.add_parser("rank", help="maximum-consistency rankings")
    rsub = rank.add_subparsers(dest="subcommand", required=True)
    p = rsub.add_parser("exact", help="exact optimum by subset DP")
    p.add_argument("file", help="tournament file")
    p.add_argument("--cap", type=int, default=DP_CAP)
    _add_pretty(p)
    p.set_defaults(func=cmd_rank_exact)
    p = rsub.add_parser("heuristic", help="out-degree order or local search")
    p.add_argument("file", help="tournament file")
    p.add_argument(
        "--strategy", choices=["out-degree", "local-search"], default="local-search"
    )
    _add_pretty(p)
    p.set_defaults(func=cmd_rank_heuristic)
    p = rsub.add_parser("baseline", help="exact optima of seeded random tournaments")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cap", type=int, default=DP_CAP)
    _add_pretty(p)
    p.set_defaults(func=cmd_rank_baseline)

    disc = sub.add_parser("discrepancy", help="subset mixing and global bounds")
    csub = disc.add_subparsers(dest="subcommand", required=True)
    p = csub.add_parser("sweep", help="every (A, B, neither) assignment")
    p.add_argument("file", help="tournament file")
    p.add_argument("--cap", type=int, default=SWEEP_CAP)
    _add_pretty(p)
    p.set_defaults(func=cmd_discrepancy_sweep)
    p = csub.add_parser("sample", help="seeded random assignments")
    p.add_argument("file", help="tournament file")
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    _add_pretty(p)
    p.set_defaults(func=cmd_discrepancy_sample)
    p = csub.add_parser("bounds", help="ranking-gap and maximum-consistency bounds")
    p.add_argument("file", help="tournament file")
    p.add_argument("--c-value", type=int, default=None,
                   help="use this C(T) value (or lower bound) instead of computing one")
    p.add_argument("--cap", type=int, default=DP_CAP,
                   help="largest n ranked exactly (default 24)")
    _add_pretty(p)
    p.set_defaults(func=cmd_discrepancy_bounds)

    pipe = sub.add_parser("pipeline", help="end-to-end construction and verification")
    psub = pipe.add_subparsers(dest="subcommand", required=True)
    p = psub.add_parser("paley", help="Paley set -> Cayley tournament -> all checks")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--samples", type=int, default=PIPELINE_SAMPLES,
                   help="sampled mixing checks above the sweep cap (default 20000)")
    p.add_argument("--rank-cap", type=int, default=PIPELINE_RANK_CAP,
                   help="largest n ranked exactly in the pipeline (default 20)")
    p.add_argument("--sweep-cap", type=int, default=SWEEP_CAP)
    p.add_argument("--seed", type=int, default=0)
    _add_pretty(p)
    p.set_defaults(func=cmd_pipeline_paley)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
