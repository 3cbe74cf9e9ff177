"""Command-line surface: reduce / svp / cvp / cover.

Exit codes: 0 ok, 2 parse error, 3 rank deficiency, 4 solver failed,
5 resource guard.  Every JSON report embeds the full parameter set, the
pinned constants in play and the content hash of the instance file, so
(instance, config) determines the output bytes.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path

from . import covering
from .core import NormKind, lp_norm
from .cvp import CvpQuery, approx_cvp_high, approx_cvp_low, approx_svp_low
from .errors import (
    DimensionTooLarge,
    GroundSetTooLarge,
    ListCapExceeded,
    LpSieveError,
    ParseError,
    RankDeficient,
    RejectionBudgetExceeded,
    SolverFailed,
)
from .instances import emit_instance, load_instance
from .oracle import exact_cvp, exact_svp
from .reduction import LllParams, lll_reduce
from .svp import SvpQuery, approx_svp

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_RANK = 3
EXIT_SOLVER = 4
EXIT_GUARD = 5


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(prog="lpsieve", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", default="2", help="norm index: 1, 1.5, 2, inf, ...")
    common.add_argument("--eps", type=float, default=0.1)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--retries", type=int, default=8)
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--oracle", action="store_true", help="append oracle value and ratio (n <= 8)")
    common.add_argument("--pretty", action="store_true", help="human-readable single-run output")
    common.add_argument("--cap-samples", type=int, default=1 << 16)
    common.add_argument("--cap-list", type=int, default=4096)
    common.add_argument("--output", type=Path, default=None)

    p_red = sub.add_parser("reduce", parents=[common], help="LLL-reduce an instance file")
    p_red.add_argument("instance", type=Path)
    p_red.add_argument("--delta", default="3/4")

    p_svp = sub.add_parser("svp", parents=[common], help="approximate shortest vector")
    p_svp.add_argument("instance", type=Path)

    p_cvp = sub.add_parser("cvp", parents=[common], help="approximate closest vector")
    p_cvp.add_argument("instance", type=Path, help="instance file or directory (batch mode)")

    p_cov = sub.add_parser("cover", parents=[common], help="covering-number tables")
    p_cov.add_argument("--mode", required=True,
                       choices=["phi", "exponent-linf", "exponent-l1", "a-eps", "grid-cover"])
    p_cov.add_argument("--a", default=None, help="comma-separated scale values")
    p_cov.add_argument("--n", type=int, default=2)

    args = ap.parse_args(argv)
    try:
        return _dispatch(args)
    except ParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except RankDeficient as e:
        print(f"rank error: {e}", file=sys.stderr)
        return EXIT_RANK
    except SolverFailed as e:
        print(f"solver failed: {e}", file=sys.stderr)
        return EXIT_SOLVER
    except (GroundSetTooLarge, ListCapExceeded, RejectionBudgetExceeded, DimensionTooLarge) as e:
        print(f"resource guard: {e}", file=sys.stderr)
        return EXIT_GUARD


def _dispatch(args) -> int:
    if args.command == "reduce":
        return _cmd_reduce(args)
    if args.command == "svp":
        return _cmd_svp(args)
    if args.command == "cvp":
        return _cmd_cvp(args)
    if args.command == "cover":
        return _cmd_cover(args)
    raise AssertionError(args.command)


def _emit(args, text: str) -> None:
    if args.output is not None:
        args.output.write_text(text)
    else:
        sys.stdout.write(text)


def cmd_reduce(instance_path, delta="3/4"):
    inst = load_instance(instance_path)
    reduced = lll_reduce(inst.basis, LllParams(Fraction(delta)))
    return emit_instance(reduced, inst.target)


def _cmd_reduce(args) -> int:
    _emit(args, cmd_reduce(args.instance, args.delta))
    return EXIT_OK


def _report_json(report, inst, args, p: NormKind, kind: str) -> dict:
    doc = {
        "command": kind,
        "instance_hash": inst.content_hash,
        "p": str(p),
        "epsilon": args.eps,
        "seed": args.seed,
        "retries": args.retries,
        "caps": {"samples": args.cap_samples, "list": args.cap_list},
        "coeffs": list(report.best.coeffs),
        "coords": [_frac_str(x) for x in report.best.coords],
        "norm": report.achieved_norm,
        "mu_used": _frac_str(report.mu_used),
        "n_samples": report.n_samples,
        "retry_index": report.retry_index,
        "cap_bound": report.cap_bound,
        "extras": _jsonable(report.extras),
    }
    return doc


def _frac_str(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in sorted(obj.items())}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, Fraction):
        return _frac_str(obj)
    return obj


def _dump(doc, pretty: bool) -> str:
    if pretty:
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"
    return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"


def cmd_svp(instance_path, p="inf", eps=0.1, seed=0, retries=8,
            cap_samples=1 << 16, cap_list=4096, oracle=False):
    inst = load_instance(instance_path)
    pk = NormKind(p)
    if pk.is_inf or pk.p >= 2:
        q = SvpQuery(basis=inst.basis, p=pk, epsilon=eps, retries=retries, seed=seed,
                     cap_samples=cap_samples, cap_list=cap_list)
        report = approx_svp(q)
    else:
        report = approx_svp_low(inst.basis, pk, epsilon=eps, retries=retries, seed=seed,
                                cap_samples=cap_samples, cap_list=cap_list)
    doc = {
        "report": report,
        "instance": inst,
    }
    if oracle and inst.basis.dim <= 8:
        ans = exact_svp(inst.basis, pk)
        doc["oracle_value"] = float(ans.value)
        doc["ratio"] = report.achieved_norm / float(ans.value) if float(ans.value) else None
    return doc


def _cmd_svp(args) -> int:
    doc = cmd_svp(args.instance, args.p, args.eps, args.seed, args.retries,
                  args.cap_samples, args.cap_list, args.oracle)
    report, inst = doc["report"], doc["instance"]
    out = _report_json(report, inst, args, NormKind(args.p), "svp")
    if "oracle_value" in doc:
        out["oracle_value"] = doc["oracle_value"]
        out["ratio"] = doc["ratio"]
    _emit(args, _dump(out, args.pretty))
    return EXIT_OK


def _solve_cvp_one(path, args):
    inst = load_instance(path)
    if inst.target is None:
        raise ParseError(f"{path}: missing target line 't: ...'")
    pk = NormKind(args.p)
    q = CvpQuery(basis=inst.basis, target=inst.target, p=pk, epsilon=args.eps,
                 retries=args.retries, seed=args.seed,
                 cap_samples=args.cap_samples, cap_list=args.cap_list)
    if pk.is_inf or pk.p >= 2:
        report = approx_cvp_high(q)
    else:
        report = approx_cvp_low(q)
    out = _report_json(report, inst, args, pk, "cvp")
    out["instance"] = path.name
    if report.extras.get("a_eps") is not None:
        out["a_eps"] = report.extras["a_eps"]
    if args.oracle and inst.basis.dim <= 8:
        ans = exact_cvp(inst.basis, inst.target, pk)
        val = float(ans.value)
        out["oracle_value"] = val
        out["ratio"] = (report.achieved_norm / val) if val else None
    return out


def _cmd_cvp(args) -> int:
    path = args.instance
    if path.is_dir():
        files = sorted(path.glob("*.txt")) + sorted(path.glob("*.lat"))
        if args.jobs > 1:
            with ProcessPoolExecutor(max_workers=args.jobs) as ex:
                docs = list(ex.map(_solve_cvp_one, files, [args] * len(files)))
        else:
            docs = [_solve_cvp_one(f, args) for f in files]
        _emit(args, "".join(_dump(d, False) for d in docs))
        return EXIT_OK
    out = _solve_cvp_one(path, args)
    _emit(args, _dump(out, args.pretty))
    return EXIT_OK


def _cmd_cover(args) -> int:
    mode = args.mode
    if mode == "phi":
        avals = _avals(args)
        rows = [{"a": a, "phi": covering.solve_phi(a)} for a in avals]
    elif mode == "exponent-linf":
        avals = _avals(args)
        rows = [{"a": a, "exponent": covering.covering_exponent_linf(a)} for a in avals]
    elif mode == "exponent-l1":
        avals = _avals(args)
        rows = [{"c": a, "exponent": covering.covering_exponent_l1(a)} for a in avals]
    elif mode == "a-eps":
        rows = [{
            "eps": args.eps,
            "a_eps_linf": covering.solve_a_eps_linf(args.eps),
            "a_eps_l1": covering.solve_a_eps_l1(args.eps),
        }]
    elif mode == "grid-cover":
        a = float(args.a) if args.a else 1.0
        cover = covering.greedy_grid_cover(args.n, a)
        ok = all(cover.covers_point(p) for p in covering.grid_ground_set(args.n))
        rows = [{
            "n": args.n, "a": a, "centers": len(cover.centers),
            "grid_step": _frac_str(cover.grid_step), "verified": ok,
            "center_list": [[_frac_str(x) for x in c] for c in cover.centers],
        }]
    else:
        raise AssertionError(mode)
    _emit(args, "".join(_dump(r, args.pretty) for r in rows))
    return EXIT_OK


def _avals(args):
    if args.a is None:
        return [1.0, 2.0, 4.0, 8.0]
    return [float(tok) for tok in str(args.a).split(",") if tok.strip()]


if __name__ == "__main__":
    sys.exit(main())
