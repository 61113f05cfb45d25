"""Command-line front end: batch constructions, classification, and the
verification battery.  All artifacts are deterministic for identical flags;
seeds steer only probe generation, never constructions.

Exit codes: 0 all checks pass, 1 a verification failed, 2 configuration or
input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import chains, compactsets, forcing, gmunu, graphs, henson, ordercore
from .qline import Window, format_rat

OK, FAIL, USAGE = 0, 1, 2


class ConfigError(ValueError):
    pass


def _parse_window(text: str, denom_bound: int) -> Window:
    try:
        lo_s, hi_s = text.split("..")
        return Window(Fraction(lo_s), Fraction(hi_s), denom_bound)
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"bad window {text!r}: {exc}") from exc


def _write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


# ---------------------------------------------------------------------------
# henson


def cmd_henson(args: argparse.Namespace) -> int:
    if args.n < 3:
        raise ConfigError("--n must be >= 3")
    if args.steps < 1:
        raise ConfigError("--steps must be >= 1")
    window = _parse_window(args.window, args.denom_bound)
    run = forcing.generic_run(args.n, args.steps, window, ceiling=args.ceiling)
    g = forcing.union_graph(run)
    sat = henson.saturation_report(g, args.n, size_bound=2, examples_cap=500)

    out = Path(args.out)
    _write(out / "run_log.jsonl", forcing.log_jsonl(run))
    _write(out / "union_graph.dot", graphs.to_dot(g))
    _write(out / "saturation_report.json", _dump(sat))

    ok, violations = forcing.is_condition(g, args.n)
    witness_ok = True
    for record in run.log:
        label = record["dense_set"]
        if label["type"] != "DHKm" or not record["applicable"]:
            continue
        H = frozenset(Fraction(h) for h in label["H"])
        K = frozenset(Fraction(k) for k in label["K"])
        w = Fraction(record["witness"])
        if w not in henson.witness_set(g, H, K):
            witness_ok = False
    summary = {
        "is_condition": ok,
        "violations": violations,
        "witnesses_verified": witness_ok,
        "coverage": run.coverage,
    }
    _write(out / "summary.json", _dump(summary))
    print(_dump(summary), end="")
    return OK if ok and witness_ok else FAIL


# ---------------------------------------------------------------------------
# chain


def _parse_target(text: str) -> ordercore.OrderTypeExpr:
    if text == "geoseq-order":
        return ordercore.OmegaStarLim()
    try:
        return ordercore.parse_expr(text)
    except ValueError:
        pass
    d = compactsets.parse_descriptor(text)
    if not compactsets.min_nonisolated(d):
        raise ConfigError(f"target {text!r} has an isolated minimum")
    return compactsets.order_type(d)


def cmd_chain(args: argparse.Namespace) -> int:
    target = _parse_target(args.target)
    out = Path(args.out)
    if args.family:
        schema = chains.FamilyChainSchema("", "")
        gen = chains.chain_from_positive_family(target, args.family, schema)
        prefix = [next(gen) for _ in range(args.length)]
        report = {
            "mode": "family",
            "family": args.family,
            "schema": schema.as_dict(),
            "elements": [
                gmunu.format_symbolic(e.carrier)
                if isinstance(e.carrier, gmunu.SymbolicSet)
                else henson.pqr_to_json(e.carrier)
                for e in prefix
            ],
            "symbolic_intersection_empty": True,
        }
        chain = [chains.ChainElement(None, ("empty",))] + list(reversed(prefix))
        probe = chains.probe_maximality(chain, probes=args.probes, seed=args.seed)
        # the bottom gap of a family chain always admits interpolants
        probe["expected_bottom_gap"] = True
    else:
        window = _parse_window(args.window, args.denom_bound)
        plan = chains.plan_chain(target, depth=args.depth, window=window)
        chain = chains.assemble_chain(plan)
        report = {
            "mode": "window",
            "target": ordercore.format_expr(target),
            "depth": args.depth,
            "window": {
                "lo": format_rat(plan.window.lo),
                "hi": format_rat(plan.window.hi),
                "denom_bound": plan.window.denom_bound,
            },
            "positions": [
                {"x": format_rat(x), "class_size": s} for x, s in plan.positions
            ],
            "elements": [
                {
                    "provenance": [str(t) for t in e.provenance],
                    "carrier": sorted(format_rat(q) for q in e.carrier),
                }
                for e in chain
            ],
            "sandwich_all": all(chains.sandwich_holds(plan, e) for e in chain),
        }
        probe = chains.probe_maximality(chain, probes=args.probes, seed=args.seed)
    _write(out / "chain_report.json", _dump(report))
    _write(out / "probe_report.json", _dump(probe))
    print(_dump({"elements": len(report["elements"]), "probe_clean": probe["clean"]}), end="")
    if args.family:
        return OK
    return OK if probe["clean"] and report.get("sandwich_all", True) else FAIL


# ---------------------------------------------------------------------------
# classify


def cmd_classify(args: argparse.Namespace) -> int:
    d = compactsets.parse_descriptor(args.descriptor)
    result = compactsets.classify(d)
    result["order_type"] = ordercore.format_expr(compactsets.order_type(d))
    print(_dump(result), end="")
    return OK


# ---------------------------------------------------------------------------
# gmunu


def cmd_gmunu(args: argparse.Namespace) -> int:
    report = gmunu.positive_family_check(args.family, samples=args.samples, seed=args.seed)
    if args.jumps_demo:
        cur = gmunu.SymbolicSet.build({}, gmunu.FULL)
        chain = [cur]
        pt_iter = ((i % 5, i // 5) for i in range(10_000))
        while len(chain) < args.jumps_demo:
            cur = cur.remove_point(next(pt_iter))
            chain.append(cur)
        chain.reverse()
        report["jumps_demo"] = gmunu.dense_jumps_check(chain)
    if args.out:
        _write(Path(args.out), _dump(report))
    print(_dump(report), end="")
    ok = report["all_passed"] and report.get("jumps_demo", {}).get("all_verified", True)
    return OK if ok else FAIL


# ---------------------------------------------------------------------------
# verify


def cmd_verify(args: argparse.Namespace) -> int:
    checks: list[tuple[str, bool]] = []

    run = forcing.generic_run(3, args.steps, Window(Fraction(-3), Fraction(3), 8))
    g = forcing.union_graph(run)
    ok, _ = forcing.is_condition(g, 3)
    checks.append(("forcing: union graph is a condition", ok))

    sat_ok = all(
        Fraction(r["witness"]) in henson.witness_set(
            g,
            frozenset(Fraction(h) for h in r["dense_set"]["H"]),
            frozenset(Fraction(k) for k in r["dense_set"]["K"]),
        )
        for r in run.log
        if r["dense_set"]["type"] == "DHKm" and r["applicable"]
    )
    checks.append(("forcing: all logged witnesses verified", sat_ok))

    ic = chains.interval_chain({1}, {1, 2, 3}, 3)
    checks.append(
        ("chains: interval chain endpoints and length",
         ic[0] == frozenset({1}) and ic[-1] == frozenset({1, 2, 3}) and len(ic) == 3)
    )

    plan = chains.plan_chain(ordercore.Fin(4))
    ch = chains.assemble_chain(plan)
    probe = chains.probe_maximality(ch, probes=500, seed=0)
    checks.append(("chains: assembled fin(4) chain probes clean", probe["clean"]))

    fam = gmunu.positive_family_check("gmunu-omega-omega", samples=200, seed=0)
    checks.append(("gmunu: positive family axioms", fam["all_passed"]))

    cat = compactsets.classify(compactsets.parse_descriptor("geoseq(0, 1, 1/2)"))
    checks.append(("compactsets: descending sequence is II_c", cat["class"] == "II_c"))

    all_ok = True
    for name, passed in checks:
        print(f"{'PASS' if passed else 'FAIL'}  {name}")
        all_ok = all_ok and passed
    return OK if all_ok else FAIL


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="chainforge")
    sub = p.add_subparsers(dest="command", required=True)

    h = sub.add_parser("henson", help="run the filter construction and report saturation")
    h.add_argument("--n", type=int, required=True)
    h.add_argument("--steps", type=int, required=True)
    h.add_argument("--window", default="-10..10")
    h.add_argument("--denom-bound", type=int, default=16)
    h.add_argument("--ceiling", type=int, default=None)
    h.add_argument("--out", default="henson-out")
    h.set_defaults(func=cmd_henson)

    c = sub.add_parser("chain", help="assemble and probe a chain for a target order type")
    c.add_argument("--target", required=True)
    c.add_argument("--depth", type=int, default=3)
    c.add_argument("--probes", type=int, default=10_000)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--window", default="0..1")
    c.add_argument("--denom-bound", type=int, default=16)
    c.add_argument("--family", default=None)
    c.add_argument("--length", type=int, default=12)
    c.add_argument("--out", default="chain-out")
    c.set_defaults(func=cmd_chain)

    k = sub.add_parser("classify", help="classify a compact-set descriptor")
    k.add_argument("descriptor")
    k.set_defaults(func=cmd_classify)

    m = sub.add_parser("gmunu", help="check a positive family; optional jumps demo")
    m.add_argument("--family", required=True)
    m.add_argument("--samples", type=int, default=1000)
    m.add_argument("--seed", type=int, default=0)
    m.add_argument("--jumps-demo", type=int, default=0)
    m.add_argument("--out", default=None)
    m.set_defaults(func=cmd_gmunu)

    v = sub.add_parser("verify", help="run the abbreviated invariant battery")
    v.add_argument("--steps", type=int, default=60)
    v.set_defaults(func=cmd_verify)

    return p


def main(argv=None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    # fold values that start with "-" (negative window bounds) into the flag
    folded: list[str] = []
    skip = False
    for i, tok in enumerate(argv):
        if skip:
            skip = False
            continue
        if tok == "--window" and i + 1 < len(argv):
            folded.append(f"--window={argv[i + 1]}")
            skip = True
        else:
            folded.append(tok)
    parser = build_parser()
    args = parser.parse_args(folded)
    try:
        return args.func(args)
    except (ConfigError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
