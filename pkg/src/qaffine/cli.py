"""Command line: ``qaffine <module> <op> [flags]``.

Exit codes: 0 pass, 1 mismatch, 2 usage error, 3 resource guard.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .cartan import UnknownCartanType, cartan_data
from .workspace import Workspace, dumps

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3


class UsageError(ValueError):
    pass


def _json_arg(text: str, what: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise UsageError(f"{what}: not valid JSON ({e.msg})") from None


def _emit(obj, out=None) -> None:
    text = dumps(obj)
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


# handlers

def cmd_qchar(a, ws: Workspace) -> int:
    from .qchar import fm_fundamental

    cd = cartan_data(a.type)
    cd.check_node(a.node)
    budget = a.budget or ws.config()["fm_budget"]
    params = {"cartan": cd.content_hash(), "node": a.node, "shift": a.shift, "budget": budget}
    payload, _ = ws.cached("qchar", params, lambda: fm_fundamental(cd, a.node, a.shift, budget).to_json())
    if a.format == "text":
        from .laurent import Laurent
        print(Laurent.from_json(payload["polynomial"]))
    else:
        _emit(payload)
    return EXIT_OK


def cmd_cluster(a, ws: Workspace) -> int:
    from .cluster import Seed, enumerate_seeds, paper_seed

    if a.seed_file:
        seed = Seed.from_json(json.loads(Path(a.seed_file).read_text()))
    else:
        seed = paper_seed(a.seed, a.length)
    en = enumerate_seeds(seed, a.budget or ws.config()["cluster_budget"])
    _emit(en.to_json())
    return EXIT_OK if en.finite else EXIT_RESOURCE


def cmd_relations(a, ws: Workspace) -> int:
    from .qchar import fm_fundamental
    from .relations import qq_star_relation, qq_system, tq_relation

    cd = cartan_data(a.type)
    cd.check_node(a.node)
    if a.op == "tq":
        rel = tq_relation(cd, fm_fundamental(cd, a.node, a.shift), a.node, a.shift)
    elif a.op == "qq":
        rel = qq_system(cd, a.node, a.shift)
    else:
        rel = qq_star_relation(cd, a.node, a.shift)
    if a.omit_weights:
        rel = rel.omit_weights()
    if a.format == "latex":
        print(rel.to_latex())
    else:
        _emit(rel.to_json())
    return EXIT_OK


def _param(text: str, rank: int):
    from .truncation import TruncationParam

    roots = _json_arg(text, "--Z")
    if not isinstance(roots, list) or len(roots) != rank:
        raise UsageError(f"--Z needs one list of exponents per node ({rank} nodes)")
    return TruncationParam.from_roots(roots)


def _tables(path):
    if not path:
        return None
    return {int(k): v for k, v in json.loads(Path(path).read_text()).items()}


def cmd_truncate(a, ws: Workspace) -> int:
    from .laurent import PsiWeight
    from .truncation import conjecture_enumerate, shortest_chains

    cd = cartan_data(a.type)
    Z = _param(a.Z, cd.rank)
    tables = _tables(a.tables)
    if a.op == "enumerate":
        _emit({"Z": Z.to_json(), "entries": [e.to_json() for e in conjecture_enumerate(cd, Z, tables)]})
        return EXIT_OK
    if a.target is not None:
        target = _param(a.target, cd.rank).psi
    elif a.target_psi is not None:
        target = PsiWeight([((i, r), e) for i, r, e in _json_arg(a.target_psi, "--target-psi")])
    else:
        raise UsageError("chain needs --target or --target-psi")
    depth = ws.config()["chain_depth"] if a.max_depth is None else a.max_depth
    chains = shortest_chains(cd, Z, target, depth, tables)
    _emit({"Z": Z.to_json(), "chains": [c.to_json() for c in chains]})
    return EXIT_OK if chains else EXIT_MISMATCH


def cmd_qgroth(a, ws: Workspace) -> int:
    from .qgroth import canonical_class, standard_in_canonical

    try:
        shifts = [int(x) for x in a.shifts.split(",") if x.strip()]
    except ValueError:
        raise UsageError("--shifts takes comma separated integers") from None
    if not shifts:
        raise UsageError("--shifts must be nonempty")
    L = canonical_class(shifts)
    if a.format == "text":
        print(L)
    else:
        p = standard_in_canonical(shifts)
        _emit({"shifts": sorted(shifts), "canonical": L.to_json(),
               "standard_in_canonical": [{"shifts": list(k), "coef": [[e, v] for e, v in sorted(c.items())]}
                                         for k, c in sorted(p.items())]})
    return EXIT_OK


def cmd_xxz(a, ws: Workspace) -> int:
    from .xxz import ChainSpec, fit_spectrum

    cfg = ws.config()
    try:
        q, u = complex(a.q.replace(" ", "")), complex(a.u.replace(" ", ""))
    except ValueError:
        raise UsageError("--q and --u take numbers such as 0.7+0.1j") from None
    spec = ChainSpec(N=a.N, q=q, u=u)
    fit = fit_spectrum(spec, seed=a.seed, tol=cfg["fit_tol"])
    _emit(fit.to_json(), a.json)
    res = fit.max_residuals()
    ok = res["commutativity"] < cfg["commutator_tol"] and res["tq"] < cfg["fit_tol"] and res["bethe"] < cfg["fit_tol"]
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_repro(a, ws: Workspace) -> int:
    from .scenarios import list_scenarios, run_many

    names = [s["name"] for s in list_scenarios()] if a.all else a.names
    if not a.all and not names:
        names = []
    reports = run_many(names, ws.config(), ws)
    summary = {"scenarios": reports, "passed": all(r["passed"] for r in reports)}
    _emit(summary, a.out)
    for r in reports:
        if not r["passed"]:
            bad = [k for k, v in r["checks"].items() if not v]
            print(f"mismatch in {r['name']}: {', '.join(bad)}", file=sys.stderr)
    return EXIT_OK if summary["passed"] else EXIT_MISMATCH


def cmd_scenarios(a, ws: Workspace) -> int:
    from .scenarios import list_scenarios

    _emit(list_scenarios())
    return EXIT_OK


def cmd_cache(a, ws: Workspace) -> int:
    _emit({"freed_bytes": ws.cache_gc(a.age)})
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qaffine", description="q-characters, clusters, functional relations, truncations")
    p.add_argument("--home", help="workspace root (default: $QAFFINE_HOME or ~/.qaffine)")
    sub = p.add_subparsers(dest="module", required=True)

    s = sub.add_parser("qchar", help="fundamental q-character by the FM algorithm")
    s.add_argument("--type", required=True)
    s.add_argument("--node", type=int, required=True)
    s.add_argument("--shift", type=int, default=0)
    s.add_argument("--budget", type=int)
    s.add_argument("--format", choices=("json", "text"), default="json")
    s.set_defaults(fn=cmd_qchar)

    s = sub.add_parser("cluster").add_subparsers(dest="op", required=True).add_parser("enumerate")
    s.add_argument("--seed", default="a2")
    s.add_argument("--seed-file")
    s.add_argument("--length", type=int, default=3)
    s.add_argument("--budget", type=int)
    s.set_defaults(fn=cmd_cluster)

    rel = sub.add_parser("relations").add_subparsers(dest="op", required=True)
    for op in ("tq", "qq", "qqstar"):
        s = rel.add_parser(op)
        s.add_argument("--type", required=True)
        s.add_argument("--node", type=int, default=1)
        s.add_argument("--shift", type=int, default=0)
        s.add_argument("--format", choices=("json", "latex"), default="json")
        s.add_argument("--omit-weights", action="store_true")
        s.set_defaults(fn=cmd_relations)

    tr = sub.add_parser("truncate").add_subparsers(dest="op", required=True)
    for op in ("enumerate", "chain"):
        s = tr.add_parser(op)
        s.add_argument("--type", default="B2")
        s.add_argument("--Z", required=True, help='per-node root exponents, e.g. "[[], [0]]"')
        s.add_argument("--tables", help="JSON file of chi tables for unsupported types")
        if op == "chain":
            s.add_argument("--target", help="target truncation parameter, same format as --Z")
            s.add_argument("--target-psi", help="target l-weight as [[i, r, e], ...]")
            s.add_argument("--max-depth", type=int)
        s.set_defaults(fn=cmd_truncate)

    s = sub.add_parser("qgroth").add_subparsers(dest="op", required=True).add_parser("canonical")
    s.add_argument("--shifts", required=True)
    s.add_argument("--format", choices=("json", "text"), default="json")
    s.set_defaults(fn=cmd_qgroth)

    s = sub.add_parser("xxz").add_subparsers(dest="op", required=True).add_parser("fit")
    s.add_argument("--N", type=int, required=True)
    s.add_argument("--u", default="0.5")
    s.add_argument("--q", default="0.7+0.1j")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--json", help="write the report here instead of stdout")
    s.set_defaults(fn=cmd_xxz)

    s = sub.add_parser("repro", help="re-run reproduction scenarios")
    s.add_argument("--all", action="store_true")
    s.add_argument("names", nargs="*")
    s.add_argument("--out")
    s.set_defaults(fn=cmd_repro)

    s = sub.add_parser("scenarios").add_subparsers(dest="op", required=True).add_parser("list")
    s.set_defaults(fn=cmd_scenarios)

    s = sub.add_parser("cache").add_subparsers(dest="op", required=True).add_parser("gc")
    s.add_argument("--age", type=float, default=0.0, help="seconds; 0 frees everything")
    s.set_defaults(fn=cmd_cache)
    return p


def main(argv=None) -> int:
    from .qchar import NonGeneralPosition, NonTermination
    from .scenarios import ScenarioMismatch
    from .truncation import UnsupportedType

    parser = build_parser()
    try:
        a = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    ws = Workspace(a.home)
    try:
        return a.fn(a, ws)
    except (MemoryError, NonTermination) as e:
        print(f"resource guard: {e}", file=sys.stderr)
        return EXIT_RESOURCE
    except ScenarioMismatch as e:
        print(f"mismatch: {e}", file=sys.stderr)
        return EXIT_MISMATCH
    except KeyError as e:
        print(f"error: {e.args[0] if e.args else e}", file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, UnknownCartanType, UnsupportedType, NonGeneralPosition, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
