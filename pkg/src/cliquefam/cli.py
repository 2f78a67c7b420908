"""Command-line driver.

Every subcommand prints one JSON object
``{tool_version, subcommand, params, result}``.  Exit codes: 0 success,
2 validation error (message on stderr), 3 search budget exhausted (the
result is still printed, with ``exhaustive: false``).  ``repro`` prints a
plain table instead and exits 0 iff every row passes.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__, graph6
from . import graph as gc
from .acceptance import DEFAULT_SEED, format_row, run_criterion, select
from .bounds import all_bounds, ap_exact_value, classify_ap, def_bound
from .cliques import SetFamily, associated_r_graph, clique_masks, count_cliques
from .graph import Graph, bits
from .intersect import (
    IntersectSpec,
    common_intersection,
    intersection_spectrum,
    is_L_intersecting,
    is_nontrivial_t_intersecting,
    is_t_cover_free,
    is_t_intersecting,
)
from .search import SearchConfig, exact_cover_free, exact_phi, exact_psi
from .structure import (
    atoms,
    cover_families,
    hm_decomposition,
    max_sunflower_with_core,
    prune_low_degree,
    verify_quotient_claims,
)

EXIT_OK, EXIT_FAIL, EXIT_INVALID, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _sets(masks):
    return [list(bits(m)) for m in masks]


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"expected a comma-separated list of integers, got {text!r}") from None


def _need(args, *names):
    missing = [f"--{n.replace('_', '-')}" for n in names if getattr(args, n, None) is None]
    if missing:
        raise UsageError(f"{args.command}: missing {', '.join(missing)}")


def _spec(args) -> IntersectSpec:
    _need(args, "r", "L")
    return IntersectSpec.parse(args.r, args.L)


def _graph_json(g: Graph) -> dict:
    return {"n": g.n, "edges": [list(e) for e in g.edges()], "graph6": graph6.encode(g).decode()}


def _family_json(F: SetFamily) -> dict:
    return {"n": F.ground_n, "r": F.r, "m": len(F), "sets": [list(s) for s in F.sets()]}


def _read_input(args) -> Graph | SetFamily:
    """graph6 or SetFamily text, from --g6, --in PATH, or --in - (stdin)."""
    if getattr(args, "g6", None):
        return graph6.decode(args.g6.strip())
    if not getattr(args, "input", None):
        raise UsageError(f"{args.command}: give --in PATH or --g6 STRING")
    try:
        text = sys.stdin.read() if args.input == "-" else open(args.input, encoding="ascii").read()
    except (OSError, UnicodeDecodeError) as exc:
        raise UsageError(f"cannot read {args.input}: {exc}") from None
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise UsageError(f"{args.input} is empty")
    head = lines[0].split()
    if len(head) == 3 and all(tok.isdigit() for tok in head):
        return SetFamily.from_text(text)
    return graph6.decode(lines[0].strip())


def _family(args, obj) -> SetFamily:
    if isinstance(obj, SetFamily):
        if args.r is not None and args.r != obj.r:
            raise UsageError(f"--r {args.r} does not match the family's uniformity {obj.r}")
        return obj
    _need(args, "r")
    return associated_r_graph(obj, args.r, threads=args.threads)


def _as_graph(obj, what: str) -> Graph:
    if not isinstance(obj, Graph):
        raise UsageError(f"{what} needs a graph (graph6) input")
    return obj


# -- subcommands ----------------------------------------------------------


def cmd_construct(args):
    k = args.kind
    if k == "ap":
        _need(args, "n", "r", "L")
        out = gc.extremal_ap(args.n, args.r, _spec(args))
    elif k in ("hm", "ekr"):
        _need(args, "n", "r", "t")
        out = (gc.hm_extremal if k == "hm" else gc.ekr_extremal)(args.n, args.r, args.t)
    elif k == "turan":
        _need(args, "n", "t")
        out = gc.turan(args.n, args.t)
    elif k == "blown":
        _need(args, "m", "s", "d")
        out = gc.blown_turan(args.m, args.s, args.d)
    elif k == "complete":
        _need(args, "n")
        out = gc.complete(args.n)
    elif k == "l1":
        _need(args, "n", "r", "L")
        ell = _int_list(args.L)
        if len(ell) != 1:
            raise UsageError("--kind l1 takes a single value in --L")
        out = gc.single_intersection_construction(args.n, args.r, ell[0])
    elif k == "frankl":
        _need(args, "n", "r", "t")
        out = gc.frankl_family(args.n, args.r, args.t, args.variant)
    else:  # pragma: no cover - argparse restricts choices
        raise UsageError(f"unknown kind {k}")

    if args.format == "g6":
        if not isinstance(out, Graph):
            raise UsageError("--format g6 needs a graph; frankl builds a set family (use text or json)")
        return graph6.encode(out).decode()
    if args.format == "text":
        if isinstance(out, Graph):
            raise UsageError("--format text is for set families; use g6 or json")
        return out.to_text().rstrip("\n")
    return _graph_json(out) if isinstance(out, Graph) else _family_json(out)


def cmd_count(args):
    g = _as_graph(_read_input(args), "count")
    _need(args, "r")
    res = {"n": g.n, "r": args.r, "count": count_cliques(g, args.r, threads=args.threads)}
    if args.list:
        res["cliques"] = _sets(clique_masks(g, args.r, threads=args.threads))
    return res


def cmd_verify(args):
    F = _family(args, _read_input(args))
    prop = args.property
    if prop == "L-intersecting":
        chk = is_L_intersecting(F, _spec(args))
    else:
        _need(args, "t")
        if prop == "t-intersecting":
            chk = is_t_intersecting(F, args.t)
        elif prop == "nontrivial-t-intersecting":
            chk = is_nontrivial_t_intersecting(F, args.t)
        else:
            chk = is_t_cover_free(F, args.t)
    res = {"property": prop, "holds": chk.holds, "spectrum": sorted(intersection_spectrum(F)), "size": len(F)}
    if chk.witness is not None:
        res["witness"] = chk.witness
    if chk.note:
        res["note"] = chk.note
    if prop == "nontrivial-t-intersecting":
        res["common_intersection"] = list(bits(common_intersection(F)))
    return res


def cmd_analyze(args):
    obj = _read_input(args)
    F = _family(args, obj)
    res: dict = {"size": len(F)}
    if args.sunflower_core is not None:
        res["sunflower"] = max_sunflower_with_core(F, _int_list(args.sunflower_core)).as_dict()
    if args.atoms_d is not None:
        at = atoms(F, args.atoms_d)
        rep = {"atoms": at.atoms.sets(), "X0": list(bits(at.x0)), "X1": list(bits(at.x1))}
        if isinstance(obj, Graph):
            if at.atoms.cells and all(c.bit_count() == args.atoms_d for c in at.atoms.cells):
                rep["quotient"] = verify_quotient_claims(obj, F.r, args.atoms_d, at.atoms).as_dict()
            else:
                rep["quotient"] = None
        res["atoms"] = rep
    if args.prune_threshold is not None:
        g = _as_graph(obj, "--prune-threshold")
        pr = prune_low_degree(g, F.r, args.prune_threshold)
        res["prune"] = {
            "kept": list(pr.kept), "deleted": list(pr.deleted),
            "count_before": len(F), "count_after": count_cliques(pr.graph, F.r),
        }
    if args.cover_t is not None:
        g = _as_graph(obj, "--cover-t")
        cf = cover_families(g, F.r, args.cover_t, args.cover_threshold)
        res["cover_families"] = cf.as_dict()
        if args.hm_core is not None:
            res["hm_decomposition"] = hm_decomposition(g, F.r, args.cover_t, _int_list(args.hm_core)).as_dict()
    elif args.hm_core is not None:
        raise UsageError("--hm-core needs --cover-t")
    return res


def cmd_bounds(args):
    _need(args, "n", "r", "L")
    return {"bounds": all_bounds(args.n, args.r, _spec(args).L)}


def _search_config(args) -> SearchConfig:
    cfg = SearchConfig(threads=args.threads)
    if args.n_cap is not None:
        cfg.n_cap = args.n_cap
    if args.phi_cap is not None:
        cfg.phi_cap = args.phi_cap
    if args.budget is not None:
        cfg.budget = args.budget
    return cfg


def cmd_search(args):
    _need(args, "n", "r")
    cfg = _search_config(args)
    extra: dict = {}
    if args.mode == "psi":
        spec = _spec(args)
        res = exact_psi(args.n, args.r, spec, config=cfg)
        db = def_bound(args.n, args.r, spec.L)
        extra["def_bound"] = db.as_dict()
        if classify_ap(args.r, spec.L).is_ap:
            ap = ap_exact_value(args.n, args.r, spec.L)
            extra["ap_exact_value"] = ap.as_dict()
            extra["gap"] = res.value - ap.value
    elif args.mode == "phi":
        res = exact_phi(args.n, args.r, _spec(args), config=cfg)
    else:
        _need(args, "t")
        res = exact_cover_free(args.n, args.r, args.t, config=cfg)
    w = res.witness
    out = {
        "value": res.value,
        "exhaustive": res.exhaustive,
        "nodes_explored": res.nodes_explored,
        "elapsed": round(res.elapsed, 6),
        "witness": _graph_json(w) if isinstance(w, Graph) else _family_json(w),
        "extra": res.extra,
        **extra,
    }
    if args.emit_witness:
        try:
            if isinstance(w, Graph):
                graph6.write_file(args.emit_witness, [w])
            else:
                with open(args.emit_witness, "w", encoding="ascii") as fh:
                    w.write(fh)
        except OSError as exc:
            raise UsageError(f"cannot write {args.emit_witness}: {exc}") from None
    return out, (EXIT_OK if res.exhaustive else EXIT_BUDGET)


def cmd_repro(args) -> int:
    chosen = select(args.only)
    if not chosen:
        raise UsageError(f"--only {args.only!r} matches no criterion")
    all_ok = True
    for c in chosen:
        o = run_criterion(c, args.seed)
        all_ok &= o.ok
        print(format_row(o), flush=True)
    print(f"{sum(1 for _ in chosen)} rows, {'all pass' if all_ok else 'FAILURES'}")
    return EXIT_OK if all_ok else EXIT_FAIL


# -- parser ---------------------------------------------------------------


def _threads_default() -> int:
    try:
        return max(1, int(os.environ.get("CLIQUEFAM_THREADS", "1")))
    except ValueError:
        return 1


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--threads", type=_positive, default=_threads_default(),
                        help="worker processes (default: $CLIQUEFAM_THREADS or 1)")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)

    params = argparse.ArgumentParser(add_help=False)
    params.add_argument("--n", type=_nonneg)
    params.add_argument("--r", type=_nonneg)
    params.add_argument("--L", help="comma list, e.g. 0,2")
    params.add_argument("--t", type=_nonneg)

    source = argparse.ArgumentParser(add_help=False)
    source.add_argument("--in", dest="input", help="graph6 or SetFamily text file ('-' for stdin)")
    source.add_argument("--g6", help="graph6 string given inline")

    p = argparse.ArgumentParser(prog="cliquefam", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", parents=[common, params], help="build a named construction")
    c.add_argument("--kind", required=True, choices=["ap", "hm", "ekr", "turan", "blown", "complete", "l1", "frankl"])
    c.add_argument("--m", type=_nonneg)
    c.add_argument("--s", type=_positive)
    c.add_argument("--d", type=_positive)
    c.add_argument("--variant", choices=["i", "ii"], default="ii")
    c.add_argument("--format", choices=["g6", "json", "text"], default="json")
    c.set_defaults(func=cmd_construct)

    c = sub.add_parser("count", parents=[common, params, source], help="count r-cliques")
    c.add_argument("--list", action="store_true", help="also list the cliques")
    c.set_defaults(func=cmd_count)

    c = sub.add_parser("verify", parents=[common, params, source], help="check an intersection property")
    c.add_argument("--property", required=True,
                   choices=["L-intersecting", "t-intersecting", "nontrivial-t-intersecting", "cover-free"])
    c.set_defaults(func=cmd_verify)

    c = sub.add_parser("analyze", parents=[common, params, source], help="structural reports")
    c.add_argument("--sunflower-core", help="comma list of core vertices")
    c.add_argument("--atoms-d", type=_positive)
    c.add_argument("--prune-threshold", type=_nonneg)
    c.add_argument("--cover-t", type=_positive)
    c.add_argument("--cover-threshold", type=_nonneg)
    c.add_argument("--hm-core", help="comma list D of t+2 clique vertices")
    c.set_defaults(func=cmd_analyze)

    c = sub.add_parser("bounds", parents=[common, params], help="evaluate every applicable bound")
    c.set_defaults(func=cmd_bounds)

    c = sub.add_parser("search", parents=[common, params], help="exact values by exhaustive search")
    c.add_argument("--mode", required=True, choices=["psi", "phi", "coverfree"])
    c.add_argument("--budget", type=_nonneg)
    c.add_argument("--n-cap", type=_positive)
    c.add_argument("--phi-cap", type=_positive)
    c.add_argument("--emit-witness", metavar="PATH")
    c.set_defaults(func=cmd_search)

    c = sub.add_parser("repro", parents=[common], help="run the acceptance suite")
    c.add_argument("--only", help="group name(s) or criterion numbers, comma separated")
    c.set_defaults(func=cmd_repro)
    return p


def _params(args) -> dict:
    skip = {"func", "command"}
    return {k: v for k, v in vars(args).items() if k not in skip}


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "repro":
            return args.func(args)
        out = args.func(args)
        code = EXIT_OK
        if isinstance(out, tuple):
            out, code = out
    except (UsageError, ValueError) as exc:
        print(f"cliquefam {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    if isinstance(out, str):
        print(out)
    else:
        record = {"tool_version": __version__, "subcommand": args.command, "params": _params(args), "result": out}
        print(json.dumps(record, default=str))
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
