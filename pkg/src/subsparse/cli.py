"""Command-line interface.

Exit codes: 0 success, 1 usage or input-format error, 2 verification
failure, 3 algorithmic refusal (enumeration thresholds, unmet
preconditions, balancer non-convergence, ambiguous decodes).  Every
subcommand is deterministic given its flags; the seed defaults to a
fixed constant rather than entropy, and reports embed the fully
resolved configuration so a run can be replayed from its report alone.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import families
from .checks import check_monotone, check_submodular, imbalance, spread_stats
from .deform import deform_additive
from .delta import delta_stats, gradient_series, support_lower_bound
from .encoding import decode as decode_bits
from .encoding import encode as encode_bits
from .errors import FormatError, RefusalError
from .generate import generate
from .hypergraph import SubmodularHypergraph
from .importance import (
    require_monotone,
    rho_general,
    rho_monotone,
    rho_prime,
    sparsify_general,
    sparsify_monotone,
)
from .io import load_hypergraph, save_hypergraph
from .oracle import directed_cut_table
from .splitting import Additive
from .spread import coverage_compress, sparsify_spread
from .strength import build_auxiliary
from .verify import verify_exhaustive, verify_sampled

DEFAULT_SEED = 1729


def _jsonable(x):
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, np.ndarray):
        return _jsonable(x.tolist())
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (np.floating,)):
        return float(x)
    if isinstance(x, (np.bool_,)):
        return bool(x)
    return x


def _emit(args, report: dict) -> None:
    report = _jsonable(report)
    if getattr(args, "report", None):
        with open(args.report, "w") as fh:
            json.dump(report, fh, indent=1)
            fh.write("\n")
    if getattr(args, "verbose", False):
        json.dump(report, sys.stdout, indent=1)
        sys.stdout.write("\n")


def _config(args) -> dict:
    skip = {"func"}
    return {k: _jsonable(v) for k, v in vars(args).items() if k not in skip}


def _eps(value: str) -> float:
    x = float(value)
    if not 0.0 < x < 1.0:
        raise argparse.ArgumentTypeError(f"epsilon must be in (0,1), got {x}")
    return x


def _load(path: str) -> SubmodularHypergraph:
    return load_hypergraph(path)


# --- subcommand handlers ---------------------------------------------------


def _cmd_generate(args) -> int:
    params = {}
    for key in ("n", "m", "kmax", "K"):
        val = getattr(args, key, None)
        if val is not None:
            params[key] = val
    if args.epsilon is not None:
        params["epsilon"] = args.epsilon
    H, meta = generate(args.kind, seed=args.seed, **params)
    save_hypergraph(H, args.out)
    if args.meta:
        with open(args.meta, "w") as fh:
            json.dump(_jsonable(meta), fh, indent=1)
            fh.write("\n")
    print(f"generated {args.kind}: n={H.n} m={H.m} -> {args.out}")
    _emit(args, {"config": _config(args), "meta": meta})
    return 0


def _cmd_sparsify(args) -> int:
    H = _load(args.infile)
    if args.method == "general":
        G, rep = sparsify_general(H, args.epsilon, seed=args.seed, oversample=args.oversample)
        body = {
            "method": rep.method, "M": rep.M, "m_in": rep.m_in, "m_out": rep.m_out,
            "rho_sum": float(np.sum(rep.rho)), "p": rep.p,
        }
    elif args.method == "monotone":
        G, rep = sparsify_monotone(H, args.epsilon, seed=args.seed, oversample=args.oversample)
        body = {
            "method": rep.method, "M": rep.M, "m_in": rep.m_in, "m_out": rep.m_out,
            "rho_sum": float(np.sum(rep.rho)), "p": rep.p,
        }
    else:
        G, rep = sparsify_spread(H, args.epsilon, seed=args.seed, t=args.t, gamma=args.gamma)
        body = {
            "t": rep.t, "gamma": rep.gamma, "m_in": rep.m_in, "m_out": rep.m_out,
            "parts": rep.parts, "kappa": rep.kappa, "p": rep.p,
        }
    save_hypergraph(G, args.out)
    print(f"sparsified ({args.method}): {H.m} -> {G.m} edges at epsilon={args.epsilon}")
    _emit(args, {"config": _config(args), "result": body})
    return 0


def _cmd_deform(args) -> int:
    H = _load(args.infile)
    targets = range(H.m) if args.edge is None else [args.edge]
    pieces = []
    per_edge = []
    from .hypergraph import Hyperedge

    for i in targets:
        e = H.edges[i]
        res = deform_additive(
            e.fn, e.vertices, args.epsilon, seed=args.seed + i,
            q=args.q, c=args.c, shortcircuit=not args.no_shortcircuit,
            piece_budget=args.budget,
        )
        if args.edge is None:
            pieces.extend(res.pieces)
        else:
            pieces = list(res.pieces)
        per_edge.append({
            "edge": i, "N": res.N, "N_used": res.N_used, "p": res.p,
            "short_circuit": res.short_circuit, "capped": res.capped,
            "max_support": res.max_support, "max_spread": res.max_spread,
            "support_bound": res.support_bound,
        })
    G = SubmodularHypergraph(H.n, tuple(Hyperedge(p.vertices, p.fn) for p in pieces))
    save_hypergraph(G, args.out)
    print(f"deformed {len(per_edge)} edge(s) into {G.m} pieces")
    _emit(args, {"config": _config(args), "edges": per_edge})
    return 0


def _cmd_encode(args) -> int:
    H = _load(args.infile)
    enc = encode_bits(H)
    with open(args.out, "wb") as fh:
        fh.write(enc.data)
    print(f"encoded {H.m} edges in {enc.bit_count} bits -> {args.out}")
    _emit(args, {"config": _config(args), "bit_count": enc.bit_count, "n": enc.n, "m": enc.m})
    return 0


def _cmd_decode(args) -> int:
    with open(args.infile, "rb") as fh:
        data = fh.read()
    H = decode_bits(data)
    save_hypergraph(H, args.out)
    print(f"decoded {H.m} edges over {H.n} vertices -> {args.out}")
    _emit(args, {"config": _config(args), "n": H.n, "m": H.m})
    return 0


def _cmd_verify(args) -> int:
    H = _load(args.infile)
    G = _load(args.against)
    if args.exhaustive:
        rep = verify_exhaustive(H, G, args.epsilon, max_n=args.max_n)
    else:
        rep = verify_sampled(H, G, args.epsilon, count=args.samples, seed=args.seed)
    _emit(args, {"config": _config(args), "result": rep.__dict__})
    if rep.ok:
        print(
            f"verified ({rep.method}): {rep.subsets_checked} cuts, "
            f"max relative error {rep.max_rel_error:.6g} <= {args.epsilon}"
        )
        return 0
    print(
        f"verification FAILED: worst subset {sorted(rep.worst_subset)} has "
        f"original cut {rep.worst_original:.6g} vs approximation "
        f"{rep.worst_approx:.6g} (relative error {rep.max_rel_error:.6g}, "
        f"{rep.violations} violations)",
        file=sys.stderr,
    )
    return 2


def _cmd_importance(args) -> int:
    H = _load(args.infile)
    if args.method == "general":
        rho = rho_general(H)
        rp = rho_prime(H)
        M = args.oversample * H.n / args.epsilon**2
        p = np.minimum(1.0, M * (rho + rp))
        body = {"rho": rho, "rho_prime": rp, "M": M, "p": p,
                "rho_sum": float(rho.sum()), "rho_prime_sum": float(rp.sum())}
    else:
        require_monotone(H)
        rho = rho_monotone(H)
        M = args.oversample * H.n / args.epsilon**2
        p = np.minimum(1.0, M * rho)
        body = {"rho": rho, "M": M, "p": p, "rho_sum": float(rho.sum())}
    print(
        f"importance ({args.method}): sum rho = {float(rho.sum()):.6g}, "
        f"expected kept edges = {float(np.sum(body['p'])):.6g} of {H.m}"
    )
    _emit(args, {"config": _config(args), "result": body})
    return 0


def _cmd_strengths(args) -> int:
    H = _load(args.infile)
    sm = build_auxiliary(H, gamma=args.gamma)
    print(
        f"auxiliary graph: {len(sm.aux_edges)} clique edges, balancer rounds "
        f"{sm.iterations}, kappa range [{float(np.min(sm.kappa)):.6g}, "
        f"{float(np.max(sm.kappa)):.6g}]"
    )
    _emit(args, {
        "config": _config(args),
        "kappa": sm.kappa, "kappa_max": sm.kappa_max,
        "iterations": sm.iterations, "norm_factor": sm.norm_factor,
    })
    return 0


def _cmd_analyze(args) -> int:
    H = _load(args.infile)
    targets = range(H.m) if args.edge is None else [args.edge]
    rows = []
    if args.what == "submodular":
        for i in targets:
            e = H.edges[i]
            w = check_submodular(e.fn, e.vertices)
            rows.append({"edge": i, "submodular": w is None,
                         "witness": None if w is None else w.__dict__})
        bad = [r for r in rows if not r["submodular"]]
        print(f"submodularity: {len(rows) - len(bad)}/{len(rows)} edges pass")
    elif args.what == "monotone":
        for i in targets:
            e = H.edges[i]
            w = check_monotone(e.fn, e.vertices)
            rows.append({"edge": i, "monotone": w is None,
                         "witness": None if w is None else w.__dict__})
        good = sum(r["monotone"] for r in rows)
        print(f"monotonicity: {good}/{len(rows)} edges pass")
    elif args.what == "spread":
        for i in targets:
            e = H.edges[i]
            st = spread_stats(e.fn, e.vertices)
            rows.append({"edge": i, **st.__dict__})
        worst = max((r["spread"] for r in rows), default=0.0)
        print(f"spread: max over edges = {worst:.6g}")
    elif args.what == "imbalance":
        for i in targets:
            e = H.edges[i]
            rows.append({"edge": i, "imbalance": imbalance(e.fn, e.vertices)})
        print(f"imbalance computed for {len(rows)} edge(s)")
    elif args.what == "sfm":
        for i in targets:
            e = H.edges[i]
            tab = directed_cut_table(e.fn, e.vertices, H.n)
            rows.append({"edge": i, "table": tab.table})
        print(f"pairwise directed min-cut tables for {len(rows)} edge(s)")
    elif args.what == "gradient":
        for i in targets:
            e = H.edges[i]
            gs = gradient_series(e.fn, e.k)
            rows.append({"edge": i, "deltas": list(gs.deltas), "first_drop": gs.first_drop})
        print(f"gradient series for {len(rows)} edge(s)")
    else:  # delta
        for i in targets:
            e = H.edges[i]
            st = delta_stats(e.fn, e.vertices, args.t, delta_hat=args.delta_hat,
                             budget=args.budget, seed=args.seed)
            rows.append({"edge": i, **st.__dict__})
        print(
            f"delta stats at t={args.t}: "
            + ", ".join(f"edge {r['edge']}: rho={r['pair_fraction']:.4g}" for r in rows)
        )
    _emit(args, {"config": _config(args), "rows": rows})
    return 0


def _require(args, *names) -> None:
    for name in names:
        attr = "infile" if name == "in" else name
        if getattr(args, attr, None) is None:
            raise ValueError(f"--{name} is required for this action")


def _cmd_lowerbound(args) -> int:
    if args.action in ("gen-hadamard", "gen-directed"):
        _require(args, "out", "meta")
    elif args.action == "decode":
        _require(args, "in", "meta")
    else:
        _require(args, "in")
    if args.action == "gen-hadamard":
        H, meta = generate("hadamard-family", seed=args.seed, n=args.n, K=args.K)
        save_hypergraph(H, args.out)
        with open(args.meta, "w") as fh:
            json.dump(_jsonable(meta), fh, indent=1)
            fh.write("\n")
        print(f"hadamard family: n={H.n}, {H.m} hyperedges -> {args.out}")
        _emit(args, {"config": _config(args), "meta": meta})
        return 0
    if args.action == "gen-directed":
        H, meta = generate("directed-family", seed=args.seed, n=args.n, epsilon=args.epsilon)
        save_hypergraph(H, args.out)
        with open(args.meta, "w") as fh:
            json.dump(_jsonable(meta), fh, indent=1)
            fh.write("\n")
        print(f"directed family: n={H.n}, {H.m} hyperedges -> {args.out}")
        _emit(args, {"config": _config(args), "meta": meta})
        return 0
    if args.action == "decode":
        with open(args.meta) as fh:
            meta = json.load(fh)
        target = _load(args.infile)
        if meta["kind"] == "hadamard-family":
            fam = families.gen_hadamard_family(
                meta["n"], Additive(K=float(meta["K"])), seed=meta["seed"]
            )
            got = families.decode_hadamard(target, fam, epsilon=args.weights_epsilon)
            match = bool(np.array_equal(got, fam.B))
            bits = int(got.size)
        elif meta["kind"] == "directed-family":
            fam = families.gen_directed_family(meta["n"], meta["epsilon"], seed=meta["seed"])
            got = families.decode_directed(target, fam, epsilon=args.weights_epsilon)
            match = bool(np.array_equal(got, fam.tails_v))
            bits = int(got.size)
        else:
            raise FormatError(f"meta file describes unknown kind {meta['kind']!r}")
        print(f"decoded {bits} hidden bits; matches regenerated ground truth: {match}")
        _emit(args, {"config": _config(args), "match": match, "bits": bits,
                     "recovered": got})
        return 0
    # action == "value"
    H = _load(args.infile)
    e = H.edges[args.edge]
    rep = support_lower_bound(e.fn, e.vertices, args.epsilon, route=args.route,
                              t=args.t, budget=args.budget, seed=args.seed)
    print(
        f"support lower bound (route {rep.route}): {rep.value:.6g} "
        f"[rho={rep.rho:.4g}, delta_hat={rep.delta_hat:.4g}, t={rep.t:.4g}] "
        "up to an unpinned universal constant"
    )
    _emit(args, {"config": _config(args), "result": rep.__dict__})
    return 0


def _cmd_coverage_compress(args) -> int:
    H = _load(args.infile)
    e = H.edges[args.edge]
    fn, rep = coverage_compress(e.fn, e.vertices, args.epsilon, seed=args.seed,
                                t=args.t, n=H.n)
    from .hypergraph import Hyperedge

    edges = list(H.edges)
    edges[args.edge] = Hyperedge(e.vertices, fn)
    out = SubmodularHypergraph(H.n, edges)
    save_hypergraph(out, args.out)
    print(
        f"coverage ground set {rep.ground_in} -> {rep.ground_out} elements "
        f"({rep.dropped_inert} inert dropped)"
    )
    _emit(args, {"config": _config(args), "result": {
        "ground_in": rep.ground_in, "ground_out": rep.ground_out,
        "dropped_inert": rep.dropped_inert,
    }})
    return 0


# --- parser ---------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="subsparse",
        description="Submodular hypergraph cut sparsification toolkit.",
    )
    sub = top.add_subparsers(dest="command", required=True)

    def common(p, seed=True, report=True):
        if seed:
            p.add_argument("--seed", type=int, default=DEFAULT_SEED)
        if report:
            p.add_argument("--report", help="write a JSON report here")
            p.add_argument("--verbose", action="store_true", help="print the report")

    p = sub.add_parser("generate", help="build a random or structured instance")
    p.add_argument("--kind", required=True, choices=[
        "random-submodular", "cardinality", "coverage", "hadamard-family", "directed-family",
    ])
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--kmax", type=int)
    p.add_argument("--K", type=int)
    p.add_argument("--epsilon", type=_eps, default=None)
    p.add_argument("--out", required=True)
    p.add_argument("--meta", help="write family metadata here")
    common(p)
    p.set_defaults(func=_cmd_generate)

    p = sub.add_parser("sparsify", help="importance- or strength-based sparsification")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--method", choices=["general", "monotone", "spread"], default="general")
    p.add_argument("--epsilon", type=_eps, required=True)
    p.add_argument("--oversample", type=float, default=1.0,
                   help="constant multiplying the sampling rate (general/monotone)")
    p.add_argument("--t", type=float, default=25.0, help="spread-method rate constant")
    p.add_argument("--gamma", type=float, default=2.0, help="balancer tolerance")
    common(p)
    p.set_defaults(func=_cmd_sparsify)

    p = sub.add_parser("deform", help="split additive edges into low-support pieces")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--edge", type=int, help="deform only this edge index")
    p.add_argument("--epsilon", type=_eps, required=True)
    p.add_argument("--q", type=float, default=13.0, help="piece-count constant")
    p.add_argument("--c", type=float, default=21.0, help="sampling-rate constant")
    p.add_argument("--no-shortcircuit", action="store_true",
                   help="deform even when the edge is already small enough")
    p.add_argument("--budget", type=int, default=None, help="cap on pieces per edge")
    common(p)
    p.set_defaults(func=_cmd_deform)

    p = sub.add_parser("encode", help="bit-pack an additive hypergraph")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", required=True)
    common(p, seed=False)
    p.set_defaults(func=_cmd_encode)

    p = sub.add_parser("decode", help="unpack an encoded hypergraph")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", required=True)
    common(p, seed=False)
    p.set_defaults(func=_cmd_decode)

    p = sub.add_parser("verify", help="certify one hypergraph against another")
    p.add_argument("--in", dest="infile", required=True, help="the original")
    p.add_argument("--against", required=True, help="the candidate approximation")
    p.add_argument("--epsilon", type=_eps, required=True)
    p.add_argument("--exhaustive", action="store_true")
    p.add_argument("--samples", type=int, default=10000)
    p.add_argument("--max-n", type=int, default=24)
    common(p)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("importance", help="sampling rates without sampling")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--method", choices=["general", "monotone"], default="general")
    p.add_argument("--epsilon", type=_eps, required=True)
    p.add_argument("--oversample", type=float, default=1.0)
    common(p, seed=False)
    p.set_defaults(func=_cmd_importance)

    p = sub.add_parser("strengths", help="auxiliary graph and edge strengths")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--gamma", type=float, default=2.0)
    common(p, seed=False)
    p.set_defaults(func=_cmd_strengths)

    p = sub.add_parser("analyze", help="per-edge diagnostics")
    p.add_argument("what", choices=[
        "submodular", "monotone", "spread", "imbalance", "sfm", "gradient", "delta",
    ])
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--edge", type=int, help="restrict to one edge index")
    p.add_argument("--t", type=int, default=1, help="pair size for delta statistics")
    p.add_argument("--delta-hat", type=float, default=0.0)
    p.add_argument("--budget", type=int, default=10_000_000)
    common(p)
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("lowerbound", help="bit-hiding families and support bounds")
    p.add_argument("action", choices=["gen-hadamard", "gen-directed", "decode", "value"])
    p.add_argument("--n", type=int, default=48)
    p.add_argument("--K", type=int, default=2)
    p.add_argument("--epsilon", type=_eps, default=0.0625)
    p.add_argument("--in", dest="infile")
    p.add_argument("--out")
    p.add_argument("--meta", help="family metadata path")
    p.add_argument("--weights-epsilon", type=float, default=0.0,
                   help="assumed reweighting range for decoding")
    p.add_argument("--edge", type=int, default=0)
    p.add_argument("--route", default="best")
    p.add_argument("--t", type=int, default=None)
    p.add_argument("--budget", type=int, default=10_000_000)
    common(p)
    p.set_defaults(func=_cmd_lowerbound)

    p = sub.add_parser("coverage-compress", help="shrink a coverage ground set")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--edge", type=int, default=0)
    p.add_argument("--epsilon", type=_eps, required=True)
    p.add_argument("--t", type=float, default=25.0)
    common(p)
    p.set_defaults(func=_cmd_coverage_compress)

    return top


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 1
    try:
        return args.func(args)
    except RefusalError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return 3
    except (FormatError, FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
