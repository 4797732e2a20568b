"""JSON (de)serialization of submodular hypergraphs.

Format (version 1):

    {
      "version": 1,
      "n": 6,
      "labels": ["a", "b", ...],            // optional, length n
      "edges": [
        {"vertices": [0, 2, 5],
         "fn": {"kind": "Additive", "K": 2, "symmetric": false},
         "scale": 1.5}                      // optional, default 1.0
      ]
    }

Per-kind fn fields: DirectedAllOrNothing {head, tail}; Additive
{K, symmetric}; CardinalityBased {table}; Coverage {ground, weights,
memberSets}; MatroidRank {matroid: {type, ...}}; Explicit {table};
AllOrNothing / SmallSide / Product take no parameters.  Validation errors
carry the offending field path, e.g. "edges[3].fn.table".
"""

from __future__ import annotations

import json

from .errors import FormatError
from .hypergraph import Hyperedge, SubmodularHypergraph
from .splitting import (
    Additive,
    AllOrNothing,
    CardinalityBased,
    Coverage,
    DirectedAllOrNothing,
    Explicit,
    MatroidRank,
    Product,
    SmallSide,
    SplittingFn,
)

FORMAT_VERSION = 1


def _need(d, key, path, types=None):
    if not isinstance(d, dict):
        raise FormatError(f"{path}: expected an object")
    if key not in d:
        raise FormatError(f"{path}.{key}: missing required field")
    v = d[key]
    if types is not None and not isinstance(v, types):
        raise FormatError(f"{path}.{key}: wrong type {type(v).__name__}")
    return v


def _int_list(v, path):
    if not isinstance(v, list) or not all(isinstance(x, int) for x in v):
        raise FormatError(f"{path}: expected a list of integers")
    return v


def _num_list(v, path):
    if not isinstance(v, list) or not all(
        isinstance(x, (int, float)) and not isinstance(x, bool) for x in v
    ):
        raise FormatError(f"{path}: expected a list of numbers")
    return [float(x) for x in v]


def fn_from_json(d: dict, path: str) -> SplittingFn:
    kind = _need(d, "kind", path, str)
    try:
        if kind == "AllOrNothing":
            return AllOrNothing()
        if kind == "SmallSide":
            return SmallSide()
        if kind == "Product":
            return Product()
        if kind == "DirectedAllOrNothing":
            return DirectedAllOrNothing(
                head=tuple(_int_list(_need(d, "head", path), f"{path}.head")),
                tail=tuple(_int_list(_need(d, "tail", path), f"{path}.tail")),
            )
        if kind == "Additive":
            K = _need(d, "K", path, (int, float))
            sym = d.get("symmetric", False)
            if not isinstance(sym, bool):
                raise FormatError(f"{path}.symmetric: expected a boolean")
            return Additive(K=float(K), symmetric=sym)
        if kind == "CardinalityBased":
            return CardinalityBased(
                values=tuple(_num_list(_need(d, "table", path), f"{path}.table"))
            )
        if kind == "Coverage":
            ground = _need(d, "ground", path, list)
            weights = _num_list(_need(d, "weights", path), f"{path}.weights")
            ms = _need(d, "memberSets", path, list)
            member_sets = tuple(
                tuple(_int_list(s, f"{path}.memberSets[{i}]")) for i, s in enumerate(ms)
            )
            return Coverage(ground=tuple(ground), weights=tuple(weights), member_sets=member_sets)
        if kind == "MatroidRank":
            m = _need(d, "matroid", path, dict)
            mtype = _need(m, "type", f"{path}.matroid", str)
            if mtype == "uniform":
                return MatroidRank(mtype="uniform", rank=_need(m, "rank", f"{path}.matroid", int))
            if mtype == "partition":
                blocks = _need(m, "blocks", f"{path}.matroid", list)
                caps = _int_list(_need(m, "caps", f"{path}.matroid"), f"{path}.matroid.caps")
                return MatroidRank(
                    mtype="partition",
                    blocks=tuple(
                        tuple(_int_list(b, f"{path}.matroid.blocks[{i}]"))
                        for i, b in enumerate(blocks)
                    ),
                    caps=tuple(caps),
                )
            if mtype == "explicit":
                fam = _need(m, "independent", f"{path}.matroid", list)
                return MatroidRank(
                    mtype="explicit",
                    independent=tuple(
                        tuple(_int_list(s, f"{path}.matroid.independent[{i}]"))
                        for i, s in enumerate(fam)
                    ),
                )
            raise FormatError(f"{path}.matroid.type: unknown type {mtype!r}")
        if kind == "Explicit":
            return Explicit(values=tuple(_num_list(_need(d, "table", path), f"{path}.table")))
    except FormatError:
        raise
    except (ValueError, TypeError) as bad:
        raise FormatError(f"{path}: {bad}") from None
    raise FormatError(f"{path}.kind: unknown kind {kind!r}")


def fn_to_json(fn: SplittingFn) -> dict:
    d: dict = {"kind": fn.kind}
    if isinstance(fn, DirectedAllOrNothing):
        d["head"] = list(fn.head)
        d["tail"] = list(fn.tail)
    elif isinstance(fn, Additive):
        d["K"] = int(fn.K) if float(fn.K).is_integer() else fn.K
        d["symmetric"] = fn.symmetric
    elif isinstance(fn, CardinalityBased):
        d["table"] = list(fn.values)
    elif isinstance(fn, Coverage):
        d["ground"] = list(fn.ground)
        d["weights"] = list(fn.weights)
        d["memberSets"] = [list(ms) for ms in fn.member_sets]
    elif isinstance(fn, MatroidRank):
        if fn.mtype == "uniform":
            d["matroid"] = {"type": "uniform", "rank": fn.rank}
        elif fn.mtype == "partition":
            d["matroid"] = {
                "type": "partition",
                "blocks": [list(b) for b in fn.blocks],
                "caps": list(fn.caps),
            }
        else:
            d["matroid"] = {"type": "explicit", "independent": [list(s) for s in fn.independent]}
    elif isinstance(fn, Explicit):
        d["table"] = list(fn.values)
    return d


def hypergraph_from_json(obj, path: str = "$") -> SubmodularHypergraph:
    version = _need(obj, "version", path, int)
    if version != FORMAT_VERSION:
        raise FormatError(f"{path}.version: unsupported version {version}")
    n = _need(obj, "n", path, int)
    if n < 1:
        raise FormatError(f"{path}.n: must be >= 1")
    raw_edges = _need(obj, "edges", path, list)
    edges = []
    for i, ed in enumerate(raw_edges):
        ep = f"{path}.edges[{i}]"
        vs = _int_list(_need(ed, "vertices", ep), f"{ep}.vertices")
        if not vs:
            raise FormatError(f"{ep}.vertices: must be nonempty")
        if len(set(vs)) != len(vs):
            raise FormatError(f"{ep}.vertices: repeated vertex")
        if min(vs) < 0 or max(vs) >= n:
            raise FormatError(f"{ep}.vertices: vertex outside 0..{n - 1}")
        fn = fn_from_json(_need(ed, "fn", ep, dict), f"{ep}.fn")
        scale = ed.get("scale", 1.0)
        if not isinstance(scale, (int, float)) or isinstance(scale, bool) or scale < 0:
            raise FormatError(f"{ep}.scale: expected a nonnegative number")
        try:
            fn = fn.with_scale(float(scale))
            edges.append(Hyperedge(vertices=tuple(vs), fn=fn))
        except ValueError as bad:
            raise FormatError(f"{ep}: {bad}") from None
    labels = obj.get("labels")
    if labels is not None:
        if not isinstance(labels, list) or len(labels) != n:
            raise FormatError(f"{path}.labels: expected a list of length n")
        labels = [str(x) for x in labels]
    return SubmodularHypergraph(n=n, edges=edges, labels=labels)


def hypergraph_to_json(H: SubmodularHypergraph) -> dict:
    obj = {
        "version": FORMAT_VERSION,
        "n": H.n,
        "edges": [
            {"vertices": list(e.vertices), "fn": fn_to_json(e.fn), "scale": e.fn.scale}
            for e in H.edges
        ],
    }
    if H.labels is not None:
        obj["labels"] = list(H.labels)
    return obj


def load_hypergraph(path) -> SubmodularHypergraph:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            obj = json.load(fh)
    except json.JSONDecodeError as bad:
        raise FormatError(f"{path}: invalid JSON at line {bad.lineno} column {bad.colno}") from None
    return hypergraph_from_json(obj)


def save_hypergraph(H: SubmodularHypergraph, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(hypergraph_to_json(H), fh, indent=1)
        fh.write("\n")
