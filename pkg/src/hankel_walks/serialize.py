"""JSON file formats.  Every rational crosses the file boundary as a ``"p/q"`` string."""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction
from pathlib import Path

from .dyck import LevelWeights
from .hankel import MomentPrefix
from .walks import ExplicitGraph


class FormatError(ValueError):
    pass


def rat_to_str(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def str_to_rat(s) -> Fraction:
    if isinstance(s, bool) or not isinstance(s, (str, int)):
        raise FormatError(f"expected a 'p/q' string, got {s!r}")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"bad rational {s!r}: {exc}") from None


def rats(xs) -> list[str]:
    return [rat_to_str(x) for x in xs]


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def digest(obj) -> str:
    blob = json.dumps(obj, sort_keys=True, separators=(",", ":")).encode()
    return "sha256:" + hashlib.sha256(blob).hexdigest()


def load_json(path: str | Path) -> dict:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise FormatError(f"cannot read {path}: {exc}") from None
    if not isinstance(data, dict):
        raise FormatError(f"{path}: top-level JSON value must be an object")
    return data


def file_kind(data: dict) -> str:
    if "terms" in data:
        return "sequence"
    if "lambda" in data:
        return "weights"
    if "edges" in data:
        return "graph"
    raise FormatError("input is neither a sequence, weights nor graph file")


# -- sequence files ----------------------------------------------------------


def sequence_to_json(a: MomentPrefix) -> dict:
    return {"a0": rat_to_str(a[0]), "terms": rats(a)}


def sequence_from_json(data: dict) -> MomentPrefix:
    terms = data.get("terms")
    if not isinstance(terms, list) or not terms:
        raise FormatError("sequence file needs a non-empty 'terms' list")
    vals = [str_to_rat(t) for t in terms]
    if "a0" in data and str_to_rat(data["a0"]) != vals[0]:
        raise FormatError(f"a0={data['a0']} disagrees with terms[0]={terms[0]}")
    return MomentPrefix(tuple(vals))


# -- weights files -------------------------------------------------------------


def weights_to_json(lw: LevelWeights) -> dict:
    return {"lambda": rats(lw.lam), "terminated": bool(lw.terminated)}


def weights_from_json(data: dict) -> LevelWeights:
    lam = data.get("lambda")
    if not isinstance(lam, list):
        raise FormatError("weights file needs a 'lambda' list")
    term = data.get("terminated", False)
    if not isinstance(term, bool):
        raise FormatError("'terminated' must be true or false")
    return LevelWeights(tuple(str_to_rat(x) for x in lam), term)


# -- explicit graph files ------------------------------------------------------


def graph_from_json(data: dict) -> ExplicitGraph:
    verts = data.get("vertices")
    edges = data.get("edges")
    if not isinstance(verts, list) or not isinstance(edges, list):
        raise FormatError("graph file needs 'vertices' and 'edges' lists")
    parsed = []
    for e in edges:
        if not (isinstance(e, list) and len(e) == 3 and all(isinstance(i, int) for i in e[:2])):
            raise FormatError(f"edge {e!r} must be [i, j, \"p/q\"]")
        parsed.append((e[0], e[1], str_to_rat(e[2])))
    root = data.get("root", 0)
    if not isinstance(root, int):
        raise FormatError("'root' must be a vertex index")
    labels = [tuple(v) if isinstance(v, list) else v for v in verts]
    return ExplicitGraph(labels, parsed, root)


def graph_to_json(g: ExplicitGraph) -> dict:
    return {
        "vertices": [list(v) if isinstance(v, tuple) else v for v in g.vertices],
        "edges": [[i, j, rat_to_str(w)] for i, j, w in g.edges],
        "root": g.root,
    }


def write_json(obj, path: str | Path) -> None:
    Path(path).write_text(dumps(obj))
