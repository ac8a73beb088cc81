"""Batch command-line front end.

Every subcommand reads one JSON input file, prints a deterministic JSON
report on stdout and exits 0 (success), 1 (property refuted) or 2 (bad input
or library error, with a one-line diagnostic on stderr).
"""

from __future__ import annotations

import argparse
import sys

from . import dyck, hankel, lgv, walks
from .errors import HankelWalksError, InconsistentMoments
from .serialize import (
    FormatError,
    digest,
    dumps,
    file_kind,
    graph_from_json,
    load_json,
    rat_to_str,
    rats,
    sequence_from_json,
    sequence_to_json,
    str_to_rat,
    weights_from_json,
    weights_to_json,
    write_json,
)
from .verify import verify_theorem

EXIT_OK, EXIT_REFUTED, EXIT_ERROR = 0, 1, 2


class Outcome:
    def __init__(self, verdict="verified", result=None, comparison=None, witness=None, artifact=None):
        self.verdict = verdict
        self.result = result or {}
        self.comparison = comparison
        self.witness = witness
        self.artifact = artifact

    @property
    def exit_code(self) -> int:
        return EXIT_REFUTED if self.verdict == "refuted" else EXIT_OK


def _need(args, name):
    val = getattr(args, name)
    if val is None:
        raise FormatError(f"--{name} is required for {args.command}")
    return val


def _load(args, *kinds):
    data = load_json(args.input)
    kind = file_kind(data)
    if kind not in kinds:
        raise FormatError(f"{args.command} expects a {' or '.join(kinds)} file, got {kind}")
    return kind, data


def _graph(args, kind, data):
    if kind == "graph":
        return graph_from_json(data)
    return walks.ProductGraph(_need(args, "k"), weights_from_json(data))


def _cmp_rows(pairs):
    return [
        {"n": n, "lhs": rat_to_str(x), "rhs": rat_to_str(y), "match": x == y}
        for n, (x, y) in enumerate(pairs)
    ]


def cmd_transform(args) -> Outcome:
    _, data = _load(args, "sequence")
    out = hankel.hankel_transform(sequence_from_json(data), _need(args, "k"))
    return Outcome(result={"terms": rats(out), "length": len(out)}, artifact=sequence_to_json(out))


def cmd_check_sm(args) -> Outcome:
    _, data = _load(args, "sequence")
    res = hankel.sm_check(sequence_from_json(data))
    result = {"depth": res.depth, "sizes": {str(s): m for s, m in res.sizes.items()}}
    if not res.consistent:
        result["reason"] = res.reason
        if res.matrix is not None:
            result["shift"] = res.shift
            result["matrix"] = [rats(r) for r in res.matrix.entries]
            result["witness"] = rats(res.witness)
            result["quadratic_form"] = rat_to_str(res.matrix.quadratic_form(res.witness))
    return Outcome(res.verdict, result)


def cmd_extract_weights(args) -> Outcome:
    _, data = _load(args, "sequence")
    a = sequence_from_json(data)
    levels = a.last_index if args.depth is None else args.depth
    try:
        lw = dyck.weights_from_moments(a, levels=levels)
    except InconsistentMoments as exc:
        return Outcome("refuted", {"inconsistent_index": exc.index})
    out = weights_to_json(lw)
    return Outcome(result=out, witness=out, artifact=out)


def cmd_enumerate_moments(args) -> Outcome:
    _, data = _load(args, "weights")
    n = _need(args, "depth")
    cap = dyck.DYCK_CAP if args.cap is None else args.cap
    a = dyck.moments_from_weights(weights_from_json(data), str_to_rat(args.a0), n, cap=cap)
    return Outcome(result={"terms": rats(a), "length": len(a)}, artifact=sequence_to_json(a))


def cmd_lgv_check(args) -> Outcome:
    _, data = _load(args, "weights")
    lw = weights_from_json(data)
    k, n = _need(args, "k"), _need(args, "depth")
    a0 = str_to_rat(args.a0)
    n_cap = lgv.TUPLE_N_CAP if args.cap is None else args.cap
    moments = dyck.moments_from_weights(lw, a0, n + 2 * k - 2, cap=max(dyck.DYCK_CAP, n + 2 * k - 2))
    det_side = hankel.hankel_transform(moments, k)
    pairs = [(lgv.lgv_sum(a0, lw, k, m, n_cap=n_cap), det_side[m]) for m in range(n + 1)]
    rows = _cmp_rows(pairs)
    verdict = "verified" if all(r["match"] for r in rows) else "refuted"
    return Outcome(verdict, {"k": k, "moments": rats(moments)}, comparison=rows)


def cmd_walk_sum(args) -> Outcome:
    kind, data = _load(args, "weights", "graph")
    g = _graph(args, kind, data)
    cap = walks.WALK_CAP if args.cap is None else args.cap
    m = walks.closed_walk_moments(g, _need(args, "depth"), cap=cap)
    return Outcome(result={"moments": rats(m), "length": len(m)}, artifact=sequence_to_json(m))


def cmd_lanczos(args) -> Outcome:
    kind, data = _load(args, "weights", "graph")
    g = _graph(args, kind, data)
    depth = _need(args, "depth")
    cap = walks.LANCZOS_CAP if args.cap is None else args.cap
    tri = walks.lanczos_path_weights(g, depth, cap=cap)
    source = walks.closed_walk_moments(g, depth, cap=max(depth, walks.WALK_CAP))
    induced = walks.closed_walk_moments(walks.path_graph(tri.beta_sq), depth, cap=max(depth, walks.WALK_CAP))
    rows = _cmp_rows(zip(source, induced))
    verdict = "verified" if all(r["match"] for r in rows) else "refuted"
    out = weights_to_json(tri.as_level_weights())
    result = {"beta_sq": out["lambda"], "terminated": tri.terminated, "rank": tri.rank}
    return Outcome(verdict, result, comparison=rows, witness=out, artifact=out)


def cmd_verify(args) -> Outcome:
    _, data = _load(args, "sequence")
    cap = walks.WALK_CAP if args.cap is None else args.cap
    rep = verify_theorem(sequence_from_json(data), _need(args, "k"), depth=args.depth, cap=cap)
    rows = [
        {"n": r.n, "lhs": rat_to_str(r.transformed), "rhs": rat_to_str(r.predicted), "match": r.match}
        for r in rep.rows
    ]
    witness = weights_to_json(rep.witness)
    result = {
        "k": rep.k,
        "weights": weights_to_json(rep.weights),
        "transformed": rats(rep.transformed),
        "b": rats(rep.walk_moments),
        "weights_nonnegative": rep.weights_nonnegative,
        "witness_nonnegative": rep.witness_nonnegative,
    }
    return Outcome(rep.verdict, result, comparison=rows, witness=witness, artifact=witness)


COMMANDS = {
    "transform": (cmd_transform, "apply the k x k Hankel-determinant transform"),
    "check-sm": (cmd_check_sm, "test both Hankel truncations for positive semidefiniteness"),
    "extract-weights": (cmd_extract_weights, "recover level weights from moments"),
    "enumerate-moments": (cmd_enumerate_moments, "moments generated by level weights"),
    "lgv-check": (cmd_lgv_check, "compare non-intersecting path sums with Hankel determinants"),
    "walk-sum": (cmd_walk_sum, "closed-walk moments of a product or explicit graph"),
    "lanczos": (cmd_lanczos, "reduce a bipartite graph to weights on the path graph"),
    "verify": (cmd_verify, "run the full transform-to-closed-walk verification"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hankel-walks", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_) in COMMANDS.items():
        p = sub.add_parser(name, help=help_)
        p.add_argument("--input", required=True, help="JSON input file")
        p.add_argument("--output", help="write the produced sequence/weights (or the report) here")
        p.add_argument("--k", type=int, help="number of paths / Hankel block size")
        p.add_argument("--depth", "--n", dest="depth", type=int, help="largest n or number of levels")
        p.add_argument("--cap", type=int, help="override the enumeration cap")
        p.add_argument("--a0", default="1/1", help="leading moment for weight-driven commands")
        p.add_argument("--format", choices=["json"], default="json")
    return parser


def _flags(args) -> dict:
    return {
        key: getattr(args, key)
        for key in ("k", "depth", "cap", "a0", "format")
        if getattr(args, key) is not None
    }


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    report = {"command": args.command, "flags": _flags(args)}
    try:
        report["inputs_digest"] = digest(load_json(args.input))
        outcome = COMMANDS[args.command][0](args)
    except (HankelWalksError, FormatError, ValueError) as exc:
        print(f"hankel-walks {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        report.update(verdict="error", exit_code=EXIT_ERROR, error=f"{type(exc).__name__}: {exc}")
        sys.stdout.write(dumps(report))
        return EXIT_ERROR
    report.update(verdict=outcome.verdict, exit_code=outcome.exit_code, result=outcome.result)
    if outcome.comparison is not None:
        report["comparison"] = outcome.comparison
    if outcome.witness is not None:
        report["witness"] = outcome.witness
    if args.output:
        write_json(outcome.artifact if outcome.artifact is not None else report, args.output)
    sys.stdout.write(dumps(report))
    return outcome.exit_code


if __name__ == "__main__":
    sys.exit(main())
