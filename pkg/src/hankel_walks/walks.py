"""Weighted closed walks on bipartite graphs.

Two graph kinds are supported.  :class:`ProductGraph` is the infinite graph
on sorted, equal-parity tuples in N^k whose edges change every coordinate by
exactly one; its vertices are generated on demand.  :class:`ExplicitGraph`
is a finite user graph with symmetric rational edge weights.

Product-graph edges carry *directed* weights: moving coordinate ``j``
(1-based) up to height ``h`` costs ``lam_{h+2j-2}`` and moving down costs 1.
Along any closed walk each coordinate traces a Dyck path, so this gauge
gives every closed walk the same weight as the symmetric square-root form,
while keeping every number rational.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Hashable, Sequence

from .dyck import LevelWeights
from .errors import (
    CapExceeded,
    InsufficientWeights,
    InvalidWalk,
    LanczosBreakdown,
    NotAdjacent,
    NotBipartite,
)
from .hankel import MomentPrefix, as_fraction
from .lgv import PathTuple

WALK_CAP = 8
LANCZOS_CAP = 32

Vertex = tuple[int, ...]


def is_vertex(v: Sequence[int]) -> bool:
    if not v or v[0] < 0:
        return False
    p = v[0] % 2
    return all(x % 2 == p for x in v) and all(v[i] <= v[i + 1] for i in range(len(v) - 1))


def neighbors(v: Vertex, k: int | None = None) -> list[Vertex]:
    """Product-graph neighbours of ``v``, in sorted order."""
    v = tuple(v)
    if k is not None and len(v) != k:
        raise ValueError(f"vertex {v} does not have {k} coordinates")
    out = []
    for d in itertools.product((-1, 1), repeat=len(v)):
        u = tuple(x + dx for x, dx in zip(v, d))
        if is_vertex(u):
            out.append(u)
    out.sort()
    return out


def _adjacent(u: Vertex, v: Vertex) -> bool:
    return (
        len(u) == len(v)
        and is_vertex(u)
        and is_vertex(v)
        and all(abs(x - y) == 1 for x, y in zip(u, v))
    )


def edge_weight_directed(u: Vertex, v: Vertex, lw: LevelWeights) -> Fraction:
    if not _adjacent(tuple(u), tuple(v)):
        raise NotAdjacent(f"{tuple(u)} and {tuple(v)} are not adjacent")
    w = Fraction(1)
    for j, (x, y) in enumerate(zip(u, v)):
        if y == x + 1:
            w *= lw.level(y + 2 * j)
    return w


@dataclass(frozen=True)
class ProductGraph:
    k: int
    weights: LevelWeights

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be positive")

    @property
    def root(self) -> Vertex:
        return (0,) * self.k

    def neighbors(self, v: Vertex) -> list[Vertex]:
        return neighbors(v, self.k)

    def weight(self, u: Vertex, v: Vertex) -> Fraction:
        return edge_weight_directed(u, v, self.weights)

    def distance_bound(self, v: Vertex) -> int:
        # each step moves the top coordinate by one
        return v[-1]


class ExplicitGraph:
    """Finite undirected graph with symmetric rational edge weights.

    Vertices are addressed by position in ``vertices``.  The component of
    ``root`` is two-coloured on construction and :class:`NotBipartite` is
    raised if that fails.
    """

    def __init__(self, vertices: Sequence[Hashable], edges, root: int = 0):
        self.vertices = tuple(vertices)
        n = len(self.vertices)
        if not 0 <= root < n:
            raise ValueError(f"root {root} out of range for {n} vertices")
        self.root = root
        self.adj: list[dict[int, Fraction]] = [{} for _ in range(n)]
        for i, j, w in edges:
            if not (0 <= i < n and 0 <= j < n):
                raise ValueError(f"edge ({i}, {j}) references a missing vertex")
            if j in self.adj[i]:
                raise ValueError(f"duplicate edge ({i}, {j})")
            w = as_fraction(w)
            self.adj[i][j] = w
            self.adj[j][i] = w
        self.color = self._two_color()
        self.dist = self._bfs()

    @property
    def edges(self) -> list[tuple[int, int, Fraction]]:
        return [(i, j, w) for i in range(len(self.adj)) for j, w in sorted(self.adj[i].items()) if i <= j]

    def _two_color(self) -> dict[int, int]:
        color = {self.root: 0}
        todo = deque([self.root])
        while todo:
            u = todo.popleft()
            for v in self.adj[u]:
                if v not in color:
                    color[v] = 1 - color[u]
                    todo.append(v)
                elif color[v] == color[u]:
                    raise NotBipartite(f"odd cycle through vertices {u} and {v}")
        return color

    def _bfs(self) -> dict[int, int]:
        dist = {self.root: 0}
        todo = deque([self.root])
        while todo:
            u = todo.popleft()
            for v in self.adj[u]:
                if v not in dist:
                    dist[v] = dist[u] + 1
                    todo.append(v)
        return dist

    def neighbors(self, v: int) -> list[int]:
        return sorted(self.adj[v])

    def weight(self, u: int, v: int) -> Fraction:
        try:
            return self.adj[u][v]
        except KeyError:
            raise NotAdjacent(f"no edge between {u} and {v}") from None

    def distance_bound(self, v: int) -> int:
        return self.dist[v]

    def adjacency_matrix(self) -> list[list[Fraction]]:
        n = len(self.vertices)
        return [[self.adj[i].get(j, Fraction(0)) for j in range(n)] for i in range(n)]


WalkGraph = ProductGraph | ExplicitGraph


def path_graph(beta_sq: Sequence) -> ProductGraph:
    """The weighted path on N with squared edge weights ``beta_sq`` (terminated)."""
    return ProductGraph(1, LevelWeights(tuple(beta_sq), terminated=True))


def materialize(g: ProductGraph, radius: int) -> ExplicitGraph:
    """Ball of the given radius around the root as an explicit graph.

    Only possible when the directed weights are symmetric on every edge of
    the ball (e.g. unit level weights).
    """
    order = [g.root]
    dist = {g.root: 0}
    todo = deque([g.root])
    while todo:
        u = todo.popleft()
        if dist[u] == radius:
            continue
        for v in g.neighbors(u):
            if v not in dist:
                dist[v] = dist[u] + 1
                order.append(v)
                todo.append(v)
    index = {v: i for i, v in enumerate(order)}
    edges = []
    for u in order:
        for v in g.neighbors(u):
            if v in index and index[u] < index[v]:
                w, back = g.weight(u, v), g.weight(v, u)
                if w != back:
                    raise ValueError(f"edge {u}-{v} has asymmetric weights {w} and {back}")
                edges.append((index[u], index[v], w))
    return ExplicitGraph(order, edges, 0)


def closed_walk_weights(g: WalkGraph, length: int) -> list[Fraction]:
    """Weighted count of closed walks at the root for every length 0..length."""
    out = [Fraction(1)]
    vec = {g.root: Fraction(1)}
    for i in range(1, length + 1):
        room = length - i
        nxt: dict = {}
        for u, x in vec.items():
            for v in g.neighbors(u):
                if g.distance_bound(v) > room:
                    continue
                w = g.weight(u, v)
                if w:
                    nxt[v] = nxt.get(v, 0) + x * w
        vec = {v: x for v, x in nxt.items() if x}
        out.append(vec.get(g.root, Fraction(0)))
    return out


def closed_walk_moments(g: WalkGraph, N: int, cap: int = WALK_CAP) -> MomentPrefix:
    """``(W_0, ..., W_N)`` with ``W_n`` the weighted count of closed walks of length 2n."""
    if N < 0:
        raise ValueError("N must be nonnegative")
    if N > cap:
        raise CapExceeded("n", N, cap)
    return MomentPrefix(tuple(closed_walk_weights(g, 2 * N)[::2]))


def closed_walk_sum(g: WalkGraph, n: int, cap: int = WALK_CAP) -> Fraction:
    return closed_walk_moments(g, n, cap)[n]


# -- tuples of paths <-> closed walks ----------------------------------------


@dataclass(frozen=True)
class ClosedWalk:
    vertices: tuple[Vertex, ...]

    def __len__(self) -> int:
        return len(self.vertices) - 1


def phi(t: PathTuple) -> ClosedWalk:
    """Read the k path heights at each time step as one vertex of the product graph."""
    hs = [p.heights for p in t.paths]
    return ClosedWalk(tuple(tuple(h[i] for h in hs) for i in range(len(hs[0]))))


def phi_inverse(wk: ClosedWalk) -> PathTuple:
    vs = [tuple(v) for v in wk.vertices]
    if not vs or len(vs) % 2 == 0:
        raise InvalidWalk("a closed walk has an even number of steps")
    k = len(vs[0])
    root = (0,) * k
    if vs[0] != root or vs[-1] != root:
        raise InvalidWalk(f"walk must start and end at {root}")
    for u, v in zip(vs, vs[1:]):
        if not _adjacent(u, v):
            raise InvalidWalk(f"{u} -> {v} is not an edge of the product graph")
    steps = [
        "".join("U" if vs[i + 1][j] > vs[i][j] else "D" for i in range(len(vs) - 1))
        for j in range(k)
    ]
    return PathTuple(tuple(steps))


def walk_weight(wk: ClosedWalk, lw: LevelWeights) -> Fraction:
    w = Fraction(1)
    for u, v in zip(wk.vertices, wk.vertices[1:]):
        w *= edge_weight_directed(u, v, lw)
    return w


# -- Lanczos -----------------------------------------------------------------


@dataclass(frozen=True)
class TridiagonalWeights:
    """Squared off-diagonal entries of a zero-diagonal Jacobi matrix."""

    beta_sq: tuple[Fraction, ...]
    terminated: bool

    @property
    def rank(self) -> int | None:
        return len(self.beta_sq) if self.terminated else None

    def as_level_weights(self) -> LevelWeights:
        return LevelWeights(self.beta_sq, self.terminated)


def _apply_left(g: WalkGraph, x: dict) -> dict:
    # row vector times A, A[u][v] = weight(u -> v)
    out: dict = {}
    for u, c in x.items():
        for v in g.neighbors(u):
            w = g.weight(u, v)
            if w:
                out[v] = out.get(v, 0) + c * w
    return out


def _apply_right(g: WalkGraph, y: dict) -> dict:
    out: dict = {}
    for v, c in y.items():
        for u in g.neighbors(v):
            w = g.weight(u, v)
            if w:
                out[u] = out.get(u, 0) + w * c
    return out


def _axpy(x: dict, beta: Fraction, y: dict) -> dict:
    out = dict(x)
    for v, c in y.items():
        out[v] = out.get(v, 0) - beta * c
    return {v: c for v, c in out.items() if c}


def _dot(x: dict, y: dict) -> Fraction:
    if len(x) > len(y):
        x, y = y, x
    return sum((c * y[v] for v, c in x.items() if v in y), Fraction(0))


def lanczos_path_weights(g: WalkGraph, depth: int, cap: int = LANCZOS_CAP) -> TridiagonalWeights:
    """Tridiagonalise ``g`` from its root with the monic three-term recurrence.

    ``p_{m+1} = A p_m - beta_m^2 p_{m-1}`` with
    ``beta_m^2 = <p_m, p_m> / <p_{m-1}, p_{m-1}>``; no square roots are taken.
    The diagonal terms vanish because ``p_m`` lives on one colour class.
    For product graphs, whose gauge weights are not symmetric, the same
    recurrence is run from both sides and the left and right vectors are
    paired instead of squared.  An exactly zero vector ends the recurrence
    and marks the result terminated: the path graph then reproduces every
    closed-walk moment of ``g``, not only the first ``depth``.
    """
    if depth < 1:
        raise ValueError("depth must be positive")
    if depth > cap:
        raise CapExceeded("depth", depth, cap)
    symmetric = isinstance(g, ExplicitGraph)
    left = right = {g.root: Fraction(1)}
    prev_left: dict = {}
    prev_right: dict = {}
    norm = Fraction(1)
    beta_sq: list[Fraction] = []
    # one step past depth only to detect an exact stop
    for step in range(depth + 1):
        b = beta_sq[-1] if beta_sq else Fraction(0)
        try:
            new_left = _axpy(_apply_left(g, left), b, prev_left)
            new_right = new_left if symmetric else _axpy(_apply_right(g, right), b, prev_right)
        except InsufficientWeights:
            if step < depth:
                raise
            break
        if not new_left or not new_right:
            return TridiagonalWeights(tuple(beta_sq), True)
        if step == depth:
            break
        new_norm = _dot(new_left, new_right)
        if new_norm == 0:
            raise LanczosBreakdown("left and right Lanczos vectors became orthogonal")
        beta_sq.append(new_norm / norm)
        prev_left, prev_right = left, right
        left, right, norm = new_left, new_right, new_norm
    return TridiagonalWeights(tuple(beta_sq), False)


__all__ = [
    "WALK_CAP",
    "LANCZOS_CAP",
    "Vertex",
    "is_vertex",
    "neighbors",
    "edge_weight_directed",
    "ProductGraph",
    "ExplicitGraph",
    "WalkGraph",
    "path_graph",
    "materialize",
    "closed_walk_weights",
    "closed_walk_moments",
    "closed_walk_sum",
    "ClosedWalk",
    "phi",
    "phi_inverse",
    "walk_weight",
    "TridiagonalWeights",
    "lanczos_path_weights",
]
