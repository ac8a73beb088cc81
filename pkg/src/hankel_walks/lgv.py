"""Tuples of non-crossing Dyck paths and the determinant-as-path-sum identity.

Two representations of the same objects live here.  A :class:`PathTuple`
is the ground form: ``k`` Dyck paths of equal length, each lying weakly
below the next.  A :class:`ShiftedTuple` is the lifted form: path ``j``
starts ``2(j-1)`` units to the left, climbs ``2(j-1)`` forced upsteps, runs
the ground path raised by ``2(j-1)``, then descends.  Lifted tuples are
vertex-disjoint exactly when the ground tuple is non-crossing.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .dyck import DYCK_CAP, DyckPath, LevelWeights, enumerate_dyck, path_weight
from .errors import CapExceeded, MalformedPadding
from .hankel import as_fraction

TUPLE_N_CAP = 6
TUPLE_K_CAP = 4


@dataclass(frozen=True)
class PathTuple:
    paths: tuple[DyckPath, ...]

    def __post_init__(self):
        paths = tuple(p if isinstance(p, DyckPath) else DyckPath(p) for p in self.paths)
        if not paths:
            raise ValueError("a path tuple needs k >= 1 paths")
        if len({len(p) for p in paths}) != 1:
            raise ValueError("all paths in a tuple must have the same length")
        for j in range(len(paths) - 1):
            lo, hi = paths[j].heights, paths[j + 1].heights
            if any(x > y for x, y in zip(lo, hi)):
                raise ValueError(f"path {j + 1} crosses above path {j + 2}")
        object.__setattr__(self, "paths", paths)

    @property
    def k(self) -> int:
        return len(self.paths)

    @property
    def semilength(self) -> int:
        return self.paths[0].semilength

    def key(self) -> str:
        return "".join(p.steps for p in self.paths)


@dataclass(frozen=True)
class ShiftedTuple:
    """Lifted tuple; ``paths[j]`` is a step string starting at ``(-2j, 0)``."""

    paths: tuple[str, ...]

    def start(self, j: int) -> int:
        return -2 * j

    def vertices(self, j: int) -> list[tuple[int, int]]:
        x, h = self.start(j), 0
        out = [(x, h)]
        for c in self.paths[j]:
            x += 1
            h += 1 if c == "U" else -1
            out.append((x, h))
        return out

    def is_non_intersecting(self) -> bool:
        seen: set[tuple[int, int]] = set()
        for j in range(len(self.paths)):
            vs = set(self.vertices(j))
            if vs & seen:
                return False
            seen |= vs
        return True


def _check_caps(n: int, k: int, n_cap: int, k_cap: int) -> None:
    if n < 0 or k < 1:
        raise ValueError("need n >= 0 and k >= 1")
    if n > n_cap:
        raise CapExceeded("n", n, n_cap)
    if k > k_cap:
        raise CapExceeded("k", k, k_cap)


def enumerate_noncrossing(
    n: int, k: int, n_cap: int = TUPLE_N_CAP, k_cap: int = TUPLE_K_CAP
) -> list[PathTuple]:
    """Every k-tuple of length-2n Dyck paths with P_j weakly below P_{j+1}.

    Sorted by the concatenated step strings.
    """
    _check_caps(n, k, n_cap, k_cap)
    paths = enumerate_dyck(n, cap=max(n, DYCK_CAP))
    heights = [p.heights for p in paths]
    above = [
        [b for b in range(len(paths)) if all(x <= y for x, y in zip(heights[a], heights[b]))]
        for a in range(len(paths))
    ]
    out: list[tuple[int, ...]] = []

    def rec(chosen: tuple[int, ...]):
        if len(chosen) == k:
            out.append(chosen)
            return
        for b in above[chosen[-1]]:
            rec(chosen + (b,))

    for a in range(len(paths)):
        rec((a,))
    tuples = [PathTuple(tuple(paths[i] for i in c)) for c in out]
    tuples.sort(key=PathTuple.key)
    return tuples


def lift_tuple(t: PathTuple) -> ShiftedTuple:
    return ShiftedTuple(
        tuple("U" * (2 * j) + p.steps + "D" * (2 * j) for j, p in enumerate(t.paths))
    )


def drop_tuple(s: ShiftedTuple) -> PathTuple:
    ground = []
    for j, w in enumerate(s.paths):
        pad = 2 * j
        if len(w) < 2 * pad or w[:pad] != "U" * pad or w[len(w) - pad:] != "D" * pad:
            raise MalformedPadding(
                f"path {j + 1} must open with {pad} upsteps and close with {pad} downsteps"
            )
        middle = w[pad:len(w) - pad]
        try:
            ground.append(DyckPath(middle))
        except ValueError as exc:
            raise MalformedPadding(f"path {j + 1}: {exc}") from None
    try:
        return PathTuple(tuple(ground))
    except ValueError as exc:
        raise MalformedPadding(str(exc)) from None


def noncrossing_sum(
    lw: LevelWeights, k: int, n: int, n_cap: int = TUPLE_N_CAP, k_cap: int = TUPLE_K_CAP
) -> Fraction:
    """Ground-form sum: over non-crossing tuples, path j weighted with shift 2j-2.

    This is the normalised sequence ``b_n`` with ``b_0 = 1``.
    """
    total = Fraction(0)
    for t in enumerate_noncrossing(n, k, n_cap, k_cap):
        w = Fraction(1)
        for j, p in enumerate(t.paths):
            w *= path_weight(p, lw, 2 * j)
            if not w:
                break
        total += w
    return total


def lgv_sum(
    a0, lw: LevelWeights, k: int, n: int, n_cap: int = TUPLE_N_CAP, k_cap: int = TUPLE_K_CAP
) -> Fraction:
    """``a0^k`` times the sum over lifted non-intersecting tuples of the
    product of unshifted path weights.

    Equals the k x k Hankel determinant of the moments generated by ``lw``.
    """
    a0 = as_fraction(a0)
    total = Fraction(0)
    for t in enumerate_noncrossing(n, k, n_cap, k_cap):
        w = Fraction(1)
        for steps in lift_tuple(t).paths:
            w *= path_weight(DyckPath(steps), lw, 0)
            if not w:
                break
        total += w
    return a0**k * total


__all__ = [
    "TUPLE_N_CAP",
    "TUPLE_K_CAP",
    "PathTuple",
    "ShiftedTuple",
    "enumerate_noncrossing",
    "lift_tuple",
    "drop_tuple",
    "noncrossing_sum",
    "lgv_sum",
]
