"""Dyck paths, level weights, and the moments <-> weights correspondence.

Weights are stored squared: ``lam[h-1]`` is the factor contributed by one
upstep ending at height ``h`` together with its matching downstep.  With that
convention every path weight is a monomial in the ``lam`` values and stays
rational even when the per-step weights would be irrational.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .errors import (
    CapExceeded,
    InconsistentMoments,
    InsufficientWeights,
    ZeroLeadingTerm,
)
from .hankel import MomentPrefix, as_fraction

DYCK_CAP = 12


@dataclass(frozen=True)
class LevelWeights:
    lam: tuple[Fraction, ...]
    terminated: bool = False

    def __post_init__(self):
        object.__setattr__(self, "lam", tuple(as_fraction(x) for x in self.lam))

    def __len__(self) -> int:
        return len(self.lam)

    def level(self, h: int) -> Fraction:
        """Weight of level ``h`` (1-based); zero past the end of a terminated list."""
        if h < 1:
            raise ValueError("levels are 1-based")
        if h <= len(self.lam):
            return self.lam[h - 1]
        if self.terminated:
            return Fraction(0)
        raise InsufficientWeights(h, len(self.lam))


@dataclass(frozen=True)
class DyckPath:
    steps: str

    def __post_init__(self):
        h = 0
        for c in self.steps:
            if c == "U":
                h += 1
            elif c == "D":
                h -= 1
            else:
                raise ValueError(f"unknown step {c!r}; use 'U' or 'D'")
            if h < 0:
                raise ValueError(f"{self.steps!r} dips below height 0")
        if h != 0:
            raise ValueError(f"{self.steps!r} does not return to height 0")

    def __len__(self) -> int:
        return len(self.steps)

    def __str__(self) -> str:
        return self.steps

    @property
    def semilength(self) -> int:
        return len(self.steps) // 2

    @property
    def heights(self) -> tuple[int, ...]:
        out = [0]
        for c in self.steps:
            out.append(out[-1] + (1 if c == "U" else -1))
        return tuple(out)

    @property
    def max_height(self) -> int:
        return max(self.heights)


def _dyck_words(n: int) -> Iterator[str]:
    def rec(prefix: str, ups: int, h: int):
        if len(prefix) == 2 * n:
            yield prefix
            return
        if ups < n:
            yield from rec(prefix + "U", ups + 1, h + 1)
        if h > 0:
            yield from rec(prefix + "D", ups, h - 1)

    yield from rec("", 0, 0)


def enumerate_dyck(n: int, cap: int = DYCK_CAP) -> list[DyckPath]:
    """All Dyck paths of length ``2n``, upsteps ordered before downsteps."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > cap:
        raise CapExceeded("n", n, cap)
    return [DyckPath(w) for w in _dyck_words(n)]


def path_weight(P: DyckPath, lw: LevelWeights, shift: int = 0) -> Fraction:
    """Product of ``lam_{h+shift}`` over the upsteps of ``P`` ending at height ``h``."""
    if shift < 0 or shift % 2:
        raise ValueError("shift must be an even nonnegative integer")
    w = Fraction(1)
    h = 0
    for c in P.steps:
        if c == "U":
            h += 1
            w *= lw.level(h + shift)
        else:
            h -= 1
    return w


def moments_from_weights(lw: LevelWeights, a0=1, N: int = 0, cap: int = DYCK_CAP) -> MomentPrefix:
    """``a_n = a0 * sum of path weights over Dyck paths of length 2n``, n <= N.

    Computed with a height-indexed transfer vector rather than by listing paths.
    """
    a0 = as_fraction(a0)
    if a0 < 0:
        raise ValueError("a0 must be nonnegative")
    if N < 0:
        raise ValueError("N must be nonnegative")
    if N > cap:
        raise CapExceeded("N", N, cap)
    out = [a0]
    vec = {0: Fraction(1)}
    for i in range(1, 2 * N + 1):
        room = 2 * N - i  # heights above this cannot return to 0 in time
        nxt: dict[int, Fraction] = {}
        for h, x in vec.items():
            if h + 1 <= room:
                up = lw.level(h + 1)
                if up:
                    nxt[h + 1] = nxt.get(h + 1, 0) + x * up
            if h > 0:
                nxt[h - 1] = nxt.get(h - 1, 0) + x
        vec = {h: x for h, x in nxt.items() if x}
        if i % 2 == 0:
            out.append(a0 * vec.get(0, Fraction(0)))
    return MomentPrefix(tuple(out))


def _series_inverse(f: list[Fraction]) -> list[Fraction]:
    # f[0] == 1
    g = [Fraction(1)]
    for n in range(1, len(f)):
        g.append(-sum((f[i] * g[n - i] for i in range(1, n + 1)), Fraction(0)))
    return g


def weights_from_moments(a, levels: int | None = None) -> LevelWeights:
    """Recover level weights from a moment prefix by S-fraction extraction.

    The generating function is peeled one level at a time,
    ``F = 1 / (1 - lam_j x F')``.  A prefix ``a_0..a_N`` fixes
    ``lam_1..lam_N``; by default only the first ``N // 2`` are reported, pass
    ``levels`` to get more.  An exact zero ``lam_j`` is accepted as
    termination only if every later moment agrees with it, otherwise
    :class:`InconsistentMoments` names the first disagreeing index.  A
    terminated result is always reported in full.
    """
    a = a if isinstance(a, MomentPrefix) else MomentPrefix(tuple(a))
    N = a.last_index
    a0 = a[0]
    if a0 <= 0:
        if a0 == 0 and all(x == 0 for x in a):
            return LevelWeights((), terminated=True)
        raise ZeroLeadingTerm(f"a_0 must be positive, got {a0}")
    if levels is None:
        levels = N // 2
    if not 0 <= levels <= N:
        raise ValueError(f"levels must lie in [0, {N}]")

    F = [x / a0 for x in a]
    lam: list[Fraction] = []
    j = 0
    while len(F) > 1:
        j += 1
        G = _series_inverse(F)
        d = [-g for g in G[1:]]  # coefficients of 1 - 1/F from order 1
        if d[0] == 0:
            bad = next((i for i, x in enumerate(d) if x != 0), None)
            if bad is not None:
                raise InconsistentMoments(bad + j)
            return LevelWeights(tuple(lam), terminated=True)
        lam.append(d[0])
        F = [x / d[0] for x in d]
    return LevelWeights(tuple(lam[:levels]), terminated=False)


__all__ = [
    "DYCK_CAP",
    "LevelWeights",
    "DyckPath",
    "enumerate_dyck",
    "path_weight",
    "moments_from_weights",
    "weights_from_moments",
]
