"""Exact moment prefixes, Hankel matrices, determinants and PSD decisions.

Everything here works on :class:`fractions.Fraction`; nothing is ever rounded.
The infinite Hankel matrix of a sequence is only ever seen through its finite
leading principal truncations, and every routine that shortens a prefix
returns a new :class:`MomentPrefix` whose length is the truncation bookkeeping.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import EmptyPrefix, InsufficientTerms

Rational = Fraction


def as_fraction(x) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings; floats are rejected."""
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass a Fraction or a 'p/q' string")
    return Fraction(x)


@dataclass(frozen=True)
class MomentPrefix:
    """A finite prefix ``(a_0, ..., a_N)`` of a real sequence."""

    terms: tuple[Fraction, ...]

    def __post_init__(self):
        terms = tuple(as_fraction(t) for t in self.terms)
        if not terms:
            raise EmptyPrefix("a moment prefix needs at least one term")
        object.__setattr__(self, "terms", terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __getitem__(self, n):
        return self.terms[n]

    def __iter__(self):
        return iter(self.terms)

    @property
    def last_index(self) -> int:
        return len(self.terms) - 1


@dataclass(frozen=True)
class SymMatrix:
    entries: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(as_fraction(x) for x in row) for row in self.entries)
        m = len(rows)
        if m == 0 or any(len(r) != m for r in rows):
            raise ValueError("SymMatrix needs a non-empty square grid")
        for i in range(m):
            for j in range(i):
                if rows[i][j] != rows[j][i]:
                    raise ValueError(f"entries ({i},{j}) and ({j},{i}) differ")
        object.__setattr__(self, "entries", rows)

    @property
    def size(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def quadratic_form(self, v: Sequence) -> Fraction:
        v = [as_fraction(x) for x in v]
        m = self.size
        return sum(
            (v[i] * self.entries[i][j] * v[j] for i in range(m) for j in range(m)),
            Fraction(0),
        )

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self.entries]


def _prefix(a) -> MomentPrefix:
    return a if isinstance(a, MomentPrefix) else MomentPrefix(tuple(a))


def hankel_matrix(a, s: int, m: int) -> SymMatrix:
    """The ``m x m`` matrix with ``(i, j)`` entry ``a_{i+j+s}``."""
    a = _prefix(a)
    if m < 1 or s < 0:
        raise ValueError("need m >= 1 and s >= 0")
    need = 2 * m - 1 + s
    if len(a) < need:
        raise InsufficientTerms(need, len(a))
    return SymMatrix(tuple(tuple(a[i + j + s] for j in range(m)) for i in range(m)))


def det_exact(M) -> Fraction:
    """Determinant by Gaussian elimination over the rationals."""
    rows = [list(r) for r in (M.entries if isinstance(M, SymMatrix) else M)]
    rows = [[as_fraction(x) for x in r] for r in rows]
    m = len(rows)
    det = Fraction(1)
    for c in range(m):
        p = next((r for r in range(c, m) if rows[r][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            rows[c], rows[p] = rows[p], rows[c]
            det = -det
        piv = rows[c][c]
        det *= piv
        for r in range(c + 1, m):
            f = rows[r][c] / piv
            if f:
                row_r, row_c = rows[r], rows[c]
                for j in range(c + 1, m):
                    row_r[j] -= f * row_c[j]
    return det


def shift(a, s: int) -> MomentPrefix:
    a = _prefix(a)
    if s < 0:
        raise ValueError("shift must be nonnegative")
    if len(a) <= s:
        raise InsufficientTerms(s + 1, len(a))
    return MomentPrefix(a.terms[s:])


def hankel_transform(a, k: int) -> MomentPrefix:
    """``a'_n = det(a_{n+i+j})_{i,j<k}`` for every n the prefix supports.

    The output has ``len(a) - 2k + 2`` terms.
    """
    a = _prefix(a)
    if k < 1:
        raise ValueError("k must be positive")
    if len(a) < 2 * k - 1:
        raise InsufficientTerms(2 * k - 1, len(a))
    out = [det_exact(hankel_matrix(a, n, k)) for n in range(len(a) - 2 * k + 2)]
    return MomentPrefix(tuple(out))


def iterate_L2(a, t: int) -> MomentPrefix:
    """Apply the 2x2 Hankel-determinant transform ``t`` times."""
    a = _prefix(a)
    if t < 0:
        raise ValueError("t must be nonnegative")
    if len(a) < 2 * t + 1:
        raise InsufficientTerms(2 * t + 1, len(a))
    for _ in range(t):
        a = hankel_transform(a, 2)
    return a


# -- positive semidefiniteness ---------------------------------------------


@dataclass(frozen=True)
class PSDResult:
    is_psd: bool
    witness: tuple[Fraction, ...] | None = None

    def __bool__(self) -> bool:
        return self.is_psd


def _integral(v: list[Fraction]) -> tuple[Fraction, ...]:
    # scale a rational witness to coprime integers
    den = math.lcm(*(x.denominator for x in v))
    ints = [int(x * den) for x in v]
    g = math.gcd(*ints) or 1
    return tuple(Fraction(x // g) for x in ints)


def psd_check(M: SymMatrix) -> PSDResult:
    """Decide positive semidefiniteness exactly by recursive Schur complements.

    On failure the returned witness ``v`` satisfies ``v^T M v < 0``.  Each
    elimination step records how to lift a witness of the reduced matrix back
    to the coordinates of the step before it.
    """
    A = M.tolist()
    idx = list(range(M.size))  # original coordinate of each live row
    lifts = []  # (pivot original index, {orig index: coeff}, pivot) per Schur step

    def lift(v: dict[int, Fraction]) -> tuple[Fraction, ...]:
        for p, row, d in reversed(lifts):
            v[p] = -sum((c * v.get(j, 0) for j, c in row.items()), Fraction(0)) / d
        full = [v.get(i, Fraction(0)) for i in range(M.size)]
        return _integral(full)

    while A:
        d = A[0][0]
        if d < 0:
            return PSDResult(False, lift({idx[0]: Fraction(1)}))
        if d == 0:
            j = next((j for j in range(1, len(A)) if A[0][j] != 0), None)
            if j is not None:
                # 2x2 block [[0, c], [c, e]]: v = (-(e+1)/(2c), 1) gives v^T B v = -1
                c, e = A[0][j], A[j][j]
                return PSDResult(False, lift({idx[0]: -(e + 1) / (2 * c), idx[j]: Fraction(1)}))
            A = [row[1:] for row in A[1:]]
            idx = idx[1:]
            continue
        row = {idx[j]: A[0][j] for j in range(1, len(A)) if A[0][j] != 0}
        lifts.append((idx[0], row, d))
        A = [
            [A[i][j] - A[i][0] * A[0][j] / d for j in range(1, len(A))]
            for i in range(1, len(A))
        ]
        idx = idx[1:]
    return PSDResult(True)


@dataclass(frozen=True)
class SMCheck:
    """Outcome of the truncated Stieltjes-moment test.

    ``sizes`` maps each shift (0 and 1) to the largest Hankel block the prefix
    supports; ``depth`` is the smaller of the two.  A consistent verdict is a
    necessary condition only.
    """

    consistent: bool
    depth: int
    sizes: dict[int, int] = field(default_factory=dict)
    shift: int | None = None
    matrix: SymMatrix | None = None
    witness: tuple[Fraction, ...] | None = None
    reason: str = ""

    @property
    def verdict(self) -> str:
        return "consistent-at-depth" if self.consistent else "refuted"


def sm_check(a) -> SMCheck:
    if not isinstance(a, MomentPrefix):
        a = tuple(a)
        if not a:
            raise EmptyPrefix("sm_check needs a non-empty prefix")
        a = MomentPrefix(a)
    sizes = {s: (len(a) - s + 1) // 2 for s in (0, 1)}
    sizes = {s: m for s, m in sizes.items() if m >= 1}
    depth = min(sizes.get(0, 0), sizes.get(1, 0))
    if a[0] == 0:
        bad = next((n for n, x in enumerate(a) if x != 0), None)
        if bad is not None:
            return SMCheck(
                False, depth, sizes, reason=f"a_0 = 0 forces a zero sequence but a_{bad} != 0"
            )
    for s, m in sizes.items():
        H = hankel_matrix(a, s, m)
        res = psd_check(H)
        if not res:
            # report the smallest leading block that already fails
            for mm in range(1, m + 1):
                sub = hankel_matrix(a, s, mm)
                small = psd_check(sub)
                if not small:
                    return SMCheck(False, depth, sizes, s, sub, small.witness,
                                   f"H(theta^{s} a) truncated to {mm}x{mm} is not PSD")
    return SMCheck(True, depth, sizes)


__all__ = [
    "Rational",
    "MomentPrefix",
    "SymMatrix",
    "PSDResult",
    "SMCheck",
    "as_fraction",
    "hankel_matrix",
    "det_exact",
    "shift",
    "hankel_transform",
    "iterate_L2",
    "psd_check",
    "sm_check",
]

