"""End-to-end constructive check that L_k keeps a sequence path-enumerable."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .dyck import LevelWeights, weights_from_moments
from .errors import CapExceeded, InsufficientTerms, MismatchBug, ZeroLeadingTerm
from .hankel import MomentPrefix, hankel_transform
from .walks import WALK_CAP, ProductGraph, closed_walk_moments


@dataclass(frozen=True)
class ComparisonRow:
    n: int
    transformed: Fraction  # a'_n
    predicted: Fraction  # a'_0 * b_n

    @property
    def match(self) -> bool:
        return self.transformed == self.predicted


@dataclass(frozen=True)
class VerificationReport:
    k: int
    sequence: MomentPrefix
    weights: LevelWeights
    transformed: MomentPrefix
    walk_moments: MomentPrefix
    rows: tuple[ComparisonRow, ...]
    witness: LevelWeights

    @property
    def identity_holds(self) -> bool:
        return all(r.match for r in self.rows)

    @property
    def weights_nonnegative(self) -> bool:
        return all(x >= 0 for x in self.weights.lam)

    @property
    def witness_nonnegative(self) -> bool:
        return all(x >= 0 for x in self.witness.lam)

    @property
    def verdict(self) -> str:
        if not self.identity_holds:
            return "error"
        if self.weights_nonnegative and not self.witness_nonnegative:
            return "refuted"
        return "verified"


def verify_theorem(a, k: int, depth: int | None = None, cap: int = WALK_CAP) -> VerificationReport:
    """Run the whole pipeline on a moment prefix.

    1. extract every level weight the prefix fixes;
    2. take the k x k Hankel-determinant transform;
    3. count weighted closed walks on the k-fold product graph;
    4. require ``a'_n == a'_0 * b_n`` exactly for each compared ``n``;
    5. extract level weights of ``b`` as the path-graph witness.

    ``depth`` bounds the largest compared ``n``; by default every ``n`` the
    prefix supports, up to ``cap``.
    """
    a = a if isinstance(a, MomentPrefix) else MomentPrefix(tuple(a))
    if k < 1:
        raise ValueError("k must be positive")
    if a[0] <= 0:
        raise ZeroLeadingTerm(f"a_0 must be positive, got {a[0]}")
    if len(a) < 2 * k + 1:
        raise InsufficientTerms(2 * k + 1, len(a), "verification")
    lam = weights_from_moments(a, levels=a.last_index)
    transformed = hankel_transform(a, k)
    n_max = transformed.last_index
    if depth is None:
        n_max = min(n_max, cap)
    else:
        if depth > cap:
            raise CapExceeded("depth", depth, cap)
        n_max = min(n_max, depth)
    b = closed_walk_moments(ProductGraph(k, lam), n_max, cap)
    rows = tuple(
        ComparisonRow(n, transformed[n], transformed[0] * b[n]) for n in range(n_max + 1)
    )
    bad = next((r for r in rows if not r.match), None)
    if bad is not None:
        raise MismatchBug(
            f"a'_{bad.n} = {bad.transformed} but a'_0 * b_{bad.n} = {bad.predicted}"
        )
    witness = weights_from_moments(b, levels=b.last_index)
    return VerificationReport(k, a, lam, transformed, b, rows, witness)


__all__ = ["ComparisonRow", "VerificationReport", "verify_theorem"]
