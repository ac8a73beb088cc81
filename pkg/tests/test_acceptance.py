"""Exit criteria.  Every equality is exact; each criterion also has a wall-clock budget."""

import random
import time
from fractions import Fraction

import pytest

from hankel_walks import (
    ExplicitGraph,
    LevelWeights,
    ProductGraph,
    closed_walk_moments,
    enumerate_noncrossing,
    hankel_transform,
    iterate_L2,
    lanczos_path_weights,
    lgv_sum,
    moments_from_weights,
    path_graph,
    path_weight,
    phi,
    phi_inverse,
    sm_check,
    verify_theorem,
    walk_weight,
    weights_from_moments,
)
from oracles import CATALAN, FACTORIALS, random_bipartite, random_lambda

pytestmark = pytest.mark.acceptance


@pytest.fixture
def criterion(record_property):
    start = time.perf_counter()
    state = {}

    def tag(number, summary, budget):
        record_property("criterion", str(number))
        record_property("summary", summary)
        state["budget"] = budget

    yield tag
    elapsed = time.perf_counter() - start
    assert elapsed < state["budget"], f"took {elapsed:.1f}s, budget {state['budget']}s"


def test_1_l2_golden(criterion):
    criterion(1, "L_2(Catalan) golden values; matches lgv_sum for n <= 4", 5)
    out = hankel_transform(CATALAN[:11], 2)
    assert list(out)[:7] == [1, 1, 3, 14, 84, 594, 4719]
    unit = LevelWeights((1,) * 12)
    for n in range(5):
        assert lgv_sum(1, unit, 2, n) == out[n]


def test_2_lgv_brute_force(criterion):
    criterion(2, "lgv_sum == hankel_transform(moments) for k in {2,3}, n <= 3, 50 random lambda", 60)
    rng = random.Random(2024)
    for _ in range(50):
        lam = random_lambda(rng, 3 + 2 * 3)
        lw = LevelWeights(lam)
        for k in (2, 3):
            det_side = hankel_transform(moments_from_weights(lw, 1, 3 + 2 * k - 2), k)
            for n in range(4):
                assert lgv_sum(1, lw, k, n) == det_side[n]


def test_3_bijection(criterion):
    criterion(3, "phi is a weight-preserving bijection onto closed walks, k in {2,3}, n <= 4", 30)
    rng = random.Random(3)
    for k in (2, 3):
        unit = ProductGraph(k, LevelWeights((1,) * 16))
        counts = closed_walk_moments(unit, 4)
        lw = LevelWeights(random_lambda(rng, 4 + 2 * k))
        for n in range(5):
            tuples = enumerate_noncrossing(n, k)
            assert len(tuples) == counts[n]
            assert len({phi(t) for t in tuples}) == len(tuples)
            for t in tuples:
                assert phi_inverse(phi(t)) == t
                ground = Fraction(1)
                for j, p in enumerate(t.paths):
                    ground *= path_weight(p, lw, 2 * j)
                assert walk_weight(phi(t), lw) == ground


def test_4_theorem_pipeline(criterion):
    criterion(4, "verify_theorem on Catalan, factorials and 100 random positive-lambda sequences", 120)
    rng = random.Random(4)
    for k in (2, 3):
        sequences = [CATALAN[:11], FACTORIALS[:11]]
        for _ in range(100):
            sequences.append(moments_from_weights(LevelWeights(random_lambda(rng, 8)), 1, 8))
        for a in sequences:
            rep = verify_theorem(a, k)
            assert rep.identity_holds
            assert all(r.transformed == rep.transformed[0] * rep.walk_moments[r.n] for r in rep.rows)
            assert len(rep.rows) == len(rep.transformed)
            assert rep.witness_nonnegative, rep.witness
            assert rep.verdict == "verified"


def test_5_lanczos(criterion):
    criterion(5, "Lanczos reduction: 4-cycle -> (2,2); 20 random bipartite graphs reproduce moments to depth 5", 30)
    c4 = ExplicitGraph(range(4), [(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 0, 1)], 0)
    tri = lanczos_path_weights(c4, 4)
    assert tri.beta_sq == (2, 2) and tri.terminated
    assert list(closed_walk_moments(path_graph(tri.beta_sq), 4)) == [1, 2, 8, 32, 128]
    rng = random.Random(5)
    for _ in range(20):
        n, edges = random_bipartite(rng, 12)
        g = ExplicitGraph(range(n), edges, 0)
        tri = lanczos_path_weights(g, 5)
        src = closed_walk_moments(g, 5)
        assert moments_from_weights(tri.as_level_weights(), 1, 5) == src
        ref = weights_from_moments(src, levels=5)
        common = min(len(ref.lam), len(tri.beta_sq))
        assert tri.beta_sq[:common] == ref.lam[:common]
        assert ref.terminated == tri.terminated or len(tri.beta_sq) == 5


def test_6_sm_checks(criterion):
    criterion(6, "sm_check on Catalan and (1,2,1,2); iterate_L2 on factorials", 5)
    res = sm_check(CATALAN[:9])
    assert res.consistent and res.depth >= 4
    bad = sm_check([1, 2, 1, 2])
    assert not bad.consistent
    assert bad.matrix.quadratic_form(bad.witness) < 0
    out = iterate_L2(FACTORIALS[:9], 2)
    assert list(out)[:3] == [8, 144, 13824]
    assert all(x > 0 for x in out)


def test_7_weight_extraction(criterion):
    criterion(7, "weights_from_moments(n!) = (1,1,2,2); 200 random round trips", 10)
    assert weights_from_moments(FACTORIALS[:9]).lam == (1, 1, 2, 2)
    rng = random.Random(7)
    for _ in range(200):
        lam = random_lambda(rng, rng.randint(1, 5))
        a = moments_from_weights(LevelWeights(lam, terminated=True), 1, 2 * len(lam))
        assert weights_from_moments(a).lam == lam
