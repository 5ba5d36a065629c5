import pytest

from leibhom.algebra import Alpha, Beta, build_h
from leibhom.cohomology import cohomology_dims, torus_leibniz
from leibhom.linalg import EXACT, random_primes
from leibhom.weights import TorusGrading, euler_weights, sqrt_minus_one, torus_pairs

P = random_primes(1, seed=11, congruent_one_mod=4)[0]


def test_euler_weights():
    h = build_h(2, 1)
    assert euler_weights(h) == [0, 0, 0, -1, -1, -1]


def test_torus_pairs_are_disjoint():
    assert torus_pairs(2, 2) == [Alpha(1, 2), Alpha(3, 4)]
    assert torus_pairs(3, 2) == [Alpha(1, 2), Alpha(4, 5)]
    assert torus_pairs(3, 1) == [Alpha(1, 2), Beta(3, 4)]
    for p, q in [(2, 2), (3, 1), (4, 0), (3, 2), (4, 1), (5, 0)]:
        axes = [a for t in torus_pairs(p, q) for a in (t.i, t.j)]
        assert len(axes) == len(set(axes))


def test_sqrt_minus_one():
    r = sqrt_minus_one(P)
    assert r * r % P == P - 1
    with pytest.raises(ValueError):
        sqrt_minus_one(7)


@pytest.mark.parametrize("p,q", [(2, 2), (3, 1), (3, 2)])
def test_eigen_algebra_is_isomorphic(p, q):
    T = TorusGrading(p, q, P)
    A = T.algebra
    assert A.jacobi_violations() == [] and A.is_antisymmetric()
    n = len(T.B)
    BBinv = [[sum(T.B[i][k] * T.Binv[k][j] for k in range(n)) % P for j in range(n)] for i in range(n)]
    assert BBinv == [[int(i == j) for j in range(n)] for i in range(n)]
    # weights are additive on brackets
    for a in range(A.dim):
        for b in range(A.dim):
            w = tuple(x + y for x, y in zip(T.weights[a], T.weights[b]))
            assert all(T.weights[c] == w for c in A.bracket(a, b))


def test_nonzero_torus_blocks_are_acyclic():
    cx = torus_leibniz(2, 2, P)
    everything = cohomology_dims(cx, range(3), EXACT).dims()
    zero = cohomology_dims(cx, range(3), EXACT, weight_filter=lambda w: all(x == 0 for x in w[:-1])).dims()
    assert everything == zero == [0, 1, 1]
