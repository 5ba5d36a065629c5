import json
from itertools import product

import pytest

from leibhom.algebra import (Alpha, Beta, LieAlgebra, Partial, adjoint, build_h, build_so,
                             build_translations, check_ideal_and_quotient, coadjoint, restricted,
                             trivial)
from leibhom.errors import ParameterOutOfRange
from leibhom.vf_frame import commutator

PAIRS = [(p, n - p) for n in (4, 5) for p in range(n + 1)]


def _matrix(f, n):
    """Linear part of an affine field as an (n+1)x(n+1) matrix acting on (x, 1)."""
    M = [[0] * (n + 1) for _ in range(n + 1)]
    for (i, j), v in f.linear_map.items():
        M[i - 1][j - 1] = v
    for i, v in f.constant_map.items():
        M[i - 1][n] = v
    return M


def _mul(A, B):
    return [[sum(A[i][k] * B[k][j] for k in range(len(B))) for j in range(len(B[0]))] for i in range(len(A))]


@pytest.mark.parametrize("p,q", PAIRS)
def test_structure(p, q):
    n = p + q
    h, so = build_h(p, q), build_so(p, q)
    assert so.dim == n * (n - 1) // 2
    assert h.dim == so.dim + n
    assert h.is_antisymmetric()
    assert h.jacobi_violations() == []
    assert check_ideal_and_quotient(h, so).passed


@pytest.mark.parametrize("p,q", [(2, 1), (1, 2), (2, 2)])
def test_structure_constants_against_matrix_commutators(p, q):
    """Vector-field bracket equals minus the commutator of the affine matrices."""
    n = p + q
    h = build_h(p, q)
    mats = [_matrix(lab.field(p, q), n) for lab in h.labels]
    for a, b in product(range(h.dim), repeat=2):
        AB, BA = _mul(mats[a], mats[b]), _mul(mats[b], mats[a])
        expected = [[BA[i][j] - AB[i][j] for j in range(n + 1)] for i in range(n + 1)]
        got = [[0] * (n + 1) for _ in range(n + 1)]
        for c, v in h.bracket(a, b).items():
            for i in range(n + 1):
                for j in range(n + 1):
                    got[i][j] += v * mats[c][i][j]
        assert got == expected


def test_bracket_examples():
    h = build_h(2, 2)
    ix = h.index
    assert h.bracket(ix[Partial(1)], ix[Partial(2)]) == {}
    assert set(h.bracket(ix[Alpha(1, 2)], ix[Partial(1)])) == {ix[Partial(2)]}
    assert set(h.bracket(ix[Beta(1, 3)], ix[Beta(2, 3)])) == {ix[Alpha(1, 2)]}


def test_fields_reproduce_brackets():
    h = build_h(3, 1)
    for a, b in product(range(h.dim), repeat=2):
        f = commutator(h.labels[a].field(3, 1), h.labels[b].field(3, 1))
        total = None
        for c, v in h.bracket(a, b).items():
            term = h.labels[c].field(3, 1).scale(v)
            total = term if total is None else total + term
        assert (f.is_zero() and total is None) or f == total


def test_json_round_trip():
    h = build_h(2, 1)
    back = LieAlgebra.from_json(h.to_json())
    assert back.labels == h.labels
    assert all(back.bracket(a, b) == h.bracket(a, b) for a in range(h.dim) for b in range(h.dim))
    assert json.loads(h.to_json())["p"] == 2


@pytest.mark.parametrize("make", [adjoint, coadjoint, trivial])
def test_representations_are_homomorphisms(make):
    h = build_h(2, 1)
    assert make(h).homomorphism_violations() == []


def test_restricted_representations():
    h, so, I = build_h(2, 2), build_so(2, 2), build_translations(2, 2)
    assert restricted(so, h).homomorphism_violations() == []
    partials = [lab for lab in h.labels if lab.is_partial]
    assert restricted(so, h, partials).homomorphism_violations() == []
    assert restricted(I, h, partials).is_trivial()


def test_translations_abelian():
    I = build_translations(3, 2)
    assert all(not I.bracket(a, b) for a in range(I.dim) for b in range(I.dim))


@pytest.mark.parametrize("p,q", [(0, 0), (-1, 3)])
def test_bad_parameters(p, q):
    with pytest.raises(ParameterOutOfRange):
        build_h(p, q)
