from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from leibhom.algebra import adjoint, build_h, build_so, build_translations, coadjoint, restricted, trivial
from leibhom.cohomology import cohomology_dims, euler_weights_of
from leibhom.complexes import (CEComplex, LeibnizComplex, LieHomologyComplex, RelativeComplex,
                               SubComplex, pi_star)
from leibhom.errors import NotACocycle
from leibhom.linalg import EXACT, kernel_basis
from leibhom.multilinear import wedge_sort

H21 = build_h(2, 1)
SO3 = build_so(3, 0)


def _act(rep, g, vec):
    out = {}
    for m, v in vec.items():
        for m2, c in rep.act[g][m].items():
            out[m2] = out.get(m2, 0) + c * v
    return out


def _add(out, vec, s):
    for m, v in vec.items():
        out[m] = out.get(m, 0) + s * v


def _bracket_into(alg, word, i, j):
    """Words (with coefficients) replacing slot i by [g_i, g_j] and dropping slot j (0-based, i<j)."""
    for c, lam in alg.bracket(word[i], word[j]).items():
        yield word[:i] + (c,) + word[i + 1:j] + word[j + 1:], lam


def leibniz_pull(alg, rep, f, word):
    """Leibniz coboundary evaluated on one argument word, straight from its defining sum."""
    k1 = len(word)
    out = {}
    _add(out, _act(rep, word[0], f.get(word[1:], {})), 1)
    for i in range(2, k1 + 1):
        rest = word[:i - 1] + word[i:]
        # [v, g] = -g . v
        _add(out, _act(rep, word[i - 1], f.get(rest, {})), -((-1) ** i))
    for i in range(1, k1 + 1):
        for j in range(i + 1, k1 + 1):
            for w, lam in _bracket_into(alg, word, i - 1, j - 1):
                _add(out, f.get(w, {}), (-1) ** (j + 1) * lam)
    return {m: v for m, v in out.items() if v}


def ce_pull(alg, rep, f, word):
    """CE coboundary with the same sign pattern, on a sorted wedge word."""
    k1 = len(word)

    def val(w):
        s, u = wedge_sort(w)
        return {m: s * v for m, v in f.get(u, {}).items()} if s else {}

    out = {}
    for i in range(1, k1 + 1):
        _add(out, _act(rep, word[i - 1], val(word[:i - 1] + word[i:])), (-1) ** i)
    for i in range(1, k1 + 1):
        for j in range(i + 1, k1 + 1):
            for w, lam in _bracket_into(alg, word, i - 1, j - 1):
                _add(out, val(w), (-1) ** j * lam)
    return {m: v for m, v in out.items() if v}


def _random_terms(draw, cx, k, size=6):
    basis = cx.basis(k)
    keys = draw(st.lists(st.sampled_from(basis), max_size=size, unique=True))
    return {key: draw(st.integers(-3, 3).filter(bool)) for key in keys}


@st.composite
def leibniz_case(draw):
    rep = draw(st.sampled_from([adjoint(H21), trivial(H21), coadjoint(H21)]))
    k = draw(st.integers(0, 2))
    return LeibnizComplex(H21, rep), k, _random_terms(draw, LeibnizComplex(H21, rep), k)


@st.composite
def ce_case(draw):
    alg = draw(st.sampled_from([H21, build_h(2, 2)]))
    rep = draw(st.sampled_from(["adjoint", "trivial", "coadjoint"]))
    rep = {"adjoint": adjoint, "trivial": trivial, "coadjoint": coadjoint}[rep](alg)
    cx = CEComplex(alg, rep)
    k = draw(st.integers(0, 3))
    return cx, k, _random_terms(draw, cx, k)


@given(leibniz_case())
def test_leibniz_square_zero(case):
    cx, k, f = case
    assert cx.apply(cx.apply(f)) == {}


@given(ce_case())
def test_ce_square_zero(case):
    cx, k, f = case
    assert cx.apply(cx.apply(f)) == {}


@given(st.integers(1, 3), st.data())
def test_homology_square_zero(k, data):
    I = build_translations(2, 2)
    cx = LieHomologyComplex(I, restricted(I, build_h(2, 2)))
    f = _random_terms(data.draw, cx, k)
    assert cx.apply(cx.apply(f)) == {}


@given(leibniz_case())
def test_leibniz_push_matches_defining_sum(case):
    cx, k, f = case
    words = {}
    for (w, m), v in f.items():
        words.setdefault(w, {})[m] = v
    got = cx.apply(f)
    for word in product(range(H21.dim), repeat=k + 1):
        expected = leibniz_pull(H21, cx.rep, words, word)
        assert {m: got[(word, m)] for m in range(cx.rep.module_dim) if (word, m) in got} == expected


@given(ce_case())
def test_ce_push_matches_defining_sum(case):
    cx, k, f = case
    words = {}
    for (w, m), v in f.items():
        words.setdefault(w, {})[m] = v
    got = cx.apply(f)
    for (word, m) in cx.basis(k + 1):
        assert got.get((word, m), 0) == ce_pull(cx.alg, cx.rep, words, word).get(m, 0)


def _betti(cx, top):
    return cohomology_dims(cx, range(top + 1), EXACT).dims()


def test_known_betti_numbers():
    assert _betti(CEComplex(SO3, trivial(SO3)), 3) == [1, 0, 0, 1]
    assert _betti(CEComplex(build_so(2, 1), trivial(build_so(2, 1))), 3) == [1, 0, 0, 1]
    I3 = build_translations(3, 0)
    assert _betti(CEComplex(I3, trivial(I3)), 3) == [1, 3, 3, 1]
    assert _betti(LeibnizComplex(I3, trivial(I3)), 2) == [1, 3, 9]


def test_semisimple_leibniz_cohomology_vanishes():
    assert _betti(LeibnizComplex(SO3, trivial(SO3)), 3) == [1, 0, 0, 0]
    assert _betti(LeibnizComplex(SO3, adjoint(SO3)), 2) == [0, 0, 0]


def test_euler_grading_does_not_change_dims():
    h = build_h(2, 1)
    w = euler_weights_of(h)
    plain = cohomology_dims(LeibnizComplex(h, adjoint(h)), range(3), EXACT)
    graded = cohomology_dims(LeibnizComplex(h, adjoint(h), "", w, w), range(3), EXACT)
    assert plain.dims() == graded.dims()
    assert [d.dim for d in plain.degrees] == [d.dim for d in graded.degrees]


def test_pi_star_signs():
    img = pi_star((0, 1, 2), 0)
    assert img[((0, 1, 2), 0)] == 1 and img[((1, 0, 2), 0)] == -1 and img[((2, 0, 1), 0)] == 1
    assert len(img) == 6


@pytest.mark.parametrize("which,rep", [("CR", trivial), ("Crel", adjoint)])
def test_pi_star_anticommutes(which, rep):
    h = build_h(2, 1)
    R = RelativeComplex(which, rep(h))
    for u in R.lie.basis(R.shift):
        lhs = R.ambient.apply(R.include(u))
        rhs = {}
        for key, v in R.lie.push(u).items():
            for k2, s in R.include(key).items():
                rhs[k2] = rhs.get(k2, 0) + v * s
        assert lhs == {a: -b for a, b in rhs.items() if b}


def test_relative_dimensions():
    h = build_h(2, 2)
    cr = RelativeComplex("CR", trivial(h))
    assert [cr.dim(m) for m in range(3)] == [55, 330, 990]
    crel = RelativeComplex("Crel", adjoint(h))
    assert crel.dim(0) == 550 and crel.image_dim(0) == 450


def test_relative_projections():
    h = build_h(2, 1)
    R = RelativeComplex("Crel", adjoint(h))
    for u in R.lie.basis(2)[:20]:
        img = R.include(u)
        assert R.project(img) == {}
        assert R.alternation(img) == img
        assert R.split_projector(img) == img
    key = next(k for k in R.ambient_basis(0) if not R.is_pivot(k))
    assert R.project({key: 1}) == {key: 1}


def test_connecting_map_lands_in_cocycles():
    h = build_h(2, 2)
    R = RelativeComplex("CR", trivial(h), alg_weights=euler_weights_of(h))
    A, rows, cols = R.differential(0)
    for vec in kernel_basis(A)[:2]:
        rep = {cols[i]: v for i, v in vec.items()}
        image = R.connecting_map(0, rep)
        assert all(len(w) == 3 for w, _ in image)
        assert R.lie.apply(image) == {}
    bad = {cols[0]: 1}
    if R.apply(bad):
        with pytest.raises(NotACocycle):
            R.connecting_map(0, bad)


def test_subcomplex_of_invariants():
    from leibhom.cohomology import cochain_terms
    from leibhom.invariants import invariant_subspace, translation_action
    from leibhom.multilinear import WEDGE, MultiBasis
    p, q = 2, 2
    h, I = build_h(p, q), build_translations(p, q)
    ho = LieHomologyComplex(I, restricted(I, h))
    on_I, on_h, _ = translation_action(p, q)
    bases = {k: [cochain_terms(c) for c in invariant_subspace(on_I, MultiBasis(4, WEDGE, k), on_h)]
             for k in range(5)}
    sub = SubComplex(ho, bases)
    assert [sub.dim(k) for k in range(5)] == [0, 1, 2, 1, 0]
    assert cohomology_dims(sub, range(5), EXACT).dims() == [0, 0, 1, 1, 0]
