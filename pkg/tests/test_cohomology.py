import csv
import io
import json

import pytest

from leibhom.algebra import Partial, build_h, build_so, trivial
from leibhom.cohomology import (CohomologyReport, DegreeRecord, TheoremCheck, cochain_terms,
                                cohomology_dims, graded_product, hl_dims, hr_dims, is_coboundary,
                                is_cocycle, leibniz_adjoint, lie_betti, lie_dim,
                                predicted_hl_dimension, product_cochain)
from leibhom.complexes import LeibnizComplex
from leibhom.errors import CoefficientMismatch, DegreeMismatch
from leibhom.invariants import extend_to_h, make_named, scalar_class_cochain, scalar_class_terms
from leibhom.linalg import EXACT, PROBABILISTIC
from leibhom.multilinear import TENSOR, Cochain, MultiBasis


def test_predicted_dimensions():
    assert [predicted_hl_dimension(2, 2, k) for k in range(9)] == [0, 1, 1, 0, 1, 1, 0, 1, 1]
    assert predicted_hl_dimension(3, 2, 3) == 0
    assert predicted_hl_dimension(3, 2, 5) == 1
    with pytest.raises(ValueError):
        predicted_hl_dimension(2, 1, 1)


def test_lie_dim_and_graded_product():
    assert lie_dim([1, 0, 2], -1) == 0 and lie_dim([1, 0, 2], 5) == 0
    assert graded_product([1, 0, 0, 2, 0, 0, 1], [1, 0, 0, 0, 1]) == [1, 0, 0, 2, 1, 0, 1, 2, 0, 0, 1]


def test_lie_betti_so():
    assert lie_betti(build_so(2, 2)) == [1, 0, 0, 2, 0, 0, 1]
    assert lie_betti(build_so(3, 0)) == [1, 0, 0, 1]


def test_h_betti_matches_product():
    assert lie_betti(build_h(3, 1)) == [1, 0, 0, 2, 1, 0, 1, 2, 0, 0, 1]


@pytest.mark.parametrize("p,q", [(2, 2), (3, 1), (4, 0)])
def test_hl_low_degrees(p, q):
    assert hl_dims(p, q, [0, 1, 2], EXACT).dims() == [0, 1, 1]


def test_hl3_probabilistic_n4():
    r = hl_dims(2, 2, [3], PROBABILISTIC)
    assert r.dims() == [0] and r.degrees[0].mode == PROBABILISTIC
    assert r.field.count("GF(") == 2


def test_hr_dims():
    assert hr_dims(2, 2, 0).passed


def test_report_json_and_csv():
    rep = CohomologyReport("X", "Q", [DegreeRecord(0, 3, 2, 1, 1, EXACT)],
                           [TheoremCheck("t", 1, 1, True)])
    data = json.loads(rep.to_json())
    assert set(data) == {"complex", "field", "degrees", "theorem_checks"}
    assert data["degrees"][0] == {"k": 0, "dim": 3, "kernel": 2, "image": 1, "cohomology": 1, "mode": "exact"}
    assert data["theorem_checks"][0] == {"name": "t", "expected": 1, "got": 1, "pass": True}
    text = rep.to_csv()
    assert text == "k,dim\r\n0,1\r\n"
    assert list(csv.reader(io.StringIO(text))) == [["k", "dim"], ["0", "1"]]


def test_cocycle_checks_on_zero_and_errors():
    L = leibniz_adjoint(2, 2)
    assert is_cocycle(L, 3, {})
    assert is_coboundary(L, 3, {}).is_coboundary
    with pytest.raises(DegreeMismatch):
        is_cocycle(L, 2, {((0,), 0): 1})


def test_I_and_rho_represent_classes():
    L = leibniz_adjoint(2, 2)
    I = cochain_terms(extend_to_h(make_named("I", 2, 2)))
    rho = cochain_terms(extend_to_h(make_named("rho", 2, 2)))
    assert is_cocycle(L, 1, I) and not is_coboundary(L, 1, I, EXACT).is_coboundary
    assert is_cocycle(L, 2, rho) and not is_coboundary(L, 2, rho, EXACT).is_coboundary


def test_coboundary_witness():
    L = leibniz_adjoint(2, 1)
    x = {((3,), 1): 1, ((0,), 4): 2}
    dx = L.apply(x)
    v = is_coboundary(L, 2, dx, EXACT)
    assert v.is_coboundary and L.apply(v.witness) == dx


def test_product_convention_single_term():
    p, q = 2, 2
    h = build_h(p, q)
    I = extend_to_h(make_named("I", p, q))
    g = scalar_class_cochain(make_named("gamma*_pq", p, q))
    prod = product_cochain(I, g)
    word, val = next(iter(sorted(scalar_class_terms(make_named("gamma*_pq", p, q)).items())))
    d1 = h.index[Partial(1)]
    assert prod(d1, *word) == {d1: val}
    assert product_cochain(I, Cochain(g.domain, 1)).is_zero()


def test_product_errors():
    h = build_h(2, 2)
    I = extend_to_h(make_named("I", 2, 2))
    with pytest.raises(CoefficientMismatch):
        product_cochain(I, I)
    with pytest.raises(CoefficientMismatch):
        product_cochain(I, Cochain(MultiBasis(h.dim + 1, TENSOR, 1), 1, {(0,): {0: 1}}))


def test_gamma_star_is_leibniz_cocycle_with_trivial_coefficients():
    h = build_h(2, 2)
    g = cochain_terms(scalar_class_cochain(make_named("gamma*_pq", 2, 2)))
    assert is_cocycle(LeibnizComplex(h, trivial(h)), 3, g)


def test_thread_count_does_not_change_results(monkeypatch):
    monkeypatch.setenv("LEIBHOM_THREADS", "1")
    one = hl_dims(2, 1, [0, 1, 2], EXACT).to_json()
    monkeypatch.setenv("LEIBHOM_THREADS", "2")
    two = hl_dims(2, 1, [0, 1, 2], EXACT).to_json()
    assert one == two


def test_probabilistic_rank_degree_record():
    r = cohomology_dims(leibniz_adjoint(2, 1), [1], PROBABILISTIC)
    assert r.degrees[0].mode == PROBABILISTIC
    assert r.dims() == cohomology_dims(leibniz_adjoint(2, 1), [1], EXACT).dims()
