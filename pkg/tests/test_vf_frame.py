from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from leibhom.errors import IndexOutOfBlock
from leibhom.vf_frame import LinearVectorField, commutator, make_alpha, make_beta, make_partial

N = 3
coeff = st.integers(-3, 3)
fields = st.builds(
    lambda lin, const: LinearVectorField(N, {(i + 1, j + 1): lin[3 * i + j] for i in range(N) for j in range(N)},
                                         {i + 1: const[i] for i in range(N)}),
    st.lists(coeff, min_size=9, max_size=9), st.lists(coeff, min_size=3, max_size=3))


def _symbolic(f: LinearVectorField):
    """Components of f as sympy expressions in x1..xn."""
    xs = sympy.symbols(f"x1:{f.n + 1}")
    comp = [sympy.Integer(0)] * f.n
    for (i, j), v in f.linear_map.items():
        comp[i - 1] += sympy.Rational(v.numerator, v.denominator) * xs[j - 1]
    for i, v in f.constant_map.items():
        comp[i - 1] += sympy.Rational(v.numerator, v.denominator)
    return xs, comp


def _symbolic_bracket(a, b):
    xs, ca = _symbolic(a)
    _, cb = _symbolic(b)
    return [sympy.expand(sum(ca[k] * sympy.diff(cb[i], xs[k]) - cb[k] * sympy.diff(ca[i], xs[k])
                             for k in range(a.n))) for i in range(a.n)]


@given(fields, fields)
def test_commutator_matches_symbolic_derivative(a, b):
    got = _symbolic(commutator(a, b))[1]
    assert [sympy.expand(g) for g in got] == _symbolic_bracket(a, b)


@given(fields, fields)
def test_commutator_antisymmetric(a, b):
    assert commutator(a, b) == -commutator(b, a)


@given(fields, fields, fields)
def test_jacobi(a, b, c):
    total = (commutator(a, commutator(b, c)) + commutator(b, commutator(c, a))
             + commutator(c, commutator(a, b)))
    assert total.is_zero()


def test_named_fields():
    a = make_alpha(2, 1, 1, 2)
    assert a.linear_map == {(2, 1): 1, (1, 2): -1}
    b = make_beta(2, 1, 1, 3)
    assert b.linear_map == {(3, 1): 1, (1, 3): 1}
    assert make_partial(2, 1, 3).constant_map == {3: Fraction(1)}
    # x_1 d_2 - x_2 d_1 moves d_1 to -d_2
    assert commutator(a, make_partial(2, 1, 1)) == LinearVectorField(3, constant={2: -1})


@pytest.mark.parametrize("call", [lambda: make_alpha(2, 1, 1, 3), lambda: make_beta(2, 1, 1, 2),
                                  lambda: make_partial(2, 1, 4), lambda: make_alpha(2, 2, 2, 1)])
def test_index_errors(call):
    with pytest.raises(IndexOutOfBlock):
        call()


def test_zero_and_canonical_form():
    assert LinearVectorField(2, {(1, 1): 0}).is_zero()
    assert LinearVectorField(2, {(1, 2): 1}) == LinearVectorField(2, {(1, 2): Fraction(2, 2)})
    with pytest.raises(ValueError):
        LinearVectorField(2, {(1, 3): 1})
