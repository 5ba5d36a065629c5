"""Affine vector fields on R^n and their commutators.

A field is stored as

    X = sum_i ( sum_j L[i, j] x_j + c_i ) d/dx^i

with exact rational coefficients.  Axis indices are 1-based, as in the
usual coordinate notation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .errors import DimensionMismatch, IndexOutOfBlock


def _clean(items):
    return tuple(sorted((k, Fraction(v)) for k, v in items if v != 0))


@dataclass(frozen=True)
class LinearVectorField:
    n: int
    linear: tuple = field(default=())
    constant: tuple = field(default=())

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("ambient dimension must be positive")
        lin = dict(self.linear) if not isinstance(self.linear, Mapping) else self.linear
        const = dict(self.constant) if not isinstance(self.constant, Mapping) else self.constant
        for (i, j) in lin:
            if not (1 <= i <= self.n and 1 <= j <= self.n):
                raise ValueError(f"axis pair {(i, j)} outside 1..{self.n}")
        for i in const:
            if not 1 <= i <= self.n:
                raise ValueError(f"axis {i} outside 1..{self.n}")
        # canonical form: no zeros, sorted keys; equality is then structural
        object.__setattr__(self, "linear", _clean(lin.items()))
        object.__setattr__(self, "constant", _clean(const.items()))

    @classmethod
    def partial(cls, n: int, i: int) -> "LinearVectorField":
        return cls(n, constant={i: 1})

    @classmethod
    def zero(cls, n: int) -> "LinearVectorField":
        return cls(n)

    @property
    def linear_map(self) -> dict:
        return dict(self.linear)

    @property
    def constant_map(self) -> dict:
        return dict(self.constant)

    def is_zero(self) -> bool:
        return not self.linear and not self.constant

    def __add__(self, other: "LinearVectorField") -> "LinearVectorField":
        _check_dims(self, other)
        lin = self.linear_map
        for k, v in other.linear:
            lin[k] = lin.get(k, 0) + v
        const = self.constant_map
        for k, v in other.constant:
            const[k] = const.get(k, 0) + v
        return LinearVectorField(self.n, lin, const)

    def __neg__(self) -> "LinearVectorField":
        return self.scale(-1)

    def __sub__(self, other: "LinearVectorField") -> "LinearVectorField":
        return self + (-other)

    def scale(self, c) -> "LinearVectorField":
        c = Fraction(c)
        return LinearVectorField(
            self.n,
            {k: c * v for k, v in self.linear},
            {k: c * v for k, v in self.constant},
        )

    def __str__(self) -> str:
        terms = []
        for (i, j), v in self.linear:
            terms.append(f"{v}*x{j}*d{i}")
        for i, v in self.constant:
            terms.append(f"{v}*d{i}")
        return " + ".join(terms) if terms else "0"


def _check_dims(a: LinearVectorField, b: LinearVectorField) -> None:
    if a.n != b.n:
        raise DimensionMismatch(f"fields live on R^{a.n} and R^{b.n}")


def commutator(a: LinearVectorField, b: LinearVectorField) -> LinearVectorField:
    """Lie bracket [a, b] = a(b) - b(a) of two affine fields.

    For X = (L x + c) . grad the bracket has linear part L_b L_a - L_a L_b
    and constant part L_b c_a - L_a c_b.
    """
    _check_dims(a, b)
    la, lb = a.linear_map, b.linear_map
    ca, cb = a.constant_map, b.constant_map
    lin: dict = {}
    for (i, k), vb in lb.items():
        for (k2, j), va in la.items():
            if k2 == k:
                lin[i, j] = lin.get((i, j), 0) + vb * va
    for (i, k), va in la.items():
        for (k2, j), vb in lb.items():
            if k2 == k:
                lin[i, j] = lin.get((i, j), 0) - va * vb
    const: dict = {}
    for (i, k), vb in lb.items():
        if k in ca:
            const[i] = const.get(i, 0) + vb * ca[k]
    for (i, k), va in la.items():
        if k in cb:
            const[i] = const.get(i, 0) - va * cb[k]
    return LinearVectorField(a.n, lin, const)


def _block(p: int, i: int) -> int:
    return 0 if i <= p else 1


def make_alpha(p: int, q: int, i: int, j: int) -> LinearVectorField:
    """x_i d/dx^j - x_j d/dx^i for i < j inside one block."""
    n = p + q
    if not (1 <= i < j <= n) or _block(p, i) != _block(p, j):
        raise IndexOutOfBlock(f"alpha_{i}{j} needs i<j within one block (p={p}, q={q})")
    return LinearVectorField(n, {(j, i): 1, (i, j): -1})


def make_beta(p: int, q: int, i: int, j: int) -> LinearVectorField:
    """x_i d/dx^j + x_j d/dx^i with i in the p-block and j in the q-block."""
    n = p + q
    if not (1 <= i <= p < j <= n):
        raise IndexOutOfBlock(f"beta_{i}{j} needs i<=p<j (p={p}, q={q})")
    return LinearVectorField(n, {(j, i): 1, (i, j): 1})


def make_partial(p: int, q: int, i: int) -> LinearVectorField:
    n = p + q
    if not 1 <= i <= n:
        raise IndexOutOfBlock(f"d/dx^{i} needs 1<=i<={n}")
    return LinearVectorField.partial(n, i)
