"""Wedge, tensor and mixed bases, cochains on them, and induced actions."""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, product
from math import comb
from typing import Iterable

from .algebra import Representation
from .errors import DomainMismatch

WEDGE, TENSOR, MIXED = "wedge", "tensor", "mixed"


def wedge_sort(t: tuple) -> tuple[int, tuple | None]:
    """Sort a wedge word; returns (sign, sorted) or (0, None) on a repeat."""
    if len(set(t)) != len(t):
        return 0, None
    lst = list(t)
    sign = 1
    # insertion sort, counting transpositions
    for i in range(1, len(lst)):
        j = i
        while j > 0 and lst[j - 1] > lst[j]:
            lst[j - 1], lst[j] = lst[j], lst[j - 1]
            sign = -sign
            j -= 1
    return sign, tuple(lst)


class MultiBasis:
    """Deterministic enumeration of a multilinear basis over ``range(base_dim)``.

    wedge(k): strictly increasing k-tuples in lex order.  tensor(k): all
    k-tuples in lex order.  mixed(k): pairs (a,) + w with w a strictly
    increasing k-tuple, product order; it models g (x) wedge^k(g).
    """

    def __init__(self, base_dim: int, shape: str, k: int):
        if shape not in (WEDGE, TENSOR, MIXED):
            raise ValueError(f"unknown shape {shape!r}")
        self.base_dim, self.shape, self.k = base_dim, shape, k
        self._elements = None
        self._index = None

    @property
    def degree(self) -> int:
        return self.k + 1 if self.shape == MIXED else self.k

    def __len__(self) -> int:
        n, k = self.base_dim, self.k
        if self.shape == WEDGE:
            return comb(n, k)
        if self.shape == TENSOR:
            return n ** k
        return n * comb(n, k)

    def __eq__(self, other) -> bool:
        return (isinstance(other, MultiBasis) and self.base_dim == other.base_dim
                and self.shape == other.shape and self.k == other.k)

    def __hash__(self) -> int:
        return hash((self.base_dim, self.shape, self.k))

    def __repr__(self) -> str:
        return f"MultiBasis({self.shape}, k={self.k}, base_dim={self.base_dim})"

    @property
    def elements(self) -> list[tuple]:
        if self._elements is None:
            r = range(self.base_dim)
            if self.shape == WEDGE:
                els = list(combinations(r, self.k))
            elif self.shape == TENSOR:
                els = list(product(r, repeat=self.k))
            else:
                els = [(a,) + w for a in r for w in combinations(r, self.k)]
            self._elements = els
        return self._elements

    @property
    def index(self) -> dict:
        if self._index is None:
            self._index = {e: i for i, e in enumerate(self.elements)}
        return self._index

    def __iter__(self):
        return iter(self.elements)

    def normalize(self, t: tuple) -> tuple[int, tuple | None]:
        """Bring an arbitrary word to a basis element, with sign."""
        if self.shape == TENSOR:
            return 1, tuple(t)
        if self.shape == WEDGE:
            return wedge_sort(t)
        s, w = wedge_sort(t[1:])
        return s, (None if w is None else (t[0],) + w)


def _axpy(out: dict, key, vec: dict, c) -> None:
    row = out.setdefault(key, {})
    for m, v in vec.items():
        row[m] = row.get(m, 0) + c * v


def _prune(terms: dict) -> dict:
    clean = {}
    for key, vec in terms.items():
        vec = {m: v for m, v in vec.items() if v != 0}
        if vec:
            clean[key] = vec
    return clean


class Cochain:
    """Sparse map from a multilinear basis to module coefficient vectors.

    The same container holds chains in wedge^k (x) M: an entry
    ``terms[z] = {m: c}`` then reads as sum c * z (x) e_m.
    """

    def __init__(self, domain: MultiBasis, module_dim: int, terms: dict | None = None,
                 name: str = ""):
        self.domain = domain
        self.module_dim = module_dim
        self.terms = _prune(terms or {})
        self.name = name

    def __repr__(self) -> str:
        label = self.name or "cochain"
        return f"<{label} on {self.domain}, {len(self.terms)} terms>"

    def copy(self) -> "Cochain":
        return Cochain(self.domain, self.module_dim, {k: dict(v) for k, v in self.terms.items()}, self.name)

    def is_zero(self) -> bool:
        return not self.terms

    def _same_space(self, other: "Cochain") -> None:
        if self.domain != other.domain or self.module_dim != other.module_dim:
            raise DomainMismatch(f"{self.domain}/{self.module_dim} vs {other.domain}/{other.module_dim}")

    def __eq__(self, other) -> bool:
        if not isinstance(other, Cochain):
            return NotImplemented
        return (self.domain == other.domain and self.module_dim == other.module_dim
                and self.terms == other.terms)

    def __add__(self, other: "Cochain") -> "Cochain":
        self._same_space(other)
        out = {k: dict(v) for k, v in self.terms.items()}
        for k, v in other.terms.items():
            _axpy(out, k, v, 1)
        return Cochain(self.domain, self.module_dim, out)

    def __neg__(self) -> "Cochain":
        return self.scale(-1)

    def __sub__(self, other: "Cochain") -> "Cochain":
        return self + (-other)

    def scale(self, c) -> "Cochain":
        return Cochain(self.domain, self.module_dim,
                       {k: {m: c * v for m, v in vec.items()} for k, vec in self.terms.items()})

    def __call__(self, *args) -> dict:
        """Evaluate on an arbitrary word, re-sorting wedge factors with sign."""
        sign, key = self.domain.normalize(tuple(args))
        if not sign:
            return {}
        return {m: sign * v for m, v in self.terms.get(key, {}).items()}

    def vector(self) -> dict:
        """Flat sparse vector over (domain index, module index) in row-major order."""
        idx = self.domain.index
        return {idx[k] * self.module_dim + m: v for k, vec in self.terms.items() for m, v in vec.items()}

    @classmethod
    def from_vector(cls, domain: MultiBasis, module_dim: int, vec: dict, name: str = "") -> "Cochain":
        terms: dict = {}
        els = domain.elements
        for pos, v in vec.items():
            d, m = divmod(pos, module_dim)
            terms.setdefault(els[d], {})[m] = v
        return cls(domain, module_dim, terms, name)

    def proportionality(self, other: "Cochain"):
        """Return c with self == c * other, or None if not proportional."""
        self._same_space(other)
        a, b = self.vector(), other.vector()
        if set(a) != set(b):
            return None
        if not a:
            return 1
        k0 = min(a)
        c = Fraction(a[k0]) / Fraction(b[k0])
        return c if all(a[k] == c * b[k] for k in a) else None


def action_on_wedge(rep: Representation, g: int, w: tuple) -> dict:
    """g . (x_1 ^ ... ^ x_k) = sum_i x_1 ^ .. ^ (g . x_i) ^ .. ^ x_k on basis words."""
    out: dict = {}
    for pos, x in enumerate(w):
        for y, c in rep.act[g][x].items():
            sign, key = wedge_sort(w[:pos] + (y,) + w[pos + 1:])
            if sign:
                out[key] = out.get(key, 0) + sign * c
    return {k: v for k, v in out.items() if v != 0}


def action_on_tensor(rep: Representation, g: int, t: tuple) -> dict:
    out: dict = {}
    for pos, x in enumerate(t):
        for y, c in rep.act[g][x].items():
            key = t[:pos] + (y,) + t[pos + 1:]
            out[key] = out.get(key, 0) + c
    return {k: v for k, v in out.items() if v != 0}


def action_on_domain(dom: MultiBasis, dom_rep: Representation, g: int, z: tuple) -> dict:
    if dom.shape == WEDGE:
        return action_on_wedge(dom_rep, g, z)
    if dom.shape == TENSOR:
        return action_on_tensor(dom_rep, g, z)
    out = {}
    for y, c in dom_rep.act[g][z[0]].items():
        out[(y,) + z[1:]] = out.get((y,) + z[1:], 0) + c
    for key, c in action_on_wedge(dom_rep, g, z[1:]).items():
        out[(z[0],) + key] = out.get((z[0],) + key, 0) + c
    return {k: v for k, v in out.items() if v != 0}


def induced_action_on_hom(cod_rep: Representation, dom_rep: Representation,
                          g: int, f: Cochain) -> Cochain:
    """(g f)(z) = g . f(z) + f(z with one factor x_i replaced by [x_i, g]).

    Since [x_i, g] = -g . x_i this equals g . f(z) - f(g . z).
    """
    if f.module_dim != cod_rep.module_dim or f.domain.base_dim != dom_rep.module_dim:
        raise DomainMismatch("cochain does not match the representations")
    out: dict = {}
    for z, vec in f.terms.items():
        _axpy(out, z, cod_rep.apply(g, vec), 1)
    support = f.terms
    for z in f.domain.elements:
        for y, c in action_on_domain(f.domain, dom_rep, g, z).items():
            if y in support:
                _axpy(out, z, support[y], -c)
    return Cochain(f.domain, f.module_dim, out)


def action_on_chain(dom_rep: Representation, mod_rep: Representation, g: int, chain: Cochain) -> Cochain:
    """g . (z (x) m) = (g . z) (x) m + z (x) (g . m) on wedge^k (x) M."""
    if chain.module_dim != mod_rep.module_dim or chain.domain.base_dim != dom_rep.module_dim:
        raise DomainMismatch("chain does not match the representations")
    out: dict = {}
    for z, vec in chain.terms.items():
        for y, c in action_on_domain(chain.domain, dom_rep, g, z).items():
            _axpy(out, y, vec, c)
        _axpy(out, z, mod_rep.apply(g, vec), 1)
    return Cochain(chain.domain, chain.module_dim, out)


def q_count(z: Iterable[int], p: int) -> int:
    """Number of 0-based axis indices of z lying in the q-block."""
    return sum(1 for i in z if i >= p)


def psi(phi: Cochain, p: int) -> Cochain:
    """Hom(wedge^k I_n, h) -> wedge^k I_n (x) h, z (x) phi(z) with sign (-1)^s.

    s counts the q-block factors of the basis word z.  The domain of phi
    must be a wedge over the n partials (0-based axes).
    """
    if phi.domain.shape != WEDGE:
        raise DomainMismatch("psi is defined on Hom(wedge^k I_n, h)")
    terms = {z: {m: (-1) ** q_count(z, p) * v for m, v in vec.items()} for z, vec in phi.terms.items()}
    return Cochain(phi.domain, phi.module_dim, terms)


def psi_inverse(chain: Cochain, p: int) -> Cochain:
    if chain.domain.shape != WEDGE:
        raise DomainMismatch("psi^-1 is defined on wedge^k I_n (x) h")
    return psi(chain, p)
