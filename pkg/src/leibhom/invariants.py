"""Invariant subspaces and the explicit named (co)chains of h(p,q).

Axis indices inside cochains over I_n are 0-based (axis i stands for
d/dx^{i+1}); the public constructors take the usual 1-based labels.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations

from .algebra import (Alpha, Beta, LieAlgebra, Partial, Representation, build_h, build_so,
                      build_translations, restricted, trivial)
from .complexes import _perm_sign
from .errors import ParameterOutOfRange
from .linalg import SparseMatrix, rank_kernel
from .multilinear import (TENSOR, WEDGE, Cochain, MultiBasis, action_on_domain,
                          action_on_chain, induced_action_on_hom, wedge_sort)

CHAIN_KIND, HOM_KIND, SCALAR_KIND = "chain", "hom", "scalar"

NAMES = ("v", "v*", "I_pq", "rho_pq", "beta_pq", "gamma_pq",
         "I", "rho", "beta", "gamma", "gamma*_pq", "beta*_pq")


def invariant_subspace(dom_rep: Representation, domain: MultiBasis,
                       cod_rep: Representation | None = None, hom: bool = False) -> list[Cochain]:
    """Kernel of the stacked generator actions on domain (x) module or Hom(domain, module).

    Without ``cod_rep`` the module is the trivial line.  Basis vectors come
    from the reduced echelon kernel, each scaled so its first nonzero
    coordinate is +1.
    """
    alg = dom_rep.algebra
    if cod_rep is None:
        cod_rep = trivial(alg)
    mdim = cod_rep.module_dim
    els = domain.elements
    index = domain.index
    N = len(els) * mdim
    columns: list[dict] = [dict() for _ in range(N)]
    for g in range(alg.dim):
        off = g * N
        images = [action_on_domain(domain, dom_rep, g, z) for z in els]
        for zi, z in enumerate(els):
            for m in range(mdim):
                col = columns[zi * mdim + m]
                for m2, v in cod_rep.act[g][m].items():
                    r = off + zi * mdim + m2
                    col[r] = col.get(r, 0) + v
            if hom:
                # (g f)(y) picks up -f(g . y): e_{z->m} contributes where z appears in g . y
                continue
            for y, c in images[zi].items():
                yi = index[y]
                for m in range(mdim):
                    r = off + yi * mdim + m
                    col = columns[zi * mdim + m]
                    col[r] = col.get(r, 0) + c
        if hom:
            for yi, y in enumerate(els):
                for z, c in images[yi].items():
                    zi = index[z]
                    for m in range(mdim):
                        r = off + yi * mdim + m
                        col = columns[zi * mdim + m]
                        col[r] = col.get(r, 0) - c
    A = SparseMatrix.from_columns(alg.dim * N, columns, alg.prime)
    kernel = rank_kernel(A, want_kernel=True, mode="exact").kernel_basis
    out = []
    for vec in kernel:
        lead = vec[min(vec)]
        out.append(Cochain.from_vector(domain, mdim, {k: Fraction(v) / lead if alg.prime is None
                                                      else v * pow(lead, -1, alg.prime) % alg.prime
                                                      for k, v in vec.items()}))
    out.sort(key=lambda c: sorted(c.vector()))
    return out


@dataclass
class NamedClass:
    name: str
    p: int
    q: int
    kind: str
    realization: Cochain

    @property
    def n(self) -> int:
        return self.p + self.q

    @property
    def degree(self) -> int:
        return self.realization.domain.k

    def __repr__(self) -> str:
        return f"<{self.name} for ({self.p},{self.q}), {self.kind} degree {self.degree}>"


def _complement(n: int, drop: tuple) -> tuple:
    return tuple(a for a in range(n) if a not in drop)


def _so_element(p: int, i: int, j: int):
    """Label and block type of the so generator on 1-based axes i<j."""
    if j <= p:
        return Alpha(i, j), "p"
    if i > p:
        return Alpha(i, j), "q"
    return Beta(i, j), "mixed"


def _pairs(n: int):
    return [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]


def _sign(e: int) -> int:
    return -1 if e % 2 else 1


def _rho_sign(p: int, i: int, j: int, paired: bool) -> int:
    _, t = _so_element(p, i, j)
    if t == "p":
        return 1
    if t == "q":
        return -1
    return -1 if paired else 1


def _beta_sign(p: int, i: int, paired: bool) -> int:
    base = _sign(i + 1) if i <= p else _sign(i)
    return -base if (paired and i > p) else base


def _gamma_sign(p: int, i: int, j: int, paired: bool, printed: bool) -> int:
    _, t = _so_element(p, i, j)
    if t == "p":
        return _sign(i + j)
    s = _sign(i + j + 1)
    if not paired:
        return s
    # the printed q-pair sum carries an extra minus that breaks invariance once q >= 2
    return -s if (t == "mixed" or printed) else s


def make_named(name: str, p: int, q: int, printed: bool = False) -> NamedClass:
    """Build one of the explicit classes of h(p,q) from its defining formula.

    Chains (x_pq) live in wedge^k I_n (x) h, cochains (I, rho, beta, gamma)
    in Hom(wedge^k I_n, h), v in wedge^n I_n, v* in its dual; gamma*_pq and
    beta*_pq are scalar wedge cochains over I_n (x) so, see
    :func:`scalar_class_terms`.

    ``printed=True`` reproduces the gamma_pq / gamma*_pq sign pattern
    exactly as usually displayed; the default flips the sign of its
    q-block sum, which is what makes the class so(p,q)-invariant.
    """
    if name not in NAMES:
        raise ValueError(f"unknown class {name!r}")
    n = p + q
    if p < 0 or q < 0 or n < 2:
        raise ParameterOutOfRange(f"(p,q)=({p},{q})")
    if name in ("beta", "beta_pq", "beta*_pq") and n < 3:
        raise ParameterOutOfRange("beta-type classes need p+q >= 3")
    if name in ("gamma", "gamma_pq", "gamma*_pq") and n < 4:
        raise ParameterOutOfRange("gamma-type classes need p+q >= 4")
    h = build_h(p, q)
    hd = h.dim
    paired = name.endswith("_pq")
    if name in ("v", "v*"):
        cochain = Cochain(MultiBasis(n, WEDGE, n), 1, {tuple(range(n)): {0: 1}}, name)
        return NamedClass(name, p, q, CHAIN_KIND if name == "v" else SCALAR_KIND, cochain)
    if name in ("gamma*_pq", "beta*_pq"):
        base = make_named(name[:-4] + "_pq", p, q, printed)
        return NamedClass(name, p, q, SCALAR_KIND, base.realization)
    terms: dict = {}
    if name in ("I", "I_pq"):
        k = 1
        for i in range(1, n + 1):
            s = -1 if (paired and i > p) else 1
            terms[(i - 1,)] = {h.index[Partial(i)]: s}
    elif name in ("rho", "rho_pq"):
        k = 2
        for i, j in _pairs(n):
            lab, _ = _so_element(p, i, j)
            terms[(i - 1, j - 1)] = {h.index[lab]: _rho_sign(p, i, j, paired)}
    elif name in ("beta", "beta_pq"):
        k = n - 1
        for i in range(1, n + 1):
            terms[_complement(n, (i - 1,))] = {h.index[Partial(i)]: _beta_sign(p, i, paired)}
    else:
        k = n - 2
        for i, j in _pairs(n):
            lab, _ = _so_element(p, i, j)
            terms[_complement(n, (i - 1, j - 1))] = {h.index[lab]: _gamma_sign(p, i, j, paired, printed)}
    kind = CHAIN_KIND if paired else HOM_KIND
    return NamedClass(name, p, q, kind, Cochain(MultiBasis(n, WEDGE, k), hd, terms, name))


def translation_action(p: int, q: int, sub: str = "so") -> tuple[Representation, Representation, LieAlgebra]:
    """(action on I_n, action on h, acting algebra) for ``sub`` in {so, h, I}."""
    h = build_h(p, q)
    acting = {"so": build_so, "h": build_h, "I": build_translations}[sub](p, q)
    partials = [lab for lab in h.labels if lab.is_partial]
    on_I = restricted(acting, h, partials)
    on_h = restricted(acting, h)
    return on_I, on_h, acting


@dataclass
class InvarianceReport:
    passed: bool
    violating_generator: str | None = None


def verify_invariance(cls: NamedClass, under: str = "so") -> InvarianceReport:
    """Apply every generator of so(p,q) or h(p,q) and report the first one acting nontrivially.

    Classes over I_n are acted on through the ideal I_n of h and the
    adjoint module h.  gamma*_pq / beta*_pq are tested as scalar tensor
    cochains on h with the so-dual in the first argument.
    """
    if under not in ("so", "h"):
        raise ValueError("invariance is checked under 'so' or 'h'")
    p, q = cls.p, cls.q
    if cls.name in ("gamma*_pq", "beta*_pq"):
        h = build_h(p, q)
        acting = build_so(p, q) if under == "so" else h
        terms = scalar_class_terms(cls)
        dom = restricted(acting, h)
        for g in range(acting.dim):
            if _scalar_tensor_action(dom, g, terms):
                return InvarianceReport(False, str(acting.labels[g]))
        return InvarianceReport(True)
    on_I, on_h, acting = translation_action(p, q, under)
    f = cls.realization
    for g in range(acting.dim):
        if cls.kind == HOM_KIND:
            out = induced_action_on_hom(on_h, on_I, g, f)
        elif cls.kind == CHAIN_KIND:
            out = action_on_chain(on_I, on_h if f.module_dim > 1 else trivial(acting), g, f)
        else:
            out = induced_action_on_hom(trivial(acting, f.module_dim), on_I, g, f)
        if not out.is_zero():
            return InvarianceReport(False, str(acting.labels[g]))
    return InvarianceReport(True)


def _scalar_tensor_action(rep: Representation, g: int, terms: dict) -> dict:
    """(g f)(z) = -f(g . z) for a scalar tensor cochain, touching only words near the support."""
    into: dict = {}
    for x in range(rep.module_dim):
        for y, c in rep.act[g][x].items():
            into.setdefault(y, []).append((x, c))
    out: dict = {}
    for word, v in terms.items():
        for pos, y in enumerate(word):
            for x, c in into.get(y, ()):
                z = word[:pos] + (x,) + word[pos + 1:]
                out[z] = out.get(z, 0) - c * v
    return {z: v for z, v in out.items() if v}


def _axis_to_h(p: int, q: int) -> list[int]:
    h = build_h(p, q)
    return [h.index[Partial(i)] for i in range(1, p + q + 1)]


def _expand(word: tuple, tensor: bool):
    """Yield (sign, word') over all orderings of a wedge word, or itself."""
    if not tensor:
        yield 1, word
        return
    for perm in permutations(range(len(word))):
        yield _perm_sign(perm), tuple(word[i] for i in perm)


def extend_to_h(cls: NamedClass, tensor: bool = True) -> Cochain:
    """Hom(wedge^k I_n, h)-class as an h-cochain vanishing on so(p,q) arguments.

    ``tensor`` gives the Leibniz cochain pi^*(f) on h^(x)k, otherwise the
    alternating cochain on wedge^k h.
    """
    if cls.kind != HOM_KIND:
        raise ValueError("only Hom(wedge^k I_n, h) classes extend to h-cochains")
    amap = _axis_to_h(cls.p, cls.q)
    hd = cls.realization.module_dim
    k = cls.degree
    terms: dict = {}
    for z, vec in cls.realization.terms.items():
        hz = tuple(amap[a] for a in z)
        sign, w = wedge_sort(hz)
        for s, word in _expand(w, tensor):
            terms[word] = {m: sign * s * v for m, v in vec.items()}
    shape = TENSOR if tensor else WEDGE
    return Cochain(MultiBasis(hd, shape, k), hd, terms, cls.name)


#: where the so(p,q)-dual factor sits among the arguments of gamma*_pq / beta*_pq
SO_SLOT_FIRST, SO_SLOT_LAST = "first", "last"


def scalar_class_terms(cls: NamedClass, so_slot: str = SO_SLOT_FIRST) -> dict:
    """gamma*_pq / beta*_pq as {ordered argument word over h: value}, on distinct-type slots.

    Each summand dx^{I} (x) e* becomes the functional whose value on
    (e, d_{i_1}, .., d_{i_r}) -- or with e last -- is the determinant
    pairing of the dx's, times the dual pairing with e.
    """
    if cls.name not in ("gamma*_pq", "beta*_pq"):
        raise ValueError("scalar classes are gamma*_pq and beta*_pq")
    amap = _axis_to_h(cls.p, cls.q)
    out: dict = {}
    for z, vec in cls.realization.terms.items():
        hz = tuple(amap[a] for a in z)
        for m, v in vec.items():
            for s, word in _expand(hz, True):
                full = (m,) + word if so_slot == SO_SLOT_FIRST else word + (m,)
                out[full] = out.get(full, 0) + s * v
    return {k: v for k, v in out.items() if v != 0}


def scalar_class_cochain(cls: NamedClass, tensor: bool = True, so_slot: str = SO_SLOT_FIRST) -> Cochain:
    """Scalar h-cochain of gamma*_pq / beta*_pq (Leibniz if ``tensor``, else alternated)."""
    hd = cls.realization.module_dim
    k = cls.degree + 1
    terms = scalar_class_terms(cls, so_slot)
    if tensor:
        return Cochain(MultiBasis(hd, TENSOR, k), 1, {w: {0: v} for w, v in terms.items()}, cls.name)
    alt: dict = {}
    for w, v in terms.items():
        s, u = wedge_sort(w)
        if s:
            alt[u] = alt.get(u, 0) + s * v
    # each wedge word is hit k! times by the orderings above
    from math import factorial
    f = factorial(k)
    return Cochain(MultiBasis(hd, WEDGE, k), 1, {u: {0: Fraction(v, f)} for u, v in alt.items()}, cls.name)


def invariant_dims_table(p: int, q: int, kmax: int | None = None) -> dict:
    """Dimensions of the so(p,q)-invariants of wedge^k I_n, wedge^k I_n (x) h and Hom(wedge^k I_n, h)."""
    n = p + q
    kmax = n if kmax is None else kmax
    on_I, on_h, _ = translation_action(p, q, "so")
    table = {"wedge": [], "chain": [], "hom": []}
    for k in range(kmax + 1):
        dom = MultiBasis(n, WEDGE, k)
        table["wedge"].append(len(invariant_subspace(on_I, dom)))
        table["chain"].append(len(invariant_subspace(on_I, dom, on_h)))
        table["hom"].append(len(invariant_subspace(on_I, dom, on_h, hom=True)))
    return table


def expected_invariant_dims(n: int) -> list[int]:
    """Dimension pattern of the invariants of wedge^k I_n (x) h, k = 0..n."""
    if n == 4:
        return [0, 1, 2, 1, 0]
    return [1 if k in (1, 2, n - 2, n - 1) else 0 for k in range(n + 1)]


def in_span(f: Cochain, basis: list[Cochain]) -> bool:
    """Membership of f in the span of ``basis`` (same space)."""
    if f.is_zero():
        return True
    from .linalg import solve
    keys = sorted({k for b in basis for k in b.vector()} | set(f.vector()))
    idx = {k: i for i, k in enumerate(keys)}
    A = SparseMatrix.from_columns(len(keys), [{idx[k]: v for k, v in b.vector().items()} for b in basis])
    return solve(A, {idx[k]: v for k, v in f.vector().items()}, mode="exact") is not None


def named_span_matches(p: int, q: int, k: int, kind: str = CHAIN_KIND) -> bool:
    """Invariant space in degree k equals the span of the named classes of that degree."""
    n = p + q
    on_I, on_h, _ = translation_action(p, q, "so")
    dom = MultiBasis(n, WEDGE, k)
    basis = invariant_subspace(on_I, dom, on_h, hom=(kind == HOM_KIND))
    suffix = "_pq" if kind == CHAIN_KIND else ""
    degrees = {"I": 1, "rho": 2, "gamma": n - 2, "beta": n - 1}
    named = [make_named(nm + suffix, p, q).realization for nm, d in degrees.items() if d == k]
    if len(named) != len(basis):
        return False
    return all(in_span(c, basis) for c in named) and all(in_span(b, named) for b in basis)
