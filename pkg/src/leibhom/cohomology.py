"""Cohomology dimensions, cocycle tests, product cochains and the structural checks for h(p,q)."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass, field
from typing import Callable, Iterable

from .algebra import adjoint, build_h, build_so, trivial
from .complexes import (CHAIN, CEComplex, ComplexSpec, LeibnizComplex,
                        RelativeComplex, SubComplex)
from .errors import CoefficientMismatch, DegreeMismatch
from .linalg import EXACT, PROBABILISTIC, SparseMatrix, rank_kernel, solve
from .multilinear import TENSOR, Cochain, MultiBasis
from .parallel import parallel_map

DEFAULT_SEED = 20240229


@dataclass
class DegreeRecord:
    k: int
    dim: int
    kernel: int
    image: int
    cohomology: int
    mode: str


@dataclass
class TheoremCheck:
    name: str
    expected: object
    got: object
    passed: bool
    note: str = ""

    def to_dict(self) -> dict:
        out = {"name": self.name, "expected": _jsonable(self.expected),
               "got": _jsonable(self.got), "pass": self.passed}
        if self.note:
            out["note"] = self.note
        return out


def _jsonable(x):
    from fractions import Fraction
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else int(x)
    if isinstance(x, (list, tuple)):
        return [_jsonable(y) for y in x]
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    return x


@dataclass
class CohomologyReport:
    complex: str
    field: str
    degrees: list = field(default_factory=list)
    theorem_checks: list = field(default_factory=list)
    representatives: dict = field(default_factory=dict)

    def dims(self) -> list[int]:
        return [d.cohomology for d in self.degrees]

    def to_dict(self) -> dict:
        return {"complex": self.complex, "field": self.field,
                "degrees": [asdict(d) for d in self.degrees],
                "theorem_checks": [t.to_dict() for t in self.theorem_checks]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, default=str)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\r\n")
        w.writerow(["k", "dim"])
        for d in self.degrees:
            w.writerow([d.k, d.cohomology])
        return buf.getvalue()


def _field_name(prime) -> str:
    return "Q" if prime is None else f"GF({prime})"


class _RankCache:
    """Ranks of the differential out of each (degree, block), computed once."""

    def __init__(self, cx, mode, seed, weight_filter):
        self.cx = cx
        self.mode = mode
        self.seed = seed
        self.filter = weight_filter
        self.cache: dict = {}
        self.modes: set = set()
        self.modes_by_key: dict = {}

    def blocks(self, k: int) -> list:
        cx = self.cx
        if _is_graded(cx):
            ws = cx.weights(k) if k >= 0 else []
            return [w for w in ws if self.filter is None or self.filter(w)]
        return [None]

    def dim(self, k: int, block) -> int:
        cx = self.cx
        if k < 0:
            return 0
        if isinstance(cx, SubComplex):
            return cx.dim(k)
        if block is None:
            return cx.dim(k)
        return len(cx.basis(k, block))

    def key_needed(self, k: int, block) -> bool:
        tgt = k - 1 if getattr(self.cx, "direction", "cochain") == CHAIN else k + 1
        return k >= 0 and tgt >= 0 and self.dim(k, block) > 0

    def prefetch(self, keys: list) -> None:
        """Compute the ranks for ``keys``, in worker processes when allowed."""
        todo = [key for key in keys if key not in self.cache and self.key_needed(*key)]
        for key, (rank, mode) in zip(todo, parallel_map(_block_rank, [(self.cx, k, b, self.mode, self.seed)
                                                                       for k, b in todo])):
            self.cache[key] = rank
            self.modes_by_key[key] = mode

    def rank(self, k: int, block) -> int:
        """Rank of the differential leaving degree k."""
        if not self.key_needed(k, block):
            return 0
        key = (k, block)
        if key not in self.cache:
            self.prefetch([key])
        self.modes.add(self.modes_by_key[key])
        return self.cache[key]


def _block_rank(args) -> tuple[int, str]:
    cx, k, block, mode, seed = args
    if isinstance(cx, SubComplex):
        A = cx.differential(k)
    elif block is None:
        A = cx.differential(k)[0]
    else:
        A = cx.differential(k, block)[0]
    res = rank_kernel(A, mode=mode, seed=seed)
    return res.rank, res.mode


def cohomology_dims(cx, degrees: Iterable[int], mode: str | None = None, seed: int = DEFAULT_SEED,
                    weight_filter: Callable | None = None, name: str | None = None) -> CohomologyReport:
    """Kernel / image / cohomology dimensions per degree.

    Graded complexes are handled block by block; ``weight_filter`` keeps
    only the blocks it accepts (the others must be known to be acyclic).
    """
    rc = _RankCache(cx, mode, seed, weight_filter)
    chain = getattr(cx, "direction", "cochain") == CHAIN
    prime = getattr(cx, "prime", None)
    if prime is None and isinstance(cx, SubComplex):
        prime = cx.ambient.prime
    report = CohomologyReport(name or getattr(cx, "name", "") or repr(cx), _field_name(prime))
    degrees = list(degrees)
    step = -1 if chain else 1
    rc.prefetch(sorted({(j, b) for k in degrees for j in (k, k - step) for b in rc.blocks(k)},
                       key=str))
    for k in degrees:
        rc.modes.clear()
        dim = ker = img = 0
        for b in rc.blocks(k):
            d = rc.dim(k, b)
            dim += d
            ker += d - rc.rank(k, b)
            img += rc.rank(k + 1, b) if chain else rc.rank(k - 1, b)
        used = PROBABILISTIC if PROBABILISTIC in rc.modes else EXACT
        report.degrees.append(DegreeRecord(k, dim, ker, img, ker - img, used))
    return report


def _check_degree(terms: dict, k: int) -> None:
    for word, _ in terms:
        if len(word) != k:
            raise DegreeMismatch(f"term {word} is not of degree {k}")


def is_cocycle(cx, k: int, terms: dict) -> bool:
    """True iff the differential kills the sparse cochain ``{(word, m): value}``."""
    _check_degree(terms, k)
    return not cx.apply(terms)


@dataclass
class CoboundaryVerdict:
    is_coboundary: bool
    mode: str
    witness: dict | None = None
    primes: tuple = ()


def is_coboundary(cx: ComplexSpec, k: int, terms: dict, mode: str | None = None,
                  seed: int = DEFAULT_SEED, primes=None) -> CoboundaryVerdict:
    """Solve d x = f in degree k-1, one weight block at a time when the complex is graded."""
    _check_degree(terms, k)
    if not terms:
        return CoboundaryVerdict(True, EXACT, {})
    if k == 0:
        return CoboundaryVerdict(False, EXACT)
    if cx.alg_weights is not None:
        groups: dict = {}
        for key, v in terms.items():
            groups.setdefault(cx.weight(key), {})[key] = v
    else:
        groups = {None: terms}
    witness: dict = {}
    used = EXACT
    if primes is None and mode == PROBABILISTIC:
        from .linalg import random_primes
        primes = random_primes(2, seed)
    for w, part in sorted(groups.items(), key=lambda t: str(t[0])):
        A, rows, cols = cx.differential(k - 1, w)
        index = {key: i for i, key in enumerate(rows)}
        b = {index[key]: v for key, v in part.items()}
        x = solve(A, b, mode=mode, primes=primes, seed=seed)
        used = mode or ("exact" if A.rows < 200_000 else PROBABILISTIC)
        if x is None:
            return CoboundaryVerdict(False, used, None, tuple(primes or ()))
        for c, v in x.items():
            witness[cols[c]] = v
    return CoboundaryVerdict(True, used, witness, tuple(primes or ()))


def cochain_terms(c: Cochain) -> dict:
    return {(w, m): v for w, vec in c.terms.items() for m, v in vec.items()}


def terms_cochain(terms: dict, base_dim: int, module_dim: int, k: int, shape: str = TENSOR) -> Cochain:
    out: dict = {}
    for (w, m), v in terms.items():
        out.setdefault(w, {})[m] = v
    return Cochain(MultiBasis(base_dim, shape, k), module_dim, out)


def product_cochain(u: Cochain, phi: Cochain) -> Cochain:
    """(u (x) phi)(g_1..g_{a+b}) = phi(g_{a+1}..g_{a+b}) * u(g_1..g_a) for scalar phi."""
    if phi.module_dim != 1:
        raise CoefficientMismatch("the second factor must be scalar-valued")
    if u.domain.shape != TENSOR or phi.domain.shape != TENSOR:
        raise CoefficientMismatch("products are formed on tensor (Leibniz) cochains")
    if u.domain.base_dim != phi.domain.base_dim:
        raise CoefficientMismatch("factors live on different algebras")
    terms: dict = {}
    for s, vec in u.terms.items():
        for t, val in phi.terms.items():
            c = val.get(0, 0)
            if c:
                terms[s + t] = {m: v * c for m, v in vec.items()}
    dom = MultiBasis(u.domain.base_dim, TENSOR, u.domain.k + phi.domain.k)
    return Cochain(dom, u.module_dim, terms)


def predicted_hl_dimension(p: int, q: int, k: int) -> int:
    """Count of (c, j), c in {1, 2}, j >= 0, with k = c + j (n - 1)."""
    n = p + q
    if n < 4:
        raise ValueError("the prediction needs p+q >= 4")
    return sum(1 for c in (1, 2) if k >= c and (k - c) % (n - 1) == 0)


def euler_weights_of(alg) -> list[int]:
    return [-1 if lab.is_partial else 0 for lab in alg.labels]


def leibniz_adjoint(p: int, q: int, graded: bool = True) -> LeibnizComplex:
    h = build_h(p, q)
    w = euler_weights_of(h) if graded else None
    return LeibnizComplex(h, adjoint(h), f"CL(h({p},{q}); h)", w, w)


def ce_trivial(alg, graded: bool = False) -> CEComplex:
    w = None
    if graded and all(hasattr(lab, "is_partial") for lab in alg.labels):
        w = euler_weights_of(alg)
    return CEComplex(alg, trivial(alg), f"CE({alg.name}; R)", w, None if w is None else [0])


def lie_betti(alg, max_degree: int | None = None, mode: str | None = None) -> list[int]:
    top = alg.dim if max_degree is None else max_degree
    return cohomology_dims(ce_trivial(alg, graded=True), range(top + 1), mode).dims()


def lie_dim(betti: list[int], k: int) -> int:
    """Cohomology dimension with negative (and out-of-range) degrees read as zero."""
    return betti[k] if 0 <= k < len(betti) else 0


def graded_product(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def hr_dims(p: int, q: int, m: int, so_betti: list[int] | None = None,
            mode: str | None = None) -> TheoremCheck:
    """HR^m computed directly against H^{m+3}(so) + H^{m+3-n}(so) (x) <gamma*_pq>."""
    n = p + q
    h = build_h(p, q)
    if so_betti is None:
        so_betti = lie_betti(build_so(p, q))
    rel = RelativeComplex("CR", trivial(h), alg_weights=euler_weights_of(h))
    got = cohomology_dims(_RelativeAdapter(rel), [m], mode).degrees[0].cohomology
    expected = lie_dim(so_betti, m + 3) + lie_dim(so_betti, m + 3 - n)
    return TheoremCheck(f"HR^{m}(h({p},{q}))", expected, got, expected == got)


class _RelativeAdapter:
    """Lets cohomology_dims walk a RelativeComplex through its Euler blocks."""

    direction = "cochain"

    def __init__(self, rel: RelativeComplex):
        self.rel = rel
        self.prime = rel.prime
        self.name = f"{rel.which}({rel.alg.name})"
        self.alg_weights = rel.ambient.alg_weights

    def weights(self, m: int) -> list:
        amb = self.rel.ambient
        return amb.weights(self.rel.ambient_degree(m)) if amb.alg_weights is not None else [None]

    def basis(self, m: int, w=None) -> list:
        return self.rel.basis(m, w)

    def dim(self, m: int) -> int:
        return self.rel.dim(m)

    def differential(self, m: int, w=None):
        return self.rel.differential(m, w)


def _is_graded(cx) -> bool:
    return getattr(cx, "alg_weights", None) is not None


def torus_leibniz(p: int, q: int, prime: int) -> LeibnizComplex:
    """CL(h(p,q); h) over GF(prime) in a torus eigenbasis, graded by torus and Euler weights."""
    from .weights import TorusGrading
    T = TorusGrading(p, q, prime)
    A = T.algebra
    cx = LeibnizComplex(A, adjoint(A), f"CL(h({p},{q}); h) mod {prime}", T.weights, T.weights)
    cx.torus = T
    return cx


def _torus_zero(w) -> bool:
    return all(x == 0 for x in w[:-1])


def hl_dims(p: int, q: int, degrees: Iterable[int], mode: str | None = None,
            seed: int = DEFAULT_SEED, primes: int = 2) -> CohomologyReport:
    """HL^k(h(p,q); h) for the requested degrees.

    Exact mode sums every Euler block over Q.  Probabilistic mode keeps
    only the torus-weight-zero blocks over ``primes`` random primes = 1 mod 4
    and accepts the result only when all primes agree; otherwise it falls
    back to exact.  ``mode=None`` picks exact while the largest cochain
    space has at most 2e5 coordinates, probabilistic beyond.
    """
    from .linalg import random_primes
    degrees = list(degrees)
    n = p + q
    if mode is None:
        dim_h = n * (n - 1) // 2 + n
        mode = EXACT if dim_h ** (max(degrees, default=0) + 2) <= 2 * 10 ** 5 else PROBABILISTIC
    if mode == EXACT:
        return cohomology_dims(leibniz_adjoint(p, q), degrees, EXACT, seed)
    results = []
    for P in random_primes(primes, seed=seed, congruent_one_mod=4):
        r = cohomology_dims(torus_leibniz(p, q, P), degrees, EXACT, seed, weight_filter=_torus_zero)
        results.append(r)
    if any(r.dims() != results[0].dims() for r in results[1:]):
        return cohomology_dims(leibniz_adjoint(p, q), degrees, EXACT, seed)
    out = results[0]
    out.complex = f"CL(h({p},{q}); h)"
    out.field = ",".join(r.field for r in results)
    for d in out.degrees:
        d.mode = PROBABILISTIC
    return out


@dataclass
class ClassExtension:
    """Outcome of completing a product cochain to a cocycle inside its torus-weight block."""
    prime: int
    cocycle_as_given: bool
    extendable: bool
    coboundary: bool | None
    correction_size: int = 0


def _arg_types(weights, key) -> tuple:
    word, m = key
    return tuple(weights[a][-1] for a in word) + (weights[m][-1],)


def extend_product_class(p: int, q: int, u: str = "I", prime: int | None = None,
                         so_slot: str = "first", printed: bool = False,
                         seed: int = DEFAULT_SEED) -> ClassExtension:
    """Try to complete u (x) gamma*_pq to a Leibniz cocycle over GF(prime).

    The product is moved to the torus eigenbasis; a correction is sought
    only on cochain coordinates whose argument types (Euler degrees of the
    inputs and the output) do not occur in the product itself.  When one
    exists, the corrected cocycle is tested for being a coboundary.
    """
    from .invariants import extend_to_h, make_named, scalar_class_cochain
    from .linalg import random_primes
    if prime is None:
        prime = random_primes(1, seed=seed, congruent_one_mod=4)[0]
    cx = torus_leibniz(p, q, prime)
    T = cx.torus
    base = extend_to_h(make_named(u, p, q))
    g = scalar_class_cochain(make_named("gamma*_pq", p, q, printed=printed), True, so_slot)
    f = T.transform_cochain(cochain_terms(product_cochain(base, g)), True)
    k = len(next(iter(f))[0])
    df = cx.apply(f)
    if not df:
        verdict = is_coboundary(cx, k, f, mode=EXACT)
        return ClassExtension(prime, True, True, verdict.is_coboundary)
    blocks = {cx.weight(key) for key in f}
    if len(blocks) != 1:
        raise ValueError("product cochain is not homogeneous")
    w = blocks.pop()
    types = {_arg_types(T.weights, key) for key in f}
    M, rows, cols = cx.differential(k, w)
    ri = {r: i for i, r in enumerate(rows)}
    b = {ri[key]: (-v) % prime for key, v in df.items()}
    keep = [i for i, c in enumerate(cols) if _arg_types(T.weights, c) not in types]
    colsd = M.column_dicts()
    sub = SparseMatrix.from_columns(M.rows, [colsd[i] for i in keep], prime)
    x = solve(sub, b, mode=EXACT)
    if x is None:
        return ClassExtension(prime, False, False, None)
    c = dict(f)
    for i, v in x.items():
        key = cols[keep[i]]
        c[key] = (c.get(key, 0) + v) % prime
    c = {a: v for a, v in c.items() if v}
    if cx.apply(c):
        raise ArithmeticError("corrected cochain is not closed")
    verdict = is_coboundary(cx, k, c, mode=EXACT)
    return ClassExtension(prime, False, True, verdict.is_coboundary, len(x))
