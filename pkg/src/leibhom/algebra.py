"""Basis-labelled Lie algebras: so(p,q), the translations I_n and h(p,q).

Structure constants are never typed in by hand.  Each basis element is
realised as an affine vector field and brackets are read off from field
commutators.

Basis order is fixed everywhere: alphas of the p-block, alphas of the
q-block, betas (lexicographic in (i, j)), then d/dx^1 .. d/dx^n.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .errors import IncompatibleModule, NotAnIdeal, ParameterOutOfRange, QuotientMismatch
from .vf_frame import LinearVectorField, commutator, make_alpha, make_beta, make_partial


@dataclass(frozen=True, order=True)
class BasisLabel:
    kind: str  # "a" (alpha), "b" (beta) or "d" (partial)
    i: int
    j: int = 0

    def __str__(self) -> str:
        if self.kind == "d":
            return f"d_{self.i}"
        return f"{self.kind}_{self.i}_{self.j}"

    @classmethod
    def parse(cls, text: str) -> "BasisLabel":
        parts = text.split("_")
        if parts[0] == "d" and len(parts) == 2:
            return cls("d", int(parts[1]))
        if parts[0] in ("a", "b") and len(parts) == 3:
            return cls(parts[0], int(parts[1]), int(parts[2]))
        raise ValueError(f"cannot parse basis label {text!r}")

    @property
    def is_partial(self) -> bool:
        return self.kind == "d"

    def field(self, p: int, q: int) -> LinearVectorField:
        if self.kind == "a":
            return make_alpha(p, q, self.i, self.j)
        if self.kind == "b":
            return make_beta(p, q, self.i, self.j)
        return make_partial(p, q, self.i)


def Alpha(i: int, j: int) -> BasisLabel:
    return BasisLabel("a", i, j)


def Beta(i: int, j: int) -> BasisLabel:
    return BasisLabel("b", i, j)


def Partial(i: int) -> BasisLabel:
    return BasisLabel("d", i)


def so_labels(p: int, q: int) -> list[BasisLabel]:
    n = p + q
    labels = [Alpha(i, j) for i, j in combinations(range(1, p + 1), 2)]
    labels += [Alpha(i, j) for i, j in combinations(range(p + 1, n + 1), 2)]
    labels += [Beta(i, j) for i in range(1, p + 1) for j in range(p + 1, n + 1)]
    return labels


def partial_labels(p: int, q: int) -> list[BasisLabel]:
    return [Partial(i) for i in range(1, p + q + 1)]


def fmt_rational(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text: str) -> Fraction:
    return Fraction(text)


class LieAlgebra:
    """Finite-dimensional Lie algebra with sparse structure constants.

    ``sc[a, b]`` is a dict ``{c: coefficient}`` with ``[e_a, e_b] =
    sum_c coefficient * e_c``; only nonzero brackets are stored.  Indices
    refer to positions in ``labels``.  ``prime`` is None for rational
    coefficients, otherwise the coefficients are residues mod ``prime``.
    """

    def __init__(self, labels: Sequence, sc: dict, p: int = 0, q: int = 0,
                 name: str = "", prime: int | None = None):
        self.labels = list(labels)
        self.dim = len(self.labels)
        self.sc = {k: dict(v) for k, v in sc.items() if v}
        self.p, self.q = p, q
        self.n = p + q
        self.name = name
        self.prime = prime
        self.index = {lab: k for k, lab in enumerate(self.labels)}
        self._preimages = None

    def __repr__(self) -> str:
        return f"LieAlgebra({self.name or '?'}, dim={self.dim})"

    def bracket(self, a: int, b: int) -> dict:
        return self.sc.get((a, b), {})

    def bracket_vectors(self, x: dict, y: dict) -> dict:
        out: dict = {}
        for a, xa in x.items():
            for b, yb in y.items():
                for c, v in self.bracket(a, b).items():
                    out[c] = out.get(c, 0) + xa * yb * v
        return self._reduce(out)

    def _reduce(self, vec: dict) -> dict:
        if self.prime is None:
            return {k: v for k, v in vec.items() if v != 0}
        p = self.prime
        return {k: v % p for k, v in vec.items() if v % p}

    def ad(self, g: int) -> list[dict]:
        """Column list of ad_g: entry j is the vector [e_g, e_j]."""
        return [dict(self.bracket(g, j)) for j in range(self.dim)]

    @property
    def preimages(self) -> list[list]:
        """For each basis index c, the list of (a, b, coeff) with c in [e_a, e_b]."""
        if self._preimages is None:
            pre: list[list] = [[] for _ in range(self.dim)]
            for (a, b), vec in sorted(self.sc.items()):
                for c, v in vec.items():
                    pre[c].append((a, b, v))
            self._preimages = pre
        return self._preimages

    def is_antisymmetric(self) -> bool:
        for (a, b), vec in self.sc.items():
            other = self.bracket(b, a)
            if self._reduce({k: vec.get(k, 0) + other.get(k, 0) for k in set(vec) | set(other)}):
                return False
        return True

    def jacobi_violations(self, limit: int = 1) -> list:
        bad = []
        for a in range(self.dim):
            for b in range(self.dim):
                for c in range(self.dim):
                    total: dict = {}
                    for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
                        for k, v in self.bracket(y, z).items():
                            for m, w in self.bracket(x, k).items():
                                total[m] = total.get(m, 0) + v * w
                    if self._reduce(total):
                        bad.append((a, b, c))
                        if len(bad) >= limit:
                            return bad
        return bad

    def to_json(self) -> str:
        rows = []
        for (a, b) in sorted(self.sc):
            if a < b:
                vec = self.sc[a, b]
                rows.append([str(self.labels[a]), str(self.labels[b]),
                             [[str(self.labels[k]), fmt_rational(v)] for k, v in sorted(vec.items())]])
        return json.dumps({"p": self.p, "q": self.q,
                           "labels": [str(x) for x in self.labels], "sc": rows})

    @classmethod
    def from_json(cls, text: str) -> "LieAlgebra":
        data = json.loads(text)
        labels = [BasisLabel.parse(s) for s in data["labels"]]
        index = {lab: k for k, lab in enumerate(labels)}
        sc: dict = {}
        for a, b, vec in data["sc"]:
            ia, ib = index[BasisLabel.parse(a)], index[BasisLabel.parse(b)]
            v = {index[BasisLabel.parse(k)]: parse_rational(c) for k, c in vec}
            sc[ia, ib] = v
            sc[ib, ia] = {k: -c for k, c in v.items()}
        return cls(labels, sc, data["p"], data["q"])


def express_in_basis(fld: LinearVectorField, labels: Sequence[BasisLabel], p: int, q: int) -> dict:
    """Coordinates of an affine field in the alpha/beta/partial basis.

    Raises ValueError if the field is not in the span of ``labels``.
    """
    lin = fld.linear_map
    const = fld.constant_map
    coords: dict = {}
    for k, lab in enumerate(labels):
        if lab.kind == "d":
            v = const.get(lab.i, 0)
        else:
            v = lin.get((lab.j, lab.i), 0)
        if v != 0:
            coords[k] = Fraction(v)
    rebuilt = LinearVectorField.zero(fld.n)
    for k, v in coords.items():
        rebuilt = rebuilt + labels[k].field(p, q).scale(v)
    if rebuilt != fld:
        raise ValueError(f"field {fld} is not in the span of the given basis")
    return coords


def _from_fields(labels: list[BasisLabel], p: int, q: int, name: str) -> LieAlgebra:
    fields = [lab.field(p, q) for lab in labels]
    sc: dict = {}
    for a, fa in enumerate(fields):
        for b, fb in enumerate(fields):
            if a == b:
                continue
            br = commutator(fa, fb)
            if not br.is_zero():
                sc[a, b] = express_in_basis(br, labels, p, q)
    alg = LieAlgebra(labels, sc, p, q, name)
    alg.fields = fields
    return alg


def _check_pq(p: int, q: int) -> None:
    if p < 0 or q < 0 or p + q < 1:
        raise ParameterOutOfRange(f"need p, q >= 0 and p + q >= 1, got ({p}, {q})")


def build_so(p: int, q: int) -> LieAlgebra:
    _check_pq(p, q)
    return _from_fields(so_labels(p, q), p, q, f"so({p},{q})")


def build_h(p: int, q: int) -> LieAlgebra:
    _check_pq(p, q)
    return _from_fields(so_labels(p, q) + partial_labels(p, q), p, q, f"h({p},{q})")


def build_translations(p: int, q: int) -> LieAlgebra:
    _check_pq(p, q)
    return _from_fields(partial_labels(p, q), p, q, f"I_{p + q}")


@dataclass
class IdealReport:
    passed: bool
    checks: dict = field(default_factory=dict)
    counterexample: tuple | None = None


def check_ideal_and_quotient(h: LieAlgebra, so: LieAlgebra | None = None,
                             strict: bool = True) -> IdealReport:
    """Check that the partials span an abelian ideal with quotient so(p,q).

    With ``strict`` a failure raises NotAnIdeal / QuotientMismatch;
    otherwise the report carries the first counterexample.
    """
    so = so if so is not None else build_so(h.p, h.q)
    part = {k for k, lab in enumerate(h.labels) if lab.is_partial}
    report = IdealReport(True, {"abelian": True, "ideal": True, "quotient": True})

    def fail(check, exc, example):
        report.passed = False
        report.checks[check] = False
        report.counterexample = example
        if strict:
            raise exc(f"{check} check failed at {example}")
        return report

    for a in part:
        for b in part:
            if h.bracket(a, b):
                return fail("abelian", NotAnIdeal, (str(h.labels[a]), str(h.labels[b])))
    for a in range(h.dim):
        for b in part:
            if set(h.bracket(a, b)) - part:
                return fail("ideal", NotAnIdeal, (str(h.labels[a]), str(h.labels[b])))
    for a in range(h.dim):
        for b in range(h.dim):
            if a in part or b in part:
                continue
            coset = {so.index[h.labels[c]]: v for c, v in h.bracket(a, b).items() if c not in part}
            target = so.bracket(so.index[h.labels[a]], so.index[h.labels[b]])
            if coset != target:
                return fail("quotient", QuotientMismatch, (str(h.labels[a]), str(h.labels[b])))
    return report


class Representation:
    """Action matrices of a Lie algebra on a finite-dimensional module.

    ``act[g][j]`` is the sparse vector g . e_j of the module.  The
    convention is g . x = [g, x] for every adjoint-type module.
    """

    def __init__(self, algebra: LieAlgebra, module_dim: int, act: list, kind: str,
                 module_labels: Sequence | None = None):
        self.algebra = algebra
        self.module_dim = module_dim
        self.act = act
        self.kind = kind
        self.module_labels = list(module_labels) if module_labels is not None else None

    def __repr__(self) -> str:
        return f"Representation({self.kind}, {self.algebra.name}, dim={self.module_dim})"

    def apply(self, g: int, vec: dict) -> dict:
        out: dict = {}
        cols = self.act[g]
        for j, c in vec.items():
            for i, v in cols[j].items():
                out[i] = out.get(i, 0) + c * v
        return self.algebra._reduce(out)

    def is_trivial(self) -> bool:
        return all(not col for mat in self.act for col in mat)

    def homomorphism_violations(self, limit: int = 1) -> list:
        alg = self.algebra
        bad = []
        for x in range(alg.dim):
            for y in range(alg.dim):
                br = alg.bracket(x, y)
                for j in range(self.module_dim):
                    e = {j: 1}
                    lhs: dict = {}
                    for c, v in br.items():
                        for i, w in self.apply(c, e).items():
                            lhs[i] = lhs.get(i, 0) + v * w
                    rhs = self.apply(x, self.apply(y, e))
                    for i, w in self.apply(y, self.apply(x, e)).items():
                        rhs[i] = rhs.get(i, 0) - w
                    diff = {i: lhs.get(i, 0) - rhs.get(i, 0) for i in set(lhs) | set(rhs)}
                    if alg._reduce(diff):
                        bad.append((x, y, j))
                        if len(bad) >= limit:
                            return bad
        return bad


def adjoint(alg: LieAlgebra) -> Representation:
    return Representation(alg, alg.dim, [alg.ad(g) for g in range(alg.dim)], "adjoint", alg.labels)


def coadjoint(alg: LieAlgebra) -> Representation:
    """(g . xi)(x) = -xi([g, x]) on the dual basis; matrices are -ad^T."""
    act = []
    for g in range(alg.dim):
        cols: list[dict] = [{} for _ in range(alg.dim)]
        for i in range(alg.dim):
            for j, v in alg.bracket(g, i).items():
                cols[j][i] = -v
        act.append([alg._reduce(c) for c in cols])
    return Representation(alg, alg.dim, act, "coadjoint", [f"{lab}*" for lab in alg.labels])


def trivial(alg: LieAlgebra, dim: int = 1) -> Representation:
    return Representation(alg, dim, [[{} for _ in range(dim)] for _ in range(alg.dim)], "trivial")


def restricted(sub: LieAlgebra, ambient: LieAlgebra, module: Iterable | None = None) -> Representation:
    """Adjoint action of ``sub`` (a subalgebra of ``ambient``) on a span of ambient labels.

    ``module`` lists the ambient basis labels spanning an invariant
    subspace; by default the whole ambient algebra.
    """
    module = list(ambient.labels if module is None else module)
    try:
        sub_idx = [ambient.index[lab] for lab in sub.labels]
        mod_idx = [ambient.index[lab] for lab in module]
    except KeyError as exc:
        raise IncompatibleModule(f"label {exc} is not in {ambient.name}") from None
    pos = {a: k for k, a in enumerate(mod_idx)}
    act = []
    for g in sub_idx:
        cols = []
        for m in mod_idx:
            col = {}
            for c, v in ambient.bracket(g, m).items():
                if c not in pos:
                    raise IncompatibleModule(
                        f"[{ambient.labels[g]}, {ambient.labels[m]}] leaves the module span")
                col[pos[c]] = v
            cols.append(col)
        act.append(cols)
    return Representation(sub, len(mod_idx), act, "restricted", module)


def representation(alg: LieAlgebra, kind: str, module=None, ambient: LieAlgebra | None = None) -> Representation:
    if kind == "adjoint":
        return adjoint(alg)
    if kind == "coadjoint":
        return coadjoint(alg)
    if kind == "trivial":
        return trivial(alg, 1 if module is None else int(module))
    if kind == "restricted":
        if ambient is None:
            raise IncompatibleModule("restricted representation needs the ambient algebra")
        return restricted(alg, ambient, module)
    raise IncompatibleModule(f"unknown representation kind {kind!r}")
