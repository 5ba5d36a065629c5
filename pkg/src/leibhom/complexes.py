"""Cochain and chain complexes of a Lie algebra, built column by column.

Basis keys are pairs ``(word, m)``: ``word`` is a tuple of algebra basis
indices (strictly increasing for wedge-type complexes) and ``m`` indexes
the coefficient module.  Differentials are given as push-forwards of
single basis elements, so a sparse cochain of high degree can be
differentiated without enumerating its target space.

Optional gradings: if ``alg_weights`` / ``mod_weights`` are supplied
(additive over brackets and actions) every differential preserves

    weight(word, m) = mod_weight[m] - sum(alg_weight[a] for a in word)

and matrices may be built one weight block at a time.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, permutations, product
from typing import Iterable, Sequence

from .algebra import LieAlgebra, Representation, coadjoint, trivial
from .errors import LiftFailure, NotACocycle
from .linalg import SparseMatrix
from .multilinear import wedge_sort

COCHAIN, CHAIN = "cochain", "chain"


def _add(out: dict, key, v) -> None:
    out[key] = out.get(key, 0) + v


def _perm_sign(perm: Sequence[int]) -> int:
    sign, seen = 1, [False] * len(perm)
    for i in range(len(perm)):
        if not seen[i]:
            j, length = i, 0
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                length += 1
            if length % 2 == 0:
                sign = -sign
    return sign


def _wadd(a, b):
    if isinstance(a, tuple):
        return tuple(x + y for x, y in zip(a, b))
    return a + b


def _wneg(a):
    return tuple(-x for x in a) if isinstance(a, tuple) else -a


class ComplexSpec:
    """A graded space with a differential, given by basis push-forwards."""

    direction = COCHAIN
    wedge = False

    def __init__(self, alg: LieAlgebra, rep: Representation, name: str = "",
                 alg_weights: Sequence | None = None, mod_weights: Sequence | None = None):
        self.alg = alg
        self.rep = rep
        self.name = name
        self.prime = alg.prime
        self.alg_weights = list(alg_weights) if alg_weights is not None else None
        self.mod_weights = list(mod_weights) if mod_weights is not None else None

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.name}>"

    # --- spaces -----------------------------------------------------------
    def words(self, k: int) -> Iterable[tuple]:
        r = range(self.alg.dim)
        return combinations(r, k) if self.wedge else product(r, repeat=k)

    def basis(self, k: int, weight=None) -> list:
        if k < 0:
            return []
        mods = range(self.rep.module_dim)
        if weight is None or self.alg_weights is None:
            return [(w, m) for w in self.words(k) for m in mods]
        out = []
        for m in mods:
            target = _wadd(self.mod_weights[m], _wneg(weight))
            for w in self._weighted_words(k, target):
                out.append((w, m))
        out.sort(key=lambda key: (key[0], key[1]))
        return out

    def dim(self, k: int) -> int:
        from math import comb
        if k < 0:
            return 0
        n = self.alg.dim
        return (comb(n, k) if self.wedge else n ** k) * self.rep.module_dim

    def weight(self, key) -> object:
        word, m = key
        w = self.mod_weights[m]
        for a in word:
            w = _wadd(w, _wneg(self.alg_weights[a]))
        return w

    def weights(self, k: int) -> list:
        """Distinct weights occurring in degree k (sorted)."""
        seen = set()
        for m in range(self.rep.module_dim):
            for s in self._reachable(k):
                seen.add(_wadd(self.mod_weights[m], _wneg(s)))
        return sorted(seen)

    def _reachable(self, k: int) -> set:
        sums = {self._zero_weight()}
        for _ in range(k):
            sums = {_wadd(s, w) for s in sums for w in set(self.alg_weights)}
        return sums

    def _zero_weight(self):
        w0 = self.alg_weights[0]
        return tuple(0 for _ in w0) if isinstance(w0, tuple) else 0

    def _weighted_words(self, k: int, target) -> list:
        """Words of length k whose algebra weights sum to ``target``."""
        wts = self.alg_weights
        n = self.alg.dim
        reach = [None] * (k + 1)
        reach[0] = {self._zero_weight()}
        distinct = set(wts)
        for r in range(1, k + 1):
            reach[r] = {_wadd(s, w) for s in reach[r - 1] for w in distinct}
        out: list = []

        def rec(prefix: tuple, start: int, remaining, left: int):
            if left == 0:
                if remaining == self._zero_weight():
                    out.append(prefix)
                return
            for a in range(start, n):
                rest = _wadd(remaining, _wneg(wts[a]))
                if rest in reach[left - 1]:
                    rec(prefix + (a,), a + 1 if self.wedge else 0, rest, left - 1)

        if target in reach[k]:
            rec((), 0, target, k)
        return out

    # --- differential -------------------------------------------------------
    def target_degree(self, k: int) -> int:
        return k + 1 if self.direction == COCHAIN else k - 1

    def push(self, key) -> dict:
        raise NotImplementedError

    def _clean(self, out: dict) -> dict:
        if self.prime is None:
            return {k: v for k, v in out.items() if v != 0}
        p = self.prime
        return {k: v % p for k, v in out.items() if v % p}

    def apply(self, terms: dict) -> dict:
        """Differential of a sparse combination ``{key: coeff}``."""
        out: dict = {}
        for key, c in terms.items():
            for k2, v in self.push(key).items():
                _add(out, k2, c * v)
        return self._clean(out)

    def differential(self, k: int, weight=None, row_keys: Sequence | None = None):
        """Matrix of the differential on degree k (optionally one weight block).

        Returns (matrix, row_keys, col_keys).  Without explicit row keys the
        rows are the target-degree basis of the same weight.
        """
        cols = self.basis(k, weight)
        if row_keys is None:
            rk = self.basis(self.target_degree(k), weight)
        else:
            rk = list(row_keys)
        rindex = {key: i for i, key in enumerate(rk)}
        columns = []
        for key in cols:
            col = {}
            for k2, v in self.push(key).items():
                if k2 not in rindex:
                    raise KeyError(f"{k2} outside the target basis")
                col[rindex[k2]] = v
            columns.append(col)
        return SparseMatrix.from_columns(len(rk), columns, self.prime), rk, cols


class LeibnizComplex(ComplexSpec):
    """CL^k = Hom(g^(x)k, V) with the coboundary

        df(g_1..g_{k+1}) = [g_1, f(g_2..)] + sum_{i>=2} (-1)^i [f(..^g_i..), g_i]
                           + sum_{i<j} (-1)^(j+1) f(.., [g_i, g_j], .., ^g_j, ..)

    where [v, g] = -g . v is the right action of the Lie module V.
    """

    def push(self, key) -> dict:
        a, m = key
        k = len(a)
        alg, act = self.alg, self.rep.act
        out: dict = {}
        for c in range(alg.dim):
            vec = act[c][m]
            if not vec:
                continue
            for m2, v in vec.items():
                _add(out, ((c,) + a, m2), v)
            for i in range(2, k + 2):
                b = a[:i - 1] + (c,) + a[i - 1:]
                s = -1 if i % 2 == 0 else 1  # (-1)^i times the right-action sign
                for m2, v in vec.items():
                    _add(out, (b, m2), s * v)
        pre = alg.preimages
        for pos in range(k):
            head, rest = a[:pos], a[pos + 1:]
            for x, y, lam in pre[a[pos]]:
                for t in range(len(rest) + 1):
                    s = -1 if (t + pos) % 2 == 0 else 1
                    b = head + (x,) + rest[:t] + (y,) + rest[t:]
                    _add(out, (b, m), s * lam)
        return self._clean(out)


class CEComplex(ComplexSpec):
    """C^k = Hom(wedge^k g, V) with

        df(g_1..g_{k+1}) = sum_i (-1)^i g_i . f(..^g_i..)
                           + sum_{i<j} (-1)^j f(.., g_{i-1}, [g_i, g_j], g_{i+1}, .., ^g_j, ..).
    """

    wedge = True

    def push(self, key) -> dict:
        w, m = key
        alg, act = self.alg, self.rep.act
        out: dict = {}
        wset = set(w)
        for c in range(alg.dim):
            if c in wset:
                continue
            vec = act[c][m]
            if not vec:
                continue
            pos = sum(1 for x in w if x < c)  # 0-based position of c in b
            b = w[:pos] + (c,) + w[pos:]
            s = -1 if pos % 2 == 0 else 1  # (-1)^(pos+1)
            for m2, v in vec.items():
                _add(out, (b, m2), s * v)
        pre = alg.preimages
        for t, c in enumerate(w):
            r = w[:t] + w[t + 1:]
            rset = set(r)
            for x, y, lam in pre[c]:
                if x >= y or x in rset or y in rset:
                    continue
                i = sum(1 for z in r if z < x)  # 0-based position of x in b
                j = sum(1 for z in r if z < y) + 1
                b = tuple(sorted(r + (x, y)))
                # (-1)^(i+j-1) with 1-based i, j; times (-1)^t
                s = -1 if (i + j + 1 + t) % 2 else 1
                _add(out, (b, m), s * lam)
        return self._clean(out)


class LieHomologyComplex(ComplexSpec):
    """Chains wedge^k g (x) M with boundary

        d(x_1^..^x_k (x) m) = sign * [ sum_i (-1)^(i+1) (..^x_i..) (x) x_i . m
                                       + sum_{i<j} (-1)^(i+j+1) [x_i, x_j]^(..) (x) m ].

    The default sign is fixed so that the rho-type chain maps to a
    positive multiple of the I-type chain.
    """

    direction = CHAIN
    wedge = True

    def __init__(self, alg, rep, name="", sign: int = 1, **kw):
        super().__init__(alg, rep, name, **kw)
        self.sign = sign

    def push(self, key) -> dict:
        w, m = key
        alg, act = self.alg, self.rep.act
        out: dict = {}
        for i, x in enumerate(w):
            s = self.sign * (1 if i % 2 == 0 else -1)
            rest = w[:i] + w[i + 1:]
            for m2, v in act[x][m].items():
                _add(out, (rest, m2), s * v)
        for i, j in combinations(range(len(w)), 2):
            rest = w[:i] + w[i + 1:j] + w[j + 1:]
            s0 = self.sign * (1 if (i + j) % 2 == 0 else -1)  # (-1)^(i+j+1), 1-based
            for c, lam in alg.bracket(w[i], w[j]).items():
                sign, b = wedge_sort((c,) + rest)
                if sign:
                    _add(out, (b, m), s0 * sign * lam)
        return self._clean(out)


def ce_coboundary(rep: Representation, k: int, **kw):
    cx = CEComplex(rep.algebra, rep, **kw)
    return cx.differential(k)


def leibniz_coboundary(rep: Representation, k: int, **kw):
    cx = LeibnizComplex(rep.algebra, rep, **kw)
    return cx.differential(k)


def lie_homology_boundary(rep: Representation, k: int, **kw):
    cx = LieHomologyComplex(rep.algebra, rep, **kw)
    return cx.differential(k)


def pi_star(u: tuple, m, tensor: bool = True) -> dict:
    """Pullback of the wedge basis functional e_u (x) e_m along tensor -> wedge."""
    out = {}
    for perm in permutations(range(len(u))):
        out[(tuple(u[i] for i in perm), m)] = _perm_sign(perm)
    return out


def _is_increasing(t: tuple) -> bool:
    return all(a < b for a, b in zip(t, t[1:]))


class RelativeComplex:
    """Cokernel of a degree-shifting inclusion of a Lie complex, as explicit complement bases.

    ``which == "CR"``: ambient Hom(g (x) wedge^(m+1) g, R), realised as the
    Chevalley-Eilenberg complex with coadjoint coefficients
    Hom(wedge^(m+1) g, g'), receiving Hom(wedge^(m+2) g, R).

    ``which == "Crel"``: ambient Hom(g^(x)(m+2), V) with the Leibniz
    differential, receiving Hom(wedge^(m+2) g, V).

    In both cases every image vector pi*(e_u) has coefficient +1 on a
    distinguished "pivot" key; the remaining keys form the complement
    basis of the quotient.
    """

    def __init__(self, which: str, rep: Representation, alg_weights=None, mod_weights=None):
        alg = rep.algebra
        self.which = which
        self.alg = alg
        self.prime = alg.prime
        if which == "CR":
            self.coef = trivial(alg)
            co = coadjoint(alg)
            mw = None
            if alg_weights is not None:
                mw = [_wneg(w) for w in alg_weights]
            self.ambient = CEComplex(alg, co, "CE(g; g')", alg_weights, mw)
            self.lie = CEComplex(alg, self.coef, "CE(g; R)", alg_weights,
                                 None if alg_weights is None else [self._zero(alg_weights)])
            self.shift = 1
        elif which == "Crel":
            self.coef = rep
            self.ambient = LeibnizComplex(alg, rep, "CL(g; V)", alg_weights, mod_weights)
            self.lie = CEComplex(alg, rep, "CE(g; V)", alg_weights, mod_weights)
            self.shift = 2
        else:
            raise ValueError(f"unknown relative complex {which!r}")

    @staticmethod
    def _zero(ws):
        return tuple(0 for _ in ws[0]) if isinstance(ws[0], tuple) else 0

    def __repr__(self) -> str:
        return f"<RelativeComplex {self.which} over {self.alg.name}>"

    def ambient_degree(self, m: int) -> int:
        return m + self.shift

    # --- the inclusion ------------------------------------------------------
    def include(self, key) -> dict:
        """pi^* of a Lie basis cochain (wedge word u of length m+2, coefficient index)."""
        u, c = key
        if self.which == "Crel":
            return pi_star(u, c)
        out = {}
        for t, a in enumerate(u):
            out[(u[:t] + u[t + 1:], a)] = 1 if t % 2 == 0 else -1
        return out

    def is_pivot(self, key) -> bool:
        word, m = key
        if self.which == "Crel":
            return _is_increasing(word)
        return m < word[0]

    def pivot_source(self, key):
        """Lie basis key whose image has its pivot at ``key``."""
        word, m = key
        if self.which == "Crel":
            return (word, m)
        return ((m,) + word, 0)

    def ambient_basis(self, m: int, weight=None) -> list:
        return self.ambient.basis(self.ambient_degree(m), weight)

    def basis(self, m: int, weight=None) -> list:
        return [key for key in self.ambient_basis(m, weight) if not self.is_pivot(key)]

    def dim(self, m: int) -> int:
        return len(self.basis(m))

    def image_dim(self, m: int) -> int:
        return sum(1 for key in self.ambient_basis(m) if self.is_pivot(key))

    # --- projections --------------------------------------------------------
    def project(self, terms: dict) -> dict:
        """Quotient coordinates: subtract pi^* of pivot values, drop pivot keys."""
        out = {k: v for k, v in terms.items() if not self.is_pivot(k)}
        for k, v in terms.items():
            if self.is_pivot(k):
                for k2, s in self.include(self.pivot_source(k)).items():
                    if not self.is_pivot(k2):
                        _add(out, k2, -v * s)
        return self._clean(out)

    def split_projector(self, terms: dict) -> dict:
        """Idempotent onto image(pi^*) along the complement keys."""
        out: dict = {}
        for k, v in terms.items():
            if self.is_pivot(k):
                for k2, s in self.include(self.pivot_source(k)).items():
                    _add(out, k2, v * s)
        return self._clean(out)

    def alternation(self, terms: dict) -> dict:
        """Antisymmetrisation idempotent with image pi^*(Lie cochains)."""
        out: dict = {}
        for (word, m), v in terms.items():
            if self.which == "Crel":
                k = len(word)
                sign, u = wedge_sort(word)
                if not sign:
                    continue
                fact = 1
                for i in range(2, k + 1):
                    fact *= i
                for k2, s in pi_star(u, m).items():
                    _add(out, k2, Fraction(sign * v * s, fact) if self.prime is None
                         else sign * v * s * pow(fact, -1, self.prime))
            else:
                k = len(word) + 1
                sign, u = wedge_sort((m,) + word)
                if not sign:
                    continue
                for k2, s in self.include((u, 0)).items():
                    _add(out, k2, Fraction(sign * v * s, k) if self.prime is None
                         else sign * v * s * pow(k, -1, self.prime))
        return self._clean(out)

    def _clean(self, out):
        if self.prime is None:
            return {k: v for k, v in out.items() if v != 0}
        return {k: v % self.prime for k, v in out.items() if v % self.prime}

    # --- differential -------------------------------------------------------
    def push(self, key) -> dict:
        return self.project(self.ambient.push(key))

    def apply(self, terms: dict) -> dict:
        return self.project(self.ambient.apply(terms))

    def differential(self, m: int, weight=None):
        cols = self.basis(m, weight)
        rows = self.basis(m + 1, weight)
        rindex = {k: i for i, k in enumerate(rows)}
        columns = [{rindex[k]: v for k, v in self.push(key).items()} for key in cols]
        return SparseMatrix.from_columns(len(rows), columns, self.prime), rows, cols

    def connecting_map(self, m: int, terms: dict) -> dict:
        """Snake-lemma map H^m(quotient) -> H^(m+shift+1)(Lie): lift, differentiate, pull back."""
        if any(self.is_pivot(k) for k in terms):
            raise ValueError("quotient cochains are written in complement keys only")
        if self.apply(terms):
            raise NotACocycle("class representative is not a cocycle of the quotient complex")
        image = self.ambient.apply(terms)
        pulled = {self.pivot_source(k): v for k, v in image.items() if self.is_pivot(k)}
        rebuilt: dict = {}
        for k, v in pulled.items():
            for k2, s in self.include(k).items():
                _add(rebuilt, k2, v * s)
        if self._clean(rebuilt) != image:
            raise LiftFailure("differential of the lift is not in the image of pi^*")
        return pulled


def build_relative_complex(which: str, rep: Representation, **kw) -> RelativeComplex:
    return RelativeComplex(which, rep, **kw)


def connecting_map(rel: RelativeComplex, m: int, class_rep: dict) -> dict:
    return rel.connecting_map(m, class_rep)


class SubComplex:
    """Subcomplex spanned by given basis vectors of an ambient complex.

    ``bases[k]`` lists sparse vectors over the ambient basis keys of
    degree k; the induced differential is solved for in these bases.
    """

    def __init__(self, ambient: ComplexSpec, bases: dict, name: str = ""):
        self.ambient = ambient
        self.bases = bases
        self.name = name
        self.direction = ambient.direction

    def dim(self, k: int) -> int:
        return len(self.bases.get(k, []))

    def differential(self, k: int) -> SparseMatrix:
        from .linalg import solve

        src = self.bases.get(k, [])
        tgt_k = self.ambient.target_degree(k)
        tgt = self.bases.get(tgt_k, [])
        keys = sorted({key for v in tgt for key in v} |
                      {key for v in src for key in self.ambient.apply(v)})
        index = {key: i for i, key in enumerate(keys)}
        T = SparseMatrix.from_columns(len(keys), [{index[a]: c for a, c in v.items()} for v in tgt],
                                      self.ambient.prime)
        columns = []
        for v in src:
            image = self.ambient.apply(v)
            rhs = {index[a]: c for a, c in image.items()}
            if not rhs:
                columns.append({})
                continue
            x = solve(T, rhs, mode="exact")
            if x is None:
                raise ValueError(f"differential leaves the subcomplex in degree {tgt_k}")
            columns.append(x)
        return SparseMatrix.from_columns(len(tgt), columns, self.ambient.prime)
