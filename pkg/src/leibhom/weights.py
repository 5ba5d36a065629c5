"""Gradings that split the cochain complexes of h(p,q) into blocks.

Euler grading: the derivation D with D(so) = 0 and D(d/dx^i) = -d/dx^i.

Torus grading: commuting rotations/boosts on disjoint coordinate pairs
act diagonalisably on h(p,q) over F_p once p = 1 mod 4 supplies a square
root of -1.  A Lie algebra acts trivially on its own cohomology, so only
the torus-weight-zero block carries cohomology; the other blocks are
acyclic, which the test-suite confirms at n = 4.
"""

from __future__ import annotations

from itertools import product

from .algebra import Alpha, Beta, LieAlgebra, build_h
from .linalg import SparseMatrix, rank_kernel


def euler_weights(alg: LieAlgebra) -> list[int]:
    return [-1 if getattr(lab, "is_partial", False) else 0 for lab in alg.labels]


def torus_pairs(p: int, q: int) -> list:
    """Disjoint coordinate pairs: same-block pairs first, then one mixed pair if possible."""
    pb, qb = list(range(1, p + 1)), list(range(p + 1, p + q + 1))
    out = []
    while len(pb) >= 2:
        out.append(Alpha(pb.pop(0), pb.pop(0)))
    while len(qb) >= 2:
        out.append(Alpha(qb.pop(0), qb.pop(0)))
    if pb and qb:
        out.append(Beta(pb[0], qb[0]))
    return out


def sqrt_minus_one(prime: int) -> int:
    if prime % 4 != 1:
        raise ValueError(f"{prime} is not 1 mod 4")
    for a in range(2, prime):
        r = pow(a, (prime - 1) // 4, prime)
        if r * r % prime == prime - 1:
            return r
    raise ValueError("no square root of -1")


def _kernel_modp(mat: list[list[int]], prime: int) -> list[dict]:
    A = SparseMatrix.from_dense(mat, prime)
    return rank_kernel(A, want_kernel=True, mode="exact").kernel_basis


def _inverse_modp(B: list[list[int]], prime: int) -> list[list[int]]:
    n = len(B)
    M = [row[:] + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(B)]
    for c in range(n):
        r = next(r for r in range(c, n) if M[r][c] % prime)
        M[c], M[r] = M[r], M[c]
        inv = pow(M[c][c], -1, prime)
        M[c] = [x * inv % prime for x in M[c]]
        for r in range(n):
            if r != c and M[r][c]:
                f = M[r][c]
                M[r] = [(x - f * y) % prime for x, y in zip(M[r], M[c])]
    return [row[n:] for row in M]


class TorusGrading:
    """h(p,q) over F_p in a joint eigenbasis of a maximal family of commuting pair generators.

    ``algebra`` is the eigenbasis algebra; ``weights[a]`` is the integer
    weight vector of basis element a, with the Euler degree appended;
    ``B`` holds the eigenvectors as columns over the standard basis.
    """

    def __init__(self, p: int, q: int, prime: int):
        self.p, self.q, self.prime = p, q, prime
        h = build_h(p, q)
        self.h = h
        self.torus = torus_pairs(p, q)
        i_unit = sqrt_minus_one(prime) if any(t.kind == "a" for t in self.torus) else None
        units = [i_unit if t.kind == "a" else 1 for t in self.torus]
        ad = [[[0] * h.dim for _ in range(h.dim)] for _ in self.torus]
        for k, t in enumerate(self.torus):
            g = h.index[t]
            for j in range(h.dim):
                for c, v in h.bracket(g, j).items():
                    ad[k][c][j] = int(v) % prime
        euler = euler_weights(h)
        columns, weights = [], []
        for e in sorted(set(euler)):
            block = [a for a in range(h.dim) if euler[a] == e]
            found = 0
            for w in product(range(-2, 3), repeat=len(self.torus)):
                stacked = []
                for k in range(len(self.torus)):
                    lam = w[k] * units[k] % prime
                    for r in block:
                        stacked.append([(ad[k][r][c] - (lam if r == c else 0)) % prime for c in block])
                for vec in _kernel_modp(stacked, prime):
                    col = [0] * h.dim
                    for pos, v in vec.items():
                        col[block[pos]] = v % prime
                    columns.append(col)
                    weights.append(tuple(w) + (e,))
                    found += 1
            if found != len(block):
                raise ValueError("torus does not diagonalise over this prime")
        self.B = [[columns[c][r] for c in range(h.dim)] for r in range(h.dim)]
        self.Binv = _inverse_modp(self.B, prime)
        self.weights = weights
        self.algebra = self._eigen_algebra(columns)

    def _eigen_algebra(self, columns) -> LieAlgebra:
        h, P = self.h, self.prime
        d = h.dim
        sc = {}
        for a in range(d):
            for b in range(d):
                vec = [0] * d
                for i, x in enumerate(columns[a]):
                    if not x:
                        continue
                    for j, y in enumerate(columns[b]):
                        if not y:
                            continue
                        for c, v in h.bracket(i, j).items():
                            vec[c] += x * y * int(v)
                out = {}
                for r in range(d):
                    s = sum(self.Binv[r][c] * vec[c] for c in range(d) if vec[c]) % P
                    if s:
                        out[r] = s
                if out:
                    sc[a, b] = out
        labels = [f"e{k}" for k in range(d)]
        return LieAlgebra(labels, sc, self.p, self.q, f"h({self.p},{self.q}) mod {P}", prime=P)

    def zero_weight(self, euler: int) -> tuple:
        return (0,) * len(self.torus) + (euler,)

    def transform_cochain(self, terms: dict, adjoint_output: bool) -> dict:
        """Rewrite {(word, m): value} over the standard basis in eigenbasis coordinates.

        Inputs pull back through B; adjoint-valued outputs are re-expressed
        through B^-1.  Values must be integers or fractions with unit denominators mod p.
        """
        P = self.prime
        rows = [[(c, self.B[r][c]) for c in range(len(self.B)) if self.B[r][c]] for r in range(len(self.B))]
        out: dict = {}
        for (word, m), v in terms.items():
            val = _modp(v, P)
            outs = ([(r, self.Binv[r][m]) for r in range(len(self.B)) if self.Binv[r][m]]
                    if adjoint_output else [(m, 1)])
            partial = [((), val)]
            for a in word:
                partial = [(w + (c,), x * y % P) for w, x in partial for c, y in rows[a]]
            for w, x in partial:
                for m2, y in outs:
                    key = (w, m2)
                    out[key] = (out.get(key, 0) + x * y) % P
        return {k: v for k, v in out.items() if v}


def _modp(v, P: int) -> int:
    from fractions import Fraction
    v = Fraction(v)
    return v.numerator * pow(v.denominator, -1, P) % P
