"""Sparse exact linear algebra over Q and over prime fields GF(p).

Everything here is elimination on rows stored as ``{column: value}``
dicts.  Columns are processed left to right; among the rows holding the
current column the sparsest is taken as pivot, ties going to the lowest
row index, so every result is reproducible bit for bit.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .errors import FieldMismatch, ProbabilisticDisagreement

log = logging.getLogger(__name__)

EXACT = "exact"
PROBABILISTIC = "probabilistic"

# above this many rows the default mode switches to two-prime ranks
EXACT_ROW_LIMIT = 200_000


def to_modp(x, p: int) -> int:
    if isinstance(x, int):
        return x % p
    x = Fraction(x)
    den = x.denominator % p
    if den == 0:
        raise ZeroDivisionError(f"denominator {x.denominator} vanishes mod {p}")
    return x.numerator * pow(den, -1, p) % p


class SparseMatrix:
    """rows x cols matrix as coordinate entries; ``prime`` None means Q."""

    def __init__(self, rows: int, cols: int, entries: dict | None = None, prime: int | None = None):
        self.rows, self.cols, self.prime = rows, cols, prime
        self.entries: dict = {}
        for (r, c), v in (entries or {}).items():
            if not (0 <= r < rows and 0 <= c < cols):
                raise IndexError(f"entry {(r, c)} outside {rows}x{cols}")
            v = to_modp(v, prime) if prime else v
            if v != 0:
                self.entries[r, c] = v

    @classmethod
    def from_columns(cls, rows: int, columns: Sequence[dict], prime: int | None = None) -> "SparseMatrix":
        entries = {(r, c): v for c, col in enumerate(columns) for r, v in col.items()}
        return cls(rows, len(columns), entries, prime)

    @classmethod
    def from_dense(cls, data: Sequence[Sequence], prime: int | None = None) -> "SparseMatrix":
        rows = len(data)
        cols = len(data[0]) if rows else 0
        entries = {(r, c): v for r, row in enumerate(data) for c, v in enumerate(row) if v != 0}
        return cls(rows, cols, entries, prime)

    @classmethod
    def identity(cls, n: int, prime: int | None = None) -> "SparseMatrix":
        return cls(n, n, {(i, i): 1 for i in range(n)}, prime)

    def __repr__(self) -> str:
        fld = "Q" if self.prime is None else f"GF({self.prime})"
        return f"SparseMatrix({self.rows}x{self.cols}, nnz={self.nnz}, {fld})"

    def __eq__(self, other) -> bool:
        return (isinstance(other, SparseMatrix) and (self.rows, self.cols, self.prime)
                == (other.rows, other.cols, other.prime) and self.entries == other.entries)

    @property
    def nnz(self) -> int:
        return len(self.entries)

    def row_dicts(self) -> list[dict]:
        out: list[dict] = [{} for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    def column_dicts(self) -> list[dict]:
        out: list[dict] = [{} for _ in range(self.cols)]
        for (r, c), v in self.entries.items():
            out[c][r] = v
        return out

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix(self.cols, self.rows, {(c, r): v for (r, c), v in self.entries.items()}, self.prime)

    def reduce(self, p: int) -> "SparseMatrix":
        if self.prime is not None and self.prime != p:
            raise FieldMismatch(f"matrix over GF({self.prime}) cannot be read mod {p}")
        return SparseMatrix(self.rows, self.cols, self.entries, p)

    def matvec(self, x: dict) -> dict:
        out: dict = {}
        for (r, c), v in self.entries.items():
            if c in x:
                out[r] = out.get(r, 0) + v * x[c]
        if self.prime is None:
            return {r: v for r, v in out.items() if v != 0}
        return {r: v % self.prime for r, v in out.items() if v % self.prime}

    def matmul(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.cols != other.rows:
            raise ValueError("inner dimensions differ")
        if self.prime != other.prime:
            raise FieldMismatch("operands live over different fields")
        rows = other.column_dicts()
        out = {}
        for c, col in enumerate(rows):
            for r, v in self.matvec(col).items():
                out[r, c] = v
        return SparseMatrix(self.rows, other.cols, out, self.prime)

    def to_dense(self) -> list[list]:
        data = [[0] * self.cols for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            data[r][c] = v
        return data

    # MatrixMarket coordinate text; rationals as num/den, residues as integers
    def to_matrix_market(self) -> str:
        lines = ["%%MatrixMarket matrix coordinate",
                 f"% field {'Q' if self.prime is None else self.prime}",
                 f"{self.rows} {self.cols} {self.nnz}"]
        for (r, c) in sorted(self.entries):
            v = self.entries[r, c]
            if self.prime is None:
                v = Fraction(v)
                text = f"{v.numerator}/{v.denominator}"
            else:
                text = str(v)
            lines.append(f"{r + 1} {c + 1} {text}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_matrix_market(cls, text: str) -> "SparseMatrix":
        lines = text.splitlines()
        if not lines or not lines[0].startswith("%%MatrixMarket matrix coordinate"):
            raise ValueError("not a MatrixMarket coordinate file")
        prime = None
        body = []
        for line in lines[1:]:
            if line.startswith("% field "):
                tag = line.split()[2]
                prime = None if tag == "Q" else int(tag)
            elif line.startswith("%") or not line.strip():
                continue
            else:
                body.append(line.split())
        rows, cols, nnz = map(int, body[0])
        entries = {}
        for r, c, v in body[1:]:
            entries[int(r) - 1, int(c) - 1] = int(v) if prime else Fraction(v)
        if len(entries) != nnz:
            raise ValueError(f"header announces {nnz} entries, found {len(entries)}")
        return cls(rows, cols, entries, prime)


@dataclass
class RankResult:
    rank: int
    nullity: int
    kernel_basis: list | None = None
    mode: str = EXACT
    primes: tuple = field(default_factory=tuple)


def _integral_rows(rows: Iterable[dict]) -> list[dict]:
    out = []
    for row in rows:
        den = 1
        for v in row.values():
            if isinstance(v, Fraction):
                den = den * v.denominator // gcd(den, v.denominator)
        out.append({c: int(v * den) for c, v in row.items() if v != 0})
    return out


def _content_reduce(row: dict) -> None:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return
    if g > 1:
        for k in row:
            row[k] //= g


def _eliminate(rows: list[dict], ncols: int, prime: int | None) -> dict:
    """Forward elimination.  Returns {pivot column: pivot row} in echelon form.

    Over GF(p) pivot rows are normalised to a leading 1; over Q rows stay
    integral (fraction-free updates, divided by their content).
    """
    col_rows: list[set] = [set() for _ in range(ncols)]
    for i, row in enumerate(rows):
        for c in row:
            col_rows[c].add(i)
    pivots: dict = {}
    for c in range(ncols):
        cands = col_rows[c]
        if not cands:
            continue
        r = min(cands, key=lambda i: (len(rows[i]), i))
        prow = rows[r]
        for k in prow:
            col_rows[k].discard(r)
        if prime is not None:
            inv = pow(prow[c], -1, prime)
            prow = {k: v * inv % prime for k, v in prow.items()}
        pv = prow[c]
        for i in list(cands):
            row = rows[i]
            f = row[c]
            if prime is not None:
                for k, v in prow.items():
                    new = (row.get(k, 0) - f * v) % prime
                    if new:
                        if k not in row:
                            col_rows[k].add(i)
                        row[k] = new
                    elif k in row:
                        del row[k]
                        col_rows[k].discard(i)
            else:
                for k in row:
                    row[k] *= pv
                for k, v in prow.items():
                    new = row.get(k, 0) - f * v
                    if new:
                        if k not in row:
                            col_rows[k].add(i)
                        row[k] = new
                    elif k in row:
                        del row[k]
                        col_rows[k].discard(i)
                _content_reduce(row)
        rows[r] = {}
        pivots[c] = prow
    return pivots


def _reduced_pivots(pivots: dict, prime: int | None) -> dict:
    """Back substitution: reduced row echelon form with unit pivots."""
    red: dict = {}
    for c in sorted(pivots, reverse=True):
        row = pivots[c]
        if prime is None:
            lead = Fraction(row[c])
            row = {k: Fraction(v) / lead for k, v in row.items()}
        else:
            row = dict(row)
        for k in [k for k in row if k != c and k in red]:
            f = row.pop(k)
            for kk, vv in red[k].items():
                if kk == k:
                    continue
                new = row.get(kk, 0) - f * vv
                if prime is not None:
                    new %= prime
                if new:
                    row[kk] = new
                else:
                    row.pop(kk, None)
        red[c] = row
    return red


def _kernel_from_rref(red: dict, ncols: int, prime: int | None) -> list[dict]:
    basis = []
    free = [c for c in range(ncols) if c not in red]
    for f in free:
        vec = {f: 1}
        for c, row in red.items():
            v = row.get(f, 0)
            if v:
                vec[c] = (-v) % prime if prime else -v
        basis.append(dict(sorted(vec.items())))
    return basis


def rank_modp(A: SparseMatrix, p: int) -> int:
    B = A.reduce(p) if A.prime is None else A
    if B.prime != p:
        raise FieldMismatch(f"matrix over GF({B.prime}) asked for rank mod {p}")
    return len(_eliminate(B.row_dicts(), B.cols, p))


def random_primes(count: int, seed: int = 0, congruent_one_mod: int = 1,
                  exclude: Iterable[int] = ()) -> list[int]:
    """Distinct pseudo-random primes in (2^30, 2^31) from a seeded generator."""
    from sympy import isprime

    rng = random.Random(seed)
    out: list[int] = []
    excluded = set(exclude)
    while len(out) < count:
        cand = rng.randrange(2 ** 30 + 1, 2 ** 31)
        cand -= (cand - 1) % congruent_one_mod
        if cand > 2 ** 30 and cand not in out and cand not in excluded and isprime(cand):
            out.append(cand)
    return out


def default_mode(A: SparseMatrix) -> str:
    return EXACT if A.rows < EXACT_ROW_LIMIT else PROBABILISTIC


def rank_kernel(A: SparseMatrix, want_kernel: bool = False, mode: str | None = None,
                primes: Sequence[int] | None = None, seed: int = 0) -> RankResult:
    """Rank, nullity and optionally a kernel basis of A.

    Exact mode eliminates over Q (or over A's own prime field).  The
    probabilistic mode reduces a rational A modulo two or more random
    primes; disagreeing ranks fall back to exact elimination.
    """
    mode = mode or default_mode(A)
    if A.prime is not None:
        pivots = _eliminate(A.row_dicts(), A.cols, A.prime)
        kernel = None
        if want_kernel:
            kernel = _kernel_from_rref(_reduced_pivots(pivots, A.prime), A.cols, A.prime)
        return RankResult(len(pivots), A.cols - len(pivots), kernel, EXACT, (A.prime,))
    if mode == PROBABILISTIC:
        primes = list(primes) if primes else random_primes(2, seed)
        if len(primes) < 2:
            raise ValueError("probabilistic mode needs at least two primes")
        ranks = [rank_modp(A, p) for p in primes]
        if len(set(ranks)) == 1:
            kernel = None
            if want_kernel:
                B = A.reduce(primes[0])
                kernel = _kernel_from_rref(
                    _reduced_pivots(_eliminate(B.row_dicts(), B.cols, primes[0]), primes[0]),
                    A.cols, primes[0])
            return RankResult(ranks[0], A.cols - ranks[0], kernel, PROBABILISTIC, tuple(primes))
        log.warning("%s", ProbabilisticDisagreement(f"ranks {ranks} mod {primes}; using exact arithmetic"))
    pivots = _eliminate(_integral_rows(A.row_dicts()), A.cols, None)
    kernel = None
    if want_kernel:
        kernel = _kernel_from_rref(_reduced_pivots(pivots, None), A.cols, None)
    return RankResult(len(pivots), A.cols - len(pivots), kernel, EXACT)


def kernel_basis(A: SparseMatrix) -> list[dict]:
    return rank_kernel(A, want_kernel=True, mode=EXACT).kernel_basis


def solve(A: SparseMatrix, b: dict, mode: str | None = None,
          primes: Sequence[int] | None = None, seed: int = 0):
    """One solution x of A x = b, or None when the system is inconsistent.

    In probabilistic mode the answer is a consistency verdict: a dict
    solution modulo the first prime when all primes agree the system is
    consistent, None when all agree it is not.
    """
    mode = mode or default_mode(A)
    aug_rows = A.row_dicts()
    for r, v in b.items():
        aug_rows[r][A.cols] = v
    ncols = A.cols + 1
    if A.prime is not None or mode == PROBABILISTIC:
        fields = [A.prime] if A.prime is not None else (list(primes) if primes else random_primes(2, seed))
        verdicts = []
        for p in fields:
            rows = [{c: to_modp(v, p) for c, v in row.items() if to_modp(v, p)} for row in aug_rows]
            pivots = _eliminate(rows, ncols, p)
            verdicts.append(pivots if A.cols not in pivots else None)
        if all(v is None for v in verdicts):
            return None
        if all(v is not None for v in verdicts):
            p = fields[0]
            red = _reduced_pivots(verdicts[0], p)
            return {c: row.get(A.cols, 0) for c, row in sorted(red.items()) if row.get(A.cols, 0)}
        log.warning("solve: primes %s disagree on consistency; using exact arithmetic", fields)
    pivots = _eliminate(_integral_rows(aug_rows), ncols, None)
    if A.cols in pivots:
        return None
    red = _reduced_pivots(pivots, None)
    return {c: row.get(A.cols, 0) for c, row in sorted(red.items()) if row.get(A.cols, 0)}
