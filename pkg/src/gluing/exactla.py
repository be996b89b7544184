"""Exact dense linear algebra over a prime field F_p or over Q.

Matrices are plain numpy arrays.  Over F_p they are ``int64`` arrays with
entries in ``[0, p)``; over Q they are ``object`` arrays of ``Fraction``.
Nothing in the package ever touches floating point.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np


class NoSolution(ValueError):
    """Raised when a linear system has no solution."""


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, int(p**0.5) + 1))


@dataclass(frozen=True)
class Field:
    """A prime field F_p (``p`` set) or the rationals (``p is None``)."""

    p: int | None = 2

    def __post_init__(self):
        if self.p is not None and not _is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    @classmethod
    def prime(cls, p: int) -> Field:
        return cls(p)

    @classmethod
    def rational(cls) -> Field:
        return cls(None)

    @property
    def is_finite(self) -> bool:
        return self.p is not None

    @property
    def order(self) -> int | None:
        return self.p

    @property
    def kind(self) -> str:
        return "rational" if self.p is None else "prime"

    def __str__(self):
        return "Q" if self.p is None else f"F_{self.p}"

    # construction -----------------------------------------------------
    def array(self, data) -> np.ndarray:
        if self.p is None:
            arr = np.array(data, dtype=object)
            if arr.size:
                flat = [x if isinstance(x, Fraction) else Fraction(x) for x in arr.flat]
                arr = np.array(flat, dtype=object).reshape(arr.shape)
            return arr
        arr = np.array(data, dtype=object) if _has_fraction(data) else np.asarray(data)
        if arr.dtype == object:
            flat = [self._from_fraction(Fraction(x)) for x in arr.flat]
            return np.array(flat, dtype=np.int64).reshape(arr.shape)
        return np.mod(arr.astype(np.int64), self.p)

    def _from_fraction(self, x: Fraction) -> int:
        return (x.numerator * pow(x.denominator, -1, self.p)) % self.p

    def zeros(self, shape) -> np.ndarray:
        if self.p is None:
            out = np.empty(shape, dtype=object)
            out.fill(Fraction(0))
            return out
        return np.zeros(shape, dtype=np.int64)

    def eye(self, n: int) -> np.ndarray:
        out = self.zeros((n, n))
        for i in range(n):
            out[i, i] = self.one
        return out

    @property
    def one(self):
        return Fraction(1) if self.p is None else 1

    @property
    def zero(self):
        return Fraction(0) if self.p is None else 0

    # arithmetic -------------------------------------------------------
    def reduce(self, arr):
        if self.p is None:
            return arr
        return np.mod(arr, self.p)

    def inv(self, x):
        if self.p is None:
            if x == 0:
                raise ZeroDivisionError("inverse of zero")
            return Fraction(1) / x
        x = int(x) % self.p
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(x, self.p - 2, self.p)

    def matmul(self, a, b) -> np.ndarray:
        if self.p is None:
            if a.shape[-1] == 0:
                return self.zeros(a.shape[:-1] + b.shape[-1:])
            return np.matmul(a, b)
        return np.mod(np.matmul(a, b), self.p)

    def mul(self, *mats) -> np.ndarray:
        out = mats[0]
        for m in mats[1:]:
            out = self.matmul(out, m)
        return out

    def neg(self, a):
        return self.reduce(-a)

    def elements(self):
        if self.p is None:
            raise ValueError("cannot enumerate the rationals")
        return range(self.p)

    def random(self, shape, rng: np.random.Generator) -> np.ndarray:
        if self.p is None:
            return self.array(rng.integers(-3, 4, size=shape))
        return rng.integers(0, self.p, size=shape).astype(np.int64)

    def to_int(self, x) -> int | str:
        """Serialisable representative of a scalar."""
        if self.p is None:
            x = Fraction(x)
            return int(x) if x.denominator == 1 else str(x)
        return int(x)

    def is_zero(self, arr) -> bool:
        return not np.any(arr != 0)


def _has_fraction(data) -> bool:
    if isinstance(data, Fraction):
        return True
    if isinstance(data, (list, tuple)):
        return any(_has_fraction(x) for x in data)
    if isinstance(data, np.ndarray) and data.dtype == object:
        return True
    return False


# ---------------------------------------------------------------------------
# core routines


def rref(F: Field, m) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and the strictly increasing pivot columns."""
    R = F.array(m).copy()
    if R.ndim != 2:
        raise ValueError("rref expects a matrix")
    rows, cols = R.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(R[r:, c])[0]
        if len(nz) == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            R[[r, piv]] = R[[piv, r]]
        R[r] = F.reduce(R[r] * F.inv(R[r, c]))
        col = R[:, c].copy()
        col[r] = 0
        nzr = np.nonzero(col)[0]
        if len(nzr):
            R[nzr] = F.reduce(R[nzr] - np.outer(col[nzr], R[r]))
        pivots.append(c)
        r += 1
    return R, pivots


def rank(F: Field, m) -> int:
    m = np.asarray(m)
    if m.size == 0:
        return 0
    return len(rref(F, m)[1])


def kernel_basis(F: Field, m) -> np.ndarray:
    """Basis of the right null space, as the columns of a ``cols x k`` array."""
    m = np.asarray(m)
    rows, cols = m.shape
    if rows == 0:
        return F.eye(cols)
    R, pivots = rref(F, m)
    free = [c for c in range(cols) if c not in set(pivots)]
    K = F.zeros((cols, len(free)))
    for j, f in enumerate(free):
        K[f, j] = F.one
        for i, pc in enumerate(pivots):
            K[pc, j] = F.reduce(-R[i, f])
    return K


def solve(F: Field, m, b) -> np.ndarray:
    """A solution x of m x = b with every free variable set to zero."""
    m = F.array(m)
    b = F.array(b)
    single = b.ndim == 1
    B = b.reshape(-1, 1) if single else b
    X = solve_matrix(F, m, B)
    return X[:, 0] if single else X


def solve_matrix(F: Field, m, B) -> np.ndarray:
    rows, cols = m.shape
    if B.shape[0] != rows:
        raise ValueError("right-hand side has the wrong length")
    k = B.shape[1]
    if rows == 0:
        return F.zeros((cols, k))
    R, pivots = rref(F, np.concatenate([m, B], axis=1))
    if pivots and pivots[-1] >= cols:
        raise NoSolution("right-hand side not in the column space")
    X = F.zeros((cols, k))
    for i, pc in enumerate(pivots):
        X[pc] = R[i, cols:]
    return X


# ---------------------------------------------------------------------------
# derived helpers


def column_space(F: Field, m) -> np.ndarray:
    """Canonical basis (reduced, as columns) of the column space."""
    m = np.asarray(m)
    if m.shape[1] == 0:
        return F.zeros((m.shape[0], 0))
    R, piv = rref(F, m.T)
    return R[: len(piv)].T.copy()


def independent_columns(F: Field, m) -> list[int]:
    """Indices of a greedy maximal independent subset of the columns."""
    m = np.asarray(m)
    if m.size == 0:
        return []
    return rref(F, m)[1]


def left_annihilator(F: Field, m) -> np.ndarray:
    """Rows spanning {y : y m = 0}; the kernel of the result is the image of m."""
    m = np.asarray(m)
    if m.shape[1] == 0:
        return F.eye(m.shape[0])
    return kernel_basis(F, m.T).T.copy()


def left_inverse(F: Field, m) -> np.ndarray:
    """L with L m = I, for m of full column rank."""
    m = np.asarray(m)
    n, k = m.shape
    if k == 0:
        return F.zeros((0, n))
    return solve_matrix(F, m.T, F.eye(k)).T.copy()


def right_inverse(F: Field, m) -> np.ndarray:
    """S with m S = I, for m of full row rank."""
    m = np.asarray(m)
    k, n = m.shape
    if k == 0:
        return F.zeros((n, 0))
    return solve_matrix(F, m, F.eye(k))


def inverse(F: Field, m) -> np.ndarray:
    n = m.shape[0]
    return solve_matrix(F, m, F.eye(n))


def is_invertible(F: Field, m) -> bool:
    m = np.asarray(m)
    return m.shape[0] == m.shape[1] and rank(F, m) == m.shape[0]


def in_span(F: Field, basis, v) -> bool:
    basis = np.asarray(basis)
    if basis.shape[1] == 0:
        return F.is_zero(v)
    return rank(F, np.concatenate([basis, np.asarray(v).reshape(-1, 1)], axis=1)) == rank(F, basis)


def intersect(F: Field, a, b) -> np.ndarray:
    """Basis (columns) of col(a) ∩ col(b)."""
    if a.shape[1] == 0 or b.shape[1] == 0:
        return F.zeros((a.shape[0], 0))
    K = kernel_basis(F, np.concatenate([a, F.neg(b)], axis=1))
    return column_space(F, F.matmul(a, K[: a.shape[1]]))


def block_diag(F: Field, blocks) -> np.ndarray:
    rows = sum(b.shape[0] for b in blocks)
    cols = sum(b.shape[1] for b in blocks)
    out = F.zeros((rows, cols))
    r = c = 0
    for b in blocks:
        out[r : r + b.shape[0], c : c + b.shape[1]] = b
        r += b.shape[0]
        c += b.shape[1]
    return out


def kron(F: Field, a, b) -> np.ndarray:
    if F.p is None:
        out = F.zeros((a.shape[0] * b.shape[0], a.shape[1] * b.shape[1]))
        for i, j in itertools.product(range(a.shape[0]), range(a.shape[1])):
            if a[i, j] != 0:
                out[i * b.shape[0] : (i + 1) * b.shape[0], j * b.shape[1] : (j + 1) * b.shape[1]] = a[i, j] * b
        return out
    return np.mod(np.kron(a, b), F.p)


def is_nilpotent(F: Field, m) -> bool:
    n = m.shape[0]
    if n == 0:
        return True
    power = m
    for _ in range(max(1, n.bit_length())):
        power = F.matmul(power, power)
    return F.is_zero(power)


def matrix_power(F: Field, m, k: int) -> np.ndarray:
    out = F.eye(m.shape[0])
    base = m
    while k:
        if k & 1:
            out = F.matmul(out, base)
        base = F.matmul(base, base)
        k >>= 1
    return out
