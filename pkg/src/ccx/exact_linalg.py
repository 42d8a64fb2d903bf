"""Exact linear algebra over prime fields.

Everything here works on ``numpy`` int64 arrays whose entries are residues
modulo a prime ``p``.  Products are reduced after every multiplication, so the
only requirement is that ``n * p**2`` stays below 2**63 for the matrix sizes in
use; :func:`check_prime` rejects moduli above ``MAX_PRIME`` for that reason.

The module also exposes two small value types, :class:`Fp` and
:class:`ExactMatrix`, for callers that want the modulus carried along with the
data.  Internal code mostly passes ``(array, p)`` pairs around.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional, Sequence

import numpy as np

MAX_PRIME = 1 << 20


class ModulusMismatch(ValueError):
    """Raised when operands live over different prime fields."""


@lru_cache(maxsize=None)
def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def check_prime(p: int) -> int:
    p = int(p)
    if not is_prime(p):
        raise ValueError(f"modulus {p} is not prime")
    if p > MAX_PRIME:
        raise ValueError(f"modulus {p} exceeds supported bound {MAX_PRIME}")
    return p


def next_primes(start: int, count: int) -> list[int]:
    """The first ``count`` primes strictly greater than ``start``."""
    out = []
    n = start + 1
    while len(out) < count:
        if is_prime(n):
            out.append(n)
        n += 1
    return out


def as_array(a, p: int) -> np.ndarray:
    return np.asarray(a, dtype=np.int64) % p


def rows_of(x, width: int) -> np.ndarray:
    """``x`` as a 2-d array of rows of the given width (also for width 0)."""
    x = np.asarray(x, dtype=np.int64)
    if width == 0:
        n = x.shape[0] if x.ndim == 2 else 0
        return np.zeros((n, 0), dtype=np.int64)
    return x.reshape(-1, width)


def inv_mod(a: int, p: int) -> int:
    a = int(a) % p
    if a == 0:
        raise ZeroDivisionError(f"0 has no inverse modulo {p}")
    return pow(a, -1, p)


def matmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    return (a @ b) % p


# ---------------------------------------------------------------------------
# Gaussian elimination


def rref(a, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row-echelon form of ``a`` over F_p.

    Returns the nonzero rows of the echelon form and the pivot columns.
    """
    m = np.array(a, dtype=np.int64) % p
    if m.ndim != 2:
        raise ValueError("rref expects a 2-d array")
    rows, cols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(m[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            m[[r, k]] = m[[k, r]]
        m[r] = (m[r] * inv_mod(m[r, c], p)) % p
        col = m[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            m[hit] = (m[hit] - np.outer(col[hit], m[r])) % p
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rank(a, p: int) -> int:
    a = np.asarray(a)
    if a.size == 0:
        return 0
    return len(rref(a, p)[1])


def kernel(a, p: int) -> np.ndarray:
    """Basis of the right kernel ``{x : a x = 0}``, returned as rows."""
    a = np.asarray(a, dtype=np.int64)
    cols = a.shape[1]
    if a.shape[0] == 0:
        return np.eye(cols, dtype=np.int64)
    r, pivots = rref(a, p)
    free = [c for c in range(cols) if c not in set(pivots)]
    out = np.zeros((len(free), cols), dtype=np.int64)
    for i, f in enumerate(free):
        out[i, f] = 1
        for k, pc in enumerate(pivots):
            out[i, pc] = (-r[k, f]) % p
    return out


def solve(a, b, p: int) -> Optional[np.ndarray]:
    """Some solution ``x`` of ``a x = b`` or ``None`` when inconsistent.

    ``b`` may be a vector or a matrix of right-hand sides (one per column).
    """
    a = np.asarray(a, dtype=np.int64) % p
    b = np.asarray(b, dtype=np.int64) % p
    vec = b.ndim == 1
    if vec:
        b = b[:, None]
    rows, cols = a.shape
    if b.shape[0] != rows:
        raise ValueError(f"incompatible shapes {a.shape} and {b.shape}")
    if rows == 0:
        x = np.zeros((cols, b.shape[1]), dtype=np.int64)
        return x[:, 0] if vec else x
    r, pivots = rref(np.hstack([a, b]), p)
    if pivots and pivots[-1] >= cols:
        return None
    x = np.zeros((cols, b.shape[1]), dtype=np.int64)
    for k, pc in enumerate(pivots):
        x[pc] = r[k, cols:]
    return x[:, 0] if vec else x


def inverse(a, p: int) -> np.ndarray:
    a = np.asarray(a, dtype=np.int64) % p
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("inverse of a non-square matrix")
    r, pivots = rref(np.hstack([a, np.eye(n, dtype=np.int64)]), p)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return r[:n, n:]


def row_basis(vectors, p: int, width: Optional[int] = None) -> np.ndarray:
    """Echelon basis of the row span of ``vectors``."""
    v = np.asarray(vectors, dtype=np.int64)
    if v.size == 0:
        return np.zeros((0, width if width is not None else (v.shape[1] if v.ndim == 2 else 0)), dtype=np.int64)
    return rref(v, p)[0]


def complement_indices(sub, ambient, p: int) -> list[int]:
    """Indices of ambient rows that extend ``sub`` to a basis of their joint span."""
    sub = np.asarray(sub, dtype=np.int64)
    ambient = np.asarray(ambient, dtype=np.int64)
    current = sub.copy() if sub.size else np.zeros((0, ambient.shape[1]), dtype=np.int64)
    base = rank(current, p) if current.size else 0
    chosen = []
    for i, row in enumerate(ambient):
        trial = np.vstack([current, row[None, :]])
        rk = rank(trial, p)
        if rk > base:
            chosen.append(i)
            current = rref(trial, p)[0]
            base = rk
    return chosen


def nilpotent(a: np.ndarray, p: int) -> bool:
    n = a.shape[0]
    power = a % p
    for _ in range(max(n, 1)):
        if not power.any():
            return True
        power = matmul(power, a, p)
    return not power.any()


def matrix_power(a: np.ndarray, k: int, p: int) -> np.ndarray:
    out = np.eye(a.shape[0], dtype=np.int64)
    base = a % p
    while k:
        if k & 1:
            out = matmul(out, base, p)
        base = matmul(base, base, p)
        k >>= 1
    return out


def single_eigenvalue(a: np.ndarray, p: int) -> Optional[int]:
    """The eigenvalue ``c`` with ``a - c`` nilpotent, or ``None`` if there is none."""
    n = a.shape[0]
    if n == 0:
        return 0
    candidates: Iterable[int]
    if n % p:
        candidates = [int(np.trace(a)) * inv_mod(n, p) % p]
    else:
        candidates = range(p)
    eye = np.eye(n, dtype=np.int64)
    for c in candidates:
        if nilpotent((a - c * eye) % p, p):
            return int(c)
    return None


def eigenvalues(a: np.ndarray, p: int) -> list[int]:
    """All eigenvalues of ``a`` lying in F_p (brute force over the field)."""
    n = a.shape[0]
    eye = np.eye(n, dtype=np.int64)
    return [c for c in range(p) if rank((a - c * eye) % p, p) < n]


class Subspace:
    """Row span of a set of vectors with a coordinate map.

    ``basis`` rows are linearly independent.  ``coords(v)`` returns the
    coefficients of ``v`` in that basis; ``contains`` tests membership.
    """

    def __init__(self, basis, p: int, width: Optional[int] = None):
        basis = np.asarray(basis, dtype=np.int64) % p
        if basis.size == 0:
            basis = np.zeros((0, width if width is not None else basis.shape[-1]), dtype=np.int64)
        elif basis.ndim == 1:
            basis = basis[None, :]
        self.p = p
        self.basis = basis
        self.width = basis.shape[1]
        if basis.shape[0]:
            _, piv = rref(basis, p)
            if len(piv) != basis.shape[0]:
                raise ValueError("Subspace basis is not linearly independent")
            self.pivots = piv
            self._inv = inverse(basis[:, piv], p)
        else:
            self.pivots = []
            self._inv = np.zeros((0, 0), dtype=np.int64)

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def coords(self, v) -> np.ndarray:
        v = np.asarray(v, dtype=np.int64) % self.p
        if self.dim == 0:
            return np.zeros(v.shape[:-1] + (0,), dtype=np.int64)
        return (v[..., self.pivots] @ self._inv) % self.p

    def contains(self, v) -> bool:
        v = np.asarray(v, dtype=np.int64) % self.p
        if self.dim == 0:
            return not v.any()
        back = (self.coords(v) @ self.basis) % self.p
        return bool(np.array_equal(back, v))


class QuotientSpace:
    """Quotient ``ambient / sub`` with representatives chosen from ``ambient``.

    ``reps`` are rows of ``ambient`` that complement ``sub``;
    ``coords(v)`` gives the coordinates of the class of ``v`` in the basis of
    representatives.
    """

    def __init__(self, ambient, sub, p: int):
        ambient = np.asarray(ambient, dtype=np.int64) % p
        width = ambient.shape[1]
        sub = rows_of(sub, width) % p
        sub = row_basis(sub, p, width) if sub.size else np.zeros((0, width), dtype=np.int64)
        self.p = p
        self.sub = sub
        self.rep_indices = complement_indices(sub, ambient, p)
        self.reps = ambient[self.rep_indices]
        self._joint = Subspace(np.vstack([self.reps, sub]), p, width)

    @property
    def dim(self) -> int:
        return self.reps.shape[0]

    def coords(self, v) -> np.ndarray:
        c = self._joint.coords(v)
        return c[..., : self.dim]


# ---------------------------------------------------------------------------
# Value types


@dataclass(frozen=True)
class Fp:
    """A residue modulo a prime."""

    value: int
    p: int

    def __post_init__(self):
        check_prime(self.p)
        object.__setattr__(self, "value", int(self.value) % self.p)

    def _other(self, other) -> int:
        if isinstance(other, Fp):
            if other.p != self.p:
                raise ModulusMismatch(f"F_{self.p} vs F_{other.p}")
            return other.value
        return int(other) % self.p

    def __add__(self, other):
        return Fp(self.value + self._other(other), self.p)

    __radd__ = __add__

    def __sub__(self, other):
        return Fp(self.value - self._other(other), self.p)

    def __rsub__(self, other):
        return Fp(self._other(other) - self.value, self.p)

    def __mul__(self, other):
        return Fp(self.value * self._other(other), self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return Fp(-self.value, self.p)

    def inverse(self) -> "Fp":
        return Fp(inv_mod(self.value, self.p), self.p)

    def __truediv__(self, other):
        return self * Fp(self._other(other), self.p).inverse()

    def __int__(self):
        return self.value


@dataclass(frozen=True, eq=False)
class ExactMatrix:
    """Dense matrix over F_p."""

    data: np.ndarray
    p: int

    def __post_init__(self):
        check_prime(self.p)
        arr = np.array(self.data, dtype=np.int64)
        if arr.ndim != 2:
            arr = arr.reshape(arr.shape[0] if arr.ndim else 0, -1)
        arr %= self.p
        arr.setflags(write=False)
        object.__setattr__(self, "data", arr)

    @classmethod
    def identity(cls, n: int, p: int) -> "ExactMatrix":
        return cls(np.eye(n, dtype=np.int64), p)

    @classmethod
    def zeros(cls, rows: int, cols: int, p: int) -> "ExactMatrix":
        return cls(np.zeros((rows, cols), dtype=np.int64), p)

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape

    def _check(self, other: "ExactMatrix"):
        if self.p != other.p:
            raise ModulusMismatch(f"F_{self.p} vs F_{other.p}")

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check(other)
        return ExactMatrix(self.data @ other.data, self.p)

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check(other)
        return ExactMatrix(self.data + other.data, self.p)

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check(other)
        return ExactMatrix(self.data - other.data, self.p)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ExactMatrix)
            and self.p == other.p
            and self.shape == other.shape
            and bool(np.array_equal(self.data, other.data))
        )

    def __hash__(self):
        return hash((self.p, self.shape, self.data.tobytes()))

    def rank(self) -> int:
        return rank(self.data, self.p)

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(self.data.T, self.p)

    def __repr__(self):
        return f"ExactMatrix(p={self.p}, {self.data.tolist()})"


def _column(b, p: int) -> np.ndarray:
    if isinstance(b, ExactMatrix):
        return b.data.reshape(-1)
    if isinstance(b, Sequence) and b and isinstance(b[0], Fp):
        for x in b:
            if x.p != p:
                raise ModulusMismatch(f"F_{p} vs F_{x.p}")
        return np.array([x.value for x in b], dtype=np.int64)
    return np.asarray(b, dtype=np.int64).reshape(-1) % p


def solve_linear(a: ExactMatrix, b) -> Optional[np.ndarray]:
    """A solution column of ``a x = b`` or ``None`` when the system is inconsistent."""
    if isinstance(b, ExactMatrix) and b.p != a.p:
        raise ModulusMismatch(f"F_{a.p} vs F_{b.p}")
    col = _column(b, a.p)
    if col.shape[0] != a.rows:
        raise ValueError(f"right-hand side has length {col.shape[0]}, expected {a.rows}")
    return solve(a.data, col, a.p)


def kernel_basis(a: ExactMatrix) -> list[np.ndarray]:
    """Basis of ``{x : a x = 0}`` as a list of columns."""
    return list(kernel(a.data, a.p))
