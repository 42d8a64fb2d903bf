"""Submodule Grassmannians over small prime fields and their Euler characteristics.

Submodules are enumerated one dimension at a time: every submodule ``V``
strictly containing ``U`` contains ``U + k v`` for some ``v`` in the socle of
``N / U``, so a breadth-first search over socle points reaches each
submodule, and reduced row-echelon keys remove duplicates.

``χ(Gr_e(N))`` is read off from point counts: the number of ``F_q``-points
is fitted by an integer polynomial in ``q`` and evaluated at ``q = 1``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Sequence, Union

import numpy as np
import sympy

from . import exact_linalg as la
from .algebra import Algebra
from .modules import Module

DEFAULT_PRIMES = (2, 3, 5, 7, 11)
DEFAULT_CAP = 8


class GrassmannError(ValueError):
    pass


class CapExceeded(GrassmannError):
    pass


class InterpolationError(GrassmannError):
    """Point counts are not reproduced by a polynomial of the allowed degree."""


# ---------------------------------------------------------------------------
# Changing the prime


def _lift(a: np.ndarray, p: int) -> np.ndarray:
    a = np.asarray(a, dtype=np.int64) % p
    return np.where(a > p // 2, a - p, a)


def reduce_algebra(A: Algebra, q: int) -> Algebra:
    """Reinterpret integer structure constants (symmetric lifts) modulo ``q``."""
    if A.p == q:
        return A
    return Algebra(q, A.labels, _lift(A.mult, A.p) % q, A.vertices, A.idempotents, A.blocks,
                   A.generators, A.name, A.quiver, A.words)


def reduce_module(M: Module, q: int, algebra: Optional[Algebra] = None) -> Module:
    """The same integer action matrices read modulo ``q``; validated on construction."""
    if M.p == q and algebra is None:
        return M
    B = algebra if algebra is not None else reduce_algebra(M.algebra, q)
    return Module(B, M.vertex, _lift(M.action, M.p) % q, M.name)


# ---------------------------------------------------------------------------
# Enumeration


@dataclass(frozen=True)
class Submodule:
    basis: np.ndarray  # rows in reduced row-echelon form
    cls: tuple

    @property
    def dim(self) -> int:
        return self.basis.shape[0]


def _key(basis: np.ndarray) -> bytes:
    return basis.astype(np.int64).tobytes() + bytes([basis.shape[0]])


def _class(N: Module, pivots: Sequence[int]) -> tuple:
    counts = [0] * N.algebra.nvertices
    for c in pivots:
        counts[N.vertex[c]] += 1
    return tuple(counts)


def _points(k: int, q: int):
    """Normalized representatives of the points of ``P^{k-1}(F_q)``."""
    for lead in range(k):
        for tail in itertools.product(range(q), repeat=k - lead - 1):
            v = np.zeros(k, dtype=np.int64)
            v[lead] = 1
            v[lead + 1:] = tail
            yield v


def _socle_extensions(N: Module, U: np.ndarray, radical: list[int]):
    """Vectors ``v`` of ``N`` whose class spans a simple submodule of ``N / U``."""
    q, d = N.p, N.dim
    eye = np.eye(d, dtype=np.int64)
    qs = la.QuotientSpace(eye, U, q)
    reps = qs.rep_indices
    if not reps:
        return
    proj = qs.coords(eye).T % q  # (k, d)
    for j in range(N.algebra.nvertices):
        cols = [r for r in reps if N.vertex[r] == j]
        if not cols:
            continue
        if radical:
            stacked = np.vstack([(proj @ N.action[a][:, cols]) % q for a in radical])
            ker = la.kernel(stacked, q)
        else:
            ker = np.eye(len(cols), dtype=np.int64)
        if ker.shape[0] == 0:
            continue
        for c in _points(ker.shape[0], q):
            coeffs = (c @ ker) % q
            v = np.zeros(d, dtype=np.int64)
            v[cols] = coeffs
            yield v


def enumerate_submodules(N: Module, q: Optional[int] = None, cap: int = DEFAULT_CAP) -> dict[tuple, list[Submodule]]:
    """All submodules of ``N`` over ``F_q``, grouped by dimension vector.

    ``N`` is read modulo ``q`` when ``q`` differs from its own prime.
    Groups and their members are sorted, so the output is deterministic.
    """
    if q is not None and q != N.p:
        N = reduce_module(N, la.check_prime(q))
    if N.dim > cap:
        raise CapExceeded(f"ambient dimension {N.dim} exceeds the enumeration cap {cap}")
    p, d = N.p, N.dim
    radical = list(N.algebra.radical_indices)
    zero = np.zeros((0, d), dtype=np.int64)
    found = {_key(zero): Submodule(zero, (0,) * N.algebra.nvertices)}
    layer = [zero]
    while layer:
        nxt = []
        for U in layer:
            for v in _socle_extensions(N, U, radical):
                basis, pivots = la.rref(np.vstack([U, v[None, :]]), p)
                k = _key(basis)
                if k not in found:
                    found[k] = Submodule(basis, _class(N, pivots))
                    nxt.append(basis)
        layer = nxt
    groups: dict[tuple, list[Submodule]] = {}
    for k in sorted(found, key=lambda k: (found[k].dim, found[k].cls, k)):
        s = found[k]
        groups.setdefault(s.cls, []).append(s)
    return dict(sorted(groups.items()))


def point_counts(N: Module, q: Optional[int] = None, cap: int = DEFAULT_CAP) -> dict[tuple, int]:
    return {e: len(subs) for e, subs in enumerate_submodules(N, q, cap).items()}


# ---------------------------------------------------------------------------
# Interpolation


@dataclass(frozen=True)
class CountingPolynomial:
    """Integer polynomial in ``q`` (coefficients from degree 0 upwards)."""

    coeffs: tuple
    primes: tuple

    def __call__(self, q: int) -> int:
        return sum(c * q ** k for k, c in enumerate(self.coeffs))

    @property
    def degree(self) -> int:
        nz = [k for k, c in enumerate(self.coeffs) if c]
        return nz[-1] if nz else -1

    def __str__(self) -> str:
        terms = []
        for k, c in reversed(list(enumerate(self.coeffs))):
            if c:
                terms.append(f"{c}" if k == 0 else f"{c}*q" + (f"^{k}" if k > 1 else ""))
        return " + ".join(terms) if terms else "0"


def fit_counting_polynomial(points: dict[int, int], degree_bound: int) -> CountingPolynomial:
    """Interpolate on the first ``degree_bound + 1`` primes and check the rest."""
    primes = sorted(points)
    need = degree_bound + 1
    if len(primes) < need:
        raise InterpolationError(f"{len(primes)} primes cannot fix a polynomial of degree {degree_bound}")
    x = sympy.Symbol("q")
    poly = sympy.Poly(sympy.interpolate([(q, points[q]) for q in primes[:need]], x), x)
    coeffs = [poly.coeff_monomial(x ** k) for k in range(degree_bound + 1)]
    if any(not c.is_integer for c in coeffs):
        raise InterpolationError(f"counts {points} fit only with non-integer coefficients {coeffs}")
    fitted = CountingPolynomial(tuple(int(c) for c in coeffs), tuple(primes))
    bad = {q: (points[q], fitted(q)) for q in primes if fitted(q) != points[q]}
    if bad:
        raise InterpolationError(f"counts not polynomial of degree <= {degree_bound}: (observed, fitted) {bad}")
    return fitted


def degree_bound(dims: Sequence[int], cls: Sequence[int]) -> int:
    """Dimension of the product of ordinary Grassmannians containing ``Gr_e``, capped by ``d^2``."""
    total = sum(dims)
    return min(total * total, sum(e * (d - e) for d, e in zip(dims, cls)))


def primes_for(bound: int, primes: Sequence[int] = DEFAULT_PRIMES) -> list[int]:
    """The configured primes, extended so at least one point checks the fit."""
    out = [la.check_prime(q) for q in primes]
    while len(out) < bound + 2:
        out.append(int(sympy.nextprime(max(out) if out else 1)))
    return out


Ambient = Union[Module, Callable[[int], Module]]


def _builder(ambient: Ambient) -> Callable[[int], Module]:
    if isinstance(ambient, Module):
        return lambda q: reduce_module(ambient, q)
    return ambient


@dataclass
class GrassmannQuery:
    """``Gr_e(N)``: ``ambient`` is a module or a callable building it over ``F_q``."""

    ambient: Ambient
    cls: tuple

    def __post_init__(self):
        self.cls = tuple(int(c) for c in self.cls)


@dataclass
class EulerTable:
    """Euler characteristics of all nonempty ``Gr_e(N)`` with their counting polynomials."""

    dims: tuple
    chi: dict
    polynomials: dict
    counts: dict = field(repr=False, default_factory=dict)

    def total_polynomial(self) -> CountingPolynomial:
        width = max(len(p.coeffs) for p in self.polynomials.values())
        coeffs = [sum(p.coeffs[k] for p in self.polynomials.values() if k < len(p.coeffs)) for k in range(width)]
        primes = next(iter(self.polynomials.values())).primes
        return CountingPolynomial(tuple(coeffs), primes)


def euler_table(ambient: Ambient, primes: Sequence[int] = DEFAULT_PRIMES, cap: int = DEFAULT_CAP) -> EulerTable:
    """χ of every quiver Grassmannian of the ambient module, via point counts."""
    build = _builder(ambient)
    base = build(int(primes[0]) if primes else 2)
    dims = base.dim_vector
    bound = max((degree_bound(dims, e) for e in itertools.product(*[range(d + 1) for d in dims])), default=0)
    used = primes_for(bound, primes)
    counts: dict[int, dict] = {}
    for q in used:
        N = build(q)
        if N.p != q:
            N = reduce_module(N, q)
        if N.dim_vector != dims:
            raise InterpolationError(f"ambient has dimension vector {N.dim_vector} at q={q}, {dims} elsewhere")
        counts[q] = point_counts(N, cap=cap)
    classes = sorted(set().union(*[c.keys() for c in counts.values()]))
    chi, polys = {}, {}
    for e in classes:
        pts = {q: counts[q].get(e, 0) for q in used}
        poly = fit_counting_polynomial(pts, degree_bound(dims, e))
        polys[e] = poly
        chi[e] = poly(1)
    return EulerTable(tuple(dims), chi, polys, counts)


def euler_char(query: GrassmannQuery, primes: Sequence[int] = DEFAULT_PRIMES, cap: int = DEFAULT_CAP) -> int:
    """``χ(Gr_e(N))`` as the value at ``q = 1`` of the fitted counting polynomial."""
    build = _builder(query.ambient)
    dims = build(int(primes[0]) if primes else 2).dim_vector
    if len(query.cls) != len(dims) or any(not 0 <= e <= d for e, d in zip(query.cls, dims)):
        raise GrassmannError(f"class {query.cls} is not between 0 and {dims}")
    bound = degree_bound(dims, query.cls)
    used = primes_for(bound, primes)
    pts = {}
    for q in used:
        N = build(q)
        pts[q] = len(enumerate_submodules(N, q, cap).get(query.cls, []))
    return fit_counting_polynomial(pts, bound)(1)
