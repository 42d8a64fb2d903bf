"""Frobenius module categories over self-injective algebras and their stable categories.

The stable category is never built as a separate object.  Stable Hom spaces,
the suspension ``Σ`` (cosyzygy) and its inverse (syzygy) are computed on
demand from modules, and triangles are represented by short exact sequences
together with the connecting map ``Z -> ΣX``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from . import exact_linalg as la
from .algebra import Algebra, is_self_injective
from .modules import (
    Module,
    ModuleError,
    ShortExactSequence,
    cosyzygy,
    decompose_with_inclusions,
    direct_sum,
    ext1_dim,
    ext_dims,
    hom_basis,
    injective_hull,
    is_projective,
    isomorphism,
    kernel as module_kernel,
    projective_cover,
    syzygy,
    zero_module,
)


class CategoryError(ValueError):
    """A structural assumption on the category fails; ``pair`` names the culprits."""

    def __init__(self, message: str, pair: Optional[tuple] = None):
        super().__init__(message)
        self.pair = pair


# ---------------------------------------------------------------------------
# Stable Hom


class StableHom:
    """``Hom(M, N)`` modulo maps factoring through a projective module.

    A map factors through a projective iff it factors through the projective
    cover ``P(N) -> N``, so the factoring subspace is ``epi ∘ Hom(M, P(N))``.
    """

    def __init__(self, M: Module, N: Module):
        self.M, self.N = M, N
        p = M.p
        self.hom = hom_basis(M, N)
        width = N.dim * M.dim
        cov = projective_cover(N)
        through = [(cov.epi @ h) % p for h in hom_basis(M, cov.P)]
        self.factoring = la.rows_of(np.array([t.reshape(-1) for t in through], dtype=np.int64), width)
        self._quot = la.QuotientSpace(la.rows_of(self.hom, width), self.factoring, p)

    @property
    def dim(self) -> int:
        return self._quot.dim

    def representatives(self) -> np.ndarray:
        return self._quot.reps.reshape(self.dim, self.N.dim, self.M.dim)

    def coords(self, f: np.ndarray) -> np.ndarray:
        return self._quot.coords(np.asarray(f, dtype=np.int64).reshape(-1))

    def factors_through_projective(self, f: np.ndarray) -> bool:
        return not self.coords(f).any()


def stable_hom(M: Module, N: Module) -> np.ndarray:
    """Representatives of a basis of the stable Hom space."""
    return StableHom(M, N).representatives()


def stable_hom_dim(M: Module, N: Module) -> int:
    return StableHom(M, N).dim


# ---------------------------------------------------------------------------
# Suspension


def strip_projectives(M: Module, rng=None) -> tuple[Module, np.ndarray]:
    """Sum of the non-projective indecomposable summands, with its inclusion."""
    pieces = [(X, inc) for X, inc in decompose_with_inclusions(M, rng) if not is_projective(X)]
    if not pieces:
        return zero_module(M.algebra), np.zeros((M.dim, 0), dtype=np.int64)
    if len(pieces) == 1:
        return pieces[0]
    return direct_sum(*[X for X, _ in pieces]), np.hstack([inc for _, inc in pieces])


def suspend(M: Module) -> Module:
    """``ΣM``: cokernel of the minimal injective hull.

    Minimality of the hull already rules out projective summands in the
    cokernel over a self-injective algebra.
    """
    return cosyzygy(M)


def desuspend(M: Module) -> Module:
    """``Σ^{-1}M``: kernel of the minimal projective cover."""
    return syzygy(M)


def suspend_power(M: Module, k: int) -> Module:
    for _ in range(abs(k)):
        M = suspend(M) if k > 0 else desuspend(M)
    return M


def stably_isomorphic(M: Module, N: Module) -> bool:
    a, _ = strip_projectives(M)
    b, _ = strip_projectives(N)
    if a.dim != b.dim:
        return False
    return isomorphism(a, b) is not None


# ---------------------------------------------------------------------------
# Triangles


@dataclass(frozen=True, eq=False)
class StableTriangle:
    """``X --u--> Y --v--> Z --w--> ΣX`` with maps given by representatives."""

    X: Module
    Y: Module
    Z: Module
    u: np.ndarray
    v: np.ndarray
    w: np.ndarray
    sigma_x: Module = field(repr=False, default=None)

    def connecting_is_zero(self) -> bool:
        return StableHom(self.Z, self.sigma_x).factors_through_projective(self.w)


def lift_triangle(ses: ShortExactSequence) -> StableTriangle:
    """The triangle in the stable category induced by a short exact sequence.

    Extend ``X -> I(X)`` along ``f`` to ``h: Y -> I(X)``; the connecting map
    ``w: Z -> ΣX`` is the map induced on cokernels.
    """
    ses.validate()
    X, Y, Z = ses.left, ses.middle, ses.right
    p = X.p
    hull = injective_hull(X)
    H = hom_basis(Y, hull.injective)
    if H.shape[0] == 0:
        h = np.zeros((hull.injective.dim, Y.dim), dtype=np.int64)
    else:
        # solve sum_k c_k H_k f = mono
        system = np.array([((Hk @ ses.f) % p).reshape(-1) for Hk in H]).T
        c = la.solve(system, hull.mono.reshape(-1), p)
        if c is None:
            raise ModuleError("injective hull does not extend along the inflation")
        h = np.einsum("k,kij->ij", c, H) % p
    ph = (hull.projection @ h) % p
    w = la.solve(ses.g.T, ph.T, p)
    if w is None:
        raise ModuleError("connecting map is not well defined")
    return StableTriangle(X, Y, Z, ses.f, ses.g, w.T % p, hull.cokernel)


def realize_triangle(X: Module, Z: Module, w: np.ndarray) -> ShortExactSequence:
    """Short exact sequence ``0 -> X -> Y -> Z -> 0`` whose connecting map is ``w``.

    ``Y`` is the pullback of ``X -> I(X) -> ΣX`` along ``w: Z -> ΣX`` (with
    ``ΣX`` computed by :func:`suspend`).  It agrees with the middle term of
    the stable triangle up to projective summands.
    """
    p = X.p
    hull = injective_hull(X)
    I, S = hull.injective, hull.cokernel
    w = np.asarray(w, dtype=np.int64).reshape(S.dim, Z.dim) % p
    D = direct_sum(I, Z)
    # pullback = kernel of (pi, -w): I ⊕ Z -> ΣX
    glue = np.hstack([hull.projection, (-w) % p]) % p
    Y, inc = module_kernel(D, S, glue)
    f = la.solve(inc, np.vstack([hull.mono, np.zeros((Z.dim, X.dim), dtype=np.int64)]), p)
    g = inc[I.dim:, :] % p
    if f is None:
        raise ModuleError("inflation does not factor through the pullback")
    ses = ShortExactSequence(X, Y.renamed("pullback"), Z, f % p, g)
    ses.validate()
    return ses


# ---------------------------------------------------------------------------
# Higher extensions and the 2-Calabi-Yau property


def higher_ext_check(M: Module, N: Module, i: int) -> bool:
    """``dim Ext^i(M, N) == dim Ext^1(M, Σ^{i-1} N)``."""
    if i < 1:
        raise ValueError("i must be at least 1")
    lhs = ext_dims(M, N, i)[i]
    rhs = ext1_dim(M, suspend_power(N, i - 1))
    return lhs == rhs


# ---------------------------------------------------------------------------
# Categories with a catalog of indecomposables


@dataclass(eq=False)
class FrobeniusCategory:
    """``mod Λ`` for self-injective ``Λ`` with a named catalog of indecomposables."""

    algebra: Algebra
    catalog: tuple
    names: tuple = ()
    seed: int = 0
    check: bool = True

    def __post_init__(self):
        self.catalog = tuple(self.catalog)
        if not self.names:
            self.names = tuple(m.name or f"M{k + 1}" for k, m in enumerate(self.catalog))
        self.names = tuple(self.names)
        if len(set(self.names)) != len(self.names):
            raise CategoryError("catalog names are not distinct")
        self.catalog = tuple(m.renamed(n) for m, n in zip(self.catalog, self.names))
        for m in self.catalog:
            if m.algebra is not self.algebra:
                raise CategoryError(f"catalog module {m.name} is over a different algebra")
        self._ext1: dict = {}
        if self.check:
            self.validate()
        self.projective = tuple(is_projective(m) for m in self.catalog)

    @property
    def p(self) -> int:
        return self.algebra.p

    def rng(self) -> np.random.Generator:
        return np.random.default_rng(self.seed)

    def __getitem__(self, name: str) -> Module:
        return self.catalog[self.names.index(name)]

    def index_of(self, name: str) -> int:
        return self.names.index(name)

    def validate(self):
        if not is_self_injective(self.algebra):
            raise CategoryError("algebra is not self-injective")
        from .modules import is_local

        for k, m in enumerate(self.catalog):
            if m.dim == 0 or not is_local(m):
                raise CategoryError(f"catalog entry {self.names[k]} is not indecomposable", (self.names[k],))
        for a in range(len(self.catalog)):
            for b in range(a + 1, len(self.catalog)):
                if isomorphism(self.catalog[a], self.catalog[b]) is not None:
                    raise CategoryError(
                        f"catalog entries {self.names[a]} and {self.names[b]} are isomorphic",
                        (self.names[a], self.names[b]),
                    )
        bad = self.two_cy_violations()
        if bad:
            a, b = bad[0]
            raise CategoryError(
                f"Ext^1 is not symmetric on ({a}, {b}): "
                f"{self.ext1_dim(self.index_of(a), self.index_of(b))} vs "
                f"{self.ext1_dim(self.index_of(b), self.index_of(a))}",
                (a, b),
            )

    def ext1_dim(self, a: int, b: int) -> int:
        key = (a, b)
        if key not in self._ext1:
            self._ext1[key] = ext1_dim(self.catalog[a], self.catalog[b])
        return self._ext1[key]

    def two_cy_violations(self) -> list[tuple[str, str]]:
        out = []
        n = len(self.catalog)
        for a in range(n):
            for b in range(a, n):
                if self.ext1_dim(a, b) != self.ext1_dim(b, a):
                    out.append((self.names[a], self.names[b]))
        return out

    def identify(self, M: Module) -> Optional[int]:
        """Catalog index of an indecomposable ``M``, or None."""
        for k, X in enumerate(self.catalog):
            if X.dim_vector == M.dim_vector and isomorphism(M, X) is not None:
                return k
        return None

    def multiplicities(self, M: Module) -> list[int]:
        """Multiplicity of each catalog entry as a summand of ``M``."""
        counts = [0] * len(self.catalog)
        for piece in (X for X, _ in decompose_with_inclusions(M, self.rng())):
            k = self.identify(piece)
            if k is None:
                raise CategoryError(f"summand {piece!r} of {M!r} is not in the catalog")
            counts[k] += 1
        return counts

    def nonprojective_indices(self) -> list[int]:
        return [k for k, proj in enumerate(self.projective) if not proj]
