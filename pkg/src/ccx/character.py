"""Cluster characters on a fixture and the statements comparing them.

Three characters are computed independently:

* ``cluster_character``: index prefix, Grassmannians of ``H(ΣM)``, exponents from Φ;
* ``fu_keller_character``: prefix ``<F M, S_i>`` over ``B``, Grassmannians of
  ``Ext^1(T, M)``, exponents from the truncated Euler form over ``B``;
* ``palu_character``: on the stable category with respect to ``T_1 .. T_r``.

Characters are evaluated on catalog indecomposables (at several primes for
the Euler characteristics) and extended multiplicatively to direct sums.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .fixtures import Fixture
from .frobenius import desuspend, strip_projectives, suspend
from .grassmann import DEFAULT_CAP, DEFAULT_PRIMES, EulerTable, euler_table, point_counts
from .laurent import LaurentPoly, laurent_specialize
from .modules import (
    Module,
    direct_sum,
    euler_form_3,
    euler_form_a,
    ext1,
    ext1_dim,
    extension_middle,
    hom_dim,
    is_isomorphic,
    simple,
    zero_module,
)


class PreconditionError(ValueError):
    pass


@dataclass(frozen=True)
class MultiplicationVerdict:
    N: str
    M: str
    ok: bool
    product: LaurentPoly
    L: str
    L_prime: str
    total: LaurentPoly


@dataclass(frozen=True)
class ConditionRow:
    cls: tuple
    vertex: int  # 0-based index of a projective summand
    phi_value: int
    form_value: int

    @property
    def ok(self) -> bool:
        return self.phi_value == self.form_value


@dataclass(frozen=True)
class ConditionVerdict:
    M: str
    rows: tuple
    holds: bool
    characters_equal: bool

    @property
    def consistent(self) -> bool:
        """Condition and equality of the two characters agree for this object."""
        return self.holds == self.characters_equal


@dataclass(frozen=True)
class SpecializationVerdict:
    M: str
    x_value: LaurentPoly
    fu_value: LaurentPoly
    palu_value: LaurentPoly
    ok: bool


def monomial(exps: Sequence[int]) -> LaurentPoly:
    return LaurentPoly.monomial([int(e) for e in exps])


class CharacterEngine:
    """Characters of modules in a fixture's category."""

    def __init__(self, fixture: Fixture, primes: Sequence[int] = DEFAULT_PRIMES, cap: int = DEFAULT_CAP):
        self.fx = fixture
        self.cat = fixture.category
        self.td = fixture.tilting
        self.primes = tuple(primes)
        self.cap = cap
        self.n, self.r = self.td.n, self.td.r
        self._tables: dict = {}
        self._cache: dict = {}
        self._form3: dict = {}
        self._form_a = None

    # -- Grassmannian tables, rebuilt at each counting prime ------------------------
    def _c_module(self, kind: str, k: int, q: int) -> Module:
        fx = self.fx.at_prime(q)
        M = fx.category.catalog[k]
        td = fx.tilting
        if kind == "sigma":
            return td.H_module(suspend(M))
        if kind == "ext":
            return td.ext_module(M)
        return td.H_module(M)

    def table(self, kind: str, k: int) -> EulerTable:
        """Euler characteristics of the Grassmannians of a C-module attached to catalog entry ``k``.

        ``kind`` is ``"sigma"`` for ``H(ΣM)``, ``"ext"`` for ``Ext^1(T, M)``
        and ``"stable"`` for ``H(M)``.
        """
        key = (kind, k)
        if key not in self._tables:
            self._tables[key] = euler_table(lambda q: self._c_module(kind, k, q), self.primes, self.cap)
        return self._tables[key]

    # -- decomposition into catalog entries -------------------------------------------
    def _multiplicative(self, M: Module, single, nvars: int) -> LaurentPoly:
        out = LaurentPoly.one(nvars)
        if M.dim == 0:
            return out
        for k, m in enumerate(self.cat.multiplicities(M)):
            if m:
                out = out * single(k) ** m
        return out

    def _memo(self, tag: str, k: int, fn):
        key = (tag, k)
        if key not in self._cache:
            self._cache[key] = fn(k)
        return self._cache[key]

    # -- the character built from Φ --------------------------------------------------
    def cluster_character(self, M: Module) -> LaurentPoly:
        return self._multiplicative(M, lambda k: self._memo("x", k, self._x_single), self.n)

    def _x_single(self, k: int) -> LaurentPoly:
        M = self.cat.catalog[k]
        prefix = monomial(self.td.index(M).coords)
        phi = self.td.phi_matrix
        total = LaurentPoly.zero(self.n)
        for e, chi in self.table("sigma", k).chi.items():
            if chi:
                total = total + chi * monomial(-(phi @ np.array(e, dtype=np.int64)))
        return prefix * total

    def cluster_character_of_sum(self, indices: Sequence[int]) -> LaurentPoly:
        """Character of a direct sum of catalog entries computed on the sum itself.

        Unlike :meth:`cluster_character` nothing is decomposed, so comparing
        the two tests multiplicativity on direct sums.
        """
        indices = list(indices)

        def build(q):
            cat = self.fx.at_prime(q).category
            return self.fx.at_prime(q).tilting.H_module(suspend(direct_sum(*[cat.catalog[k] for k in indices])))

        M = direct_sum(*[self.cat.catalog[k] for k in indices])
        prefix = monomial(self.td.index(M).coords)
        phi = self.td.phi_matrix
        total = LaurentPoly.zero(self.n)
        for e, chi in euler_table(build, self.primes, self.cap).chi.items():
            if chi:
                total = total + chi * monomial(-(phi @ np.array(e, dtype=np.int64)))
        return prefix * total

    # -- the character built from the truncated Euler form -----------------------------
    def fu_keller_prefix(self, M: Module) -> tuple:
        """``<F M, S_i>`` over ``B``; ``F M`` has projective dimension at most one."""
        FM = self.td.F_module(M)
        return tuple(hom_dim(FM, self.td.simple_B(i)) - ext1_dim(FM, self.td.simple_B(i)) for i in range(self.n))

    def form3(self, e: tuple) -> tuple:
        """``<e, S_i>_3`` over ``B`` for the semisimple C-module of class ``e``."""
        e = tuple(int(x) for x in e)
        if e not in self._form3:
            parts = [self.td.simple_C(j) for j, m in enumerate(e) for _ in range(m)]
            rep = direct_sum(*parts) if parts else zero_module(self.td.C)
            Mb = self.td.restrict_to_B(rep)
            self._form3[e] = tuple(euler_form_3(Mb, self.td.simple_B(i)) if Mb.dim else 0 for i in range(self.n))
        return self._form3[e]

    def fu_keller_character(self, M: Module) -> LaurentPoly:
        return self._multiplicative(M, lambda k: self._memo("fk", k, self._fk_single), self.n)

    def _fk_single(self, k: int) -> LaurentPoly:
        M = self.cat.catalog[k]
        prefix = monomial(self.fu_keller_prefix(M))
        total = LaurentPoly.zero(self.n)
        for e, chi in self.table("ext", k).chi.items():
            if chi:
                total = total + chi * monomial([-v for v in self.form3(e)])
        return prefix * total

    # -- the character on the stable category ------------------------------------------
    def form_a(self) -> np.ndarray:
        """Antisymmetrized Euler form on the simple C-modules."""
        if self._form_a is None:
            S = [self.td.simple_C(i) for i in range(self.r)]
            self._form_a = np.array([[euler_form_a(a, b) for b in S] for a in S], dtype=np.int64).reshape(self.r, self.r)
        return self._form_a

    def palu_character(self, M: Module) -> LaurentPoly:
        if self.r == 0:
            raise PreconditionError("no non-projective summands in T")
        Ms, _ = strip_projectives(M, self.cat.rng())
        return self._multiplicative(Ms, lambda k: self._memo("palu", k, self._palu_single), self.r)

    def _palu_single(self, k: int) -> LaurentPoly:
        M = self.cat.catalog[k]
        if self.cat.projective[k]:
            return LaurentPoly.one(self.r)
        for i in range(self.r):
            if is_isomorphic(M, suspend(self.td.T[i])):
                return LaurentPoly.variable(i + 1, self.r)
        # -coind(M) = ind(Σ^{-1} M)
        prefix = monomial(self.td.stable_index(desuspend(M)).coords)
        form = self.form_a()
        total = LaurentPoly.zero(self.r)
        for e, chi in self.table("stable", k).chi.items():
            if chi:
                total = total + chi * monomial(form @ np.array(e, dtype=np.int64))
        return prefix * total

    # -- comparisons ------------------------------------------------------------------
    def check_multiplication(self, N: Module, M: Module) -> MultiplicationVerdict:
        """``X_N X_M = X_L + X_L'`` for the two non-split extensions of ``N`` and ``M``."""
        e_nm, e_mn = ext1(N, M), ext1(M, N)
        if e_nm.dim != 1 or e_mn.dim != 1:
            raise PreconditionError(
                f"need dim Ext^1 = 1 both ways, got {e_nm.dim} and {e_mn.dim} for ({N.name}, {M.name})"
            )
        L = extension_middle(e_nm.classes()[0]).middle
        Lp = extension_middle(e_mn.classes()[0]).middle
        lhs = self.cluster_character(N) * self.cluster_character(M)
        rhs = self.cluster_character(L) + self.cluster_character(Lp)
        return MultiplicationVerdict(N.name, M.name, lhs == rhs, lhs, self.describe(L), self.describe(Lp), rhs)

    def multiplication_pairs(self) -> list[tuple[int, int]]:
        """Unordered catalog pairs with one-dimensional extension spaces."""
        out = []
        m = len(self.cat.catalog)
        for a in range(m):
            for b in range(a, m):
                if self.cat.ext1_dim(a, b) == 1 and self.cat.ext1_dim(b, a) == 1:
                    out.append((a, b))
        return out

    def check_condition_tt(self, M: Module) -> ConditionVerdict:
        k = self._catalog_index(M)
        if k in self.td.indices:
            raise PreconditionError(f"{M.name} lies in add T")
        phi = self.td.phi_matrix
        rows = []
        for e in self.table("ext", k).chi:
            lhs = phi @ np.array(e, dtype=np.int64)
            rhs = self.form3(e)
            for i in range(self.r, self.n):
                rows.append(ConditionRow(tuple(e), i, int(lhs[i]), int(rhs[i])))
        holds = all(row.ok for row in rows)
        equal = self.cluster_character(M) == self.fu_keller_character(M)
        return ConditionVerdict(self.cat.names[k], tuple(rows), holds, equal)

    def check_specialization(self, M: Module) -> SpecializationVerdict:
        fixed = range(self.r + 1, self.n + 1)
        x = laurent_specialize(self.cluster_character(M), fixed)
        fk = laurent_specialize(self.fu_keller_character(M), fixed)
        pa = self.palu_character(suspend(M))
        return SpecializationVerdict(M.name, x, fk, pa, x == fk == pa)

    # -- helpers -------------------------------------------------------------------------
    def _catalog_index(self, M: Module) -> int:
        k = self.cat.identify(M)
        if k is None:
            raise PreconditionError(f"{M.name or M!r} is not a catalog indecomposable")
        return k

    def describe(self, M: Module) -> str:
        """Decomposition of ``M`` into catalog names, e.g. ``T2+2``."""
        if M.dim == 0:
            return "0"
        parts = []
        for k, m in enumerate(self.cat.multiplicities(M)):
            parts += [self.cat.names[k]] * m
        return "+".join(parts)

    def lattice_counts(self, kind: str, k: int, q: int = 2) -> dict:
        return point_counts(self._c_module(kind, k, q), cap=self.cap)
