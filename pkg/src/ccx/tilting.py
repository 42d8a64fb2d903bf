"""Cluster-tilting objects: endomorphism algebras, approximations, indices, Θ and Φ.

Summands ``T_1 .. T_n`` are ordered with the ``r`` non-projective ones first.
``B = End(T)`` and ``C`` (its stable quotient) act on the left of
``F(M) = ⊕ Hom(T_i, M)`` and ``H(M) = ⊕ stable Hom(T_i, M)``: an element of
``Hom(T_i, T_j)`` lies in ``e_i B e_j`` and acts by precomposition.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np
import sympy

from . import exact_linalg as la
from .algebra import Algebra
from .frobenius import FrobeniusCategory, StableHom, lift_triangle, strip_projectives, suspend
from .laurent import Basis, K0Vector
from .modules import (
    Ext1Space,
    Module,
    ShortExactSequence,
    cokernel,
    decompose_with_inclusions,
    direct_sum,
    extension_middle,
    ext1,
    free_module,
    hom_basis,
    injective_hull,
    isomorphism,
    kernel,
    lift_through_epi,
    projective,
    projective_cover,
    split_sequence,
    top_vectors,
    zero_module,
)


class TiltingError(ValueError):
    pass


class ThetaMismatch(AssertionError):
    pass


class PhiInconsistent(ValueError):
    pass


class PhiDeficient(ValueError):
    pass


# ---------------------------------------------------------------------------
# Cluster-tilting verification


@dataclass
class TiltingReport:
    ok: bool
    diagnostics: list = field(default_factory=list)

    def __bool__(self):
        return self.ok


def verify_cluster_tilting(cat: FrobeniusCategory, summands: Sequence[int]) -> TiltingReport:
    """Rigidity of ``T`` plus maximality relative to the catalog.

    Maximality is checked in the two-sided form: a catalog object ``X`` with
    ``Ext^1(T, X) = 0`` or with ``Ext^1(X, T) = 0`` must already be a summand.
    """
    diags = []
    summands = list(summands)
    if len(set(summands)) != len(summands):
        diags.append("repeated summand")
    for a in summands:
        for b in summands:
            if cat.ext1_dim(a, b):
                diags.append(f"not rigid: Ext^1({cat.names[a]}, {cat.names[b]}) != 0")
    for x in range(len(cat.catalog)):
        if x in summands:
            continue
        right = all(cat.ext1_dim(t, x) == 0 for t in summands)
        left = all(cat.ext1_dim(x, t) == 0 for t in summands)
        if right or left:
            side = "Ext^1(T, X) = 0" if right else "Ext^1(X, T) = 0"
            diags.append(f"not maximal: {cat.names[x]} satisfies {side} but is not a summand")
        elif right and left and cat.ext1_dim(x, x) == 0:
            diags.append(f"not maximal: {cat.names[x]} can be added to T")
    return TiltingReport(not diags, diags)


# ---------------------------------------------------------------------------
# Helpers


def _flat(maps: np.ndarray, width: int) -> np.ndarray:
    return la.rows_of(maps, width)


def _radical_part(E: np.ndarray, p: int) -> np.ndarray:
    """Basis of the nilpotent endomorphisms in a local endomorphism ring."""
    d = E.shape[1]
    eye = np.eye(d, dtype=np.int64)
    rows = []
    for f in E:
        c = la.single_eigenvalue(f, p)
        if c is None:
            raise TiltingError("endomorphism ring of a summand is not local")
        rows.append(((f - c * eye) % p).reshape(-1))
    return la.row_basis(np.array(rows), p, d * d)


@dataclass(frozen=True, eq=False)
class Approximation:
    """``0 -> K -> T0 -> M -> 0`` (right) or ``0 -> M -> T0 -> K -> 0`` (left)."""

    module: Module
    T0: Module
    T0_class: tuple
    other: Module
    other_class: tuple
    sequence: ShortExactSequence


@dataclass(frozen=True)
class AdditivityResult:
    lhs: K0Vector
    rhs: K0Vector
    f_epi: bool
    ok: bool
    epi_case_ok: bool


# ---------------------------------------------------------------------------


class TiltingData:
    """A cluster-tilting object ``T`` in a Frobenius category and its derived data."""

    def __init__(self, cat: FrobeniusCategory, summands: Sequence, check: bool = True):
        self.cat = cat
        idx = [cat.index_of(s) if isinstance(s, str) else int(s) for s in summands]
        if check:
            report = verify_cluster_tilting(cat, idx)
            if not report.ok:
                raise TiltingError("; ".join(report.diagnostics))
        # non-projective summands first, keeping the given order otherwise
        idx = [k for k in idx if not cat.projective[k]] + [k for k in idx if cat.projective[k]]
        self.indices = tuple(idx)
        self.T = tuple(cat.catalog[k] for k in idx)
        self.names = tuple(cat.names[k] for k in idx)
        self.n = len(idx)
        self.r = sum(1 for k in idx if not cat.projective[k])
        self.p = cat.p
        self._hom_cache: dict = {}
        self._stable_cache: dict = {}
        self._index_cache: dict = {}
        self._build_B()
        self._build_C()
        self._match_projectives()
        self._phi = None

    # -- algebras -----------------------------------------------------------
    def _hom_T(self, i: int, j: int) -> np.ndarray:
        key = (i, j)
        if key not in self._hom_cache:
            self._hom_cache[key] = hom_basis(self.T[i], self.T[j])
        return self._hom_cache[key]

    def _build_B(self):
        p, n = self.p, self.n
        basis = []  # (i, j, matrix) with matrix: T_i -> T_j, element of e_i B e_j
        labels = []
        for i in range(n):
            for j in range(n):
                if i == j:
                    d = self.T[i].dim
                    E = self._hom_T(i, i)
                    rad = _radical_part(E, p).reshape(-1, d, d)
                    mats = [np.eye(d, dtype=np.int64)] + list(rad)
                else:
                    mats = list(self._hom_T(i, j))
                for k, m in enumerate(mats):
                    basis.append((i, j, m % p))
                    if i == j and k == 0:
                        labels.append(f"e{i + 1}")
                    else:
                        labels.append(f"{self.names[i]}>{self.names[j]}#{k}")
        self._B_basis = basis
        spaces = {}
        for b, (i, j, m) in enumerate(basis):
            spaces.setdefault((i, j), []).append(b)
        self._B_spaces = {
            key: (idxs, la.Subspace(np.array([basis[b][2].reshape(-1) for b in idxs]), p))
            for key, idxs in spaces.items()
        }
        dim = len(basis)
        mult = np.zeros((dim, dim, dim), dtype=np.int64)
        for a, (i, j, ma) in enumerate(basis):
            for b, (j2, k, mb) in enumerate(basis):
                if j2 != j:
                    continue
                prod = (mb @ ma) % p  # a*b = "first a as a map, then b"
                if (i, k) not in self._B_spaces:
                    continue
                idxs, sub = self._B_spaces[(i, k)]
                mult[a, b, idxs] = sub.coords(prod.reshape(-1))
        idem = [labels.index(f"e{i + 1}") for i in range(n)]
        self.B = Algebra(p, labels, mult, tuple(self.names), idem, [(i, j) for i, j, _ in basis], name="End(T)")

    def _build_C(self):
        p, r = self.p, self.r
        basis, labels, quots = [], [], {}
        for i in range(r):
            for j in range(r):
                sh = StableHom(self.T[i], self.T[j])
                self._stable_cache[(i, j)] = sh
                if i == j:
                    d = self.T[i].dim
                    # identity first, then nilpotent classes
                    E = sh.representatives()
                    rad = _radical_part(E, p).reshape(-1, d, d) if len(E) else np.zeros((0, d, d), dtype=np.int64)
                    cands = [np.eye(d, dtype=np.int64)] + list(rad)
                    q = la.QuotientSpace(np.array([c.reshape(-1) for c in cands]), sh.factoring, p)
                    mats = [cands[k] for k in q.rep_indices]
                    if not mats or q.rep_indices[0] != 0:
                        raise TiltingError(f"identity of {self.names[i]} factors through a projective")
                else:
                    mats = list(sh.representatives())
                start = len(basis)
                for k, m in enumerate(mats):
                    basis.append((i, j, m % p))
                    labels.append(f"e{i + 1}" if i == j and k == 0 else f"{self.names[i]}>{self.names[j]}#{k}")
                quots[(i, j)] = (list(range(start, len(basis))), sh, np.array([m.reshape(-1) for m in mats]))
        self._C_basis = basis
        dim = len(basis)
        self._C_spaces = {}
        for key, (idxs, sh, reps) in quots.items():
            width = self.T[key[1]].dim * self.T[key[0]].dim
            joint = la.QuotientSpace(la.rows_of(reps, width), sh.factoring, p) if len(idxs) else None
            self._C_spaces[key] = (idxs, sh, joint)
        mult = np.zeros((dim, dim, dim), dtype=np.int64)
        for a, (i, j, ma) in enumerate(basis):
            for b, (j2, k, mb) in enumerate(basis):
                if j2 != j:
                    continue
                idxs, _, joint = self._C_spaces[(i, k)]
                if joint is None:
                    continue
                mult[a, b, idxs] = self._stable_coords(i, k, (mb @ ma) % p)
        idem = [labels.index(f"e{i + 1}") for i in range(r)]
        self.C = Algebra(p, labels, mult, tuple(self.names[:r]), idem, [(i, j) for i, j, _ in basis], name="stable End(T)")
        # the quotient map B -> C
        proj = np.zeros((dim, self.B.dim), dtype=np.int64)
        for b, (i, j, m) in enumerate(self._B_basis):
            if i < r and j < r and self._C_spaces[(i, j)][2] is not None:
                proj[self._C_spaces[(i, j)][0], b] = self._stable_coords(i, j, m)
        self.B_to_C = proj

    def _stable_coords(self, i: int, j: int, m: np.ndarray) -> np.ndarray:
        """Coordinates of a map ``T_i -> T_j`` in the chosen basis of C."""
        idxs, _, joint = self._C_spaces[(i, j)]
        if joint is None:
            return np.zeros(0, dtype=np.int64)
        return joint.coords(m.reshape(-1))

    def _match_projectives(self):
        A = self.cat.algebra
        self.proj_T = []
        for v in range(A.nvertices):
            P = projective(A, v)
            hit = [t for t in range(self.r, self.n) if isomorphism(P, self.T[t]) is not None]
            if not hit:
                raise TiltingError(f"indecomposable projective P{v + 1} is not a summand of T")
            self.proj_T.append(hit[0])

    # -- K0 helpers -----------------------------------------------------------
    def k0(self, coords) -> K0Vector:
        return K0Vector(Basis.SUMMANDS_OF_T, coords)

    def unit(self, i: int) -> K0Vector:
        return K0Vector.unit(Basis.SUMMANDS_OF_T, self.n, i)

    def class_in_T(self, M: Module) -> tuple:
        """Multiplicities of ``T_1 .. T_n`` in ``M``; raises unless ``M`` is in add T."""
        counts = [0] * self.n
        for piece, _ in decompose_with_inclusions(M, self.cat.rng()):
            for t in range(self.n):
                if self.T[t].dim_vector == piece.dim_vector and isomorphism(piece, self.T[t]) is not None:
                    counts[t] += 1
                    break
            else:
                raise TiltingError(f"{piece!r} is not in add T")
        return tuple(counts)

    def projective_class(self, vertices: Sequence[int]) -> K0Vector:
        c = [0] * self.n
        for v in vertices:
            c[self.proj_T[v]] += 1
        return self.k0(c)

    # -- functors -------------------------------------------------------------
    def _hom_into(self, M: Module) -> list:
        key = ("F", id(M))
        if key not in self._hom_cache:
            self._hom_cache[key] = (M, [hom_basis(self.T[i], M) for i in range(self.n)])
        return self._hom_cache[key][1]

    def F_module(self, M: Module) -> Module:
        """``Hom(T, M)`` as a B-module."""
        p = self.p
        bases = self._hom_into(M)
        subs = [la.Subspace(_flat(bs, M.dim * self.T[i].dim), p, M.dim * self.T[i].dim) for i, bs in enumerate(bases)]
        return self._functor_module(self.B, self._B_basis, bases, lambda i, f: subs[i].coords(f.reshape(-1)), M)

    def F_map(self, M: Module, N: Module, g: np.ndarray) -> np.ndarray:
        p = self.p
        bm, bn = self._hom_into(M), self._hom_into(N)
        blocks = []
        for i in range(self.n):
            sub = la.Subspace(_flat(bn[i], N.dim * self.T[i].dim), p, N.dim * self.T[i].dim)
            blocks.append(np.array([sub.coords(((g @ f) % p).reshape(-1)) for f in bm[i]]).reshape(len(bm[i]), len(bn[i])).T)
        return _block_diag(blocks)

    def _stable_into(self, M: Module) -> list:
        key = ("H", id(M))
        if key not in self._stable_cache:
            self._stable_cache[key] = (M, [StableHom(self.T[i], M) for i in range(self.r)])
        return self._stable_cache[key][1]

    def H_module(self, M: Module) -> Module:
        """``stable Hom(T, M)`` as a C-module."""
        sh = self._stable_into(M)
        bases = [s.representatives() for s in sh]
        return self._functor_module(self.C, self._C_basis, bases, lambda i, f: sh[i].coords(f), M)

    def H_map(self, M: Module, N: Module, g: np.ndarray) -> np.ndarray:
        p = self.p
        sm, sn = self._stable_into(M), self._stable_into(N)
        blocks = []
        for i in range(self.r):
            reps = sm[i].representatives()
            blocks.append(np.array([sn[i].coords((g @ f) % p) for f in reps]).reshape(len(reps), sn[i].dim).T)
        return _block_diag(blocks)

    def _functor_module(self, alg: Algebra, alg_basis, bases, coords, M: Module) -> Module:
        p = self.p
        sizes = [len(b) for b in bases]
        offs = np.concatenate([[0], np.cumsum(sizes)]).astype(int)
        d = int(offs[-1])
        vertex = [i for i, s in enumerate(sizes) for _ in range(s)]
        act = np.zeros((alg.dim, d, d), dtype=np.int64)
        for a, (i, j, m) in enumerate(alg_basis):
            # element of Hom(T_i, T_j): sends Hom(T_j, M) to Hom(T_i, M)
            for k, f in enumerate(bases[j]):
                act[a, offs[i]:offs[i + 1], offs[j] + k] = coords(i, (f @ m) % p)
        return Module(alg, vertex, act, f"{'F' if alg is self.B else 'H'}({M.name})")

    def ext_module(self, M: Module) -> Module:
        """``Ext^1(T, M)`` as a C-module, acting by pullback along stable maps."""
        p, r = self.p, self.r
        spaces = [ext1(self.T[i], M) for i in range(r)]
        sizes = [s.dim for s in spaces]
        offs = np.concatenate([[0], np.cumsum(sizes)]).astype(int)
        d = int(offs[-1])
        vertex = [i for i, s in enumerate(sizes) for _ in range(s)]
        act = np.zeros((self.C.dim, d, d), dtype=np.int64)
        for a, (i, j, m) in enumerate(self._C_basis):
            if not sizes[i] or not sizes[j]:
                continue
            omega_map = _restrict_to_syzygy(spaces[i], spaces[j], m, p)
            for k, cls in enumerate(spaces[j].classes()):
                phi = (cls.cocycle @ omega_map) % p
                act[a, offs[i]:offs[i + 1], offs[j] + k] = spaces[i].coords_of(phi)
        return Module(self.C, vertex, act, f"Ext1(T,{M.name})")

    def restrict_to_B(self, N: Module) -> Module:
        """A C-module viewed as a B-module through ``B -> C``."""
        if N.algebra is not self.C:
            raise TiltingError("expected a C-module")
        act = np.einsum("cb,cij->bij", self.B_to_C, N.action) % self.p
        for v, e in enumerate(self.B.idempotents):
            if v >= self.r:
                act[e] = 0
        return Module(self.B, N.vertex, act, N.name)

    def simple_B(self, i: int) -> Module:
        from .modules import simple

        return simple(self.B, i)

    def simple_C(self, i: int) -> Module:
        from .modules import simple

        return simple(self.C, i)

    # -- approximations ------------------------------------------------------
    def minimal_right_approx(self, M: Module) -> Approximation:
        p = self.p
        if M.dim == 0:
            Z = zero_module(M.algebra)
            return Approximation(M, Z, (0,) * self.n, Z, (0,) * self.n, split_sequence(Z, Z))
        FM = self.F_module(M)
        bases = self._hom_into(M)
        offs = np.concatenate([[0], np.cumsum([len(b) for b in bases])]).astype(int)
        maps, summands = [], []
        for v, vec in top_vectors(FM):
            coeffs = vec[offs[v]:offs[v + 1]]
            maps.append(np.einsum("k,kij->ij", coeffs, bases[v]) % p)
            summands.append(v)
        T0 = direct_sum(*[self.T[v] for v in summands])
        f = np.hstack(maps) % p
        if la.rank(f, p) != M.dim:
            raise TiltingError(f"right add T-approximation of {M.name} is not surjective")
        K, inc = kernel(T0, M, f)
        t0 = tuple(summands.count(t) for t in range(self.n))
        return Approximation(M, T0, t0, K, self.class_in_T(K), ShortExactSequence(K, T0, M, inc, f))

    def minimal_left_approx(self, M: Module) -> Approximation:
        p, n = self.p, self.n
        if M.dim == 0:
            Z = zero_module(M.algebra)
            return Approximation(M, Z, (0,) * n, Z, (0,) * n, split_sequence(Z, Z))
        homs = [hom_basis(M, self.T[i]) for i in range(n)]
        # radical of Hom(M, T) as a right B-module: composites with radical maps
        rad = {j: [] for j in range(n)}
        for a in self.B.radical_indices:
            i, j, m = self._B_basis[a]
            for g in homs[i]:
                rad[j].append(((m @ g) % p).reshape(-1))
        maps, summands = [], []
        for j in range(n):
            width = self.T[j].dim * M.dim
            if not len(homs[j]):
                continue
            q = la.QuotientSpace(_flat(homs[j], width), la.rows_of(np.array(rad[j], dtype=np.int64), width), p)
            for row in q.reps:
                maps.append(row.reshape(self.T[j].dim, M.dim))
                summands.append(j)
        T0 = direct_sum(*[self.T[v] for v in summands])
        g = np.vstack(maps) % p
        if la.rank(g, p) != M.dim:
            raise TiltingError(f"left add T-approximation of {M.name} is not injective")
        K, proj = cokernel(M, T0, g)
        t0 = tuple(summands.count(t) for t in range(n))
        return Approximation(M, T0, t0, K, self.class_in_T(K), ShortExactSequence(M, T0, K, g, proj))

    # -- indices ---------------------------------------------------------------
    def _cached(self, tag: str, M: Module, approx) -> K0Vector:
        # keyed by the action itself: equal data gives equal classes
        key = (tag, M.vertex, M.action.tobytes())
        if key not in self._index_cache:
            a = approx(M)
            self._index_cache[key] = self.k0(a.T0_class) - self.k0(a.other_class)
        return self._index_cache[key]

    def index(self, M: Module) -> K0Vector:
        return self._cached("ind", M, self.minimal_right_approx)

    def op_index(self, M: Module) -> K0Vector:
        return self._cached("op", M, self.minimal_left_approx)

    def theta_both(self, M: Module) -> tuple[K0Vector, K0Vector]:
        """Θ from its definition and from the opposite-index formula."""
        cov = projective_cover(M)
        Xp = cov.kernel
        ind_xp = self.index(Xp)
        by_def = ind_xp - self.projective_class(cov.free.vertices) + self.index(M)
        by_op = ind_xp - self.op_index(Xp)
        return by_def, by_op

    def theta(self, M: Module) -> K0Vector:
        a, b = self.theta_both(M)
        if a != b:
            raise ThetaMismatch(f"Θ({M.name}): {a} by definition but {b} from opposite indices")
        return a

    # -- stable indices for the non-projective part ------------------------------
    def stable_index(self, X: Module) -> K0Vector:
        """Index of ``X`` in the stable category with respect to ``T_1 .. T_r``.

        Built from a stable right approximation, realized as the short exact
        sequence ``K -> T'_0 ⊕ P(X) -> X`` and lifted to a stable triangle.
        """
        p, r = self.p, self.r
        zero = K0Vector.zero(Basis.SUMMANDS_OF_T, r)
        Xs, _ = strip_projectives(X, self.cat.rng())
        if Xs.dim == 0:
            return zero
        HX = self.H_module(Xs)
        sh = self._stable_into(Xs)
        offs = np.concatenate([[0], np.cumsum([s.dim for s in sh])]).astype(int)
        maps, summands = [], []
        for v, vec in top_vectors(HX):
            reps = sh[v].representatives()
            maps.append(np.einsum("k,kij->ij", vec[offs[v]:offs[v + 1]], reps) % p)
            summands.append(v)
        cov = projective_cover(Xs)
        parts = [self.T[v] for v in summands] + [cov.P]
        mid = direct_sum(*parts)
        f = np.hstack(maps + [cov.epi]) % p
        K, inc = kernel(mid, Xs, f)
        tri = lift_triangle(ShortExactSequence(K, mid, Xs, inc, f))
        fiber, _ = strip_projectives(tri.X, self.cat.rng())
        cls = self.class_in_T(fiber) if fiber.dim else (0,) * self.n
        if any(cls[r:]):
            raise TiltingError("stable approximation kernel is not in add T'")
        t0 = [summands.count(t) for t in range(r)]
        return K0Vector(Basis.SUMMANDS_OF_T, [t0[t] - cls[t] for t in range(r)])

    # -- Φ --------------------------------------------------------------------------
    def phi_data(self) -> list[tuple[str, tuple, K0Vector]]:
        """``(name, dim H(M), Θ(M))`` for every catalog object."""
        out = []
        for name, M in zip(self.cat.names, self.cat.catalog):
            out.append((name, self.H_module(M).dim_vector, self.theta(M)))
        return out

    @property
    def phi_matrix(self) -> np.ndarray:
        if self._phi is None:
            self._phi = solve_phi(self.phi_data(), self.n, self.r)
        return self._phi

    def apply_phi(self, e: Sequence[int]) -> K0Vector:
        e = np.asarray(list(e), dtype=np.int64).reshape(self.r)
        return self.k0(self.phi_matrix @ e)

    def check_index_additivity(self, ses: ShortExactSequence) -> AdditivityResult:
        """Alternating index sum of ``A -> B -> C`` against ``Φ(coker H(g))``."""
        ses.validate()
        p = self.p
        lhs = self.index(ses.left) - self.index(ses.middle) + self.index(ses.right)
        Hg = self.H_map(ses.middle, ses.right, ses.g)
        HC = self.H_module(ses.right)
        coker = []
        for i in range(self.r):
            rows = HC.block(i)
            cols = self.H_module(ses.middle).block(i)
            blk = Hg[np.ix_(rows, cols)] if rows and cols else np.zeros((len(rows), 0), dtype=np.int64)
            coker.append(len(rows) - (la.rank(blk, p) if blk.size else 0))
        rhs = self.apply_phi(coker)
        Fg = self.F_map(ses.middle, ses.right, ses.g)
        f_epi = (la.rank(Fg, p) if Fg.size else 0) == Fg.shape[0]
        epi_ok = (not f_epi) or lhs.is_zero()
        return AdditivityResult(lhs, rhs, f_epi, lhs == rhs and epi_ok, epi_ok)

    # -- sequences used by the suites -------------------------------------------------
    def generated_sequences(self) -> list[tuple[str, ShortExactSequence]]:
        """Short exact sequences from covers, hulls, approximations and extensions."""
        cat, p = self.cat, self.p
        out = []
        for name, M in zip(cat.names, cat.catalog):
            cov = projective_cover(M)
            if cov.kernel.dim:
                out.append((f"projective cover of {name}", ShortExactSequence(cov.kernel, cov.P, M, cov.inclusion, cov.epi)))
            hull = injective_hull(M)
            if hull.cokernel.dim:
                out.append((f"injective hull of {name}", ShortExactSequence(M, hull.injective, hull.cokernel, hull.mono, hull.projection)))
            ra = self.minimal_right_approx(M)
            if ra.other.dim:
                out.append((f"right approximation of {name}", ra.sequence))
            la_ = self.minimal_left_approx(M)
            if la_.other.dim:
                out.append((f"left approximation of {name}", la_.sequence))
        for a, (na, Ma) in enumerate(zip(cat.names, cat.catalog)):
            for b, (nb, Mb) in enumerate(zip(cat.names, cat.catalog)):
                sp = ext1(Ma, Mb)
                for cls in sp.classes():
                    out.append((f"extension of {na} by {nb}", extension_middle(cls)))
        for a, (na, Ma) in enumerate(zip(cat.names, cat.catalog)):
            for nb, Mb in list(zip(cat.names, cat.catalog))[a:]:
                out.append((f"split {nb} -> {na}+{nb} -> {na}", split_sequence(Mb, Ma)))
        return out


def _block_diag(blocks: list) -> np.ndarray:
    rows = sum(b.shape[0] for b in blocks)
    cols = sum(b.shape[1] for b in blocks)
    out = np.zeros((rows, cols), dtype=np.int64)
    r = c = 0
    for b in blocks:
        out[r:r + b.shape[0], c:c + b.shape[1]] = b
        r += b.shape[0]
        c += b.shape[1]
    return out


def _restrict_to_syzygy(src: Ext1Space, tgt: Ext1Space, m: np.ndarray, p: int) -> np.ndarray:
    """For ``m: X -> Y`` the induced map ``Omega X -> Omega Y`` of syzygies."""
    cs, ct = src.cover, tgt.cover
    lifted = lift_through_epi(cs.free, ct.epi, ct.P, (m @ cs.epi) % p)
    res = la.solve(ct.inclusion, (lifted @ cs.inclusion) % p, p)
    if res is None:
        raise TiltingError("lifted map does not preserve syzygies")
    return res % p


def solve_phi(data, n: int, r: int) -> np.ndarray:
    """Integer ``n x r`` matrix with ``Φ · dim H(M) = Θ(M)`` for all data rows.

    Raises :class:`PhiDeficient` if the classes do not span ``Z^r`` over Q and
    :class:`PhiInconsistent` if no single matrix fits every row.
    """
    if r == 0:
        return np.zeros((n, 0), dtype=np.int64)
    H = sympy.Matrix([list(h) for _, h, _ in data])  # m x r
    Th = sympy.Matrix([list(t.coords) for _, _, t in data])  # m x n
    if H.rank() < r:
        raise PhiDeficient(f"catalog classes span rank {H.rank()} < {r}")
    try:
        sol, params = H.gauss_jordan_solve(Th)
    except ValueError as exc:
        raise PhiInconsistent("Θ is not linear in the classes of H(M)") from exc
    if params.shape[0]:
        sol = sol.subs({s: 0 for s in params})
    if H * sol != Th:
        raise PhiInconsistent("Θ is not linear in the classes of H(M)")
    phi = sol.T  # n x r
    if any(Fraction(int(x.p), int(x.q)).denominator != 1 for x in phi):
        raise PhiInconsistent("Φ has non-integer entries")
    return np.array([[int(phi[i, j]) for j in range(r)] for i in range(n)], dtype=np.int64)
