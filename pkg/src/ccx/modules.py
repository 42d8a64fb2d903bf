"""Finite-dimensional left modules over an :class:`~ccx.algebra.Algebra`.

A module stores one matrix per algebra basis element.  Every basis vector of
the module lives at a single vertex (``vertex[k]``), so idempotents act by
coordinate projections.  Maps are plain integer matrices of shape
``(target.dim, source.dim)`` acting on column vectors.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from . import exact_linalg as la
from .algebra import Algebra


class AlgebraMismatch(ValueError):
    pass


class ModuleError(ValueError):
    pass


class DecompositionFailure(RuntimeError):
    pass


def _same_algebra(*mods: "Module") -> Algebra:
    A = mods[0].algebra
    for m in mods[1:]:
        if m.algebra is not A:
            raise AlgebraMismatch(f"modules over different algebras: {A!r} and {m.algebra!r}")
    return A


@dataclass(frozen=True, eq=False)
class Module:
    algebra: Algebra
    vertex: tuple
    action: np.ndarray
    name: str = ""
    check: bool = field(default=True, repr=False)

    def __post_init__(self):
        A = self.algebra
        vertex = tuple(int(v) for v in self.vertex)
        object.__setattr__(self, "vertex", vertex)
        d = len(vertex)
        act = np.asarray(self.action, dtype=np.int64).reshape(A.dim, d, d) % A.p
        act.setflags(write=False)
        object.__setattr__(self, "action", act)
        if self.check:
            self.validate()

    # basic data ------------------------------------------------------------
    @property
    def p(self) -> int:
        return self.algebra.p

    @property
    def dim(self) -> int:
        return len(self.vertex)

    @property
    def dim_vector(self) -> tuple:
        counts = [0] * self.algebra.nvertices
        for v in self.vertex:
            counts[v] += 1
        return tuple(counts)

    def block(self, i: int) -> list[int]:
        return [k for k, v in enumerate(self.vertex) if v == i]

    def is_zero(self) -> bool:
        return self.dim == 0

    def renamed(self, name: str) -> "Module":
        return Module(self.algebra, self.vertex, self.action, name, check=False)

    def __repr__(self):
        label = self.name or "Module"
        return f"{label}(dimv={self.dim_vector})"

    def validate(self):
        A, d = self.algebra, self.dim
        act = self.action
        for i, e in enumerate(A.idempotents):
            want = np.diag([1 if v == i else 0 for v in self.vertex]).astype(np.int64)
            if not np.array_equal(act[e], want.reshape(d, d)):
                raise ModuleError(f"idempotent e{i + 1} does not act as the vertex projection")
        lhs = np.einsum("aij,bjk->abik", act, act) % A.p
        rhs = np.einsum("abc,cik->abik", A.mult, act) % A.p
        if not np.array_equal(lhs, rhs):
            a, b = np.argwhere((lhs != rhs).any(axis=(2, 3)))[0]
            raise ModuleError(
                f"action does not respect the product {A.labels[a]}*{A.labels[b]}"
            )


# ---------------------------------------------------------------------------
# Constructors


def zero_module(A: Algebra) -> Module:
    return Module(A, (), np.zeros((A.dim, 0, 0), dtype=np.int64), "0", check=False)


def simple(A: Algebra, i: int) -> Module:
    act = np.zeros((A.dim, 1, 1), dtype=np.int64)
    act[A.idempotents[i]] = 1
    return Module(A, (i,), act, f"S{i + 1}")


def projective(A: Algebra, i: int) -> Module:
    """``P_i = A e_i`` with basis the algebra basis vectors in ``A e_i``."""
    cols = sorted((b for b in range(A.dim) if A.blocks[b][1] == i), key=lambda b: (A.blocks[b][0], b))
    act = A.mult[:, cols][:, :, cols].transpose(0, 2, 1)
    vertex = [A.blocks[b][0] for b in cols]
    return Module(A, vertex, act, f"P{i + 1}", check=False)


def injective(A: Algebra, i: int) -> Module:
    """``I_i = D(e_i A)``."""
    return dual(projective(A.opposite(), i)).renamed(f"I{i + 1}")


def dual(M: Module) -> Module:
    """``D M = Hom_k(M, k)`` as a module over the opposite algebra."""
    act = M.action.transpose(0, 2, 1)
    return Module(M.algebra.opposite(), M.vertex, act, f"D{M.name}" if M.name else "", check=False)


def direct_sum(*mods: Module) -> Module:
    if not mods:
        raise ModuleError("direct_sum needs at least one module")
    A = _same_algebra(*mods)
    d = sum(m.dim for m in mods)
    act = np.zeros((A.dim, d, d), dtype=np.int64)
    vertex: list[int] = []
    off = 0
    for m in mods:
        act[:, off:off + m.dim, off:off + m.dim] = m.action
        vertex.extend(m.vertex)
        off += m.dim
    name = "+".join(m.name or "?" for m in mods)
    return Module(A, vertex, act, name, check=False)


def summand_slices(*mods: Module) -> list[slice]:
    out, off = [], 0
    for m in mods:
        out.append(slice(off, off + m.dim))
        off += m.dim
    return out


def module_from_arrows(A: Algebra, dims, arrows: dict, name: str = "") -> Module:
    """Module given by a matrix for each arrow of the quiver presenting ``A``.

    ``dims`` gives the dimension at each vertex (list, or dict keyed by vertex
    label).  The matrix of ``x: i -> j`` has shape ``(dims[j], dims[i])``.
    """
    if A.quiver is None or not A.words:
        raise ModuleError("algebra was not built from a quiver")
    q = A.quiver
    if isinstance(dims, dict):
        dims = [int(dims.get(v, 0)) for v in q.vertices]
    dims = [int(x) for x in dims]
    if len(dims) != len(q.vertices):
        raise ModuleError("one dimension per vertex is required")
    offs = np.concatenate([[0], np.cumsum(dims)]).astype(int)
    d = int(offs[-1])
    vertex = [i for i, n in enumerate(dims) for _ in range(n)]
    mats = {}
    for aname, s, t in q.arrows:
        si, ti = q.vertex_index(s), q.vertex_index(t)
        raw = arrows.get(aname)
        mat = np.zeros((dims[ti], dims[si]), dtype=np.int64)
        if raw is not None and np.asarray(raw).size:
            raw = np.asarray(raw, dtype=np.int64)
            if raw.shape != mat.shape:
                raise ModuleError(f"arrow {aname} needs a {mat.shape} matrix, got {raw.shape}")
            mat = raw % A.p
        full = np.zeros((d, d), dtype=np.int64)
        full[offs[ti]:offs[ti + 1], offs[si]:offs[si + 1]] = mat
        mats[aname] = full
    unknown = set(arrows) - set(mats)
    if unknown:
        raise ModuleError(f"unknown arrows {sorted(unknown)}")
    act = np.zeros((A.dim, d, d), dtype=np.int64)
    for b, word in enumerate(A.words):
        t, s = A.blocks[b]
        if not word:
            m = np.zeros((d, d), dtype=np.int64)
            for k in range(offs[s], offs[s + 1]):
                m[k, k] = 1
        else:
            m = np.eye(d, dtype=np.int64)
            for x in word:
                m = (m @ mats[x]) % A.p
        act[b] = m
    return Module(A, vertex, act, name)


def module_from_dict(A: Algebra, data: dict) -> Module:
    return module_from_arrows(A, data["dims"], data.get("action", {}), data.get("name", ""))


def load_module(A: Algebra, path) -> Module:
    return module_from_dict(A, json.loads(Path(path).read_text()))


# ---------------------------------------------------------------------------
# Maps


@dataclass(frozen=True, eq=False)
class ModuleMap:
    source: Module
    target: Module
    matrix: np.ndarray

    def __post_init__(self):
        _same_algebra(self.source, self.target)
        m = np.asarray(self.matrix, dtype=np.int64).reshape(self.target.dim, self.source.dim) % self.source.p
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    def is_homomorphism(self) -> bool:
        return is_homomorphism(self.source, self.target, self.matrix)

    def __matmul__(self, other: "ModuleMap") -> "ModuleMap":
        if other.target is not self.source:
            raise ModuleError("maps are not composable")
        return ModuleMap(other.source, self.target, self.matrix @ other.matrix)


def is_homomorphism(M: Module, N: Module, f: np.ndarray) -> bool:
    p = M.p
    lhs = np.einsum("ij,ajk->aik", f, M.action) % p
    rhs = np.einsum("aij,jk->aik", N.action, f) % p
    return bool(np.array_equal(lhs, rhs))


def _hom_system(M: Module, N: Module):
    """Linear system whose kernel is Hom(M, N); unknowns are vertex-matched entries."""
    A = _same_algebra(M, N)
    dm, dn = M.dim, N.dim
    free = [(r, c) for r in range(dn) for c in range(dm) if N.vertex[r] == M.vertex[c]]
    flat = [r * dm + c for r, c in free]
    blocks = []
    for g in A.generators:
        coeff = np.kron(N.action[g], np.eye(dm, dtype=np.int64)) - np.kron(np.eye(dn, dtype=np.int64), M.action[g].T)
        coeff = coeff[:, flat] % A.p
        nz = coeff.any(axis=1)
        if nz.any():
            blocks.append(coeff[nz])
    system = np.vstack(blocks) if blocks else np.zeros((0, len(flat)), dtype=np.int64)
    return system, flat


def hom_basis(M: Module, N: Module) -> np.ndarray:
    """Basis of Hom(M, N) as an array of shape ``(k, N.dim, M.dim)``."""
    system, flat = _hom_system(M, N)
    if not flat:
        return np.zeros((0, N.dim, M.dim), dtype=np.int64)
    ker = la.kernel(system, M.p) if system.shape[0] else np.eye(len(flat), dtype=np.int64)
    out = np.zeros((ker.shape[0], N.dim * M.dim), dtype=np.int64)
    out[:, flat] = ker
    return out.reshape(ker.shape[0], N.dim, M.dim)


def hom_space(M: Module, N: Module) -> list[ModuleMap]:
    return [ModuleMap(M, N, f) for f in hom_basis(M, N)]


def hom_dim(M: Module, N: Module) -> int:
    system, flat = _hom_system(M, N)
    return len(flat) - la.rank(system, M.p)


# ---------------------------------------------------------------------------
# Submodules, quotients, kernels


def closure(M: Module, vectors) -> np.ndarray:
    """Row basis (graded by vertex) of the submodule generated by ``vectors``."""
    p, d = M.p, M.dim
    vecs = la.rows_of(vectors, d) % p
    # split generators into vertex components first
    pieces = []
    for i in range(M.algebra.nvertices):
        proj = vecs @ M.action[M.algebra.idempotents[i]].T % p
        pieces.append(proj)
    current = la.row_basis(np.vstack(pieces) if pieces else vecs, p, d)
    gens = [M.action[g] for g in M.algebra.generators]
    while True:
        new = [current] + [(current @ g.T) % p for g in gens]
        nxt = la.row_basis(np.vstack(new), p, d)
        if nxt.shape[0] == current.shape[0]:
            break
        current = nxt
    return _graded_basis(M, current)


def _graded_basis(M: Module, rows: np.ndarray) -> np.ndarray:
    """Re-express a vertex-stable subspace by vectors each living at one vertex."""
    p, d = M.p, M.dim
    out = []
    for i in range(M.algebra.nvertices):
        mask = np.array([v == i for v in M.vertex], dtype=bool)
        part = rows * mask
        part = part[part.any(axis=1)] if part.size else part
        if part.size:
            out.append(la.row_basis(part, p, d))
    return np.vstack(out) if out else np.zeros((0, d), dtype=np.int64)


def submodule(M: Module, basis, name: str = "") -> tuple[Module, np.ndarray]:
    """Submodule spanned by ``basis`` (must be closed) and its inclusion matrix."""
    p = M.p
    basis = la.rows_of(basis, M.dim) % p
    if basis.shape[0]:
        graded = _graded_basis(M, basis)
        if graded.shape[0] != la.rank(basis, p):
            raise ModuleError("subspace is not stable under the idempotents")
        basis = graded
    k = basis.shape[0]
    if k == 0:
        return zero_module(M.algebra), np.zeros((M.dim, 0), dtype=np.int64)
    vertex = [M.vertex[int(np.flatnonzero(row)[0])] for row in basis]
    sub = la.Subspace(basis, p)
    images = np.einsum("aij,kj->aki", M.action, basis) % p  # (dimA, k, d)
    if not all(sub.contains(v) for v in images.reshape(-1, M.dim)):
        raise ModuleError("subspace is not a submodule")
    act = sub.coords(images).transpose(0, 2, 1)
    return Module(M.algebra, vertex, act, name, check=False), basis.T.copy()


def quotient(M: Module, sub_basis, name: str = "") -> tuple[Module, np.ndarray]:
    """``M / U`` and the projection matrix, with unit-vector representatives."""
    p, d = M.p, M.dim
    sub_basis = la.rows_of(sub_basis, d) % p
    qs = la.QuotientSpace(np.eye(d, dtype=np.int64), sub_basis, p)
    reps = qs.rep_indices
    vertex = [M.vertex[r] for r in reps]
    proj = qs.coords(np.eye(d, dtype=np.int64)).T  # (k, d)
    act = np.einsum("kj,ajr->akr", proj, M.action[:, :, reps]) % p
    return Module(M.algebra, vertex, act, name, check=False), proj % p


def kernel(M: Module, N: Module, f) -> tuple[Module, np.ndarray]:
    ker = la.kernel(np.asarray(f, dtype=np.int64), M.p)
    return submodule(M, ker)


def image_basis(f, p: int) -> np.ndarray:
    f = np.asarray(f, dtype=np.int64)
    if f.size == 0:
        return np.zeros((0, f.shape[0]), dtype=np.int64)
    return la.row_basis(f.T, p, f.shape[0])


def image(M: Module, N: Module, f) -> tuple[Module, np.ndarray]:
    return submodule(N, image_basis(f, N.p))


def cokernel(M: Module, N: Module, f) -> tuple[Module, np.ndarray]:
    return quotient(N, image_basis(f, N.p))


def radical_basis(M: Module) -> np.ndarray:
    p, d = M.p, M.dim
    rows = [(M.action[r] % p).T for r in M.algebra.radical_indices]
    if not rows or d == 0:
        return np.zeros((0, d), dtype=np.int64)
    return _graded_basis(M, la.row_basis(np.vstack(rows), p, d))


def socle_basis(M: Module) -> np.ndarray:
    p, d = M.p, M.dim
    rows = [M.action[r] for r in M.algebra.radical_indices]
    if not rows:
        return np.eye(d, dtype=np.int64)
    return _graded_basis(M, la.kernel(np.vstack(rows) % p, p))


def top_vectors(M: Module) -> list[tuple[int, np.ndarray]]:
    """Vectors (vertex, v) whose images form a basis of ``M / rad M``."""
    rad = radical_basis(M)
    qs = la.QuotientSpace(np.eye(M.dim, dtype=np.int64), rad, M.p)
    out = [(M.vertex[r], np.eye(M.dim, dtype=np.int64)[r]) for r in qs.rep_indices]
    out.sort(key=lambda t: t[0])
    return out


def top_vector(M: Module) -> tuple:
    """Dimension vector of the top ``M / rad M``."""
    counts = [0] * M.algebra.nvertices
    for v, _ in top_vectors(M):
        counts[v] += 1
    return tuple(counts)


# ---------------------------------------------------------------------------
# Projective modules with chosen generators


@dataclass(frozen=True, eq=False)
class FreeModule:
    """``P = ⊕_k A e_{v_k}`` with the position of each generator ``e_{v_k}``."""

    module: Module
    vertices: tuple
    gen_pos: tuple
    source: tuple  # (summand k, algebra basis index b) for each basis vector


def free_module(A: Algebra, vertices: Sequence[int]) -> FreeModule:
    parts = [projective(A, v) for v in vertices]
    gen_pos, source, off = [], [], 0
    for k, v in enumerate(vertices):
        cols = sorted((b for b in range(A.dim) if A.blocks[b][1] == v), key=lambda b: (A.blocks[b][0], b))
        gen_pos.append(off + cols.index(A.idempotents[v]))
        source.extend((k, b) for b in cols)
        off += len(cols)
    if parts:
        P = direct_sum(*parts)
    else:
        P = zero_module(A)
    return FreeModule(P, tuple(vertices), tuple(gen_pos), tuple(source))


def map_from_free(F: FreeModule, N: Module, images: Sequence[np.ndarray]) -> np.ndarray:
    """The unique map ``F -> N`` sending generator ``k`` to ``images[k]``."""
    f = np.zeros((N.dim, F.module.dim), dtype=np.int64)
    for col, (k, b) in enumerate(F.source):
        f[:, col] = N.action[b] @ np.asarray(images[k], dtype=np.int64)
    return f % N.p


def lift_through_epi(F: FreeModule, epi: np.ndarray, L: Module, target_map: np.ndarray) -> np.ndarray:
    """``h: F -> L`` with ``epi @ h == target_map`` (``epi: L -> X`` surjective)."""
    p = L.p
    images = []
    for k, v in enumerate(F.vertices):
        want = target_map[:, F.gen_pos[k]]
        cols = L.block(v)
        sol = la.solve(epi[:, cols], want, p)
        if sol is None:
            raise ModuleError("map does not lift: the given map is not surjective")
        y = np.zeros(L.dim, dtype=np.int64)
        y[cols] = sol
        images.append(y)
    return map_from_free(F, L, images)


@dataclass(frozen=True, eq=False)
class ProjectiveCover:
    module: Module  # M
    free: FreeModule
    epi: np.ndarray  # P -> M
    kernel: Module  # Omega M
    inclusion: np.ndarray  # Omega M -> P

    @property
    def P(self) -> Module:
        return self.free.module


def projective_cover(M: Module) -> ProjectiveCover:
    """Minimal projective cover built from a basis of the top of ``M``."""
    A = M.algebra
    tops = top_vectors(M)
    F = free_module(A, [v for v, _ in tops])
    epi = map_from_free(F, M, [x for _, x in tops])
    K, inc = kernel(F.module, M, epi)
    return ProjectiveCover(M, F, epi, K, inc)


def syzygy(M: Module) -> Module:
    return projective_cover(M).kernel


@dataclass(frozen=True, eq=False)
class InjectiveHull:
    module: Module
    injective: Module
    mono: np.ndarray  # M -> I
    cokernel: Module
    projection: np.ndarray  # I -> cokernel


def injective_hull(M: Module) -> InjectiveHull:
    """Minimal injective envelope, obtained by dualizing a projective cover."""
    cov = projective_cover(dual(M))
    inj = dual(cov.P)
    mono = cov.epi.T.copy()
    C, proj = cokernel(M, inj, mono)
    return InjectiveHull(M, inj, mono, C, proj)


def cosyzygy(M: Module) -> Module:
    return injective_hull(M).cokernel


# ---------------------------------------------------------------------------
# Short exact sequences and Ext^1


@dataclass(frozen=True, eq=False)
class ShortExactSequence:
    """``0 -> left --f--> middle --g--> right -> 0``."""

    left: Module
    middle: Module
    right: Module
    f: np.ndarray
    g: np.ndarray

    def is_exact(self) -> bool:
        p = self.middle.p
        f, g = self.f % p, self.g % p
        if f.shape != (self.middle.dim, self.left.dim) or g.shape != (self.right.dim, self.middle.dim):
            return False
        if not (is_homomorphism(self.left, self.middle, f) and is_homomorphism(self.middle, self.right, g)):
            return False
        if la.rank(f, p) != self.left.dim or la.rank(g, p) != self.right.dim:
            return False
        if ((g @ f) % p).any():
            return False
        return self.left.dim + self.right.dim == self.middle.dim

    def validate(self):
        if not self.is_exact():
            raise ModuleError("sequence is not a short exact sequence of modules")


def split_sequence(X: Module, Y: Module) -> ShortExactSequence:
    """``0 -> X -> X ⊕ Y -> Y -> 0``."""
    S = direct_sum(X, Y)
    f = np.zeros((S.dim, X.dim), dtype=np.int64)
    f[: X.dim] = np.eye(X.dim, dtype=np.int64)
    g = np.zeros((Y.dim, S.dim), dtype=np.int64)
    g[:, X.dim:] = np.eye(Y.dim, dtype=np.int64)
    return ShortExactSequence(X, S, Y, f, g)


class Ext1Space:
    """``Ext^1(M, N) = Hom(Omega M, N) / (maps restricted from P_0)``."""

    def __init__(self, M: Module, N: Module):
        _same_algebra(M, N)
        self.M, self.N = M, N
        p = M.p
        self.cover = projective_cover(M)
        omega, inc = self.cover.kernel, self.cover.inclusion
        hom = hom_basis(omega, N)
        self._shape = (N.dim, omega.dim)
        width = N.dim * omega.dim
        self._quot = None
        if hom.shape[0]:
            flat = hom.reshape(hom.shape[0], width)
            restricted = [((h @ inc) % p).reshape(-1) for h in hom_basis(self.cover.P, N)]
            rflat = np.array(restricted, dtype=np.int64).reshape(len(restricted), width)
            self._quot = la.QuotientSpace(flat, rflat, p)
        self.dim = self._quot.dim if self._quot is not None else 0

    def cocycle(self, coords) -> np.ndarray:
        """Representative map ``Omega M -> N`` for the given coordinates."""
        coords = np.asarray(coords, dtype=np.int64)
        if self.dim == 0:
            return np.zeros(self._shape, dtype=np.int64)
        return ((coords @ self._quot.reps) % self.M.p).reshape(self._shape)

    def coords_of(self, phi: np.ndarray) -> np.ndarray:
        if self.dim == 0:
            return np.zeros(0, dtype=np.int64)
        return self._quot.coords(np.asarray(phi, dtype=np.int64).reshape(-1))

    def classes(self) -> list["ExtClass"]:
        return [ExtClass(self, np.eye(self.dim, dtype=np.int64)[k]) for k in range(self.dim)]


@dataclass(frozen=True, eq=False)
class ExtClass:
    space: Ext1Space
    coords: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coords, dtype=np.int64) % self.space.M.p
        c.setflags(write=False)
        object.__setattr__(self, "coords", c)

    @property
    def source(self) -> Module:
        return self.space.M

    @property
    def target(self) -> Module:
        return self.space.N

    def is_zero(self) -> bool:
        return not self.coords.any()

    def normalized(self) -> "ExtClass":
        """Scale so that the first nonzero coordinate is 1."""
        nz = np.flatnonzero(self.coords)
        if nz.size == 0:
            return self
        s = la.inv_mod(int(self.coords[nz[0]]), self.space.M.p)
        return ExtClass(self.space, self.coords * s)

    @property
    def cocycle(self) -> np.ndarray:
        return self.space.cocycle(self.coords)


def ext1(M: Module, N: Module) -> Ext1Space:
    return Ext1Space(M, N)


def ext1_dim(M: Module, N: Module) -> int:
    return ext1(M, N).dim


def extension_middle(delta: ExtClass) -> ShortExactSequence:
    """Pushout of ``0 -> Omega M -> P_0 -> M -> 0`` along the cocycle of ``delta``.

    For ``delta`` in ``Ext^1(M, N)`` the result is ``0 -> N -> L -> M -> 0``.
    """
    if delta.is_zero():
        raise ModuleError("the zero class gives the split extension")
    delta = delta.normalized()
    sp = delta.space
    M, N, cov = sp.M, sp.N, sp.cover
    p = M.p
    phi = delta.cocycle
    S = direct_sum(N, cov.P)
    rel = np.vstack([(-phi) % p, cov.inclusion]).T  # rows: images of Omega basis
    L, proj = quotient(S, rel)
    f = proj[:, : N.dim]
    to_m = np.hstack([np.zeros((M.dim, N.dim), dtype=np.int64), cov.epi])
    reps = la.QuotientSpace(np.eye(S.dim, dtype=np.int64), rel, p).rep_indices
    g = to_m[:, reps] % p
    return ShortExactSequence(N, L.renamed(f"E({M.name},{N.name})"), M, f % p, g)


def extension_class(ses: ShortExactSequence) -> ExtClass:
    """Class in ``Ext^1(right, left)`` of a short exact sequence."""
    sp = Ext1Space(ses.right, ses.left)
    cov = sp.cover
    p = ses.middle.p
    h = lift_through_epi(cov.free, ses.g, ses.middle, cov.epi)
    hk = (h @ cov.inclusion) % p
    phi = la.solve(ses.f, hk, p)
    if phi is None:
        raise ModuleError("lifted map does not land in the left term")
    return ExtClass(sp, sp.coords_of(phi))


# ---------------------------------------------------------------------------
# Resolutions and higher Ext


@dataclass(frozen=True, eq=False)
class Resolution:
    """Minimal projective resolution ``... -> P_1 -> P_0 -> M``."""

    module: Module
    terms: tuple  # FreeModule for each degree
    differentials: tuple  # d_k: P_k -> P_{k-1}, for k >= 1
    augmentation: np.ndarray  # P_0 -> M


def projective_resolution(M: Module, length: int = 4) -> Resolution:
    cov = projective_cover(M)
    terms, diffs = [cov.free], []
    K, inc = cov.kernel, cov.inclusion
    for _ in range(length):
        c = projective_cover(K)
        terms.append(c.free)
        diffs.append((inc @ c.epi) % M.p)
        K, inc = c.kernel, c.inclusion
    return Resolution(M, tuple(terms), tuple(diffs), cov.epi)


def _hom_from_free_matrix(F_src: FreeModule, F_tgt: FreeModule, d: np.ndarray, N: Module) -> np.ndarray:
    """Matrix of ``Hom(F_tgt, N) -> Hom(F_src, N)`` given by precomposition with ``d``.

    ``Hom(F, N)`` is identified with ``⊕_k e_{v_k} N`` through generator images.
    """
    tgt_blocks = [N.block(v) for v in F_tgt.vertices]
    src_blocks = [N.block(v) for v in F_src.vertices]
    t_off = np.concatenate([[0], np.cumsum([len(b) for b in tgt_blocks])]).astype(int)
    s_off = np.concatenate([[0], np.cumsum([len(b) for b in src_blocks])]).astype(int)
    out = np.zeros((int(s_off[-1]), int(t_off[-1])), dtype=np.int64)
    for g, pos in enumerate(F_src.gen_pos):
        col = d[:, pos]
        for idx in np.flatnonzero(col):
            j, b = F_tgt.source[idx]
            blk = N.action[b][np.ix_(src_blocks[g], tgt_blocks[j])]
            out[s_off[g]:s_off[g + 1], t_off[j]:t_off[j + 1]] += int(col[idx]) * blk
    return out % N.p


def ext_dims(M: Module, N: Module, top: int = 3, resolution: Optional[Resolution] = None) -> list[int]:
    """``[dim Ext^i(M, N) for i = 0..top]`` from a minimal projective resolution."""
    _same_algebra(M, N)
    res = resolution or projective_resolution(M, top + 1)
    p = M.p
    sizes = [sum(len(N.block(v)) for v in F.vertices) for F in res.terms]
    D = [np.zeros((sizes[0], 0), dtype=np.int64)]  # into Hom(P_0, N) from nothing
    for k in range(1, top + 2):
        D.append(_hom_from_free_matrix(res.terms[k], res.terms[k - 1], res.differentials[k - 1], N))
    out = []
    for i in range(top + 1):
        nxt = D[i + 1]
        ker = sizes[i] - (la.rank(nxt, p) if nxt.size else 0)
        prev = D[i]
        im = la.rank(prev, p) if prev.size else 0
        out.append(ker - im)
    return out


def resolve_and_ext_dims(M: Module, N: Module, k: int = 3) -> list[int]:
    return ext_dims(M, N, k)


def euler_form_1(M: Module, N: Module) -> int:
    """``dim Hom(M, N) - dim Ext^1(M, N)``."""
    return hom_dim(M, N) - ext1_dim(M, N)


def euler_form_a(M: Module, N: Module) -> int:
    return euler_form_1(M, N) - euler_form_1(N, M)


def euler_form_3(M: Module, N: Module) -> int:
    """Alternating sum of ``dim Ext^i(M, N)`` for ``i = 0..3``."""
    d = ext_dims(M, N, 3)
    return d[0] - d[1] + d[2] - d[3]


# ---------------------------------------------------------------------------
# Endomorphisms, decomposition, isomorphism


def endomorphism_basis(M: Module) -> np.ndarray:
    return hom_basis(M, M)


def _nil_part(M: Module, E: np.ndarray) -> Optional[np.ndarray]:
    """Nilpotent parts ``f - c`` of the basis of End(M), or None if some f has two eigenvalues."""
    p, d = M.p, M.dim
    eye = np.eye(d, dtype=np.int64)
    out = []
    for f in E:
        c = la.single_eigenvalue(f, p)
        if c is None:
            return None
        out.append((f - c * eye) % p)
    return np.array(out).reshape(-1, d, d)


def is_local(M: Module) -> bool:
    """End(M) is local with residue field F_p."""
    if M.dim == 0:
        return False
    p, d = M.p, M.dim
    E = endomorphism_basis(M)
    if E.shape[0] == 1:
        return True
    nil = _nil_part(M, E)
    if nil is None:
        return False
    W = la.row_basis(nil.reshape(len(nil), -1), p, d * d)
    if W.shape[0] != E.shape[0] - 1:
        return False
    # W must be a nilpotent ideal: powers of W shrink to zero
    current = W
    for _ in range(d + 1):
        if current.shape[0] == 0:
            return True
        prods = [(x.reshape(d, d) @ w.reshape(d, d)).reshape(-1) % p for x in current for w in W]
        nxt = la.row_basis(np.array(prods), p, d * d)
        sub = la.Subspace(W, p)
        if not all(sub.contains(v) for v in nxt):
            return False
        current = nxt
    return current.shape[0] == 0


def _fitting_split(M: Module, psi: np.ndarray):
    p, d = M.p, M.dim
    power = la.matrix_power(psi, d, p)
    ker = la.kernel(power, p)
    if 0 < ker.shape[0] < d:
        return ker, image_basis(power, p)
    return None


def decompose_with_inclusions(M: Module, rng: Optional[np.random.Generator] = None,
                              budget: int = 32) -> list[tuple[Module, np.ndarray]]:
    """Indecomposable summands of ``M`` with inclusion matrices ``piece -> M``.

    Splits by Fitting decompositions of random endomorphisms; raises
    :class:`DecompositionFailure` if ``budget`` draws do not split a module
    whose endomorphism ring is not local.
    """
    if rng is None:
        rng = np.random.default_rng(0)
    if M.dim == 0:
        return []
    p, d = M.p, M.dim
    E = endomorphism_basis(M)
    if E.shape[0] == 1 or is_local(M):
        return [(M, np.eye(d, dtype=np.int64))]
    eye = np.eye(d, dtype=np.int64)
    for _ in range(budget):
        coeffs = rng.integers(0, p, size=E.shape[0])
        phi = np.einsum("k,kij->ij", coeffs, E) % p
        split = None
        for lam in la.eigenvalues(phi, p):
            split = _fitting_split(M, (phi - lam * eye) % p)
            if split is not None:
                break
        if split is None:
            continue
        out = []
        for basis in split:
            piece, inc = submodule(M, basis)
            for sub, sub_inc in decompose_with_inclusions(piece, rng, budget):
                out.append((sub, (inc @ sub_inc) % p))
        return out
    raise DecompositionFailure(
        f"no splitting endomorphism of {M!r} found in {budget} draws; try a larger prime"
    )


def decompose(M: Module, rng: Optional[np.random.Generator] = None, budget: int = 32) -> list[Module]:
    return [piece for piece, _ in decompose_with_inclusions(M, rng, budget)]


def _iso_indecomposable(M: Module, N: Module) -> Optional[np.ndarray]:
    """An isomorphism ``M -> N`` when ``M`` is indecomposable, else None."""
    if M.dim_vector != N.dim_vector:
        return None
    p = M.p
    F = hom_basis(M, N)
    if F.shape[0] == 0:
        return None
    G = hom_basis(N, M)
    # End(M) is local: some g f is invertible iff M is a summand of N
    for f in F:
        for g in G:
            if la.rank((g @ f) % p, p) == M.dim:
                return f
    return None


def isomorphism(M: Module, N: Module, rng: Optional[np.random.Generator] = None) -> Optional[np.ndarray]:
    """An invertible intertwiner ``M -> N`` or None."""
    _same_algebra(M, N)
    if M.dim_vector != N.dim_vector:
        return None
    if M.dim == 0:
        return np.zeros((0, 0), dtype=np.int64)
    mp = decompose_with_inclusions(M, rng)
    nq = decompose_with_inclusions(N, rng)
    if len(mp) != len(nq):
        return None
    p = M.p
    # assemble an isomorphism piece by piece
    used = set()
    total = np.zeros((N.dim, M.dim), dtype=np.int64)
    m_proj = _projections(M, [inc for _, inc in mp])
    for (piece, _), proj in zip(mp, m_proj):
        for k, (other, inc) in enumerate(nq):
            if k in used:
                continue
            f = _iso_indecomposable(piece, other)
            if f is not None:
                used.add(k)
                total = (total + inc @ f @ proj) % p
                break
        else:
            return None
    return total


def _projections(M: Module, incs: list[np.ndarray]) -> list[np.ndarray]:
    """Projections onto summands given inclusions of a direct sum decomposition."""
    joint = np.hstack(incs)
    inv = la.inverse(joint, M.p)
    out, off = [], 0
    for inc in incs:
        k = inc.shape[1]
        out.append(inv[off:off + k])
        off += k
    return out


def is_isomorphic(M: Module, N: Module) -> bool:
    return isomorphism(M, N) is not None


def is_projective(M: Module) -> bool:
    """``M`` is projective iff its projective cover is an isomorphism."""
    return projective_cover(M).P.dim == M.dim
