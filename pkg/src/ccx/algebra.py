"""Basic finite-dimensional algebras over F_p.

An :class:`Algebra` is given by structure constants in a basis that is
*adapted*: every basis vector lies in a single block ``e_t A e_s`` and the
primitive idempotents ``e_1 .. e_m`` are themselves basis vectors.  The
non-idempotent basis vectors span the Jacobson radical.

Products follow the left-module convention: ``a * b`` means "first ``b``, then
``a``".  For a quiver, the path ``["b", "a"]`` is the product ``b*a``, i.e. the
arrow ``a`` is traversed first.  An arrow ``x: i -> j`` lies in ``e_j A e_i``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from . import exact_linalg as la


class AlgebraError(ValueError):
    pass


class InfiniteDimensional(AlgebraError):
    pass


class NonAdmissibleRelation(AlgebraError):
    pass


class SingularCartan(AlgebraError):
    pass


@dataclass(frozen=True)
class Quiver:
    vertices: tuple
    arrows: tuple  # (name, source, target)

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(str(v) for v in self.vertices))
        arrows = tuple((str(n), str(s), str(t)) for n, s, t in self.arrows)
        object.__setattr__(self, "arrows", arrows)
        if len(set(self.vertices)) != len(self.vertices):
            raise AlgebraError("duplicate vertex labels")
        names = [a[0] for a in arrows]
        if len(set(names)) != len(names):
            raise AlgebraError("duplicate arrow names")
        for n, s, t in arrows:
            if s not in self.vertices or t not in self.vertices:
                raise AlgebraError(f"arrow {n} has an unknown endpoint")

    def vertex_index(self, v) -> int:
        return self.vertices.index(str(v))

    def arrow(self, name: str) -> tuple:
        for a in self.arrows:
            if a[0] == name:
                return a
        raise AlgebraError(f"unknown arrow {name!r}")


@dataclass(frozen=True, eq=False)
class Algebra:
    p: int
    labels: tuple
    mult: np.ndarray
    vertices: tuple
    idempotents: tuple
    blocks: tuple  # (target_vertex, source_vertex) for each basis vector
    generators: tuple = ()
    name: str = ""
    quiver: Optional[Quiver] = field(default=None, compare=False)
    words: tuple = ()  # arrow words of the basis paths, when built from a quiver

    def __post_init__(self):
        la.check_prime(self.p)
        mult = np.asarray(self.mult, dtype=np.int64) % self.p
        mult.setflags(write=False)
        object.__setattr__(self, "mult", mult)
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "idempotents", tuple(int(i) for i in self.idempotents))
        object.__setattr__(self, "blocks", tuple((int(t), int(s)) for t, s in self.blocks))
        if not self.generators:
            object.__setattr__(self, "generators", tuple(self.radical_indices))
        object.__setattr__(self, "generators", tuple(int(g) for g in self.generators))
        self._validate()

    # basic data ------------------------------------------------------------
    @property
    def dim(self) -> int:
        return len(self.labels)

    @property
    def nvertices(self) -> int:
        return len(self.vertices)

    @property
    def radical_indices(self) -> list[int]:
        idem = set(self.idempotents)
        return [b for b in range(self.dim) if b not in idem]

    def block_indices(self, target: int, source: int) -> list[int]:
        return [b for b, blk in enumerate(self.blocks) if blk == (target, source)]

    def product(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        """Product of two elements given as coordinate vectors."""
        return np.einsum("i,j,ijk->k", x, y, self.mult) % self.p

    def unit(self) -> np.ndarray:
        u = np.zeros(self.dim, dtype=np.int64)
        u[list(self.idempotents)] = 1
        return u

    def opposite(self) -> "Algebra":
        """The opposite algebra; cached so that ``A.opposite().opposite() is A``."""
        cached = self.__dict__.get("_opposite")
        if cached is None:
            cached = Algebra(
                self.p,
                self.labels,
                np.transpose(self.mult, (1, 0, 2)),
                self.vertices,
                self.idempotents,
                tuple((s, t) for t, s in self.blocks),
                self.generators,
                name=f"{self.name}^op" if self.name else "",
            )
            self.__dict__["_opposite"] = cached
            cached.__dict__["_opposite"] = self
        return cached

    # validation ------------------------------------------------------------
    def _validate(self):
        d, p, m = self.dim, self.p, self.mult
        if m.shape != (d, d, d):
            raise AlgebraError(f"structure constants have shape {m.shape}, expected {(d, d, d)}")
        if len(self.blocks) != d:
            raise AlgebraError("one block label per basis vector is required")
        if len(self.idempotents) != self.nvertices:
            raise AlgebraError("one idempotent per vertex is required")
        eye = np.eye(d, dtype=np.int64)
        for i, ei in enumerate(self.idempotents):
            if self.blocks[ei] != (i, i):
                raise AlgebraError(f"idempotent {self.labels[ei]} is not in block ({i},{i})")
            for j, ej in enumerate(self.idempotents):
                want = eye[ei] if i == j else np.zeros(d, dtype=np.int64)
                if not np.array_equal(m[ei, ej], want):
                    raise AlgebraError(f"e{i + 1} e{j + 1} has the wrong value")
        for b, (t, s) in enumerate(self.blocks):
            et, es = self.idempotents[t], self.idempotents[s]
            if not np.array_equal(m[et, b], eye[b]) or not np.array_equal(m[b, es], eye[b]):
                raise AlgebraError(f"basis vector {self.labels[b]} is not in block {(t, s)}")
        # products land in the expected blocks
        for a in range(d):
            for b in range(d):
                if self.blocks[a][1] != self.blocks[b][0] and m[a, b].any():
                    raise AlgebraError(f"{self.labels[a]}*{self.labels[b]} should vanish")
        left = np.einsum("abk,kcl->abcl", m, m) % p
        right = np.einsum("bck,akl->abcl", m, m) % p
        if not np.array_equal(left, right):
            bad = np.argwhere((left != right).any(axis=-1))[0]
            names = ", ".join(self.labels[i] for i in bad)
            raise AlgebraError(f"multiplication is not associative on ({names})")
        for b in self.radical_indices:
            t, s = self.blocks[b]
            if t == s and not la.nilpotent(self.left_matrix(b), p):
                raise AlgebraError(f"basis vector {self.labels[b]} is not in the radical")

    def left_matrix(self, b: int) -> np.ndarray:
        """Matrix of left multiplication by basis vector ``b``."""
        return self.mult[b].T.copy()

    def __repr__(self):
        return f"Algebra({self.name or 'unnamed'}, dim={self.dim}, vertices={self.nvertices}, p={self.p})"


# ---------------------------------------------------------------------------
# Path algebras with relations


def _paths(quiver: Quiver, max_len: int) -> list[tuple]:
    """All paths of length <= max_len as (target, source, arrows) in product order."""
    nv = len(quiver.vertices)
    arrows = [(n, quiver.vertex_index(s), quiver.vertex_index(t)) for n, s, t in quiver.arrows]
    out = [(v, v, ()) for v in range(nv)]
    frontier = [(v, v, ()) for v in range(nv)]
    for _ in range(max_len):
        nxt = []
        for t, s, word in frontier:
            for name, a_s, a_t in arrows:
                if a_s == t:
                    nxt.append((a_t, s, (name,) + word))
        nxt.sort(key=lambda q: (q[2], q[1]))
        out.extend(nxt)
        frontier = nxt
    return out


def _path_label(quiver: Quiver, path: tuple) -> str:
    t, s, word = path
    if not word:
        return f"e{quiver.vertices[s]}"
    return "".join(word)


def build_algebra(
    quiver: Quiver,
    relations: Sequence[Sequence[tuple]],
    p: int = 101,
    max_length: int = 24,
    name: str = "",
) -> Algebra:
    """Path algebra of ``quiver`` modulo the ideal generated by ``relations``.

    Each relation is a list of ``(coeff, path)`` with ``path`` a sequence of
    arrow names in product order.  The ideal is computed by linear elimination
    in ``kQ / J^(L+1)`` for growing ``L`` until all paths of length ``L`` lie
    in it.  Relations must be admissible: uniform, and inside ``J^2``.
    """
    p = la.check_prime(p)
    rels = []
    for r in relations:
        terms = []
        ends = set()
        for coeff, path in r:
            path = tuple(str(x) for x in path)
            if len(path) < 2:
                raise NonAdmissibleRelation(f"relation term {path} has length < 2")
            for x, y in zip(path, path[1:]):
                # y is applied first, then x
                if quiver.arrow(y)[2] != quiver.arrow(x)[1]:
                    raise AlgebraError(f"path {path} is not composable")
            t = quiver.vertex_index(quiver.arrow(path[0])[2])
            s = quiver.vertex_index(quiver.arrow(path[-1])[1])
            ends.add((t, s))
            terms.append((int(coeff) % p, (t, s, path)))
        if len(ends) > 1:
            raise NonAdmissibleRelation(f"relation {r} mixes paths with different endpoints")
        terms = [(c, q) for c, q in terms if c]
        if terms:
            rels.append(terms)

    for L in range(1, max_length + 1):
        paths = _paths(quiver, L)
        # longest paths first, so pivots of the ideal prefer long paths
        order = sorted(range(len(paths)), key=lambda i: (-len(paths[i][2]), i))
        paths = [paths[i] for i in order]
        index = {q: i for i, q in enumerate(paths)}
        rows = []
        for rel in rels:
            t0, s0 = rel[0][1][0], rel[0][1][1]
            minlen = min(len(q[2]) for _, q in rel)
            for u in paths:
                if u[1] != t0 or len(u[2]) + minlen > L:
                    continue
                for w in paths:
                    if w[0] != s0 or len(u[2]) + len(w[2]) + minlen > L:
                        continue
                    row = np.zeros(len(paths), dtype=np.int64)
                    for c, q in rel:
                        word = u[2] + q[2] + w[2]
                        if len(word) <= L:
                            row[index[(u[0], w[1], word)]] += c
                    if row.any():
                        rows.append(row % p)
        ideal = la.row_basis(np.array(rows), p, len(paths)) if rows else np.zeros((0, len(paths)), dtype=np.int64)
        top = [i for i, q in enumerate(paths) if len(q[2]) == L]
        if top:
            extra = np.eye(len(paths), dtype=np.int64)[top]
            if la.rank(np.vstack([ideal, extra]), p) != ideal.shape[0]:
                continue
        return _quotient_algebra(quiver, paths, ideal, p, name)
    raise InfiniteDimensional(
        f"quotient did not stabilize within path length {max_length}; "
        "the algebra is infinite dimensional or the bound is too small"
    )


def _quotient_algebra(quiver: Quiver, paths: list, ideal: np.ndarray, p: int, name: str) -> Algebra:
    _, pivots = la.rref(ideal, p) if ideal.shape[0] else (None, [])
    pivset = set(pivots)
    keep = [i for i in range(len(paths)) if i not in pivset]
    keep.sort(key=lambda i: (len(paths[i][2]), paths[i][2], paths[i][1]))
    basis_paths = [paths[i] for i in keep]
    pos = {paths[i]: k for k, i in enumerate(keep)}
    index = {q: i for i, q in enumerate(paths)}
    d = len(keep)

    def normal_form(i: int) -> np.ndarray:
        v = np.zeros(len(paths), dtype=np.int64)
        v[i] = 1
        for k, pc in enumerate(pivots):
            if v[pc]:
                v = (v - v[pc] * ideal[k]) % p
        return v[keep]

    mult = np.zeros((d, d, d), dtype=np.int64)
    for a, qa in enumerate(basis_paths):
        for b, qb in enumerate(basis_paths):
            if qa[1] != qb[0]:
                continue
            word = qa[2] + qb[2]
            key = (qa[0], qb[1], word)
            if key in index:
                mult[a, b] = normal_form(index[key])
    nv = len(quiver.vertices)
    idempotents = [pos[(v, v, ())] for v in range(nv)]
    blocks = [(q[0], q[1]) for q in basis_paths]
    generators = [pos[q] for q in basis_paths if len(q[2]) == 1]
    labels = [_path_label(quiver, q) for q in basis_paths]
    words = [q[2] for q in basis_paths]
    return Algebra(p, labels, mult, quiver.vertices, idempotents, blocks, generators,
                   name=name, quiver=quiver, words=tuple(words))


def semisimple_algebra(n: int, p: int = 101) -> Algebra:
    """k x k x ... x k with ``n`` factors."""
    mult = np.zeros((n, n, n), dtype=np.int64)
    for i in range(n):
        mult[i, i, i] = 1
    return Algebra(p, [f"e{i + 1}" for i in range(n)], mult, tuple(str(i + 1) for i in range(n)),
                   range(n), [(i, i) for i in range(n)], name=f"k^{n}")


def algebra_from_dict(data: dict, p: Optional[int] = None, name: str = "") -> Algebra:
    quiver = Quiver(
        data["vertices"],
        [(a["name"], a["from"], a["to"]) for a in data.get("arrows", [])],
    )
    relations = [[(t.get("coeff", 1), t["path"]) for t in rel] for rel in data.get("relations", [])]
    prime = p if p is not None else data.get("prime", 101)
    return build_algebra(quiver, relations, prime, data.get("max_length", 24), name=name or data.get("name", ""))


def load_algebra(path, p: Optional[int] = None) -> Algebra:
    path = Path(path)
    return algebra_from_dict(json.loads(path.read_text()), p, name=path.stem)


# ---------------------------------------------------------------------------
# Cartan data and structure


def cartan_matrix(A: Algebra) -> np.ndarray:
    """Entry ``(i, j)`` is ``[P_j : S_i] = dim e_i A e_j``."""
    n = A.nvertices
    c = np.zeros((n, n), dtype=np.int64)
    for t, s in A.blocks:
        c[t, s] += 1
    return c


def euler_matrix(A: Algebra) -> np.ndarray:
    """Transpose of the inverse Cartan matrix.

    Integer entries when the Cartan matrix is unimodular; otherwise an object
    array of ``Fraction``.
    """
    return inverse_transpose(cartan_matrix(A))


def inverse_transpose(c) -> np.ndarray:
    import sympy

    m = sympy.Matrix(np.asarray(c).tolist())
    if m.det() == 0:
        raise SingularCartan("Cartan matrix is singular")
    inv = m.inv().T
    vals = [[Fraction(int(x.p), int(x.q)) for x in inv.row(i)] for i in range(inv.rows)]
    if all(v.denominator == 1 for row in vals for v in row):
        return np.array([[int(v) for v in row] for row in vals], dtype=np.int64)
    return np.array(vals, dtype=object)


def radical_series(A: Algebra) -> list[np.ndarray]:
    """Bases (rows of coordinate vectors) of rad A, rad^2 A, ... ending with 0."""
    d, p = A.dim, A.p
    eye = np.eye(d, dtype=np.int64)
    rad = eye[A.radical_indices] if A.radical_indices else np.zeros((0, d), dtype=np.int64)
    series = [rad]
    current = rad
    while current.shape[0]:
        prods = [A.product(x, y) for x in current for y in rad]
        current = la.row_basis(np.array(prods), p, d) if prods else np.zeros((0, d), dtype=np.int64)
        series.append(current)
    return series


def loewy_length(A: Algebra) -> int:
    return len(radical_series(A))


def socle_vertices(A: Algebra, i: int) -> list[int]:
    """Vertices (with multiplicity) of the simple summands of soc ``A e_i``."""
    col = [b for b, (t, s) in enumerate(A.blocks) if s == i]
    # v in A e_i lies in the socle iff r v = 0 for every radical basis vector r;
    # the conditions respect the vertex grading, so count per vertex
    rows = [A.mult[r][np.ix_(col, col)].T for r in A.radical_indices]
    out = []
    for t in range(A.nvertices):
        sel = [k for k, b in enumerate(col) if A.blocks[b][0] == t]
        if not sel:
            continue
        if rows:
            system = np.vstack([blk[:, sel] for blk in rows]) % A.p
            free = len(sel) - la.rank(system, A.p)
        else:
            free = len(sel)
        out.extend([t] * free)
    return out


def is_self_injective(A: Algebra) -> bool:
    """True iff every indecomposable projective ``P_i`` is injective.

    ``P_i`` is injective exactly when its socle is a simple ``S_j`` and
    ``dim P_i`` equals ``dim e_j A``, the dimension of the injective envelope
    of ``S_j``.
    """
    c = cartan_matrix(A)
    for i in range(A.nvertices):
        soc = socle_vertices(A, i)
        if len(soc) != 1:
            return False
        j = soc[0]
        if c[:, i].sum() != c[j, :].sum():
            return False
    return True
