"""Invariant suites over a fixture, collected into a deterministic report."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from . import exact_linalg as la
from .algebra import is_self_injective
from .character import CharacterEngine, PreconditionError
from .fixtures import Fixture, RunConfig, load_fixture
from .frobenius import StableHom, higher_ext_check, strip_projectives, suspend, desuspend
from .grassmann import euler_table
from .laurent import LaurentPoly
from .modules import (
    Module,
    direct_sum,
    ext1_dim,
    hom_basis,
    is_isomorphic,
    syzygy,
    zero_module,
)
from .tilting import TiltingError, verify_cluster_tilting

GROUPS = ("structure", "index", "phi", "characters", "multiplication", "specialize", "condition-tt", "grassmann")
SELECTIONS = {
    "multiplication": ("multiplication",),
    "condition-tt": ("condition-tt",),
    "specialize": ("specialize",),
    "all": GROUPS,
}


@dataclass
class Check:
    group: str
    name: str
    cases: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def record(self, ok: bool, **data):
        self.cases += 1
        if not ok:
            self.failures.append({k: str(v) for k, v in data.items()})

    def as_dict(self) -> dict:
        return {"group": self.group, "name": self.name, "ok": self.ok, "cases": self.cases, "failures": self.failures}


@dataclass
class Report:
    config: dict
    fixture: dict
    checks: list

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def as_dict(self) -> dict:
        return {
            "config": self.config,
            "fixture": self.fixture,
            "checks": [c.as_dict() for c in self.checks],
            "passed": sum(c.ok for c in self.checks),
            "failed": sum(not c.ok for c in self.checks),
            "ok": self.ok,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True, indent=2)

    def to_text(self) -> str:
        cfg = self.config
        lines = [
            f"fixture {self.fixture['name']}: n = {self.fixture['n']}, r = {self.fixture['r']}, "
            f"catalog = {', '.join(self.fixture['catalog'])}",
            f"prime {cfg['prime']}, counting primes {','.join(map(str, cfg['primes']))}, "
            f"enum cap {cfg['enum_cap']}, seed {cfg['seed']}",
        ]
        for c in self.checks:
            lines.append(f"[{'PASS' if c.ok else 'FAIL'}] {c.group}: {c.name} ({c.cases} cases)")
            for f in c.failures[:5]:
                lines.append("    " + ", ".join(f"{k}={v}" for k, v in sorted(f.items())))
        d = self.as_dict()
        lines.append(f"{d['passed']} passed, {d['failed']} failed")
        return "\n".join(lines)


class Suite:
    """All checks for one fixture; each ``check_*`` method returns a :class:`Check`."""

    def __init__(self, fixture: Fixture, engine: CharacterEngine, seed: int = 0):
        self.fx = fixture
        self.cat = fixture.category
        self.td = fixture.tilting
        self.eng = engine
        self.seed = seed
        self.p = fixture.prime
        self._seqs = None

    @property
    def names(self):
        return self.cat.names

    @property
    def objects(self):
        return list(zip(self.cat.names, self.cat.catalog))

    def sequences(self):
        if self._seqs is None:
            self._seqs = self.td.generated_sequences()
        return self._seqs

    def in_add_T(self, M: Module):
        try:
            return self.td.class_in_T(M)
        except TiltingError:
            return None

    # -- structure ----------------------------------------------------------------
    def structure(self) -> list[Check]:
        out = []
        c = Check("structure", "algebra is self-injective")
        c.record(is_self_injective(self.cat.algebra), algebra=self.cat.algebra.name)
        out.append(c)

        c = Check("structure", "first extensions are symmetric (2-Calabi-Yau)")
        m = len(self.cat.catalog)
        for a in range(m):
            for b in range(a, m):
                x, y = self.cat.ext1_dim(a, b), self.cat.ext1_dim(b, a)
                c.record(x == y, pair=(self.names[a], self.names[b]), dims=(x, y))
        out.append(c)

        c = Check("structure", "higher extensions equal first extensions into suspensions")
        for na, A in self.objects:
            for nb, B in self.objects:
                for i in (2, 3):
                    c.record(higher_ext_check(A, B, i), pair=(na, nb), degree=i)
        out.append(c)

        c = Check("structure", "T is cluster-tilting")
        rep = verify_cluster_tilting(self.cat, self.td.indices)
        c.record(rep.ok, diagnostics="; ".join(rep.diagnostics))
        out.append(c)

        c = Check("structure", "stable maps from T to its suspension vanish")
        c2 = Check("structure", "stable maps from the suspension of T to T vanish")
        for i, Ti in enumerate(self.td.T):
            for j, Tj in enumerate(self.td.T):
                pair = (self.td.names[i], self.td.names[j])
                a = StableHom(Ti, suspend(Tj)).dim
                c.record(a == 0, pair=pair, dim=a)
                b = StableHom(suspend(Ti), Tj).dim
                c2.record(b == 0, pair=pair, dim=b)
        out += [c, c2]

        c = Check("structure", "no stable maps into the suspension of T forces Ext^1(M, T) = 0")
        c2 = Check("structure", "no stable maps from the suspension of M to T forces Ext^1(T, M) = 0")
        c3 = Check("structure", "no stable maps from T to the suspension of M forces Ext^1(T, M) = 0")
        for name, M in self.objects:
            if all(StableHom(M, suspend(T)).dim == 0 for T in self.td.T):
                c.record(all(self._ext(M, T) == 0 for T in self.td.T), object=name)
            ext_left = all(self._ext(T, M) == 0 for T in self.td.T)
            if all(StableHom(suspend(M), T).dim == 0 for T in self.td.T):
                c2.record(ext_left, object=name)
            if all(StableHom(T, suspend(M)).dim == 0 for T in self.td.T):
                c3.record(ext_left, object=name)
        out += [c, c2, c3]
        return out

    def _ext(self, A, B) -> int:
        return ext1_dim(A, B)

    # -- index ------------------------------------------------------------------------
    def index(self) -> list[Check]:
        td = self.td
        out = []
        c = Check("index", "index and opposite index are additive on direct sums")
        objs = self.objects
        for a in range(len(objs)):
            for b in range(a, len(objs)):
                (na, A), (nb, B) = objs[a], objs[b]
                S = direct_sum(A, B)
                ok = td.index(S) == td.index(A) + td.index(B) and td.op_index(S) == td.op_index(A) + td.op_index(B)
                c.record(ok, pair=(na, nb), index=td.index(S))
        out.append(c)

        c = Check("index", "approximation sequences split the index")
        for label, ses in self.sequences():
            X, L, M = ses.left, ses.middle, ses.right
            Lcls = self.in_add_T(L)
            if Lcls is not None and self._right_approx(ses):
                c.record(td.k0(Lcls) == td.index(X) + td.index(M), sequence=label, side="right")
            if Lcls is not None and self._left_approx(ses):
                c.record(td.k0(Lcls) == td.op_index(X) + td.op_index(M), sequence=label, side="left")
            if all(self._ext(T, X) == 0 for T in td.T):
                c.record(td.index(L) == td.index(X) + td.index(M), sequence=label, side="right-perp")
            if all(self._ext(M, T) == 0 for T in td.T):
                c.record(td.op_index(L) == td.op_index(X) + td.op_index(M), sequence=label, side="left-perp")
        out.append(c)

        c = Check("index", "theta by definition equals theta from opposite indices")
        for name, M in self.objects:
            a, b = td.theta_both(M)
            c.record(a == b, object=name, definition=a, opposite=b)
        out.append(c)

        c = Check("index", "theta vanishes on cones of maps from T to projectives")
        for name, M in self.objects:
            K, _ = strip_projectives(syzygy(M), self.cat.rng())
            if K.dim == 0 or self.in_add_T(K) is not None:
                c.record(td.theta(M).is_zero(), object=name, theta=td.theta(M))
        out.append(c)

        c = Check("index", "theta depends only on H")
        pool = [("0", zero_module(self.cat.algebra))] + self.objects
        pool += [(f"{na}+{nb}", direct_sum(A, B)) for k, (na, A) in enumerate(self.objects) for nb, B in self.objects[k:]]
        H = [(name, td.H_module(M), td.theta(M)) for name, M in pool]
        for a in range(len(H)):
            for b in range(a + 1, len(H)):
                (na, Ha, ta), (nb, Hb, tb) = H[a], H[b]
                if Ha.dim_vector == Hb.dim_vector and (Ha.dim == 0 or is_isomorphic(Ha, Hb)):
                    c.record(ta == tb, pair=(na, nb), thetas=(ta, tb))
        out.append(c)

        c = Check("index", "F-surjective deflations make the index additive")
        c2 = Check("index", "H-surjective deflations are F-surjective, H-injective inflations are F-injective")
        for label, ses in self.sequences():
            r = td.check_index_additivity(ses)
            if r.f_epi:
                c.record(r.lhs.is_zero(), sequence=label, defect=r.lhs)
            Hg = td.H_map(ses.middle, ses.right, ses.g)
            Hf = td.H_map(ses.left, ses.middle, ses.f)
            if _surjective(Hg, self.p):
                c2.record(r.f_epi, sequence=label, map="deflation")
            if _injective(Hf, self.p):
                c2.record(_injective(td.F_map(ses.left, ses.middle, ses.f), self.p), sequence=label, map="inflation")
        out += [c, c2]
        return out

    def _right_approx(self, ses) -> bool:
        return _surjective(self.td.F_map(ses.middle, ses.right, ses.g), self.p)

    def _left_approx(self, ses) -> bool:
        p = self.p
        for T in self.td.T:
            target = hom_basis(ses.left, T)
            pulled = [(h @ ses.f) % p for h in hom_basis(ses.middle, T)]
            have = la.rank(np.array([x.reshape(-1) for x in pulled]), p) if pulled else 0
            if have != target.shape[0]:
                return False
        return True

    # -- Φ -------------------------------------------------------------------------------
    def phi(self) -> list[Check]:
        td = self.td
        out = []
        c = Check("phi", "the linear system for phi over the catalog is consistent")
        try:
            phi = td.phi_matrix
            c.record(True)
        except ValueError as exc:
            c.record(False, error=exc)
            return [c]
        out.append(c)

        c = Check("phi", "alternating index sums equal phi of the cokernel of H(g)")
        for label, ses in self.sequences():
            r = td.check_index_additivity(ses)
            c.record(r.lhs == r.rhs, sequence=label, lhs=r.lhs, rhs=r.rhs)
        out.append(c)

        c = Check("phi", "theta is additive on sequences that H makes short exact")
        for label, ses in self.sequences():
            Hf = td.H_map(ses.left, ses.middle, ses.f)
            Hg = td.H_map(ses.middle, ses.right, ses.g)
            if _injective(Hf, self.p) and _surjective(Hg, self.p):
                eta = td.theta(ses.left) - td.theta(ses.middle) + td.theta(ses.right)
                c.record(eta.is_zero(), sequence=label, eta=eta)
        out.append(c)

        c = Check("phi", "phi on the stable category is the sum of stable indices of M and its desuspension")
        r = td.r
        for name, M in self.objects:
            h = np.array(td.H_module(M).dim_vector, dtype=np.int64)
            lhs = tuple(int(x) for x in (phi[:r] @ h))
            rhs = td.stable_index(desuspend(M)) + td.stable_index(M)
            c.record(lhs == rhs.coords, object=name, phi=lhs, indices=rhs)
        out.append(c)
        return out

    # -- characters -----------------------------------------------------------------------
    def characters(self) -> list[Check]:
        td, eng = self.td, self.eng
        out = []
        c = Check("characters", "summands of T have character x_i")
        for i, T in enumerate(td.T):
            x = LaurentPoly.variable(i + 1, td.n)
            c.record(eng.cluster_character(T) == x and eng.fu_keller_character(T) == x, summand=td.names[i])
        out.append(c)

        c = Check("characters", "characters are multiplicative on direct sums")
        m = len(self.cat.catalog)
        for a in range(m):
            for b in range(a, m):
                direct = eng.cluster_character_of_sum([a, b])
                prod = eng.cluster_character(self.cat.catalog[a]) * eng.cluster_character(self.cat.catalog[b])
                c.record(direct == prod, pair=(self.names[a], self.names[b]), direct=direct, product=prod)
        out.append(c)

        c = Check("characters", "characters are invariant under change of basis")
        rng = np.random.default_rng(self.seed)
        for name, M in self.objects:
            N = _random_base_change(M, rng)
            c.record(eng.cluster_character(N) == eng.cluster_character(M), object=name)
        out.append(c)

        c = Check("characters", "the truncated-form prefix equals the index")
        for name, M in self.objects:
            pre = eng.fu_keller_prefix(M)
            c.record(pre == td.index(M).coords, object=name, prefix=pre, index=td.index(M))
        out.append(c)

        c = Check("characters", "H of the suspension and Ext^1(T, -) agree as C-modules")
        for k, (name, M) in enumerate(self.objects):
            G, E = td.H_module(suspend(M)), td.ext_module(M)
            iso = G.dim_vector == E.dim_vector and (G.dim == 0 or is_isomorphic(G, E))
            lattices = eng.lattice_counts("sigma", k) == eng.lattice_counts("ext", k)
            c.record(iso and lattices, object=name, dims=(G.dim_vector, E.dim_vector))
        out.append(c)
        return out

    def multiplication(self) -> list[Check]:
        c = Check("multiplication", "exchange relation for one-dimensional extensions")
        for a, b in self.eng.multiplication_pairs():
            for N, M in ((self.cat.catalog[a], self.cat.catalog[b]), (self.cat.catalog[b], self.cat.catalog[a])):
                v = self.eng.check_multiplication(N, M)
                c.record(v.ok, pair=(v.N, v.M), product=v.product, L=v.L, L_prime=v.L_prime, sum=v.total)
        return [c]

    def specialize(self) -> list[Check]:
        td, eng = self.td, self.eng
        c1 = Check("specialize", "specialized character equals the stable character of the suspension")
        c2 = Check("specialize", "specializations of the two characters agree")
        for name, M in self.objects:
            v = eng.check_specialization(M)
            c1.record(v.x_value == v.palu_value, object=name, specialized=v.x_value, stable=v.palu_value)
            c2.record(v.x_value == v.fu_value, object=name, x=v.x_value, fu=v.fu_value)
        c3 = Check("specialize", "index and stable index agree on non-projective summands")
        c4 = Check("specialize", "antisymmetric form on simples of C matches minus phi")
        r = td.r
        form = eng.form_a()
        for name, M in self.objects:
            a, b = td.index(M).coords[:r], td.stable_index(M).coords
            c3.record(a == b, object=name, index=a, stable=b)
            e = np.array(td.H_module(M).dim_vector, dtype=np.int64)
            lhs = tuple(int(x) for x in form @ e)
            rhs = tuple(-int(x) for x in td.phi_matrix[:r] @ e)
            c4.record(lhs == rhs, object=name, form=lhs, phi=rhs)
        return [c1, c2, c3, c4]

    def condition_tt(self) -> list[Check]:
        c1 = Check("condition-tt", "projective exponents match the truncated Euler form")
        c2 = Check("condition-tt", "the two characters agree exactly when the condition holds")
        for k, (name, M) in enumerate(self.objects):
            if k in self.td.indices:
                continue
            v = self.eng.check_condition_tt(M)
            for row in v.rows:
                c1.record(row.ok, object=name, cls=row.cls, summand=self.td.names[row.vertex],
                          phi=row.phi_value, form=row.form_value)
            c2.record(v.consistent, object=name, condition=v.holds, equal=v.characters_equal)
        c3 = Check("condition-tt", "the two characters are equal on the catalog")
        for name, M in self.objects:
            x, y = self.eng.cluster_character(M), self.eng.fu_keller_character(M)
            c3.record(x == y, object=name, x=x, fu=y)
        return [c1, c2, c3]

    def grassmann(self) -> list[Check]:
        eng = self.eng
        c1 = Check("grassmann", "Euler characteristics sum to the total count at q = 1")
        c2 = Check("grassmann", "Euler characteristics convolve over direct sums")
        tables = {}
        for k, name in enumerate(self.names):
            t = eng.table("sigma", k)
            tables[k] = t
            c1.record(sum(t.chi.values()) == t.total_polynomial()(1), object=name)
        for a in tables:
            for b in tables:
                if b < a:
                    continue
                ta, tb = tables[a], tables[b]
                conv: dict = {}
                for e1, x1 in ta.chi.items():
                    for e2, x2 in tb.chi.items():
                        e = tuple(i + j for i, j in zip(e1, e2))
                        conv[e] = conv.get(e, 0) + x1 * x2
                conv = {e: v for e, v in conv.items() if v}

                def build(q, a=a, b=b):
                    fx = self.fx.at_prime(q)
                    cat = fx.category
                    return fx.tilting.H_module(suspend(direct_sum(cat.catalog[a], cat.catalog[b])))

                direct = {e: v for e, v in euler_table(build, eng.primes, eng.cap).chi.items() if v}
                c2.record(direct == conv, pair=(self.names[a], self.names[b]))
        return [c1, c2]

    def run(self, groups) -> list[Check]:
        out = []
        for g in GROUPS:
            if g in groups:
                out += getattr(self, g.replace("-", "_"))()
        return out


def _surjective(m: np.ndarray, p: int) -> bool:
    return m.shape[0] == 0 or (m.size > 0 and la.rank(m, p) == m.shape[0])


def _injective(m: np.ndarray, p: int) -> bool:
    return m.shape[1] == 0 or (m.size > 0 and la.rank(m, p) == m.shape[1])


def _random_base_change(M: Module, rng) -> Module:
    """An isomorphic copy of ``M`` under a random vertex-preserving change of basis."""
    p = M.p
    g = np.zeros((M.dim, M.dim), dtype=np.int64)
    for v in range(M.algebra.nvertices):
        idx = M.block(v)
        while idx:
            blk = rng.integers(0, p, size=(len(idx), len(idx)))
            if la.rank(blk, p) == len(idx):
                g[np.ix_(idx, idx)] = blk
                break
    gi = la.inverse(g, p)
    act = np.einsum("ij,ajk,kl->ail", g, M.action, gi) % p
    return Module(M.algebra, M.vertex, act, M.name + "'")


def fixture_summary(fx: Fixture) -> dict:
    td = fx.tilting
    return {"name": fx.name, "n": td.n, "r": td.r, "catalog": list(fx.category.names), "tilting": list(td.names)}


def run_verify(config: RunConfig, groups=GROUPS, fixture: Optional[Fixture] = None) -> Report:
    """Run the selected suites; failures become report content, never exceptions."""
    fx = fixture or load_fixture(config.fixture, config.prime, config.seed)
    eng = CharacterEngine(fx, config.primes, config.enum_cap)
    suite = Suite(fx, eng, config.seed)
    checks = []
    for g in GROUPS:
        if g not in groups:
            continue
        try:
            checks += getattr(suite, g.replace("-", "_"))()
        except (ValueError, ArithmeticError, RuntimeError, AssertionError) as exc:
            c = Check(g, "suite completed")
            c.record(False, error=f"{type(exc).__name__}: {exc}")
            checks.append(c)
    return Report(config.as_dict(), fixture_summary(fx), checks)
