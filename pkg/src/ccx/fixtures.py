"""Fixture directories: an algebra, a catalog of indecomposables and a cluster-tilting object.

A fixture directory holds two JSON files.

``algebra.json``
    ``vertices``, ``arrows`` (``name``/``from``/``to``) and ``relations``; each
    relation is a list of ``{"path": [...], "coeff": c}`` terms, where a path
    is written right to left as a composite (``["b", "a"]`` is ``a`` then ``b``).

``catalog.json``
    ``modules`` (``name``, ``dims`` by vertex, ``action`` by arrow), optional
    ``aliases`` and the list ``tilting`` of catalog names forming ``T``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Optional, Sequence

from . import exact_linalg as la
from .algebra import AlgebraError, algebra_from_dict
from .frobenius import CategoryError, FrobeniusCategory
from .grassmann import DEFAULT_CAP, DEFAULT_PRIMES
from .modules import Module, ModuleError, module_from_dict
from .tilting import TiltingData, TiltingError

DEFAULT_PRIME = 101


class FixtureError(ValueError):
    """A fixture cannot be loaded or fails a structural validation."""

    def __init__(self, message: str, pair: Optional[tuple] = None):
        super().__init__(message)
        self.pair = pair


@dataclass(frozen=True)
class RunConfig:
    fixture: str
    prime: int = DEFAULT_PRIME
    primes: tuple = DEFAULT_PRIMES
    enum_cap: int = DEFAULT_CAP
    seed: int = 0
    fmt: str = "text"

    def __post_init__(self):
        la.check_prime(self.prime)
        for q in self.primes:
            la.check_prime(q)
        if self.fmt not in ("text", "json"):
            raise ValueError(f"unknown output format {self.fmt!r}")
        if self.enum_cap < 0:
            raise ValueError("enumeration cap must be non-negative")

    def as_dict(self) -> dict:
        return {
            "fixture": self.fixture,
            "prime": self.prime,
            "primes": list(self.primes),
            "enum_cap": self.enum_cap,
            "seed": self.seed,
        }


def bundled_fixture(name: str = "a2_preprojective") -> Path:
    return Path(str(resources.files("ccx") / "data" / name))


def _read(path: Path) -> dict:
    try:
        return json.loads(path.read_text())
    except FileNotFoundError as exc:
        raise FixtureError(f"missing fixture file {path}") from exc
    except json.JSONDecodeError as exc:
        raise FixtureError(f"{path.name} is not valid JSON: {exc}") from exc


def _require(cond: bool, msg: str):
    if not cond:
        raise FixtureError(msg)


def _check_schema(alg: dict, cat: dict):
    _require(isinstance(alg.get("vertices"), list) and alg["vertices"], "algebra.json: 'vertices' must be a nonempty list")
    for a in alg.get("arrows", []):
        _require(isinstance(a, dict) and {"name", "from", "to"} <= set(a), f"algebra.json: malformed arrow {a!r}")
    for rel in alg.get("relations", []):
        _require(isinstance(rel, list) and rel, f"algebra.json: malformed relation {rel!r}")
        for term in rel:
            _require(isinstance(term, dict) and isinstance(term.get("path"), list), f"algebra.json: malformed term {term!r}")
    mods = cat.get("modules")
    _require(isinstance(mods, list) and mods, "catalog.json: 'modules' must be a nonempty list")
    for m in mods:
        _require(isinstance(m, dict) and "name" in m and "dims" in m, f"catalog.json: malformed module {m!r}")
    names = [str(m["name"]) for m in mods]
    _require(len(set(names)) == len(names), "catalog.json: module names must be distinct")
    _require(isinstance(cat.get("tilting"), list) and cat["tilting"], "catalog.json: 'tilting' must be a nonempty list")
    for t in cat["tilting"]:
        _require(str(t) in names, f"catalog.json: tilting summand {t!r} is not in the catalog")
    for alias, target in cat.get("aliases", {}).items():
        _require(str(target) in names, f"catalog.json: alias {alias!r} points to unknown module {target!r}")


class Fixture:
    """A loaded fixture at one prime, able to rebuild itself at other primes."""

    def __init__(self, path, prime: int = DEFAULT_PRIME, seed: int = 0, check: bool = True,
                 _raw: Optional[tuple] = None):
        self.path = Path(path)
        self.prime = la.check_prime(prime)
        self.seed = seed
        if _raw is None:
            alg = _read(self.path / "algebra.json")
            cat = _read(self.path / "catalog.json")
            _check_schema(alg, cat)
            _raw = (alg, cat)
        self._raw = _raw
        alg, cat = _raw
        self.aliases = {str(k): str(v) for k, v in cat.get("aliases", {}).items()}
        try:
            self.algebra = algebra_from_dict(alg, self.prime, name=alg.get("name", self.path.name))
            modules = [module_from_dict(self.algebra, m) for m in cat["modules"]]
        except (AlgebraError, ModuleError, KeyError, ValueError) as exc:
            raise FixtureError(f"cannot build fixture: {exc}") from exc
        names = tuple(str(m["name"]) for m in cat["modules"])
        try:
            self.category = FrobeniusCategory(self.algebra, modules, names, seed=seed, check=check)
        except CategoryError as exc:
            raise FixtureError(str(exc), exc.pair) from exc
        try:
            self.tilting = TiltingData(self.category, [str(t) for t in cat["tilting"]], check=check)
        except TiltingError as exc:
            raise FixtureError(f"T is not cluster-tilting: {exc}") from exc
        self._other: dict = {self.prime: self}

    @property
    def name(self) -> str:
        return self.path.name

    def resolve(self, name: str) -> str:
        name = self.aliases.get(name, name)
        if name not in self.category.names:
            raise FixtureError(f"unknown module {name!r}; catalog: {', '.join(self.category.names)}")
        return name

    def module(self, name: str) -> Module:
        return self.category[self.resolve(name)]

    def at_prime(self, q: int) -> "Fixture":
        """The same fixture over ``F_q`` (structure checks skipped, data unchanged)."""
        if q not in self._other:
            self._other[q] = Fixture(self.path, q, self.seed, check=False, _raw=self._raw)
        return self._other[q]


def load_fixture(path=None, prime: int = DEFAULT_PRIME, seed: int = 0, check: bool = True) -> Fixture:
    """Load and validate a fixture directory; the bundled A2 fixture by default."""
    path = bundled_fixture() if path is None else Path(path)
    if not path.is_dir():
        raise FixtureError(f"fixture directory {path} does not exist")
    return Fixture(path, prime, seed, check)
