"""Integer Laurent polynomials and Grothendieck-group coordinate vectors."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence


class NvarsMismatch(ValueError):
    pass


def _canonical(nvars: int, terms: Mapping) -> tuple:
    out = {}
    for exp, c in terms.items():
        exp = tuple(int(e) for e in exp)
        if len(exp) != nvars:
            raise ValueError(f"exponent {exp} does not have length {nvars}")
        c = int(c)
        if c:
            out[exp] = out.get(exp, 0) + c
    # Descending lexicographic order, so x1*... terms print before x2*...
    return tuple(sorted(((e, c) for e, c in out.items() if c), reverse=True))


@dataclass(frozen=True)
class LaurentPoly:
    """Integer Laurent polynomial in ``x1 .. x<nvars>``.

    Stored as a sorted tuple of ``(exponent_vector, coefficient)`` pairs with
    no zero coefficients, so equality and hashing are structural.
    """

    nvars: int
    terms: tuple = field(default=())

    def __post_init__(self):
        if self.nvars < 1:
            raise ValueError("nvars must be positive")
        terms = self.terms
        if not isinstance(terms, Mapping):
            terms = _merge(terms)
        object.__setattr__(self, "terms", _canonical(self.nvars, terms))

    # constructors ----------------------------------------------------------
    @classmethod
    def zero(cls, nvars: int) -> "LaurentPoly":
        return cls(nvars, {})

    @classmethod
    def constant(cls, c: int, nvars: int) -> "LaurentPoly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def one(cls, nvars: int) -> "LaurentPoly":
        return cls.constant(1, nvars)

    @classmethod
    def monomial(cls, exponents: Sequence[int], coeff: int = 1) -> "LaurentPoly":
        exponents = tuple(int(e) for e in exponents)
        return cls(len(exponents), {exponents: coeff})

    @classmethod
    def variable(cls, i: int, nvars: int) -> "LaurentPoly":
        """``x_i`` with 1-based ``i``."""
        exp = [0] * nvars
        exp[i - 1] = 1
        return cls.monomial(exp)

    # ring operations -------------------------------------------------------
    def as_dict(self) -> dict:
        return dict(self.terms)

    def _check(self, other: "LaurentPoly"):
        if not isinstance(other, LaurentPoly):
            raise TypeError(f"expected LaurentPoly, got {type(other).__name__}")
        if other.nvars != self.nvars:
            raise NvarsMismatch(f"{self.nvars} vs {other.nvars} variables")

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, int):
            return LaurentPoly.constant(other, self.nvars)
        self._check(other)
        return other

    def __add__(self, other) -> "LaurentPoly":
        other = self._coerce(other)
        d = self.as_dict()
        for e, c in other.terms:
            d[e] = d.get(e, 0) + c
        return LaurentPoly(self.nvars, d)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self.nvars, {e: -c for e, c in self.terms})

    def __sub__(self, other) -> "LaurentPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "LaurentPoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "LaurentPoly":
        other = self._coerce(other)
        d: dict = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = tuple(a + b for a, b in zip(e1, e2))
                d[e] = d.get(e, 0) + c1 * c2
        return LaurentPoly(self.nvars, d)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LaurentPoly":
        if k < 0:
            if len(self.terms) != 1 or abs(self.terms[0][1]) != 1:
                raise ValueError("only unit monomials have Laurent inverses")
            (e, c), = self.terms
            return LaurentPoly.monomial([x * k for x in e], c ** (-k))
        out = LaurentPoly.one(self.nvars)
        for _ in range(k):
            out = out * self
        return out

    def is_zero(self) -> bool:
        return not self.terms

    def specialize(self, fixed: Iterable[int]) -> "LaurentPoly":
        return laurent_specialize(self, fixed)

    def evaluate(self, values: Sequence) -> object:
        """Numeric evaluation; ``values`` may be Fractions for negative powers."""
        from fractions import Fraction

        total = Fraction(0)
        for e, c in self.terms:
            term = Fraction(c)
            for v, k in zip(values, e):
                term *= Fraction(v) ** k
            total += term
        return total

    def __str__(self) -> str:
        return format_laurent(self)

    def __repr__(self) -> str:
        return f"LaurentPoly({self.nvars}, {format_laurent(self)!r})"


def _merge(pairs) -> dict:
    d: dict = {}
    for e, c in pairs:
        e = tuple(e)
        d[e] = d.get(e, 0) + c
    return d


def laurent_add(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    a._check(b)
    return a + b


def laurent_mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    a._check(b)
    return a * b


def laurent_specialize(a: LaurentPoly, fixed: Iterable[int]) -> LaurentPoly:
    """Set the variables with 1-based indices in ``fixed`` to 1.

    The surviving variables keep their relative order and are renumbered
    ``x1, x2, ...``.  ``fixed`` may also be a mapping ``{index: 1}``.
    """
    if isinstance(fixed, Mapping):
        bad = {k: v for k, v in fixed.items() if v != 1}
        if bad:
            raise ValueError(f"only specialization to 1 is supported, got {bad}")
        fixed = fixed.keys()
    drop = {int(i) for i in fixed}
    for i in drop:
        if not 1 <= i <= a.nvars:
            raise ValueError(f"variable x{i} out of range for {a.nvars} variables")
    keep = [i for i in range(a.nvars) if i + 1 not in drop]
    if not keep:
        total = sum(c for _, c in a.terms)
        return LaurentPoly.constant(total, 1)
    d: dict = {}
    for e, c in a.terms:
        k = tuple(e[i] for i in keep)
        d[k] = d.get(k, 0) + c
    return LaurentPoly(len(keep), d)


def format_laurent(a: LaurentPoly) -> str:
    """Canonical text, e.g. ``x1^-1*x2 + x1^-1*x3`` or ``2*x1^-1 - x2``."""
    if not a.terms:
        return "0"
    parts = []
    for k, (e, c) in enumerate(a.terms):
        factors = [f"x{i + 1}" if x == 1 else f"x{i + 1}^{x}" for i, x in enumerate(e) if x]
        mag = abs(c)
        if not factors:
            body = str(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = f"{mag}*" + "*".join(factors)
        if k == 0:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append((" - " if c < 0 else " + ") + body)
    return "".join(parts)


def parse_laurent(text: str, nvars: int) -> LaurentPoly:
    """Inverse of :func:`format_laurent`."""
    import re

    text = text.strip()
    if text == "0":
        return LaurentPoly.zero(nvars)
    tokens = re.split(r"\s+([+-])\s+", text)
    signs = ["+"] + tokens[1::2]
    bodies = tokens[0::2]
    d: dict = {}
    for sign, body in zip(signs, bodies):
        coeff = -1 if sign == "-" else 1
        if body.startswith("-"):
            coeff, body = -coeff, body[1:]
        exp = [0] * nvars
        for factor in body.split("*"):
            m = re.fullmatch(r"x(\d+)(?:\^(-?\d+))?", factor)
            if m:
                exp[int(m.group(1)) - 1] += int(m.group(2) or 1)
            else:
                coeff *= int(factor)
        d[tuple(exp)] = d.get(tuple(exp), 0) + coeff
    return LaurentPoly(nvars, d)


# ---------------------------------------------------------------------------


class Basis(enum.Enum):
    SUMMANDS_OF_T = "summands_of_T"
    SIMPLES_OF_C = "simples_of_C"
    SIMPLES_OF_B = "simples_of_B"


_LABEL = {
    Basis.SUMMANDS_OF_T: "T{}",
    Basis.SIMPLES_OF_C: "S'{}",
    Basis.SIMPLES_OF_B: "S{}",
}


@dataclass(frozen=True)
class K0Vector:
    """Coordinates of a class in a split or ordinary Grothendieck group."""

    basis: Basis
    coords: tuple

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(int(c) for c in self.coords))

    @classmethod
    def zero(cls, basis: Basis, n: int) -> "K0Vector":
        return cls(basis, (0,) * n)

    @classmethod
    def unit(cls, basis: Basis, n: int, i: int) -> "K0Vector":
        """Unit vector with 0-based index ``i``."""
        c = [0] * n
        c[i] = 1
        return cls(basis, c)

    def __len__(self):
        return len(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def __iter__(self):
        return iter(self.coords)

    def _check(self, other: "K0Vector"):
        if other.basis != self.basis or len(other) != len(self):
            raise ValueError(f"incompatible K0 vectors {self} and {other}")

    def __add__(self, other: "K0Vector") -> "K0Vector":
        self._check(other)
        return K0Vector(self.basis, [a + b for a, b in zip(self, other)])

    def __sub__(self, other: "K0Vector") -> "K0Vector":
        self._check(other)
        return K0Vector(self.basis, [a - b for a, b in zip(self, other)])

    def __neg__(self) -> "K0Vector":
        return K0Vector(self.basis, [-a for a in self])

    def __rmul__(self, k: int) -> "K0Vector":
        return K0Vector(self.basis, [k * a for a in self])

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __str__(self) -> str:
        label = _LABEL[self.basis]
        parts = [f"{c}*[{label.format(i + 1)}]" for i, c in enumerate(self.coords) if c]
        return " + ".join(parts) if parts else "0"
