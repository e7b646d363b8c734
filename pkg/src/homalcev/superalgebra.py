"""Exact Z2-graded algebras given by structure constants.

Everything here works over the rationals with :class:`fractions.Fraction`;
no floating point is used anywhere, so identities are compared with ``==``.

An algebra of dimension ``n`` is described by

* a parity vector (0 = even, 1 = odd) for the basis ``e_0 .. e_{n-1}``,
* the full ordered product table ``C[i][j] = e_i e_j``,
* an even linear map ``alpha`` (column ``i`` is the image of ``e_i``).

Super anticommutativity and multiplicativity of ``alpha`` are *not*
assumed; they are diagnosed by :func:`check_super_anticommutativity` and
:func:`check_multiplicativity`.
"""

from __future__ import annotations

import contextlib
import contextvars
import re
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

Parity = int

__all__ = [
    "AlgebraError",
    "DimensionError",
    "NotHomogeneousError",
    "SlotError",
    "ZERO_ELEMENT",
    "Element",
    "EvenMap",
    "PairSet",
    "SuperAlgebra",
    "multiply",
    "apply_alpha",
    "parity_of",
    "koszul_sign",
    "sign_tally",
    "check_multiplicativity",
    "check_super_anticommutativity",
    "to_fraction",
]


class AlgebraError(ValueError):
    """Invalid algebra data or an operation applied to incompatible inputs."""


class DimensionError(AlgebraError):
    pass


class NotHomogeneousError(AlgebraError):
    """An element has nonzero components of both parities."""


class SlotError(AlgebraError):
    """A sign exponent refers to a slot with no assigned parity."""


class _ZeroElement:
    """Marker returned by :func:`parity_of` for the zero vector."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "ZERO_ELEMENT"

    def __reduce__(self):
        return (_ZeroElement, ())


ZERO_ELEMENT = _ZeroElement()

_RATIONAL_RE = re.compile(r"^[-−]?\d+(?:/\d+)?$")


def to_fraction(value) -> Fraction:
    """Coerce ints, Fractions and ``"p"``/``"p/q"`` strings to a Fraction.

    Floats are refused: they would silently make checks inexact.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise AlgebraError(f"not a rational number: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not _RATIONAL_RE.match(text):
            raise AlgebraError(f"not a rational literal: {value!r}")
        text = text.replace("−", "-")
        num, _, den = text.partition("/")
        if den and int(den) == 0:
            raise AlgebraError(f"zero denominator in {value!r}")
        return Fraction(int(num), int(den) if den else 1)
    raise AlgebraError(f"not a rational number: {value!r}")


@dataclass(frozen=True)
class Element:
    """A vector of exact rational coefficients over the basis."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        coeffs = tuple(to_fraction(c) for c in self.coeffs)
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def _raw(cls, coeffs: tuple) -> "Element":
        # trusted fast path: coeffs is already a tuple of Fractions
        obj = object.__new__(cls)
        object.__setattr__(obj, "coeffs", coeffs)
        return obj

    @classmethod
    def zero(cls, dim: int) -> "Element":
        return cls((Fraction(0),) * dim)

    @classmethod
    def basis(cls, dim: int, i: int) -> "Element":
        if not 0 <= i < dim:
            raise DimensionError(f"basis index {i} out of range for dim {dim}")
        return cls(tuple(Fraction(int(k == i)) for k in range(dim)))

    @classmethod
    def from_sparse(cls, dim: int, entries: Mapping[int, object]) -> "Element":
        coeffs = [Fraction(0)] * dim
        for k, c in entries.items():
            if not 0 <= k < dim:
                raise DimensionError(f"index {k} out of range for dim {dim}")
            coeffs[k] += to_fraction(c)
        return cls(tuple(coeffs))

    @property
    def dim(self) -> int:
        return len(self.coeffs)

    def nonzero(self) -> Iterator[tuple[int, Fraction]]:
        return ((k, c) for k, c in enumerate(self.coeffs) if c)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def _check(self, other: "Element") -> None:
        if len(other.coeffs) != len(self.coeffs):
            raise DimensionError(
                f"dimension mismatch: {len(self.coeffs)} vs {len(other.coeffs)}"
            )

    def __add__(self, other: "Element") -> "Element":
        self._check(other)
        return Element._raw(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "Element") -> "Element":
        self._check(other)
        return Element._raw(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "Element":
        return Element._raw(tuple(-a for a in self.coeffs))

    def __mul__(self, scalar) -> "Element":
        s = to_fraction(scalar)
        return Element._raw(tuple(s * a for a in self.coeffs))

    __rmul__ = __mul__

    def __str__(self) -> str:
        terms = [f"{c}*e{k}" for k, c in self.nonzero()]
        return " + ".join(terms) if terms else "0"


@dataclass(frozen=True)
class EvenMap:
    """Square rational matrix; column ``i`` is the image of ``e_i``."""

    matrix: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self) -> None:
        rows = tuple(tuple(to_fraction(c) for c in row) for row in self.matrix)
        n = len(rows)
        if any(len(row) != n for row in rows):
            raise DimensionError("map matrix must be square")
        object.__setattr__(self, "matrix", rows)

    @classmethod
    def identity(cls, dim: int) -> "EvenMap":
        return cls(tuple(tuple(int(r == c) for c in range(dim)) for r in range(dim)))

    @classmethod
    def diagonal(cls, values: Sequence[object]) -> "EvenMap":
        vals = [to_fraction(v) for v in values]
        n = len(vals)
        return cls(tuple(tuple(vals[r] if r == c else 0 for c in range(n)) for r in range(n)))

    @classmethod
    def zero(cls, dim: int) -> "EvenMap":
        return cls(((0,) * dim,) * dim)

    @property
    def dim(self) -> int:
        return len(self.matrix)

    def column(self, i: int) -> Element:
        return Element(tuple(row[i] for row in self.matrix))

    def __call__(self, u: Element) -> Element:
        if u.dim != self.dim:
            raise DimensionError(f"map of dim {self.dim} applied to vector of dim {u.dim}")
        nz = list(u.nonzero())
        return Element._raw(
            tuple(sum((row[i] * c for i, c in nz if row[i]), Fraction(0)) for row in self.matrix)
        )

    def compose(self, other: "EvenMap") -> "EvenMap":
        """``self ∘ other``."""
        if other.dim != self.dim:
            raise DimensionError("cannot compose maps of different dimension")
        n = self.dim
        cols = [self(other.column(i)) for i in range(n)]
        return EvenMap(tuple(tuple(cols[c].coeffs[r] for c in range(n)) for r in range(n)))

    def is_identity(self) -> bool:
        return self == EvenMap.identity(self.dim)

    def parity_violations(self, parity: Sequence[Parity]) -> list[tuple[int, int]]:
        """Entries ``(k, i)`` that map between opposite parities."""
        return [
            (k, i)
            for k, row in enumerate(self.matrix)
            for i, c in enumerate(row)
            if c and parity[k] != parity[i]
        ]


@dataclass(frozen=True)
class SuperAlgebra:
    """A finite-dimensional Hom-superalgebra candidate ``(M, ·, alpha)``.

    ``structure[i][j]`` is the product ``e_i e_j``.  Evenness of the
    product and of ``alpha`` is enforced at construction; nothing else is.
    """

    name: str
    parity: tuple[Parity, ...]
    structure: tuple[tuple[Element, ...], ...]
    alpha: EvenMap
    _table: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        parity = tuple(int(p) for p in self.parity)
        n = len(parity)
        if n == 0:
            raise DimensionError("algebra must have positive dimension")
        if any(p not in (0, 1) for p in parity):
            raise AlgebraError(f"parities must be 0 or 1, got {list(self.parity)}")
        object.__setattr__(self, "parity", parity)
        if len(self.structure) != n or any(len(row) != n for row in self.structure):
            raise DimensionError(f"structure table must be {n}x{n}")
        table = []
        for i, row in enumerate(self.structure):
            trow = []
            for j, prod in enumerate(row):
                if prod.dim != n:
                    raise DimensionError(f"product e{i}*e{j} has length {prod.dim}, expected {n}")
                for k, _ in prod.nonzero():
                    if parity[k] != (parity[i] + parity[j]) % 2:
                        raise AlgebraError(
                            f"product is not even: e{i}*e{j} has a component on e{k}"
                        )
                trow.append(tuple(prod.nonzero()))
            table.append(tuple(trow))
        object.__setattr__(self, "_table", tuple(table))
        if self.alpha.dim != n:
            raise DimensionError(f"alpha has dim {self.alpha.dim}, expected {n}")
        bad = self.alpha.parity_violations(parity)
        if bad:
            k, i = bad[0]
            raise AlgebraError(f"alpha is not even: entry ({k}, {i}) links opposite parities")

    @classmethod
    def from_products(
        cls,
        name: str,
        parity: Sequence[Parity],
        products: Mapping[tuple[int, int], Mapping[int, object]],
        alpha: EvenMap | None = None,
    ) -> "SuperAlgebra":
        """Build from a sparse ``{(i, j): {k: c}}`` mapping; missing pairs are zero."""
        n = len(parity)
        rows = [[Element.zero(n) for _ in range(n)] for _ in range(n)]
        for (i, j), entries in products.items():
            if not (0 <= i < n and 0 <= j < n):
                raise DimensionError(f"product index ({i}, {j}) out of range")
            rows[i][j] = rows[i][j] + Element.from_sparse(n, entries)
        return cls(
            name,
            tuple(parity),
            tuple(tuple(r) for r in rows),
            alpha if alpha is not None else EvenMap.identity(n),
        )

    @property
    def dim(self) -> int:
        return len(self.parity)

    def basis(self, i: int) -> Element:
        return Element.basis(self.dim, i)

    def with_alpha(self, alpha: EvenMap, name: str | None = None) -> "SuperAlgebra":
        return SuperAlgebra(name or self.name, self.parity, self.structure, alpha)

    def nonzero_products(self) -> Iterator[tuple[int, int, int, Fraction]]:
        for i, row in enumerate(self._table):
            for j, entries in enumerate(row):
                for k, c in entries:
                    yield i, j, k, c


def _check_dim(A: SuperAlgebra, *vectors: Element) -> None:
    for v in vectors:
        if v.dim != A.dim:
            raise DimensionError(f"vector of length {v.dim} in algebra of dim {A.dim}")


def multiply(A: SuperAlgebra, u: Element, v: Element) -> Element:
    """Bilinear extension of the structure constants."""
    _check_dim(A, u, v)
    acc = [Fraction(0)] * A.dim
    vnz = list(v.nonzero())
    for i, a in u.nonzero():
        row = A._table[i]
        for j, b in vnz:
            entries = row[j]
            if entries:
                ab = a * b
                for k, c in entries:
                    acc[k] += ab * c
    return Element._raw(tuple(acc))


def apply_alpha(A: SuperAlgebra, u: Element, power: int = 1) -> Element:
    """Apply ``alpha`` ``power`` times; power 0 is the identity."""
    _check_dim(A, u)
    if power < 0:
        raise AlgebraError("alpha power must be nonnegative")
    for _ in range(power):
        u = A.alpha(u)
    return u


def parity_of(A: SuperAlgebra, u: Element):
    """Common parity of ``u``'s support, or :data:`ZERO_ELEMENT` for ``u = 0``.

    Raises :class:`NotHomogeneousError` when the support mixes parities.
    """
    _check_dim(A, u)
    seen = {A.parity[k] for k, _ in u.nonzero()}
    if not seen:
        return ZERO_ELEMENT
    if len(seen) > 1:
        raise NotHomogeneousError(f"element {u} is not homogeneous")
    return seen.pop()


_TALLY: contextvars.ContextVar[Counter | None] = contextvars.ContextVar("sign_tally", default=None)


@contextlib.contextmanager
def sign_tally() -> Iterator[Counter]:
    """Count every Koszul sign evaluated inside the block.

    The yielded counter maps ``+1`` and ``-1`` to the number of times each
    sign was produced.
    """
    tally: Counter = Counter()
    token = _TALLY.set(tally)
    try:
        yield tally
    finally:
        _TALLY.reset(token)


def _parse_sum(text: str) -> list[str]:
    text = text.strip()
    if text.startswith("(") and text.endswith(")"):
        text = text[1:-1]
    letters = [t.strip() for t in text.split("+")]
    if not all(len(t) == 1 and t.isalpha() for t in letters):
        raise ValueError(f"bad parity sum {text!r}")
    return letters


@dataclass(frozen=True)
class PairSet:
    """Sign exponent as a multiset of slot pairs: ``{(x, y), (x, z)}`` is x̄(ȳ+z̄)."""

    pairs: tuple[tuple[str, str], ...] = ()

    @classmethod
    def parse(cls, text: str) -> "PairSet":
        """Parse notation such as ``"x(y+z)"``, ``"(y+z)(x+w)"`` or ``"yz+w(y+z)"``.

        Each top-level summand is a product of exactly two factors, each a
        single slot letter or a parenthesised sum of letters.
        """
        pairs: list[tuple[str, str]] = []
        for summand in _split_top(text.replace(" ", "")):
            factors = re.findall(r"\([^()]*\)|[A-Za-z]", summand)
            if "".join(factors) != summand or len(factors) != 2:
                raise ValueError(f"cannot parse sign exponent {text!r}")
            left, right = (_parse_sum(f) for f in factors)
            pairs.extend((a, b) for a in left for b in right)
        return cls(tuple(pairs))

    def slots(self) -> set[str]:
        return {s for pair in self.pairs for s in pair}

    def union(self, other: "PairSet") -> "PairSet":
        return PairSet(self.pairs + other.pairs)

    def __str__(self) -> str:
        return "+".join(a + b for a, b in self.pairs) or "0"


def _split_top(text: str) -> list[str]:
    out, depth, cur = [], 0, ""
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "+" and depth == 0:
            out.append(cur)
            cur = ""
        else:
            cur += ch
    if text:
        out.append(cur)
    return [s for s in out if s]


def koszul_sign(ps: PairSet, parities: Mapping[str, Parity]) -> int:
    """``(-1)`` to the sum over pairs of the product of the slot parities."""
    exponent = 0
    for a, b in ps.pairs:
        try:
            exponent += parities[a] * parities[b]
        except KeyError as exc:
            raise SlotError(f"no parity assigned to slot {exc.args[0]!r}") from None
    sign = -1 if exponent % 2 else 1
    tally = _TALLY.get()
    if tally is not None:
        tally[sign] += 1
    return sign


def check_multiplicativity(A: SuperAlgebra) -> list[tuple[int, int, Element]]:
    """Basis pairs where ``alpha(e_i e_j) != alpha(e_i) alpha(e_j)``."""
    images = [A.alpha.column(i) for i in range(A.dim)]
    out = []
    for i in range(A.dim):
        for j in range(A.dim):
            lhs = A.alpha(A.structure[i][j])
            defect = lhs - multiply(A, images[i], images[j])
            if not defect.is_zero():
                out.append((i, j, defect))
    return out


def check_super_anticommutativity(A: SuperAlgebra) -> list[tuple[int, int, Element]]:
    """Pairs with ``e_i e_j + (-1)^{p_i p_j} e_j e_i != 0`` (diagonal included)."""
    out = []
    for i in range(A.dim):
        for j in range(A.dim):
            sign = -1 if A.parity[i] * A.parity[j] else 1
            defect = A.structure[i][j] + A.structure[j][i] * sign
            if not defect.is_zero():
                out.append((i, j, defect))
    return out


def linear_combination(terms: Iterable[tuple[object, Element]], dim: int) -> Element:
    acc = [Fraction(0)] * dim
    for c, v in terms:
        c = to_fraction(c)
        for k, a in v.nonzero():
            acc[k] += c * a
    return Element(tuple(acc))
