"""Test algebras: catalog entries, Yau twists and weight-graded random algebras."""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .identities import check_identity
from .superalgebra import (
    AlgebraError,
    Element,
    EvenMap,
    SuperAlgebra,
    multiply,
    to_fraction,
)

__all__ = [
    "NotMorphismError",
    "CatalogEntry",
    "WeightedGenSpec",
    "CATALOG_KEYS",
    "yau_twist",
    "morphism_defects",
    "catalog_algebra",
    "catalog_twists",
    "random_weighted_algebra",
    "skew_closure",
    "cayley_dickson_mul",
    "quaternion_pair_mul",
    "octonion_table",
]


class NotMorphismError(AlgebraError):
    """The map does not respect the product; ``witness`` is a basis pair."""

    def __init__(self, message: str, witness: tuple[int, int] | None = None):
        super().__init__(message)
        self.witness = witness


# -- Yau twisting ------------------------------------------------------------


def morphism_defects(A: SuperAlgebra, beta: EvenMap) -> list[tuple[int, int, Element]]:
    """Basis pairs where ``beta(e_i e_j) != beta(e_i) beta(e_j)``."""
    images = [beta.column(i) for i in range(A.dim)]
    out = []
    for i in range(A.dim):
        for j in range(A.dim):
            d = beta(A.structure[i][j]) - multiply(A, images[i], images[j])
            if not d.is_zero():
                out.append((i, j, d))
    return out


def yau_twist(A: SuperAlgebra, beta: EvenMap, name: str | None = None) -> SuperAlgebra:
    """Twist the product along a morphism: ``μ' = β∘μ``, ``α' = β∘α``.

    For the usual case ``α = Id`` the new twisting map is ``β`` itself.
    ``β`` must be even, multiplicative for ``μ`` and commute with ``α``.
    """
    if beta.dim != A.dim:
        raise AlgebraError(f"map has dim {beta.dim}, algebra has dim {A.dim}")
    bad = beta.parity_violations(A.parity)
    if bad:
        raise AlgebraError(f"map is not even: entry {bad[0]} links opposite parities")
    defects = morphism_defects(A, beta)
    if defects:
        i, j, d = defects[0]
        raise NotMorphismError(
            f"map is not an algebra morphism: beta(e{i}e{j}) - beta(e{i})beta(e{j}) = {d}",
            (i, j),
        )
    if beta.compose(A.alpha) != A.alpha.compose(beta):
        raise NotMorphismError("map does not commute with the algebra's twisting map")
    structure = tuple(tuple(beta(p) for p in row) for row in A.structure)
    return SuperAlgebra(
        name or f"{A.name}^beta",
        A.parity,
        structure,
        beta.compose(A.alpha),
    )


# -- octonion oracles ----------------------------------------------------------
#
# Two independent routes to the same multiplication table on the basis
# (1, i, j, k, l, il, jl, kl).  Both use (a, b)(c, d) = (ac - d*b, da + bc*).


def _cd_conj(u: tuple) -> tuple:
    if len(u) == 1:
        return u
    h = len(u) // 2
    return _cd_conj(u[:h]) + tuple(-c for c in u[h:])


def cayley_dickson_mul(u: tuple, v: tuple) -> tuple:
    """Recursive doubling product on coefficient tuples of length ``2**k``."""
    if len(u) != len(v):
        raise ValueError("operands must have equal length")
    if len(u) == 1:
        return (u[0] * v[0],)
    h = len(u) // 2
    a, b, c, d = u[:h], u[h:], v[:h], v[h:]
    left = _vsub(cayley_dickson_mul(a, c), cayley_dickson_mul(_cd_conj(d), b))
    right = _vadd(cayley_dickson_mul(d, a), cayley_dickson_mul(b, _cd_conj(c)))
    return left + right


def _vadd(u, v):
    return tuple(p + q for p, q in zip(u, v))


def _vsub(u, v):
    return tuple(p - q for p, q in zip(u, v))


def _hamilton(p: tuple, q: tuple) -> tuple:
    a1, b1, c1, d1 = p
    a2, b2, c2, d2 = q
    return (
        a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
        a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
        a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
        a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
    )


def _qconj(p: tuple) -> tuple:
    return (p[0], -p[1], -p[2], -p[3])


def quaternion_pair_mul(u: tuple, v: tuple) -> tuple:
    """Octonion product written directly over Hamilton quaternions.

    ``(a + bℓ)(c + dℓ) = (ac - \\bar d b) + (da + b \\bar c)ℓ``.
    """
    a, b, c, d = u[:4], u[4:], v[:4], v[4:]
    return _vsub(_hamilton(a, c), _hamilton(_qconj(d), b)) + _vadd(
        _hamilton(d, a), _hamilton(b, _qconj(c))
    )


def octonion_table(mul=cayley_dickson_mul) -> list[list[tuple]]:
    """``table[a][b]`` = coordinates of ``e_a e_b`` for the 8 octonion units."""
    units = [tuple(Fraction(int(k == a)) for k in range(8)) for a in range(8)]
    return [[mul(units[a], units[b]) for b in range(8)] for a in range(8)]


def _m7_constants(mul=cayley_dickson_mul) -> dict:
    table = octonion_table(mul)
    products = {}
    for a in range(1, 8):
        for b in range(1, 8):
            comm = _vsub(table[a][b], table[b][a])
            if comm[0]:
                raise AlgebraError("commutator of imaginary units left the imaginary part")
            entries = {k - 1: c for k, c in enumerate(comm) if k and c}
            if entries:
                products[(a - 1, b - 1)] = entries
    return products


# -- small exact solver (for coordinates of matrix brackets) ------------------


def _solve_coordinates(basis: Sequence[Sequence[Fraction]], target: Sequence[Fraction]):
    """Coefficients ``c`` with ``sum c_i basis_i == target``, or None."""
    n, m = len(basis), len(target)
    rows = [[Fraction(basis[i][r]) for i in range(n)] + [Fraction(target[r])] for r in range(m)]
    pivots, r = [], 0
    for col in range(n):
        piv = next((k for k in range(r, m) if rows[k][col]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][col]
        rows[r] = [v * inv for v in rows[r]]
        for k in range(m):
            if k != r and rows[k][col]:
                f = rows[k][col]
                rows[k] = [a - f * b for a, b in zip(rows[k], rows[r])]
        pivots.append(col)
        r += 1
    if any(row[-1] for row in rows[r:]):
        return None
    coeffs = [Fraction(0)] * n
    for i, col in enumerate(pivots):
        coeffs[col] = rows[i][-1]
    return coeffs


def _matmul(p, q):
    n = len(p)
    return [[sum(p[i][k] * q[k][j] for k in range(n)) for j in range(n)] for i in range(n)]


def _unit(n, r, c):
    return [[Fraction(int(i == r and j == c)) for j in range(n)] for i in range(n)]


def _madd(*terms):
    n = len(terms[0][1])
    return [[sum(c * m[i][j] for c, m in terms) for j in range(n)] for i in range(n)]


def _osp12_constants() -> dict:
    # gl(1|2) with row/column parities (0, 1, 1); even part sp(2) on the odd block.
    n = 3
    E = lambda r, c: _unit(n, r, c)  # noqa: E731
    mats = [
        _madd((1, E(1, 1)), (-1, E(2, 2))),  # h
        E(1, 2),  # e
        E(2, 1),  # f
        _madd((1, E(1, 0)), (1, E(0, 2))),  # q+
        _madd((1, E(2, 0)), (-1, E(0, 1))),  # q-
    ]
    parity = [0, 0, 0, 1, 1]
    flat = [[v for row in m for v in row] for m in mats]
    products = {}
    for i, p in enumerate(mats):
        for j, q in enumerate(mats):
            s = -1 if parity[i] * parity[j] else 1
            pq, qp = _matmul(p, q), _matmul(q, p)
            br = [pq[r][c] - s * qp[r][c] for r in range(n) for c in range(n)]
            coeffs = _solve_coordinates(flat, br)
            if coeffs is None:
                raise AlgebraError(f"osp(1|2) basis not closed under e{i}, e{j}")
            entries = {k: c for k, c in enumerate(coeffs) if c}
            if entries:
                products[(i, j)] = entries
    return products


# -- catalog -------------------------------------------------------------------

HOM_LIE_CLASS = "hom_lie"
HOM_MALCEV_CLASS = "hom_malcev_not_hom_lie"
MALCEV_CLASS = "malcev_not_lie"
NOT_HOM_MALCEV_CLASS = "not_hom_malcev"

CATALOG_KEYS = ("abelian:1|1", "heisenberg3", "sl2", "osp12", "m7")


@dataclass(frozen=True)
class CatalogEntry:
    key: str
    algebra: SuperAlgebra
    expected_class: str
    provenance: str
    twists: tuple[tuple[str, EvenMap], ...] = field(default=(), repr=False)


def _antisym(products: dict, parity: Sequence[int]) -> dict:
    out = dict(products)
    for (i, j), entries in products.items():
        s = -1 if parity[i] * parity[j] else 1
        out[(j, i)] = {k: -s * c for k, c in entries.items()}
    return out


def _lie_gate(A: SuperAlgebra) -> None:
    res = check_identity(A.with_alpha(EvenMap.identity(A.dim)), "HOM_LIE", max_violations=1)
    if not res.holds:
        raise AlgebraError(f"catalog gate failed: {A.name} violates super-Jacobi at {res.violations[0].tuple}")


def _diag_twist(label: str, values) -> tuple[str, EvenMap]:
    return label, EvenMap.diagonal(values)


def _perm(n: int, images: Sequence[int], signs: Sequence[int] | None = None) -> EvenMap:
    signs = signs or [1] * n
    cols = [[0] * n for _ in range(n)]
    for i, (k, s) in enumerate(zip(images, signs)):
        cols[i][k] = s
    return EvenMap(tuple(tuple(cols[c][r] for c in range(n)) for r in range(n)))


_ABELIAN_RE = re.compile(r"^abelian:(\d+)\|(\d+)$")


@lru_cache(maxsize=None)
def catalog_algebra(key: str) -> CatalogEntry:
    """Build (and gate) a catalog algebra; all have ``alpha = Id``."""
    m = _ABELIAN_RE.match(key)
    if m:
        d0, d1 = int(m.group(1)), int(m.group(2))
        if d0 + d1 == 0:
            raise AlgebraError("abelian algebra needs positive dimension")
        parity = (0,) * d0 + (1,) * d1
        A = SuperAlgebra.from_products(key, parity, {})
        twists = (
            ("identity", EvenMap.identity(d0 + d1)),
            _diag_twist("diag", [k + 2 for k in range(d0 + d1)]),
        )
        return CatalogEntry(key, A, HOM_LIE_CLASS, "all products zero", twists)
    if key == "heisenberg3":
        A = SuperAlgebra.from_products(key, (0, 0, 0), _antisym({(0, 1): {2: 1}}, (0, 0, 0)))
        _lie_gate(A)
        twists = (("identity", EvenMap.identity(3)), _diag_twist("diag:2,3,6", [2, 3, 6]))
        return CatalogEntry(key, A, HOM_LIE_CLASS, "[x,y]=z; super-Jacobi brute force", twists)
    if key == "sl2":
        prods = {(0, 1): {1: 2}, (0, 2): {2: -2}, (1, 2): {0: 1}}
        A = SuperAlgebra.from_products(key, (0, 0, 0), _antisym(prods, (0, 0, 0)))
        _lie_gate(A)
        twists = (
            ("identity", EvenMap.identity(3)),
            _diag_twist("diag:1,2,1/2", [1, 2, Fraction(1, 2)]),
            _diag_twist("diag:1,3,1/3", [1, 3, Fraction(1, 3)]),
            ("chevalley", _perm(3, [0, 2, 1], [-1, -1, -1])),
        )
        return CatalogEntry(key, A, HOM_LIE_CLASS, "(h,e,f); super-Jacobi brute force", twists)
    if key == "osp12":
        parity = (0, 0, 0, 1, 1)
        A = SuperAlgebra.from_products(key, parity, _osp12_constants())
        _lie_gate(A)
        twists = (
            ("identity", EvenMap.identity(5)),
            _diag_twist("diag:1,4,1/4,2,1/2", [1, 4, Fraction(1, 4), 2, Fraction(1, 2)]),
        )
        return CatalogEntry(
            key,
            A,
            HOM_LIE_CLASS,
            "supercommutators of gl(1|2) supermatrices (h,e,f|q+,q-); super-Jacobi brute force",
            twists,
        )
    if key == "m7":
        A = SuperAlgebra.from_products(key, (0,) * 7, _m7_constants())
        if not check_identity(A, "MALCEV_SUPER", max_violations=1).holds:
            raise AlgebraError("catalog gate failed: m7 violates the Malcev identity")
        if check_identity(A, "HOM_LIE", max_violations=1).holds:
            raise AlgebraError("catalog gate failed: m7 unexpectedly satisfies Jacobi")
        # basis (i, j, k, l, il, jl, kl); automorphisms induced from H and from l -> -l
        twists = (
            ("identity", EvenMap.identity(7)),
            ("quaternion-sign", EvenMap.diagonal([1, -1, -1, 1, 1, -1, -1])),
            ("l-flip", EvenMap.diagonal([1, 1, 1, -1, -1, -1, -1])),
            ("ijk-cycle", _perm(7, [1, 2, 0, 3, 5, 6, 4])),
        )
        return CatalogEntry(
            key,
            A,
            MALCEV_CLASS,
            "commutator algebra of imaginary octonions from Cayley-Dickson doubling",
            twists,
        )
    raise AlgebraError(f"unknown catalog key {key!r}; known: {', '.join(CATALOG_KEYS)}")


def catalog_twists(key: str) -> list[SuperAlgebra]:
    """The catalog algebra twisted along each of its listed morphisms."""
    entry = catalog_algebra(key)
    return [
        yau_twist(entry.algebra, beta, name=f"{key}@{label}") for label, beta in entry.twists
    ]


# -- weight-graded random algebras -------------------------------------------


@dataclass(frozen=True)
class WeightedGenSpec:
    """Parameters for :func:`random_weighted_algebra`.

    Products are weight-additive and ``alpha = diag(lam ** weight)``, which
    makes ``alpha`` multiplicative by construction.
    """

    dim: int
    parity: tuple[int, ...]
    weights: tuple[int, ...]
    lam: Fraction = Fraction(1)
    bound: int = 3
    seed: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "parity", tuple(int(p) for p in self.parity))
        object.__setattr__(self, "weights", tuple(int(v) for v in self.weights))
        object.__setattr__(self, "lam", to_fraction(self.lam))
        if self.dim < 1:
            raise AlgebraError("dim must be positive")
        if len(self.parity) != self.dim or len(self.weights) != self.dim:
            raise AlgebraError("parity and weights must have length dim")
        if any(p not in (0, 1) for p in self.parity):
            raise AlgebraError("parities must be 0 or 1")
        if self.lam == 0:
            raise AlgebraError("lambda must be nonzero")
        if self.bound < 0:
            raise AlgebraError("coefficient bound must be nonnegative")

    def with_seed(self, seed: int) -> "WeightedGenSpec":
        return WeightedGenSpec(self.dim, self.parity, self.weights, self.lam, self.bound, seed)

    def label(self) -> str:
        par = "".join(map(str, self.parity))
        wts = ",".join(map(str, self.weights))
        return f"rand(d={self.dim},p={par},w={wts},lam={self.lam},b={self.bound},seed={self.seed})"


def random_weighted_algebra(spec: WeightedGenSpec) -> SuperAlgebra:
    rng = random.Random(spec.seed)
    n, par, wt = spec.dim, spec.parity, spec.weights
    products: dict = {}
    for i in range(n):
        for j in range(i, n):
            if i == j and par[i] == 0:
                continue
            entries = {}
            for k in range(n):
                if wt[k] == wt[i] + wt[j] and par[k] == (par[i] + par[j]) % 2:
                    c = rng.randint(-spec.bound, spec.bound)
                    if c:
                        entries[k] = c
            if entries:
                products[(i, j)] = entries
    products = _antisym({key: v for key, v in products.items() if key[0] != key[1]}, par) | {
        key: v for key, v in products.items() if key[0] == key[1]
    }
    alpha = EvenMap.diagonal([spec.lam**v for v in wt])
    return SuperAlgebra.from_products(spec.label(), par, products, alpha)


def skew_closure(A: SuperAlgebra) -> SuperAlgebra:
    """Overwrite ``C[j][i]`` (i < j) from ``C[i][j]`` by super-antisymmetry.

    Even diagonal products are set to zero; odd diagonal ones are kept.
    """
    n = A.dim
    rows = [list(r) for r in A.structure]
    for i in range(n):
        if A.parity[i] == 0:
            rows[i][i] = Element.zero(n)
        for j in range(i + 1, n):
            s = -1 if A.parity[i] * A.parity[j] else 1
            rows[j][i] = rows[i][j] * (-s)
    return SuperAlgebra(A.name, A.parity, tuple(tuple(r) for r in rows), A.alpha)
