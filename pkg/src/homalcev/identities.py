"""Graded identities as data, and a brute-force checker over basis tuples.

Every identity is a :class:`Form`: a list of signed terms over named
slots.  A term is ``coeff * (-1)^{sign} * expr`` where ``expr`` is a tree of
slot leaves, ``alpha`` powers, binary products and calls to other forms
(the Hom-super-Jacobian and the map G are themselves forms).  The defect of
an identity instance is the value of its form; zero means it holds.

Because each form is multilinear with fixed slot parities, an identity holds
for all homogeneous elements iff it holds on all basis tuples.  That is what
:func:`check_identity` enumerates.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .superalgebra import (
    ZERO_ELEMENT,
    AlgebraError,
    Element,
    PairSet,
    SuperAlgebra,
    koszul_sign,
    multiply,
    parity_of,
)

# -- expression trees --------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Slot:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True, eq=False)
class Alpha:
    power: int
    arg: object

    def __str__(self) -> str:
        return f"a{'' if self.power == 1 else self.power}({self.arg})"


@dataclass(frozen=True, eq=False)
class Mul:
    left: object
    right: object

    def __str__(self) -> str:
        def wrap(e):
            return str(e) if isinstance(e, Slot) else f"({e})"

        if isinstance(self.left, Slot) and isinstance(self.right, Slot):
            return f"{self.left}{self.right}"
        return f"{wrap(self.left)}·{wrap(self.right)}"


@dataclass(frozen=True, eq=False)
class Apply:
    form: "Form"
    args: tuple

    def __str__(self) -> str:
        return f"{self.form.symbol}({', '.join(str(a) for a in self.args)})"


@dataclass(frozen=True, eq=False)
class Term:
    coeff: Fraction
    sign: PairSet
    expr: object

    def __str__(self) -> str:
        c = self.coeff
        head = ("+" if c > 0 else "-") + ("" if abs(c) == 1 else f"{abs(c)}")
        sign = f"(-1)^{{{self.sign}}} " if self.sign.pairs else ""
        return f"{head} {sign}{self.expr}"


@dataclass(frozen=True, eq=False)
class Form:
    """A signed sum of terms, multilinear in ``slots``."""

    symbol: str
    slots: tuple[str, ...]
    terms: tuple[Term, ...]

    @property
    def arity(self) -> int:
        return len(self.slots)

    def __str__(self) -> str:
        return " ".join(str(t) for t in self.terms)


PREMISE_NONE = "none"
PREMISE_SKEW_MULT = "anticommutative+multiplicative"
PREMISE_HOM_MALCEV = "hom_malcev"


@dataclass(frozen=True, eq=False)
class IdentityDescriptor:
    id: str
    form: Form
    premise: str
    anchor: str

    @property
    def arity(self) -> int:
        return self.form.arity


def leaves(expr) -> list[str]:
    """Slot names in left-to-right reading order."""
    if isinstance(expr, Slot):
        return [expr.name]
    if isinstance(expr, Alpha):
        return leaves(expr.arg)
    if isinstance(expr, Mul):
        return leaves(expr.left) + leaves(expr.right)
    if isinstance(expr, Apply):
        return [s for a in expr.args for s in leaves(a)]
    raise TypeError(f"unknown expression node {expr!r}")


@lru_cache(maxsize=None)
def _free(expr) -> tuple[str, ...]:
    return tuple(sorted(set(leaves(expr))))


# -- construction helpers ----------------------------------------------------

# Structurally equal sub-expressions are built once, so evaluation caches can
# be shared between identities (e.g. J~(wx, a(y), a(z)) appears in many).
_INTERN: dict = {}


def _intern(cls, *fields):
    key = (cls,) + tuple(f if isinstance(f, (str, int)) else id(f) for f in fields)
    node = _INTERN.get(key)
    if node is None:
        node = _INTERN[key] = cls(*fields)
    return node


def _a(e, k: int = 1):
    return _intern(Alpha, k, e) if k else e


def _m(p, q):
    return _intern(Mul, p, q)


def _t(coeff, expr, sign: str = "") -> Term:
    return Term(Fraction(coeff), PairSet.parse(sign) if sign else PairSet(), expr)


w, x, y, z, t = (_intern(Slot, c) for c in "wxyzt")

HOM_JACOBIAN = Form(
    "J~",
    ("x", "y", "z"),
    (
        _t(1, _m(_m(x, y), _a(z))),
        _t(1, _m(_m(y, z), _a(x)), "x(y+z)"),
        _t(1, _m(_m(z, x), _a(y)), "z(x+y)"),
    ),
)

# alpha = Id specialisation
JACOBIAN = Form(
    "J",
    ("x", "y", "z"),
    (
        _t(1, _m(_m(x, y), z)),
        _t(1, _m(_m(y, z), x), "x(y+z)"),
        _t(1, _m(_m(z, x), y), "z(x+y)"),
    ),
)


def _apply(form, *args):
    key = (Apply, id(form)) + tuple(id(a) for a in args)
    node = _INTERN.get(key)
    if node is None:
        node = _INTERN[key] = Apply(form, args)
    return node


def J(p, q, r):
    return _apply(HOM_JACOBIAN, p, q, r)


def J0(p, q, r):
    return _apply(JACOBIAN, p, q, r)


G_FORM = Form(
    "G",
    ("w", "x", "y", "z"),
    (
        _t(1, J(_m(w, x), _a(y), _a(z))),
        _t(-1, _m(_a(x, 2), J(w, y, z)), "xw"),
        _t(-1, _m(J(x, y, z), _a(w, 2)), "w(x+y+z)"),
    ),
)


def G(p, q, r, s):
    return _apply(G_FORM, p, q, r, s)


WXYZ = ("w", "x", "y", "z")

# Left side of the six-J~ expansion for anticommutative Hom-superalgebras.
_L25_LHS = (
    _t(1, _m(_a(w, 2), J(x, y, z))),
    _t(-1, _m(_a(x, 2), J(y, z, w)), "w(x+y+z)"),
    _t(1, _m(_a(y, 2), J(z, w, x)), "(y+z)(w+x)"),
    _t(-1, _m(_a(z, 2), J(w, x, y)), "z(x+y+w)"),
)


def _g_residual(sym: str, perm: tuple, sign: str) -> Form:
    return Form(sym, WXYZ, (_t(1, G(w, x, y, z)), _t(1, G(*perm), sign)))


_FORMS = {
    "MALCEV_SUPER": (
        Form(
            "MALCEV_SUPER",
            ("t", "x", "y", "z"),
            (
                _t(2, _m(t, J0(x, y, z))),
                _t(-1, J0(t, x, _m(y, z))),
                _t(-1, J0(t, y, _m(z, x)), "x(y+z)"),
                _t(-1, J0(t, z, _m(x, y)), "z(x+y)"),
            ),
        ),
        PREMISE_NONE,
        "Malcev super-identity (alpha = Id)",
    ),
    "HOM_MALCEV": (
        Form(
            "HOM_MALCEV",
            ("t", "x", "y", "z"),
            (
                _t(2, _m(_a(t, 2), J(x, y, z))),
                _t(-1, J(_a(t), _a(x), _m(y, z))),
                _t(-1, J(_a(t), _a(y), _m(z, x)), "x(y+z)"),
                _t(-1, J(_a(t), _a(z), _m(x, y)), "z(x+y)"),
            ),
        ),
        PREMISE_NONE,
        "Hom-Malcev super-identity",
    ),
    "IDENT_C": (
        Form(
            "IDENT_C",
            WXYZ,
            (
                _t(1, J(_a(y), _a(z), _m(w, x))),
                _t(1, J(_a(w), _a(z), _m(y, x)), "yz+w(y+z)"),
                _t(-1, _m(J(y, z, x), _a(w, 2)), "wx"),
                _t(-1, _m(J(w, z, x), _a(y, 2)), "y(z+w+x)+zw"),
            ),
        ),
        PREMISE_NONE,
        "linearised Hom-Malcev super-identity",
    ),
    "S1": (
        Form(
            "S1",
            WXYZ,
            (
                _t(1, J(_m(w, x), _a(y), _a(z))),
                _t(-1, _m(_a(w, 2), J(x, y, z))),
                _t(-1, _m(J(w, y, z), _a(x, 2)), "x(y+z)"),
                _t(2, J(_m(y, z), _a(w), _a(x)), "(y+z)(x+w)"),
            ),
        ),
        PREMISE_NONE,
        "four-term J~ identity",
    ),
    "HOM_LIE": (
        Form("HOM_LIE", ("x", "y", "z"), (_t(1, J(x, y, z)),)),
        PREMISE_NONE,
        "Hom-super-Jacobian vanishes",
    ),
    "L25_I_A": (
        Form("L25_I_A", ("x", "y", "z"), (_t(1, J(x, y, z)), _t(1, J(y, x, z), "xy"))),
        PREMISE_SKEW_MULT,
        "J~ super skew-symmetric in slots 1,2",
    ),
    "L25_I_B": (
        Form("L25_I_B", ("x", "y", "z"), (_t(1, J(x, y, z)), _t(1, J(x, z, y), "yz"))),
        PREMISE_SKEW_MULT,
        "J~ super skew-symmetric in slots 2,3",
    ),
    "L25_I_C": (
        Form(
            "L25_I_C",
            ("x", "y", "z"),
            (_t(1, J(x, y, z)), _t(1, J(z, y, x), "x(y+z)+yz")),
        ),
        PREMISE_SKEW_MULT,
        "J~ super skew-symmetric in slots 1,3",
    ),
    "L25_II": (
        Form(
            "L25_II",
            WXYZ,
            _L25_LHS
            + (
                _t(-1, J(_m(w, x), _a(y), _a(z))),
                _t(-1, J(_m(y, z), _a(w), _a(x)), "(y+z)(x+w)"),
                _t(-1, J(_m(w, y), _a(z), _a(x)), "x(y+z)"),
                _t(-1, J(_m(z, x), _a(w), _a(y)), "z(x+y)+w(x+z)"),
                _t(1, J(_m(z, w), _a(x), _a(y)), "z(x+y+w)"),
                _t(1, J(_m(x, y), _a(z), _a(w)), "w(x+y+z)"),
            ),
        ),
        PREMISE_SKEW_MULT,
        "expansion of the alternating alpha^2 * J~ sum",
    ),
    "L26_1": (_g_residual("L26_1", (x, w, y, z), "xw"), PREMISE_HOM_MALCEV, "G skew in w,x"),
    "L26_2": (_g_residual("L26_2", (w, x, z, y), "yz"), PREMISE_HOM_MALCEV, "G skew in y,z"),
    "L26_3": (_g_residual("L26_3", (w, y, x, z), "xy"), PREMISE_HOM_MALCEV, "G skew in x,y"),
    "L26_4": (
        _g_residual("L26_4", (y, x, w, z), "w(x+y)+xy"),
        PREMISE_HOM_MALCEV,
        "G skew in w,y",
    ),
    "L26_5": (
        _g_residual("L26_5", (z, x, y, w), "w(x+y+z)+z(x+y)"),
        PREMISE_HOM_MALCEV,
        "G skew in w,z",
    ),
    "S3": (
        Form(
            "S3",
            WXYZ,
            (
                _t(1, J(_m(w, x), _a(y), _a(z))),
                _t(1, J(_m(x, y), _a(z), _a(w)), "w(x+y+z)"),
                _t(1, J(_m(y, z), _a(w), _a(x)), "(y+z)(x+w)"),
                _t(1, J(_m(z, w), _a(x), _a(y)), "z(x+y+w)"),
            ),
        ),
        PREMISE_HOM_MALCEV,
        "cyclic four-term J~ sum vanishes",
    ),
    "S4": (
        Form(
            "S4",
            WXYZ,
            (
                _t(2, G(w, x, y, z)),
                _t(-1, _m(_a(w, 2), J(x, y, z))),
                _t(1, _m(_a(x, 2), J(w, y, z)), "xw"),
                _t(-1, _m(_a(y, 2), J(z, w, x)), "(y+z)(x+w)"),
                _t(1, _m(_a(z, 2), J(w, x, y)), "z(x+y+w)"),
                _t(-1, J(_m(w, x), _a(y), _a(z))),
                _t(-1, J(_m(y, z), _a(w), _a(x)), "(x+w)(y+z)"),
            ),
        ),
        PREMISE_HOM_MALCEV,
        "2G rewritten through J~",
    ),
    "S5": (
        Form(
            "S5",
            WXYZ,
            (
                _t(1, G(w, x, y, z)),
                _t(-2, J(_m(w, x), _a(y), _a(z))),
                _t(-2, J(_m(y, z), _a(w), _a(x)), "(y+z)(w+x)"),
            ),
        ),
        PREMISE_HOM_MALCEV,
        "G through two J~ terms",
    ),
    "S6": (
        Form(
            "S6",
            WXYZ,
            _L25_LHS
            + (
                _t(-3, J(_m(w, x), _a(y), _a(z))),
                _t(-3, J(_m(y, z), _a(w), _a(x)), "(y+z)(w+x)"),
            ),
        ),
        PREMISE_HOM_MALCEV,
        "alternating alpha^2 * J~ sum equals 3(...)",
    ),
}

REGISTRY: dict[str, IdentityDescriptor] = {
    key: IdentityDescriptor(key, form, premise, anchor)
    for key, (form, premise, anchor) in _FORMS.items()
}

SKEW_LEMMAS = ("L25_I_A", "L25_I_B", "L25_I_C", "L25_II")
G_LEMMAS = ("L26_1", "L26_2", "L26_3", "L26_4", "L26_5", "S3", "S4", "S5", "S6")


def get_identity(key) -> IdentityDescriptor:
    if isinstance(key, IdentityDescriptor):
        return key
    try:
        return REGISTRY[key.upper()]
    except KeyError:
        raise AlgebraError(f"unknown identity {key!r}; known: {', '.join(REGISTRY)}") from None


# -- evaluation --------------------------------------------------------------


class _Evaluator:
    """Evaluates expression trees in one algebra.

    With ``memo`` set, values are cached per (node, keys of its free slots);
    slot keys are basis indices during brute-force checks, so shared
    sub-expressions across tuples are computed once.
    """

    def __init__(self, A: SuperAlgebra, memo: bool = False):
        self.A = A
        self.memo: dict | None = {} if memo else None
        self._alpha_cache: dict = {}

    def form(self, form: Form, env: dict) -> Element:
        parities = {s: env[s][2] for s in form.slots}
        acc = [Fraction(0)] * self.A.dim
        for term in form.terms:
            val = self.expr(term.expr, env)
            if val.is_zero():
                continue
            c = term.coeff * koszul_sign(term.sign, parities)
            for k, a in val.nonzero():
                acc[k] += c * a
        return Element._raw(tuple(acc))

    def expr(self, e, env: dict) -> Element:
        if isinstance(e, Slot):
            return env[e.name][1]
        key = None
        if self.memo is not None:
            key = (e, tuple(env[s][0] for s in _free(e)))
            hit = self.memo.get(key)
            if hit is not None:
                return hit
        if isinstance(e, Alpha):
            val = self.expr(e.arg, env)
            for _ in range(e.power):
                val = self.A.alpha(val)
        elif isinstance(e, Mul):
            val = multiply(self.A, self.expr(e.left, env), self.expr(e.right, env))
        elif isinstance(e, Apply):
            inner = {}
            for slot, arg in zip(e.form.slots, e.args):
                if isinstance(arg, Slot):
                    inner[slot] = env[arg.name]
                    continue
                inner[slot] = (
                    (arg, tuple(env[s][0] for s in _free(arg))),
                    self.expr(arg, env),
                    sum(env[s][2] for s in leaves(arg)) % 2,
                )
            val = self.form(e.form, inner)
        else:
            raise TypeError(f"unknown expression node {e!r}")
        if key is not None:
            self.memo[key] = val
        return val


def _homogeneous_parity(A: SuperAlgebra, u: Element) -> int:
    p = parity_of(A, u)
    return 0 if p is ZERO_ELEMENT else p


def evaluate_form(A: SuperAlgebra, form: Form, elements: Sequence[Element]) -> Element:
    if len(elements) != form.arity:
        raise AlgebraError(f"{form.symbol} takes {form.arity} arguments, got {len(elements)}")
    env = {
        s: (i, u, _homogeneous_parity(A, u))
        for i, (s, u) in enumerate(zip(form.slots, elements))
    }
    return _Evaluator(A).form(form, env)


def hom_super_jacobian(A: SuperAlgebra, x: Element, y: Element, z: Element) -> Element:
    """(xy)α(z) + (-1)^{x̄(ȳ+z̄)}(yz)α(x) + (-1)^{z̄(x̄+ȳ)}(zx)α(y)."""
    return evaluate_form(A, HOM_JACOBIAN, (x, y, z))


def super_jacobian(A: SuperAlgebra, x: Element, y: Element, z: Element) -> Element:
    return evaluate_form(A, JACOBIAN, (x, y, z))


def g_map(A: SuperAlgebra, w: Element, x: Element, y: Element, z: Element) -> Element:
    return evaluate_form(A, G_FORM, (w, x, y, z))


def evaluate_defect(A: SuperAlgebra, identity, elements: Sequence[Element]) -> Element:
    """Exact defect of one identity instance; raises on inhomogeneous input."""
    return evaluate_form(A, get_identity(identity).form, elements)


# -- brute force -------------------------------------------------------------

DEFAULT_MAX_VIOLATIONS = 16


@dataclass(frozen=True)
class TupleReport:
    identity: str
    tuple: tuple[int, ...]
    defect: Element


@dataclass(frozen=True)
class IdentityResult:
    identity: str
    status: str  # "holds", "fails" or "skipped"
    tuples_checked: int = 0
    total_violations: int = 0
    violations: tuple[TupleReport, ...] = ()

    @property
    def holds(self) -> bool:
        return self.status == "holds"


@dataclass
class VerificationReport:
    algebra: str
    results: dict[str, IdentityResult] = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return all(r.status != "fails" for r in self.results.values())


def _scan(
    A: SuperAlgebra,
    identity: IdentityDescriptor,
    firsts: Sequence[int],
    cap: int,
    stop_early: bool = False,
    ev: _Evaluator | None = None,
):
    n = A.dim
    basis = [A.basis(i) for i in range(n)]
    ev = ev or _Evaluator(A, memo=True)
    slots = identity.form.slots
    found, total, count = [], 0, 0
    for first in firsts:
        for rest in itertools.product(range(n), repeat=identity.arity - 1):
            tup = (first,) + rest
            env = {s: (i, basis[i], A.parity[i]) for s, i in zip(slots, tup)}
            defect = ev.form(identity.form, env)
            count += 1
            if not defect.is_zero():
                total += 1
                if len(found) < cap:
                    found.append(TupleReport(identity.id, tup, defect))
                if stop_early:
                    return found, total, count
    return found, total, count


def _scan_many(A, identities, firsts, cap):
    ev = _Evaluator(A, memo=True)
    descs = [REGISTRY[i] if isinstance(i, str) else i for i in identities]
    return [_scan(A, d, firsts, cap, ev=ev) for d in descs]


def check_identity(
    A: SuperAlgebra,
    identity,
    max_violations: int = DEFAULT_MAX_VIOLATIONS,
    workers: int = 1,
) -> IdentityResult:
    """Evaluate ``identity`` on all ``dim**arity`` basis tuples.

    Violations come back in lexicographic tuple order and are truncated to
    ``max_violations``; ``total_violations`` counts all of them.  With
    ``workers > 1`` the tuples are split by first index across processes;
    the merged result is identical to the serial one.
    """
    identity = get_identity(identity)
    return check_identities(A, [identity], max_violations, workers)[identity.id]


def check_identities(
    A: SuperAlgebra,
    identities: Sequence,
    max_violations: int = DEFAULT_MAX_VIOLATIONS,
    workers: int = 1,
) -> dict[str, IdentityResult]:
    """Check several identities, sharing sub-expression values between them."""
    descs = [get_identity(i) for i in identities]
    keys = [d.id for d in descs]
    n = A.dim
    if workers > 1 and n > 1 and all(REGISTRY.get(k) is d for k, d in zip(keys, descs)):
        # workers re-resolve identities by registry key
        chunks = [c for c in (list(range(n))[i::workers] for i in range(workers)) if c]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(
                pool.map(
                    _scan_many,
                    [A] * len(chunks),
                    [keys] * len(chunks),
                    chunks,
                    [max_violations] * len(chunks),
                )
            )
        merged = []
        for idx in range(len(keys)):
            found = sorted((r for p in parts for r in p[idx][0]), key=lambda r: r.tuple)
            merged.append(
                (
                    found[:max_violations],
                    sum(p[idx][1] for p in parts),
                    sum(p[idx][2] for p in parts),
                )
            )
    else:
        merged = _scan_many(A, descs, range(n), max_violations)
    return {
        k: IdentityResult(k, "holds" if total == 0 else "fails", count, total, tuple(found))
        for k, (found, total, count) in zip(keys, merged)
    }


def holds(A: SuperAlgebra, identity) -> bool:
    """Like :func:`check_identity` but stops at the first violation."""
    _, total, _ = _scan(A, get_identity(identity), range(A.dim), 0, stop_early=True)
    return total == 0


def holds_all(A: SuperAlgebra, identities: Sequence) -> dict[str, bool]:
    ev = _Evaluator(A, memo=True)
    out = {}
    for ident in identities:
        d = get_identity(ident)
        _, total, _ = _scan(A, d, range(A.dim), 0, stop_early=True, ev=ev)
        out[d.id] = total == 0
    return out
