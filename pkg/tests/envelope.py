"""Grassmann-envelope oracle for graded signs.

A homogeneous basis tuple ``(e_i1, ..., e_ik)`` is lifted to the Grassmann
envelope as ``e_is ⊗ ξ_s`` (a fresh odd generator for each odd slot).  The
envelope is an ordinary algebra, so identities are evaluated there with
*no* signs at all; the Koszul signs fall out of reordering generators.
This is independent of the PairSet machinery it is used to check.
"""

from collections import defaultdict
from fractions import Fraction

from homalcev.identities import Alpha, Apply, Mul, Slot


def _merge(s1, s2):
    if set(s1) & set(s2):
        return None, 0
    seq = list(s1) + list(s2)
    inv = sum(1 for a in range(len(seq)) for b in range(a + 1, len(seq)) if seq[a] > seq[b])
    return tuple(sorted(seq)), (-1) ** inv


def env_mul(A, u, v):
    out = defaultdict(Fraction)
    for (i, s1), a in u.items():
        for (j, s2), b in v.items():
            s, sign = _merge(s1, s2)
            if not sign:
                continue
            for k, c in A.structure[i][j].nonzero():
                out[(k, s)] += sign * a * b * c
    return {key: c for key, c in out.items() if c}


def env_alpha(A, u):
    out = defaultdict(Fraction)
    for (i, s), a in u.items():
        for k, c in A.alpha.column(i).nonzero():
            out[(k, s)] += a * c
    return {key: c for key, c in out.items() if c}


def env_eval(A, expr, env):
    if isinstance(expr, Slot):
        return env[expr.name]
    if isinstance(expr, Alpha):
        u = env_eval(A, expr.arg, env)
        for _ in range(expr.power):
            u = env_alpha(A, u)
        return u
    if isinstance(expr, Mul):
        return env_mul(A, env_eval(A, expr.left, env), env_eval(A, expr.right, env))
    if isinstance(expr, Apply):
        inner = {s: env_eval(A, a, env) for s, a in zip(expr.form.slots, expr.args)}
        return env_form(A, expr.form, inner)
    raise TypeError(expr)


def env_form(A, form, env):
    out = defaultdict(Fraction)
    for term in form.terms:
        for key, c in env_eval(A, term.expr, env).items():
            out[key] += term.coeff * c  # signs deliberately ignored
    return {key: c for key, c in out.items() if c}


def lift(A, form, tup):
    env = {}
    for gen, (slot, i) in enumerate(zip(form.slots, tup)):
        env[slot] = {(i, (gen,) if A.parity[i] else ()): Fraction(1)}
    return env


def envelope_defect(A, form, tup):
    """Defect as a dense vector plus the common Grassmann monomial sign.

    Returns ``{k: c}`` where the monomial is the product of the odd
    generators in slot order.
    """
    res = env_form(A, form, lift(A, form, tup))
    gens = tuple(g for g, i in enumerate(tup) if A.parity[i])
    vec = {}
    for (k, s), c in res.items():
        assert s == gens, (s, gens)
        vec[k] = c
    return vec
