import itertools
from fractions import Fraction

import pytest
from envelope import envelope_defect
from hypothesis import given
from hypothesis import strategies as st

from homalcev.constructions import catalog_algebra, catalog_twists, yau_twist
from homalcev.identities import (
    SKEW_LEMMAS,
    G_LEMMAS,
    REGISTRY,
    Form,
    IdentityDescriptor,
    check_identities,
    check_identity,
    evaluate_defect,
    evaluate_form,
    g_map,
    get_identity,
    holds,
    hom_super_jacobian,
    leaves,
    super_jacobian,
)
from homalcev.superalgebra import (
    AlgebraError,
    Element,
    EvenMap,
    NotHomogeneousError,
    PairSet,
    sign_tally,
)


def _osp_twisted():
    return catalog_twists("osp12")[1]


def test_registry_contents():
    assert len(REGISTRY) == 18
    arities = {k: d.arity for k, d in REGISTRY.items()}
    assert arities["HOM_LIE"] == 3
    assert {k for k, a in arities.items() if a == 3} == {"HOM_LIE", "L25_I_A", "L25_I_B", "L25_I_C"}
    assert set(SKEW_LEMMAS) | set(G_LEMMAS) <= set(REGISTRY)


def test_every_term_sign_uses_only_its_slots():
    for d in REGISTRY.values():
        for term in d.form.terms:
            assert term.sign.slots() <= set(d.form.slots), (d.id, str(term))
            assert sorted(leaves(term.expr)) == sorted(d.form.slots), (d.id, str(term))


def test_get_identity_case_insensitive():
    assert get_identity("s1") is REGISTRY["S1"]
    assert get_identity(REGISTRY["S1"]) is REGISTRY["S1"]
    with pytest.raises(AlgebraError):
        get_identity("nope")


def test_jacobian_reduces_when_alpha_is_identity():
    A = catalog_algebra("osp12").algebra
    for tup in itertools.product(range(A.dim), repeat=3):
        args = [A.basis(i) for i in tup]
        assert hom_super_jacobian(A, *args) == super_jacobian(A, *args)


def test_hom_jacobian_by_hand():
    A = catalog_twists("sl2")[1]
    h, e, f = (A.basis(i) for i in range(3))
    assert hom_super_jacobian(A, h, e, f).is_zero()
    # twisted product with alpha dropped: he=4e, hf=-f, ef=h
    # (he)f + (ef)h + (fh)e = 4h + 0 - h
    B = A.with_alpha(EvenMap.diagonal([1, 1, 1]))
    j = super_jacobian(B, h, e, f)
    assert j == Element((Fraction(3), Fraction(0), Fraction(0)))


def test_inhomogeneous_input_rejected():
    A = catalog_algebra("osp12").algebra
    mixed = A.basis(0) + A.basis(3)
    with pytest.raises(NotHomogeneousError):
        evaluate_defect(A, "HOM_LIE", [mixed, A.basis(1), A.basis(2)])


def test_wrong_arity_rejected():
    A = catalog_algebra("sl2").algebra
    with pytest.raises(AlgebraError):
        evaluate_defect(A, "S1", [A.basis(0)] * 3)


def test_zero_argument_gives_zero():
    A = _osp_twisted()
    z = Element.zero(A.dim)
    assert evaluate_defect(A, "S1", [z, A.basis(3), A.basis(4), A.basis(1)]).is_zero()
    assert g_map(A, z, A.basis(3), A.basis(4), A.basis(1)).is_zero()


def _sign_check(A, key, tup):
    d = REGISTRY[key]
    sup = evaluate_defect(A, key, [A.basis(i) for i in tup])
    env = envelope_defect(A, d.form, tup)
    pos = {s: k for k, s in enumerate(d.form.slots)}
    odd = [pos[s] for s in leaves(d.form.terms[0].expr) if A.parity[tup[pos[s]]]]
    inv = sum(1 for a in range(len(odd)) for b in range(a + 1, len(odd)) if odd[a] > odd[b])
    eps = (-1) ** inv
    return {k: eps * c for k, c in sup.nonzero()} == env


@pytest.mark.parametrize("key", list(REGISTRY))
def test_signs_match_grassmann_envelope(key, split_super):
    """All basis tuples of a mixed-parity algebra with nonzero odd products."""
    A = split_super
    assert all(_sign_check(A, key, tup) for tup in itertools.product(range(A.dim), repeat=REGISTRY[key].arity))


@given(st.sampled_from(sorted(REGISTRY)), st.lists(st.integers(0, 4), min_size=4, max_size=4))
def test_signs_match_grassmann_envelope_osp(key, tup):
    A = _osp_twisted().with_alpha(EvenMap.identity(5))
    assert _sign_check(A, key, tuple(tup[: REGISTRY[key].arity]))


def test_wrong_sign_is_detected_by_envelope(split_super):
    """A deliberately broken sign must disagree with the envelope somewhere."""
    good = REGISTRY["HOM_LIE"].form
    t0, t1, t2 = REGISTRY["HOM_LIE"].form.terms[0].expr.form.terms
    broken = Form("J?", ("x", "y", "z"), (t0, type(t1)(t1.coeff, PairSet.parse("xy"), t1.expr), t2))
    A = split_super
    diffs = 0
    for tup in itertools.product(range(A.dim), repeat=3):
        sup = evaluate_form(A, broken, [A.basis(i) for i in tup])
        env = envelope_defect(A, broken, tup)
        if {k: c for k, c in sup.nonzero()} != env and {k: -c for k, c in sup.nonzero()} != env:
            diffs += 1
    assert good is not broken and diffs > 0


def _homogeneous(A, parity, coeffs):
    idx = [i for i in range(A.dim) if A.parity[i] == parity]
    c = [Fraction(0)] * A.dim
    for i, v in zip(idx, coeffs):
        c[i] = Fraction(v)
    return Element(tuple(c))


small = st.integers(-3, 3)


@given(
    st.sampled_from(["S1", "HOM_MALCEV", "IDENT_C", "L25_II", "S5"]),
    st.integers(0, 3),
    st.lists(st.integers(0, 1), min_size=4, max_size=4),
    st.lists(small, min_size=12, max_size=12),
    st.lists(small, min_size=3, max_size=3),
    st.lists(small, min_size=3, max_size=3),
)
def test_defects_are_multilinear(key, slot, parities, fill, u1, u2):
    A = _osp_twisted()
    args = [_homogeneous(A, p, fill[3 * k : 3 * k + 3]) for k, p in enumerate(parities)]
    a = _homogeneous(A, parities[slot], u1)
    b = _homogeneous(A, parities[slot], u2)

    def at(v):
        xs = list(args)
        xs[slot] = v
        return evaluate_defect(A, key, xs)

    assert at(a + b) == at(a) + at(b)
    assert at(a * 3) == at(a) * 3


def test_purely_even_signs_all_positive():
    A = catalog_twists("sl2")[1]
    with sign_tally() as tally:
        check_identities(A, list(REGISTRY))
    assert tally[1] > 0 and tally[-1] == 0


def test_mixed_algebra_uses_negative_signs():
    with sign_tally() as tally:
        check_identity(_osp_twisted(), "HOM_LIE")
    assert tally[-1] > 0


def test_m7_hom_lie_violations():
    """Octonion associator vanishes only on quaternion triples: 210 - 42 = 168."""
    A = catalog_algebra("m7").algebra
    res = check_identity(A, "HOM_LIE")
    assert res.status == "fails"
    assert res.tuples_checked == 343
    assert res.total_violations == 168
    assert len(res.violations) == 16
    tuples = [v.tuple for v in res.violations]
    assert tuples == sorted(tuples)
    assert all(len(set(t)) == 3 for t in tuples)


def test_truncation_limits():
    A = catalog_algebra("m7").algebra
    assert check_identity(A, "HOM_LIE", max_violations=0).violations == ()
    assert len(check_identity(A, "HOM_LIE", max_violations=500).violations) == 168


def test_parallel_matches_serial():
    A = catalog_algebra("m7").algebra
    keys = ["HOM_LIE", "HOM_MALCEV", "S3"]
    assert check_identities(A, keys, workers=1) == check_identities(A, keys, workers=3)


def test_holds_shortcut_agrees():
    for A in catalog_twists("sl2") + catalog_twists("m7")[:2]:
        for key in ("HOM_LIE", "S1", "MALCEV_SUPER"):
            assert holds(A, key) == check_identity(A, key, max_violations=1).holds


def test_malcev_super_ignores_alpha():
    A = catalog_algebra("sl2").algebra
    B = yau_twist(A, EvenMap.diagonal([1, 2, Fraction(1, 2)]))
    assert holds(B, "HOM_LIE")
    assert not holds(B, "MALCEV_SUPER")


def test_dropped_operator_reads_as_plus():
    """Replacing the last + by - in the Hom-Malcev identity breaks it on m7."""
    A = catalog_algebra("m7").algebra
    d = REGISTRY["HOM_MALCEV"].form
    last = d.terms[-1]
    variant = Form("variant", d.slots, d.terms[:-1] + (type(last)(-last.coeff, last.sign, last.expr),))
    res = check_identity(A, IdentityDescriptor("variant", variant, "none", ""))
    assert res.total_violations > 0
    assert check_identity(A, "HOM_MALCEV").holds


def test_split_even_algebra(split_even):
    """Hom-Malcev identity holds while S1 fails; defect computed by hand."""
    A = split_even
    assert check_identity(A, "HOM_MALCEV").holds
    assert check_identity(A, "MALCEV_SUPER").holds
    s1 = check_identity(A, "S1")
    assert s1.total_violations > 0
    d = evaluate_defect(A, "S1", [A.basis(i) for i in (1, 2, 1, 2)])
    assert d.coeffs == (162, 0, 0, 0)
    assert not check_identity(A, "IDENT_C").holds


def test_split_super_algebra(split_super):
    A = split_super
    assert check_identity(A, "HOM_MALCEV").holds
    d = evaluate_defect(A, "S1", [A.basis(i) for i in (1, 1, 2, 2)])
    assert d.coeffs == (12, 0, 0, 0)
    assert not check_identity(A, "IDENT_C").holds
