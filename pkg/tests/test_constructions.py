from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import SPLIT_EVEN_SPEC, SPLIT_SUPER_SPEC, split_even_algebra, split_super_algebra
from homalcev.constructions import (
    CATALOG_KEYS,
    HOM_LIE_CLASS,
    MALCEV_CLASS,
    NotMorphismError,
    WeightedGenSpec,
    catalog_algebra,
    catalog_twists,
    cayley_dickson_mul,
    morphism_defects,
    octonion_table,
    quaternion_pair_mul,
    random_weighted_algebra,
    skew_closure,
    yau_twist,
)
from homalcev.identities import check_identity
from homalcev.superalgebra import (
    AlgebraError,
    Element,
    EvenMap,
    SuperAlgebra,
    check_multiplicativity,
    check_super_anticommutativity,
    multiply,
)

ints = st.integers(-4, 4)
octonions = st.lists(ints, min_size=8, max_size=8).map(lambda v: tuple(Fraction(c) for c in v))


def _norm(u):
    return sum(c * c for c in u)


def test_octonion_oracles_agree():
    assert octonion_table(cayley_dickson_mul) == octonion_table(quaternion_pair_mul)


@given(octonions, octonions)
def test_octonion_norm_is_multiplicative(u, v):
    assert _norm(cayley_dickson_mul(u, v)) == _norm(u) * _norm(v)


@given(octonions, octonions)
def test_octonions_are_alternative(u, v):
    m = cayley_dickson_mul
    assert m(m(u, u), v) == m(u, m(u, v))
    assert m(m(u, v), v) == m(u, m(v, v))


def test_octonion_units():
    table = octonion_table()
    one = table[0][0]
    assert one == tuple(Fraction(int(k == 0)) for k in range(8))
    for a in range(1, 8):
        assert table[a][a] == tuple(Fraction(-int(k == 0)) for k in range(8))
    # i j = k in the quaternion half
    assert table[1][2] == tuple(Fraction(int(k == 3)) for k in range(8))


def test_m7_constants_are_twice_octonion_products():
    A = catalog_algebra("m7").algebra
    table = octonion_table()
    for a in range(7):
        for b in range(7):
            expected = Element(tuple(2 * c for c in table[a + 1][b + 1][1:])) if a != b else Element.zero(7)
            assert A.structure[a][b] == expected


def test_catalog_keys_and_classes():
    assert CATALOG_KEYS == ("abelian:1|1", "heisenberg3", "sl2", "osp12", "m7")
    classes = {k: catalog_algebra(k).expected_class for k in CATALOG_KEYS}
    assert classes == {k: HOM_LIE_CLASS for k in CATALOG_KEYS[:4]} | {"m7": MALCEV_CLASS}
    for k in CATALOG_KEYS:
        A = catalog_algebra(k).algebra
        assert A.alpha.is_identity()
        assert not check_super_anticommutativity(A)


def test_catalog_unknown_key():
    with pytest.raises(AlgebraError):
        catalog_algebra("g2")


def test_abelian_variants():
    A = catalog_algebra("abelian:2|3").algebra
    assert A.parity == (0, 0, 1, 1, 1)
    assert list(A.nonzero_products()) == []
    with pytest.raises(AlgebraError):
        catalog_algebra("abelian:0|0")


def test_osp12_brackets_by_hand():
    """Supercommutators of h=E11-E22, e=E12, f=E21, q+=E10+E02, q-=E20-E01."""
    A = catalog_algebra("osp12").algebra
    h, e, f, qp, qm = (A.basis(i) for i in range(5))
    assert A.parity == (0, 0, 0, 1, 1)
    assert multiply(A, h, e) == e * 2
    assert multiply(A, e, f) == h
    assert multiply(A, qp, qp) == e * 2
    assert multiply(A, qm, qm) == f * -2
    assert multiply(A, qp, qm) == -h
    assert multiply(A, qm, qp) == -h
    assert multiply(A, h, qp) == qp
    assert multiply(A, h, qm) == -qm
    assert multiply(A, e, qm) == qp


def test_osp12_is_lie_superalgebra():
    A = catalog_algebra("osp12").algebra
    assert check_identity(A, "HOM_LIE").holds
    assert not check_identity(A, "HOM_LIE").violations


def test_catalog_twists_are_multiplicative():
    for k in CATALOG_KEYS:
        for B in catalog_twists(k):
            assert not check_multiplicativity(B), B.name
            assert not check_super_anticommutativity(B), B.name


def test_sl2_twist_constants():
    A = catalog_algebra("sl2").algebra
    B = yau_twist(A, EvenMap.diagonal([1, 2, Fraction(1, 2)]))
    h, e, f = (B.basis(i) for i in range(3))
    assert multiply(B, h, e) == e * 4
    assert multiply(B, h, f) == -f
    assert multiply(B, e, f) == h
    assert B.alpha == EvenMap.diagonal([1, 2, Fraction(1, 2)])


def test_identity_twist_is_noop():
    A = catalog_algebra("sl2").algebra
    B = yau_twist(A, EvenMap.identity(3), name="sl2")
    assert B == A


def test_scalar_map_is_not_a_morphism():
    A = catalog_algebra("sl2").algebra
    with pytest.raises(NotMorphismError) as info:
        yau_twist(A, EvenMap.diagonal([2, 2, 2]))
    assert info.value.witness == (0, 1)
    assert morphism_defects(A, EvenMap.diagonal([2, 2, 2]))


def test_twist_rejects_odd_map():
    A = catalog_algebra("osp12").algebra
    m = [[int(r == c) for c in range(5)] for r in range(5)]
    m[3][0] = 1
    with pytest.raises(AlgebraError):
        yau_twist(A, EvenMap(tuple(tuple(r) for r in m)))


def test_twist_of_twist_needs_commuting_map():
    A = catalog_algebra("sl2").algebra
    B = yau_twist(A, EvenMap.diagonal([1, 2, Fraction(1, 2)]))
    C = yau_twist(B, EvenMap.diagonal([1, 3, Fraction(1, 3)]))
    assert C.alpha == EvenMap.diagonal([1, 6, Fraction(1, 6)])
    assert check_identity(C, "HOM_LIE").holds
    chevalley = dict(catalog_algebra("sl2").twists)["chevalley"]
    with pytest.raises(NotMorphismError):
        yau_twist(B, chevalley)


def test_generator_matches_frozen_algebras():
    assert random_weighted_algebra(SPLIT_EVEN_SPEC).structure == split_even_algebra().structure
    assert random_weighted_algebra(SPLIT_SUPER_SPEC).structure == split_super_algebra().structure


def test_generator_label_and_validation():
    assert SPLIT_SUPER_SPEC.label() == "rand(d=4,p=0111,w=2,1,0,2,lam=1,b=3,seed=91)"
    with pytest.raises(AlgebraError):
        WeightedGenSpec(2, (0, 1), (0,), 1)
    with pytest.raises(AlgebraError):
        WeightedGenSpec(2, (0, 2), (0, 0), 1)
    with pytest.raises(AlgebraError):
        WeightedGenSpec(2, (0, 1), (0, 0), 0)


spec_strategy = st.integers(1, 4).flatmap(
    lambda d: st.builds(
        WeightedGenSpec,
        st.just(d),
        st.lists(st.integers(0, 1), min_size=d, max_size=d),
        st.lists(st.integers(0, 2), min_size=d, max_size=d),
        st.sampled_from([1, 2, Fraction(1, 2), -1]),
        st.integers(0, 3),
        st.integers(0, 2**31 - 1),
    )
)


@given(spec_strategy)
def test_generator_invariants(spec):
    A = random_weighted_algebra(spec)
    assert random_weighted_algebra(spec) == A
    assert not check_super_anticommutativity(A)
    assert not check_multiplicativity(A)
    for i, j, k, _ in A.nonzero_products():
        assert spec.weights[k] == spec.weights[i] + spec.weights[j]
        assert A.parity[k] == (A.parity[i] + A.parity[j]) % 2
    for i in range(A.dim):
        if A.parity[i] == 0:
            assert A.structure[i][i].is_zero()
    assert A.alpha == EvenMap.diagonal([spec.lam**w for w in spec.weights])


def test_odd_diagonal_products_occur():
    spec = WeightedGenSpec(2, (0, 1), (0, 0), 1, 3, 0)
    seen = any(
        not random_weighted_algebra(spec.with_seed(s)).structure[1][1].is_zero() for s in range(20)
    )
    assert seen


def test_skew_closure():
    A = SuperAlgebra.from_products(
        "half", (0, 1, 1), {(0, 1): {2: 1}, (1, 2): {0: 3}, (1, 1): {0: 5}, (0, 0): {0: 7}}
    )
    B = skew_closure(A)
    assert not check_super_anticommutativity(B)
    assert B.structure[1][0] == -A.structure[0][1]
    assert B.structure[2][1] == A.structure[1][2]
    assert B.structure[1][1] == A.structure[1][1]
    assert B.structure[0][0].is_zero()
