import itertools

import pytest

from centrax import fixtures
from centrax.algebra import is_homomorphism, product
from centrax.caps import Caps
from centrax.congruence import Congruence, all_congruences, cg
from centrax.errors import CapExceeded, ValidationError
from centrax.factor import (
    FactorPair,
    check_fhp,
    decompose,
    factor_congruences,
    factor_pairs,
    factorize,
    is_factor_pair,
    product_congruence,
)
from oracles import all_congruence_labels, factor_pair_labels, product_factorizes, same_partition
from test_congruence import CON_COUNTS


def test_factor_pair_counts_match_frozen_table(catalog):
    for name, A in catalog.items():
        assert len(factor_pairs(A)) == CON_COUNTS[name][1], name


def test_factor_pairs_match_relational_oracle(catalog):
    for A in catalog.values():
        if A.size > 8:
            continue
        ref = factor_pair_labels(A)
        mine = factor_pairs(A)
        assert len(ref) == len(mine)
        for p in mine:
            assert any(same_partition(a, p.theta.rep) and same_partition(b, p.delta.rep) for a, b in ref)


def test_trivial_pairs_always_present(catalog):
    for A in catalog.values():
        n = A.size
        pairs = factor_pairs(A)
        assert FactorPair(Congruence.identity(n), Congruence.universal(n)) in pairs
        assert FactorPair(Congruence.universal(n), Congruence.identity(n)) in pairs


def test_d_is_directly_indecomposable_but_c_is_not():
    D, C = fixtures.m3(), fixtures.boolean(2)
    assert {(p.theta.rep, p.delta.rep) for p in factor_pairs(D)} == {
        (Congruence.identity(5).rep, Congruence.universal(5).rep),
        (Congruence.universal(5).rep, Congruence.identity(5).rep),
    }
    assert len(factor_pairs(C)) == 4


def test_factor_pairs_are_symmetric(catalog):
    for A in catalog.values():
        pairs = set(factor_pairs(A))
        assert {p.swapped for p in pairs} == pairs
    assert factor_congruences(fixtures.zmod(6))[0].is_identity()


def test_is_factor_pair_rejects_non_complements():
    A = fixtures.chain(3)
    a, b = cg(A, [(0, 1)]), cg(A, [(1, 2)])
    assert not is_factor_pair(a, b)


def test_decompose_gives_isomorphism(catalog):
    for A in catalog.values():
        for p in factor_pairs(A):
            d = decompose(A, p)
            assert is_homomorphism(A, d.product, d.iso.map)
            assert all(d.inverse[d.iso(x)] == x for x in range(A.size))
            assert all(d.iso(d.inverse[y]) == y for y in range(d.product.size))


def test_decompose_rejects_non_pairs():
    A = fixtures.chain(3)
    with pytest.raises(ValidationError):
        decompose(A, FactorPair(cg(A, [(0, 1)]), cg(A, [(1, 2)])))


def test_factorize_product_congruences():
    A, B = fixtures.chain(3), fixtures.chain(2)
    P = product([A, B])
    for d1 in all_congruences(A):
        for d2 in all_congruences(B):
            gamma = product_congruence(P, d1, d2)
            assert factorize(A, B, gamma, P) == (d1, d2)


def test_factorize_agrees_with_search():
    for kind in ("lattice", "meet", "join"):
        A, B = fixtures.chain(2, kind), fixtures.chain(3, kind)
        P = product([A, B])
        ca, cb = all_congruence_labels(A), all_congruence_labels(B)
        for gamma in all_congruences(P):
            assert (factorize(A, B, gamma, P) is not None) == product_factorizes(P, gamma.rep, ca, cb)


def test_skew_congruence_does_not_factorize():
    two = fixtures.chain(2, "join")
    P = product([two, two])
    el = P.element
    delta = cg(P, [(el("(1,0)"), el("(1,1)"))])
    assert factorize(two, two, delta, P) is None


def test_fhp_join_semilattice_witness():
    two = fixtures.chain(2, "join")
    rep = check_fhp(two, two)
    P = product([two, two])
    el = P.element
    assert rep.agree and not rep.verdict
    assert rep.witness == cg(P, [(el("(1,0)"), el("(1,1)"))])
    assert [(P.label(a), P.label(b)) for a, b in rep.witness_generators] == [("(1,0)", "(1,1)")]


def test_fhp_holds_for_lattices_and_rings():
    assert check_fhp(fixtures.chain(3), fixtures.chain(2)).verdict
    assert check_fhp(fixtures.boolean(2), fixtures.chain(3)).verdict
    assert check_fhp(fixtures.zmod(2), fixtures.zmod(3)).verdict
    assert check_fhp(fixtures.zmod(2), fixtures.zmod(2)).verdict


def test_fhp_verdicts_agree_on_small_products():
    algs = [A for A in fixtures.algebras().values() if A.size <= 4]
    for A, B in itertools.product(algs, repeat=2):
        if A.signature != B.signature or A.size * B.size > 12:
            continue
        assert check_fhp(A, B).agree, (A.name, B.name)


def test_fhp_cap():
    with pytest.raises(CapExceeded):
        check_fhp(fixtures.chain(4), fixtures.chain(4))
    assert check_fhp(fixtures.chain(4), fixtures.chain(4), Caps(congruences=16)).verdict
