import itertools

import pytest

from centrax import fixtures
from centrax.algebra import (
    FiniteAlgebra,
    Signature,
    algebra_to_dict,
    all_homomorphisms,
    compose,
    find_isomorphism,
    identity,
    is_homomorphism,
    product,
    quotient,
    subalgebra_generated,
    validate_algebra,
    validate_homomorphism,
)
from centrax.caps import Caps
from centrax.congruence import Congruence, cg
from centrax.errors import CapExceeded, HomomorphismError, ValidationError
from centrax.terms import App, Var, eval_term, parse_sexpr, substitute, to_sexpr


def test_round_trip_every_fixture(catalog):
    for A in catalog.values():
        B = validate_algebra(algebra_to_dict(A))
        assert algebra_to_dict(B) == algebra_to_dict(A)
        assert B.tables == A.tables and B.signature == A.signature


def test_rejects_bad_table_length():
    raw = algebra_to_dict(fixtures.chain(2))
    raw["tables"]["meet"] = raw["tables"]["meet"][:3]
    with pytest.raises(ValidationError, match="length"):
        validate_algebra(raw)


def test_rejects_out_of_range_entry():
    raw = algebra_to_dict(fixtures.chain(2))
    raw["tables"]["meet"][0] = 5
    with pytest.raises(ValidationError, match="out-of-range"):
        validate_algebra(raw)


def test_rejects_mismatched_constant_tuples():
    raw = algebra_to_dict(fixtures.chain(3))
    raw["zero"] = [0, 0]
    with pytest.raises(ValidationError, match="length"):
        validate_algebra(raw)


def test_rejects_missing_constants():
    raw = algebra_to_dict(fixtures.chain(3))
    del raw["one"]
    with pytest.raises(ValidationError, match="one"):
        validate_algebra(raw)


def test_designated_constants_must_be_closed_terms():
    # nullary 0 only, designated one points at an element no closed term reaches
    sig = Signature.of(("f", 1), ("0", 0))
    with pytest.raises(ValidationError, match="closed terms"):
        FiniteAlgebra(3, sig, ((0, 0, 0), (0,)), (0,), (2,))


def test_table_lookup_is_row_major():
    A = fixtures.zmod(5)
    for a, b in itertools.product(range(5), repeat=2):
        assert A.apply("+", (a, b)) == (a + b) % 5
        assert A.table("*")[a * 5 + b] == (a * b) % 5


def test_product_encoding_and_projections():
    A, B = fixtures.chain(2), fixtures.chain(3)
    P = product([A, B])
    assert P.size == 6
    for x in range(P.size):
        a, b = P.decode(x)
        assert P.encode((a, b)) == x
        assert P.projections[0](x) == a and P.projections[1](x) == b
    for x, y in itertools.product(range(6), repeat=2):
        (a, b), (c, d) = P.decode(x), P.decode(y)
        assert P.decode(P.apply("meet", (x, y))) == (min(a, c), min(b, d))
    for h in P.projections:
        assert is_homomorphism(P, h.cod, h.map)
    assert P.zero == (0,) and P.one == (5,)


def test_product_cap():
    A = fixtures.chain(8)
    with pytest.raises(CapExceeded):
        product([A, A, A])
    assert product([A, A], caps=Caps(product=64)).size == 64


def test_quotient_is_homomorphic_image():
    A = fixtures.zmod(6)
    theta = cg(A, [(0, 3)])
    Q = quotient(A, theta)
    assert Q.size == 3
    assert is_homomorphism(A, Q, Q.canonical.map)


def test_quotient_rejects_non_congruence():
    A = fixtures.chain(3)
    with pytest.raises(ValidationError):
        quotient(A, Congruence((0, 1, 0)))


def test_homomorphism_witness_reports_failing_operation():
    A = fixtures.chain(3)
    with pytest.raises(HomomorphismError) as exc:
        validate_homomorphism(A, A, [0, 2, 1])
    assert exc.value.witness is not None


def test_homomorphism_constants_checked():
    A = fixtures.chain(2)
    with pytest.raises(HomomorphismError) as exc:
        validate_homomorphism(A, A, [1, 1])
    assert exc.value.witness[0] in ("zero", "0")


def test_alpha_and_inclusion_are_valid():
    f = fixtures.alpha()
    assert f.is_injective()
    g = fixtures.c_into_d()
    assert g.is_injective() and not g.is_surjective()


def test_all_homomorphisms_of_chain_into_itself():
    A = fixtures.chain(3)
    maps = {h.map for h in all_homomorphisms(A, A)}
    # order- and bound-preserving maps on 0<1<2 keeping 0 and 2 fixed
    assert maps == {(0, 0, 2), (0, 1, 2), (0, 2, 2)}


def test_compose_and_identity():
    f = fixtures.alpha()
    assert compose(identity(f.cod), f).map == f.map
    assert compose(f, identity(f.dom)).map == f.map


def test_isomorphism_of_decomposed_products():
    A = product([fixtures.chain(2), fixtures.chain(3)])
    B = product([fixtures.chain(3), fixtures.chain(2)])
    assert find_isomorphism(A, B) is not None
    assert find_isomorphism(A, fixtures.chain(6)) is None


def test_subalgebra_generated_contains_constants():
    A = fixtures.boolean(2)
    sub, emb = subalgebra_generated(A, [A.element("(0,1)")])
    assert sub.size == 3
    assert is_homomorphism(sub, A, emb.map)


def test_make_algebra_element_tokens():
    A = fixtures.m3()
    assert A.element("a") == 1 and A.element(4) == 4
    with pytest.raises(ValidationError):
        A.element("zz")


def test_term_parse_print_round_trip():
    t = parse_sexpr("(meet x0 (join (1) u0))", {"x0": 0, "u0": 1})
    assert to_sexpr(t, ["x0", "u0"]) == "(meet x0 (join (1) u0))"
    A = fixtures.chain(3, "lattice")
    assert eval_term(A, t, (2, 1)) == 2
    s = substitute(t, [Var(1), App("0", ())])
    assert eval_term(A, s, (0, 2)) == 2


def test_random_algebras_are_reproducible():
    a = fixtures.random_algebra(7, 5, 2, 1)
    b = fixtures.random_algebra(7, 5, 2, 1)
    assert a.tables == b.tables
    assert fixtures.random_algebra(8, 5, 2, 1).tables != a.tables
