import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from centrax import fixtures
from centrax.caps import Caps
from centrax.central import check_formula_R
from centrax.congruence import maltsev_witness
from centrax.errors import CapExceeded, PremiseError, ValidationError
from centrax.formula import (
    PCFormula,
    brute_relation,
    eval_pcformula,
    principal_congruence_formula,
    relation,
    simple_formula,
    specialize_u,
)
from centrax.free import free_algebra, rexdfc_evidence, synthesize, synthesize_right_formula
from centrax.terms import App, Var, eval_term, parse_sexpr


# -- free algebras ----------------------------------------------------------


def test_free_meet_semilattice_sizes():
    two = fixtures.chain(2, "meet")
    F1 = free_algebra(two, 1, names=("y",))
    F2 = free_algebra(two, 2)
    assert F1.size == 3 and F2.size == 5
    assert set(F2.display) == {"x", "y", "(0)", "(1)", "(meet x y)"}


def test_free_distributive_lattice_and_boolean_ring():
    assert free_algebra(fixtures.chain(2), 2).size == 6
    assert free_algebra(fixtures.zmod(2), 1).size == 4
    # every Boolean function of two variables is a ring polynomial over Z2
    assert free_algebra(fixtures.zmod(2), 2).size == 16


def test_free_terms_evaluate_to_their_vectors():
    for gen, k in ((fixtures.chain(2, "meet"), 2), (fixtures.chain(3), 2), (fixtures.zmod(3), 1)):
        F = free_algebra(gen, k)
        assigns = list(itertools.product(range(gen.size), repeat=k))
        for t, vec in zip(F.terms, F.vectors):
            assert [eval_term(gen, t, a) for a in assigns] == list(vec)


def test_free_generators_and_constants():
    gen = fixtures.chain(3, "meet")
    F = free_algebra(gen, 2)
    assert F.term_of(F.generator(0)) == Var(0)
    assert F.term_of(F.generator(1)) == Var(1)
    assert F.closed_term(F.one[0]) == App("1", ())
    with pytest.raises(ValidationError):
        F.closed_term(F.generator(0))


def test_free_algebra_operations_are_pointwise():
    gen = fixtures.chain(2)
    F = free_algebra(gen, 2)
    for a, b in itertools.product(range(F.size), repeat=2):
        vec = F.vectors[F.apply("meet", (a, b))]
        assert vec == tuple(min(x, y) for x, y in zip(F.vectors[a], F.vectors[b]))


def test_free_algebra_caps():
    with pytest.raises(CapExceeded):
        free_algebra(fixtures.zmod(3), 3, Caps(power=20))
    # Z3 is primal: 3^9 binary term functions, far past the default cap
    with pytest.raises(CapExceeded):
        free_algebra(fixtures.zmod(3), 2)


def test_free_algebra_needs_closed_constants():
    # no nullary symbols: the designated constants are not term values
    with pytest.raises(ValidationError):
        free_algebra(fixtures.random_algebra(1, 3), 1)


# -- formulas ---------------------------------------------------------------


def test_formula_sexpr_and_dict_round_trip():
    phi = simple_formula([("(meet x z)", "(meet y z)")])
    assert phi.to_sexpr() == "(formula (x y z0) (exists () (= (meet x z0) (meet y z0))))"
    again = PCFormula.from_dict(phi.to_dict())
    assert again.equations == phi.equations and again.free == phi.free


def test_formula_rejects_unbound_variables():
    with pytest.raises(ValidationError):
        PCFormula(("x",), 0, ((Var(0), Var(3)),))


def test_eval_simple_formula():
    A = fixtures.chain(3, "meet")
    phi = simple_formula([("(meet x z)", "(meet y z)")])
    assert eval_pcformula(phi, A, (2, 1, 0))
    assert not eval_pcformula(phi, A, (2, 1, 2))
    with pytest.raises(ValidationError):
        eval_pcformula(phi, A, (0, 1))


formula_terms = st.sampled_from(
    ["x", "y", "z0", "w0", "w1", "(meet x w0)", "(meet z0 w1)", "(meet w0 w1)", "(meet y z0)", "(1)", "(0)"]
)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(formula_terms, formula_terms), min_size=1, max_size=3), st.integers(0, 3))
def test_relation_fast_path_matches_brute_force(eqs, z):
    names = {"x": 0, "y": 1, "z0": 2, "w0": 3, "w1": 4}
    phi = PCFormula(
        ("x", "y", "z0"), 2, tuple((parse_sexpr(l, names), parse_sexpr(r, names)) for l, r in eqs)
    )
    A = fixtures.chain(4, "meet")
    assert relation(phi, A, (z,)) == brute_relation(phi, A, (z,))


def test_principal_formula_holds_on_chain_witnesses():
    A = fixtures.boolean(2, "meet")
    c, d = (A.element("(1,0)"),), (A.element("(1,1)"),)
    for a, b in [(0, 1), (2, 3), (0, 0)]:
        ch = maltsev_witness(A, a, b, c, d)
        pi = principal_congruence_formula(ch.terms, 1, len(ch.params))
        assert eval_pcformula(pi, A, (a, b) + c + d)
    ch = maltsev_witness(A, 0, 1, c, d)
    pi = principal_congruence_formula(ch.terms, 1, len(ch.params))
    # the formula does not relate elements outside theta(c, d)
    assert not eval_pcformula(pi, A, (0, 2) + c + d)


def test_specialize_requires_closed_terms():
    with pytest.raises(ValidationError):
        specialize_u([Var(0)], 1, 0, [Var(0)])


# -- synthesis --------------------------------------------------------------


def test_synthesis_on_two_chain_meet_semilattice():
    syn = synthesize(fixtures.chain(2, "meet"))
    assert syn.two.size == 5 and syn.one.size == 3
    assert syn.chain.validate(syn.product)
    assert syn.chain.k % 2 == 1
    phi = syn.formula
    assert phi.free == ("x", "y", "z0")
    assert phi.witnesses == len(syn.chain.params)
    for A, B in itertools.product(fixtures.family("meet", 4), repeat=2):
        assert check_formula_R(phi, A, B), (A.name, B.name)


def test_synthesis_on_lattices_and_rings():
    for gen, kind in ((fixtures.chain(2), "distributive"), (fixtures.zmod(2), "ring")):
        phi = synthesize_right_formula(gen)
        for A, B in itertools.product(fixtures.family(kind, 4), repeat=2):
            assert check_formula_R(phi, A, B), (A.name, B.name)


def test_synthesis_premise_fails_for_join_semilattices():
    gen = fixtures.chain(2, "join")
    assert rexdfc_evidence(gen) is not None
    with pytest.raises(PremiseError):
        synthesize(gen)
