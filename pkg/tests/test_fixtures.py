import pytest

from centrax import fixtures
from centrax.algebra import algebra_to_dict, is_homomorphism, validate_algebra
from centrax.congruence import check_zero_one
from centrax.errors import ValidationError


def test_every_fixture_validates_and_passes_zero_one(catalog):
    for name, A in catalog.items():
        validate_algebra(algebra_to_dict(A))
        assert check_zero_one(A), name


def test_every_homomorphism_validates(homs):
    for name, f in homs.items():
        assert is_homomorphism(f.dom, f.cod, f.map), name


def test_alpha_is_the_stated_map():
    f = fixtures.build("alpha")
    A, B = f.dom, f.cod
    assert {A.label(x): B.label(f(x)) for x in range(A.size)} == {
        "(0,0)": "(0,0,0)",
        "(0,1)": "(1,0,0)",
        "(1,0)": "(0,0,1)",
        "(1,1)": "(1,1,1)",
    }


def test_inclusion_into_d_is_an_embedding():
    f = fixtures.build("C-into-D")
    assert f.is_injective()
    assert f.cod.size == 5 and set(f.cod.display) == {"0", "a", "b", "c", "1"}


def test_d_elements_pairwise_incomparable():
    D = fixtures.m3()
    a, b, c = (D.element(x) for x in "abc")
    for x, y in ((a, b), (a, c), (b, c)):
        assert D.apply("meet", (x, y)) == D.element("0")
        assert D.apply("join", (x, y)) == D.element("1")


def test_build_parameters():
    assert fixtures.build("chain", n=2).size == 2
    assert fixtures.build("Zmod", n=6).size == 6
    assert fixtures.build("boolean", k=3, kind="meet").size == 8
    assert fixtures.build("chain-product", sizes="2,3").size == 6
    with pytest.raises(ValidationError):
        fixtures.build("nope")
    with pytest.raises(ValidationError):
        fixtures.build("chain", bogus=1)


def test_semilattice_kinds_have_expected_signatures():
    assert fixtures.chain(3, "meet").signature.names == ("meet", "0", "1")
    assert fixtures.chain(3, "join").signature.names == ("join", "0", "1")
    assert fixtures.chain(3).signature.names == ("meet", "join", "0", "1")


def test_families_respect_size_bound():
    for kind in ("lattice", "distributive", "meet", "join", "ring"):
        fam = fixtures.family(kind, 8)
        assert fam and all(A.size <= 8 for A in fam)
        assert len({A.name for A in fam}) == len(fam)
    assert all(A.name != "D-lattice" for A in fixtures.family("distributive", 8))


def test_degenerate_is_flagged_by_zero_one():
    assert not check_zero_one(fixtures.degenerate())
