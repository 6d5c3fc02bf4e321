"""Reproduce the worked examples: the map alpha, the inclusion C -> D, and the
join-semilattice product where factor congruences fail to decompose."""

from centrax import fixtures
from centrax.algebra import product
from centrax.central import analyze_homomorphism, central_elements
from centrax.congruence import cg
from centrax.factor import check_fhp, factor_pairs
from centrax.transfer import stability_pushout_check


def show_hom(name):
    f = fixtures.build(name)
    rep = analyze_homomorphism(f)
    print(f"== {name}: {f.dom.name} -> {f.cod.name}")
    print("  map:", {f.dom.label(x): f.cod.label(f(x)) for x in range(f.dom.size)})
    print("  |Z(dom)| =", len(central_elements(f.dom)), " |Z(cod)| =", len(central_elements(f.cod)))
    print("  preserves centrals:", rep.preserves_centrals)
    print("  preserves complementary pairs:", rep.preserves_complementary)
    print("  Boolean homomorphism:", rep.boolean_hom)
    A = f.dom
    w = rep.witnesses
    if "central" in w:
        print("  central element not sent to a central element:", A.labels(w["central"]))
    if "complementary" in w:
        print("  complementary pair not preserved:", tuple(A.labels(e) for e in w["complementary"]))
    if "boolean" in w:
        op, xs = w["boolean"]
        print(f"  Boolean operation not preserved: {op} at", tuple(A.labels(e) for e in xs))
    return f


def main():
    alpha = show_hom("alpha")
    st = stability_pushout_check(alpha)
    print("  pushout stability:", st.stable, "witness", tuple(alpha.dom.labels(x) for x in st.witness or ()))

    f = show_hom("C-into-D")
    print("  factor pairs of C:", len(factor_pairs(f.dom)), " of D:", len(factor_pairs(f.cod)))

    two = fixtures.chain(2, "join")
    rep = check_fhp(two, two)
    P = product([two, two])
    print(f"== {P.name}: factor congruences decompose = {rep.verdict} (three checks agree: {rep.agree})")
    print("  failing congruence:", rep.witness.rep)
    print("  equals cg((1,0),(1,1)):", rep.witness == cg(P, [(P.element("(1,0)"), P.element("(1,1)"))]))


if __name__ == "__main__":
    main()
