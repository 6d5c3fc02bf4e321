"""Acceptance suite: one test per criterion, each reporting a PASS/FAIL line.

Lines are printed directly and collected for the terminal summary (see
conftest.py), so they show up in a plain ``pytest -v`` run.
"""

import itertools
import random
import time


from centrax import fixtures
from centrax.algebra import all_homomorphisms, product
from centrax.central import (
    analyze_homomorphism,
    central_elements,
    central_of_pair,
    check_formula_R,
    check_rexdfc,
)
from centrax.congruence import Congruence, cg, maltsev_witness
from centrax.errors import PremiseError
from centrax.factor import check_fhp, factor_congruences, factor_pairs
from centrax.formula import simple_formula
from centrax.free import synthesize_right_formula
from centrax.transfer import stability_pushout_check
from oracles import all_congruence_labels, least_congruence, same_partition

RESULTS = []


def report(number, title, ok, detail=""):
    line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {title}"
    if detail:
        line += f"  ({detail})"
    RESULTS.append(line)
    print(line)
    assert ok, line


def within_cap(A, limit=12):
    return A.size <= limit


def test_01_alpha_keeps_centrals_but_not_complements():
    rep = analyze_homomorphism(fixtures.build("alpha"))
    A = rep.hom.dom
    pair = tuple(A.labels(x) for x in rep.witnesses.get("complementary", ()))
    ok = (
        rep.preserves_centrals
        and not rep.preserves_complementary
        and pair in (("(0,1)", "(1,0)"), ("(1,0)", "(0,1)"))
    )
    report(1, "alpha: preserves centrals, not complementary pairs", ok, f"witness {pair}")


def test_02_inclusion_into_d():
    f = fixtures.build("C-into-D")
    rep = analyze_homomorphism(f)
    D, C = f.cod, f.dom
    d_pairs = {(p.theta, p.delta) for p in factor_pairs(D)}
    delta, nabla = Congruence.identity(D.size), Congruence.universal(D.size)
    ok = not rep.preserves_centrals and d_pairs == {(delta, nabla), (nabla, delta)} and len(factor_pairs(C)) == 4
    report(2, "C into D: centrals lost; D has only trivial factor pairs; C has 4", ok)


def test_03_meet_formula_on_semilattice_products():
    phi = simple_formula([("(meet x z)", "(meet y z)")])
    fam = fixtures.family("meet", 8)
    bad = [(A.name, B.name) for A, B in itertools.product(fam, repeat=2) if not check_formula_R(phi, A, B)]
    report(3, "x meet z = y meet z defines the right coordinate", not bad, f"{len(fam) ** 2} products, {len(bad)} failures")


def test_04_pairs_and_centrals_in_bijection(catalog):
    failures = []
    checked = 0
    for name, A in catalog.items():
        if not within_cap(A):
            continue
        checked += 1
        Z = central_elements(A)
        pairs = factor_pairs(A)
        h = {p: central_of_pair(A, p) for p in pairs}
        g = {e: Z[e].pair for e in Z}
        if any(g[h[p]] != p for p in pairs) or any(h[g[e]] != e for e in Z):
            failures.append(name)
        if len(Z) != len(factor_congruences(A)):
            failures.append(name)
    sizes = [len(central_elements(fixtures.boolean(k))) for k in (1, 2, 3)]
    sizes.insert(0, len(central_elements(fixtures.trivial())))
    ok = not failures and sizes == [1, 2, 4, 8]
    report(4, "factor pairs <-> central elements; |Z(2^k)| = 2^k", ok, f"{checked} algebras, |Z(2^k)| {sizes}")


def test_05_boolean_algebra_axioms(catalog):
    violations = 0
    for A in catalog.values():
        Z = central_elements(A)
        E = list(Z)
        m, j, c = Z.meet, Z.join, Z.complement
        bot, top = Z.bottom, Z.top
        for x in E:
            violations += m(x, c(x)) != bot
            violations += j(x, c(x)) != top
            violations += c(c(x)) != x
            violations += m(x, top) != x or j(x, bot) != x
        for x, y in itertools.product(E, repeat=2):
            violations += m(x, y) != m(y, x) or j(x, y) != j(y, x)
            violations += c(m(x, y)) != j(c(x), c(y))
            violations += c(j(x, y)) != m(c(x), c(y))
            violations += m(x, j(x, y)) != x or j(x, m(x, y)) != x
        for x, y, z in itertools.product(E, repeat=3):
            violations += m(m(x, y), z) != m(x, m(y, z))
            violations += j(j(x, y), z) != j(x, j(y, z))
            violations += m(x, j(y, z)) != j(m(x, y), m(x, z))
            violations += j(x, m(y, z)) != m(j(x, y), j(x, z))
    report(5, "Z(A) satisfies the Boolean algebra axioms", violations == 0, f"{len(catalog)} algebras, {violations} violations")


def test_06_cg_matches_partition_oracle():
    rng = random.Random(2024)
    mismatches = 0
    checks = 0
    for _ in range(200):
        size = rng.randint(1, 6)
        A = fixtures.random_algebra(rng.randrange(10**9), size, rng.randint(1, 2), 0)
        cons = all_congruence_labels(A)
        gens = [[(a, b)] for a in range(size) for b in range(a + 1, size)]
        gens += [
            [(rng.randrange(size), rng.randrange(size)) for _ in range(rng.randint(0, 3))] for _ in range(3)
        ]
        for pairs in gens:
            checks += 1
            mismatches += not same_partition(least_congruence(A, pairs, cons), cg(A, pairs).rep)
    report(6, "cg equals least compatible partition on 200 random algebras", mismatches == 0, f"{checks} generating sets, {mismatches} mismatches")


def test_07_fhp_verdicts_agree():
    algs = list(fixtures.algebras().values())
    disagreements = []
    checked = 0
    for A, B in itertools.product(algs, repeat=2):
        if A.signature != B.signature or A.m != B.m or A.size * B.size > 12:
            continue
        checked += 1
        if not check_fhp(A, B).agree:
            disagreements.append((A.name, B.name))
    two = fixtures.chain(2, "join")
    rep = check_fhp(two, two)
    P = product([two, two])
    expected = cg(P, [(P.element("(1,0)"), P.element("(1,1)"))])
    ok = not disagreements and not rep.verdict and rep.witness == expected
    report(7, "FHP verdicts agree; join-semilattice skew witness", ok, f"{checked} products, witness {rep.witness.rep}")


def test_08_rexdfc_and_chains():
    algs = fixtures.family("distributive", 12) + fixtures.family("meet", 12)
    algs = [A for A in algs if within_cap(A)]
    failures = []
    chains = 0
    for A in algs:
        Z = central_elements(A)
        if not check_rexdfc(Z):
            failures.append(A.name)
        for e in Z:
            theta = cg(A, list(zip(A.one, e)))
            for a in range(A.size):
                for b in range(A.size):
                    if a != b and theta.relates(a, b):
                        ch = maltsev_witness(A, a, b, A.one, e)
                        chains += 1
                        if not ch.validate(A):
                            failures.append((A.name, a, b))
    report(8, "RexDFC on lattices and meet semilattices; chains validate", not failures, f"{len(algs)} algebras, {chains} chains")


def test_09_formula_synthesis():
    start = time.perf_counter()
    phi = synthesize_right_formula(fixtures.chain(2, "meet"))
    fam = fixtures.family("meet", 8)
    bad = [(A.name, B.name) for A, B in itertools.product(fam, repeat=2) if not check_formula_R(phi, A, B)]
    elapsed = time.perf_counter() - start
    report(9, "synthesized existential formula defines the right coordinate", not bad and elapsed < 10,
           f"{len(fam) ** 2} products, {len(bad)} failures, {elapsed:.2f}s")


def _evidence_homs():
    homs = dict(fixtures.homomorphisms())
    # every homomorphism between small RexDFC fixtures, not just the shipped ones
    small = [A for A in fixtures.algebras().values() if A.size <= 4 and not A.name.endswith("-join")]
    for A, B in itertools.product(small, repeat=2):
        if A.signature != B.signature:
            continue
        for i, f in enumerate(all_homomorphisms(A, B)):
            homs[f"{A.name}->{B.name}#{i}"] = f
    return homs


def test_10_stability_matches_preservation():
    disagreements = []
    checked = 0
    for name, f in _evidence_homs().items():
        try:
            stable = stability_pushout_check(f).stable
        except PremiseError:
            continue
        checked += 1
        if stable != analyze_homomorphism(f).preserves_complementary:
            disagreements.append(name)
    alpha = fixtures.build("alpha")
    both_fail = not stability_pushout_check(alpha).stable and not analyze_homomorphism(alpha).preserves_complementary
    report(10, "pushout stability equals preservation of complementary pairs", not disagreements and both_fail,
           f"{checked} homomorphisms")


def test_11_complementary_implies_boolean():
    violations = []
    checked = 0
    for name, f in _evidence_homs().items():
        rep = analyze_homomorphism(f)
        if rep.preserves_complementary:
            checked += 1
            if not rep.boolean_hom:
                violations.append(name)
    report(11, "complement-preserving maps are Boolean homomorphisms on centers", not violations, f"{checked} homomorphisms")
