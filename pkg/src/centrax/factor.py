"""Factor congruences, direct decompositions and Fraser-Horn checks."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .algebra import Homomorphism, ProductAlgebra, product, quotient
from .caps import resolve
from .congruence import (
    Congruence,
    all_congruences,
    cg,
    congruence_to_dict,
    join,
    meet,
    principal,
    solve_system,
)
from .errors import CapExceeded, ValidationError


@dataclass(frozen=True)
class FactorPair:
    theta: Congruence
    delta: Congruence

    @property
    def swapped(self) -> "FactorPair":
        return FactorPair(self.delta, self.theta)


def is_factor_pair(theta: Congruence, delta: Congruence) -> bool:
    """``theta meet delta = Delta`` and ``theta o delta = Nabla``."""
    n = theta.size
    if not meet(theta, delta).is_identity():
        return False
    # with a trivial meet, x -> (x/theta, x/delta) is injective; the
    # composite is Nabla iff every theta-block meets every delta-block
    return theta.num_blocks * delta.num_blocks == n


def _uniform(theta: Congruence) -> bool:
    sizes = {len(b) for b in theta.blocks()}
    return len(sizes) == 1


def factor_pairs(A, caps=None) -> list[FactorPair]:
    """All ordered pairs of complementary factor congruences of ``A``."""
    n = A.size
    cons = [t for t in all_congruences(A, caps) if _uniform(t)]
    by_blocks: dict[int, list[Congruence]] = {}
    for t in cons:
        by_blocks.setdefault(t.num_blocks, []).append(t)
    out = []
    for theta in cons:
        q, r = divmod(n, theta.num_blocks)
        if r:
            continue
        for delta in by_blocks.get(q, ()):
            if is_factor_pair(theta, delta):
                out.append(FactorPair(theta, delta))
    out.sort(key=lambda p: (p.theta.sort_key(), p.delta.sort_key()))
    return out


def factor_congruences(A, caps=None) -> list[Congruence]:
    seen = []
    for p in factor_pairs(A, caps):
        if p.theta not in seen:
            seen.append(p.theta)
    return seen


@dataclass(frozen=True)
class Decomposition:
    left: object
    right: object
    product: ProductAlgebra
    iso: Homomorphism
    inverse: tuple[int, ...]


def decompose(A, pair: FactorPair, caps=None) -> Decomposition:
    """``A -> A/theta x A/delta``, with the inverse solved from systems."""
    theta, delta = pair.theta, pair.delta
    if not is_factor_pair(theta, delta):
        raise ValidationError("not a pair of complementary factor congruences")
    Q1 = quotient(A, theta, name=f"{A.name}/theta")
    Q2 = quotient(A, delta, name=f"{A.name}/delta")
    P = product([Q1, Q2], caps=caps)
    nu1, nu2 = Q1.canonical, Q2.canonical
    mp = tuple(P.encode((nu1.map[x], nu2.map[x])) for x in range(A.size))
    iso = Homomorphism(A, P, mp, "decomposition")
    assert iso.is_injective() and iso.is_surjective()
    inverse = []
    for y in range(P.size):
        i, j = P.decode(y)
        x = solve_system([(theta, Q1.blocks[i][0]), (delta, Q2.blocks[j][0])])
        assert x is not None
        inverse.append(x)
    return Decomposition(Q1, Q2, P, iso, tuple(inverse))


# -- factorisation over products ------------------------------------------


def product_congruence(P: ProductAlgebra, d1: Congruence, d2: Congruence) -> Congruence:
    """``d1 x d2`` on a binary product under its row-major encoding."""
    return Congruence.from_labels([(d1.rep[a], d2.rep[b]) for a, b in map(P.decode, range(P.size))])


def _coordinate_relation(P, delta, coord):
    size = P.factors[coord].size
    labels = list(range(size))
    parent = labels

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for u in range(P.size):
        for v in range(P.size):
            if u < v and delta.rep[u] == delta.rep[v]:
                cu, cv = P.decode(u), P.decode(v)
                if cu[1 - coord] == cv[1 - coord]:
                    ru, rv = find(cu[coord]), find(cv[coord])
                    if ru != rv:
                        parent[max(ru, rv)] = min(ru, rv)
    return Congruence(tuple(find(x) for x in range(size)))


def factorize(A, B, delta: Congruence, P: ProductAlgebra | None = None):
    """``(delta_1, delta_2)`` with ``delta = delta_1 x delta_2``, or ``None``."""
    if P is None:
        P = product([A, B])
    if delta.size != P.size:
        raise ValidationError("congruence does not live on A x B")
    d1 = _coordinate_relation(P, delta, 0)
    d2 = _coordinate_relation(P, delta, 1)
    if product_congruence(P, d1, d2) == delta:
        return d1, d2
    return None


@dataclass
class FHPReport:
    left: str
    right: str
    congruences: int
    all_factorize: bool
    pi_inequalities: bool
    principal_products: bool
    witness: Congruence | None = None
    witness_generators: list = field(default_factory=list)
    principal_witness: tuple | None = None

    @property
    def agree(self) -> bool:
        return self.all_factorize == self.pi_inequalities == self.principal_products

    @property
    def verdict(self) -> bool:
        return self.all_factorize and self.pi_inequalities and self.principal_products

    def to_dict(self, P=None) -> dict:
        base = P.name if P is not None else ""
        lab = (lambda x: P.label(x)) if P is not None else str
        return {
            "left": self.left,
            "right": self.right,
            "congruences": self.congruences,
            "verdicts": {
                "all_factorize": self.all_factorize,
                "pi_inequalities": self.pi_inequalities,
                "principal_products": self.principal_products,
            },
            "agree": self.agree,
            "verdict": self.verdict,
            "witness": congruence_to_dict(self.witness, base) if self.witness is not None else None,
            "witness_generators": [[lab(a), lab(b)] for a, b in self.witness_generators],
            "principal_witness": [lab(x) for x in self.principal_witness]
            if self.principal_witness is not None
            else None,
        }


def _pi_ok(P, gamma, pi1, pi2):
    return meet(pi1, join(pi2, gamma)) <= gamma and meet(pi2, join(pi1, gamma)) <= gamma


def _minimal_failing(P, failing, max_gens=3):
    """A smallest failing congruence among those with fewest generators.

    Ties are broken by listing generating pairs in colexicographic order of
    their coordinates (last coordinate most significant), so a failure that
    only moves the right factor is reported first.
    """
    colex = sorted(range(P.size), key=lambda x: tuple(reversed(P.decode(x))))
    rank = {x: i for i, x in enumerate(colex)}
    pairs = [(a, b) for i, a in enumerate(colex) for b in colex[i + 1 :]]
    for r in range(1, max_gens + 1):
        best = None
        for gens in itertools.combinations(pairs, r):
            g = cg(P, gens)
            if not failing(g):
                continue
            key = (-g.num_blocks, [(rank[a], rank[b]) for a, b in gens])
            if best is None or key < best[0]:
                best = (key, g, list(gens))
        if best is not None:
            return best[1], best[2]
    return None, []


def check_fhp(A, B, caps=None) -> FHPReport:
    caps = resolve(caps)
    if A.size * B.size > caps.congruences:
        raise CapExceeded(
            f"product of size {A.size * B.size} exceeds congruence-enumeration cap {caps.congruences}"
        )
    P = product([A, B], caps=caps)
    pi1 = Congruence.from_labels(P.projections[0].map)
    pi2 = Congruence.from_labels(P.projections[1].map)
    cons = all_congruences(P, caps)
    fact = [factorize(A, B, g, P) is not None for g in cons]
    ineq = [_pi_ok(P, g, pi1, pi2) for g in cons]
    principal_ok = True
    principal_witness = None
    for u in range(P.size):
        for v in range(u + 1, P.size):
            (a, b), (c, d) = P.decode(u), P.decode(v)
            lhs = principal(P, u, v)
            rhs = product_congruence(P, principal(A, a, c), principal(B, b, d))
            if lhs != rhs:
                principal_ok = False
                principal_witness = (u, v)
                break
        if not principal_ok:
            break
    report = FHPReport(
        left=A.name,
        right=B.name,
        congruences=len(cons),
        all_factorize=all(fact),
        pi_inequalities=all(ineq),
        principal_products=principal_ok,
        principal_witness=principal_witness,
    )
    if not report.verdict:
        report.witness, report.witness_generators = _minimal_failing(
            P, lambda g: factorize(A, B, g, P) is None or not _pi_ok(P, g, pi1, pi2)
        )
    return report
