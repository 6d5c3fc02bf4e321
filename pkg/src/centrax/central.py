"""Central elements, their Boolean algebra and preservation by homomorphisms.

A central element of ``A`` is a tuple ``e`` in ``A^m`` sent to ``[0, 1]`` by
some decomposition ``A -> A1 x A2``. Each one is stored together with its
factor pair ``(theta0, theta1)``: ``[e, 0] in theta0`` and ``[e, 1] in theta1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .algebra import FiniteAlgebra, Homomorphism, product
from .congruence import Congruence, cg, check_zero_one, join, meet, solve_system
from .errors import CentralityError, InvalidSystem, ValidationError
from .factor import FactorPair, factor_pairs
from .formula import PCFormula, relation


@dataclass(frozen=True)
class CentralElement:
    e: tuple[int, ...]
    theta0: Congruence
    theta1: Congruence

    @property
    def pair(self) -> FactorPair:
        return FactorPair(self.theta0, self.theta1)


def _unique(eqs_per_coord) -> tuple[int, ...]:
    """Solve one two-equation system per coordinate; each must have exactly one solution."""
    out = []
    for eqs in eqs_per_coord:
        try:
            x = solve_system(eqs)
        except InvalidSystem as exc:
            raise CentralityError(f"defining system is not a system: {exc}") from None
        if x is None:
            raise CentralityError("defining system has no solution")
        n = eqs[0][0].size
        if any(all(t.rep[y] == t.rep[xi] for t, xi in eqs) for y in range(x + 1, n)):
            raise CentralityError("defining system has more than one solution")
        out.append(x)
    return tuple(out)


class CentralAlgebra:
    """``Z(A)`` with its Boolean operations, keyed by the tuples ``e``."""

    def __init__(self, algebra: FiniteAlgebra, elements: Sequence[CentralElement]):
        self.algebra = algebra
        self.elements = tuple(sorted(elements, key=lambda c: c.e))
        self._by_e = {c.e: c for c in self.elements}
        A = algebra
        self.bottom = tuple(A.zero)
        self.top = tuple(A.one)
        self._complement = {}
        self._meet = {}
        self._join = {}
        for c in self.elements:
            self._complement[c.e] = self._check(
                _unique([[(c.theta0, o), (c.theta1, z)] for z, o in zip(A.zero, A.one)])
            )
        for c in self.elements:
            for d in self.elements:
                self._meet[c.e, d.e] = self._check(
                    _unique(
                        [
                            [(meet(c.theta0, d.theta0), z), (join(c.theta1, d.theta1), o)]
                            for z, o in zip(A.zero, A.one)
                        ]
                    )
                )
                self._join[c.e, d.e] = self._check(
                    _unique(
                        [
                            [(join(c.theta0, d.theta0), z), (meet(c.theta1, d.theta1), o)]
                            for z, o in zip(A.zero, A.one)
                        ]
                    )
                )

    def _check(self, e):
        if e not in self._by_e:
            raise CentralityError(f"Boolean operation produced non-central {e}")
        return e

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return (c.e for c in self.elements)

    def __contains__(self, e) -> bool:
        return tuple(e) in self._by_e

    def __getitem__(self, e) -> CentralElement:
        try:
            return self._by_e[tuple(e)]
        except KeyError:
            raise CentralityError(f"{tuple(e)} is not central") from None

    def complement(self, e):
        self[e]
        return self._complement[tuple(e)]

    def meet(self, e, f):
        self[e], self[f]
        return self._meet[tuple(e), tuple(f)]

    def join(self, e, f):
        self[e], self[f]
        return self._join[tuple(e), tuple(f)]

    def leq(self, e, f) -> bool:
        return self.meet(e, f) == tuple(e)

    def complementary(self, e, f) -> bool:
        """``e`` and ``f`` are a pair of complementary central elements."""
        if tuple(e) not in self or tuple(f) not in self:
            return False
        c = self[e]
        return self[f].theta0 == c.theta1 and self[f].theta1 == c.theta0

    def atoms(self) -> list:
        return [
            e
            for e in self
            if e != self.bottom and all(f in (self.bottom, e) for f in self if self.leq(f, e))
        ]

    def label(self, e) -> str:
        return self.algebra.labels(e)

    def to_dict(self) -> dict:
        lab = self.label
        return {
            "algebra": self.algebra.name,
            "size": len(self),
            "atoms": len(self.atoms()),
            "elements": [
                {
                    "e": lab(c.e),
                    "tuple": list(c.e),
                    "theta0": list(c.theta0.rep),
                    "theta1": list(c.theta1.rep),
                    "complement": lab(self._complement[c.e]),
                }
                for c in self.elements
            ],
        }


def central_of_pair(A, pair: FactorPair) -> tuple[int, ...]:
    """``h(theta)``: the unique ``e`` with ``[e, 0] in theta`` and ``[e, 1] in theta*``."""
    return _unique([[(pair.theta, z), (pair.delta, o)] for z, o in zip(A.zero, A.one)])


def central_elements(A, caps=None) -> CentralAlgebra:
    if not check_zero_one(A):
        raise CentralityError("theta(0, 1) is not universal; central elements are undefined")
    by_e: dict[tuple[int, ...], CentralElement] = {}
    for p in factor_pairs(A, caps):
        e = central_of_pair(A, p)
        if e in by_e:
            raise CentralityError(f"factor pairs are not determined by central elements (at {e})")
        by_e[e] = CentralElement(e, p.theta, p.delta)
    return CentralAlgebra(A, list(by_e.values()))


def _as_center(Z_or_A, caps=None) -> CentralAlgebra:
    if isinstance(Z_or_A, CentralAlgebra):
        return Z_or_A
    return central_elements(Z_or_A, caps)


def complement(Z_or_A, e):
    return _as_center(Z_or_A).complement(e)


def meet_c(Z_or_A, e, f):
    return _as_center(Z_or_A).meet(e, f)


def join_c(Z_or_A, e, f):
    return _as_center(Z_or_A).join(e, f)


def meet_by_membership(Z: CentralAlgebra, e, f) -> tuple[int, ...]:
    """The unique ``a`` with ``[0, a] in theta0(e)`` and ``[a, f] in theta1(e)``."""
    A, c = Z.algebra, Z[e]
    return _unique([[(c.theta0, z), (c.theta1, fi)] for z, fi in zip(A.zero, f)])


def join_by_membership(Z: CentralAlgebra, e, f) -> tuple[int, ...]:
    """The unique ``a`` with ``[1, a] in theta1(e)`` and ``[a, f] in theta0(e)``."""
    A, c = Z.algebra, Z[e]
    return _unique([[(c.theta1, o), (c.theta0, fi)] for o, fi in zip(A.one, f)])


# -- (DP), RexDFC, LexDFC ---------------------------------------------------


@dataclass
class DPReport:
    holds: bool
    factor_pairs: int
    complementary_pairs: int
    failures: list = field(default_factory=list)

    def to_dict(self, A=None) -> dict:
        lab = A.labels if A is not None else (lambda e: str(tuple(e)))
        return {
            "holds": self.holds,
            "factor_pairs": self.factor_pairs,
            "complementary_pairs": self.complementary_pairs,
            "failures": [{"e": lab(e), "f": lab(f), "pairs": k} for e, f, k in self.failures],
        }


def check_dp(A, caps=None) -> DPReport:
    """Each complementary central pair determines exactly one factor pair."""
    pairs = factor_pairs(A, caps)
    comp = set()
    for p in pairs:
        e = central_of_pair(A, p)
        f = central_of_pair(A, p.swapped)
        comp.add((e, f))
    failures = []
    for e, f in sorted(comp):
        count = 0
        for p in pairs:
            th, de = p.theta, p.delta
            if all(
                th.relates(ei, z) and de.relates(ei, o) and de.relates(fi, z) and th.relates(fi, o)
                for ei, fi, z, o in zip(e, f, A.zero, A.one)
            ):
                count += 1
        if count != 1:
            failures.append((e, f, count))
    return DPReport(not failures, len(pairs), len(comp), failures)


def rexdfc_counterexample(Z_or_A, caps=None):
    """First central ``e`` with ``theta1(e) != theta(1, e)``, or ``None``."""
    Z = _as_center(Z_or_A, caps)
    A = Z.algebra
    for c in Z.elements:
        if cg(A, list(zip(A.one, c.e))) != c.theta1:
            return c.e
    return None


def lexdfc_counterexample(Z_or_A, caps=None):
    Z = _as_center(Z_or_A, caps)
    A = Z.algebra
    for c in Z.elements:
        if cg(A, list(zip(A.zero, c.e))) != c.theta0:
            return c.e
    return None


def check_rexdfc(Z_or_A, caps=None) -> bool:
    return rexdfc_counterexample(Z_or_A, caps) is None


def check_lexdfc(Z_or_A, caps=None) -> bool:
    return lexdfc_counterexample(Z_or_A, caps) is None


# -- homomorphisms ----------------------------------------------------------


@dataclass
class PreservationReport:
    hom: Homomorphism
    preserves_centrals: bool
    preserves_complementary: bool
    boolean_hom: bool
    witnesses: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        A, B = self.hom.dom, self.hom.cod
        w = {}
        if "central" in self.witnesses:
            e = self.witnesses["central"]
            w["central"] = {"e": A.labels(e), "image": B.labels(self.hom(e))}
        if "complementary" in self.witnesses:
            e, f = self.witnesses["complementary"]
            w["complementary"] = {
                "pair": [A.labels(e), A.labels(f)],
                "image": [B.labels(self.hom(e)), B.labels(self.hom(f))],
            }
        if "boolean" in self.witnesses:
            op, args = self.witnesses["boolean"]
            w["boolean"] = {"operation": op, "args": [A.labels(a) for a in args]}
        return {
            "hom": self.hom.name,
            "dom": A.name,
            "cod": B.name,
            "preserves_centrals": self.preserves_centrals,
            "preserves_complementary": self.preserves_complementary,
            "boolean_hom": self.boolean_hom,
            "witnesses": w,
        }


def analyze_homomorphism(f: Homomorphism, Zdom=None, Zcod=None, caps=None) -> PreservationReport:
    Zd = Zdom if Zdom is not None else central_elements(f.dom, caps)
    Zc = Zcod if Zcod is not None else central_elements(f.cod, caps)
    witnesses = {}
    bad_central = next((e for e in Zd if f(e) not in Zc), None)
    centrals = bad_central is None
    if not centrals:
        witnesses["central"] = bad_central
    comp = centrals
    if centrals:
        for e in Zd:
            g = Zd.complement(e)
            if not Zc.complementary(f(e), f(g)):
                witnesses["complementary"] = (e, g)
                comp = False
                break
    boolean = centrals
    if centrals:
        checks = [("zero", (Zd.bottom,), f(Zd.bottom) == Zc.bottom), ("one", (Zd.top,), f(Zd.top) == Zc.top)]
        for e in Zd:
            checks.append(("complement", (e,), f(Zd.complement(e)) == Zc.complement(f(e))))
        for e in Zd:
            for g in Zd:
                checks.append(("meet", (e, g), f(Zd.meet(e, g)) == Zc.meet(f(e), f(g))))
                checks.append(("join", (e, g), f(Zd.join(e, g)) == Zc.join(f(e), f(g))))
        for op, args, ok in checks:
            if not ok:
                witnesses["boolean"] = (op, args)
                boolean = False
                break
    return PreservationReport(f, centrals, comp, boolean, witnesses)


# -- (R) and (L) formulas ---------------------------------------------------


def _formula_counterexample(phi: PCFormula, A, B, coord: int, caps=None):
    if phi.arity != 2 + A.m:
        raise ValidationError(f"formula has {phi.arity} free variables, expected {2 + A.m}")
    P = product([A, B], caps=caps)
    z = P.pair(A.zero, B.one)
    rel = relation(phi, P, z)
    for u in range(P.size):
        for v in range(P.size):
            cu, cv = P.decode(u), P.decode(v)
            if ((u, v) in rel) != (cu[coord] == cv[coord]):
                return cu, cv
    return None


def formula_R_counterexample(phi, A, B, caps=None):
    """First ``((a, c), (b, d))`` where ``phi(., ., [0, 1])`` disagrees with ``c = d``."""
    return _formula_counterexample(phi, A, B, 1, caps)


def formula_L_counterexample(phi, A, B, caps=None):
    return _formula_counterexample(phi, A, B, 0, caps)


def check_formula_R(phi: PCFormula, A, B, caps=None) -> bool:
    return formula_R_counterexample(phi, A, B, caps) is None


def check_formula_L(phi: PCFormula, A, B, caps=None) -> bool:
    return formula_L_counterexample(phi, A, B, caps) is None
