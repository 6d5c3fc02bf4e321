"""Pushouts of quotient maps along homomorphisms and the stability checks
built on them.

Every universal property here is checked on finite evidence only: against
explicitly supplied cocones and against the cocones given by the quotients
of the codomain.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

from .algebra import FiniteAlgebra, Homomorphism, QuotientAlgebra, is_homomorphism, quotient
from .caps import resolve
from .central import CentralAlgebra, analyze_homomorphism, central_elements, rexdfc_counterexample
from .congruence import Congruence, all_congruences, cg, principal
from .errors import CapExceeded, CentralityError, PremiseError, ValidationError
from .factor import is_factor_pair


@dataclass(frozen=True)
class PushoutSquare:
    """``top: A -> A/theta(S)``, ``bottom: B -> B/theta(f(S))`` and the
    induced ``right: A/theta(S) -> B/theta(f(S))``."""

    f: Homomorphism
    S: tuple[tuple[int, int], ...]
    top: Homomorphism
    bottom: Homomorphism
    right: Homomorphism

    def commutes(self) -> bool:
        f, top, bottom, right = self.f, self.top, self.bottom, self.right
        return all(bottom(f(x)) == right(top(x)) for x in range(f.dom.size))

    def to_dict(self) -> dict:
        A = self.f.dom
        return {
            "hom": self.f.name,
            "S": [[A.label(a), A.label(b)] for a, b in self.S],
            "top": {"codomain_size": self.top.cod.size, "map": list(self.top.map)},
            "bottom": {"codomain_size": self.bottom.cod.size, "map": list(self.bottom.map)},
            "right": list(self.right.map),
            "commutes": self.commutes(),
        }


def _pairs(A, S) -> tuple[tuple[int, int], ...]:
    out = []
    for a, b in S:
        a, b = A.element(a), A.element(b)
        out.append((a, b))
    return tuple(out)


def factor_through_quotient(Q: QuotientAlgebra, g: Homomorphism, name="h") -> Homomorphism:
    """The unique ``h`` with ``h . nu = g`` for ``g`` constant on the blocks of ``Q``."""
    if g.dom is not Q.base and g.dom.size != Q.base.size:
        raise ValidationError("cocone does not start at the quotiented algebra")
    mp = []
    for blk in Q.blocks:
        vals = {g(x) for x in blk}
        if len(vals) != 1:
            x, y = blk[0], next(z for z in blk if g(z) != g(blk[0]))
            raise ValidationError(
                f"cocone is not constant on S: it separates {Q.base.label(x)} and {Q.base.label(y)}"
            )
        mp.append(vals.pop())
    return Homomorphism(Q, g.cod, tuple(mp), name)


def pushout_quotient(f: Homomorphism, S: Sequence, cocone: Homomorphism | None = None):
    """Push ``A -> A/theta(S)`` out along ``f``.

    With a ``cocone`` ``g: A -> C`` constant on ``S``, also returns the
    factorisation ``h`` with ``h . top = g``.
    """
    A, B = f.dom, f.cod
    S = _pairs(A, S)
    QA = quotient(A, cg(A, S), name=f"{A.name}/theta(S)")
    QB = quotient(B, cg(B, [(f(a), f(b)) for a, b in S]), name=f"{B.name}/theta(f(S))")
    top, bottom = QA.canonical, QB.canonical
    right = Homomorphism(QA, QB, tuple(bottom(f(blk[0])) for blk in QA.blocks), "induced")
    if not is_homomorphism(QA, QB, right.map):
        raise ValidationError("induced map is not a homomorphism")
    sq = PushoutSquare(f, S, top, bottom, right)
    if not sq.commutes():
        raise ValidationError("pushout square does not commute")
    if cocone is None:
        return sq
    for a, b in S:
        if cocone(a) != cocone(b):
            raise ValidationError(
                f"cocone is not constant on S: it separates {A.label(a)} and {A.label(b)}"
            )
    return sq, factor_through_quotient(QA, cocone)


def commuting_maps(top: Homomorphism, target: Homomorphism, limit: int = 200_000) -> list[tuple[int, ...]]:
    """Every function ``h`` on ``top.cod`` with ``h . top = target``, by exhaustion."""
    Q, C = top.cod, target.cod
    if C.size**Q.size > limit:
        raise CapExceeded(f"{C.size}^{Q.size} candidate maps exceed exhaustion limit {limit}")
    out = []
    for h in itertools.product(range(C.size), repeat=Q.size):
        if all(h[top(x)] == target(x) for x in range(top.dom.size)):
            out.append(h)
    return out


@dataclass
class PushoutVerification:
    cocones: int
    failures: list = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return not self.failures

    def summary(self) -> str:
        state = "holds" if self.holds else f"fails ({len(self.failures)} cocones)"
        return f"universal property {state}; verified against {self.cocones} cocones"


def verify_pushout(sq: PushoutSquare, caps=None) -> PushoutVerification:
    """Check the pushout property against the cocones ``B -> B/gamma``.

    A cocone is ``(g, k)`` with ``g: B -> C``, ``k: A/theta(S) -> C`` and
    ``g . f = k . top``; the square is a pushout when each one factors
    uniquely through ``bottom`` and ``right``.
    """
    caps = resolve(caps)
    f, B = sq.f, sq.f.cod
    try:
        gammas = all_congruences(B, caps)
    except CapExceeded:
        gammas = {principal(B, a, b) for a in range(B.size) for b in range(a, B.size)}
        gammas = sorted(gammas | {Congruence.universal(B.size)}, key=Congruence.sort_key)
    count = 0
    failures = []
    QA, QB = sq.top.cod, sq.bottom.cod
    for gamma in gammas:
        # k exists iff g . f is constant on the blocks of A/theta(S)
        g = gamma.rep
        k = {}
        ok = True
        for x in range(f.dom.size):
            b = sq.top(x)
            if k.setdefault(b, g[f(x)]) != g[f(x)]:
                ok = False
                break
        if not ok:
            continue
        count += 1
        # h must satisfy h . bottom = g; bottom is onto, so h is forced
        h = {}
        for y in range(B.size):
            if h.setdefault(sq.bottom(y), g[y]) != g[y]:
                failures.append(gamma)
                break
        else:
            if any(h[sq.right(b)] != k[b] for b in range(QA.size)):
                failures.append(gamma)
    return PushoutVerification(count, failures)


# -- stability of decompositions --------------------------------------------


@dataclass
class StabilityEntry:
    e: tuple[int, ...]
    g: tuple[int, ...]
    left_size: int
    right_size: int
    bijective: bool
    squares_commute: bool


@dataclass
class StabilityReport:
    hom: Homomorphism
    entries: list
    stable: bool
    witness: tuple | None = None

    def to_dict(self) -> dict:
        A, B = self.hom.dom, self.hom.cod
        return {
            "hom": self.hom.name,
            "dom": A.name,
            "cod": B.name,
            "stable": self.stable,
            "evidence": "finite: decompositions of the domain pushed along the map",
            "pairs": [
                {
                    "pair": [A.labels(x.e), A.labels(x.g)],
                    "image": [B.labels(self.hom(x.e)), B.labels(self.hom(x.g))],
                    "quotient_sizes": [x.left_size, x.right_size],
                    "bijective": x.bijective,
                    "squares_commute": x.squares_commute,
                }
                for x in self.entries
            ],
            "witness": [A.labels(t) for t in self.witness] if self.witness else None,
        }


def _rexdfc_center(A, caps) -> CentralAlgebra:
    try:
        Z = central_elements(A, caps)
    except CentralityError as exc:
        raise PremiseError(f"{A.name}: {exc}") from None
    e = rexdfc_counterexample(Z)
    if e is not None:
        raise PremiseError(f"RexDFC evidence fails on {A.name} at {A.labels(e)}")
    return Z


def stability_pushout_check(f: Homomorphism, caps=None) -> StabilityReport:
    """For each complementary pair ``(e, g)`` of the domain, push the
    decomposition ``A -> A/theta(1, g) x A/theta(1, e)`` out along ``f`` and
    test whether ``B -> B/theta(1, f(g)) x B/theta(1, f(e))`` is bijective."""
    A, B = f.dom, f.cod
    Zd = _rexdfc_center(A, caps)
    _rexdfc_center(B, caps)
    entries = []
    witness = None
    for e in Zd:
        g = Zd.complement(e)
        sq1 = pushout_quotient(f, list(zip(A.one, g)))
        sq2 = pushout_quotient(f, list(zip(A.one, e)))
        t1 = cg(B, list(zip(B.one, f(g))))
        t2 = cg(B, list(zip(B.one, f(e))))
        bij = is_factor_pair(t1, t2)
        entries.append(
            StabilityEntry(e, g, t1.num_blocks, t2.num_blocks, bij, sq1.commutes() and sq2.commutes())
        )
        if not bij and witness is None:
            witness = (e, g)
    stable = all(x.bijective for x in entries)
    return StabilityReport(f, entries, stable, witness)


def stability_agrees(f: Homomorphism, caps=None) -> bool:
    return stability_pushout_check(f, caps).stable == analyze_homomorphism(f, caps=caps).preserves_complementary


# -- codisjointness ---------------------------------------------------------


@dataclass
class CodisjointnessReport:
    left: str
    right: str
    left_size: int
    right_size: int

    @property
    def holds(self) -> bool:
        return self.left_size == 1 and self.right_size == 1

    def to_dict(self) -> dict:
        return {
            "left": self.left,
            "right": self.right,
            "collapsed_sizes": [self.left_size, self.right_size],
            "terminal": self.holds,
        }


def codisjointness_report(A: FiniteAlgebra, B: FiniteAlgebra) -> CodisjointnessReport:
    """Both legs of the pushout of ``A <- A x B -> B`` must send ``0`` and
    ``1`` to the same element, since ``[0, 1]`` maps to ``0`` in ``A`` and to
    ``1`` in ``B``; the pushout is the quotient of each leg by ``theta(0, 1)``."""
    if A.signature != B.signature or A.m != B.m:
        raise ValidationError("algebras of different types")
    QA = cg(A, list(zip(A.zero, A.one)))
    QB = cg(B, list(zip(B.zero, B.one)))
    return CodisjointnessReport(A.name, B.name, QA.num_blocks, QB.num_blocks)


def codisjointness_check(A: FiniteAlgebra, B: FiniteAlgebra) -> bool:
    return codisjointness_report(A, B).holds
