"""Finitely generated free algebras and synthesis of the (R) formula.

The free algebra on ``k`` generators of the variety generated by a finite
algebra ``gen`` is the subalgebra of ``gen^(gen^k)`` generated by the
projections (and the nullary constants). Elements are stored as value
vectors, one entry per assignment in ``itertools.product(range(n), repeat=k)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

from .algebra import FiniteAlgebra, product
from .caps import resolve
from .central import central_elements, rexdfc_counterexample
from .congruence import MaltsevChain, cg, maltsev_witness
from .errors import CapExceeded, CentralityError, PremiseError, ValidationError
from .formula import PCFormula, specialize_u
from .terms import App, Term, Var, to_sexpr, variables


def default_names(k: int) -> tuple[str, ...]:
    if k <= 3:
        return ("x", "y", "z")[:k]
    return tuple(f"x{i}" for i in range(k))


@dataclass(frozen=True, repr=False)
class FreeAlgebra(FiniteAlgebra):
    gen: FiniteAlgebra | None = None
    rank: int = 0
    vectors: tuple[tuple[int, ...], ...] = ()
    terms: tuple[Term, ...] = ()
    variable_names: tuple[str, ...] = ()

    @cached_property
    def _by_vector(self) -> dict:
        return {v: i for i, v in enumerate(self.vectors)}

    def generator(self, i: int) -> int:
        """Index of the ``i``-th free generator."""
        return self._by_vector[_projection(self.gen.size, self.rank, i)]

    def index_of(self, vector) -> int | None:
        return self._by_vector.get(tuple(vector))

    def term_of(self, x: int) -> Term:
        return self.terms[x]

    def closed_term(self, x: int) -> Term:
        t = self.terms[x]
        if variables(t):
            raise ValidationError(f"element {self.label(x)} is not named by a closed term")
        return t


def _projection(n, k, i):
    return tuple(a[i] for a in itertools.product(range(n), repeat=k))


def free_algebra(gen: FiniteAlgebra, k: int, caps=None, names=None) -> FreeAlgebra:
    """``F(k)`` as a subalgebra of ``gen^(gen^k)``; terms have minimal depth."""
    caps = resolve(caps)
    n = gen.size
    if k < 0:
        raise ValidationError("rank must be non-negative")
    width = n**k
    if width > caps.power:
        raise CapExceeded(f"{n}^{k} assignments exceed power cap {caps.power}")
    names = tuple(names) if names is not None else default_names(k)
    if len(names) != k:
        raise ValidationError(f"{k} generator names expected")
    assigns = list(itertools.product(range(n), repeat=k))

    vectors: list[tuple[int, ...]] = []
    terms: list[Term] = []
    index: dict[tuple[int, ...], int] = {}

    max_ar = max((ar for _, ar in gen.signature), default=0)

    def add(vec, term):
        if vec in index:
            return False
        if (len(vectors) + 1) ** max(max_ar, 1) > caps.power:
            raise CapExceeded(
                f"free algebra on {k} generators outgrows power cap {caps.power} "
                f"({len(vectors) + 1} elements, arity {max_ar})"
            )
        index[vec] = len(vectors)
        vectors.append(vec)
        terms.append(term)
        return True

    for i in range(k):
        add(tuple(a[i] for a in assigns), Var(i))
    ops = [(sym, ar, gen.table(sym)) for sym, ar in gen.signature]
    for sym, ar, table in ops:
        if ar == 0:
            add((table[0],) * width, App(sym, ()))
    # breadth-first by depth: each round combines only elements known at its start
    while True:
        known = len(vectors)
        grew = False
        for sym, ar, table in ops:
            if ar == 0:
                continue
            for args in itertools.product(range(known), repeat=ar):
                cols = [vectors[a] for a in args]
                vec = []
                for j in range(width):
                    idx = 0
                    for c in cols:
                        idx = idx * n + c[j]
                    vec.append(table[idx])
                if add(tuple(vec), App(sym, tuple(Var(-1 - a) for a in args))):
                    grew = True
        if not grew:
            break
    # expand back-references (Var(-1 - a) points at element a) into full terms
    full: list[Term] = []
    for t in terms:
        full.append(_expand(t, full))
    N = len(vectors)

    tables = []
    for sym, ar, table in ops:
        tab = []
        for args in itertools.product(range(N), repeat=ar):
            if ar == 0:
                tab.append(index[(table[0],) * width])
                continue
            cols = [vectors[a] for a in args]
            vec = []
            for j in range(width):
                idx = 0
                for c in cols:
                    idx = idx * n + c[j]
                vec.append(table[idx])
            tab.append(index[tuple(vec)])
        tables.append(tuple(tab))

    def const(v):
        vec = (v,) * width
        if vec not in index:
            raise ValidationError(
                f"designated constant {gen.label(v)} is not a closed term of {gen.name}"
            )
        return index[vec]

    zero = tuple(const(v) for v in gen.zero)
    one = tuple(const(v) for v in gen.one)
    display = tuple(to_sexpr(t, names) if isinstance(t, App) else names[t.index] for t in full)
    return FreeAlgebra(
        size=N,
        signature=gen.signature,
        tables=tuple(tables),
        zero=zero,
        one=one,
        name=f"F({','.join(names)})",
        display=display,
        gen=gen,
        rank=k,
        vectors=tuple(vectors),
        terms=tuple(full),
        variable_names=names,
    )


def _expand(t, done):
    if isinstance(t, Var):
        return done[-1 - t.index] if t.index < 0 else t
    return App(t.symbol, tuple(_expand(a, done) for a in t.args))


# -- synthesis ---------------------------------------------------------------


@dataclass
class Synthesis:
    formula: PCFormula
    chain: MaltsevChain
    two: FreeAlgebra
    one: FreeAlgebra
    product: FiniteAlgebra
    one_terms: tuple[Term, ...]

    def to_dict(self) -> dict:
        return {
            "generator": self.two.gen.name,
            "free_sizes": {"F(x,y)": self.two.size, "F(y)": self.one.size},
            "chain": self.chain.to_dict(self.product),
            "k": self.chain.k,
            "p": len(self.chain.params),
            "one_terms": [to_sexpr(t) for t in self.one_terms],
            "formula": self.formula.to_dict(),
        }


def rexdfc_evidence(gen: FiniteAlgebra, caps=None):
    """``None`` if RexDFC holds on ``gen`` and ``gen x gen``; otherwise a reason."""
    caps = resolve(caps)
    for A in (gen, product([gen, gen], caps=caps)):
        try:
            Z = central_elements(A, caps)
        except CentralityError as exc:
            return f"{A.name}: {exc}"
        e = rexdfc_counterexample(Z)
        if e is not None:
            return f"{A.name}: theta1 of {A.labels(e)} is not theta(1, e)"
    return None


def synthesize(gen: FiniteAlgebra, caps=None) -> Synthesis:
    """Extract ``phi(x, y, z)`` from a chain for ``((x,y),(y,y))`` in
    ``theta([1, 1], [0, 1])`` on ``F(x,y) x F(y)``."""
    caps = resolve(caps)
    reason = rexdfc_evidence(gen, caps)
    if reason is not None:
        raise PremiseError(f"RexDFC evidence fails on {reason}")
    F2 = free_algebra(gen, 2, caps, names=("x", "y"))
    F1 = free_algebra(gen, 1, caps, names=("y",))
    F0 = free_algebra(gen, 0, caps)
    P = product([F2, F1], caps=caps, name="F(x,y)xF(y)")
    c = P.pair(F2.one, F1.one)
    d = P.pair(F2.zero, F1.one)
    y1 = F1.generator(0)
    a = P.encode((F2.generator(0), y1))
    b = P.encode((F2.generator(1), y1))
    if not cg(P, list(zip(c, d))).relates(a, b):
        raise PremiseError("((x,y),(y,y)) is not in theta([1,1],[0,1]) on F(x,y) x F(y)")
    chain = maltsev_witness(P, a, b, c, d, caps)
    one_terms = tuple(F0.closed_term(F0.one[i]) for i in range(gen.m))
    phi = specialize_u(chain.terms, gen.m, len(chain.params), one_terms)
    return Synthesis(phi, chain, F2, F1, P, one_terms)


def synthesize_right_formula(gen: FiniteAlgebra, caps=None) -> PCFormula:
    return synthesize(gen, caps).formula
