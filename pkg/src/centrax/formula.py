"""Existential conjunctions of equations (principal congruence formulas).

A formula has named free variables followed by ``witnesses`` existentially
quantified ones; ``Var(i)`` indexes that combined list. The formulas used to
detect equality on a product coordinate have free variables
``x, y, z0, ..., z{m-1}``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .errors import ValidationError
from .terms import Term, Var, compile_term, parse_sexpr, substitute, to_sexpr, variables


@dataclass(frozen=True)
class PCFormula:
    free: tuple[str, ...]
    witnesses: int
    equations: tuple[tuple[Term, Term], ...]
    chain: tuple[Term, ...] | None = None

    def __post_init__(self):
        limit = len(self.free) + self.witnesses
        for lhs, rhs in self.equations:
            for v in variables(lhs) | variables(rhs):
                if v >= limit:
                    raise ValidationError(f"variable {v} is not bound by the formula")

    @property
    def arity(self) -> int:
        return len(self.free)

    @property
    def k(self) -> int | None:
        return None if self.chain is None else len(self.chain)

    def name_of(self, i: int) -> str:
        return self.free[i] if i < len(self.free) else f"w{i - len(self.free)}"

    def to_sexpr(self) -> str:
        eqs = " ".join(
            f"(= {to_sexpr(l, self.name_of)} {to_sexpr(r, self.name_of)})" for l, r in self.equations
        )
        body = f"(and {eqs})" if len(self.equations) != 1 else eqs
        if not self.equations:
            body = "(and)"
        ws = " ".join(self.name_of(len(self.free) + j) for j in range(self.witnesses))
        head = " ".join(self.free)
        return f"(formula ({head}) (exists ({ws}) {body}))"

    def to_dict(self) -> dict:
        return {
            "free": list(self.free),
            "witnesses": [self.name_of(len(self.free) + j) for j in range(self.witnesses)],
            "equations": [
                [to_sexpr(l, self.name_of), to_sexpr(r, self.name_of)] for l, r in self.equations
            ],
            "sexpr": self.to_sexpr(),
        }

    @classmethod
    def from_dict(cls, raw: dict) -> "PCFormula":
        free = tuple(raw["free"])
        wit = list(raw.get("witnesses", []))
        names = {n: i for i, n in enumerate(list(free) + wit)}
        eqs = tuple((parse_sexpr(l, names), parse_sexpr(r, names)) for l, r in raw["equations"])
        return cls(free, len(wit), eqs)


def simple_formula(equations: Sequence[tuple[str, str]], m: int = 1) -> PCFormula:
    """Quantifier-free formula over ``x, y, z0..`` from s-expression pairs."""
    free = ("x", "y") + tuple(f"z{i}" for i in range(m))
    names = {n: i for i, n in enumerate(free)}
    if m == 1:
        names["z"] = 2
    eqs = tuple((parse_sexpr(l, names), parse_sexpr(r, names)) for l, r in equations)
    return PCFormula(free, 0, eqs)


def principal_congruence_formula(terms: Sequence[Term], m: int, p: int) -> PCFormula:
    """``pi(x, y, u, v)`` from chain terms over ``m`` generator and ``p`` parameter slots."""
    free = ("x", "y") + tuple(f"u{i}" for i in range(m)) + tuple(f"v{i}" for i in range(m))
    u_side = [Var(2 + i) for i in range(m)] + [Var(2 + 2 * m + j) for j in range(p)]
    v_side = [Var(2 + m + i) for i in range(m)] + [Var(2 + 2 * m + j) for j in range(p)]
    return PCFormula(free, p, _chain_equations(terms, u_side, v_side), tuple(terms))


def _chain_equations(terms, u_side, v_side):
    k = len(terms)
    if k % 2 == 0:
        raise ValidationError("a principal congruence formula needs an odd number of terms")
    tu = [substitute(t, u_side) for t in terms]
    tv = [substitute(t, v_side) for t in terms]
    eqs = [(Var(0), tu[0])]
    for i in range(1, k):
        if i % 2 == 0:
            eqs.append((tu[i - 1], tu[i]))
        else:
            eqs.append((tv[i - 1], tv[i]))
    eqs.append((tv[-1], Var(1)))
    return tuple(eqs)


def specialize_u(terms: Sequence[Term], m: int, p: int, u_terms: Sequence[Term]) -> PCFormula:
    """``phi(x, y, z) = pi(x, y, u_terms, z)`` with closed terms for ``u``."""
    for t in u_terms:
        if variables(t):
            raise ValidationError("terms substituted for u must be closed")
    free = ("x", "y") + tuple(f"z{i}" for i in range(m))
    u_side = list(u_terms) + [Var(2 + m + j) for j in range(p)]
    v_side = [Var(2 + i) for i in range(m)] + [Var(2 + m + j) for j in range(p)]
    return PCFormula(free, p, _chain_equations(terms, u_side, v_side), tuple(terms))


# -- evaluation -------------------------------------------------------------


def _compiled(phi, A):
    return [(compile_term(A, l), compile_term(A, r)) for l, r in phi.equations]


def eval_pcformula(phi: PCFormula, A, args: Sequence[int]) -> bool:
    """Exhaustive search for a witness tuple satisfying every equation."""
    args = tuple(args)
    if len(args) != phi.arity:
        raise ValidationError(f"formula takes {phi.arity} arguments, got {len(args)}")
    return _satisfied(_compiled(phi, A), A.size, phi.witnesses, args)


def _satisfied(eqs, n, witnesses, args):
    for w in itertools.product(range(n), repeat=witnesses):
        env = args + w
        if all(l(env) == r(env) for l, r in eqs):
            return True
    return False


def _split_endpoints(phi):
    """Return ``(x_term, y_term, core)`` if ``x`` and ``y`` each occur in exactly
    one equation of the form ``x = s`` / ``s = y`` with ``s`` free of both."""
    x_eq = y_eq = None
    core = []
    for l, r in phi.equations:
        vs = variables(l) | variables(r)
        if not vs & {0, 1}:
            core.append((l, r))
            continue
        if l == Var(0) and not variables(r) & {0, 1} and x_eq is None:
            x_eq = r
        elif r == Var(1) and not variables(l) & {0, 1} and y_eq is None:
            y_eq = l
        else:
            return None
    if x_eq is None or y_eq is None:
        return None
    return x_eq, y_eq, core


def relation(phi: PCFormula, A, rest: Sequence[int]) -> set[tuple[int, int]]:
    """``{(x, y) : A |= phi(x, y, *rest)}`` by exhaustive search."""
    rest = tuple(rest)
    if len(rest) != phi.arity - 2:
        raise ValidationError(f"formula takes {phi.arity - 2} parameters after x, y")
    split = _split_endpoints(phi)
    if split is None:
        return brute_relation(phi, A, rest)
    xt, yt, core = split
    fx, fy = compile_term(A, xt), compile_term(A, yt)
    core_c = [(compile_term(A, l), compile_term(A, r)) for l, r in core]
    out = set()
    for w in itertools.product(range(A.size), repeat=phi.witnesses):
        env = (0, 0) + rest + w
        if all(l(env) == r(env) for l, r in core_c):
            out.add((fx(env), fy(env)))
    return out


def brute_relation(phi: PCFormula, A, rest: Sequence[int]) -> set[tuple[int, int]]:
    rest = tuple(rest)
    eqs = _compiled(phi, A)
    return {
        (x, y)
        for x in range(A.size)
        for y in range(A.size)
        if _satisfied(eqs, A.size, phi.witnesses, (x, y) + rest)
    }
