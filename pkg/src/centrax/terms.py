"""Terms over a finite signature, their evaluation and s-expression form.

Variables are integer indices into an assignment tuple. Applications are
always printed parenthesised, so ``(0)`` is the nullary symbol ``0`` and a bare
atom is always a variable.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Sequence

from .errors import ValidationError


@dataclass(frozen=True)
class Var:
    index: int


@dataclass(frozen=True)
class App:
    symbol: str
    args: tuple = ()


Term = Var | App


def var(i):
    return Var(i)


def app(symbol, *args):
    return App(symbol, tuple(args))


def variables(t) -> set[int]:
    if isinstance(t, Var):
        return {t.index}
    out = set()
    for a in t.args:
        out |= variables(a)
    return out


def depth(t) -> int:
    if isinstance(t, Var) or not t.args:
        return 0
    return 1 + max(depth(a) for a in t.args)


def substitute(t, mapping: Sequence) -> Term:
    """Replace each ``Var(i)`` by ``mapping[i]``."""
    if isinstance(t, Var):
        return mapping[t.index]
    return App(t.symbol, tuple(substitute(a, mapping) for a in t.args))


def check_term(signature, t, arity=None):
    """Raise ``ValidationError`` unless ``t`` respects ``signature``."""
    if isinstance(t, Var):
        if t.index < 0 or (arity is not None and t.index >= arity):
            raise ValidationError(f"variable index {t.index} out of range")
        return
    if t.symbol not in signature:
        raise ValidationError(f"unknown symbol {t.symbol!r}")
    if signature.arity(t.symbol) != len(t.args):
        raise ValidationError(
            f"symbol {t.symbol!r} has arity {signature.arity(t.symbol)}, got {len(t.args)} arguments"
        )
    for a in t.args:
        check_term(signature, a, arity)


def eval_term(A, t, assignment: Sequence[int]) -> int:
    if isinstance(t, Var):
        if t.index >= len(assignment) or t.index < 0:
            raise ValidationError(f"unbound variable {t.index}")
        return assignment[t.index]
    return A.apply(t.symbol, [eval_term(A, a, assignment) for a in t.args])


def compile_term(A, t) -> Callable[[Sequence[int]], int]:
    """Closure evaluating ``t`` in ``A``; used in exhaustive formula search."""
    if isinstance(t, Var):
        i = t.index
        return lambda env: env[i]
    table = A.table(t.symbol)
    n = A.size
    subs = [compile_term(A, a) for a in t.args]
    if not subs:
        value = table[0]
        return lambda env: value
    if len(subs) == 1:
        (s,) = subs
        return lambda env: table[s(env)]
    if len(subs) == 2:
        s0, s1 = subs
        return lambda env: table[s0(env) * n + s1(env)]

    def run(env):
        idx = 0
        for s in subs:
            idx = idx * n + s(env)
        return table[idx]

    return run


def to_sexpr(t, names: Callable[[int], str] | Sequence[str] | None = None) -> str:
    if isinstance(t, Var):
        if names is None:
            return f"x{t.index}"
        if callable(names):
            return names(t.index)
        return names[t.index]
    inner = " ".join([t.symbol] + [to_sexpr(a, names) for a in t.args])
    return f"({inner})"


_TOKEN = re.compile(r"\(|\)|[^\s()]+")


def parse_sexpr(text: str, names: dict[str, int] | None = None) -> Term:
    """Inverse of :func:`to_sexpr`. Without ``names``, atoms must be ``x<i>``."""
    tokens = _TOKEN.findall(text)
    pos = 0

    def atom(tok):
        if names is not None:
            if tok not in names:
                raise ValidationError(f"unknown variable {tok!r}")
            return Var(names[tok])
        m = re.fullmatch(r"x(\d+)", tok)
        if not m:
            raise ValidationError(f"unknown variable {tok!r}")
        return Var(int(m.group(1)))

    def parse():
        nonlocal pos
        if pos >= len(tokens):
            raise ValidationError("unexpected end of term")
        tok = tokens[pos]
        pos += 1
        if tok == ")":
            raise ValidationError("unexpected ')'")
        if tok != "(":
            return atom(tok)
        if pos >= len(tokens) or tokens[pos] in "()":
            raise ValidationError("missing symbol after '('")
        symbol = tokens[pos]
        pos += 1
        args = []
        while pos < len(tokens) and tokens[pos] != ")":
            args.append(parse())
        if pos >= len(tokens):
            raise ValidationError("unbalanced parentheses")
        pos += 1
        return App(symbol, tuple(args))

    t = parse()
    if pos != len(tokens):
        raise ValidationError("trailing tokens after term")
    return t
