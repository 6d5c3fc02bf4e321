"""Finite algebras: representation, validation and basic constructions.

The carrier of an algebra of size ``n`` is always ``range(n)``. Operation
tables are flat row-major tuples, so the value of a ``k``-ary symbol at
``(a_1, ..., a_k)`` sits at ``sum(a_i * n**(k-i))``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .caps import resolve
from .errors import CapExceeded, HomomorphismError, ValidationError


@dataclass(frozen=True)
class Signature:
    symbols: tuple[tuple[str, int], ...]

    def __post_init__(self):
        names = [s for s, _ in self.symbols]
        if len(set(names)) != len(names):
            raise ValidationError("duplicate symbol names in signature")
        for s, k in self.symbols:
            if not isinstance(k, int) or k < 0:
                raise ValidationError(f"symbol {s!r} has invalid arity {k!r}")

    @classmethod
    def of(cls, *pairs):
        return cls(tuple((str(s), int(k)) for s, k in pairs))

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(s for s, _ in self.symbols)

    def arity(self, symbol: str) -> int:
        for s, k in self.symbols:
            if s == symbol:
                return k
        raise KeyError(symbol)

    def __contains__(self, symbol) -> bool:
        return any(s == symbol for s, _ in self.symbols)

    def __iter__(self):
        return iter(self.symbols)

    def __len__(self):
        return len(self.symbols)


@dataclass(frozen=True)
class FiniteAlgebra:
    """An algebra on ``{0..size-1}`` with designated constant tuples.

    ``zero`` and ``one`` are the tuples playing the role of the 0-ary terms
    of the variety; they need not be symbols of the signature, but when the
    signature has nullary symbols each designated entry must be the value of
    a closed term.
    """

    size: int
    signature: Signature
    tables: tuple[tuple[int, ...], ...]
    zero: tuple[int, ...]
    one: tuple[int, ...]
    name: str = ""
    display: tuple[str, ...] | None = None

    def __post_init__(self):
        n = self.size
        if not isinstance(n, int) or n < 1:
            raise ValidationError(f"size must be a positive integer, got {n!r}")
        if len(self.tables) != len(self.signature):
            raise ValidationError("one table per symbol is required")
        for (sym, k), table in zip(self.signature, self.tables):
            if len(table) != n**k:
                raise ValidationError(
                    f"table of {sym!r} has length {len(table)}, expected {n**k} (arity {k})"
                )
            for v in table:
                if not isinstance(v, int) or not 0 <= v < n:
                    raise ValidationError(f"table of {sym!r} has out-of-range entry {v!r}")
        if not self.zero or not self.one:
            raise ValidationError("zero and one tuples must be non-empty")
        if len(self.zero) != len(self.one):
            raise ValidationError(
                f"zero has length {len(self.zero)} but one has length {len(self.one)}"
            )
        for v in self.zero + self.one:
            if not isinstance(v, int) or not 0 <= v < n:
                raise ValidationError(f"designated constant {v!r} out of range")
        if self.display is not None and len(self.display) != n:
            raise ValidationError("display table must name every element")
        nullary = [t[0] for (s, k), t in zip(self.signature, self.tables) if k == 0]
        if nullary:
            closed = self._closure(set(nullary))
            missing = [v for v in self.zero + self.one if v not in closed]
            if missing:
                raise ValidationError(
                    f"designated constants {missing} are not values of closed terms"
                )

    # -- access -------------------------------------------------------------

    @property
    def m(self) -> int:
        return len(self.zero)

    @property
    def elements(self) -> range:
        return range(self.size)

    @cached_property
    def _index(self) -> dict[str, int]:
        return {s: i for i, (s, _) in enumerate(self.signature)}

    def table(self, symbol: str) -> tuple[int, ...]:
        try:
            return self.tables[self._index[symbol]]
        except KeyError:
            raise ValidationError(f"unknown symbol {symbol!r}") from None

    def apply(self, symbol: str, args: Sequence[int]) -> int:
        table = self.table(symbol)
        idx = 0
        for a in args:
            idx = idx * self.size + a
        return table[idx]

    def label(self, x: int) -> str:
        return self.display[x] if self.display is not None else str(x)

    def labels(self, xs: Iterable[int]) -> str:
        xs = tuple(xs)
        if len(xs) == 1:
            return self.label(xs[0])
        return "(" + ",".join(self.label(x) for x in xs) + ")"

    def element(self, token) -> int:
        """Resolve a display name or integer index to an element."""
        if isinstance(token, int):
            if 0 <= token < self.size:
                return token
            raise ValidationError(f"element {token} out of range")
        token = str(token).strip()
        if self.display is not None and token in self.display:
            return self.display.index(token)
        if token.lstrip("-").isdigit() and 0 <= int(token) < self.size:
            return int(token)
        raise ValidationError(f"unknown element {token!r}")

    @cached_property
    def constants(self) -> frozenset[int]:
        """Values of nullary symbols together with the designated tuples."""
        vals = {t[0] for (s, k), t in zip(self.signature, self.tables) if k == 0}
        return frozenset(vals | set(self.zero) | set(self.one))

    @cached_property
    def translations(self) -> tuple[tuple[tuple[int, ...], str, int, tuple[int, ...]], ...]:
        """Distinct non-trivial basic translations.

        Each entry is ``(map, symbol, position, others)`` where ``map[z]`` is
        the value of ``symbol`` with ``z`` at ``position`` and ``others``
        filling the remaining argument places. Identity and constant maps are
        dropped: they never propagate a congruence pair.
        """
        n = self.size
        seen = set()
        out = []
        ident = tuple(range(n))
        for (sym, k), table in zip(self.signature, self.tables):
            for pos in range(k):
                for others in itertools.product(range(n), repeat=k - 1):
                    stride = n ** (k - 1 - pos)
                    base = 0
                    for j, o in enumerate(others):
                        place = j if j < pos else j + 1
                        base += o * n ** (k - 1 - place)
                    mp = tuple(table[base + z * stride] for z in range(n))
                    if mp in seen or mp == ident or len(set(mp)) == 1:
                        continue
                    seen.add(mp)
                    out.append((mp, sym, pos, others))
        return tuple(out)

    def _closure(self, start: set[int]) -> set[int]:
        current = set(start)
        while True:
            added = set()
            elems = sorted(current)
            for sym, k in self.signature:
                if k == 0:
                    added.add(self.apply(sym, ()))
                    continue
                for args in itertools.product(elems, repeat=k):
                    v = self.apply(sym, args)
                    if v not in current:
                        added.add(v)
            added -= current
            if not added:
                return current
            current |= added

    def __repr__(self):
        name = self.name or "algebra"
        return f"<FiniteAlgebra {name} size={self.size} symbols={list(self.signature.names)}>"


def make_algebra(size, symbols, zero, one, name="", display=None) -> FiniteAlgebra:
    """Build an algebra from ``(symbol, arity, function)`` triples."""
    sig = Signature.of(*[(s, k) for s, k, _ in symbols])
    tables = []
    for s, k, fn in symbols:
        tables.append(tuple(int(fn(*args)) for args in itertools.product(range(size), repeat=k)))
    return FiniteAlgebra(
        size=size,
        signature=sig,
        tables=tuple(tables),
        zero=tuple(zero),
        one=tuple(one),
        name=name,
        display=tuple(display) if display is not None else None,
    )


def validate_algebra(raw: dict) -> FiniteAlgebra:
    """Build a :class:`FiniteAlgebra` from the JSON file description."""
    if not isinstance(raw, dict):
        raise ValidationError("algebra description must be an object")
    for key in ("size", "signature", "tables"):
        if key not in raw:
            raise ValidationError(f"missing field {key!r}")
    for key in ("zero", "one"):
        if key not in raw or raw[key] is None:
            raise ValidationError(f"missing designated constant tuple {key!r}")
    size = raw["size"]
    sig = []
    for entry in raw["signature"]:
        try:
            sig.append((str(entry["symbol"]), entry["arity"]))
        except (KeyError, TypeError):
            raise ValidationError(f"bad signature entry {entry!r}") from None
    signature = Signature.of(*sig) if all(isinstance(k, int) for _, k in sig) else None
    if signature is None:
        raise ValidationError("arities must be integers")
    tables_raw = raw["tables"]
    if set(tables_raw) != set(signature.names):
        raise ValidationError(
            f"tables given for {sorted(tables_raw)} but signature declares {sorted(signature.names)}"
        )
    tables = tuple(tuple(tables_raw[s]) for s in signature.names)
    display = raw.get("display")
    return FiniteAlgebra(
        size=size,
        signature=signature,
        tables=tables,
        zero=tuple(raw["zero"]),
        one=tuple(raw["one"]),
        name=str(raw.get("name", "")),
        display=tuple(str(d) for d in display) if display is not None else None,
    )


def algebra_to_dict(A: FiniteAlgebra) -> dict:
    out = {
        "name": A.name,
        "size": A.size,
        "signature": [{"symbol": s, "arity": k} for s, k in A.signature],
        "tables": {s: list(t) for (s, _), t in zip(A.signature, A.tables)},
        "zero": list(A.zero),
        "one": list(A.one),
    }
    if A.display is not None:
        out["display"] = list(A.display)
    return out


# -- homomorphisms ----------------------------------------------------------


@dataclass(frozen=True)
class Homomorphism:
    dom: FiniteAlgebra
    cod: FiniteAlgebra
    map: tuple[int, ...]
    name: str = ""

    def __call__(self, x):
        if isinstance(x, (tuple, list)):
            return tuple(self.map[v] for v in x)
        return self.map[x]

    def is_injective(self) -> bool:
        return len(set(self.map)) == len(self.map)

    def is_surjective(self) -> bool:
        return len(set(self.map)) == self.cod.size

    def kernel_rep(self) -> tuple[int, ...]:
        first = {}
        return tuple(first.setdefault(v, x) for x, v in enumerate(self.map))

    def __repr__(self):
        return f"<Homomorphism {self.name or ''} {self.dom.name}->{self.cod.name} {list(self.map)}>"


def _violation(A, B, mp):
    if A.signature != B.signature:
        return ("signature", ())
    if A.m != B.m:
        return ("constants", ())
    for i, (z0, z1) in enumerate(zip(A.zero, B.zero)):
        if mp[z0] != z1:
            return ("zero", i)
    for i, (o0, o1) in enumerate(zip(A.one, B.one)):
        if mp[o0] != o1:
            return ("one", i)
    for sym, k in A.signature:
        for args in itertools.product(range(A.size), repeat=k):
            if mp[A.apply(sym, args)] != B.apply(sym, [mp[a] for a in args]):
                return (sym, args)
    return None


def validate_homomorphism(A: FiniteAlgebra, B: FiniteAlgebra, mp, name="") -> Homomorphism:
    mp = tuple(mp)
    if len(mp) != A.size:
        raise ValidationError(f"map has length {len(mp)}, domain has size {A.size}")
    for v in mp:
        if not isinstance(v, int) or not 0 <= v < B.size:
            raise ValidationError(f"map value {v!r} outside codomain")
    bad = _violation(A, B, mp)
    if bad is not None:
        sym, args = bad
        if sym in ("signature", "constants"):
            raise HomomorphismError(f"domain and codomain have different {sym}", bad)
        if sym in ("zero", "one"):
            raise HomomorphismError(f"constant {sym}[{args}] is not preserved", bad)
        raise HomomorphismError(f"operation {sym!r} is not preserved at {args}", bad)
    return Homomorphism(A, B, mp, name)


def is_homomorphism(A, B, mp) -> bool:
    return len(mp) == A.size and _violation(A, B, tuple(mp)) is None


def identity(A: FiniteAlgebra) -> Homomorphism:
    return Homomorphism(A, A, tuple(range(A.size)), "id")


def compose(g: Homomorphism, f: Homomorphism) -> Homomorphism:
    """``g`` after ``f``."""
    if f.cod != g.dom:
        raise ValidationError("homomorphisms are not composable")
    return Homomorphism(f.dom, g.cod, tuple(g.map[v] for v in f.map))


def all_homomorphisms(A: FiniteAlgebra, B: FiniteAlgebra, injective=False):
    """Yield every homomorphism ``A -> B`` by backtracking over images."""
    if A.signature != B.signature or A.m != B.m:
        return
    n = A.size
    forced: dict[int, int] = {}
    for a, b in list(zip(A.zero, B.zero)) + list(zip(A.one, B.one)):
        if forced.setdefault(a, b) != b:
            return
    for (sym, k), ta, tb in zip(A.signature, A.tables, B.tables):
        if k == 0 and forced.setdefault(ta[0], tb[0]) != tb[0]:
            return
    # constraints are checked once their largest element is assigned
    checks: list[list[tuple[str, tuple[int, ...], int]]] = [[] for _ in range(n)]
    for sym, k in A.signature:
        if k == 0:
            continue
        for args in itertools.product(range(n), repeat=k):
            r = A.apply(sym, args)
            checks[max(max(args), r)].append((sym, args, r))
    mp = [0] * n
    used = set()

    def ok(v):
        for sym, args, r in checks[v]:
            if mp[r] != B.apply(sym, [mp[a] for a in args]):
                return False
        return True

    def rec(v):
        if v == n:
            yield Homomorphism(A, B, tuple(mp))
            return
        options = [forced[v]] if v in forced else range(B.size)
        for b in options:
            if injective and b in used:
                continue
            mp[v] = b
            if ok(v):
                used.add(b)
                yield from rec(v + 1)
                used.discard(b)

    yield from rec(0)


def find_isomorphism(A: FiniteAlgebra, B: FiniteAlgebra) -> Homomorphism | None:
    if A.size != B.size:
        return None
    for h in all_homomorphisms(A, B, injective=True):
        return h
    return None


def is_isomorphic(A, B) -> bool:
    return find_isomorphism(A, B) is not None


# -- products ---------------------------------------------------------------


@dataclass(frozen=True, repr=False)
class ProductAlgebra(FiniteAlgebra):
    """Direct product; element ``(i_1, ..., i_r)`` is encoded row-major."""

    factors: tuple[FiniteAlgebra, ...] = ()

    def encode(self, coords: Sequence[int]) -> int:
        idx = 0
        for c, F in zip(coords, self.factors):
            idx = idx * F.size + c
        return idx

    def decode(self, x: int) -> tuple[int, ...]:
        out = []
        for F in reversed(self.factors):
            x, r = divmod(x, F.size)
            out.append(r)
        return tuple(reversed(out))

    def pair(self, *tuples: Sequence[int]) -> tuple[int, ...]:
        """``[a, b]``: encode coordinatewise the tuples of each factor."""
        return tuple(self.encode(cs) for cs in zip(*tuples))

    @cached_property
    def projections(self) -> tuple[Homomorphism, ...]:
        return tuple(
            Homomorphism(self, F, tuple(self.decode(x)[i] for x in range(self.size)), f"pi{i + 1}")
            for i, F in enumerate(self.factors)
        )


def product(As: Sequence[FiniteAlgebra], caps=None, name=None) -> ProductAlgebra:
    As = tuple(As)
    if not As:
        raise ValidationError("product needs at least one factor")
    sig = As[0].signature
    m = As[0].m
    for F in As[1:]:
        if F.signature != sig:
            raise ValidationError("factors have different signatures")
        if F.m != m:
            raise ValidationError("factors have designated tuples of different lengths")
    sizes = [F.size for F in As]
    N = 1
    for s in sizes:
        N *= s
    cap = resolve(caps).product
    if N > cap:
        raise CapExceeded(f"product size {N} exceeds cap {cap}")
    coords = list(itertools.product(*[range(s) for s in sizes]))

    def enc(cs):
        idx = 0
        for c, s in zip(cs, sizes):
            idx = idx * s + c
        return idx

    tables = []
    for sym, k in sig:
        ftabs = [F.table(sym) for F in As]
        tab = []
        for args in itertools.product(range(N), repeat=k):
            out = []
            for j, (F, t) in enumerate(zip(As, ftabs)):
                idx = 0
                for a in args:
                    idx = idx * F.size + coords[a][j]
                out.append(t[idx])
            tab.append(enc(out))
        tables.append(tuple(tab))
    zero = tuple(enc([F.zero[i] for F in As]) for i in range(m))
    one = tuple(enc([F.one[i] for F in As]) for i in range(m))
    display = tuple("(" + ",".join(_flat_label(F, c) for F, c in zip(As, cs)) + ")" for cs in coords)
    if name is None:
        name = "x".join(F.name or "?" for F in As)
    return ProductAlgebra(
        size=N,
        signature=sig,
        tables=tuple(tables),
        zero=zero,
        one=one,
        name=name,
        display=display,
        factors=As,
    )


def _flat_label(F, c):
    lab = F.label(c)
    if isinstance(F, ProductAlgebra) and lab.startswith("(") and lab.endswith(")"):
        return lab[1:-1]
    return lab


# -- quotients --------------------------------------------------------------


@dataclass(frozen=True, repr=False)
class QuotientAlgebra(FiniteAlgebra):
    base: FiniteAlgebra | None = None
    theta: object = None
    blocks: tuple[tuple[int, ...], ...] = ()

    @cached_property
    def canonical(self) -> Homomorphism:
        where = {}
        for i, blk in enumerate(self.blocks):
            for x in blk:
                where[x] = i
        return Homomorphism(self.base, self, tuple(where[x] for x in range(self.base.size)), "nu")


def quotient(A: FiniteAlgebra, theta, name=None) -> QuotientAlgebra:
    """``A / theta``; blocks are ordered by their least element."""
    rep = tuple(theta.rep)
    if len(rep) != A.size:
        raise ValidationError("congruence and algebra have different sizes")
    for mp, sym, pos, others in A.translations:
        for x in range(A.size):
            if rep[mp[x]] != rep[mp[rep[x]]]:
                raise ValidationError(f"relation is not compatible with {sym!r}")
    reps = sorted(set(rep))
    block_of = {r: i for i, r in enumerate(reps)}
    blocks = tuple(tuple(x for x in range(A.size) if rep[x] == r) for r in reps)
    q = len(reps)
    tables = []
    for sym, k in A.signature:
        tab = []
        for args in itertools.product(reps, repeat=k):
            tab.append(block_of[rep[A.apply(sym, args)]])
        tables.append(tuple(tab))
    display = tuple(
        A.label(b[0]) if len(b) == 1 else "[" + "|".join(A.label(x) for x in b) + "]" for b in blocks
    )
    return QuotientAlgebra(
        size=q,
        signature=A.signature,
        tables=tuple(tables),
        zero=tuple(block_of[rep[z]] for z in A.zero),
        one=tuple(block_of[rep[o]] for o in A.one),
        name=name if name is not None else f"{A.name}/~",
        display=display,
        base=A,
        theta=theta,
        blocks=blocks,
    )


# -- subalgebras ------------------------------------------------------------


def subalgebra_generated(A: FiniteAlgebra, S: Iterable[int], name=None):
    """Least subuniverse containing ``S`` and the constants, with its embedding."""
    S = set(S)
    for s in S:
        if not 0 <= s < A.size:
            raise ValidationError(f"generator {s} out of range")
    carrier = sorted(A._closure(S | set(A.constants)))
    pos = {x: i for i, x in enumerate(carrier)}
    tables = []
    for sym, k in A.signature:
        tables.append(
            tuple(pos[A.apply(sym, args)] for args in itertools.product(carrier, repeat=k))
        )
    sub = FiniteAlgebra(
        size=len(carrier),
        signature=A.signature,
        tables=tuple(tables),
        zero=tuple(pos[z] for z in A.zero),
        one=tuple(pos[o] for o in A.one),
        name=name if name is not None else f"Sg({A.name})",
        display=tuple(A.label(x) for x in carrier),
    )
    return sub, Homomorphism(sub, A, tuple(carrier), "embedding")


__all__ = [
    "Signature",
    "FiniteAlgebra",
    "ProductAlgebra",
    "QuotientAlgebra",
    "Homomorphism",
    "make_algebra",
    "validate_algebra",
    "algebra_to_dict",
    "validate_homomorphism",
    "is_homomorphism",
    "identity",
    "compose",
    "all_homomorphisms",
    "find_isomorphism",
    "is_isomorphic",
    "product",
    "quotient",
    "subalgebra_generated",
]
