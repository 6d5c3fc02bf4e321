"""Built-in algebras and homomorphisms.

Symbol conventions: lattices and semilattices use ``meet``/``join`` with
nullary ``0`` and ``1``; rings use ``+``, ``*``, ``-``, ``0``, ``1``. Every
fixture designates ``zero=(bottom,)`` and ``one=(top,)``.
"""

from __future__ import annotations

import itertools
import random
from typing import Sequence

from .algebra import (
    FiniteAlgebra,
    Homomorphism,
    Signature,
    make_algebra,
    product,
    validate_homomorphism,
)
from .errors import ValidationError

KINDS = ("lattice", "meet", "join")


def _order_ops(kind, n, glb, lub, bottom, top):
    ops = []
    if kind in ("lattice", "meet"):
        ops.append(("meet", 2, glb))
    if kind in ("lattice", "join"):
        ops.append(("join", 2, lub))
    if kind not in KINDS:
        raise ValidationError(f"unknown order kind {kind!r}")
    ops.append(("0", 0, lambda: bottom))
    ops.append(("1", 0, lambda: top))
    return ops


def chain(n: int, kind: str = "lattice") -> FiniteAlgebra:
    """Bounded chain ``0 < 1 < ... < n-1``."""
    if n < 1:
        raise ValidationError("chain needs at least one element")
    ops = _order_ops(kind, n, min, max, 0, n - 1)
    return make_algebra(n, ops, (0,), (n - 1,), name=f"C{n}-{kind}", display=[str(i) for i in range(n)])


def trivial(kind: str = "lattice") -> FiniteAlgebra:
    if kind == "ring":
        return zmod(1)
    A = chain(1, kind)
    return FiniteAlgebra(A.size, A.signature, A.tables, A.zero, A.one, f"trivial-{kind}", ("*",))


def boolean(k: int, kind: str = "lattice") -> FiniteAlgebra:
    """``2^k`` as a product of two-element chains."""
    if k == 0:
        return trivial(kind)
    if k == 1:
        return chain(2, kind)
    return product([chain(2, kind)] * k, name=f"2^{k}-{kind}")


def chain_product(sizes: Sequence[int], kind: str = "lattice") -> FiniteAlgebra:
    return product([chain(s, kind) for s in sizes], name="x".join(map(str, sizes)) + f"-{kind}")


def from_order(elements: Sequence[str], leq: set[tuple[int, int]] | list, kind: str = "lattice") -> FiniteAlgebra:
    """Bounded (semi)lattice from a partial order given by ``leq`` pairs.

    ``leq`` need not be reflexive or transitive; its reflexive-transitive
    closure is used.
    """
    n = len(elements)
    le = [[i == j for j in range(n)] for i in range(n)]
    for a, b in leq:
        le[a][b] = True
    for k, i, j in itertools.product(range(n), repeat=3):
        if le[i][k] and le[k][j]:
            le[i][j] = True

    def bound(a, b, lower):
        if lower:
            cands = [c for c in range(n) if le[c][a] and le[c][b]]
            best = [c for c in cands if all(le[d][c] for d in cands)]
        else:
            cands = [c for c in range(n) if le[a][c] and le[b][c]]
            best = [c for c in cands if all(le[c][d] for d in cands)]
        if len(best) != 1:
            raise ValidationError(f"elements {elements[a]}, {elements[b]} have no {'meet' if lower else 'join'}")
        return best[0]

    bottoms = [c for c in range(n) if all(le[c][d] for d in range(n))]
    tops = [c for c in range(n) if all(le[d][c] for d in range(n))]
    if len(bottoms) != 1 or len(tops) != 1:
        raise ValidationError("order is not bounded")
    ops = _order_ops(
        kind, n, lambda a, b: bound(a, b, True), lambda a, b: bound(a, b, False), bottoms[0], tops[0]
    )
    return make_algebra(n, ops, (bottoms[0],), (tops[0],), display=list(elements))


def m3(kind: str = "lattice") -> FiniteAlgebra:
    """``D = {0, a, b, c, 1}`` with ``a, b, c`` pairwise incomparable."""
    A = from_order(["0", "a", "b", "c", "1"], [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)], kind)
    return _renamed(A, f"D-{kind}")


def n5(kind: str = "lattice") -> FiniteAlgebra:
    """The pentagon ``0 < a < c < 1``, ``0 < b < 1``."""
    A = from_order(["0", "a", "b", "c", "1"], [(0, 1), (1, 3), (3, 4), (0, 2), (2, 4)], kind)
    return _renamed(A, f"N5-{kind}")


def _renamed(A, name):
    return FiniteAlgebra(A.size, A.signature, A.tables, A.zero, A.one, name, A.display)


def zmod(n: int) -> FiniteAlgebra:
    """``Z_n`` as a commutative ring with unit."""
    ops = [
        ("+", 2, lambda a, b: (a + b) % n),
        ("*", 2, lambda a, b: (a * b) % n),
        ("-", 1, lambda a: (-a) % n),
        ("0", 0, lambda: 0),
        ("1", 0, lambda: 1 % n),
    ]
    return make_algebra(n, ops, (0,), (1 % n,), name=f"Z{n}", display=[str(i) for i in range(n)])


def degenerate() -> FiniteAlgebra:
    """Two elements, only constants, both designated as element 0."""
    sig = Signature.of(("0", 0), ("1", 0))
    return FiniteAlgebra(2, sig, ((0,), (0,)), (0,), (0,), name="degenerate", display=("p", "q"))


def random_algebra(seed: int, size: int, n_binary: int = 1, n_unary: int = 0) -> FiniteAlgebra:
    """Random tables; ``zero=(0,)`` and ``one=(size-1,)`` carry no meaning."""
    rng = random.Random(seed)
    symbols = [(f"f{i}", 2) for i in range(n_binary)] + [(f"g{i}", 1) for i in range(n_unary)]
    tables = tuple(tuple(rng.randrange(size) for _ in range(size**k)) for _, k in symbols)
    return FiniteAlgebra(
        size, Signature.of(*symbols), tables, (0,), (size - 1,), name=f"random-{seed}"
    )


# -- homomorphisms ----------------------------------------------------------


def _by_label(A, B, pairs):
    mp = [None] * A.size
    for x, y in pairs.items():
        mp[A.element(x)] = B.element(y)
    return mp


def alpha() -> Homomorphism:
    """The meet-semilattice map ``2x2 -> 2x2x2`` that keeps centrals but not complements."""
    A, B = boolean(2, "meet"), boolean(3, "meet")
    mp = _by_label(
        A,
        B,
        {"(1,1)": "(1,1,1)", "(0,0)": "(0,0,0)", "(0,1)": "(1,0,0)", "(1,0)": "(0,0,1)"},
    )
    return validate_homomorphism(A, B, mp, name="alpha")


def c_into_d() -> Homomorphism:
    """Inclusion of ``C = 2x2`` into the five-element lattice ``D``."""
    C, D = boolean(2, "lattice"), m3("lattice")
    mp = _by_label(C, D, {"(0,0)": "0", "(0,1)": "a", "(1,0)": "b", "(1,1)": "1"})
    return validate_homomorphism(C, D, mp, name="C-into-D")


def _proj(P, i, name):
    h = P.projections[i]
    return validate_homomorphism(P, h.cod, h.map, name=name)


def homomorphisms() -> dict[str, Homomorphism]:
    """Catalog of shipped homomorphisms."""
    out = {}
    out["alpha"] = alpha()
    out["C-into-D"] = c_into_d()
    for kind in KINDS:
        two = chain(2, kind)
        four = boolean(2, kind)
        eight = boolean(3, kind)
        out[f"id-2^2-{kind}"] = validate_homomorphism(four, four, range(4), name=f"id-2^2-{kind}")
        out[f"pi1-2^2-{kind}"] = _proj(four, 0, f"pi1-2^2-{kind}")
        out[f"pi2-2^3-{kind}"] = _proj(eight, 1, f"pi2-2^3-{kind}")
        out[f"diag-2-2^2-{kind}"] = validate_homomorphism(
            two, four, [four.encode((0, 0)), four.encode((1, 1))], name=f"diag-2-2^2-{kind}"
        )
        out[f"to-trivial-2^2-{kind}"] = validate_homomorphism(
            four, trivial(kind), [0] * 4, name=f"to-trivial-2^2-{kind}"
        )
        # (x, y) -> (x, x, y)
        out[f"dup-2^2-2^3-{kind}"] = validate_homomorphism(
            four,
            eight,
            [eight.encode((x, x, y)) for x, y in (four.decode(v) for v in range(4))],
            name=f"dup-2^2-2^3-{kind}",
        )
    c3 = chain(3, "lattice")
    out["C3-onto-2"] = validate_homomorphism(c3, chain(2), [0, 1, 1], name="C3-onto-2")
    out["2-into-C3"] = validate_homomorphism(chain(2), c3, [0, 2], name="2-into-C3")
    c3m = chain(3, "meet")
    out["C3-onto-2-meet"] = validate_homomorphism(c3m, chain(2, "meet"), [0, 0, 1], name="C3-onto-2-meet")
    z6, z2, z3, z4 = zmod(6), zmod(2), zmod(3), zmod(4)
    out["Z6-to-Z2"] = validate_homomorphism(z6, z2, [x % 2 for x in range(6)], name="Z6-to-Z2")
    out["Z6-to-Z3"] = validate_homomorphism(z6, z3, [x % 3 for x in range(6)], name="Z6-to-Z3")
    out["Z4-to-Z2"] = validate_homomorphism(z4, z2, [x % 2 for x in range(4)], name="Z4-to-Z2")
    out["id-Z6"] = validate_homomorphism(z6, z6, range(6), name="id-Z6")
    out["id-D"] = validate_homomorphism(m3(), m3(), range(5), name="id-D")
    return out


# -- catalog ----------------------------------------------------------------


def algebras() -> dict[str, FiniteAlgebra]:
    """Named algebra fixtures used by the test and experiment suites."""
    out = {}
    for kind in KINDS:
        out[f"trivial-{kind}"] = trivial(kind)
        for n in (2, 3, 4):
            out[f"C{n}-{kind}"] = chain(n, kind)
        for k in (2, 3):
            out[f"2^{k}-{kind}"] = boolean(k, kind)
        out[f"2x3-{kind}"] = chain_product([2, 3], kind)
        out[f"D-{kind}"] = m3(kind)
        out[f"N5-{kind}"] = n5(kind)
    for n in (1, 2, 3, 4, 5, 6, 8, 10, 12):
        out[f"Z{n}"] = zmod(n)
    return out


def family(kind: str, max_size: int) -> list[FiniteAlgebra]:
    """Fixtures of one variety (``lattice``, ``distributive``, ``meet``, ``join``,
    ``ring``) with at most ``max_size`` elements."""
    if kind == "ring":
        cands = [zmod(n) for n in range(1, max_size + 1)]
    else:
        order_kind = "lattice" if kind == "distributive" else kind
        cands = [trivial(order_kind)]
        cands += [chain(n, order_kind) for n in range(2, max_size + 1)]
        cands += [boolean(k, order_kind) for k in (2, 3) if 2**k <= max_size]
        for a, b in ((2, 3), (3, 3), (2, 4)):
            if a * b <= max_size:
                cands.append(chain_product([a, b], order_kind))
        if kind != "distributive" and max_size >= 5:
            cands += [m3(order_kind), n5(order_kind)]
    return cands


BUILDERS = {
    "chain": lambda n=2, kind="lattice": chain(int(n), kind),
    "boolean": lambda k=2, kind="lattice": boolean(int(k), kind),
    "diamond": lambda kind="lattice": boolean(2, kind),
    "D": lambda kind="lattice": m3(kind),
    "M3": lambda kind="lattice": m3(kind),
    "N5": lambda kind="lattice": n5(kind),
    "Zmod": lambda n=2: zmod(int(n)),
    "trivial": lambda kind="lattice": trivial(kind),
    "degenerate": degenerate,
    "random": lambda seed=0, size=4, n_binary=1, n_unary=0: random_algebra(
        int(seed), int(size), int(n_binary), int(n_unary)
    ),
    "chain-product": lambda sizes="2,3", kind="lattice": chain_product(
        [int(s) for s in str(sizes).split(",")], kind
    ),
    "alpha": alpha,
    "C-into-D": c_into_d,
}


def build(name: str, **params):
    """Build a named fixture algebra or homomorphism."""
    if name in BUILDERS:
        try:
            return BUILDERS[name](**params)
        except TypeError as exc:
            raise ValidationError(f"bad parameters for fixture {name!r}: {exc}") from None
    homs = homomorphisms()
    if name in homs and not params:
        return homs[name]
    raise ValidationError(f"unknown fixture {name!r}")
