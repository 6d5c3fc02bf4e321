"""Congruences of finite algebras.

A congruence is stored as its representative array: ``rep[x]`` is the least
element of the block of ``x``. Two congruences are equal iff their arrays are.

Generation works by union-find plus propagation through the basic
translations of the algebra (one operation with every argument but one
fixed). Every pair that actually merges two classes is queued once, so the
work is bounded by ``(merges + generators) * translations``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .caps import resolve
from .errors import CapExceeded, InvalidSystem, ValidationError, WitnessError
from .terms import App, Var, depth, eval_term, substitute, to_sexpr, variables


@dataclass(frozen=True)
class Congruence:
    rep: tuple[int, ...]

    @classmethod
    def identity(cls, n: int) -> "Congruence":
        return cls(tuple(range(n)))

    @classmethod
    def universal(cls, n: int) -> "Congruence":
        return cls((0,) * n)

    @classmethod
    def from_labels(cls, labels: Sequence) -> "Congruence":
        first = {}
        return cls(tuple(first.setdefault(lab, x) for x, lab in enumerate(labels)))

    @classmethod
    def from_blocks(cls, n: int, blocks: Iterable[Iterable[int]]) -> "Congruence":
        labels = list(range(n))
        for blk in blocks:
            blk = list(blk)
            for x in blk:
                labels[x] = min(blk)
        return cls.from_labels(labels)

    @property
    def size(self) -> int:
        return len(self.rep)

    def relates(self, a: int, b: int) -> bool:
        return self.rep[a] == self.rep[b]

    def __contains__(self, pair) -> bool:
        a, b = pair
        return self.rep[a] == self.rep[b]

    def blocks(self) -> list[tuple[int, ...]]:
        groups: dict[int, list[int]] = {}
        for x, r in enumerate(self.rep):
            groups.setdefault(r, []).append(x)
        return [tuple(groups[r]) for r in sorted(groups)]

    @property
    def num_blocks(self) -> int:
        return len(set(self.rep))

    def is_identity(self) -> bool:
        return all(r == x for x, r in enumerate(self.rep))

    def is_universal(self) -> bool:
        return all(r == 0 for r in self.rep)

    def __le__(self, other: "Congruence") -> bool:
        _same_base(self, other)
        return all(other.rep[x] == other.rep[r] for x, r in enumerate(self.rep))

    def __ge__(self, other: "Congruence") -> bool:
        return other <= self

    def pairs(self) -> set[tuple[int, int]]:
        return {(a, b) for a in range(self.size) for b in range(self.size) if self.rep[a] == self.rep[b]}

    def sort_key(self):
        return (-self.num_blocks, self.rep)

    def __str__(self):
        return "|".join(",".join(map(str, b)) for b in self.blocks())


def _same_base(theta, delta):
    if len(theta.rep) != len(delta.rep):
        raise ValidationError("congruences live on carriers of different sizes")


# -- generation -------------------------------------------------------------


def cg(A, pairs: Iterable[tuple[int, int]]) -> Congruence:
    """Least congruence of ``A`` containing ``pairs``."""
    n = A.size
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    queue = deque()
    for a, b in pairs:
        if not (0 <= a < n and 0 <= b < n):
            raise ValidationError(f"pair {(a, b)} outside the carrier")
        ra, rb = find(a), find(b)
        if ra != rb:
            # the smaller root survives, so each root is its block's minimum
            if ra < rb:
                parent[rb] = ra
            else:
                parent[ra] = rb
            queue.append((a, b))
    maps = [t[0] for t in A.translations]
    while queue:
        a, b = queue.popleft()
        for mp in maps:
            x, y = mp[a], mp[b]
            rx, ry = find(x), find(y)
            if rx != ry:
                if rx < ry:
                    parent[ry] = rx
                else:
                    parent[rx] = ry
                queue.append((x, y))
    return Congruence(tuple(find(x) for x in range(n)))


def principal(A, a: int, b: int) -> Congruence:
    return cg(A, [(a, b)])


def cg_tuples(A, xs: Sequence[int], ys: Sequence[int]) -> Congruence:
    """``theta(xs, ys)``: generated by the coordinate pairs of two tuples."""
    if len(xs) != len(ys):
        raise ValidationError("tuples of different lengths")
    return cg(A, list(zip(xs, ys)))


def is_congruence(A, rep: Sequence[int]) -> bool:
    rep = tuple(rep)
    if len(rep) != A.size:
        return False
    if any(not 0 <= r <= x or rep[r] != r for x, r in enumerate(rep)):
        return False
    for mp, *_ in A.translations:
        for x in range(A.size):
            if rep[mp[x]] != rep[mp[rep[x]]]:
                return False
    return True


def check_zero_one(A) -> bool:
    """``theta(0, 1)`` is the universal congruence."""
    return cg(A, list(zip(A.zero, A.one))).is_universal()


# -- lattice operations -----------------------------------------------------


def join(theta: Congruence, delta: Congruence) -> Congruence:
    # the join in Con(A) is the equivalence join; no propagation is needed
    _same_base(theta, delta)
    n = theta.size
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for rel in (theta.rep, delta.rep):
        for x, r in enumerate(rel):
            rx, rr = find(x), find(r)
            if rx != rr:
                if rx < rr:
                    parent[rr] = rx
                else:
                    parent[rx] = rr
    return Congruence(tuple(find(x) for x in range(n)))


def meet(theta: Congruence, delta: Congruence) -> Congruence:
    _same_base(theta, delta)
    return Congruence.from_labels(list(zip(theta.rep, delta.rep)))


def compose(theta: Congruence, delta: Congruence) -> frozenset[tuple[int, int]]:
    """The relational product ``{(x, z) : x theta y delta z for some y}``."""
    _same_base(theta, delta)
    n = theta.size
    out = set()
    for y in range(n):
        left = [x for x in range(n) if theta.rep[x] == theta.rep[y]]
        right = [z for z in range(n) if delta.rep[z] == delta.rep[y]]
        out.update((x, z) for x in left for z in right)
    return frozenset(out)


def permutes(theta: Congruence, delta: Congruence) -> bool:
    return compose(theta, delta) == compose(delta, theta)


# -- systems ----------------------------------------------------------------


@dataclass(frozen=True)
class CongruenceSystem:
    equations: tuple[tuple[Congruence, int], ...]

    def validate(self):
        eqs = self.equations
        for i, (ti, xi) in enumerate(eqs):
            for tj, xj in eqs[i + 1 :]:
                if not join(ti, tj).relates(xi, xj):
                    raise InvalidSystem(f"({xi}, {xj}) is not in the join of its congruences")


def solve_system(system) -> int | None:
    """Least ``x`` with ``(x, x_i) in theta_i`` for all i, or ``None``."""
    if not isinstance(system, CongruenceSystem):
        system = CongruenceSystem(tuple((t, x) for t, x in system))
    system.validate()
    eqs = system.equations
    if not eqs:
        raise InvalidSystem("empty system")
    n = eqs[0][0].size
    for x in range(n):
        if all(t.rep[x] == t.rep[xi] for t, xi in eqs):
            return x
    return None


# -- enumeration ------------------------------------------------------------


def all_congruences(A, caps=None) -> list[Congruence]:
    """Every congruence of ``A``: principal ones closed under join."""
    cap = resolve(caps).congruences
    if A.size > cap:
        raise CapExceeded(f"algebra of size {A.size} exceeds congruence-enumeration cap {cap}")
    n = A.size
    principals = []
    seen = set()
    for a in range(n):
        for b in range(a + 1, n):
            p = principal(A, a, b)
            if p not in seen:
                seen.add(p)
                principals.append(p)
    found = {Congruence.identity(n)} | seen
    todo = list(found)
    while todo:
        theta = todo.pop()
        for p in principals:
            if p <= theta:
                continue
            j = join(theta, p)
            if j not in found:
                found.add(j)
                todo.append(j)
    return sorted(found, key=Congruence.sort_key)


# -- Maltsev witnesses ------------------------------------------------------


@dataclass(frozen=True)
class MaltsevChain:
    """Term chain certifying ``(a, b) in theta(c, d)``.

    Terms have arity ``len(c) + len(params)``: variables ``0..m-1`` take the
    generator tuple and ``m..`` the parameters. With 1-based indices:
    ``a = t_1(c)``, ``b = t_k(d)``, ``t_i(c) = t_{i+1}(c)`` for even ``i`` and
    ``t_i(d) = t_{i+1}(d)`` for odd ``i``.
    """

    terms: tuple
    params: tuple[int, ...]
    a: int
    b: int
    c: tuple[int, ...]
    d: tuple[int, ...]

    @property
    def k(self) -> int:
        return len(self.terms)

    @property
    def m(self) -> int:
        return len(self.c)

    def violations(self, A) -> list[str]:
        env_c = tuple(self.c) + tuple(self.params)
        env_d = tuple(self.d) + tuple(self.params)
        at_c = [eval_term(A, t, env_c) for t in self.terms]
        at_d = [eval_term(A, t, env_d) for t in self.terms]
        bad = []
        if self.k % 2 == 0:
            bad.append("chain length is even")
        if at_c[0] != self.a:
            bad.append("a != t_1(c)")
        if at_d[-1] != self.b:
            bad.append("b != t_k(d)")
        for i in range(1, self.k):
            if i % 2 == 0 and at_c[i - 1] != at_c[i]:
                bad.append(f"t_{i}(c) != t_{i + 1}(c)")
            if i % 2 == 1 and at_d[i - 1] != at_d[i]:
                bad.append(f"t_{i}(d) != t_{i + 1}(d)")
        return bad

    def validate(self, A) -> bool:
        return not self.violations(A)

    def names(self, i: int) -> str:
        return f"x{i}" if i < self.m else f"u{i - self.m}"

    def to_dict(self, A=None) -> dict:
        lab = (lambda x: A.label(x)) if A is not None else str
        return {
            "a": lab(self.a),
            "b": lab(self.b),
            "c": [lab(x) for x in self.c],
            "d": [lab(x) for x in self.d],
            "params": [lab(x) for x in self.params],
            "terms": [to_sexpr(t, self.names) for t in self.terms],
        }


def _traced_closure(A, c, d, caps):
    """Run ``cg`` while recording, for every merging pair, a term ``s`` with
    ``s(c, params) = first`` and ``s(d, params) = second``."""
    n = A.size
    m = len(c)
    parent = list(range(n))
    params: list[int] = []
    param_index: dict[int, int] = {}

    def pvar(x):
        if x not in param_index:
            param_index[x] = len(params)
            params.append(x)
        return Var(m + param_index[x])

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx == ry:
            return False
        if rx < ry:
            parent[ry] = rx
        else:
            parent[rx] = ry
        return True

    edges: list[tuple[int, int, object]] = []
    queue = deque()
    for i, (x, y) in enumerate(zip(c, d)):
        if union(x, y):
            edges.append((x, y, Var(i)))
            queue.append(len(edges) - 1)
    trans = A.translations
    while queue:
        e = queue.popleft()
        a, b, term = edges[e]
        for mp, sym, pos, others in trans:
            x, y = mp[a], mp[b]
            if union(x, y):
                args = [None] * (len(others) + 1)
                args[pos] = term
                it = iter(others)
                for j in range(len(args)):
                    if j != pos:
                        args[j] = pvar(next(it))
                edges.append((x, y, App(sym, tuple(args))))
                queue.append(len(edges) - 1)
    return find, edges, params, pvar


def maltsev_witness(A, a: int, b: int, c: Sequence[int], d: Sequence[int], caps=None) -> MaltsevChain:
    """Extract a Maltsev chain for ``(a, b) in theta(c, d)``."""
    caps = resolve(caps)
    c, d = tuple(c), tuple(d)
    if len(c) != len(d):
        raise ValidationError("generator tuples of different lengths")
    find, edges, params, pvar = _traced_closure(A, c, d, caps)
    if find(a) != find(b):
        raise WitnessError(f"({a}, {b}) is not in the generated congruence")

    adj: dict[int, list[tuple[int, object, bool]]] = {}
    for x, y, t in edges:
        adj.setdefault(x, []).append((y, t, True))
        adj.setdefault(y, []).append((x, t, False))
    # the recorded edges form a forest; breadth-first search finds the path
    prev: dict[int, tuple[int, object, bool]] = {a: None}
    q = deque([a])
    while q and b not in prev:
        u = q.popleft()
        for v, t, fwd in adj.get(u, ()):
            if v not in prev:
                prev[v] = (u, t, fwd)
                q.append(v)
    steps = []
    v = b
    while prev[v] is not None:
        u, t, fwd = prev[v]
        steps.append((t, fwd, v))
        v = u
    steps.reverse()

    terms = []
    cur = a
    for t, fwd, nxt in steps:
        if depth(t) > caps.term_depth:
            raise WitnessError(f"witness term depth {depth(t)} exceeds cap {caps.term_depth}")
        if fwd != (len(terms) % 2 == 0):
            terms.append(pvar(cur))
        terms.append(t)
        cur = nxt
    if len(terms) % 2 == 0:
        terms.append(pvar(cur))
    if len(terms) > caps.chain_length:
        raise WitnessError(f"witness chain length {len(terms)} exceeds cap {caps.chain_length}")
    # keep only parameters on the chosen path
    used = sorted(set().union(*(variables(t) for t in terms)) - set(range(len(c))))
    mapping = [Var(i) for i in range(len(c))] + [None] * len(params)
    for new, old in enumerate(used):
        mapping[old] = Var(len(c) + new)
    terms = [substitute(t, mapping) for t in terms]
    kept = tuple(params[old - len(c)] for old in used)
    return MaltsevChain(tuple(terms), kept, a, b, c, d)


# -- serialisation ----------------------------------------------------------


def congruence_to_dict(theta: Congruence, base: str = "") -> dict:
    return {"base": base, "rep": list(theta.rep)}


def congruence_from_dict(raw: dict, A=None) -> Congruence:
    rep = tuple(int(r) for r in raw["rep"])
    if A is not None and not is_congruence(A, rep):
        raise ValidationError("representative array is not a congruence of the algebra")
    return Congruence(rep)
