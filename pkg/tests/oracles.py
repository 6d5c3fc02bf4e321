"""Brute-force reference implementations used to cross-check the library.

Nothing here uses the congruence closure, translations or system solving of
the package: operations are read straight from the tables.
"""

import itertools


def partitions(n):
    """All partitions of ``range(n)`` as canonical label tuples (restricted growth)."""
    def rec(prefix, top):
        if len(prefix) == n:
            yield tuple(prefix)
            return
        for v in range(top + 2):
            yield from rec(prefix + [v], max(top, v))

    if n == 0:
        yield ()
        return
    yield from rec([0], 0)


def compatible(A, labels):
    for sym, k in A.signature:
        for args in itertools.product(range(A.size), repeat=k):
            for pos in range(k):
                for z in range(A.size):
                    if labels[z] != labels[args[pos]] or z == args[pos]:
                        continue
                    other = list(args)
                    other[pos] = z
                    if labels[A.apply(sym, args)] != labels[A.apply(sym, other)]:
                        return False
    return True


def all_congruence_labels(A):
    return [p for p in partitions(A.size) if compatible(A, p)]


def finer(p, q):
    """Every block of ``p`` lies inside a block of ``q``."""
    n = len(p)
    return all(q[a] == q[b] for a in range(n) for b in range(n) if p[a] == p[b])


def least_congruence(A, pairs, cons=None):
    cons = cons if cons is not None else all_congruence_labels(A)
    cands = [p for p in cons if all(p[a] == p[b] for a, b in pairs)]
    least = [p for p in cands if all(finer(p, q) for q in cands)]
    assert len(least) == 1
    return least[0]


def same_partition(p, rep):
    n = len(p)
    return all((p[a] == p[b]) == (rep[a] == rep[b]) for a in range(n) for b in range(n))


def relational_factor_pair(p, q):
    """Meet is the diagonal and the relational composite is all of ``A x A``."""
    n = len(p)
    if any(p[a] == p[b] and q[a] == q[b] for a in range(n) for b in range(n) if a != b):
        return False
    return all(any(p[a] == p[c] and q[c] == q[b] for c in range(n)) for a in range(n) for b in range(n))


def factor_pair_labels(A):
    cons = all_congruence_labels(A)
    return [(p, q) for p in cons for q in cons if relational_factor_pair(p, q)]


def ring_idempotents(n):
    return sorted(x for x in range(n) if (x * x) % n == x)


def product_factorizes(P, gamma_labels, conA, conB):
    """``gamma = d1 x d2`` for some congruences of the factors (by search)."""
    for d1 in conA:
        for d2 in conB:
            ok = True
            for u in range(P.size):
                for v in range(P.size):
                    (a, b), (c, d) = P.decode(u), P.decode(v)
                    if (gamma_labels[u] == gamma_labels[v]) != (d1[a] == d1[c] and d2[b] == d2[d]):
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                return True
    return False
