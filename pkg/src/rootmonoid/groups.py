"""Finite groups given by explicit elements: tables, axioms and small-group names.

Groups here are tiny (outer automorphism groups at desk scale), so everything
works from the full multiplication table.
"""

from __future__ import annotations

import itertools
from collections import Counter
from functools import lru_cache


def cayley_table(elements, mul) -> list[list[int]] | None:
    """Index table of ``mul`` on ``elements``, or None if not closed."""
    index = {x: i for i, x in enumerate(elements)}
    table = []
    for a in elements:
        row = []
        for b in elements:
            j = index.get(mul(a, b))
            if j is None:
                return None
            row.append(j)
        table.append(row)
    return table


def is_group(table, identity: int) -> bool:
    n = len(table)
    if any(table[identity][i] != i or table[i][identity] != i for i in range(n)):
        return False
    if any(identity not in row for row in table):
        return False
    return all(table[table[a][b]][c] == table[a][table[b][c]]
               for a in range(n) for b in range(n) for c in range(n))


def element_orders(table, identity: int) -> list[int]:
    out = []
    for g in range(len(table)):
        x, k = g, 1
        while x != identity:
            x = table[x][g]
            k += 1
        out.append(k)
    return out


def is_abelian(table) -> bool:
    n = len(table)
    return all(table[a][b] == table[b][a] for a in range(n) for b in range(n))


def _profile(table, identity):
    return (len(table), is_abelian(table), tuple(sorted(Counter(element_orders(table, identity)).items())))


def _perm_group(gens, size):
    ident = tuple(range(size))
    comp = lambda p, q: tuple(p[i] for i in q)
    elems = {ident}
    frontier = [ident]
    while frontier:
        new = []
        for x in frontier:
            for g in gens:
                y = comp(g, x)
                if y not in elems:
                    elems.add(y)
                    new.append(y)
        frontier = new
    elems = sorted(elems)
    return cayley_table(elems, comp), elems.index(ident)


def _abelian_invariants(n):
    """All invariant-factor sequences d_1 | d_2 | ... with product n."""
    out = []

    def rec(rest, seq):
        if rest == 1:
            out.append(tuple(seq))
            return
        for d in range(2, rest + 1):
            if rest % d == 0 and (not seq or d % seq[-1] == 0):
                rec(rest // d, seq + [d])

    rec(n, [])
    return [s for s in out if all(s[i + 1] % s[i] == 0 for i in range(len(s) - 1))]


def _abelian_table(invs):
    elems = list(itertools.product(*[range(d) for d in invs]))
    mul = lambda a, b: tuple((x + y) % d for x, y, d in zip(a, b, invs))
    return cayley_table(elems, mul), elems.index(tuple(0 for _ in invs))


def _dihedral(m):
    # symmetries of the m-gon as permutations of vertices
    rot = tuple((i + 1) % m for i in range(m))
    ref = tuple((-i) % m for i in range(m))
    return _perm_group([rot, ref], m)


def _quaternion():
    # Q8 as pairs (sign, unit) with the Hamilton product
    units = ["1", "i", "j", "k"]
    mult = {("1", x): (1, x) for x in units}
    mult.update({(x, "1"): (1, x) for x in units})
    mult.update({("i", "i"): (-1, "1"), ("j", "j"): (-1, "1"), ("k", "k"): (-1, "1"),
                 ("i", "j"): (1, "k"), ("j", "k"): (1, "i"), ("k", "i"): (1, "j"),
                 ("j", "i"): (-1, "k"), ("k", "j"): (-1, "i"), ("i", "k"): (-1, "j")})
    elems = [(s, u) for s in (1, -1) for u in units]
    mul = lambda a, b: (a[0] * b[0] * mult[(a[1], b[1])][0], mult[(a[1], b[1])][1])
    return cayley_table(elems, mul), elems.index((1, "1"))


def _alternating4():
    gens = [(1, 2, 0, 3), (1, 0, 3, 2)]
    return _perm_group(gens, 4)


def _dicyclic3():
    # Z/3 x| Z/4 with the generator of Z/4 inverting Z/3
    elems = [(a, b) for a in range(3) for b in range(4)]
    mul = lambda x, y: ((x[0] + (y[0] if x[1] % 2 == 0 else -y[0])) % 3, (x[1] + y[1]) % 4)
    return cayley_table(elems, mul), elems.index((0, 0))


@lru_cache(maxsize=None)
def _catalogue():
    cat = []
    for n in range(1, 17):
        for invs in _abelian_invariants(n):
            name = "trivial" if not invs else " x ".join(f"Z/{d}" for d in invs)
            cat.append((name, _profile(*_abelian_table(invs))))
    names = {3: "S3", 4: "D4"}
    for m in range(3, 8):
        cat.append((names.get(m, f"D{m}"), _profile(*_dihedral(m))))
    cat.append(("Q8", _profile(*_quaternion())))
    cat.append(("A4", _profile(*_alternating4())))
    cat.append(("Dic3", _profile(*_dicyclic3())))
    return cat


def identify(table, identity: int) -> str:
    """Name of the group, matched on order, commutativity and element orders.

    Covers every group of order at most 15 and the abelian groups of order
    16; anything else (or an ambiguous match) is reported as unidentified.
    """
    n = len(table)
    if n > 16:
        return f"unidentified (order {n})"
    prof = _profile(table, identity)
    hits = [name for name, p in _catalogue() if p == prof]
    if len(hits) == 1:
        return hits[0]
    return f"unidentified (order {n})"
