"""Automorphisms of active root monoids.

For an active root monoid the automorphism group splits as inner
automorphisms (G_a^k x| T/Z, positive dimensional, reported symbolically)
times the finite group Aut(M, sigma, tau, E) of lattice automorphisms of M
that preserve M(tau) and sigma-dual and fix every root of E.  Lattice maps
are integer matrices acting on column vectors.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from . import lattice as lat
from .cones import Cone, lattice_points_in_box
from .groups import cayley_table, identify, is_group
from .laurent import TensorPoly
from .monoid import RootMonoid, UnitGroupData, _counit, _delta, active, unit_group


class InactiveError(ValueError):
    pass


E_READING = ("roots of E are fixed pointwise; a setwise reading of "
             "'preserving the elements of E' would allow permutations of E")


def _require_unimodular(a, size):
    a = lat.mat(a)
    if len(a) != size or any(len(r) != size for r in a):
        raise ValueError(f"expected a {size}x{size} matrix")
    if not lat.is_unimodular(a):
        raise ValueError(f"matrix {a} is not unimodular (det {lat.det(a)})")
    return a


def is_in_aut_T_chi(X: RootMonoid, B) -> bool:
    """B acts on M(tau) in q-coordinates; does it fix every chi_r?"""
    B = _require_unimodular(B, X.n - X.k)
    return all(lat.apply(B, row) == row for row in unit_group(X).char_matrix)


def preserves_cone(A, cone: Cone) -> bool:
    inv = lat.integer_inverse(A)
    return (all(cone.contains(lat.apply(A, g)) for g in cone.generators)
            and all(cone.contains(lat.apply(inv, g)) for g in cone.generators))


def is_in_aut_M_sigma_tau_E(X: RootMonoid, A) -> bool:
    A = _require_unimodular(A, X.n)
    if any(lat.apply(A, e) != e for e in X.collection.roots):
        return False
    # A(M(tau)) is saturated of full rank in M(tau), so inclusion is equality
    for m in X.basis.dual[X.k:]:
        if any(lat.pair(lat.apply(A, m), p) for p in X.face_rays):
            return False
    return preserves_cone(A, X.dual_sigma)


def ray_permuting_maps(rays, n: int) -> list:
    """All unimodular maps permuting ``rays``, which must span Q^n."""
    rays = list(rays)
    chosen = []
    for r in rays:
        if lat.rank(chosen + [r]) > len(chosen):
            chosen.append(r)
    if len(chosen) != n:
        raise ValueError("rays do not span the ambient space")
    binv = lat.inverse(lat.transpose(chosen))
    ray_set = set(rays)
    out = set()
    for images in itertools.permutations(rays, n):
        a = lat.matmul(lat.transpose(images), binv)
        if any(x.denominator != 1 for row in a for x in row):
            continue
        a = lat.mat(a)
        if lat.det(a) not in (1, -1):
            continue
        if {lat.apply(a, r) for r in rays} == ray_set:
            out.add(a)
    return sorted(out)


def bounded_unimodular(n: int, bound: int):
    """Every unimodular n x n matrix with entries in [-bound, bound]."""
    entries = range(-bound, bound + 1)
    for flat in itertools.product(entries, repeat=n * n):
        a = tuple(tuple(flat[i * n:(i + 1) * n]) for i in range(n))
        if lat.det(a) in (1, -1):
            yield a


def enumerate_outer(X: RootMonoid, entry_bound: int | None = None):
    """Aut(M, sigma, tau, E) as a list of matrices (identity first), plus a completeness flag.

    With sigma full dimensional, sigma-dual is pointed and spans M_Q, so every
    member permutes its primitive rays and is pinned down by where a basis
    of rays goes: the search over ray assignments is exhaustive.  Otherwise
    only matrices with entries in [-entry_bound, entry_bound] are searched.
    """
    if not active(X):
        raise InactiveError("the automorphism description needs linearly independent characters chi_r")
    dual = X.dual_sigma
    if X.sigma.dim == X.n:
        cands = ray_permuting_maps(dual.rays, X.n)
        complete = True
    else:
        if entry_bound is None:
            entry_bound = 2 if X.n <= 2 else 1
        roots = X.collection.roots
        cands = (a for a in bounded_unimodular(X.n, entry_bound)
                 if all(lat.apply(a, e) == e for e in roots))
        complete = False
    ident = lat.identity(X.n)
    found = sorted((a for a in cands if is_in_aut_M_sigma_tau_E(X, a)), key=lambda a: (a != ident, a))
    return found, complete


def _sample_box(X: RootMonoid):
    b = max([abs(x) for h in X.hilbert for x in h] + [1])
    return lattice_points_in_box(X.dual_sigma, b)


def verify_monoid_automorphism(X: RootMonoid, A) -> bool:
    """Does chi^u -> chi^{A u} define a monoid automorphism of X?

    Checks that A preserves S_sigma (on a sample box and on the Hilbert
    basis) and that it commutes with Delta and the counit on every Hilbert
    basis element.
    """
    A = _require_unimodular(A, X.n)
    inv = lat.integer_inverse(A)
    hb = list(X.hilbert)
    if not all(X.in_semigroup(lat.apply(A, u)) for u in _sample_box(X)):
        return False
    if X.hilbert.lineality:
        if not all(X.in_semigroup(lat.apply(A, h)) and X.in_semigroup(lat.apply(inv, h)) for h in hb):
            return False
    elif {lat.apply(A, h) for h in hb} != set(hb):
        return False
    push = lambda m: TensorPoly.pure(lat.apply(A, m))
    for h in hb:
        lhs = _delta(X, lat.apply(A, h))
        rhs = _delta(X, h).map_factor(0, push).map_factor(1, push)
        if lhs != rhs:
            return False
        if _counit(X, lat.apply(A, h)) != _counit(X, h):
            return False
    return True


@dataclass
class AutReport:
    inner: UnitGroupData
    outer: list
    complete: bool
    table: list | None = None
    group_name: str | None = None
    verified: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def order(self) -> int:
        return len(self.outer)

    def inner_description(self) -> str:
        k, r = self.inner.k, self.inner.quotient_torus_rank
        ga = "G_a" if k == 1 else f"G_a^{k}"
        return f"{ga} x| T/Z(G), T/Z(G) a torus of rank {r}"

    def to_json(self):
        inner = self.inner.to_json()
        inner["description"] = self.inner_description()
        return {
            "inner": inner,
            "outer": {
                "elements": [[list(r) for r in a] for a in self.outer],
                "order": self.order,
                "complete": self.complete,
                "group": self.group_name,
                "table": self.table,
                "verified": self.verified,
            },
            "notes": self.notes,
        }


def aut_report(X: RootMonoid, entry_bound: int | None = None) -> AutReport:
    if not active(X):
        raise InactiveError("automorphism groups are described only for active root monoids "
                            "(the characters chi_r must be linearly independent)")
    outer, complete = enumerate_outer(X, entry_bound)
    verified = [verify_monoid_automorphism(X, a) for a in outer]
    table = cayley_table(outer, lat.matmul)
    ident = outer.index(lat.identity(X.n)) if lat.identity(X.n) in outer else None
    name = None
    if table is not None and ident is not None and is_group(table, ident):
        name = identify(table, ident) if len(outer) <= 16 else f"order {len(outer)}"
    notes = [E_READING]
    if not all(verified):
        notes.append("some lattice automorphisms failed the Delta-compatibility check")
    if not complete:
        notes.append("sigma is not full dimensional: sigma-dual contains a line, so the "
                     "search is bounded and may miss elements")
    return AutReport(unit_group(X), outer, complete, table, name, verified, notes)
