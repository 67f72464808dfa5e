"""Demazure roots, compatible collections and the root-subgroup actions.

Ray indices are 0-based positions in ``sigma.rays`` (canonical order).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from . import lattice as lat
from .cones import Cone, ConeError, Face, dual_cone, is_regular_face, rays_from_inequalities
from .laurent import LaurentPoly
from .lattice import Vector


class CompatibilityError(ValueError):
    pass


@dataclass(frozen=True)
class DemazureRoot:
    e: Vector
    ray_index: int
    ray: Vector

    def to_json(self):
        return {"e": list(self.e), "ray_index": self.ray_index}


def _ray(sigma: Cone, i: int) -> Vector:
    rays = sigma.rays
    if not 0 <= i < len(rays):
        raise ConeError(f"ray index {i} out of range for a cone with {len(rays)} rays")
    return rays[i]


def is_demazure_root(sigma: Cone, e, i: int) -> bool:
    p = _ray(sigma, i)
    if lat.pair(e, p) != -1:
        return False
    return all(lat.pair(e, q) >= 0 for j, q in enumerate(sigma.rays) if j != i)


def demazure_root(sigma: Cone, e, i: int) -> DemazureRoot:
    if not is_demazure_root(sigma, e, i):
        raise CompatibilityError(f"{tuple(e)} is not a Demazure root for ray {i} of {sigma}")
    return DemazureRoot(tuple(e), i, sigma.rays[i])


def root_ray_index(sigma: Cone, e) -> int | None:
    """The unique ray index for which ``e`` is a Demazure root, if any."""
    for i, p in enumerate(sigma.rays):
        if lat.pair(e, p) == -1:
            return i if is_demazure_root(sigma, e, i) else None
    return None


@dataclass(frozen=True)
class RootEnumeration:
    roots: dict           # ray index -> sorted list of DemazureRoot
    finite: dict          # ray index -> bool, the full set R_i is finite
    box_bound: int
    rays: tuple = ()

    def all(self) -> list[DemazureRoot]:
        return [r for i in sorted(self.roots) for r in self.roots[i]]

    def to_json(self):
        return {
            "box_bound": self.box_bound,
            "rays": [
                {"ray_index": i, "ray": list(self.rays[i]),
                 "roots": [list(r.e) for r in self.roots[i]], "finite": self.finite[i]}
                for i in sorted(self.roots)
            ],
        }


def enumerate_demazure_roots(sigma: Cone, box_bound: int) -> RootEnumeration:
    """All Demazure roots with max-norm at most ``box_bound``, per ray.

    For each ray p the roots lie on the affine hyperplane <e, p> = -1, which
    is parametrised by a lattice basis adapted to p: e = -q_1 + sum c_j q_j.
    The free coordinates c_j = <e, p'_j> are bounded by |p'_j|_1 * box_bound.
    """
    rays = sigma.rays
    out, finite = {}, {}
    n = sigma.rank
    for i, p in enumerate(rays):
        basis = lat.extend_to_basis([p])
        q = basis.dual
        spans = [sum(abs(x) for x in basis.primal[j]) * box_bound for j in range(1, n)]
        found = set()
        for cs in itertools.product(*[range(-s, s + 1) for s in spans]):
            e = lat.scale(-1, q[0])
            for c, qj in zip(cs, q[1:]):
                e = lat.add(e, lat.scale(c, qj))
            if max(map(abs, e)) > box_bound:
                continue
            if all(lat.pair(e, r) >= 0 for j, r in enumerate(rays) if j != i):
                found.add(e)
        out[i] = [DemazureRoot(e, i, p) for e in sorted(found)]
        # R_i is finite iff its recession cone {<e,p> = 0, <e,p_j> >= 0} is zero
        ineqs = [p, lat.scale(-1, p)] + [r for j, r in enumerate(rays) if j != i]
        finite[i] = not rays_from_inequalities(ineqs, n)
    return RootEnumeration(out, finite, box_bound, tuple(rays))


# -- compatible collections ---------------------------------------------------

@dataclass(frozen=True)
class CompatibleCollection:
    """Pairs (e1, e2) of Demazure roots attached to the rays of a regular face.

    Constructing this directly skips validation; use
    ``make_compatible_collection`` for checked input.
    """

    face: Face
    e1: tuple[Vector, ...]
    e2: tuple[Vector, ...]

    @property
    def k(self) -> int:
        return len(self.e1)

    @property
    def chars(self) -> tuple[Vector, ...]:
        return tuple(lat.sub(b, a) for a, b in zip(self.e1, self.e2))

    @property
    def roots(self) -> tuple[Vector, ...]:
        return self.e1 + self.e2

    def to_json(self):
        return {"face": self.face.to_json(), "e1": [list(e) for e in self.e1],
                "e2": [list(e) for e in self.e2]}


def make_compatible_collection(sigma: Cone, tau: Face, pairs) -> CompatibleCollection:
    if tau.parent != sigma:
        raise CompatibilityError("face does not belong to sigma")
    if not is_regular_face(tau):
        raise CompatibilityError("face is not regular: its rays do not extend to a basis of N")
    pairs = [(tuple(a), tuple(b)) for a, b in pairs]
    k = len(tau.ray_indices)
    if len(pairs) != k:
        raise CompatibilityError(f"need {k} root pairs for a face of dimension {k}, got {len(pairs)}")
    face_rays = tau.rays
    for r, (a, b) in enumerate(pairs):
        for s, e in ((1, a), (2, b)):
            if not is_demazure_root(sigma, e, tau.ray_indices[r]):
                raise CompatibilityError(
                    f"e{s}^({r}) = {e} is not a Demazure root of sigma for ray {face_rays[r]}")
            for i, p in enumerate(face_rays):
                want = -1 if i == r else 0
                got = lat.pair(p, e)
                if got != want:
                    raise CompatibilityError(
                        f"Kronecker condition fails: <p_{i}, e{s}^({r})> = {got}, expected {want}")
    coll = CompatibleCollection(tau, tuple(a for a, _ in pairs), tuple(b for _, b in pairs))
    for chi in coll.chars:
        if any(lat.pair(chi, p) for p in face_rays):
            raise CompatibilityError(f"character {chi} is not in M(tau)")
    return coll


def is_active(coll: CompatibleCollection) -> bool:
    chars = [c for c in coll.chars]
    if not chars:
        return True
    return lat.rank(chars) == len(chars)


def search_compatible_collections(sigma: Cone, tau: Face, box_bound: int) -> list[CompatibleCollection]:
    if not is_regular_face(tau):
        raise CompatibilityError("face is not regular")
    if box_bound < 1:
        return []
    enum = enumerate_demazure_roots(sigma, box_bound)
    face_rays = tau.rays
    options = []
    for r, idx in enumerate(tau.ray_indices):
        ok = [root.e for root in enum.roots[idx]
              if all(lat.pair(p, root.e) == (-1 if i == r else 0) for i, p in enumerate(face_rays))]
        options.append(ok)
    out = []
    for e1 in itertools.product(*options):
        for e2 in itertools.product(*options):
            out.append(CompatibleCollection(tau, tuple(e1), tuple(e2)))
    out.sort(key=lambda c: (c.e1, c.e2))
    return out


# -- derivations and G_a-actions ------------------------------------------------

def _check_support(sigma: Cone, f: LaurentPoly):
    dual = dual_cone(sigma)
    for m in f.exponents():
        if not dual.contains(m):
            raise ValueError(f"exponent {list(m)} is outside S_sigma")


def _derive(root: DemazureRoot, f: LaurentPoly) -> LaurentPoly:
    return LaurentPoly({lat.add(m, root.e): c * lat.pair(m, root.ray) for m, c in f.items()})


def derivation_apply(sigma: Cone, root: DemazureRoot, f: LaurentPoly) -> LaurentPoly:
    """delta_e(chi^m) = <m, p> chi^{m+e}, extended linearly."""
    _check_support(sigma, f)
    return _derive(root, f)


def derivation_power(sigma: Cone, root: DemazureRoot, f: LaurentPoly, q: int) -> LaurentPoly:
    _check_support(sigma, f)
    for _ in range(q):
        f = _derive(root, f)
    return f


def ga_action(sigma: Cone, root: DemazureRoot, s, f: LaurentPoly) -> LaurentPoly:
    """exp(s * delta_e)(f); the series stops once delta_e^i(f) vanishes."""
    _check_support(sigma, f)
    s = Fraction(s)
    total = LaurentPoly({})
    term, i = f, 0
    while term:
        total = total + term.scaled(s ** i / factorial(i))
        term = _derive(root, term)
        i += 1
    return total
