"""Rational polyhedral cones: duality, extreme rays, faces and Hilbert bases."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property

from . import lattice as lat
from .lattice import LatticeError, Vector


class ConeError(ValueError):
    pass


class SearchBoxExceeded(ConeError):
    def __init__(self, bound, needed):
        super().__init__(f"lattice-point search needs coordinates up to {needed}, "
                         f"degree bound is {bound}")
        self.bound = bound
        self.needed = needed


def canonical_order(vectors) -> list[Vector]:
    """Sorted, deduplicated list in the package-wide canonical order.

    Descending lexicographic, so the standard basis comes out as e_1, e_2, ...
    """
    return sorted(set(vectors), reverse=True)


def rays_from_inequalities(ineqs, n: int) -> list[Vector]:
    """Primitive generators of the cone {m : <h, m> >= 0 for h in ineqs}.

    The lineality space contributes a primitive basis and its negatives; the
    pointed remainder (intersected with the orthogonal complement of the
    lineality) contributes its extreme rays.  Rays of the pointed part are
    found by enumerating tight constraint sets of the right rank, which is
    exact and cheap for the handful of constraints seen at desk scale.
    """
    ineqs = [tuple(h) for h in ineqs if not lat.is_zero(h)]
    lineality = lat.nullspace(ineqs, n) if ineqs else [v for v in lat.identity(n)]
    gens = set()
    for l in lineality:
        gens.add(l)
        gens.add(lat.scale(-1, l))
    d = lat.rank(ineqs) if ineqs else 0
    if d == 0:
        return canonical_order(gens)
    uniq = list(dict.fromkeys(lat.primitive_part(h) for h in ineqs))
    for subset in itertools.combinations(range(len(uniq)), d - 1):
        tight = [uniq[i] for i in subset]
        system = list(lineality) + tight
        if system and lat.rank(system) != n - 1:
            continue
        ker = lat.nullspace(system, n) if system else None
        if ker is None:
            # n == 1 with no lineality and no tight constraints
            ker = [(1,)]
        if len(ker) != 1:
            continue
        r = ker[0]
        for cand in (r, lat.scale(-1, r)):
            if all(lat.pair(h, cand) >= 0 for h in uniq):
                gens.add(cand)
    return canonical_order(gens)


@dataclass(frozen=True, eq=False)
class Cone:
    """Cone generated by integer vectors in a lattice of rank ``rank``.

    ``side`` is ``"N"`` or ``"M"`` and is informational; duality flips it.
    Generators are stored primitive, deduplicated and canonically ordered.
    """

    rank: int
    generators: tuple[Vector, ...] = ()
    side: str = "N"

    def __post_init__(self):
        if self.rank < 1:
            raise LatticeError("rank must be positive")
        gens = []
        for g in self.generators:
            if len(g) != self.rank:
                raise LatticeError(f"generator {tuple(g)} does not have rank {self.rank}")
            if not lat.is_zero(g):
                gens.append(lat.primitive_part(g))
        object.__setattr__(self, "generators", tuple(canonical_order(gens)))

    @classmethod
    def from_json(cls, data, side="N"):
        return cls(int(data["rank"]), tuple(tuple(r) for r in data.get("rays", [])), side)

    def to_json(self):
        return {"rank": self.rank, "rays": [list(r) for r in self.generators]}

    def __eq__(self, other):
        return isinstance(other, Cone) and self.rank == other.rank and self.same_set(other)

    def __hash__(self):
        return hash((self.rank, self.dual_generators))

    def __repr__(self):
        return f"Cone({[list(g) for g in self.generators]}, side={self.side!r})"

    @cached_property
    def dual_generators(self) -> tuple[Vector, ...]:
        return tuple(rays_from_inequalities(self.generators, self.rank))

    @cached_property
    def dim(self) -> int:
        return lat.rank(self.generators) if self.generators else 0

    def same_set(self, other) -> bool:
        return (all(other.contains(g) for g in self.generators)
                and all(self.contains(g) for g in other.generators))

    def contains(self, v) -> bool:
        if len(v) != self.rank:
            raise LatticeError(f"rank mismatch: {len(v)} vs {self.rank}")
        return all(lat.pair(h, v) >= 0 for h in self.dual_generators)

    def is_strongly_convex(self) -> bool:
        return lat.rank(self.dual_generators) == self.rank if self.dual_generators else self.rank == 0

    @cached_property
    def rays(self) -> tuple[Vector, ...]:
        return tuple(extreme_rays(self))

    @cached_property
    def lineality(self) -> list[Vector]:
        """Primitive basis of the largest subspace inside the cone."""
        hs = list(self.dual_generators)
        return lat.nullspace(hs, self.rank) if hs else [tuple(r) for r in lat.identity(self.rank)]


def dual_cone(c: Cone) -> Cone:
    return Cone(c.rank, c.dual_generators, "M" if c.side == "N" else "N")


def is_strongly_convex(c: Cone) -> bool:
    return c.is_strongly_convex()


def contains(c: Cone, v) -> bool:
    return c.contains(v)


def extreme_rays(c: Cone) -> list[Vector]:
    """Minimal primitive generating set of a strongly convex cone."""
    if not c.is_strongly_convex():
        raise ConeError("cone contains a line; extreme rays are undefined")
    dual = c.dual_generators
    out = []
    for g in c.generators:
        tight = [h for h in dual if lat.pair(h, g) == 0]
        if (lat.rank(tight) if tight else 0) == c.rank - 1:
            out.append(g)
    return canonical_order(out)


@dataclass(frozen=True)
class Face:
    """A face of a strongly convex cone, given by indices into ``parent.rays``.

    ``witness`` is a dual vector that vanishes on exactly the selected rays
    and is positive on all others.
    """

    parent: Cone
    ray_indices: tuple[int, ...]
    witness: Vector = field(default=None, compare=False)

    def __post_init__(self):
        idx = tuple(sorted(set(self.ray_indices)))
        rays = self.parent.rays
        if any(i < 0 or i >= len(rays) for i in idx):
            raise ConeError(f"ray index out of range in {idx}")
        chosen = [rays[i] for i in idx]
        normals = [h for h in self.parent.dual_generators
                   if all(lat.pair(h, r) == 0 for r in chosen)]
        w = tuple(sum(col) for col in zip(*normals)) if normals else (0,) * self.parent.rank
        on = {i for i, r in enumerate(rays) if lat.pair(w, r) == 0}
        if on != set(idx):
            raise ConeError(f"rays {idx} do not span a face")
        object.__setattr__(self, "ray_indices", idx)
        object.__setattr__(self, "witness", w)

    @property
    def rays(self) -> tuple[Vector, ...]:
        return tuple(self.parent.rays[i] for i in self.ray_indices)

    @property
    def dim(self) -> int:
        return lat.rank(self.rays) if self.rays else 0

    def perp_basis(self) -> list[Vector]:
        """Primitive basis of tau-perp in M (the lattice M(tau) if regular)."""
        return lat.kernel_lattice(list(self.rays), self.parent.rank)

    def to_json(self):
        return {"ray_indices": list(self.ray_indices)}

    @classmethod
    def from_rays(cls, parent: Cone, rays) -> "Face":
        wanted = [lat.primitive_part(r) for r in rays]
        try:
            idx = [parent.rays.index(r) for r in wanted]
        except ValueError:
            raise ConeError(f"some of {wanted} are not extreme rays of {parent}") from None
        return cls(parent, tuple(idx))


def all_faces(c: Cone) -> list[Face]:
    """Every face of a strongly convex cone, including {0} and c itself."""
    rays = c.rays
    dual = c.dual_generators
    full = frozenset(range(len(rays)))
    facet_sets = set()
    for h in dual:
        s = frozenset(i for i, r in enumerate(rays) if lat.pair(h, r) == 0)
        if s != full:
            facet_sets.add(s)
    found = {full}
    frontier = [full]
    while frontier:
        new = []
        for s in frontier:
            for f in facet_sets:
                t = s & f
                if t not in found:
                    found.add(t)
                    new.append(t)
        frontier = new
    faces = [Face(c, tuple(sorted(s))) for s in found]
    faces.sort(key=lambda f: (f.dim, f.ray_indices))
    return faces


def faces_of_dimension(c: Cone, d: int) -> list[Face]:
    return [f for f in all_faces(c) if f.dim == d]


def is_regular_face(f: Face) -> bool:
    return lat.is_saturated(list(f.rays))


# -- Hilbert bases ----------------------------------------------------------

def triangulate(rays: list[Vector], rank: int) -> list[list[Vector]]:
    """Split the pointed cone on ``rays`` into simplicial cones on its rays.

    Pulling triangulation: cone the first ray over the triangulated facets
    that avoid it.
    """
    c = Cone(rank, tuple(rays))
    rays = list(c.rays)
    d = c.dim
    if len(rays) == d:
        return [rays]
    apex = rays[0]
    out = []
    for facet in faces_of_dimension(c, d - 1):
        if 0 in facet.ray_indices:
            continue
        for simplex in triangulate(list(facet.rays), rank):
            out.append([apex] + simplex)
    return out


def parallelepiped_points(gens: list[Vector], rank: int, bound: int | None):
    """Lattice points sum(l_i g_i) with 0 <= l_i < 1, g_i independent."""
    lo = [sum(min(0, g[j]) for g in gens) for j in range(rank)]
    hi = [sum(max(0, g[j]) for g in gens) for j in range(rank)]
    needed = max([abs(x) for x in lo + hi] + [0])
    if bound is not None and needed > bound:
        raise SearchBoxExceeded(bound, needed)
    cols = lat.transpose(gens)
    pts = []
    for p in itertools.product(*[range(a, b + 1) for a, b in zip(lo, hi)]):
        lam = lat.solve(cols, p)
        if lam is not None and all(0 <= x < 1 for x in lam):
            pts.append(p)
    return pts


@dataclass(frozen=True)
class HilbertBasis:
    elements: tuple[Vector, ...]
    lineality: tuple[Vector, ...] = ()
    degree_bound: int | None = None

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)


def _pointed_hilbert_basis(c: Cone, bound):
    rays = list(c.rays)
    if not rays:
        return []
    cands = set(rays)
    for simplex in triangulate(rays, c.rank):
        for p in parallelepiped_points(simplex, c.rank, bound):
            if not lat.is_zero(p):
                cands.add(p)
    cands = list(cands)
    irreducible = []
    for x in cands:
        if not any(y != x and c.contains(lat.sub(x, y)) for y in cands):
            irreducible.append(x)
    return irreducible


def hilbert_basis(c: Cone, degree_bound: int | None = None) -> HilbertBasis:
    """Minimal generators of the monoid of lattice points in ``c``.

    For a pointed cone these are the irreducible elements.  If the cone has
    a lineality space L, the result is a primitive basis of L with its
    negatives, plus lifts (along a fixed lattice complement) of the Hilbert
    basis of the pointed image in Z^n / L.
    """
    lin = c.lineality
    if not lin:
        return HilbertBasis(tuple(canonical_order(_pointed_hilbert_basis(c, degree_bound))),
                            (), degree_bound)
    # lattice basis: complement vectors first, then a basis of L cap Z^n
    lin_lattice = lat.saturation(lin, c.rank)
    full = lat.extend_to_basis(lin_lattice).primal
    complement = list(full[len(lin_lattice):])
    coords_of = lat.integer_inverse(lat.transpose(list(complement) + list(lin_lattice)))
    q = len(complement)
    image = Cone(q, tuple(lat.apply(coords_of, g)[:q] for g in c.generators), c.side) if q else None
    elems = set()
    for l in lin_lattice:
        elems.add(l)
        elems.add(lat.scale(-1, l))
    if image is not None:
        for h in _pointed_hilbert_basis(image, degree_bound):
            lift = tuple(sum(h[i] * complement[i][j] for i in range(q)) for j in range(c.rank))
            elems.add(lift)
    return HilbertBasis(tuple(canonical_order(elems)), tuple(lin_lattice), degree_bound)


def lattice_points_in_box(c: Cone, bound: int):
    return [p for p in itertools.product(range(-bound, bound + 1), repeat=c.rank) if c.contains(p)]
