"""Reductive monoids: root data, Vinberg cones and their automorphism groups.

A root datum is given by explicit vectors in E* (simple roots) and E
(simple coroots), both in standard coordinates, together with a basis of
the character lattice X*(T) inside E*.  The pairing is the coordinate dot
product.  Internally most work happens in lattice coordinates: a weight
lambda has coordinates <lambda, b_j> in the basis l_i of X*(T), a
cocharacter v has coordinates <l_j, v> in the dual basis b_j of X_*(T),
and the pairing becomes the plain dot product of coordinate vectors.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

import networkx as nx

from . import lattice as lat
from .automorphisms import bounded_unimodular, preserves_cone, ray_permuting_maps
from .cones import Cone, dual_cone
from .groups import cayley_table, identify, is_group


class RootDatumError(ValueError):
    pass


def _frac_vec(v):
    return tuple(Fraction(str(x)) if not isinstance(x, Fraction) else x for x in v)


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def _int_vec(v, what):
    if any(Fraction(x).denominator != 1 for x in v):
        raise RootDatumError(f"{what} {list(map(str, v))} is not in the lattice")
    return tuple(int(x) for x in v)


@dataclass(frozen=True, eq=False)
class RootDatum:
    rank: int
    radical_rank: int
    simple_roots: tuple
    simple_coroots: tuple
    char_lattice: tuple = None

    def __post_init__(self):
        n = self.rank
        object.__setattr__(self, "simple_roots", tuple(_frac_vec(a) for a in self.simple_roots))
        object.__setattr__(self, "simple_coroots", tuple(_frac_vec(a) for a in self.simple_coroots))
        lattice = self.char_lattice if self.char_lattice is not None else lat.identity(n)
        object.__setattr__(self, "char_lattice", tuple(_frac_vec(r) for r in lattice))
        for v in self.simple_roots + self.simple_coroots + self.char_lattice:
            if len(v) != n:
                raise RootDatumError(f"vector {list(map(str, v))} does not have {n} coordinates")
        if len(self.char_lattice) != n or lat.rank(self.char_lattice) != n:
            raise RootDatumError("char_lattice must be an invertible n x n matrix")
        if len(self.simple_roots) != len(self.simple_coroots):
            raise RootDatumError("need as many coroots as roots")

    @property
    def semisimple_rank(self) -> int:
        return len(self.simple_roots)

    @classmethod
    def from_json(cls, data):
        return cls(int(data["rank"]), int(data["radical_rank"]), tuple(data.get("simple_roots", [])),
                   tuple(data.get("simple_coroots", [])), tuple(data["char_lattice"]) if "char_lattice" in data else None)

    def to_json(self):
        s = lambda v: [_num(x) for x in v]
        return {"rank": self.rank, "radical_rank": self.radical_rank,
                "simple_roots": [s(a) for a in self.simple_roots],
                "simple_coroots": [s(a) for a in self.simple_coroots],
                "char_lattice": [s(r) for r in self.char_lattice]}

    @cached_property
    def cochar_lattice(self):
        """Rows b_j of the dual basis of X_*(T): <l_i, b_j> = delta_ij."""
        return lat.transpose(lat.inverse(self.char_lattice))

    def weight_coords(self, lam):
        return tuple(_dot(lam, b) for b in self.cochar_lattice)

    def coweight_coords(self, v):
        return tuple(_dot(l, v) for l in self.char_lattice)

    def weight_from_coords(self, a):
        return tuple(sum(a[i] * self.char_lattice[i][j] for i in range(self.rank)) for j in range(self.rank))

    def coweight_from_coords(self, c):
        return tuple(sum(c[i] * self.cochar_lattice[i][j] for i in range(self.rank)) for j in range(self.rank))

    @cached_property
    def root_coords(self):
        return tuple(_int_vec(self.weight_coords(a), "simple root") for a in self.simple_roots)

    @cached_property
    def coroot_coords(self):
        return tuple(_int_vec(self.coweight_coords(a), "simple coroot") for a in self.simple_coroots)

    def problems(self) -> list[str]:
        """Everything wrong with this datum (empty when valid)."""
        out = []
        r, n, k = self.semisimple_rank, self.rank, self.radical_rank
        if r + k != n:
            out.append(f"semisimple rank {r} + radical rank {k} != {n}")
        if r and lat.rank(self.simple_roots) != r:
            out.append("simple roots are linearly dependent")
        if r and lat.rank(self.simple_coroots) != r:
            out.append("simple coroots are linearly dependent")
        for what, prop in (("root", "root_coords"), ("coroot", "coroot_coords")):
            try:
                getattr(self, prop)
            except RootDatumError as exc:
                out.append(str(exc))
        try:
            cartan_matrix(self)
        except RootDatumError as exc:
            out.append(str(exc))
        return out

    def check(self):
        probs = self.problems()
        if probs:
            raise RootDatumError("; ".join(probs))
        return self


def _num(x):
    x = Fraction(x)
    return int(x) if x.denominator == 1 else str(x)


def _principal_minors_positive(c) -> bool:
    r = len(c)
    for size in range(1, r + 1):
        for idx in itertools.combinations(range(r), size):
            if lat.det([[c[i][j] for j in idx] for i in idx]) <= 0:
                return False
    return True


def cartan_matrix(rd: RootDatum) -> tuple[tuple[int, ...], ...]:
    """C_ij = <alpha_i, alpha_j^vee>, checked to be a finite-type Cartan matrix."""
    r = rd.semisimple_rank
    raw = [[_dot(rd.simple_roots[i], rd.simple_coroots[j]) for j in range(r)] for i in range(r)]
    if any(x.denominator != 1 for row in raw for x in row):
        raise RootDatumError("root/coroot pairings are not integers")
    c = tuple(tuple(int(x) for x in row) for row in raw)
    for i in range(r):
        if c[i][i] != 2:
            raise RootDatumError(f"<alpha_{i}, alpha_{i}^vee> = {c[i][i]}, expected 2")
        for j in range(r):
            if i != j and (c[i][j] > 0 or (c[i][j] == 0) != (c[j][i] == 0)):
                raise RootDatumError(f"entries ({i},{j}), ({j},{i}) violate the Cartan sign pattern")
    if not _principal_minors_positive(c):
        raise RootDatumError("Cartan matrix is not of finite type")
    return c


def diagram_automorphisms(rd: RootDatum) -> list[tuple[int, ...]]:
    """Permutations pi of the simple roots with C[pi(i)][pi(j)] == C[i][j]."""
    c = cartan_matrix(rd)
    r = len(c)
    return [p for p in itertools.permutations(range(r))
            if all(c[p[i]][p[j]] == c[i][j] for i in range(r) for j in range(r))]


def dynkin_graph(c) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(range(len(c)))
    for i, j in itertools.combinations(range(len(c)), 2):
        if c[i][j]:
            g.add_edge(i, j)
    return g


def _component_type(c, nodes) -> str:
    m = len(nodes)
    sub = [[c[i][j] for j in nodes] for i in nodes]
    g = dynkin_graph(sub)
    prods = {sub[i][j] * sub[j][i] for i in range(m) for j in range(m) if i != j and sub[i][j]}
    degrees = dict(g.degree())
    if prods <= {1}:
        if m <= 1 or max(degrees.values()) <= 2:
            return f"A{m}"
        branch = next(v for v, d in degrees.items() if d == 3)
        legs = sorted(len(nx.node_connected_component(g.subgraph(set(g) - {branch}), u)) for u in g[branch])
        if legs[:2] == [1, 1]:
            return f"D{m}"
        if legs[:2] == [1, 2] and legs[2] in (2, 3, 4):
            return f"E{m}"
        return "unknown"
    if 3 in prods:
        return "G2"
    (i, j), = [(i, j) for i in range(m) for j in range(i + 1, m) if sub[i][j] * sub[j][i] == 2]
    if m == 2:
        return "B2"
    ends = [v for v in (i, j) if degrees[v] == 1]
    if not ends:
        return "F4"
    end = ends[0]
    other = j if end == i else i
    # with C_ij = <alpha_i, alpha_j^vee>, |C_ij| = 2 means alpha_j is the short one
    end_is_short = abs(sub[other][end]) == 2
    return f"B{m}" if end_is_short else f"C{m}"


def dynkin_type(rd: RootDatum) -> str:
    c = cartan_matrix(rd)
    if not c:
        return "trivial"
    comps = sorted(nx.connected_components(dynkin_graph(c)), key=min)
    return " x ".join(_component_type(c, sorted(comp)) for comp in comps)


_ADJOINT = {"A": lambda m: f"PGL_{m + 1}", "B": lambda m: f"SO_{2 * m + 1}",
            "C": lambda m: f"PSp_{2 * m}", "D": lambda m: f"PSO_{2 * m}"}


def adjoint_name(type_name: str) -> str:
    if type_name == "trivial":
        return "trivial"
    parts = []
    for t in type_name.split(" x "):
        f = _ADJOINT.get(t[0])
        parts.append(f(int(t[1:])) if f else f"adjoint {t}")
    return " x ".join(parts)


# -- weights ------------------------------------------------------------------

def is_dominant(rd: RootDatum, lam) -> bool:
    lam = _frac_vec(lam)
    _int_vec(rd.weight_coords(lam), "weight")
    return all(_dot(lam, c) >= 0 for c in rd.simple_coroots)


def in_neg_weyl_chamber(rd: RootDatum, v) -> bool:
    v = _frac_vec(v)
    return all(_dot(a, v) <= 0 for a in rd.simple_roots)


# -- Vinberg cones --------------------------------------------------------------

@dataclass(frozen=True)
class VinbergCone:
    """Cone in E given by rational generators (standard coordinates)."""

    generators: tuple

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(_frac_vec(g) for g in self.generators))

    def lattice_cone(self, rd: RootDatum) -> Cone:
        """The same cone in X_*(T) coordinates."""
        return Cone(rd.rank, tuple(lat.primitive_part(rd.coweight_coords(g))
                                   for g in self.generators if any(g)), "N")


def _is_coroot_direction(rd, g):
    for c in rd.simple_coroots:
        if lat.rank([c, g]) == 1 and _dot(c, g) > 0:
            return True
    return False


@dataclass
class VinbergReport:
    valid: bool
    conditions: dict
    dual: Cone | None = None
    weights: list = field(default_factory=list)
    box_bound: int = 0

    def to_json(self, rd=None):
        out = {"valid": self.valid, "conditions": self.conditions, "box_bound": self.box_bound}
        if self.dual is not None:
            out["dual_rays"] = [[_num(x) for x in rd.weight_from_coords(r)] for r in self.dual.generators]
            out["weights"] = [[_num(x) for x in w] for w in self.weights]
        return out


def validate_vinberg_cone(rd: RootDatum, cone: VinbergCone, box_bound: int = 2) -> VinbergReport:
    """Check the cone conditions for a normal reductive monoid with unit group G.

    On success the report carries the dual cone (in X*(T) coordinates) and
    the weights of X*(T) in that dual cone whose lattice coordinates lie in
    [-box_bound, box_bound].
    """
    rd.check()
    lc = cone.lattice_cone(rd)
    conds = {}
    conds["strictly_convex"] = {"passed": lc.is_strongly_convex()}
    missing = [i for i, c in enumerate(rd.coroot_coords) if not lc.contains(c)]
    conds["coroots_contained"] = {"passed": not missing}
    if missing:
        conds["coroots_contained"]["missing"] = missing
    extras = [g for g in cone.generators if any(g) and not _is_coroot_direction(rd, g)]
    outside = [[_num(x) for x in g] for g in extras if not in_neg_weyl_chamber(rd, g)]
    conds["extra_generators_in_negative_chamber"] = {"passed": not outside}
    if outside:
        conds["extra_generators_in_negative_chamber"]["outside"] = outside
    valid = all(c["passed"] for c in conds.values())
    if not valid:
        return VinbergReport(False, conds, box_bound=box_bound)
    dual = dual_cone(lc)
    weights = [rd.weight_from_coords(a) for a in itertools.product(range(-box_bound, box_bound + 1), repeat=rd.rank)
               if dual.contains(a)]
    weights.sort(reverse=True)
    return VinbergReport(True, conds, dual, weights, box_bound)


# -- Aut(G, D, C) -------------------------------------------------------------

@dataclass(frozen=True)
class ReductiveAut:
    """rho acting on X_*(T) (``cochar``) and contragrediently on X*(T) (``char``).

    Both matrices are in lattice coordinates and act on column vectors.
    ``diagram`` is the permutation of simple roots; ``radical`` is the
    restriction of rho to the cocharacters of the radical torus, in a fixed
    basis of that lattice.
    """

    cochar: tuple
    char: tuple
    diagram: tuple
    radical: tuple


def _radical_basis(rd):
    return lat.kernel_lattice(list(rd.root_coords), rd.rank) if rd.root_coords else \
        [tuple(r) for r in lat.identity(rd.rank)]


def _decompose(rd, rho, diagram_auts):
    """Tag a candidate with (pi, phi) or return None if it is not in Aut(G, D, C)."""
    rho_star = lat.transpose(lat.integer_inverse(rho))
    roots, coroots = rd.root_coords, rd.coroot_coords
    img_co = [lat.apply(rho, c) for c in coroots]
    img_ro = [lat.apply(rho_star, a) for a in roots]
    pi = next((p for p in diagram_auts
               if all(img_co[i] == coroots[p[i]] and img_ro[i] == roots[p[i]] for i in range(len(p)))), None)
    if pi is None:
        return None
    rad = _radical_basis(rd)
    if rad:
        # rho must keep the radical directions (common kernel of the roots)
        imgs = [lat.apply(rho, v) for v in rad]
        if any(_dot(a, w) for a in roots for w in imgs):
            return None
        phi = lat.transpose([tuple(int(x) for x in lat.solve(lat.transpose(rad), w)) for w in imgs])
    else:
        phi = ()
    return ReductiveAut(rho, rho_star, pi, phi)


def enumerate_aut_GDC(rd: RootDatum, cone: VinbergCone, entry_bound: int | None = None):
    """Aut(G, D, C) as ReductiveAut records (identity first) and a completeness flag."""
    report = validate_vinberg_cone(rd, cone, box_bound=0)
    if not report.valid:
        raise RootDatumError(f"invalid cone: {report.conditions}")
    lc = cone.lattice_cone(rd)
    n = rd.rank
    if lc.dim == n:
        cands = ray_permuting_maps(lc.rays, n)
        complete = True
    else:
        if entry_bound is None:
            entry_bound = 2 if n <= 2 else 1
        cands = (a for a in bounded_unimodular(n, entry_bound) if preserves_cone(a, lc))
        complete = False
    auts = diagram_automorphisms(rd)
    out = [d for d in (_decompose(rd, a, auts) for a in cands) if d is not None]
    ident = lat.identity(n)
    out.sort(key=lambda d: (d.cochar != ident, d.cochar))
    return out, complete


@dataclass
class ReductiveReport:
    dynkin_type: str
    center_invariants: tuple
    outer: list
    complete: bool
    table: list | None
    group_name: str | None
    notes: list = field(default_factory=list)

    @property
    def center_order(self) -> int:
        out = 1
        for d in self.center_invariants:
            out *= d
        return out

    def to_json(self):
        inner = {"semisimple_type": self.dynkin_type, "center_order": self.center_order,
                 "center_invariants": list(self.center_invariants),
                 "description": ("trivial" if self.dynkin_type == "trivial"
                                 else f"G_s/Z(G_s) = {adjoint_name(self.dynkin_type)}")}
        return {
            "inner": inner,
            "outer": {
                "elements": [{"char": [list(r) for r in d.char], "cochar": [list(r) for r in d.cochar],
                              "diagram": list(d.diagram), "radical": [list(r) for r in d.radical]}
                             for d in self.outer],
                "order": len(self.outer),
                "complete": self.complete,
                "group": self.group_name,
                "table": self.table,
            },
            "notes": self.notes,
        }


def center_invariants(rd: RootDatum) -> tuple[int, ...]:
    """Invariant factors of Z(G_s), via the Smith form of <alpha_i, b_j>
    for a basis b_j of the cocharacters of the semisimple part."""
    if not rd.coroot_coords:
        return ()
    ss = lat.saturation(list(rd.coroot_coords), rd.rank)
    m = [[_dot(a, b) for b in ss] for a in rd.root_coords]
    return tuple(d for d in lat.invariant_factors(m) if d > 1)


def reductive_aut_report(rd: RootDatum, cone: VinbergCone, entry_bound: int | None = None) -> ReductiveReport:
    outer, complete = enumerate_aut_GDC(rd, cone, entry_bound)
    mats = [d.cochar for d in outer]
    table = cayley_table(mats, lat.matmul)
    name = None
    if table is not None and mats and is_group(table, 0):
        name = identify(table, 0)
    notes = ["each element's (radical, diagram) decomposition is unique because rho is "
             "given on E, where both components are restrictions"]
    if not complete:
        notes.append("the cone is not full dimensional; the search is bounded and may miss elements")
    return ReductiveReport(dynkin_type(rd), center_invariants(rd), outer, complete, table, name, notes)


# -- standard data --------------------------------------------------------------

def _cartan(kind: str, r: int):
    c = [[0] * r for _ in range(r)]
    for i in range(r):
        c[i][i] = 2
    chain = r - 1 if kind != "D" else r - 2
    for i in range(chain):
        c[i][i + 1] = c[i + 1][i] = -1
    if kind == "B" and r >= 2:
        c[r - 2][r - 1] = -2
    elif kind == "C" and r >= 2:
        c[r - 1][r - 2] = -2
    elif kind == "D":
        c[r - 3][r - 1] = c[r - 1][r - 3] = -1
    return c


def standard_datum(kind: str, r: int) -> RootDatum:
    """Simply connected semisimple datum of type A_r, B_r, C_r or D_r.

    Coordinates are fundamental-weight coordinates: X*(T) is Z^r, the
    coroots are the standard basis and the roots are the rows of the
    Cartan matrix.
    """
    kind = kind.upper()
    minimum = {"A": 1, "B": 2, "C": 2, "D": 4}[kind]
    if r < minimum:
        raise ValueError(f"type {kind} needs rank at least {minimum}")
    c = _cartan(kind, r)
    return RootDatum(r, 0, tuple(tuple(row) for row in c), lat.identity(r), lat.identity(r))


def gl_datum(n: int) -> RootDatum:
    roots = tuple(tuple(int(j == i) - int(j == i + 1) for j in range(n)) for i in range(n - 1))
    return RootDatum(n, 1, roots, roots, lat.identity(n))


def mat_cone(n: int) -> VinbergCone:
    """The cone of the monoid of n x n matrices: coroots plus the last coordinate vector."""
    rd = gl_datum(n)
    last = tuple(int(j == n - 1) for j in range(n))
    return VinbergCone(tuple(rd.simple_coroots) + (last,))
