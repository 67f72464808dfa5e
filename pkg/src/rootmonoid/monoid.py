"""Root monoid structures on affine toric varieties.

A root monoid is fixed by a strongly convex cone sigma in N, a regular face
tau of dimension k, and a compatible collection E of 2k Demazure roots.  The
coordinate ring K[X_sigma] (spanned by chi^u, u in S_sigma) carries the
comultiplication

    chi^u |-> chi^u (x) chi^u * prod_r (1 (x) chi^{e1_r} + chi^{e2_r} (x) 1)^{<p_r, u>}

whose unit group is G = G_a^k x| T, T the torus with character lattice
M(tau).  Everything here is exact; points carry rational coordinates.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from . import lattice as lat
from .cones import Cone, Face, HilbertBasis, dual_cone, hilbert_basis, is_regular_face
from .demazure import CompatibilityError, CompatibleCollection, is_active, make_compatible_collection
from .laurent import LaurentPoly, TensorPoly
from .lattice import AdaptedBasis, Vector


class MonoidError(ValueError):
    """Validation failure; ``condition`` names the failed check."""

    def __init__(self, condition: str, message: str):
        super().__init__(f"{condition}: {message}")
        self.condition = condition


@dataclass(frozen=True, eq=False)
class RootMonoid:
    sigma: Cone
    tau: Face
    collection: CompatibleCollection
    basis: AdaptedBasis
    dual_sigma: Cone
    hilbert: HilbertBasis

    @property
    def n(self) -> int:
        return self.sigma.rank

    @property
    def k(self) -> int:
        return self.collection.k

    @property
    def face_rays(self) -> tuple[Vector, ...]:
        return self.tau.rays

    def in_semigroup(self, u) -> bool:
        return self.dual_sigma.contains(u)

    def face_degrees(self, u) -> tuple[int, ...]:
        """(<p_1, u>, ..., <p_k, u>)."""
        return tuple(lat.pair(p, u) for p in self.face_rays)

    def torus_coordinates(self, u) -> tuple[int, ...]:
        """Coefficients c_j of q_{k+j} in u = sum a_r (-e1_r) + sum c_j q_{k+j}."""
        a = self.face_degrees(u)
        w = u
        for ar, e in zip(a, self.collection.e1):
            w = lat.add(w, lat.scale(ar, e))
        return tuple(lat.pair(w, p) for p in self.basis.primal[self.k:])

    def to_json(self):
        return {"cone": self.sigma.to_json(), "collection": self.collection.to_json()}


def build(sigma: Cone, tau: Face, collection, degree_bound: int | None = None) -> RootMonoid:
    """Validate (sigma, tau, E) and assemble the root monoid.

    ``collection`` may be a CompatibleCollection or a list of (e1, e2) pairs;
    either way every condition is re-checked.
    """
    if not sigma.is_strongly_convex():
        raise MonoidError("strongly_convex", "sigma contains a line")
    if tau.parent != sigma:
        raise MonoidError("face", "tau is not a face of sigma")
    if not is_regular_face(tau):
        raise MonoidError("regular_face", f"rays {list(tau.rays)} do not extend to a basis of N")
    pairs = (list(zip(collection.e1, collection.e2))
             if isinstance(collection, CompatibleCollection) else collection)
    try:
        coll = make_compatible_collection(sigma, tau, pairs)
    except CompatibilityError as exc:
        raise MonoidError("compatible", str(exc)) from None
    basis = lat.complete_basis(list(tau.rays), sigma.rank)
    k = coll.k
    adapted = [lat.scale(-1, e) for e in coll.e1] + list(basis.dual[k:])
    if lat.det(adapted) not in (1, -1):
        raise MonoidError("adapted_basis", "-e1 roots together with q_{k+1..n} are not a basis of M")
    dual = dual_cone(sigma)
    return RootMonoid(sigma, tau, coll, basis, dual, hilbert_basis(dual, degree_bound))


def build_unchecked(sigma: Cone, tau: Face, e1, e2, degree_bound=None) -> RootMonoid:
    """Assemble without validating E; used to exercise the verifier on bad data."""
    coll = CompatibleCollection(tau, tuple(map(tuple, e1)), tuple(map(tuple, e2)))
    basis = lat.complete_basis(list(tau.rays), sigma.rank)
    dual = dual_cone(sigma)
    return RootMonoid(sigma, tau, coll, basis, dual, hilbert_basis(dual, degree_bound))


# -- comultiplication and counit ------------------------------------------------

def _delta(X: RootMonoid, u) -> TensorPoly:
    degs = X.face_degrees(u)
    if any(d < 0 for d in degs):
        raise ValueError(f"exponent {list(u)} pairs negatively with a ray of tau")
    e1, e2 = X.collection.e1, X.collection.e2
    acc = {}
    for a in itertools.product(*[range(d + 1) for d in degs]):
        left, right, c = tuple(u), tuple(u), 1
        for ar, dr, x1, x2 in zip(a, degs, e1, e2):
            c *= comb(dr, ar)
            left = lat.add(left, lat.scale(ar, x2))
            right = lat.add(right, lat.scale(dr - ar, x1))
        key = (left, right)
        acc[key] = acc.get(key, 0) + c
    return TensorPoly(acc)


def _check_member(X, u):
    if not X.in_semigroup(u):
        raise ValueError(f"exponent {list(u)} is not in S_sigma")


def comultiply(X: RootMonoid, u) -> TensorPoly:
    """Delta(chi^u), fully expanded."""
    u = tuple(u)
    _check_member(X, u)
    return _delta(X, u)


def comultiply_poly(X: RootMonoid, f: LaurentPoly) -> TensorPoly:
    total = TensorPoly({})
    for m, c in f.items():
        total = total + comultiply(X, m).scaled(c)
    return total


def _counit(X, u) -> int:
    return int(all(d == 0 for d in X.face_degrees(u)))


def counit(X: RootMonoid, u) -> Fraction:
    _check_member(X, tuple(u))
    return Fraction(_counit(X, u))


# -- verification -------------------------------------------------------------

def sample_exponents(X: RootMonoid, degree: int = 3) -> list[Vector]:
    """Sums of 1..degree Hilbert basis elements (with repetition), deduplicated."""
    out = set()
    hb = list(X.hilbert)
    for d in range(1, degree + 1):
        for combo in itertools.combinations_with_replacement(hb, d):
            s = (0,) * X.n
            for h in combo:
                s = lat.add(s, h)
            out.add(s)
    return sorted(out)


def _entry(checked, witness=None, detail=None):
    e = {"passed": witness is None, "checked": checked}
    if witness is not None:
        e["witness"] = witness
        if detail:
            e["detail"] = detail
    return e


def verify_bialgebra(X: RootMonoid, degree: int = 3) -> dict:
    """Check closure, coassociativity, counit and multiplicativity of Delta.

    The checks run on every element of ``sample_exponents(X, degree)``.
    Delta and the counit are algebra maps, so agreement on the Hilbert basis
    generators and their low-degree products is what is verified here; the
    report says so explicitly.
    """
    sample = sample_exponents(X, degree)
    closure_w = coassoc_w = counit_w = mult_w = None
    closure_detail = coassoc_detail = counit_detail = mult_detail = None
    deltas = {}
    for u in sample:
        d = _delta(X, u)
        deltas[u] = d
        if closure_w is None:
            for (a, b), _ in d.items():
                bad = a if not X.in_semigroup(a) else (b if not X.in_semigroup(b) else None)
                if bad is not None:
                    closure_w = {"u": list(u), "term": [list(a), list(b)], "exponent": list(bad)}
                    closure_detail = "tensor exponent lies outside S_sigma"
                    break
        if coassoc_w is None:
            try:
                lhs = d.map_factor(0, lambda m: _delta(X, m))
                rhs = d.map_factor(1, lambda m: _delta(X, m))
            except ValueError as exc:
                coassoc_w = {"u": list(u)}
                coassoc_detail = str(exc)
            else:
                if lhs != rhs:
                    diff = lhs - rhs
                    (key, c), *_ = diff.items()
                    coassoc_w = {"u": list(u), "term": [list(x) for x in key], "difference": str(c)}
                    coassoc_detail = "(Delta (x) id) Delta != (id (x) Delta) Delta"
        if counit_w is None:
            target = TensorPoly.pure(u)
            left = d.contract(0, lambda m: _counit(X, m))
            right = d.contract(1, lambda m: _counit(X, m))
            if left != target or right != target:
                counit_w = {"u": list(u), "left": repr(left), "right": repr(right)}
                counit_detail = "(eps (x) id) Delta or (id (x) eps) Delta differs from chi^u"
    hb = list(X.hilbert)
    pairs = 0
    for h1, h2 in itertools.combinations_with_replacement(hb, 2):
        pairs += 1
        s = lat.add(h1, h2)
        if _delta(X, s) != deltas.get(h1, _delta(X, h1)) * deltas.get(h2, _delta(X, h2)):
            mult_w = {"u": list(h1), "v": list(h2)}
            mult_detail = "Delta(chi^{u+v}) != Delta(chi^u) Delta(chi^v)"
            break
    report = {
        "closure": _entry(len(sample), closure_w, closure_detail),
        "coassoc": _entry(len(sample), coassoc_w, coassoc_detail),
        "counit": _entry(len(sample), counit_w, counit_detail),
        "multiplicative": _entry(pairs, mult_w, mult_detail),
        "scope": f"Hilbert basis generators and their sums of up to {degree} terms",
    }
    report["passed"] = all(report[k]["passed"] for k in ("closure", "coassoc", "counit", "multiplicative"))
    return report


# -- unit group ---------------------------------------------------------------

@dataclass(frozen=True)
class UnitGroupData:
    """G_a^k x| T with T of rank n-k acting through the characters chi_r.

    ``char_matrix`` row r holds chi_r in the q_{k+1..n} coordinates of M(tau).
    The center is the kernel of all chi_r in T: its identity component has
    dimension ``center_dim`` and its component group is the product of
    Z/d over ``center_torsion``.
    """

    k: int
    torus_rank: int
    char_matrix: tuple[tuple[int, ...], ...]
    char_rank: int
    center_dim: int
    center_torsion: tuple[int, ...]

    @property
    def quotient_torus_rank(self) -> int:
        """Rank of T / Z(G)."""
        return self.char_rank

    def to_json(self):
        return {
            "k": self.k,
            "torus_rank": self.torus_rank,
            "char_matrix": [list(r) for r in self.char_matrix],
            "center": {"dim": self.center_dim, "torsion": list(self.center_torsion)},
            "quotient_torus_rank": self.char_rank,
        }


def unit_group(X: RootMonoid) -> UnitGroupData:
    q_rays = X.basis.primal[X.k:]
    rows = tuple(tuple(lat.pair(chi, p) for p in q_rays) for chi in X.collection.chars)
    tr = X.n - X.k
    nonzero = [r for r in rows if any(r)]
    rk = lat.rank(nonzero) if nonzero else 0
    torsion = tuple(f for f in lat.invariant_factors(rows) if f > 1) if rows and tr else ()
    return UnitGroupData(X.k, tr, rows, rk, tr - rk, torsion)


# -- points -------------------------------------------------------------------

@dataclass(frozen=True)
class Primitive:
    """The unit (alpha, t) of G_a^k x| T."""

    alpha: tuple
    t: tuple

    def __post_init__(self):
        object.__setattr__(self, "alpha", tuple(Fraction(a) for a in self.alpha))
        object.__setattr__(self, "t", tuple(Fraction(x) for x in self.t))
        if any(x == 0 for x in self.t):
            raise ValueError("torus coordinates must be nonzero")


@dataclass(frozen=True)
class Distinguished:
    """The point u |-> t^u if <u, v> = 0 else 0, for v in sigma."""

    v: Vector
    t: tuple

    def __post_init__(self):
        object.__setattr__(self, "v", tuple(self.v))
        object.__setattr__(self, "t", tuple(Fraction(x) for x in self.t))
        if any(x == 0 for x in self.t):
            raise ValueError("torus coordinates must be nonzero")


@dataclass(frozen=True)
class Product:
    left: object
    right: object


MonoidPoint = Primitive | Distinguished | Product


def identity_point(X: RootMonoid) -> Primitive:
    return Primitive((0,) * X.k, (1,) * (X.n - X.k))


def _power(x: Fraction, e: int) -> Fraction:
    if e == 0:
        return Fraction(1)
    return x ** e


def point_eval(X: RootMonoid, x, u, _cache=None) -> Fraction:
    """Value of chi^u at the point x."""
    u = tuple(u)
    _check_member(X, u)
    return _eval(X, x, u, {} if _cache is None else _cache)


def _eval(X, x, u, cache):
    key = (id(x), u)
    if key in cache:
        return cache[key]
    if isinstance(x, Primitive):
        if len(x.alpha) != X.k or len(x.t) != X.n - X.k:
            raise ValueError("point has the wrong shape for this monoid")
        val = Fraction(1)
        for a, d in zip(x.alpha, X.face_degrees(u)):
            val *= _power(a, d)
        for t, c in zip(x.t, X.torus_coordinates(u)):
            val *= _power(t, c)
    elif isinstance(x, Distinguished):
        if len(x.t) != X.n or not X.sigma.contains(x.v):
            raise ValueError("distinguished point needs v in sigma and n torus coordinates")
        if lat.pair(u, x.v) != 0:
            val = Fraction(0)
        else:
            val = Fraction(1)
            for t, c in zip(x.t, u):
                val *= _power(t, c)
    elif isinstance(x, Product):
        val = Fraction(0)
        for (a, b), c in _delta(X, u).items():
            left = _eval(X, x.left, a, cache)
            if left:
                val += c * left * _eval(X, x.right, b, cache)
    else:
        raise TypeError(f"not a monoid point: {x!r}")
    cache[key] = val
    return val


def char_value(X: RootMonoid, t, r: int) -> Fraction:
    """chi_r(t) for t in T given in the q_{k+1..n} coordinates."""
    row = unit_group(X).char_matrix[r]
    val = Fraction(1)
    for ti, c in zip(t, row):
        val *= Fraction(ti) ** c
    return val


def semidirect_product(X: RootMonoid, x: Primitive, y: Primitive) -> Primitive:
    """(alpha + chi(t) alpha', t t')."""
    alpha = tuple(a + char_value(X, x.t, r) * b for r, (a, b) in enumerate(zip(x.alpha, y.alpha)))
    return Primitive(alpha, tuple(s * s2 for s, s2 in zip(x.t, y.t)))


def point_multiply(X: RootMonoid, x, y):
    """x * y.  Two units are normalised to a unit via the semidirect law,
    after confirming that it evaluates like the coalgebra product on the
    Hilbert basis."""
    prod = Product(x, y)
    if isinstance(x, Primitive) and isinstance(y, Primitive):
        normal = semidirect_product(X, x, y)
        cache = {}
        for h in X.hilbert:
            if _eval(X, prod, h, cache) != _eval(X, normal, h, cache):
                raise AssertionError(f"semidirect law disagrees with Delta at chi^{list(h)}")
        return normal
    return prod


def points_agree(X: RootMonoid, x, y, exponents=None) -> bool:
    exps = list(exponents) if exponents is not None else list(X.hilbert)
    cache = {}
    return all(_eval(X, x, u, cache) == _eval(X, y, u, cache) for u in exps)


def active(X: RootMonoid) -> bool:
    return is_active(X.collection)
