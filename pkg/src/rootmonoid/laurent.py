"""Exact Laurent polynomials over Q with exponents in M, and their tensor powers.

A ``LaurentPoly`` is a finite sum of characters chi^m with rational
coefficients.  A ``TensorPoly`` has exponents in M^{(+)a} for some arity a;
the key ``(u, v)`` stands for chi^u (x) chi^v.  Both are immutable and kept
in canonical form (no zero coefficients, terms sorted by exponent), which
is also the equality notion.
"""

from __future__ import annotations

from fractions import Fraction


def _add_into(acc: dict, key, c):
    v = acc.get(key, 0) + c
    if v:
        acc[key] = v
    else:
        acc.pop(key, None)


def _flatten(key):
    for x in key:
        if isinstance(x, tuple):
            yield from x
        else:
            yield x


class _Terms:
    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=None):
        acc = {}
        for k, c in (terms.items() if isinstance(terms, dict) else (terms or ())):
            _add_into(acc, self._key(k), Fraction(c))
        self._terms = dict(sorted(acc.items()))
        self._hash = None

    @staticmethod
    def _key(k):
        return tuple(k)

    @classmethod
    def _raw(cls, acc):
        obj = cls.__new__(cls)
        obj._terms = dict(sorted(acc.items()))
        obj._hash = None
        return obj

    def items(self):
        return self._terms.items()

    def exponents(self):
        return list(self._terms)

    def coeff(self, key):
        return self._terms.get(self._key(key), Fraction(0))

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __iter__(self):
        return iter(self._terms.items())

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return not self._terms
            if len(self._terms) != 1:
                return False
            (k, c), = self._terms.items()
            return c == other and not any(x for x in _flatten(k))
        return type(self) is type(other) and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    def __add__(self, other):
        acc = dict(self._terms)
        for k, c in other._terms.items():
            _add_into(acc, k, c)
        return self._raw(acc)

    def __neg__(self):
        return self._raw({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scaled(self, c):
        c = Fraction(c)
        if not c:
            return self._raw({})
        return self._raw({k: c * v for k, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scaled(other)
        acc = {}
        for k1, c1 in self._terms.items():
            for k2, c2 in other._terms.items():
                _add_into(acc, self._combine(k1, k2), c1 * c2)
        return self._raw(acc)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative powers are not supported")
        result = self.one_like()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result


class LaurentPoly(_Terms):
    """Element of the group algebra Q[M]; keys are exponent tuples."""

    __slots__ = ("rank",)

    def __init__(self, terms=None, rank: int | None = None):
        super().__init__(terms)
        self.rank = rank if rank is not None else (len(next(iter(self._terms))) if self._terms else None)

    @classmethod
    def _raw(cls, acc):
        obj = super()._raw(acc)
        obj.rank = len(next(iter(obj._terms))) if obj._terms else None
        return obj

    @staticmethod
    def _combine(a, b):
        return tuple(x + y for x, y in zip(a, b))

    @classmethod
    def monomial(cls, m, c=1):
        return cls({tuple(m): c})

    @classmethod
    def constant(cls, c, rank: int | None = None):
        return cls({(0,) * (rank or 0): c}) if c else cls({})

    def one_like(self):
        return LaurentPoly({(0,) * (self.rank or 0): 1})

    def __repr__(self):
        if not self._terms:
            return "0"
        return " + ".join(f"{c}*chi^{list(k)}" for k, c in self._terms.items())

    def evaluate(self, values):
        """Substitute chi^{e_i} = values[i] and sum exactly (0**0 == 1)."""
        values = [Fraction(v) for v in values]
        total = Fraction(0)
        for k, c in self._terms.items():
            if len(k) != len(values):
                raise ValueError("point has the wrong number of coordinates")
            term = c
            for e, t in zip(k, values):
                if e < 0 and t == 0:
                    raise ZeroDivisionError("negative exponent at a zero coordinate")
                term *= t ** e
            total += term
        return total

    def to_json(self):
        return [{"exp": list(k), "coeff": str(c)} for k, c in self._terms.items()]

    @classmethod
    def from_json(cls, data):
        return cls({tuple(t["exp"]): Fraction(t["coeff"]) for t in data})


class TensorPoly(_Terms):
    """Element of Q[M] (x) ... (x) Q[M]; keys are tuples of exponent tuples."""

    @staticmethod
    def _key(k):
        return tuple(tuple(x) for x in k)

    @staticmethod
    def _combine(a, b):
        return tuple(tuple(x + y for x, y in zip(u, v)) for u, v in zip(a, b))

    @classmethod
    def pure(cls, *exponents, c=1):
        return cls({tuple(tuple(e) for e in exponents): c})

    @property
    def arity(self):
        return len(next(iter(self._terms))) if self._terms else None

    def one_like(self):
        k = next(iter(self._terms))
        return TensorPoly({tuple((0,) * len(u) for u in k): 1})

    @classmethod
    def constant(cls, c, rank=0, arity=2):
        return cls({((0,) * rank,) * arity: c}) if c else cls({})

    def __repr__(self):
        if not self._terms:
            return "0"
        return " + ".join(f"{c}*" + "(x)".join(f"chi^{list(u)}" for u in k)
                          for k, c in self._terms.items())

    def map_factor(self, position: int, fn):
        """Apply a linear map (exponent -> LaurentPoly or TensorPoly) to one factor."""
        acc = {}
        for key, c in self._terms.items():
            image = fn(key[position])
            for sub, c2 in image.items():
                sub = sub if isinstance(image, TensorPoly) else (sub,)
                new = key[:position] + tuple(sub) + key[position + 1:]
                _add_into(acc, new, c * c2)
        return TensorPoly._raw(acc)

    def contract(self, position: int, fn):
        """Apply a linear functional (exponent -> rational) to one factor."""
        acc = {}
        for key, c in self._terms.items():
            w = Fraction(fn(key[position]))
            if w:
                _add_into(acc, key[:position] + key[position + 1:], c * w)
        return TensorPoly._raw(acc)

    def as_laurent(self) -> LaurentPoly:
        if self.arity not in (None, 1):
            raise ValueError("only arity-one tensors convert to Laurent polynomials")
        return LaurentPoly({k[0]: c for k, c in self._terms.items()})

    def to_json(self):
        return [{"exp": [list(u) for u in k], "coeff": str(c)} for k, c in self._terms.items()]


def multiply(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    return f * g


def tensor_multiply(a: TensorPoly, b: TensorPoly) -> TensorPoly:
    return a * b


def evaluate(f: LaurentPoly, values) -> Fraction:
    return f.evaluate(values)
