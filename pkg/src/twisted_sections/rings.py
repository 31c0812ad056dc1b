"""Coefficient fields, base rings and the graded ring context S = B[x0..xn].

Monomials are plain tuples of exponents: the first n+1 entries belong to the
x-variables, the remaining m entries to the base variables y1..ym (which have
S-degree 0).  The monomial order is degree-reverse-lexicographic on the
x-block, ties broken by degrevlex on the y-block.
"""

from __future__ import annotations

import operator
import random
from functools import lru_cache
from itertools import combinations_with_replacement
from math import comb
from typing import Iterable, Sequence

from gmpy2 import mpq

Monomial = tuple  # tuple[int, ...]


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


class Field:
    """The rationals (``p == 0``) or a prime field F_p.

    Elements are ``gmpy2.mpq`` over Q and ``int`` in ``[0, p)`` over F_p.
    """

    __slots__ = ("p",)

    def __init__(self, p: int = 0):
        if p and not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return "QQ" if not self.p else f"GF({self.p})"

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def zero(self):
        return 0 if self.p else mpq(0)

    @property
    def one(self):
        return 1 if self.p else mpq(1)

    def __call__(self, x):
        p = self.p
        if p:
            try:
                return operator.index(x) % p
            except TypeError:
                pass
            num, den = int(x.numerator), int(x.denominator)
            if den % p == 0:
                raise ZeroDivisionError(f"denominator {den} vanishes mod {p}")
            return (num * pow(den, p - 2, p)) % p
        return mpq(x)

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        if self.p:
            return pow(int(a), self.p - 2, self.p)
        return mpq(1) / a

    def neg(self, a):
        return (-a) % self.p if self.p else -a

    def random(self, rng: random.Random, nonzero: bool = False, height: int = 5):
        while True:
            if self.p:
                a = rng.randrange(self.p)
            else:
                a = mpq(rng.randint(-height, height), rng.randint(1, height))
            if a or not nonzero:
                return a

    def to_str(self, a) -> str:
        return str(a)


QQ = Field(0)


def GF(p: int) -> Field:
    return Field(p)


class BaseRing:
    """The base B: Q, F_p, or a polynomial ring k[y1..ym] over one of these."""

    def __init__(self, field: Field, variables: Sequence[str] = ()):
        self.field = field
        self.variables = tuple(variables)

    @classmethod
    def rationals(cls) -> "BaseRing":
        return cls(QQ)

    @classmethod
    def prime_field(cls, p: int) -> "BaseRing":
        return cls(Field(p))

    @classmethod
    def polynomial(cls, field: Field, variables: Sequence[str]) -> "BaseRing":
        if not variables:
            raise ValueError("a polynomial base needs at least one variable")
        return cls(field, variables)

    @property
    def kind(self) -> str:
        if self.variables:
            return "polynomial-ring"
        return "prime-field" if self.field.p else "rationals"

    @property
    def is_field(self) -> bool:
        return not self.variables

    @property
    def characteristic(self) -> int:
        return self.field.p

    def __eq__(self, other):
        return (
            isinstance(other, BaseRing)
            and self.field == other.field
            and self.variables == other.variables
        )

    def __hash__(self):
        return hash((self.field, self.variables))

    def __repr__(self):
        if self.variables:
            return f"{self.field!r}[{','.join(self.variables)}]"
        return repr(self.field)


@lru_cache(maxsize=None)
def _exponent_tuples(nvars: int, degree: int) -> tuple:
    out = []
    for combo in combinations_with_replacement(range(nvars), degree):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return tuple(out)


class PolyRing:
    """A polynomial ring over a field in ``nx`` graded and ``ny`` degree-0 variables.

    This is the ring the Groebner engine works in.  S itself is
    ``PolyRing(k, n+1, m)``; the base B = k[y] is ``PolyRing(k, 0, m)``.
    """

    def __init__(self, field: Field, nx: int, ny: int = 0):
        self.field = field
        self.p = field.p
        self.nx = nx
        self.ny = ny
        self.nvars = nx + ny
        self.one = (0,) * self.nvars
        self._keys: dict = {}

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and (self.field, self.nx, self.ny) == (other.field, other.nx, other.ny)
        )

    def __hash__(self):
        return hash((self.field, self.nx, self.ny))

    def __repr__(self):
        return f"PolyRing({self.field!r}, nx={self.nx}, ny={self.ny})"

    def deg(self, m: Monomial) -> int:
        return sum(m[: self.nx])

    def mkey(self, m: Monomial) -> tuple:
        k = self._keys.get(m)
        if k is None:
            nx = self.nx
            xs, ys = m[:nx], m[nx:]
            k = (sum(xs), tuple(-e for e in reversed(xs)), sum(ys), tuple(-e for e in reversed(ys)))
            self._keys[m] = k
        return k

    def tkey(self, t: tuple) -> tuple:
        """Sort key for a module term ``(position, monomial)``: position over term."""
        return (-t[0], self.mkey(t[1]))

    def x_monomials(self, degree: int) -> list:
        """All x-monomials of the given degree, in descending order."""
        if degree < 0:
            return []
        zeros = (0,) * self.ny
        mons = [e + zeros for e in _exponent_tuples(self.nx, degree)]
        mons.sort(key=self.mkey, reverse=True)
        return mons


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(map(operator.add, a, b))


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    return tuple(map(operator.sub, a, b))


def mono_divides(b: Monomial, a: Monomial) -> bool:
    """True iff b divides a."""
    return all(map(operator.ge, a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(map(max, a, b))


class RingContext:
    """The graded ring S = B[x0..xn] with deg x_j = 1 and deg y_i = 0."""

    def __init__(self, base: BaseRing, n: int):
        if n < 0:
            raise ValueError("n must be nonnegative")
        self.base = base
        self.n = n
        self.field = base.field
        self.ring = PolyRing(base.field, n + 1, len(base.variables))
        self.base_ring = PolyRing(base.field, 0, len(base.variables))
        self.x_names = tuple(f"x{j}" for j in range(n + 1))
        self.y_names = base.variables

    @classmethod
    def over(cls, base: "BaseRing | str | int", n: int, variables: Sequence[str] = ()) -> "RingContext":
        """Convenience constructor: ``RingContext.over("QQ", 2)``, ``over(32003, 1)``."""
        if isinstance(base, BaseRing):
            b = base
        else:
            field = QQ if base in ("QQ", "Q", 0) else Field(int(base))
            b = BaseRing(field, variables) if variables else BaseRing(field)
        return cls(b, n)

    @property
    def nvars(self) -> int:
        return self.ring.nvars

    @property
    def variable_names(self) -> tuple:
        return self.x_names + self.y_names

    def __eq__(self, other):
        return isinstance(other, RingContext) and self.base == other.base and self.n == other.n

    def __hash__(self):
        return hash((self.base, self.n))

    def __repr__(self):
        return f"RingContext({self.base!r}, n={self.n})"

    def x_var(self, j: int) -> Monomial:
        e = [0] * self.nvars
        e[j] = 1
        return tuple(e)

    def monomial_basis(self, degree: int) -> list:
        """The binomial(n+degree, n) x-monomials of a degree, descending order."""
        return self.ring.x_monomials(degree)

    def irrelevant_ideal_generators(self) -> list:
        return [self.x_var(j) for j in range(self.n + 1)]


def monomial_basis(ctx: RingContext, degree: int) -> list:
    return ctx.monomial_basis(degree)


def count_monomials(n: int, degree: int) -> int:
    return comb(n + degree, n) if degree >= 0 else 0


def exterior_subsets(n: int, s: int) -> list:
    """Sorted s-subsets of {0..n}, lexicographic: the basis of the s-th exterior power."""
    from itertools import combinations

    return [tuple(c) for c in combinations(range(n + 1), s)]


def sign_of_removal(subset: Iterable[int], j: int) -> int:
    """(-1)^position of j inside the sorted subset."""
    return -1 if list(subset).index(j) % 2 else 1
