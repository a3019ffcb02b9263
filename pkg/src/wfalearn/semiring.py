"""Exact semirings used as weight domains.

Four instances ship: rationals (``RAT``), integers (``INT``), booleans
(``BOOL``) and natural numbers (``NAT``).  Elements are plain Python values
(``Fraction``, ``int``, ``bool``, :class:`Nat`); the semiring object carries
the operations, so generic code never relies on operator overloading.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Any, Iterable, Sequence


class SolverKind(enum.Enum):
    FIELD_GAUSSIAN = "field-gaussian"
    PID_SMITH = "pid-smith"
    NAT_BOUNDED = "nat-bounded"
    FINITE_EXHAUSTIVE = "finite-exhaustive"


class Nat(int):
    """A nonnegative integer.

    Closed under ``+`` and ``*``; subtraction and negation are not offered,
    so a negative coefficient cannot be produced by accident.
    """

    __slots__ = ()

    def __new__(cls, value: int = 0) -> "Nat":
        if isinstance(value, bool) or not isinstance(value, int):
            raise TypeError(f"Nat requires an int, got {type(value).__name__}")
        if value < 0:
            raise ValueError(f"negative value under nat: {value}")
        return super().__new__(cls, value)

    def __add__(self, other):
        if isinstance(other, Nat):
            return Nat(int(self) + int(other))
        return NotImplemented

    __radd__ = __add__

    def __mul__(self, other):
        if isinstance(other, Nat):
            return Nat(int(self) * int(other))
        return NotImplemented

    __rmul__ = __mul__

    def __sub__(self, other):
        raise TypeError("natural numbers do not support subtraction")

    __rsub__ = __sub__

    def __neg__(self):
        raise TypeError("natural numbers do not support negation")

    def __repr__(self) -> str:
        return f"Nat({int(self)})"


class Semiring:
    """Commutative-addition semiring with exact, decidable equality."""

    tag: str = ""
    solver: SolverKind
    carrier: tuple | None = None
    idempotent: bool = False

    zero: Any
    one: Any

    def add(self, x, y):
        raise NotImplementedError

    def mul(self, x, y):
        raise NotImplementedError

    def coerce(self, raw):
        """Convert a Python or JSON value into an element, rejecting what is not representable."""
        raise NotImplementedError

    def to_json(self, x):
        raise NotImplementedError

    def format(self, x) -> str:
        return str(self.to_json(x))

    def is_zero(self, x) -> bool:
        return x == self.zero

    def sum(self, xs: Iterable):
        return reduce(self.add, xs, self.zero)

    def dot(self, xs: Sequence, ys: Sequence):
        acc = self.zero
        for x, y in zip(xs, ys):
            acc = self.add(acc, self.mul(x, y))
        return acc

    def __repr__(self) -> str:
        return f"<semiring {self.tag}>"


class Ring(Semiring):
    def neg(self, x):
        raise NotImplementedError

    def sub(self, x, y):
        return self.add(x, self.neg(y))


class Field(Ring):
    def inv(self, x):
        raise NotImplementedError


class EuclideanDomain(Ring):
    def divmod(self, a, b):
        raise NotImplementedError

    def gcdex(self, a, b):
        """Return ``(g, s, t)`` with ``s*a + t*b == g`` and ``g`` a gcd of ``a`` and ``b``."""
        raise NotImplementedError


def _parse_int(raw, what: str) -> int:
    if isinstance(raw, bool):
        raise TypeError(f"expected {what}, got a boolean")
    if isinstance(raw, int):
        return int(raw)
    if isinstance(raw, Fraction) and raw.denominator == 1:
        return raw.numerator
    if isinstance(raw, str):
        try:
            value = Fraction(raw.strip())
        except (ValueError, ZeroDivisionError):
            pass
        else:
            if value.denominator == 1:
                return value.numerator
    raise ValueError(f"not a valid {what}: {raw!r}")


# JSON-safe integer range; beyond it integers are written as decimal strings.
_JSON_INT_LIMIT = 2**53


def _int_to_json(x: int):
    x = int(x)
    return x if abs(x) < _JSON_INT_LIMIT else str(x)


class Rationals(Field):
    tag = "rat"
    solver = SolverKind.FIELD_GAUSSIAN
    zero = Fraction(0)
    one = Fraction(1)

    def add(self, x, y):
        return x + y

    def mul(self, x, y):
        return x * y

    def neg(self, x):
        return -x

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("zero has no inverse")
        return 1 / x

    def coerce(self, raw):
        if isinstance(raw, bool):
            raise TypeError("expected a rational, got a boolean")
        if isinstance(raw, (int, Fraction)):
            return Fraction(raw)
        if isinstance(raw, str):
            try:
                return Fraction(raw.strip())
            except (ValueError, ZeroDivisionError):
                pass
        raise ValueError(f"not a valid rational: {raw!r}")

    def to_json(self, x):
        return f"{x.numerator}/{x.denominator}"

    def format(self, x) -> str:
        return str(x)


class Integers(EuclideanDomain):
    tag = "int"
    solver = SolverKind.PID_SMITH
    zero = 0
    one = 1

    def add(self, x, y):
        return x + y

    def mul(self, x, y):
        return x * y

    def neg(self, x):
        return -x

    def divmod(self, a, b):
        # Rounding toward the nearest quotient keeps |r| <= |b|/2 < |b|.
        if b == 0:
            raise ZeroDivisionError("division by zero")
        q, r = divmod(a, b)
        if 2 * abs(r) > abs(b):
            q += 1
            r -= b
        return q, r

    def gcdex(self, a, b):
        old_r, r = a, b
        old_s, s = 1, 0
        old_t, t = 0, 1
        while r != 0:
            q = old_r // r
            old_r, r = r, old_r - q * r
            old_s, s = s, old_s - q * s
            old_t, t = t, old_t - q * t
        if old_r < 0:
            old_r, old_s, old_t = -old_r, -old_s, -old_t
        return old_r, old_s, old_t

    def coerce(self, raw):
        return _parse_int(raw, "integer")

    def to_json(self, x):
        return _int_to_json(x)


class Booleans(Semiring):
    tag = "bool"
    solver = SolverKind.FINITE_EXHAUSTIVE
    carrier = (False, True)
    idempotent = True
    zero = False
    one = True

    def add(self, x, y):
        return x or y

    def mul(self, x, y):
        return x and y

    def coerce(self, raw):
        if isinstance(raw, bool):
            return raw
        if isinstance(raw, int) and raw in (0, 1):
            return bool(raw)
        if isinstance(raw, str) and raw.strip() in ("0", "1"):
            return raw.strip() == "1"
        raise ValueError(f"not a valid boolean weight (expected 0 or 1): {raw!r}")

    def to_json(self, x):
        return 1 if x else 0


class Naturals(Semiring):
    tag = "nat"
    solver = SolverKind.NAT_BOUNDED
    zero = Nat(0)
    one = Nat(1)

    def add(self, x, y):
        return x + y

    def mul(self, x, y):
        return x * y

    def coerce(self, raw):
        value = _parse_int(raw, "natural number")
        if value < 0:
            raise ValueError(f"negative value under nat: {value}")
        return Nat(value)

    def to_json(self, x):
        return _int_to_json(x)


RAT = Rationals()
INT = Integers()
BOOL = Booleans()
NAT = Naturals()

SEMIRINGS: dict[str, Semiring] = {s.tag: s for s in (RAT, INT, BOOL, NAT)}


def get_semiring(tag: str) -> Semiring:
    try:
        return SEMIRINGS[tag]
    except KeyError:
        raise ValueError(f"unknown semiring tag {tag!r} (expected one of {', '.join(SEMIRINGS)})") from None


def embed_to_rationals(x) -> Fraction:
    """Canonical embedding of an integer or natural number into the rationals."""
    if isinstance(x, bool):
        raise TypeError("booleans do not embed into the rationals")
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    raise TypeError(f"cannot embed {type(x).__name__} into the rationals")


@dataclass(frozen=True)
class AxiomReport:
    passed: bool
    suite: str | None = None
    sample: tuple | None = None

    def __bool__(self) -> bool:
        return self.passed


def axioms_check(semiring: Semiring, samples: Iterable[tuple]) -> AxiomReport:
    """Check the semiring (and ring/field, when applicable) laws on sample triples.

    Returns the first failing suite together with the offending triple.
    """
    samples = list(samples)
    if not samples:
        raise ValueError("axioms_check needs at least one sample triple")
    add, mul = semiring.add, semiring.mul
    zero, one = semiring.zero, semiring.one

    suites = [
        ("add identity/associativity",
         lambda x, y, z: add(x, zero) == x and add(zero, x) == x
         and add(add(x, y), z) == add(x, add(y, z))),
        ("add commutativity", lambda x, y, z: add(x, y) == add(y, x)),
        ("mul identity/associativity",
         lambda x, y, z: mul(x, one) == x and mul(one, x) == x
         and mul(mul(x, y), z) == mul(x, mul(y, z))),
        ("distributivity",
         lambda x, y, z: mul(x, add(y, z)) == add(mul(x, y), mul(x, z))
         and mul(add(x, y), z) == add(mul(x, z), mul(y, z))),
        ("zero annihilation", lambda x, y, z: mul(x, zero) == zero and mul(zero, x) == zero),
    ]
    if isinstance(semiring, Ring):
        suites.append(("additive inverse", lambda x, y, z: add(x, semiring.neg(x)) == zero))
    if isinstance(semiring, Field):
        suites.append(("multiplicative inverse",
                       lambda x, y, z: x == zero or mul(x, semiring.inv(x)) == one))
    if isinstance(semiring, EuclideanDomain):
        def division(x, y, z):
            if y == zero:
                return True
            q, r = semiring.divmod(x, y)
            g, s, t = semiring.gcdex(x, y)
            return (x == add(mul(q, y), r) and abs(r) < abs(y)
                    and x % g == 0 and y % g == 0 and s * x + t * y == g)
        suites.append(("division/gcd", division))

    for name, law in suites:
        for triple in samples:
            if not law(*triple):
                return AxiomReport(False, name, tuple(triple))
    return AxiomReport(True)
