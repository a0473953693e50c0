"""Exact coefficient fields: the rationals and prime fields F_p.

Rational scalars are `fractions.Fraction`; F_p scalars are plain ints in
range(p). Field objects are interned, so `a.field is b.field` is the
mixed-tag check used throughout.
"""

from fractions import Fraction

from .errors import InputError

_INSTANCES = {}


class Field:
    __slots__ = ("char", "p")

    def __new__(cls, p=None):
        key = p
        inst = _INSTANCES.get(key)
        if inst is None:
            inst = object.__new__(cls)
            inst.p = p
            inst.char = 0 if p is None else p
            _INSTANCES[key] = inst
        return inst

    @property
    def is_rational(self):
        return self.p is None

    def zero(self):
        return Fraction(0) if self.p is None else 0

    def one(self):
        return Fraction(1) if self.p is None else 1

    def of(self, x):
        """Coerce an int, Fraction or 'a/b' string into this field."""
        if self.p is None:
            if isinstance(x, Fraction):
                return x
            if isinstance(x, int):
                return Fraction(x)
            if isinstance(x, str):
                return Fraction(x)
            raise TypeError(f"cannot coerce {x!r} into Q")
        if isinstance(x, int):
            return x % self.p
        if isinstance(x, Fraction):
            num, den = x.numerator, x.denominator
            if den % self.p == 0:
                raise ZeroDivisionError(f"denominator of {x} vanishes mod {self.p}")
            return num * pow(den, -1, self.p) % self.p
        if isinstance(x, str):
            return self.of(Fraction(x))
        raise TypeError(f"cannot coerce {x!r} into F_{self.p}")

    def add(self, a, b):
        return a + b if self.p is None else (a + b) % self.p

    def sub(self, a, b):
        return a - b if self.p is None else (a - b) % self.p

    def mul(self, a, b):
        return a * b if self.p is None else (a * b) % self.p

    def neg(self, a):
        return -a if self.p is None else (-a) % self.p

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("division by zero")
        return 1 / a if self.p is None else pow(a, -1, self.p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def __repr__(self):
        return "QQ" if self.p is None else f"GF({self.p})"


QQ = Field()


def GF(p):
    if p < 2 or any(p % q == 0 for q in range(2, int(p**0.5) + 1)):
        raise InputError(f"{p} is not prime")
    return Field(p)


def parse_field(spec):
    """Parse a CLI field selector: 'q' or 'fp:<p>'."""
    s = spec.strip().lower()
    if s in ("q", "qq", "rationals"):
        return QQ
    if s.startswith("fp:"):
        try:
            p = int(s[3:])
        except ValueError:
            raise InputError(f"bad field selector {spec!r}") from None
        return GF(p)
    raise InputError(f"bad field selector {spec!r} (expected q or fp:<p>)")
