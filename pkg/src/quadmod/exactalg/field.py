"""Exact scalar fields: the rationals and prime fields F_p."""

from __future__ import annotations

from fractions import Fraction

__all__ = ["Field", "QQ", "GF", "parse_field"]

_MAX_PRIME = 2**61


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    # deterministic Miller-Rabin for n < 3.3e24
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41):
        if a % n == 0:
            continue
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class Field:
    """A field of exact scalars.

    ``Field(0)`` is the rationals (scalars are :class:`fractions.Fraction`),
    ``Field(p)`` is F_p (scalars are ints in ``range(p)``).
    """

    __slots__ = ("p",)

    def __init__(self, p: int = 0):
        if p:
            if not _is_prime(p):
                raise ValueError(f"characteristic {p} is not prime")
            if p >= _MAX_PRIME:
                raise ValueError("prime fields are limited to p < 2**61")
        object.__setattr__(self, "p", p)

    def __setattr__(self, name, value):
        raise AttributeError("Field is immutable")

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def kind(self) -> str:
        return "prime-field" if self.p else "rationals"

    @property
    def zero(self):
        return 0 if self.p else Fraction(0)

    @property
    def one(self):
        return 1 if self.p else Fraction(1)

    def __call__(self, x):
        """Coerce an int, Fraction or string such as ``"-1/2"`` into the field."""
        if isinstance(x, str):
            x = Fraction(x.strip())
        if self.p:
            if isinstance(x, Fraction):
                num, den = x.numerator % self.p, x.denominator % self.p
                if den == 0:
                    raise ZeroDivisionError(f"{x} has no image in F_{self.p}")
                return num * pow(den, -1, self.p) % self.p
            return int(x) % self.p
        return Fraction(x)

    def norm(self, x):
        return x % self.p if self.p else x

    def inv(self, x):
        if not x:
            raise ZeroDivisionError("inverse of zero")
        if self.p:
            return pow(x, -1, self.p)
        return 1 / x

    def render(self, x) -> str:
        if self.p:
            return str(x % self.p)
        x = Fraction(x)
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"

    def spec(self) -> str:
        return f"Fp:{self.p}" if self.p else "Q"

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return f"GF({self.p})" if self.p else "QQ"


QQ = Field(0)


def GF(p: int) -> Field:
    return Field(p)


def parse_field(text: str) -> Field:
    """Parse ``"Q"``, ``"Fp:7"`` or ``"F7"``."""
    t = text.strip()
    if t in ("Q", "QQ"):
        return QQ
    if t.startswith("Fp:"):
        return Field(int(t[3:]))
    if t.startswith("F") and t[1:].isdigit():
        return Field(int(t[1:]))
    raise ValueError(f"unknown field spec {text!r}")
