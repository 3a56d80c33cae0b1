import re
from fractions import Fraction
from typing import Union

from typing_extensions import Literal

from src.main.errors import DivisionByZero

Scalar = Union["GaussRational", Fraction, int, str]
ArithOp = Literal["add", "mul", "div", "conj"]

_TERM = re.compile(r"[+-]?[^+-]+")


def _rational(value: Union[Fraction, int, str]) -> Fraction:
    if isinstance(value, Fraction):
        return value
    return Fraction(value)


class GaussRational:
    """
    An exact complex number a + bi with rational a and b.

    Instances are immutable and hashable; arithmetic accepts ints, Fractions and
    rational strings on either side.
    """

    __slots__ = ("_re", "_im")

    def __init__(self, re: Union[Fraction, int, str] = 0, im: Union[Fraction, int, str] = 0):
        self._re = _rational(re)
        self._im = _rational(im)

    @property
    def re(self) -> Fraction:
        return self._re

    @property
    def im(self) -> Fraction:
        return self._im

    @classmethod
    def coerce(cls, value: Scalar) -> "GaussRational":
        """Turn an int, Fraction, string or GaussRational into a GaussRational."""
        if isinstance(value, GaussRational):
            return value
        if isinstance(value, str):
            return cls.parse(value)
        return cls(value)

    @classmethod
    def parse(cls, text: str) -> "GaussRational":
        """
        Parse strings such as "3/4", "-i", "i/2", "1/2+1/3i" or "2-i".

        Raises:
            ValueError: if the text is not an exact Gaussian rational
        """
        compact = text.replace(" ", "").replace("*", "")
        if not compact:
            raise ValueError("Empty Gaussian rational")
        re_part = Fraction(0)
        im_part = Fraction(0)
        for term in _TERM.findall(compact):
            if "i" in term:
                body = term.replace("i", "", 1)
                if "i" in body:
                    raise ValueError(f"Malformed Gaussian rational '{text}'")
                sign = -1 if body.startswith("-") else 1
                body = body.lstrip("+-")
                if body == "":
                    body = "1"
                elif body.startswith("/"):
                    body = "1" + body
                im_part += sign * Fraction(body)
            else:
                re_part += Fraction(term)
        return cls(re_part, im_part)

    def conj(self) -> "GaussRational":
        return GaussRational(self._re, -self._im)

    def norm2(self) -> Fraction:
        """Return |z|^2 = re^2 + im^2."""
        return self._re * self._re + self._im * self._im

    def is_real(self) -> bool:
        return self._im == 0

    def __bool__(self) -> bool:
        return bool(self._re) or bool(self._im)

    def __add__(self, other: Scalar) -> "GaussRational":
        other = GaussRational.coerce(other)
        return GaussRational(self._re + other._re, self._im + other._im)

    __radd__ = __add__

    def __sub__(self, other: Scalar) -> "GaussRational":
        other = GaussRational.coerce(other)
        return GaussRational(self._re - other._re, self._im - other._im)

    def __rsub__(self, other: Scalar) -> "GaussRational":
        return GaussRational.coerce(other) - self

    def __neg__(self) -> "GaussRational":
        return GaussRational(-self._re, -self._im)

    def __mul__(self, other: Scalar) -> "GaussRational":
        other = GaussRational.coerce(other)
        if not self._im and not other._im:
            return GaussRational(self._re * other._re)
        return GaussRational(self._re * other._re - self._im * other._im,
                             self._re * other._im + self._im * other._re)

    __rmul__ = __mul__

    def inverse(self) -> "GaussRational":
        if not self:
            raise DivisionByZero("Division by zero Gaussian rational")
        n = self.norm2()
        return GaussRational(self._re / n, -self._im / n)

    def __truediv__(self, other: Scalar) -> "GaussRational":
        return self * GaussRational.coerce(other).inverse()

    def __rtruediv__(self, other: Scalar) -> "GaussRational":
        return GaussRational.coerce(other) * self.inverse()

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            return self._im == 0 and self._re == other
        if not isinstance(other, GaussRational):
            return NotImplemented
        return self._re == other._re and self._im == other._im

    def __hash__(self) -> int:
        return hash((self._re, self._im))

    def __str__(self) -> str:
        if not self._im:
            return str(self._re)
        im = "i" if abs(self._im) == 1 else f"{abs(self._im)}i"
        if not self._re:
            return im if self._im > 0 else f"-{im}"
        sign = "+" if self._im > 0 else "-"
        return f"{self._re}{sign}{im}"

    def __repr__(self) -> str:
        return f"GaussRational({str(self)!r})"

    def to_json(self) -> dict:
        return {"re": str(self._re), "im": str(self._im)}


ZERO = GaussRational(0)
ONE = GaussRational(1)
I = GaussRational(0, 1)


def gq_arith(a: Scalar, b: Scalar, op: ArithOp) -> GaussRational:
    """Apply a single arithmetic operation; `conj` ignores b."""
    a = GaussRational.coerce(a)
    if op == "conj":
        return a.conj()
    b = GaussRational.coerce(b)
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"Unknown operation {op}")
