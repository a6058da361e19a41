"""Rationals modulo one."""

from fractions import Fraction


class QmodZ:
    """An element of Q/Z, stored as a reduced fraction in ``[0, 1)``."""

    __slots__ = ("value",)

    def __init__(self, value=0, denominator=None):
        if isinstance(value, QmodZ):
            value = value.value
        if denominator is not None:
            value = Fraction(value, denominator)
        elif isinstance(value, str):
            value = Fraction(value.strip())
        else:
            value = Fraction(value)
        self.value = value - (value.numerator // value.denominator)

    @property
    def numerator(self):
        return self.value.numerator

    @property
    def denominator(self):
        return self.value.denominator

    def order(self):
        return self.value.denominator

    def is_zero(self):
        return self.value == 0

    def lift(self):
        """The representative in ``[0, 1)`` as a Fraction."""
        return self.value

    def __add__(self, other):
        return QmodZ(self.value + QmodZ(other).value)

    __radd__ = __add__

    def __sub__(self, other):
        return QmodZ(self.value - QmodZ(other).value)

    def __rsub__(self, other):
        return QmodZ(QmodZ(other).value - self.value)

    def __neg__(self):
        return QmodZ(-self.value)

    def __mul__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        return QmodZ(self.value * k)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, QmodZ):
            return self.value == other.value
        if isinstance(other, (int, Fraction, str)):
            return self.value == QmodZ(other).value
        return NotImplemented

    def __hash__(self):
        return hash(("QmodZ", self.value))

    def __lt__(self, other):
        return self.value < QmodZ(other).value

    def __bool__(self):
        return self.value != 0

    def __str__(self):
        v = self.value
        return "0" if v == 0 else f"{v.numerator}/{v.denominator}"

    def __repr__(self):
        return f"QmodZ({self})"
