"""Integer-valued polynomials in the binomial basis C(t, k).

The ring R of rational polynomials taking integer values on all of Z is free
as a Z-module on the binomial coefficients C(t, k).  Everything here is exact
big-integer arithmetic; evaluation works at negative integers via the falling
factorial.
"""

from __future__ import annotations

from math import factorial

from .errors import DegreeCapExceededError, InvalidParameterError

__all__ = ["IntValuedPoly", "binomial", "ivp_evaluate", "ivp_from_values", "interpolate_stable"]


def binomial(n: int, k: int) -> int:
    """C(n, k) for any integer n and k >= 0, via the falling factorial."""
    if k < 0:
        raise InvalidParameterError("k must be >= 0")
    num = 1
    for i in range(k):
        num *= n - i
    return num // factorial(k)


class IntValuedPoly:
    """Sum_k a_k * C(t, k) with integer a_k; canonical (no trailing zeros)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [int(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @staticmethod
    def zero() -> "IntValuedPoly":
        return IntValuedPoly()

    @staticmethod
    def constant(c: int) -> "IntValuedPoly":
        return IntValuedPoly((c,))

    @staticmethod
    def binom(k: int, scale: int = 1) -> "IntValuedPoly":
        """scale * C(t, k)."""
        return IntValuedPoly((0,) * k + (scale,))

    @staticmethod
    def binom_shifted(shift: int, k: int, scale: int = 1) -> "IntValuedPoly":
        """scale * C(t - shift, k), converted to the canonical basis."""
        d = k
        vals = [scale * binomial(m - shift, k) for m in range(d + 1)]
        return IntValuedPoly.from_values(0, vals)

    @property
    def degree(self) -> int:
        """Degree as a polynomial; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def evaluate(self, n: int) -> int:
        return sum(a * binomial(n, k) for k, a in enumerate(self.coeffs))

    __call__ = evaluate

    @staticmethod
    def from_values(n0: int, values) -> "IntValuedPoly":
        """Unique polynomial of degree < len(values) matching values at
        n0, n0+1, ...; exact integer change of basis via re-evaluation at
        0..d followed by forward differencing."""
        values = [int(v) for v in values]
        if not values:
            return IntValuedPoly()
        # Newton coefficients at base n0: forward differences
        newton = _forward_differences(values)
        d = len(values) - 1
        # evaluate the Newton form at 0..d (integers since newton coeffs are)
        at_origin = [
            sum(c * binomial(m - n0, k) for k, c in enumerate(newton)) for m in range(d + 1)
        ]
        return IntValuedPoly(_forward_differences(at_origin))

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return IntValuedPoly([x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)])

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return IntValuedPoly([-c for c in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, int):
            return IntValuedPoly([c * other for c in self.coeffs])
        # product via value-space interpolation at deg1 + deg2 + 1 points
        if self.is_zero() or other.is_zero():
            return IntValuedPoly()
        d = self.degree + other.degree
        vals = [self.evaluate(m) * other.evaluate(m) for m in range(d + 1)]
        return IntValuedPoly.from_values(0, vals)

    __rmul__ = __mul__

    def exact_div(self, k: int) -> "IntValuedPoly":
        """Divide by a nonzero integer, requiring exactness in the basis."""
        if k == 0:
            raise InvalidParameterError("division by zero")
        out = []
        for c in self.coeffs:
            if c % k:
                raise InvalidParameterError(f"coefficient {c} not divisible by {k}")
            out.append(c // k)
        return IntValuedPoly(out)

    def shifted_binomial_coeffs(self, shift: int):
        """Expand in the basis C(t - shift, k): returns the integer coefficient
        list (Newton coefficients at base point `shift`)."""
        d = max(self.degree, 0)
        vals = [self.evaluate(shift + m) for m in range(d + 1)]
        out = _forward_differences(vals)
        while out and out[-1] == 0:
            out.pop()
        return out

    def __eq__(self, other):
        return isinstance(other, IntValuedPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(("IntValuedPoly", self.coeffs))

    def __repr__(self):
        return f"IntValuedPoly({self.coeffs!r})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k, a in enumerate(self.coeffs):
            if a == 0:
                continue
            if k == 0:
                terms.append(("-", str(-a)) if a < 0 else ("+", str(a)))
            else:
                mag = abs(a)
                base = f"C(t,{k})" if mag == 1 else f"{mag}*C(t,{k})"
                terms.append(("-" if a < 0 else "+", base))
        sign, first = terms[0]
        text = ("-" if sign == "-" else "") + first
        for sign, t in terms[1:]:
            text += f" {sign} {t}"
        return text


def _forward_differences(values):
    """First entries of successive forward-difference rows."""
    out = []
    row = list(values)
    while row:
        out.append(row[0])
        row = [row[i + 1] - row[i] for i in range(len(row) - 1)]
    return out


def ivp_evaluate(p: IntValuedPoly, n: int) -> int:
    return p.evaluate(n)


def ivp_from_values(n0: int, values) -> IntValuedPoly:
    return IntValuedPoly.from_values(n0, values)


def interpolate_stable(oracle, n0: int, cap: int) -> IntValuedPoly:
    """Interpolate an integer-valued polynomial from an oracle on consecutive
    integers n0, n0+1, ...

    A candidate of degree d is accepted once the whole (d+1)-st forward
    difference row of the sampled values is zero with at least three entries,
    and two additional held-out samples match.  `cap` bounds the degree;
    failure to stabilise raises DegreeCapExceededError carrying the samples.
    Oracle calls are deterministic: always the next consecutive point.
    """
    if cap < 0:
        raise InvalidParameterError("cap must be >= 0")
    values = []
    max_len = cap + 6  # cap+1 values, 3 zero differences, 2 hold-outs
    while True:
        values.append(int(oracle(n0 + len(values))))
        d = _stable_degree(values)
        if d is not None and d <= cap:
            candidate = IntValuedPoly.from_values(n0, values[: d + 1])
            h1 = int(oracle(n0 + len(values)))
            values.append(h1)
            h2 = int(oracle(n0 + len(values)))
            values.append(h2)
            if candidate.evaluate(n0 + len(values) - 2) == h1 and candidate.evaluate(
                n0 + len(values) - 1
            ) == h2:
                return candidate
        if len(values) >= max_len:
            raise DegreeCapExceededError(
                f"no stabilisation within degree cap {cap} from n0={n0}",
                n0=n0,
                values=values,
            )


def _stable_degree(values):
    """Smallest d >= -1 whose (d+1)-st difference row is all zero with at
    least 3 entries; None if no such d yet.  d = -1 means the zero polynomial."""
    row = list(values)
    d = -1
    while len(row) >= 3:
        if all(v == 0 for v in row):
            return d
        d += 1
        row = [row[i + 1] - row[i] for i in range(len(row) - 1)]
    return None
