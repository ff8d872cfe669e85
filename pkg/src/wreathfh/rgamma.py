"""The ring of weighted integer-valued polynomials attached to a finite group.

Basis elements B_N are indexed by exponent vectors N over the conjugacy
classes: they are the coefficients of the generating function

    Omega(x) = exp(T(log(1 + sum_c c x_c)))

with values in the polynomial algebra on symbols T(c).  Products are computed
through integer structure constants obtained from the substitution

    z_c = x_c + y_c + sum_{j,k} A_{j,k}^c x_j y_k,

never by multiplying the T-polynomials (those are kept only for leading-term
diagnostics).  For the trivial group, B_N is the binomial coefficient C(t, N)
and the ring is the classical ring of integer-valued polynomials.

Specialisation ev_r lands in the centre of the wreath-product group algebra;
the companion map psi_r lands in the interpolating algebra.  The modular
machinery (B_{q,r}, homomorphisms to a prime field indexed by p-adic digit
strings) lives here too.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import factorial

from .errors import InvalidParameterError, UnsupportedCharacterFieldError, WreathFHError
from .groupdata import GroupData, central_character, p_blocks
from .intpoly import binomial
from .partitions import Multipartition, Partition
from .wreathalg import CentreElement

__all__ = ["TPolynomial", "RGammaElement", "RGammaRing", "lucas_binomial_mod_p"]


class TPolynomial:
    """Polynomial with rational coefficients in commuting symbols T(c), one
    per class; keys are exponent tuples."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars, terms=None):
        self.nvars = nvars
        self.terms = {}
        if terms:
            for key, c in terms.items():
                c = Fraction(c)
                if c:
                    self.terms[key] = c

    @staticmethod
    def zero(nvars):
        return TPolynomial(nvars)

    @staticmethod
    def constant(nvars, c):
        return TPolynomial(nvars, {(0,) * nvars: Fraction(c)})

    @staticmethod
    def variable(nvars, idx):
        key = tuple(1 if i == idx else 0 for i in range(nvars))
        return TPolynomial(nvars, {key: Fraction(1)})

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            new = out.get(k, Fraction(0)) + c
            if new:
                out[k] = new
            else:
                out.pop(k, None)
        return TPolynomial(self.nvars, out)

    def __sub__(self, other):
        return self + (other * Fraction(-1))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return TPolynomial(
                self.nvars, {k: c * other for k, c in self.terms.items()} if other else {}
            )
        out = {}
        for ka, ca in self.terms.items():
            for kb, cb in other.terms.items():
                key = tuple(a + b for a, b in zip(ka, kb))
                out[key] = out.get(key, Fraction(0)) + ca * cb
        return TPolynomial(self.nvars, out)

    __rmul__ = __mul__

    def total_degree(self):
        return max((sum(k) for k in self.terms), default=-1)

    def homogeneous_part(self, d):
        return TPolynomial(self.nvars, {k: c for k, c in self.terms.items() if sum(k) == d})

    def __eq__(self, other):
        return isinstance(other, TPolynomial) and self.terms == other.terms

    def __repr__(self):
        return f"TPolynomial({self.nvars}, {self.terms!r})"


class RGammaElement:
    """Sparse integer combination of basis elements B_N; keys are exponent
    tuples over the class indices."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars, terms=None):
        self.nvars = nvars
        self.terms = {}
        if terms:
            for key, c in terms.items():
                if len(key) != nvars:
                    raise InvalidParameterError(f"exponent vector {key} has wrong length")
                if c:
                    self.terms[tuple(key)] = c

    @staticmethod
    def basis(nvars, key, coeff=1):
        return RGammaElement(nvars, {tuple(key): coeff})

    @staticmethod
    def one(nvars):
        return RGammaElement(nvars, {(0,) * nvars: 1})

    def coefficient(self, key):
        return self.terms.get(tuple(key), 0)

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            new = out.get(k, 0) + c
            if new:
                out[k] = new
            else:
                out.pop(k, None)
        return RGammaElement(self.nvars, out)

    def __sub__(self, other):
        return self + (other * -1)

    def __mul__(self, k: int):
        return RGammaElement(self.nvars, {key: c * k for key, c in self.terms.items()} if k else {})

    __rmul__ = __mul__

    def reduce_mod(self, p: int):
        return RGammaElement(self.nvars, {k: c % p for k, c in self.terms.items()})

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, RGammaElement) and self.terms == other.terms

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: (sum(kv[0]), kv[0]))

    def __repr__(self):
        return f"RGammaElement({dict(self.sorted_terms())!r})"

    def __str__(self):
        if not self.terms:
            return "0"
        chunks = []
        for key, c in self.sorted_terms():
            base = f"B[{','.join(str(x) for x in key)}]"
            chunks.append(f"{c}*{base}")
        return " + ".join(chunks).replace("+ -", "- ")


class RGammaRing:
    """Arithmetic of the weighted integer-valued polynomial ring of a group."""

    def __init__(self, G: GroupData):
        self.G = G
        self.l = G.num_classes
        self._z_power_cache = {(0,) * self.l: {((0,) * self.l, (0,) * self.l): 1}}
        self._omega_cache = {}

    # -- identity / helpers --------------------------------------------------

    def one(self):
        return RGammaElement.one(self.l)

    def basis(self, key, coeff=1):
        return RGammaElement.basis(self.l, key, coeff)

    # -- multiplication via z-substitution ------------------------------------

    def _z_poly(self, ci):
        """z_{ci} as a sparse polynomial in (x, y): keys ((x-exp), (y-exp))."""
        l = self.l
        unit = [0] * l
        out = {}
        xk = list(unit)
        xk[ci] = 1
        out[(tuple(xk), tuple(unit))] = 1
        out[(tuple(unit), tuple(xk))] = 1
        for j in range(l):
            for k in range(l):
                a = self.G.a_coeffs[j][k][ci]
                if a:
                    xe = list(unit)
                    xe[j] = 1
                    ye = list(unit)
                    ye[k] = 1
                    key = (tuple(xe), tuple(ye))
                    out[key] = out.get(key, 0) + a
        return out

    def _z_power(self, kvec):
        """Expansion of prod_i z_{c_i}^{kvec[i]} in the (x, y) monomials."""
        kvec = tuple(kvec)
        cached = self._z_power_cache.get(kvec)
        if cached is not None:
            return cached
        i = next(idx for idx, v in enumerate(kvec) if v)
        prev_key = list(kvec)
        prev_key[i] -= 1
        prev = self._z_power(tuple(prev_key))
        zi = self._z_poly(i)
        out = {}
        for (xa, ya), ca in prev.items():
            for (xb, yb), cb in zi.items():
                key = (
                    tuple(a + b for a, b in zip(xa, xb)),
                    tuple(a + b for a, b in zip(ya, yb)),
                )
                out[key] = out.get(key, 0) + ca * cb
        self._z_power_cache[kvec] = out
        return out

    def basis_product(self, nvec, mvec) -> RGammaElement:
        """B_N B_M = sum_K [coefficient of x^N y^M in z^K] B_K."""
        nvec, mvec = tuple(nvec), tuple(mvec)
        lo = max(sum(nvec), sum(mvec))
        hi = sum(nvec) + sum(mvec)
        terms = {}
        for total in range(lo, hi + 1):
            for kvec in _exponent_vectors(total, self.l):
                c = self._z_power(kvec).get((nvec, mvec), 0)
                if c:
                    terms[kvec] = c
        return RGammaElement(self.l, terms)

    def multiply(self, a: RGammaElement, b: RGammaElement) -> RGammaElement:
        out = RGammaElement(self.l)
        for ka, ca in a.terms.items():
            for kb, cb in b.terms.items():
                out = out + (ca * cb) * self.basis_product(ka, kb)
        return out

    def power(self, a: RGammaElement, e: int) -> RGammaElement:
        out = self.one()
        for _ in range(e):
            out = self.multiply(out, a)
        return out

    # -- the generating function Omega ----------------------------------------

    def omega_expand(self, max_degree: int):
        """Coefficients B_N of Omega for |N| <= max_degree, as TPolynomials.

        Series arithmetic: log expanded with class products resolved through
        the A-coefficients, T applied coefficientwise, then exp truncated.
        """
        cached = self._omega_cache.get(max_degree)
        if cached is not None:
            return cached
        l = self.l
        zero = (0,) * l

        def series_mul(u, v):
            out = {}
            for ku, cu in u.items():
                for kv, cv in v.items():
                    key = tuple(a + b for a, b in zip(ku, kv))
                    if sum(key) > max_degree:
                        continue
                    prod = self.G.class_product(cu, cv)
                    if key in out:
                        out[key] = [a + b for a, b in zip(out[key], prod)]
                    else:
                        out[key] = list(prod)
            return {k: v for k, v in out.items() if any(v)}

        # s = sum_c c x_c, as a class-algebra-valued series
        s = {}
        for ci in range(l):
            key = list(zero)
            key[ci] = 1
            vec = [Fraction(0)] * l
            vec[ci] = Fraction(1)
            s[tuple(key)] = vec
        # log(1 + s) = sum (-1)^(i-1)/i s^i
        log_series = {}
        power = dict(s)
        for i in range(1, max_degree + 1):
            sign = Fraction((-1) ** (i - 1), i)
            for k, vec in power.items():
                cur = log_series.get(k)
                add = [sign * x for x in vec]
                log_series[k] = (
                    add if cur is None else [a + b for a, b in zip(cur, add)]
                )
            if i < max_degree:
                power = series_mul(power, s)
        # apply T coefficientwise: class-algebra vector -> linear TPolynomial
        tlog = {
            k: sum(
                (TPolynomial.variable(l, c) * vec[c] for c in range(l) if vec[c]),
                TPolynomial.zero(l),
            )
            for k, vec in log_series.items()
        }

        def tseries_mul(u, v):
            out = {}
            for ku, cu in u.items():
                for kv, cv in v.items():
                    key = tuple(a + b for a, b in zip(ku, kv))
                    if sum(key) > max_degree:
                        continue
                    prod = cu * cv
                    out[key] = out.get(key, TPolynomial.zero(l)) + prod
            return out

        # exp(tlog) truncated
        result = {zero: TPolynomial.constant(l, 1)}
        power_t = {zero: TPolynomial.constant(l, 1)}
        for m in range(1, max_degree + 1):
            power_t = tseries_mul(power_t, tlog)
            inv_fact = Fraction(1, factorial(m))
            for k, poly in power_t.items():
                result[k] = result.get(k, TPolynomial.zero(l)) + poly * inv_fact
        out = {
            k: poly
            for k, poly in result.items()
            if poly.terms or k == zero
        }
        for total in range(max_degree + 1):
            for kvec in _exponent_vectors(total, self.l):
                out.setdefault(kvec, TPolynomial.zero(l))
        self._omega_cache[max_degree] = out
        return out

    def leading_term(self, nvec) -> TPolynomial:
        """prod_c T(c)^{N(c)} / N(c)!, the top PBW part of B_N."""
        poly = TPolynomial.constant(self.l, 1)
        for c, e in enumerate(nvec):
            for _ in range(e):
                poly = poly * TPolynomial.variable(self.l, c)
        return poly * Fraction(1, _prod(factorial(e) for e in nvec))

    # -- specialisations --------------------------------------------------------

    def ev_r(self, nvec, n: int) -> CentreElement:
        """Image of B_N in the centre at level n: zero when |N| > n, else the
        binomial multiple of the class sum with N(c) singleton c-cycles."""
        nvec = tuple(nvec)
        if len(nvec) != self.l:
            raise InvalidParameterError("exponent vector has wrong length")
        if n < 0:
            raise InvalidParameterError("n must be >= 0")
        total = sum(nvec)
        if total > n:
            return CentreElement(n)
        coeff = binomial(n - total + nvec[0], nvec[0])
        comps = {}
        off_identity = sum(nvec[1:])
        ones = n - off_identity
        if ones:
            comps[0] = Partition([1] * ones)
        for c in range(1, self.l):
            if nvec[c]:
                comps[c] = Partition([1] * nvec[c])
        return CentreElement(n, {Multipartition(comps): coeff})

    def psi_r(self, nvec):
        """Image of B_N in the interpolating algebra: the binomial coefficient
        C(t - |N| + N(identity), N(identity)) on the class label with N(c)
        singleton c-parts for non-identity c."""
        from .fhcore import FHElement  # deferred: fhcore imports this module
        from .intpoly import IntValuedPoly

        nvec = tuple(nvec)
        if len(nvec) != self.l:
            raise InvalidParameterError("exponent vector has wrong length")
        total = sum(nvec)
        poly = IntValuedPoly.binom_shifted(total - nvec[0], nvec[0])
        comps = {c: Partition([1] * nvec[c]) for c in range(1, self.l) if nvec[c]}
        return FHElement({Multipartition(comps): poly})

    # -- modular structure --------------------------------------------------------

    def b_qr(self, qvec, r: int, p: int) -> RGammaElement:
        """B_{q,r} = sum over |M| = p^r of prod_c q_c^{M(c)} B_M, mod p."""
        if r < 0:
            raise InvalidParameterError("r must be >= 0")
        qvec = [int(q) % p for q in qvec]
        if len(qvec) != self.l:
            raise InvalidParameterError("q has wrong length")
        terms = {}
        for mvec in _exponent_vectors(p**r, self.l):
            coeff = 1
            for c, e in enumerate(mvec):
                coeff = (coeff * pow(qvec[c], e, p)) % p
            if coeff:
                terms[mvec] = coeff
        return RGammaElement(self.l, terms)

    def class_algebra_power_mod_p(self, qvec, e: int, p: int):
        """q^e in the class algebra of the base group, coefficients mod p."""
        out = [0] * self.l
        out[0] = 1
        cur = [int(q) % p for q in qvec]
        for _ in range(e):
            out = [c % p for c in self.G.class_product(out, cur)]
        return out

    def modular_hom(self, p: int, digits, nvec) -> int:
        """Value at B_N of the homomorphism to the prime field determined by
        one base-p digit string per p-block of the base group.

        The value is the coefficient of x^N in prod_u (1 + sum_c w_c^u x_c)^{t_u}
        mod p, with C(t_u, k) computed from the digit strings by Lucas'
        theorem.  Raises if the digit strings are too short for |N|.
        """
        blocks = p_blocks(self.G, p)
        if len(digits) != len(blocks):
            raise InvalidParameterError(
                f"need one digit string per p-block ({len(blocks)}), got {len(digits)}"
            )
        nvec = tuple(nvec)
        total = sum(nvec)
        needed = len(_digits_base_p(total, p)) if total else 0
        for ds in digits:
            if len(ds) < needed:
                raise InvalidParameterError(
                    f"digit strings must have length >= {needed} for |N| = {total}"
                )
            if any(not (0 <= d < p) for d in ds):
                raise InvalidParameterError("digits must lie in the prime field")
        omega = []
        for block in blocks:
            chi = block[0]
            row = [central_character(self.G, chi, c) % p for c in range(self.l)]
            omega.append(row)
        # sum over decompositions N = sum_u M_u
        value = 0
        per_class_splits = [
            list(_compositions_fixed(nvec[c], len(blocks))) for c in range(self.l)
        ]
        for choice in itertools.product(*per_class_splits):
            # choice[c][u] = M_u(c)
            term = 1
            for u in range(len(blocks)):
                mvec = tuple(choice[c][u] for c in range(self.l))
                mtot = sum(mvec)
                term = (term * lucas_binomial_mod_p(digits[u], mtot, p)) % p
                term = (term * (_multinomial(mvec) % p)) % p
                for c in range(self.l):
                    term = (term * pow(omega[u][c], mvec[c], p)) % p
                if not term:
                    break
            value = (value + term) % p
        return value


def lucas_binomial_mod_p(digits, m: int, p: int) -> int:
    """C(t, m) mod p where t is given by its base-p digits (least significant
    first): the product of digit-wise binomial coefficients."""
    out = 1
    for md in _digits_base_p(m, p):
        td = digits[0] if digits else 0
        digits = digits[1:]
        out = (out * binomial(td, md)) % p
        if not out:
            return 0
    return out


def _digits_base_p(m: int, p: int):
    out = []
    while m:
        out.append(m % p)
        m //= p
    return out


def _exponent_vectors(total: int, l: int):
    """All length-l tuples of non-negative integers summing to `total`."""
    if l == 0:
        if total == 0:
            yield ()
        return
    if l == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _exponent_vectors(total - first, l - 1):
            yield (first,) + rest


def _compositions_fixed(total: int, parts: int):
    return _exponent_vectors(total, parts)


def _multinomial(mvec) -> int:
    total = sum(mvec)
    out = factorial(total)
    for e in mvec:
        out //= factorial(e)
    return out


def _prod(it):
    out = 1
    for x in it:
        out *= x
    return out
