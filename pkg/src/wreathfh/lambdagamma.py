"""Weighted symmetric functions over the conjugacy classes of a finite group.

The ring has a monomial basis m_lam indexed by multipartitions: m_lam is the
orbit sum of pure tensors containing the variable c*x^j in exactly
m_j(lam(c)) tensor slots.  Products are computed by expanding both factors in
l(lam) + l(mu) slots and recollecting orbit sums; same-slot collisions
multiply through the class algebra, so structure constants involve the class
multiplication coefficients of the base group.

Counting convention: orbit sums are collected so that each distinct pure
tensor appears exactly once.  In particular for distinct classes c != c',
m_{(1)_c} * m_{(1)_c'} contains m_{(1)_c (1)_c'} with coefficient 1 (every
mixed degree-(1,1) tensor arises from exactly one ordered pair of slots).

Also here: the coproduct splitting part multiplicities, the antipode (by the
usual induction from the counit axiom), and the module of indecomposables
computed through an exact integer Smith normal form.
"""

from __future__ import annotations

import itertools

from .errors import InvalidParameterError
from .groupdata import GroupData
from .partitions import EMPTY_MP, Multipartition, Partition, multipartitions_of

__all__ = ["WeightedSymFn", "TensorPairSum", "LambdaRing", "smith_normal_form"]


class WeightedSymFn:
    """Sparse integer combination of monomial basis elements m_lam."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for key, c in terms.items():
                if c:
                    self.terms[key] = c

    @staticmethod
    def monomial(key: Multipartition, coeff: int = 1) -> "WeightedSymFn":
        return WeightedSymFn({key: coeff})

    @staticmethod
    def one() -> "WeightedSymFn":
        return WeightedSymFn({EMPTY_MP: 1})

    def coefficient(self, key: Multipartition) -> int:
        return self.terms.get(key, 0)

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            new = out.get(k, 0) + c
            if new:
                out[k] = new
            else:
                out.pop(k, None)
        return WeightedSymFn(out)

    def __sub__(self, other):
        return self + (other * -1)

    def __mul__(self, k: int):
        return WeightedSymFn({key: c * k for key, c in self.terms.items()} if k else {})

    __rmul__ = __mul__

    def is_zero(self):
        return not self.terms

    def degrees(self):
        return sorted({key.size for key in self.terms})

    def __eq__(self, other):
        return isinstance(other, WeightedSymFn) and self.terms == other.terms

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: kv[0].sort_key())

    def __repr__(self):
        return f"WeightedSymFn({dict(self.sorted_terms())!r})"

    def __str__(self):
        if not self.terms:
            return "0"
        chunks = []
        for key, c in self.sorted_terms():
            base = "1" if key.is_empty() else f"m{key}"
            chunks.append(f"{c}*{base}" if base != "1" else str(c))
        return " + ".join(chunks).replace("+ -", "- ")


class TensorPairSum:
    """Integer combination of ordered pairs (m_mu, m_nu); the coproduct's
    codomain and the workspace for the Hopf checks."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for key, c in terms.items():
                if c:
                    self.terms[key] = c

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            new = out.get(k, 0) + c
            if new:
                out[k] = new
            else:
                out.pop(k, None)
        return TensorPairSum(out)

    def __sub__(self, other):
        return self + (other * -1)

    def __mul__(self, k: int):
        return TensorPairSum({key: c * k for key, c in self.terms.items()} if k else {})

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, TensorPairSum) and self.terms == other.terms

    def __repr__(self):
        return f"TensorPairSum({len(self.terms)} terms)"


class LambdaRing:
    """Weighted-symmetric-function arithmetic for a fixed base group."""

    def __init__(self, G: GroupData):
        self.G = G
        self._product_cache = {}
        self._antipode_cache = {EMPTY_MP: WeightedSymFn.one()}

    # -- multiplication -----------------------------------------------------

    def multiply(self, f: WeightedSymFn, g: WeightedSymFn) -> WeightedSymFn:
        out = WeightedSymFn()
        for ka, ca in f.terms.items():
            for kb, cb in g.terms.items():
                out = out + (ca * cb) * self._basis_product(ka, kb)
        return out

    def product_monomials(self, keys) -> WeightedSymFn:
        out = WeightedSymFn.one()
        for key in keys:
            out = self.multiply(out, WeightedSymFn.monomial(key))
        return out

    def _basis_product(self, ka: Multipartition, kb: Multipartition) -> WeightedSymFn:
        cached = self._product_cache.get((ka, kb))
        if cached is not None:
            return cached
        n_slots = ka.length + kb.length
        acc = {}
        for mono_a, _ in _monomials(ka, n_slots):
            for mono_b, _ in _monomials(kb, n_slots):
                self._combine(mono_a, mono_b, acc)
        # read off one representative monomial per orbit
        result = {}
        for key in {self._mono_type(mono) for mono in acc}:
            rep = _canonical_monomial(key)
            coeff = acc.get(rep, 0)
            if coeff:
                result[key] = coeff
        out = WeightedSymFn(result)
        self._product_cache[(ka, kb)] = out
        return out

    def _combine(self, mono_a, mono_b, acc):
        """Multiply two pure tensors slot-wise, branching over the class
        algebra on collisions, and accumulate the results."""
        shared = [s for s in mono_a if s in mono_b]
        base = {s: rc for s, rc in mono_a.items() if s not in mono_b}
        base.update({s: rc for s, rc in mono_b.items() if s not in mono_a})
        branches = [(base, 1)]
        for s in shared:
            ra, ca = mono_a[s]
            rb, cb = mono_b[s]
            row = self.G.a_coeffs[ca][cb]
            new_branches = []
            for mono, coeff in branches:
                for k, a in enumerate(row):
                    if not a:
                        continue
                    m2 = dict(mono)
                    m2[s] = (ra + rb, k)
                    new_branches.append((m2, coeff * a))
            branches = new_branches
        for mono, coeff in branches:
            key = tuple(sorted(mono.items()))
            acc[key] = acc.get(key, 0) + coeff

    @staticmethod
    def _mono_type(mono_key) -> Multipartition:
        comps = {}
        for _slot, (r, c) in mono_key:
            comps.setdefault(c, []).append(r)
        return Multipartition(
            {c: Partition(sorted(parts, reverse=True)) for c, parts in comps.items()}
        )

    # -- Hopf structure -------------------------------------------------------

    def coproduct(self, key: Multipartition) -> TensorPairSum:
        """Split each part multiplicity m_i(lam(c)) between the two factors;
        every splitting occurs exactly once with coefficient 1."""
        entries = []
        for c, lam in key.components:
            for i in sorted(set(lam.parts)):
                entries.append((c, i, lam.multiplicity(i)))
        terms = {}
        for split in itertools.product(*(range(m + 1) for _, _, m in entries)):
            left, right = {}, {}
            for (c, i, m), take in zip(entries, split):
                if take:
                    left.setdefault(c, []).extend([i] * take)
                if m - take:
                    right.setdefault(c, []).extend([i] * (m - take))
            mu = Multipartition(
                {c: Partition(sorted(ps, reverse=True)) for c, ps in left.items()}
            )
            nu = Multipartition(
                {c: Partition(sorted(ps, reverse=True)) for c, ps in right.items()}
            )
            terms[(mu, nu)] = terms.get((mu, nu), 0) + 1
        return TensorPairSum(terms)

    def coproduct_fn(self, f: WeightedSymFn) -> TensorPairSum:
        out = TensorPairSum()
        for key, c in f.terms.items():
            out = out + c * self.coproduct(key)
        return out

    @staticmethod
    def counit(f: WeightedSymFn) -> int:
        return f.coefficient(EMPTY_MP)

    def antipode(self, key: Multipartition) -> WeightedSymFn:
        """S(m_lam) by induction: S(1) = 1 and, for |lam| > 0,
        S(m_lam) = - sum over coproduct terms with mu != lam of S(m_mu) m_nu."""
        cached = self._antipode_cache.get(key)
        if cached is not None:
            return cached
        total = WeightedSymFn()
        for (mu, nu), c in self.coproduct(key).terms.items():
            if mu == key:
                continue
            total = total + c * self.multiply(self.antipode(mu), WeightedSymFn.monomial(nu))
        out = total * -1
        self._antipode_cache[key] = out
        return out

    def antipode_fn(self, f: WeightedSymFn) -> WeightedSymFn:
        out = WeightedSymFn()
        for key, c in f.terms.items():
            out = out + c * self.antipode(key)
        return out

    def tensor_multiply(self, s: TensorPairSum, t: TensorPairSum) -> TensorPairSum:
        """Componentwise product on the tensor square."""
        out = TensorPairSum()
        for (a1, b1), c1 in s.terms.items():
            for (a2, b2), c2 in t.terms.items():
                left = self._basis_product(a1, a2)
                right = self._basis_product(b1, b2)
                for ka, ca in left.terms.items():
                    for kb, cb in right.terms.items():
                        keypair = (ka, kb)
                        new = out.terms.get(keypair, 0) + c1 * c2 * ca * cb
                        if new:
                            out.terms[keypair] = new
                        else:
                            out.terms.pop(keypair, None)
        return out

    # -- indecomposables -------------------------------------------------------

    def indecomposables(self, d: int):
        """Invariant factors and free rank of the degree-d part of I/I^2,
        where I is the augmentation ideal.

        Returns (invariant_factors, free_rank): the quotient of the degree-d
        monomial lattice by the span of all products of lower-degree basis
        elements is the direct sum of Z/f over the invariant factors f plus
        free_rank copies of Z.
        """
        if d < 1:
            raise InvalidParameterError("degree must be >= 1")
        basis = list(multipartitions_of(d, self.G.num_classes))
        index = {key: i for i, key in enumerate(basis)}
        rows = []
        for d1 in range(1, d // 2 + 1):
            d2 = d - d1
            for ka in multipartitions_of(d1, self.G.num_classes):
                for kb in multipartitions_of(d2, self.G.num_classes):
                    if d1 == d2 and kb.sort_key() < ka.sort_key():
                        continue
                    prod = self._basis_product(ka, kb)
                    row = [0] * len(basis)
                    for key, c in prod.terms.items():
                        row[index[key]] = c
                    rows.append(row)
        if not rows:
            return (), len(basis)
        diag = smith_normal_form(rows)
        factors = tuple(x for x in diag if x)
        free_rank = len(basis) - len(factors)
        return factors, free_rank


def _monomials(key: Multipartition, n_slots: int):
    """All pure tensors of type `key` in n_slots slots, as (dict slot ->
    (exponent, class), 1) pairs; each distinct tensor exactly once."""
    pairs = key.pairs()  # (class, part) with multiplicity
    distinct = sorted(set(pairs))
    mults = [pairs.count(p) for p in distinct]
    out = []

    def rec(idx, available, acc):
        if idx == len(distinct):
            out.append((dict(acc), 1))
            return
        c, r = distinct[idx]
        for slots in itertools.combinations(available, mults[idx]):
            rest = tuple(s for s in available if s not in slots)
            for s in slots:
                acc[s] = (r, c)
            rec(idx + 1, rest, acc)
            for s in slots:
                del acc[s]

    rec(0, tuple(range(n_slots)), {})
    return out


def _canonical_monomial(key: Multipartition):
    """The representative pure tensor of type `key` on slots 0..l-1."""
    pairs = sorted(((c, r) for c, r in key.pairs()))
    return tuple((slot, (r, c)) for slot, (c, r) in enumerate(pairs))


def smith_normal_form(matrix):
    """Diagonal of the Smith normal form of an integer matrix, as a list of
    non-negative integers with each dividing the next.

    Exact integer row/column reduction with minimal-absolute-value pivoting;
    intended for the small matrices arising here.
    """
    m = [list(map(int, row)) for row in matrix]
    if not m or not m[0]:
        return []
    rows, cols = len(m), len(m[0])
    diag = []
    top = 0
    while top < min(rows, cols):
        # locate minimal-absolute-value nonzero pivot in the submatrix
        pivot = None
        best = None
        for i in range(top, rows):
            for j in range(top, cols):
                v = m[i][j]
                if v and (best is None or abs(v) < best):
                    best = abs(v)
                    pivot = (i, j)
        if pivot is None:
            break
        pi, pj = pivot
        m[top], m[pi] = m[pi], m[top]
        for row in m:
            row[top], row[pj] = row[pj], row[top]
        # clear the pivot row and column
        while True:
            p = m[top][top]
            done = True
            for i in range(top + 1, rows):
                if m[i][top]:
                    q = m[i][top] // p
                    for j in range(cols):
                        m[i][j] -= q * m[top][j]
                    if m[i][top]:
                        m[top], m[i] = m[i], m[top]
                        done = False
                        break
            if not done:
                continue
            for j in range(top + 1, cols):
                if m[top][j]:
                    q = m[top][j] // p
                    for i in range(rows):
                        m[i][j] -= q * m[i][top]
                    if m[top][j]:
                        for i in range(rows):
                            m[i][top], m[i][j] = m[i][j], m[i][top]
                        done = False
                        break
            if done:
                break
        # enforce divisibility: pivot must divide every remaining entry
        p = m[top][top]
        fixed = True
        for i in range(top + 1, rows):
            for j in range(top + 1, cols):
                if m[i][j] % p:
                    for jj in range(cols):
                        m[top][jj] += m[i][jj]
                    fixed = False
                    break
            if not fixed:
                break
        if not fixed:
            continue
        diag.append(abs(p))
        top += 1
    return diag
