"""Exact engine for the wreath product of a finite group with S_n.

Elements are pairs (colors, perm): a tuple of n group-element indices and a
permutation of {0..n-1} in one-line notation.  The product law is
(g, s)(h, r) = (g * s(h), s r) where s(h)_i = h_{s^-1(i)}.

Conjugacy classes are indexed by multipartitions of n over the conjugacy
classes of the base group: each cycle of the permutation contributes its
length to the component indexed by the class of the product of its colors.
Class sums, centre products, Jucys-Murphy elements and evaluations of
weighted monomials are all computed here by direct enumeration.  Classes are
enumerated directly from their cycle type, never via the full group, so the
resource guard applies to what is actually materialised.
"""

from __future__ import annotations

import itertools
import os
from math import factorial

from .errors import InvalidParameterError, NotCentralError, ResourceLimitError
from .groupdata import GroupData
from .partitions import (
    EMPTY_MP,
    Multipartition,
    Partition,
    multipartitions_of,
    partially_reduce,
)

__all__ = [
    "WreathEngine",
    "AlgebraElement",
    "CentreElement",
    "default_enum_cap",
    "reduced_size",
    "affected_slots",
]

_DEFAULT_CAP = 10_000_000


def default_enum_cap() -> int:
    """Enumeration cap; override with the WREATHFH_MAX_ENUM environment variable."""
    value = os.environ.get("WREATHFH_MAX_ENUM")
    return int(value) if value else _DEFAULT_CAP


class AlgebraElement:
    """Sparse integer combination of wreath-product elements."""

    __slots__ = ("n", "terms")

    def __init__(self, n, terms=None):
        self.n = n
        self.terms = dict(terms) if terms else {}

    def copy(self):
        return AlgebraElement(self.n, self.terms)

    def add_term(self, elem, coeff):
        if coeff:
            new = self.terms.get(elem, 0) + coeff
            if new:
                self.terms[elem] = new
            else:
                del self.terms[elem]

    def __add__(self, other):
        out = self.copy()
        for e, c in other.terms.items():
            out.add_term(e, c)
        return out

    def __sub__(self, other):
        out = self.copy()
        for e, c in other.terms.items():
            out.add_term(e, -c)
        return out

    def __mul__(self, k: int):
        return AlgebraElement(self.n, {e: c * k for e, c in self.terms.items()} if k else {})

    __rmul__ = __mul__

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, AlgebraElement) and self.n == other.n and self.terms == other.terms

    def __repr__(self):
        return f"AlgebraElement(n={self.n}, terms={len(self.terms)})"


class CentreElement:
    """Sparse integer combination of class sums of the wreath product with
    S_n, keyed by unreduced cycle type (a multipartition of total size n)."""

    __slots__ = ("n", "terms")

    def __init__(self, n, terms=None):
        self.n = n
        self.terms = {}
        if terms:
            for key, c in terms.items():
                if key.size != n:
                    raise InvalidParameterError(f"cycle type {key} has size != {n}")
                if c:
                    self.terms[key] = c

    def coefficient(self, key: Multipartition) -> int:
        return self.terms.get(key, 0)

    def __add__(self, other):
        out = CentreElement(self.n, self.terms)
        for k, c in other.terms.items():
            new = out.terms.get(k, 0) + c
            if new:
                out.terms[k] = new
            else:
                out.terms.pop(k, None)
        return out

    def __sub__(self, other):
        return self + (other * -1)

    def __mul__(self, k: int):
        return CentreElement(self.n, {key: c * k for key, c in self.terms.items()} if k else {})

    __rmul__ = __mul__

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, CentreElement) and self.n == other.n and self.terms == other.terms

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: kv[0].sort_key())

    def __repr__(self):
        return f"CentreElement(n={self.n}, terms={len(self.terms)})"


class WreathEngine:
    """All wreath-product arithmetic for a fixed base group and fixed n.

    Caches (class element lists, JM powers) are filled idempotently; all
    returned values should be treated as immutable.
    """

    def __init__(self, G: GroupData, n: int, cap: int | None = None):
        if n < 0:
            raise InvalidParameterError("n must be >= 0")
        self.G = G
        self.n = n
        self.cap = default_enum_cap() if cap is None else cap
        self._class_cache = {}
        self._jm_power_cache = {}
        self.identity = (tuple([0] * n), tuple(range(n)))

    # -- element arithmetic -------------------------------------------------

    def multiply(self, a, b):
        ga, pa = a
        gb, pb = b
        n = self.n
        mult = self.G.mult
        ipa = [0] * n
        for i in range(n):
            ipa[pa[i]] = i
        colors = tuple(mult[ga[i]][gb[ipa[i]]] for i in range(n))
        perm = tuple(pa[pb[i]] for i in range(n))
        return (colors, perm)

    def inverse(self, a):
        g, p = a
        n = self.n
        inv = self.G.inverse
        colors = tuple(inv[g[p[i]]] for i in range(n))
        perm = [0] * n
        for i in range(n):
            perm[p[i]] = i
        return (colors, tuple(perm))

    def conjugate(self, x, a):
        """a x a^-1."""
        return self.multiply(self.multiply(a, x), self.inverse(a))

    def cycle_type(self, a) -> Multipartition:
        """Cycle type: each cycle contributes its length to the component of
        the class of the product of its colors (taken along the cycle)."""
        colors, perm = a
        G = self.G
        seen = [False] * self.n
        comps = {}
        for start in range(self.n):
            if seen[start]:
                continue
            j = start
            prod = 0
            length = 0
            while not seen[j]:
                seen[j] = True
                prod = G.mult[colors[j]][prod]
                j = perm[j]
                length += 1
            comps.setdefault(G.class_of[prod], []).append(length)
        return Multipartition(
            {c: Partition(sorted(parts, reverse=True)) for c, parts in comps.items()}
        )

    # -- classes ------------------------------------------------------------

    def class_size(self, mu: Multipartition) -> int:
        """|class| via the centralizer formula: the centralizer of an element
        of type mu has order prod_{c,i} m_i! * (i * |G| / |c|)^{m_i}."""
        if mu.size != self.n:
            raise InvalidParameterError(f"|mu| = {mu.size} != n = {self.n}")
        G = self.G
        cent = 1
        for c, lam in mu.components:
            zc = G.order // G.class_sizes[c]
            for i in set(lam.parts):
                m = lam.multiplicity(i)
                cent *= factorial(m) * (i * zc) ** m
        return (G.order**self.n) * factorial(self.n) // cent

    def class_exists(self, mu_reduced: Multipartition) -> bool:
        """Whether a partially-reduced type occurs in this wreath product."""
        return self.n >= mu_reduced.size + mu_reduced.component(0).length

    def unreduce(self, mu_reduced: Multipartition):
        """Unreduced cycle type of a partially-reduced label, or None."""
        id_part = mu_reduced.component(0)
        need = mu_reduced.size + id_part.length
        if self.n < need:
            return None
        comps = {c: lam for c, lam in mu_reduced.components if c != 0}
        pad = self.n - need
        id_parts = sorted([p + 1 for p in id_part.parts] + [1] * pad, reverse=True)
        if id_parts:
            comps[0] = Partition(id_parts)
        return Multipartition(comps)

    def representative(self, mu: Multipartition):
        """Canonical element of unreduced cycle type mu: cycles packed onto
        consecutive slots, one color per cycle carrying the class label."""
        if mu.size != self.n:
            raise InvalidParameterError(f"|mu| = {mu.size} != n = {self.n}")
        colors = [0] * self.n
        perm = list(range(self.n))
        pos = 0
        for c, lam in mu.components:
            rep = self.G.representatives[c]
            for part in lam.parts:
                slots = list(range(pos, pos + part))
                for a, b in zip(slots, slots[1:]):
                    perm[a] = b
                perm[slots[-1]] = slots[0]
                colors[slots[0]] = rep
                pos += part
        return (tuple(colors), tuple(perm))

    def class_elements(self, mu: Multipartition):
        """All elements of unreduced cycle type mu (cached tuple)."""
        cached = self._class_cache.get(mu)
        if cached is not None:
            return cached
        size = self.class_size(mu)
        if size > self.cap:
            raise ResourceLimitError(
                f"class of type {mu} has {size} elements (cap {self.cap})"
            )
        elems = tuple(self._enumerate_class(mu))
        assert len(elems) == size, (mu, len(elems), size)
        self._class_cache[mu] = elems
        return elems

    def _enumerate_class(self, mu: Multipartition):
        G = self.G
        # cycle requirements: list of (length, class index)
        needs = sorted((lam_part, c) for c, lam in mu.components for lam_part in lam.parts)
        distinct = sorted(set(needs))
        counts = {d: needs.count(d) for d in distinct}

        def place(slots, remaining, colors, perm):
            if not remaining:
                yield (tuple(colors), tuple(perm))
                return
            leader = slots[0]
            rest = slots[1:]
            tried = set()
            for length, ci in remaining:
                if (length, ci) in tried:
                    continue
                tried.add((length, ci))
                sub = list(remaining)
                sub.remove((length, ci))
                for members in itertools.permutations(rest, length - 1):
                    cycle = (leader,) + members
                    for a, b in zip(cycle, cycle[1:]):
                        perm[a] = b
                    perm[cycle[-1]] = leader
                    new_rest = [s for s in rest if s not in members]
                    # colors: free on all but the leader; leader closes the
                    # product into the required class
                    for free in itertools.product(range(G.order), repeat=length - 1):
                        # free colors on the non-leader slots; the leader color
                        # then closes the cycle product into the required class
                        for idx, slot in enumerate(cycle[1:]):
                            colors[slot] = free[idx]
                        prod = 0
                        j = perm[leader]
                        while j != leader:
                            prod = G.mult[colors[j]][prod]
                            j = perm[j]
                        for k in G.classes[ci]:
                            # need prod * x in class ci: x = prod^-1 * k
                            colors[leader] = G.mult[G.inverse[prod]][k]
                            yield from place(new_rest, sub, colors, perm)
                    for slot in cycle:
                        colors[slot] = 0
                        perm[slot] = slot
            return

        yield from place(list(range(self.n)), needs, [0] * self.n, list(range(self.n)))

    def class_sum(self, mu: Multipartition) -> AlgebraElement:
        """Sum of all elements of unreduced cycle type mu, coefficient 1."""
        return AlgebraElement(self.n, {e: 1 for e in self.class_elements(mu)})

    # -- centre arithmetic ----------------------------------------------------

    def product_candidates(self, mu_red: Multipartition, nu_red: Multipartition):
        """Partially-reduced types that can occur in X'_mu * X'_nu, from the
        transposition and affected-slot filtration bounds."""
        t_bound = reduced_size(mu_red) + reduced_size(nu_red)
        a_bound = affected_slots(mu_red) + affected_slots(nu_red)
        out = []
        for k in range(a_bound + 1):
            for cand in multipartitions_of(k, self.G.num_classes):
                if reduced_size(cand) > t_bound:
                    continue
                if (reduced_size(cand) - t_bound) % 2:
                    continue
                if affected_slots(cand) > a_bound:
                    continue
                if not self.class_exists(cand):
                    continue
                out.append(cand)
        return out

    def centre_product(self, mu: Multipartition, nu: Multipartition) -> CentreElement:
        """X'_mu X'_nu in the unreduced class-sum basis.  The coefficient of
        class lambda is #{a in C_mu : a^-1 g0 in C_nu} for a representative g0,
        iterating over whichever factor class is smaller."""
        for arg in (mu, nu):
            if arg.size != self.n:
                raise InvalidParameterError(f"cycle type {arg} has size != {self.n}")
        small, other = mu, nu
        if self.class_size(nu) < self.class_size(mu):
            small, other = nu, mu
        small_elems = self.class_elements(small)
        terms = {}
        for cand in self.product_candidates(partially_reduce(mu), partially_reduce(nu)):
            lam = self.unreduce(cand)
            g0 = self.representative(lam)
            count = 0
            for a in small_elems:
                rest = self.multiply(self.inverse(a), g0)
                if self.cycle_type(rest) == other:
                    count += 1
            if count:
                terms[lam] = count
        return CentreElement(self.n, terms)

    def structure_coefficient(self, mu_red, nu_red, lam_red) -> int:
        """Coefficient of X_lam in X_mu X_nu, all in partially-reduced labels;
        zero when the output class does not exist at this n (the equation then
        imposes no constraint) and zero when either input class is empty."""
        lam = self.unreduce(lam_red)
        if lam is None:
            return 0
        mu = self.unreduce(mu_red)
        nu = self.unreduce(nu_red)
        if mu is None or nu is None:
            return 0
        small, other = (mu, nu)
        if self.class_size(nu) < self.class_size(mu):
            small, other = nu, mu
        g0 = self.representative(lam)
        count = 0
        for a in self.class_elements(small):
            rest = self.multiply(self.inverse(a), g0)
            if self.cycle_type(rest) == other:
                count += 1
        return count

    def to_centre(self, a: AlgebraElement) -> CentreElement:
        """Expand a class-constant algebra element in the class-sum basis."""
        by_type = {}
        for elem, coeff in a.terms.items():
            by_type.setdefault(self.cycle_type(elem), []).append(coeff)
        terms = {}
        for key, coeffs in by_type.items():
            size = self.class_size(key)
            first = coeffs[0]
            if len(coeffs) != size or any(c != first for c in coeffs):
                raise NotCentralError(f"element is not constant on class {key}")
            terms[key] = first
        return CentreElement(self.n, terms)

    # -- Jucys-Murphy machinery -----------------------------------------------

    def jm_element(self, j: int, class_index: int) -> AlgebraElement:
        """L_j(c) = sum_{i<j} sum_{g2 g1 in c} g1^(i) g2^(j) (i,j); j is 1-based."""
        if not 1 <= j <= self.n:
            raise InvalidParameterError(f"j = {j} out of range 1..{self.n}")
        G = self.G
        out = AlgebraElement(self.n)
        jj = j - 1
        for i in range(jj):
            perm = list(range(self.n))
            perm[i], perm[jj] = perm[jj], perm[i]
            perm = tuple(perm)
            for g1 in range(G.order):
                for k in G.classes[class_index]:
                    g2 = G.mult[k][G.inverse[g1]]
                    colors = [0] * self.n
                    colors[i] = g1
                    colors[jj] = g2
                    out.add_term((tuple(colors), perm), 1)
        return out

    def pair_sum(self, class_index: int, i: int, j: int) -> AlgebraElement:
        """M_c over slots (i, j), 1-based: sum over h g = element of c of
        g^(i) h^(j) with trivial permutation."""
        G = self.G
        out = AlgebraElement(self.n)
        for g in range(G.order):
            for k in G.classes[class_index]:
                h = G.mult[k][G.inverse[g]]
                colors = [0] * self.n
                colors[i - 1] = g
                colors[j - 1] = h
                out.add_term((tuple(colors), tuple(range(self.n))), 1)
        return out

    def color_at(self, class_index: int, j: int) -> AlgebraElement:
        """The class sum of the base group embedded at slot j (1-based)."""
        out = AlgebraElement(self.n)
        for k in self.G.classes[class_index]:
            colors = [0] * self.n
            colors[j - 1] = k
            out.add_term((tuple(colors), tuple(range(self.n))), 1)
        return out

    def algebra_product(self, a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
        if len(a.terms) * len(b.terms) > self.cap:
            raise ResourceLimitError("algebra product exceeds enumeration cap")
        out = AlgebraElement(self.n)
        multiply = self.multiply
        for ea, ca in a.terms.items():
            for eb, cb in b.terms.items():
                out.add_term(multiply(ea, eb), ca * cb)
        return out

    def jm_power(self, j: int, r: int) -> AlgebraElement:
        """L_j(1)^r, cached."""
        key = (j, r)
        cached = self._jm_power_cache.get(key)
        if cached is None:
            if r == 0:
                cached = AlgebraElement(self.n, {self.identity: 1})
            elif r == 1:
                cached = self.jm_element(j, 0)
            else:
                cached = self.algebra_product(self.jm_power(j, r - 1), self.jm_element(j, 0))
            self._jm_power_cache[key] = cached
        return cached

    def slot_factor(self, j: int, r: int, class_index: int) -> AlgebraElement:
        """Image of the single-slot weighted variable: L_j(1)^r * c^(j)."""
        out = self.jm_power(j, r)
        if class_index != 0:
            out = self.algebra_product(self.color_at(class_index, j), out)
        return out

    def evaluate_weighted_monomial(self, key: Multipartition) -> AlgebraElement:
        """Evaluation of the weighted monomial symmetric polynomial at the
        Jucys-Murphy elements: sum over injective assignments of the (part,
        class) pairs of `key` to distinct slots of the product of single-slot
        factors."""
        pairs = key.pairs()  # ((class, part), ...) with multiplicity
        if len(pairs) > self.n:
            return AlgebraElement(self.n)
        distinct = sorted(set(pairs))
        mults = [pairs.count(p) for p in distinct]
        out = AlgebraElement(self.n)

        def assign(idx, available, acc):
            if idx == len(distinct):
                term = acc
                out_terms = out.terms
                for e, c in term.terms.items():
                    new = out_terms.get(e, 0) + c
                    if new:
                        out_terms[e] = new
                    else:
                        del out_terms[e]
                return
            c_idx, r = distinct[idx]
            m = mults[idx]
            for slots in itertools.combinations(available, m):
                remaining = tuple(s for s in available if s not in slots)
                prod = acc
                for s in slots:
                    prod = self.algebra_product(prod, self.slot_factor(s, r, c_idx))
                assign(idx + 1, remaining, prod)

        assign(0, tuple(range(1, self.n + 1)), AlgebraElement(self.n, {self.identity: 1}))
        return out

    def full_group(self):
        """All elements; guarded by the cap (|G|^n * n!)."""
        total = (self.G.order**self.n) * factorial(self.n)
        if total > self.cap:
            raise ResourceLimitError(f"group order {total} exceeds cap {self.cap}")
        perms = list(itertools.permutations(range(self.n)))
        for colors in itertools.product(range(self.G.order), repeat=self.n):
            for p in perms:
                yield (colors, p)


def reduced_size(mp: Multipartition) -> int:
    """Size of the fully-reduced type of a partially-reduced label: number of
    transpositions needed for the permutation part."""
    total = 0
    for c, lam in mp.components:
        if c == 0:
            total += lam.size
        else:
            total += sum(p - 1 for p in lam.parts)
    return total


def affected_slots(mp: Multipartition) -> int:
    """Slots affected (moved or colored) by an element of this partially-
    reduced type: |mu| + l(mu(identity))."""
    return mp.size + mp.component(0).length
