"""The interpolating algebra of wreath-product centres.

The algebra is a free module over integer-valued polynomials with basis K_mu
indexed by partially-reduced cycle types; structure constants are the unique
integer-valued polynomials that specialise, at every n, to the corresponding
class-sum products.  Specialisation Phi_n evaluates coefficients at n and
sends K_mu to the class sum X_mu (zero when the class is empty).

The algebra is identified with (weighted integer-valued polynomials) tensor
(weighted symmetric functions) through the evaluation of weighted symmetric
functions at the Jucys-Murphy elements.  psi_m computes the image of a
monomial symmetric function; char_sym_fn inverts the identification on a
basis element K_mu, yielding the character symmetric function whose content
evaluation gives central characters.
"""

from __future__ import annotations

from .errors import InvalidParameterError, WreathFHError
from .groupdata import GroupData
from .intpoly import IntValuedPoly, interpolate_stable
from .lambdagamma import LambdaRing, WeightedSymFn
from .partitions import (
    EMPTY_MP,
    Multipartition,
    Partition,
    fully_reduce,
    hat,
    multipartitions_of,
)
from .rgamma import RGammaElement, RGammaRing
from .wreathalg import (
    CentreElement,
    WreathEngine,
    affected_slots,
    default_enum_cap,
    reduced_size,
)

__all__ = ["FHElement", "TensorElement", "FHAlgebra", "solve_order_key"]


class FHElement:
    """Sparse combination of basis elements K_mu (mu a partially-reduced
    cycle type) with integer-valued polynomial coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for key, poly in terms.items():
                if isinstance(poly, int):
                    poly = IntValuedPoly.constant(poly)
                if not poly.is_zero():
                    self.terms[key] = poly

    @staticmethod
    def basis(key: Multipartition, poly=None) -> "FHElement":
        return FHElement({key: IntValuedPoly.constant(1) if poly is None else poly})

    @staticmethod
    def one() -> "FHElement":
        return FHElement.basis(EMPTY_MP)

    def coefficient(self, key: Multipartition) -> IntValuedPoly:
        return self.terms.get(key, IntValuedPoly.zero())

    def __add__(self, other):
        out = dict(self.terms)
        for k, p in other.terms.items():
            new = out.get(k, IntValuedPoly.zero()) + p
            if new.is_zero():
                out.pop(k, None)
            else:
                out[k] = new
        return FHElement(out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, k: int) -> "FHElement":
        return FHElement({key: p * k for key, p in self.terms.items()} if k else {})

    def scale_poly(self, poly: IntValuedPoly) -> "FHElement":
        if poly.is_zero():
            return FHElement()
        return FHElement({key: p * poly for key, p in self.terms.items()})

    def exact_div(self, k: int) -> "FHElement":
        return FHElement({key: p.exact_div(k) for key, p in self.terms.items()})

    def is_zero(self):
        return not self.terms

    def leading_key(self):
        """Largest key in the triangular-solve order; None if zero."""
        if not self.terms:
            return None
        return max(self.terms, key=solve_order_key)

    def __eq__(self, other):
        return isinstance(other, FHElement) and self.terms == other.terms

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: solve_order_key(kv[0]))

    def __repr__(self):
        return f"FHElement({dict(self.sorted_terms())!r})"

    def __str__(self):
        if not self.terms:
            return "0"
        chunks = []
        for key, poly in self.sorted_terms():
            chunks.append(f"({poly})*K{key}")
        return " + ".join(chunks)


class TensorElement:
    """Element of the tensor product: sparse map from monomial keys of the
    weighted symmetric functions to weighted integer-valued polynomials."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars, terms=None):
        self.nvars = nvars
        self.terms = {}
        if terms:
            for key, rg in terms.items():
                if not rg.is_zero():
                    self.terms[key] = rg

    def coefficient(self, key: Multipartition) -> RGammaElement:
        return self.terms.get(key, RGammaElement(self.nvars))

    def add_term(self, key: Multipartition, rg: RGammaElement):
        cur = self.terms.get(key)
        new = rg if cur is None else cur + rg
        if new.is_zero():
            self.terms.pop(key, None)
        else:
            self.terms[key] = new

    def __add__(self, other):
        out = TensorElement(self.nvars, self.terms)
        for k, rg in other.terms.items():
            out.add_term(k, rg)
        return out

    def __eq__(self, other):
        return (
            isinstance(other, TensorElement)
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: kv[0].sort_key())

    def __repr__(self):
        return f"TensorElement({dict(self.sorted_terms())!r})"

    def __str__(self):
        if not self.terms:
            return "0"
        chunks = []
        for key, rg in self.sorted_terms():
            base = "1" if key.is_empty() else f"m{key}"
            chunks.append(f"({rg})*{base}")
        return " + ".join(chunks)


def solve_order_key(key: Multipartition):
    """Total order on partially-reduced keys used for triangular solves:
    affected slots, then transposition degree, then moving degree, then the
    canonical lexicographic key.  Products against basis elements are
    unitriangular with respect to this order."""
    fr = fully_reduce(key)
    return (affected_slots(key), fr.size, fr.size + fr.length, key.sort_key())


class FHAlgebra:
    """Interpolating-algebra arithmetic for a fixed base group.

    Structure polynomials, monomial images and character symmetric functions
    are cached; wreath engines are cached per n.  Caches are idempotent, so
    instances behave as pure functions of their inputs.
    """

    def __init__(self, G: GroupData, cap: int | None = None):
        self.G = G
        self.cap = default_enum_cap() if cap is None else cap
        self.lambda_ring = LambdaRing(G)
        self.rgamma = RGammaRing(G)
        self._engines = {}
        self._phi_cache = {}
        self._psi_m_cache = {}
        self._char_fn_cache = {}

    def engine(self, n: int) -> WreathEngine:
        eng = self._engines.get(n)
        if eng is None:
            eng = WreathEngine(self.G, n, cap=self.cap)
            self._engines[n] = eng
        return eng

    # -- structure polynomials -------------------------------------------------

    def product_candidates(self, mu: Multipartition, nu: Multipartition):
        """Partially-reduced keys that can support X_mu X_nu at any n."""
        t_bound = reduced_size(mu) + reduced_size(nu)
        a_bound = affected_slots(mu) + affected_slots(nu)
        out = []
        for k in range(a_bound + 1):
            for cand in multipartitions_of(k, self.G.num_classes):
                if reduced_size(cand) > t_bound:
                    continue
                if (reduced_size(cand) - t_bound) % 2:
                    continue
                if affected_slots(cand) > a_bound:
                    continue
                out.append(cand)
        return out

    def product_polys(self, mu: Multipartition, nu: Multipartition):
        """All structure polynomials of K_mu K_nu as a dict keyed by the
        output class label."""
        cache_key = (mu, nu) if mu.sort_key() <= nu.sort_key() else (nu, mu)
        cached = self._phi_cache.get(cache_key)
        if cached is not None:
            return cached
        cap = mu.size + nu.size + 4
        out = {}
        for cand in self.product_candidates(mu, nu):
            n_start = affected_slots(cand)

            def oracle(n, _cand=cand):
                return self.engine(n).structure_coefficient(mu, nu, _cand)

            poly = interpolate_stable(oracle, n_start, cap)
            if not poly.is_zero():
                out[cand] = poly
        self._phi_cache[cache_key] = out
        return out

    def structure_poly(
        self, mu: Multipartition, nu: Multipartition, lam: Multipartition
    ) -> IntValuedPoly:
        """The unique integer-valued polynomial giving the coefficient of
        K_lam in K_mu K_nu."""
        return self.product_polys(mu, nu).get(lam, IntValuedPoly.zero())

    def multiply(self, a: FHElement, b: FHElement) -> FHElement:
        out = FHElement()
        for ka, pa in a.terms.items():
            for kb, pb in b.terms.items():
                coeff = pa * pb
                for lam, phi in self.product_polys(ka, kb).items():
                    add = phi * coeff
                    if add.is_zero():
                        continue
                    out = out + FHElement({lam: add})
        return out

    def specialize(self, a: FHElement, n: int) -> CentreElement:
        """Phi_n: evaluate coefficients at n, keep only classes existing in
        the wreath product at that n."""
        eng = self.engine(n)
        terms = {}
        for key, poly in a.terms.items():
            lam = eng.unreduce(key)
            if lam is None:
                continue
            v = poly.evaluate(n)
            if v:
                terms[lam] = terms.get(lam, 0) + v
        return CentreElement(n, terms)

    # -- the isomorphism with the tensor ring ------------------------------------

    def psi_r_fh(self, nvec) -> FHElement:
        return self.rgamma.psi_r(nvec)

    def psi_rg(self, rg: RGammaElement) -> FHElement:
        out = FHElement()
        for nvec, c in rg.terms.items():
            out = out + self.rgamma.psi_r(nvec).scale(c)
        return out

    def psi_m(self, key: Multipartition) -> FHElement:
        """Image of the monomial symmetric function m_key: the unique element
        specialising, at every n, to the evaluation of m_key at the
        Jucys-Murphy elements."""
        cached = self._psi_m_cache.get(key)
        if cached is not None:
            return cached
        if key.is_empty():
            out = FHElement.one()
        elif key.length == 1:
            out = self._psi_m_single(key)
        else:
            out = self._psi_m_composite(key)
        self._psi_m_cache[key] = out
        return out

    def _psi_m_single(self, key: Multipartition) -> FHElement:
        """Base case: a single weighted variable summed over slots.  The
        image of sum_d L_d(1)^r c^(d) in the class-sum basis is interpolated
        coefficient by coefficient; the evaluation is assembled slot by slot
        so that sampling many n costs one pass over the slots."""
        ((c_idx, r),) = key.pairs()
        evaluator = _SingleSlotEvaluator(self, r, c_idx)
        out = {}
        for cand in evaluator.candidates:
            n_start = affected_slots(cand)

            def oracle(n, _cand=cand):
                return evaluator.coefficient(_cand, n)

            poly = interpolate_stable(oracle, n_start, r + 4)
            if not poly.is_zero():
                out[cand] = poly
        result = FHElement(out)
        self._validate_psi_m(key, result, r + 1)
        return result

    def _psi_m_composite(self, key: Multipartition) -> FHElement:
        """Peel off one variable: the product of monomial symmetric functions
        m_single * m_rest contains m_key with the multiplicity of the peeled
        variable as coefficient, plus keys of strictly smaller length."""
        pairs = list(key.pairs())
        c0, r0 = min(pairs, key=lambda cr: (cr[1], cr[0]))
        single = Multipartition({c0: Partition([r0])})
        rest_pairs = list(pairs)
        rest_pairs.remove((c0, r0))
        comps = {}
        for c, p in rest_pairs:
            comps.setdefault(c, []).append(p)
        rest = Multipartition(
            {c: Partition(sorted(ps, reverse=True)) for c, ps in comps.items()}
        )
        expansion = self.lambda_ring.multiply(
            WeightedSymFn.monomial(single), WeightedSymFn.monomial(rest)
        )
        mult = expansion.coefficient(key)
        if mult <= 0:
            raise WreathFHError(f"monomial expansion lost the key {key}")
        total = self.multiply(self.psi_m(single), self.psi_m(rest))
        for nu, c in expansion.terms.items():
            if nu == key:
                continue
            total = total - self.psi_m(nu).scale(c)
        return total.exact_div(mult)

    def _validate_psi_m(self, key: Multipartition, result: FHElement, n: int):
        """Check the defining property at one small n by brute force."""
        eng = self.engine(n)
        direct = eng.to_centre(eng.evaluate_weighted_monomial(key))
        if self.specialize(result, n) != direct:
            raise WreathFHError(f"monomial image of {key} fails specialisation at n={n}")

    def psi_tensor(self, t: TensorElement) -> FHElement:
        """Apply the identification to a tensor element: multiply the images
        of the coefficient and of the monomial key."""
        out = FHElement()
        for mkey, rg in t.terms.items():
            out = out + self.multiply(self.psi_rg(rg), self.psi_m(mkey))
        return out

    def char_sym_fn(self, mu: Multipartition) -> TensorElement:
        """The character symmetric function: the unique tensor element mapped
        to K_mu by the identification.  Triangular solve along the leading
        keys; coefficients are resolved in the shifted binomial basis fixed
        by the companion map on weighted integer-valued polynomials."""
        cached = self._char_fn_cache.get(mu)
        if cached is not None:
            return cached
        residual = FHElement.basis(mu)
        out = TensorElement(self.G.num_classes)
        prev = None
        while not residual.is_zero():
            lead = residual.leading_key()
            if prev is not None and solve_order_key(lead) >= solve_order_key(prev):
                raise WreathFHError("triangular solve failed to descend")
            prev = lead
            mkey, mprime = _decompose_leading(lead, self.G.num_classes)
            poly = residual.coefficient(lead)
            shift = sum(mprime)
            coeffs = poly.shifted_binomial_coeffs(shift)
            rg = RGammaElement(self.G.num_classes)
            sub = FHElement()
            for k, u in enumerate(coeffs):
                if not u:
                    continue
                nvec = (mprime[0] + k,) + mprime[1:]
                rg = rg + RGammaElement.basis(self.G.num_classes, nvec, u)
                sub = sub + self.multiply(self.psi_r_fh(nvec), self.psi_m(mkey)).scale(u)
            out.add_term(mkey, rg)
            residual = residual - sub
        if self.psi_tensor(out).terms != {mu: IntValuedPoly.constant(1)}:
            raise WreathFHError(f"character symmetric function for {mu} fails round trip")
        self._char_fn_cache[mu] = out
        return out


def _decompose_leading(nu: Multipartition, l: int):
    """Split a leading key into the monomial key and the singleton exponent
    vector: identity component kept, off-identity parts >= 2 shrink by one,
    off-identity 1-parts counted into the exponent vector."""
    comps = {}
    mprime = [0] * l
    for c, lam in nu.components:
        if c == 0:
            comps[0] = lam
            continue
        big = [p - 1 for p in lam.parts if p >= 2]
        mprime[c] = sum(1 for p in lam.parts if p == 1)
        if big:
            comps[c] = Partition(big)
    return Multipartition(comps), tuple(mprime)


class _SingleSlotEvaluator:
    """Lazy coefficients of sum_d L_d(1)^r c^(d) on class representatives.

    For each slot d the contribution is computed in a throwaway engine at
    level d (terms of the slot factor only involve slots <= d) and only the
    lookups at candidate representatives are retained, so sampling the
    coefficient at many n costs a single pass over slots."""

    def __init__(self, alg: FHAlgebra, r: int, c_idx: int):
        self.alg = alg
        self.r = r
        self.c_idx = c_idx
        self.candidates = self._candidates()
        self._reps = {}
        for cand in self.candidates:
            s = affected_slots(cand)
            eng = alg.engine(s)
            self._reps[cand] = eng.representative(eng.unreduce(cand))
        self._prefix = {cand: [0] for cand in self.candidates}
        self._dmax = 0

    def _candidates(self):
        out = []
        for k in range(self.r + 2):
            for cand in multipartitions_of(k, self.alg.G.num_classes):
                if affected_slots(cand) > self.r + 1:
                    continue
                if reduced_size(cand) > self.r:
                    continue
                if (reduced_size(cand) - self.r) % 2:
                    continue
                out.append(cand)
        return out

    def _extend(self, n: int):
        while self._dmax < n:
            d = self._dmax + 1
            table = self._table(d)
            for cand in self.candidates:
                colors, perm = self._reps[cand]
                s = len(colors)
                prev = self._prefix[cand][-1]
                if s > d:
                    self._prefix[cand].append(prev)
                    continue
                key = (
                    colors + (0,) * (d - s),
                    perm + tuple(range(s, d)),
                )
                self._prefix[cand].append(prev + table.get(key, 0))
            self._dmax = d

    def _table(self, d: int):
        eng = WreathEngine(self.alg.G, d, cap=self.alg.cap)
        factor = eng.slot_factor(d, self.r, self.c_idx)
        return factor.terms

    def coefficient(self, cand: Multipartition, n: int) -> int:
        self._extend(n)
        return self._prefix[cand][n]
