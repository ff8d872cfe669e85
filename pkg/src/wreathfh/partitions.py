"""Partition and multipartition combinatorics.

Partitions are finite non-increasing sequences of positive integers.  A
multipartition assigns a partition to each conjugacy-class index of a finite
group (index 0 is always the identity class); empty components are not
stored.  These are the cycle-type and basis-index species used by every
other module.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from math import factorial

from .errors import InvalidParameterError

__all__ = [
    "Partition",
    "Multipartition",
    "BorderStrip",
    "contents",
    "p_core",
    "border_strips",
    "reduce_cycle_type",
    "unreduce_cycle_type",
    "partially_reduce",
    "fully_reduce",
    "hat",
    "partitions_of",
    "multipartitions_of",
    "sym_class_size",
    "parse_partition",
    "parse_multipartition",
]


class Partition:
    """An integer partition, stored as a tuple of non-increasing parts."""

    __slots__ = ("parts",)

    def __init__(self, parts=()):
        parts = tuple(int(p) for p in parts)
        for a, b in zip(parts, parts[1:]):
            if a < b:
                raise InvalidParameterError(f"parts not non-increasing: {parts}")
        if parts and parts[-1] <= 0:
            raise InvalidParameterError(f"parts must be positive: {parts}")
        self.parts = parts

    @property
    def size(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    def multiplicity(self, i: int) -> int:
        """Number of parts equal to i."""
        return sum(1 for p in self.parts if p == i)

    def conjugate(self) -> "Partition":
        if not self.parts:
            return Partition()
        cols = [0] * self.parts[0]
        for p in self.parts:
            for j in range(p):
                cols[j] += 1
        return Partition(cols)

    def __bool__(self):
        return bool(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    def __eq__(self, other):
        return isinstance(other, Partition) and self.parts == other.parts

    def __hash__(self):
        return hash(("Partition", self.parts))

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def sort_key(self):
        """Deterministic total order: by size, then length, then lex."""
        return (self.size, self.length, self.parts)

    def __repr__(self):
        return f"Partition({self.parts!r})"

    def __str__(self):
        return "(" + ",".join(str(p) for p in self.parts) + ")"


EMPTY = Partition()


class Multipartition:
    """A family of partitions indexed by conjugacy-class indices.

    Only non-empty components are stored, so equality is component-wise and
    independent of how many classes the ambient group has.
    """

    __slots__ = ("components",)

    def __init__(self, assignment=()):
        if isinstance(assignment, dict):
            items = assignment.items()
        else:
            items = assignment
        comps = []
        for c, lam in items:
            if not isinstance(lam, Partition):
                lam = Partition(lam)
            if int(c) < 0:
                raise InvalidParameterError("class index must be >= 0")
            if lam:
                comps.append((int(c), lam))
        comps.sort()
        seen = [c for c, _ in comps]
        if len(set(seen)) != len(seen):
            raise InvalidParameterError(f"duplicate component index in {comps}")
        self.components = tuple(comps)

    def component(self, c: int) -> Partition:
        for ci, lam in self.components:
            if ci == c:
                return lam
        return EMPTY

    def indices(self):
        """Class indices with a non-empty component, ascending."""
        return tuple(c for c, _ in self.components)

    @property
    def size(self) -> int:
        return sum(lam.size for _, lam in self.components)

    @property
    def length(self) -> int:
        return sum(lam.length for _, lam in self.components)

    def pairs(self):
        """All (class index, part) pairs with multiplicity."""
        return tuple((c, p) for c, lam in self.components for p in lam.parts)

    def is_empty(self) -> bool:
        return not self.components

    def __eq__(self, other):
        return isinstance(other, Multipartition) and self.components == other.components

    def __hash__(self):
        return hash(("Multipartition", self.components))

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def sort_key(self):
        """Canonical order: (size, length, component data lexicographically)."""
        return (
            self.size,
            self.length,
            tuple((c, lam.parts) for c, lam in self.components),
        )

    def __repr__(self):
        return f"Multipartition({self.components!r})"

    def __str__(self):
        if not self.components:
            return "[]"
        return "[" + ";".join(f"{lam}@{c}" for c, lam in self.components) + "]"

    @staticmethod
    def concentrated(c: int, lam) -> "Multipartition":
        return Multipartition([(c, lam if isinstance(lam, Partition) else Partition(lam))])


EMPTY_MP = Multipartition()


def contents(lam: Partition):
    """Multiset of contents j - i over boxes (i, j) of the diagram, as a
    sorted tuple (rows and columns counted from 1)."""
    out = []
    for i, p in enumerate(lam.parts, start=1):
        for j in range(1, p + 1):
            out.append(j - i)
    return tuple(sorted(out))


def _beta_set(lam: Partition, length: int):
    """First-column hook lengths padded to `length` rows: beta_i = lam_i + (length - 1 - i)."""
    parts = list(lam.parts) + [0] * (length - lam.length)
    return [parts[i] + (length - 1 - i) for i in range(length)]


def _partition_from_beta(beta):
    """Inverse of _beta_set for a strictly decreasing sorted beta list."""
    beta = sorted(beta, reverse=True)
    n = len(beta)
    parts = [beta[i] - (n - 1 - i) for i in range(n)]
    return Partition([p for p in parts if p > 0])


def p_core(lam: Partition, p: int) -> Partition:
    """The p-core: what remains after removing all border strips of size p.

    Computed on beta-numbers (abacus): subtract p from a beta-number whenever
    the result is a fresh non-negative value; the outcome is independent of
    the removal order.
    """
    if p < 2:
        raise InvalidParameterError("p must be >= 2")
    beta = set(_beta_set(lam, max(lam.length, 1)))
    changed = True
    while changed:
        changed = False
        for b in sorted(beta):
            if b - p >= 0 and (b - p) not in beta:
                beta.remove(b)
                beta.add(b - p)
                changed = True
    return _partition_from_beta(beta)


class BorderStrip:
    """A removable border strip: its boxes, height (rows spanned minus one),
    and the partition left after removal."""

    __slots__ = ("boxes", "height", "result")

    def __init__(self, boxes, height, result):
        self.boxes = tuple(sorted(boxes))
        self.height = height
        self.result = result

    def __eq__(self, other):
        return (
            isinstance(other, BorderStrip)
            and self.boxes == other.boxes
            and self.height == other.height
            and self.result == other.result
        )

    def __repr__(self):
        return f"BorderStrip(boxes={self.boxes}, height={self.height}, result={self.result})"


def border_strips(lam: Partition, k: int):
    """All removable border strips of size exactly k, via the abacus: each
    corresponds to a beta-number b with b - k >= 0 not itself a beta-number.

    The height equals the number of beta-numbers strictly between b - k and b.
    """
    if k < 1:
        raise InvalidParameterError("strip size must be >= 1")
    length = max(lam.length, 1)
    beta = _beta_set(lam, length)
    beta_set = set(beta)
    out = []
    for row, b in enumerate(beta):
        if b - k < 0 or (b - k) in beta_set:
            continue
        height = sum(1 for x in beta if b - k < x < b)
        new_beta = [x for x in beta if x != b] + [b - k]
        result = _partition_from_beta(new_beta)
        boxes = _strip_boxes(lam, result)
        out.append(BorderStrip(boxes, height, result))
    out.sort(key=lambda s: s.boxes)
    return out


def _strip_boxes(lam: Partition, res: Partition):
    """Boxes of lam not in res, as (row, col) pairs (1-based)."""
    boxes = []
    for i, p in enumerate(lam.parts, start=1):
        q = res.parts[i - 1] if i - 1 < res.length else 0
        for j in range(q + 1, p + 1):
            boxes.append((i, j))
    return boxes


def reduce_cycle_type(lam: Partition) -> Partition:
    """Subtract 1 from each part, dropping resulting zeros."""
    return Partition(sorted((p - 1 for p in lam.parts if p > 1), reverse=True))


def unreduce_cycle_type(mu: Partition, n: int):
    """Add 1 to each part and pad with 1s up to total size n.

    Returns None when n < |mu| + l(mu) (no such cycle type in S_n).
    """
    if n < 0:
        raise InvalidParameterError("n must be >= 0")
    need = mu.size + mu.length
    if n < need:
        return None
    return Partition([p + 1 for p in mu.parts] + [1] * (n - need))


def partially_reduce(mp: Multipartition) -> Multipartition:
    """Reduce only the identity component (index 0)."""
    comps = dict(mp.components)
    if 0 in comps:
        comps[0] = reduce_cycle_type(comps[0])
    return Multipartition(comps)


def fully_reduce(mp: Multipartition) -> Multipartition:
    """Reduce every component."""
    return Multipartition({c: reduce_cycle_type(lam) for c, lam in mp.components})


def hat(mp: Multipartition) -> Multipartition:
    """Add 1 to each part of every non-identity component; identity fixed."""
    comps = {}
    for c, lam in mp.components:
        if c == 0:
            comps[c] = lam
        else:
            comps[c] = Partition([p + 1 for p in lam.parts])
    return Multipartition(comps)


@lru_cache(maxsize=None)
def _partitions_of(n: int):
    if n == 0:
        return (Partition(),)
    out = []

    def rec(remaining, maxpart, prefix):
        if remaining == 0:
            out.append(Partition(prefix))
            return
        for p in range(min(remaining, maxpart), 0, -1):
            rec(remaining - p, p, prefix + (p,))

    rec(n, n, ())
    return tuple(out)


def partitions_of(n: int):
    """All partitions of n, in a deterministic order."""
    if n < 0:
        raise InvalidParameterError("n must be >= 0")
    return _partitions_of(n)


@lru_cache(maxsize=None)
def _multipartitions_of(k: int, l: int):
    if l == 0:
        return (Multipartition(),) if k == 0 else ()
    out = []
    for sizes in _compositions(k, l):
        for choice in itertools.product(*(partitions_of(s) for s in sizes)):
            out.append(Multipartition(enumerate(choice)))
    out.sort(key=Multipartition.sort_key)
    return tuple(out)


def _compositions(k, l):
    """Weak compositions of k into l parts."""
    if l == 1:
        yield (k,)
        return
    for first in range(k + 1):
        for rest in _compositions(k - first, l - 1):
            yield (first,) + rest


def multipartitions_of(k: int, l: int):
    """All multipartitions of total size k over l classes, canonically ordered."""
    if k < 0 or l < 0:
        raise InvalidParameterError("k and l must be >= 0")
    return _multipartitions_of(k, l)


def sym_class_size(mu: Partition, n: int) -> int:
    """Number of elements of S_n with cycle type mu: n! / prod_i i^{m_i} m_i!."""
    if mu.size != n:
        raise InvalidParameterError(f"|mu| = {mu.size} != n = {n}")
    z = 1
    for i in set(mu.parts):
        m = mu.multiplicity(i)
        z *= i**m * factorial(m)
    return factorial(n) // z


def parse_partition(text: str) -> Partition:
    """Parse "(3,2,1)" or "()" (whitespace tolerated)."""
    s = text.strip()
    if not (s.startswith("(") and s.endswith(")")):
        raise InvalidParameterError(f"cannot parse partition: {text!r}")
    body = s[1:-1].strip()
    if not body:
        return Partition()
    try:
        parts = [int(x) for x in body.split(",") if x.strip()]
    except ValueError as exc:
        raise InvalidParameterError(f"cannot parse partition: {text!r}") from exc
    return Partition(parts)


def parse_multipartition(text: str) -> Multipartition:
    """Parse "[(2,1)@0;(1)@1]"; a bare "(2,1)" is shorthand for component 0."""
    s = text.strip()
    if s.startswith("("):
        return Multipartition([(0, parse_partition(s))])
    if not (s.startswith("[") and s.endswith("]")):
        raise InvalidParameterError(f"cannot parse multipartition: {text!r}")
    body = s[1:-1].strip()
    if not body:
        return Multipartition()
    comps = []
    for chunk in body.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        if "@" not in chunk:
            raise InvalidParameterError(f"missing '@' in component: {chunk!r}")
        part_text, _, idx_text = chunk.rpartition("@")
        try:
            idx = int(idx_text)
        except ValueError as exc:
            raise InvalidParameterError(f"bad class index: {chunk!r}") from exc
        comps.append((idx, parse_partition(part_text)))
    return Multipartition(comps)
