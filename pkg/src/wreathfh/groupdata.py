"""Finite groups as explicit data.

A group is a multiplication table over element indices 0..order-1 with the
identity at index 0.  Conjugacy classes, class-multiplication coefficients
A_{i,j}^k and (optionally) an exact rational character table are derived and
validated on load.  Groups whose irreducible characters are irrational can
still be loaded for class arithmetic, but character-based operations raise
UnsupportedCharacterFieldError.
"""

from __future__ import annotations

import itertools
import json
from fractions import Fraction

from .errors import UnsupportedCharacterFieldError, ValidationError

__all__ = [
    "GroupData",
    "Irrep",
    "load_group",
    "load_group_file",
    "builtin_group",
    "builtin_names",
    "class_coefficients",
    "central_character",
    "p_blocks",
]

Rational = Fraction


class Irrep:
    """One irreducible character: name, dimension, one exact rational value
    per conjugacy class (in the group's canonical class order)."""

    __slots__ = ("name", "dim", "values")

    def __init__(self, name, dim, values):
        self.name = str(name)
        self.dim = int(dim)
        self.values = tuple(Fraction(v) for v in values)

    def __repr__(self):
        return f"Irrep({self.name!r}, dim={self.dim})"


class GroupData:
    """Validated finite group: multiplication table, classes, A-coefficients,
    optional character table.  Immutable after construction."""

    def __init__(self, name, mult, char_table=None):
        self.name = str(name)
        self.mult = tuple(tuple(int(x) for x in row) for row in mult)
        self.order = len(self.mult)
        _validate_group_law(self.mult)
        self.inverse = _inverses(self.mult)
        self.classes = _conjugacy_classes(self.mult, self.inverse)
        self.num_classes = len(self.classes)
        self.class_of = [0] * self.order
        for ci, cls in enumerate(self.classes):
            for g in cls:
                self.class_of[g] = ci
        self.representatives = tuple(min(cls) for cls in self.classes)
        self.class_sizes = tuple(len(cls) for cls in self.classes)
        self.a_coeffs = _class_coefficients(self)
        self.char_table = None
        if char_table is not None:
            self.char_table = tuple(char_table)
            _validate_char_table(self)
        self._cache = {}

    # -- basic structure ---------------------------------------------------

    def mul(self, a: int, b: int) -> int:
        return self.mult[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def class_product(self, u, v):
        """Product of two class-algebra vectors (coefficients per class index)
        through the A-coefficients."""
        out = [0] * self.num_classes
        for i, ui in enumerate(u):
            if not ui:
                continue
            for j, vj in enumerate(v):
                if not vj:
                    continue
                row = self.a_coeffs[i][j]
                for k, a in enumerate(row):
                    if a:
                        out[k] += ui * vj * a
        return out

    def require_char_table(self):
        if self.char_table is None:
            raise UnsupportedCharacterFieldError(
                f"group {self.name!r} has no rational character table"
            )
        return self.char_table

    def __repr__(self):
        return f"GroupData({self.name!r}, order={self.order})"


# -- validation --------------------------------------------------------------


def _validate_group_law(mult):
    n = len(mult)
    if n == 0:
        raise ValidationError("empty multiplication table")
    for row in mult:
        if len(row) != n or any(not (0 <= x < n) for x in row):
            raise ValidationError("multiplication table is not square over 0..n-1")
    for a in range(n):
        if mult[0][a] != a or mult[a][0] != a:
            raise ValidationError("index 0 is not a two-sided identity")
    for a in range(n):
        for b in range(n):
            mab = mult[a][b]
            for c in range(n):
                if mult[mab][c] != mult[a][mult[b][c]]:
                    raise ValidationError(f"associativity fails at ({a},{b},{c})")


def _inverses(mult):
    n = len(mult)
    inv = [None] * n
    for a in range(n):
        for b in range(n):
            if mult[a][b] == 0 and mult[b][a] == 0:
                inv[a] = b
                break
        if inv[a] is None:
            raise ValidationError(f"element {a} has no inverse")
    return tuple(inv)


def _conjugacy_classes(mult, inverse):
    """Classes as sorted tuples, ordered by minimal element (identity first)."""
    n = len(mult)
    seen = [False] * n
    classes = []
    for g in range(n):
        if seen[g]:
            continue
        orbit = {mult[mult[x][g]][inverse[x]] for x in range(n)}
        for h in orbit:
            seen[h] = True
        classes.append(tuple(sorted(orbit)))
    classes.sort(key=min)
    return tuple(classes)


def _class_coefficients(G: GroupData):
    """A_{i,j}^k = #{(a,b) in c_i x c_j : ab = rep(c_k)}."""
    l = G.num_classes
    table = [[[0] * l for _ in range(l)] for _ in range(l)]
    for i in range(l):
        for j in range(l):
            row = table[i][j]
            for a in G.classes[i]:
                arow = G.mult[a]
                for b in G.classes[j]:
                    k = G.class_of[arow[b]]
                    row[k] += 1
            # normalise: counted every product; divide by |c_k| via rep counting
            for k in range(l):
                size = G.class_sizes[k]
                if row[k] % size:
                    raise ValidationError("class products are not class-constant")
                row[k] //= size
    return tuple(tuple(tuple(r) for r in plane) for plane in table)


def _validate_char_table(G: GroupData):
    table = G.char_table
    if len(table) != G.num_classes:
        raise ValidationError(
            f"{len(table)} irreps but {G.num_classes} classes in {G.name!r}"
        )
    if sum(chi.dim**2 for chi in table) != G.order:
        raise ValidationError("sum of squared dimensions != group order")
    inv_class = [G.class_of[G.inverse[G.representatives[c]]] for c in range(G.num_classes)]
    for chi in table:
        if len(chi.values) != G.num_classes:
            raise ValidationError(f"irrep {chi.name!r} has wrong number of values")
        if chi.values[0] != chi.dim:
            raise ValidationError(f"irrep {chi.name!r}: value at identity != dim")
    for r, chi in enumerate(table):
        for s, psi in enumerate(table):
            tot = sum(
                G.class_sizes[c] * chi.values[c] * psi.values[inv_class[c]]
                for c in range(G.num_classes)
            )
            expected = G.order if r == s else 0
            if tot != expected:
                raise ValidationError(
                    f"row orthogonality fails for {chi.name!r}, {psi.name!r}"
                )


# -- operations ---------------------------------------------------------------


def class_coefficients(G: GroupData):
    return G.a_coeffs


def central_character(G: GroupData, chi_index: int, class_index: int) -> int:
    """|c| * chi(rep of c) / chi(1); an algebraic integer, hence (being
    rational here) an integer."""
    table = G.require_char_table()
    chi = table[chi_index]
    val = Fraction(G.class_sizes[class_index]) * chi.values[class_index] / chi.dim
    if val.denominator != 1:
        raise UnsupportedCharacterFieldError(
            f"central character of {chi.name!r} at class {class_index} is not an integer"
        )
    return int(val)


def p_blocks(G: GroupData, p: int):
    """Partition of irrep indices by the tuple of central characters mod p."""
    table = G.require_char_table()
    keys = {}
    for r in range(len(table)):
        key = tuple(central_character(G, r, c) % p for c in range(G.num_classes))
        keys.setdefault(key, []).append(r)
    blocks = sorted(keys.values(), key=lambda b: b[0])
    return tuple(tuple(b) for b in blocks)


# -- loading -------------------------------------------------------------------


def load_group(document: dict) -> GroupData:
    """Build a GroupData from a parsed group document (see README for the
    JSON schema).  Classes and A-coefficients are always computed here."""
    if not isinstance(document, dict):
        raise ValidationError("group document must be a JSON object")
    name = document.get("name", "unnamed")
    if "mult" not in document:
        raise ValidationError("group document missing 'mult'")
    mult = document["mult"]
    if "order" in document and int(document["order"]) != len(mult):
        raise ValidationError("declared order does not match table size")
    char_table = None
    if document.get("char_table") is not None:
        irreps_doc = document["char_table"].get("irreps")
        if irreps_doc is None:
            raise ValidationError("char_table missing 'irreps'")
        char_table = []
        for entry in irreps_doc:
            values = []
            for v in entry["values"]:
                try:
                    values.append(Fraction(str(v)))
                except (ValueError, ZeroDivisionError) as exc:
                    raise UnsupportedCharacterFieldError(
                        f"character value {v!r} is not rational"
                    ) from exc
            char_table.append(Irrep(entry["name"], entry["dim"], values))
    return GroupData(name, mult, char_table)


def load_group_file(path: str) -> GroupData:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            document = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"invalid JSON in {path}: {exc}") from exc
    return load_group(document)


# -- built-in groups -----------------------------------------------------------


def _cyclic_mult(n):
    return [[(a + b) % n for b in range(n)] for a in range(n)]


def _klein_mult():
    return [[a ^ b for b in range(4)] for a in range(4)]


def _sym_mult(k):
    elems = sorted(itertools.permutations(range(k)))
    index = {e: i for i, e in enumerate(elems)}
    # product = compose: (p*q)(x) = p(q(x))
    return [
        [index[tuple(p[q[x]] for x in range(k))] for q in elems] for p in elems
    ], elems


def _perm_cycle_type(p):
    seen = [False] * len(p)
    parts = []
    for i in range(len(p)):
        if seen[i]:
            continue
        j, c = i, 0
        while not seen[j]:
            seen[j] = True
            j = p[j]
            c += 1
        parts.append(c)
    return tuple(sorted(parts, reverse=True))


_S3_CHARS = {
    # by cycle type of class representative
    "triv": {(1, 1, 1): 1, (2, 1): 1, (3,): 1},
    "sign": {(1, 1, 1): 1, (2, 1): -1, (3,): 1},
    "std": {(1, 1, 1): 2, (2, 1): 0, (3,): -1},
}

_S4_CHARS = {
    "triv": {(1, 1, 1, 1): 1, (2, 1, 1): 1, (2, 2): 1, (3, 1): 1, (4,): 1},
    "sign": {(1, 1, 1, 1): 1, (2, 1, 1): -1, (2, 2): 1, (3, 1): 1, (4,): -1},
    "two": {(1, 1, 1, 1): 2, (2, 1, 1): 0, (2, 2): 2, (3, 1): -1, (4,): 0},
    "std": {(1, 1, 1, 1): 3, (2, 1, 1): 1, (2, 2): -1, (3, 1): 0, (4,): -1},
    "stdsign": {(1, 1, 1, 1): 3, (2, 1, 1): -1, (2, 2): -1, (3, 1): 0, (4,): 1},
}


def _sym_group(name, k, chars):
    mult, elems = _sym_mult(k)
    G = GroupData(name, mult)
    table = []
    for chi_name, by_type in chars.items():
        values = [by_type[_perm_cycle_type(elems[rep])] for rep in G.representatives]
        table.append(Irrep(chi_name, values[0], values))
    return GroupData(name, mult, table)


def _builtin(name):
    if name == "trivial":
        return GroupData("trivial", [[0]], [Irrep("triv", 1, [1])])
    if name == "C2":
        table = [Irrep("triv", 1, [1, 1]), Irrep("sign", 1, [1, -1])]
        return GroupData("C2", _cyclic_mult(2), table)
    if name == "C3":
        # character table needs cube roots of unity: load for class arithmetic only
        return GroupData("C3", _cyclic_mult(3), None)
    if name == "V4":
        # classes are singletons {0},{1},{2},{3}; characters are +-1 patterns
        table = [
            Irrep("triv", 1, [1, 1, 1, 1]),
            Irrep("chi_a", 1, [1, 1, -1, -1]),
            Irrep("chi_b", 1, [1, -1, 1, -1]),
            Irrep("chi_ab", 1, [1, -1, -1, 1]),
        ]
        return GroupData("V4", _klein_mult(), table)
    if name == "S3":
        return _sym_group("S3", 3, _S3_CHARS)
    if name == "S4":
        return _sym_group("S4", 4, _S4_CHARS)
    raise ValidationError(f"unknown builtin group {name!r}")


_BUILTIN_CACHE = {}


def builtin_names():
    return ("trivial", "C2", "C3", "V4", "S3", "S4")


def builtin_group(name: str) -> GroupData:
    if name not in _BUILTIN_CACHE:
        _BUILTIN_CACHE[name] = _builtin(name)
    return _BUILTIN_CACHE[name]
