"""Finite groups as validated Cayley tables, plus homomorphisms.

Elements are canonical indices 0..order-1; display names are metadata only.
cayley[a][b] is the index of the product a*b.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .errors import HopfTrisectError


class NotAGroup(HopfTrisectError):
    """The table fails a group axiom; .witness points at the failure."""

    def __init__(self, reason: str, witness=None):
        super().__init__(reason if witness is None else f"{reason} (witness: {witness})")
        self.reason = reason
        self.witness = witness


class NotAHom(HopfTrisectError):
    def __init__(self, reason: str, witness=None):
        super().__init__(reason if witness is None else f"{reason} (witness: {witness})")
        self.reason = reason
        self.witness = witness


@dataclass(frozen=True)
class FiniteGroup:
    cayley: tuple[tuple[int, ...], ...]
    identity: int
    inverse: tuple[int, ...]
    element_names: tuple[str, ...]

    @property
    def order(self) -> int:
        return len(self.cayley)

    def elements(self) -> range:
        return range(self.order)

    def mul(self, a: int, b: int) -> int:
        return self.cayley[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def conj(self, h: int, a: int) -> int:
        """h a h^{-1}."""
        return self.mul(self.mul(h, a), self.inv(h))

    def power(self, a: int, k: int) -> int:
        if k < 0:
            return self.power(self.inv(a), -k)
        out = self.identity
        for _ in range(k):
            out = self.mul(out, a)
        return out

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity:
            x = self.mul(x, a)
            k += 1
        return k

    def is_central(self, a: int) -> bool:
        return all(self.mul(a, b) == self.mul(b, a) for b in self.elements())

    def name(self, a: int) -> str:
        return self.element_names[a]

    def index_of(self, name: str) -> int:
        return self.element_names.index(name)

    def __repr__(self) -> str:
        return f"FiniteGroup(order={self.order})"


def group_from_cayley(table, names=None) -> FiniteGroup:
    """Validate a multiplication table and return the group it defines."""
    n = len(table)
    if n == 0:
        raise NotAGroup("empty table")
    for i, row in enumerate(table):
        if len(row) != n:
            raise NotAGroup("table is not square", witness=("row", i))
        for j, v in enumerate(row):
            if not (isinstance(v, int) and 0 <= v < n):
                raise NotAGroup("entry out of range", witness=(i, j, v))

    identity = None
    for e in range(n):
        if all(table[e][x] == x and table[x][e] == x for x in range(n)):
            identity = e
            break
    if identity is None:
        raise NotAGroup("no identity element")

    inverse = [None] * n
    for a in range(n):
        for b in range(n):
            if table[a][b] == identity and table[b][a] == identity:
                inverse[a] = b
                break
        if inverse[a] is None:
            raise NotAGroup("no inverse", witness=a)

    for a, b, c in product(range(n), repeat=3):
        if table[table[a][b]][c] != table[a][table[b][c]]:
            raise NotAGroup("not associative", witness=(a, b, c))

    if names is None:
        names = tuple(f"g{i}" for i in range(n))
    else:
        names = tuple(names)
        if len(names) != n:
            raise NotAGroup("names length disagrees with table size")

    cayley = tuple(tuple(row) for row in table)
    return FiniteGroup(cayley, identity, tuple(inverse), names)


@dataclass(frozen=True)
class GroupHom:
    source: FiniteGroup
    target: FiniteGroup
    image_of: tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.image_of[x]

    def kernel(self) -> list[int]:
        return [x for x in self.source.elements() if self.image_of[x] == self.target.identity]

    def image(self) -> list[int]:
        return sorted(set(self.image_of))

    def preimage(self, alpha: int) -> list[int]:
        """The fiber over a target element; empty when alpha misses the image."""
        if not 0 <= alpha < self.target.order:
            raise ValueError(f"element {alpha} not in target group")
        return [x for x in self.source.elements() if self.image_of[x] == alpha]


def hom_from_map(source: FiniteGroup, target: FiniteGroup, images) -> GroupHom:
    images = tuple(images)
    if len(images) != source.order:
        raise NotAHom("image list does not cover the source")
    for v in images:
        if not (isinstance(v, int) and 0 <= v < target.order):
            raise NotAHom("image out of range", witness=v)
    for a, b in product(source.elements(), repeat=2):
        if images[source.mul(a, b)] != target.mul(images[a], images[b]):
            raise NotAHom("multiplicativity fails", witness=(a, b))
    return GroupHom(source, target, images)


def identity_hom(g: FiniteGroup) -> GroupHom:
    return GroupHom(g, g, tuple(g.elements()))


def trivial_group() -> FiniteGroup:
    return group_from_cayley([[0]], names=["1"])


def cyclic_group(n: int) -> FiniteGroup:
    """Z/n with generator named 'a'."""
    table = [[(a + b) % n for b in range(n)] for a in range(n)]
    names = ["1"] + [f"a^{k}" if k > 1 else "a" for k in range(1, n)]
    return group_from_cayley(table, names=names)


def dihedral_group(n: int) -> FiniteGroup:
    """Dihedral group of order 2n: indices 0..n-1 are r^i, n..2n-1 are s r^i."""
    def idx(flip: int, rot: int) -> int:
        return (n if flip else 0) + rot % n

    table = []
    for a in range(2 * n):
        fa, ra = divmod(a, n)
        row = []
        for b in range(2 * n):
            fb, rb = divmod(b, n)
            # r^a * s = s * r^{-a}, so (s^fa r^ra)(s^fb r^rb) = s^{fa+fb} r^{rb + (-1)^fb ra}
            rot = (rb + (ra if fb == 0 else -ra)) % n
            row.append(idx((fa + fb) % 2, rot))
        table.append(row)

    def nm(flip: int, rot: int) -> str:
        if not flip:
            return "1" if rot == 0 else ("r" if rot == 1 else f"r^{rot}")
        return "s" if rot == 0 else ("sr" if rot == 1 else f"sr^{rot}")

    names = [nm(*divmod(a, n)) for a in range(2 * n)]
    return group_from_cayley(table, names=names)
