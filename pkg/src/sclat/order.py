"""Finite posets and the co-Heyting algebra of their decreasing subsets.

A finite distributive lattice is the same thing as the lattice of downsets
of its poset of join-irreducible elements.  This module works on that dual
side: a :class:`Poset` holds the irreducibles and an :class:`Element` is a
downset, stored as an integer bit mask over the poset points.  Two elements
are equal exactly when their masks are, which also means their antichains of
maximal points agree.

Join and meet are union and intersection of downsets.  The topological
difference ``a - b`` is the downset generated by the maximal points of ``a``
that are not in ``b``.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass
from functools import cached_property
from typing import Union

from .errors import BaseMismatchError, IllFormedInputError, IngestionError

NEG_INF = float("-inf")

Dimension = Union[int, float]


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Poset:
    """A finite poset presented by its points and cover pairs.

    Points keep their insertion order, which is the tie-break order used for
    every deterministic output.  Redundant pairs in ``covers`` are accepted
    and dropped; cycles are rejected.
    """

    def __init__(self, elements: Iterable[str], covers: Iterable[Sequence[str]] = ()):
        ids = tuple(str(e) for e in elements)
        if len(set(ids)) != len(ids):
            raise IllFormedInputError("duplicate poset element identifiers")
        self.ids: tuple[str, ...] = ids
        self.index: dict[str, int] = {x: i for i, x in enumerate(ids)}
        n = len(ids)
        preds: list[set[int]] = [set() for _ in range(n)]
        for pair in covers:
            if len(pair) != 2:
                raise IllFormedInputError(f"cover {pair!r} is not a pair")
            lo, hi = (self._lookup(p) for p in pair)
            if lo == hi:
                raise IllFormedInputError(f"cover ({pair[0]}, {pair[1]}) is reflexive")
            preds[hi].add(lo)
        order = _topological_order(preds)
        below = [0] * n
        for i in order:
            m = 0
            for j in preds[i]:
                m |= below[j] | (1 << j)
            below[i] = m
        above = [0] * n
        for i in range(n):
            for j in iter_bits(below[i]):
                above[j] |= 1 << i
        self.below: tuple[int, ...] = tuple(below)
        self.above: tuple[int, ...] = tuple(above)
        self.down: tuple[int, ...] = tuple(below[i] | (1 << i) for i in range(n))
        self.topo: tuple[int, ...] = tuple(order)
        height = [0] * n
        for i in order:
            height[i] = max((height[j] + 1 for j in iter_bits(below[i])), default=0)
        self.height: tuple[int, ...] = tuple(height)
        self.cover_pairs: tuple[tuple[int, int], ...] = tuple(
            (j, i)
            for i in range(n)
            for j in iter_bits(below[i])
            if below[i] & above[j] == 0
        )
        self.n = n
        self.full = (1 << n) - 1

    def _lookup(self, ident) -> int:
        try:
            return self.index[str(ident)]
        except KeyError:
            raise IllFormedInputError(f"unknown identifier {ident!r}") from None

    # structure protocol shared with ScaledBase
    @property
    def poset(self) -> "Poset":
        return self

    @property
    def covers(self) -> list[tuple[str, str]]:
        return [(self.ids[j], self.ids[i]) for j, i in self.cover_pairs]

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, Poset):
            return NotImplemented
        return self.ids == other.ids and set(self.cover_pairs) == set(other.cover_pairs)

    def __hash__(self) -> int:
        return hash((self.ids, frozenset(self.cover_pairs)))

    def __repr__(self) -> str:
        covers = ", ".join(f"{a}<{b}" for a, b in self.covers)
        return f"Poset([{', '.join(self.ids)}]; {covers})"

    def leq(self, x: str, y: str) -> bool:
        return bool(self.down[self._lookup(y)] >> self._lookup(x) & 1)

    # ---- mask level -------------------------------------------------
    def mask_of(self, ids: Iterable[str]) -> int:
        m = 0
        for x in ids:
            m |= 1 << self._lookup(x)
        return m

    def closure(self, mask: int) -> int:
        out = 0
        for i in iter_bits(mask):
            out |= self.down[i]
        return out

    def maximal_mask(self, mask: int) -> int:
        return sum(1 << i for i in iter_bits(mask) if not self.above[i] & mask)

    def diff_mask(self, a: int, b: int) -> int:
        out = 0
        for i in iter_bits(self.maximal_mask(a) & ~b):
            out |= self.down[i]
        return out

    def dim_mask(self, mask: int) -> Dimension:
        if not mask:
            return NEG_INF
        return max(self.height[i] for i in iter_bits(mask))

    def is_downset(self, mask: int) -> bool:
        return self.closure(mask) == mask

    def downsets(self, within: int | None = None) -> list[int]:
        """All downset masks (optionally those inside ``within``), sorted."""
        pts = [i for i in self.topo if within is None or within >> i & 1]
        out = [0]
        for i in pts:
            need = self.below[i]
            out += [m | (1 << i) for m in out if m & need == need]
        out.sort(key=lambda m: (m.bit_count(), m))
        return out

    @cached_property
    def all_masks(self) -> tuple[int, ...]:
        return tuple(self.downsets())

    # ---- element construction ---------------------------------------
    def element(self, *ids: str) -> "Element":
        return Element(self, self.closure(self.mask_of(ids)))

    @property
    def zero(self) -> "Element":
        return Element(self, 0)

    @property
    def one(self) -> "Element":
        return Element(self, self.full)

    def elements(self) -> list["Element"]:
        return [Element(self, m) for m in self.all_masks]

    def irreducible(self, ident: str) -> "Element":
        return Element(self, self.down[self._lookup(ident)])


def _topological_order(preds: list[set[int]]) -> list[int]:
    n = len(preds)
    indeg = [len(p) for p in preds]
    succ: list[list[int]] = [[] for _ in range(n)]
    for i, p in enumerate(preds):
        for j in p:
            succ[j].append(i)
    ready = [i for i in range(n) if indeg[i] == 0]
    order: list[int] = []
    while ready:
        ready.sort()
        i = ready.pop(0)
        order.append(i)
        for k in succ[i]:
            indeg[k] -= 1
            if indeg[k] == 0:
                ready.append(k)
    if len(order) != n:
        raise IllFormedInputError("cover relation contains a cycle")
    return order


class Element:
    """A downset of the base poset; ``base`` is a Poset or a ScaledBase."""

    __slots__ = ("base", "mask")

    def __init__(self, base, mask: int):
        self.base = base
        self.mask = mask

    @property
    def poset(self) -> Poset:
        return self.base.poset

    def _check(self, other: "Element") -> None:
        if not isinstance(other, Element):
            raise TypeError(f"expected an Element, got {type(other).__name__}")
        if self.base is not other.base and self.base != other.base:
            raise BaseMismatchError("elements belong to different bases")

    def __or__(self, other: "Element") -> "Element":
        self._check(other)
        return Element(self.base, self.mask | other.mask)

    def __and__(self, other: "Element") -> "Element":
        self._check(other)
        return Element(self.base, self.mask & other.mask)

    def __sub__(self, other: "Element") -> "Element":
        self._check(other)
        return Element(self.base, self.poset.diff_mask(self.mask, other.mask))

    def __le__(self, other: "Element") -> bool:
        self._check(other)
        return self.mask & ~other.mask == 0

    def __lt__(self, other: "Element") -> bool:
        return self <= other and self.mask != other.mask

    def __eq__(self, other) -> bool:
        if not isinstance(other, Element):
            return NotImplemented
        return self.mask == other.mask and (self.base is other.base or self.base == other.base)

    def __hash__(self) -> int:
        return hash(self.mask)

    @property
    def is_zero(self) -> bool:
        return self.mask == 0

    @property
    def maximals(self) -> tuple[str, ...]:
        p = self.poset
        return tuple(p.ids[i] for i in iter_bits(p.maximal_mask(self.mask)))

    @property
    def points(self) -> tuple[str, ...]:
        return tuple(self.poset.ids[i] for i in iter_bits(self.mask))

    def components(self) -> list["Element"]:
        p = self.poset
        return [Element(self.base, p.down[i]) for i in iter_bits(p.maximal_mask(self.mask))]

    def key(self) -> list[str]:
        """Sorted maximal antichain, the serialized form of an element."""
        return sorted(self.maximals)

    def __repr__(self) -> str:
        if not self.mask:
            return "0"
        return "{" + ",".join(self.maximals) + "}"

    # scaled-base helpers; defined here so terms can be evaluated uniformly
    def c(self, k: int) -> "Element":
        from .scaled import c_k

        return c_k(self, k)

    @property
    def scdim(self) -> Dimension:
        from .scaled import scdim

        return scdim(self)

    @property
    def dim(self) -> Dimension:
        return dim(self)


# ---- module-level operations ----------------------------------------


def downset(base, seed: Iterable[str]) -> Element:
    return Element(base, base.poset.closure(base.poset.mask_of(seed)))


def join(a: Element, b: Element) -> Element:
    return a | b


def meet(a: Element, b: Element) -> Element:
    return a & b


def tc_diff(a: Element, b: Element) -> Element:
    return a - b


def strongly_below(b: Element, a: Element) -> bool:
    """``b << a``: b lies below the difference a - b."""
    return b <= a - b


def dim(a: Element) -> Dimension:
    """Length of the longest chain of poset points below ``a``."""
    return a.poset.dim_mask(a.mask)


def dim_via_ll(a: Element) -> Dimension:
    """Longest chain 0 != a0 << a1 << ... << an <= a, found by search.

    This never looks at poset heights; it only uses the lattice
    operations, so it serves as an independent route to :func:`dim`.
    """
    if a.is_zero:
        return NEG_INF
    p = a.poset
    masks = p.downsets(a.mask)
    best: dict[int, int] = {}
    for e in masks:
        if not e:
            continue
        length = 0
        for f, lf in best.items():
            if f & ~e == 0 and f != e and f & ~p.diff_mask(e, f) == 0:
                length = max(length, lf + 1)
        best[e] = length
    return max(best.values())


# ---- explicit operation tables ---------------------------------------


@dataclass(frozen=True)
class LatticeTables:
    """A finite lattice given by element names and join/meet tables."""

    elements: tuple[str, ...]
    join: tuple[tuple[int, ...], ...]
    meet: tuple[tuple[int, ...], ...]


def tabulate(poset: Poset) -> LatticeTables:
    masks = poset.all_masks
    pos = {m: i for i, m in enumerate(masks)}
    names = tuple(repr(Element(poset, m)) for m in masks)
    jt = tuple(tuple(pos[a | b] for b in masks) for a in masks)
    mt = tuple(tuple(pos[a & b] for b in masks) for a in masks)
    return LatticeTables(names, jt, mt)


def recover_poset(tables: LatticeTables, verify: bool = True) -> Poset:
    """Poset of join-irreducibles of an explicit finite distributive lattice.

    With ``verify`` every lattice law and distributivity is checked and the
    first failing one is named in the :class:`IngestionError`.  Callers that
    already know the tables come from a sublattice of a distributive lattice
    may skip the cubic checks.
    """
    names, J, M = tables.elements, tables.join, tables.meet
    n = len(names)
    rng = range(n)
    if len(J) != n or len(M) != n or any(len(r) != n for r in (*J, *M)):
        raise IngestionError("table shape", "tables must be square over the element list")
    if any(not 0 <= v < n for r in (*J, *M) for v in r):
        raise IngestionError("closure", "table entry outside the element list")
    if len(set(names)) != n:
        raise IngestionError("distinct names", "duplicate element names")
    if n == 0:
        raise IngestionError("boundedness", "empty lattice has no bottom")
    if verify:
        _verify_laws(names, J, M)
    bottoms = [z for z in rng if all(J[z][x] == x for x in rng)]
    if not bottoms:
        raise IngestionError("boundedness", "no least element")
    bottom = bottoms[0]

    irr = []
    for x in rng:
        if x == bottom:
            continue
        acc = bottom
        for y in rng:
            if y != x and J[y][x] == x:
                acc = J[acc][y]
        if acc != x:
            irr.append(x)

    def below(x: int, y: int) -> bool:
        return x != y and J[x][y] == y

    covers = [
        (names[x], names[y])
        for x in irr
        for y in irr
        if below(x, y) and not any(below(x, z) and below(z, y) for z in irr)
    ]
    return Poset([names[x] for x in irr], covers)


def _verify_laws(names, J, M) -> None:
    rng = range(len(names))
    for a in rng:
        if J[a][a] != a or M[a][a] != a:
            raise IngestionError("idempotence", names[a])
        for b in rng:
            if J[a][b] != J[b][a]:
                raise IngestionError("join commutativity", f"{names[a]}, {names[b]}")
            if M[a][b] != M[b][a]:
                raise IngestionError("meet commutativity", f"{names[a]}, {names[b]}")
            if J[a][M[a][b]] != a or M[a][J[a][b]] != a:
                raise IngestionError("absorption", f"{names[a]}, {names[b]}")
    for a in rng:
        for b in rng:
            for c in rng:
                if J[J[a][b]][c] != J[a][J[b][c]]:
                    raise IngestionError("join associativity", f"{names[a]}, {names[b]}, {names[c]}")
                if M[M[a][b]][c] != M[a][M[b][c]]:
                    raise IngestionError("meet associativity", f"{names[a]}, {names[b]}, {names[c]}")
    if not any(all(J[z][x] == x for x in rng) for z in rng):
        raise IngestionError("boundedness", "no least element")
    for a in rng:
        for b in rng:
            for c in rng:
                if M[a][J[b][c]] != J[M[a][b]][M[a][c]]:
                    raise IngestionError("distributivity", f"{names[a]}, {names[b]}, {names[c]}")
