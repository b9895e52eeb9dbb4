"""Dimension-labelled posets as finite subscaled lattices.

A :class:`ScaledBase` is a poset together with a strictly increasing label
map into ``{0..d}``.  The operator ``C^k`` keeps the components of an element
whose label is ``k``; the sc-dimension of an element is the largest label
among its components.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from functools import cached_property

from .errors import ArgumentError, IllFormedInputError
from .order import NEG_INF, Dimension, Element, LatticeTables, Poset, iter_bits, recover_poset


class ScaledBase:
    """Poset of join-irreducibles with strictly increasing dimension labels."""

    def __init__(self, poset: Poset, d: int, dimlabel: Mapping[str, int]):
        if not isinstance(d, int) or d < 0:
            raise IllFormedInputError(f"d must be a non-negative integer, got {d!r}")
        missing = [x for x in poset.ids if x not in dimlabel]
        if missing:
            raise IllFormedInputError(f"no dimension label for {', '.join(missing)}")
        extra = [x for x in dimlabel if x not in poset.index]
        if extra:
            raise IllFormedInputError(f"labels for unknown points {', '.join(map(str, extra))}")
        labels = []
        for x in poset.ids:
            v = dimlabel[x]
            if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v <= d:
                raise IllFormedInputError(f"label of {x} must be an integer in 0..{d}, got {v!r}")
            labels.append(v)
        for lo, hi in poset.cover_pairs:
            if labels[lo] >= labels[hi]:
                raise IllFormedInputError(
                    f"labels not strictly increasing: {poset.ids[lo]} < {poset.ids[hi]} "
                    f"but D = {labels[lo]}, {labels[hi]}"
                )
        self.poset = poset
        self.d = d
        self.labels: tuple[int, ...] = tuple(labels)
        self.label_masks: tuple[int, ...] = tuple(
            sum(1 << i for i, v in enumerate(labels) if v == k) for k in range(d + 1)
        )

    @classmethod
    def build(cls, d: int, labels: Mapping[str, int], covers: Iterable = ()) -> "ScaledBase":
        """Convenience constructor: points are the keys of ``labels``."""
        return cls(Poset(list(labels), covers), d, labels)

    @property
    def dimlabel(self) -> dict[str, int]:
        return dict(zip(self.poset.ids, self.labels))

    @property
    def ids(self) -> tuple[str, ...]:
        return self.poset.ids

    def label(self, ident: str) -> int:
        return self.labels[self.poset._lookup(ident)]

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, ScaledBase):
            return NotImplemented
        return self.d == other.d and self.labels == other.labels and self.poset == other.poset

    def __hash__(self) -> int:
        return hash((self.poset, self.d, self.labels))

    def __repr__(self) -> str:
        pts = ", ".join(f"{x}:{v}" for x, v in zip(self.poset.ids, self.labels))
        covers = ", ".join(f"{a}<{b}" for a, b in self.poset.covers)
        return f"ScaledBase(d={self.d}; {pts}; {covers})"

    # ---- mask level -------------------------------------------------
    def ck_mask(self, mask: int, k: int) -> int:
        if k > self.d:
            return 0
        p = self.poset
        out = 0
        for i in iter_bits(p.maximal_mask(mask) & self.label_masks[k]):
            out |= p.down[i]
        return out

    def scdim_mask(self, mask: int) -> Dimension:
        if not mask:
            return NEG_INF
        return max(self.labels[i] for i in iter_bits(self.poset.maximal_mask(mask)))

    # ---- elements ---------------------------------------------------
    def element(self, *ids: str) -> Element:
        return Element(self, self.poset.closure(self.poset.mask_of(ids)))

    def from_mask(self, mask: int) -> Element:
        return Element(self, mask)

    @property
    def zero(self) -> Element:
        return Element(self, 0)

    @property
    def one(self) -> Element:
        return Element(self, self.poset.full)

    def elements(self) -> list[Element]:
        return [Element(self, m) for m in self.poset.all_masks]

    def irreducible(self, ident: str) -> Element:
        return Element(self, self.poset.down[self.poset._lookup(ident)])

    def predecessor(self, ident: str) -> Element:
        """``g^-``: the join of everything strictly below the irreducible g."""
        return Element(self, self.poset.below[self.poset._lookup(ident)])

    def point_colours(self) -> list[int]:
        return list(self.labels)

    def atoms(self) -> list[str]:
        """Minimal points, i.e. the atoms of the lattice."""
        p = self.poset
        return [p.ids[i] for i in range(p.n) if not p.below[i]]

    @cached_property
    def top_scdim(self) -> Dimension:
        return self.scdim_mask(self.poset.full)


def _scaled(a: Element) -> ScaledBase:
    if not isinstance(a.base, ScaledBase):
        raise ArgumentError("operation needs an element of a ScaledBase")
    return a.base


def c_k(a: Element, k: int) -> Element:
    """Join of the components of ``a`` whose label is ``k``."""
    if not isinstance(k, int) or k < 0:
        raise ArgumentError(f"C^k needs k >= 0, got {k!r}")
    base = _scaled(a)
    return Element(base, base.ck_mask(a.mask, k))


def scdim(a: Element) -> Dimension:
    return _scaled(a).scdim_mask(a.mask)


def is_k_sc_pure(a: Element, k: int) -> bool:
    return c_k(a, k) == a


def is_sc_pure(a: Element) -> bool:
    """Pure of its own sc-dimension (zero counts as pure)."""
    s = scdim(a)
    return a.is_zero or is_k_sc_pure(a, int(s))


def g_of(x: int, family: Iterable[int]) -> int:
    """Meet of the members of ``family`` (downset masks) lying above ``x``."""
    out = -1
    for m in family:
        if x & ~m == 0:
            out &= m
    return out


# ---- substructures ---------------------------------------------------


def closure_masks(base: ScaledBase, seeds: Iterable[int]) -> frozenset[int]:
    """Least set of masks containing 0, 1 and ``seeds``, closed under all ops."""
    p = base.poset
    ks = range(base.d + 1)
    seen: set[int] = set()
    todo = [0, p.full, *seeds]
    while todo:
        m = todo.pop()
        if m in seen:
            continue
        seen.add(m)
        cand: set[int] = {base.ck_mask(m, k) for k in ks}
        for o in list(seen):
            cand.update((m | o, m & o, p.diff_mask(m, o), p.diff_mask(o, m)))
        todo.extend(c for c in cand if c not in seen)
    return frozenset(seen)


def _mask_name(p: Poset, m: int) -> str:
    for i in range(p.n):
        if p.down[i] == m:
            return p.ids[i]
    return "+".join(p.ids[i] for i in iter_bits(p.maximal_mask(m)))


class Sublattice:
    """A set of elements of ``outer`` closed under every operation.

    ``base`` is its own induced presentation: the poset of its
    join-irreducibles (recovered from explicit tables) labelled by their
    sc-dimension in ``outer``.
    """

    def __init__(self, outer: ScaledBase, masks: Iterable[int], check: bool = True):
        self.outer = outer
        self.masks = frozenset(masks)
        if check:
            closed = closure_masks(outer, self.masks)
            if closed != self.masks:
                raise ArgumentError(
                    f"not a substructure: closure adds {len(closed) - len(self.masks)} elements"
                )
        p = outer.poset
        order = sorted(self.masks, key=lambda m: (m.bit_count(), m))
        pos = {m: i for i, m in enumerate(order)}
        names = tuple(_mask_name(p, m) for m in order)
        tables = LatticeTables(
            names,
            tuple(tuple(pos[a | b] for b in order) for a in order),
            tuple(tuple(pos[a & b] for b in order) for a in order),
        )
        sub = recover_poset(tables, verify=False)
        name_to_mask = dict(zip(names, order))
        self.point_masks: tuple[int, ...] = tuple(name_to_mask[x] for x in sub.ids)
        labels = {x: int(outer.scdim_mask(name_to_mask[x])) for x in sub.ids}
        self.base = ScaledBase(sub, outer.d, labels)

    @property
    def elements(self) -> list[Element]:
        return [Element(self.outer, m) for m in sorted(self.masks, key=lambda m: (m.bit_count(), m))]

    def __len__(self) -> int:
        return len(self.masks)

    def __contains__(self, a: Element) -> bool:
        return a.mask in self.masks

    def to_outer_mask(self, mask: int) -> int:
        out = 0
        for i in iter_bits(mask):
            out |= self.point_masks[i]
        return out

    def to_outer(self, a: Element) -> Element:
        return Element(self.outer, self.to_outer_mask(a.mask))

    def from_outer(self, a: Element) -> Element:
        if a.mask not in self.masks:
            raise ArgumentError(f"{a!r} is not in the substructure")
        return Element(self.base, self.from_outer_mask(a.mask))

    def from_outer_mask(self, mask: int) -> int:
        return sum(1 << i for i, pm in enumerate(self.point_masks) if pm & ~mask == 0)

    def embedding(self) -> dict[Element, Element]:
        return {Element(self.base, m): self.to_outer(Element(self.base, m)) for m in self.base.poset.all_masks}


def generated_substructure(base: ScaledBase, elements: Iterable[Element] = ()) -> Sublattice:
    masks = closure_masks(base, [e.mask for e in elements])
    return Sublattice(base, masks, check=False)


def prime_substructure(base: ScaledBase) -> Sublattice:
    """The substructure generated by the empty set."""
    return generated_substructure(base)
