"""Signatures and the primitive extensions they classify.

A signature ``(g, H, q)`` names a join-irreducible ``g`` of a finite base,
one or two elements ``H = {h1, h2}`` and a label ``q``.  Either ``q`` lies
strictly between ``scdim h1`` and ``scdim g`` with ``h1 = h2 < g`` (a new
irreducible is inserted below ``g``), or ``q = scdim g`` and ``h1 v h2`` is
the predecessor ``g^-`` (``g`` is split in two).  Applying a signature is
done by surgery on the dual poset.
"""

from __future__ import annotations

from dataclasses import dataclass

from .embedding import Embedding
from .errors import ArgumentError, InvariantViolation, NotPrimitiveError
from .order import Element, Poset, iter_bits
from .scaled import ScaledBase, Sublattice, closure_masks, g_of


@dataclass(frozen=True)
class Signature:
    g: str
    H: frozenset
    q: int

    def __post_init__(self):
        object.__setattr__(self, "H", frozenset(self.H))

    def pair(self) -> tuple[Element, Element]:
        """``(h1, h2)`` in a fixed order (by mask); equal when |H| = 1."""
        hs = sorted(self.H, key=lambda h: (h.mask.bit_count(), h.mask))
        return (hs[0], hs[-1])

    def arity(self, base: ScaledBase) -> int:
        """1 when a new point is inserted below g, 2 when g is split."""
        return 2 if self.q == base.label(self.g) else 1

    def to_json(self) -> dict:
        return {"g": self.g, "H": sorted(h.key() for h in self.H), "q": self.q}

    def __repr__(self) -> str:
        hs = ",".join(sorted(repr(h) for h in self.H))
        return f"({self.g}, {{{hs}}}, {self.q})"


def signature_problem(base: ScaledBase, sig: Signature) -> str | None:
    """Name of the violated clause, or None if ``sig`` is a valid signature."""
    if sig.g not in base.poset.index:
        return f"g: {sig.g!r} is not a point of the base"
    if not isinstance(sig.q, int) or sig.q < 0:
        return "q: must be a non-negative integer"
    if not 1 <= len(sig.H) <= 2:
        return "H: must hold one or two elements"
    for h in sig.H:
        if not isinstance(h, Element) or (h.base is not base and h.base != base):
            return "H: elements must belong to the base"
    label = base.label(sig.g)
    gminus = base.predecessor(sig.g)
    h1, h2 = sig.pair()
    if sig.q < label:
        if len(sig.H) != 1:
            return "q < scdim g requires h1 = h2"
        if not h1 <= gminus:
            return "q < scdim g requires h1 < g"
        if not h1.scdim < sig.q:
            return "q < scdim g requires scdim h1 < q"
        return None
    if sig.q == label:
        if (h1 | h2) != gminus:
            return "q = scdim g requires h1 v h2 = g^-"
        return None
    return "q exceeds scdim g"


def enumerate_signatures(base: ScaledBase) -> list[Signature]:
    """Every valid signature of ``base``, in a deterministic order."""
    p = base.poset
    out: list[Signature] = []
    for i, g in enumerate(p.ids):
        label = base.labels[i]
        gm = p.below[i]
        below = p.downsets(within=gm)
        for x, m1 in enumerate(below):
            for m2 in below[x:]:
                if m1 | m2 == gm:
                    out.append(Signature(g, {Element(base, m1), Element(base, m2)}, label))
        for m in below:
            low = base.scdim_mask(m)
            for q in range(label - 1, -1, -1):
                if low < q:
                    out.append(Signature(g, {Element(base, m)}, q))
    return out


@dataclass
class Extension:
    """Result of a primitive extension: new base, generators, inclusion."""

    base: ScaledBase
    x1: Element
    x2: Element
    embedding: Embedding
    signature: Signature | None = None


def _fresh(taken: set[str], stem: str) -> str:
    name, k = stem, 1
    while name in taken:
        k += 1
        name = f"{stem}{k}"
    taken.add(name)
    return name


def apply_signature(base: ScaledBase, sig: Signature) -> Extension:
    """Build the primitive extension of ``base`` with signature ``sig``."""
    problem = signature_problem(base, sig)
    if problem:
        raise ArgumentError(f"invalid signature {sig!r}: {problem}")
    p = base.poset
    gi = p.index[sig.g]
    h1, h2 = sig.pair()
    labels = base.dimlabel
    taken = set(p.ids)
    max1 = [p.ids[i] for i in iter_bits(p.maximal_mask(h1.mask))]
    if sig.arity(base) == 1:
        x = _fresh(taken, f"{sig.g}_{sig.q}")
        ids = list(p.ids)
        ids.insert(gi, x)
        covers = list(p.covers) + [(m, x) for m in max1] + [(x, sig.g)]
        labels[x] = sig.q
        new = ScaledBase(Poset(ids, covers), base.d, labels)
        np_ = new.poset
        emb = Embedding(base, new, [np_.closure(np_.mask_of([y])) for y in p.ids])
        x1 = x2 = new.irreducible(x)
    else:
        xa = _fresh(taken, f"{sig.g}a")
        xb = _fresh(taken, f"{sig.g}b")
        ids = list(p.ids)
        ids[gi:gi + 1] = [xa, xb]
        max2 = [p.ids[i] for i in iter_bits(p.maximal_mask(h2.mask))]
        uppers = [hi for lo, hi in p.covers if lo == sig.g]
        covers = [(lo, hi) for lo, hi in p.covers if sig.g not in (lo, hi)]
        covers += [(m, xa) for m in max1] + [(m, xb) for m in max2]
        covers += [(xa, u) for u in uppers] + [(xb, u) for u in uppers]
        del labels[sig.g]
        labels[xa] = labels[xb] = sig.q
        new = ScaledBase(Poset(ids, covers), base.d, labels)
        np_ = new.poset
        images = []
        for y in p.ids:
            seeds = [xa, xb] if y == sig.g else [y]
            images.append(np_.closure(np_.mask_of(seeds)))
        emb = Embedding(base, new, images)
        x1, x2 = new.irreducible(xa), new.irreducible(xb)
    if new.poset.n != p.n + 1:
        raise InvariantViolation("primitive extension must add exactly one irreducible")
    return Extension(new, x1, x2, emb, sig)


def signature_of(
    old: ScaledBase,
    new: ScaledBase,
    x1: Element,
    x2: Element,
    embedding: Embedding | None = None,
) -> Signature:
    """Signature of the pair ``(x1, x2)`` of ``new`` over the image of ``old``.

    Raises :class:`NotPrimitiveError` naming the first failed condition.
    """
    emb = embedding if embedding is not None else Embedding.by_name(old, new)
    image = {emb.mask(m): m for m in old.poset.all_masks}
    if len(image) != len(old.poset.all_masks):
        raise ArgumentError("the embedding is not injective")
    for x in (x1, x2):
        if x.base is not new and x.base != new:
            raise ArgumentError("x1 and x2 must be elements of the new base")
    if x1.is_zero or x2.is_zero:
        raise NotPrimitiveError("P3", "x1 and x2 must be non-zero")
    s1, s2 = x1.scdim, x2.scdim
    if x1.c(int(s1)) != x1 or x2.c(int(s2)) != x2 or s1 != s2:
        raise NotPrimitiveError("P3", "x1 and x2 must be sc-pure of the same sc-dimension")
    gmask = g_of(x1.mask, image)
    old_g = image[gmask]
    op = old.poset
    gi = next((i for i in range(op.n) if op.down[i] == old_g), None)
    if gi is None:
        raise NotPrimitiveError("P1", "the least element of the old lattice above x1 is not join-irreducible")
    g = Element(new, gmask)
    gminus = Element(new, emb.mask(op.below[gi]))
    m1, m2 = gminus & x1, gminus & x2
    if m1.mask not in image or m2.mask not in image:
        raise NotPrimitiveError("P1", "g^- meet x_i must lie in the old lattice")
    if x1 == x2:
        if not (m1 <= x1 - m1 and x1 <= g - x1):
            raise NotPrimitiveError("P2", "need g^- ^ x1 << x1 << g when x1 = x2")
    else:
        if (x1 & x2).mask not in image:
            raise NotPrimitiveError("P2", "x1 ^ x2 must lie in the old lattice")
        if g - x1 != x2 or g - x2 != x1:
            raise NotPrimitiveError("P2", "need g - x1 = x2 and g - x2 = x1")
    return Signature(
        op.ids[gi],
        {Element(old, image[m1.mask]), Element(old, image[m2.mask])},
        int(s1),
    )


@dataclass
class TowerStep:
    signature: Signature
    base: ScaledBase
    sublattice: Sublattice
    x1: Element
    x2: Element


def tower_decompose(inner: Sublattice) -> list[TowerStep]:
    """Chain of primitive extensions from ``inner`` up to its ambient base.

    At each step the least (in insertion order) minimal irreducible of the
    ambient base outside the current lattice is adjoined, together with its
    partner ``g - x1`` unless it is already strongly below ``g``.
    """
    outer = inner.outer
    p = outer.poset
    cur = inner
    steps: list[TowerStep] = []
    while cur.base.poset.n < p.n:
        missing = [i for i in range(p.n) if p.down[i] not in cur.masks]
        if not missing:
            raise InvariantViolation("irreducible count differs but all irreducibles are present")
        least = next(i for i in missing if not any(p.below[i] >> j & 1 for j in missing))
        x1 = Element(outer, p.down[least])
        g = Element(outer, g_of(x1.mask, cur.masks))
        x2 = x1 if x1 <= g - x1 else g - x1
        nxt = Sublattice(outer, closure_masks(outer, [*cur.masks, x1.mask, x2.mask]), check=False)
        emb = Embedding(
            cur.base,
            nxt.base,
            [nxt.from_outer_mask(m) for m in cur.point_masks],
        )
        sig = signature_of(cur.base, nxt.base, nxt.from_outer(x1), nxt.from_outer(x2), emb)
        if nxt.base.poset.n != cur.base.poset.n + 1:
            raise InvariantViolation("tower step did not add exactly one irreducible")
        steps.append(TowerStep(sig, nxt.base, nxt, x1, x2))
        cur = nxt
    return steps
