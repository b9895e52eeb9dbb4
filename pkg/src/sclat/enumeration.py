"""Enumeration of dimension-labelled posets up to isomorphism."""

from __future__ import annotations

from collections.abc import Iterable, Iterator

from .canon import canonical_form
from .order import Poset, iter_bits
from .scaled import ScaledBase


def _extend(base: ScaledBase, d: int) -> Iterator[ScaledBase]:
    """Every base obtained by adding one new maximal point."""
    p = base.poset
    name = f"p{p.n}"
    for down in p.all_masks:
        top = max((base.labels[i] for i in iter_bits(down)), default=-1)
        maximal = [p.ids[i] for i in iter_bits(p.maximal_mask(down))]
        for label in range(top + 1, d + 1):
            labels = dict(zip(p.ids, base.labels))
            labels[name] = label
            covers = list(p.covers) + [(m, name) for m in maximal]
            yield ScaledBase(Poset([*p.ids, name], covers), d, labels)


def enumerate_bases(
    d: int,
    max_irr: int,
    asc_mode: bool = False,
    k_cap: Iterable[int] = (),
) -> Iterator:
    """All labelled posets with at most ``max_irr`` points, one per isomorphism class.

    Bases come out by increasing size and, within a size, in discovery
    order, which is deterministic.  With ``asc_mode`` each base is followed
    by every assignment of weights from ``k_cap`` (plus 0) to its points of
    label 0, again up to isomorphism.
    """
    level = [ScaledBase(Poset([]), d, {})]
    for size in range(max_irr + 1):
        for base in level:
            if asc_mode:
                yield from _weightings(base, k_cap)
            else:
                yield base
        if size == max_irr:
            break
        seen: set[bytes] = set()
        nxt = []
        for base in level:
            for ext in _extend(base, d):
                key = canonical_form(ext)
                if key not in seen:
                    seen.add(key)
                    nxt.append(ext)
        level = nxt


def _weightings(base: ScaledBase, k_cap: Iterable[int]):
    from itertools import product

    from .asc import AscBase

    values = sorted(set(k_cap) | {0})
    zero_pts = [x for x, v in zip(base.poset.ids, base.labels) if v == 0]
    seen: set[bytes] = set()
    for combo in product(values, repeat=len(zero_pts)):
        ab = AscBase(base, dict(zip(zero_pts, combo)))
        key = canonical_form(ab)
        if key not in seen:
            seen.add(key)
            yield ab
