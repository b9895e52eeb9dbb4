"""Maps between finite lattices and the embedding checks for them."""

from __future__ import annotations

from collections.abc import Callable, Mapping
from dataclasses import dataclass, field

from .errors import ArgumentError
from .order import Element, iter_bits
from .scaled import ScaledBase


class Embedding:
    """A join-preserving map given by the image of every source irreducible.

    ``images[i]`` is the target mask of the principal downset of source
    point ``i``; the image of any element is the join of the images of its
    points.  Extensions built by signature application and splitting are
    described this way.
    """

    def __init__(self, source: ScaledBase, target: ScaledBase, images):
        self.source = source
        self.target = target
        self.images: tuple[int, ...] = tuple(images)

    @classmethod
    def identity(cls, base: ScaledBase) -> "Embedding":
        return cls(base, base, base.poset.down)

    @classmethod
    def by_name(cls, source: ScaledBase, target: ScaledBase) -> "Embedding":
        """Inclusion that sends every point to the point of the same name."""
        tp = target.poset
        try:
            return cls(source, target, [tp.down[tp.index[x]] for x in source.poset.ids])
        except KeyError as exc:
            raise ArgumentError(f"point {exc.args[0]} missing from the target") from None

    def mask(self, m: int) -> int:
        out = 0
        for i in iter_bits(m):
            out |= self.images[i]
        return out

    def __call__(self, a: Element) -> Element:
        return Element(self.target, self.mask(a.mask))

    def then(self, other: "Embedding") -> "Embedding":
        """Composite map: first ``self``, then ``other``."""
        return Embedding(self.source, other.target, [other.mask(m) for m in self.images])

    def as_dict(self) -> dict[Element, Element]:
        return {a: self(a) for a in self.source.elements()}


@dataclass
class EmbedVerdict:
    is_embedding: bool
    direct: bool
    criterion: bool
    failures: list[str] = field(default_factory=list)
    consistent: bool = True

    def to_json(self) -> dict:
        return {
            "is_embedding": self.is_embedding,
            "direct": self.direct,
            "criterion": self.criterion,
            "consistent": self.consistent,
            "failures": self.failures[:20],
        }


def embed_check(
    source: ScaledBase,
    mapping: Mapping[Element, object] | Callable[[Element], object],
    target_top=None,
    max_k: int | None = None,
) -> EmbedVerdict:
    """Check that ``mapping`` is an embedding of the labelled lattice of ``source``.

    Route (i) tests the definition directly: injectivity, 0 and 1, and
    commutation with join, meet, difference and every ``C^k``.  Route (ii)
    tests the criterion: a lattice embedding sending every join-irreducible
    to an sc-pure value of the same sc-dimension.  The two routes must agree;
    a disagreement is reported as an internal inconsistency.

    Target values may be lattice elements or special linear sets; both
    support ``| & -``, ``.c(k)`` and ``.scdim``.  ``target_top`` is the top
    of the target lattice; by default it is taken from element targets and
    is the image of 1 for linear sets.
    """
    elems = source.elements()
    if callable(mapping) and not isinstance(mapping, Mapping):
        image = {a: mapping(a) for a in elems}
    else:
        missing = [a for a in elems if a not in mapping]
        if missing:
            raise ArgumentError(f"map undefined on {len(missing)} source elements, e.g. {missing[0]!r}")
        image = {a: mapping[a] for a in elems}
    one, zero = source.one, source.zero
    if target_top is None:
        sample = image[one]
        target_top = sample.base.one if isinstance(sample, Element) else sample
    max_k = source.d + 1 if max_k is None else max_k
    fails_direct: list[str] = []
    fails_crit: list[str] = []

    def is_empty(x) -> bool:
        return x.is_zero if isinstance(x, Element) else x.is_empty

    values = [image[a] for a in elems]
    if len(set(values)) != len(values):
        msg = "not injective"
        fails_direct.append(msg)
        fails_crit.append(msg)
    if not is_empty(image[zero]):
        fails_direct.append("0 not sent to 0")
        fails_crit.append("0 not sent to 0")
    if image[one] != target_top:
        fails_direct.append("1 not sent to the top")
        fails_crit.append("1 not sent to the top")
    for a in elems:
        fa = image[a]
        for k in range(max_k + 1):
            if image[a.c(k)] != fa.c(k):
                fails_direct.append(f"C^{k}({a!r})")
        for b in elems:
            fb = image[b]
            if image[a | b] != (fa | fb):
                msg = f"join({a!r}, {b!r})"
                fails_direct.append(msg)
                fails_crit.append(msg)
            if image[a & b] != (fa & fb):
                msg = f"meet({a!r}, {b!r})"
                fails_direct.append(msg)
                fails_crit.append(msg)
            if image[a - b] != (fa - fb):
                fails_direct.append(f"diff({a!r}, {b!r})")
    for x in source.poset.ids:
        g = source.irreducible(x)
        fg = image[g]
        s = fg.scdim
        if s != g.scdim or fg.c(int(s)) != fg:
            fails_crit.append(f"irreducible {x} not sent to an sc-pure value of sc-dimension {g.scdim}")
    direct, crit = not fails_direct, not fails_crit
    return EmbedVerdict(
        is_embedding=direct and crit,
        direct=direct,
        criterion=crit,
        failures=fails_direct + [f for f in fails_crit if f not in fails_direct],
        consistent=direct == crit,
    )
