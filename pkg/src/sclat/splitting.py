"""The splitting construction and the catenarity check.

``splitting_extension`` follows the inductive construction on ``scdim a``:
the part of ``u = (V g_i^-) - (b1 v b2)`` above dimension 0 is split
recursively, after which every component ``g_i`` of ``a`` is split by one
primitive extension with signature ``(g_i, {h_i1, h_i2}, scdim g_i)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .embedding import Embedding
from .errors import InvariantViolation, PreconditionError
from .order import Element, iter_bits
from .scaled import ScaledBase
from .signatures import Signature, apply_signature


@dataclass
class SplitResult:
    base: ScaledBase
    embedding: Embedding
    a1: Element
    a2: Element
    steps: list[Signature] = field(default_factory=list)


def _point_of(base: ScaledBase, mask: int) -> str:
    p = base.poset
    for i in range(p.n):
        if p.down[i] == mask:
            return p.ids[i]
    raise InvariantViolation("expected a join-irreducible element")


def _require(cond: bool, what: str) -> None:
    if not cond:
        raise InvariantViolation(f"splitting: {what}")


def _split(base: ScaledBase, a: Element, b1: Element, b2: Element) -> SplitResult:
    p = base.poset
    comps = list(iter_bits(p.maximal_mask(a.mask)))
    d = a.scdim
    if d == 0:
        if len(comps) == 1:
            g = p.ids[comps[0]]
            ext = apply_signature(base, Signature(g, {base.zero}, 0))
            return SplitResult(ext.base, ext.embedding, ext.x1, ext.x2, [ext.signature])
        a1 = Element(base, p.down[comps[0]])
        return SplitResult(base, Embedding.identity(base), a1, a - a1)

    gminus = [Element(base, p.below[i]) for i in comps]
    top = base.zero
    for gm in gminus:
        top = top | gm
    u = top - (b1 | b2)
    u_star = u - u.c(0)

    # split u* first (possibly trivially), keeping every g_i irreducible
    if u.scdim > 0:
        inner = _split(base, u_star, b1 & u_star, b2 & u_star)
        cur, emb, steps = inner.base, inner.embedding, list(inner.steps)
        u1s, u2s = inner.a1, inner.a2
        _require(all(inner.base.label(x) > 0 for x in _new_points(inner)), "recursive step created an atom of label 0")
    else:
        cur, emb, steps = base, Embedding.identity(base), []
        u1s = u2s = base.zero
    for i, gm in zip(comps, gminus):
        gi = Element(cur, emb.images[i])
        _require(cur.predecessor(_point_of(cur, gi.mask)) == emb(gm), "g_i lost its predecessor")

    u1 = emb(u.c(0)) | u1s
    u2 = u2s
    B1, B2 = emb(b1), emb(b2)
    _require((B1 | u1) & (B2 | u2) == emb(b1 & b2), "(b1 v u1) ^ (b2 v u2) != b1 ^ b2")

    parts1, parts2 = [], []
    for i, gm in zip(comps, gminus):
        gm_c = emb(gm)
        h1, h2 = gm_c & (B1 | u1), gm_c & (B2 | u2)
        _require((h1 | h2) == gm_c, "h_i1 v h_i2 != g_i^-")
        g_name = _point_of(cur, emb.images[i])
        sig = Signature(g_name, {h1, h2}, cur.label(g_name))
        ext = apply_signature(cur, sig)
        steps.append(sig)
        # orient the new pair so that the first point sits over h_i1
        x1, x2 = ext.x1, ext.x2
        if ext.embedding(h1) != _pred(x1) and ext.embedding(h1) == _pred(x2):
            x1, x2 = x2, x1
        emb = emb.then(ext.embedding)
        parts1 = [ext.embedding(x) for x in parts1] + [x1]
        parts2 = [ext.embedding(x) for x in parts2] + [x2]
        B1, B2, u1, u2 = (ext.embedding(v) for v in (B1, B2, u1, u2))
        cur = ext.base
    a1 = parts1[0]
    for x in parts1[1:]:
        a1 = a1 | x
    a2 = parts2[0]
    for x in parts2[1:]:
        a2 = a2 | x
    return SplitResult(cur, emb, a1, a2, steps)


def _pred(x: Element) -> Element:
    """Predecessor of a join-irreducible element."""
    p = x.base.poset
    (i,) = iter_bits(p.maximal_mask(x.mask))
    return Element(x.base, p.below[i])


def _new_points(res: SplitResult) -> list[str]:
    """Points of the extension that are not images of old points."""
    old = set(res.embedding.images)
    tp = res.base.poset
    return [tp.ids[i] for i in range(tp.n) if tp.down[i] not in old]


def splitting_extension(base: ScaledBase, a: Element, b1: Element, b2: Element) -> SplitResult:
    """Finite extension of ``base`` with ``a1, a2`` splitting ``a`` along ``b1, b2``.

    Postconditions checked on return: ``a1, a2`` non-zero, ``a1 >= b1``,
    ``a2 >= b2``, ``a1 = a - a2``, ``a2 = a - a1``, ``a1 ^ a2 = b1 ^ b2``,
    every new irreducible lies below ``a``, and when ``C^0(a) = 0`` no new
    irreducible of label 0 is created.
    """
    for x in (a, b1, b2):
        if x.base is not base and x.base != base:
            raise PreconditionError("a, b1 and b2 must be elements of the base")
    if a.is_zero:
        raise PreconditionError("a must be non-zero")
    if not (b1 | b2) <= a - (b1 | b2):
        raise PreconditionError("b1 v b2 must be strongly below a")
    res = _split(base, a, b1, b2)
    emb = res.embedding
    A, B1, B2 = emb(a), emb(b1), emb(b2)
    _require(not res.a1.is_zero and not res.a2.is_zero, "a1, a2 must be non-zero")
    _require(B1 <= res.a1 and B2 <= res.a2, "a_i >= b_i")
    _require(res.a1 == A - res.a2 and res.a2 == A - res.a1, "a1 = a - a2 and a2 = a - a1")
    _require((res.a1 & res.a2) == (B1 & B2), "a1 ^ a2 = b1 ^ b2")
    fresh = _new_points(res)
    tp = res.base.poset
    _require(all(tp.down[tp.index[x]] & ~A.mask == 0 for x in fresh), "new irreducibles lie below a")
    if a.c(0).is_zero:
        _require(all(res.base.label(x) > 0 for x in fresh), "no new atom of label 0")
    return res


def label0_atoms(base: ScaledBase) -> list[str]:
    """Minimal points labelled 0, i.e. the atoms ``x`` with ``C^0(x) = x``."""
    p = base.poset
    return [p.ids[i] for i in range(p.n) if p.below[i] == 0 and base.labels[i] == 0]


@dataclass
class CatenarityVerdict:
    ok: bool
    witness: dict | None = None
    method: str = "elements"

    def to_json(self) -> dict:
        return {"catenary": self.ok, "method": self.method, "witness": self.witness}


def check_catenarity(base: ScaledBase, method: str = "auto", limit: int = 512) -> CatenarityVerdict:
    """Check the catenarity property; a failure carries ``(r, q, p, c, a)``.

    ``method="elements"`` searches all pairs ``c <= a`` of the lattice.
    ``method="points"`` uses the equivalent condition on the labelled
    poset: below every point ``y`` each label ``q <= D(y)`` occurs, and
    between points ``x <= y`` every intermediate label occurs.  ``auto``
    uses the element search when ``2**n <= limit`` for ``n`` points, which
    bounds the number of elements without listing them.
    """
    if method == "auto":
        method = "elements" if 2 ** base.poset.n <= limit else "points"
    if method == "points":
        return _catenarity_points(base)
    masks = base.poset.all_masks
    top = base.d
    pure = {k: [m for m in masks if m and base.ck_mask(m, k) == m] for k in range(top + 1)}
    for r in range(top + 1):
        for q in range(r, top + 1):
            for p in range(q, top + 1):
                cs = [0] + pure[r]
                for a in pure[p]:
                    for c in cs:
                        if c & ~a:
                            continue
                        if not any(c & ~b == 0 and b & ~a == 0 for b in pure[q]):
                            return CatenarityVerdict(
                                False,
                                {"r": r, "q": q, "p": p,
                                 "c": Element(base, c).key(), "a": Element(base, a).key()},
                                "elements",
                            )
    return CatenarityVerdict(True, None, "elements")


def _catenarity_points(base: ScaledBase) -> CatenarityVerdict:
    p = base.poset
    lab = base.labels
    for y in range(p.n):
        below = p.down[y]
        have = {lab[z] for z in iter_bits(below)}
        for q in range(lab[y] + 1):
            if q not in have:
                return CatenarityVerdict(
                    False,
                    {"r": 0, "q": q, "p": lab[y], "c": [], "a": [p.ids[y]]},
                    "points",
                )
        for x in iter_bits(p.below[y]):
            between = {lab[z] for z in iter_bits(below) if p.down[z] >> x & 1}
            for q in range(lab[x], lab[y] + 1):
                if q not in between:
                    return CatenarityVerdict(
                        False,
                        {"r": lab[x], "q": q, "p": lab[y], "c": [p.ids[x]], "a": [p.ids[y]]},
                        "points",
                    )
    return CatenarityVerdict(True, None, "points")
