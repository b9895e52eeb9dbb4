"""Atom-weighted bases: the predicates At_k and the function asc.

An :class:`AscBase` attaches a non-negative weight to every point of label
0 (these are exactly the atoms ``x`` with ``C^0(x) = x``).  Weight 0 means
"no finite atom count".  The asc value of an element ``a`` is the sum of
the weights of its components when ``a`` has sc-dimension 0 and every
component has positive weight, and 0 otherwise; ``At_k(a)`` holds iff
``asc(a) = k`` with ``k >= 1``.
"""

from __future__ import annotations

from collections.abc import Callable, Iterable, Mapping
from dataclasses import dataclass, field
from itertools import product

from .axioms import Verdict
from .canon import canonical_form
from .embedding import EmbedVerdict, embed_check
from .errors import ArgumentError, IllFormedInputError, RefusalError
from .order import Element, iter_bits
from .scaled import ScaledBase, Sublattice, prime_substructure
from .signatures import Signature, apply_signature, enumerate_signatures, signature_problem


class AscBase:
    """A scaled base together with atom weights."""

    def __init__(self, base: ScaledBase, weights: Mapping[str, int] | None = None):
        weights = dict(weights or {})
        for x, w in weights.items():
            if x not in base.poset.index:
                raise IllFormedInputError(f"weight given for unknown point {x!r}")
            if not isinstance(w, int) or isinstance(w, bool) or w < 0:
                raise IllFormedInputError(f"weight of {x} must be a non-negative integer")
            if w > 0 and base.label(x) != 0:
                raise IllFormedInputError(f"positive weight on {x}, whose label is {base.label(x)} (must be 0)")
        self.base = base
        self.weights: tuple[int, ...] = tuple(weights.get(x, 0) for x in base.poset.ids)

    # delegate the presentation so canonical forms and enumerators work unchanged
    @property
    def poset(self):
        return self.base.poset

    @property
    def d(self) -> int:
        return self.base.d

    @property
    def labels(self):
        return self.base.labels

    def weight(self, x: str) -> int:
        return self.weights[self.base.poset.index[x]]

    def weight_map(self) -> dict[str, int]:
        return {x: w for x, w in zip(self.base.poset.ids, self.weights) if w}

    def point_colours(self) -> list:
        return [[lab, w] for lab, w in zip(self.base.labels, self.weights)]

    def asc_mask(self, mask: int) -> int:
        p = self.base.poset
        if mask == 0:
            return 0
        total = 0
        for i in iter_bits(p.maximal_mask(mask)):
            if self.base.labels[i] != 0 or self.weights[i] == 0:
                return 0
            total += self.weights[i]
        return total

    def asc(self, a: Element) -> int:
        return self.asc_mask(a.mask)

    def at(self, k: int, a: Element) -> bool:
        if k < 1:
            raise ArgumentError("At_k needs k >= 1")
        return self.asc(a) == k

    def is_standard(self) -> bool:
        return all(w > 0 for w, lab in zip(self.weights, self.base.labels) if lab == 0)

    def elements(self) -> list[Element]:
        return self.base.elements()

    def __eq__(self, other) -> bool:
        return isinstance(other, AscBase) and self.base == other.base and self.weights == other.weights

    def __hash__(self) -> int:
        return hash((self.base, self.weights))

    def __repr__(self) -> str:
        return f"AscBase({self.base!r}, {self.weight_map()})"


def asc(abase: AscBase, a: Element) -> int:
    return abase.asc(a)


# ---- axioms -------------------------------------------------------------


@dataclass
class AscReport:
    verdicts: dict[str, Verdict]

    @property
    def ok(self) -> bool:
        return all(self.verdicts[n].passed for n in ("ASC1", "ASC2", "ASC3"))

    @property
    def standard(self) -> bool:
        return self.verdicts["standard"].passed

    @property
    def failures(self) -> list[Verdict]:
        return [v for n, v in self.verdicts.items() if n != "standard" and not v.passed]

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "standard": self.standard,
            "verdicts": [v.to_json() for v in self.verdicts.values()],
        }


def check_asc_axioms(abase: AscBase) -> AscReport:
    """Exhaustive ASC1-ASC3 plus standardness (informational)."""
    base = abase.base
    p = base.poset
    masks = p.all_masks
    values = {m: abase.asc_mask(m) for m in masks}
    kmax = max(values.values(), default=0) + 1
    verdicts: dict[str, Verdict] = {}

    def name(m):
        return repr(Element(base, m))

    # ASC1: the At_k (k >= 1) are pairwise disjoint
    bad = None
    for m in masks:
        holding = [k for k in range(1, kmax + 1) if values[m] == k]
        if len(holding) > 1:
            bad = {"a": name(m), "k": holding}
            break
    verdicts["ASC1"] = Verdict("ASC1", bad is None, len(masks), bad)

    # ASC2: At_k(a) -> |L(a)| <= 2^k and scdim a = 0
    bad = None
    for m in masks:
        k = values[m]
        if k > 0:
            size = sum(1 for x in masks if x & ~m == 0)
            if size > 2 ** k or base.scdim_mask(m) != 0:
                bad = {"a": name(m), "k": k, "size": size}
                break
    verdicts["ASC2"] = Verdict("ASC2", bad is None, len(masks), bad)

    # ASC3: for disjoint non-zero a1, a2 with a = a1 v a2,
    #       At_k(a) <-> exists 0 < l < k with At_l(a1) and At_{k-l}(a2)
    bad = None
    for m1 in masks:
        if not m1:
            continue
        for m2 in masks:
            if not m2 or m1 & m2:
                continue
            a = m1 | m2
            for k in range(1, kmax + 1):
                lhs = values[a] == k
                rhs = any(values[m1] == l and values[m2] == k - l for l in range(1, k))
                if lhs != rhs:
                    bad = {"a": name(a), "a1": name(m1), "a2": name(m2), "k": k}
                    break
            if bad:
                break
        if bad:
            break
    verdicts["ASC3"] = Verdict("ASC3", bad is None, len(masks) ** 2, bad)

    bad = next((name(m) for m in masks if base.scdim_mask(m) == 0 and values[m] == 0), None)
    verdicts["standard"] = Verdict("standard", bad is None, len(masks), None if bad is None else {"a": bad})
    return AscReport(verdicts)


# ---- completions ----------------------------------------------------------


def prime_asc(abase: AscBase) -> tuple[Sublattice, AscBase]:
    """Prime substructure with its induced weights (asc of each atom)."""
    sub = prime_substructure(abase.base)
    weights = {}
    for x, m in zip(sub.base.poset.ids, sub.point_masks):
        if sub.base.label(x) == 0:
            weights[x] = abase.asc_mask(m)
    return sub, AscBase(sub.base, weights)


def completion_invariant(abase: AscBase | ScaledBase) -> bytes:
    """Canonical form of the prime substructure, atoms coloured by asc."""
    if isinstance(abase, ScaledBase):
        return canonical_form(prime_substructure(abase).base)
    _, pa = prime_asc(abase)
    return canonical_form(pa)


def pre_algebraic_equiv(b1: AscBase, b2: AscBase) -> bool:
    """Equality of completion invariants, for standard inputs only."""
    for tag, b in (("first", b1), ("second", b2)):
        if not b.is_standard():
            raise RefusalError(
                f"the {tag} base is not standard: some element of sc-dimension 0 has no finite atom count; "
                "the criterion applies only to standard models"
            )
    return completion_invariant(b1) == completion_invariant(b2)


# ---- ASC signatures ---------------------------------------------------------


@dataclass(frozen=True)
class AscSignature:
    g: str
    H: frozenset  # of (Element, int) pairs
    q: int

    def __post_init__(self):
        object.__setattr__(self, "H", frozenset(self.H))

    def pairs(self) -> tuple[tuple[Element, int], tuple[Element, int]]:
        hs = sorted(self.H, key=lambda hk: (hk[0].mask.bit_count(), hk[0].mask, hk[1]))
        return hs[0], hs[-1]

    def sc(self) -> Signature:
        return Signature(self.g, {h for h, _ in self.H}, self.q)

    def to_json(self) -> dict:
        (h1, k1), (h2, k2) = self.pairs()
        return {"g": self.g, "H": [h1.key(), h2.key()], "q": self.q, "K": [k1, k2]}

    def __repr__(self) -> str:
        inner = ",".join(sorted(f"({h!r},{k})" for h, k in self.H))
        return f"({self.g}, {{{inner}}}, {self.q})"


def asc_signature_problem(abase: AscBase, sig: AscSignature) -> str | None:
    base = abase.base
    if not 1 <= len(sig.H) <= 2:
        return "H: must hold one or two pairs"
    for h, k in sig.H:
        if not isinstance(k, int) or k < 0:
            return "K: values must be non-negative integers"
    sc = sig.sc()
    prob = signature_problem(base, sc)
    if prob:
        return prob
    (h1, k1), (h2, k2) = sig.pairs()
    g = base.irreducible(sig.g)
    ag = abase.asc(g)
    top = base.label(sig.g)
    if sig.q < top and k1 != k2:
        return "condition 1: q < scdim g requires k1 = k2"
    if sig.q != 0 and (k1 or k2):
        return "condition 2: q != 0 requires k1 = k2 = 0"
    if (k1 == 0 or k2 == 0) and ag != 0:
        return "condition 3: k1 = 0 or k2 = 0 requires asc(g) = 0"
    if k1 and k2 and top == 0 and ag != k1 + k2:
        return "condition 4: scdim g = 0 with k1, k2 != 0 requires asc(g) = k1 + k2"
    return None


def default_cap(abase: AscBase) -> set[int]:
    return set(abase.weights) | {0}


def enumerate_asc_signatures(abase: AscBase, cap: Iterable[int] | None = None) -> list[AscSignature]:
    """All ASC signatures whose k-values lie in ``cap`` (default: weights of the base and 0)."""
    if cap is None:
        ks = sorted(default_cap(abase))
    else:
        ks = sorted(set(cap))
        if not ks:
            raise ArgumentError("the k-value cap set is empty")
        ks = sorted(set(ks) | {0})
    out: list[AscSignature] = []
    seen = set()
    for sc in enumerate_signatures(abase.base):
        h1, h2 = sc.pair()
        for k1, k2 in product(ks, repeat=2):
            sig = AscSignature(sc.g, {(h1, k1), (h2, k2)}, sc.q)
            if h1 == h2 and sc.arity(abase.base) == 1 and k1 != k2:
                continue
            if sig in seen:
                continue
            if asc_signature_problem(abase, sig) is None:
                seen.add(sig)
                out.append(sig)
    return out


@dataclass
class AscExtension:
    base: AscBase
    x1: Element
    x2: Element
    embedding: object
    report: AscReport | None = field(repr=False, default=None)


def apply_asc_signature(abase: AscBase, sig: AscSignature) -> AscExtension:
    """Primitive extension with weights ``k1, k2`` on the new generators."""
    prob = asc_signature_problem(abase, sig)
    if prob:
        raise ArgumentError(f"invalid ASC signature {sig!r}: {prob}")
    (h1, k1), (h2, k2) = sig.pairs()
    ext = apply_signature(abase.base, sig.sc())
    new = ext.base
    x1, x2 = ext.x1, ext.x2
    emb = ext.embedding
    # orient so that x1 sits over h1
    pred = new.poset
    (i1,) = iter_bits(pred.maximal_mask(x1.mask))
    if pred.below[i1] != emb.mask(h1.mask):
        x1, x2 = x2, x1
    weights = {x: w for x, w in abase.weight_map().items() if x in pred.index}
    for x, k in ((x1, k1), (x2, k2)):
        (name,) = x.maximals
        if k:
            weights[name] = k
    out = AscBase(new, weights)
    report = check_asc_axioms(out)
    if not report.ok:
        raise ArgumentError(f"extension violates {', '.join(v.name for v in report.failures)}")
    for a in abase.base.poset.ids:
        i = abase.base.poset.index[a]
        if abase.base.poset.below[i] == 0:
            if out.asc(emb(abase.base.irreducible(a))) != abase.weights[i]:
                raise ArgumentError(f"atom {a} changes its asc value")
    return AscExtension(out, x1, x2, emb, report)


# ---- ASC embedding mode -------------------------------------------------------


@dataclass
class AscEmbedVerdict:
    sc: EmbedVerdict
    atoms_ok: bool
    failures: list[str]

    @property
    def is_embedding(self) -> bool:
        return self.sc.is_embedding and self.atoms_ok

    def to_json(self) -> dict:
        doc = self.sc.to_json()
        doc["asc_atoms"] = self.atoms_ok
        doc["is_embedding"] = self.is_embedding
        doc["failures"] = doc["failures"] + self.failures
        return doc


def asc_embed_check(
    source: AscBase,
    mapping: Mapping[Element, object] | Callable[[Element], object],
    target_asc: Callable[[object], int],
    N: int | None = None,
) -> AscEmbedVerdict:
    """SC embedding check plus the atom clause.

    Without ``N`` every atom must keep its asc value.  With ``N`` (the
    weakened form used by representations) atoms of positive weight keep
    it and atoms of weight 0 must map above at least ``N`` atoms, measured
    by ``target_asc`` on the image.
    """
    verdict = embed_check(source.base, mapping)
    fn = mapping if callable(mapping) and not isinstance(mapping, Mapping) else mapping.__getitem__
    fails = []
    p = source.base.poset
    for i, x in enumerate(p.ids):
        if p.below[i]:
            continue
        k = source.weights[i]
        got = target_asc(fn(source.base.irreducible(x)))
        if source.base.labels[i] != 0:
            # a minimal point of positive label is no atom of sc-dimension 0
            if got != 0:
                fails.append(f"point {x}: asc 0 became {got}")
        elif N is None or k > 0:
            if got != k:
                fails.append(f"atom {x}: asc {k} became {got}")
        elif got < N:
            fails.append(f"atom {x}: image has {got} atoms, fewer than {N}")
    return AscEmbedVerdict(verdict, not fails, fails)
