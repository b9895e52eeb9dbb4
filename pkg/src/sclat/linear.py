"""Special linear sets over the rationals.

A special linear variety (flat) is ``P + E(I)``: the points of ``Q^m``
that agree with ``P`` off the axis set ``I``.  A special linear set is a
finite union of flats, stored canonically as the set of its maximal flats.
Because a flat over an infinite field is never a finite union of proper
subflats, the lattice of special linear sets is the distributive lattice
of downsets of flats, and every operation reduces to flat containment and
intersection.

All coordinates are 1-based and all values are :class:`fractions.Fraction`.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product

from .errors import ArgumentError, PreconditionError
from .order import NEG_INF, Dimension, Element, LatticeTables, Poset, iter_bits, recover_poset
from .scaled import ScaledBase


@dataclass(frozen=True)
class Flat:
    """``{x in Q^m : x_j = point[j-1] for every j not in axes}``.

    ``point`` has one entry per coordinate; entries on the axes are kept at
    0 so that equal flats compare equal.
    """

    ambient: int
    axes: frozenset[int]
    point: tuple[Fraction, ...]

    @classmethod
    def make(cls, ambient: int, axes: Iterable[int], fixed: Mapping[int, object] | None = None) -> "Flat":
        axes = frozenset(int(a) for a in axes)
        if any(not 1 <= a <= ambient for a in axes):
            raise ArgumentError(f"axes must lie in 1..{ambient}")
        fixed = dict(fixed or {})
        point = []
        for j in range(1, ambient + 1):
            if j in axes:
                point.append(Fraction(0))
            else:
                point.append(Fraction(fixed.get(j, 0)))
        return cls(ambient, axes, tuple(point))

    @property
    def dim(self) -> int:
        return len(self.axes)

    def fixed(self) -> dict[int, Fraction]:
        return {j: self.point[j - 1] for j in range(1, self.ambient + 1) if j not in self.axes}

    def __le__(self, other: "Flat") -> bool:
        if not self.axes <= other.axes:
            return False
        return all(self.point[j - 1] == other.point[j - 1]
                   for j in range(1, self.ambient + 1) if j not in other.axes)

    def __lt__(self, other: "Flat") -> bool:
        return self != other and self <= other

    def meet(self, other: "Flat") -> "Flat | None":
        """Intersection, or None when empty."""
        out = []
        for j in range(1, self.ambient + 1):
            in1, in2 = j in self.axes, j in other.axes
            p1, p2 = self.point[j - 1], other.point[j - 1]
            if in1 and in2:
                out.append(Fraction(0))
            elif in1:
                out.append(p2)
            elif in2:
                out.append(p1)
            elif p1 != p2:
                return None
            else:
                out.append(p1)
        return Flat(self.ambient, self.axes & other.axes, tuple(out))

    def pad(self, ambient: int) -> "Flat":
        """The same flat inside ``Q^ambient``, extra coordinates fixed at 0."""
        if ambient < self.ambient:
            raise ArgumentError("cannot shrink the ambient space")
        return Flat(ambient, self.axes, self.point + (Fraction(0),) * (ambient - self.ambient))

    def sort_key(self):
        return (self.dim, sorted(self.axes), self.point)

    def __repr__(self) -> str:
        coords = ["*" if j in self.axes else _fmt(self.point[j - 1]) for j in range(1, self.ambient + 1)]
        return "(" + ",".join(coords) + ")"

    def to_json(self) -> dict:
        return {
            "axes": sorted(self.axes),
            "basepoint": {str(j): _fmt(v) for j, v in sorted(self.fixed().items())},
        }


def _fmt(v: Fraction) -> str:
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def _maximal(flats: Iterable[Flat]) -> frozenset[Flat]:
    fs = set(flats)
    return frozenset(f for f in fs if not any(f < g for g in fs))


class LinearSet:
    """A special linear set, canonically the frozenset of its maximal flats."""

    __slots__ = ("ambient", "flats")

    def __init__(self, ambient: int, flats: Iterable[Flat] = ()):
        flats = list(flats)
        for f in flats:
            if f.ambient != ambient:
                raise ArgumentError("flat ambient differs from the set ambient")
        self.ambient = ambient
        self.flats: frozenset[Flat] = _maximal(flats)

    @classmethod
    def point(cls, coords: Iterable[object]) -> "LinearSet":
        coords = [Fraction(c) for c in coords]
        m = len(coords)
        return cls(m, [Flat(m, frozenset(), tuple(coords))])

    @classmethod
    def full(cls, ambient: int) -> "LinearSet":
        return cls(ambient, [Flat.make(ambient, range(1, ambient + 1))])

    def _same(self, other: "LinearSet") -> None:
        if not isinstance(other, LinearSet):
            raise ArgumentError("expected a special linear set")
        if other.ambient != self.ambient:
            raise ArgumentError(f"ambient mismatch: {self.ambient} vs {other.ambient}")

    def __or__(self, other: "LinearSet") -> "LinearSet":
        self._same(other)
        return LinearSet(self.ambient, self.flats | other.flats)

    def __and__(self, other: "LinearSet") -> "LinearSet":
        self._same(other)
        out = []
        for f in self.flats:
            for g in other.flats:
                h = f.meet(g)
                if h is not None:
                    out.append(h)
        return LinearSet(self.ambient, out)

    def __sub__(self, other: "LinearSet") -> "LinearSet":
        self._same(other)
        return LinearSet(self.ambient, [f for f in self.flats if not any(f <= g for g in other.flats)])

    def __le__(self, other: "LinearSet") -> bool:
        self._same(other)
        return all(any(f <= g for g in other.flats) for f in self.flats)

    def __eq__(self, other) -> bool:
        return isinstance(other, LinearSet) and self.ambient == other.ambient and self.flats == other.flats

    def __hash__(self) -> int:
        return hash((self.ambient, self.flats))

    def c(self, k: int) -> "LinearSet":
        if k < 0:
            raise ArgumentError("C^k needs k >= 0")
        return LinearSet(self.ambient, [f for f in self.flats if f.dim == k])

    @property
    def scdim(self) -> Dimension:
        return max((f.dim for f in self.flats), default=NEG_INF)

    @property
    def is_empty(self) -> bool:
        return not self.flats

    def contains_point(self, coords: Iterable[object]) -> bool:
        pt = LinearSet.point(coords)
        return pt <= self

    def pad(self, ambient: int) -> "LinearSet":
        return LinearSet(ambient, [f.pad(ambient) for f in self.flats])

    def components(self) -> list[Flat]:
        return sorted(self.flats, key=Flat.sort_key)

    def __repr__(self) -> str:
        if not self.flats:
            return f"empty<{self.ambient}>"
        return " u ".join(repr(f) for f in self.components())

    def to_json(self) -> dict:
        return {"ambient": self.ambient, "varieties": [f.to_json() for f in self.components()]}

    @classmethod
    def from_json(cls, doc: Mapping) -> "LinearSet":
        try:
            m = int(doc["ambient"])
            flats = [Flat.make(m, v.get("axes", []), {int(j): Fraction(x) for j, x in v.get("basepoint", {}).items()})
                     for v in doc.get("varieties", [])]
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise ArgumentError(f"malformed special linear set: {exc}") from None
        return cls(m, flats)


def sls_join(a: LinearSet, b: LinearSet) -> LinearSet:
    return a | b


def sls_meet(a: LinearSet, b: LinearSet) -> LinearSet:
    return a & b


def sls_diff(a: LinearSet, b: LinearSet) -> LinearSet:
    return a - b


def sls_ck(a: LinearSet, k: int) -> LinearSet:
    return a.c(k)


def krull_dimension(a: LinearSet) -> tuple[Dimension, list[Flat]]:
    """Longest chain of non-empty special flats inside ``a``, built explicitly.

    Each step freezes one axis of the previous flat at its basepoint value,
    so every link is a strict containment checked by ``Flat.__lt__``.  A
    strict containment of flats always drops at least one axis, so no chain
    is longer than the largest component dimension.
    """
    best: list[Flat] = []
    for f in a.components():
        chain = [f]
        cur = f
        for j in sorted(f.axes):
            nxt = Flat(cur.ambient, cur.axes - {j}, cur.point)
            if not nxt < cur:
                raise AssertionError("chain step is not a strict containment")
            chain.append(nxt)
            cur = nxt
        if len(chain) > len(best):
            best = chain
    if not best:
        return NEG_INF, []
    if not all(best[i + 1] < best[i] for i in range(len(best) - 1)) or not any(best[0] <= g for g in a.flats):
        raise AssertionError("invalid chain")
    return len(best) - 1, best[::-1]


# ---- the wedge construction ------------------------------------------


def prop71_construct(C: LinearSet, B: LinearSet, n: int) -> LinearSet:
    """Pure ``n``-dimensional ``A`` in ``Q^(m+n)`` with ``A ^ B = C``.

    ``B`` and ``C`` live in ``Q^m`` and are identified with their copies in
    ``Q^m x {0}^n``.  Each component ``P + E(J)`` of ``C`` becomes
    ``P + E(J u {m+1, ..., m+n-|J|})``.  When ``C`` is empty the result is
    the flat through ``(t, ..., t, 0, ..., 0)`` spanned by the ``n`` new
    axes, with ``t`` the least non-negative integer such that this point
    is not in ``B``.
    """
    if C.ambient != B.ambient:
        raise PreconditionError("C and B must share the ambient space")
    if not C <= B:
        raise PreconditionError("C must be contained in B")
    if n < 0 or (not C.is_empty and n < C.scdim):
        raise PreconditionError("n must be at least dim C")
    m = C.ambient
    total = m + n
    if C.is_empty:
        if any(f.dim == m for f in B.flats):
            raise PreconditionError("B fills the ambient space; no disjoint flat exists")
        t = 0
        while B.contains_point([t] * m):
            t += 1
        axes = frozenset(range(m + 1, total + 1))
        A = LinearSet(total, [Flat(total, axes, tuple(Fraction(t) for _ in range(m)) + (Fraction(0),) * n)])
    else:
        flats = []
        for f in C.components():
            extra = range(m + 1, m + n - f.dim + 1)
            g = f.pad(total)
            flats.append(Flat(total, g.axes | frozenset(extra), g.point))
        A = LinearSet(total, flats)
    if (A & B.pad(total)) != C.pad(total) or any(f.dim != n for f in A.flats):
        raise AssertionError("wedge construction postcondition failed")
    return A


# ---- representations ---------------------------------------------------


@dataclass
class Representation:
    """``phi`` maps each point of ``base`` to a special linear set in ``Q^ambient``."""

    base: ScaledBase
    ambient: int
    points: dict[str, LinearSet]
    trace: list[dict]

    def __call__(self, a: Element) -> LinearSet:
        out = LinearSet(self.ambient)
        for x in a.points:
            out = out | self.points[x]
        return out

    @property
    def X(self) -> LinearSet:
        return self(self.base.one)

    def as_dict(self) -> dict[Element, LinearSet]:
        return {a: self(a) for a in self.base.elements()}


def _linear_extension(base: ScaledBase, key=None) -> list[int]:
    """Points in an order compatible with the poset (ties by ``key`` then insertion)."""
    p = base.poset
    done = 0
    order = []
    key = key or (lambda i: i)
    while len(order) < p.n:
        ready = [i for i in range(p.n) if not done >> i & 1 and p.below[i] & ~done == 0]
        i = min(ready, key=key)
        order.append(i)
        done |= 1 << i
    return order


def _finish(base: ScaledBase, ambient: int, images: dict[str, LinearSet], trace) -> Representation:
    pts = {x: s.pad(ambient) for x, s in images.items()}
    return Representation(base, ambient, pts, trace)


def _add_point(base, i, ambient, images, trace):
    p = base.poset
    C = LinearSet(ambient)
    B = LinearSet(ambient)
    for j in iter_bits(p.below[i]):
        C = C | images[p.ids[j]].pad(ambient)
    for s in images.values():
        B = B | s.pad(ambient)
    n = base.labels[i]
    A = prop71_construct(C, B, n)
    images[p.ids[i]] = A
    trace.append({"point": p.ids[i], "n": n, "C": C.to_json(), "A": A.to_json()})
    return ambient + n


def represent(base: ScaledBase) -> Representation:
    """Embedding of ``base`` into the special linear sets of some ``Q^m``.

    Points are processed in a linear extension of the poset, starting in
    ``Q^1``; each new point ``x`` receives ``prop71_construct(C, B, D(x))``
    where ``C`` is the image of everything below ``x`` and ``B`` the image
    of everything processed so far.
    """
    ambient = 1
    images: dict[str, LinearSet] = {}
    trace: list[dict] = []
    for i in _linear_extension(base):
        ambient = _add_point(base, i, ambient, images, trace)
    return _finish(base, ambient, images, trace)


def represent_asc(abase, N: int) -> Representation:
    """ASC version: label-0 atoms become finite point sets on the first axis.

    An atom with weight ``k > 0`` maps to ``k`` integer points and an atom
    of weight 0 to ``max(N, 1)`` points, all pairwise disjoint.  The other
    points follow in order of label, as in :func:`represent`.
    """
    if N < 0:
        raise ArgumentError("N must be non-negative")
    base = abase.base
    p = base.poset
    images: dict[str, LinearSet] = {}
    trace: list[dict] = []
    nxt = 0
    atoms = [i for i in range(p.n) if base.labels[i] == 0]
    for i in atoms:
        w = abase.weight(p.ids[i])
        size = w if w > 0 else max(N, 1)
        pts = [Flat(1, frozenset(), (Fraction(nxt + t),)) for t in range(size)]
        nxt += size
        images[p.ids[i]] = LinearSet(1, pts)
        trace.append({"point": p.ids[i], "n": 0, "points": size})
    ambient = 1
    done = set(atoms)
    for i in _linear_extension(base, key=lambda i: (base.labels[i], i)):
        if i in done:
            continue
        ambient = _add_point(base, i, ambient, images, trace)
    return _finish(base, ambient, images, trace)


def asc_of_set(s: LinearSet) -> int:
    """Atom count of a finite set of points, 0 when the set is not finite."""
    if s.is_empty or s.scdim != 0:
        return 0
    return len(s.flats)


# ---- finite sublattices of special linear sets -------------------------


def closure(sets: Iterable[LinearSet], max_k: int, top: LinearSet | None = None) -> list[LinearSet]:
    """Least family containing ``sets``, the empty set and ``top``, closed under all operations."""
    sets = list(sets)
    if not sets and top is None:
        raise ArgumentError("need at least one set to fix the ambient space")
    m = (top or sets[0]).ambient
    seen: set[LinearSet] = set()
    todo = [LinearSet(m), *([top] if top is not None else []), *sets]
    while todo:
        s = todo.pop()
        if s in seen:
            continue
        seen.add(s)
        cand = {s.c(k) for k in range(max_k + 1)}
        for o in list(seen):
            cand.update((s | o, s & o, s - o, o - s))
        todo.extend(c for c in cand if c not in seen)
    return sorted(seen, key=lambda s: (len(s.flats), sorted(f.sort_key() for f in s.flats)))


def geometric_prime(X: LinearSet) -> list[LinearSet]:
    """The family generated by the empty set inside ``X``: closure of ``{empty, X}``."""
    top = X.scdim
    return closure([X], int(top) if top != NEG_INF else 0, top=X)


def family_base(family: list[LinearSet], d: int | None = None) -> tuple[ScaledBase, dict[LinearSet, Element]]:
    """Labelled dual presentation of a finite family closed under the operations.

    The family is tabulated, its join-irreducibles recovered with all
    lattice laws verified, and each irreducible labelled by its dimension.
    """
    names = [f"s{i}" for i in range(len(family))]
    pos = {s: i for i, s in enumerate(family)}
    try:
        J = tuple(tuple(pos[a | b] for b in family) for a in family)
        M = tuple(tuple(pos[a & b] for b in family) for a in family)
    except KeyError:
        raise ArgumentError("family is not closed under join and meet") from None
    poset = recover_poset(LatticeTables(tuple(names), J, M))
    sets = dict(zip(names, family))
    labels = {x: int(sets[x].scdim) for x in poset.ids}
    top = max(labels.values(), default=0)
    base = ScaledBase(poset, top if d is None else d, labels)
    index = {x: poset.index[x] for x in poset.ids}
    mapping = {}
    for s in family:
        mask = sum(1 << index[x] for x in poset.ids if sets[x] <= s)
        mapping[s] = Element(base, mask)
    return base, mapping


def grid_flats(sets: Iterable[LinearSet], X: LinearSet) -> list[Flat]:
    """Every flat inside a component of ``X`` whose frozen coordinates take
    values that occur in some flat of ``sets`` at that coordinate (or 0)."""
    sets = list(sets)
    m = X.ambient
    values: dict[int, set[Fraction]] = {j: {Fraction(0)} for j in range(1, m + 1)}
    for s in [*sets, X]:
        for f in s.flats:
            for j, v in f.fixed().items():
                values[j].add(v)
    out: set[Flat] = set()
    for comp in X.flats:
        axes = sorted(comp.axes)
        for r in range(len(axes) + 1):
            for frozen in combinations(axes, r):
                keep = comp.axes - set(frozen)
                for vals in product(*(sorted(values[j]) for j in frozen)):
                    point = list(comp.point)
                    for j, v in zip(frozen, vals):
                        point[j - 1] = v
                    out.add(Flat(m, keep, tuple(point)))
    return sorted(out, key=Flat.sort_key)


def grid_lattice(sets: Iterable[LinearSet], X: LinearSet) -> tuple[ScaledBase, list[Flat]]:
    """Finite sublattice of special linear sets inside ``X`` spanned by grid flats.

    Its points are the grid flats ordered by containment and labelled by
    dimension; every member of ``sets`` (and ``X``) is a union of grid flats,
    and grid flats are closed under intersection, so this is a finite
    scaled sublattice containing ``sets``.
    """
    flats = grid_flats(sets, X)
    names = [f"f{i}" for i in range(len(flats))]
    covers = [(names[i], names[j]) for i, f in enumerate(flats) for j, g in enumerate(flats) if f < g]
    labels = {names[i]: f.dim for i, f in enumerate(flats)}
    top = max(labels.values(), default=0)
    return ScaledBase(Poset(names, covers), top, labels), flats


def grid_element(base: ScaledBase, flats: list[Flat], s: LinearSet) -> Element:
    """The grid-lattice element whose union is ``s``; raises if ``s`` is not a grid union."""
    mask = sum(1 << i for i, f in enumerate(flats) if any(f <= g for g in s.flats))
    el = Element(base, mask)
    maxi = {flats[i] for i in iter_bits(base.poset.maximal_mask(mask))}
    if maxi != set(s.flats):
        raise ArgumentError("set is not a union of grid flats")
    return el
