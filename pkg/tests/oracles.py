"""Slow, independent reference implementations used as test oracles.

Everything here works on explicit frozensets of point names and follows
the textbook definitions literally, so it shares no code with the package
beyond reading a base's names, covers and labels.
"""

from __future__ import annotations

import itertools
from functools import cached_property

NEG = float("-inf")


class Model:
    """A labelled finite poset, closed downward sets as frozensets."""

    def __init__(self, points, covers, labels, d):
        self.points = list(points)
        self.labels = dict(labels)
        self.d = d
        leq = {(x, x) for x in self.points} | {tuple(c) for c in covers}
        changed = True
        while changed:
            changed = False
            for (a, b), (c, e) in itertools.product(list(leq), list(leq)):
                if b == c and (a, e) not in leq:
                    leq.add((a, e))
                    changed = True
        self.leq = leq

    @classmethod
    def of(cls, base):
        return cls(base.poset.ids, base.poset.covers, dict(zip(base.poset.ids, base.labels)), base.d)

    def below(self, x):
        return frozenset(y for y in self.points if (y, x) in self.leq)

    def down(self, xs):
        return frozenset(y for x in xs for y in self.below(x))

    @cached_property
    def elements(self):
        out = []
        for r in range(len(self.points) + 1):
            for sub in itertools.combinations(self.points, r):
                s = frozenset(sub)
                if self.down(s) == s:
                    out.append(s)
        return out

    @property
    def zero(self):
        return frozenset()

    @property
    def one(self):
        return frozenset(self.points)

    def maximal(self, a):
        return {x for x in a if not any(y != x and (x, y) in self.leq for y in a)}

    def diff(self, a, b):
        """Least element c with a <= b | c."""
        cands = [c for c in self.elements if a <= b | c]
        least = [c for c in cands if all(c <= e for e in cands)]
        assert len(least) == 1
        return least[0]

    def ck(self, a, k):
        return self.down({x for x in self.maximal(a) if self.labels[x] == k})

    def scdim(self, a):
        return max((self.labels[x] for x in self.maximal(a)), default=NEG)

    def dim(self, a):
        if not a:
            return NEG
        best = 0

        def grow(x, length):
            nonlocal best
            best = max(best, length)
            for y in a:
                if y != x and (x, y) in self.leq:
                    grow(y, length + 1)

        for x in a:
            grow(x, 0)
        return best

    def pure(self, a, k):
        return self.ck(a, k) == a

    def pred(self, g):
        return self.below(g) - {g}

    def closure(self, seeds):
        seen = {self.zero, self.one, *seeds}
        while True:
            new = set()
            for a, b in itertools.product(seen, repeat=2):
                new |= {a | b, a & b, self.diff(a, b)}
            for a in seen:
                new |= {self.ck(a, k) for k in range(self.d + 1)}
            if new <= seen:
                return seen
            seen |= new


def signatures(m: Model):
    """Every (g, H, q) satisfying the definition, H as a frozenset of elements."""
    out = set()
    for g in m.points:
        lab = m.labels[g]
        below_g = [h for h in m.elements if h < m.below(g)]
        for q in range(lab + 1):
            for h1, h2 in itertools.combinations_with_replacement(below_g, 2):
                H = frozenset({h1, h2})
                if q == lab and h1 | h2 == m.pred(g):
                    out.add((g, H, q))
                if q < lab and h1 == h2 and m.scdim(h1) < q:
                    out.add((g, H, q))
    return out


def apply_signature(m: Model, g, H, q):
    """Poset surgery written from the construction: returns (points, covers, labels)."""
    hs = sorted(H, key=lambda h: (len(h), sorted(h)))
    h1, h2 = hs[0], hs[-1]
    ups = [z for z in m.points if (g, z) in m.leq and z != g]
    rel = {(a, b) for (a, b) in m.leq if a != b}
    labels = dict(m.labels)
    if q < m.labels[g]:
        x = "new"
        labels[x] = q
        rel |= {(y, x) for y in h1} | {(x, z) for z in [g, *ups]}
        return [*m.points, x], rel, labels
    keep = [p for p in m.points if p != g]
    rel = {(a, b) for (a, b) in rel if g not in (a, b)}
    del labels[g]
    names = ["new1", "new2"]
    for x, h in zip(names, (h1, h2)):
        labels[x] = q
        rel |= {(y, x) for y in h} | {(x, z) for z in ups}
    return [*keep, *names], rel, labels


def is_catenary(m: Model) -> bool:
    E = m.elements
    for r, q, p in itertools.product(range(m.d + 1), repeat=3):
        if not r <= q <= p:
            continue
        for a in E:
            if not a or not m.pure(a, p):
                continue
            for c in E:
                if c <= a and m.pure(c, r):
                    if not any(b and m.pure(b, q) and c <= b <= a for b in E):
                        return False
    return True


def labelled_posets(n: int, d: int):
    """All strictly-labelled posets on points 0..n-1, deduplicated by brute force."""
    pts = list(range(n))
    pairs = [(a, b) for a in pts for b in pts if a != b]
    seen = []
    for r in range(len(pairs) + 1):
        for rel in itertools.combinations(pairs, r):
            s = set(rel)
            if any((b, a) in s for a, b in s):
                continue
            if any((a, c) not in s for a, b in s for b2, c in s if b == b2 and a != c):
                continue
            for lab in itertools.product(range(d + 1), repeat=n):
                if any(lab[a] >= lab[b] for a, b in s):
                    continue
                if not any(_iso(s, lab, t, lt, n) for t, lt in seen):
                    seen.append((s, lab))
    return seen


def _iso(s, lab, t, lt, n):
    if sorted(lab) != sorted(lt) or len(s) != len(t):
        return False
    for perm in itertools.permutations(range(n)):
        if all(lab[i] == lt[perm[i]] for i in range(n)) and {(perm[a], perm[b]) for a, b in s} == t:
            return True
    return False


def mu(n: int, d: int) -> int:
    if d < 0:
        return 0
    return 2 ** n + mu(2 ** (n + 1), d - 1)
