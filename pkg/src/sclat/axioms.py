"""Exhaustive verification of the subscaled-lattice axioms on a finite base.

Every axiom is evaluated straight from its defining identity over all
element tuples, using vectorised bit-mask operations.  Definitions that
quantify over the whole lattice (purity, "least", "largest") are evaluated
by brute force as well, so a pass here never relies on the shortcuts used
elsewhere in the package.

Bases with more than eight points are checked in sampling mode: the
quantified variables range over a seeded random sample of elements, and the
report says so.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .order import Element, iter_bits
from .scaled import ScaledBase

SENTINEL = -1  # stands for minus infinity in integer arrays

REQUIRED = (
    "TC-least", "TC1", "TC2", "TC3", "TC4",
    "SS1", "SS2", "SS3", "SS4", "SS5", "SS6",
    "SS7", "SS8", "SS9", "SS10", "SS11", "SS12", "SS13",
    "pure-components", "pure-decomposition-unique", "SC1-SC3-iff-SC0",
)
INFORMATIONAL = ("SC0", "SC1", "SC2", "SC3")


@dataclass
class Verdict:
    name: str
    passed: bool = True
    checked: int = 0
    witness: dict | None = None

    def to_json(self) -> dict:
        out = {"name": self.name, "passed": self.passed, "checked": self.checked}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


@dataclass
class AxiomReport:
    base: ScaledBase
    mode: str
    verdicts: dict[str, Verdict] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        """All axioms that every subscaled lattice must satisfy hold."""
        return all(self.verdicts[name].passed for name in REQUIRED)

    @property
    def scaled(self) -> bool:
        return self.verdicts["SC0"].passed

    @property
    def classification(self) -> str:
        return "scaled" if self.scaled else "subscaled only"

    def failures(self) -> list[Verdict]:
        return [v for name, v in self.verdicts.items() if name in REQUIRED and not v.passed]

    def to_json(self) -> dict:
        return {
            "mode": self.mode,
            "ok": self.ok,
            "classification": self.classification,
            "verdicts": [v.to_json() for v in self.verdicts.values()],
        }


class _Vec:
    """Vectorised mask operations for one base (at most 62 points)."""

    def __init__(self, base: ScaledBase):
        p = base.poset
        if p.n > 62:
            raise ValueError("vectorised checks support at most 62 points")
        self.base = base
        self.n = p.n
        self.d = base.d
        self.down = [np.int64(m) for m in p.down]
        self.above = [np.int64(m) for m in p.above]
        self.labels = base.labels
        self.height = p.height

    def closure(self, m):
        out = np.zeros_like(m)
        for i in range(self.n):
            out |= np.where((m >> i) & 1 == 1, self.down[i], 0)
        return out

    def maximal(self, m):
        out = np.zeros_like(m)
        for i in range(self.n):
            hit = ((m >> i) & 1 == 1) & ((m & self.above[i]) == 0)
            out |= np.where(hit, np.int64(1 << i), 0)
        return out

    def diff(self, a, b):
        return self.closure(self.maximal(a) & ~b)

    def ck(self, a, k: int):
        if k > self.d:
            return np.zeros_like(a)
        sel = np.int64(self.base.label_masks[k])
        return self.closure(self.maximal(a) & sel)

    def scdim(self, a):
        mx = self.maximal(a)
        out = np.full(a.shape, SENTINEL, dtype=np.int64)
        for i in range(self.n):
            out = np.where((mx >> i) & 1 == 1, np.maximum(out, self.labels[i]), out)
        return out

    def dim(self, a):
        out = np.full(a.shape, SENTINEL, dtype=np.int64)
        for i in range(self.n):
            out = np.where((a >> i) & 1 == 1, np.maximum(out, self.height[i]), out)
        return out

    @staticmethod
    def leq(a, b):
        return (a & ~b) == 0

    def ll(self, b, a):
        return self.leq(b, self.diff(a, b))


def _universe(base: ScaledBase, mode: str, samples: int, seed: int) -> np.ndarray:
    p = base.poset
    if mode == "exhaustive":
        return np.array(p.all_masks, dtype=np.int64)
    rng = np.random.default_rng(seed)
    masks = {0, p.full}
    for _ in range(samples):
        pick = int(rng.integers(0, 1 << p.n)) if p.n < 63 else 0
        masks.add(p.closure(pick))
    return np.array(sorted(masks), dtype=np.int64)


def check_axioms(base: ScaledBase, mode: str = "auto", samples: int = 96, seed: int = 0) -> AxiomReport:
    """Evaluate every axiom over all tuples of elements of ``base``."""
    if mode == "auto":
        mode = "exhaustive" if base.poset.n <= 8 else "sampled"
    if mode not in ("exhaustive", "sampled"):
        raise ValueError(f"unknown mode {mode!r}")
    return _Checker(base, mode, _universe(base, mode, samples, seed)).run()


class _Checker:
    def __init__(self, base: ScaledBase, mode: str, universe: np.ndarray):
        self.base = base
        self.v = _Vec(base)
        self.U = universe
        self.report = AxiomReport(base, mode)
        for name in REQUIRED + INFORMATIONAL:
            self.report.verdicts[name] = Verdict(name)
        self.ks = list(range(base.d + 3))  # labels plus two indices beyond d

    # -- bookkeeping ----------------------------------------------------
    def name(self, m) -> list[str]:
        return Element(self.base, int(m)).key()

    def record(self, axiom: str, ok, **vars) -> None:
        verdict = self.report.verdicts.setdefault(axiom, Verdict(axiom))
        ok = np.asarray(ok, dtype=bool)
        verdict.checked += int(ok.size)
        if verdict.passed and not ok.all():
            i = int(np.flatnonzero(~ok.ravel())[0])
            wit = {}
            for key, val in vars.items():
                val = np.broadcast_to(np.asarray(val), ok.shape).ravel()[i]
                wit[key] = self.name(val) if key in self.element_vars else int(val)
            verdict.passed = False
            verdict.witness = wit

    element_vars = frozenset({"a", "b", "c", "a1", "a2", "b1", "b2"})

    def pairs(self):
        A, B = np.meshgrid(self.U, self.U, indexing="ij")
        return A.ravel(), B.ravel()

    # -- purity by definition --------------------------------------------
    def _pure_table(self, masks: np.ndarray, measure) -> np.ndarray:
        """``out[i, k]``: every nonzero masks[i] - b has measure k.

        In exhaustive mode ``b`` ranges over the whole lattice.  A sample
        would miss the decisive ``b``, so sampled mode adds, for each
        component of masks[i], the join of the other components.
        """
        out = np.zeros((len(masks), len(self.ks)), dtype=bool)
        if self.report.mode == "exhaustive":
            A, B = np.meshgrid(masks, self.U, indexing="ij")
            D = self.v.diff(A, B)
            M = measure(D)
            for k in self.ks:
                out[:, k] = np.all((D == 0) | (M == k), axis=1)
            return out
        p = self.base.poset
        for row, a in enumerate(masks):
            a = int(a)
            comps = [p.down[i] for i in iter_bits(p.maximal_mask(a))]
            probes = list(self.U)
            for c in comps:
                rest = 0
                for e in comps:
                    if e != c:
                        rest |= e
                probes.append(rest)
            B = np.array(probes, dtype=np.int64)
            D = self.v.diff(np.full_like(B, a), B)
            M = measure(D)
            for k in self.ks:
                out[row, k] = bool(np.all((D == 0) | (M == k)))
        return out

    def sc_pure(self, masks, k):
        return self._pure_table(np.asarray(masks), self.v.scdim)[:, k]

    def dim_pure(self, masks, k):
        return self._pure_table(np.asarray(masks), self.v.dim)[:, k]

    # -- the axioms -------------------------------------------------------
    def run(self) -> AxiomReport:
        self.tc_rules()
        self.scaled_axioms()
        self.derived_rules()
        self.scaled_classification()
        self.pure_decompositions()
        return self.report

    def tc_rules(self) -> None:
        v, U = self.v, self.U
        a, b = self.pairs()
        d = v.diff(a, b)
        self.record("TC-least", v.leq(a, b | d), a=a, b=b)
        self.record("TC1", a == ((a & b) | d), a=a, b=b)
        irreducible = np.array([bin(int(m)).count("1") == 1 for m in v.maximal(a)])
        strict = v.leq(b, a) & (a != b)
        self.record("TC1", ~(irreducible & strict) | v.ll(b, a), a=a, b=b)
        self.record("TC3", v.diff(d, b) == d, a=a, b=b)
        self.record("TC3", v.ll(d & b, d) & v.leq(d, a), a=a, b=b)
        for x in U:
            B, C = np.meshgrid(U, U, indexing="ij")
            B, C = B.ravel(), C.ravel()
            X = np.full_like(B, x)
            # least c with x <= b v c
            covers = v.leq(X, B | C)
            self.record("TC-least", ~covers | v.leq(v.diff(X, B), C), a=X, b=B, c=C)
            self.record("TC2", v.diff(X | B, C) == (v.diff(X, C) | v.diff(B, C)), a1=X, a2=B, b=C)
            self.record("TC4", v.diff(X, B | C) == v.diff(v.diff(X, B), C), a=X, b1=B, b2=C)

    def scaled_axioms(self) -> None:
        v, U, d = self.v, self.U, self.base.d
        ck = {k: v.ck(U, k) for k in self.ks}
        total = np.zeros_like(U)
        for i in range(d + 1):
            total |= ck[i]
        self.record("SS1", total == U, a=U)
        for k in self.ks[d + 1:]:
            self.record("SS1", ck[k] == 0, a=U, k=k)
        for r in range(d + 2):
            for I in itertools.combinations(range(d + 1), r):
                JI = np.zeros_like(U)
                for i in I:
                    JI |= ck[i]
                for k in self.ks:
                    expect = ck[k] if k in I else np.zeros_like(U)
                    self.record("SS2", v.ck(JI, k) == expect, a=U, k=k)
        for i in range(d + 1):
            for j in range(i + 1, d + 1):
                self.record("SS4", v.scdim(ck[i] & ck[j]) < min(i, j), a=U, i=i, j=j)
        a, b = self.pairs()
        sa, sb = v.scdim(a), v.scdim(b)
        for k in self.ks:
            cka, ckb = v.ck(a, k), v.ck(b, k)
            hold = k >= np.maximum(sa, sb)
            self.record("SS3", ~hold | (v.ck(a | b, k) == (cka | ckb)), a=a, b=b, k=k)
            hold = k >= sb
            self.record("SS5", ~hold | (v.diff(cka, b) == v.diff(cka, ckb)), a=a, b=b, k=k)
            hold = (k >= sa) & (v.scdim(b & a) < k)
            self.record("SS8", ~hold | (v.diff(cka, b) == cka), a=a, b=b, k=k)
        self.record("SS6", ~((b != 0) & v.ll(b, a)) | (sb < sa), a=a, b=b)
        self.record("SS9", v.scdim(a | b) == np.maximum(sa, sb), a=a, b=b)
        self.record("SS9", ~v.leq(b, a) | (sb <= sa), a=a, b=b)

    def derived_rules(self) -> None:
        v, U, d = self.v, self.U, self.base.d
        ck = {k: v.ck(U, k) for k in self.ks}
        sU = v.scdim(U)
        # SS7: the defining minimum equals the largest non-vanishing C^k
        defined = np.full(U.shape, SENTINEL, dtype=np.int64)
        acc = np.zeros_like(U)
        for k in range(d + 1):
            acc |= ck[k]
            defined = np.where((defined == SENTINEL) & (acc == U) & (U != 0), k, defined)
        largest = np.full(U.shape, SENTINEL, dtype=np.int64)
        for k in self.ks:
            largest = np.where(ck[k] != 0, k, largest)
        self.record("SS7", (defined == largest) & (largest == sU), a=U)
        for k in self.ks:
            self.record("SS7", (v.scdim(ck[k]) == k) == (ck[k] != 0), a=U, k=k)
        # SS10: C^k(a) is the largest k-sc-pure element below a
        pure = self._pure_table(U, v.scdim)
        leq = (U[:, None] & ~U[None, :]) == 0  # leq[i, j]: U[i] <= U[j]
        for k in self.ks:
            ck_pure = self.sc_pure(ck[k], k) if len(U) else np.zeros(0, dtype=bool)
            below_ck = (U[None, :] & ~ck[k][:, None]) == 0  # [a, b]: b <= C^k(a)
            candidates = leq.T & pure[None, :, k]  # [a, b]: b <= a and b k-pure
            largest_ok = np.all(~candidates | below_ck, axis=1)
            ok = v.leq(ck[k], U) & ck_pure & largest_ok
            self.record("SS10", ~(k >= sU) | ok, a=U, k=k)
            # SS13: fixed by C^k exactly when k-sc-pure by definition
            self.record("SS13", (ck[k] == U) == pure[:, k], a=U, k=k)
        for r in range(d + 2):
            for I in itertools.combinations(range(d + 1), r):
                JI = np.zeros_like(U)
                rest = np.zeros_like(U)
                for i in range(d + 1):
                    if i in I:
                        JI |= ck[i]
                    else:
                        rest |= ck[i]
                self.record("SS11", v.diff(U, JI) == rest, a=U)
        for k in range(d + 2):
            high = np.zeros_like(U)
            for i in range(k, d + 1):
                high |= ck[i]
            self.record("SS11", v.scdim(v.diff(U, high)) < k, a=U, k=k)
        self.record("SS12", v.dim(U) <= sU, a=U)

    def scaled_classification(self) -> None:
        v, U, d = self.v, self.U, self.base.d
        self.record("SC0", v.dim(U) == v.scdim(U), a=U)
        ck = {k: v.ck(U, k) for k in range(d + 1)}
        total = np.zeros_like(U)
        for i in range(d + 1):
            total |= ck[i]
        self.record("SC1", total == U, a=U)
        for i in range(d + 1):
            self.record("SC2", self.dim_pure(ck[i], i), a=U, i=i)
            for j in range(i + 1, d + 1):
                self.record("SC3", v.dim(ck[i] & ck[j]) < min(i, j), a=U, i=i, j=j)
        verdicts = self.report.verdicts
        for n in ("SC1", "SC2", "SC3"):
            verdicts.setdefault(n, Verdict(n))
        holds = all(verdicts[n].passed for n in ("SC1", "SC2", "SC3"))
        self.record("SC1-SC3-iff-SC0", holds == verdicts["SC0"].passed)

    def _decompositions(self, a: int, top: int, pure_of, measure_pts):
        """All tuples (a_0..a_top) of pure pieces whose join is ``a``.

        ``pure_of[i]`` lists the i-pure masks below ``a``; a piece that is
        i-pure only contains points whose measure is at most i, which gives
        a sound cover-based prune.
        """
        out = []
        pts = [(i, h) for i, h in measure_pts if a >> i & 1]

        def rec(i: int, chosen: dict[int, int], acc: int):
            if i < 0:
                if acc == a:
                    out.append(dict(chosen))
                return
            for x in pure_of[i]:
                if any(self._meet_measure(x & y) >= min(i, j) for j, y in chosen.items()):
                    continue
                new = acc | x
                if any(h >= i and not new >> p & 1 for p, h in pts):
                    continue
                chosen[i] = x
                rec(i - 1, chosen, new)
                del chosen[i]

        rec(top, {}, 0)
        return out

    def pure_decompositions(self) -> None:
        v, U, base = self.v, self.U, self.base
        if self.report.mode != "exhaustive" or len(U) > 128:
            return
        p = base.poset
        sc_table = self._pure_table(U, v.scdim)
        dim_table = self._pure_table(U, v.dim)
        top = max(base.d, max(p.height, default=0))
        for x in U:
            x = int(x)
            below = [(j, int(m)) for j, m in enumerate(U) if int(m) & ~x == 0]
            # components by sc-purity: any such decomposition is the C^i one
            self._meet_measure = base.scdim_mask
            sc_pure_of = {i: [m for j, m in below if sc_table[j, i]] for i in range(base.d + 1)}
            found = self._decompositions(x, base.d, sc_pure_of, list(enumerate(base.labels)))
            ok = all(parts[i] == base.ck_mask(x, i) for parts in found for i in parts)
            self.record("pure-components", np.array([ok and len(found) >= 1]), a=x)
            # decompositions by dimension-purity: unique for each top degree
            self._meet_measure = p.dim_mask
            for t in range(top + 1):
                dim_pure_of = {i: [m for j, m in below if dim_table[j, i]] for i in range(t + 1)}
                found = self._decompositions(x, t, dim_pure_of, list(enumerate(p.height)))
                ok = len(found) <= 1
                if ok and found:
                    largest = found[0][t]
                    ok = all(m & ~largest == 0 for m in dim_pure_of[t])
                self.record("pure-decomposition-unique", np.array([ok]), a=x, t=t)
