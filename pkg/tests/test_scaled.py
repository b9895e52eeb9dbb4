import itertools

import pytest
from hypothesis import given, settings

from conftest import AC2, CH2, LP, PT, TRIVIAL, V, base_with_elements, bases
from oracles import NEG, Model
from sclat.axioms import REQUIRED, check_axioms
from sclat.canon import canonical_form, is_isomorphic
from sclat.embedding import embed_check
from sclat.errors import IllFormedInputError
from sclat.order import Element
from sclat.scaled import ScaledBase, c_k, generated_substructure, is_k_sc_pure, prime_substructure, scdim


def test_strictly_increasing_labels_enforced():
    with pytest.raises(IllFormedInputError):
        ScaledBase.build(1, {"p": 1, "q": 1}, [("p", "q")])
    with pytest.raises(IllFormedInputError):
        ScaledBase.build(1, {"p": 2}, [])


class TestComponents:
    def test_ch2(self):
        b = CH2()
        assert c_k(b.one, 1) == b.one
        assert c_k(b.one, 0).is_zero
        assert scdim(b.one) == 1 and scdim(b.element("p")) == 0
        assert scdim(b.zero) == NEG
        assert all(c_k(b.zero, k).is_zero for k in range(4))
        assert is_k_sc_pure(b.one, 1)
        assert all(is_k_sc_pure(b.zero, k) for k in range(3))

    def test_lp(self):
        b = LP()
        assert c_k(b.one, 0) == b.element("a")
        assert c_k(b.one, 1) == b.element("y1")
        assert not is_k_sc_pure(b.one, 1)

    def test_pt_is_subscaled_only(self):
        b = PT(1)
        assert scdim(b.one) == 1 and b.one.dim == 0

    def test_above_d_is_zero(self):
        assert c_k(CH2().one, 5).is_zero

    def test_negative_k(self):
        with pytest.raises(ValueError):
            c_k(CH2().one, -1)

    @given(bases())
    @settings(max_examples=80, deadline=None)
    def test_against_oracle(self, b):
        m = Model.of(b)
        for a in b.elements():
            A = frozenset(a.points)
            assert scdim(a) == m.scdim(A)
            for k in range(b.d + 2):
                assert frozenset(c_k(a, k).points) == m.ck(A, k)

    @given(base_with_elements(k=2, max_points=6))
    @settings(max_examples=120, deadline=None)
    def test_derived_rules(self, data):
        b, (a, x) = data
        assert scdim(a | x) == max(scdim(a), scdim(x))  # SS9
        assert a.dim <= scdim(a)  # SS12
        # purity through differences
        for k in range(b.d + 1):
            via_diff = all((a - y).is_zero or scdim(a - y) == k for y in b.elements())
            assert is_k_sc_pure(a, k) == via_diff

    @given(bases(max_points=5))
    @settings(max_examples=60, deadline=None)
    def test_pure_components(self, b):
        """Any decomposition into i-pure parts with small overlaps is the C^i one."""
        elems = b.elements()
        pure = {k: [e for e in elems if is_k_sc_pure(e, k)] for k in range(b.d + 1)}
        for parts in itertools.product(*(pure[k] for k in range(b.d + 1))):
            ok = all(
                scdim(parts[i] & parts[j]) < min(i, j)
                for i in range(len(parts)) for j in range(i + 1, len(parts))
            )
            if not ok:
                continue
            a = b.zero
            for p in parts:
                a = a | p
            assert all(c_k(a, k) == parts[k] for k in range(b.d + 1))


class TestAxioms:
    def test_ch2_scaled(self):
        rep = check_axioms(CH2())
        assert rep.ok and rep.scaled and rep.classification == "scaled"

    def test_pt_subscaled_only(self):
        rep = check_axioms(PT(1))
        assert rep.ok and not rep.scaled
        w = rep.verdicts["SC0"].witness
        assert w is not None and w["a"] == ["y"]

    def test_report_lists_everything(self):
        rep = check_axioms(V())
        assert set(REQUIRED) <= set(rep.verdicts)
        assert rep.to_json()["ok"] is True

    def test_sampled_mode_is_flagged_and_seeded(self):
        b = ScaledBase.build(2, {f"x{i}": i % 3 for i in range(9)}, [("x0", "x1"), ("x1", "x2"), ("x3", "x4")])
        r1 = check_axioms(b, mode="sampled", samples=20, seed=7)
        r2 = check_axioms(b, mode="sampled", samples=20, seed=7)
        assert r1.mode == "sampled" and r1.ok
        assert r1.to_json() == r2.to_json()

    @given(bases(max_points=4))
    @settings(max_examples=40, deadline=None)
    def test_every_base_passes(self, b):
        rep = check_axioms(b)
        assert rep.ok, [v.name for v in rep.failures()]
        # scaled exactly when dim and scdim agree everywhere
        assert rep.scaled == all(e.dim == e.scdim for e in b.elements())


class TestPrime:
    def test_examples(self):
        assert len(prime_substructure(CH2()).masks) == 2
        lp = LP()
        masks = prime_substructure(lp).masks
        assert masks == {e.mask for e in (lp.zero, lp.element("a"), lp.element("y1"), lp.one)}
        assert len(prime_substructure(TRIVIAL()).masks) == 1

    @given(base_with_elements(k=2, max_points=5))
    @settings(max_examples=60, deadline=None)
    def test_generated_against_oracle(self, data):
        b, picks = data
        m = Model.of(b)
        sub = generated_substructure(b, picks)
        expect = m.closure([frozenset(e.points) for e in picks])
        assert {frozenset(Element(b, x).points) for x in sub.masks} == expect
        # the induced base has one point per join-irreducible of the closure
        assert sub.base.poset.n == len(sub.point_masks)

    @given(bases(max_points=5))
    @settings(max_examples=40, deadline=None)
    def test_idempotent(self, b):
        p1 = prime_substructure(b).base
        p2 = prime_substructure(p1).base
        assert is_isomorphic(p1, p2)
        assert len(prime_substructure(p1).masks) == len(p1.elements())


class TestCanon:
    def test_examples(self):
        renamed = ScaledBase.build(1, {"u": 0, "v": 1}, [("u", "v")])
        assert canonical_form(CH2()) == canonical_form(renamed)
        assert canonical_form(CH2()) != canonical_form(AC2())
        assert canonical_form(PT(1)) != canonical_form(PT(0, d=1))

    @given(bases(max_points=5))
    @settings(max_examples=60, deadline=None)
    def test_relabelling_invariance(self, b):
        ids = list(b.poset.ids)
        perm = dict(zip(ids, reversed([f"r{i}" for i in range(len(ids))])))
        c = ScaledBase.build(b.d, {perm[x]: lab for x, lab in zip(ids, b.labels)},
                             [(perm[x], perm[y]) for x, y in b.poset.covers])
        assert canonical_form(b) == canonical_form(c)
        assert is_isomorphic(b, c)


class TestEmbedCheck:
    def test_identity(self):
        b = CH2()
        v = embed_check(b, {a: a for a in b.elements()})
        assert v.is_embedding and v.consistent

    def test_ch2_into_lp_fails(self):
        ch2, lp = CH2(), LP()
        img = {ch2.zero: lp.zero, ch2.element("p"): lp.element("a"), ch2.one: lp.one}
        v = embed_check(ch2, img)
        assert not v.is_embedding and not v.direct and not v.criterion and v.consistent

    def test_partial_map(self):
        b = CH2()
        with pytest.raises(ValueError):
            embed_check(b, {b.zero: b.zero})
