import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import AC2, CH2, LP, TRIVIAL, bases
from sclat.asc import AscBase, asc_embed_check
from sclat.embedding import embed_check
from sclat.errors import PreconditionError
from sclat.linear import (
    Flat, LinearSet, asc_of_set, closure, family_base, geometric_prime, krull_dimension,
    prop71_construct, represent, represent_asc, sls_ck, sls_diff, sls_join, sls_meet,
)
from sclat.scaled import ScaledBase, prime_substructure


def flat(m, axes, fixed):
    return Flat.make(m, axes, fixed)


def S(m, *flats):
    return LinearSet(m, flats)


X1 = S(2, flat(2, [1], {2: 0}))  # the x-axis
X2 = S(2, flat(2, [2], {1: 1}))  # the line x1 = 1


class TestOperations:
    def test_meet(self):
        assert sls_meet(X1, X2) == LinearSet.point([1, 0])

    def test_diff(self):
        assert sls_diff(sls_join(X1, X2), X2) == X1

    def test_components(self):
        s = sls_join(X1, LinearSet.point([0, 5]))
        assert sls_ck(s, 0) == LinearSet.point([0, 5])
        assert sls_ck(s, 1) == X1

    def test_containment_canonical(self):
        s = sls_join(X1, LinearSet.point([3, 0]))
        assert s == X1 and len(s.flats) == 1

    def test_ambient_mismatch(self):
        with pytest.raises(ValueError):
            X1 | LinearSet.point([0])

    def test_krull(self):
        dim, chain = krull_dimension(sls_join(X1, LinearSet.point([0, 5])))
        assert dim == 1 and len(chain) == 2


coords = st.sampled_from([Fraction(0), Fraction(1), Fraction(-1, 2)])


@st.composite
def linear_sets(draw, m=3):
    flats = []
    for _ in range(draw(st.integers(0, 3))):
        axes = draw(st.sets(st.integers(1, m), max_size=m))
        fixed = {j: draw(coords) for j in range(1, m + 1) if j not in axes}
        flats.append(flat(m, axes, fixed))
    return LinearSet(m, flats)


def member(s, pt):
    return any(all(f.point[j - 1] == pt[j - 1] for j in range(1, s.ambient + 1) if j not in f.axes) for f in s.flats)


GRID = list(itertools.product([Fraction(0), Fraction(1), Fraction(-1, 2), Fraction(7)], repeat=3))


def generic(f):
    """A point of the flat lying on no proper subflat with grid coordinates."""
    return tuple(Fraction(1000 + 17 * j, 13) if j in f.axes else f.point[j - 1] for j in range(1, f.ambient + 1))


@given(linear_sets(), linear_sets())
@settings(max_examples=150, deadline=None)
def test_operations_against_pointwise_oracle(a, b):
    for pt in GRID:
        assert member(a | b, pt) == (member(a, pt) or member(b, pt))
        assert member(a & b, pt) == (member(a, pt) and member(b, pt))
    # a - b keeps exactly the components of a whose generic point avoids b
    assert set((a - b).flats) == {f for f in a.flats if not member(b, generic(f))}
    for k in range(4):
        assert all(f.dim == k for f in a.c(k).flats)
    assert (a - b) | (a & b) == a


class TestWedge:
    def test_point_in_line(self):
        A = prop71_construct(LinearSet.point([0]), LinearSet.full(1), 1)
        assert A == S(2, flat(2, [2], {1: 0}))
        assert A & LinearSet.full(1).pad(2) == LinearSet.point([0, 0])

    def test_point_point(self):
        p = LinearSet.point([2])
        assert prop71_construct(p, p, 0) == p

    def test_empty_c(self):
        B = LinearSet.point([0])
        A = prop71_construct(LinearSet(1), B, 1)
        assert A.scdim == 1 and (A & B.pad(2)).is_empty

    def test_preconditions(self):
        with pytest.raises(PreconditionError):
            prop71_construct(LinearSet.point([1]), LinearSet.point([0]), 1)
        with pytest.raises(PreconditionError):
            prop71_construct(LinearSet.full(1), LinearSet.full(1), 0)

    @given(linear_sets(m=2), st.integers(0, 3))
    @settings(max_examples=100, deadline=None)
    def test_postcondition(self, B, n):
        C = LinearSet(2, [f for f in B.flats if f.dim <= n][:1])
        if C.is_empty and any(f.dim == 2 for f in B.flats):
            return
        A = prop71_construct(C, B, n)
        assert all(f.dim == n for f in A.flats)
        assert A & B.pad(2 + n) == C.pad(2 + n)


class TestRepresent:
    def test_ch2(self):
        rep = represent(CH2())
        assert rep.X == S(2, flat(2, [2], {1: 0}))
        assert rep(CH2().element("p")) == LinearSet.point([0, 0])

    def test_trivial(self):
        rep = represent(TRIVIAL())
        assert rep.X.is_empty and rep.ambient == 1

    def test_two_atoms(self):
        b = AC2()
        rep = represent(b)
        a1, a2 = rep(b.element("a1")), rep(b.element("a2"))
        assert a1.scdim == a2.scdim == 0 and a1 != a2 and (a1 & a2).is_empty

    @given(bases(max_points=4))
    @settings(max_examples=50, deadline=None)
    def test_embedding(self, b):
        rep = represent(b)
        v = embed_check(b, rep, target_top=rep.X)
        assert v.is_embedding and v.consistent
        assert rep.X.scdim == b.one.scdim
        # the prime of the base maps onto the geometric prime of X
        prime = prime_substructure(b)
        images = {rep(prime.to_outer(e)) for e in prime.base.elements()}
        assert images == set(geometric_prime(rep.X))


class TestRepresentAsc:
    def test_weights(self):
        ab = AscBase(AC2(), {"a1": 1, "a2": 2})
        rep = represent_asc(ab, 4)
        assert len(rep(ab.base.element("a1")).flats) == 1
        assert len(rep(ab.base.element("a2")).flats) == 2
        assert asc_embed_check(ab, rep, asc_of_set, 4).is_embedding

    def test_zero_weight(self):
        ab = AscBase(ScaledBase.build(0, {"a": 0}, []), {})
        rep = represent_asc(ab, 5)
        assert len(rep.X.flats) >= 5

    def test_minimal_point_of_positive_label(self):
        # such a point is no atom of sc-dimension 0, so the N clause skips it
        ab = AscBase(LP(), {"a": 2})
        rep = represent_asc(ab, 3)
        assert asc_embed_check(ab, rep, asc_of_set, 3).is_embedding

    def test_n_zero(self):
        ab = AscBase(AC2(), {"a1": 3, "a2": 1})
        rep = represent_asc(ab, 0)
        assert asc_embed_check(ab, rep, asc_of_set).is_embedding


class TestPrime:
    def test_examples(self):
        assert len(geometric_prime(LinearSet.full(2))) == 2
        lp = sls_join(X1, LinearSet.point([0, 5]))
        assert len(geometric_prime(lp)) == 4
        assert len(geometric_prime(LinearSet(2))) == 1

    def test_family_base_matches_lp(self):
        lp = sls_join(X1, LinearSet.point([0, 5]))
        base, _ = family_base(geometric_prime(lp))
        from sclat.canon import is_isomorphic

        assert is_isomorphic(base, LP())

    def test_closure_needs_ambient(self):
        with pytest.raises(ValueError):
            closure([], 1)
