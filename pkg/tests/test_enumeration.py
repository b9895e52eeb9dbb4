import pytest

from oracles import labelled_posets
from sclat.canon import canonical_form
from sclat.enumeration import enumerate_bases


def count(d, n, **kw):
    return sum(1 for _ in enumerate_bases(d, n, **kw))


def test_examples():
    assert count(0, 2) == 3
    assert count(1, 1) == 3
    assert count(0, 0) == 1


@pytest.mark.parametrize("d", [0, 1, 2])
@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_matches_naive_enumeration(d, n):
    naive = sum(len(labelled_posets(k, d)) for k in range(n + 1))
    bases = list(enumerate_bases(d, n))
    assert len(bases) == naive
    assert len({canonical_form(b) for b in bases}) == len(bases)


def test_sizes_non_decreasing_and_deterministic():
    a = [b.poset.n for b in enumerate_bases(2, 4)]
    assert a == sorted(a)
    assert [canonical_form(b) for b in enumerate_bases(1, 3)] == [canonical_form(b) for b in enumerate_bases(1, 3)]


def test_asc_weights():
    # d = 0, one point: weights from {0, 1, 2} give three bases, plus the trivial one
    out = list(enumerate_bases(0, 1, asc_mode=True, k_cap={1, 2}))
    assert len(out) == 4
    # two atoms with weights from {0, 1}: unordered pairs {00, 01, 11}
    two = [b for b in enumerate_bases(0, 2, asc_mode=True, k_cap={1}) if b.poset.n == 2]
    assert sorted(sorted(b.weights) for b in two) == [[0, 0], [0, 1], [1, 1]]
