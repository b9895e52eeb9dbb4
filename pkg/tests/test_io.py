import json

import pytest
from hypothesis import given, settings

from conftest import AC2, CH2, bases
from sclat.asc import AscBase
from sclat.errors import IllFormedInputError
from sclat.io import (
    FORMAT, base_from_json, base_to_json, dumps, embedding_from_json, embedding_to_json, load_base,
    map_from_json, map_to_json, read_json, same_presentation, signature_from_json, signature_to_json,
    sls_from_json, sls_to_json, write_json,
)
from sclat.linear import LinearSet, represent
from sclat.signatures import apply_signature, enumerate_signatures


@given(bases(max_points=5))
@settings(max_examples=80, deadline=None)
def test_base_round_trip(b):
    doc = json.loads(dumps(base_to_json(b)))
    back = base_from_json(doc)
    assert same_presentation(b, back)
    assert dumps(base_to_json(back)) == dumps(base_to_json(b))


def test_asc_round_trip(tmp_path):
    ab = AscBase(AC2(), {"a1": 1, "a2": 2})
    write_json(tmp_path / "l.json", base_to_json(ab))
    back = load_base(tmp_path / "l.json")
    assert isinstance(back, AscBase) and back == ab
    assert not same_presentation(ab, ab.base)


def test_linear_set_round_trip():
    s = represent(CH2()).X | LinearSet.point(["1/2", 3])
    doc = json.loads(dumps(sls_to_json(s)))
    assert doc["format"] == FORMAT
    assert sls_from_json(doc) == s


def test_map_round_trip():
    b = CH2()
    rep = represent(b)
    images = {x: rep(b.irreducible(x)) for x in b.poset.ids}
    base, back = map_from_json(json.loads(dumps(map_to_json(b, rep.ambient, images))))
    assert same_presentation(base, b) and back == images


def test_signature_and_embedding_round_trip(ch2):
    for sig in enumerate_signatures(ch2):
        assert signature_from_json(ch2, signature_to_json(sig)) == sig
        emb = apply_signature(ch2, sig).embedding
        back = embedding_from_json(json.loads(dumps(embedding_to_json(emb))))
        assert back.images == emb.images


@pytest.mark.parametrize(
    "doc",
    [
        {"d": 1, "poset": {"elements": ["p"]}},
        {"d": "1", "poset": {"elements": ["p"]}, "dimlabel": {"p": 0}},
        {"d": 1, "poset": {"elements": ["p", "p"]}, "dimlabel": {"p": 0}},
        {"d": 1, "poset": {"elements": ["p"], "covers": [["p"]]}, "dimlabel": {"p": 0}},
        {"d": 1, "poset": {"elements": ["p", "q"], "covers": [["q", "p"]]}, "dimlabel": {"p": 0, "q": 1}},
        {"d": 0, "poset": {"elements": ["p"]}, "dimlabel": {"p": 1}},
        {"d": 1, "poset": {"elements": ["p"]}, "dimlabel": {"p": 1}, "asc": {"p": 1}},
    ],
)
def test_ill_formed_lattices(doc):
    with pytest.raises(IllFormedInputError):
        base_from_json(doc)


def test_read_json_errors(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(IllFormedInputError):
        read_json(bad)
    bad.write_text('{"format": "other/9"}')
    with pytest.raises(IllFormedInputError):
        read_json(bad)
    with pytest.raises(IllFormedInputError):
        read_json(tmp_path / "missing.json")
