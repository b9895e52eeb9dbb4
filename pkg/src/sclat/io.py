"""JSON file formats.

Every document carries ``"format": "sclat/1"``.  Writers sort names and
pairs so that equal presentations serialise to identical bytes.

* poset: ``{"elements": [...], "covers": [[lo, hi], ...]}``
* lattice: ``{"d": 1, "poset": {...}, "dimlabel": {...}}`` with an optional
  ``"asc": {"x0": 1}`` (omitted points weigh 0)
* special linear set: ``{"ambient": 2, "varieties": [{"axes": [2], "basepoint": {"1": "0"}}]}``
* map: a lattice plus the special linear set assigned to every point
* signature: ``{"g": ..., "H": [[...], ...], "q": ...}`` (ASC adds ``"K"``)
* embedding: a source lattice, a target lattice and point images
"""

from __future__ import annotations

import json
from collections.abc import Mapping
from pathlib import Path

from .asc import AscBase, AscSignature
from .embedding import Embedding
from .errors import IllFormedInputError
from .linear import LinearSet
from .order import Element, Poset
from .scaled import ScaledBase
from .signatures import Signature

FORMAT = "sclat/1"


def dumps(doc: Mapping) -> str:
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def write_json(path: str | Path, doc: Mapping) -> None:
    Path(path).write_text(dumps(doc), encoding="utf-8")


def read_json(path: str | Path) -> dict:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise IllFormedInputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise IllFormedInputError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None
    if not isinstance(doc, dict):
        raise IllFormedInputError(f"{path}: expected a JSON object")
    tag = doc.get("format", FORMAT)
    if tag != FORMAT:
        raise IllFormedInputError(f"{path}: unsupported format tag {tag!r}")
    return doc


def _tagged(doc: dict) -> dict:
    return {"format": FORMAT, **doc}


# ---- posets and lattices ------------------------------------------------------------


def poset_to_json(p: Poset) -> dict:
    return {"elements": sorted(p.ids), "covers": sorted([a, b] for a, b in p.covers)}


def poset_from_json(doc: Mapping) -> Poset:
    try:
        elements = doc["elements"]
        covers = doc.get("covers", [])
    except (KeyError, TypeError, AttributeError):
        raise IllFormedInputError("poset needs 'elements' (and optionally 'covers')") from None
    if not isinstance(elements, list) or not all(isinstance(x, str) for x in elements):
        raise IllFormedInputError("'elements' must be a list of strings")
    if len(set(elements)) != len(elements):
        raise IllFormedInputError("duplicate element names")
    pairs = []
    for c in covers:
        if not (isinstance(c, list) and len(c) == 2 and all(isinstance(x, str) for x in c)):
            raise IllFormedInputError(f"cover {c!r} is not a pair of names")
        pairs.append(tuple(c))
    return Poset(elements, pairs)


def base_to_json(base: ScaledBase | AscBase) -> dict:
    sb = base.base if isinstance(base, AscBase) else base
    doc = {
        "d": sb.d,
        "poset": poset_to_json(sb.poset),
        "dimlabel": {x: v for x, v in zip(sb.poset.ids, sb.labels)},
    }
    if isinstance(base, AscBase):
        doc["asc"] = base.weight_map()
    return _tagged(doc)


def base_from_json(doc: Mapping) -> ScaledBase | AscBase:
    """A lattice document; one with an ``"asc"`` key yields an AscBase."""
    if "d" not in doc or "poset" not in doc or "dimlabel" not in doc:
        raise IllFormedInputError("lattice needs 'd', 'poset' and 'dimlabel'")
    d = doc["d"]
    if not isinstance(d, int) or isinstance(d, bool):
        raise IllFormedInputError("'d' must be an integer")
    labels = doc["dimlabel"]
    if not isinstance(labels, dict):
        raise IllFormedInputError("'dimlabel' must be an object")
    for x, v in labels.items():
        if not isinstance(v, int) or isinstance(v, bool):
            raise IllFormedInputError(f"label of {x!r} must be an integer")
    base = ScaledBase(poset_from_json(doc["poset"]), d, labels)
    if "asc" in doc:
        weights = doc["asc"]
        if not isinstance(weights, dict):
            raise IllFormedInputError("'asc' must be an object")
        return AscBase(base, weights)
    return base


def load_base(path: str | Path) -> ScaledBase | AscBase:
    return base_from_json(read_json(path))


def same_presentation(a, b) -> bool:
    """Equal points, covers, labels, d and weights (point order ignored)."""
    if isinstance(a, AscBase) != isinstance(b, AscBase):
        return False
    return base_to_json(a) == base_to_json(b)


def element_to_json(a: Element) -> list[str]:
    return a.key()


def element_from_json(base: ScaledBase, doc) -> Element:
    if isinstance(doc, str):
        doc = [doc]
    if not isinstance(doc, list):
        raise IllFormedInputError("an element is a list of point names")
    return base.element(*doc)


# ---- special linear sets and maps ---------------------------------------------------


def sls_to_json(s: LinearSet) -> dict:
    return _tagged(s.to_json())


def sls_from_json(doc: Mapping) -> LinearSet:
    return LinearSet.from_json(doc)


def map_to_json(base: ScaledBase, ambient: int, images: Mapping[str, LinearSet]) -> dict:
    return _tagged({
        "kind": "sls-map",
        "lattice": base_to_json(base),
        "ambient": ambient,
        "images": {x: images[x].to_json() for x in sorted(images)},
    })


def map_from_json(doc: Mapping) -> tuple[ScaledBase | AscBase, dict[str, LinearSet]]:
    try:
        base = base_from_json(doc["lattice"])
        images = {x: LinearSet.from_json(v) for x, v in doc["images"].items()}
    except (KeyError, TypeError, AttributeError):
        raise IllFormedInputError("map needs 'lattice' and 'images'") from None
    sb = base.base if isinstance(base, AscBase) else base
    missing = [x for x in sb.poset.ids if x not in images]
    if missing:
        raise IllFormedInputError(f"map has no image for {', '.join(missing)}")
    return base, images


# ---- signatures and embeddings ------------------------------------------------------


def signature_to_json(sig) -> dict:
    return _tagged(sig.to_json())


def signature_from_json(base: ScaledBase, doc: Mapping) -> Signature:
    try:
        H = frozenset(element_from_json(base, h) for h in doc["H"])
        return Signature(doc["g"], H, int(doc["q"]))
    except (KeyError, TypeError, ValueError):
        raise IllFormedInputError("signature needs 'g', 'H' and 'q'") from None


def asc_signature_from_json(base: ScaledBase, doc: Mapping) -> AscSignature:
    try:
        hs = [element_from_json(base, h) for h in doc["H"]]
        ks = [int(k) for k in doc["K"]]
        g, q = doc["g"], int(doc["q"])
    except (KeyError, TypeError, ValueError):
        raise IllFormedInputError("ASC signature needs 'g', 'H', 'K' and 'q'") from None
    if len(hs) != len(ks):
        raise IllFormedInputError("'H' and 'K' must have the same length")
    return AscSignature(g, frozenset(zip(hs, ks)), q)


def embedding_to_json(e: Embedding) -> dict:
    sp = e.source.poset
    return _tagged({
        "kind": "embedding",
        "source": base_to_json(e.source),
        "target": base_to_json(e.target),
        "images": {x: Element(e.target, e.images[i]).key() for i, x in enumerate(sp.ids)},
    })


def embedding_from_json(doc: Mapping) -> Embedding:
    try:
        source = base_from_json(doc["source"])
        target = base_from_json(doc["target"])
        images = doc["images"]
    except (KeyError, TypeError):
        raise IllFormedInputError("embedding needs 'source', 'target' and 'images'") from None
    if isinstance(source, AscBase) or isinstance(target, AscBase):
        source = source.base if isinstance(source, AscBase) else source
        target = target.base if isinstance(target, AscBase) else target
    masks = [element_from_json(target, images[x]).mask for x in source.poset.ids]
    return Embedding(source, target, masks)
