"""Canonical forms of coloured finite posets.

The certificate is built in three stages:

1. interchangeable points (same colour, same strict lower and upper sets)
   are merged into one point carrying a multiplicity;
2. the comparability graph is split into connected components;
3. each component is labelled by colour refinement followed by a
   backtracking search over individualisations, keeping the
   lexicographically least certificate.

Component certificates are sorted and concatenated, so the result does not
depend on point names or insertion order.
"""

from __future__ import annotations

import json
from collections.abc import Sequence

from .order import Poset, iter_bits


def _refine(cells: list[list[int]], down: list[int], up: list[int]) -> list[list[int]]:
    while True:
        where = {}
        for ci, cell in enumerate(cells):
            for v in cell:
                where[v] = ci
        out: list[list[int]] = []
        for ci, cell in enumerate(cells):
            if len(cell) == 1:
                out.append(cell)
                continue
            sig = {
                v: (
                    tuple(sorted(where[u] for u in iter_bits(down[v]))),
                    tuple(sorted(where[u] for u in iter_bits(up[v]))),
                )
                for v in cell
            }
            groups: dict[tuple, list[int]] = {}
            for v in cell:
                groups.setdefault(sig[v], []).append(v)
            for key in sorted(groups):
                out.append(groups[key])
        if len(out) == len(cells):
            return out
        cells = out


def _component_certificate(verts: list[int], colour: list[str], down: list[int], up: list[int]):
    """Least certificate of one connected component (local indices)."""
    groups: dict[str, list[int]] = {}
    for v in verts:
        groups.setdefault(colour[v], []).append(v)
    cells = [groups[c] for c in sorted(groups)]
    best = None

    def leaf(order: list[int]):
        pos = {v: i for i, v in enumerate(order)}
        edges = sorted((pos[u], pos[v]) for v in order for u in iter_bits(down[v]))
        return (tuple(colour[v] for v in order), tuple(edges))

    def search(cells: list[list[int]]) -> None:
        nonlocal best
        cells = _refine(cells, down, up)
        target = next((i for i, c in enumerate(cells) if len(c) > 1), None)
        if target is None:
            cert = leaf([c[0] for c in cells])
            if best is None or cert < best:
                best = cert
            return
        for v in sorted(cells[target]):
            rest = [u for u in cells[target] if u != v]
            search(cells[:target] + [[v], rest] + cells[target + 1:])

    search(cells)
    return best


def canonical_certificate(poset: Poset, colours: Sequence[object]) -> bytes:
    """Canonical byte string of ``poset`` with a JSON-serialisable colour per point."""
    n = poset.n
    col = [json.dumps(c, sort_keys=True) for c in colours]
    # merge interchangeable points
    classes: dict[tuple, list[int]] = {}
    for i in range(n):
        classes.setdefault((col[i], poset.below[i], poset.above[i]), []).append(i)
    reps = [members[0] for members in classes.values()]
    mult = {members[0]: len(members) for members in classes.values()}
    rep_index = {r: k for k, r in enumerate(reps)}
    rep_mask = sum(1 << r for r in reps)
    down = [0] * len(reps)
    up = [0] * len(reps)
    for r in reps:
        k = rep_index[r]
        down[k] = sum(1 << rep_index[j] for j in iter_bits(poset.below[r] & rep_mask))
        up[k] = sum(1 << rep_index[j] for j in iter_bits(poset.above[r] & rep_mask))
    colour = [f"{col[r]}*{mult[r]}" for r in reps]
    # connected components of the comparability graph
    seen = 0
    certs = []
    for start in range(len(reps)):
        if seen >> start & 1:
            continue
        comp = 1 << start
        frontier = comp
        while frontier:
            nxt = 0
            for v in iter_bits(frontier):
                nxt |= down[v] | up[v]
            frontier = nxt & ~comp
            comp |= nxt
        seen |= comp
        verts = list(iter_bits(comp))
        local = {v: i for i, v in enumerate(verts)}
        ldown = [sum(1 << local[u] for u in iter_bits(down[v])) for v in verts]
        lup = [sum(1 << local[u] for u in iter_bits(up[v])) for v in verts]
        lcol = [colour[v] for v in verts]
        cols, edges = _component_certificate(list(range(len(verts))), lcol, ldown, lup)
        certs.append([list(cols), [list(e) for e in edges]])
    certs.sort()
    return json.dumps(certs, separators=(",", ":")).encode()


def point_colours(base) -> list:
    """Default colour of every point: its label, plus atom weight if any."""
    if hasattr(base, "point_colours"):
        return list(base.point_colours())
    if hasattr(base, "labels"):
        return list(base.labels)
    return [0] * base.poset.n


def canonical_form(base, colours: Sequence[object] | None = None) -> bytes:
    """Canonical byte string, invariant under label-preserving isomorphism.

    ``base`` may be a Poset, a ScaledBase or an AscBase.  Extra per-point
    colours can be supplied to compute forms relative to additional data,
    such as membership in the image of a fixed substructure.
    """
    if colours is None:
        colours = point_colours(base)
    return canonical_certificate(base.poset, colours)


def is_isomorphic(b1, b2) -> bool:
    return canonical_form(b1) == canonical_form(b2)
