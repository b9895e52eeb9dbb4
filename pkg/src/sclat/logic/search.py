"""Bounded decision procedures.

Quantifier-free satisfiability modulo the theory of d-subscaled lattices
reduces to a search over finite bases: a satisfying tuple generates a
finite substructure with at most ``mu(n, d)`` join-irreducibles.  The
search below enumerates candidate bases by increasing size and every
assignment of the variables.

Two observations shrink the candidate set without losing completeness.
Suppose a base is generated by ``n`` elements.

* Interchangeable points (same label, same points below and above) are
  separated by some generator, otherwise swapping them would be a
  non-trivial automorphism fixing every generated element.  So each class
  of interchangeable points has at most ``2^n`` members.
* Two maximal points with the same label that lie in exactly the same
  generators lie in exactly the same generated elements, yet the
  principal downset of one of them is generated.  So each label occurs
  on at most ``2^n`` maximal points.

For ``d <= 1`` these give a direct enumeration (an antichain of label-1
points, plus label-0 points grouped by the set of label-1 points above
them) that is complete once the size bound reaches
``2^n + 2^n * 2^(2^n)``.
"""

from __future__ import annotations

from collections.abc import Callable, Iterable, Iterator
from dataclasses import dataclass, field
from itertools import combinations, product

from ..asc import AscBase, completion_invariant
from ..canon import canonical_form
from ..enumeration import enumerate_bases
from ..errors import ArgumentError, RefusalError
from ..order import Element, Poset
from ..scaled import ScaledBase, closure_masks, generated_substructure, prime_substructure
from .semantics import eval_term, evaluate
from .syntax import (
    And, At, Bot, C, Diff, Formula, Join, Meet, Not, One, Or, Quantified, Rel, Term, Top, Zero,
    at_indices, conj, is_quantifier_free, ordered_vars,
)

DEFAULT_CAP = 12


def mu(n: int, d: int) -> int:
    """``mu(n, d) = 2^n + mu(2^(n+1), d-1)`` with ``mu(n, d) = 0`` for ``d < 0``."""
    total = 0
    while d >= 0:
        total += 2 ** n
        n = 2 ** (n + 1)
        d -= 1
    return total


def structural_bound(n: int, d: int) -> int:
    """Size beyond which no ``n``-generated base needs to be searched."""
    if d < 0:
        return 0
    if d == 0:
        return 2 ** n
    if d == 1:
        return 2 ** n + 2 ** n * 2 ** (2 ** n)
    return mu(n, d)


def complete_bound(n: int, d: int) -> int:
    return min(mu(n, d), structural_bound(n, d))


# ---- candidate bases ---------------------------------------------------------------


def _compositions(total: int, parts: int, cap: int) -> Iterator[tuple[int, ...]]:
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(min(total, cap), -1, -1):
        for rest in _compositions(total - first, parts - 1, cap):
            yield (first, *rest)


def _small_candidates(d: int, n: int, size: int) -> Iterator[ScaledBase]:
    """Bases of exactly ``size`` points for ``d <= 1`` obeying the 2^n limits."""
    lim = 2 ** n
    seen: set[bytes] = set()
    top_choices = range(min(lim, size) + 1) if d >= 1 else range(1)
    for b in top_choices:
        tops = [f"t{i}" for i in range(b)]
        ups = [U for r in range(b + 1) for U in combinations(range(b), r)]
        for mult in _compositions(size - b, len(ups), lim):
            ids = list(tops)
            labels = {t: 1 for t in tops}
            covers = []
            for U, m in zip(ups, mult):
                for j in range(m):
                    z = "z" + "".join(map(str, U)) + f"_{j}"
                    ids.append(z)
                    labels[z] = 0
                    covers.extend((z, tops[u]) for u in U)
            base = ScaledBase(Poset(ids, covers), d, labels)
            key = canonical_form(base)
            if key not in seen:
                seen.add(key)
                yield base


def _respects_limits(base: ScaledBase, n: int) -> bool:
    lim = 2 ** n
    p = base.poset
    classes: dict[tuple, int] = {}
    maxi: dict[int, int] = {}
    for i in range(p.n):
        key = (base.labels[i], p.below[i], p.above[i])
        classes[key] = classes.get(key, 0) + 1
        if not p.above[i]:
            maxi[base.labels[i]] = maxi.get(base.labels[i], 0) + 1
    return all(v <= lim for v in classes.values()) and all(v <= lim for v in maxi.values())


def candidate_bases(d: int, n: int, bound: int) -> Iterator[ScaledBase]:
    """Every base that an ``n``-generated d-subscaled lattice of at most
    ``bound`` irreducibles can have, by increasing size, up to isomorphism."""
    if d <= 1:
        for size in range(bound + 1):
            yield from _small_candidates(d, n, size)
    else:
        for base in enumerate_bases(d, bound):
            if _respects_limits(base, n):
                yield base


# ---- outcomes -------------------------------------------------------------------------


@dataclass
class Witness:
    base: object  # ScaledBase or AscBase
    assignment: dict[str, Element]

    def to_json(self) -> dict:
        from ..io import base_to_json

        return {
            "lattice": base_to_json(self.base),
            "assignment": {v: a.key() for v, a in self.assignment.items()},
        }


@dataclass
class DecisionOutcome:
    verdict: str  # SAT, UNSAT, TRUE or FALSE
    witness: Witness | None
    bound_used: int
    exhaustive: bool
    mu: int
    searched: int = 0
    notes: list[str] = field(default_factory=list)

    @property
    def decided(self) -> bool:
        return self.witness is not None or self.exhaustive

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "exhaustive": self.exhaustive,
            "bound_used": self.bound_used,
            "mu": str(self.mu) if self.mu > 2 ** 53 else self.mu,
            "bases_searched": self.searched,
            "witness": None if self.witness is None else self.witness.to_json(),
            "notes": self.notes,
        }


@dataclass
class _SearchResult:
    witness: Witness | None
    searched: int
    budget_hit: bool


def _evaluate3(base: ScaledBase, assignment: dict, f: Formula) -> bool | None:
    """Kleene evaluation with every ``At_k`` literal unknown (``None``).

    Used to discard assignments before trying atom weights: when the
    result is ``False`` no choice of weights can make ``f`` true.
    """
    if isinstance(f, Top):
        return True
    if isinstance(f, Bot):
        return False
    if isinstance(f, At):
        return None
    if isinstance(f, Rel):
        return evaluate(base, assignment, f)
    if isinstance(f, Not):
        v = _evaluate3(base, assignment, f.body)
        return None if v is None else not v
    left = _evaluate3(base, assignment, f.left)
    if isinstance(f, And):
        if left is False:
            return False
        right = _evaluate3(base, assignment, f.right)
        if right is False:
            return False
        return True if left and right else None
    if isinstance(f, Or):
        if left is True:
            return True
        right = _evaluate3(base, assignment, f.right)
        if right is True:
            return True
        return False if left is False and right is False else None
    raise ArgumentError("quantifiers are not allowed here")


def _at_args(f: Formula) -> list[Term]:
    if isinstance(f, At):
        return [f.arg]
    if isinstance(f, Not):
        return _at_args(f.body)
    if isinstance(f, (And, Or)):
        return _at_args(f.left) + _at_args(f.right)
    return []


def _weight_choices(base: ScaledBase, relevant: list[int], cap: int) -> Iterator[AscBase]:
    """Atom weightings that realise every pattern of capped asc values.

    Only the atoms lying in some relevant value matter.  Atoms with the same
    membership across the relevant values form a cell, and a value's count
    depends on each cell only through "some atom has weight 0" or the cell
    total.  Totals above ``cap`` behave alike, so each cell is either zeroed
    or given a total between its size and ``max(size, cap)``.
    """
    p = base.poset
    atoms = [i for i in range(p.n) if base.labels[i] == 0]
    cells: dict[tuple, list[int]] = {}
    for i in atoms:
        pattern = tuple(bool(v >> i & 1) for v in relevant)
        if any(pattern):
            cells.setdefault(pattern, []).append(i)
    groups = list(cells.values())
    options = [[0, *range(len(g), max(len(g), cap) + 1)] for g in groups]
    for totals in product(*options):
        weights = {}
        for g, t in zip(groups, totals):
            if t:
                for i in g:
                    weights[p.ids[i]] = 1
                weights[p.ids[g[0]]] = t - len(g) + 1
        yield AscBase(base, weights)


def _search(
    matrix: Formula,
    variables: list[str],
    d: int,
    bound: int,
    asc_cap: int | None,
    accept: Callable[[object], bool] | None,
    max_bases: int | None,
    prime_atoms: Callable[[ScaledBase], list[int]] | None = None,
) -> _SearchResult:
    n = len(variables)
    searched = 0
    at_terms = _at_args(matrix)
    for base in candidate_bases(d, n, bound):
        if max_bases is not None and searched >= max_bases:
            return _SearchResult(None, searched, True)
        searched += 1
        combos = product(base.elements(), repeat=n)
        if asc_cap is None:
            if accept is not None and not accept(base):
                continue
            for combo in combos:
                assignment = dict(zip(variables, combo))
                if evaluate(base, assignment, matrix):
                    return _SearchResult(Witness(base, assignment), searched, False)
            continue
        fixed = prime_atoms(base) if prime_atoms is not None else []
        for combo in combos:
            assignment = dict(zip(variables, combo))
            if _evaluate3(base, assignment, matrix) is False:
                continue
            relevant = fixed + [eval_term(base, assignment, t).mask for t in at_terms]
            for s in _weight_choices(base, relevant, asc_cap):
                if accept is not None and not accept(s):
                    continue
                if evaluate(s, assignment, matrix):
                    return _SearchResult(Witness(s, assignment), searched, False)
    return _SearchResult(None, searched, False)


def _check_witness(w: Witness, matrix: Formula, n: int, d: int) -> None:
    if not evaluate(w.base, w.assignment, matrix):
        raise AssertionError("witness does not satisfy the formula")
    base = w.base.base if isinstance(w.base, AscBase) else w.base
    gen = generated_substructure(base, list(w.assignment.values()))
    if gen.base.poset.n > mu(n, d):
        raise AssertionError("generated substructure exceeds the mu bound")


def _asc_cap(f: Formula, extra: int = 0) -> int:
    """Largest atom count worth distinguishing: one above every index in play."""
    return max([*at_indices(f), extra], default=0) + 1


def sat_qf(
    phi: Formula,
    d: int,
    bound_override: int | None = None,
    cap: int = DEFAULT_CAP,
    asc: bool = False,
    max_bases: int | None = None,
    k_cap: Iterable[int] | None = None,
) -> DecisionOutcome:
    """Satisfiability of a quantifier-free formula in some d-subscaled lattice.

    With ``asc`` (implied when ``phi`` mentions some ``At_k``) the models are
    sub-ASC lattices; atom weights above the largest index ``K`` in ``phi``
    all behave alike, so weights ``0..K+1`` suffice.  ``k_cap`` may raise
    that ceiling to its largest value.
    """
    if not is_quantifier_free(phi):
        raise ArgumentError("sat_qf needs a quantifier-free formula")
    if d < 0:
        raise ArgumentError("d must be non-negative")
    variables = ordered_vars(phi)
    n = len(variables)
    m = mu(n, d)
    bound = bound_override if bound_override is not None else min(m, cap)
    asc = asc or bool(at_indices(phi))
    asc_cap = _asc_cap(phi, max(k_cap or (), default=0)) if asc or k_cap else None
    res = _search(phi, variables, d, bound, asc_cap, None, max_bases)
    if res.witness is not None:
        _check_witness(res.witness, phi, n, d)
        return DecisionOutcome("SAT", res.witness, bound, True, m, res.searched)
    exhaustive = bound >= complete_bound(n, d) and not res.budget_hit
    notes = []
    if not exhaustive:
        notes.append(
            "bound-capped: no witness with at most "
            f"{bound} irreducibles; completeness needs {complete_bound(n, d)}"
            + (" (base budget exhausted)" if res.budget_hit else "")
        )
    return DecisionOutcome("UNSAT", None, bound, exhaustive, m, res.searched, notes)


# ---- sentences over a prime model ---------------------------------------------------


def _is_prime(base: ScaledBase) -> list[Element]:
    """Elements of ``base`` not generated by the empty set."""
    gen = closure_masks(base, [])
    return [Element(base, m) for m in base.poset.all_masks if m not in gen]


def decide_exists(
    prime,
    phi: Formula,
    d: int | None = None,
    cap: int = DEFAULT_CAP,
    max_bases: int | None = None,
    k_cap: Iterable[int] | None = None,
) -> DecisionOutcome:
    """Truth of an E- or A-sentence in the completion fixed by ``prime``.

    ``prime`` is a ScaledBase (or an AscBase for the ASC theory) generated
    by the empty set.  An E-sentence holds iff some finite base whose prime
    substructure is isomorphic to ``prime`` satisfies the matrix; an
    A-sentence is decided through its negation.
    """
    asc_mode = isinstance(prime, AscBase)
    sb = prime.base if asc_mode else prime
    extra = _is_prime(sb)
    if extra:
        shown = ", ".join(repr(e) for e in extra[:8])
        raise RefusalError(f"input is not generated by the empty set; extra elements: {shown}")
    if asc_mode and not prime.is_standard():
        raise RefusalError("ASC decisions need a standard prime (every atom with a positive count)")
    d = sb.d if d is None else d
    if sb.poset.n and max(sb.labels) > d:
        raise ArgumentError(f"the prime uses labels above d = {d}")
    if isinstance(phi, Quantified):
        kind, variables, body = phi.kind, list(phi.vars), phi.body
    else:
        kind, variables, body = "E", [], phi
    if not is_quantifier_free(body):
        raise ArgumentError("only a single quantifier block is supported")
    if at_indices(body) and not asc_mode:
        raise ArgumentError("At_k needs an atom-weighted prime")
    matrix = body if kind == "E" else Not(body)
    n = len(variables)
    m = mu(n, d)
    bound = min(m, cap)

    if asc_mode:
        target = completion_invariant(prime)
        asc_cap = _asc_cap(body, max([*prime.weights, *(k_cap or ())], default=0))

        def accept(s):
            return completion_invariant(s) == target

        def prime_atoms(s: ScaledBase) -> list[int]:
            sub = prime_substructure(s)
            return [sub.point_masks[i] for i, lab in enumerate(sub.base.labels) if lab == 0]
    else:
        target = canonical_form(prime_substructure(sb).base)
        asc_cap = None
        prime_atoms = None

        def accept(s):
            return canonical_form(prime_substructure(s).base) == target

    res = _search(matrix, variables, d, bound, asc_cap, accept, max_bases, prime_atoms)
    exhaustive = res.witness is not None or (bound >= complete_bound(n, d) and not res.budget_hit)
    notes = []
    if res.witness is not None:
        _check_witness(res.witness, matrix, n, d)
        if not accept(res.witness.base):
            raise AssertionError("witness prime differs from the input prime")
    elif not exhaustive:
        notes.append(f"bound-capped: searched bases with at most {bound} irreducibles")
    if kind == "E":
        verdict = "TRUE" if res.witness is not None else "FALSE"
    else:
        verdict = "FALSE" if res.witness is not None else "TRUE"
        if res.witness is not None:
            notes.append("witness is a counterexample to the universal sentence")
    return DecisionOutcome(verdict, res.witness, bound, exhaustive, m, res.searched, notes)


def decide_theory(
    phi: Formula,
    d: int,
    cap: int = DEFAULT_CAP,
    asc: bool = False,
    max_bases: int | None = None,
    k_cap: Iterable[int] | None = None,
) -> DecisionOutcome:
    """A sentence against the whole theory, without fixing a prime model.

    An E-sentence is TRUE when it holds in some model (its matrix is
    satisfiable); an A-sentence is TRUE when it holds in every model (the
    negated matrix is unsatisfiable).
    """
    if isinstance(phi, Quantified):
        kind, body = phi.kind, phi.body
    else:
        kind, body = "E", phi
    out = sat_qf(body if kind == "E" else Not(body), d, cap=cap, asc=asc, max_bases=max_bases, k_cap=k_cap)
    found = out.verdict == "SAT"
    out.verdict = ("TRUE" if found else "FALSE") if kind == "E" else ("FALSE" if found else "TRUE")
    if kind == "A" and found:
        out.notes.append("witness is a counterexample to the universal sentence")
    return out


def theory_equal(b1, b2, asc_mode: bool = False) -> bool:
    """Equal completions: isomorphic prime substructures (with atom counts in ASC mode)."""
    if asc_mode:
        return completion_invariant(_as_asc(b1)) == completion_invariant(_as_asc(b2))
    s1 = b1.base if isinstance(b1, AscBase) else b1
    s2 = b2.base if isinstance(b2, AscBase) else b2
    return canonical_form(prime_substructure(s1).base) == canonical_form(prime_substructure(s2).base)


def _as_asc(b) -> AscBase:
    """An AscBase as is; a plain base gets its atom expansion (one atom each)."""
    if isinstance(b, AscBase):
        return b
    return AscBase(b, {x: 1 for x, lab in zip(b.poset.ids, b.labels) if lab == 0})


# ---- prime diagrams ---------------------------------------------------------------------


def _closed_terms(base: ScaledBase) -> dict[int, Term]:
    """A closed term for every element generated by the empty set."""
    p = base.poset
    terms: dict[int, Term] = {0: Zero(), p.full: One()}
    frontier = list(terms)
    while frontier:
        nxt = []
        known = list(terms.items())
        for m, t in list(terms.items()):
            for k in range(base.d + 1):
                c = base.ck_mask(m, k)
                if c not in terms:
                    terms[c] = C(k, t)
                    nxt.append(c)
            for o, u in known:
                for val, node in ((m | o, Join(t, u)), (m & o, Meet(t, u)), (p.diff_mask(m, o), Diff(t, u))):
                    if val not in terms:
                        terms[val] = node
                        nxt.append(val)
        frontier = nxt
    return terms


def prime_diagram(prime: ScaledBase) -> Formula:
    """Quantifier-free sentence true in a base iff its prime is isomorphic to ``prime``."""
    terms = _closed_terms(prime)
    p = prime.poset
    facts: list[Formula] = []
    masks = sorted(terms, key=lambda m: (m.bit_count(), m))
    for a in masks:
        for k in range(prime.d + 1):
            facts.append(Rel("=", C(k, terms[a]), terms[prime.ck_mask(a, k)]))
        for b in masks:
            facts.append(Rel("=", Join(terms[a], terms[b]), terms[a | b]))
            facts.append(Rel("=", Meet(terms[a], terms[b]), terms[a & b]))
            facts.append(Rel("=", Diff(terms[a], terms[b]), terms[p.diff_mask(a, b)]))
            if a < b:
                facts.append(Rel("!=", terms[a], terms[b]))
    return conj(*facts)
