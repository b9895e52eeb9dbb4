"""Evaluation of terms and formulas in a finite base."""

from __future__ import annotations

from collections.abc import Mapping
from itertools import product

from ..errors import ArgumentError, SemanticError
from ..order import Element
from ..scaled import ScaledBase
from .syntax import (
    And, At, Bot, C, Diff, Formula, Join, Meet, Not, One, Or, Quantified, Rel, Term, Top, Var, Zero,
)


def _scaled(base) -> ScaledBase:
    return base.base if hasattr(base, "weights") else base


def eval_term(base, assignment: Mapping[str, Element], t: Term) -> Element:
    sb = _scaled(base)
    if isinstance(t, Zero):
        return sb.zero
    if isinstance(t, One):
        return sb.one
    if isinstance(t, Var):
        try:
            return assignment[t.name]
        except KeyError:
            raise ArgumentError(f"unbound variable {t.name!r}") from None
    if isinstance(t, C):
        return eval_term(base, assignment, t.arg).c(t.k)
    left = eval_term(base, assignment, t.left)
    right = eval_term(base, assignment, t.right)
    if isinstance(t, Join):
        return left | right
    if isinstance(t, Meet):
        return left & right
    if isinstance(t, Diff):
        return left - right
    raise SemanticError(f"unknown term {t!r}")


def evaluate(base, assignment: Mapping[str, Element], f: Formula) -> bool:
    """Truth of ``f`` in the finite structure ``base`` under ``assignment``.

    Quantifiers range over the (finitely many) elements of ``base``.
    ``At_k`` needs an atom-weighted base.
    """
    if isinstance(f, Top):
        return True
    if isinstance(f, Bot):
        return False
    if isinstance(f, Rel):
        left = eval_term(base, assignment, f.left)
        right = eval_term(base, assignment, f.right)
        if f.op == "=":
            return left == right
        if f.op == "!=":
            return left != right
        return left <= right
    if isinstance(f, At):
        if not hasattr(base, "weights"):
            raise SemanticError("At_k is only interpreted in atom-weighted bases")
        return base.asc(eval_term(base, assignment, f.arg)) == f.k
    if isinstance(f, Not):
        return not evaluate(base, assignment, f.body)
    if isinstance(f, And):
        return evaluate(base, assignment, f.left) and evaluate(base, assignment, f.right)
    if isinstance(f, Or):
        return evaluate(base, assignment, f.left) or evaluate(base, assignment, f.right)
    if isinstance(f, Quantified):
        elems = _scaled(base).elements()
        results = (
            evaluate(base, {**assignment, **dict(zip(f.vars, combo))}, f.body)
            for combo in product(elems, repeat=len(f.vars))
        )
        return any(results) if f.kind == "E" else all(results)
    raise SemanticError(f"unknown formula {f!r}")


# the public name used by the rest of the package and the CLI
eval_formula = evaluate
