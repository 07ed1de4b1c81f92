"""
Standard constraint library: =/=, absento, symbolo, not-pairo, booleano and listo,
each defined only by the violation predicates below and packaged with
make_constraint_system. Predicates are registered separately, one per kind of
violation, and combined disjunctively by `invalid`.
"""
import logging
from functools import lru_cache
from typing import Callable, Dict

from utils.errors import ConstraintSystemError
from utils.framework import ConstraintSystem, ConstraintSystemBuilder, StoreView
from utils.terms import FALSE, NIL, TRUE, Bool, Nil, Pair, Substitution, Sym, Var, mem, same_s, unify, walk, walk_to_end

logger = logging.getLogger(__name__)

NEQ = "=/="
ABSENTO = "absento"
SYMBOLO = "symbolo"
NOT_PAIRO = "not-pairo"
BOOLEANO = "booleano"
LISTO = "listo"

STANDARD_RELATIONS = (
    (NEQ, 2),
    (ABSENTO, 2),
    (SYMBOLO, 1),
    (NOT_PAIRO, 1),
    (BOOLEANO, 1),
    (LISTO, 1),
)


def neq_violated(view: StoreView, s: Substitution) -> bool:
    return any(same_s(pr.head, pr.tail, s) for pr in view.terms(NEQ))


def absento_violated(view: StoreView, s: Substitution) -> bool:
    return any(mem(pr.head, pr.tail, s) for pr in view.terms(ABSENTO))


def symbolo_violated(view: StoreView, s: Substitution) -> bool:
    return any(not isinstance(walk(t, s), (Sym, Var)) for t in view.terms(SYMBOLO))


def not_pairo_violated(view: StoreView, s: Substitution) -> bool:
    return any(isinstance(walk(t, s), Pair) for t in view.terms(NOT_PAIRO))


def _not_b(view: StoreView, s: Substitution) -> bool:
    return neq_violated(view, s) or absento_violated(view, s)


def booleano_excluded_both(view: StoreView, s: Substitution) -> bool:
    """A booleano term that can be neither #t nor #f without breaking a =/= or absento."""
    for b in view.terms(BOOLEANO):
        s1 = unify(b, TRUE, s)
        # the second probe is #f on purpose; probing #t twice misses a term excluded only from #t
        s2 = unify(b, FALSE, s)
        if s1 is not None and s2 is not None and _not_b(view, s1) and _not_b(view, s2):
            return True
    return False


def booleano_non_boolean(view: StoreView, s: Substitution) -> bool:
    return any(not isinstance(walk(b, s), (Var, Bool)) for b in view.terms(BOOLEANO))


def booleano_symbolo_clash(view: StoreView, s: Substitution) -> bool:
    symbols = view.terms(SYMBOLO)
    return any(same_s(y, b, s) for b in view.terms(BOOLEANO) for y in symbols)


def listo_end_symbolo(view: StoreView, s: Substitution) -> bool:
    symbols = view.terms(SYMBOLO)
    for l in view.terms(LISTO):
        end = walk_to_end(l, s)
        if any(same_s(y, end, s) for y in symbols):
            return True
    return False


def listo_end_booleano(view: StoreView, s: Substitution) -> bool:
    booleans = view.terms(BOOLEANO)
    for l in view.terms(LISTO):
        end = walk_to_end(l, s)
        if any(same_s(b, end, s) for b in booleans):
            return True
    return False


def listo_end_nil_forbidden(view: StoreView, s: Substitution) -> bool:
    """The end is pinned by not-pairo, so it must be (), yet =/= or absento forbid ()."""
    not_pairs = view.terms(NOT_PAIRO)
    for l in view.terms(LISTO):
        end = walk_to_end(l, s)
        with_nil = unify(end, NIL, s)
        if with_nil is None:
            continue
        # not-pairo is checked under s, not with_nil
        if any(same_s(end, n, s) for n in not_pairs) and _not_b(view, with_nil):
            return True
    return False


def listo_nil_absent(view: StoreView, s: Substitution) -> bool:
    absent = view.terms(ABSENTO)
    for l in view.terms(LISTO):
        end = walk_to_end(l, s)
        for pr in absent:
            if isinstance(walk(pr.head, s), Nil) and mem(end, pr.tail, s):
                return True
    return False


def listo_end_constant(view: StoreView, s: Substitution) -> bool:
    """A listo term whose spine already ends in a symbol or a Boolean."""
    return any(isinstance(walk_to_end(l, s), (Sym, Bool)) for l in view.terms(LISTO))


def booleano_violations(view: StoreView, s: Substitution) -> bool:
    return (booleano_excluded_both(view, s)
            or booleano_non_boolean(view, s)
            or booleano_symbolo_clash(view, s))


def listo_violations(view: StoreView, s: Substitution) -> bool:
    return (listo_end_symbolo(view, s)
            or listo_end_booleano(view, s)
            or listo_end_nil_forbidden(view, s)
            or listo_nil_absent(view, s))


@lru_cache(maxsize=None)
def standard_system(strict_listo: bool = True) -> ConstraintSystem:
    builder = ConstraintSystemBuilder("standard" if strict_listo else "standard-lax")
    for rel, arity in STANDARD_RELATIONS:
        builder.relation(rel, arity)
    for check in (
        neq_violated,
        absento_violated,
        symbolo_violated,
        not_pairo_violated,
        booleano_excluded_both,
        booleano_non_boolean,
        booleano_symbolo_clash,
        listo_end_symbolo,
        listo_end_booleano,
        listo_end_nil_forbidden,
        listo_nil_absent,
    ):
        builder.predicate(check)
    if strict_listo:
        builder.predicate(listo_end_constant)
    return builder.build()


@lru_cache(maxsize=None)
def equality_only_system() -> ConstraintSystem:
    return ConstraintSystemBuilder("equality-only").build()


SYSTEMS: Dict[str, Callable[[], ConstraintSystem]] = {
    "standard": standard_system,
    "equality-only": equality_only_system,
}


def get_system(name: str) -> ConstraintSystem:
    try:
        factory = SYSTEMS[name]
    except KeyError:
        raise ConstraintSystemError(
            f"unknown constraint system {name!r}; choose from {', '.join(SYSTEMS)}"
        ) from None
    return factory()


STANDARD = standard_system()

eq = STANDARD.goal("==")
neq = STANDARD.goal(NEQ)
absento = STANDARD.goal(ABSENTO)
symbolo = STANDARD.goal(SYMBOLO)
not_pairo = STANDARD.goal(NOT_PAIRO)
booleano = STANDARD.goal(BOOLEANO)
listo = STANDARD.goal(LISTO)
