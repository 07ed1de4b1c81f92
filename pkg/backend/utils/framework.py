"""
Constraint-system generator.

A language designer registers relation identifiers (with arities) and an ordered
list of violation predicates. The resulting ConstraintSystem provides the initial
store, the store extension, the goal constructors and `invalid`, the total
satisfiability check: solve the == field by unification, then ask every
predicate whether the remaining constraints are violated modulo that substitution.
"""
import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

from utils.engine import EMPTY, Goal, State, Stream, unit
from utils.errors import ArityError, ConstraintSystemError
from utils.terms import EMPTY_SUBST, Pair, Substitution, Term, unify

logger = logging.getLogger(__name__)

EQ = "=="


def pack(ts: Sequence[Term]) -> Term:
    """Right-nested packing of constraint arguments; the last argument is the final tail."""
    if not ts:
        raise ValueError("cannot pack an empty argument list")
    result = ts[-1]
    for t in reversed(ts[:-1]):
        result = Pair(t, result)
    return result


def unpack(t: Term, arity: int) -> Tuple[Term, ...]:
    args = []
    for _ in range(arity - 1):
        if not isinstance(t, Pair):
            raise ValueError(f"packed tuple too short for arity {arity}")
        args.append(t.head)
        t = t.tail
    args.append(t)
    return tuple(args)


class ConstraintStore:
    """
    Immutable map from relation id to its packed tuples, newest first.
    Every registered id is present from creation; lists only ever grow.
    """

    __slots__ = ("_arities", "_fields")

    def __init__(self, arities: Mapping[str, int], fields: Dict[str, Tuple[Term, ...]]):
        self._arities = arities
        self._fields = fields

    @classmethod
    def empty(cls, arities: Mapping[str, int]) -> "ConstraintStore":
        return cls(arities, {key: () for key in arities})

    @property
    def arities(self) -> Mapping[str, int]:
        return self._arities

    def keys(self) -> Iterator[str]:
        return iter(self._fields)

    def items(self) -> Iterator[Tuple[str, Tuple[Term, ...]]]:
        return iter(self._fields.items())

    def __getitem__(self, key: str) -> Tuple[Term, ...]:
        try:
            return self._fields[key]
        except KeyError:
            raise ConstraintSystemError(f"unknown relation {key!r}") from None

    def __contains__(self, key: str) -> bool:
        return key in self._fields

    def extend(self, key: str, packed: Term) -> "ConstraintStore":
        fields = dict(self._fields)
        fields[key] = (packed,) + self[key]
        return ConstraintStore(self._arities, fields)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ConstraintStore):
            return NotImplemented
        return list(self._fields.items()) == list(other._fields.items())

    __hash__ = None

    def __repr__(self) -> str:
        sizes = ", ".join(f"{key}: {len(tuples)}" for key, tuples in self._fields.items())
        return f"ConstraintStore({sizes})"


class StoreView(Mapping):
    """Read-only view of a store's constraint lists, minus the == field."""

    def __init__(self, store: ConstraintStore):
        self._store = store

    @property
    def store(self) -> ConstraintStore:
        return self._store

    def __getitem__(self, key: str) -> Tuple[Term, ...]:
        if key == EQ or key not in self._store:
            raise KeyError(key)
        return self._store[key]

    def __iter__(self) -> Iterator[str]:
        return (key for key in self._store.keys() if key != EQ)

    def __len__(self) -> int:
        return len(self._store.arities) - 1

    def terms(self, key: str) -> Tuple[Term, ...]:
        """Raw packed tuples; for a unary relation these are the constrained terms."""
        return self[key]

    def tuples(self, key: str) -> List[Tuple[Term, ...]]:
        arity = self._store.arities[key]
        return [unpack(packed, arity) for packed in self[key]]


@dataclass(frozen=True)
class ViolationPredicate:
    name: str
    check: Callable[[StoreView, Substitution], bool]

    def __call__(self, view: StoreView, s: Substitution) -> bool:
        return self.check(view, s)


@dataclass(frozen=True)
class ConstraintSystem:
    """Registered relations (== is implicit) and the predicates that define their violations."""

    name: str
    relations: Tuple[Tuple[str, int], ...] = ()
    predicates: Tuple[ViolationPredicate, ...] = field(default=())

    def __post_init__(self):
        seen = {EQ}
        for rel, arity in self.relations:
            if rel in seen:
                raise ConstraintSystemError(f"relation {rel!r} registered twice or reserved")
            if arity < 1:
                raise ConstraintSystemError(f"relation {rel!r} needs arity >= 1, got {arity}")
            seen.add(rel)
        names = [p.name for p in self.predicates]
        if len(set(names)) != len(names):
            raise ConstraintSystemError(f"duplicate predicate names in {names}")

    @cached_property
    def arities(self) -> Dict[str, int]:
        return {EQ: 2, **dict(self.relations)}

    @property
    def relation_ids(self) -> Tuple[str, ...]:
        return tuple(self.arities)

    def arity(self, key: str) -> int:
        try:
            return self.arities[key]
        except KeyError:
            raise ConstraintSystemError(f"relation {key!r} is not registered in {self.name}") from None

    def initial_store(self) -> ConstraintStore:
        return initial_store(self)

    def invalid(self, store: ConstraintStore) -> bool:
        return invalid(store, self)

    def goal(self, key: str) -> Callable[..., Goal]:
        return constraint_goal(key, self)

    def without_predicate(self, name: str) -> "ConstraintSystem":
        kept = tuple(p for p in self.predicates if p.name != name)
        if len(kept) == len(self.predicates):
            raise ConstraintSystemError(f"no predicate named {name!r} in {self.name}")
        return ConstraintSystem(f"{self.name}-without-{name}", self.relations, kept)

    def describe(self) -> dict:
        return {
            "name": self.name,
            "relations": [{"name": rel, "arity": arity} for rel, arity in self.arities.items()],
            "predicates": [p.name for p in self.predicates],
        }


class ConstraintSystemBuilder:
    def __init__(self, name: str = "custom"):
        self.name = name
        self._relations: List[Tuple[str, int]] = []
        self._predicates: List[ViolationPredicate] = []

    def relation(self, name: str, arity: int) -> "ConstraintSystemBuilder":
        self._relations.append((name, arity))
        return self

    def predicate(self, check: Callable[[StoreView, Substitution], bool],
                  name: Optional[str] = None) -> "ConstraintSystemBuilder":
        self._predicates.append(ViolationPredicate(name or check.__name__, check))
        return self

    def build(self) -> ConstraintSystem:
        system = ConstraintSystem(self.name, tuple(self._relations), tuple(self._predicates))
        logger.debug(
            f"Built constraint system {system.name}: relations={list(system.arities)}, "
            f"{len(system.predicates)} predicate(s)"
        )
        return system


def make_constraint_system(relations: Sequence[Tuple[str, int]],
                           *predicates: Callable[[StoreView, Substitution], bool],
                           name: str = "custom") -> ConstraintSystem:
    builder = ConstraintSystemBuilder(name)
    for rel, arity in relations:
        builder.relation(rel, arity)
    for check in predicates:
        builder.predicate(check)
    return builder.build()


def initial_store(system: ConstraintSystem) -> ConstraintStore:
    return ConstraintStore.empty(system.arities)


def ext_store(store: ConstraintStore, key: str, ts: Sequence[Term]) -> ConstraintStore:
    if key not in store:
        raise ConstraintSystemError(f"unknown relation {key!r}")
    arity = store.arities[key]
    if len(ts) != arity:
        raise ArityError(key, arity, len(ts))
    return store.extend(key, pack(ts))


def valid_eq(eqs: Sequence[Term]) -> Optional[Substitution]:
    """Fold unify over the == tuples, oldest first; None when they are unsatisfiable."""
    s = EMPTY_SUBST
    for pr in reversed(eqs):
        s = unify(pr.head, pr.tail, s)
        if s is None:
            return None
    return s


def invalid(store: ConstraintStore, system: ConstraintSystem) -> bool:
    s = valid_eq(store[EQ])
    if s is None:
        return True
    view = StoreView(store)
    return any(p(view, s) for p in system.predicates)


def constraint_goal(key: str, system: ConstraintSystem) -> Callable[..., Goal]:
    arity = system.arity(key)

    def constructor(*ts: Term) -> Goal:
        if len(ts) != arity:
            raise ArityError(key, arity, len(ts))

        def goal(state: State) -> Stream:
            store = ext_store(state.store, key, ts)
            if system.invalid(store):
                return EMPTY
            return unit(State(store, state.counter))
        return goal

    constructor.__name__ = key
    constructor.__qualname__ = f"{system.name}.{key}"
    return constructor
