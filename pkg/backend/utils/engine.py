"""
microKanren control core: states, lazy interleaving streams, goal combinators,
relation delay, soft-cut and committed choice, and query evaluation.

A stream is Empty, a Mature node (a state and the rest of the stream) or an
Immature node wrapping a thunk. Immature nodes are forced by name, never cached.
"""
import inspect
import logging
from dataclasses import dataclass
from typing import TYPE_CHECKING, Callable, Iterator, List, Optional, Union

from utils.errors import ArityError
from utils.terms import Term, Var

if TYPE_CHECKING:
    from utils.framework import ConstraintStore, ConstraintSystem

logger = logging.getLogger(__name__)

Tick = Optional[Callable[[], None]]


@dataclass(frozen=True, slots=True)
class State:
    store: "ConstraintStore"
    counter: int = 0


@dataclass(frozen=True, slots=True)
class Empty:
    pass


@dataclass(frozen=True, slots=True)
class Mature:
    head: State
    rest: "Stream"


class Immature:
    __slots__ = ("thunk",)

    def __init__(self, thunk: Callable[[], "Stream"]):
        self.thunk = thunk

    def force(self) -> "Stream":
        return self.thunk()

    def __repr__(self) -> str:
        return "Immature(...)"


Stream = Union[Empty, Mature, Immature]
Goal = Callable[[State], Stream]

EMPTY = Empty()


def unit(state: State) -> Stream:
    return Mature(state, EMPTY)


def succeed(state: State) -> Stream:
    return unit(state)


def fail(state: State) -> Stream:
    return EMPTY


def call_fresh(body: Callable[[Var], Goal]) -> Goal:
    def goal(state: State) -> Stream:
        return body(Var(state.counter))(State(state.store, state.counter + 1))
    return goal


def append_streams(s1: Stream, s2: Stream) -> Stream:
    heads = []
    while isinstance(s1, Mature):
        heads.append(s1.head)
        s1 = s1.rest
    if isinstance(s1, Immature):
        suspended = s1
        # swap on suspension
        result = Immature(lambda: append_streams(s2, suspended.force()))
    else:
        result = s2
    for head in reversed(heads):
        result = Mature(head, result)
    return result


def append_map_streams(g: Goal, s: Stream) -> Stream:
    heads = []
    while isinstance(s, Mature):
        heads.append(s.head)
        s = s.rest
    if isinstance(s, Immature):
        suspended = s
        result = Immature(lambda: append_map_streams(g, suspended.force()))
    else:
        result = EMPTY
    for head in reversed(heads):
        result = append_streams(g(head), result)
    return result


def disj(g1: Goal, g2: Goal) -> Goal:
    def goal(state: State) -> Stream:
        return append_streams(g1(state), g2(state))
    return goal


def conj(g1: Goal, g2: Goal) -> Goal:
    def goal(state: State) -> Stream:
        return append_map_streams(g2, g1(state))
    return goal


def disj_all(*goals: Goal) -> Goal:
    if not goals:
        return fail
    result = goals[-1]
    for g in reversed(goals[:-1]):
        result = disj(g, result)
    return result


def conj_all(*goals: Goal) -> Goal:
    if not goals:
        return succeed
    result = goals[-1]
    for g in reversed(goals[:-1]):
        result = conj(g, result)
    return result


class Relation:
    """
    A user relation. Applying it to terms gives a goal whose stream is an
    Immature node; the body is only built and run when that node is forced.
    """

    def __init__(self, name: str, arity: int, body: Callable[..., Goal]):
        self.name = name
        self.arity = arity
        self.body = body

    def __call__(self, *args: Term) -> Goal:
        if len(args) != self.arity:
            raise ArityError(self.name, self.arity, len(args))
        body = self.body

        def goal(state: State) -> Stream:
            return Immature(lambda: body(*args)(state))
        return goal

    def __repr__(self) -> str:
        return f"Relation({self.name}/{self.arity})"


def defrel(name: str, arity: int, body: Callable[..., Goal]) -> Relation:
    return Relation(name, arity, body)


def relation(fn: Callable[..., Goal]) -> Relation:
    """Decorator form of defrel; the arity is read off the function signature."""
    arity = len(inspect.signature(fn).parameters)
    return Relation(fn.__name__, arity, fn)


def ifte(g1: Goal, g2: Goal, g3: Goal) -> Goal:
    def goal(state: State) -> Stream:
        def loop(s: Stream) -> Stream:
            if isinstance(s, Empty):
                return g3(state)
            if isinstance(s, Immature):
                return Immature(lambda: loop(s.force()))
            return append_map_streams(g2, s)
        return loop(g1(state))
    return goal


def once(g: Goal) -> Goal:
    def goal(state: State) -> Stream:
        def loop(s: Stream) -> Stream:
            if isinstance(s, Empty):
                return EMPTY
            if isinstance(s, Immature):
                return Immature(lambda: loop(s.force()))
            return unit(s.head)
        return loop(g(state))
    return goal


def pull(s: Stream, tick: Tick = None) -> Stream:
    while isinstance(s, Immature):
        if tick is not None:
            tick()
        s = s.force()
    return s


def iter_states(s: Stream, tick: Tick = None) -> Iterator[State]:
    """Yield mature states one at a time, pulling only when the next one is asked for."""
    s = pull(s, tick)
    while isinstance(s, Mature):
        yield s.head
        s = pull(s.rest, tick)


def take(n: Optional[int], s: Stream, tick: Tick = None) -> List[State]:
    """At most `n` states of `s`; every state when `n` is None (may diverge)."""
    if n is not None and n <= 0:
        return []
    states = []
    for state in iter_states(s, tick):
        states.append(state)
        if n is not None and len(states) >= n:
            break
    return states


def call_initial_state(n: Optional[int], g: Goal, system: "ConstraintSystem",
                       tick: Tick = None) -> List[State]:
    start = State(system.initial_store(), 0)
    states = take(n, pull(g(start), tick), tick)
    logger.debug(f"call_initial_state({n}) on {system.name}: {len(states)} state(s)")
    return states
