"""
Program evaluation: compiles AST goals into engine goals, runs queries and reads
answers back as walk_star of each query variable under the state's == substitution.
No projection or simplification of the residual constraints is performed.
"""
import logging
import time
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Mapping, Optional

from models import (
    BoolTerm, CallGoal, ConjGoal, ConstraintGoal, DisjGoal, FailGoal, FreshGoal, GoalExpr,
    IfteGoal, ListTerm, NilTerm, OnceGoal, Program, Query, SucceedGoal, SymbolTerm, TermExpr, VarRef,
)
from utils.engine import (
    Goal, Relation, State, Tick, call_fresh, call_initial_state, conj_all, disj_all, fail, ifte,
    iter_states, once, succeed,
)
from utils.errors import KanrenError, QueryTimeout
from utils.framework import EQ, ConstraintSystem, valid_eq
from utils.terms import FALSE, NIL, TRUE, Sym, Term, Var, lst, walk_star

logger = logging.getLogger(__name__)

Env = Mapping[str, Term]


@dataclass(frozen=True)
class Answer:
    state: State
    bindings: Dict[str, Term] = field(default_factory=dict)

    @property
    def readback(self) -> Term:
        """The single variable's term, or the list of all readbacks for multi-variable queries."""
        terms = list(self.bindings.values())
        return terms[0] if len(terms) == 1 else lst(*terms)


class Deadline:
    """Cooperative wall-clock budget; pass `check` as the engine's tick hook."""

    def __init__(self, seconds: Optional[float]):
        self.seconds = seconds
        self.expires_at = None if seconds is None else time.monotonic() + seconds

    def check(self) -> None:
        if self.expires_at is not None and time.monotonic() >= self.expires_at:
            raise QueryTimeout(self.seconds)

    @property
    def tick(self) -> Tick:
        return None if self.expires_at is None else self.check


class ProgramEvaluator:
    def __init__(self, program: Program, system: ConstraintSystem):
        self.program = program
        self.system = system
        self._constraints = {rel: system.goal(rel) for rel in system.relation_ids}
        self.relations: Dict[str, Relation] = {
            d.name: Relation(d.name, len(d.params), self._relation_body(d.params, d.body))
            for d in program.definitions
        }

    def _relation_body(self, params: List[str], body: GoalExpr):
        def build(*args: Term) -> Goal:
            return self.goal(body, dict(zip(params, args)))
        return build

    def goal(self, expr: GoalExpr, env: Env) -> Goal:
        if isinstance(expr, SucceedGoal):
            return succeed
        if isinstance(expr, FailGoal):
            return fail
        if isinstance(expr, ConstraintGoal):
            constructor = self._constraints.get(expr.relation)
            if constructor is None:
                raise KanrenError(f"relation {expr.relation!r} is not part of system {self.system.name}")
            return constructor(*(self.term(a, env) for a in expr.args))
        if isinstance(expr, CallGoal):
            relation = self.relations.get(expr.relation)
            if relation is None:
                raise KanrenError(f"undefined relation {expr.relation!r}")
            return relation(*(self.term(a, env) for a in expr.args))
        if isinstance(expr, DisjGoal):
            return disj_all(*(self.goal(g, env) for g in expr.goals))
        if isinstance(expr, ConjGoal):
            return conj_all(*(self.goal(g, env) for g in expr.goals))
        if isinstance(expr, FreshGoal):
            return call_fresh(lambda v: self.goal(expr.body, {**env, expr.var: v}))
        if isinstance(expr, IfteGoal):
            return ifte(self.goal(expr.test, env), self.goal(expr.then, env), self.goal(expr.otherwise, env))
        if isinstance(expr, OnceGoal):
            return once(self.goal(expr.goal, env))
        raise KanrenError(f"unknown goal expression {expr!r}")

    def term(self, expr: TermExpr, env: Env) -> Term:
        if isinstance(expr, VarRef):
            try:
                return env[expr.name]
            except KeyError:
                raise KanrenError(f"unbound identifier {expr.name!r}") from None
        if isinstance(expr, SymbolTerm):
            return Sym(expr.name)
        if isinstance(expr, BoolTerm):
            return TRUE if expr.value else FALSE
        if isinstance(expr, NilTerm):
            return NIL
        if isinstance(expr, ListTerm):
            return lst(*(self.term(item, env) for item in expr.items), tail=self.term(expr.tail, env))
        raise KanrenError(f"unknown term expression {expr!r}")

    def query_goal(self, query: Query) -> Goal:
        """Nested call_fresh over the query variables, left to right."""
        def bind(i: int, env: Dict[str, Term]) -> Goal:
            if i == len(query.variables):
                return self.goal(query.goal, env)
            name = query.variables[i]
            return call_fresh(lambda v: bind(i + 1, {**env, name: v}))
        return bind(0, {})

    def readback(self, query: Query, state: State) -> Answer:
        s = valid_eq(state.store[EQ])
        return Answer(state, {name: walk_star(Var(i), s) for i, name in enumerate(query.variables)})

    def run_query(self, query: Query, count: Optional[int], tick: Tick = None) -> List[Answer]:
        if count is not None and count <= 0:
            return []
        states = call_initial_state(count, self.query_goal(query), self.system, tick)
        return [self.readback(query, state) for state in states]

    def answers(self, query: Query, count: Optional[int], tick: Tick = None) -> Iterator[Answer]:
        """Like run_query, but yields each answer as soon as it is found."""
        if count is not None and count <= 0:
            return
        start = State(self.system.initial_store(), 0)
        found = 0
        for state in iter_states(self.query_goal(query)(start), tick):
            yield self.readback(query, state)
            found += 1
            if count is not None and found >= count:
                return


def effective_count(query: Query, take: Optional[int] = None, take_all: bool = False) -> Optional[int]:
    if take_all:
        return None
    return query.count if take is None else take


def eval_program(ast: Program, system: ConstraintSystem, take: Optional[int] = None,
                 take_all: bool = False, tick: Tick = None) -> List[List[Answer]]:
    evaluator = ProgramEvaluator(ast, system)
    results = []
    for query in ast.queries:
        count = effective_count(query, take, take_all)
        started = time.perf_counter()
        answers = evaluator.run_query(query, count, tick)
        logger.debug(
            f"Query over {query.variables} on {system.name}: {len(answers)} answer(s) "
            f"in {(time.perf_counter() - started) * 1000:.1f} ms"
        )
        results.append(answers)
    return results
