"""
Parser from s-expressions to the program AST.

Top-level forms are `(define-relation (name param ...) goal ...)`,
`(run N (var ...) goal ...)` and `(run* (var ...) goal ...)`. Definitions are
collected before any body is parsed, so relations may refer to each other in
any order. Several goals in a body are read as their conjunction.
"""
import logging
from typing import Dict, FrozenSet, List, Optional, Sequence

from models import (
    BoolTerm, CallGoal, ConjGoal, ConstraintGoal, Definition, DisjGoal, FailGoal, FreshGoal,
    GoalExpr, IfteGoal, ListTerm, NilTerm, OnceGoal, Program, Query, SucceedGoal, SymbolTerm,
    TermExpr, VarRef,
)
from utils.errors import ParseError
from utils.framework import ConstraintSystem
from utils.sexpr import SBool, SInt, SList, SNode, SSymbol, read_all
from utils.stdlib import standard_system

logger = logging.getLogger(__name__)

GOAL_FORMS = frozenset({"disj", "conj", "call/fresh", "ifte", "once", "succeed", "fail"})
SYNTAX = frozenset({"define-relation", "run", "run*", "lambda", "λ", "quote", "quasiquote", "unquote"})


def _fail_at(node: SNode, message: str):
    raise ParseError(message, node.line, node.column)


def make_list(items: Sequence[TermExpr], tail: TermExpr) -> TermExpr:
    """List term with `items` before `tail`, flattening a list-valued tail into one spine."""
    if isinstance(tail, ListTerm):
        items = list(items) + list(tail.items)
        tail = tail.tail
    if not items:
        return tail
    return ListTerm(items=list(items), tail=tail)


class ProgramParser:
    def __init__(self, system: ConstraintSystem):
        self.system = system
        self.constraints: Dict[str, int] = dict(system.arities)
        self.relations: Dict[str, int] = {}

    # ---- names ----

    def _reserved(self, name: str) -> bool:
        return name in GOAL_FORMS or name in SYNTAX or name in self.constraints

    def _binder(self, node: SNode, what: str) -> str:
        if not isinstance(node, SSymbol):
            _fail_at(node, f"{what} must be a symbol")
        if self._reserved(node.name):
            _fail_at(node, f"{node.name!r} is reserved and cannot name a {what}")
        if node.name in self.relations:
            _fail_at(node, f"{what} {node.name!r} shadows the relation of the same name")
        return node.name

    def _binders(self, node: SNode, what: str) -> List[str]:
        if not isinstance(node, SList) or node.tail is not None:
            _fail_at(node, f"expected a parenthesized list of {what}s")
        names = [self._binder(item, what) for item in node.items]
        for i, name in enumerate(names):
            if name in names[:i]:
                _fail_at(node.items[i], f"duplicate {what} {name!r}")
        return names

    # ---- top level ----

    def parse_program(self, nodes: List[SNode]) -> Program:
        headers = []
        for node in nodes:
            if isinstance(node, SList) and node.head_name == "define-relation":
                headers.append(self._header(node))
        definitions = [self._definition(node, name, params) for node, name, params in headers]
        queries = []
        for node in nodes:
            head = node.head_name if isinstance(node, SList) else None
            if head == "define-relation":
                continue
            if head in ("run", "run*"):
                queries.append(self._query(node))
            else:
                _fail_at(node, "expected define-relation, run or run* at top level")
        if not queries:
            raise ParseError("program has no run query", 1, 1)
        return Program(definitions=definitions, queries=queries)

    def _header(self, node: SList):
        if node.tail is not None or len(node.items) < 3:
            _fail_at(node, "define-relation needs a (name param ...) header and a body")
        header = node.items[1]
        if not isinstance(header, SList) or header.tail is not None or not header.items:
            _fail_at(header, "define-relation header must be (name param ...)")
        name_node = header.items[0]
        if not isinstance(name_node, SSymbol):
            _fail_at(name_node, "relation name must be a symbol")
        name = name_node.name
        if self._reserved(name):
            _fail_at(name_node, f"{name!r} is reserved and cannot name a relation")
        if name in self.relations:
            _fail_at(name_node, f"relation {name!r} is defined twice")
        self.relations[name] = len(header.items) - 1
        return node, name, header

    def _definition(self, node: SList, name: str, header: SList) -> Definition:
        params = self._binders(SList(header.items[1:], None, header.line, header.column), "parameter")
        body = self._body(node.items[2:], frozenset(params))
        return Definition(name=name, params=params, body=body)

    def _query(self, node: SList) -> Query:
        if node.tail is not None:
            _fail_at(node, "malformed run form")
        if node.head_name == "run":
            if len(node.items) < 4:
                _fail_at(node, "run needs a count, a variable list and a goal")
            count_node = node.items[1]
            if not isinstance(count_node, SInt) or count_node.value < 0:
                _fail_at(count_node, "run count must be a non-negative integer")
            count: Optional[int] = count_node.value
            rest = node.items[2:]
        else:
            if len(node.items) < 3:
                _fail_at(node, "run* needs a variable list and a goal")
            count = None
            rest = node.items[1:]
        variables = self._binders(rest[0], "query variable")
        if not variables:
            _fail_at(rest[0], "a query needs at least one variable")
        goal = self._body(rest[1:], frozenset(variables))
        return Query(count=count, variables=variables, goal=goal)

    def _body(self, nodes: Sequence[SNode], scope: FrozenSet[str]) -> GoalExpr:
        goals = [self.goal(g, scope) for g in nodes]
        return goals[0] if len(goals) == 1 else ConjGoal(goals=goals)

    # ---- goals ----

    def goal(self, node: SNode, scope: FrozenSet[str]) -> GoalExpr:
        if isinstance(node, SSymbol):
            if node.name == "succeed":
                return SucceedGoal()
            if node.name == "fail":
                return FailGoal()
            _fail_at(node, f"expected a goal, found {node.name!r}")
        if not isinstance(node, SList) or not node.items:
            _fail_at(node, "expected a goal")
        if node.tail is not None:
            _fail_at(node, "a goal cannot be a dotted list")
        head = node.head_name
        if head is None:
            _fail_at(node, "a goal must start with an operator name")
        args = node.items[1:]

        if head in ("disj", "conj"):
            goals = [self.goal(g, scope) for g in args]
            return DisjGoal(goals=goals) if head == "disj" else ConjGoal(goals=goals)
        if head == "call/fresh":
            self._expect_args(node, head, args, 1)
            return self._fresh(args[0], scope)
        if head == "ifte":
            self._expect_args(node, head, args, 3)
            test, then, otherwise = (self.goal(g, scope) for g in args)
            return IfteGoal(test=test, then=then, otherwise=otherwise)
        if head == "once":
            self._expect_args(node, head, args, 1)
            return OnceGoal(goal=self.goal(args[0], scope))
        if head in self.constraints:
            self._expect_args(node, head, args, self.constraints[head])
            return ConstraintGoal(relation=head, args=[self.term(a, scope) for a in args])
        if head in self.relations:
            self._expect_args(node, head, args, self.relations[head])
            return CallGoal(relation=head, args=[self.term(a, scope) for a in args])
        if head in scope:
            _fail_at(node, f"variable {head!r} cannot be applied as a goal")
        _fail_at(node, f"unknown operator {head!r}")

    @staticmethod
    def _expect_args(node: SList, head: str, args: Sequence[SNode], expected: int):
        if len(args) != expected:
            _fail_at(node, f"{head} expects {expected} argument(s), got {len(args)}")

    def _fresh(self, node: SNode, scope: FrozenSet[str]) -> FreshGoal:
        if not (isinstance(node, SList) and node.head_name in ("lambda", "λ") and node.tail is None):
            _fail_at(node, "call/fresh expects (lambda (x) goal)")
        if len(node.items) != 3:
            _fail_at(node, "call/fresh lambda takes one parameter list and one goal")
        params = self._binders(node.items[1], "fresh variable")
        if len(params) != 1:
            _fail_at(node.items[1], "call/fresh lambda takes exactly one parameter")
        var = params[0]
        return FreshGoal(var=var, body=self.goal(node.items[2], scope | {var}))

    # ---- terms ----

    def term(self, node: SNode, scope: FrozenSet[str]) -> TermExpr:
        if isinstance(node, SSymbol):
            if node.name in scope:
                return VarRef(name=node.name)
            _fail_at(node, f"unbound identifier {node.name!r} (quote it for a symbol)")
        if isinstance(node, SBool):
            return BoolTerm(value=node.value)
        if isinstance(node, SInt):
            _fail_at(node, "numeric literals are not terms")
        head = node.head_name
        if head == "quote":
            return self.datum(self._macro_arg(node))
        if head == "quasiquote":
            return self.quasi(self._macro_arg(node), scope)
        if head == "unquote":
            _fail_at(node, "unquote outside quasiquote")
        if not node.items:
            _fail_at(node, "empty list in term position; write '()")
        _fail_at(node, "expected a term; lists must be quoted or quasiquoted")

    @staticmethod
    def _macro_arg(node: SList) -> SNode:
        if len(node.items) != 2 or node.tail is not None:
            _fail_at(node, f"{node.head_name} takes exactly one datum")
        return node.items[1]

    def datum(self, node: SNode) -> TermExpr:
        if isinstance(node, SSymbol):
            return SymbolTerm(name=node.name)
        if isinstance(node, SBool):
            return BoolTerm(value=node.value)
        if isinstance(node, SInt):
            _fail_at(node, "numeric literals are not terms")
        tail = NilTerm() if node.tail is None else self.datum(node.tail)
        return make_list([self.datum(item) for item in node.items], tail)

    def quasi(self, node: SNode, scope: FrozenSet[str]) -> TermExpr:
        if isinstance(node, SList):
            head = node.head_name
            if head == "unquote":
                inner = self._macro_arg(node)
                if isinstance(inner, SList) and inner.head_name == "quasiquote":
                    _fail_at(inner, "nested quasiquote is not supported")
                return self.term(inner, scope)
            if head == "quasiquote":
                _fail_at(node, "nested quasiquote is not supported")
            tail = NilTerm() if node.tail is None else self.quasi(node.tail, scope)
            return make_list([self.quasi(item, scope) for item in node.items], tail)
        return self.datum(node)


def parse(text: str, system: Optional[ConstraintSystem] = None) -> Program:
    system = system or standard_system()
    program = ProgramParser(system).parse_program(read_all(text))
    logger.debug(
        f"Parsed program: {len(program.definitions)} relation(s), {len(program.queries)} query(ies)"
    )
    return program
