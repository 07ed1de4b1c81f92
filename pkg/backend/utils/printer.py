"""
Text output: constraint stores, answers and canonical program source.

A store prints as `((== . <tuples>) (<relation> . <tuples>) ... . <counter>)`,
fields in registration order, tuples newest first; an empty field prints as `(<relation>)`.
"""
from typing import List

from models import (
    BoolTerm, CallGoal, ConjGoal, ConstraintGoal, Definition, DisjGoal, FailGoal, FreshGoal,
    GoalExpr, IfteGoal, ListTerm, NilTerm, OnceGoal, Program, Query, SucceedGoal, SymbolTerm,
    TermExpr, VarRef,
)
from utils.engine import State
from utils.evaluator import Answer
from utils.terms import render


def print_store(state: State) -> str:
    fields = []
    for key, tuples in state.store.items():
        if tuples:
            fields.append(f"({key} . ({' '.join(render(t) for t in tuples)}))")
        else:
            fields.append(f"({key})")
    return f"({' '.join(fields)} . {state.counter})"


def format_answer(answer: Answer) -> str:
    return render(answer.readback)


# ---- canonical program text ----

def _has_vars(expr: TermExpr) -> bool:
    if isinstance(expr, VarRef):
        return True
    if isinstance(expr, ListTerm):
        return any(_has_vars(item) for item in expr.items) or _has_vars(expr.tail)
    return False


def _datum(expr: TermExpr) -> str:
    if isinstance(expr, VarRef):
        return f",{expr.name}"
    if isinstance(expr, SymbolTerm):
        return expr.name
    if isinstance(expr, BoolTerm):
        return "#t" if expr.value else "#f"
    if isinstance(expr, NilTerm):
        return "()"
    inner = " ".join(_datum(item) for item in expr.items)
    if not isinstance(expr.tail, NilTerm):
        inner += " . " + _datum(expr.tail)
    return f"({inner})"


def format_term(expr: TermExpr) -> str:
    if isinstance(expr, VarRef):
        return expr.name
    if isinstance(expr, BoolTerm):
        return "#t" if expr.value else "#f"
    if _has_vars(expr):
        return "`" + _datum(expr)
    return "'" + _datum(expr)


def format_goal(expr: GoalExpr) -> str:
    if isinstance(expr, SucceedGoal):
        return "succeed"
    if isinstance(expr, FailGoal):
        return "fail"
    if isinstance(expr, (ConstraintGoal, CallGoal)):
        return f"({' '.join([expr.relation] + [format_term(a) for a in expr.args])})"
    if isinstance(expr, (DisjGoal, ConjGoal)):
        return f"({' '.join([expr.kind] + [format_goal(g) for g in expr.goals])})"
    if isinstance(expr, FreshGoal):
        return f"(call/fresh (lambda ({expr.var}) {format_goal(expr.body)}))"
    if isinstance(expr, IfteGoal):
        return f"(ifte {format_goal(expr.test)} {format_goal(expr.then)} {format_goal(expr.otherwise)})"
    if isinstance(expr, OnceGoal):
        return f"(once {format_goal(expr.goal)})"
    raise TypeError(f"not a goal expression: {expr!r}")


def format_definition(definition: Definition) -> str:
    header = " ".join([definition.name] + definition.params)
    return f"(define-relation ({header})\n  {format_goal(definition.body)})"


def format_query(query: Query) -> str:
    head = "run*" if query.count is None else f"run {query.count}"
    return f"({head} ({' '.join(query.variables)}) {format_goal(query.goal)})"


def format_program(program: Program) -> str:
    forms: List[str] = [format_definition(d) for d in program.definitions]
    forms.extend(format_query(q) for q in program.queries)
    return "\n\n".join(forms) + "\n"
