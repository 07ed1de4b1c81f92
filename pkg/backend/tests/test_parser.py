"""Tests for the s-expression to AST parser."""

import pytest

from models import (
    BoolTerm, CallGoal, ConjGoal, ConstraintGoal, DisjGoal, FailGoal, FreshGoal, IfteGoal,
    ListTerm, NilTerm, OnceGoal, SucceedGoal, SymbolTerm, VarRef,
)
from utils.errors import ParseError
from utils.parser import make_list, parse

a, b = SymbolTerm(name="a"), SymbolTerm(name="b")


def query_goal(text, system=None):
    return parse(text, system).queries[0].goal


def parse_error(text, system=None) -> ParseError:
    with pytest.raises(ParseError) as info:
        parse(text, system)
    return info.value


class TestPrograms:
    def test_nrev(self, programs_dir):
        program = parse((programs_dir / "nrev.mk").read_text())
        assert [d.name for d in program.definitions] == ["append", "nrev"]
        assert program.definitions[0].params == ["l", "s", "out"]
        [query] = program.queries
        assert query.count == 1 and query.variables == ["q"]
        assert query.goal == CallGoal(
            relation="nrev",
            args=[ListTerm(items=[a, b, SymbolTerm(name="c")]), VarRef(name="q")],
        )

    @pytest.mark.parametrize("name", [
        "nrev.mk", "store-demo.mk", "booleano-contra.mk", "listo-contra.mk", "fives.mk", "lookup.mk",
    ])
    def test_sample_programs_parse(self, programs_dir, name):
        assert parse((programs_dir / name).read_text()).queries

    def test_run_star(self):
        query = parse("(run* (x y) (== x y))").queries[0]
        assert query.count is None
        assert query.variables == ["x", "y"]

    def test_relations_may_be_used_before_definition(self):
        program = parse("""
            (run 1 (q) (p q))
            (define-relation (p x) (q-rel x))
            (define-relation (q-rel x) (== x 'a))
        """)
        assert [d.name for d in program.definitions] == ["p", "q-rel"]

    def test_several_body_goals_are_a_conjunction(self):
        goal = query_goal("(run 1 (q) (symbolo q) (== q 'a))")
        assert isinstance(goal, ConjGoal) and len(goal.goals) == 2

    def test_no_query(self):
        assert "no run query" in parse_error("(define-relation (p x) (== x 'a))").message


class TestGoals:
    def test_core_forms(self):
        goal = query_goal("""
            (run 1 (q)
              (disj succeed
                    (conj fail (once (ifte (== q 'a) succeed fail)))))
        """)
        assert goal == DisjGoal(goals=[
            SucceedGoal(),
            ConjGoal(goals=[FailGoal(), OnceGoal(goal=IfteGoal(
                test=ConstraintGoal(relation="==", args=[VarRef(name="q"), a]),
                then=SucceedGoal(),
                otherwise=FailGoal(),
            ))]),
        ])

    def test_nary_disj(self):
        goal = query_goal("(run 1 (q) (disj (== q 'a) (== q 'b) (== q #t)))")
        assert len(goal.goals) == 3

    def test_call_fresh_with_lambda_or_greek_lambda(self):
        for word in ("lambda", "λ"):
            goal = query_goal(f"(run 1 (q) (call/fresh ({word} (x) (== x q))))")
            assert goal == FreshGoal(var="x", body=ConstraintGoal(
                relation="==", args=[VarRef(name="x"), VarRef(name="q")],
            ))

    def test_standard_constraints(self):
        goal = query_goal("(run 1 (q) (absento 'b q) (listo q) (=/= q #f))")
        assert [g.relation for g in goal.goals] == ["absento", "listo", "=/="]

    def test_call_fresh_takes_one_parameter(self):
        assert "exactly one" in parse_error("(run 1 (q) (call/fresh (lambda (x y) succeed)))").message

    def test_unknown_operator(self):
        err = parse_error("(run 1 (q)\n  (numbero q))")
        assert "unknown operator 'numbero'" in err.message
        assert (err.line, err.column) == (2, 3)

    def test_variable_is_not_a_goal(self):
        assert "cannot be applied" in parse_error("(run 1 (q) (q 'a))").message

    def test_constraint_arity(self):
        assert "symbolo expects 1" in parse_error("(run 1 (q) (symbolo q q))").message

    def test_relation_arity(self):
        err = parse_error("(define-relation (p x) (== x 'a)) (run 1 (q) (p q q))")
        assert "p expects 1" in err.message

    def test_equality_only_system_rejects_disequality(self, equality_only):
        assert "unknown operator '=/='" in parse_error("(run 1 (q) (=/= q 'a))", equality_only).message


class TestTerms:
    def test_quoted_data(self):
        goal = query_goal("(run 1 (q) (== q '(a (b . #t) ())))")
        assert goal.args[1] == ListTerm(items=[
            a, ListTerm(items=[b], tail=BoolTerm(value=True)), NilTerm(),
        ])

    def test_quoted_dotted_tail_is_flattened(self):
        goal = query_goal("(run 1 (q) (== q '(a . (b . ()))))")
        assert goal.args[1] == ListTerm(items=[a, b])

    def test_quasiquote(self):
        goal = query_goal("(run 1 (q) (call/fresh (lambda (x) (== q `(a ,x . b)))))")
        assert goal.body.args[1] == ListTerm(items=[a, VarRef(name="x")], tail=b)

    def test_quasiquote_without_unquote_is_data(self):
        goal = query_goal("(run 1 (q) (== q `(q)))")
        assert goal.args[1] == ListTerm(items=[SymbolTerm(name="q")])

    def test_booleans_are_self_quoting(self):
        assert query_goal("(run 1 (q) (== q #f))").args[1] == BoolTerm(value=False)

    def test_unbound_identifier(self):
        assert "unbound identifier 'x'" in parse_error("(run 1 (q) (== q x))").message

    def test_scope_ends_with_the_lambda(self):
        text = "(run 1 (q) (conj (call/fresh (lambda (x) succeed)) (== q x)))"
        assert "unbound identifier 'x'" in parse_error(text).message

    def test_numbers_are_rejected(self):
        err = parse_error("(run 1 (q) (== 5 q))")
        assert "numeric literals" in err.message
        assert (err.line, err.column) == (1, 16)

    def test_quoted_decimals_are_rejected(self):
        err = parse_error("(run 1 (q) (== q '(a 1.5)))")
        assert "non-integer numeric literal '1.5'" in err.message
        assert (err.line, err.column) == (1, 22)

    def test_bare_empty_list(self):
        assert "write '()" in parse_error("(run 1 (q) (== q ()))").message

    def test_unquote_outside_quasiquote(self):
        assert "outside quasiquote" in parse_error("(run 1 (q) (== q ,q))").message

    def test_nested_quasiquote(self):
        assert "nested quasiquote" in parse_error("(run 1 (q) (== q `(a `(b ,q))))").message


class TestBinders:
    def test_duplicate_parameter(self):
        assert "duplicate parameter" in parse_error("(define-relation (p x x) succeed) (run 1 (q) (p q q))").message

    def test_reserved_relation_name(self):
        assert "reserved" in parse_error("(define-relation (conj x) succeed) (run 1 (q) succeed)").message

    def test_constraint_name_is_reserved(self):
        assert "reserved" in parse_error("(define-relation (symbolo x) succeed) (run 1 (q) succeed)").message

    def test_duplicate_relation(self):
        text = "(define-relation (p x) succeed) (define-relation (p y) fail) (run 1 (q) (p q))"
        assert "defined twice" in parse_error(text).message

    def test_parameter_cannot_shadow_a_relation(self):
        text = "(define-relation (p x) succeed) (run 1 (p) succeed)"
        assert "shadows" in parse_error(text).message

    def test_query_needs_a_variable(self):
        assert "at least one variable" in parse_error("(run 1 () succeed)").message

    def test_negative_count(self):
        assert "non-negative" in parse_error("(run -1 (q) succeed)").message

    def test_top_level_junk(self):
        assert "top level" in parse_error("(== 'a 'a) (run 1 (q) succeed)").message


def test_make_list_flattens_list_tails():
    assert make_list([], b) == b
    assert make_list([a], ListTerm(items=[b])) == ListTerm(items=[a, b])
