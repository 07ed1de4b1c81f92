"""Tests for the constraint-system generator."""

import pytest

from utils.engine import EMPTY, Mature, State, call_fresh, conj, take
from utils.errors import ArityError, ConstraintSystemError
from utils.framework import (
    EQ, ConstraintSystem, ConstraintSystemBuilder, StoreView, ViolationPredicate, constraint_goal,
    ext_store, initial_store, invalid, make_constraint_system, pack, unpack, valid_eq,
)
from utils.terms import EMPTY_SUBST, Pair, Sym, Var, lst, render, walk

a, b = Sym("a"), Sym("b")


def fields(store):
    return {key: [render(t) for t in tuples] for key, tuples in store.items()}


class TestPacking:
    def test_arity_one_is_the_term(self):
        assert pack([Var(0)]) == Var(0)
        assert unpack(Var(0), 1) == (Var(0),)

    def test_arity_two_is_a_pair(self):
        assert pack([a, Var(0)]) == Pair(a, Var(0))
        assert unpack(Pair(a, Var(0)), 2) == (a, Var(0))

    def test_last_argument_is_the_raw_tail(self):
        packed = pack([a, b, lst(Var(0))])
        assert render(packed) == "(a b 0)"
        assert unpack(packed, 3) == (a, b, lst(Var(0)))

    def test_unpack_rejects_short_tuples(self):
        with pytest.raises(ValueError):
            unpack(a, 2)


class TestRegistration:
    def test_equality_only(self):
        system = make_constraint_system([], name="eq-only")
        assert fields(initial_store(system)) == {EQ: []}

    def test_standard_fields_in_order(self, standard):
        assert list(fields(standard.initial_store())) == [
            "==", "=/=", "absento", "symbolo", "not-pairo", "booleano", "listo",
        ]

    def test_duplicate_relation_rejected(self):
        with pytest.raises(ConstraintSystemError):
            make_constraint_system([("p", 1), ("p", 2)])

    def test_equality_is_reserved(self):
        with pytest.raises(ConstraintSystemError):
            make_constraint_system([("==", 2)])

    def test_arity_must_be_positive(self):
        with pytest.raises(ConstraintSystemError):
            make_constraint_system([("p", 0)])

    def test_duplicate_predicate_names_rejected(self):
        def check(view, s):
            return False
        with pytest.raises(ConstraintSystemError):
            ConstraintSystem("x", (), (ViolationPredicate("p", check), ViolationPredicate("p", check)))

    def test_builder(self):
        def never(view, s):
            return False
        system = ConstraintSystemBuilder("demo").relation("p", 1).predicate(never).build()
        assert system.arities == {"==": 2, "p": 1}
        assert system.describe() == {
            "name": "demo",
            "relations": [{"name": "==", "arity": 2}, {"name": "p", "arity": 1}],
            "predicates": ["never"],
        }

    def test_unknown_relation_lookup(self, standard):
        with pytest.raises(ConstraintSystemError):
            standard.arity("numbero")

    def test_without_predicate(self, standard):
        smaller = standard.without_predicate("symbolo_violated")
        assert len(smaller.predicates) == len(standard.predicates) - 1
        with pytest.raises(ConstraintSystemError):
            standard.without_predicate("missing")


class TestExtStore:
    def test_equation(self, standard):
        store = ext_store(standard.initial_store(), EQ, [a, Var(0)])
        assert fields(store)[EQ] == ["(a . 0)"]

    def test_absento(self, standard):
        store = ext_store(standard.initial_store(), "absento", [b, lst(Var(0))])
        assert fields(store)["absento"] == ["(b 0)"]

    def test_symbolo(self, standard):
        store = ext_store(standard.initial_store(), "symbolo", [Var(0)])
        assert fields(store)["symbolo"] == ["0"]

    def test_newest_first_and_persistent(self, standard):
        s0 = standard.initial_store()
        s1 = ext_store(s0, "=/=", [Var(0), b])
        s2 = ext_store(s1, "=/=", [Sym("c"), Var(0)])
        assert fields(s2)["=/="] == ["(c . 0)", "(0 . b)"]
        assert fields(s1)["=/="] == ["(0 . b)"]
        assert fields(s0)["=/="] == []
        assert s2["symbolo"] is s0["symbolo"]

    def test_unknown_key(self, standard):
        with pytest.raises(ConstraintSystemError):
            ext_store(standard.initial_store(), "numbero", [Var(0)])

    def test_arity_mismatch(self, standard):
        with pytest.raises(ArityError):
            ext_store(standard.initial_store(), "symbolo", [Var(0), Var(1)])

    def test_duplicates_kept(self, standard):
        store = standard.initial_store()
        for _ in range(2):
            store = ext_store(store, "symbolo", [Var(0)])
        assert len(store["symbolo"]) == 2


class TestValidEq:
    def test_empty(self):
        assert valid_eq(()) == EMPTY_SUBST

    def test_single(self):
        assert list(valid_eq((Pair(a, Var(0)),))) == [(Var(0), a)]

    def test_conflict(self):
        assert valid_eq((Pair(a, Var(0)), Pair(b, Var(0)))) is None

    def test_oldest_first(self):
        # newest first in the store: (0 . 1) was added after (1 . a)
        s = valid_eq((Pair(Var(0), Var(1)), Pair(Var(1), a)))
        assert list(s) == [(Var(0), a), (Var(1), a)]


class TestInvalid:
    def test_initial_store_is_valid(self, standard, equality_only):
        assert not invalid(standard.initial_store(), standard)
        assert not invalid(equality_only.initial_store(), equality_only)

    def test_equation_failure(self, standard):
        store = ext_store(ext_store(standard.initial_store(), EQ, [a, Var(0)]), EQ, [b, Var(0)])
        assert invalid(store, standard)

    def test_predicates_see_substitution_not_equations(self):
        seen = {}

        def record(view, s):
            seen["keys"] = list(view)
            seen["x"] = walk(Var(0), s)
            return False

        system = make_constraint_system([("p", 1)], record)
        store = ext_store(system.initial_store(), EQ, [Var(0), a])
        assert not system.invalid(store)
        assert seen == {"keys": ["p"], "x": a}

    def test_store_view(self, standard):
        store = ext_store(standard.initial_store(), "=/=", [Var(0), b])
        view = StoreView(store)
        assert EQ not in view
        assert view.tuples("=/=") == [(Var(0), b)]
        assert view.terms("=/=") == (Pair(Var(0), b),)
        assert len(view) == 6


class TestConstraintGoal:
    def test_singleton_on_success(self, initial_state, standard):
        eq = constraint_goal(EQ, standard)
        s = eq(a, Var(0))(initial_state)
        assert isinstance(s, Mature) and s.rest is EMPTY
        assert s.head.counter == initial_state.counter
        assert fields(s.head.store)[EQ] == ["(a . 0)"]

    def test_empty_on_violation(self, initial_state, standard):
        eq, neq = standard.goal(EQ), standard.goal("=/=")
        goal = call_fresh(lambda x: conj(eq(x, a), neq(x, a)))
        assert take(None, goal(initial_state)) == []

    def test_distinct_constants(self, initial_state, standard):
        assert len(take(None, standard.goal("=/=")(a, b)(initial_state))) == 1

    def test_arity_checked_at_construction(self, standard):
        with pytest.raises(ArityError):
            standard.goal("symbolo")(a, b)

    def test_input_state_untouched(self, initial_state, standard):
        before = initial_state.store
        standard.goal("symbolo")(Var(0))(State(before, 1))
        assert before["symbolo"] == ()
