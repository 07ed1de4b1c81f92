"""
Kanren term algebra: logic variables, symbols, Booleans, the empty list and pairs,
plus triangular substitutions, unification with occurs check and the help
functions the violation predicates are written with.
"""
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Tuple, Union


@dataclass(frozen=True, slots=True)
class Var:
    index: int

    def __post_init__(self):
        if self.index < 0:
            raise ValueError(f"variable index must be non-negative, got {self.index}")

    def __str__(self) -> str:
        return str(self.index)


@dataclass(frozen=True, slots=True)
class Sym:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True, slots=True)
class Bool:
    value: bool

    def __str__(self) -> str:
        return "#t" if self.value else "#f"


@dataclass(frozen=True, slots=True)
class Nil:
    def __str__(self) -> str:
        return "()"


@dataclass(frozen=True, slots=True)
class Pair:
    head: "Term"
    tail: "Term"

    def __str__(self) -> str:
        return render(self)


Term = Union[Var, Sym, Bool, Nil, Pair]

NIL = Nil()
TRUE = Bool(True)
FALSE = Bool(False)


def lst(*items: Term, tail: Term = NIL) -> Term:
    """Build the list of `items` ending in `tail` (a proper list by default)."""
    result = tail
    for item in reversed(items):
        result = Pair(item, result)
    return result


def build(obj) -> Term:
    """
    Convert plain Python data into a term, mostly for tests and embedded use:
    str -> Sym, bool -> Bool, int -> Var, list -> proper list,
    2-tuple -> Pair (dotted), None -> Nil. Terms pass through unchanged.
    """
    if isinstance(obj, (Var, Sym, Bool, Nil, Pair)):
        return obj
    if obj is None:
        return NIL
    if isinstance(obj, bool):
        return TRUE if obj else FALSE
    if isinstance(obj, int):
        return Var(obj)
    if isinstance(obj, str):
        return Sym(obj)
    if isinstance(obj, list):
        return lst(*(build(item) for item in obj))
    if isinstance(obj, tuple) and len(obj) == 2:
        return Pair(build(obj[0]), build(obj[1]))
    raise TypeError(f"cannot convert {obj!r} to a term")


def render(term: Term) -> str:
    """S-expression text of a term; variables print as bare integers."""
    if not isinstance(term, Pair):
        return str(term)
    parts = []
    while isinstance(term, Pair):
        parts.append(render(term.head))
        term = term.tail
    if not isinstance(term, Nil):
        parts.extend([".", render(term)])
    return "(" + " ".join(parts) + ")"


class Substitution:
    """
    Persistent association list from variables to terms, newest binding first.
    Extensions share their tail with the substitution they extend.
    """

    __slots__ = ("_var", "_term", "_rest", "_length")

    def __init__(self, var: Optional[Var] = None, term: Optional[Term] = None,
                 rest: Optional["Substitution"] = None):
        self._var = var
        self._term = term
        self._rest = rest
        self._length = 0 if rest is None else rest._length + 1

    @classmethod
    def from_bindings(cls, bindings: Iterable[Tuple[Union[int, Var], Term]]) -> "Substitution":
        """Build from (variable, term) pairs listed newest first, without occurs checks."""
        s = EMPTY_SUBST
        for var, term in reversed(list(bindings)):
            s = s.extend(var if isinstance(var, Var) else Var(var), term)
        return s

    def extend(self, var: Var, term: Term) -> "Substitution":
        """Prepend a binding. No occurs check; use ext_s for that."""
        return Substitution(var, term, self)

    def lookup(self, var: Var) -> Optional[Term]:
        node = self
        while node._rest is not None:
            if node._var == var:
                return node._term
            node = node._rest
        return None

    def __iter__(self) -> Iterator[Tuple[Var, Term]]:
        node = self
        while node._rest is not None:
            yield node._var, node._term
            node = node._rest

    def __len__(self) -> int:
        return self._length

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, Substitution):
            return NotImplemented
        if len(self) != len(other):
            return False
        return all(a == b for a, b in zip(self, other))

    __hash__ = None

    def __repr__(self) -> str:
        inner = ", ".join(f"({var} . {render(term)})" for var, term in self)
        return f"Substitution([{inner}])"


EMPTY_SUBST = Substitution()


def walk(u: Term, s: Substitution) -> Term:
    while isinstance(u, Var):
        bound = s.lookup(u)
        if bound is None:
            return u
        u = bound
    return u


def occurs(x: Var, v: Term, s: Substitution) -> bool:
    stack = [v]
    while stack:
        t = walk(stack.pop(), s)
        if isinstance(t, Var):
            if t == x:
                return True
        elif isinstance(t, Pair):
            stack.append(t.tail)
            stack.append(t.head)
    return False


def ext_s(x: Var, v: Term, s: Substitution) -> Optional[Substitution]:
    if occurs(x, v, s):
        return None
    return s.extend(x, v)


def unify(u: Term, v: Term, s: Substitution) -> Optional[Substitution]:
    """
    Most general extension of `s` equating `u` and `v`, or None.
    Heads are unified before tails; `s` itself is returned when nothing is added.
    """
    stack = [(u, v)]
    while stack:
        a, b = stack.pop()
        a = walk(a, s)
        b = walk(b, s)
        # pairs are compared by identity only; equal ones decompose to no-ops
        if a is b or (not isinstance(a, Pair) and a == b):
            continue
        if isinstance(a, Var):
            s = ext_s(a, b, s)
        elif isinstance(b, Var):
            s = ext_s(b, a, s)
        elif isinstance(a, Pair) and isinstance(b, Pair):
            stack.append((a.tail, b.tail))
            stack.append((a.head, b.head))
            continue
        else:
            return None
        if s is None:
            return None
    return s


def walk_star(t: Term, s: Substitution) -> Term:
    t = walk(t, s)
    if not isinstance(t, Pair):
        return t
    heads = []
    while isinstance(t, Pair):
        heads.append(walk_star(t.head, s))
        t = walk(t.tail, s)
    return lst(*heads, tail=t)


def same_s(u: Term, v: Term, s: Substitution) -> bool:
    # unify hands back its input untouched exactly when no binding was needed
    result = unify(u, v, s)
    return result is not None and len(result) == len(s)


def mem(u: Term, v: Term, s: Substitution) -> bool:
    """True if `u` already equals `v` or one of its subterms under `s`."""
    stack = [v]
    while stack:
        t = walk(stack.pop(), s)
        if same_s(u, t, s):
            return True
        if isinstance(t, Pair):
            stack.append(t.tail)
            stack.append(t.head)
    return False


def walk_to_end(x: Term, s: Substitution) -> Term:
    """Final cdr of `x` under `s`: Nil for a proper list, a variable for an open one."""
    x = walk(x, s)
    while isinstance(x, Pair):
        x = walk(x.tail, s)
    return x
