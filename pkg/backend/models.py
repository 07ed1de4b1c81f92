from pydantic import BaseModel, Field
from typing import Annotated, Dict, List, Literal, Optional, Union
from enum import Enum

# ---- program AST: term expressions ----

class SymbolTerm(BaseModel):
    kind: Literal["symbol"] = "symbol"
    name: str

class BoolTerm(BaseModel):
    kind: Literal["bool"] = "bool"
    value: bool

class NilTerm(BaseModel):
    kind: Literal["nil"] = "nil"

class ListTerm(BaseModel):
    """Non-empty list spine; `tail` is Nil for a proper list, anything else for a dotted one."""
    kind: Literal["list"] = "list"
    items: List["TermExpr"] = Field(min_length=1)
    tail: "TermExpr" = Field(default_factory=NilTerm)

class VarRef(BaseModel):
    kind: Literal["var"] = "var"
    name: str

TermExpr = Annotated[
    Union[SymbolTerm, BoolTerm, NilTerm, ListTerm, VarRef],
    Field(discriminator="kind"),
]

# ---- program AST: goal expressions ----

class SucceedGoal(BaseModel):
    kind: Literal["succeed"] = "succeed"

class FailGoal(BaseModel):
    kind: Literal["fail"] = "fail"

class ConstraintGoal(BaseModel):
    """== or a relation registered by the constraint system."""
    kind: Literal["constraint"] = "constraint"
    relation: str
    args: List[TermExpr]

class CallGoal(BaseModel):
    kind: Literal["call"] = "call"
    relation: str
    args: List[TermExpr]

class DisjGoal(BaseModel):
    kind: Literal["disj"] = "disj"
    goals: List["GoalExpr"]

class ConjGoal(BaseModel):
    kind: Literal["conj"] = "conj"
    goals: List["GoalExpr"]

class FreshGoal(BaseModel):
    kind: Literal["fresh"] = "fresh"
    var: str
    body: "GoalExpr"

class IfteGoal(BaseModel):
    kind: Literal["ifte"] = "ifte"
    test: "GoalExpr"
    then: "GoalExpr"
    otherwise: "GoalExpr"

class OnceGoal(BaseModel):
    kind: Literal["once"] = "once"
    goal: "GoalExpr"

GoalExpr = Annotated[
    Union[SucceedGoal, FailGoal, ConstraintGoal, CallGoal, DisjGoal, ConjGoal, FreshGoal, IfteGoal, OnceGoal],
    Field(discriminator="kind"),
]

for _model in (ListTerm, DisjGoal, ConjGoal, FreshGoal, IfteGoal, OnceGoal):
    _model.model_rebuild()

# ---- program structure ----

class Definition(BaseModel):
    name: str
    params: List[str]
    body: GoalExpr

class Query(BaseModel):
    count: Optional[int] = None  # None means run*
    variables: List[str]
    goal: GoalExpr

class Program(BaseModel):
    definitions: List[Definition] = []
    queries: List[Query] = []

# ---- HTTP API ----

class SystemName(str, Enum):
    standard = "standard"
    equality_only = "equality-only"

class RunRequest(BaseModel):
    source: str
    system: SystemName = SystemName.standard
    take: Optional[int] = Field(default=None, ge=0)  # overrides every query's count
    take_all: bool = False
    timeout: Optional[float] = Field(default=None, gt=0)
    stores: bool = False

class AnswerOut(BaseModel):
    bindings: Dict[str, str]
    readback: str
    store: Optional[str] = None

class QueryResultOut(BaseModel):
    query: str
    variables: List[str]
    answers: List[AnswerOut]
    timed_out: bool = False

class RunResponse(BaseModel):
    system: str
    results: List[QueryResultOut]
    timed_out: bool = False
    elapsed_ms: float

class ParseRequest(BaseModel):
    source: str
    system: SystemName = SystemName.standard

class ParseResponse(BaseModel):
    program: Program
    canonical: str

class RelationInfo(BaseModel):
    name: str
    arity: int

class SystemInfo(BaseModel):
    name: str
    relations: List[RelationInfo]
    predicates: List[str]
