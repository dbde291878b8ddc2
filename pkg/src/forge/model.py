"""In-memory metamodel for the three perspectives of an application model.

A :class:`Model` holds the structural perspective (entities, enums,
associations), the agent perspective (state machines with intents), and the
GUI perspective (pages of components). All types are immutable value objects;
equality is field-by-field with list order significant. Source spans are
carried for diagnostics but never participate in equality, so a parsed model
compares equal to an equivalent hand-built one.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Union

from .diagnostics import SourceSpan

PRIMITIVE_TYPES = ("str", "int", "float", "bool", "date", "datetime")

RESERVED_MEMBER_NAME = "id"


def _span_field() -> SourceSpan | None:
    return field(default=None, compare=False, repr=False)  # type: ignore[return-value]


@dataclass(frozen=True)
class Multiplicity:
    """Lower/upper bounds for an association end; ``upper=None`` means unbounded."""

    lower: int
    upper: int | None

    def __post_init__(self) -> None:
        if self.lower < 0:
            raise ValueError("multiplicity lower bound must be >= 0")
        if self.upper is not None and (self.upper < 1 or self.upper < self.lower):
            raise ValueError("multiplicity upper bound must be >= 1 and >= lower")


@dataclass(frozen=True)
class AttributeDef:
    name: str
    type: str
    required: bool = False
    span: SourceSpan | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class MethodDef:
    name: str
    params: tuple[tuple[str, str], ...] = ()
    return_type: str | None = None
    span: SourceSpan | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class EntityDef:
    name: str
    description: str | None = None
    uri: str | None = None
    icon: str | None = None
    attributes: tuple[AttributeDef, ...] = ()
    methods: tuple[MethodDef, ...] = ()
    span: SourceSpan | None = field(default=None, compare=False, repr=False)

    def attribute(self, name: str) -> AttributeDef | None:
        for attr in self.attributes:
            if attr.name == name:
                return attr
        return None

    def method(self, name: str) -> MethodDef | None:
        for meth in self.methods:
            if meth.name == name:
                return meth
        return None


@dataclass(frozen=True)
class EnumDef:
    name: str
    literals: tuple[str, ...]
    span: SourceSpan | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class AssociationEnd:
    role: str
    target: str
    multiplicity: Multiplicity
    span: SourceSpan | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class AssociationDef:
    name: str
    end_a: AssociationEnd
    end_b: AssociationEnd
    span: SourceSpan | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class IntentDef:
    name: str
    sentences: tuple[str, ...]
    span: SourceSpan | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class SayText:
    text: str
    span: SourceSpan | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class CallMethod:
    entity: str
    method: str
    span: SourceSpan | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class LlmReply:
    prompt: str
    span: SourceSpan | None = field(default=None, compare=False, repr=False)


ActionSpec = Union[SayText, CallMethod, LlmReply]


@dataclass(frozen=True)
class OnIntent:
    intent: str


@dataclass(frozen=True)
class Auto:
    pass


@dataclass(frozen=True)
class Fallback:
    pass


@dataclass(frozen=True)
class TransitionSpec:
    trigger: Union[OnIntent, Auto, Fallback]
    target: str
    span: SourceSpan | None = field(default=None, compare=False, repr=False)
    target_span: SourceSpan | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class StateDef:
    name: str
    initial: bool = False
    actions: tuple[ActionSpec, ...] = ()
    transitions: tuple[TransitionSpec, ...] = ()
    span: SourceSpan | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class AgentModel:
    name: str
    intents: tuple[IntentDef, ...] = ()
    states: tuple[StateDef, ...] = ()
    span: SourceSpan | None = field(default=None, compare=False, repr=False)

    def state(self, name: str) -> StateDef | None:
        for st in self.states:
            if st.name == name:
                return st
        return None

    def initial_state(self) -> StateDef | None:
        for st in self.states:
            if st.initial:
                return st
        return None


@dataclass(frozen=True)
class DataTable:
    name: str
    entity: str
    columns: tuple[str, ...]
    span: SourceSpan | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Form:
    name: str
    entity: str
    span: SourceSpan | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class ActionButton:
    name: str
    entity: str
    method: str
    span: SourceSpan | None = field(default=None, compare=False, repr=False)


CHART_KINDS = ("bar", "line", "pie")


@dataclass(frozen=True)
class Chart:
    name: str
    entity: str
    kind: str
    x: str
    y: str
    span: SourceSpan | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class ChatWidget:
    name: str
    agent: str
    span: SourceSpan | None = field(default=None, compare=False, repr=False)


ComponentDef = Union[DataTable, Form, ActionButton, Chart, ChatWidget]


@dataclass(frozen=True)
class PageDef:
    name: str
    style: tuple[tuple[str, str], ...] = ()
    components: tuple[ComponentDef, ...] = ()
    span: SourceSpan | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Model:
    name: str
    entities: tuple[EntityDef, ...] = ()
    enums: tuple[EnumDef, ...] = ()
    associations: tuple[AssociationDef, ...] = ()
    agents: tuple[AgentModel, ...] = ()
    pages: tuple[PageDef, ...] = ()
    span: SourceSpan | None = field(default=None, compare=False, repr=False)

    def entity(self, name: str) -> EntityDef | None:
        for ent in self.entities:
            if ent.name == name:
                return ent
        return None

    def enum(self, name: str) -> EnumDef | None:
        for en in self.enums:
            if en.name == name:
                return en
        return None

    def agent(self, name: str) -> AgentModel | None:
        for ag in self.agents:
            if ag.name == name:
                return ag
        return None

    def enum_table(self) -> dict[str, EnumDef]:
        return {en.name: en for en in self.enums}


def normalize_identifier(name: str) -> str:
    """Lowercase ``name``, inserting ``_`` before each interior uppercase letter.

    Idempotent; used for route segments, table names, and file names.
    """
    out = []
    for i, ch in enumerate(name):
        if ch.isupper() and i > 0:
            out.append("_")
        out.append(ch.lower())
    return "".join(out)


def multiplicity_contains(m: Multiplicity, n: int) -> bool:
    """True iff a link count of ``n`` satisfies the bounds of ``m``."""
    if n < 0:
        raise ValueError("link count must be >= 0")
    return m.lower <= n and (m.upper is None or n <= m.upper)


def default_value_of(type_name: str, enums: Mapping[str, EnumDef]):
    """Default literal for a primitive or enum type (used for method call stubs)."""
    defaults = {
        "str": "",
        "int": 0,
        "float": 0.0,
        "bool": False,
        "date": "1970-01-01",
        "datetime": "1970-01-01T00:00:00Z",
    }
    if type_name in defaults:
        return defaults[type_name]
    enum = enums.get(type_name)
    if enum is None:
        raise ValueError(f"unresolvable type: {type_name!r}")
    return enum.literals[0]
