"""Canonical pretty-printer: :class:`~forge.model.Model` back to source text.

Output is the canonical form (2-space indent, one construct per line, LF
endings, double-quoted strings). Printing then reparsing yields a model that
is structurally equal to the input, and printing is idempotent on its own
output.
"""

from __future__ import annotations

import re

from .lexer import KEYWORDS
from .model import (
    ActionButton,
    AgentModel,
    AssociationDef,
    AssociationEnd,
    Auto,
    CallMethod,
    Chart,
    ChatWidget,
    ComponentDef,
    DataTable,
    EntityDef,
    EnumDef,
    Fallback,
    Form,
    LlmReply,
    Model,
    Multiplicity,
    OnIntent,
    PageDef,
    SayText,
    StateDef,
)

_BARE_STYLE_VALUE_RE = re.compile(r"[a-z][a-z0-9_]*")


def quote_string(value: str) -> str:
    escaped = value.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n")
    return f'"{escaped}"'


def _style_value(value: str) -> str:
    if _BARE_STYLE_VALUE_RE.fullmatch(value) and value not in KEYWORDS:
        return value
    return quote_string(value)


def _multiplicity(m: Multiplicity) -> str:
    upper = "*" if m.upper is None else str(m.upper)
    return f"[{m.lower}..{upper}]"


def print_model(model: Model) -> str:
    parts = [f"model {model.name}\n"]
    for entity in model.entities:
        parts.append("\n" + _entity(entity))
    for enum in model.enums:
        parts.append("\n" + _enum(enum))
    for assoc in model.associations:
        parts.append("\n" + _association(assoc))
    for agent in model.agents:
        parts.append("\n" + _agent(agent))
    for page in model.pages:
        parts.append("\n" + _page(page))
    return "".join(parts)


def _entity(e: EntityDef) -> str:
    lines = [f"class {e.name} {{"]
    if e.description is not None:
        lines.append(f"  description: {quote_string(e.description)}")
    if e.uri is not None:
        lines.append(f"  uri: {quote_string(e.uri)}")
    if e.icon is not None:
        lines.append(f"  icon: {quote_string(e.icon)}")
    for attr in e.attributes:
        suffix = " [required]" if attr.required else ""
        lines.append(f"  attr {attr.name}: {attr.type}{suffix}")
    for meth in e.methods:
        params = ", ".join(f"{name}: {type_}" for name, type_ in meth.params)
        ret = f" -> {meth.return_type}" if meth.return_type is not None else ""
        lines.append(f"  method {meth.name}({params}){ret}")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _enum(e: EnumDef) -> str:
    return f"enum {e.name} {{ {', '.join(e.literals)} }}\n"


def _association_end(end: AssociationEnd) -> str:
    return f"  {end.role}: {end.target} {_multiplicity(end.multiplicity)}"


def _association(a: AssociationDef) -> str:
    return "\n".join(
        [f"association {a.name} {{", _association_end(a.end_a), _association_end(a.end_b), "}"]
    ) + "\n"


def _agent(a: AgentModel) -> str:
    lines = [f"agent {a.name} {{"]
    for intent in a.intents:
        sentences = "; ".join(quote_string(s) for s in intent.sentences)
        lines.append(f"  intent {intent.name} {{ {sentences} }}")
    for state in a.states:
        lines.extend(_state(state))
    lines.append("}")
    return "\n".join(lines) + "\n"


def _state(s: StateDef) -> list[str]:
    head = f"  state {s.name} initial {{" if s.initial else f"  state {s.name} {{"
    lines = [head]
    for action in s.actions:
        if isinstance(action, SayText):
            lines.append(f"    say {quote_string(action.text)}")
        elif isinstance(action, CallMethod):
            lines.append(f"    call {action.entity}.{action.method}")
        elif isinstance(action, LlmReply):
            lines.append(f"    llm {quote_string(action.prompt)}")
    for trans in s.transitions:
        if isinstance(trans.trigger, OnIntent):
            lines.append(f"    on {trans.trigger.intent} -> {trans.target}")
        elif isinstance(trans.trigger, Auto):
            lines.append(f"    auto -> {trans.target}")
        elif isinstance(trans.trigger, Fallback):
            lines.append(f"    fallback -> {trans.target}")
    lines.append("  }")
    return lines


def _component(c: ComponentDef) -> str:
    if isinstance(c, DataTable):
        return f"  table {c.name} binds {c.entity} {{ columns: {', '.join(c.columns)} }}"
    if isinstance(c, Form):
        return f"  form {c.name} creates {c.entity}"
    if isinstance(c, ActionButton):
        return f"  button {c.name} invokes {c.entity}.{c.method}"
    if isinstance(c, Chart):
        return f"  chart {c.name} binds {c.entity} {{ kind: {c.kind}, x: {c.x}, y: {c.y} }}"
    if isinstance(c, ChatWidget):
        return f"  chat {c.name} agent {c.agent}"
    raise TypeError(f"unknown component: {c!r}")


def _page(p: PageDef) -> str:
    lines = [f"page {p.name} {{"]
    if p.style:
        lines.append("  style {")
        for key, value in p.style:
            lines.append(f"    {key}: {_style_value(value)}")
        lines.append("  }")
    for comp in p.components:
        lines.append(_component(comp))
    lines.append("}")
    return "\n".join(lines) + "\n"
