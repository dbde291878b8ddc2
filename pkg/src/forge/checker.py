"""Semantic validation across all three perspectives.

Rule registry (stable public contract):

========  ===============================================================
E001      duplicate top-level or member name (also the reserved ``id``)
E002      attribute/method type names no primitive or enum
E003      association end targets unknown entity
E004      identical role names on both association ends
E101      agent has zero or multiple initial states
E102      transition targets unknown state
E103      ``on`` trigger names unknown intent
E104      duplicate intent name
E105      state has multiple auto or multiple fallback transitions
E106      call action references unknown entity or method
E201      table/form/chart/button binds unknown entity
E202      table column or chart axis is not an attribute of the entity
E203      button invokes unknown method
E204      chat references unknown agent
E205      chart y-axis attribute is not of type int or float
W101      state unreachable from the initial state
========  ===============================================================

Warnings never block generation; errors do.
"""

from __future__ import annotations

from .diagnostics import Diagnostic, SourceSpan, error, warning
from .model import (
    ActionButton,
    AgentModel,
    CallMethod,
    Chart,
    ChatWidget,
    DataTable,
    EntityDef,
    Form,
    Model,
    OnIntent,
    Auto,
    Fallback,
    PRIMITIVE_TYPES,
    RESERVED_MEMBER_NAME,
)


def check_model(model: Model) -> list[Diagnostic]:
    """Return every rule violation, sorted by span then code; empty iff valid."""
    checker = _Checker(model)
    checker.run()
    return sorted(checker.diags, key=lambda d: d.sort_key())


def has_errors(diags: list[Diagnostic]) -> bool:
    return any(d.severity == "error" for d in diags)


def reachable_states(agent: AgentModel) -> set[str]:
    """Fixed point of transition targets starting from the unique initial state."""
    initial = agent.initial_state()
    if initial is None:
        raise ValueError(f"agent {agent.name!r} has no initial state")
    by_name = {st.name: st for st in agent.states}
    seen = {initial.name}
    frontier = [initial]
    while frontier:
        state = frontier.pop()
        for trans in state.transitions:
            target = by_name.get(trans.target)
            if target is not None and target.name not in seen:
                seen.add(target.name)
                frontier.append(target)
    return seen


class _Checker:
    def __init__(self, model: Model):
        self.model = model
        self.diags: list[Diagnostic] = []
        self.entity_names = {e.name for e in model.entities}
        self.enum_names = {e.name for e in model.enums}
        self.agent_names = {a.name for a in model.agents}

    def run(self) -> None:
        self._check_top_level_names()
        for entity in self.model.entities:
            self._check_entity(entity)
        for enum in self.model.enums:
            self._check_duplicates(enum.literals, [enum.span] * len(enum.literals), "enum literal")
        for assoc in self.model.associations:
            self._check_association(assoc)
        for agent in self.model.agents:
            self._check_agent(agent)
        for page in self.model.pages:
            self._check_page(page)

    def _error(self, code: str, message: str, span: SourceSpan | None) -> None:
        self.diags.append(error(code, message, span))

    def _check_duplicates(self, names, spans, kind: str, code: str = "E001") -> None:
        seen: set[str] = set()
        for name, span in zip(names, spans):
            if name in seen:
                self._error(code, f"duplicate {kind} name {name!r}", span)
            seen.add(name)

    def _check_top_level_names(self) -> None:
        for kind, items in (
            ("entity", self.model.entities),
            ("enum", self.model.enums),
            ("association", self.model.associations),
            ("agent", self.model.agents),
            ("page", self.model.pages),
        ):
            self._check_duplicates([i.name for i in items], [i.span for i in items], kind)

    def _check_type(self, type_name: str, span: SourceSpan | None) -> None:
        if type_name not in PRIMITIVE_TYPES and type_name not in self.enum_names:
            self._error("E002", f"unknown type {type_name!r}", span)

    def _check_entity(self, entity: EntityDef) -> None:
        members = [(a.name, a.span) for a in entity.attributes] + [(m.name, m.span) for m in entity.methods]
        seen: set[str] = set()
        for name, span in members:
            if name == RESERVED_MEMBER_NAME:
                self._error("E001", f"member name {name!r} is reserved", span)
            elif name in seen:
                self._error("E001", f"duplicate member name {name!r}", span)
            seen.add(name)
        for attr in entity.attributes:
            self._check_type(attr.type, attr.span)
        for meth in entity.methods:
            self._check_duplicates(
                [p for p, _ in meth.params], [meth.span] * len(meth.params), "parameter"
            )
            for _, ptype in meth.params:
                self._check_type(ptype, meth.span)
            if meth.return_type is not None:
                self._check_type(meth.return_type, meth.span)

    def _check_association(self, assoc) -> None:
        for end in (assoc.end_a, assoc.end_b):
            if end.target not in self.entity_names:
                self._error("E003", f"association end targets unknown entity {end.target!r}", end.span)
        if assoc.end_a.role == assoc.end_b.role:
            self._error("E004", f"both ends of {assoc.name!r} use role {assoc.end_a.role!r}", assoc.end_b.span)

    def _check_agent(self, agent: AgentModel) -> None:
        self._check_duplicates([s.name for s in agent.states], [s.span for s in agent.states], "state")
        self._check_duplicates(
            [i.name for i in agent.intents], [i.span for i in agent.intents], "intent", code="E104"
        )
        initial_count = sum(1 for s in agent.states if s.initial)
        if initial_count != 1:
            self._error(
                "E101",
                f"agent {agent.name!r} has {initial_count} initial states, expected exactly 1",
                agent.span,
            )
        state_names = {s.name for s in agent.states}
        intent_names = {i.name for i in agent.intents}
        for state in agent.states:
            auto_count = 0
            fallback_count = 0
            for trans in state.transitions:
                if trans.target not in state_names:
                    self._error(
                        "E102", f"transition targets unknown state {trans.target!r}", trans.target_span
                    )
                if isinstance(trans.trigger, OnIntent) and trans.trigger.intent not in intent_names:
                    self._error("E103", f"'on' trigger names unknown intent {trans.trigger.intent!r}", trans.span)
                auto_count += isinstance(trans.trigger, Auto)
                fallback_count += isinstance(trans.trigger, Fallback)
            if auto_count > 1:
                self._error("E105", f"state {state.name!r} has {auto_count} auto transitions", state.span)
            if fallback_count > 1:
                self._error("E105", f"state {state.name!r} has {fallback_count} fallback transitions", state.span)
            for action in state.actions:
                if isinstance(action, CallMethod):
                    entity = self.model.entity(action.entity)
                    if entity is None or entity.method(action.method) is None:
                        self._error(
                            "E106",
                            f"call action references unknown method {action.entity}.{action.method}",
                            action.span,
                        )
        if initial_count == 1:
            reachable = reachable_states(agent)
            for state in agent.states:
                if state.name not in reachable:
                    self.diags.append(
                        warning("W101", f"state {state.name!r} is unreachable from the initial state", state.span)
                    )

    def _check_page(self, page) -> None:
        self._check_duplicates(
            [c.name for c in page.components], [c.span for c in page.components], "component"
        )
        for comp in page.components:
            if isinstance(comp, ChatWidget):
                if comp.agent not in self.agent_names:
                    self._error("E204", f"chat references unknown agent {comp.agent!r}", comp.span)
                continue
            entity = self.model.entity(comp.entity)
            if entity is None:
                self._error("E201", f"component binds unknown entity {comp.entity!r}", comp.span)
                continue
            if isinstance(comp, DataTable):
                for column in comp.columns:
                    if entity.attribute(column) is None:
                        self._error(
                            "E202",
                            f"column {column!r} is not an attribute of {entity.name!r}",
                            comp.span,
                        )
            elif isinstance(comp, ActionButton):
                if entity.method(comp.method) is None:
                    self._error("E203", f"button invokes unknown method {comp.entity}.{comp.method}", comp.span)
            elif isinstance(comp, Chart):
                for axis in (comp.x, comp.y):
                    if entity.attribute(axis) is None:
                        self._error(
                            "E202",
                            f"axis {axis!r} is not an attribute of {entity.name!r}",
                            comp.span,
                        )
                y_attr = entity.attribute(comp.y)
                if y_attr is not None and y_attr.type not in ("int", "float"):
                    self._error(
                        "E205",
                        f"chart y-axis {comp.y!r} has type {y_attr.type!r}, expected int or float",
                        comp.span,
                    )
            elif isinstance(comp, Form):
                pass
