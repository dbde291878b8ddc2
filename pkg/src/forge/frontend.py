"""Frontend generation: declarative page config plus a static bundle.

The GUI model is not translated to framework code; it is serialized to
``app-config.json`` and interpreted in the browser by the webkit runtime.
The ``${API_BASE_URL}`` and ``${AGENT_WS_URL}`` placeholders are left
verbatim for deploy-time resolution.
"""

from __future__ import annotations

import json
from pathlib import Path

from .model import (
    ActionButton,
    Chart,
    ChatWidget,
    ComponentDef,
    DataTable,
    Form,
    Model,
    PageDef,
)
from .project import GeneratedProject, GenerationError, load_template, render_template

WEBKIT_PLACEHOLDER = "/* webkit bundle not built */\n"


def component_to_dict(comp: ComponentDef) -> dict:
    if isinstance(comp, DataTable):
        return {"kind": "table", "name": comp.name, "entity": comp.entity, "columns": list(comp.columns)}
    if isinstance(comp, Form):
        return {"kind": "form", "name": comp.name, "entity": comp.entity}
    if isinstance(comp, ActionButton):
        return {"kind": "button", "name": comp.name, "entity": comp.entity, "method": comp.method}
    if isinstance(comp, Chart):
        # the chart's own bar/line/pie kind is "chart_kind": "kind" is the
        # component discriminator
        return {
            "kind": "chart",
            "name": comp.name,
            "entity": comp.entity,
            "chart_kind": comp.kind,
            "x": comp.x,
            "y": comp.y,
        }
    if isinstance(comp, ChatWidget):
        return {"kind": "chat", "name": comp.name, "agent": comp.agent}
    raise TypeError(f"unknown component: {comp!r}")


def component_from_dict(data: dict) -> ComponentDef:
    kind = data["kind"]
    if kind == "table":
        return DataTable(name=data["name"], entity=data["entity"], columns=tuple(data["columns"]))
    if kind == "form":
        return Form(name=data["name"], entity=data["entity"])
    if kind == "button":
        return ActionButton(name=data["name"], entity=data["entity"], method=data["method"])
    if kind == "chart":
        return Chart(
            name=data["name"],
            entity=data["entity"],
            kind=data["chart_kind"],
            x=data["x"],
            y=data["y"],
        )
    if kind == "chat":
        return ChatWidget(name=data["name"], agent=data["agent"])
    raise ValueError(f"unknown component kind: {kind!r}")


def _assert_references(model: Model) -> None:
    entity_names = {e.name for e in model.entities}
    agent_names = {a.name for a in model.agents}
    for page in model.pages:
        for comp in page.components:
            if isinstance(comp, ChatWidget):
                if comp.agent not in agent_names:
                    raise GenerationError(f"page {page.name!r} references unknown agent {comp.agent!r}")
            elif comp.entity not in entity_names:
                raise GenerationError(f"page {page.name!r} references unknown entity {comp.entity!r}")


def _page_to_dict(page: PageDef) -> dict:
    style: dict[str, str] = {}
    for key, value in page.style:
        style[key] = value  # duplicate keys collapse, last wins
    return {
        "name": page.name,
        "style": style,
        "components": [component_to_dict(c) for c in page.components],
    }


def emit_app_config(model: Model) -> str:
    """Deterministic JSON page configuration consumed by the webkit runtime."""
    _assert_references(model)
    config = {
        "app": model.name,
        "api_base": "${API_BASE_URL}",
        "agent_ws": "${AGENT_WS_URL}",
        "pages": [_page_to_dict(p) for p in model.pages],
    }
    return json.dumps(config, indent=2, sort_keys=True) + "\n"


def generate_frontend_bundle(model: Model, assets_dir: Path | None = None) -> GeneratedProject:
    """Static frontend bundle: shell page, app config, and the webkit runtime.

    When ``assets_dir`` holds a built ``webkit.js`` it is copied byte-for-byte,
    otherwise a placeholder is emitted so the bundle stays complete.
    """
    project = GeneratedProject()
    index = render_template(load_template("index.html.tmpl"), {"app_name": model.name})
    project.add("frontend/index.html", index)
    project.add("frontend/app-config.json", emit_app_config(model))
    webkit: bytes | str = WEBKIT_PLACEHOLDER
    if assets_dir is not None:
        if not assets_dir.is_dir():
            raise GenerationError(f"assets directory not readable: {assets_dir}")
        bundle = assets_dir / "webkit.js"
        if bundle.is_file():
            webkit = bundle.read_bytes()
    project.add("frontend/webkit.js", webkit)
    return project
