"""Agent bundle generation: a runnable chat service for the model's agents."""

from __future__ import annotations

from . import __version__
from .model import CallMethod, Model
from .printer import print_model
from .project import GeneratedProject, GenerationError, load_template, render_template


def agent_submodel(model: Model) -> Model:
    """The agent perspectives plus the entities (and enums) their calls need."""
    called_entities: set[str] = set()
    for agent in model.agents:
        for state in agent.states:
            for action in state.actions:
                if isinstance(action, CallMethod):
                    called_entities.add(action.entity)
    entities = tuple(e for e in model.entities if e.name in called_entities)
    used_types: set[str] = set()
    for entity in entities:
        used_types.update(attr.type for attr in entity.attributes)
        for meth in entity.methods:
            used_types.update(ptype for _, ptype in meth.params)
            if meth.return_type is not None:
                used_types.add(meth.return_type)
    enums = tuple(e for e in model.enums if e.name in used_types)
    return Model(name=model.name, entities=entities, enums=enums, agents=model.agents)


def generate_agent_bundle(model: Model) -> GeneratedProject:
    """Agent service bundle: sub-model, entry point, build manifest."""
    if not model.agents:
        raise GenerationError("no agent to generate", code="E501")
    project = GeneratedProject()
    project.add("agent/agent.buml", print_model(agent_submodel(model)))
    values = {"model_name": model.name, "version": __version__}
    project.add("agent/main.py", render_template(load_template("agent_main.py.tmpl"), values))
    project.add("agent/requirements.txt", render_template(load_template("requirements.txt.tmpl"), values))
    return project
