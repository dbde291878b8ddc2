"""forge: compile textual application models into deployable web projects.

One ``.buml`` document describes an application from three perspectives
(structural, agent, GUI); this package parses and validates it, generates a
CRUD backend, a static frontend, a conversational-agent service, and a
deployment manifest, and can also serve the API and the agent directly.
"""

__version__ = "0.1.0"

from .checker import check_model, reachable_states
from .diagnostics import Diagnostic, SourceSpan, render_diagnostic
from .model import Model, default_value_of, multiplicity_contains, normalize_identifier
from .parser import parse_model
from .printer import print_model

__all__ = [
    "Diagnostic",
    "Model",
    "SourceSpan",
    "check_model",
    "default_value_of",
    "multiplicity_contains",
    "normalize_identifier",
    "parse_model",
    "print_model",
    "reachable_states",
    "render_diagnostic",
    "__version__",
]
