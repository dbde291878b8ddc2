"""Backend generation: route table, OpenAPI document, relational DDL, bundle.

All four operations are pure functions of the model; identical models yield
byte-identical artifacts.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from . import __version__
from .model import AssociationDef, EntityDef, Model, normalize_identifier
from .printer import print_model
from .project import GeneratedProject, load_template, render_template

ROUTE_KINDS = ("list", "create", "read", "update", "delete", "call", "link", "unlink", "related")


@dataclass(frozen=True)
class RouteEntry:
    http_method: str
    path: str
    operation_id: str
    kind: str
    entity: str | None = None  # entity the route reads/writes (model name, not snake)
    method: str | None = None  # method name for kind == "call"
    association: str | None = None  # association name for link/unlink/related
    role: str | None = None  # role being listed for kind == "related"


def route_table(model: Model) -> list[RouteEntry]:
    """CRUD, method-call, and relationship routes in declaration order."""
    entries: list[RouteEntry] = []
    for entity in model.entities:
        snake = normalize_identifier(entity.name)
        base = f"/api/{snake}"
        item = f"{base}/{{id}}"
        entries.append(RouteEntry("GET", base, f"list_{snake}", "list", entity=entity.name))
        entries.append(RouteEntry("POST", base, f"create_{snake}", "create", entity=entity.name))
        entries.append(RouteEntry("GET", item, f"read_{snake}", "read", entity=entity.name))
        entries.append(RouteEntry("PUT", item, f"update_{snake}", "update", entity=entity.name))
        entries.append(RouteEntry("DELETE", item, f"delete_{snake}", "delete", entity=entity.name))
        for meth in entity.methods:
            entries.append(
                RouteEntry(
                    "POST",
                    f"{item}/call/{meth.name}",
                    f"call_{snake}_{meth.name}",
                    "call",
                    entity=entity.name,
                    method=meth.name,
                )
            )
    for assoc in model.associations:
        snake = normalize_identifier(assoc.name)
        entries.append(
            RouteEntry("POST", f"/api/assoc/{snake}/link", f"link_{snake}", "link", association=assoc.name)
        )
        entries.append(
            RouteEntry("DELETE", f"/api/assoc/{snake}/unlink", f"unlink_{snake}", "unlink", association=assoc.name)
        )
        for end, other in ((assoc.end_a, assoc.end_b), (assoc.end_b, assoc.end_a)):
            owner = normalize_identifier(other.target)
            entries.append(
                RouteEntry(
                    "GET",
                    f"/api/{owner}/{{id}}/{end.role}",
                    f"related_{owner}_{end.role}",
                    "related",
                    entity=other.target,
                    association=assoc.name,
                    role=end.role,
                )
            )
    return entries


# --- OpenAPI ---------------------------------------------------------------

_JSON_SCHEMA_TYPES = {
    "str": {"type": "string"},
    "int": {"type": "integer"},
    "float": {"type": "number"},
    "bool": {"type": "boolean"},
    "date": {"type": "string", "format": "date"},
    "datetime": {"type": "string", "format": "date-time"},
}


def _attribute_schema(type_name: str, model: Model) -> dict:
    if type_name in _JSON_SCHEMA_TYPES:
        return dict(_JSON_SCHEMA_TYPES[type_name])
    enum = model.enum(type_name)
    if enum is None:
        raise ValueError(f"unresolvable type: {type_name!r}")
    return {"type": "string", "enum": list(enum.literals)}


def _entity_schema(entity: EntityDef, model: Model) -> dict:
    properties: dict[str, dict] = {"id": {"type": "integer", "readOnly": True}}
    for attr in entity.attributes:
        properties[attr.name] = _attribute_schema(attr.type, model)
    schema: dict = {"type": "object", "properties": properties}
    required = [attr.name for attr in entity.attributes if attr.required]
    if required:
        schema["required"] = required
    return schema


def _ref(entity_name: str) -> dict:
    return {"$ref": f"#/components/schemas/{entity_name}"}


def _list_envelope(item_schema: dict) -> dict:
    return {
        "type": "object",
        "properties": {"items": {"type": "array", "items": item_schema}, "total": {"type": "integer"}},
        "required": ["items", "total"],
    }


_ERROR_SCHEMA = {"type": "object", "properties": {"error": {"type": "string"}}, "required": ["error"]}

_FIELD_ERRORS_SCHEMA = {
    "type": "object",
    "properties": {
        "errors": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {"field": {"type": "string"}, "code": {"type": "string"}},
                "required": ["field", "code"],
            },
        }
    },
    "required": ["errors"],
}


def _json_response(description: str, schema: dict | None = None) -> dict:
    response: dict = {"description": description}
    if schema is not None:
        response["content"] = {"application/json": {"schema": schema}}
    return response


def _json_body(schema: dict) -> dict:
    return {"required": True, "content": {"application/json": {"schema": schema}}}


_NOT_FOUND = _json_response("record not found", _ERROR_SCHEMA)
_VALIDATION_FAILED = _json_response("validation failed", _FIELD_ERRORS_SCHEMA)


def _operation(route: RouteEntry, model: Model) -> dict:
    op: dict = {"operationId": route.operation_id}
    if route.kind == "list":
        op["responses"] = {"200": _json_response("all records", _list_envelope(_ref(route.entity)))}
    elif route.kind == "create":
        op["requestBody"] = _json_body(_ref(route.entity))
        op["responses"] = {"201": _json_response("created record", _ref(route.entity)), "422": _VALIDATION_FAILED}
    elif route.kind == "read":
        op["responses"] = {"200": _json_response("the record", _ref(route.entity)), "404": _NOT_FOUND}
    elif route.kind == "update":
        op["requestBody"] = _json_body(_ref(route.entity))
        op["responses"] = {
            "200": _json_response("updated record", _ref(route.entity)),
            "404": _NOT_FOUND,
            "422": _VALIDATION_FAILED,
        }
    elif route.kind == "delete":
        op["responses"] = {"204": {"description": "record deleted"}, "404": _NOT_FOUND}
    elif route.kind == "call":
        result = {"type": "object", "properties": {"result": {}}, "required": ["result"]}
        op["responses"] = {"200": _json_response("method result", result), "404": _NOT_FOUND}
    elif route.kind in ("link", "unlink"):
        assoc = next(a for a in model.associations if a.name == route.association)
        payload = {
            "type": "object",
            "properties": {
                f"{assoc.end_a.role}_id": {"type": "integer"},
                f"{assoc.end_b.role}_id": {"type": "integer"},
            },
            "required": [f"{assoc.end_a.role}_id", f"{assoc.end_b.role}_id"],
        }
        op["requestBody"] = _json_body(payload)
        if route.kind == "link":
            op["responses"] = {
                "201": {"description": "link created"},
                "404": _NOT_FOUND,
                "409": _json_response("duplicate link or multiplicity violation", _ERROR_SCHEMA),
            }
        else:
            op["responses"] = {"204": {"description": "link removed"}, "404": _NOT_FOUND}
    elif route.kind == "related":
        assoc = next(a for a in model.associations if a.name == route.association)
        end = assoc.end_a if assoc.end_a.role == route.role else assoc.end_b
        op["responses"] = {
            "200": _json_response("linked records", _list_envelope(_ref(end.target))),
            "404": _NOT_FOUND,
        }
    else:
        raise ValueError(f"unknown route kind: {route.kind}")
    return op


def emit_openapi(model: Model) -> dict:
    """OpenAPI 3.0.3 document covering exactly the route_table paths."""
    paths: dict[str, dict] = {}
    for route in route_table(model):
        item = paths.setdefault(route.path, {})
        if "{id}" in route.path and "parameters" not in item:
            item["parameters"] = [
                {"name": "id", "in": "path", "required": True, "schema": {"type": "integer"}}
            ]
        item[route.http_method.lower()] = _operation(route, model)
    schemas = {entity.name: _entity_schema(entity, model) for entity in model.entities}
    return {
        "openapi": "3.0.3",
        "info": {"title": model.name, "version": "0.1.0"},
        "paths": paths,
        "components": {"schemas": schemas},
    }


def openapi_json(document: dict) -> str:
    return json.dumps(document, indent=2, sort_keys=True) + "\n"


# --- relational DDL ----------------------------------------------------------

_SQL_TYPES = {
    "str": "TEXT",
    "int": "INTEGER",
    "float": "REAL",
    "bool": "INTEGER",
    "date": "TEXT",
    "datetime": "TEXT",
}


def _fk_end(assoc: AssociationDef):
    """The to-one end whose foreign key realizes the association, if any.

    When both ends are to-one the first end carries the key.
    """
    if assoc.end_a.multiplicity.upper == 1:
        return assoc.end_a, assoc.end_b
    if assoc.end_b.multiplicity.upper == 1:
        return assoc.end_b, assoc.end_a
    return None


def emit_sql_ddl(model: Model) -> str:
    """One single-line CREATE TABLE per entity, then per many-to-many association."""
    fk_columns: dict[str, list[str]] = {entity.name: [] for entity in model.entities}
    junctions: list[str] = []
    for assoc in model.associations:
        pair = _fk_end(assoc)
        if pair is not None:
            fk, other = pair
            not_null = " NOT NULL" if fk.multiplicity.lower >= 1 else ""
            column = f"{fk.role}_id INTEGER{not_null} REFERENCES {normalize_identifier(fk.target)}(id)"
            fk_columns[other.target].append(column)
        else:
            cols = []
            for end in (assoc.end_a, assoc.end_b):
                cols.append(f"{end.role}_id INTEGER NOT NULL REFERENCES {normalize_identifier(end.target)}(id)")
            cols.append(f"PRIMARY KEY ({assoc.end_a.role}_id, {assoc.end_b.role}_id)")
            junctions.append(f"CREATE TABLE {normalize_identifier(assoc.name)} ({', '.join(cols)});")

    statements: list[str] = []
    for entity in model.entities:
        columns = ["id INTEGER PRIMARY KEY"]
        for attr in entity.attributes:
            sql_type = _SQL_TYPES.get(attr.type, "TEXT")
            column = f"{attr.name} {sql_type}"
            if attr.required:
                column += " NOT NULL"
            enum = model.enum(attr.type)
            if enum is not None:
                literals = ", ".join(f"'{lit}'" for lit in enum.literals)
                column += f" CHECK ({attr.name} IN ({literals}))"
            columns.append(column)
        columns.extend(fk_columns[entity.name])
        statements.append(f"CREATE TABLE {normalize_identifier(entity.name)} ({', '.join(columns)});")
    statements.extend(junctions)
    return "\n".join(statements) + ("\n" if statements else "")


# --- bundle -------------------------------------------------------------------

def generate_backend_bundle(model: Model) -> GeneratedProject:
    """Deployable backend bundle: model, OpenAPI, DDL, entry point, build manifest."""
    project = GeneratedProject()
    project.add("backend/model.buml", print_model(model))
    project.add("backend/openapi.json", openapi_json(emit_openapi(model)))
    project.add("backend/schema.sql", emit_sql_ddl(model))
    values = {"model_name": model.name, "version": __version__}
    project.add("backend/main.py", render_template(load_template("backend_main.py.tmpl"), values))
    project.add("backend/requirements.txt", render_template(load_template("requirements.txt.tmpl"), values))
    return project
