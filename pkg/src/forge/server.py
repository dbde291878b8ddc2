"""Reference CRUD server: executable semantics of the generated backend.

The store keeps everything in memory; mutations run under a lock, record ids
strictly increase per entity, and deleting a record also removes every link
that references it. Upper multiplicity bounds are enforced on link creation;
lower bounds are deliberately not enforced at runtime, because records must
be creatable before they can be linked.

Error payload conventions, shared with the HTTP layer and conformance tests:

* validation failures: ``422 {"errors": [{"field": ..., "code": "V00x"}]}``,
  with V001/V002 findings in attribute declaration order followed by V003
  findings in payload key order;
* missing records and links: ``404 {"error": "NOT_FOUND"}`` (link payloads
  whose id fields are not integers are treated as naming absent records);
* link conflicts: ``409 {"error": "DUPLICATE"}`` when the exact pair exists
  (checked before bounds), else ``409 {"error": "MULTIPLICITY"}``.
"""

from __future__ import annotations

import re
import threading
from dataclasses import dataclass
from datetime import date, datetime

from starlette.applications import Starlette
from starlette.requests import Request
from starlette.responses import JSONResponse, Response
from starlette.routing import Route

from .backend import RouteEntry, route_table
from .model import AssociationDef, EntityDef, Model, default_value_of
from .serving import ServiceHandle, start_app


@dataclass(frozen=True)
class FieldError:
    field: str
    code: str

    def to_json(self) -> dict:
        return {"field": self.field, "code": self.code}


@dataclass
class Record:
    entity: str
    id: int
    values: dict

    def to_json(self) -> dict:
        return {"id": self.id, **self.values}


_DATE_RE = re.compile(r"\d{4}-\d{2}-\d{2}")
_DATETIME_RE = re.compile(r"\d{4}-\d{2}-\d{2}T\d{2}:\d{2}:\d{2}Z")


def _type_ok(value, type_name: str, model: Model) -> bool:
    if type_name == "str":
        return isinstance(value, str)
    if type_name == "int":
        return isinstance(value, int) and not isinstance(value, bool)
    if type_name == "float":
        return isinstance(value, (int, float)) and not isinstance(value, bool)
    if type_name == "bool":
        return isinstance(value, bool)
    if type_name == "date":
        if not (isinstance(value, str) and _DATE_RE.fullmatch(value)):
            return False
        try:
            date.fromisoformat(value)
        except ValueError:
            return False
        return True
    if type_name == "datetime":
        if not (isinstance(value, str) and _DATETIME_RE.fullmatch(value)):
            return False
        try:
            datetime.fromisoformat(value.replace("Z", "+00:00"))
        except ValueError:
            return False
        return True
    enum = model.enum(type_name)
    if enum is not None:
        return isinstance(value, str) and value in enum.literals
    raise ValueError(f"unresolvable type: {type_name!r}")


def validate_payload(
    entity: EntityDef, model: Model, payload: dict, mode: str
) -> dict | list[FieldError]:
    """Validate a create/update payload; returns stored values or field errors."""
    assert mode in ("create", "update")
    errors: list[FieldError] = []
    for attr in entity.attributes:
        if attr.name not in payload:
            if mode == "create" and attr.required:
                errors.append(FieldError(attr.name, "V001"))
            continue
        value = payload[attr.name]
        if value is None:
            if attr.required:
                errors.append(FieldError(attr.name, "V002"))
            continue
        if not _type_ok(value, attr.type, model):
            errors.append(FieldError(attr.name, "V002"))
    known = {attr.name for attr in entity.attributes}
    for key in payload:
        if key not in known:
            errors.append(FieldError(key, "V003"))
    if errors:
        return errors
    if mode == "create":
        return {attr.name: payload.get(attr.name) for attr in entity.attributes}
    return {attr.name: payload[attr.name] for attr in entity.attributes if attr.name in payload}


class Store:
    """Per-entity record maps, per-association link sets, monotonic id counters."""

    def __init__(self, model: Model):
        self.model = model
        self.records: dict[str, dict[int, Record]] = {e.name: {} for e in model.entities}
        self.counters: dict[str, int] = {e.name: 1 for e in model.entities}
        self.links: dict[str, set[tuple[int, int]]] = {a.name: set() for a in model.associations}
        self.lock = threading.RLock()

    def get(self, entity: str, record_id: int) -> Record | None:
        return self.records[entity].get(record_id)

    def create(self, entity: str, values: dict) -> Record:
        with self.lock:
            record_id = self.counters[entity]
            self.counters[entity] = record_id + 1
            record = Record(entity, record_id, values)
            self.records[entity][record_id] = record
            return record

    def delete(self, entity: str, record_id: int) -> bool:
        with self.lock:
            if record_id not in self.records[entity]:
                return False
            del self.records[entity][record_id]
            for assoc in self.model.associations:
                pairs = self.links[assoc.name]
                doomed = {
                    pair
                    for pair in pairs
                    if (assoc.end_a.target == entity and pair[0] == record_id)
                    or (assoc.end_b.target == entity and pair[1] == record_id)
                }
                pairs -= doomed
            return True


def _list_body(records: list[Record]) -> dict:
    ordered = sorted(records, key=lambda r: r.id)
    return {"items": [r.to_json() for r in ordered], "total": len(ordered)}


def crud_execute(
    store: Store, route: RouteEntry, record_id: int | None = None, payload: dict | None = None
) -> tuple[int, dict | None]:
    """Execute one CRUD or method-call route; response encoded as (status, body)."""
    entity = store.model.entity(route.entity)
    assert entity is not None
    if route.kind == "list":
        return 200, _list_body(list(store.records[entity.name].values()))
    if route.kind == "create":
        result = validate_payload(entity, store.model, payload or {}, "create")
        if isinstance(result, list):
            return 422, {"errors": [e.to_json() for e in result]}
        record = store.create(entity.name, result)
        return 201, record.to_json()
    record = store.get(entity.name, record_id)
    if record is None:
        return 404, {"error": "NOT_FOUND"}
    if route.kind == "read":
        return 200, record.to_json()
    if route.kind == "update":
        result = validate_payload(entity, store.model, payload or {}, "update")
        if isinstance(result, list):
            return 422, {"errors": [e.to_json() for e in result]}
        with store.lock:
            record.values.update(result)
        return 200, record.to_json()
    if route.kind == "delete":
        store.delete(entity.name, record_id)
        return 204, None
    if route.kind == "call":
        method = entity.method(route.method)
        assert method is not None
        if method.return_type is None:
            return 200, {"result": None}
        return 200, {"result": default_value_of(method.return_type, store.model.enum_table())}
    raise ValueError(f"not a CRUD route: {route.kind}")


def _link_ids(assoc: AssociationDef, payload: dict | None) -> tuple[int, int] | None:
    payload = payload or {}
    ia = payload.get(f"{assoc.end_a.role}_id")
    ib = payload.get(f"{assoc.end_b.role}_id")
    if not isinstance(ia, int) or isinstance(ia, bool):
        return None
    if not isinstance(ib, int) or isinstance(ib, bool):
        return None
    return ia, ib


def link_execute(
    store: Store,
    assoc: AssociationDef,
    op: str,
    payload: dict | None = None,
    record_id: int | None = None,
    role: str | None = None,
) -> tuple[int, dict | None]:
    """Execute a link/unlink/related route for ``assoc``."""
    pairs = store.links[assoc.name]
    if op in ("link", "unlink"):
        ids = _link_ids(assoc, payload)
        if ids is None:
            return 404, {"error": "NOT_FOUND"}
        ia, ib = ids
        if op == "unlink":
            with store.lock:
                if (ia, ib) not in pairs:
                    return 404, {"error": "NOT_FOUND"}
                pairs.discard((ia, ib))
            return 204, None
        with store.lock:
            if store.get(assoc.end_a.target, ia) is None or store.get(assoc.end_b.target, ib) is None:
                return 404, {"error": "NOT_FOUND"}
            if (ia, ib) in pairs:
                return 409, {"error": "DUPLICATE"}
            upper_a = assoc.end_a.multiplicity.upper
            if upper_a is not None and sum(1 for p in pairs if p[1] == ib) + 1 > upper_a:
                return 409, {"error": "MULTIPLICITY"}
            upper_b = assoc.end_b.multiplicity.upper
            if upper_b is not None and sum(1 for p in pairs if p[0] == ia) + 1 > upper_b:
                return 409, {"error": "MULTIPLICITY"}
            pairs.add((ia, ib))
        return 201, {f"{assoc.end_a.role}_id": ia, f"{assoc.end_b.role}_id": ib}
    if op == "related":
        if role == assoc.end_a.role:
            base_entity, listed_entity = assoc.end_b.target, assoc.end_a.target
            partner_ids = [ia for ia, ib in pairs if ib == record_id]
        else:
            base_entity, listed_entity = assoc.end_a.target, assoc.end_b.target
            partner_ids = [ib for ia, ib in pairs if ia == record_id]
        if store.get(base_entity, record_id) is None:
            return 404, {"error": "NOT_FOUND"}
        records = [store.get(listed_entity, pid) for pid in partner_ids]
        return 200, _list_body([r for r in records if r is not None])
    raise ValueError(f"not a link route: {op}")


# --- HTTP layer ---------------------------------------------------------------

def _respond(status: int, body: dict | None) -> Response:
    if body is None:
        return Response(status_code=status)
    return JSONResponse(body, status_code=status)


async def _read_json_object(request: Request) -> dict | None:
    try:
        body = await request.json()
    except Exception:
        return None
    return body if isinstance(body, dict) else None


def build_api_app(model: Model, store: Store) -> Starlette:
    """Starlette app answering exactly the route_table routes plus /healthz."""

    def crud_endpoint(route: RouteEntry):
        needs_payload = route.kind in ("create", "update")
        needs_id = route.kind not in ("list", "create")

        async def endpoint(request: Request) -> Response:
            payload = None
            if needs_payload:
                payload = await _read_json_object(request)
                if payload is None:
                    return JSONResponse({"error": "BAD_JSON"}, status_code=400)
            record_id = request.path_params["id"] if needs_id else None
            status, body = crud_execute(store, route, record_id=record_id, payload=payload)
            return _respond(status, body)

        return endpoint

    def link_endpoint(route: RouteEntry, assoc: AssociationDef):
        async def endpoint(request: Request) -> Response:
            if route.kind in ("link", "unlink"):
                payload = await _read_json_object(request)
                if payload is None:
                    return JSONResponse({"error": "BAD_JSON"}, status_code=400)
                status, body = link_execute(store, assoc, route.kind, payload=payload)
            else:
                status, body = link_execute(
                    store, assoc, "related", record_id=request.path_params["id"], role=route.role
                )
            return _respond(status, body)

        return endpoint

    async def healthz(request: Request) -> Response:
        return JSONResponse({"status": "ok"})

    routes = [Route("/healthz", healthz, methods=["GET"])]
    assocs = {a.name: a for a in model.associations}
    for route in route_table(model):
        path = route.path.replace("{id}", "{id:int}")
        if route.kind in ("link", "unlink", "related"):
            endpoint = link_endpoint(route, assocs[route.association])
        else:
            endpoint = crud_endpoint(route)
        routes.append(Route(path, endpoint, methods=[route.http_method]))

    async def no_route(request: Request, exc) -> Response:
        return JSONResponse({"error": "NO_ROUTE"}, status_code=404)

    app = Starlette(routes=routes, exception_handlers={404: no_route, 405: no_route})
    app.router.redirect_slashes = False
    return app


def serve_api(model: Model, store: Store, port: int, host: str = "127.0.0.1") -> ServiceHandle:
    """Serve the CRUD API for ``model`` on ``port``; returns a running handle."""
    return start_app(build_api_app(model, store), host=host, port=port)
