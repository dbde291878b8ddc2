"""Shared test machinery: independent oracles and a random model generator.

Everything here re-derives behavior from the documented contracts instead of
calling into the code paths under test, so comparisons stay meaningful.
"""

from __future__ import annotations

import asyncio
import json
import random
import re
from fractions import Fraction

from forge.model import (
    ActionButton,
    AgentModel,
    AssociationDef,
    AssociationEnd,
    AttributeDef,
    Auto,
    CallMethod,
    Chart,
    ChatWidget,
    DataTable,
    EntityDef,
    EnumDef,
    Fallback,
    Form,
    IntentDef,
    LlmReply,
    MethodDef,
    Model,
    Multiplicity,
    OnIntent,
    PageDef,
    SayText,
    StateDef,
    TransitionSpec,
)

# --- ASGI driver (fast in-process HTTP without a test client) --------------


class AsgiDriver:
    """Drives an ASGI app one request at a time on a private event loop."""

    def __init__(self, app):
        self.app = app
        self.loop = asyncio.new_event_loop()

    def close(self) -> None:
        self.loop.close()

    def request(self, method: str, path: str, payload=None) -> tuple[int, object]:
        return self.loop.run_until_complete(self._request(method, path, payload))

    async def _request(self, method: str, path: str, payload) -> tuple[int, object]:
        body = b"" if payload is None else json.dumps(payload).encode("utf-8")
        scope = {
            "type": "http",
            "asgi": {"version": "3.0"},
            "http_version": "1.1",
            "method": method,
            "scheme": "http",
            "path": path,
            "raw_path": path.encode("utf-8"),
            "query_string": b"",
            "root_path": "",
            "headers": [
                (b"host", b"testserver"),
                (b"content-type", b"application/json"),
                (b"content-length", str(len(body)).encode()),
            ],
            "client": ("testclient", 50000),
            "server": ("testserver", 80),
        }
        sent = {"body": b""}
        received = {"done": False}

        async def receive():
            if received["done"]:
                return {"type": "http.disconnect"}
            received["done"] = True
            return {"type": "http.request", "body": body, "more_body": False}

        async def send(message):
            if message["type"] == "http.response.start":
                sent["status"] = message["status"]
            elif message["type"] == "http.response.body":
                sent["body"] += message.get("body", b"")

        await self.app(scope, receive, send)
        raw = sent["body"]
        return sent["status"], (json.loads(raw) if raw else None)


# --- naive CRUD oracle -------------------------------------------------------


def _oracle_type_ok(value, type_name, enums):
    if type_name == "str":
        return type(value) is str
    if type_name == "int":
        return type(value) is int
    if type_name == "float":
        return type(value) in (int, float)
    if type_name == "bool":
        return type(value) is bool
    if type_name == "date":
        if type(value) is not str or not re.fullmatch(r"\d{4}-\d{2}-\d{2}", value):
            return False
        year, month, day = int(value[:4]), int(value[5:7]), int(value[8:10])
        days = [31, 29 if (year % 4 == 0 and year % 100 != 0) or year % 400 == 0 else 28,
                31, 30, 31, 30, 31, 31, 30, 31, 30, 31]
        return 1 <= month <= 12 and 1 <= day <= days[month - 1]
    if type_name == "datetime":
        if type(value) is not str or not re.fullmatch(r"\d{4}-\d{2}-\d{2}T\d{2}:\d{2}:\d{2}Z", value):
            return False
        if not _oracle_type_ok(value[:10], "date", enums):
            return False
        hh, mm, ss = int(value[11:13]), int(value[14:16]), int(value[17:19])
        return hh <= 23 and mm <= 59 and ss <= 59
    return type(value) is str and value in enums[type_name]


class OracleApi:
    """Map-based reimplementation of the served HTTP contract.

    Accepts (method, path, payload) calls and answers (status, body) per the
    documented route, validation, and link semantics. Shares no code with
    forge.server or forge.backend.
    """

    def __init__(self, model: Model):
        def snake(name):
            return "".join("_" + c.lower() if c.isupper() and i else c.lower() for i, c in enumerate(name))

        self.enums = {e.name: list(e.literals) for e in model.enums}
        self.entities = {}
        for entity in model.entities:
            self.entities[snake(entity.name)] = {
                "name": entity.name,
                "attrs": [(a.name, a.type, a.required) for a in entity.attributes],
                "methods": {m.name: m.return_type for m in entity.methods},
            }
        self.assocs = {}
        self.related = {}  # (entity_snake, role) -> (assoc_snake, side of listed records)
        for assoc in model.associations:
            a_snake = snake(assoc.name)
            self.assocs[a_snake] = {
                "role_a": assoc.end_a.role,
                "target_a": snake(assoc.end_a.target),
                "upper_a": assoc.end_a.multiplicity.upper,
                "role_b": assoc.end_b.role,
                "target_b": snake(assoc.end_b.target),
                "upper_b": assoc.end_b.multiplicity.upper,
            }
            self.related[(snake(assoc.end_b.target), assoc.end_a.role)] = (a_snake, "a")
            self.related[(snake(assoc.end_a.target), assoc.end_b.role)] = (a_snake, "b")
        self.records = {s: {} for s in self.entities}
        self.counters = {s: 1 for s in self.entities}
        self.links = {s: set() for s in self.assocs}

    def _default_result(self, return_type):
        if return_type is None:
            return None
        fixed = {"str": "", "int": 0, "float": 0.0, "bool": False,
                 "date": "1970-01-01", "datetime": "1970-01-01T00:00:00Z"}
        if return_type in fixed:
            return fixed[return_type]
        return self.enums[return_type][0]

    def _validate(self, desc, payload, mode):
        errors = []
        for name, type_name, required in desc["attrs"]:
            if name not in payload:
                if mode == "create" and required:
                    errors.append({"field": name, "code": "V001"})
                continue
            value = payload[name]
            if value is None:
                if required:
                    errors.append({"field": name, "code": "V002"})
                continue
            if not _oracle_type_ok(value, type_name, self.enums):
                errors.append({"field": name, "code": "V002"})
        known = {name for name, _, _ in desc["attrs"]}
        for key in payload:
            if key not in known:
                errors.append({"field": key, "code": "V003"})
        return errors

    def request(self, method: str, path: str, payload=None) -> tuple[int, object]:
        no_route = (404, {"error": "NO_ROUTE"})
        if path == "/healthz":
            return (200, {"status": "ok"}) if method == "GET" else no_route
        parts = path.split("/")
        if len(parts) < 3 or parts[0] != "" or parts[1] != "api":
            return no_route
        if parts[2] == "assoc" and len(parts) == 5:
            return self._assoc_request(method, parts[3], parts[4], payload)
        snake = parts[2]
        if snake not in self.entities:
            return no_route
        desc = self.entities[snake]
        if len(parts) == 3:
            if method == "GET":
                items = [self.records[snake][i] for i in sorted(self.records[snake])]
                return 200, {"items": items, "total": len(items)}
            if method == "POST":
                errors = self._validate(desc, payload or {}, "create")
                if errors:
                    return 422, {"errors": errors}
                record = {"id": self.counters[snake]}
                for name, _, _ in desc["attrs"]:
                    record[name] = (payload or {}).get(name)
                self.records[snake][record["id"]] = record
                self.counters[snake] += 1
                return 201, record
            return no_route
        if not re.fullmatch(r"[0-9]+", parts[3]):
            return no_route
        record_id = int(parts[3])
        if len(parts) == 4:
            if method not in ("GET", "PUT", "DELETE"):
                return no_route
            record = self.records[snake].get(record_id)
            if record is None:
                return 404, {"error": "NOT_FOUND"}
            if method == "GET":
                return 200, record
            if method == "PUT":
                errors = self._validate(desc, payload or {}, "update")
                if errors:
                    return 422, {"errors": errors}
                for name, _, _ in desc["attrs"]:
                    if name in (payload or {}):
                        record[name] = payload[name]
                return 200, record
            del self.records[snake][record_id]
            for a_snake, a_desc in self.assocs.items():
                self.links[a_snake] = {
                    (ia, ib)
                    for ia, ib in self.links[a_snake]
                    if not (a_desc["target_a"] == snake and ia == record_id)
                    and not (a_desc["target_b"] == snake and ib == record_id)
                }
            return 204, None
        if len(parts) == 6 and parts[4] == "call":
            if method != "POST" or parts[5] not in desc["methods"]:
                return no_route
            if record_id not in self.records[snake]:
                return 404, {"error": "NOT_FOUND"}
            return 200, {"result": self._default_result(desc["methods"][parts[5]])}
        if len(parts) == 5:
            key = (snake, parts[4])
            if method != "GET" or key not in self.related:
                return no_route
            if record_id not in self.records[snake]:
                return 404, {"error": "NOT_FOUND"}
            a_snake, side = self.related[key]
            a_desc = self.assocs[a_snake]
            if side == "a":
                ids = sorted(ia for ia, ib in self.links[a_snake] if ib == record_id)
                listed = a_desc["target_a"]
            else:
                ids = sorted(ib for ia, ib in self.links[a_snake] if ia == record_id)
                listed = a_desc["target_b"]
            items = [self.records[listed][i] for i in ids if i in self.records[listed]]
            return 200, {"items": items, "total": len(items)}
        return no_route

    def _assoc_request(self, method, a_snake, op, payload):
        no_route = (404, {"error": "NO_ROUTE"})
        if a_snake not in self.assocs:
            return no_route
        desc = self.assocs[a_snake]
        pairs = self.links[a_snake]
        if op == "link" and method == "POST":
            ia = (payload or {}).get(f"{desc['role_a']}_id")
            ib = (payload or {}).get(f"{desc['role_b']}_id")
            if type(ia) is not int or type(ib) is not int:
                return 404, {"error": "NOT_FOUND"}
            if ia not in self.records[desc["target_a"]] or ib not in self.records[desc["target_b"]]:
                return 404, {"error": "NOT_FOUND"}
            if (ia, ib) in pairs:
                return 409, {"error": "DUPLICATE"}
            if desc["upper_a"] is not None and sum(1 for p in pairs if p[1] == ib) + 1 > desc["upper_a"]:
                return 409, {"error": "MULTIPLICITY"}
            if desc["upper_b"] is not None and sum(1 for p in pairs if p[0] == ia) + 1 > desc["upper_b"]:
                return 409, {"error": "MULTIPLICITY"}
            pairs.add((ia, ib))
            return 201, {f"{desc['role_a']}_id": ia, f"{desc['role_b']}_id": ib}
        if op == "unlink" and method == "DELETE":
            ia = (payload or {}).get(f"{desc['role_a']}_id")
            ib = (payload or {}).get(f"{desc['role_b']}_id")
            if type(ia) is not int or type(ib) is not int or (ia, ib) not in pairs:
                return 404, {"error": "NOT_FOUND"}
            pairs.discard((ia, ib))
            return 204, None
        return no_route


# --- randomized CRUD scripts -------------------------------------------------


def random_crud_script(model: Model, rng: random.Random, steps: int = 200):
    """A plausible mix of valid and invalid CRUD/link calls for ``model``."""

    def snake(name):
        return "".join("_" + c.lower() if c.isupper() and i else c.lower() for i, c in enumerate(name))

    enums = {e.name: list(e.literals) for e in model.enums}

    def value_for(type_name, valid=True):
        if not valid:
            return rng.choice(["wrong", 99, True, None, [1]])
        if type_name == "str":
            return rng.choice(["alpha", "beta", "gamma", "delta"]) + str(rng.randrange(100))
        if type_name == "int":
            return rng.randrange(-50, 500)
        if type_name == "float":
            return rng.randrange(1000) / 8
        if type_name == "bool":
            return rng.random() < 0.5
        if type_name == "date":
            return f"{rng.randrange(1990, 2030):04d}-{rng.randrange(1, 13):02d}-{rng.randrange(1, 29):02d}"
        if type_name == "datetime":
            return (
                f"{rng.randrange(1990, 2030):04d}-{rng.randrange(1, 13):02d}-{rng.randrange(1, 29):02d}"
                f"T{rng.randrange(24):02d}:{rng.randrange(60):02d}:{rng.randrange(60):02d}Z"
            )
        return rng.choice(enums[type_name])

    def payload_for(entity, flavor):
        payload = {}
        for attr in entity.attributes:
            if flavor == "missing" and attr.required and rng.random() < 0.8:
                continue
            if rng.random() < 0.85 or attr.required:
                payload[attr.name] = value_for(attr.type, valid=flavor != "badtype" or rng.random() < 0.5)
        if flavor == "unknown":
            payload[rng.choice(["id", "bogus_field"])] = 1
        return payload

    def any_id():
        return rng.randrange(1, max(3, steps // 10))

    script = []
    for _ in range(steps):
        roll = rng.random()
        if not model.entities or roll < 0.04:
            script.append(("GET", "/api/no_such_thing", None))
            continue
        entity = rng.choice(model.entities)
        s = snake(entity.name)
        if roll < 0.34:
            flavor = rng.choice(["valid", "valid", "valid", "missing", "badtype", "unknown"])
            script.append(("POST", f"/api/{s}", payload_for(entity, flavor)))
        elif roll < 0.44:
            script.append(("GET", f"/api/{s}", None))
        elif roll < 0.54:
            script.append(("GET", f"/api/{s}/{any_id()}", None))
        elif roll < 0.64:
            flavor = rng.choice(["valid", "valid", "badtype", "unknown"])
            script.append(("PUT", f"/api/{s}/{any_id()}", payload_for(entity, flavor)))
        elif roll < 0.72:
            script.append(("DELETE", f"/api/{s}/{any_id()}", None))
        elif roll < 0.78 and entity.methods:
            method = rng.choice(entity.methods)
            script.append(("POST", f"/api/{s}/{any_id()}/call/{method.name}", None))
        elif roll < 0.92 and model.associations:
            assoc = rng.choice(model.associations)
            a = snake(assoc.name)
            payload = {
                f"{assoc.end_a.role}_id": any_id(),
                f"{assoc.end_b.role}_id": any_id(),
            }
            if rng.random() < 0.7:
                script.append(("POST", f"/api/assoc/{a}/link", payload))
            else:
                script.append(("DELETE", f"/api/assoc/{a}/unlink", payload))
        elif model.associations:
            assoc = rng.choice(model.associations)
            end, other = rng.choice([(assoc.end_a, assoc.end_b), (assoc.end_b, assoc.end_a)])
            script.append(("GET", f"/api/{snake(other.target)}/{any_id()}/{end.role}", None))
        else:
            script.append(("GET", f"/api/{s}", None))
    return script


# --- intent-match oracle -------------------------------------------------------

_ASCII_ALNUM = set("abcdefghijklmnopqrstuvwxyz0123456789")


def oracle_tokens(text: str) -> set[str]:
    out = []
    for ch in text.lower():
        out.append(ch if ch in _ASCII_ALNUM else " ")
    return set("".join(out).split())


def oracle_match_intent(text, intents, threshold):
    """Exhaustive intent scoring with exact fractions; mirrors the contract only."""
    message = oracle_tokens(text)
    if not message:
        return None
    best_name = None
    best_score = None
    for intent in intents:
        score = Fraction(0)
        for sentence in intent.sentences:
            tokens = oracle_tokens(sentence)
            if tokens:
                score = max(score, Fraction(len(message & tokens), len(tokens)))
        if float(score) >= threshold and (best_score is None or score > best_score):
            best_name, best_score = intent.name, score
    if best_name is None:
        return None
    return best_name, float(best_score)


# --- independent base64 decoder ------------------------------------------------

_B64_ALPHABET = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/"


def decode_base64(text: str) -> bytes:
    """Table-driven base64 decoder written for tests; no stdlib codec involved."""
    if len(text) % 4 != 0:
        raise ValueError("base64 length must be a multiple of 4")
    values = {c: i for i, c in enumerate(_B64_ALPHABET)}
    out = bytearray()
    for i in range(0, len(text), 4):
        chunk = text[i : i + 4]
        pad = chunk.count("=")
        if pad and i + 4 != len(text):
            raise ValueError("padding only allowed at the end")
        bits = 0
        for ch in chunk.rstrip("="):
            bits = (bits << 6) | values[ch]
        bits <<= 6 * pad
        triple = bits.to_bytes(3, "big")
        out.extend(triple[: 3 - pad])
    return bytes(out)


# --- minimal DDL parser ----------------------------------------------------------

_COLUMN_RE = re.compile(
    r"[a-z][a-z0-9_]* (?:TEXT|INTEGER|REAL)"
    r"(?: PRIMARY KEY)?"
    r"(?: NOT NULL)?"
    r"(?: CHECK \([a-z][a-z0-9_]* IN \('[a-z][a-z0-9_]*'(?:, '[a-z][a-z0-9_]*')*\)\))?"
    r"(?: REFERENCES [a-z][a-z0-9_]*\(id\))?"
)
_PK_RE = re.compile(r"PRIMARY KEY \([a-z][a-z0-9_]*_id, [a-z][a-z0-9_]*_id\)")
_TABLE_RE = re.compile(r"CREATE TABLE ([a-z][a-z0-9_]*) \((.*)\);")


def parse_ddl(ddl: str) -> dict[str, list[str]]:
    """Parse the emitted DDL subset; raises ValueError on anything unexpected."""
    tables: dict[str, list[str]] = {}
    for line in ddl.splitlines():
        match = _TABLE_RE.fullmatch(line)
        if not match:
            raise ValueError(f"unparseable statement: {line!r}")
        name, columns_text = match.groups()
        columns = _split_columns(columns_text)
        for column in columns:
            if not (_COLUMN_RE.fullmatch(column) or _PK_RE.fullmatch(column)):
                raise ValueError(f"unparseable column in {name}: {column!r}")
        tables[name] = columns
    return tables


def _split_columns(text: str) -> list[str]:
    columns = []
    depth = 0
    current = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            columns.append("".join(current))
            current = []
            i += 2 if text[i : i + 2] == ", " else 1
            continue
        current.append(ch)
        i += 1
    columns.append("".join(current))
    return columns


# --- reachability oracle -----------------------------------------------------------


def oracle_reachable(agent: AgentModel) -> set[str]:
    targets = {s.name: [t.target for t in s.transitions] for s in agent.states}
    start = next(s.name for s in agent.states if s.initial)
    seen = set()
    queue = [start]
    while queue:
        name = queue.pop(0)
        if name in seen or name not in targets:
            continue
        seen.add(name)
        queue.extend(targets[name])
    return seen


# --- random well-formed models ------------------------------------------------------

_WORDS = [
    "amber", "basil", "cedar", "delta", "ember", "fjord", "grove", "hazel",
    "iris", "jade", "kelp", "lark", "maple", "north", "opal", "pine",
    "quartz", "reed", "slate", "thorn", "umber", "vale", "wren", "yarrow",
]
_PWORDS = [
    "Anchor", "Beacon", "Cargo", "Dock", "Engine", "Ferry", "Gantry", "Harbor",
    "Inlet", "Jetty", "Keel", "Lighthouse", "Mast", "Nave", "Oar", "Pier",
    "Quay", "Rudder", "Sail", "Tide", "Union", "Vessel", "Wharf", "Yard",
]
_SNIPPETS = [
    "when are you open",
    "how much does it cost",
    "where can i park",
    "do you ship overseas",
    "what is on the menu today",
    "can i return an item",
    "is there a student discount",
    "who do i contact for support",
]
_TEXTS = [
    "Hello there!",
    "All set.",
    'He said "ok" and left.',
    "line one\nline two",
    "backslash \\ inside",
    "tabs\tand unicode: déjà vu ✓",
    "",
    "plain text",
]


class NamePool:
    def __init__(self, rng: random.Random, pascal: bool):
        self.rng = rng
        self.words = _PWORDS if pascal else _WORDS
        self.used: set[str] = set()

    def take(self) -> str:
        while True:
            word = self.rng.choice(self.words)
            if self.rng.random() < 0.5:
                word = f"{word}{self.rng.randrange(100)}"
            if word not in self.used:
                self.used.add(word)
                return word


def random_model(rng: random.Random, max_entities: int = 5) -> Model:
    """A checker-valid random model exercising all three perspectives."""
    pascal = NamePool(rng, pascal=True)
    model_name = pascal.take()

    enums = []
    for _ in range(rng.randrange(0, 3)):
        pool = NamePool(rng, pascal=False)
        literals = tuple(pool.take() for _ in range(rng.randrange(1, 4)))
        enums.append(EnumDef(name=pascal.take(), literals=literals))

    type_choices = ["str", "int", "float", "bool", "date", "datetime"] + [e.name for e in enums]

    entities = []
    for _ in range(rng.randrange(0, max_entities + 1)):
        pool = NamePool(rng, pascal=False)
        attributes = tuple(
            AttributeDef(name=pool.take(), type=rng.choice(type_choices), required=rng.random() < 0.4)
            for _ in range(rng.randrange(0, 4))
        )
        methods = []
        for _ in range(rng.randrange(0, 3)):
            params = tuple((pool.take(), rng.choice(type_choices)) for _ in range(rng.randrange(0, 3)))
            return_type = rng.choice(type_choices + [None])
            methods.append(MethodDef(name=pool.take(), params=params, return_type=return_type))
        meta = lambda: rng.choice(_TEXTS) if rng.random() < 0.3 else None  # noqa: E731
        entities.append(
            EntityDef(
                name=pascal.take(),
                description=meta(),
                uri=meta(),
                icon=meta(),
                attributes=attributes,
                methods=tuple(methods),
            )
        )

    associations = []
    if entities:
        role_pool = NamePool(rng, pascal=False)
        for _ in range(rng.randrange(0, 3)):
            def end():
                lower = rng.randrange(0, 3)
                upper = None if rng.random() < 0.5 else rng.randrange(max(1, lower), lower + 4)
                return AssociationEnd(
                    role=role_pool.take(),
                    target=rng.choice(entities).name,
                    multiplicity=Multiplicity(lower, upper),
                )
            associations.append(AssociationDef(name=pascal.take(), end_a=end(), end_b=end()))

    agents = []
    for _ in range(rng.randrange(0, 3)):
        ipool = NamePool(rng, pascal=False)
        intents = tuple(
            IntentDef(
                name=ipool.take(),
                sentences=tuple(rng.choice(_SNIPPETS) for _ in range(rng.randrange(1, 4))),
            )
            for _ in range(rng.randrange(0, 3))
        )
        state_names = [pascal.take() for _ in range(rng.randrange(1, 5))]
        states = []
        for idx, state_name in enumerate(state_names):
            actions = []
            for _ in range(rng.randrange(0, 3)):
                kind = rng.random()
                if kind < 0.5:
                    actions.append(SayText(text=rng.choice(_TEXTS)))
                elif kind < 0.75:
                    actions.append(LlmReply(prompt=rng.choice(_TEXTS)))
                else:
                    callables = [e for e in entities if e.methods]
                    if callables:
                        target = rng.choice(callables)
                        actions.append(CallMethod(entity=target.name, method=rng.choice(target.methods).name))
            transitions = []
            for intent in intents:
                if rng.random() < 0.5:
                    transitions.append(
                        TransitionSpec(trigger=OnIntent(intent.name), target=rng.choice(state_names))
                    )
            if rng.random() < 0.4:
                transitions.append(TransitionSpec(trigger=Auto(), target=rng.choice(state_names)))
            if rng.random() < 0.4:
                transitions.append(TransitionSpec(trigger=Fallback(), target=rng.choice(state_names)))
            states.append(
                StateDef(name=state_name, initial=idx == 0, actions=tuple(actions), transitions=tuple(transitions))
            )
        # drop unreachable states so generated models carry no diagnostics at
        # all; kept states can only target kept states (targets are reachable)
        reachable = {state_names[0]}
        frontier = [state_names[0]]
        by_name = {s.name: s for s in states}
        while frontier:
            for trans in by_name[frontier.pop()].transitions:
                if trans.target not in reachable:
                    reachable.add(trans.target)
                    frontier.append(trans.target)
        keep = tuple(s for s in states if s.name in reachable)
        agents.append(AgentModel(name=pascal.take(), intents=intents, states=keep))

    pages = []
    for _ in range(rng.randrange(0, 3)):
        cpool = NamePool(rng, pascal=True)
        components: list = []
        for _ in range(rng.randrange(0, 4)):
            kind = rng.randrange(5)
            if kind == 0 and any(e.attributes for e in entities):
                entity = rng.choice([e for e in entities if e.attributes])
                count = rng.randrange(1, len(entity.attributes) + 1)
                columns = tuple(a.name for a in entity.attributes[:count])
                components.append(DataTable(name=cpool.take(), entity=entity.name, columns=columns))
            elif kind == 1 and entities:
                components.append(Form(name=cpool.take(), entity=rng.choice(entities).name))
            elif kind == 2 and any(e.methods for e in entities):
                entity = rng.choice([e for e in entities if e.methods])
                components.append(
                    ActionButton(name=cpool.take(), entity=entity.name, method=rng.choice(entity.methods).name)
                )
            elif kind == 3:
                numeric = [
                    (e, a)
                    for e in entities
                    for a in e.attributes
                    if a.type in ("int", "float")
                ]
                if numeric:
                    entity, y_attr = rng.choice(numeric)
                    x_attr = rng.choice(entity.attributes)
                    components.append(
                        Chart(
                            name=cpool.take(),
                            entity=entity.name,
                            kind=rng.choice(["bar", "line", "pie"]),
                            x=x_attr.name,
                            y=y_attr.name,
                        )
                    )
            elif kind == 4 and agents:
                components.append(ChatWidget(name=cpool.take(), agent=rng.choice(agents).name))
        spool = NamePool(rng, pascal=False)
        style = tuple(
            (spool.take(), rng.choice(["column", "row", "#a0b1c2", "12px", "serif"]))
            for _ in range(rng.randrange(0, 3))
        )
        pages.append(PageDef(name=pascal.take(), style=style, components=tuple(components)))

    return Model(
        name=model_name,
        entities=tuple(entities),
        enums=tuple(enums),
        associations=tuple(associations),
        agents=tuple(agents),
        pages=tuple(pages),
    )
