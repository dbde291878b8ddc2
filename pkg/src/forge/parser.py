"""Recursive-descent parser: source text to :class:`~forge.model.Model`.

``parse_model`` is total: it returns a ``Model`` on success, otherwise a
non-empty list of error diagnostics (E900 lexical, E901 syntax). After a
syntax error the parser resynchronizes at the next top-level keyword, so one
run can report several independent errors.
"""

from __future__ import annotations

from .diagnostics import Diagnostic, error
from .lexer import Token, lex
from .model import (
    ActionButton,
    ActionSpec,
    AgentModel,
    AssociationDef,
    AssociationEnd,
    AttributeDef,
    Auto,
    CHART_KINDS,
    CallMethod,
    Chart,
    ChatWidget,
    ComponentDef,
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

TOP_LEVEL_KEYWORDS = ("class", "enum", "association", "agent", "page")

META_KEYS = ("description", "uri", "icon")

TYPE_KEYWORDS = ("str", "int", "float", "bool", "date", "datetime")


class _SyntaxError(Exception):
    def __init__(self, token: Token, expected: str):
        found = "end of input" if token.kind == "EOF" else f"'{token.value}'"
        super().__init__(f"expected {expected}, found {found}")
        self.token = token
        self.message = f"expected {expected}, found {found}"


def parse_model(text: str) -> Model | list[Diagnostic]:
    tokens, diags = lex(text)
    if diags:
        return diags
    parser = _Parser(tokens)
    model = parser.parse()
    if parser.diags:
        return parser.diags
    return model


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0
        self.diags: list[Diagnostic] = []

    # --- token plumbing -------------------------------------------------

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def next(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.kind != "EOF":
            self.pos += 1
        return tok

    def at_keyword(self, *words: str) -> bool:
        tok = self.peek()
        return tok.kind == "KEYWORD" and tok.value in words

    def expect(self, kind: str, expected: str) -> Token:
        tok = self.peek()
        if tok.kind != kind:
            raise _SyntaxError(tok, expected)
        return self.next()

    def expect_keyword(self, word: str) -> Token:
        tok = self.peek()
        if not tok.is_keyword(word):
            raise _SyntaxError(tok, f"'{word}'")
        return self.next()

    def _sync_to_top_level(self) -> None:
        if self.peek().kind != "EOF":
            self.next()
        while self.peek().kind != "EOF" and not self.at_keyword(*TOP_LEVEL_KEYWORDS):
            self.next()

    def _record(self, exc: _SyntaxError) -> None:
        self.diags.append(error("E901", exc.message, exc.token.span))
        self._sync_to_top_level()

    # --- grammar --------------------------------------------------------

    def parse(self) -> Model:
        name = ""
        span = None
        try:
            self.expect_keyword("model")
            tok = self.expect("PIDENT", "model name")
            name = tok.value
            span = tok.span
        except _SyntaxError as exc:
            self._record(exc)

        entities: list[EntityDef] = []
        enums: list[EnumDef] = []
        associations: list[AssociationDef] = []
        agents: list[AgentModel] = []
        pages: list[PageDef] = []
        while self.peek().kind != "EOF":
            try:
                if self.at_keyword("class"):
                    entities.append(self._entity())
                elif self.at_keyword("enum"):
                    enums.append(self._enum())
                elif self.at_keyword("association"):
                    associations.append(self._association())
                elif self.at_keyword("agent"):
                    agents.append(self._agent())
                elif self.at_keyword("page"):
                    pages.append(self._page())
                else:
                    raise _SyntaxError(self.peek(), "'class', 'enum', 'association', 'agent' or 'page'")
            except _SyntaxError as exc:
                self._record(exc)

        return Model(
            name=name,
            entities=tuple(entities),
            enums=tuple(enums),
            associations=tuple(associations),
            agents=tuple(agents),
            pages=tuple(pages),
            span=span,
        )

    def _entity(self) -> EntityDef:
        self.expect_keyword("class")
        name_tok = self.expect("PIDENT", "entity name")
        self.expect("LBRACE", "'{'")
        meta: dict[str, str] = {}
        while self.at_keyword(*META_KEYS):
            key = self.next().value
            self.expect("COLON", "':'")
            meta[key] = self.expect("STRING", "string").value
        attributes: list[AttributeDef] = []
        methods: list[MethodDef] = []
        while self.at_keyword("attr", "method"):
            if self.at_keyword("attr"):
                attributes.append(self._attribute())
            else:
                methods.append(self._method())
        self.expect("RBRACE", "'}'")
        return EntityDef(
            name=name_tok.value,
            description=meta.get("description"),
            uri=meta.get("uri"),
            icon=meta.get("icon"),
            attributes=tuple(attributes),
            methods=tuple(methods),
            span=name_tok.span,
        )

    def _attribute(self) -> AttributeDef:
        self.expect_keyword("attr")
        name_tok = self.expect("IDENT", "attribute name")
        self.expect("COLON", "':'")
        type_name = self._type()
        required = False
        if self.peek().kind == "LBRACKET":
            self.next()
            self.expect_keyword("required")
            self.expect("RBRACKET", "']'")
            required = True
        return AttributeDef(name=name_tok.value, type=type_name, required=required, span=name_tok.span)

    def _method(self) -> MethodDef:
        self.expect_keyword("method")
        name_tok = self.expect("IDENT", "method name")
        self.expect("LPAREN", "'('")
        params: list[tuple[str, str]] = []
        if self.peek().kind != "RPAREN":
            while True:
                pname = self.expect("IDENT", "parameter name").value
                self.expect("COLON", "':'")
                params.append((pname, self._type()))
                if self.peek().kind == "COMMA":
                    self.next()
                    continue
                break
        self.expect("RPAREN", "')'")
        return_type = None
        if self.peek().kind == "ARROW":
            self.next()
            return_type = self._type()
        return MethodDef(name=name_tok.value, params=tuple(params), return_type=return_type, span=name_tok.span)

    def _type(self) -> str:
        tok = self.peek()
        if tok.kind == "KEYWORD" and tok.value in TYPE_KEYWORDS:
            return self.next().value
        if tok.kind == "PIDENT":
            return self.next().value
        raise _SyntaxError(tok, "type name")

    def _enum(self) -> EnumDef:
        self.expect_keyword("enum")
        name_tok = self.expect("PIDENT", "enum name")
        self.expect("LBRACE", "'{'")
        literals = [self.expect("IDENT", "enum literal").value]
        while self.peek().kind == "COMMA":
            self.next()
            literals.append(self.expect("IDENT", "enum literal").value)
        self.expect("RBRACE", "'}'")
        return EnumDef(name=name_tok.value, literals=tuple(literals), span=name_tok.span)

    def _association(self) -> AssociationDef:
        self.expect_keyword("association")
        name_tok = self.expect("PIDENT", "association name")
        self.expect("LBRACE", "'{'")
        end_a = self._association_end()
        end_b = self._association_end()
        self.expect("RBRACE", "'}'")
        return AssociationDef(name=name_tok.value, end_a=end_a, end_b=end_b, span=name_tok.span)

    def _association_end(self) -> AssociationEnd:
        role_tok = self.expect("IDENT", "role name")
        self.expect("COLON", "':'")
        target = self.expect("PIDENT", "entity name").value
        self.expect("LBRACKET", "'['")
        lower = int(self.expect("INT", "lower bound").value)
        self.expect("DOTDOT", "'..'")
        tok = self.peek()
        if tok.kind == "STAR":
            self.next()
            upper: int | None = None
        elif tok.kind == "INT":
            upper = int(self.next().value)
        else:
            raise _SyntaxError(tok, "upper bound or '*'")
        self.expect("RBRACKET", "']'")
        try:
            mult = Multiplicity(lower, upper)
        except ValueError as exc:
            raise _SyntaxError(tok, f"valid multiplicity ({exc})") from None
        return AssociationEnd(role=role_tok.value, target=target, multiplicity=mult, span=role_tok.span)

    def _agent(self) -> AgentModel:
        self.expect_keyword("agent")
        name_tok = self.expect("PIDENT", "agent name")
        self.expect("LBRACE", "'{'")
        intents: list[IntentDef] = []
        while self.at_keyword("intent"):
            intents.append(self._intent())
        states: list[StateDef] = []
        while self.at_keyword("state"):
            states.append(self._state())
        self.expect("RBRACE", "'}'")
        return AgentModel(name=name_tok.value, intents=tuple(intents), states=tuple(states), span=name_tok.span)

    def _intent(self) -> IntentDef:
        self.expect_keyword("intent")
        name_tok = self.expect("IDENT", "intent name")
        self.expect("LBRACE", "'{'")
        sentences = [self.expect("STRING", "training sentence").value]
        while self.peek().kind == "SEMI":
            self.next()
            sentences.append(self.expect("STRING", "training sentence").value)
        self.expect("RBRACE", "'}'")
        return IntentDef(name=name_tok.value, sentences=tuple(sentences), span=name_tok.span)

    def _state(self) -> StateDef:
        self.expect_keyword("state")
        name_tok = self.expect("PIDENT", "state name")
        initial = False
        if self.at_keyword("initial"):
            self.next()
            initial = True
        self.expect("LBRACE", "'{'")
        actions: list[ActionSpec] = []
        while self.at_keyword("say", "call", "llm"):
            actions.append(self._action())
        transitions: list[TransitionSpec] = []
        while self.at_keyword("on", "auto", "fallback"):
            transitions.append(self._transition())
        self.expect("RBRACE", "'}'")
        return StateDef(
            name=name_tok.value,
            initial=initial,
            actions=tuple(actions),
            transitions=tuple(transitions),
            span=name_tok.span,
        )

    def _action(self) -> ActionSpec:
        tok = self.next()
        if tok.value == "say":
            text_tok = self.expect("STRING", "string")
            return SayText(text=text_tok.value, span=tok.span)
        if tok.value == "call":
            entity_tok = self.expect("PIDENT", "entity name")
            self.expect("DOT", "'.'")
            method_tok = self.expect("IDENT", "method name")
            return CallMethod(entity=entity_tok.value, method=method_tok.value, span=entity_tok.span)
        text_tok = self.expect("STRING", "string")
        return LlmReply(prompt=text_tok.value, span=tok.span)

    def _transition(self) -> TransitionSpec:
        tok = self.next()
        span = tok.span
        if tok.value == "on":
            intent_tok = self.expect("IDENT", "intent name")
            trigger: OnIntent | Auto | Fallback = OnIntent(intent_tok.value)
            span = intent_tok.span
        elif tok.value == "auto":
            trigger = Auto()
        else:
            trigger = Fallback()
        self.expect("ARROW", "'->'")
        target_tok = self.expect("PIDENT", "state name")
        return TransitionSpec(
            trigger=trigger, target=target_tok.value, span=span, target_span=target_tok.span
        )

    def _page(self) -> PageDef:
        self.expect_keyword("page")
        name_tok = self.expect("PIDENT", "page name")
        self.expect("LBRACE", "'{'")
        style: list[tuple[str, str]] = []
        if self.at_keyword("style"):
            self.next()
            self.expect("LBRACE", "'{'")
            while self.peek().kind == "IDENT":
                key = self.next().value
                self.expect("COLON", "':'")
                val_tok = self.peek()
                if val_tok.kind in ("STRING", "IDENT"):
                    style.append((key, self.next().value))
                else:
                    raise _SyntaxError(val_tok, "string or identifier")
            self.expect("RBRACE", "'}'")
        components: list[ComponentDef] = []
        while self.at_keyword("table", "form", "button", "chart", "chat"):
            components.append(self._component())
        self.expect("RBRACE", "'}'")
        return PageDef(name=name_tok.value, style=tuple(style), components=tuple(components), span=name_tok.span)

    def _component(self) -> ComponentDef:
        tok = self.next()
        if tok.value == "table":
            name_tok = self.expect("PIDENT", "component name")
            self.expect_keyword("binds")
            entity = self.expect("PIDENT", "entity name").value
            self.expect("LBRACE", "'{'")
            self.expect_keyword("columns")
            self.expect("COLON", "':'")
            columns = [self.expect("IDENT", "attribute name").value]
            while self.peek().kind == "COMMA":
                self.next()
                columns.append(self.expect("IDENT", "attribute name").value)
            self.expect("RBRACE", "'}'")
            return DataTable(name=name_tok.value, entity=entity, columns=tuple(columns), span=name_tok.span)
        if tok.value == "form":
            name_tok = self.expect("PIDENT", "component name")
            self.expect_keyword("creates")
            entity = self.expect("PIDENT", "entity name").value
            return Form(name=name_tok.value, entity=entity, span=name_tok.span)
        if tok.value == "button":
            name_tok = self.expect("PIDENT", "component name")
            self.expect_keyword("invokes")
            entity = self.expect("PIDENT", "entity name").value
            self.expect("DOT", "'.'")
            method = self.expect("IDENT", "method name").value
            return ActionButton(name=name_tok.value, entity=entity, method=method, span=name_tok.span)
        if tok.value == "chart":
            name_tok = self.expect("PIDENT", "component name")
            self.expect_keyword("binds")
            entity = self.expect("PIDENT", "entity name").value
            self.expect("LBRACE", "'{'")
            self.expect_keyword("kind")
            self.expect("COLON", "':'")
            kind_tok = self.peek()
            if not (kind_tok.kind == "KEYWORD" and kind_tok.value in CHART_KINDS):
                raise _SyntaxError(kind_tok, "'bar', 'line' or 'pie'")
            kind = self.next().value
            self.expect("COMMA", "','")
            self.expect_keyword("x")
            self.expect("COLON", "':'")
            x = self.expect("IDENT", "attribute name").value
            self.expect("COMMA", "','")
            self.expect_keyword("y")
            self.expect("COLON", "':'")
            y = self.expect("IDENT", "attribute name").value
            self.expect("RBRACE", "'}'")
            return Chart(name=name_tok.value, entity=entity, kind=kind, x=x, y=y, span=name_tok.span)
        name_tok = self.expect("PIDENT", "component name")
        self.expect_keyword("agent")
        agent = self.expect("PIDENT", "agent name").value
        return ChatWidget(name=name_tok.value, agent=agent, span=name_tok.span)
