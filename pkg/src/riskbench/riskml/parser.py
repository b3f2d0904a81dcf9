"""Parser for the line-oriented .riskml modelling language.

The grammar has five declaration forms, all introduced by a keyword:

    actor <name>
    goal <name> owner <actor> "<text>"
    feature <name> continuous|integer [<lo>, <hi>] <units> binds <path>
    feature <name> categorical {v1, v2, ...} binds <path>
    event <name> positive|negative when <metric> <|> <number>
        impacts +|-<goal>[, ...] [likelihood <fraction> of <count>]
    situation <name> "<text>" scenario "<file>"
        exposes <event>[, ...] features <feature>[, ...]
        [indicators <name>:<metric>[, ...]]

`#` comments run to end of line, newlines are ordinary whitespace (long
declarations may wrap), references may point forward. Keywords are reserved
and cannot name elements. Cross-reference resolution is validate()'s job;
the parser rejects syntax errors and duplicate names only, so a file that
parses cleanly can still carry semantic diagnostics.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import RiskmlSyntaxError
from .model import (CATEGORICAL, CONTINUOUS, INTEGER, NEGATIVE, POSITIVE,
                    Actor, Condition, DomainFeature, Event, Goal, Indicator,
                    Likelihood, RiskModel, Situation)

KEYWORDS = frozenset((
    "actor", "goal", "owner", "feature", "continuous", "integer",
    "categorical", "binds", "event", "positive", "negative", "when",
    "impacts", "likelihood", "of", "situation", "scenario", "exposes",
    "features", "indicators",
))

_PUNCT = "[]{},:<>+-"


@dataclass(frozen=True)
class _Token:
    type: str  # NAME KEYWORD NUMBER STRING PUNCT EOF
    value: str
    line: int
    column: int


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    line, col = 1, 1
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        start_line, start_col = line, col
        if ch == '"':
            j = i + 1
            while j < n and text[j] not in '"\n':
                j += 1
            if j >= n or text[j] != '"':
                raise RiskmlSyntaxError("unterminated string", start_line, start_col)
            tokens.append(_Token("STRING", text[i + 1:j], start_line, start_col))
            col += j + 1 - i
            i = j + 1
            continue
        # A sign glues to a following digit ("-0.35"); otherwise it is
        # punctuation ("impacts -safety").
        if ch.isdigit() or (ch in "+-" and i + 1 < n and (text[i + 1].isdigit() or text[i + 1] == ".")):
            j = i + 1 if ch in "+-" else i
            k = j
            while k < n and (text[k].isdigit() or text[k] == "."):
                k += 1
            if k < n and text[k] in "eE":
                m = k + 1
                if m < n and text[m] in "+-":
                    m += 1
                if m < n and text[m].isdigit():
                    k = m
                    while k < n and text[k].isdigit():
                        k += 1
            word = text[i:k]
            try:
                float(word)
            except ValueError:
                raise RiskmlSyntaxError(f"bad number {word!r}", start_line, start_col) from None
            tokens.append(_Token("NUMBER", word, start_line, start_col))
            col += k - i
            i = k
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            word = text[i:j]
            kind = "KEYWORD" if word in KEYWORDS else "NAME"
            tokens.append(_Token(kind, word, start_line, start_col))
            col += j - i
            i = j
            continue
        if ch in _PUNCT or ch == ".":
            tokens.append(_Token("PUNCT", ch, start_line, start_col))
            i += 1
            col += 1
            continue
        raise RiskmlSyntaxError(f"unexpected character {ch!r}", start_line, start_col)
    tokens.append(_Token("EOF", "", line, col))
    return tokens


class _Parser:
    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.pos = 0
        self.actors: list[Actor] = []
        self.goals: list[Goal] = []
        self.features: list[DomainFeature] = []
        self.events: list[Event] = []
        self.situations: list[Situation] = []
        self.indicators: list[Indicator] = []
        self.spans: dict = {}

    # token plumbing ------------------------------------------------------

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def error(self, message: str, tok: _Token | None = None, expected: tuple[str, ...] = ()):
        tok = tok or self.peek()
        raise RiskmlSyntaxError(message, tok.line, tok.column, expected)

    def expect_keyword(self, *words: str) -> _Token:
        tok = self.peek()
        if tok.type == "KEYWORD" and tok.value in words:
            return self.advance()
        self.error(f"got {tok.value!r}" if tok.value else "got end of input", tok, expected=words)

    def expect_punct(self, ch: str) -> _Token:
        tok = self.peek()
        if tok.type == "PUNCT" and tok.value == ch:
            return self.advance()
        self.error(f"got {tok.value!r}" if tok.value else "got end of input", tok, expected=(ch,))

    def expect_name(self, what: str = "a name") -> _Token:
        tok = self.peek()
        if tok.type == "NAME":
            return self.advance()
        if tok.type == "KEYWORD":
            self.error(f"reserved word {tok.value!r} cannot be used as {what}", tok)
        self.error(f"got {tok.value!r}" if tok.value else "got end of input", tok, expected=(what,))

    def expect_number(self) -> tuple[float, _Token]:
        tok = self.peek()
        if tok.type == "NUMBER":
            self.advance()
            return float(tok.value), tok
        self.error(f"got {tok.value!r}" if tok.value else "got end of input", tok, expected=("a number",))

    def expect_integer(self, what: str) -> int:
        value, tok = self.expect_number()
        if not value.is_integer():
            self.error(f"{what} must be an integer, got {tok.value}", tok)
        return int(value)

    def expect_string(self) -> str:
        tok = self.peek()
        if tok.type == "STRING":
            return self.advance().value
        self.error(f"got {tok.value!r}" if tok.value else "got end of input", tok,
                   expected=("a quoted string",))

    def name_list(self, what: str) -> tuple[str, ...]:
        names = [self.expect_name(what).value]
        while self.peek().type == "PUNCT" and self.peek().value == ",":
            self.advance()
            names.append(self.expect_name(what).value)
        return tuple(names)

    # declarations --------------------------------------------------------

    def declare(self, kind: str, tok: _Token):
        key = (kind, tok.value)
        if key in self.spans:
            self.error(f"duplicate {kind} name {tok.value!r}", tok)
        self.spans[key] = (tok.line, tok.column)

    def parse(self) -> RiskModel:
        while True:
            tok = self.peek()
            if tok.type == "EOF":
                break
            if tok.type != "KEYWORD":
                self.error(f"got {tok.value!r}", tok,
                           expected=("actor", "goal", "feature", "event", "situation"))
            if tok.value == "actor":
                self.parse_actor()
            elif tok.value == "goal":
                self.parse_goal()
            elif tok.value == "feature":
                self.parse_feature()
            elif tok.value == "event":
                self.parse_event()
            elif tok.value == "situation":
                self.parse_situation()
            else:
                self.error(f"got {tok.value!r}", tok,
                           expected=("actor", "goal", "feature", "event", "situation"))
        if not self.spans:
            self.error("empty model", self.peek(),
                       expected=("actor", "goal", "feature", "event", "situation"))
        return RiskModel(
            actors=tuple(self.actors), goals=tuple(self.goals),
            features=tuple(self.features), events=tuple(self.events),
            situations=tuple(self.situations), indicators=tuple(self.indicators),
            spans=self.spans,
        )

    def parse_actor(self):
        self.advance()
        name = self.expect_name("an actor name")
        self.declare("actor", name)
        self.actors.append(Actor(name.value))

    def parse_goal(self):
        self.advance()
        name = self.expect_name("a goal name")
        self.declare("goal", name)
        self.expect_keyword("owner")
        owner = self.expect_name("an actor name").value
        text = self.expect_string()
        self.goals.append(Goal(name.value, owner, text))

    def parse_feature(self):
        self.advance()
        name = self.expect_name("a feature name")
        self.declare("feature", name)
        kind_tok = self.expect_keyword("continuous", "integer", "categorical")
        if kind_tok.value == "categorical":
            self.expect_punct("{")
            values = self.name_list("a category")
            self.expect_punct("}")
            self.expect_keyword("binds")
            binding = self.parse_path()
            self.features.append(DomainFeature(
                name.value, CATEGORICAL, values=values, binding=binding))
            return
        kind = CONTINUOUS if kind_tok.value == "continuous" else INTEGER
        self.expect_punct("[")
        if kind == INTEGER:
            lo: float | int = self.expect_integer("integer feature bound")
        else:
            lo, _ = self.expect_number()
        self.expect_punct(",")
        if kind == INTEGER:
            hi: float | int = self.expect_integer("integer feature bound")
        else:
            hi, _ = self.expect_number()
        self.expect_punct("]")
        units = self.expect_name("a units word").value
        self.expect_keyword("binds")
        binding = self.parse_path()
        self.features.append(DomainFeature(
            name.value, kind, lo=lo, hi=hi, units=units, binding=binding))

    def parse_path(self) -> str:
        parts = [self.expect_name("a scenario path").value]
        while self.peek().type == "PUNCT" and self.peek().value == ".":
            self.advance()
            parts.append(self.expect_name("a scenario path").value)
        return ".".join(parts)

    def parse_event(self):
        self.advance()
        name = self.expect_name("an event name")
        self.declare("event", name)
        polarity_tok = self.expect_keyword("positive", "negative")
        polarity = POSITIVE if polarity_tok.value == "positive" else NEGATIVE
        self.expect_keyword("when")
        metric = self.expect_name("a metric name").value
        op_tok = self.peek()
        if op_tok.type == "PUNCT" and op_tok.value in "<>":
            self.advance()
        else:
            self.error(f"got {op_tok.value!r}" if op_tok.value else "got end of input",
                       op_tok, expected=("<", ">"))
        threshold, _ = self.expect_number()
        self.expect_keyword("impacts")
        impacts = [self.parse_impact()]
        while self.peek().type == "PUNCT" and self.peek().value == ",":
            self.advance()
            impacts.append(self.parse_impact())
        likelihood = None
        if self.peek().type == "KEYWORD" and self.peek().value == "likelihood":
            self.advance()
            fraction, frac_tok = self.expect_number()
            self.expect_keyword("of")
            samples = self.expect_integer("likelihood sample count")
            likelihood = Likelihood(fraction, samples)
        self.events.append(Event(
            name.value, polarity, Condition(metric, op_tok.value, threshold),
            impacts=tuple(impacts), likelihood=likelihood))

    def parse_impact(self) -> tuple[str, str]:
        tok = self.peek()
        if tok.type == "PUNCT" and tok.value in "+-":
            self.advance()
        else:
            self.error(f"got {tok.value!r}" if tok.value else "got end of input",
                       tok, expected=("+", "-"))
        goal = self.expect_name("a goal name").value
        return (tok.value, goal)

    def parse_situation(self):
        self.advance()
        name = self.expect_name("a situation name")
        self.declare("situation", name)
        description = self.expect_string()
        self.expect_keyword("scenario")
        scenario_ref = self.expect_string()
        self.expect_keyword("exposes")
        exposes = self.name_list("an event name")
        self.expect_keyword("features")
        features = self.name_list("a feature name")
        indicator_names: list[str] = []
        if self.peek().type == "KEYWORD" and self.peek().value == "indicators":
            self.advance()
            while True:
                ind_name = self.expect_name("an indicator name")
                self.declare("indicator", ind_name)
                self.expect_punct(":")
                metric = self.expect_name("a metric name").value
                self.indicators.append(Indicator(ind_name.value, name.value, metric))
                indicator_names.append(ind_name.value)
                if self.peek().type == "PUNCT" and self.peek().value == ",":
                    self.advance()
                    continue
                break
        self.situations.append(Situation(
            name.value, description, scenario_ref,
            exposes=exposes, features=features, indicators=tuple(indicator_names)))


def parse_risk_model(text: str) -> RiskModel:
    """Parse .riskml source into a RiskModel.

    Raises RiskmlSyntaxError with line/column and expected-token info on
    malformed input or duplicate names. Run validate() afterwards for
    reference resolution and domain checks.
    """
    return _Parser(_tokenize(text)).parse()
