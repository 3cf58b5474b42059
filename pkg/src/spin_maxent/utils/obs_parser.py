"""Text grammar for observables and level files.

    expr   := "id" | factor ("*" factor)*
    factor := ("sx" | "sy" | "sz") "(" site ")"

Sites are 1-based and may appear at most once; unmentioned sites are the identity.
Operator names are case-insensitive and whitespace is ignored between tokens. Error
positions are byte offsets into the UTF-8 source.
"""

import logging
import re
from typing import List, NamedTuple, Optional, Tuple

from spin_maxent.exceptions import (
    DuplicateObservable,
    DuplicateSite,
    ObservableSyntaxError,
    SiteOutOfRange,
)
from spin_maxent.models.levels import ObservationLevel
from spin_maxent.models.pauli import ObservableExpr, PauliString, pauli

logger = logging.getLogger(__name__)

IDENTITY_TEXT = "id"

_OPERATORS = {"sx": "X", "sy": "Y", "sz": "Z"}
_TOKEN_RE = re.compile(r"\s*(?:(?P<name>[A-Za-z]+)|(?P<int>\d+)|(?P<punct>[()*]))")
_DIRECTIVE_RE = re.compile(r"^\s*n\s*=\s*(\d+)\s*$", re.IGNORECASE)


class Token(NamedTuple):
    kind: str  # name, int, (, ), *, end
    text: str
    position: int


def _byte_offset(source: str, index: int) -> int:
    return len(source[:index].encode("utf-8"))


def tokenize(source: str) -> List[Token]:
    tokens = []
    index = 0
    while True:
        while index < len(source) and source[index].isspace():
            index += 1
        if index >= len(source):
            tokens.append(Token("end", "", _byte_offset(source, index)))
            return tokens
        match = _TOKEN_RE.match(source, index)
        if match is None:
            raise ObservableSyntaxError(
                f"Unexpected character {source[index]!r}", _byte_offset(source, index), source
            )
        kind = match.lastgroup
        text = match.group(kind)
        start = match.start(kind)
        tokens.append(Token(text if kind == "punct" else kind, text, _byte_offset(source, start)))
        index = match.end()


class Parser:
    """Recursive-descent parser producing (axis, site) factors."""

    def __init__(self, source: str):
        self._source = source
        self._tokens = tokenize(source)
        self._index = 0

    @property
    def token(self) -> Token:
        return self._tokens[self._index]

    def advance(self) -> Token:
        token = self.token
        if token.kind != "end":
            self._index += 1
        return token

    def expect(self, kind: str, what: str) -> Token:
        if self.token.kind != kind:
            found = self.token.text or "end of input"
            raise ObservableSyntaxError(
                f"Expected {what}, found {found!r}", self.token.position, self._source
            )
        return self.advance()

    def parse(self) -> Optional[List[Tuple[str, int, int]]]:
        """Factors as (axis, site, position); None for the identity."""
        if self.token.kind == "name" and self.token.text.lower() == IDENTITY_TEXT:
            self.advance()
            self.expect("end", "end of input")
            return None
        factors = [self.factor()]
        while self.token.kind == "*":
            self.advance()
            factors.append(self.factor())
        self.expect("end", "'*' or end of input")
        return factors

    def factor(self) -> Tuple[str, int, int]:
        name = self.expect("name", "sx, sy or sz")
        axis = _OPERATORS.get(name.text.lower())
        if axis is None:
            raise ObservableSyntaxError(
                f"Unknown operator {name.text!r}", name.position, self._source
            )
        self.expect("(", "'('")
        site = self.expect("int", "site index")
        self.expect(")", "')'")
        logger.debug(f"factor {axis} at site {site.text}")
        return axis, int(site.text), site.position


def _assemble(factors, n: int, source: str) -> PauliString:
    axes = ["I"] * n
    seen = set()
    for axis, site, position in factors or ():
        if not 1 <= site <= n:
            raise SiteOutOfRange(f"Site {site} at position {position} is outside 1..{n}")
        if site in seen:
            raise DuplicateSite(f"Site {site} appears more than once in {source!r}")
        seen.add(site)
        axes[site - 1] = axis
    return PauliString(factors="".join(axes))


def parse_observable(text: str, n: int) -> PauliString:
    """Parse an expression such as 'sx(1)*sy(2)' into a string on n spins.

    Raises:
        ObservableSyntaxError: text does not match the grammar
        SiteOutOfRange: site outside 1..n
        DuplicateSite: site used twice
    """
    if n < 1:
        raise ValueError(f"Spin count must be >= 1, got {n}")
    return _assemble(Parser(text).parse(), n, text)


def parse_expression(text: str, n: int) -> ObservableExpr:
    return ObservableExpr(source=text, parsed=parse_observable(text, n))


def format_observable(s) -> str:
    """Canonical lowercase text, ascending sites, identity sites omitted."""
    s = pauli(s)
    parts = [
        f"s{axis.lower()}({site})" for site, axis in enumerate(s.factors, start=1) if axis != "I"
    ]
    return "*".join(parts) if parts else IDENTITY_TEXT


def parse_level_text(text: str, n: Optional[int] = None, name: str = None) -> ObservationLevel:
    """Parse a level file: one expression per line, '#' comments, optional 'n = <count>'.

    Without a directive or explicit n, the spin count is the largest site mentioned.
    """
    entries = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        directive = _DIRECTIVE_RE.match(line)
        if directive:
            if entries:
                raise ObservableSyntaxError("Spin-count directive must come first", 0, raw)
            declared = int(directive.group(1))
            if n is not None and n != declared:
                raise ValueError(f"Level file declares n = {declared}, expected {n}")
            n = declared
            continue
        entries.append((lineno, line, Parser(line).parse()))

    if n is None:
        sites = [site for _, _, factors in entries for _, site, _ in factors or ()]
        if not sites:
            raise ValueError("Cannot infer the spin count of an empty level file")
        n = max(sites)

    observables = []
    for lineno, line, factors in entries:
        s = _assemble(factors, n, line)
        if s.is_identity:
            raise ObservableSyntaxError(f"Line {lineno}: the identity is not an observable", 0, line)
        if s in observables:
            raise DuplicateObservable(f"Line {lineno}: {format_observable(s)} is listed twice")
        observables.append(s)
    logger.debug(f"Parsed {len(observables)} observables on {n} spins")
    return ObservationLevel(name=name, n=n, observables=observables)
