"""The line-oriented scenario format: parsing with positioned diagnostics, and instance building.

A scenario is a handful of lines, each starting with a keyword::

    # comments run to the end of the line
    ring triangular 2 (gf 2)
    derivation inner e12
    command maxideals dmax=2

Ring expressions: ``zmod N``, ``gf Q`` or ``gf P K [modulus]``, ``matrix N R``,
``triangular N R``, ``product R R``, ``quotient R [gens]``, ``polymod R [coeffs]``,
``table add [[..]] mul [[..]]``; nested rings may be parenthesised. Derivations:
``zero``, ``inner ELEM``, ``table (a -> b, ...)``. Several indeterminates use
``vars M``, ``derivation xK <derivation>`` per letter, and ``corner 1,2``.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Any

from .config import DEFAULT_BOUNDS, Bounds
from .derivation import Derivation, derivation_from_pairs, inner_derivation, zero_derivation
from .errors import BoundExceeded, DiffPolyError, InvariantError
from .rings import FiniteRing, make_ring

COMMANDS = ("analyze", "radical", "maxideals", "verify", "multivar", "decompose")
KEYWORDS = ("ring", "derivation", "command", "bounds", "vars", "corner", "generators")
RING_KINDS = ("zmod", "gf", "matrix", "triangular", "product", "quotient", "polymod", "table")
DERIV_KINDS = ("zero", "inner", "table")
OPTION_KEYS = ("dmax", "order_cap", "degree", "literal")


class ScenarioError(DiffPolyError):
    """Input error in a scenario: syntax (with position) or semantics."""


class ParseError(ScenarioError):
    def __init__(self, line: int, col: int, expected, found: str):
        self.line, self.col, self.found = line, col, found
        self.expected = tuple(sorted(expected))
        super().__init__(
            f"line {line}, column {col}: expected {' | '.join(self.expected)}, found {found}"
        )


class SemanticError(ScenarioError):
    pass


@dataclass(frozen=True)
class DerivSpec:
    kind: str  # zero | inner | table
    element: str | None = None
    pairs: tuple[tuple[str, str], ...] = ()

    def text(self) -> str:
        if self.kind == "inner":
            return f"inner {self.element}"
        if self.kind == "table":
            return "table (" + ", ".join(f"{a} -> {b}" for a, b in self.pairs) + ")"
        return "zero"


@dataclass(frozen=True)
class ScenarioSpec:
    ring: tuple
    derivation: DerivSpec = DerivSpec("zero")
    command: str = "analyze"
    options: tuple[tuple[str, Any], ...] = ()
    vars: int = 1
    var_derivations: tuple[tuple[int, DerivSpec], ...] = ()
    corner: tuple[int, ...] | None = None
    generators: tuple[tuple[str, ...], ...] = ()

    def option(self, key: str, default=None):
        return dict(self.options).get(key, default)

    def derivation_for(self, k: int) -> DerivSpec:
        """Derivation for letter k (numbered from 1)."""
        table = dict(self.var_derivations)
        if k in table:
            return table[k]
        return self.derivation if k == 1 else DerivSpec("zero")


# ---------------------------------------------------------------------------
# lexing


@dataclass(frozen=True)
class Token:
    kind: str  # WORD INT ARROW ( ) [ ] , ; = EOL
    text: str
    line: int
    col: int
    start: int
    end: int


_PUNCT = set("()[],;=")
_WORD = re.compile(r"(?:[A-Za-z0-9_+*^@.']|-(?!>))+")


def _lex_line(text: str, line: int) -> list[Token]:
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "#":
            break
        if ch.isspace():
            i += 1
            continue
        if text.startswith("->", i):
            tokens.append(Token("ARROW", "->", line, i + 1, i, i + 2))
            i += 2
            continue
        if ch in _PUNCT:
            tokens.append(Token(ch, ch, line, i + 1, i, i + 1))
            i += 1
            continue
        m = _WORD.match(text, i)
        if not m:
            raise ParseError(line, i + 1, {"token"}, repr(ch))
        word = m.group()
        kind = "INT" if word.isdigit() else "WORD"
        tokens.append(Token(kind, word, line, i + 1, i, m.end()))
        i = m.end()
    tokens.append(Token("EOL", "", line, len(text) + 1, len(text), len(text)))
    return tokens


def _describe(tok: Token) -> str:
    return "end of line" if tok.kind == "EOL" else repr(tok.text)


class _Line:
    def __init__(self, text: str, line: int):
        self.text = text
        self.tokens = _lex_line(text, line)
        self.pos = 0

    @property
    def peek(self) -> Token:
        return self.tokens[self.pos]

    def fail(self, expected) -> ParseError:
        tok = self.peek
        return ParseError(tok.line, tok.col, expected, _describe(tok))

    def take(self, kind: str, expected=None) -> Token:
        tok = self.peek
        if tok.kind != kind:
            raise self.fail(expected or {kind})
        self.pos += 1
        return tok

    def accept(self, kind: str) -> Token | None:
        if self.peek.kind == kind:
            self.pos += 1
            return self.tokens[self.pos - 1]
        return None

    def int(self, name: str = "INT") -> int:
        return int(self.take("INT", {name}).text)

    def word(self, choices) -> str:
        tok = self.peek
        if tok.kind in ("WORD", "INT") and tok.text in choices:
            self.pos += 1
            return tok.text
        raise self.fail(set(choices))

    def end(self) -> None:
        self.take("EOL", {"end of line"})

    def element(self) -> str:
        """An element reference: a word, or a balanced bracket group such as [1,0;0,1] or (1,2)."""
        tok = self.peek
        if tok.kind in ("WORD", "INT"):
            self.pos += 1
            return tok.text
        if tok.kind in ("(", "["):
            start = tok.start
            end = self._balanced()
            return re.sub(r"\s+", "", self.text[start:end])
        raise self.fail({"ELEM"})

    def _balanced(self) -> int:
        closing = {"(": ")", "[": "]"}
        stack = []
        while True:
            tok = self.peek
            if tok.kind == "EOL":
                raise self.fail({closing[stack[-1]]} if stack else {"ELEM"})
            self.pos += 1
            if tok.kind in closing:
                stack.append(tok.kind)
            elif tok.kind in (")", "]"):
                if not stack or closing[stack[-1]] != tok.kind:
                    self.pos -= 1
                    raise self.fail({closing[stack[-1]]} if stack else {"ELEM"})
                stack.pop()
                if not stack:
                    return tok.end

    def element_list(self) -> tuple[str, ...]:
        self.take("[", {"["})
        items = []
        if self.accept("]"):
            return ()
        while True:
            items.append(self.element())
            if self.accept("]"):
                return tuple(items)
            self.take(",", {",", "]"})

    def int_list(self) -> tuple[int, ...]:
        self.take("[", {"["})
        items = []
        while True:
            items.append(self.int())
            if self.accept("]"):
                return tuple(items)
            self.take(",", {",", "]"})

    def json_group(self) -> Any:
        tok = self.peek
        if tok.kind != "[":
            raise self.fail({"["})
        start = tok.start
        end = self._balanced()
        try:
            return _freeze(json.loads(self.text[start:end]))
        except json.JSONDecodeError as exc:
            raise ParseError(tok.line, tok.col + exc.pos, {"JSON table"}, repr(self.text[start:end])) from None

    # grammar

    def ring(self) -> tuple:
        if self.accept("("):
            r = self.ring()
            self.take(")", {")"})
            return r
        kind = self.word(RING_KINDS)
        if kind == "zmod":
            return ("zmod", self.int())
        if kind == "gf":
            p = self.int()
            if self.peek.kind != "INT":
                return ("gf", p)
            k = self.int()
            if self.peek.kind == "[":
                return ("gf", p, k, self.int_list())
            return ("gf", p, k)
        if kind in ("matrix", "triangular"):
            return (kind, self.int(), self.ring())
        if kind == "product":
            return ("product", self.ring(), self.ring())
        if kind in ("quotient", "polymod"):
            return (kind, self.ring(), self.element_list())
        # table add [[...]] mul [[...]]
        self.word(("add",))
        add = self.json_group()
        self.word(("mul",))
        mul = self.json_group()
        return ("table", add, mul)

    def derivation(self) -> DerivSpec:
        kind = self.word(DERIV_KINDS)
        if kind == "zero":
            return DerivSpec("zero")
        if kind == "inner":
            return DerivSpec("inner", self.element())
        self.take("(", {"("})
        pairs = []
        if not self.accept(")"):
            while True:
                a = self.element()
                self.take("ARROW", {"->"})
                pairs.append((a, self.element()))
                if self.accept(")"):
                    break
                self.take(",", {",", ")"})
        return DerivSpec("table", pairs=tuple(pairs))

    def options(self) -> list[tuple[str, Any]]:
        out = []
        while self.peek.kind != "EOL":
            key = self.word(OPTION_KEYS + ("order-cap",)).replace("-", "_")
            self.take("=", {"="})
            tok = self.peek
            if key == "literal":
                out.append((key, self.word(("true", "false")) == "true"))
            else:
                v = self.int()
                if v < 0 or (key == "order_cap" and v == 0):
                    raise ParseError(tok.line, tok.col, {"positive INT"}, repr(tok.text))
                out.append((key, v))
        return out


def _freeze(v):
    return tuple(_freeze(x) for x in v) if isinstance(v, list) else v


def parse_spec(text: str) -> ScenarioSpec:
    """Parse a scenario document; raises ParseError with line, column and expected tokens."""
    ring = None
    derivation = None
    command = None
    options: dict[str, Any] = {}
    nvars = None
    per_var: dict[int, DerivSpec] = {}
    corner = None
    generators: list[tuple[str, ...]] = []
    last_line = 1
    for n, raw in enumerate(text.split("\n"), start=1):
        last_line = n
        ln = _Line(raw.removesuffix("\r"), n)
        if ln.peek.kind == "EOL":
            continue
        head = ln.peek
        key = ln.word(KEYWORDS)

        def once(value):
            if value is not None:
                raise ParseError(n, head.col, {k for k in KEYWORDS if k != key}, f"second '{key}' line")

        if key == "ring":
            once(ring)
            ring = ln.ring()
        elif key == "derivation":
            tok = ln.peek
            m = re.fullmatch(r"x(\d+)", tok.text) if tok.kind == "WORD" else None
            if m:
                ln.pos += 1
                k = int(m.group(1))
                if k < 1 or k in per_var:
                    raise ParseError(n, tok.col, {"new variable x1, x2, ..."}, repr(tok.text))
                per_var[k] = ln.derivation()
            else:
                once(derivation)
                try:
                    derivation = ln.derivation()
                except ParseError as exc:
                    if ln.peek is tok:
                        raise ParseError(n, tok.col, set(DERIV_KINDS) | {"xK"}, exc.found) from None
                    raise
        elif key == "command":
            once(command)
            command = ln.word(COMMANDS)
            options.update(ln.options())
        elif key == "bounds":
            options.update(ln.options())
        elif key == "vars":
            once(nvars)
            tok = ln.peek
            nvars = ln.int()
            if nvars < 1:
                raise ParseError(n, tok.col, {"positive INT"}, repr(tok.text))
        elif key == "corner":
            once(corner)
            items = [ln.int()]
            while ln.accept(","):
                items.append(ln.int())
            corner = tuple(items)
        elif key == "generators":
            while ln.peek.kind == "[":
                generators.append(ln.element_list())
            if not generators:
                raise ln.fail({"["})
        ln.end()
    if ring is None:
        raise ParseError(last_line + 1, 1, {"ring"}, "end of input")
    if command is None:
        raise ParseError(last_line + 1, 1, {"command"}, "end of input")
    if derivation is not None and 1 in per_var:
        raise SemanticError("letter x1 has two derivations")
    m = nvars or max(per_var, default=1)
    if any(k > m for k in per_var):
        raise SemanticError(f"derivation given for x{max(per_var)} but vars is {m}")
    if corner is not None and any(not 1 <= k <= m for k in corner):
        raise SemanticError(f"corner letters {list(corner)} must lie in 1..{m}")
    return ScenarioSpec(
        ring=ring,
        derivation=derivation or DerivSpec("zero"),
        command=command,
        options=tuple(sorted(options.items())),
        vars=m,
        var_derivations=tuple(sorted(per_var.items())),
        corner=corner,
        generators=tuple(generators),
    )


# ---------------------------------------------------------------------------
# rendering and building


def ring_text(desc) -> str:
    kind, *args = desc

    def sub(r):
        return f"({ring_text(r)})"

    if kind == "zmod":
        return f"zmod {args[0]}"
    if kind == "gf":
        text = " ".join(str(a) for a in args[:2])
        if len(args) > 2:
            text += " [" + ", ".join(str(c) for c in args[2]) + "]"
        return f"gf {text}"
    if kind in ("matrix", "triangular"):
        return f"{kind} {args[0]} {sub(args[1])}"
    if kind == "product":
        return f"product {sub(args[0])} {sub(args[1])}"
    if kind in ("quotient", "polymod"):
        return f"{kind} {sub(args[0])} [{', '.join(args[1])}]"
    return f"table add {json.dumps(args[0])} mul {json.dumps(args[1])}"


def spec_text(spec: ScenarioSpec) -> str:
    """Canonical scenario text; parse_spec(spec_text(s)) == s."""
    lines = [f"ring {ring_text(spec.ring)}"]
    if spec.vars > 1 or spec.var_derivations:
        lines.append(f"vars {spec.vars}")
    if spec.derivation != DerivSpec("zero") or not spec.var_derivations:
        lines.append(f"derivation {spec.derivation.text()}")
    lines += [f"derivation x{k} {d.text()}" for k, d in spec.var_derivations]
    if spec.corner is not None:
        lines.append("corner " + ",".join(str(k) for k in spec.corner))
    if spec.generators:
        lines.append("generators " + " ".join("[" + ", ".join(g) + "]" for g in spec.generators))
    opts = " ".join(f"{k}={str(v).lower() if isinstance(v, bool) else v}" for k, v in spec.options)
    lines.append(f"command {spec.command}" + (f" {opts}" if opts else ""))
    return "\n".join(lines) + "\n"


def build_ring(spec: ScenarioSpec, bounds: Bounds = DEFAULT_BOUNDS) -> FiniteRing:
    try:
        return make_ring(spec.ring, bounds)
    except (BoundExceeded, InvariantError):
        raise
    except DiffPolyError as exc:
        raise SemanticError(f"ring {ring_text(spec.ring)}: {exc}") from exc
    except (TypeError, ValueError, IndexError) as exc:
        raise SemanticError(f"ring {ring_text(spec.ring)}: {exc}") from exc


def build_derivation(R: FiniteRing, d: DerivSpec) -> Derivation:
    try:
        if d.kind == "zero":
            return zero_derivation(R)
        if d.kind == "inner":
            return inner_derivation(R, R.element(d.element))
        pairs = [(R.element(a), R.element(b)) for a, b in d.pairs]
        return derivation_from_pairs(R, pairs, d.text())
    except InvariantError:
        raise
    except DiffPolyError as exc:
        raise SemanticError(f"derivation {d.text()}: {exc}") from exc


def effective_bounds(spec: ScenarioSpec, dmax: int | None = None, order_cap: int | None = None,
                     base: Bounds = DEFAULT_BOUNDS) -> tuple[Bounds, int]:
    """Bounds and degree bound for a run; explicit arguments override the scenario's options."""
    cap = order_cap if order_cap is not None else spec.option("order_cap", base.order_cap)
    degree = dmax if dmax is not None else spec.option("dmax", base.dmax)
    return base.with_(order_cap=cap), degree
