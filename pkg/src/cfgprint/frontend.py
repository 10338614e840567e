"""MiniProc source frontend: tokenize, parse, normalize.

MiniProc is a small imperative language. Plain statements end with `;`:

    declare x, y;
    x = 2 * y + 1;
    call log(x, "tag");
    output x;

Control constructs are keyword-delimited, conditions in parentheses:

    if (x > 0) ... elseif (x < 0) ... else ... endif
    while (x < 10) ... endwhile
    for i = 1 to n ... endfor
    case (x) when (1) ... when (2) ... endcase

Comments run from `#` to end of line. Keywords are case-insensitive.
Identifiers are case-sensitive. Files use the `.mp` extension.

Normalization abstracts away naming and values so that consistently
renamed programs come out byte-identical: identifiers introduced by
`declare` become `L-Var`, every other identifier becomes `G-Var`,
literals become `LIT`. Loop headers render as `Iterate <condition>`,
selection headers (`if`/`elseif`/`case`/`when`) as
`Selection <condition>`, a bare `else` as `Selection`. Construct-end
keywords stay in the statement stream so block boundaries remain
visible downstream.
"""

from __future__ import annotations

from dataclasses import dataclass, field

KEYWORDS = frozenset(
    {
        "if", "elseif", "else", "endif",
        "while", "endwhile",
        "for", "to", "endfor",
        "case", "when", "endcase",
        "declare", "call", "output",
    }
)

# longest first so <= wins over <
_OPERATORS = ("==", "!=", "<=", ">=", "&&", "||", "+", "-", "*", "/", "%", "<", ">", "=", "!")
_PUNCTUATION = frozenset({"(", ")", ",", ";"})

_END_KEYWORDS = frozenset({"endif", "endwhile", "endfor", "endcase"})

PLAIN_KINDS = frozenset({"assign", "declare", "call", "output"})
HEADER_KINDS = frozenset({"if", "elseif", "else", "while", "for", "case", "when"})


class MiniProcSyntaxError(ValueError):
    """Parse failure; carries the 1-based source line."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class Token:
    kind: str  # keyword | identifier | literal | operator | punctuation
    lexeme: str
    line: int


@dataclass(frozen=True)
class Statement:
    """Parsed statement node.

    `tokens` holds the statement payload: all tokens except the trailing
    `;` for plain statements, the parenthesized condition for
    `if`/`elseif`/`while`/`case`/`when`, the `ident = expr to expr` span
    for `for`, the end keyword for end markers. `children` nests bodies;
    an `if` node's children are its then-body followed by any
    `elseif`/`else` nodes and the end marker, a `case` node's children
    are its `when` nodes and the end marker.
    """

    kind: str
    line: int
    end_line: int
    tokens: tuple[Token, ...] = ()
    children: tuple["Statement", ...] = ()

    @property
    def condition_text(self) -> str:
        return " ".join(t.lexeme for t in self.tokens)


@dataclass(frozen=True)
class NormalizedStatement:
    """One abstracted statement with its position in the flat sequence.

    kind: plain | control | control-end
    control_role: none | loop-header | selection-header | selection-alt
                  | construct-end
    condition is the normalized condition text; empty for plain
    statements, end markers, and bare `else`.
    """

    text: str
    kind: str
    control_role: str
    ordinal: int
    condition: str = ""


def tokenize(source: str) -> list[Token]:
    """Split source into tokens. Comments and whitespace vanish.

    Never raises: characters that fit nothing become single-character
    operator tokens and are left for the parser to reject.
    """
    tokens: list[Token] = []
    line = 1
    i = 0
    n = len(source)
    while i < n:
        c = source[i]
        if c == "\n":
            line += 1
            i += 1
            continue
        if c in " \t\r":
            i += 1
            continue
        if c == "#":
            while i < n and source[i] != "\n":
                i += 1
            continue
        if c == '"':
            j = i + 1
            while j < n and source[j] not in '"\n':
                j += 1
            if j < n and source[j] == '"':
                tokens.append(Token("literal", source[i : j + 1], line))
                i = j + 1
                continue
            # unterminated string: emit the quote alone, parser rejects it
            tokens.append(Token("operator", c, line))
            i += 1
            continue
        if c.isdigit():
            j = i + 1
            while j < n and source[j].isdigit():
                j += 1
            if j < n - 1 and source[j] == "." and source[j + 1].isdigit():
                j += 1
                while j < n and source[j].isdigit():
                    j += 1
            tokens.append(Token("literal", source[i:j], line))
            i = j
            continue
        if c.isalpha() or c == "_":
            j = i + 1
            while j < n and (source[j].isalnum() or source[j] == "_"):
                j += 1
            word = source[i:j]
            if word.lower() in KEYWORDS:
                tokens.append(Token("keyword", word.lower(), line))
            else:
                tokens.append(Token("identifier", word, line))
            i = j
            continue
        if c in _PUNCTUATION:
            tokens.append(Token("punctuation", c, line))
            i += 1
            continue
        for op in _OPERATORS:
            if source.startswith(op, i):
                tokens.append(Token("operator", op, line))
                i += len(op)
                break
        else:
            tokens.append(Token("operator", c, line))
            i += 1
    return tokens


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0

    # -- token plumbing ------------------------------------------------

    def _peek(self) -> Token | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def _take(self) -> Token:
        tok = self._peek()
        if tok is None:
            last = self.tokens[-1].line if self.tokens else 1
            raise MiniProcSyntaxError("unexpected end of input", last)
        self.pos += 1
        return tok

    def _expect(self, kind: str, lexeme: str) -> Token:
        tok = self._peek()
        if tok is None or tok.kind != kind or tok.lexeme != lexeme:
            got = repr(tok.lexeme) if tok else "end of input"
            line = tok.line if tok else (self.tokens[-1].line if self.tokens else 1)
            raise MiniProcSyntaxError(f"expected {lexeme!r}, got {got}", line)
        self.pos += 1
        return tok

    def _at_keyword(self, *names: str) -> bool:
        tok = self._peek()
        return tok is not None and tok.kind == "keyword" and tok.lexeme in names

    # -- expressions ---------------------------------------------------
    # expr := unary (binop unary)* ; only shape is checked, no precedence
    # tree is needed because normalization works on the token stream.

    _BINOPS = frozenset({"+", "-", "*", "/", "%", "<", ">", "<=", ">=", "==", "!=", "&&", "||"})

    def _expression(self) -> list[Token]:
        out = self._unary()
        while True:
            tok = self._peek()
            if tok is not None and tok.kind == "operator" and tok.lexeme in self._BINOPS:
                out.append(self._take())
                out.extend(self._unary())
            else:
                return out

    def _unary(self) -> list[Token]:
        tok = self._peek()
        if tok is not None and tok.kind == "operator" and tok.lexeme in ("!", "-"):
            return [self._take()] + self._unary()
        return self._primary()

    def _primary(self) -> list[Token]:
        tok = self._peek()
        if tok is None:
            raise MiniProcSyntaxError("expected expression, got end of input",
                                      self.tokens[-1].line if self.tokens else 1)
        if tok.kind in ("identifier", "literal"):
            return [self._take()]
        if tok.kind == "punctuation" and tok.lexeme == "(":
            out = [self._take()]
            out.extend(self._expression())
            out.append(self._expect("punctuation", ")"))
            return out
        raise MiniProcSyntaxError(f"expected expression, got {tok.lexeme!r}", tok.line)

    def _paren_condition(self) -> list[Token]:
        open_tok = self._expect("punctuation", "(")
        inner = self._expression()
        close_tok = self._expect("punctuation", ")")
        return [open_tok, *inner, close_tok]

    # -- statements ----------------------------------------------------

    def parse_program(self) -> Statement:
        children = self._statements(stop=frozenset())
        tok = self._peek()
        if tok is not None:
            raise MiniProcSyntaxError(f"unexpected {tok.lexeme!r}", tok.line)
        if not children:
            raise MiniProcSyntaxError("empty program", 1)
        last = children[-1]
        return Statement("program", children[0].line, last.end_line, (), tuple(children))

    def _statements(self, stop: frozenset[str]) -> list[Statement]:
        out: list[Statement] = []
        while True:
            tok = self._peek()
            if tok is None:
                return out
            if tok.kind == "keyword" and tok.lexeme in stop:
                return out
            if tok.kind == "keyword" and (tok.lexeme in _END_KEYWORDS or
                                          tok.lexeme in ("elseif", "else", "when", "to")):
                if stop:
                    # belongs to an enclosing construct the caller handles
                    return out
                raise MiniProcSyntaxError(f"unexpected {tok.lexeme!r}", tok.line)
            out.append(self._statement())

    def _statement(self) -> Statement:
        tok = self._peek()
        assert tok is not None
        if tok.kind == "keyword":
            handler = {
                "declare": self._declare,
                "call": self._call,
                "output": self._output,
                "if": self._if,
                "while": self._while,
                "for": self._for,
                "case": self._case,
            }.get(tok.lexeme)
            if handler is None:
                raise MiniProcSyntaxError(f"unexpected {tok.lexeme!r}", tok.line)
            return handler()
        if tok.kind == "identifier":
            return self._assign()
        raise MiniProcSyntaxError(f"unexpected {tok.lexeme!r}", tok.line)

    def _semicolon(self) -> Token:
        return self._expect("punctuation", ";")

    def _ident(self) -> Token:
        tok = self._peek()
        if tok is None or tok.kind != "identifier":
            got = repr(tok.lexeme) if tok else "end of input"
            line = tok.line if tok else (self.tokens[-1].line if self.tokens else 1)
            raise MiniProcSyntaxError(f"expected identifier, got {got}", line)
        self.pos += 1
        return tok

    def _declare(self) -> Statement:
        kw = self._take()
        toks = [kw, self._ident()]
        while self._peek() is not None and self._peek().lexeme == ",":
            toks.append(self._take())
            toks.append(self._ident())
        end = self._semicolon()
        return Statement("declare", kw.line, end.line, tuple(toks))

    def _assign(self) -> Statement:
        name = self._ident()
        eq = self._peek()
        if eq is None or eq.lexeme != "=":
            got = repr(eq.lexeme) if eq else "end of input"
            raise MiniProcSyntaxError(f"expected '=', got {got}", name.line)
        toks = [name, self._take()]
        toks.extend(self._expression())
        end = self._semicolon()
        return Statement("assign", name.line, end.line, tuple(toks))

    def _call(self) -> Statement:
        kw = self._take()
        toks = [kw, self._ident(), self._expect("punctuation", "(")]
        if not (self._peek() is not None and self._peek().lexeme == ")"):
            toks.extend(self._expression())
            while self._peek() is not None and self._peek().lexeme == ",":
                toks.append(self._take())
                toks.extend(self._expression())
        toks.append(self._expect("punctuation", ")"))
        end = self._semicolon()
        return Statement("call", kw.line, end.line, tuple(toks))

    def _output(self) -> Statement:
        kw = self._take()
        toks = [kw]
        toks.extend(self._expression())
        end = self._semicolon()
        return Statement("output", kw.line, end.line, tuple(toks))

    def _end_marker(self, keyword: str, open_kind: str, open_line: int) -> Statement:
        tok = self._peek()
        if tok is None or tok.kind != "keyword" or tok.lexeme != keyword:
            raise MiniProcSyntaxError(
                f"{open_kind!r} opened here is never closed (expected {keyword!r})",
                open_line,
            )
        self.pos += 1
        return Statement("end-marker", tok.line, tok.line, (tok,))

    def _if(self) -> Statement:
        kw = self._take()
        cond = self._paren_condition()
        children: list[Statement] = list(self._statements(stop=frozenset({"elseif", "else", "endif"})))
        while self._at_keyword("elseif"):
            alt_kw = self._take()
            alt_cond = self._paren_condition()
            body = self._statements(stop=frozenset({"elseif", "else", "endif"}))
            last_line = body[-1].end_line if body else alt_kw.line
            children.append(Statement("elseif", alt_kw.line, last_line, tuple(alt_cond), tuple(body)))
        if self._at_keyword("else"):
            else_kw = self._take()
            body = self._statements(stop=frozenset({"endif"}))
            last_line = body[-1].end_line if body else else_kw.line
            children.append(Statement("else", else_kw.line, last_line, (), tuple(body)))
        end = self._end_marker("endif", "if", kw.line)
        children.append(end)
        return Statement("if", kw.line, end.end_line, tuple(cond), tuple(children))

    def _while(self) -> Statement:
        kw = self._take()
        cond = self._paren_condition()
        children = list(self._statements(stop=frozenset({"endwhile"})))
        end = self._end_marker("endwhile", "while", kw.line)
        children.append(end)
        return Statement("while", kw.line, end.end_line, tuple(cond), tuple(children))

    def _for(self) -> Statement:
        kw = self._take()
        toks = [self._ident()]
        eq = self._peek()
        if eq is None or eq.lexeme != "=":
            got = repr(eq.lexeme) if eq else "end of input"
            raise MiniProcSyntaxError(f"expected '=', got {got}", kw.line)
        toks.append(self._take())
        toks.extend(self._expression())
        to = self._peek()
        if to is None or to.kind != "keyword" or to.lexeme != "to":
            got = repr(to.lexeme) if to else "end of input"
            raise MiniProcSyntaxError(f"expected 'to', got {got}", kw.line)
        toks.append(self._take())
        toks.extend(self._expression())
        children = list(self._statements(stop=frozenset({"endfor"})))
        end = self._end_marker("endfor", "for", kw.line)
        children.append(end)
        return Statement("for", kw.line, end.end_line, tuple(toks), tuple(children))

    def _case(self) -> Statement:
        kw = self._take()
        cond = self._paren_condition()
        children: list[Statement] = []
        while self._at_keyword("when"):
            when_kw = self._take()
            when_cond = self._paren_condition()
            body = self._statements(stop=frozenset({"when", "endcase"}))
            last_line = body[-1].end_line if body else when_kw.line
            children.append(Statement("when", when_kw.line, last_line, tuple(when_cond), tuple(body)))
        tok = self._peek()
        if tok is not None and not (tok.kind == "keyword" and tok.lexeme == "endcase"):
            raise MiniProcSyntaxError(
                f"expected 'when' or 'endcase', got {tok.lexeme!r}", tok.line
            )
        end = self._end_marker("endcase", "case", kw.line)
        children.append(end)
        return Statement("case", kw.line, end.end_line, tuple(cond), tuple(children))


def parse(tokens: list[Token]) -> Statement:
    """Parse a token stream into a program tree.

    Raises MiniProcSyntaxError (with a line number) on malformed
    statements, unbalanced constructs, or an empty program.
    """
    return _Parser(tokens).parse_program()


def _declared_names(program: Statement) -> frozenset[str]:
    names: set[str] = set()

    def walk(node: Statement) -> None:
        if node.kind == "declare":
            names.update(t.lexeme for t in node.tokens if t.kind == "identifier")
        for child in node.children:
            walk(child)

    walk(program)
    return frozenset(names)


def _abstract(tokens: tuple[Token, ...], local_names: frozenset[str]) -> str:
    parts = []
    for tok in tokens:
        if tok.kind == "identifier":
            parts.append("L-Var" if tok.lexeme in local_names else "G-Var")
        elif tok.kind == "literal":
            parts.append("LIT")
        else:
            parts.append(tok.lexeme)
    return " ".join(parts)


def normalize(program: Statement) -> list[NormalizedStatement]:
    """Flatten a program tree into the abstracted statement sequence.

    Local/global classification uses the program-wide set of declared
    names: a name declared anywhere is `L-Var` everywhere. Ordinals are
    contiguous from 0 in source order.
    """
    local_names = _declared_names(program)
    out: list[NormalizedStatement] = []

    def emit(text: str, kind: str, role: str, condition: str = "") -> None:
        out.append(NormalizedStatement(text, kind, role, len(out), condition))

    def visit(node: Statement) -> None:
        if node.kind in PLAIN_KINDS:
            emit(_abstract(node.tokens, local_names), "plain", "none")
            return
        if node.kind in ("while", "for"):
            cond = _abstract(node.tokens, local_names)
            emit(f"Iterate {cond}", "control", "loop-header", cond)
        elif node.kind in ("if", "case"):
            cond = _abstract(node.tokens, local_names)
            emit(f"Selection {cond}", "control", "selection-header", cond)
        elif node.kind in ("elseif", "when"):
            cond = _abstract(node.tokens, local_names)
            emit(f"Selection {cond}", "control", "selection-alt", cond)
        elif node.kind == "else":
            emit("Selection", "control", "selection-alt")
        elif node.kind == "end-marker":
            emit(node.tokens[0].lexeme, "control-end", "construct-end")
            return
        else:
            raise ValueError(f"unexpected node kind {node.kind!r}")
        for child in node.children:
            visit(child)

    for child in program.children:
        visit(child)
    return out


def normalize_source(source: str) -> list[NormalizedStatement]:
    """tokenize + parse + normalize in one step."""
    return normalize(parse(tokenize(source)))
