"""Concrete syntax for signatures and statements.

Signature files are line oriented::

    # comment
    obj  c
    func union/2
    pred disjoint/2
    mode m1_subset_1/2
    attr v1_xboole_0
    elementof m1_subset_1

A ``mode`` arity counts the implicit subject, so ``m1_subset_1/2`` takes
one explicit argument.  ``elementof`` tags a previously declared binary
mode as the one the ``Element of T`` sugar expands to.

Statement files hold one scheme or bare statement::

    scheme Separation { A() -> set, P[set] } :
      ex X being set st for x being set holds (x in X iff x in A() & P[x])

    statement : c = c

Proposition precedence, loosest first: ``iff``, ``implies``, ``or``,
``&``, ``not``; all binary connectives associate to the right, and
quantifiers extend as far right as possible.  Predicate applications may
be written ``name[args]`` or ``name(args)``; attribute and mode
constants double as predicate constants.  ``#`` starts a comment.
"""

from __future__ import annotations

from dataclasses import dataclass

from .mizar import (
    ATTR, FUNC, MODE, OBJ, PRED,
    ArityMismatch, Attr, DuplicateName, ExBeing, ForBeing, Fraenkel,
    FunConstApp, FunDecl, FunVarApp, KindMismatch, MAnd, MEq, MIff, MImp,
    MIn, MNot, MOr, MProp, MStatement, MTerm, MType, Mode, NonAttr,
    ObjConst, ObjDecl, ObjVar, ParseError, PredConstApp, PredDecl,
    PredVarApp, SET, Signature, The, UnknownName, VarDecl,
)

KEYWORDS = frozenset(
    "scheme statement set non the where is for being holds ex st "
    "not or implies iff in Element of".split()
)

_SYMBOLS = ("->", "{", "}", "(", ")", "[", "]", ",", ":", "=", "&")

_MAX_DEPTH = 200


@dataclass(frozen=True)
class Token:
    kind: str  # "name", "kw", "sym", "eof"
    text: str
    line: int
    col: int


def _is_word_char(c: str) -> bool:
    return c.isalnum() or c == "_"


def tokenize(text: str) -> list[Token]:
    toks: list[Token] = []
    i, line, col = 0, 1, 1
    n = len(text)
    while i < n:
        c = text[i]
        if c == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if c in " \t\r":
            i += 1
            col += 1
            continue
        if c == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if c.isalpha() or c == "_":
            j = i
            while j < n and _is_word_char(text[j]):
                j += 1
            word = text[i:j]
            kind = "kw" if word in KEYWORDS else "name"
            toks.append(Token(kind, word, line, col))
            col += j - i
            i = j
            continue
        for sym in _SYMBOLS:
            if text.startswith(sym, i):
                toks.append(Token("sym", sym, line, col))
                i += len(sym)
                col += len(sym)
                break
        else:
            raise ParseError(f"stray character {c!r}", line, col)
    toks.append(Token("eof", "", line, col))
    return toks


def parse_signature(text: str) -> Signature:
    """Parse a signature file.  Duplicate names are errors; ``in`` is
    predeclared and cannot be redeclared."""
    sig = Signature()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        directive = fields[0]
        if len(fields) != 2:
            raise ParseError(
                f"expected '{directive} NAME', got {len(fields) - 1} field(s)",
                lineno, 1)
        spec = fields[1]
        col = raw.index(spec, len(directive)) + 1
        try:
            if directive in ("obj", "attr"):
                sig.declare(_check_name(spec, lineno, col), directive)
            elif directive in ("func", "pred", "mode"):
                name, _, arity_s = spec.partition("/")
                if not arity_s or not arity_s.isdigit():
                    raise ParseError(
                        f"expected '{directive} NAME/ARITY'", lineno, col)
                sig.declare(_check_name(name, lineno, col), directive,
                            int(arity_s))
            elif directive == "elementof":
                sig.tag_elementof(_check_name(spec, lineno, col))
            else:
                raise ParseError(f"unknown directive {directive!r}", lineno, 1)
        except ValueError as e:
            raise ParseError(str(e), lineno, col) from None
        except (DuplicateName, UnknownName, KindMismatch) as e:
            raise e.at(lineno, col)
    return sig


def _check_name(name: str, line: int, col: int) -> str:
    if name in KEYWORDS:
        raise ParseError(f"{name!r} is a reserved word", line, col)
    if not name or not (name[0].isalpha() or name[0] == "_") or not all(
            _is_word_char(c) for c in name):
        raise ParseError(f"invalid name {name!r}", line, col)
    return name


def parse_statement(text: str, sig: Signature) -> MStatement:
    """Parse one scheme or bare statement, resolving names against the
    scheme header and ``sig``.  Raises a ``SourceError`` subclass with a
    position on any malformed or unresolvable input."""
    return _Parser(tokenize(text), sig).statement()


# Scope values mirror well_formed's: (OBJ, 0), (FUNC, n) or (PRED, n).
_Scope = dict[str, tuple[str, int]]


class _Parser:
    def __init__(self, tokens: list[Token], sig: Signature):
        self.toks = tokens
        self.pos = 0
        self.sig = sig
        self.depth = 0

    # ---------------------------------------------------- token plumbing

    def peek(self, ahead: int = 0) -> Token:
        return self.toks[min(self.pos + ahead, len(self.toks) - 1)]

    def next(self) -> Token:
        tok = self.toks[self.pos]
        if tok.kind != "eof":
            self.pos += 1
        return tok

    def at(self, kind: str, text: str | None = None, ahead: int = 0) -> bool:
        tok = self.peek(ahead)
        return tok.kind == kind and (text is None or tok.text == text)

    def expect(self, kind: str, text: str) -> Token:
        tok = self.next()
        if tok.kind != kind or tok.text != text:
            raise ParseError(f"expected {text!r}, got {tok.text!r}",
                             tok.line, tok.col, expected=text)
        return tok

    def name_tok(self, what: str) -> Token:
        tok = self.next()
        if tok.kind != "name":
            raise ParseError(f"expected {what}, got {tok.text!r}",
                             tok.line, tok.col)
        return tok

    def _enter(self) -> None:
        self.depth += 1
        if self.depth > _MAX_DEPTH:
            tok = self.peek()
            raise ParseError("nesting too deep", tok.line, tok.col)

    def _leave(self) -> None:
        self.depth -= 1

    # -------------------------------------------------------- statements

    def statement(self) -> MStatement:
        tok = self.next()
        if tok.kind == "kw" and tok.text == "scheme":
            name = self.name_tok("a scheme name").text
            self.expect("sym", "{")
            scope: _Scope = {}
            prefix: list[VarDecl] = []
            if not self.at("sym", "}"):
                prefix.append(self.decl(scope))
                while self.at("sym", ","):
                    self.next()
                    prefix.append(self.decl(scope))
            self.expect("sym", "}")
            self.expect("sym", ":")
            body = self.prop(scope)
        elif tok.kind == "kw" and tok.text == "statement":
            name = None
            prefix = []
            self.expect("sym", ":")
            body = self.prop({})
        else:
            raise ParseError("expected 'scheme' or 'statement'",
                             tok.line, tok.col)
        tok = self.next()
        if tok.kind != "eof":
            raise ParseError(f"unexpected {tok.text!r} after statement",
                             tok.line, tok.col)
        return MStatement(tuple(prefix), body, name)

    def decl(self, scope: _Scope) -> VarDecl:
        tok = self.name_tok("a variable name")
        name = tok.text
        if name in scope:
            raise DuplicateName(name).at(tok.line, tok.col)
        if self.at("sym", "("):
            self.next()
            args: list[MType] = []
            if not self.at("sym", ")"):
                args.append(self.mtype(scope))
                while self.at("sym", ","):
                    self.next()
                    args.append(self.mtype(scope))
            self.expect("sym", ")")
            self.expect("sym", "->")
            result = self.mtype(scope)
            if args:
                decl: VarDecl = FunDecl(name, tuple(args), result)
                scope[name] = (FUNC, len(args))
            else:
                decl = ObjDecl(name, result)
                scope[name] = (OBJ, 0)
        elif self.at("sym", "["):
            self.next()
            args = []
            if not self.at("sym", "]"):
                args.append(self.mtype(scope))
                while self.at("sym", ","):
                    self.next()
                    args.append(self.mtype(scope))
            self.expect("sym", "]")
            decl = PredDecl(name, tuple(args))
            scope[name] = (PRED, len(args))
        else:
            tok = self.peek()
            raise ParseError("expected '(' or '[' in declaration",
                             tok.line, tok.col)
        return decl

    # ------------------------------------------------------------- types

    def mtype(self, scope: _Scope) -> MType:
        self._enter()
        try:
            tok = self.peek()
            if tok.kind == "kw" and tok.text == "set":
                self.next()
                return SET
            if tok.kind == "kw" and tok.text == "non":
                self.next()
                attr_tok = self.name_tok("an attribute name")
                self._want_attr(attr_tok)
                return NonAttr(attr_tok.text, self.mtype(scope))
            if tok.kind == "kw" and tok.text == "Element":
                self.next()
                self.expect("kw", "of")
                if self.sig.elementof is None:
                    raise ParseError(
                        "no mode is tagged 'elementof' in the signature",
                        tok.line, tok.col)
                return Mode(self.sig.elementof, (self.term(scope),))
            if tok.kind == "name":
                entry = self.sig.lookup(tok.text)
                if tok.text in scope or entry is None:
                    self.next()
                    raise UnknownName(tok.text).at(tok.line, tok.col)
                if entry.kind == ATTR:
                    self.next()
                    return Attr(tok.text, self.mtype(scope))
                if entry.kind == MODE:
                    self.next()
                    args: list[MTerm] = []
                    if self.at("sym", "("):
                        self.next()
                        if not self.at("sym", ")"):
                            args.append(self.term(scope))
                            while self.at("sym", ","):
                                self.next()
                                args.append(self.term(scope))
                        self.expect("sym", ")")
                    if entry.arity != len(args) + 1:
                        raise ArityMismatch(
                            tok.text, entry.arity - 1, len(args)
                        ).at(tok.line, tok.col)
                    return Mode(tok.text, tuple(args))
                self.next()
                raise KindMismatch(tok.text, "a mode or attribute").at(
                    tok.line, tok.col)
            raise ParseError(f"expected a type, got {tok.text!r}",
                             tok.line, tok.col)
        finally:
            self._leave()

    def _want_attr(self, tok: Token) -> None:
        entry = self.sig.lookup(tok.text)
        if entry is None:
            raise UnknownName(tok.text).at(tok.line, tok.col)
        if entry.kind != ATTR:
            raise KindMismatch(tok.text, "an attribute").at(tok.line, tok.col)

    # ------------------------------------------------------------- terms

    def term(self, scope: _Scope) -> MTerm:
        self._enter()
        try:
            tok = self.peek()
            if tok.kind == "kw" and tok.text == "the":
                self.next()
                return The(self.mtype(scope))
            if tok.kind == "sym" and tok.text == "{":
                return self.fraenkel(scope)
            if tok.kind == "name":
                return self.named_term(scope)
            raise ParseError(f"expected a term, got {tok.text!r}",
                             tok.line, tok.col)
        finally:
            self._leave()

    def named_term(self, scope: _Scope) -> MTerm:
        tok = self.next()
        name = tok.text
        got = scope.get(name)
        if got is not None:
            kind, arity = got
            if kind == OBJ:
                if self.at("sym", "("):
                    # the F()-style reference to an object variable
                    self.next()
                    if not self.at("sym", ")"):
                        raise KindMismatch(name, "a function variable").at(
                            tok.line, tok.col)
                    self.next()
                return ObjVar(name)
            if kind == FUNC:
                args = self.paren_args(scope, tok, arity)
                return FunVarApp(name, tuple(args))
            raise KindMismatch(name, "usable in a term").at(tok.line, tok.col)
        entry = self.sig.lookup(name)
        if entry is None:
            raise UnknownName(name).at(tok.line, tok.col)
        if entry.kind == OBJ:
            if self.at("sym", "("):
                raise KindMismatch(name, "a function").at(tok.line, tok.col)
            return ObjConst(name)
        if entry.kind == FUNC:
            args = self.paren_args(scope, tok, entry.arity)
            return FunConstApp(name, tuple(args))
        raise KindMismatch(name, "usable in a term").at(tok.line, tok.col)

    def paren_args(self, scope: _Scope, tok: Token, arity: int) -> list[MTerm]:
        if not self.at("sym", "("):
            raise ArityMismatch(tok.text, arity, 0).at(tok.line, tok.col)
        self.next()
        args: list[MTerm] = []
        if not self.at("sym", ")"):
            args.append(self.term(scope))
            while self.at("sym", ","):
                self.next()
                args.append(self.term(scope))
        self.expect("sym", ")")
        if len(args) != arity:
            raise ArityMismatch(tok.text, arity, len(args)).at(
                tok.line, tok.col)
        return args

    def fraenkel(self, scope: _Scope) -> MTerm:
        open_tok = self.expect("sym", "{")
        start = self.pos
        # The member term precedes the binders that scope over it, so
        # find our 'where', parse binders and guard first, then rewind.
        where_at = self._find_where(open_tok)
        self.pos = where_at + 1
        inner = dict(scope)
        binders: list[tuple[str, MType]] = []
        while True:
            tok = self.name_tok("a binder name")
            if any(tok.text == b for b, _ in binders):
                raise DuplicateName(tok.text).at(tok.line, tok.col)
            self.expect("kw", "is")
            mt = self.mtype(inner)
            binders.append((tok.text, mt))
            inner[tok.text] = (OBJ, 0)
            if self.at("sym", ","):
                self.next()
                continue
            break
        self.expect("sym", ":")
        guard = self.prop(inner)
        self.expect("sym", "}")
        end = self.pos
        self.pos = start
        body = self.term(inner)
        if self.pos != where_at:
            tok = self.peek()
            raise ParseError(f"expected 'where', got {tok.text!r}",
                             tok.line, tok.col)
        self.pos = end
        return Fraenkel(tuple(binders), body, guard)

    def _find_where(self, open_tok: Token) -> int:
        depth = 0
        for i in range(self.pos, len(self.toks)):
            tok = self.toks[i]
            if tok.kind == "sym" and tok.text == "{":
                depth += 1
            elif tok.kind == "sym" and tok.text == "}":
                if depth == 0:
                    break
                depth -= 1
            elif tok.kind == "kw" and tok.text == "where" and depth == 0:
                return i
        raise ParseError("comprehension without 'where'",
                         open_tok.line, open_tok.col)

    # ------------------------------------------------------ propositions

    def prop(self, scope: _Scope) -> MProp:
        self._enter()
        try:
            return self.prop_iff(scope)
        finally:
            self._leave()

    def prop_iff(self, scope: _Scope) -> MProp:
        parts = [self.prop_imp(scope)]
        while self.at("kw", "iff"):
            self.next()
            parts.append(self.prop_imp(scope))
        return _fold_right(MIff, parts)

    def prop_imp(self, scope: _Scope) -> MProp:
        left = self.prop_or(scope)
        if self.at("kw", "implies"):
            self.next()
            return MImp(left, self.prop_imp(scope))
        return left

    def prop_or(self, scope: _Scope) -> MProp:
        parts = [self.prop_and(scope)]
        while self.at("kw", "or"):
            self.next()
            parts.append(self.prop_and(scope))
        return _fold_right(MOr, parts)

    def prop_and(self, scope: _Scope) -> MProp:
        parts = [self.prop_not(scope)]
        while self.at("sym", "&"):
            self.next()
            parts.append(self.prop_not(scope))
        return _fold_right(MAnd, parts)

    def prop_not(self, scope: _Scope) -> MProp:
        count = 0
        while self.at("kw", "not"):
            self.next()
            count += 1
        p = self.prop_atom(scope)
        for _ in range(count):
            p = MNot(p)
        return p

    def prop_atom(self, scope: _Scope) -> MProp:
        self._enter()
        try:
            tok = self.peek()
            if tok.kind == "sym" and tok.text == "(":
                self.next()
                p = self.prop(scope)
                self.expect("sym", ")")
                return p
            if tok.kind == "kw" and tok.text in ("for", "ex"):
                return self.quantified(scope, tok.text)
            if tok.kind == "name":
                pred = self.pred_resolution(tok.text, scope)
                if self.at("sym", "[", ahead=1):
                    if pred is None:
                        self.next()
                        raise KindMismatch(tok.text, "a predicate").at(
                            tok.line, tok.col)
                    return self.pred_app(scope, pred)
                if self.at("sym", "(", ahead=1) and pred is not None:
                    return self.pred_app(scope, pred)
                if pred is not None and pred[1][1] == 0:
                    self.next()
                    return self.build_pred(*pred, (), tok)
            return self.relational(scope)
        finally:
            self._leave()

    def quantified(self, scope: _Scope, kw: str) -> MProp:
        """One quantifier block.  Variables may share a type ("for x, y
        being set") and blocks may chain ("for x being set ex y being
        set st ..."); the body keyword is "holds" after "for" and "st"
        after "ex"."""
        self._enter()
        try:
            return self._quantified(scope, kw)
        finally:
            self._leave()

    def _quantified(self, scope: _Scope, kw: str) -> MProp:
        self.expect("kw", kw)
        names = [self.name_tok("a variable name").text]
        while self.at("sym", ","):
            self.next()
            names.append(self.name_tok("a variable name").text)
        self.expect("kw", "being")
        mt = self.mtype(scope)
        inner = dict(scope)
        for name in names:
            inner[name] = (OBJ, 0)
        nxt = self.peek()
        if nxt.kind == "kw" and nxt.text in ("for", "ex"):
            body = self.quantified(inner, nxt.text)
        else:
            self.expect("kw", "holds" if kw == "for" else "st")
            body = self.prop(inner)
        ctor = ForBeing if kw == "for" else ExBeing
        for name in reversed(names):
            body = ctor(name, mt, body)
        return body

    def pred_resolution(
            self, name: str, scope: _Scope) -> tuple[str, tuple[str, int]] | None:
        """How ``name`` would resolve as a predicate: ("var"|"const",
        (kind, arity)), or None if it is not predicate-like."""
        got = scope.get(name)
        if got is not None:
            return ("var", got) if got[0] == PRED else None
        entry = self.sig.lookup(name)
        if entry is not None and entry.kind in (PRED, ATTR, MODE):
            return ("const", (entry.kind, entry.arity))
        return None

    def pred_app(self, scope: _Scope, pred: tuple[str, tuple[str, int]]) -> MProp:
        tok = self.next()
        close = "]" if self.at("sym", "[") else ")"
        self.next()
        args: list[MTerm] = []
        if not self.at("sym", close):
            args.append(self.term(scope))
            while self.at("sym", ","):
                self.next()
                args.append(self.term(scope))
        self.expect("sym", close)
        return self.build_pred(*pred, tuple(args), tok)

    def build_pred(self, which: str, sig_info: tuple[str, int],
                   args: tuple[MTerm, ...], tok: Token) -> MProp:
        _, arity = sig_info
        if len(args) != arity:
            raise ArityMismatch(tok.text, arity, len(args)).at(
                tok.line, tok.col)
        if which == "var":
            return PredVarApp(tok.text, args)
        return PredConstApp(tok.text, args)

    def relational(self, scope: _Scope) -> MProp:
        lhs = self.term(scope)
        tok = self.next()
        if tok.kind == "kw" and tok.text == "in":
            return MIn(lhs, self.term(scope))
        if tok.kind == "sym" and tok.text == "=":
            return MEq(lhs, self.term(scope))
        raise ParseError(f"expected '=' or 'in', got {tok.text!r}",
                         tok.line, tok.col)


def _fold_right(ctor, parts: list[MProp]) -> MProp:
    out = parts[-1]
    for p in reversed(parts[:-1]):
        out = ctor(p, out)
    return out
