"""Textual instance descriptions: parse, print, and build rings and modules.

Grammar (parentheses nest composite arguments; ``#`` starts a comment)::

    ring zmod N
    ring product <ring> <ring>
    ring matrix K <ring>
    ring triangular (upper|lower) K <ring>
    ring opposite <ring>
    module regular <ring>
    module zabelian d1 d2 ...
    module sum <module> <module>
    module quotient <module> gens e1 e2 ...
    module sub <module> gens e1 e2 ...

Parsed terms are plain nested tuples ``(sort, op, *args)`` so they compare
and hash structurally.
"""
import re
from bisect import bisect_right

from .errors import AlgebraError
from .module import direct_sum, quotient_module, regular_module, restrict, submodule_generated, zbackend_module
from .ring import make_matrix_ring, make_product, make_triangular, make_zmod, opposite_ring


class ParseError(AlgebraError):
    def __init__(self, message, line, column):
        super().__init__(f"{message} at line {line}, column {column}")
        self.line = line
        self.column = column


_TOKEN = re.compile(r"\(|\)|[^\s()]+")
_COMMENT = re.compile(r"#[^\n]*")


def _tokenize(text):
    text = text.replace("\r\n", "\n")
    line_starts = [0] + [i + 1 for i, c in enumerate(text) if c == "\n"]

    def where(i):
        ln = bisect_right(line_starts, i)
        return ln, i - line_starts[ln - 1] + 1

    # blank comments out in place so columns stay put
    code = _COMMENT.sub(lambda m: " " * len(m.group()), text)
    out = [(m.group(), where(m.start())) for m in _TOKEN.finditer(code)]
    return out, where(len(text))


class _Parser:
    def __init__(self, text):
        self.tokens, self.end = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i][0] if self.i < len(self.tokens) else None

    def where(self):
        return self.tokens[self.i][1] if self.i < len(self.tokens) else self.end

    def take(self, what="token"):
        if self.i >= len(self.tokens):
            raise ParseError(f"expected {what}, found end of input", *self.end)
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, word):
        tok, pos = self.take(repr(word))
        if tok != word:
            raise ParseError(f"expected {word!r}, found {tok!r}", *pos)

    def integer(self, what="integer", minimum=0):
        tok, pos = self.take(what)
        if not tok.isdigit():
            raise ParseError(f"expected {what}, found {tok!r}", *pos)
        if int(tok) < minimum:
            raise ParseError(f"{what} must be at least {minimum}", *pos)
        return int(tok)

    def integers(self):
        out = []
        while self.peek() is not None and self.peek().isdigit():
            out.append(self.integer())
        return tuple(out)

    def term(self, sort=None):
        if self.peek() == "(":
            self.take()
            t = self.term(sort)
            self.expect(")")
            return t
        tok, pos = self.take(sort or "'ring' or 'module'")
        if sort is not None and tok != sort:
            raise ParseError(f"expected a {sort}, found {tok!r}", *pos)
        if tok == "ring":
            return self.ring_body()
        if tok == "module":
            return self.module_body()
        raise ParseError(f"expected 'ring' or 'module', found {tok!r}", *pos)

    def ring_body(self):
        op, pos = self.take("ring constructor")
        if op == "zmod":
            return ("ring", "zmod", self.integer("modulus", 1))
        if op == "product":
            return ("ring", "product", self.term("ring"), self.term("ring"))
        if op == "matrix":
            return ("ring", "matrix", self.integer("size", 1), self.term("ring"))
        if op == "triangular":
            shape, spos = self.take("'upper' or 'lower'")
            if shape not in ("upper", "lower"):
                raise ParseError(f"expected 'upper' or 'lower', found {shape!r}", *spos)
            return ("ring", "triangular", shape, self.integer("size", 1), self.term("ring"))
        if op == "opposite":
            return ("ring", "opposite", self.term("ring"))
        raise ParseError(f"unknown ring constructor {op!r}", *pos)

    def module_body(self):
        op, pos = self.take("module constructor")
        if op == "regular":
            return ("module", "regular", self.term("ring"))
        if op == "zabelian":
            return ("module", "zabelian", *self.integers())
        if op == "sum":
            return ("module", "sum", self.term("module"), self.term("module"))
        if op in ("quotient", "sub"):
            inner = self.term("module")
            self.expect("gens")
            return ("module", op, inner, self.integers())
        raise ParseError(f"unknown module constructor {op!r}", *pos)


def parse_term(text):
    """Text to a nested-tuple term; raises ParseError with line and column."""
    p = _Parser(text)
    t = p.term()
    if p.i != len(p.tokens):
        tok, pos = p.tokens[p.i]
        raise ParseError(f"trailing input {tok!r}", *pos)
    return t


def to_text(term, top=True):
    """Canonical single-line text for a term."""
    sort, op, *args = term
    parts = [sort, op]
    for a in args:
        if isinstance(a, tuple) and a and a[0] in ("ring", "module"):
            parts.append(to_text(a, top=False))
        elif isinstance(a, tuple):
            parts.append(" ".join(["gens", *map(str, a)]))
        else:
            parts.append(str(a))
    s = " ".join(parts)
    return s if top else f"({s})"


class Builder:
    """Builds objects from terms, sharing equal subterms so base rings coincide."""

    def __init__(self):
        self._memo = {}

    def build(self, term):
        hit = self._memo.get(term)
        if hit is not None:
            return hit
        obj = self._make(term)
        if getattr(obj, "spec", None) is None:
            obj.spec = to_text(term)
        self._memo[term] = obj
        return obj

    def _make(self, term):
        sort, op, *args = term
        b = self.build
        if sort == "ring":
            if op == "zmod":
                return make_zmod(args[0])
            if op == "product":
                return make_product(b(args[0]), b(args[1]))
            if op == "matrix":
                r = b(args[1])
                return r if args[0] == 1 else make_matrix_ring(r, args[0])
            if op == "triangular":
                r = b(args[2])
                return r if args[1] == 1 else make_triangular(r, args[1], args[0])
            if op == "opposite":
                return opposite_ring(b(args[0]))
        if op == "regular":
            return regular_module(b(args[0]))
        if op == "zabelian":
            return zbackend_module(args)
        if op == "sum":
            return direct_sum(b(args[0]), b(args[1]))
        inner = b(args[0])
        gens = args[1]
        bad = [g for g in gens if g >= inner.order]
        if bad:
            raise ValueError(f"generator {bad[0]} is not an element of a module of order {inner.order}")
        sub = submodule_generated(inner, gens)
        return quotient_module(inner, sub) if op == "quotient" else restrict(inner, sub)


_DEFAULT = Builder()


def parse_spec(text, builder=None):
    """Parse and build a ring or module from its textual description."""
    return (builder or _DEFAULT).build(parse_term(text))
