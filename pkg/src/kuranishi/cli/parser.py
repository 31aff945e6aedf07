"""Expression language for forms.

Grammar (whitespace is insignificant)::

    expr    := ['+'|'-'] term (('+'|'-') term)*
    term    := factor (('*'|'^') factor)* [value]
    value   := '@d(' INT ')' | '⊗d/dv' INT
    factor  := ['-'] power
    power   := atom ['^' INT]
    atom    := INT ['/' INT] | 'i' | '(' expr ')'
             | 'v' IDX | 'vb' IDX | 't' [IDX] | 'dv' IDX | 'dvb' IDX
             | 'E[' gauss (',' gauss)* ';' gauss (',' gauss)* ']'
             | NAME
    IDX     := '(' INT ')' | DIGITS

``*`` and ``^`` both denote the wedge product, except that ``^`` followed by
an integer is a power.  ``dv12`` is dv1^dv2 (one digit per index), as in the
canonical rendering, so ``parse(render(w)) == w``.
"""

import re

from ..deformation import KuranishiData
from ..errors import (
    DegreeMismatch,
    FormTypeError,
    LatticeViolation,
    ParseError,
)
from ..forms import VForm
from ..funring import CHART, TORUS, key_from_frequencies
from ..scalars import GaussianRational

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<value>⊗\s*d/dv\s*(?P<vidx>\d+))
  | (?P<at>@d\(\s*(?P<aidx>\d+)\s*\))
  | (?P<char>E\[(?P<body>[^\]]*)\])
  | (?P<num>\d+)
  | (?P<name>[A-Za-z_][A-Za-z_]*)
  | (?P<op>[-+*^/()])
    """,
    re.VERBOSE,
)

_PURE_IM = re.compile(r"([+-]?\d*)i")
_GAUSS = re.compile(r"([+-]?\d+)(?:([+-]\d*)i)?")

_ATOMS = ("dvb", "dv", "vb", "v", "t")


class _Tok:
    __slots__ = ("kind", "text", "pos", "data")

    def __init__(self, kind, text, pos, data=None):
        self.kind = kind
        self.text = text
        self.pos = pos
        self.data = data


def _position(text, pos):
    line = text.count("\n", 0, pos) + 1
    col = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return line, col


def _tokenize(text):
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", *_position(text, pos))
        kind = m.lastgroup
        if kind == "vidx":
            kind = "value"
        elif kind == "aidx":
            kind = "at"
        elif kind == "body":
            kind = "char"
        if kind != "ws":
            data = None
            if kind == "value":
                kind, data = "valmark", int(m.group("vidx"))
            elif kind == "at":
                kind, data = "valmark", int(m.group("aidx"))
            elif kind == "char":
                data = m.group("body")
            out.append(_Tok(kind, m.group(0), pos, data))
        pos = m.end()
    out.append(_Tok("end", "", len(text)))
    return out


def _im_coeff(text):
    if text in ("", "+"):
        return 1
    if text == "-":
        return -1
    return int(text)


def _gauss_int(s):
    """Gaussian integer from text like 2, -i, 3i, 1+2i, -2-i; None if malformed."""
    s = s.strip()
    m = _PURE_IM.fullmatch(s)
    if m:
        return 0, _im_coeff(m.group(1))
    m = _GAUSS.fullmatch(s)
    if not m:
        return None
    im = _im_coeff(m.group(2)) if m.group(2) is not None else 0
    return int(m.group(1)), im


class _Parser:
    def __init__(self, text, geom, env):
        self.text = text
        self.geom = geom
        self.env = env or {}
        self.toks = _tokenize(text)
        self.i = 0

    # helpers -------------------------------------------------------------
    def peek(self, offset=0):
        return self.toks[self.i + offset]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def error(self, message, tok=None):
        tok = tok or self.peek()
        raise ParseError(message, *_position(self.text, tok.pos))

    def expect_op(self, op):
        tok = self.peek()
        if tok.kind != "op" or tok.text != op:
            self.error(f"expected {op!r}, found {tok.text or 'end of input'!r}")
        return self.take()

    def is_op(self, *ops):
        tok = self.peek()
        return tok.kind == "op" and tok.text in ops

    def int_token(self):
        tok = self.peek()
        if tok.kind != "num":
            self.error(f"expected an integer, found {tok.text or 'end of input'!r}")
        self.take()
        return int(tok.text)

    # grammar -------------------------------------------------------------
    def parse(self):
        if self.peek().kind == "end":
            self.error("empty expression")
        w = self.expr()
        if self.peek().kind != "end":
            self.error(f"unexpected {self.peek().text!r}")
        return w

    def expr(self):
        sign = 1
        if self.is_op("+", "-"):
            sign = -1 if self.take().text == "-" else 1
        w = self.term()
        if sign < 0:
            w = -w
        while self.is_op("+", "-"):
            op = self.take().text
            t = self.term()
            w = w + t if op == "+" else w - t
        return w

    def term(self):
        start = self.peek()
        w = self.factor()
        while self.is_op("*", "^"):
            op_tok = self.take()
            rhs = self.factor()
            try:
                w = w ^ rhs
            except DegreeMismatch:
                self.error("cannot wedge two vector-valued forms", op_tok)
        if self.peek().kind == "valmark":
            tok = self.take()
            a = tok.data
            if not 1 <= a <= self.geom.n:
                self.error(f"vector index {a} out of range 1..{self.geom.n}", tok)
            if w.is_vector_valued():
                self.error("term already carries a vector value", tok)
            w = w.with_value(a)
        if not isinstance(w, VForm):
            self.error("malformed term", start)
        return w

    def factor(self):
        if self.is_op("-"):
            self.take()
            return -self.factor()
        return self.power()

    def power(self):
        w = self.atom()
        if self.is_op("^") and self.peek(1).kind == "num":
            self.take()
            e = self.int_token()
            out = VForm.scalar(self.geom, 1)
            for _ in range(e):
                out = out ^ w
            w = out
        return w

    def index(self, name_tok, digits):
        """Index list from a digit suffix or a parenthesized integer."""
        if digits:
            return [int(c) for c in digits]
        if self.is_op("("):
            self.take()
            k = self.int_token()
            self.expect_op(")")
            return [k]
        self.error(f"{name_tok.text!r} needs an index", name_tok)

    def check_index(self, k, bound, tok, what):
        if not 1 <= k <= bound:
            self.error(f"{what} index {k} out of range 1..{bound}", tok)

    def atom(self):
        g = self.geom
        tok = self.peek()
        if tok.kind == "num":
            self.take()
            num = int(tok.text)
            den = 1
            if self.is_op("/"):
                self.take()
                den_tok = self.peek()
                den = self.int_token()
                if den == 0:
                    self.error("division by zero", den_tok)
            return VForm.scalar(g, GaussianRational._raw(num, 0, den))
        if tok.kind == "op" and tok.text == "(":
            self.take()
            w = self.expr()
            self.expect_op(")")
            return w
        if tok.kind == "char":
            self.take()
            return self.character(tok)
        if tok.kind == "name":
            self.take()
            return self.named(tok)
        self.error(f"unexpected {tok.text or 'end of input'!r}")

    def named(self, tok):
        g = self.geom
        text = tok.text
        digits = ""
        nxt = self.peek()
        if nxt.kind == "num" and nxt.pos == tok.pos + len(text):
            digits = nxt.text
        if text + digits in self.env:
            if digits:
                self.take()
            return self.env[text + digits]
        if text == "i" and not digits:
            return VForm.scalar(g, GaussianRational._raw(0, 1, 1))
        if digits:
            self.take()
        if text not in _ATOMS:
            self.error(f"unknown name {text!r}", tok)
        if text == "t":
            if not digits and not self.is_op("("):
                if g.m != 1:
                    self.error("several parameters: write t1, t2, ...", tok)
                return VForm.t(g, 1)
            ks = self.index(tok, digits) if not digits else [int(digits)]
            self.check_index(ks[0], g.m, tok, "parameter")
            return VForm.t(g, ks[0])
        if text in ("dv", "dvb"):
            out = VForm.scalar(g, 1)
            for k in self.index(tok, digits):
                self.check_index(k, g.n, tok, "coordinate")
                out = out ^ (VForm.dv(g, k) if text == "dv" else VForm.dvb(g, k))
            return out
        # coordinate functions
        if g.kind != CHART:
            self.error("coordinate functions exist on the chart only; use E[..;..] on the torus", tok)
        ks = self.index(tok, digits) if not digits else [int(digits)]
        k = ks[0]
        self.check_index(k, g.n, tok, "coordinate")
        key = [0] * (2 * g.n)
        key[k - 1 if text == "v" else g.n + k - 1] = 1
        return VForm.term(g, 1, f=tuple(key))

    def character(self, tok):
        g = self.geom
        if g.kind != TORUS:
            self.error("characters E[..;..] exist on the torus only", tok)
        body = tok.data
        if body.count(";") != 1:
            self.error("a character needs the form E[a1,..,an;b1,..,bn]", tok)
        left, right = body.split(";")
        alpha = [_gauss_int(s) for s in left.split(",")]
        beta = [_gauss_int(s) for s in right.split(",")]
        if any(x is None for x in alpha + beta):
            self.error("character entries must be Gaussian integers like 2, -i, 1+2i", tok)
        if len(alpha) != g.n or len(beta) != g.n:
            self.error(f"a character needs {g.n} entries on each side", tok)
        try:
            key = key_from_frequencies(alpha, beta)
        except LatticeViolation as exc:
            self.error(f"lattice violation: {exc}", tok)
        return VForm.term(g, 1, f=key)


def parse_expression(text, geom, env=None, expect=None):
    """Parse ``text`` into a VForm on ``geom``.

    ``env`` maps names to already parsed forms.  ``expect`` may be
    "kuranishi" (returns KuranishiData), "vector-field" or a bidegree (p, q);
    a mismatch raises FormTypeError.
    """
    w = _Parser(text, geom, env).parse()
    if expect is None:
        return w
    if expect == "kuranishi":
        bad = [(len(k[0]), len(k[1]), bool(k[2])) for k in w.terms if k[0] or len(k[1]) != 1 or not k[2]]
        if bad:
            raise FormTypeError("(0,1) vector-valued", f"terms of type {sorted(set(bad))}")
        if w.has_t_constant():
            raise FormTypeError("no t-constant term", "a t-constant term")
        return KuranishiData(w)
    if expect == "vector-field":
        bad = [(len(k[0]), len(k[1])) for k in w.terms if k[0] or k[1] or not k[2]]
        if bad:
            raise FormTypeError("(0,0) vector-valued", f"bidegrees {sorted(set(bad))}")
        return w
    p, q = expect
    actual = w.bidegrees()
    if actual and actual != [(p, q)]:
        raise FormTypeError(f"bidegree {(p, q)}", f"bidegrees {actual}")
    return w


def parse_ideal(text, m):
    """Monomial ideal from text like "t^3" or "t1^2, t1*t2"."""
    from ..scalars import MonomialIdeal

    gens = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            raise ParseError("empty ideal generator", 1, 1)
        exp = [0] * m
        for factor in part.split("*"):
            mm = re.fullmatch(r"\s*t(\d*)\s*(?:\^\s*(\d+))?\s*", factor)
            if not mm:
                raise ParseError(f"bad ideal generator {part!r}", 1, text.find(part) + 1)
            k = int(mm.group(1)) if mm.group(1) else 1
            if mm.group(1) == "" and m != 1:
                raise ParseError("several parameters: write t1, t2, ...", 1, text.find(part) + 1)
            if not 1 <= k <= m:
                raise ParseError(f"parameter index {k} out of range", 1, text.find(part) + 1)
            exp[k - 1] += int(mm.group(2)) if mm.group(2) else 1
        gens.append(tuple(exp))
    return MonomialIdeal(gens, m)
