"""Propositional formulas: parsing, truth tables and Boole's multilinear form.

Row ``r`` of a truth table over variables ``(x_0, ..., x_{n-1})`` assigns to
``x_i`` the bit ``(r >> (n - 1 - i)) & 1``, so the first variable is the most
significant bit and two-variable tables list rows 00, 01, 10, 11.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

import numpy as np

__all__ = [
    "Formula",
    "Var",
    "Const",
    "Not",
    "And",
    "Or",
    "Xor",
    "Implies",
    "ConverseImplies",
    "Iff",
    "TRUE",
    "FALSE",
    "ParseError",
    "parse",
    "to_text",
    "variables",
    "evaluate",
    "VariableOrder",
    "TruthTable",
    "truth_table",
    "MultilinearPolynomial",
    "boole_polynomial",
    "eval_polynomial",
    "MAX_VARIABLES",
]

MAX_VARIABLES = 20

_IDENT = re.compile(r"[A-Za-z][A-Za-z0-9_]*")


# ---------------------------------------------------------------------------
# AST
# ---------------------------------------------------------------------------


class Formula:
    """Base class of formula nodes. Nodes are immutable and hashable."""

    __slots__ = ()

    def __str__(self) -> str:
        return to_text(self)


@dataclass(frozen=True, slots=True)
class Var(Formula):
    name: str

    def __post_init__(self):
        if not isinstance(self.name, str) or not _IDENT.fullmatch(self.name):
            raise ValueError(f"invalid variable name {self.name!r}")


@dataclass(frozen=True, slots=True)
class Const(Formula):
    value: bool


TRUE = Const(True)
FALSE = Const(False)


@dataclass(frozen=True, slots=True)
class Not(Formula):
    child: Formula


@dataclass(frozen=True, slots=True)
class _Binary(Formula):
    left: Formula
    right: Formula


class And(_Binary):
    __slots__ = ()


class Or(_Binary):
    __slots__ = ()


class Xor(_Binary):
    __slots__ = ()


class Implies(_Binary):
    """``left -> right``."""

    __slots__ = ()


class ConverseImplies(_Binary):
    """``left <- right``, true unless ``right`` holds and ``left`` does not."""

    __slots__ = ()


class Iff(_Binary):
    __slots__ = ()


_SYMBOL = {
    And: "&",
    Or: "|",
    Xor: "^",
    Implies: "->",
    ConverseImplies: "<-",
    Iff: "<->",
}


def to_text(f: Formula) -> str:
    """Render ``f`` in the ASCII grammar; ``parse(to_text(f)) == f``."""
    if isinstance(f, Var):
        return f.name
    if isinstance(f, Const):
        return "1" if f.value else "0"
    if isinstance(f, Not):
        return "!" + _operand_text(f.child)
    if isinstance(f, _Binary):
        op = _SYMBOL[type(f)]
        return f"{_operand_text(f.left)} {op} {_operand_text(f.right)}"
    raise TypeError(f"not a formula: {f!r}")


def _operand_text(f: Formula) -> str:
    text = to_text(f)
    return f"({text})" if isinstance(f, _Binary) else text


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


class ParseError(ValueError):
    """Syntax error; ``offset`` is a byte offset into the UTF-8 encoded input."""

    def __init__(self, message: str, offset: int, expected: Iterable[str] = ()):
        self.offset = offset
        self.expected = frozenset(expected)
        detail = message
        if self.expected:
            detail += f"; expected one of: {', '.join(sorted(self.expected))}"
        super().__init__(f"{detail} (at byte {offset})")


# Longest spellings first so "<->" wins over "<-".
_OPERATORS = [
    ("<->", "IFF"),
    ("->", "IMP"),
    ("<-", "CONV"),
    ("!", "NOT"),
    ("&", "AND"),
    ("|", "OR"),
    ("^", "XOR"),
    ("(", "LPAREN"),
    (")", "RPAREN"),
    ("¬", "NOT"),
    ("∧", "AND"),
    ("∨", "OR"),
    ("⊕", "XOR"),
    ("→", "IMP"),
    ("←", "CONV"),
    ("↔", "IFF"),
]

_TOKEN_TEXT = {
    "IFF": "'<->'",
    "IMP": "'->'",
    "CONV": "'<-'",
    "NOT": "'!'",
    "AND": "'&'",
    "OR": "'|'",
    "XOR": "'^'",
    "LPAREN": "'('",
    "RPAREN": "')'",
    "IDENT": "identifier",
    "CONST": "'0' or '1'",
    "EOF": "end of input",
}

_ATOM_START = {"IDENT", "CONST", "LPAREN", "NOT"}


@dataclass(frozen=True, slots=True)
class _Token:
    kind: str
    text: str
    offset: int


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    i = 0
    byte = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            byte += len(ch.encode())
            continue
        for spelling, kind in _OPERATORS:
            if text.startswith(spelling, i):
                tokens.append(_Token(kind, spelling, byte))
                break
        else:
            m = _IDENT.match(text, i)
            if m:
                spelling, kind = m.group(), "IDENT"
            elif ch in "01":
                spelling, kind = ch, "CONST"
            else:
                raise ParseError(f"unexpected character {ch!r}", byte)
            tokens.append(_Token(kind, spelling, byte))
        i += len(spelling)
        byte += len(spelling.encode())
    tokens.append(_Token("EOF", "", byte))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0

    @property
    def current(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def fail(self, expected: Iterable[str]) -> ParseError:
        tok = self.current
        found = "end of input" if tok.kind == "EOF" else repr(tok.text)
        return ParseError(
            f"unexpected {found}",
            tok.offset,
            {_TOKEN_TEXT[k] for k in expected},
        )

    def parse(self) -> Formula:
        f = self.iff()
        if self.current.kind != "EOF":
            if self.current.kind == "RPAREN":
                raise ParseError("unbalanced ')'", self.current.offset)
            raise self.fail({"IFF", "IMP", "CONV", "AND", "OR", "XOR", "EOF"})
        return f

    def iff(self) -> Formula:
        f = self.impl()
        while self.current.kind == "IFF":
            self.advance()
            f = Iff(f, self.impl())
        return f

    def impl(self, allow_converse: bool = True) -> Formula:
        f = self.or_()
        kind = self.current.kind
        if kind == "IMP":
            self.advance()
            return Implies(f, self.impl(allow_converse=False))
        if kind == "CONV":
            if not allow_converse:
                raise ParseError(
                    "ambiguous mix of '->' and '<-'; add parentheses",
                    self.current.offset,
                )
            self.advance()
            f = ConverseImplies(f, self.or_())
            if self.current.kind in ("IMP", "CONV"):
                raise ParseError(
                    "ambiguous chain after '<-'; add parentheses",
                    self.current.offset,
                )
        return f

    def or_(self) -> Formula:
        f = self.xor()
        while self.current.kind == "OR":
            self.advance()
            f = Or(f, self.xor())
        return f

    def xor(self) -> Formula:
        f = self.and_()
        while self.current.kind == "XOR":
            self.advance()
            f = Xor(f, self.and_())
        return f

    def and_(self) -> Formula:
        f = self.unary()
        while self.current.kind == "AND":
            self.advance()
            f = And(f, self.unary())
        return f

    def unary(self) -> Formula:
        if self.current.kind == "NOT":
            self.advance()
            return Not(self.unary())
        return self.atom()

    def atom(self) -> Formula:
        tok = self.current
        if tok.kind == "IDENT":
            self.advance()
            return Var(tok.text)
        if tok.kind == "CONST":
            self.advance()
            return TRUE if tok.text == "1" else FALSE
        if tok.kind == "LPAREN":
            self.advance()
            f = self.iff()
            if self.current.kind != "RPAREN":
                if self.current.kind == "EOF":
                    raise ParseError(
                        f"unbalanced '(' opened at byte {tok.offset}",
                        self.current.offset,
                        {_TOKEN_TEXT["RPAREN"]},
                    )
                raise self.fail({"RPAREN", "IFF", "IMP", "CONV", "AND", "OR", "XOR"})
            self.advance()
            return f
        raise self.fail(_ATOM_START)


def parse(text: str) -> Formula:
    """Parse a formula.

    Precedence from tightest to loosest: ``!``, ``&``, ``^``, ``|``,
    ``->``/``<-``, ``<->``. ``->`` is right-associative; ``<-`` does not
    chain and may not be mixed with ``->`` without parentheses.
    """
    if not text or not text.strip():
        raise ParseError("empty formula", 0, {_TOKEN_TEXT[k] for k in _ATOM_START})
    return _Parser(text).parse()


# ---------------------------------------------------------------------------
# Semantics
# ---------------------------------------------------------------------------


def variables(f: Formula) -> frozenset[str]:
    """Free variables of ``f``."""
    if isinstance(f, Var):
        return frozenset((f.name,))
    if isinstance(f, Const):
        return frozenset()
    if isinstance(f, Not):
        return variables(f.child)
    return variables(f.left) | variables(f.right)


def evaluate(f: Formula, assignment: Mapping[str, bool]) -> bool:
    if isinstance(f, Var):
        try:
            return bool(assignment[f.name])
        except KeyError:
            raise KeyError(f"no value for variable {f.name!r}") from None
    if isinstance(f, Const):
        return f.value
    if isinstance(f, Not):
        return not evaluate(f.child, assignment)
    a = evaluate(f.left, assignment)
    b = evaluate(f.right, assignment)
    return _combine(type(f), a, b)


def _combine(kind, a, b):
    # Works on Python bools and on numpy boolean arrays alike.
    if kind is And:
        return a & b
    if kind is Or:
        return a | b
    if kind is Xor:
        return a ^ b
    if kind is Implies:
        return ~a | b if isinstance(a, np.ndarray) else (not a) or b
    if kind is ConverseImplies:
        return a | ~b if isinstance(b, np.ndarray) else a or (not b)
    if kind is Iff:
        return ~(a ^ b) if isinstance(a, np.ndarray) else a == b
    raise TypeError(f"unknown connective {kind!r}")


class VariableOrder(tuple):
    """Ordered, duplicate-free tuple of variable names; index 0 is the MSB."""

    def __new__(cls, names: Iterable[str] = ()):
        if isinstance(names, str):
            names = [s.strip() for s in names.split(",") if s.strip()]
        names = tuple(names)
        for name in names:
            if not isinstance(name, str) or not _IDENT.fullmatch(name):
                raise ValueError(f"invalid variable name {name!r}")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable in order {names!r}")
        return super().__new__(cls, names)

    @classmethod
    def of(cls, *formulas: Formula) -> "VariableOrder":
        """Sorted free variables of the given formulas."""
        names: set[str] = set()
        for f in formulas:
            names |= variables(f)
        return cls(sorted(names))

    def check_covers(self, f: Formula) -> None:
        missing = variables(f) - set(self)
        if missing:
            raise ValueError(
                f"variables {sorted(missing)} missing from order {list(self)}"
            )

    def __repr__(self):
        return f"VariableOrder({list(self)!r})"


OrderLike = Union[VariableOrder, Sequence[str], str]


def _as_order(order: OrderLike) -> VariableOrder:
    return order if isinstance(order, VariableOrder) else VariableOrder(order)


def _bit_columns(n: int) -> list[np.ndarray]:
    rows = np.arange(1 << n, dtype=np.int64)
    return [((rows >> (n - 1 - i)) & 1).astype(bool) for i in range(n)]


def _eval_columns(f: Formula, cols: Mapping[str, np.ndarray], size: int) -> np.ndarray:
    if isinstance(f, Var):
        return cols[f.name]
    if isinstance(f, Const):
        return np.full(size, f.value, dtype=bool)
    if isinstance(f, Not):
        return ~_eval_columns(f.child, cols, size)
    a = _eval_columns(f.left, cols, size)
    b = _eval_columns(f.right, cols, size)
    return _combine(type(f), a, b)


@dataclass(frozen=True, eq=False)
class TruthTable:
    order: VariableOrder
    column: np.ndarray  # uint8, read-only, length 2**n

    def __post_init__(self):
        if len(self.column) != 1 << len(self.order):
            raise ValueError("truth table length must be 2**n")

    def __eq__(self, other):
        if not isinstance(other, TruthTable):
            return NotImplemented
        return self.order == other.order and np.array_equal(self.column, other.column)

    def __hash__(self):
        return hash((self.order, self.column.tobytes()))

    @property
    def bits(self) -> tuple[int, ...]:
        return tuple(int(v) for v in self.column)

    def rows(self):
        """Yield ``(assignment bits, value)`` per row in ascending order."""
        n = len(self.order)
        for r, value in enumerate(self.column):
            yield tuple((r >> (n - 1 - i)) & 1 for i in range(n)), int(value)

    @property
    def is_tautology(self) -> bool:
        return bool(self.column.all())

    @property
    def is_contradiction(self) -> bool:
        return not self.column.any()


def truth_table(f: Formula, order: OrderLike) -> TruthTable:
    order = _as_order(order)
    order.check_covers(f)
    n = len(order)
    if n > MAX_VARIABLES:
        raise ValueError(f"at most {MAX_VARIABLES} variables supported, got {n}")
    cols = dict(zip(order, _bit_columns(n)))
    column = _eval_columns(f, cols, 1 << n).astype(np.uint8)
    column.flags.writeable = False
    return TruthTable(order, column)


# ---------------------------------------------------------------------------
# Boole polynomials
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MultilinearPolynomial:
    """``sum c_S * prod_{i in S} x_i`` with exact rational coefficients.

    ``terms`` maps a frozenset of variable indices (into ``order``) to its
    nonzero coefficient.
    """

    order: VariableOrder
    terms: Mapping[frozenset, Fraction]

    def __post_init__(self):
        n = len(self.order)
        clean = {}
        for subset, c in self.terms.items():
            subset = frozenset(subset)
            if any(not 0 <= i < n for i in subset):
                raise ValueError(f"term {sorted(subset)} out of range for {n} variables")
            c = Fraction(c)
            if c:
                clean[subset] = clean.get(subset, Fraction(0)) + c
        object.__setattr__(self, "terms", {s: c for s, c in clean.items() if c})

    def __hash__(self):
        return hash((self.order, frozenset(self.terms.items())))

    def coefficient(self, *names: str) -> Fraction:
        subset = frozenset(self.order.index(name) for name in names)
        return self.terms.get(subset, Fraction(0))

    @property
    def by_name(self) -> dict[frozenset, Fraction]:
        return {frozenset(self.order[i] for i in s): c for s, c in self.terms.items()}

    def __call__(self, assignment: Mapping[str, object]):
        return eval_polynomial(self, assignment)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        ordered = sorted(self.terms.items(), key=lambda t: (len(t[0]), sorted(t[0])))
        parts = []
        for subset, c in ordered:
            monomial = "*".join(self.order[i].lower() for i in sorted(subset))
            mag = abs(c)
            if not monomial:
                body = str(mag)
            elif mag == 1:
                body = monomial
            else:
                body = f"{mag}*{monomial}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text


def boole_polynomial(f: Formula, order: OrderLike) -> MultilinearPolynomial:
    """Interpolate ``f`` as a multilinear polynomial with integer coefficients.

    Expanding ``sum_r f(r) prod_i (x_i if bit_i(r) else 1 - x_i)`` gives
    ``c_S = sum_{T subset S} (-1)**(|S|-|T|) f(T)``, computed here with an
    in-place Moebius transform over the row index.
    """
    order = _as_order(order)
    table = truth_table(f, order)
    n = len(order)
    coeffs = table.column.astype(np.int64)
    step = 1
    while step < len(coeffs):
        # rows with this bit set subtract their partner with the bit cleared
        view = coeffs.reshape(-1, 2, step)
        view[:, 1, :] -= view[:, 0, :]
        step <<= 1
    terms = {}
    for r in np.flatnonzero(coeffs):
        subset = frozenset(i for i in range(n) if (r >> (n - 1 - i)) & 1)
        terms[subset] = Fraction(int(coeffs[r]))
    return MultilinearPolynomial(order, terms)


def eval_polynomial(p: MultilinearPolynomial, assignment: Mapping[str, object]):
    """Evaluate ``p``; exact if the inputs are ints or Fractions.

    Values in ``[0, 1]`` give the probabilistic reading (e.g. ``1 - p + p*q``
    for implication); 0/1 values reproduce the truth table.
    """
    used = set()
    for subset in p.terms:
        used.update(subset)
    values = {}
    for i in sorted(used):
        name = p.order[i]
        if name not in assignment:
            raise KeyError(f"no value for variable {name!r}")
        values[i] = assignment[name]
    total = 0
    for subset, c in sorted(p.terms.items(), key=lambda t: (len(t[0]), sorted(t[0]))):
        term = c
        for i in sorted(subset):
            term = term * values[i]
        total = total + term
    if isinstance(total, Fraction) and total.denominator == 1:
        return int(total)
    return total
