"""
ZF* Formula Language

This module defines the first-order language of ZF*: classical predicate
calculus with identity and membership, extended with the set predicate
``Set(x)`` and the parthood relation ``a <: b`` between physical things
(PTs). It provides the abstract syntax, a recursive descent parser, a
renderer whose output always parses back to the same tree, free-variable
bookkeeping, capture-avoiding substitution, macro expansion for every
defined predicate, and construction of the axiom sentences and schema
instances of the theory.

Concrete Syntax:
    all x. F        ex x. F         quantifier scope extends maximally right
    all a:PT. F     ex t:Set. F     sorted sugar, desugared at parse time
    ~F   F & G   F | G   F -> G   F <-> G
    x = y   x in y   a <: b   Set(x)   'alpha' (quoted name = constant)
    Name(t1, ..., tn)      macro over terms
    Name[b: F](t)          macro with a formula parameter binding b

    Precedence, tightest first: ~, &, |, -> (right associative), <->.
    Comments run from '#' to the end of the line.

Macros:
    T(x)            x is not a set
    Disj(a, b)      a and b share no part
    Ind(a, b)       a and b are parts of each other
    Sum(x, a)       a is the physical sum of the PTs belonging to x
    Cant(a)         the parts of a form a set
    Card(a, z)      z collects exactly the parts of a (z carries the cardinal)
    Irr(a, b)       a is a part of b whose parts are all indiscernible from a
    SetOf[x: F](y)  y is {x | F}
    CantF[b: F](a)  the parts of a satisfying F form a set
    QP[b: F](a)     a is quantal with respect to F
    CP[b: F](a)     a is classical with respect to F

Sorted quantifiers are sugar: ``all a:PT. F`` is ``all a. (T(a) -> F)`` and
``ex t:Set. F`` is ``ex t. (Set(t) & F)``. The renderer never re-sugars, so
``parse(render(f)) == f`` holds for every tree.

All nodes are frozen dataclasses; every function here is pure.
"""

from __future__ import annotations

import functools
import logging
import os
import re
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, Iterator, List, Mapping, NamedTuple, Optional, Set, Tuple, Union

logger = logging.getLogger(os.getenv("LOGGER_NAME", "ZFSTAR"))

IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
KEYWORDS = frozenset({"all", "ex", "in", "Set"})
SORTS = ("PT", "Set")


class FormulaError(ValueError):
    """Base class for every error raised while building or parsing formulas."""


class FormulaSyntaxError(FormulaError):
    """Concrete syntax error with a 1-based position and the tokens that would have been accepted."""

    def __init__(self, message: str, line: int, column: int, expected: Iterable[str] = ()):
        self.message = message
        self.line = line
        self.column = column
        self.expected = frozenset(expected)
        detail = f"{message} at line {line}, column {column}"
        if self.expected:
            detail += f" (expected one of: {', '.join(sorted(self.expected))})"
        super().__init__(detail)


class UnknownMacroError(FormulaError):
    pass


class MacroArityError(FormulaError):
    pass


class SchemaConditionError(FormulaError):
    """A schema instance would violate the variable conditions of the schema."""


class UnknownAxiomError(FormulaError):
    pass


# ---------------------------------------------------------------------------
# Abstract syntax
# ---------------------------------------------------------------------------

def _check_variable(name: str) -> None:
    if not isinstance(name, str) or not IDENT_RE.match(name) or name in KEYWORDS:
        raise FormulaError(f"invalid variable name: {name!r}")


@dataclass(frozen=True)
class Var:
    name: str

    def __post_init__(self):
        _check_variable(self.name)


@dataclass(frozen=True)
class Const:
    """A named element of the structure the formula is evaluated in."""
    name: str

    def __post_init__(self):
        if not isinstance(self.name, str) or not IDENT_RE.match(self.name):
            raise FormulaError(f"invalid constant name: {self.name!r}")


Term = Union[Var, Const]


@dataclass(frozen=True)
class Equal:
    left: Term
    right: Term


@dataclass(frozen=True)
class Member:
    element: Term
    container: Term


@dataclass(frozen=True)
class SetPred:
    term: Term


@dataclass(frozen=True)
class Part:
    part: Term
    whole: Term


@dataclass(frozen=True)
class Not:
    body: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Implies:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Iff:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class ForAll:
    var: str
    body: "Formula"

    def __post_init__(self):
        _check_variable(self.var)


@dataclass(frozen=True)
class Exists:
    var: str
    body: "Formula"

    def __post_init__(self):
        _check_variable(self.var)


# name -> (number of term arguments, takes a formula parameter)
MACRO_SIGNATURES: Dict[str, Tuple[int, bool]] = {
    "T": (1, False),
    "Disj": (2, False),
    "Ind": (2, False),
    "Sum": (2, False),
    "Cant": (1, False),
    "Card": (2, False),
    "Irr": (2, False),
    "CantF": (1, True),
    "QP": (1, True),
    "CP": (1, True),
    "SetOf": (1, True),
}


def check_macro_signature(name: str, n_args: int, has_formula: bool) -> None:
    if name not in MACRO_SIGNATURES:
        raise UnknownMacroError(f"unknown macro {name!r}; known macros: {', '.join(sorted(MACRO_SIGNATURES))}")
    arity, takes_formula = MACRO_SIGNATURES[name]
    if n_args != arity or has_formula != takes_formula:
        shape = f"{name}[b: F](t)" if takes_formula else f"{name} with {arity} term argument(s)"
        raise MacroArityError(f"macro {name} expects {shape}; got {n_args} term argument(s)"
                              f"{' and a formula parameter' if has_formula else ''}")


@dataclass(frozen=True)
class Macro:
    name: str
    args: Tuple[Term, ...]
    binder: Optional[str] = None
    body: Optional["Formula"] = None

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))
        if (self.binder is None) != (self.body is None):
            raise FormulaError(f"macro {self.name}: binder and formula parameter must be given together")
        if self.binder is not None:
            _check_variable(self.binder)
        check_macro_signature(self.name, len(self.args), self.binder is not None)


Formula = Union[Equal, Member, SetPred, Part, Not, And, Or, Implies, Iff, ForAll, Exists, Macro]

ATOMS = (Equal, Member, SetPred, Part)
BINARY = (And, Or, Implies, Iff)
QUANTIFIERS = (ForAll, Exists)


@dataclass(frozen=True)
class Predicate:
    """A formula with one designated variable, written ``b: F`` in concrete syntax."""
    var: str
    body: Formula

    def __post_init__(self):
        _check_variable(self.var)


def _atom_terms(f) -> Tuple[Term, ...]:
    if isinstance(f, Equal):
        return (f.left, f.right)
    if isinstance(f, Member):
        return (f.element, f.container)
    if isinstance(f, SetPred):
        return (f.term,)
    return (f.part, f.whole)


# ---------------------------------------------------------------------------
# Variables and substitution
# ---------------------------------------------------------------------------

def free_vars(f: Formula) -> Set[str]:
    """Variables with at least one occurrence not bound by a quantifier or macro binder."""
    if isinstance(f, ATOMS):
        return {t.name for t in _atom_terms(f) if isinstance(t, Var)}
    if isinstance(f, Not):
        return free_vars(f.body)
    if isinstance(f, BINARY):
        return free_vars(f.left) | free_vars(f.right)
    if isinstance(f, QUANTIFIERS):
        return free_vars(f.body) - {f.var}
    result = {t.name for t in f.args if isinstance(t, Var)}
    if f.body is not None:
        result |= free_vars(f.body) - {f.binder}
    return result


def all_vars(f: Formula) -> Set[str]:
    """Every variable name occurring in f, free or bound, including binders."""
    if isinstance(f, ATOMS):
        return {t.name for t in _atom_terms(f) if isinstance(t, Var)}
    if isinstance(f, Not):
        return all_vars(f.body)
    if isinstance(f, BINARY):
        return all_vars(f.left) | all_vars(f.right)
    if isinstance(f, QUANTIFIERS):
        return all_vars(f.body) | {f.var}
    result = {t.name for t in f.args if isinstance(t, Var)}
    if f.body is not None:
        result |= all_vars(f.body) | {f.binder}
    return result


def constants(f: Formula) -> Set[str]:
    if isinstance(f, ATOMS):
        return {t.name for t in _atom_terms(f) if isinstance(t, Const)}
    if isinstance(f, Not):
        return constants(f.body)
    if isinstance(f, BINARY):
        return constants(f.left) | constants(f.right)
    if isinstance(f, QUANTIFIERS):
        return constants(f.body)
    result = {t.name for t in f.args if isinstance(t, Const)}
    if f.body is not None:
        result |= constants(f.body)
    return result


def is_closed(f: Formula) -> bool:
    return not free_vars(f)


def fresh_name(base: str, avoid: Iterable[str]) -> str:
    """``base`` itself when unused, otherwise ``base`` with the smallest numeric suffix that is."""
    avoid = set(avoid)
    if base not in avoid and base not in KEYWORDS:
        return base
    root = base.rstrip("0123456789") or "v"
    i = 1
    while f"{root}{i}" in avoid:
        i += 1
    return f"{root}{i}"


def _subst_term(t: Term, mapping: Mapping[str, Term]) -> Term:
    if isinstance(t, Var) and t.name in mapping:
        return mapping[t.name]
    return t


def _subst_binding(var: str, body: Formula, mapping: Mapping[str, Term]) -> Tuple[str, Formula]:
    inner = {k: t for k, t in mapping.items() if k != var}
    body_free = free_vars(body)
    inner = {k: t for k, t in inner.items() if k in body_free}
    if not inner:
        return var, body
    incoming = {t.name for t in inner.values() if isinstance(t, Var)}
    if var in incoming:
        renamed = fresh_name(var, all_vars(body) | incoming | set(inner))
        body = substitute(body, {var: Var(renamed)})
        var = renamed
    return var, substitute(body, inner)


def substitute(f: Formula, mapping: Mapping[str, Term]) -> Formula:
    """Simultaneous capture-avoiding substitution of terms for free variables."""
    if not mapping:
        return f
    if isinstance(f, ATOMS):
        return type(f)(*(_subst_term(t, mapping) for t in _atom_terms(f)))
    if isinstance(f, Not):
        return Not(substitute(f.body, mapping))
    if isinstance(f, BINARY):
        return type(f)(substitute(f.left, mapping), substitute(f.right, mapping))
    if isinstance(f, QUANTIFIERS):
        var, body = _subst_binding(f.var, f.body, mapping)
        return type(f)(var, body)
    args = tuple(_subst_term(t, mapping) for t in f.args)
    if f.body is None:
        return Macro(f.name, args)
    binder, body = _subst_binding(f.binder, f.body, mapping)
    return Macro(f.name, args, binder, body)


# ---------------------------------------------------------------------------
# Lexer
# ---------------------------------------------------------------------------

class Token(NamedTuple):
    kind: str       # IDENT, CONST, KW, OP, EOF
    value: str
    line: int
    column: int


_TOKEN_RE = re.compile(r"""
    (?P<COMMENT>\#[^\n]*)
  | (?P<NEWLINE>\n)
  | (?P<SKIP>[ \t\r]+)
  | (?P<CONST>'[A-Za-z_][A-Za-z0-9_]*')
  | (?P<OP><->|->|<:|[~&|()\[\],:.=])
  | (?P<IDENT>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<MISMATCH>.)
""", re.VERBOSE)


def tokenize(text: str) -> Iterator[Token]:
    line, line_start = 1, 0
    for match in _TOKEN_RE.finditer(text):
        kind = match.lastgroup
        value = match.group()
        column = match.start() - line_start + 1
        if kind == "NEWLINE":
            line += 1
            line_start = match.end()
        elif kind in ("SKIP", "COMMENT"):
            continue
        elif kind == "MISMATCH":
            raise FormulaSyntaxError(f"unexpected character {value!r}", line, column)
        elif kind == "IDENT" and value in KEYWORDS:
            yield Token("KW", value, line, column)
        else:
            yield Token(kind, value, line, column)
    yield Token("EOF", "", line, len(text) - line_start + 1)


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

_UNARY_START = frozenset({"~", "all", "ex", "(", "Set", "identifier", "constant"})
_AFTER_FORMULA = frozenset({"<->", "->", "|", "&"})


class _Parser:
    """Recursive descent over the grammar in the module docstring, one method per rule."""

    def __init__(self, text: str):
        self.tokens = list(tokenize(text))
        self.pos = 0

    def peek(self, offset: int = 0) -> Token:
        return self.tokens[min(self.pos + offset, len(self.tokens) - 1)]

    def advance(self) -> Token:
        tok = self.peek()
        self.pos += 1
        return tok

    def at(self, value: str, offset: int = 0) -> bool:
        tok = self.peek(offset)
        return tok.kind in ("OP", "KW") and tok.value == value

    def fail(self, message: str, expected: Iterable[str], tok: Optional[Token] = None):
        tok = tok or self.peek()
        found = "end of input" if tok.kind == "EOF" else repr(tok.value)
        raise FormulaSyntaxError(f"{message}, found {found}", tok.line, tok.column, expected)

    def expect(self, value: str) -> Token:
        if not self.at(value):
            self.fail(f"expected {value!r}", {value})
        return self.advance()

    def expect_ident(self) -> str:
        tok = self.peek()
        if tok.kind != "IDENT":
            self.fail("expected a variable name", {"identifier"})
        return self.advance().value

    def parse(self) -> Formula:
        f = self.parse_iff()
        if self.peek().kind != "EOF":
            self.fail("unexpected token", _AFTER_FORMULA | {"end of input"})
        return f

    def parse_iff(self) -> Formula:
        left = self.parse_impl()
        while self.at("<->"):
            self.advance()
            left = Iff(left, self.parse_impl())
        return left

    def parse_impl(self) -> Formula:
        left = self.parse_or()
        if self.at("->"):
            self.advance()
            return Implies(left, self.parse_impl())
        return left

    def parse_or(self) -> Formula:
        left = self.parse_and()
        while self.at("|"):
            self.advance()
            left = Or(left, self.parse_and())
        return left

    def parse_and(self) -> Formula:
        left = self.parse_unary()
        while self.at("&"):
            self.advance()
            left = And(left, self.parse_unary())
        return left

    def parse_unary(self) -> Formula:
        if self.at("~"):
            self.advance()
            return Not(self.parse_unary())
        if self.at("all") or self.at("ex"):
            return self.parse_quant()
        if self.at("("):
            self.advance()
            f = self.parse_iff()
            self.expect(")")
            return f
        tok = self.peek()
        if tok.kind in ("IDENT", "CONST") or self.at("Set"):
            return self.parse_atom()
        self.fail("expected a formula", _UNARY_START)

    def parse_quant(self) -> Formula:
        quantifier = self.advance().value
        var = self.expect_ident()
        sort = None
        if self.at(":"):
            self.advance()
            tok = self.peek()
            if tok.value not in SORTS or tok.kind not in ("IDENT", "KW"):
                self.fail("expected a sort", set(SORTS))
            sort = self.advance().value
        self.expect(".")
        body = self.parse_iff()
        if sort is None:
            return ForAll(var, body) if quantifier == "all" else Exists(var, body)
        guard = Macro("T", (Var(var),)) if sort == "PT" else SetPred(Var(var))
        if quantifier == "all":
            return ForAll(var, Implies(guard, body))
        return Exists(var, And(guard, body))

    def parse_atom(self) -> Formula:
        if self.at("Set"):
            self.advance()
            self.expect("(")
            term = self.parse_term()
            self.expect(")")
            return SetPred(term)
        if self.peek().kind == "IDENT" and (self.at("(", 1) or self.at("[", 1)):
            return self.parse_macro()
        left = self.parse_term()
        if self.at("="):
            node = Equal
        elif self.at("in"):
            node = Member
        elif self.at("<:"):
            node = Part
        else:
            self.fail("expected a relation", {"=", "in", "<:"})
        self.advance()
        return node(left, self.parse_term())

    def parse_term(self) -> Term:
        tok = self.peek()
        if tok.kind == "IDENT":
            self.advance()
            return Var(tok.value)
        if tok.kind == "CONST":
            self.advance()
            return Const(tok.value[1:-1])
        self.fail("expected a term", {"identifier", "constant"})

    def parse_macro(self) -> Formula:
        name_tok = self.advance()
        name = name_tok.value
        if name not in MACRO_SIGNATURES:
            raise UnknownMacroError(f"unknown macro {name!r} at line {name_tok.line}, column {name_tok.column}")
        binder = body = None
        if self.at("["):
            self.advance()
            binder = self.expect_ident()
            self.expect(":")
            body = self.parse_iff()
            self.expect("]")
        self.expect("(")
        args = [self.parse_term()]
        while self.at(","):
            self.advance()
            args.append(self.parse_term())
        self.expect(")")
        arity, takes_formula = MACRO_SIGNATURES[name]
        if len(args) != arity or (binder is not None) != takes_formula:
            try:
                check_macro_signature(name, len(args), binder is not None)
            except MacroArityError as e:
                raise MacroArityError(f"{e} at line {name_tok.line}, column {name_tok.column}") from None
        return Macro(name, tuple(args), binder, body)


def parse(text: str) -> Formula:
    """Parse concrete syntax into a Formula, raising FormulaError subclasses on bad input."""
    return _Parser(text).parse()


def parse_predicate(text: str) -> Predicate:
    """Parse ``b: F`` into a Predicate with designated variable b."""
    p = _Parser(text)
    var = p.expect_ident()
    p.expect(":")
    return Predicate(var, p.parse())


# ---------------------------------------------------------------------------
# Renderer
# ---------------------------------------------------------------------------

_IFF, _IMPL, _OR, _AND, _UNARY = 1, 2, 3, 4, 5

# node type -> (own level, left operand level, right operand level, symbol)
_BINARY_LAYOUT = {
    Iff: (_IFF, _IFF, _IMPL, "<->"),
    Implies: (_IMPL, _OR, _IMPL, "->"),
    Or: (_OR, _OR, _AND, "|"),
    And: (_AND, _AND, _UNARY, "&"),
}


def render_term(t: Term) -> str:
    return f"'{t.name}'" if isinstance(t, Const) else t.name


def _render(f: Formula, prec: int, tail: bool) -> str:
    # tail: nothing follows f before the end of its enclosing group, so an
    # unparenthesised quantifier cannot swallow a following operand.
    if isinstance(f, QUANTIFIERS):
        keyword = "all" if isinstance(f, ForAll) else "ex"
        text = f"{keyword} {f.var}. {_render(f.body, _IFF, True)}"
        return text if tail else f"({text})"
    if isinstance(f, Not):
        if isinstance(f.body, (Equal, Member, Part)):
            return f"~({_render(f.body, _IFF, True)})"
        return "~" + _render(f.body, _UNARY, tail)
    if isinstance(f, BINARY):
        level, left_prec, right_prec, symbol = _BINARY_LAYOUT[type(f)]
        wrap = level < prec
        text = (f"{_render(f.left, left_prec, False)} {symbol} "
                f"{_render(f.right, right_prec, True if wrap else tail)}")
        return f"({text})" if wrap else text
    if isinstance(f, Equal):
        return f"{render_term(f.left)} = {render_term(f.right)}"
    if isinstance(f, Member):
        return f"{render_term(f.element)} in {render_term(f.container)}"
    if isinstance(f, Part):
        return f"{render_term(f.part)} <: {render_term(f.whole)}"
    if isinstance(f, SetPred):
        return f"Set({render_term(f.term)})"
    args = ", ".join(render_term(t) for t in f.args)
    if f.body is None:
        return f"{f.name}({args})"
    return f"{f.name}[{f.binder}: {_render(f.body, _IFF, True)}]({args})"


def render(f: Formula) -> str:
    """Concrete syntax for f with the fewest parentheses that still parse back to f."""
    return _render(f, _IFF, True)


def render_predicate(p: Predicate) -> str:
    return f"{p.var}: {render(p.body)}"


def to_dict(f: Formula) -> Dict:
    """JSON-ready view of a formula tree."""
    def term(t: Term) -> Dict:
        return {"const": t.name} if isinstance(t, Const) else {"var": t.name}

    node = type(f).__name__
    if isinstance(f, ATOMS):
        return {"node": node, "terms": [term(t) for t in _atom_terms(f)]}
    if isinstance(f, Not):
        return {"node": node, "body": to_dict(f.body)}
    if isinstance(f, BINARY):
        return {"node": node, "left": to_dict(f.left), "right": to_dict(f.right)}
    if isinstance(f, QUANTIFIERS):
        return {"node": node, "var": f.var, "body": to_dict(f.body)}
    out = {"node": node, "name": f.name, "args": [term(t) for t in f.args]}
    if f.body is not None:
        out["binder"] = f.binder
        out["body"] = to_dict(f.body)
    return out


# ---------------------------------------------------------------------------
# Macro expansion
# ---------------------------------------------------------------------------

# name -> (parameter names, one-step definition); definitions may use other macros.
_MACRO_TEMPLATES: Dict[str, Tuple[Tuple[str, ...], str]] = {
    "T": (("x",), "~Set(x)"),
    "Disj": (("a", "b"), "~ ex g:PT. (g <: a & g <: b)"),
    "Ind": (("a", "b"), "a <: b & b <: a"),
    "Sum": (("x", "a"),
            "(Set(x) & all y. (y in x -> T(y))) -> all g:PT. (Disj(g, a) <-> all b:PT. (b in x -> Disj(b, g)))"),
    "Cant": (("a",), "ex y. all b. (b in y <-> b <: a)"),
    "Card": (("a", "z"), "all b. (b in z <-> b <: a)"),
    "Irr": (("a", "b"), "a <: b & all g:PT. (g <: a -> Ind(g, a))"),
}


@functools.lru_cache(maxsize=None)
def _template(name: str) -> Tuple[Tuple[str, ...], Formula]:
    params, text = _MACRO_TEMPLATES[name]
    return params, parse(text)


def _collector(binder: str, body: Formula, arg: Term, avoid: Set[str], whole: Optional[Term]) -> Formula:
    """``ex y. all b. (b in y <-> (b <: whole & body))`` or, without whole, ``all b. (b in arg <-> body)``."""
    arg_vars = {arg.name} if isinstance(arg, Var) else set()
    if whole is None:
        collected = arg
    else:
        collected = Var(fresh_name("y", avoid))
        avoid = avoid | {collected.name}
    var = binder
    if var in arg_vars or var == collected.name:
        var = fresh_name(binder, avoid)
        body = substitute(body, {binder: Var(var)})
    condition = body if whole is None else And(Part(Var(var), whole), body)
    matrix = ForAll(var, Iff(Member(Var(var), collected), condition))
    return matrix if whole is None else Exists(collected.name, matrix)


def unfold(m: Macro) -> Formula:
    """One step of macro expansion; the result may still contain macros."""
    if m.body is None:
        params, template = _template(m.name)
        return substitute(template, dict(zip(params, m.args)))
    avoid = all_vars(m)
    if m.name == "SetOf":
        return _collector(m.binder, m.body, m.args[0], avoid, None)
    cant_f = _collector(m.binder, m.body, m.args[0], avoid, m.args[0])
    return Not(cant_f) if m.name == "QP" else cant_f


def expand_macros(f: Formula) -> Formula:
    """Replace every macro by its definition, recursively, leaving only core atoms and connectives."""
    if isinstance(f, ATOMS):
        return f
    if isinstance(f, Not):
        return Not(expand_macros(f.body))
    if isinstance(f, BINARY):
        return type(f)(expand_macros(f.left), expand_macros(f.right))
    if isinstance(f, QUANTIFIERS):
        return type(f)(f.var, expand_macros(f.body))
    return expand_macros(unfold(f))


def contains_macros(f: Formula) -> bool:
    if isinstance(f, ATOMS):
        return False
    if isinstance(f, Not):
        return contains_macros(f.body)
    if isinstance(f, BINARY):
        return contains_macros(f.left) or contains_macros(f.right)
    if isinstance(f, QUANTIFIERS):
        return contains_macros(f.body)
    return True


# ---------------------------------------------------------------------------
# Axioms and schemas
# ---------------------------------------------------------------------------

# The language has no function symbols, so the empty set, unions, singletons
# and intersections inside the set axioms are written out relationally.
AXIOM_TEXTS: Dict[str, str] = {
    "extensionality": "all x:Set. all y:Set. ((all z. (z in x <-> z in y)) -> x = y)",
    "union": "all x. all y. ex t:Set. all z. (z in t <-> z in x | z in y)",
    "power_set": "all x:Set. ex y:Set. all t:Set. (t in y <-> all w. (w in t -> w in x))",
    "empty_set": "ex t:Set. all x. ~(x in t)",
    "amalgamation": ("all x:Set. ((all y. (y in x -> Set(y))) -> "
                     "ex z:Set. all t. (t in z <-> ex v. (v in x & t in v)))"),
    "infinity": ("ex z:Set. ((ex e:Set. (e in z & all w. ~(w in e))) & "
                 "all x. (x in z -> ex u:Set. (u in z & all w. (w in u <-> w in x | w = x))))"),
    "choice": ("all x:Set. ((all y. (y in x -> Set(y))) & (all y. (y in x -> ex w. w in y)) & "
               "(all y. all z. (y in x & z in x & ~(y = z) -> ~ ex w. (w in y & w in z))) -> "
               "ex u:Set. all y. (y in x -> ex v. all w. (w in y & w in u <-> w = v)))"),
    "foundation": ("all x:Set. ((ex y. y in x) & (all y. (y in x -> Set(y))) -> "
                   "ex z. (z in x & ~ ex w. (w in z & w in x)))"),
    "reflexivity_part": "all a:PT. a <: a",
    "transitivity_part": "all a:PT. all b:PT. all g:PT. (a <: b & b <: g -> a <: g)",
    "existence_of_sums": ("all x:Set. ((ex y. y in x) & (all y. (y in x -> T(y))) -> "
                          "ex a:PT. Sum(x, a))"),
    "existence_of_sums_literal": "all x. ex a:PT. Sum(x, a)",
}

FINITELY_CHECKABLE: FrozenSet[str] = frozenset({
    "extensionality", "empty_set", "foundation",
    "reflexivity_part", "transitivity_part", "existence_of_sums", "existence_of_sums_literal",
})

AXIOM_GROUPS: Dict[str, Tuple[str, ...]] = {
    "pt": ("reflexivity_part", "transitivity_part", "existence_of_sums"),
    "sets": ("extensionality", "empty_set", "foundation"),
    "pt+sets": ("reflexivity_part", "transitivity_part", "existence_of_sums",
                "extensionality", "empty_set", "foundation"),
}

SCHEMAS: Dict[str, Tuple[str, ...]] = {
    "separation": ("x",),
    "replacement": ("x", "y"),
}


@functools.lru_cache(maxsize=None)
def axiom_sentence(name: str) -> Formula:
    """The closed sentence of a named axiom."""
    if name not in AXIOM_TEXTS:
        raise UnknownAxiomError(f"unknown axiom {name!r}; known axioms: {', '.join(sorted(AXIOM_TEXTS))}")
    return parse(AXIOM_TEXTS[name])


def resolve_axioms(selection: Union[str, Iterable[str], None]) -> Tuple[str, ...]:
    """Expand groups and comma lists (``pt``, ``pt+sets``, ``foundation,pt``) into axiom names, order kept."""
    if selection is None:
        return ()
    items = selection.split(",") if isinstance(selection, str) else list(selection)
    names: List[str] = []
    for item in items:
        item = item.strip()
        if not item:
            continue
        expanded = AXIOM_GROUPS.get(item, (item,))
        for name in expanded:
            if name not in AXIOM_TEXTS:
                raise UnknownAxiomError(f"unknown axiom or group {name!r}; groups: {', '.join(AXIOM_GROUPS)}")
            if name not in names:
                names.append(name)
    return tuple(names)


def _close_over(f: Formula, params: Iterable[str]) -> Formula:
    for var in sorted(params, reverse=True):
        f = ForAll(var, f)
    return f


def instantiate_schema(schema: str, f: Formula, variables: Optional[Iterable[str]] = None) -> Formula:
    """
    Build the closed instance of the separation or replacement schema for f.

    ``variables`` names the designated variables of f: (x,) for separation,
    (x, y) for replacement. The remaining schema variables (y, z for
    separation; u, v for replacement) must not occur free in f. Any other
    free variable of f is a parameter and is universally closed.

    Raises:
        UnknownAxiomError: unknown schema name
        SchemaConditionError: designated variables missing from f, or a
            schema variable occurring free in f
    """
    if schema not in SCHEMAS:
        raise UnknownAxiomError(f"unknown schema {schema!r}; known schemas: {', '.join(SCHEMAS)}")
    designated = tuple(variables) if variables is not None else SCHEMAS[schema]
    if len(designated) != len(SCHEMAS[schema]) or len(set(designated)) != len(designated):
        raise SchemaConditionError(f"{schema} needs {len(SCHEMAS[schema])} distinct designated variable(s)")
    fv = free_vars(f)
    missing = [v for v in designated if v not in fv]
    if missing:
        raise SchemaConditionError(f"designated variable(s) {', '.join(missing)} do not occur free in the formula")

    taken = set(all_vars(f)) | set(designated)
    schema_vars = []
    for base in (("y", "z") if schema == "separation" else ("u", "v")):
        name = base if base not in designated else fresh_name(base, taken)
        if name in fv:
            raise SchemaConditionError(f"{name} must not occur free in the formula of the {schema} schema")
        schema_vars.append(name)
        taken.add(name)
    params = fv - set(designated)

    if schema == "separation":
        x = designated[0]
        y, z = schema_vars
        body = ForAll(x, Iff(Member(Var(x), Var(y)), And(f, Member(Var(x), Var(z)))))
        sentence = ForAll(z, Implies(SetPred(Var(z)), Exists(y, And(SetPred(Var(y)), body))))
        return _close_over(sentence, params)

    x, y = designated
    u, v = schema_vars
    other = fresh_name(y, taken)
    unique = Exists(y, And(f, ForAll(other, Implies(substitute(f, {y: Var(other)}), Equal(Var(other), Var(y))))))
    image = ForAll(y, Iff(Member(Var(y), Var(v)), Exists(x, And(Member(Var(x), Var(u)), f))))
    consequent = ForAll(u, Implies(SetPred(Var(u)), Exists(v, And(SetPred(Var(v)), image))))
    return _close_over(Implies(ForAll(x, unique), consequent), params)
