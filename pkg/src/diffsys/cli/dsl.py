"""The workbench script language.

    script   := stmt*
    stmt     := 'basis' IDENT* ';'
              | 'let' IDENT '=' shift ';'
              | 'fun' IDENT '=' func ';'
              | equation
              | 'system' IDENT '{' equation* '}'
              | command ';'
    equation := 'eq' operator 'f' '=' func ';'
    command  := ('solve' | 'minsup' | 'polysolve') [IDENT]
              | 'deduce' [IDENT] 'using' use (',' use)*
              | 'vanish' [IDENT] 'on' region (',' region)*
    use      := 'eq' INT ['by' operator]
    region   := chi-atom | 'off' '<' gens '>'

    operator := [sign] opterm (sign opterm)*
    opterm   := rat ['*' opatom ('*' opatom)*] | opatom ('*' opatom)*
    opatom   := 'delta' '(' shift ')' | 'T' '[' shift ']' | '(' operator ')'
    shift    := [sign] sterm (sign sterm)*
    sterm    := rat ['*' (IDENT | '(' shift ')')] | IDENT | '(' shift ')'
    func     := [sign] fterm (sign fterm)*
    fterm    := rat ['*' fatom] | fatom

The grammar is LL(1): every choice is made on the next token alone.
Equations at top level belong to the system "main".  Equation numbers in
'deduce' count from 1.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from ..errors import DiffsysError
from ..exact import BasisContext, CyclotomicNumber, FormalReal, Lattice, render_rational
from ..functions import (
    Constant,
    CosetIndicator,
    LatticeFunction,
    Polynomial,
    Rule,
    SymbolicFunction,
    TrigPoly,
    combine,
)
from ..operators import DifferenceOperator
from ..solver import EquationSystem, VanishingSet

KEYWORDS = {
    "basis", "let", "fun", "eq", "system", "solve", "minsup", "polysolve",
    "deduce", "vanish", "using", "by", "on", "off",
}
COMMANDS = ("solve", "minsup", "polysolve", "deduce", "vanish")
MAIN = "main"
# names with a fixed meaning inside expressions
RESERVED = {"f", "x", "T", "delta", "poly", "cos2pi", "sin2pi", "cos", "sin", "trig", "chi", "latfun", "gt", "pi", MAIN}


class ScriptError(DiffsysError):
    """A lexical, syntax or name-resolution error at a source position."""

    def __init__(self, message: str, line: int, col: int, expected=()):
        self.message = message
        self.line = line
        self.col = col
        self.expected = tuple(sorted(set(expected)))
        super().__init__(self.describe())

    def describe(self, source: str = "<script>") -> str:
        out = f"{source}:{self.line}:{self.col}: error: {self.message}"
        if self.expected:
            out += " (expected one of: " + ", ".join(self.expected) + ")"
        return out


# -- lexer ---------------------------------------------------------------------

@dataclass(frozen=True)
class Token:
    kind: str  # 'int', 'ident', 'kw', 'punct', 'eof'
    text: str
    line: int
    col: int

    def label(self) -> str:
        return "end of input" if self.kind == "eof" else repr(self.text)


_TOKEN = re.compile(
    r"(?P<ws>[ \t\r]+)|(?P<nl>\n)|(?P<comment>#[^\n]*)"
    r"|(?P<int>\d+)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<punct>[;=(){}\[\]<>,+\-*/^|])"
)


def tokenize(text: str) -> list[Token]:
    out = []
    line, start, pos = 1, 0, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        col = pos - start + 1
        if m is None:
            raise ScriptError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            start = m.end()
        elif kind == "ident":
            word = m.group()
            out.append(Token("kw" if word in KEYWORDS else "ident", word, line, col))
        elif kind in ("int", "punct"):
            out.append(Token(kind, m.group(), line, col))
        pos = m.end()
    out.append(Token("eof", "", line, pos - start + 1))
    return out


# -- syntax tree ---------------------------------------------------------------

@dataclass(frozen=True)
class Let:
    name: str
    value: FormalReal


@dataclass(frozen=True)
class Fun:
    name: str
    value: SymbolicFunction


@dataclass(frozen=True)
class Eq:
    system: str
    op: DifferenceOperator
    rhs: SymbolicFunction


@dataclass(frozen=True)
class SystemDecl:
    name: str
    equations: tuple  # of Eq


@dataclass(frozen=True)
class Command:
    kind: str
    system: str
    uses: tuple = ()       # deduce: ((multiplier, index), ...) with 0-based index
    regions: tuple = ()    # vanish: CosetIndicator or ('off', Lattice)


@dataclass
class WorkbenchScript:
    basis: tuple
    statements: list = field(default_factory=list)

    @property
    def ctx(self) -> BasisContext:
        return BasisContext(self.basis)

    @property
    def commands(self) -> list:
        return [s for s in self.statements if isinstance(s, Command)]

    def systems(self) -> dict:
        eqs: dict[str, list] = {}
        for s in self.statements:
            if isinstance(s, Eq):
                eqs.setdefault(s.system, []).append((s.op, s.rhs))
            elif isinstance(s, SystemDecl):
                eqs[s.name] = [(e.op, e.rhs) for e in s.equations]
        ctx = self.ctx
        return {name: EquationSystem(es, ctx, name) for name, es in eqs.items()}

    def __eq__(self, other):
        return (
            isinstance(other, WorkbenchScript)
            and self.basis == other.basis
            and self.statements == other.statements
        )

    def render(self) -> str:
        lines = []
        if self.basis:
            lines.append("basis " + " ".join(self.basis) + ";")
        for s in self.statements:
            lines.extend(render_statement(s))
        return "\n".join(lines) + "\n"


# -- parser --------------------------------------------------------------------

class Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0
        self.ctx = BasisContext(())
        self.shifts: dict[str, FormalReal] = {}
        self.funcs: dict[str, SymbolicFunction] = {}
        self.system_sizes: dict[str, int] = {}
        self.rule_dim: int | None = None

    # token helpers
    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def at(self, *texts) -> bool:
        t = self.tok
        return t.kind in ("punct", "kw", "ident") and t.text in texts

    def advance(self) -> Token:
        t = self.tok
        self.i += 1
        return t

    def fail(self, expected, tok: Token | None = None):
        tok = tok or self.tok
        raise ScriptError(f"unexpected {tok.label()}", tok.line, tok.col, expected)

    def expect(self, text: str) -> Token:
        if not self.at(text):
            self.fail([repr(text)])
        return self.advance()

    def expect_ident(self) -> Token:
        if self.tok.kind != "ident":
            self.fail(["identifier"])
        return self.advance()

    def expect_int(self) -> int:
        if self.tok.kind != "int":
            self.fail(["integer"])
        return int(self.advance().text)

    # script
    def script(self) -> WorkbenchScript:
        basis = ()
        if self.at("basis"):
            basis = self.basis_decl()
        out = WorkbenchScript(basis)
        while self.tok.kind != "eof":
            out.statements.append(self.statement())
        return out

    def basis_decl(self):
        self.advance()
        names = []
        while self.tok.kind == "ident":
            t = self.advance()
            if t.text in names:
                raise ScriptError(f"basis symbol {t.text!r} declared twice", t.line, t.col)
            if t.text in RESERVED:
                raise ScriptError(f"{t.text!r} is reserved", t.line, t.col)
            names.append(t.text)
        self.expect(";")
        self.ctx = BasisContext(tuple(names))
        return tuple(names)

    def statement(self):
        t = self.tok
        if self.at("let"):
            self.advance()
            name = self._fresh_name()
            self.expect("=")
            value = self.shift()
            self.expect(";")
            self.shifts[name] = value
            return Let(name, value)
        if self.at("fun"):
            self.advance()
            name = self._fresh_name()
            self.expect("=")
            value = self.func()
            self.expect(";")
            self.funcs[name] = value
            return Fun(name, value)
        if self.at("eq"):
            eq = self.equation(MAIN)
            self.system_sizes[MAIN] = self.system_sizes.get(MAIN, 0) + 1
            return eq
        if self.at("system"):
            self.advance()
            nt = self.expect_ident()
            if nt.text == MAIN:
                raise ScriptError("the name 'main' is reserved for top-level equations", nt.line, nt.col)
            if nt.text in self.system_sizes:
                raise ScriptError(f"system {nt.text!r} declared twice", nt.line, nt.col)
            self.expect("{")
            eqs = []
            while self.at("eq"):
                eqs.append(self.equation(nt.text))
            self.expect("}")
            self.system_sizes[nt.text] = len(eqs)
            return SystemDecl(nt.text, tuple(eqs))
        if t.kind == "kw" and t.text in COMMANDS:
            cmd = self.command()
            self.expect(";")
            return cmd
        if t.kind == "kw" and t.text == "basis":
            raise ScriptError("the basis must be declared once, before everything else", t.line, t.col)
        self.fail(["'let'", "'fun'", "'eq'", "'system'"] + [repr(c) for c in COMMANDS])

    def _fresh_name(self):
        t = self.expect_ident()
        if t.text in RESERVED:
            raise ScriptError(f"{t.text!r} is reserved", t.line, t.col)
        if t.text in self.shifts or t.text in self.funcs or t.text in self.ctx.symbols:
            raise ScriptError(f"name {t.text!r} is already in use", t.line, t.col)
        return t.text

    def equation(self, system: str) -> Eq:
        self.expect("eq")
        op = self.operator()
        ft = self.expect_ident()
        if ft.text != "f":
            raise ScriptError("the unknown function must be called f", ft.line, ft.col, ["'f'"])
        self.expect("=")
        rhs = self.func()
        self.expect(";")
        return Eq(system, op, rhs)

    def command(self) -> Command:
        kind = self.advance().text
        system = MAIN
        if self.tok.kind == "ident":
            t = self.advance()
            if t.text not in self.system_sizes:
                raise ScriptError(f"undeclared system {t.text!r}", t.line, t.col)
            system = t.text
        elif MAIN not in self.system_sizes:
            raise ScriptError("no equations declared before this command", self.tok.line, self.tok.col)
        if kind == "deduce":
            self.expect("using")
            uses = [self.use(system)]
            while self.at(","):
                self.advance()
                uses.append(self.use(system))
            return Command(kind, system, uses=tuple(uses))
        if kind == "vanish":
            self.expect("on")
            regions = [self.region()]
            while self.at(","):
                self.advance()
                regions.append(self.region())
            return Command(kind, system, regions=tuple(regions))
        return Command(kind, system)

    def use(self, system: str):
        self.expect("eq")
        t = self.tok
        k = self.expect_int()
        size = self.system_sizes[system]
        if not 1 <= k <= size:
            raise ScriptError(f"system {system!r} has equations 1..{size}", t.line, t.col)
        mult = DifferenceOperator.identity(self.ctx)
        if self.at("by"):
            self.advance()
            mult = self.operator()
        return (mult, k - 1)

    def region(self):
        if self.at("off"):
            self.advance()
            self.expect("<")
            gens = self.gens()
            self.expect(">")
            return ("off", Lattice.from_generators(gens, self.ctx) if gens else Lattice.trivial(self.ctx))
        if self.at("chi"):
            return self.chi()
        self.fail(["'chi'", "'off'"])

    # numbers
    def rational(self) -> Fraction:
        neg = False
        if self.at("-"):
            self.advance()
            neg = True
        q = Fraction(self.expect_int())
        if self.at("/"):
            self.advance()
            t = self.tok
            d = self.expect_int()
            if d == 0:
                raise ScriptError("division by zero", t.line, t.col)
            q /= d
        return -q if neg else q

    def signed_int(self) -> int:
        neg = False
        if self.at("-"):
            self.advance()
            neg = True
        k = self.expect_int()
        return -k if neg else k

    def _sign(self) -> int:
        if self.at("+"):
            self.advance()
            return 1
        if self.at("-"):
            self.advance()
            return -1
        return 1

    # shifts
    def shift(self) -> FormalReal:
        acc = self.ctx.zero()
        sign = self._sign()
        acc = acc + self.sterm().scale(sign)
        while self.at("+", "-"):
            sign = self._sign()
            acc = acc + self.sterm().scale(sign)
        return acc

    def sterm(self) -> FormalReal:
        t = self.tok
        if t.kind == "int":
            q = self.rational()
            if self.at("*"):
                self.advance()
                return self.satom().scale(q)
            return self.ctx.rational(q)
        if t.kind == "ident" or self.at("("):
            return self.satom()
        self.fail(["number", "identifier", "'('"])

    def satom(self) -> FormalReal:
        t = self.tok
        if self.at("("):
            self.advance()
            v = self.shift()
            self.expect(")")
            return v
        if t.kind == "ident":
            self.advance()
            if t.text in self.shifts:
                return self.shifts[t.text]
            if t.text in self.ctx.symbols:
                return self.ctx.symbol(t.text)
            raise ScriptError(f"undeclared name {t.text!r}", t.line, t.col)
        self.fail(["identifier", "'('"])

    def gens(self):
        out = []
        if self.at(">"):
            return out
        out.append(self.shift())
        while self.at(","):
            self.advance()
            out.append(self.shift())
        return out

    # operators
    def operator(self) -> DifferenceOperator:
        sign = self._sign()
        acc = self.opterm().scale(sign)
        while self.at("+", "-"):
            sign = self._sign()
            acc = acc + self.opterm().scale(sign)
        return acc

    def opterm(self) -> DifferenceOperator:
        coeff = Fraction(1)
        if self.tok.kind == "int":
            coeff = self.rational()
            if not self.at("*"):
                return DifferenceOperator.identity(self.ctx).scale(coeff)
            self.advance()
        acc = self.opatom()
        while self.at("*"):
            self.advance()
            acc = acc.compose(self.opatom())
        return acc.scale(coeff)

    def opatom(self) -> DifferenceOperator:
        if self.at("delta"):
            self.advance()
            self.expect("(")
            s = self.shift()
            self.expect(")")
            return DifferenceOperator.delta(s)
        if self.at("T"):
            self.advance()
            self.expect("[")
            s = self.shift()
            self.expect("]")
            return DifferenceOperator.translation(s)
        if self.at("("):
            self.advance()
            op = self.operator()
            self.expect(")")
            return op
        self.fail(["'delta'", "'T'", "'('", "number"])

    # functions
    def func(self) -> SymbolicFunction:
        parts = [(self._sign(), self.fterm())]
        while self.at("+", "-"):
            sign = self._sign()
            parts.append((sign, self.fterm()))
        return combine(parts)

    def fterm(self) -> SymbolicFunction:
        if self.tok.kind == "int":
            q = self.rational()
            if self.at("*"):
                self.advance()
                return self.fatom().scale(q)
            return Constant(q)
        return self.fatom()

    def fatom(self) -> SymbolicFunction:
        t = self.tok
        if self.at("("):
            self.advance()
            f = self.func()
            self.expect(")")
            return f
        if t.kind != "ident":
            self.fail(["number", "function", "'('"])
        name = t.text
        if name in self.funcs:
            self.advance()
            return self.funcs[name]
        handler = getattr(self, f"_f_{name}", None)
        if handler is None:
            raise ScriptError(f"undeclared function {name!r}", t.line, t.col)
        self.advance()
        self.expect("(")
        f = handler()
        self.expect(")")
        return f

    def _rationals(self, sep=","):
        out = [self.rational()]
        while self.at(sep):
            self.advance()
            out.append(self.rational())
        return out

    def _f_poly(self):
        return Polynomial(self._rationals())

    def _x(self):
        t = self.expect_ident()
        if t.text != "x":
            raise ScriptError("expected the variable x", t.line, t.col, ["'x'"])

    def _f_cos2pi(self):
        lam = self.rational()
        self.expect(",")
        self._x()
        return TrigPoly.cos(lam)

    def _f_sin2pi(self):
        lam = self.rational()
        self.expect(",")
        self._x()
        return TrigPoly.sin(lam)

    def _two_pi_form(self):
        # cos(2pi*lam*x) or cos(2pi*x)
        t = self.tok
        if self.expect_int() != 2:
            raise ScriptError("expected 2pi", t.line, t.col, ["'2pi'"])
        p = self.expect_ident()
        if p.text != "pi":
            raise ScriptError("expected 2pi", p.line, p.col, ["'pi'"])
        self.expect("*")
        if self.tok.kind == "ident":
            self._x()
            return Fraction(1)
        lam = self.rational()
        self.expect("*")
        self._x()
        return lam

    def _f_cos(self):
        return TrigPoly.cos(self._two_pi_form())

    def _f_sin(self):
        return TrigPoly.sin(self._two_pi_form())

    def _f_trig(self):
        lam = self.rational()
        self.expect(";")
        t = self.tok
        order = self.expect_int()
        if order < 1:
            raise ScriptError("the order must be positive", t.line, t.col)
        self.expect(";")
        coeffs = self._rationals()
        try:
            c = CyclotomicNumber(order, dict(enumerate(coeffs)))
        except (ValueError, DiffsysError) as exc:
            raise ScriptError(str(exc), t.line, t.col) from None
        return TrigPoly(0, [(lam, c)])

    def chi(self):
        t = self.expect("chi")
        self.expect("(")
        f = self._f_chi(t)
        self.expect(")")
        return f

    def _f_chi(self, t=None):
        self.expect("<")
        gens = self.gens()
        self.expect(">")
        lat = Lattice.from_generators(gens, self.ctx) if gens else Lattice.trivial(self.ctx)
        off = None
        if self.at("+", "-"):
            off = self.shift()
        return CosetIndicator(lat, off)

    def _f_latfun(self):
        t = self.tok
        self.expect("<")
        gens = self.gens()
        self.expect(">")
        if not gens:
            raise ScriptError("a lattice function needs at least one generator", t.line, t.col)
        self.expect(";")
        self.rule_dim = len(gens)
        rule = self.rule()
        self.rule_dim = None
        self.expect(";")
        off = self.rational()
        try:
            return LatticeFunction(gens, rule, off)
        except ValueError as exc:
            raise ScriptError(str(exc), t.line, t.col) from None

    # rules
    def rule(self) -> Rule:
        acc = self.rterm()
        while self.at("+", "-"):
            sign = self._sign()
            acc = acc + self.rterm().scale(sign)
        return acc

    def rterm(self) -> Rule:
        dim = self.rule_dim
        neg = False
        if self.at("-"):
            self.advance()
            neg = True
        acc = Rule.constant(dim, 1)
        if self.tok.kind == "int":
            acc = Rule.constant(dim, self.rational())
            if not self.at("*"):
                return -acc if neg else acc
            self.advance()
        acc = acc * self.rfactor()
        while self.at("*"):
            self.advance()
            acc = acc * self.rfactor()
        return -acc if neg else acc

    def rfactor(self) -> Rule:
        t = self.tok
        if t.kind == "ident" and t.text == "gt":
            self.advance()
            self.expect("(")
            i = self._coord()
            self.expect(",")
            th = self.signed_int()
            self.expect(")")
            return Rule.greater(self.rule_dim, i, th)
        if t.kind == "ident" and re.fullmatch(r"k\d+", t.text):
            i = self._coord()
            power = 1
            if self.at("^"):
                self.advance()
                power = self.expect_int()
            return Rule.coord(self.rule_dim, i, power)
        self.fail(["'k<i>'", "'gt'", "number"])

    def _coord(self) -> int:
        t = self.expect_ident()
        m = re.fullmatch(r"k(\d+)", t.text)
        if not m or not 1 <= int(m.group(1)) <= self.rule_dim:
            raise ScriptError(f"coordinate {t.text!r} outside k1..k{self.rule_dim}", t.line, t.col)
        return int(m.group(1)) - 1


def parse_script(text: str) -> WorkbenchScript:
    return Parser(text).script()


def _entry(text: str, ctx: BasisContext, method: str):
    p = Parser(text)
    p.ctx = ctx
    out = getattr(p, method)()
    if p.tok.kind != "eof":
        p.fail(["end of input"])
    return out


def parse_shift(text: str, ctx: BasisContext) -> FormalReal:
    return _entry(text, ctx, "shift")


def parse_function(text: str, ctx: BasisContext) -> SymbolicFunction:
    return _entry(text, ctx, "func")


def parse_operator(text: str, ctx: BasisContext) -> DifferenceOperator:
    return _entry(text, ctx, "operator")


# -- rendering -------------------------------------------------------------------

def render_operator(op: DifferenceOperator) -> str:
    if op.is_zero:
        return "0*T[0]"
    b = op.delta_shift()
    return f"delta({b})" if b is not None else str(op)


def render_statement(s) -> list[str]:
    if isinstance(s, Let):
        return [f"let {s.name} = {s.value};"]
    if isinstance(s, Fun):
        return [f"fun {s.name} = {s.value.render()};"]
    if isinstance(s, Eq):
        return [_render_eq(s)]
    if isinstance(s, SystemDecl):
        return [f"system {s.name} {{"] + ["  " + _render_eq(e) for e in s.equations] + ["}"]
    if isinstance(s, Command):
        head = s.kind if s.system == MAIN else f"{s.kind} {s.system}"
        if s.kind == "deduce":
            uses = []
            for mult, i in s.uses:
                if mult == DifferenceOperator.identity(mult.ctx):
                    uses.append(f"eq {i + 1}")
                else:
                    uses.append(f"eq {i + 1} by {render_operator(mult)}")
            return [f"{head} using {', '.join(uses)};"]
        if s.kind == "vanish":
            return [f"{head} on {', '.join(render_region(r) for r in s.regions)};"]
        return [head + ";"]
    raise TypeError(f"unknown statement {s!r}")


def _render_eq(e: Eq) -> str:
    return f"eq {render_operator(e.op)} f = {e.rhs.render()};"


def render_region(r) -> str:
    if isinstance(r, CosetIndicator):
        return r.render()
    gens = ", ".join(str(g) for g in r[1].basis_reals)
    return f"off <{gens}>"


def vanishing_set(regions) -> VanishingSet:
    cosets = tuple(r for r in regions if isinstance(r, CosetIndicator))
    offs = [r[1] for r in regions if not isinstance(r, CosetIndicator)]
    off = None
    for lat in offs:
        # off L1 or off L2 is off (L1 meet L2)
        off = lat if off is None else off.intersection(lat)
    return VanishingSet(cosets, off)


def describe_rational(q) -> str:
    return render_rational(Fraction(q))


def script_for_system(system: EquationSystem, name: str = MAIN, commands=("solve",)) -> WorkbenchScript:
    """A script declaring ``system`` (top level for main, else a block) followed by bare commands."""
    eqs = [Eq(name, op, g) for op, g in system.equations]
    statements: list = eqs if name == MAIN else [SystemDecl(name, tuple(eqs))]
    statements += [Command(kind, name) for kind in commands]
    return WorkbenchScript(tuple(system.ctx.symbols), statements)
